#pragma once

#include "itopo/common.hpp"
#include "itopo/dense_engine.hpp"
#include "itopo/disjoint_sets.hpp"
#include "itopo/edge_stream.hpp"
#include "itopo/engine_types.hpp"
#include "itopo/generators.hpp"
#include "itopo/graph_store.hpp"
#include "itopo/metrics.hpp"
#include "itopo/oracle.hpp"
#include "itopo/order_list.hpp"
#include "itopo/scc_dense.hpp"
#include "itopo/scc_sparse.hpp"
#include "itopo/sparse_engine.hpp"
