#include <iostream>

#include "itopo/itopo.hpp"

int main() {
  using namespace itopo;

  // Keep a topological order of five tasks while dependencies arrive.
  SparseEngine order(5);
  for (auto [before, after] : {std::pair{3u, 1u}, {1u, 0u}, {4u, 3u}, {2u, 4u}}) {
    const InsertResult r = order.add_arc(before, after);
    std::cout << "add " << before << " -> " << after << ": " << to_string(r.outcome) << '\n';
  }
  std::cout << "order:";
  for (VertexId v : order.order()) std::cout << ' ' << v;
  std::cout << '\n';

  const InsertResult cyc = order.add_arc(0, 2);
  std::cout << "add 0 -> 2: " << to_string(cyc.outcome) << ", witness " << to_string(*cyc.witness) << '\n';

  // The same arcs through the component engine, which merges instead of stopping.
  SccSparseEngine scc(5);
  for (auto [v, w] : {std::pair{3u, 1u}, {1u, 0u}, {4u, 3u}, {2u, 4u}, {0u, 2u}}) scc.add_arc(v, w);
  std::cout << "components:";
  for (VertexId c : scc.components()) std::cout << ' ' << c;
  std::cout << "\ncanonical order:";
  for (VertexId c : scc.canonical_order()) std::cout << ' ' << c;
  std::cout << '\n';
}
