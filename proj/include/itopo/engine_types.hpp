#pragma once

// Result and status types shared by the ordering engines.

#include <optional>
#include <vector>

#include "itopo/common.hpp"

namespace itopo {

enum class EngineStatus { Active, CycleFound };
enum class Outcome { NoSearch, Reordered, Cycle };

class DuplicateArcError : public UsageError {
 public:
  explicit DuplicateArcError(Arc a) : UsageError("duplicate arc " + to_string(a)), arc(a) {}
  Arc arc;
};

struct InsertResult {
  Outcome outcome = Outcome::NoSearch;
  std::vector<VertexId> moved;  ///< vertices whose position changed
  std::optional<Arc> witness;   ///< set iff outcome == Cycle
};

inline const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::NoSearch: return "no-search";
    case Outcome::Reordered: return "reordered";
    case Outcome::Cycle: return "cycle";
  }
  return "?";
}

}  // namespace itopo

namespace itopo {

enum class SccOutcome { NoSearch, Reordered, Merged };

struct SccInsertResult {
  SccOutcome outcome = SccOutcome::NoSearch;
  VertexId canonical = kNoVertex;  ///< canonical vertex of the new component when Merged
  std::vector<VertexId> absorbed;  ///< old canonical vertices combined into it, canonical included
  std::vector<VertexId> moved;     ///< canonical vertices whose position changed
};

inline const char* to_string(SccOutcome o) {
  switch (o) {
    case SccOutcome::NoSearch: return "no-search";
    case SccOutcome::Reordered: return "reordered";
    case SccOutcome::Merged: return "merged";
  }
  return "?";
}

}  // namespace itopo
