#pragma once

#include <string>
#include <vector>

#include "causal/bbn.hpp"
#include "causal/structure_matrix.hpp"

namespace causal::testing {

// Drunk-driving model: d = e1, a + C1 d = e2, m + C2 a = e3. Columns m, a, d.
inline StructureMatrix drunk_driving() {
  return StructureMatrix({"m", "a", "d"}, {"e1", "e2", "e3"}, {{2}, {1, 2}, {0, 1}});
}

// Same model after adding the first and third equations into one.
inline StructureMatrix drunk_driving_nonstructural() {
  return StructureMatrix({"m", "a", "d"}, {"e1", "e2", "e3"}, {{0, 1, 2}, {1, 2}, {0, 1}});
}

// Seat-belt variant: columns m, a, d, b.
inline StructureMatrix seat_belt() {
  return StructureMatrix({"m", "a", "d", "b"}, {"e1", "e2", "e3", "e4"}, {{2}, {1, 2}, {0, 1, 3}, {3}});
}

inline StructureMatrix feedback_pair() {
  return StructureMatrix({"x", "y"}, {"e1", "e2"}, {{0, 1}, {0, 1}});
}

inline constexpr VariableId kM{0}, kA{1}, kD{2}, kB{3};

// x -> y with Pr(X) = 0.4, Pr(Y|X) = 0.7, Pr(Y|not X) = 0.2.
inline Bbn xy_network() {
  return Bbn({
      BbnNode{"x", {"X", "notX"}, {}, {{0.4, 0.6}}},
      BbnNode{"y", {"Y", "notY"}, {0}, {{0.7, 0.3}, {0.2, 0.8}}},
  });
}

// a -> b, a -> c, b -> d, c -> d, all binary.
inline Bbn diamond_network() {
  return Bbn({
      BbnNode{"a", {"0", "1"}, {}, {{0.3, 0.7}}},
      BbnNode{"b", {"0", "1"}, {0}, {{0.9, 0.1}, {0.4, 0.6}}},
      BbnNode{"c", {"0", "1"}, {0}, {{0.2, 0.8}, {0.5, 0.5}}},
      BbnNode{"d", {"0", "1"}, {1, 2}, {{0.1, 0.9}, {0.6, 0.4}, {0.35, 0.65}, {0.99, 0.01}}},
  });
}

inline VariableSet vars(std::initializer_list<VariableId> ids) { return VariableSet(ids); }

inline EquationSet eqs(std::initializer_list<std::size_t> ids) {
  EquationSet out;
  for (std::size_t i : ids) out.insert(EquationId{i});
  return out;
}

}  // namespace causal::testing
