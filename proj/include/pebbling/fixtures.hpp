#pragma once

#include "pebbling/graph.hpp"

// Small named graphs that serve as counterexamples.
namespace pebbling::fixtures {

/// The 6-cycle a b c d e f with g joined to a and c, and h joined to a and e.
/// Vertices a..h are 0..7.
namespace eight {
inline constexpr Vertex a = 0, b = 1, c = 2, d = 3, e = 4, f = 5, g = 6, h = 7;
}

inline Graph not_semi_greedy_graph() {
  using namespace eight;
  return Graph(8, {{a, b}, {b, c}, {c, d}, {d, e}, {e, f}, {a, f}, {a, g}, {c, g}, {a, h}, {e, h}});
}

/// The 6-cycle a b c d e g together with the triangle a c e. Diameter two,
/// 2-connected, f = 7. Vertices a, b, c, d, e, g are 0..5.
namespace six {
inline constexpr Vertex a = 0, b = 1, c = 2, d = 3, e = 4, g = 5;
}

inline Graph diameter_two_class1_graph() {
  using namespace six;
  return Graph(6, {{a, b}, {b, c}, {c, d}, {d, e}, {e, g}, {a, g}, {a, c}, {c, e}, {a, e}});
}

}  // namespace pebbling::fixtures
