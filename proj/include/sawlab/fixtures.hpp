#pragma once

#include <string>
#include <vector>

#include "sawlab/lattice.hpp"
#include "sawlab/patterns.hpp"

namespace sawlab {

/// Pattern types along a constructed d = 2 polygon: slots near the start of
/// the trace, slots in the middle, and slots near the end.
struct FixtureSpec {
  std::vector<PatternType> start;
  std::vector<PatternType> middle;
  std::vector<PatternType> end;
};

struct Fixture {
  std::string name;
  FixtureSpec spec;
  Polygon polygon;
};

/// Corridor polygon with one downward bulge per slot. The horizontal padding
/// grows until the start slots fall in S1 and the end slots in S2.
Polygon build_fixture_polygon(const FixtureSpec& spec);

/// Deterministic corpus of pattern-bearing polygons, distinct as edge sets.
const std::vector<Fixture>& fixture_corpus();

}  // namespace sawlab
