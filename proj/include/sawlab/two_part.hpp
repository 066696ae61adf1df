#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sawlab/counting.hpp"
#include "sawlab/lattice.hpp"

namespace sawlab {

/// Ordered pair of walks meeting at the NE vertex of the walk they came from.
struct Decomposition {
  Walk first;
  Walk second;
  LatticePoint meeting;
  /// True when the original walk starts at the far end of `first`. A walk and
  /// its reversal have the same parts, so this is needed to rebuild it.
  bool walk_starts_in_first = true;
};

/// Whether part `a` is ordered before part `b`, both starting at the shared
/// NE vertex. Two nonempty parts compare by vertex lists. When one part is
/// empty, the nonempty one ranks first exactly when it leaves along -e1.
bool part_ranks_above(std::span<const LatticePoint> a, std::span<const LatticePoint> b);

Decomposition decompose(const Walk& w);

/// Inverse of decompose. Throws std::invalid_argument when the parts are not
/// a valid decomposition.
Walk compose(const Decomposition& dec);

/// Closed canonical trace of the polygon.
Walk polygon_to_path(const Polygon& p);

/// Vertex i of the result is vertex (i + j) mod (n + 1) of w.
Walk cyclic_shift(const Walk& w, std::size_t j);

/// Counts of |first part| over closing walks of SAW_n^0, indexed by 0..n.
std::vector<BigInt> closing_first_length_histogram(std::size_t n, int dim, const EngineOptions& options = {});

struct FirstLengthHistograms {
  std::vector<BigInt> total;    ///< walks of SAW_n^0 by |first part|, 0..n
  std::vector<BigInt> closing;  ///< the closing ones among them
};

FirstLengthHistograms first_length_histograms(std::size_t n, int dim, const EngineOptions& options = {});

}  // namespace sawlab
