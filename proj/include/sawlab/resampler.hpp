#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "sawlab/counting.hpp"
#include "sawlab/exact.hpp"
#include "sawlab/patterns.hpp"

namespace sawlab {

/// Uniform j-subset of k slots for draw number `draw`: each slot gets the key
/// CounterRng(seed, slot).at(draw) and the j smallest keys win.
std::vector<bool> draw_shell_subset(std::size_t k, std::size_t j, std::uint64_t seed, std::uint64_t draw);

struct ResampleRecord {
  Polygon gamma_in;
  Polygon gamma_out;
  std::size_t n_i1_before = 0;
  std::size_t n_i1_after = 0;
  std::optional<std::size_t> L;  // set when ell was given and lies in the middle section
  std::uint64_t seed = 0;
  std::uint64_t draw = 0;
};

/// Forgets the contents of the S1 and S2 slots and redistributes the type II
/// patterns uniformly among them.
ResampleRecord resample_local_shell(const Polygon& p, std::uint64_t seed, std::uint64_t draw = 0,
                                    std::optional<std::size_t> ell = std::nullopt,
                                    const PatternPair& pair = canonical_pattern_pair(2));

/// P(N_I^1 = k) = C(s1, k) C(s2, n_i - k) / C(s1 + s2, n_i).
ExactProb hypergeometric_pmf(std::size_t s1, std::size_t s2, std::size_t n_i, std::size_t k);

/// The pmf for every k in [k_lo, k_hi], computed incrementally.
std::vector<ExactProb> hypergeometric_pmf_range(std::size_t s1, std::size_t s2, std::size_t n_i, std::size_t k_lo,
                                                std::size_t k_hi);

/// exp(-a b m z^2 / (2 (1-a)(1-b))) / sqrt(2 pi a b (1-a)(1-b) m), the local
/// form of P(Z = z) with Z = N_I^1 / (a b m) - 1.
double gaussian_density(double z, double alpha, double beta, double m);

struct MiddleWindow {
  std::size_t ell = 0;
  std::size_t reference_n_i1 = 0;           // N_I^1 of the reference member
  std::optional<std::size_t> l_mid;         // empty when ell misses the reference middle section
  std::size_t window_lo = 0, window_hi = 0; // every member is in its middle section here
  long long guaranteed_lo = 0, guaranteed_hi = 0;  // [s + 2|S1|, L - s - 2|S2|]
};

/// Middle section bookkeeping of the local shell of p for index ell, which
/// must lie in [ceil(n/4), floor(3n/4)] with n = |p| - 1.
MiddleWindow middle_index_and_window(const Polygon& p, std::size_t ell,
                                     const PatternPair& pair = canonical_pattern_pair(2));

/// Middle section of p as a closed index range along its trace.
std::pair<std::size_t, std::size_t> middle_section(const Polygon& p, const PatternPair& pair = canonical_pattern_pair(2));

struct ChiSquare {
  double statistic = 0.0;
  std::size_t dof = 0;
  double p_value = 1.0;
};

/// Pearson test of observed counts against expected probabilities. Bins with
/// expected count below 5 are pooled with their neighbours.
ChiSquare chi_square_test(const std::vector<std::uint64_t>& observed, const std::vector<double>& expected_prob);

struct EquilibriumReport {
  std::size_t k = 0, j = 0, samples = 0;
  std::uint64_t seed = 0;
  std::vector<std::uint64_t> member_counts;   // lexicographic subset order
  ChiSquare members;
  std::vector<std::uint64_t> n_i1_counts;     // indexed by N_I^1
  std::vector<ExactProb> n_i1_pmf;
  ChiSquare marginal;
  bool exact_identity = true;  // member counts per N_I^1 value match the pmf exactly
  bool pass = true;
};

EquilibriumReport equilibrium_and_pmf_test(const Polygon& p, std::size_t samples, std::uint64_t seed,
                                           const PatternPair& pair = canonical_pattern_pair(2));

struct MidpointHistogram {
  std::size_t m = 0;
  int d = 2;
  BigInt c_m;
  std::vector<std::pair<LatticePoint, BigInt>> counts;  // lexicographic point order
  ExactProb sup;
  double sup_scaled = 0.0;  // sup * m^(1/2)
};

MidpointHistogram midpoint_histogram(std::size_t m, int dim, const EngineOptions& options = {});

}  // namespace sawlab
