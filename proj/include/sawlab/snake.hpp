#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sawlab/counting.hpp"
#include "sawlab/exact.hpp"
#include "sawlab/lattice.hpp"

namespace sawlab {

/// The prefix has no second part of the requested length, so the
/// conditional closing probability is undefined.
class NoCompletionsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SnakeParams {
  int d = 2;
  double alpha = 0.0;  ///< inverse charm
  double beta = 0.0;   ///< snake length
  double eta = 0.0;    ///< charm deficit
  double epsilon = 0.0;
  std::size_t n = 0;
  std::size_t ell = 0;

  double delta = 0.0;               ///< beta - eta - alpha; may be <= 0
  std::uint64_t c_root = 0;         ///< c = 2^(1/c_root), c_root = 5(4d+1)
  double c = 0.0;
  double K = 0.0;                   ///< 20(4d+1) log(4d) / log 2
  std::optional<double> threshold_n;  ///< K^(1/delta); empty when delta <= 0

  bool delta_positive() const { return delta > 0; }
  /// 2(n+1) c^(-n^delta / 2), the closing bound of the method.
  double closing_bound(double n_value) const;
  /// n_value >= K^(1/delta).
  bool feasible(double n_value) const;
};

/// Throws std::invalid_argument for d < 2 or eta outside [0, beta).
SnakeParams method_constants(int d, double alpha, double beta, double eta);

/// The usual choice alpha = 1/2 - 2 eps, beta = 1/2, eta = 0.
SnakeParams gaussian_fluctuation_params(int d, double epsilon);

struct ConditionalClosing {
  std::size_t k = 0;
  BigInt completions;
  BigInt closing;
  ExactProb q;
  bool charming = false;  ///< q > n^-alpha, decided exactly
};

/// Closing probability of a uniform walk of length k + n - ell whose first
/// part is gamma_[0,k]. Needs n odd, k <= ell <= n, ell - k even and
/// |gamma| >= k. Throws NoCompletionsError when no such walk exists.
ConditionalClosing conditional_closing_prob(const Walk& gamma, std::size_t k, std::size_t n, std::size_t ell,
                                            double alpha, const EngineOptions& options = {});

struct CharmingProfile {
  std::string source;  ///< serialized prefix gamma_[0,ell]
  std::size_t n = 0, ell = 0;
  double alpha = 0, beta = 0, eta = 0;
  std::size_t interval_lo = 0, interval_hi = 0;  ///< [ell - n^beta, ell] clipped to [0, ell]
  std::vector<ConditionalClosing> entries;     ///< admissible indices of the interval, ascending
  std::size_t admissible = 0;
  std::size_t charming_count = 0;
  double cs_threshold = 0;  ///< n^(beta - eta) / 4
  bool cs = false;

  std::optional<std::size_t> center;  ///< l_mid, when an N-set was requested
  std::size_t window_lo = 0, window_hi = 0;
  std::vector<ConditionalClosing> window_entries;
  std::vector<std::size_t> n_set;  ///< non-charming admissible indices of the window
};

/// Charming indices of gamma over the snake interval. When `center` is set,
/// also the non-charming admissible indices within 2 n^(1/2) (log n)^(1/4)
/// of it (clipped to [0, ell]).
CharmingProfile charming_profile(const Walk& gamma, const SnakeParams& params,
                                 std::optional<std::size_t> center = std::nullopt,
                                 const EngineOptions& options = {});

std::string charming_profile_csv(const CharmingProfile& profile);

struct BadIndexReport {
  std::size_t n = 0;
  int d = 2;
  double alpha_prime = 0, delta_prime = 0;
  std::vector<BigInt> total;    ///< |{SAW_n^0 : |gamma^1| = i}|
  std::vector<BigInt> closing;  ///< closing ones
  ExactProb closing_prob;       ///< W_n(closes)
  bool premise = false;         ///< W_n(closes) >= n^-alpha'
  std::vector<std::size_t> Q;
  double q_bound = 0;           ///< 2 n^(1 - delta')
  bool bound_holds = false;     ///< |Q| <= 2 n^(1 - delta'), exact
  bool lemma_asserted = false;  ///< premise holds, so the bound is claimed
  std::optional<std::size_t> ell;  ///< smallest index of [ceil(n/4), floor(3n/4)] outside Q
};

BadIndexReport bad_index_set_and_select_ell(std::size_t n, double alpha_prime, double delta_prime, int dim = 2,
                                            const EngineOptions& options = {});

struct LawIdentityReport {
  std::size_t n = 0, ell = 0;
  BigInt polygons;       ///< p_{n+1}
  BigInt closing_walks;  ///< closing walks of SAW_n^0 with |gamma^1| = ell
  std::size_t support = 0;
  bool vacuous = false;
  bool equal = false;
};

/// Law of the first ell steps of a uniform polygon of SAP_{n+1} against the
/// law of the first part of a uniform closing walk of SAW_n^0 with first
/// part length ell.
LawIdentityReport first_part_law_identity_check(std::size_t n, std::size_t ell, int dim = 2,
                                                const EngineOptions& options = {});

struct ReflectedFamily {
  Walk phi;
  std::size_t n = 0, ell = 0;
  std::size_t w_size = 0;  ///< |W|: walks of length n - ell from 0 with NE at 0
  bool all_self_avoiding = true;
  bool sides_separated = true;  ///< reversed phi on the closed lower side, the rest strictly above
  bool prefix_is_reverse_phi = true;
  std::vector<Walk> walks;  ///< distinct truncated walks of length n
  bool bound_holds = false;  ///< 2d |walks| >= |W|
};

/// Three-part concatenation reverse(phi) + e_d + reflected gamma for every
/// gamma in W, truncated by one edge. Throws std::invalid_argument unless phi
/// is a first part with at least one completion to length n.
ReflectedFamily reflected_walk_family(const Walk& phi, std::size_t n, const EngineOptions& options = {});

/// Reflected concatenation for a single second part, length n + 1.
Walk reflected_concatenation(const Walk& phi, const Walk& gamma);

struct BootstrapRow {
  std::size_t j = 0;
  ExactProb p_avoid;            ///< P(A_i)
  ExactProb p_close;            ///< P(C_i)
  std::optional<ExactProb> p_close_given_avoid;  ///< P(C_i | A_i), when P(A_i) > 0
};

struct BootstrapTable {
  std::size_t n = 0, ell = 0;
  std::size_t w_size = 0;
  std::vector<BootstrapRow> rows;
  bool avoid_monotone = true;        ///< A_{i+1} subset of A_i, walk by walk
  std::size_t max_close_multiplicity = 0;
  bool multiplicity_capped = true;   ///< no walk in more than 2d events C_i
  Rational close_sum;                ///< sum of P(C_i)
  bool close_sum_capped = true;      ///< close_sum <= 2d
};

/// Exact avoidance and closing probabilities of a uniform walk of W against
/// the prefixes phi_[0,j]. Indices must increase strictly within [0, ell]
/// and |phi| >= ell.
BootstrapTable bootstrap_table(const Walk& phi, std::size_t n, std::size_t ell, const std::vector<std::size_t>& js,
                               const EngineOptions& options = {});

/// Finite counting relations behind the closing bound, at one (n, ell), with
/// the charming snake set computed exactly.
struct SnakeChainReport {
  std::size_t n = 0, ell = 0;
  std::size_t first_parts = 0;  ///< |First_{ell,n}|
  std::size_t cs_size = 0;
  BigInt c_n;
  BigInt reflected_sum;     ///< sum over CS of walks of length n starting with reverse(phi)
  BigInt w_size;            ///< |W|
  BigInt ne_first_in_cs;    ///< walks of SAW_n^0 with first part in CS
  BigInt closing_first_in_cs;
  BigInt polygons_prefix_in_cs;  ///< polygons of SAP_{n+1} whose first ell steps lie in CS
  bool walks_dominate = false;      ///< c_n >= reflected_sum
  bool reflection_bound = false;    ///< each reflected count >= |W| / 2d
  bool closing_subset = false;      ///< ne_first_in_cs >= closing_first_in_cs
  bool polygon_identity = false;    ///< closing_first_in_cs = 2 polygons_prefix_in_cs
};

SnakeChainReport snake_chain_check(const SnakeParams& params, const EngineOptions& options = {});

}  // namespace sawlab
