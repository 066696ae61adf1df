#include "sawlab/resampler.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/math/distributions/chi_squared.hpp>

#include "sawlab/rng.hpp"

namespace sawlab {

namespace {

struct ShellGeometry {
  SlotMap map;
  std::size_t k = 0;        // |S1| + |S2|
  std::size_t s1 = 0, s2 = 0;
  std::size_t j = 0;        // type II patterns in S1 and S2
  std::size_t a0 = 0;       // end of the last S1 slot on the empty trace
  std::size_t b0 = 0;       // start of the first S2 slot on the empty trace
  std::size_t frozen_ii = 0;
};

ShellGeometry shell_geometry(const Polygon& p, const PatternPair& pair) {
  ShellGeometry g;
  g.map = slot_partition(p, 0.0, pair);
  const SlotMap& m = g.map;
  g.s1 = m.s1.size();
  g.s2 = m.s2.size();
  g.k = g.s1 + g.s2;
  g.j = m.counts.N_II;
  g.a0 = g.s1 ? m.slots[m.s1.back()].empty_step + pair.chi_I.length() : 0;
  g.b0 = g.s2 ? m.slots[m.s2.front()].empty_step : m.l_empty;
  for (const Slot& s : m.slots) g.frozen_ii += !s.in_s1 && !s.in_s2 && s.type == PatternType::II;
  return g;
}

// Middle section of the member with h type II patterns in S1.
std::pair<std::size_t, std::size_t> middle_for(const ShellGeometry& g, std::size_t h) {
  return {g.a0 + 2 * h, g.b0 + 2 * h + 2 * g.frozen_ii};
}

std::size_t count_true(const std::vector<bool>& v, std::size_t upto) {
  return static_cast<std::size_t>(std::count(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(upto), true));
}

}  // namespace

std::vector<bool> draw_shell_subset(std::size_t k, std::size_t j, std::uint64_t seed, std::uint64_t draw) {
  if (j > k) throw std::invalid_argument("draw_shell_subset: j exceeds k");
  std::vector<std::pair<std::uint64_t, std::size_t>> keys;
  keys.reserve(k);
  for (std::size_t i = 0; i < k; ++i) keys.emplace_back(CounterRng(seed, i).at(draw), i);
  std::partial_sort(keys.begin(), keys.begin() + static_cast<std::ptrdiff_t>(j), keys.end());
  std::vector<bool> mask(k, false);
  for (std::size_t i = 0; i < j; ++i) mask[keys[i].second] = true;
  return mask;
}

std::pair<std::size_t, std::size_t> middle_section(const Polygon& p, const PatternPair& pair) {
  ShellGeometry g = shell_geometry(p, pair);
  return middle_for(g, g.map.counts.N_II1);
}

ResampleRecord resample_local_shell(const Polygon& p, std::uint64_t seed, std::uint64_t draw,
                                    std::optional<std::size_t> ell, const PatternPair& pair) {
  ShellGeometry g = shell_geometry(p, pair);
  const std::vector<bool> mask = draw_shell_subset(g.k, g.j, seed, draw);
  ResampleRecord r{p, local_shell_member(p, mask, pair), g.map.counts.N_I1, 0, std::nullopt, seed, draw};
  const std::size_t h_out = count_true(mask, g.s1);
  r.n_i1_after = g.s1 - h_out;
  if (ell) {
    auto [lo, hi] = middle_for(g, h_out);
    if (*ell >= lo && *ell <= hi) {
      r.L = *ell + 2 * g.map.counts.N_II1 - 2 * h_out;
    }
  }
  return r;
}

ExactProb hypergeometric_pmf(std::size_t s1, std::size_t s2, std::size_t n_i, std::size_t k) {
  if (n_i > s1 + s2 || k > s1 || k > n_i || n_i - k > s2) {
    throw std::invalid_argument("hypergeometric_pmf: inadmissible arguments");
  }
  return ExactProb(binomial(s1, k) * binomial(s2, n_i - k), binomial(s1 + s2, n_i));
}

std::vector<ExactProb> hypergeometric_pmf_range(std::size_t s1, std::size_t s2, std::size_t n_i, std::size_t k_lo,
                                                std::size_t k_hi) {
  if (k_lo > k_hi) return {};
  hypergeometric_pmf(s1, s2, n_i, k_lo);
  hypergeometric_pmf(s1, s2, n_i, k_hi);
  BigInt a = binomial(s1, k_lo);
  BigInt b = binomial(s2, n_i - k_lo);
  const BigInt total = binomial(s1 + s2, n_i);
  std::vector<ExactProb> out;
  out.reserve(k_hi - k_lo + 1);
  for (std::size_t k = k_lo;; ++k) {
    out.emplace_back(a * b, total);
    if (k == k_hi) break;
    // C(s1, k+1) = C(s1, k)(s1-k)/(k+1); C(s2, r-1) = C(s2, r) r/(s2-r+1)
    a = a * (s1 - k) / (k + 1);
    const std::size_t r = n_i - k;
    b = b * r / (s2 - r + 1);
  }
  return out;
}

double gaussian_density(double z, double alpha, double beta, double m) {
  if (!(alpha > 0 && alpha < 1 && beta > 0 && beta < 1)) throw std::domain_error("gaussian_density: need 0 < alpha, beta < 1");
  if (!(m >= 1)) throw std::domain_error("gaussian_density: need m >= 1");
  const double v = (1 - alpha) * (1 - beta);
  return std::exp(-alpha * beta * m * z * z / (2 * v)) / std::sqrt(2 * std::numbers::pi * alpha * beta * v * m);
}

MiddleWindow middle_index_and_window(const Polygon& p, std::size_t ell, const PatternPair& pair) {
  const std::size_t n = p.length() - 1;
  if (ell < (n + 3) / 4 || ell > 3 * n / 4) throw std::invalid_argument("middle_index_and_window: ell out of range");
  ShellGeometry g = shell_geometry(p, pair);
  MiddleWindow w;
  w.ell = ell;
  const std::size_t most = std::min(g.s1, g.j);
  const std::size_t least = g.j > g.s2 ? g.j - g.s2 : 0;
  w.window_lo = middle_for(g, most).first;
  w.window_hi = middle_for(g, least).second;
  const std::size_t n_i = g.map.counts.N_I;
  w.reference_n_i1 = g.k ? n_i * g.s1 / g.k : 0;
  const std::size_t h_ref = g.s1 - w.reference_n_i1;
  auto [lo, hi] = middle_for(g, h_ref);
  if (ell >= lo && ell <= hi) w.l_mid = ell + 2 * g.map.counts.N_II1 - 2 * h_ref;
  const long long L = static_cast<long long>(p.length());
  const long long s = L / 10;
  w.guaranteed_lo = s + 2 * static_cast<long long>(g.s1);
  w.guaranteed_hi = L - s - 2 * static_cast<long long>(g.s2);
  return w;
}

ChiSquare chi_square_test(const std::vector<std::uint64_t>& observed, const std::vector<double>& expected_prob) {
  if (observed.size() != expected_prob.size()) throw std::invalid_argument("chi_square_test: size mismatch");
  double total = 0;
  for (auto o : observed) total += static_cast<double>(o);
  std::vector<std::pair<double, double>> bins;  // observed, expected
  double obs = 0, exp = 0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    obs += static_cast<double>(observed[i]);
    exp += expected_prob[i] * total;
    if (exp >= 5.0) {
      bins.emplace_back(obs, exp);
      obs = exp = 0;
    }
  }
  if (exp > 0 || obs > 0) {
    if (bins.empty()) bins.emplace_back(obs, exp);
    else {
      bins.back().first += obs;
      bins.back().second += exp;
    }
  }
  ChiSquare r;
  if (bins.size() < 2) return r;
  for (auto [o, e] : bins) r.statistic += (o - e) * (o - e) / e;
  r.dof = bins.size() - 1;
  boost::math::chi_squared dist(static_cast<double>(r.dof));
  r.p_value = boost::math::cdf(boost::math::complement(dist, r.statistic));
  return r;
}

EquilibriumReport equilibrium_and_pmf_test(const Polygon& p, std::size_t samples, std::uint64_t seed,
                                           const PatternPair& pair) {
  ShellGeometry g = shell_geometry(p, pair);
  if (g.k > kMaxShellSlots) throw PatternError("equilibrium test: slot budget exceeded");
  EquilibriumReport r;
  r.k = g.k;
  r.j = g.j;
  r.samples = samples;
  r.seed = seed;

  std::map<std::vector<bool>, std::size_t> rank;
  std::vector<std::size_t> member_n_i1;
  std::vector<bool> mask(g.k, false);
  std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(g.j), true);
  do {
    rank.emplace(mask, rank.size());
    member_n_i1.push_back(g.s1 - count_true(mask, g.s1));
  } while (std::prev_permutation(mask.begin(), mask.end()));

  r.member_counts.assign(rank.size(), 0);
  r.n_i1_counts.assign(g.s1 + 1, 0);
  for (std::size_t d = 0; d < samples; ++d) {
    const std::vector<bool> m = draw_shell_subset(g.k, g.j, seed, d);
    ++r.member_counts[rank.at(m)];
    ++r.n_i1_counts[g.s1 - count_true(m, g.s1)];
  }

  const std::size_t n_i = g.k - g.j;
  std::vector<double> expected_marginal;
  std::vector<BigInt> members_at(g.s1 + 1, 0);
  for (auto v : member_n_i1) members_at[v] += 1;
  const BigInt n_members = binomial(g.k, g.j);
  for (std::size_t t = 0; t <= g.s1; ++t) {
    const bool admissible = t <= n_i && n_i - t <= g.s2;
    ExactProb pmf = admissible ? hypergeometric_pmf(g.s1, g.s2, n_i, t) : ExactProb::zero();
    r.exact_identity = r.exact_identity && pmf == ExactProb(members_at[t], n_members);
    expected_marginal.push_back(pmf.to_double());
    r.n_i1_pmf.push_back(pmf);
  }
  r.members = chi_square_test(r.member_counts, std::vector<double>(rank.size(), 1.0 / static_cast<double>(rank.size())));
  r.marginal = chi_square_test(r.n_i1_counts, expected_marginal);
  r.pass = r.exact_identity && r.members.p_value > 0.01 && r.marginal.p_value > 0.01;
  return r;
}

MidpointHistogram midpoint_histogram(std::size_t m, int dim, const EngineOptions& options) {
  struct PointLess {
    bool operator()(const LatticePoint& a, const LatticePoint& b) const {
      return lex_compare_points(a, b) == std::strong_ordering::less;
    }
  };
  using Acc = std::map<LatticePoint, std::uint64_t, PointLess>;
  const std::size_t mid = m / 2;
  Acc acc = enumerate_reduce(
      m, dim, Constraint::origin_start(), Acc{}, [mid](Acc& a, const WalkView& w) { ++a[w.vertices[mid]]; },
      [](Acc& t, Acc&& p) {
        for (auto& [k, v] : p) t[k] += v;
      },
      options);
  MidpointHistogram h;
  h.m = m;
  h.d = dim;
  h.c_m = 0;
  BigInt best = 0;
  for (auto& [pt, c] : acc) {
    h.counts.emplace_back(pt, BigInt(c));
    h.c_m += c;
    best = std::max(best, BigInt(c));
  }
  h.sup = ExactProb(best, h.c_m);
  h.sup_scaled = h.sup.to_double() * std::sqrt(static_cast<double>(m));
  return h;
}

}  // namespace sawlab
