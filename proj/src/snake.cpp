#include "sawlab/snake.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <unordered_map>

#include "sawlab/codec.hpp"
#include "sawlab/two_part.hpp"

namespace sawlab {

namespace {

std::string step_key(std::span<const Step> steps) {
  std::string key;
  key.reserve(steps.size());
  for (const Step& s : steps) key.push_back(static_cast<char>(s.code()));
  return key;
}

bool odd(std::size_t n) { return n % 2 == 1; }

Exponent exponent(double x) { return Exponent::from_double(x); }

EngineOptions serial_of(const EngineOptions& options) {
  EngineOptions s = options;
  s.threads = 1;
  return s;
}

void require_first_part(const Walk& phi) {
  if (!phi.origin().is_origin() || !is_self_avoiding(phi) || !ne_vertex(phi).is_origin()) {
    throw std::invalid_argument("not a first part: must start at its NE vertex, the origin");
  }
}

}  // namespace

double SnakeParams::closing_bound(double n_value) const {
  return 2 * (n_value + 1) * std::exp2(-std::pow(n_value, delta) / (2.0 * static_cast<double>(c_root)));
}

bool SnakeParams::feasible(double n_value) const { return threshold_n && n_value >= *threshold_n; }

SnakeParams method_constants(int d, double alpha, double beta, double eta) {
  if (d < 2) throw std::invalid_argument("method_constants: d must be at least 2");
  if (!(eta >= 0 && eta < beta)) throw std::invalid_argument("method_constants: need 0 <= eta < beta");
  SnakeParams p;
  p.d = d;
  p.alpha = alpha;
  p.beta = beta;
  p.eta = eta;
  p.delta = beta - eta - alpha;
  const std::uint64_t m = 4 * static_cast<std::uint64_t>(d) + 1;
  p.c_root = 5 * m;
  p.c = std::exp2(1.0 / static_cast<double>(p.c_root));
  p.K = 20.0 * static_cast<double>(m) * std::log2(4.0 * d);
  if (p.delta > 0) p.threshold_n = std::pow(p.K, 1.0 / p.delta);
  return p;
}

SnakeParams gaussian_fluctuation_params(int d, double epsilon) {
  SnakeParams p = method_constants(d, 0.5 - 2 * epsilon, 0.5, 0.0);
  p.epsilon = epsilon;
  return p;
}

ConditionalClosing conditional_closing_prob(const Walk& gamma, std::size_t k, std::size_t n, std::size_t ell,
                                            double alpha, const EngineOptions& options) {
  if (!odd(n)) throw std::invalid_argument("conditional_closing_prob: n must be odd");
  if (k > ell || ell > n) throw std::invalid_argument("conditional_closing_prob: need k <= ell <= n");
  if ((ell - k) % 2 != 0) throw std::invalid_argument("conditional_closing_prob: ell - k must be even");
  if (gamma.length() < k) throw std::invalid_argument("conditional_closing_prob: prefix shorter than k");
  const Walk prefix = gamma.subwalk(0, k);
  require_first_part(prefix);
  CompletionCounts c = count_completions(prefix, n - ell, options);
  if (c.completions == 0) {
    throw NoCompletionsError("prefix " + serialize_walk(prefix) + " has no second part of length " +
                             std::to_string(n - ell));
  }
  ConditionalClosing r{k, c.completions, c.closing, ExactProb(c.closing, c.completions), false};
  r.charming = compare_with_power(r.q.value(), n, -exponent(alpha)) == std::strong_ordering::greater;
  return r;
}

CharmingProfile charming_profile(const Walk& gamma, const SnakeParams& params, std::optional<std::size_t> center,
                                 const EngineOptions& options) {
  const std::size_t n = params.n, ell = params.ell;
  if (!odd(n)) throw std::invalid_argument("charming_profile: n must be odd");
  if (ell > n) throw std::invalid_argument("charming_profile: ell exceeds n");
  if (gamma.length() < ell) throw std::invalid_argument("charming_profile: walk shorter than ell");

  CharmingProfile p;
  p.source = serialize_walk(gamma.subwalk(0, ell));
  p.n = n;
  p.ell = ell;
  p.alpha = params.alpha;
  p.beta = params.beta;
  p.eta = params.eta;
  const std::uint64_t reach = floor_power(n, exponent(params.beta));
  p.interval_lo = reach >= ell ? 0 : ell - static_cast<std::size_t>(reach);
  p.interval_hi = ell;
  p.cs_threshold = std::pow(static_cast<double>(n), params.beta - params.eta) / 4;

  std::vector<std::size_t> ks;
  for (std::size_t k = p.interval_lo; k <= ell; ++k) {
    if ((ell - k) % 2 == 0) ks.push_back(k);
  }
  std::set<std::size_t> wanted(ks.begin(), ks.end());
  if (center) {
    const double half = 2 * std::sqrt(static_cast<double>(n)) * std::pow(std::log(static_cast<double>(n)), 0.25);
    const double lo = std::ceil(static_cast<double>(*center) - half);
    const double hi = std::floor(static_cast<double>(*center) + half);
    p.center = center;
    p.window_lo = lo <= 0 ? 0 : static_cast<std::size_t>(lo);
    p.window_hi = hi <= 0 ? 0 : static_cast<std::size_t>(std::min(hi, static_cast<double>(ell)));
    if (hi >= 0) {
      for (std::size_t j = p.window_lo; j <= p.window_hi && j <= ell; ++j) {
        if ((ell - j) % 2 == 0) wanted.insert(j);
      }
    }
  }

  const std::vector<std::size_t> all(wanted.begin(), wanted.end());
  std::vector<std::optional<ConditionalClosing>> results(all.size());
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const EngineOptions serial = serial_of(options);
  parallel_for(all.size(), options.threads, [&](std::size_t i) {
    try {
      results[i] = conditional_closing_prob(gamma, all[i], n, ell, params.alpha, serial);
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  });
  if (failure) std::rethrow_exception(failure);

  std::map<std::size_t, ConditionalClosing> by_index;
  for (std::size_t i = 0; i < all.size(); ++i) by_index.emplace(all[i], *results[i]);
  for (std::size_t k : ks) {
    p.entries.push_back(by_index.at(k));
    p.charming_count += p.entries.back().charming;
  }
  p.admissible = ks.size();
  // count >= n^(beta - eta) / 4, compared exactly
  p.cs = compare_with_power(Rational(4 * p.charming_count), n, exponent(params.beta) - exponent(params.eta)) !=
         std::strong_ordering::less;
  if (center && p.window_hi >= p.window_lo) {
    for (auto& [j, c] : by_index) {
      if (j < p.window_lo || j > p.window_hi) continue;
      p.window_entries.push_back(c);
      if (!c.charming) p.n_set.push_back(j);
    }
  }
  return p;
}

std::string charming_profile_csv(const CharmingProfile& profile) {
  std::ostringstream os;
  os << "k,q_num,q_den,charming\n";
  for (const auto& e : profile.entries) {
    os << e.k << ',' << e.q.numerator() << ',' << e.q.denominator() << ',' << (e.charming ? 1 : 0) << '\n';
  }
  return os.str();
}

BadIndexReport bad_index_set_and_select_ell(std::size_t n, double alpha_prime, double delta_prime, int dim,
                                            const EngineOptions& options) {
  if (!odd(n)) throw std::invalid_argument("bad_index_set_and_select_ell: n must be odd");
  check_guardrail(n, dim, options);
  BadIndexReport r;
  r.n = n;
  r.d = dim;
  r.alpha_prime = alpha_prime;
  r.delta_prime = delta_prime;
  FirstLengthHistograms h = first_length_histograms(n, dim, options);
  r.total = std::move(h.total);
  r.closing = std::move(h.closing);
  BigInt total = 0, closing = 0;
  for (std::size_t i = 0; i <= n; ++i) {
    total += r.total[i];
    closing += r.closing[i];
  }
  r.closing_prob = ExactProb(closing, total);
  r.premise = compare_with_power(r.closing_prob.value(), n, -exponent(alpha_prime)) != std::strong_ordering::less;

  const Exponent factor = exponent(alpha_prime) + exponent(delta_prime);
  for (std::size_t i = 0; i <= n; ++i) {
    const bool bad = r.closing[i] == 0 ||
                     compare_with_power(Rational(r.total[i], r.closing[i]), n, factor) != std::strong_ordering::less;
    if (bad) r.Q.push_back(i);
  }
  const Exponent bound_exp = Exponent::from_ratio(1, 1) - exponent(delta_prime);
  r.q_bound = 2 * std::pow(static_cast<double>(n), bound_exp.value());
  r.bound_holds = compare_with_power(Rational(BigInt(r.Q.size()), BigInt(2)), n, bound_exp) !=
                  std::strong_ordering::greater;
  r.lemma_asserted = r.premise;

  for (std::size_t i = (n + 3) / 4; i <= 3 * n / 4; ++i) {
    if (!std::binary_search(r.Q.begin(), r.Q.end(), i)) {
      r.ell = i;
      break;
    }
  }
  return r;
}

LawIdentityReport first_part_law_identity_check(std::size_t n, std::size_t ell, int dim,
                                                const EngineOptions& options) {
  if (ell > n) throw std::invalid_argument("first_part_law_identity_check: ell exceeds n");
  LawIdentityReport r;
  r.n = n;
  r.ell = ell;
  if (!odd(n) || n < 3) {
    r.vacuous = true;
    r.equal = true;
    return r;
  }
  check_guardrail(n, dim, options);
  using Law = std::map<std::string, std::uint64_t>;
  struct Side {
    Law law;
    std::uint64_t total = 0;
  };
  auto merge_side = [](Side& t, Side&& p) {
    for (auto& [k, v] : p.law) t.law[k] += v;
    t.total += p.total;
  };

  Side poly;
  enumerate_polygons(
      n + 1, dim,
      [&](const WalkView& w) {
        ++poly.law[step_key(w.steps.first(ell))];
        ++poly.total;
      },
      [&] {
        EngineOptions o = options;
        o.delivery = Delivery::Serialized;
        return o;
      }());

  Side walks = enumerate_reduce(
      n, dim, Constraint::ne_at_origin(), Side{},
      [ell](Side& acc, const WalkView& v) {
        if (!adjacent(v.vertices.front(), v.vertices.back())) return;
        Decomposition dec = decompose(v.to_walk());
        if (dec.first.length() != ell) return;
        ++acc.law[step_key(dec.first.steps())];
        ++acc.total;
      },
      merge_side, options);

  r.polygons = poly.total;
  r.closing_walks = walks.total;
  r.vacuous = poly.total == 0 && walks.total == 0;
  std::set<std::string> keys;
  for (auto& [k, v] : poly.law) keys.insert(k);
  for (auto& [k, v] : walks.law) keys.insert(k);
  r.support = keys.size();
  r.equal = true;
  for (const auto& k : keys) {
    const auto a = poly.law.count(k) ? poly.law.at(k) : 0;
    const auto b = walks.law.count(k) ? walks.law.at(k) : 0;
    if (BigInt(a) * walks.total != BigInt(b) * poly.total) r.equal = false;
  }
  return r;
}

Walk reflected_concatenation(const Walk& phi, const Walk& gamma) {
  const int d = phi.dim();
  Walk edge(LatticePoint(d), {Step(distinguished_axis(d), 1)});
  return reverse_walk(phi).then(edge).then(reflect_for_construction(gamma));
}

ReflectedFamily reflected_walk_family(const Walk& phi, std::size_t n, const EngineOptions& options) {
  require_first_part(phi);
  const std::size_t ell = phi.length();
  if (ell > n) throw std::invalid_argument("reflected_walk_family: first part longer than n");
  if (count_completions(phi, n - ell, options).completions == 0) {
    throw std::invalid_argument("reflected_walk_family: first part has no completion to length n");
  }
  const int d = phi.dim();
  const int axis = distinguished_axis(d);
  ReflectedFamily f;
  f.phi = phi;
  f.n = n;
  f.ell = ell;
  const Walk rev = reverse_walk(phi);
  std::set<std::string> seen;
  enumerate_saw(
      n - ell, d, Constraint::start_is_ne(),
      [&](const WalkView& v) {
        ++f.w_size;
        const Walk full = reflected_concatenation(phi, v.to_walk());
        if (full.length() != n + 1 || !is_self_avoiding(full)) f.all_self_avoiding = false;
        for (std::size_t i = 0; i <= full.length(); ++i) {
          const int c = full[i][axis - 1];
          if (i <= ell ? c > 0 : c < 1) f.sides_separated = false;
        }
        const Walk cut = full.subwalk(0, n);
        if (!std::equal(rev.steps().begin(), rev.steps().end(), cut.steps().begin())) f.prefix_is_reverse_phi = false;
        if (seen.insert(step_key(cut.steps())).second) f.walks.push_back(cut);
      },
      [&] {
        EngineOptions o = options;
        o.threads = 1;
        return o;
      }());
  f.bound_holds = 2 * static_cast<std::size_t>(d) * f.walks.size() >= f.w_size;
  return f;
}

BootstrapTable bootstrap_table(const Walk& phi, std::size_t n, std::size_t ell, const std::vector<std::size_t>& js,
                               const EngineOptions& options) {
  if (ell > n || phi.length() < ell) throw std::invalid_argument("bootstrap_table: need |phi| >= ell and ell <= n");
  for (std::size_t i = 0; i < js.size(); ++i) {
    if (js[i] > ell || (i > 0 && js[i] <= js[i - 1])) {
      throw std::invalid_argument("bootstrap_table: indices must increase strictly within [0, ell]");
    }
  }
  const int d = phi.dim();
  std::unordered_map<LatticePoint, std::size_t, LatticePointHash> where;
  for (std::size_t i = 1; i <= ell; ++i) where.emplace(phi[i], i);

  const std::size_t r = js.size();
  struct Acc {
    std::uint64_t walks = 0;
    std::vector<std::uint64_t> avoid, close, both;
    bool monotone = true;
    std::size_t max_mult = 0;
  };
  Acc init{0, std::vector<std::uint64_t>(r, 0), std::vector<std::uint64_t>(r, 0), std::vector<std::uint64_t>(r, 0),
           true, 0};
  Acc acc = enumerate_reduce(
      n - ell, d, Constraint::start_is_ne(), init,
      [&](Acc& a, const WalkView& v) {
        ++a.walks;
        std::size_t first_hit = ell + 1;
        for (std::size_t i = 1; i < v.vertices.size(); ++i) {
          auto it = where.find(v.vertices[i]);
          if (it != where.end()) first_hit = std::min(first_hit, it->second);
        }
        bool prev_avoid = true;
        std::size_t mult = 0;
        for (std::size_t i = 0; i < r; ++i) {
          const bool av = first_hit > js[i];
          const bool cl = adjacent(v.vertices.back(), phi[js[i]]);
          if (av && !prev_avoid) a.monotone = false;
          prev_avoid = av;
          a.avoid[i] += av;
          a.close[i] += cl;
          a.both[i] += av && cl;
          mult += cl;
        }
        a.max_mult = std::max(a.max_mult, mult);
      },
      [](Acc& t, Acc&& p) {
        t.walks += p.walks;
        for (std::size_t i = 0; i < t.avoid.size(); ++i) {
          t.avoid[i] += p.avoid[i];
          t.close[i] += p.close[i];
          t.both[i] += p.both[i];
        }
        t.monotone = t.monotone && p.monotone;
        t.max_mult = std::max(t.max_mult, p.max_mult);
      },
      options);

  BootstrapTable t;
  t.n = n;
  t.ell = ell;
  t.w_size = acc.walks;
  const BigInt w(acc.walks);
  t.close_sum = 0;
  for (std::size_t i = 0; i < r; ++i) {
    BootstrapRow row;
    row.j = js[i];
    row.p_avoid = ExactProb(BigInt(acc.avoid[i]), w);
    row.p_close = ExactProb(BigInt(acc.close[i]), w);
    if (acc.avoid[i] > 0) row.p_close_given_avoid = ExactProb(BigInt(acc.both[i]), BigInt(acc.avoid[i]));
    t.close_sum += row.p_close.value();
    t.rows.push_back(std::move(row));
  }
  t.avoid_monotone = acc.monotone;
  for (std::size_t i = 1; i < r; ++i) {
    if (t.rows[i].p_avoid > t.rows[i - 1].p_avoid) t.avoid_monotone = false;
  }
  t.max_close_multiplicity = acc.max_mult;
  t.multiplicity_capped = acc.max_mult <= 2 * static_cast<std::size_t>(d);
  t.close_sum_capped = t.close_sum <= 2 * d;
  return t;
}

SnakeChainReport snake_chain_check(const SnakeParams& params, const EngineOptions& options) {
  const std::size_t n = params.n, ell = params.ell;
  if (!odd(n) || ell > n) throw std::invalid_argument("snake_chain_check: need odd n and ell <= n");
  check_guardrail(n + 1, params.d, options);
  const int d = params.d;
  SnakeChainReport r;
  r.n = n;
  r.ell = ell;
  r.c_n = count_saw(n, d, Constraint::origin_start(), options);
  r.w_size = count_saw(n - ell, d, Constraint::start_is_ne(), options);

  FirstPartTable table = first_part_table(ell, n, params.alpha, d, options);
  r.first_parts = table.entries.size();
  std::set<std::string> cs;
  r.reflection_bound = true;
  r.reflected_sum = 0;
  r.ne_first_in_cs = 0;
  r.closing_first_in_cs = 0;
  for (const auto& e : table.entries) {
    if (!charming_profile(e.first, params, std::nullopt, options).cs) continue;
    cs.insert(step_key(e.first.steps()));
    const BigInt ext = count_saw(n - ell, d, Constraint{WalkSet::OriginStart, e.first}, options);
    r.reflected_sum += ext;
    if (ext * 2 * d < r.w_size) r.reflection_bound = false;
    r.ne_first_in_cs += e.completions;
    r.closing_first_in_cs += e.closing;
  }
  r.cs_size = cs.size();
  r.polygons_prefix_in_cs = 0;
  EngineOptions serialized = options;
  serialized.delivery = Delivery::Serialized;
  enumerate_polygons(
      n + 1, d,
      [&](const WalkView& w) {
        if (cs.count(step_key(w.steps.first(ell)))) r.polygons_prefix_in_cs += 1;
      },
      serialized);
  r.walks_dominate = r.c_n >= r.reflected_sum;
  r.closing_subset = r.ne_first_in_cs >= r.closing_first_in_cs;
  r.polygon_identity = r.closing_first_in_cs == 2 * r.polygons_prefix_in_cs;
  return r;
}

}  // namespace sawlab
