#include "sawlab/verify.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "sawlab/codec.hpp"
#include "sawlab/fixtures.hpp"
#include "sawlab/patterns.hpp"
#include "sawlab/resampler.hpp"
#include "sawlab/snake.hpp"
#include "sawlab/two_part.hpp"

namespace sawlab {

namespace {

struct Recorder {
  std::string suite;
  std::vector<CheckResult>& out;

  void operator()(const std::string& name, const std::function<std::string()>& body) const {
    CheckResult r{suite, name, false, {}};
    try {
      r.detail = body();
      r.passed = r.detail.empty();
    } catch (const GuardrailError&) {
      throw;
    } catch (const std::exception& e) {
      r.detail = std::string("exception: ") + e.what();
    }
    out.push_back(std::move(r));
  }
};

std::string fail_if(bool bad, const std::string& what) { return bad ? what : std::string(); }

void counting_suite(const Recorder& check, std::size_t nmax, const EngineOptions& options) {
  check("closing identity", [&] {
    for (std::size_t n = 3; n <= nmax; n += 2) {
      CountReport r = closing_probabilities(n, 2, options);
      if (!(r.closing_direct == r.closing_identity)) return "mismatch at n=" + std::to_string(n);
    }
    return std::string();
  });
  check("thread count does not change c_n", [&] {
    EngineOptions one = options;
    one.threads = 1;
    return fail_if(count_saw(nmax, 2, Constraint::origin_start(), one) !=
                       count_saw(nmax, 2, Constraint::origin_start(), options),
                   "c_n differs between thread counts");
  });
  check("walk sets nest", [&] {
    for (std::size_t n = 1; n <= nmax; ++n) {
      const BigInt all = count_saw(n, 2, Constraint::origin_start(), options);
      const BigInt ne = count_saw(n, 2, Constraint::ne_at_origin(), options);
      const BigInt first = count_saw(n, 2, Constraint::start_is_ne(), options);
      if (all != ne || first > ne) return "at n=" + std::to_string(n);
    }
    return std::string();
  });
}

void two_part_suite(const Recorder& check, std::size_t nmax, const EngineOptions& options) {
  EngineOptions serialized = options;
  serialized.delivery = Delivery::Serialized;
  check("compose inverts decompose", [&] {
    std::size_t bad = 0;
    enumerate_saw(
        std::min<std::size_t>(nmax, 7), 2, Constraint::origin_start(),
        [&](const WalkView& v) {
          const Walk w = v.to_walk();
          bad += !(compose(decompose(w)) == w);
        },
        serialized);
    return fail_if(bad != 0, std::to_string(bad) + " walks fail to roundtrip");
  });
  check("closing first-length histogram is flat", [&] {
    for (std::size_t n = 3; n <= nmax; n += 2) {
      auto h = closing_first_length_histogram(n, 2, options);
      if (std::any_of(h.begin(), h.end(), [&](const BigInt& b) { return b != h.front(); })) {
        return "not flat at n=" + std::to_string(n);
      }
    }
    return std::string();
  });
  check("first parts leave west and stay low", [&] {
    std::size_t bad = 0;
    enumerate_saw(
        nmax, 2, Constraint::ne_at_origin(),
        [&](const WalkView& v) {
          const Walk f = decompose(v.to_walk()).first;
          if (f.length() == 0) return;
          bool ok = f[1] == LatticePoint{-1, 0};
          for (std::size_t i = 0; i <= f.length(); ++i) {
            ok = ok && f[i][1] <= 0 && !(i >= 1 && f[i][1] == 0 && f[i][0] >= 0);
          }
          bad += !ok;
        },
        serialized);
    return fail_if(bad != 0, std::to_string(bad) + " first parts violate the shape bullets");
  });
}

void patterns_suite(const Recorder& check) {
  check("canonical pairs validate", [] {
    for (int d : {2, 3}) {
      PatternValidation v = validate_pattern_pair(canonical_pattern_pair(d));
      if (!v.ok) return "d=" + std::to_string(d) + ": " + v.violations.front();
    }
    return std::string();
  });
  check("corpus slot invariants", [] {
    const PatternPair& pair = canonical_pattern_pair(2);
    const auto& corpus = fixture_corpus();
    if (corpus.size() < 50) return std::string("corpus smaller than 50");
    for (const auto& f : corpus) {
      SlotMap m = slot_partition(f.polygon, 0.0, pair);
      EmptyPolygon e = empty_polygon(f.polygon, pair);
      if (f.polygon.length() != e.polygon.length() + 2 * e.t_ii || e.t_ii != m.counts.T_II) return f.name;
    }
    return std::string();
  });
}

void resampler_suite(const Recorder& check) {
  check("hypergeometric pmf sums to one", [] {
    for (std::size_t s1 = 0; s1 <= 12; ++s1) {
      for (std::size_t s2 = 0; s1 + s2 <= 12; ++s2) {
        for (std::size_t ni = 0; ni <= s1 + s2; ++ni) {
          const std::size_t lo = ni > s2 ? ni - s2 : 0;
          Rational sum = 0;
          for (const auto& p : hypergeometric_pmf_range(s1, s2, ni, lo, std::min(ni, s1))) sum += p.value();
          if (sum != 1) return "(" + std::to_string(s1) + "," + std::to_string(s2) + "," + std::to_string(ni) + ")";
        }
      }
    }
    return std::string();
  });
  check("resampling equilibrium", [] {
    for (const auto& f : fixture_corpus()) {
      EquilibriumReport r = equilibrium_and_pmf_test(f.polygon, 20000, 7);
      if (r.k < 2 || r.j == 0 || r.j == r.k) continue;
      return fail_if(!r.pass, f.name + " fails the equilibrium test");
    }
    return std::string("no fixture with a nontrivial shell");
  });
}

void snake_suite(const Recorder& check, std::size_t nmax, const EngineOptions& options) {
  const std::size_t top = std::min<std::size_t>(nmax, 9);
  check("first-part law identity", [&] {
    for (std::size_t n = 1; n <= top; ++n) {
      for (std::size_t ell = 0; ell <= n; ++ell) {
        if (!first_part_law_identity_check(n, ell, 2, options).equal) {
          return "n=" + std::to_string(n) + " ell=" + std::to_string(ell);
        }
      }
    }
    return std::string();
  });
  check("conditional closing at k = ell equals q", [&] {
    const std::size_t n = top % 2 ? top : top - 1;
    for (std::size_t ell = 0; ell <= n; ++ell) {
      for (const auto& e : first_part_table(ell, n, 0.5, 2, options).entries) {
        if (!(conditional_closing_prob(e.first, ell, n, ell, 0.5, options).q == e.q)) return serialize_walk(e.first);
      }
    }
    return std::string();
  });
  check("reflection and bootstrap caps", [&] {
    const std::size_t n = top % 2 ? top : top - 1;
    const std::size_t ell = n / 2;
    for (const auto& e : first_part_table(ell, n, 0.5, 2, options).entries) {
      ReflectedFamily f = reflected_walk_family(e.first, n, options);
      if (!f.all_self_avoiding || !f.sides_separated || !f.bound_holds) return "reflection: " + serialize_walk(e.first);
      std::vector<std::size_t> js(ell + 1);
      for (std::size_t j = 0; j <= ell; ++j) js[j] = j;
      BootstrapTable t = bootstrap_table(e.first, n, ell, js, options);
      if (!t.avoid_monotone || !t.multiplicity_capped || !t.close_sum_capped) return "bootstrap: " + serialize_walk(e.first);
    }
    return std::string();
  });
  check("bad-index lemma", [&] {
    for (std::size_t n = 3; n <= top; n += 2) {
      for (double a : {0.5, 1.0, 1.5, 2.0}) {
        for (double dp : {0.25, 0.5, 1.0}) {
          BadIndexReport r = bad_index_set_and_select_ell(n, a, dp, 2, options);
          if (r.lemma_asserted && !r.bound_holds) return "n=" + std::to_string(n);
        }
      }
    }
    return std::string();
  });
}

}  // namespace

std::vector<CheckResult> run_verify_suite(const std::string& suite, std::size_t nmax, const EngineOptions& options) {
  static const std::vector<std::string> known{"counting", "two_part", "patterns", "resampler", "snake"};
  if (suite != "all" && std::find(known.begin(), known.end(), suite) == known.end()) {
    throw std::invalid_argument("unknown suite: " + suite);
  }
  if (nmax < 3) throw std::invalid_argument("verify needs nmax >= 3");
  check_guardrail(nmax + 1, 2, options);
  std::vector<CheckResult> out;
  auto want = [&](const char* s) { return suite == "all" || suite == s; };
  if (want("counting")) counting_suite(Recorder{"counting", out}, nmax, options);
  if (want("two_part")) two_part_suite(Recorder{"two_part", out}, nmax, options);
  if (want("patterns")) patterns_suite(Recorder{"patterns", out});
  if (want("resampler")) resampler_suite(Recorder{"resampler", out});
  if (want("snake")) snake_suite(Recorder{"snake", out}, nmax, options);
  return out;
}

}  // namespace sawlab
