// One PASS/FAIL line per acceptance criterion. Reference values come from the
// brute-force routines in oracle.hpp or from direct computations here.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <thread>

#include "oracle.hpp"
#include "sawlab/counting.hpp"
#include "sawlab/fixtures.hpp"
#include "sawlab/patterns.hpp"
#include "sawlab/resampler.hpp"
#include "sawlab/snake.hpp"
#include "sawlab/two_part.hpp"

using namespace sawlab;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Records the first failure; later failures only bump the count.
struct Tally {
  bool ok = true;
  std::size_t failures = 0;
  std::string first;
  void fail(const std::string& what) {
    if (ok) first = what;
    ok = false;
    ++failures;
  }
  void require(bool cond, const std::string& what) {
    if (!cond) fail(what);
  }
  Outcome done(const std::string& summary) const {
    if (ok) return {true, summary};
    return {false, std::to_string(failures) + " failure(s), first: " + first};
  }
};

std::string s(std::size_t v) { return std::to_string(v); }

Walk from_path(const oracle::Path& p) {
  std::vector<LatticePoint> vs;
  for (const auto& q : p) {
    LatticePoint v(static_cast<int>(q.size()));
    for (std::size_t i = 0; i < q.size(); ++i) v[static_cast<int>(i)] = q[i];
    vs.push_back(v);
  }
  return Walk::from_vertices(vs);
}

oracle::Path to_path(const Walk& w) {
  oracle::Path p;
  for (const auto& v : w.vertices()) {
    oracle::Pt q;
    for (int i = 0; i < v.dim(); ++i) q.push_back(v[i]);
    p.push_back(q);
  }
  return p;
}

oracle::Path ne_shift(const oracle::Path& p) {
  oracle::Pt ne = p.front();
  for (const auto& v : p) {
    if (oracle::lex_less(ne, v)) ne = v;
  }
  oracle::Path out;
  for (auto v : p) {
    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= ne[i];
    out.push_back(v);
  }
  return out;
}

BigInt bin(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  BigInt r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Canonical polygon trace from a closed vertex cycle: start at the lex-maximal
// vertex, leave towards its lex-larger neighbour.
oracle::Path canonical_trace(const oracle::Path& cycle) {
  const std::size_t m = cycle.size();
  std::size_t j = 0;
  for (std::size_t i = 1; i < m; ++i) {
    if (oracle::lex_less(cycle[j], cycle[i])) j = i;
  }
  const oracle::Pt& a = cycle[(j + 1) % m];
  const oracle::Pt& b = cycle[(j + m - 1) % m];
  const bool forward = oracle::lex_less(b, a);
  oracle::Path out;
  for (std::size_t t = 0; t <= m; ++t) out.push_back(cycle[forward ? (j + t) % m : (j + m - t % m) % m]);
  return ne_shift(out);
}

// ---------------------------------------------------------------------------

Outcome criterion_1() {
  Tally t;
  for (std::size_t n = 0; n <= 10; ++n) {
    t.require(count_saw(n, 2, Constraint::origin_start()) == oracle::count_walks(n, 2), "c_" + s(n) + " d=2");
  }
  for (std::size_t n = 0; n <= 7; ++n) {
    t.require(count_saw(n, 3, Constraint::origin_start()) == oracle::count_walks(n, 3), "c_" + s(n) + " d=3");
  }
  for (std::size_t n = 4; n <= 14; n += 2) {
    t.require(count_polygons(n, 2) == oracle::count_polygons(n, 2), "p_" + s(n));
  }
  return t.done("c_n d=2 n<=10, d=3 n<=7, p_n even n<=14 match brute force");
}

Outcome criterion_2() {
  Tally t;
  for (std::size_t n = 3; n <= 13; n += 2) {
    CountReport r = closing_probabilities(n, 2);
    std::uint64_t c = 0, closing = 0;
    oracle::walks(n, 2, [&](const oracle::Path& p) {
      ++c;
      closing += oracle::nbr(p.front(), p.back());
    });
    const std::uint64_t p = oracle::count_polygons(n + 1, 2);
    const ExactProb direct{BigInt(closing), BigInt(c)};
    const ExactProb identity{BigInt(2 * (n + 1) * p), BigInt(c)};
    t.require(r.closing_direct == direct, "direct n=" + s(n));
    t.require(r.closing_identity == identity, "identity n=" + s(n));
    t.require(direct == identity, "oracle identity n=" + s(n));
    t.require(r.closing_direct == r.closing_identity, "engine identity n=" + s(n));
  }
  t.require(closing_probabilities(3, 2).closing_direct == ExactProb(BigInt(2), BigInt(9)), "W_3");
  t.require(closing_probabilities(5, 2).closing_direct == ExactProb(BigInt(6), BigInt(71)), "W_5");
  t.require(closing_probabilities(7, 2).closing_direct == ExactProb(BigInt(28), BigInt(543)), "W_7");
  return t.done("identity exact for odd 3..13; W_3=2/9, W_5=6/71, W_7=28/543");
}

Outcome criterion_3() {
  Tally t;
  for (std::size_t n : {3, 5, 7}) {
    auto h = closing_first_length_histogram(n, 2);
    std::vector<std::uint64_t> o(n + 1, 0);
    oracle::walks(n, 2, [&](const oracle::Path& p) {
      if (oracle::nbr(p.front(), p.back())) ++o[oracle::parts(p).first.size() - 1];
    });
    for (std::size_t i = 0; i <= n; ++i) {
      t.require(h[i] == o[i], "histogram n=" + s(n) + " i=" + s(i));
      t.require(h[i] == h[0], "flat n=" + s(n) + " i=" + s(i));
    }
  }
  return t.done("histograms flat and equal to brute force for n=3,5,7");
}

Outcome criterion_4() {
  Tally t;
  std::size_t walks = 0;
  oracle::walks(6, 2, [&](const oracle::Path& p) {
    ++walks;
    const Walk w = from_path(p);
    const Decomposition dec = decompose(w);
    t.require(compose(dec) == w, "roundtrip");
    const auto [first, second] = oracle::parts(p);
    t.require(to_path(dec.first.translated(-dec.meeting)) == first, "first part vs brute force");
    t.require(to_path(dec.second.translated(-dec.meeting)) == second, "second part vs brute force");
  });
  std::size_t checked = 0;
  oracle::walks(8, 2, [&](const oracle::Path& p) {
    const Walk w = from_path(ne_shift(p));
    const Walk f = decompose(w).first;
    if (f.length() == 0) return;
    ++checked;
    bool ok = f[0] == LatticePoint{0, 0} && f[1] == LatticePoint{-1, 0};
    for (std::size_t i = 0; i <= f.length(); ++i) {
      ok = ok && f[i][1] <= 0;
      if (i >= 1) ok = ok && !(f[i][1] == 0 && f[i][0] >= 0);
    }
    t.require(ok, "bullets on a first part of SAW^0_8");
  });
  return t.done("roundtrip on " + s(walks) + " walks of SAW_6; bullets on " + s(checked) + " first parts of SAW^0_8");
}

Outcome criterion_5() {
  Tally t;
  const PatternPair& pair = canonical_pattern_pair(2);
  const oracle::Path one = to_path(pair.chi_I), two = to_path(pair.chi_II);
  t.require(one.size() == 12 && two.size() == 14, "pattern lengths 11/13");
  for (const auto* path : {&one, &two}) {
    std::set<oracle::Pt> seen(path->begin(), path->end());
    t.require(seen.size() == path->size(), "pattern self-avoiding");
    for (const auto& v : *path) t.require(v[0] >= 0 && v[0] <= 3 && v[1] >= 0 && v[1] <= 3, "inside [0,3]^2");
    for (int x = 0; x <= 3; ++x) {
      for (int y = 0; y <= 3; ++y) {
        if (x == 0 || x == 3 || y == 0 || y == 3) t.require(seen.count({x, y}) == 1, "boundary coverage");
      }
    }
    t.require(path->front() == oracle::Pt{1, 3} && path->back() == oracle::Pt{2, 3}, "endpoints");
  }
  t.require(validate_pattern_pair(pair).ok, "library validation");

  const auto& corpus = fixture_corpus();
  t.require(corpus.size() >= 50, "corpus size");
  std::set<std::vector<Edge>, bool (*)(const std::vector<Edge>&, const std::vector<Edge>&)> distinct(
      [](const std::vector<Edge>& a, const std::vector<Edge>& b) {
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), edge_less);
      });
  for (const auto& f : corpus) {
    { auto e = f.polygon.edges(); distinct.insert(std::vector<Edge>(e.begin(), e.end())); }
    SlotMap m = scan_patterns(f.polygon.canonical_path(), pair);
    t.require(!m.slots.empty(), f.name + " has no slot");
    for (std::size_t a = 0; a < m.slots.size(); ++a) {
      for (std::size_t b = a + 1; b < m.slots.size(); ++b) {
        const auto& u = m.slots[a].base;
        const auto& v = m.slots[b].base;
        t.require(std::abs(u[0] - v[0]) >= 4 || std::abs(u[1] - v[1]) >= 4, f.name + " slot cubes intersect");
      }
    }
    EmptyPolygon e = empty_polygon(f.polygon, pair);
    t.require(f.polygon.length() == e.polygon.length() + 2 * m.counts.T_II, f.name + " length identity");
  }
  t.require(distinct.size() == corpus.size(), "corpus polygons distinct");
  return t.done("pair valid; " + s(corpus.size()) + " corpus polygons: disjoint slots, |p| = |empty| + 2 T_II");
}

Outcome criterion_6() {
  Tally t;
  const PatternPair& pair = canonical_pattern_pair(2);
  std::size_t pairs = 0;
  for (const auto& f : fixture_corpus()) {
    const Walk path = f.polygon.canonical_path();
    SlotMap m = scan_patterns(path, pair);
    const Walk empty = empty_walk(path, pair);
    std::vector<std::size_t> steps;
    std::vector<PatternType> types;
    for (const auto& sl : m.slots) {
      steps.push_back(sl.empty_step);
      types.push_back(sl.type);
    }
    for (std::size_t i = 0; i < types.size(); ++i) {
      auto flipped = types;
      flipped[i] = flipped[i] == PatternType::I ? PatternType::II : PatternType::I;
      const Walk other = apply_pattern_types(empty, steps, flipped, pair);
      // closing walks: the traces without their last edge
      const Walk g = path.subwalk(0, path.length() - 1);
      const Walk h = other.subwalk(0, other.length() - 1);
      ++pairs;
      try {
        t.require(avoidance_equivalence_check(g, h, 6, pair), f.name + " slot " + s(i) + " trace");
        // walks starting two steps before the swapped slot
        const std::size_t at = m.slots[i].step;
        if (at >= 2) {
          ++pairs;
          t.require(avoidance_equivalence_check(path.subwalk(at - 2, path.length()),
                                                other.subwalk(at - 2, other.length()), 6, pair),
                    f.name + " slot " + s(i) + " suffix");
        }
      } catch (const std::exception& e) {
        t.fail(f.name + ": " + e.what());
      }
    }
  }
  return t.done(s(pairs) + " one-swap pairs, all extensions of length <= 6, no discrepancy");
}

Outcome criterion_7() {
  Tally t;
  const PatternPair& pair = canonical_pattern_pair(2);
  std::size_t shells = 0;
  for (const auto& f : fixture_corpus()) {
    SlotMap m = slot_partition(f.polygon, 0.0, pair);
    const std::size_t k = m.s1.size() + m.s2.size();
    const std::size_t j = m.counts.N_II;
    if (k > 5) continue;
    ++shells;
    auto members = local_shell_members(f.polygon, pair);
    t.require(members.size() == bin(k, j), f.name + " member count");
    std::set<std::vector<Edge>, bool (*)(const std::vector<Edge>&, const std::vector<Edge>&)> distinct(
        [](const std::vector<Edge>& a, const std::vector<Edge>& b) {
          return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), edge_less);
        });
    const LocalShellKey key = local_shell_key(f.polygon, pair);
    std::vector<BigInt> by_n_i1(m.s1.size() + 1, 0);
    for (const auto& q : members) {
      { auto e = q.edges(); distinct.insert(std::vector<Edge>(e.begin(), e.end())); }
      t.require(local_shell_key(q, pair) == key, f.name + " member shell key");
      t.require(q.length() == f.polygon.length(), f.name + " member length");
      by_n_i1[slot_partition(q, 0.0, pair).counts.N_I1] += 1;
    }
    t.require(distinct.size() == members.size(), f.name + " members distinct");
    // every draw lands on the member named by its subset
    for (std::uint64_t d = 0; d < 20; ++d) {
      const auto mask = draw_shell_subset(k, j, 99, d);
      t.require(resample_local_shell(f.polygon, 99, d).gamma_out == local_shell_member(f.polygon, mask, pair),
                f.name + " draw maps to its member");
    }
    const std::size_t n_i = k - j;
    for (std::size_t x = 0; x <= m.s1.size(); ++x) {
      const BigInt expect = x <= n_i && n_i - x <= m.s2.size() ? bin(m.s1.size(), x) * bin(m.s2.size(), n_i - x) : 0;
      t.require(by_n_i1[x] == expect, f.name + " hypergeometric member counts");
    }
  }
  t.require(shells > 0, "no shell with at most 5 slots");

  std::optional<EquilibriumReport> eq;
  for (const auto& f : fixture_corpus()) {
    SlotMap m = slot_partition(f.polygon, 0.0, pair);
    if (m.s1.size() == 2 && m.s2.size() == 2 && m.counts.N_II == 2) {
      eq = equilibrium_and_pmf_test(f.polygon, 100000, 20240601);
      break;
    }
  }
  std::ostringstream chi;
  if (!eq) {
    t.fail("no k=4, j=2 fixture");
  } else {
    t.require(eq->members.p_value > 0.01, "member chi-square");
    t.require(eq->marginal.p_value > 0.01, "marginal chi-square");
    t.require(eq->exact_identity, "pmf identity");
    chi << "members p=" << eq->members.p_value << ", marginal p=" << eq->marginal.p_value;
  }

  std::size_t grid = 0;
  for (std::size_t s1 = 0; s1 <= 12; ++s1) {
    for (std::size_t s2 = 0; s1 + s2 <= 12; ++s2) {
      for (std::size_t ni = 0; ni <= s1 + s2; ++ni) {
        ++grid;
        const std::size_t lo = ni > s2 ? ni - s2 : 0, hi = std::min(ni, s1);
        const BigInt total = bin(s1 + s2, ni);
        Rational sum = 0;
        std::vector<Rational> p;
        for (std::size_t x = lo; x <= hi; ++x) {
          const Rational expect(bin(s1, x) * bin(s2, ni - x), total);
          t.require(hypergeometric_pmf(s1, s2, ni, x).value() == expect, "pmf value");
          p.push_back(expect);
          sum += expect;
        }
        t.require(sum == 1, "pmf sum");
        const std::size_t top = static_cast<std::size_t>(std::max_element(p.begin(), p.end()) - p.begin());
        for (std::size_t i = 1; i <= top; ++i) t.require(p[i - 1] <= p[i], "rising to the mode");
        for (std::size_t i = top + 1; i < p.size(); ++i) t.require(p[i - 1] >= p[i], "falling after the mode");
        if (s1 + s2 > 0) {
          const Rational mean(BigInt(ni * s1), BigInt(s1 + s2));
          const Rational gap = Rational(BigInt(lo + top)) - mean;
          t.require(gap <= 1 && gap >= -1, "mode within one of the mean");
          // tail mass beyond distance r shrinks as r grows
          Rational prev = 2;
          for (std::size_t r = 0; r <= s1 + s2; ++r) {
            Rational tail = 0;
            for (std::size_t i = 0; i < p.size(); ++i) {
              const Rational dist = Rational(BigInt(lo + i)) - mean;
              if (dist >= r || -dist >= r) tail += p[i];
            }
            t.require(tail <= prev, "tail mass monotone");
            prev = tail;
          }
        }
      }
    }
  }
  return t.done(s(shells) + " shells enumerated; " + chi.str() + "; pmf grid " + s(grid) + " exact");
}

Outcome criterion_8() {
  Tally t;
  const std::size_t m = 10000;
  const double a = 0.5, b = 0.5;
  const std::size_t s1 = m / 2, s2 = m - s1, ni = m / 2;
  const double mean = static_cast<double>(ni) * s1 / m;
  const std::size_t w = 2 * static_cast<std::size_t>(std::sqrt(static_cast<double>(m)));
  const std::size_t lo = static_cast<std::size_t>(mean) - w, hi = static_cast<std::size_t>(mean) + w;
  auto pmf = hypergeometric_pmf_range(s1, s2, ni, lo, hi);
  double worst = 0;
  for (std::size_t k = lo; k <= hi; ++k) {
    const double z = static_cast<double>(k) / (a * b * m) - 1;
    const double ratio = pmf[k - lo].to_double() / gaussian_density(z, a, b, m);
    worst = std::max(worst, std::abs(ratio - 1));
  }
  t.require(worst < 0.05, "relative error " + std::to_string(worst));
  std::ostringstream os;
  os << "max |pmf/density - 1| = " << worst << " over |k - mean| <= " << w;
  return t.done(os.str());
}

// First_{ell,n} from brute force: distinct first parts of length ell.
std::vector<oracle::Path> oracle_first_parts(std::size_t ell, std::size_t n) {
  std::set<oracle::Path> out;
  oracle::walks(n, 2, [&](const oracle::Path& p) {
    auto f = oracle::parts(p).first;
    if (f.size() == ell + 1) out.insert(f);
  });
  return {out.begin(), out.end()};
}

Outcome criterion_9() {
  Tally t;
  const std::size_t n = 9, ell = 4;
  const auto phis = oracle_first_parts(ell, n);
  const auto ws = oracle::ne_start_walks(n - ell, 2);
  for (const auto& phi : phis) {
    std::set<oracle::Path> cut;
    for (const auto& g : ws) {
      oracle::Path full(phi.rbegin(), phi.rend());
      for (const auto& v : g) full.push_back({v[0], 1 - v[1]});
      std::set<oracle::Pt> seen(full.begin(), full.end());
      t.require(full.size() == n + 2 && seen.size() == full.size(), "self-avoiding length 10");
      for (std::size_t i = 1; i < full.size(); ++i) t.require(oracle::nbr(full[i - 1], full[i]), "nearest neighbour");
      full.pop_back();
      cut.insert(full);
    }
    t.require(4 * cut.size() >= ws.size(), "distinct >= |W|/4");
    ReflectedFamily f = reflected_walk_family(from_path(phi), n);
    t.require(f.all_self_avoiding && f.sides_separated && f.bound_holds, "library family checks");
    t.require(f.walks.size() == cut.size() && f.w_size == ws.size(), "library family counts");
  }
  t.require(phis.size() == first_part_table(ell, n, 0.5).entries.size(), "|First_{4,9}|");
  return t.done(s(phis.size()) + " first parts, |W| = " + s(ws.size()));
}

Outcome criterion_10() {
  Tally t;
  const std::size_t n = 9;
  std::size_t tables = 0;
  for (std::size_t ell = 0; ell <= n; ++ell) {
    const auto phis = oracle_first_parts(ell, n);
    const auto ws = oracle::ne_start_walks(n - ell, 2);
    std::vector<std::size_t> js(ell + 1);
    for (std::size_t j = 0; j <= ell; ++j) js[j] = j;
    for (const auto& phi : phis) {
      ++tables;
      BootstrapTable tab = bootstrap_table(from_path(phi), n, ell, js);
      t.require(tab.avoid_monotone && tab.multiplicity_capped && tab.close_sum_capped, "library flags");
      std::vector<std::uint64_t> avoid(ell + 1, 0), close(ell + 1, 0);
      for (const auto& g : ws) {
        std::size_t hit = ell + 1, mult = 0;
        for (std::size_t a = 1; a < g.size(); ++a) {
          for (std::size_t b = 1; b <= ell; ++b) {
            if (g[a] == phi[b]) hit = std::min(hit, b);
          }
        }
        bool prev = true;
        for (std::size_t j = 0; j <= ell; ++j) {
          const bool av = hit > j;
          t.require(prev || !av, "A decreasing");
          prev = av;
          avoid[j] += av;
          const bool cl = oracle::nbr(g.back(), phi[j]);
          close[j] += cl;
          mult += cl;
        }
        t.require(mult <= 4, "multiplicity <= 2d");
      }
      Rational sum = 0;
      for (std::size_t j = 0; j <= ell; ++j) {
        t.require(tab.rows[j].p_avoid == ExactProb(BigInt(avoid[j]), BigInt(ws.size())), "P(A)");
        t.require(tab.rows[j].p_close == ExactProb(BigInt(close[j]), BigInt(ws.size())), "P(C)");
        sum += Rational(BigInt(close[j]), BigInt(ws.size()));
      }
      t.require(sum <= 4, "sum P(C) <= 2d");
      t.require(sum == tab.close_sum, "sum matches");
    }
  }
  return t.done(s(tables) + " tables over First_{ell,9}, ell = 0..9");
}

Outcome criterion_11() {
  Tally t;
  std::size_t asserted = 0, points = 0;
  for (std::size_t n : {7, 9, 11}) {
    std::vector<std::uint64_t> total(n + 1, 0), closing(n + 1, 0);
    oracle::walks(n, 2, [&](const oracle::Path& p) {
      const std::size_t f = oracle::parts(p).first.size() - 1;
      ++total[f];
      closing[f] += oracle::nbr(p.front(), p.back());
    });
    for (int ai = 1; ai <= 12; ++ai) {
      for (int di = 1; di <= 6; ++di) {
        const double ap = 0.25 * ai, dp = 0.25 * di;
        ++points;
        BadIndexReport r = bad_index_set_and_select_ell(n, ap, dp);
        for (std::size_t i = 0; i <= n; ++i) {
          t.require(r.total[i] == total[i] && r.closing[i] == closing[i], "histograms n=" + s(n));
        }
        if (!r.premise) continue;
        ++asserted;
        t.require(r.bound_holds, "|Q| bound n=" + s(n));
        t.require(static_cast<double>(r.Q.size()) <= 2 * std::pow(static_cast<double>(n), 1 - dp) + 1e-9,
                  "|Q| bound (float) n=" + s(n));
      }
    }
  }
  return t.done(s(asserted) + " of " + s(points) + " grid points satisfy the premise; bound holds at all");
}

Outcome criterion_12() {
  Tally t;
  std::size_t cases = 0;
  for (std::size_t n = 1; n <= 9; ++n) {
    // left: first ell steps of each polygon of length n + 1, once per polygon
    std::map<std::size_t, std::map<oracle::Path, std::uint64_t>> left, right;
    std::set<oracle::Path> polygons;
    if (n % 2 == 1) {
      oracle::walks(n, 2, [&](const oracle::Path& p) {
        if (n < 3 || !oracle::nbr(p.front(), p.back())) return;
        polygons.insert(canonical_trace(p));
        auto f = oracle::parts(p).first;
        ++right[f.size() - 1][f];
      });
    }
    for (const auto& tr : polygons) {
      for (std::size_t ell = 0; ell <= n; ++ell) ++left[ell][oracle::Path(tr.begin(), tr.begin() + ell + 1)];
    }
    for (std::size_t ell = 0; ell <= n; ++ell) {
      ++cases;
      LawIdentityReport r = first_part_law_identity_check(n, ell);
      t.require(r.equal, "library n=" + s(n) + " ell=" + s(ell));
      std::uint64_t lt = 0, rt = 0;
      for (auto& [k, v] : left[ell]) lt += v;
      for (auto& [k, v] : right[ell]) rt += v;
      t.require(r.polygons == lt && r.closing_walks == rt, "totals n=" + s(n) + " ell=" + s(ell));
      std::set<oracle::Path> keys;
      for (auto& [k, v] : left[ell]) keys.insert(k);
      for (auto& [k, v] : right[ell]) keys.insert(k);
      for (const auto& k : keys) {
        const std::uint64_t a = left[ell].count(k) ? left[ell][k] : 0;
        const std::uint64_t b = right[ell].count(k) ? right[ell][k] : 0;
        t.require(BigInt(a) * rt == BigInt(b) * lt, "law n=" + s(n) + " ell=" + s(ell));
      }
    }
  }
  return t.done(s(cases) + " (n, ell) pairs with n <= 9 equal in law");
}

Outcome criterion_13() {
  Tally t;
  double worst = 0;
  for (std::size_t m = 1; m <= 14; ++m) {
    MidpointHistogram h = midpoint_histogram(m, 2);
    std::map<oracle::Pt, std::uint64_t> o;
    std::uint64_t total = 0;
    oracle::walks(m, 2, [&](const oracle::Path& p) {
      ++o[p[m / 2]];
      ++total;
    });
    t.require(h.c_m == total, "c_m m=" + s(m));
    t.require(h.counts.size() == o.size(), "support m=" + s(m));
    std::uint64_t best = 0;
    for (const auto& [pt, c] : h.counts) {
      const oracle::Pt key{pt[0], pt[1]};
      t.require(o.count(key) && o[key] == c, "count m=" + s(m));
    }
    for (auto& [k, v] : o) best = std::max(best, v);
    t.require(h.sup == ExactProb(BigInt(best), BigInt(total)), "sup m=" + s(m));
    // sup * sqrt(m) <= 1  <=>  best^2 m <= total^2
    t.require(BigInt(best) * best * m <= BigInt(total) * total, "sup*sqrt(m) m=" + s(m));
    worst = std::max(worst, h.sup_scaled);
  }
  std::ostringstream os;
  os << "max sup*sqrt(m) over m <= 14 is " << worst;
  return t.done(os.str());
}

Outcome criterion_14() {
  Tally t;
  using clock = std::chrono::steady_clock;
  const auto a = clock::now();
  const BigInt first = count_saw(16, 2, Constraint::origin_start());
  const double secs = std::chrono::duration<double>(clock::now() - a).count();
  const BigInt second = count_saw(16, 2, Constraint::origin_start());
  EngineOptions one;
  one.threads = 1;
  const BigInt serial = count_saw(16, 2, Constraint::origin_start(), one);
  t.require(first == second && first == serial, "nondeterministic count");
  // published value of c_16 on the square lattice
  t.require(first == BigInt(17245332), "c_16 = " + to_decimal(first));
  t.require(secs < 60, "took " + std::to_string(secs) + " s");
  std::ostringstream os;
  os << "c_16 = " << first << " in " << secs << " s on " << std::max(1u, std::thread::hardware_concurrency())
     << " hardware thread(s); repeat and single-thread runs agree";
  return t.done(os.str());
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"counting oracle equivalence", criterion_1},
      {"closing identity", criterion_2},
      {"cyclic-shift invariance", criterion_3},
      {"two-part roundtrip", criterion_4},
      {"pattern machinery", criterion_5},
      {"shared avoidance", criterion_6},
      {"resampler", criterion_7},
      {"gaussian approximation", criterion_8},
      {"reflection construction", criterion_9},
      {"bootstrap table", criterion_10},
      {"bad-index lemma", criterion_11},
      {"first-part law identity", criterion_12},
      {"midpoint delocalization", criterion_13},
      {"performance", criterion_14},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::ostringstream time;
    time.precision(2);
    time << std::fixed << secs;
    std::cout << (o.pass ? "PASS" : "FAIL") << ' ' << (i + 1) << ' ' << criteria[i].first << ": " << o.detail << " ["
              << time.str() << " s]" << std::endl;
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
