#include "sawlab/fixtures.hpp"

#include <algorithm>
#include <set>

namespace sawlab {

namespace {

struct Tracer {
  std::vector<LatticePoint> v{LatticePoint{0, 0}};
  void go(int dx, int dy, int times = 1) {
    for (int i = 0; i < times; ++i) v.push_back(v.back() + LatticePoint{dx, dy});
  }
  // Eastward corridor step replaced by a bulge holding a pattern below it.
  void bulge(const PatternPair& pair, PatternType t) {
    go(0, -1);
    const Walk& chi = pair.of(t);
    const LatticePoint shift = v.back() - chi.origin();
    for (std::size_t i = 1; i <= chi.length(); ++i) v.push_back(chi[i] + shift);
    go(0, 1);
  }
};

Polygon build(const FixtureSpec& spec, int pad) {
  const PatternPair& pair = canonical_pattern_pair(2);
  const int m1 = static_cast<int>(spec.start.size());
  const int a = 4 * m1 + 2;
  Tracer t;
  t.go(-1, 0, a);
  t.go(0, -1);
  // Upper corridor along y = -1, bulges at x = -a + 4i.
  for (int i = 0; i < m1; ++i) {
    t.bulge(pair, spec.start[static_cast<std::size_t>(i)]);
    t.go(1, 0, 3);
  }
  while (t.v.back()[0] < -1) t.go(1, 0);
  t.go(0, -1, 5);
  t.go(-1, 0, pad - 1);
  t.go(0, -1);
  // Lower corridor along y = -7: middle bulges at the west end, end bulges
  // at x = -4(m2 - i).
  for (const PatternType type : spec.middle) {
    t.go(1, 0);
    t.bulge(pair, type);
    t.go(1, 0, 2);
  }
  const int m2 = static_cast<int>(spec.end.size());
  for (int i = 0; i < m2; ++i) {
    const int x = -4 * (m2 - i);
    while (t.v.back()[0] < x) t.go(1, 0);
    t.bulge(pair, spec.end[static_cast<std::size_t>(i)]);
  }
  while (t.v.back()[0] < 0) t.go(1, 0);
  t.go(0, 1, 7);
  return Polygon::from_closed_path(Walk::from_vertices(std::move(t.v)));
}

}  // namespace

Polygon build_fixture_polygon(const FixtureSpec& spec) {
  const PatternPair& pair = canonical_pattern_pair(2);
  const int m2 = static_cast<int>(spec.end.size());
  auto fits = [&](const Polygon& p) {
    SlotMap map = slot_partition(p, 0.0, pair);
    const std::size_t frozen = map.slots.size() - map.s1.size() - map.s2.size();
    return map.s1.size() == spec.start.size() && map.s2.size() == spec.end.size() && frozen == spec.middle.size();
  };
  // Every condition only improves as the padding grows, so bisect.
  int lo = 4 * (m2 + static_cast<int>(spec.middle.size())) + 8;
  int hi = lo;
  while (!fits(build(spec, hi))) {
    if (hi > 100000) throw PatternError("fixture construction did not converge");
    hi *= 2;
  }
  while (lo < hi) {
    const int mid = lo + (hi - lo) / 2;
    if (fits(build(spec, mid))) hi = mid;
    else lo = mid + 1;
  }
  return build(spec, hi);
}

const std::vector<Fixture>& fixture_corpus() {
  static const std::vector<Fixture> corpus = [] {
    using T = PatternType;
    std::vector<Fixture> out;
    std::set<std::vector<std::pair<std::vector<int>, std::vector<int>>>> seen;
    auto types = [](std::size_t m, int variant, std::size_t offset) {
      std::vector<T> v(m, T::I);
      for (std::size_t i = 0; i < m; ++i) {
        const std::size_t g = i + offset;
        switch (variant) {
          case 1: v[i] = g % 2 == 0 ? T::II : T::I; break;
          case 2: v[i] = T::II; break;
          case 3: v[i] = g % 2 == 1 ? T::II : T::I; break;
          case 4: v[i] = g == 0 ? T::II : T::I; break;
          default: break;
        }
      }
      return v;
    };
    for (std::size_t m1 = 0; m1 <= 3; ++m1) {
      for (std::size_t m2 = 0; m2 <= 3; ++m2) {
        for (int variant = 0; variant <= 4; ++variant) {
          FixtureSpec spec{types(m1, variant, 0), {}, types(m2, variant, m1)};
          if (variant == 3) spec.middle = {T::II};
          if (variant == 1 && (m1 + m2) % 2 == 0) spec.middle = {T::I, T::II};
          if (m1 + m2 + spec.middle.size() == 0) continue;
          Polygon p = build_fixture_polygon(spec);
          std::vector<std::pair<std::vector<int>, std::vector<int>>> key;
          for (const Edge& e : p.edges()) key.push_back({{e.a[0], e.a[1]}, {e.b[0], e.b[1]}});
          if (!seen.insert(key).second) continue;
          std::string name = "s" + std::to_string(m1) + "e" + std::to_string(m2) + "v" + std::to_string(variant);
          out.push_back({std::move(name), std::move(spec), std::move(p)});
        }
      }
    }
    return out;
  }();
  return corpus;
}

}  // namespace sawlab
