#pragma once

// Naive reference implementations used only by the tests. They share no code
// with the engine beyond the point type.

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

using Pt = std::vector<int>;
using Path = std::vector<Pt>;

inline std::vector<Pt> neighbours(const Pt& p) {
  std::vector<Pt> out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (int s : {1, -1}) {
      Pt q = p;
      q[i] += s;
      out.push_back(q);
    }
  }
  return out;
}

// Lex key: last coordinate most significant.
inline bool lex_less(const Pt& a, const Pt& b) {
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

inline void walks(std::size_t n, int d, const std::function<void(const Path&)>& visit) {
  Path path{Pt(static_cast<std::size_t>(d), 0)};
  std::set<Pt> seen{path.front()};
  std::function<void()> rec = [&] {
    if (path.size() == n + 1) {
      visit(path);
      return;
    }
    for (const Pt& q : neighbours(path.back())) {
      if (seen.count(q)) continue;
      seen.insert(q);
      path.push_back(q);
      rec();
      path.pop_back();
      seen.erase(q);
    }
  };
  rec();
}

inline std::uint64_t count_walks(std::size_t n, int d) {
  std::uint64_t c = 0;
  walks(n, d, [&](const Path&) { ++c; });
  return c;
}

inline bool nbr(const Pt& a, const Pt& b) {
  int dist = 0;
  for (std::size_t i = 0; i < a.size(); ++i) dist += std::abs(a[i] - b[i]);
  return dist == 1;
}

// Polygons of length n as distinct translation-normalized edge sets built
// from closing walks of length n-1.
inline std::uint64_t count_polygons(std::size_t n, int d) {
  std::set<std::vector<std::pair<Pt, Pt>>> polys;
  walks(n - 1, d, [&](const Path& p) {
    if (!nbr(p.front(), p.back())) return;
    Pt lo = p.front();
    for (const Pt& v : p) lo = std::min(lo, v);
    std::vector<std::pair<Pt, Pt>> edges;
    auto norm = [&](Pt v) {
      Pt m = *std::min_element(p.begin(), p.end());
      for (std::size_t i = 0; i < v.size(); ++i) v[i] -= m[i];
      return v;
    };
    for (std::size_t i = 0; i < p.size(); ++i) {
      Pt a = norm(p[i]), b = norm(p[(i + 1) % p.size()]);
      if (b < a) std::swap(a, b);
      edges.emplace_back(a, b);
    }
    std::sort(edges.begin(), edges.end());
    polys.insert(edges);
  });
  return polys.size();
}

// Two-part split of a path at its lex-maximal vertex, both parts shifted so
// that vertex sits at the origin. Returns {first, second}.
inline std::pair<Path, Path> parts(const Path& p) {
  std::size_t j = 0;
  for (std::size_t i = 1; i < p.size(); ++i) {
    if (lex_less(p[j], p[i])) j = i;
  }
  auto shift = [&](Pt v) {
    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= p[j][i];
    return v;
  };
  Path back, ahead;
  for (std::size_t i = j + 1; i-- > 0;) back.push_back(shift(p[i]));
  for (std::size_t i = j; i < p.size(); ++i) ahead.push_back(shift(p[i]));
  bool back_first;
  if (back.size() > 1 && ahead.size() > 1) {
    back_first = back.size() > ahead.size();
    for (std::size_t i = 0; i < std::min(back.size(), ahead.size()); ++i) {
      if (back[i] != ahead[i]) {
        back_first = lex_less(ahead[i], back[i]);
        break;
      }
    }
  } else {
    Pt west(p[0].size(), 0);
    west[0] = -1;
    if (back.size() > 1) back_first = back[1] == west;
    else if (ahead.size() > 1) back_first = ahead[1] != west;
    else back_first = true;
  }
  return back_first ? std::pair{back, ahead} : std::pair{ahead, back};
}

// Walks of length m from the origin whose vertices are all lex <= origin.
inline std::vector<Path> ne_start_walks(std::size_t m, int d) {
  std::vector<Path> out;
  const Pt zero(static_cast<std::size_t>(d), 0);
  walks(m, d, [&](const Path& p) {
    for (const Pt& v : p) {
      if (lex_less(zero, v)) return;
    }
    out.push_back(p);
  });
  return out;
}

}  // namespace oracle
