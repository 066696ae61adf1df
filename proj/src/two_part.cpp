#include "sawlab/two_part.hpp"

#include <mutex>
#include <stdexcept>
#include <unordered_set>

namespace sawlab {

bool part_ranks_above(std::span<const LatticePoint> a, std::span<const LatticePoint> b) {
  if (a.size() > 1 && b.size() > 1) {
    const std::size_t m = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < m; ++i) {
      auto c = lex_compare_points(a[i], b[i]);
      if (c != std::strong_ordering::equal) return c == std::strong_ordering::greater;
    }
    return a.size() > b.size();
  }
  const int dim = a.front().dim();
  const LatticePoint west = a.front() + LatticePoint::unit(dim, 1, -1);
  if (a.size() > 1) return a[1] == west;
  if (b.size() > 1) return b[1] != west;
  return true;
}

Decomposition decompose(const Walk& w) {
  const auto v = w.vertices();
  const LatticePoint ne = ne_vertex(v);
  std::size_t j = 0;
  while (!(v[j] == ne)) ++j;
  Walk back = reverse_walk(w.subwalk(0, j));
  Walk ahead = w.subwalk(j, w.length());
  if (part_ranks_above(back.vertices(), ahead.vertices())) return {std::move(back), std::move(ahead), ne, true};
  return {std::move(ahead), std::move(back), ne, false};
}

Walk compose(const Decomposition& dec) {
  const Walk& a = dec.first;
  const Walk& b = dec.second;
  if (!(a.origin() == dec.meeting) || !(b.origin() == dec.meeting)) {
    throw std::invalid_argument("compose: parts must start at the meeting vertex");
  }
  if (!is_self_avoiding(a) || !is_self_avoiding(b)) throw std::invalid_argument("compose: parts must be self-avoiding");
  std::unordered_set<LatticePoint, LatticePointHash> seen(a.vertices().begin() + 1, a.vertices().end());
  for (std::size_t i = 1; i <= b.length(); ++i) {
    if (seen.count(b[i])) throw std::invalid_argument("compose: parts intersect away from the meeting vertex");
  }
  if (!part_ranks_above(a.vertices(), b.vertices())) throw std::invalid_argument("compose: parts are in the wrong order");
  Walk w = dec.walk_starts_in_first ? reverse_walk(a).then(b) : reverse_walk(b).then(a);
  if (!(ne_vertex(w) == dec.meeting)) throw std::invalid_argument("compose: meeting vertex is not the NE vertex");
  return w;
}

Walk polygon_to_path(const Polygon& p) { return p.canonical_path(); }

Walk cyclic_shift(const Walk& w, std::size_t j) {
  if (!is_closing(w)) throw std::invalid_argument("cyclic_shift: walk does not close");
  const std::size_t m = w.length() + 1;
  std::vector<LatticePoint> out;
  out.reserve(m);
  for (std::size_t i = 0; i < m; ++i) out.push_back(w[(i + j) % m]);
  return Walk::from_vertices(std::move(out));
}

std::vector<BigInt> closing_first_length_histogram(std::size_t n, int dim, const EngineOptions& options) {
  if (n % 2 == 0) throw std::invalid_argument("closing_first_length_histogram needs odd n");
  using Hist = std::vector<std::uint64_t>;
  Hist h = enumerate_reduce(
      n, dim, Constraint::ne_at_origin(), Hist(n + 1, 0),
      [](Hist& acc, const WalkView& v) {
        if (v.length() < 2 || !adjacent(v.vertices.front(), v.vertices.back())) return;
        ++acc[decompose(v.to_walk()).first.length()];
      },
      [](Hist& t, Hist&& p) {
        for (std::size_t i = 0; i < t.size(); ++i) t[i] += p[i];
      },
      options);
  return {h.begin(), h.end()};
}

FirstLengthHistograms first_length_histograms(std::size_t n, int dim, const EngineOptions& options) {
  struct Acc {
    std::vector<std::uint64_t> total, closing;
  };
  Acc init{std::vector<std::uint64_t>(n + 1, 0), std::vector<std::uint64_t>(n + 1, 0)};
  Acc acc = enumerate_reduce(
      n, dim, Constraint::ne_at_origin(), init,
      [](Acc& a, const WalkView& v) {
        std::size_t j = 0;
        while (!v.vertices[j].is_origin()) ++j;
        std::vector<LatticePoint> back(v.vertices.rend() - static_cast<std::ptrdiff_t>(j) - 1, v.vertices.rend());
        const std::size_t first = part_ranks_above(back, v.vertices.subspan(j)) ? j : v.length() - j;
        ++a.total[first];
        if (v.length() >= 2 && adjacent(v.vertices.front(), v.vertices.back())) ++a.closing[first];
      },
      [](Acc& t, Acc&& p) {
        for (std::size_t i = 0; i < t.total.size(); ++i) {
          t.total[i] += p.total[i];
          t.closing[i] += p.closing[i];
        }
      },
      options);
  return {{acc.total.begin(), acc.total.end()}, {acc.closing.begin(), acc.closing.end()}};
}

}  // namespace sawlab
