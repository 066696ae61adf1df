#include "sawlab/lattice.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace sawlab {

LatticePoint::LatticePoint(int dim) : dim_(dim) {
  if (dim < 2 || dim > kMaxDim) {
    throw LatticeError("dimension " + std::to_string(dim) + " outside [2," + std::to_string(kMaxDim) + "]");
  }
}

LatticePoint::LatticePoint(std::initializer_list<int> coords) : LatticePoint(static_cast<int>(coords.size())) {
  std::copy(coords.begin(), coords.end(), c_.begin());
}

LatticePoint LatticePoint::unit(int dim, int axis, int sign) {
  if (axis < 1 || axis > dim) throw LatticeError("axis out of range");
  LatticePoint p(dim);
  p.c_[static_cast<std::size_t>(axis - 1)] = sign > 0 ? 1 : -1;
  return p;
}

LatticePoint LatticePoint::operator+(const LatticePoint& o) const {
  if (dim_ != o.dim_) throw LatticeError("dimension mismatch");
  LatticePoint r(*this);
  for (int i = 0; i < dim_; ++i) r.c_[static_cast<std::size_t>(i)] += o.c_[static_cast<std::size_t>(i)];
  return r;
}

LatticePoint LatticePoint::operator-(const LatticePoint& o) const {
  if (dim_ != o.dim_) throw LatticeError("dimension mismatch");
  LatticePoint r(*this);
  for (int i = 0; i < dim_; ++i) r.c_[static_cast<std::size_t>(i)] -= o.c_[static_cast<std::size_t>(i)];
  return r;
}

LatticePoint LatticePoint::operator-() const {
  LatticePoint r(*this);
  for (auto& x : r.c_) x = -x;
  return r;
}

bool LatticePoint::is_origin() const {
  return std::all_of(c_.begin(), c_.end(), [](int x) { return x == 0; });
}

int LatticePoint::l1_norm() const {
  int s = 0;
  for (int x : c_) s += x < 0 ? -x : x;
  return s;
}

std::string LatticePoint::to_string() const {
  std::ostringstream os;
  os << '(';
  for (int i = 0; i < dim_; ++i) os << (i ? "," : "") << c_[static_cast<std::size_t>(i)];
  os << ')';
  return os.str();
}

std::size_t LatticePointHash::operator()(const LatticePoint& p) const noexcept {
  std::size_t h = static_cast<std::size_t>(p.dim());
  for (int i = 0; i < p.dim(); ++i) {
    h = h * 1000003u ^ static_cast<std::size_t>(static_cast<std::uint32_t>(p[i]));
  }
  return h;
}

std::strong_ordering lex_compare_points(const LatticePoint& u, const LatticePoint& v) {
  if (u.dim() != v.dim()) throw LatticeError("lex_compare_points: dimension mismatch");
  for (int i = u.dim() - 1; i >= 0; --i) {
    if (u[i] != v[i]) return u[i] <=> v[i];
  }
  return std::strong_ordering::equal;
}

bool adjacent(const LatticePoint& u, const LatticePoint& v) {
  return u.dim() == v.dim() && (u - v).l1_norm() == 1;
}

Step step_between(const LatticePoint& from, const LatticePoint& to) {
  LatticePoint d = to - from;
  if (d.l1_norm() != 1) {
    throw LatticeError("points " + from.to_string() + " and " + to.to_string() + " are not adjacent");
  }
  for (int i = 0; i < d.dim(); ++i) {
    if (d[i] != 0) return Step(i + 1, d[i]);
  }
  throw LatticeError("unreachable");
}

Walk::Walk(const LatticePoint& origin, std::vector<Step> steps) : steps_(std::move(steps)) {
  vertices_.clear();
  vertices_.reserve(steps_.size() + 1);
  vertices_.push_back(origin);
  for (const Step& s : steps_) {
    if (s.axis() < 1 || s.axis() > origin.dim()) throw LatticeError("step axis exceeds dimension");
    vertices_.push_back(vertices_.back() + s.vector(origin.dim()));
  }
}

Walk Walk::from_vertices(std::vector<LatticePoint> vertices) {
  if (vertices.empty()) throw LatticeError("walk needs at least one vertex");
  std::vector<Step> steps;
  steps.reserve(vertices.size() - 1);
  for (std::size_t i = 1; i < vertices.size(); ++i) steps.push_back(step_between(vertices[i - 1], vertices[i]));
  Walk w;
  w.vertices_ = std::move(vertices);
  w.steps_ = std::move(steps);
  return w;
}

Walk Walk::subwalk(std::size_t i, std::size_t j) const {
  if (i > j || j > length()) throw LatticeError("subwalk range out of bounds");
  return Walk(vertices_[i], std::vector<Step>(steps_.begin() + static_cast<std::ptrdiff_t>(i),
                                              steps_.begin() + static_cast<std::ptrdiff_t>(j)));
}

Walk Walk::translated(const LatticePoint& by) const { return Walk(origin() + by, steps_); }

Walk Walk::then(const Walk& tail) const {
  if (!(tail.origin() == end())) throw LatticeError("concatenation: tail does not start at end");
  std::vector<Step> steps = steps_;
  steps.insert(steps.end(), tail.steps_.begin(), tail.steps_.end());
  return Walk(origin(), std::move(steps));
}

LatticePoint ne_vertex(std::span<const LatticePoint> vertices) {
  if (vertices.empty()) throw LatticeError("ne_vertex of empty vertex set");
  LatticePoint best = vertices.front();
  for (const auto& v : vertices.subspan(1)) {
    if (lex_compare_points(v, best) == std::strong_ordering::greater) best = v;
  }
  return best;
}

Walk reverse_walk(const Walk& w) {
  std::vector<Step> steps;
  steps.reserve(w.length());
  for (auto it = w.steps().rbegin(); it != w.steps().rend(); ++it) steps.push_back(it->reversed());
  return Walk(w.end(), std::move(steps));
}

Walk reflect_for_construction(const Walk& w) {
  if (!w.origin().is_origin()) throw LatticeError("reflect_for_construction: walk must start at the origin");
  const int d = w.dim();
  const int axis = distinguished_axis(d);
  std::vector<Step> steps;
  steps.reserve(w.length());
  for (const Step& s : w.steps()) steps.push_back(s.axis() == axis ? s.reversed() : s);
  return Walk(LatticePoint::unit(d, axis), std::move(steps));
}

bool is_self_avoiding(std::span<const LatticePoint> vertices) {
  std::unordered_set<LatticePoint, LatticePointHash> seen;
  seen.reserve(vertices.size() * 2);
  for (const auto& v : vertices) {
    if (!seen.insert(v).second) return false;
  }
  return true;
}

bool is_closing(const Walk& w) {
  if (!is_self_avoiding(w)) throw LatticeError("is_closing: walk is not self-avoiding");
  return w.length() >= 2 && adjacent(w.origin(), w.end());
}

Edge::Edge(const LatticePoint& u, const LatticePoint& v) : a(u), b(v) {
  if (!adjacent(u, v)) throw LatticeError("edge endpoints not adjacent");
  if (lex_compare_points(b, a) == std::strong_ordering::less) std::swap(a, b);
}

bool edge_less(const Edge& x, const Edge& y) {
  auto c = lex_compare_points(x.a, y.a);
  if (c != std::strong_ordering::equal) return c == std::strong_ordering::less;
  return lex_compare_points(x.b, y.b) == std::strong_ordering::less;
}

Polygon Polygon::from_edges(std::vector<Edge> edges) {
  if (edges.size() < 4) throw LatticeError("polygon needs at least four edges");
  const int d = edges.front().a.dim();
  std::unordered_map<LatticePoint, std::vector<LatticePoint>, LatticePointHash> nbrs;
  for (const Edge& e : edges) {
    if (e.a.dim() != d) throw LatticeError("polygon: mixed dimensions");
    nbrs[e.a].push_back(e.b);
    nbrs[e.b].push_back(e.a);
  }
  if (nbrs.size() != edges.size()) throw LatticeError("polygon: edge set is not a single cycle");
  std::vector<LatticePoint> verts;
  verts.reserve(nbrs.size());
  for (auto& [v, ns] : nbrs) {
    if (ns.size() != 2 || ns[0] == ns[1]) throw LatticeError("polygon: vertex " + v.to_string() + " does not have degree 2");
    verts.push_back(v);
  }
  const LatticePoint ne = ne_vertex(verts);

  const auto& start_nbrs = nbrs.at(ne);
  LatticePoint first = start_nbrs[0];
  if (lex_compare_points(start_nbrs[1], first) == std::strong_ordering::greater) first = start_nbrs[1];

  std::vector<LatticePoint> trace{ne, first};
  trace.reserve(edges.size() + 1);
  while (!(trace.back() == ne)) {
    const auto& ns = nbrs.at(trace.back());
    const LatticePoint& prev = trace[trace.size() - 2];
    trace.push_back(ns[0] == prev ? ns[1] : ns[0]);
    if (trace.size() > edges.size() + 1) throw LatticeError("polygon: trace does not close");
  }
  if (trace.size() != edges.size() + 1) throw LatticeError("polygon: edge set is not a single cycle");

  const LatticePoint shift = -ne;
  for (auto& v : trace) v = v + shift;
  std::vector<Edge> normalized;
  normalized.reserve(edges.size());
  for (std::size_t i = 1; i < trace.size(); ++i) normalized.emplace_back(trace[i - 1], trace[i]);
  std::sort(normalized.begin(), normalized.end(), edge_less);
  return Polygon(std::move(normalized), Walk::from_vertices(std::move(trace)));
}

Polygon Polygon::from_closed_path(const Walk& path) {
  if (path.length() < 4 || !(path.origin() == path.end())) throw LatticeError("polygon: path is not closed");
  if (!is_self_avoiding(path.vertices().first(path.length()))) throw LatticeError("polygon: path revisits a vertex");
  std::vector<Edge> edges;
  edges.reserve(path.length());
  for (std::size_t i = 1; i <= path.length(); ++i) edges.emplace_back(path[i - 1], path[i]);
  return from_edges(std::move(edges));
}

Polygon Polygon::from_closing_walk(const Walk& w) {
  if (!is_closing(w)) throw LatticeError("polygon: walk does not close");
  if (w.length() < 3) throw LatticeError("polygon: closing walk too short");
  std::vector<LatticePoint> verts(w.vertices().begin(), w.vertices().end());
  verts.push_back(w.origin());
  return from_closed_path(Walk::from_vertices(std::move(verts)));
}

}  // namespace sawlab
