#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sawlab {

inline constexpr int kMaxDim = 8;

class LatticeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A point of Z^d, 2 <= d <= kMaxDim. Coordinates beyond d are zero.
class LatticePoint {
 public:
  LatticePoint() = default;
  explicit LatticePoint(int dim);
  LatticePoint(std::initializer_list<int> coords);
  static LatticePoint origin(int dim) { return LatticePoint(dim); }
  static LatticePoint unit(int dim, int axis, int sign = 1);  // axis is 1-based

  int dim() const { return dim_; }
  int operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }  // 0-based
  int& operator[](int i) { return c_[static_cast<std::size_t>(i)]; }

  LatticePoint operator+(const LatticePoint& o) const;
  LatticePoint operator-(const LatticePoint& o) const;
  LatticePoint operator-() const;
  bool is_origin() const;
  int l1_norm() const;

  bool operator==(const LatticePoint& o) const = default;

  std::string to_string() const;

 private:
  std::array<int, kMaxDim> c_{};
  int dim_ = 0;
};

struct LatticePointHash {
  std::size_t operator()(const LatticePoint& p) const noexcept;
};

/// Total order on points of equal dimension: coordinate d is compared first,
/// then d-1, down to coordinate 1 ("most north, then most east" for d = 2).
std::strong_ordering lex_compare_points(const LatticePoint& u, const LatticePoint& v);

bool adjacent(const LatticePoint& u, const LatticePoint& v);

/// A signed unit axis step, +k or -k with k in [1, d].
class Step {
 public:
  constexpr Step() = default;
  constexpr Step(int axis, int sign) : code_(static_cast<std::int8_t>(sign > 0 ? axis : -axis)) {}
  static constexpr Step from_code(int signed_axis) { return Step(signed_axis > 0 ? signed_axis : -signed_axis, signed_axis > 0 ? 1 : -1); }

  constexpr int axis() const { return code_ > 0 ? code_ : -code_; }
  constexpr int sign() const { return code_ > 0 ? 1 : -1; }
  constexpr int code() const { return code_; }
  constexpr Step reversed() const { return from_code(-code_); }
  LatticePoint vector(int dim) const { return LatticePoint::unit(dim, axis(), sign()); }

  constexpr bool operator==(const Step&) const = default;

 private:
  std::int8_t code_ = 1;
};

/// Step between two adjacent points; throws if they are not adjacent.
Step step_between(const LatticePoint& from, const LatticePoint& to);

/// Nearest-neighbour walk on Z^d. Immutable value type; vertices are derived
/// from the origin and the step sequence.
class Walk {
 public:
  Walk() = default;
  Walk(const LatticePoint& origin, std::vector<Step> steps);
  static Walk from_vertices(std::vector<LatticePoint> vertices);
  static Walk trivial(const LatticePoint& at) { return Walk(at, {}); }

  int dim() const { return origin().dim(); }
  std::size_t length() const { return steps_.size(); }
  const LatticePoint& origin() const { return vertices_.front(); }
  const LatticePoint& end() const { return vertices_.back(); }
  const LatticePoint& operator[](std::size_t i) const { return vertices_[i]; }
  std::span<const LatticePoint> vertices() const { return vertices_; }
  std::span<const Step> steps() const { return steps_; }

  /// Vertices i..j as a walk; requires i <= j <= length().
  Walk subwalk(std::size_t i, std::size_t j) const;
  Walk translated(const LatticePoint& by) const;
  Walk then(const Walk& tail) const;  // tail must start at end()

  bool operator==(const Walk& o) const { return vertices_ == o.vertices_; }

 private:
  std::vector<LatticePoint> vertices_{LatticePoint(2)};
  std::vector<Step> steps_;
};

LatticePoint ne_vertex(std::span<const LatticePoint> vertices);
inline LatticePoint ne_vertex(const Walk& w) { return ne_vertex(w.vertices()); }

Walk reverse_walk(const Walk& w);

/// Axis that separates first parts from reflected second parts in the
/// three-path construction: the most significant coordinate of the order.
inline int distinguished_axis(int dim) { return dim; }

/// Reflect through the zero hyperplane of the distinguished axis, then
/// translate by its unit vector. Requires the walk to start at the origin.
Walk reflect_for_construction(const Walk& w);

bool is_self_avoiding(std::span<const LatticePoint> vertices);
inline bool is_self_avoiding(const Walk& w) { return is_self_avoiding(w.vertices()); }

/// Self-avoiding walk of length >= 2 whose endpoint neighbours its start.
bool is_closing(const Walk& w);

/// Unordered nearest-neighbour edge, stored with the lex-smaller endpoint first.
struct Edge {
  LatticePoint a;
  LatticePoint b;
  Edge(const LatticePoint& u, const LatticePoint& v);
  bool operator==(const Edge&) const = default;
};

bool edge_less(const Edge& x, const Edge& y);

/// Self-avoiding polygon up to translation: NE vertex at the origin, an edge
/// set forming one cycle, and the canonical trace starting and ending at NE.
/// The trace leaves NE towards the lex-larger of its two polygon neighbours
/// (NE - e1 in d = 2) and returns from the lex-smaller one (NE - e2 in d = 2).
class Polygon {
 public:
  static Polygon from_edges(std::vector<Edge> edges);
  /// A closed trace: first vertex equals last, length >= 4.
  static Polygon from_closed_path(const Walk& path);
  static Polygon from_closing_walk(const Walk& w);

  int dim() const { return path_.dim(); }
  std::size_t length() const { return edges_.size(); }
  std::span<const Edge> edges() const { return edges_; }
  const Walk& canonical_path() const { return path_; }

  bool operator==(const Polygon& o) const { return edges_ == o.edges_; }

 private:
  Polygon(std::vector<Edge> edges, Walk path) : edges_(std::move(edges)), path_(std::move(path)) {}
  std::vector<Edge> edges_;  // sorted by edge_less
  Walk path_;
};

}  // namespace sawlab
