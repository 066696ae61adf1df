#include "sawlab/patterns.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <unordered_set>

#include "sawlab/exact.hpp"

namespace sawlab {

LatticePoint pattern_entry(int dim) {
  LatticePoint p(dim);
  for (int i = 0; i < dim; ++i) p[i] = 1;
  p[1] = 3;
  return p;
}

namespace {

LatticePoint pattern_exit(int dim) {
  LatticePoint p = pattern_entry(dim);
  p[0] = 2;
  return p;
}

bool in_cube(const LatticePoint& p) {
  for (int i = 0; i < p.dim(); ++i) {
    if (p[i] < 0 || p[i] > 3) return false;
  }
  return true;
}

bool on_boundary(const LatticePoint& p) {
  if (!in_cube(p)) return false;
  for (int i = 0; i < p.dim(); ++i) {
    if (p[i] == 0 || p[i] == 3) return true;
  }
  return false;
}

std::vector<LatticePoint> cube_points(int dim) {
  std::vector<LatticePoint> out;
  LatticePoint p(dim);
  std::function<void(int)> rec = [&](int axis) {
    if (axis == dim) {
      out.push_back(p);
      return;
    }
    for (int c = 0; c <= 3; ++c) {
      p[axis] = c;
      rec(axis + 1);
    }
  };
  rec(0);
  return out;
}

std::vector<LatticePoint> cube_neighbours(const LatticePoint& p) {
  std::vector<LatticePoint> out;
  for (int axis = 1; axis <= p.dim(); ++axis) {
    for (int s : {1, -1}) {
      LatticePoint q = p + LatticePoint::unit(p.dim(), axis, s);
      if (in_cube(q)) out.push_back(q);
    }
  }
  return out;
}

// The single interior neighbour of a boundary point lying on exactly one face.
std::optional<LatticePoint> inward(const LatticePoint& p) {
  int face_axis = -1;
  for (int i = 0; i < p.dim(); ++i) {
    if (p[i] == 0 || p[i] == 3) {
      if (face_axis >= 0) return std::nullopt;
      face_axis = i;
    }
  }
  if (face_axis < 0) return std::nullopt;
  LatticePoint q = p;
  q[face_axis] += p[face_axis] == 0 ? 1 : -1;
  return q;
}

PatternPair stored_pair_2d() {
  auto path = [](std::initializer_list<std::pair<int, int>> pts) {
    std::vector<LatticePoint> v;
    for (auto [x, y] : pts) v.push_back(LatticePoint{x, y});
    return Walk::from_vertices(std::move(v));
  };
  return {path({{1, 3}, {0, 3}, {0, 2}, {0, 1}, {0, 0}, {1, 0}, {2, 0}, {3, 0}, {3, 1}, {3, 2}, {3, 3}, {2, 3}}),
          path({{1, 3}, {0, 3}, {0, 2}, {0, 1}, {0, 0}, {1, 0}, {1, 1}, {2, 1}, {2, 0}, {3, 0}, {3, 1}, {3, 2}, {3, 3},
                {2, 3}})};
}

// Hamiltonian path of the boundary of [0,3]^d from the entry to the exit
// vertex that contains an edge between two face-centre vertices, so that the
// edge can be detoured through the interior.
PatternPair searched_pair(int dim) {
  const LatticePoint s = pattern_entry(dim);
  const LatticePoint t = pattern_exit(dim);
  std::vector<LatticePoint> boundary;
  for (const auto& p : cube_points(dim)) {
    if (on_boundary(p)) boundary.push_back(p);
  }
  std::unordered_set<LatticePoint, LatticePointHash> visited{s};
  std::vector<LatticePoint> path{s};
  std::size_t nodes = 0;
  constexpr std::size_t kNodeLimit = 20'000'000;

  auto detour_at = [&]() -> std::optional<std::size_t> {
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
      auto a = inward(path[i]);
      auto b = inward(path[i + 1]);
      if (a && b && adjacent(*a, *b)) return i;
    }
    return std::nullopt;
  };
  auto free_degree = [&](const LatticePoint& p) {
    int k = 0;
    for (const auto& q : cube_neighbours(p)) k += on_boundary(q) && !visited.count(q);
    return k;
  };

  std::function<bool()> dfs = [&]() -> bool {
    if (++nodes > kNodeLimit) return false;
    if (path.size() == boundary.size()) return path.back() == t && detour_at().has_value();
    std::vector<LatticePoint> next;
    for (const auto& q : cube_neighbours(path.back())) {
      if (!on_boundary(q) || visited.count(q)) continue;
      if (q == t && path.size() + 1 != boundary.size()) continue;
      next.push_back(q);
    }
    std::stable_sort(next.begin(), next.end(),
                     [&](const LatticePoint& a, const LatticePoint& b) { return free_degree(a) < free_degree(b); });
    for (const auto& q : next) {
      visited.insert(q);
      path.push_back(q);
      if (dfs()) return true;
      path.pop_back();
      visited.erase(q);
    }
    return false;
  };
  if (!dfs()) throw PatternError("no pattern pair found for d=" + std::to_string(dim));

  const std::size_t i = *detour_at();
  std::vector<LatticePoint> longer(path.begin(), path.begin() + static_cast<std::ptrdiff_t>(i) + 1);
  longer.push_back(*inward(path[i]));
  longer.push_back(*inward(path[i + 1]));
  longer.insert(longer.end(), path.begin() + static_cast<std::ptrdiff_t>(i) + 1, path.end());
  return {Walk::from_vertices(path), Walk::from_vertices(std::move(longer))};
}

bool cubes_intersect(const LatticePoint& a, const LatticePoint& b) {
  for (int i = 0; i < a.dim(); ++i) {
    if (std::abs(a[i] - b[i]) > 3) return false;
  }
  return true;
}

bool steps_match(std::span<const Step> w, std::size_t k, std::span<const Step> chi) {
  if (k + chi.size() > w.size()) return false;
  return std::equal(chi.begin(), chi.end(), w.begin() + static_cast<std::ptrdiff_t>(k));
}

Walk closed_path_of(const Polygon& p) { return p.canonical_path(); }

}  // namespace

const PatternPair& canonical_pattern_pair(int dim) {
  static std::mutex m;
  static std::map<int, PatternPair> cache;
  std::lock_guard lock(m);
  auto it = cache.find(dim);
  if (it != cache.end()) return it->second;
  if (dim < 2 || dim > kMaxDim) throw PatternError("pattern dimension out of range");
  PatternPair pair = dim == 2 ? stored_pair_2d() : searched_pair(dim);
  return cache.emplace(dim, std::move(pair)).first->second;
}

PatternValidation validate_pattern_pair(const PatternPair& pair) {
  PatternValidation r;
  auto fail = [&](std::string msg) {
    r.ok = false;
    r.violations.push_back(std::move(msg));
  };
  const int d = pair.chi_I.dim();
  if (pair.chi_II.dim() != d) {
    fail("patterns have different dimensions");
    return r;
  }
  std::vector<LatticePoint> boundary;
  for (const auto& p : cube_points(d)) {
    if (on_boundary(p)) boundary.push_back(p);
  }
  for (PatternType t : {PatternType::I, PatternType::II}) {
    const Walk& chi = pair.of(t);
    const std::string name = t == PatternType::I ? "chi_I" : "chi_II";
    if (!is_self_avoiding(chi)) fail(name + " is not self-avoiding");
    for (const auto& v : chi.vertices()) {
      if (!in_cube(v)) {
        fail(name + " leaves the cube at " + v.to_string());
        break;
      }
    }
    std::unordered_set<LatticePoint, LatticePointHash> seen(chi.vertices().begin(), chi.vertices().end());
    for (const auto& b : boundary) {
      if (!seen.count(b)) fail(name + " misses boundary vertex " + b.to_string());
    }
    if (!(chi.origin() == pattern_entry(d))) fail(name + " does not start at " + pattern_entry(d).to_string());
    if (!(chi.end() == pattern_exit(d))) fail(name + " does not end at " + pattern_exit(d).to_string());
  }
  if (pair.chi_II.length() != pair.chi_I.length() + 2) fail("|chi_II| - |chi_I| is not 2");
  return r;
}

std::vector<std::size_t> SlotMap::shell_slots() const {
  std::vector<std::size_t> out = s1;
  out.insert(out.end(), s2.begin(), s2.end());
  return out;
}

SlotMap scan_patterns(const Walk& w, const PatternPair& pair) {
  if (w.dim() != pair.dim()) throw PatternError("walk and pattern pair differ in dimension");
  SlotMap map;
  map.length = w.length();
  const LatticePoint entry = pattern_entry(w.dim());
  const auto steps = w.steps();
  for (std::size_t k = 0; k < steps.size(); ++k) {
    for (PatternType t : {PatternType::I, PatternType::II}) {
      if (steps_match(steps, k, pair.of(t).steps())) {
        Slot s;
        s.base = w[k] - entry;
        s.step = k;
        s.type = t;
        map.slots.push_back(s);
      }
    }
  }
  std::size_t ii_before = 0;
  for (std::size_t i = 0; i < map.slots.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (cubes_intersect(map.slots[i].base, map.slots[j].base)) {
        throw PatternError("overlapping pattern occurrences at steps " + std::to_string(map.slots[j].step) + " and " +
                           std::to_string(map.slots[i].step));
      }
    }
    Slot& s = map.slots[i];
    s.empty_step = s.step - 2 * ii_before;
    if (s.type == PatternType::II) {
      ++ii_before;
      ++map.counts.T_II;
    } else {
      ++map.counts.T_I;
    }
  }
  map.l_empty = map.length - 2 * map.counts.T_II;
  return map;
}

Walk apply_pattern_types(const Walk& empty, const std::vector<std::size_t>& empty_steps,
                         const std::vector<PatternType>& types, const PatternPair& pair) {
  if (empty_steps.size() != types.size()) throw PatternError("apply_pattern_types: size mismatch");
  const auto steps = empty.steps();
  const std::size_t span = pair.chi_I.length();
  std::vector<Step> out;
  out.reserve(steps.size() + 2 * types.size());
  std::size_t next = 0;
  for (std::size_t i = 0; i < steps.size();) {
    if (next < empty_steps.size() && empty_steps[next] == i) {
      if (!steps_match(steps, i, pair.chi_I.steps())) {
        throw PatternError("apply_pattern_types: no type I pattern at step " + std::to_string(i));
      }
      const auto chi = pair.of(types[next]).steps();
      out.insert(out.end(), chi.begin(), chi.end());
      i += span;
      ++next;
    } else {
      if (next < empty_steps.size() && empty_steps[next] < i) throw PatternError("apply_pattern_types: unsorted slots");
      out.push_back(steps[i]);
      ++i;
    }
  }
  if (next != empty_steps.size()) throw PatternError("apply_pattern_types: slot beyond the walk");
  return Walk(empty.origin(), std::move(out));
}

Walk empty_walk(const Walk& w, const PatternPair& pair) {
  SlotMap map = scan_patterns(w, pair);
  std::vector<Step> out;
  const auto steps = w.steps();
  std::size_t next = 0;
  for (std::size_t i = 0; i < steps.size();) {
    if (next < map.slots.size() && map.slots[next].step == i) {
      const auto chi = pair.chi_I.steps();
      out.insert(out.end(), chi.begin(), chi.end());
      i += pair.of(map.slots[next].type).length();
      ++next;
    } else {
      out.push_back(steps[i++]);
    }
  }
  return Walk(w.origin(), std::move(out));
}

EmptyPolygon empty_polygon(const Polygon& p, const PatternPair& pair) {
  const Walk path = closed_path_of(p);
  SlotMap map = scan_patterns(path, pair);
  if (map.counts.T_II == 0) return {p, 0};
  return {Polygon::from_closed_path(empty_walk(path, pair)), map.counts.T_II};
}

SlotMap slot_partition(const Polygon& p, double phi, const PatternPair& pair) {
  SlotMap map = scan_patterns(closed_path_of(p), pair);
  const std::size_t L = p.length();
  const std::size_t s = L / 10;
  const std::size_t span = pair.chi_I.length();
  map.segment = s;
  map.partitioned = true;
  SlotCounts& c = map.counts;
  for (std::size_t i = 0; i < map.slots.size(); ++i) {
    Slot& slot = map.slots[i];
    slot.in_s1 = slot.empty_step + span <= s;
    slot.in_s2 = slot.empty_step + s >= map.l_empty;
    const bool ii = slot.type == PatternType::II;
    if (slot.in_s1) {
      map.s1.push_back(i);
      ++(ii ? c.N_II1 : c.N_I1);
    } else if (slot.in_s2) {
      map.s2.push_back(i);
      ++(ii ? c.N_II2 : c.N_I2);
    }
  }
  c.N_I = c.N_I1 + c.N_I2;
  c.N_II = c.N_II1 + c.N_II2;
  const std::size_t least = std::min({map.s1.size(), map.s2.size(), c.N_I, c.N_II});
  map.good = Rational(least) >= Rational(phi) * L;
  return map;
}

LocalShellKey local_shell_key(const Polygon& p, const PatternPair& pair) {
  SlotMap map = slot_partition(p, 0.0, pair);
  LocalShellKey key;
  const EmptyPolygon e = empty_polygon(p, pair);
  key.base.assign(e.polygon.edges().begin(), e.polygon.edges().end());
  for (std::size_t i = 0; i < map.slots.size(); ++i) {
    const Slot& s = map.slots[i];
    if (s.in_s1 || s.in_s2) {
      key.shell_steps.push_back(s.empty_step);
      key.type_ii_in_shell += s.type == PatternType::II;
    } else {
      key.frozen.emplace_back(s.empty_step, s.type);
    }
  }
  return key;
}

Polygon local_shell_member(const Polygon& p, const std::vector<bool>& type_ii, const PatternPair& pair) {
  SlotMap map = slot_partition(p, 0.0, pair);
  const auto shell = map.shell_slots();
  if (type_ii.size() != shell.size()) throw PatternError("local_shell_member: wrong number of shell slots");
  std::vector<std::size_t> steps;
  std::vector<PatternType> types;
  std::size_t next = 0;
  for (std::size_t i = 0; i < map.slots.size(); ++i) {
    const Slot& s = map.slots[i];
    steps.push_back(s.empty_step);
    if (next < shell.size() && shell[next] == i) {
      types.push_back(type_ii[next] ? PatternType::II : PatternType::I);
      ++next;
    } else {
      types.push_back(s.type);
    }
  }
  const Walk empty = empty_walk(closed_path_of(p), pair);
  const Walk path = apply_pattern_types(empty, steps, types, pair);
  Polygon member = Polygon::from_closed_path(path);
  if (!(member.canonical_path() == path)) throw PatternError("local_shell_member: trace convention changed");
  return member;
}

std::vector<Polygon> local_shell_members(const Polygon& p, const PatternPair& pair, std::size_t max_slots) {
  SlotMap map = slot_partition(p, 0.0, pair);
  const std::size_t k = map.s1.size() + map.s2.size();
  if (k > max_slots) throw PatternError("local shell has " + std::to_string(k) + " slots, above the budget");
  const std::size_t j = map.counts.N_II;
  std::vector<bool> mask(k, false);
  std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(j), true);
  std::vector<Polygon> out;
  do {
    out.push_back(local_shell_member(p, mask, pair));
  } while (std::prev_permutation(mask.begin(), mask.end()));
  return out;
}

std::optional<Walk> find_avoidance_witness(const Walk& g, const Walk& h, std::size_t ext_len) {
  if (!(g.origin() == h.origin())) throw PatternError("walks must share their first vertex");
  const int d = g.dim();
  std::unordered_set<LatticePoint, LatticePointHash> vg(g.vertices().begin() + 1, g.vertices().end());
  std::unordered_set<LatticePoint, LatticePointHash> vh(h.vertices().begin() + 1, h.vertices().end());
  std::vector<LatticePoint> beta{g.origin()};
  std::unordered_set<LatticePoint, LatticePointHash> on_beta{g.origin()};
  std::optional<Walk> witness;
  std::function<void()> dfs = [&] {
    if (witness || beta.size() > ext_len) return;
    for (int axis = 1; axis <= d && !witness; ++axis) {
      for (int s : {1, -1}) {
        const LatticePoint q = beta.back() + LatticePoint::unit(d, axis, s);
        if (on_beta.count(q)) continue;
        const bool hit_g = vg.count(q) != 0;
        const bool hit_h = vh.count(q) != 0;
        beta.push_back(q);
        if (hit_g != hit_h) {
          witness = Walk::from_vertices(beta);
          return;
        }
        if (!hit_g) {
          on_beta.insert(q);
          dfs();
          on_beta.erase(q);
        }
        beta.pop_back();
        if (witness) return;
      }
    }
  };
  dfs();
  return witness;
}

bool avoidance_equivalence_check(const Walk& g, const Walk& h, std::size_t ext_len, const PatternPair& pair) {
  if (!(g.origin() == h.origin())) throw PatternError("walks must share their first vertex");
  if (!(empty_walk(g, pair) == empty_walk(h, pair))) throw PatternError("walks belong to different shells");
  return !find_avoidance_witness(g, h, ext_len).has_value();
}

}  // namespace sawlab
