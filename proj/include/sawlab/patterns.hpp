#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sawlab/lattice.hpp"

namespace sawlab {

class PatternError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class PatternType { I, II };

struct PatternPair {
  Walk chi_I;
  Walk chi_II;
  int dim() const { return chi_I.dim(); }
  const Walk& of(PatternType t) const { return t == PatternType::I ? chi_I : chi_II; }
};

/// The stored pair for d = 2; for d >= 3 a pair found by a bounded search
/// (a Hamiltonian path of the cube boundary, detoured through the interior
/// for type II). Results are cached.
const PatternPair& canonical_pattern_pair(int dim);

struct PatternValidation {
  bool ok = true;
  std::vector<std::string> violations;
};

PatternValidation validate_pattern_pair(const PatternPair& pair);

/// Start of every pattern relative to its cube: (1, 3, 1, ..., 1).
LatticePoint pattern_entry(int dim);

struct Slot {
  LatticePoint base;           // lowest corner of the slot cube
  std::size_t step = 0;        // occurrence step in the scanned walk
  PatternType type = PatternType::I;
  std::size_t empty_step = 0;  // occurrence step once every slot holds type I
  bool in_s1 = false;
  bool in_s2 = false;
};

struct SlotCounts {
  std::size_t T_I = 0, T_II = 0;
  std::size_t N_I = 0, N_II = 0;
  std::size_t N_I1 = 0, N_I2 = 0, N_II1 = 0, N_II2 = 0;
};

struct SlotMap {
  std::size_t length = 0;             // length of the scanned walk
  std::vector<Slot> slots;            // in order along the walk
  std::vector<std::size_t> s1, s2;    // indices into slots
  SlotCounts counts;
  std::size_t l_empty = 0;
  std::size_t segment = 0;            // floor(length / 10); set by slot_partition
  bool partitioned = false;
  bool good = false;

  /// Indices of S1 followed by S2, in order along the walk.
  std::vector<std::size_t> shell_slots() const;
};

/// All translate occurrences of either pattern. Throws PatternError when two
/// occurrences have intersecting cubes.
SlotMap scan_patterns(const Walk& w, const PatternPair& pair);

/// Rebuilds a walk from its all-type-I form by placing `types[i]` at the
/// slot occurring at step `empty_steps[i]` of `empty`.
Walk apply_pattern_types(const Walk& empty, const std::vector<std::size_t>& empty_steps,
                         const std::vector<PatternType>& types, const PatternPair& pair);

/// The walk with every type II pattern switched to type I; the shell key of
/// a walk.
Walk empty_walk(const Walk& w, const PatternPair& pair);

struct EmptyPolygon {
  Polygon polygon;
  std::size_t t_ii = 0;
};

EmptyPolygon empty_polygon(const Polygon& p, const PatternPair& pair);

/// Slots with S1/S2 membership and counts. S1 holds slots lying within the
/// first floor(|p|/10) steps of the empty polygon's trace, S2 those within the
/// last floor(|p|/10). `good` is min(|S1|, |S2|, N_I, N_II) >= phi |p|.
SlotMap slot_partition(const Polygon& p, double phi, const PatternPair& pair);

struct LocalShellKey {
  std::vector<Edge> base;                  // edges of the empty polygon
  std::vector<std::size_t> shell_steps;    // S1 and S2 positions along the empty trace
  std::size_t type_ii_in_shell = 0;
  std::vector<std::pair<std::size_t, PatternType>> frozen;  // other slots
  bool operator==(const LocalShellKey&) const = default;
};

LocalShellKey local_shell_key(const Polygon& p, const PatternPair& pair);

/// The local-shell member whose S1 and S2 slots (in order along the trace)
/// carry type II exactly where `type_ii` is true; other slots keep their type.
Polygon local_shell_member(const Polygon& p, const std::vector<bool>& type_ii, const PatternPair& pair);

inline constexpr std::size_t kMaxShellSlots = 20;

/// Every member of the local shell of p, ordered by the lexicographic order
/// of the type-II slot subsets.
std::vector<Polygon> local_shell_members(const Polygon& p, const PatternPair& pair,
                                         std::size_t max_slots = kMaxShellSlots);

/// A walk from g[0] of length <= ext_len that avoids exactly one of g, h.
std::optional<Walk> find_avoidance_witness(const Walk& g, const Walk& h, std::size_t ext_len);

/// Exhaustive shared-avoidance check for two walks of one shell. Throws
/// PatternError when they have different shells or different starts.
bool avoidance_equivalence_check(const Walk& g, const Walk& h, std::size_t ext_len, const PatternPair& pair);

}  // namespace sawlab
