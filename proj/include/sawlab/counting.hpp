#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "sawlab/exact.hpp"
#include "sawlab/lattice.hpp"

namespace sawlab {

/// Raised when the predicted search volume exceeds the node budget.
class GuardrailError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class WalkSet {
  OriginStart,  ///< SAW_n: walks from the origin
  NeAtOrigin,   ///< SAW_n^0: walks whose lex-maximal vertex is the origin
  StartIsNe,    ///< First_n: walks from the origin that never exceed it lexicographically
};

struct Constraint {
  WalkSet set = WalkSet::OriginStart;
  /// Vertices (other than the origin) that enumerated walks must not visit.
  /// Used to enumerate second parts against a fixed first part.
  std::optional<Walk> avoid;

  static Constraint origin_start() { return {WalkSet::OriginStart, std::nullopt}; }
  static Constraint ne_at_origin() { return {WalkSet::NeAtOrigin, std::nullopt}; }
  static Constraint start_is_ne() { return {WalkSet::StartIsNe, std::nullopt}; }
  static Constraint second_part_of(const Walk& first) { return {WalkSet::StartIsNe, first}; }
};

enum class Delivery {
  Concurrent,  ///< visitor may be invoked from several threads at once
  Serialized,  ///< visitor invocations are mutually exclusive
};

inline constexpr double kDefaultNodeBudget = 1e10;

struct EngineOptions {
  unsigned threads = 0;  ///< 0 selects std::thread::hardware_concurrency()
  std::size_t split_depth = 6;
  std::optional<double> node_budget;  ///< falls back to SAWLAB_NODE_BUDGET, then 1e10
  Delivery delivery = Delivery::Concurrent;
};

double effective_node_budget(const EngineOptions& options);

/// Per-step growth estimate used by the guardrail: 2.7 for d = 2, 4.7 for d = 3.
double growth_estimate(int dim);

/// Throws GuardrailError when growth_estimate(d)^n exceeds the budget.
void check_guardrail(std::size_t n, int dim, const EngineOptions& options);

/// Non-owning view of a walk handed to visitors; valid only during the call.
struct WalkView {
  int dim = 2;
  std::span<const LatticePoint> vertices;
  std::span<const Step> steps;

  std::size_t length() const { return steps.size(); }
  Walk to_walk() const { return Walk(vertices.front(), {steps.begin(), steps.end()}); }
};

using WalkVisitor = std::function<void(const WalkView&)>;
using TaskVisitor = std::function<void(std::size_t task, const WalkView&)>;

/// Pruned depth-first enumeration split into independent subtree tasks at a
/// fixed prefix depth. Each task is explored by exactly one thread, in
/// lexicographic step order (+e1, -e1, +e2, -e2, ...), so per-task
/// accumulators need no locking and merging them in task order is
/// deterministic.
class Enumeration {
 public:
  Enumeration(std::size_t n, int dim, Constraint constraint, EngineOptions options = {});

  std::size_t task_count() const { return prefixes_.size(); }
  std::size_t length() const { return n_; }
  int dim() const { return dim_; }

  /// Visits every qualifying walk once.
  void run(const TaskVisitor& visit) const;

  /// Number of qualifying walks, without materializing leaves.
  BigInt count() const;

 private:
  struct Geometry;
  void run_task(std::size_t task, const TaskVisitor& visit) const;
  std::uint64_t count_task(std::size_t task) const;

  std::size_t n_;
  int dim_;
  Constraint constraint_;
  EngineOptions options_;
  std::vector<std::vector<Step>> prefixes_;
  std::shared_ptr<const Geometry> geo_;
};

/// Visits each qualifying walk exactly once and returns the count. With one
/// thread the visit order is lexicographic in the step tokens.
BigInt enumerate_saw(std::size_t n, int dim, const Constraint& constraint, const WalkVisitor& visitor,
                     const EngineOptions& options = {});

BigInt count_saw(std::size_t n, int dim, const Constraint& constraint, const EngineOptions& options = {});

/// Map-reduce over walks with one accumulator per subtree task, merged in
/// task order.
template <class Acc, class Visit, class Merge>
Acc enumerate_reduce(std::size_t n, int dim, const Constraint& constraint, const Acc& init, Visit visit, Merge merge,
                     const EngineOptions& options = {}) {
  Enumeration e(n, dim, constraint, options);
  std::vector<Acc> partial(e.task_count(), init);
  e.run([&](std::size_t task, const WalkView& w) { visit(partial[task], w); });
  Acc total = init;
  for (auto& p : partial) merge(total, std::move(p));
  return total;
}

/// Runs fn(i) for i in [0, count) on up to `threads` workers (0 = hardware).
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn);

/// Visits the canonical closed trace (length n, ending back at the origin)
/// of every polygon in SAP_n exactly once. Returns p_n.
BigInt enumerate_polygons(std::size_t n, int dim, const WalkVisitor& visitor, const EngineOptions& options = {});

BigInt count_polygons(std::size_t n, int dim, const EngineOptions& options = {});

struct CountReport {
  std::size_t n = 0;
  int d = 2;
  BigInt c_n;
  BigInt closing_walks;  ///< closing walks in SAW_n
  BigInt p_n1;           ///< p_{n+1}
  ExactProb closing_direct;
  ExactProb closing_identity;
};

/// Closing probability of SAW_n two ways: by direct count and via
/// 2(n+1) p_{n+1} / c_n.
CountReport closing_probabilities(std::size_t n, int dim, const EngineOptions& options = {});

struct CompletionCounts {
  BigInt completions;
  BigInt closing;
};

/// Second parts of length `second_length` that complete `first` into a walk
/// with NE at the origin whose two-part decomposition is [first, second];
/// `closing` counts the completed walks that close.
CompletionCounts count_completions(const Walk& first, std::size_t second_length, const EngineOptions& options = {});

struct FirstPartEntry {
  Walk first;
  BigInt completions;
  BigInt closing;
  ExactProb q;
  bool in_hphi = false;
};

struct FirstPartTable {
  std::size_t ell = 0;
  std::size_t n = 0;
  int d = 2;
  double alpha = 0.0;
  std::vector<FirstPartEntry> entries;  ///< First_{ell,n}, lexicographic step order
};

/// Every first part of length ell occurring in SAW_n^0, with its exact
/// conditional closing probability and membership in the high-q set
/// (q > n^-alpha).
FirstPartTable first_part_table(std::size_t ell, std::size_t n, double alpha, int dim = 2,
                                const EngineOptions& options = {});

std::string first_part_table_csv(const FirstPartTable& table);

struct GrowthRow {
  std::size_t n = 0;
  BigInt c_n;
  double root = 0.0;  ///< c_n^(1/n)
};

struct GrowthReport {
  int d = 2;
  std::vector<GrowthRow> rows;
  std::size_t submultiplicative_checks = 0;
  std::vector<std::pair<std::size_t, std::size_t>> submultiplicative_failures;
  /// Least-squares fit of log c_n = n log mu + b sqrt(n) + a over n >= 1.
  double fitted_mu = 0.0;
  double fitted_sqrt_coeff = 0.0;
  double fitted_const = 0.0;
};

GrowthReport growth_report(std::size_t n_max, int dim, const EngineOptions& options = {});

}  // namespace sawlab
