#include "sawlab/counting.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <thread>
#include <unordered_set>

#include "sawlab/codec.hpp"
#include "sawlab/two_part.hpp"

namespace sawlab {

double effective_node_budget(const EngineOptions& options) {
  if (options.node_budget) return *options.node_budget;
  if (const char* env = std::getenv("SAWLAB_NODE_BUDGET")) {
    char* end = nullptr;
    double v = std::strtod(env, &end);
    if (end != env && v > 0) return v;
  }
  return kDefaultNodeBudget;
}

double growth_estimate(int dim) { return 2.0 * dim - 1.3; }

void check_guardrail(std::size_t n, int dim, const EngineOptions& options) {
  const double predicted = std::pow(growth_estimate(dim), static_cast<double>(n));
  const double budget = effective_node_budget(options);
  if (predicted > budget) {
    std::ostringstream os;
    os << "exact enumeration infeasible: n=" << n << ", d=" << dim << " predicts ~" << predicted
       << " nodes, budget " << budget << " (set SAWLAB_NODE_BUDGET to override)";
    throw GuardrailError(os.str());
  }
}

namespace {

/// Visited-cell set over the box [-(n+1), n+1]^d: a bitset when the box is
/// small, a hash set otherwise.
class Occupancy {
 public:
  Occupancy(std::int64_t cells, bool dense) : dense_(dense) {
    if (dense_) bits_.assign(static_cast<std::size_t>((cells + 63) / 64), 0);
  }
  bool test(std::int64_t i) const {
    if (dense_) return (bits_[static_cast<std::size_t>(i >> 6)] >> (i & 63)) & 1u;
    return sparse_.count(i) != 0;
  }
  void set(std::int64_t i) {
    if (dense_) bits_[static_cast<std::size_t>(i >> 6)] |= std::uint64_t{1} << (i & 63);
    else sparse_.insert(i);
  }
  void reset(std::int64_t i) {
    if (dense_) bits_[static_cast<std::size_t>(i >> 6)] &= ~(std::uint64_t{1} << (i & 63));
    else sparse_.erase(i);
  }

 private:
  bool dense_;
  std::vector<std::uint64_t> bits_;
  std::unordered_set<std::int64_t> sparse_;
};

constexpr std::int64_t kDenseCellLimit = std::int64_t{1} << 27;

}  // namespace

struct Enumeration::Geometry {
  int dim = 2;
  std::int64_t side = 0;
  std::int64_t offset = 0;
  std::int64_t cells = 0;
  std::int64_t origin_index = 0;
  bool dense = true;
  std::vector<Step> step_order;          // +1, -1, +2, -2, ...
  std::vector<std::int64_t> step_delta;  // index delta per step_order entry
  std::vector<std::int64_t> blocked;     // pre-occupied cells (avoid set)
  bool half_space = false;               // forbid cells lex-greater than the origin

  std::int64_t index_of(const LatticePoint& p) const {
    std::int64_t idx = 0;
    for (int i = dim - 1; i >= 0; --i) idx = idx * side + (p[i] + offset);
    return idx;
  }
  bool in_box(const LatticePoint& p) const {
    for (int i = 0; i < dim; ++i) {
      if (p[i] + offset < 0 || p[i] + offset >= side) return false;
    }
    return true;
  }
  bool forbidden(std::int64_t idx) const { return half_space && idx > origin_index; }

  Occupancy fresh_occupancy() const {
    Occupancy occ(cells, dense);
    for (auto b : blocked) occ.set(b);
    return occ;
  }
};

Enumeration::Enumeration(std::size_t n, int dim, Constraint constraint, EngineOptions options)
    : n_(n), dim_(dim), constraint_(std::move(constraint)), options_(options) {
  if (dim < 2 || dim > kMaxDim) throw LatticeError("enumeration dimension out of range");
  check_guardrail(n, dim, options_);

  auto geo = std::make_shared<Geometry>();
  geo->dim = dim;
  geo->offset = static_cast<std::int64_t>(n) + 1;
  geo->side = 2 * geo->offset + 1;
  double cells = std::pow(static_cast<double>(geo->side), dim);
  if (cells > 9e15) throw GuardrailError("enumeration box too large");
  geo->cells = 1;
  for (int i = 0; i < dim; ++i) geo->cells *= geo->side;
  geo->dense = geo->cells <= kDenseCellLimit;
  geo->origin_index = geo->index_of(LatticePoint::origin(dim));
  std::int64_t stride = 1;
  for (int axis = 1; axis <= dim; ++axis) {
    geo->step_order.emplace_back(axis, 1);
    geo->step_delta.push_back(stride);
    geo->step_order.emplace_back(axis, -1);
    geo->step_delta.push_back(-stride);
    stride *= geo->side;
  }
  geo->half_space = constraint_.set == WalkSet::StartIsNe;
  if (constraint_.avoid) {
    if (constraint_.avoid->dim() != dim) throw LatticeError("avoid walk has wrong dimension");
    for (const auto& v : constraint_.avoid->vertices()) {
      if (!v.is_origin() && geo->in_box(v)) geo->blocked.push_back(geo->index_of(v));
    }
  }
  geo_ = std::move(geo);

  // Prefixes up to the split depth, in lexicographic step order.
  const std::size_t depth = std::min(options_.split_depth, n_);
  Occupancy occ = geo_->fresh_occupancy();
  occ.set(geo_->origin_index);
  std::vector<Step> steps;
  std::function<void(std::int64_t)> grow = [&](std::int64_t at) {
    if (steps.size() == depth) {
      prefixes_.push_back(steps);
      return;
    }
    for (std::size_t s = 0; s < geo_->step_order.size(); ++s) {
      std::int64_t next = at + geo_->step_delta[s];
      if (geo_->forbidden(next) || occ.test(next)) continue;
      occ.set(next);
      steps.push_back(geo_->step_order[s]);
      grow(next);
      steps.pop_back();
      occ.reset(next);
    }
  };
  grow(geo_->origin_index);
}

void Enumeration::run_task(std::size_t task, const TaskVisitor& visit) const {
  const Geometry& g = *geo_;
  Occupancy occ = g.fresh_occupancy();
  std::vector<LatticePoint> verts{LatticePoint::origin(dim_)};
  std::vector<Step> steps;
  verts.reserve(n_ + 1);
  steps.reserve(n_);
  std::int64_t at = g.origin_index;
  occ.set(at);
  for (const Step& s : prefixes_[task]) {
    std::size_t k = static_cast<std::size_t>(2 * (s.axis() - 1) + (s.sign() > 0 ? 0 : 1));
    at += g.step_delta[k];
    occ.set(at);
    verts.push_back(verts.back() + s.vector(dim_));
    steps.push_back(s);
  }

  std::vector<LatticePoint> shifted;
  auto leaf = [&] {
    if (constraint_.set == WalkSet::NeAtOrigin) {
      const LatticePoint shift = -ne_vertex(verts);
      shifted.assign(verts.begin(), verts.end());
      for (auto& v : shifted) v = v + shift;
      visit(task, WalkView{dim_, shifted, steps});
    } else {
      visit(task, WalkView{dim_, verts, steps});
    }
  };

  std::function<void(std::int64_t)> dfs = [&](std::int64_t cur) {
    if (steps.size() == n_) {
      leaf();
      return;
    }
    for (std::size_t s = 0; s < g.step_order.size(); ++s) {
      const std::int64_t next = cur + g.step_delta[s];
      if (g.forbidden(next) || occ.test(next)) continue;
      occ.set(next);
      steps.push_back(g.step_order[s]);
      verts.push_back(verts.back() + g.step_order[s].vector(dim_));
      dfs(next);
      verts.pop_back();
      steps.pop_back();
      occ.reset(next);
    }
  };
  dfs(at);
}

std::uint64_t Enumeration::count_task(std::size_t task) const {
  const Geometry& g = *geo_;
  Occupancy occ = g.fresh_occupancy();
  std::int64_t at = g.origin_index;
  occ.set(at);
  for (const Step& s : prefixes_[task]) {
    std::size_t k = static_cast<std::size_t>(2 * (s.axis() - 1) + (s.sign() > 0 ? 0 : 1));
    at += g.step_delta[k];
    occ.set(at);
  }
  const std::size_t start_depth = prefixes_[task].size();
  if (start_depth == n_) return 1;

  std::uint64_t total = 0;
  const std::size_t nsteps = g.step_delta.size();
  std::function<void(std::int64_t, std::size_t)> dfs = [&](std::int64_t cur, std::size_t depth) {
    if (depth + 1 == n_) {
      for (std::size_t s = 0; s < nsteps; ++s) {
        const std::int64_t next = cur + g.step_delta[s];
        if (!g.forbidden(next) && !occ.test(next)) ++total;
      }
      return;
    }
    for (std::size_t s = 0; s < nsteps; ++s) {
      const std::int64_t next = cur + g.step_delta[s];
      if (g.forbidden(next) || occ.test(next)) continue;
      occ.set(next);
      dfs(next, depth + 1);
      occ.reset(next);
    }
  };
  dfs(at, start_depth);
  return total;
}

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn) {
  unsigned workers = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            fn(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

void Enumeration::run(const TaskVisitor& visit) const {
  if (options_.delivery == Delivery::Serialized) {
    std::mutex m;
    parallel_for(prefixes_.size(), options_.threads, [&](std::size_t t) {
      run_task(t, [&](std::size_t task, const WalkView& w) {
        std::lock_guard lock(m);
        visit(task, w);
      });
    });
    return;
  }
  parallel_for(prefixes_.size(), options_.threads, [&](std::size_t t) { run_task(t, visit); });
}

BigInt Enumeration::count() const {
  std::vector<std::uint64_t> partial(prefixes_.size(), 0);
  parallel_for(prefixes_.size(), options_.threads, [&](std::size_t t) { partial[t] = count_task(t); });
  BigInt total = 0;
  for (auto c : partial) total += c;
  return total;
}

BigInt enumerate_saw(std::size_t n, int dim, const Constraint& constraint, const WalkVisitor& visitor,
                     const EngineOptions& options) {
  Enumeration e(n, dim, constraint, options);
  std::atomic<std::uint64_t> visited{0};
  e.run([&](std::size_t, const WalkView& w) {
    visitor(w);
    ++visited;
  });
  return BigInt(visited.load());
}

BigInt count_saw(std::size_t n, int dim, const Constraint& constraint, const EngineOptions& options) {
  return Enumeration(n, dim, constraint, options).count();
}

namespace {

/// Closing first parts of the canonical trace: a walk from NE over the
/// half-space, ending next to NE, leaving towards the lex-larger neighbour.
bool is_canonical_trace(const WalkView& w) {
  const auto& v = w.vertices;
  const std::size_t m = w.length();
  return adjacent(v[m], v[0]) && lex_compare_points(v[1], v[m]) == std::strong_ordering::greater;
}

}  // namespace

BigInt enumerate_polygons(std::size_t n, int dim, const WalkVisitor& visitor, const EngineOptions& options) {
  if (n < 4 || n % 2 != 0) throw std::invalid_argument("polygon length must be even and at least 4");
  Enumeration e(n - 1, dim, Constraint::start_is_ne(), options);
  std::vector<std::uint64_t> partial(e.task_count(), 0);
  std::mutex m;
  e.run([&](std::size_t task, const WalkView& w) {
    if (!is_canonical_trace(w)) return;
    ++partial[task];
    std::vector<LatticePoint> closed(w.vertices.begin(), w.vertices.end());
    closed.push_back(w.vertices.front());
    std::vector<Step> steps(w.steps.begin(), w.steps.end());
    steps.push_back(step_between(w.vertices.back(), w.vertices.front()));
    if (options.delivery == Delivery::Serialized) {
      std::lock_guard lock(m);
      visitor(WalkView{dim, closed, steps});
    } else {
      visitor(WalkView{dim, closed, steps});
    }
  });
  BigInt total = 0;
  for (auto c : partial) total += c;
  return total;
}

BigInt count_polygons(std::size_t n, int dim, const EngineOptions& options) {
  if (n < 4 || n % 2 != 0) throw std::invalid_argument("polygon length must be even and at least 4");
  return enumerate_reduce(
      n - 1, dim, Constraint::start_is_ne(), BigInt(0),
      [](BigInt& acc, const WalkView& w) {
        if (is_canonical_trace(w)) acc += 1;
      },
      [](BigInt& total, BigInt&& part) { total += part; }, options);
}

CountReport closing_probabilities(std::size_t n, int dim, const EngineOptions& options) {
  if (n < 3 || n % 2 == 0) throw std::invalid_argument("closing_probabilities needs odd n >= 3");
  struct Acc {
    std::uint64_t walks = 0;
    std::uint64_t closing = 0;
  };
  Acc acc = enumerate_reduce(
      n, dim, Constraint::origin_start(), Acc{},
      [](Acc& a, const WalkView& w) {
        ++a.walks;
        if (adjacent(w.vertices.front(), w.vertices.back())) ++a.closing;
      },
      [](Acc& total, Acc&& part) {
        total.walks += part.walks;
        total.closing += part.closing;
      },
      options);

  CountReport r;
  r.n = n;
  r.d = dim;
  r.c_n = acc.walks;
  r.closing_walks = acc.closing;
  r.p_n1 = count_polygons(n + 1, dim, options);
  r.closing_direct = ExactProb(r.closing_walks, r.c_n);
  r.closing_identity = ExactProb(BigInt(2 * (n + 1)) * r.p_n1, r.c_n);
  return r;
}

CompletionCounts count_completions(const Walk& first, std::size_t second_length, const EngineOptions& options) {
  if (!first.origin().is_origin()) throw std::invalid_argument("first part must start at the origin");
  if (!ne_vertex(first).is_origin() || !is_self_avoiding(first)) {
    throw std::invalid_argument("first part must be self-avoiding with NE vertex at its start");
  }
  const auto fv = first.vertices();
  const LatticePoint& tip = first.end();
  const std::size_t total_length = first.length() + second_length;
  EngineOptions inner = options;
  inner.threads = 1;
  struct Acc {
    std::uint64_t completions = 0;
    std::uint64_t closing = 0;
  };
  Acc acc = enumerate_reduce(
      second_length, first.dim(), Constraint::second_part_of(first), Acc{},
      [&](Acc& a, const WalkView& w) {
        if (!part_ranks_above(fv, w.vertices)) return;
        ++a.completions;
        if (total_length >= 2 && adjacent(tip, w.vertices.back())) ++a.closing;
      },
      [](Acc& t, Acc&& p) {
        t.completions += p.completions;
        t.closing += p.closing;
      },
      inner);
  // Each pair of parts is shared by a walk and its reversal.
  const unsigned orientations = total_length == 0 ? 1 : 2;
  return {BigInt(acc.completions) * orientations, BigInt(acc.closing) * orientations};
}

FirstPartTable first_part_table(std::size_t ell, std::size_t n, double alpha, int dim, const EngineOptions& options) {
  if (ell > n) throw std::invalid_argument("first_part_table needs ell <= n");
  check_guardrail(n, dim, options);
  std::vector<Walk> candidates;
  EngineOptions serial = options;
  serial.threads = 1;
  enumerate_saw(ell, dim, Constraint::start_is_ne(), [&](const WalkView& w) { candidates.push_back(w.to_walk()); },
                serial);

  std::vector<std::optional<FirstPartEntry>> slots(candidates.size());
  const Exponent threshold = -Exponent::from_double(alpha);
  parallel_for(candidates.size(), options.threads, [&](std::size_t i) {
    CompletionCounts c = count_completions(candidates[i], n - ell, serial);
    if (c.completions == 0) return;
    FirstPartEntry e{candidates[i], c.completions, c.closing, ExactProb(c.closing, c.completions), false};
    e.in_hphi = compare_with_power(e.q.value(), n, threshold) == std::strong_ordering::greater;
    slots[i] = std::move(e);
  });

  FirstPartTable t;
  t.ell = ell;
  t.n = n;
  t.d = dim;
  t.alpha = alpha;
  for (auto& s : slots) {
    if (s) t.entries.push_back(std::move(*s));
  }
  return t;
}

std::string first_part_table_csv(const FirstPartTable& table) {
  std::ostringstream os;
  os << "ell,n,walk,completions,closing,q_num,q_den,in_hphi\n";
  for (const auto& e : table.entries) {
    os << table.ell << ',' << table.n << ",\"" << serialize_walk(e.first) << "\"," << e.completions << ','
       << e.closing << ',' << e.q.numerator() << ',' << e.q.denominator() << ',' << (e.in_hphi ? 1 : 0) << '\n';
  }
  return os.str();
}

GrowthReport growth_report(std::size_t n_max, int dim, const EngineOptions& options) {
  check_guardrail(n_max, dim, options);
  GrowthReport r;
  r.d = dim;
  for (std::size_t n = 0; n <= n_max; ++n) {
    GrowthRow row;
    row.n = n;
    row.c_n = count_saw(n, dim, Constraint::origin_start(), options);
    row.root = n == 0 ? 1.0 : std::pow(rational_to_double(Rational(row.c_n)), 1.0 / static_cast<double>(n));
    r.rows.push_back(std::move(row));
  }
  for (std::size_t m = 1; m <= n_max; ++m) {
    for (std::size_t k = 1; m + k <= n_max; ++k) {
      ++r.submultiplicative_checks;
      if (r.rows[m + k].c_n > r.rows[m].c_n * r.rows[k].c_n) r.submultiplicative_failures.emplace_back(m, k);
    }
  }

  // Normal equations for log c_n ~ a + b sqrt(n) + n log mu, n >= 1.
  if (n_max >= 3) {
    double s[3][3] = {};
    double rhs[3] = {};
    for (std::size_t n = 1; n <= n_max; ++n) {
      const double x[3] = {1.0, std::sqrt(static_cast<double>(n)), static_cast<double>(n)};
      const double y = std::log(rational_to_double(Rational(r.rows[n].c_n)));
      for (int i = 0; i < 3; ++i) {
        rhs[i] += x[i] * y;
        for (int j = 0; j < 3; ++j) s[i][j] += x[i] * x[j];
      }
    }
    for (int col = 0; col < 3; ++col) {
      int piv = col;
      for (int row = col + 1; row < 3; ++row) {
        if (std::abs(s[row][col]) > std::abs(s[piv][col])) piv = row;
      }
      std::swap(s[col], s[piv]);
      std::swap(rhs[col], rhs[piv]);
      for (int row = 0; row < 3; ++row) {
        if (row == col) continue;
        const double f = s[row][col] / s[col][col];
        for (int j = 0; j < 3; ++j) s[row][j] -= f * s[col][j];
        rhs[row] -= f * rhs[col];
      }
    }
    r.fitted_const = rhs[0] / s[0][0];
    r.fitted_sqrt_coeff = rhs[1] / s[1][1];
    r.fitted_mu = std::exp(rhs[2] / s[2][2]);
  }
  return r;
}

}  // namespace sawlab
