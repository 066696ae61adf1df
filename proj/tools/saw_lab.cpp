#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "sawlab/codec.hpp"
#include "sawlab/counting.hpp"
#include "sawlab/fixtures.hpp"
#include "sawlab/patterns.hpp"
#include "sawlab/resampler.hpp"
#include "sawlab/snake.hpp"
#include "sawlab/two_part.hpp"
#include "sawlab/verify.hpp"

using json = nlohmann::json;
using namespace sawlab;

namespace {

constexpr int kExitVerifyFailed = 1;
constexpr int kExitBadArguments = 2;
constexpr int kExitGuardrail = 3;
constexpr int kExitInternal = 4;

struct Flags {
  std::size_t n = 0;
  int d = 2;
  std::optional<std::size_t> ell, k, center, fixture;
  std::optional<double> alpha_prime, delta_prime;
  double alpha = 0.5, beta = 0.5, eta = 0.0, phi = 0.0;
  std::uint64_t seed = 1;
  std::size_t samples = 100000;
  unsigned threads = 0;
  std::string out, format = "json", walk, suite = "all", kind;
  std::size_t nmax = 8;
};

json big(const BigInt& v) { return to_decimal(v); }

json prob(const ExactProb& p) { return {{"num", to_decimal(p.numerator())}, {"den", to_decimal(p.denominator())}}; }

json point(const LatticePoint& p) {
  json a = json::array();
  for (int i = 0; i < p.dim(); ++i) a.push_back(p[i]);
  return a;
}

json chi(const ChiSquare& c) { return {{"statistic", c.statistic}, {"dof", c.dof}, {"p_value", c.p_value}}; }

const char* type_name(PatternType t) { return t == PatternType::I ? "I" : "II"; }

Polygon polygon_from(const Flags& f) {
  if (!f.walk.empty()) {
    Walk w = parse_walk(f.walk);
    return w.length() > 0 && w.origin() == w.end() ? Polygon::from_closed_path(w) : Polygon::from_closing_walk(w);
  }
  const auto& corpus = fixture_corpus();
  const std::size_t i = f.fixture.value_or(0);
  if (i >= corpus.size()) throw std::invalid_argument("--fixture out of range (corpus has " + std::to_string(corpus.size()) + ")");
  return corpus[i].polygon;
}

EngineOptions engine(const Flags& f) {
  EngineOptions o;
  o.threads = f.threads;
  return o;
}

struct Output {
  json doc;
  std::string csv;
};

Output run_count(const Flags& f) {
  const EngineOptions o = engine(f);
  const BigInt c = count_saw(f.n, f.d, Constraint::origin_start(), o);
  const BigInt first = count_saw(f.n, f.d, Constraint::start_is_ne(), o);
  Output r;
  r.doc = {{"n", f.n}, {"d", f.d}, {"c_n", big(c)}, {"first_n", big(first)}};
  std::ostringstream csv;
  csv << "n,d,c_n,first_n";
  if (f.n >= 4 && f.n % 2 == 0) {
    const BigInt p = count_polygons(f.n, f.d, o);
    r.doc["p_n"] = big(p);
    csv << ",p_n\n" << f.n << ',' << f.d << ',' << c << ',' << first << ',' << p << '\n';
  } else {
    csv << '\n' << f.n << ',' << f.d << ',' << c << ',' << first << '\n';
  }
  r.csv = csv.str();
  return r;
}

Output run_closing(const Flags& f) {
  CountReport c = closing_probabilities(f.n, f.d, engine(f));
  Output r;
  r.doc = {{"n", c.n},
           {"d", c.d},
           {"c_n", big(c.c_n)},
           {"closing_walks", big(c.closing_walks)},
           {"p_n1", big(c.p_n1)},
           {"closing_direct", prob(c.closing_direct)},
           {"closing_identity", prob(c.closing_identity)},
           {"identity_holds", c.closing_direct == c.closing_identity}};
  std::ostringstream csv;
  csv << "n,d,c_n,closing_walks,p_n1,num,den\n"
      << c.n << ',' << c.d << ',' << c.c_n << ',' << c.closing_walks << ',' << c.p_n1 << ','
      << c.closing_direct.numerator() << ',' << c.closing_direct.denominator() << '\n';
  r.csv = csv.str();
  return r;
}

Output run_decompose(const Flags& f) {
  if (f.walk.empty()) throw std::invalid_argument("decompose needs --walk");
  Decomposition dec = decompose(parse_walk(f.walk));
  Output r;
  r.doc = {{"first", serialize_walk(dec.first)},
           {"second", serialize_walk(dec.second)},
           {"meeting", point(dec.meeting)},
           {"first_length", dec.first.length()},
           {"walk_starts_in_first", dec.walk_starts_in_first}};
  r.csv = "part,walk\nfirst,\"" + serialize_walk(dec.first) + "\"\nsecond,\"" + serialize_walk(dec.second) + "\"\n";
  return r;
}

Output run_patterns(const Flags& f) {
  const PatternPair& pair = canonical_pattern_pair(f.d);
  PatternValidation v = validate_pattern_pair(pair);
  Output r;
  r.doc = {{"d", f.d},
           {"chi_I", serialize_walk(pair.chi_I)},
           {"chi_II", serialize_walk(pair.chi_II)},
           {"valid", v.ok},
           {"violations", v.violations}};
  std::ostringstream csv;
  csv << "index,step,type,in_s1,in_s2\n";
  if (f.d == 2) {
    r.doc["corpus_size"] = fixture_corpus().size();
    if (!f.walk.empty() || f.fixture) {
      Polygon p = polygon_from(f);
      SlotMap m = slot_partition(p, f.phi, pair);
      json slots = json::array();
      for (std::size_t i = 0; i < m.slots.size(); ++i) {
        const Slot& s = m.slots[i];
        slots.push_back({{"base", point(s.base)},
                         {"step", s.step},
                         {"empty_step", s.empty_step},
                         {"type", type_name(s.type)},
                         {"in_s1", s.in_s1},
                         {"in_s2", s.in_s2}});
        csv << i << ',' << s.step << ',' << type_name(s.type) << ',' << s.in_s1 << ',' << s.in_s2 << '\n';
      }
      const SlotCounts& c = m.counts;
      r.doc["polygon"] = {{"length", p.length()},
                          {"slots", slots},
                          {"segment", m.segment},
                          {"good", m.good},
                          {"phi", f.phi},
                          {"counts",
                           {{"T_I", c.T_I}, {"T_II", c.T_II}, {"N_I", c.N_I}, {"N_II", c.N_II},
                            {"N_I1", c.N_I1}, {"N_I2", c.N_I2}, {"N_II1", c.N_II1}, {"N_II2", c.N_II2}}}};
    }
  }
  r.csv = csv.str();
  return r;
}

Output run_resample(const Flags& f) {
  if (f.d != 2) throw std::invalid_argument("resample supports d = 2 only");
  Polygon p = polygon_from(f);
  EquilibriumReport e = equilibrium_and_pmf_test(p, f.samples, f.seed);
  ResampleRecord one = resample_local_shell(p, f.seed, 0, f.ell);
  Output r;
  json pmf = json::array();
  for (const auto& q : e.n_i1_pmf) pmf.push_back(prob(q));
  r.doc = {{"k", e.k},
           {"j", e.j},
           {"samples", e.samples},
           {"seed", e.seed},
           {"member_counts", e.member_counts},
           {"members", chi(e.members)},
           {"n_i1_counts", e.n_i1_counts},
           {"n_i1_pmf", pmf},
           {"marginal", chi(e.marginal)},
           {"exact_identity", e.exact_identity},
           {"pass", e.pass},
           {"first_draw",
            {{"gamma_out", serialize_walk(one.gamma_out.canonical_path())},
             {"n_i1_before", one.n_i1_before},
             {"n_i1_after", one.n_i1_after}}}};
  if (one.L) r.doc["first_draw"]["L"] = *one.L;
  if (f.ell) {
    MiddleWindow w = middle_index_and_window(p, *f.ell, canonical_pattern_pair(2));
    r.doc["window"] = {{"ell", w.ell},
                       {"reference_n_i1", w.reference_n_i1},
                       {"window_lo", w.window_lo},
                       {"window_hi", w.window_hi},
                       {"guaranteed_lo", w.guaranteed_lo},
                       {"guaranteed_hi", w.guaranteed_hi}};
    r.doc["window"]["l_mid"] = w.l_mid ? json(*w.l_mid) : json("undefined");
  }
  std::ostringstream csv;
  csv << "member,count\n";
  for (std::size_t i = 0; i < e.member_counts.size(); ++i) csv << i << ',' << e.member_counts[i] << '\n';
  r.csv = csv.str();
  return r;
}

json constants_json(const SnakeParams& p) {
  json j = {{"alpha", p.alpha}, {"beta", p.beta}, {"eta", p.eta}, {"delta", p.delta}, {"c", p.c},
            {"c_exact", "2^(1/" + std::to_string(p.c_root) + ")"}, {"K", p.K}, {"d", p.d}};
  j["threshold_n"] = p.threshold_n ? json(*p.threshold_n) : json(nullptr);
  if (p.n) {
    j["bound_at_n"] = p.closing_bound(static_cast<double>(p.n));
    j["feasible_at_n"] = p.feasible(static_cast<double>(p.n));
  }
  return j;
}

json closing_json(const ConditionalClosing& c) {
  return {{"k", c.k}, {"q", prob(c.q)}, {"completions", big(c.completions)}, {"closing", big(c.closing)},
          {"charming", c.charming}};
}

Output run_snake(const Flags& f) {
  SnakeParams p = method_constants(f.d, f.alpha, f.beta, f.eta);
  p.n = f.n;
  p.ell = f.ell.value_or(f.n / 2);
  Output r;
  r.doc = {{"constants", constants_json(p)}};
  std::ostringstream csv;
  csv << "alpha,beta,eta,delta,c,K,threshold_n\n"
      << p.alpha << ',' << p.beta << ',' << p.eta << ',' << p.delta << ',' << p.c << ',' << p.K << ','
      << (p.threshold_n ? std::to_string(*p.threshold_n) : "") << '\n';
  r.csv = csv.str();
  const EngineOptions o = engine(f);
  if (!f.walk.empty()) {
    const Walk w = parse_walk(f.walk);
    if (f.k) {
      r.doc["conditional"] = closing_json(conditional_closing_prob(w, *f.k, p.n, p.ell, p.alpha, o));
    } else {
      CharmingProfile prof = charming_profile(w, p, f.center, o);
      json entries = json::array();
      for (const auto& e : prof.entries) entries.push_back(closing_json(e));
      r.doc["profile"] = {{"source", prof.source},
                          {"interval", {prof.interval_lo, prof.interval_hi}},
                          {"entries", entries},
                          {"admissible", prof.admissible},
                          {"charming_count", prof.charming_count},
                          {"cs_threshold", prof.cs_threshold},
                          {"cs", prof.cs}};
      if (prof.center) {
        r.doc["profile"]["center"] = *prof.center;
        r.doc["profile"]["window"] = {prof.window_lo, prof.window_hi};
        r.doc["profile"]["n_set"] = prof.n_set;
      }
      r.csv = charming_profile_csv(prof);
    }
  }
  if (f.alpha_prime || f.delta_prime) {
    if (!f.alpha_prime || !f.delta_prime) throw std::invalid_argument("--alpha-prime and --delta-prime go together");
    BadIndexReport b = bad_index_set_and_select_ell(f.n, *f.alpha_prime, *f.delta_prime, f.d, o);
    json total = json::array(), closing = json::array();
    for (std::size_t i = 0; i < b.total.size(); ++i) {
      total.push_back(big(b.total[i]));
      closing.push_back(big(b.closing[i]));
    }
    r.doc["bad_index"] = {{"alpha_prime", b.alpha_prime}, {"delta_prime", b.delta_prime},
                          {"closing_prob", prob(b.closing_prob)}, {"premise", b.premise},
                          {"Q", b.Q}, {"q_bound", b.q_bound}, {"bound_holds", b.bound_holds},
                          {"lemma_asserted", b.lemma_asserted}, {"total", total}, {"closing", closing}};
    r.doc["bad_index"]["ell"] = b.ell ? json(*b.ell) : json(nullptr);
  }
  return r;
}

Output run_report(const Flags& f) {
  Output r;
  std::ostringstream csv;
  if (f.kind == "growth") {
    GrowthReport g = growth_report(f.n, f.d, engine(f));
    json rows = json::array();
    csv << "n,c_n,root\n";
    for (const auto& row : g.rows) {
      rows.push_back({{"n", row.n}, {"c_n", big(row.c_n)}, {"root", row.root}});
      csv << row.n << ',' << row.c_n << ',' << row.root << '\n';
    }
    r.doc = {{"d", g.d},
             {"rows", rows},
             {"submultiplicative_checks", g.submultiplicative_checks},
             {"submultiplicative_failures", g.submultiplicative_failures.size()},
             {"fit", {{"mu", g.fitted_mu}, {"sqrt_coeff", g.fitted_sqrt_coeff}, {"const", g.fitted_const}}}};
  } else {
    MidpointHistogram h = midpoint_histogram(f.n, f.d, engine(f));
    json counts = json::array();
    if (f.d == 2) csv << "x,y,num,den\n";
    else {
      for (int i = 1; i <= f.d; ++i) csv << 'x' << i << ',';
      csv << "num,den\n";
    }
    for (const auto& [pt, c] : h.counts) {
      counts.push_back({{"point", point(pt)}, {"count", big(c)}});
      for (int i = 0; i < pt.dim(); ++i) csv << pt[i] << ',';
      csv << c << ',' << h.c_m << '\n';
    }
    r.doc = {{"m", h.m}, {"d", h.d}, {"c_m", big(h.c_m)}, {"counts", counts}, {"sup", prob(h.sup)},
             {"sup_scaled", h.sup_scaled}};
  }
  r.csv = csv.str();
  return r;
}

void emit(const Flags& f, const Output& r) {
  const std::string text = f.format == "csv" ? r.csv : r.doc.dump() + "\n";
  if (f.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream os(f.out, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + f.out);
  os << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact self-avoiding walk laboratory"};
  app.require_subcommand(1);
  Flags f;

  auto common = [&](CLI::App* s) {
    s->add_option("--d", f.d, "Lattice dimension")->check(CLI::Range(2, kMaxDim));
    s->add_option("--threads", f.threads, "Worker cap (0 = hardware)");
    s->add_option("--out", f.out, "Write output to this file");
    s->add_option("--format", f.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  };

  auto* count = app.add_subcommand("count", "Count walks (and polygons for even n)");
  count->add_option("--n", f.n, "Walk length")->required();
  common(count);

  auto* closing = app.add_subcommand("closing", "Exact closing probability two ways");
  closing->add_option("--n", f.n, "Odd walk length")->required();
  common(closing);

  auto* dec = app.add_subcommand("decompose", "Two-part decomposition of a walk");
  dec->add_option("--walk", f.walk, "Walk, e.g. 'd=2;origin=0,0;steps=EN'")->required();
  common(dec);

  auto* pat = app.add_subcommand("patterns", "Pattern pair, validation and slot map");
  pat->add_option("--walk", f.walk, "Polygon as a closed path or closing walk");
  pat->add_option("--fixture", f.fixture, "Corpus polygon index");
  pat->add_option("--phi", f.phi, "Threshold of the good-partition test");
  common(pat);

  auto* res = app.add_subcommand("resample", "Pattern resampling experiment");
  res->add_option("--walk", f.walk, "Polygon as a closed path or closing walk");
  res->add_option("--fixture", f.fixture, "Corpus polygon index (default 0)");
  res->add_option("--seed", f.seed, "RNG seed");
  res->add_option("--samples", f.samples, "Draws")->check(CLI::PositiveNumber);
  res->add_option("--ell", f.ell, "Index for the middle window");
  common(res);

  auto* snake = app.add_subcommand("snake", "Snake method constants, charming profiles, bad indices");
  snake->add_option("--n", f.n, "Odd length n");
  snake->add_option("--ell", f.ell, "First part length (default n/2)");
  snake->add_option("--k", f.k, "Single index for the conditional closing probability");
  snake->add_option("--center", f.center, "l_mid for the N-set window");
  snake->add_option("--alpha", f.alpha, "Inverse charm");
  snake->add_option("--beta", f.beta, "Snake length");
  snake->add_option("--eta", f.eta, "Charm deficit");
  snake->add_option("--alpha-prime", f.alpha_prime, "Bad-index lemma exponent");
  snake->add_option("--delta-prime", f.delta_prime, "Bad-index lemma slack");
  snake->add_option("--walk", f.walk, "First part to profile");
  common(snake);

  auto* ver = app.add_subcommand("verify", "Run the invariant suite");
  ver->add_option("--suite", f.suite, "Suite")
      ->check(CLI::IsMember({"all", "counting", "two_part", "patterns", "resampler", "snake"}));
  ver->add_option("--nmax", f.nmax, "Largest length checked")->check(CLI::Range(3, 20));
  common(ver);

  auto* rep = app.add_subcommand("report", "Growth or midpoint report");
  rep->add_option("kind", f.kind, "growth | midpoint")->required()->check(CLI::IsMember({"growth", "midpoint"}));
  rep->add_option("--n", f.n, "Largest n (growth) or m (midpoint)")->required();
  common(rep);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitBadArguments;
  }

  try {
    if (*ver) {
      auto results = run_verify_suite(f.suite, f.nmax, engine(f));
      Output r;
      json checks = json::array();
      std::ostringstream csv;
      csv << "suite,name,passed,detail\n";
      bool ok = true;
      for (const auto& c : results) {
        checks.push_back({{"suite", c.suite}, {"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
        csv << c.suite << ",\"" << c.name << "\"," << c.passed << ",\"" << c.detail << "\"\n";
        ok = ok && c.passed;
      }
      r.doc = {{"suite", f.suite}, {"nmax", f.nmax}, {"checks", checks}, {"passed", ok}};
      r.csv = csv.str();
      emit(f, r);
      return ok ? 0 : kExitVerifyFailed;
    }
    if ((*snake) && f.n == 0 && (f.alpha_prime || !f.walk.empty())) {
      throw std::invalid_argument("snake needs --n for profiles and bad-index reports");
    }
    if (*snake && f.n != 0 && f.n % 2 == 0) throw std::invalid_argument("snake needs odd --n");
    Output r = *count       ? run_count(f)
               : *closing   ? run_closing(f)
               : *dec       ? run_decompose(f)
               : *pat       ? run_patterns(f)
               : *res       ? run_resample(f)
               : *snake     ? run_snake(f)
                            : run_report(f);
    emit(f, r);
    return 0;
  } catch (const GuardrailError& e) {
    std::cerr << "guardrail: " << e.what() << "\n";
    return kExitGuardrail;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadArguments;
  } catch (const CodecError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadArguments;
  } catch (const LatticeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadArguments;
  } catch (const NoCompletionsError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadArguments;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}
