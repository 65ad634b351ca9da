#include "qgeom/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "qgeom/dynamics.hpp"
#include "qgeom/errors.hpp"
#include "qgeom/inequalities.hpp"
#include "qgeom/purelimit.hpp"
#include "qgeom/rng.hpp"

namespace qgeom::cli {

namespace {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Expect {
  ok,           // holds or equality
  strict,       // holds
  violated,     // the violation is the point of the row
  informational,
};

struct Row {
  GapReport report;
  Expect expect = Expect::ok;
};

bool met(const Row& r) {
  switch (r.expect) {
    case Expect::ok:
      return r.report.ok();
    case Expect::strict:
      return r.report.verdict == Verdict::holds;
    case Expect::violated:
      return r.report.verdict == Verdict::violated;
    case Expect::informational:
      return true;
  }
  return false;
}

struct ExtraFile {
  std::string name;
  std::string content;
};

struct CommandResult {
  std::vector<Row> rows;
  std::vector<ExtraFile> extra_files;
  nlohmann::json extra_summary = nlohmann::json::object();
};

struct Trial {
  int dim;
  int index;
  std::uint64_t seed;
  std::size_t slot;  // position in the full trial list
};

// Per-trial streams: state, observable A, observable B, auxiliary.
DensityMatrix trial_state(const Trial& t, Ensemble ensemble = Ensemble::hilbert_schmidt) {
  SamplerConfig cfg;
  cfg.dimension = t.dim;
  cfg.seed = derive_seed(t.seed, 1);
  cfg.ensemble = ensemble;
  cfg.require_faithful = ensemble != Ensemble::pure;
  return sample(cfg);
}

Observable trial_observable(const Trial& t, int which) {
  return sample_observable(t.dim, derive_seed(t.seed, 1 + static_cast<std::uint64_t>(which)));
}

// Equality rows: lhs 0, rhs |left - right|, so a mismatch in either direction is a violation.
GapReport equality_report(const std::string& name, double left, double right, double tol,
                          const std::string& label) {
  GapReport r = GapReport::make(name, 0.0, std::abs(left - right), tol, label);
  r.detail = "left=" + format_double(left) + ";right=" + format_double(right);
  return r;
}

Row tagged(GapReport r, const Trial& t, Expect e = Expect::ok) {
  r.seed = t.seed;
  r.dim = t.dim;
  return {std::move(r), e};
}

std::vector<Trial> make_trials(const RunConfig& c) {
  std::vector<Trial> out;
  for (int d : c.dims) {
    for (int i = 0; i < c.trials; ++i) {
      out.push_back({d, i,
                     derive_seed(c.seed, static_cast<std::uint64_t>(d),
                                 static_cast<std::uint64_t>(i)),
                     out.size()});
    }
  }
  return out;
}

// Results are stored by trial index, so the merged order never depends on scheduling.
template <typename Fn>
std::vector<Row> run_trials(const RunConfig& c, Fn&& fn) {
  const std::vector<Trial> trials = make_trials(c);
  std::vector<std::vector<Row>> results(trials.size());
  std::vector<std::exception_ptr> errors(trials.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < trials.size(); i = next++) {
      try {
        results[i] = fn(trials[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const auto n_threads = static_cast<std::size_t>(std::max(1, c.threads));
  std::vector<std::thread> pool;
  for (std::size_t k = 1; k < n_threads; ++k) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<Row> rows;
  for (auto& r : results) {
    for (auto& row : r) rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<MonotoneFunction> functions_or(const RunConfig& c,
                                           std::vector<MonotoneFunction> fallback) {
  if (c.f_keys.empty()) return fallback;
  std::vector<MonotoneFunction> out;
  for (const auto& k : c.f_keys) out.push_back(parse_function_key(k));
  return out;
}

std::vector<MonotoneFunction> keys(std::initializer_list<const char*> ks) {
  std::vector<MonotoneFunction> out;
  for (const char* k : ks) out.push_back(parse_function_key(k));
  return out;
}

// ---- commands ----

CommandResult cmd_axioms(const RunConfig& c) {
  CommandResult res;
  const FunctionGrid grid = FunctionGrid::default_grid();
  for (const auto& f : functions_or(c, catalog())) {
    res.rows.push_back({check_axioms(f, grid)});
    res.rows.push_back({check_axioms(tilde(f), grid)});
  }
  return res;
}

struct TableRow {
  MonotoneFunction f;
  std::function<double(double)> closed_tilde;
  double printed_f0;
};

CommandResult cmd_table1(const RunConfig&) {
  const auto arithmetic = [](double x) { return (1.0 + x) / 2.0; };
  const auto wyd_tilde = [](double beta) {
    return [beta](double x) { return (std::pow(x, beta) + std::pow(x, 1.0 - beta)) / 2.0; };
  };
  const std::vector<TableRow> table = {
      {MonotoneFunction::rld(), arithmetic, 0.0},
      {MonotoneFunction::wyd(-0.5), arithmetic, 0.0},
      {MonotoneFunction::bkm(), arithmetic, 0.0},
      {MonotoneFunction::wyd(0.1), wyd_tilde(0.1), 0.1 * 0.9},
      {MonotoneFunction::wyd(0.25), wyd_tilde(0.25), 0.25 * 0.75},
      {MonotoneFunction::wyd(0.49), wyd_tilde(0.49), 0.49 * 0.51},
      {MonotoneFunction::wy(), [](double x) { return std::sqrt(x); }, 0.25},
      {MonotoneFunction::sld(), [](double x) { return 2.0 * x / (1.0 + x); }, 0.5},
  };
  const FunctionGrid grid = FunctionGrid::default_grid();
  CommandResult res;
  for (const auto& row : table) {
    const MonotoneFunction ft = tilde(row.f);
    double worst_tilde = 0.0;
    double worst_mean = 0.0;
    for (double x : grid.points()) {
      worst_tilde = std::max(worst_tilde, std::abs(ft(x) - row.closed_tilde(x)));
      // m(x,1) and m(1,x) against the closed form y f~(x/y).
      worst_mean = std::max(worst_mean, std::abs(scalar_mean(ft, x, 1.0) - row.closed_tilde(x)));
      worst_mean =
          std::max(worst_mean, std::abs(scalar_mean(ft, 1.0, x) - x * row.closed_tilde(1.0 / x)));
    }
    res.rows.push_back({GapReport::make("table1_tilde", 0.0, worst_tilde, 1e-10, row.f.label())});
    res.rows.push_back({GapReport::make("table1_mean", 0.0, worst_mean, 1e-10, row.f.label())});
    res.rows.push_back(
        {GapReport::make("table1_f0", 0.0, std::abs(f_zero(row.f) - row.printed_f0), 0.0,
                         row.f.label())});
  }
  return res;
}

CommandResult cmd_main(const RunConfig& c) {
  const auto fs = functions_or(c, catalog());
  CommandResult res;
  res.rows = run_trials(c, [&](const Trial& t) {
    const DensityMatrix rho = trial_state(t);
    const Observable a = trial_observable(t, 1);
    const Observable b = trial_observable(t, 2);
    std::vector<Row> rows;
    for (const auto& f : fs) rows.push_back(tagged(main_gap(rho, f, a, b), t));
    return rows;
  });
  return res;
}

CommandResult cmd_hk(const RunConfig& c) {
  const auto fs = functions_or(c, catalog());
  const FunctionGrid grid = FunctionGrid::default_grid();
  std::vector<std::pair<std::size_t, std::size_t>> ordered;  // tilde(f_i) <= tilde(f_j)
  for (std::size_t i = 0; i < fs.size(); ++i) {
    for (std::size_t j = 0; j < fs.size(); ++j) {
      if (i != j && tilde_leq(fs[i], fs[j], grid)) ordered.emplace_back(i, j);
    }
  }
  CommandResult res;
  res.rows = run_trials(c, [&](const Trial& t) {
    const DensityMatrix rho = trial_state(t);
    const Observable a = trial_observable(t, 1);
    const Observable b = trial_observable(t, 2);
    const double scale = variance(rho, a) * variance(rho, b);
    std::vector<Row> rows;
    std::vector<double> big_f;
    for (const auto& f : fs) {
      const HKDecomposition hk = hk_decompose(rho, f, a, b);
      const GapReport g = main_gap(rho, f, a, b);
      big_f.push_back(hk.f_of_f());
      GapReport r = equality_report("hk_reconstruction", hk.f_of_f(), g.gap,
                                    1e-8 * std::max(1.0, scale), f.label());
      r.state_fingerprint = g.state_fingerprint;
      rows.push_back(tagged(std::move(r), t));
    }
    for (const auto& [i, j] : ordered) {
      GapReport r = GapReport::make("hk_order", big_f[j], big_f[i], 1e-9 * std::max(1.0, scale),
                                    fs[i].label() + "<=" + fs[j].label());
      r.state_fingerprint = fingerprint(rho.matrix());
      rows.push_back(tagged(std::move(r), t));
    }
    return rows;
  });
  return res;
}

CommandResult cmd_refined(const RunConfig& c) {
  const auto fs = functions_or(c, catalog());
  CommandResult res;
  res.rows = run_trials(c, [&](const Trial& t) {
    const DensityMatrix rho = trial_state(t);
    const Observable a = trial_observable(t, 1);
    const Observable b = trial_observable(t, 2);
    std::vector<Row> rows;
    for (const auto& f : fs) {
      RefinedReport r = refined_heisenberg_gap(rho, f, a, b);
      rows.push_back(tagged(std::move(r.product), t));
      rows.push_back(tagged(std::move(r.factor_a), t));
      rows.push_back(tagged(std::move(r.factor_b), t));
      rows.push_back(tagged(std::move(r.hansen), t));
    }
    return rows;
  });
  return res;
}

std::vector<double> lambdas_or(const RunConfig& c) {
  return c.lambda1.empty() ? default_lambda_sweep() : c.lambda1;
}

CommandResult cmd_park_luo(const RunConfig& c) {
  const auto fs = functions_or(c, keys({"sqrt", "sld"}));
  CommandResult res;
  std::vector<MonotoneFunction> below_sqrt;
  nlohmann::json witnesses = nlohmann::json::object();
  for (const auto& f : fs) {
    const auto w = witness_park_luo(f);
    for (double l : lambdas_or(c)) {
      const TwoLevelSetup s = two_level_setup(l);
      GapReport r = park_luo_gap(s.rho, f, s.a, s.b);
      r.name = "park_luo_two_level";
      r.detail += ";lambda1=" + format_double(l);
      res.rows.push_back({std::move(r), w ? Expect::informational : Expect::ok});
    }
    if (w) {
      res.rows.push_back({w->report, Expect::violated});
      witnesses[f.label()] = {{"x0", w->ratio},
                              {"rho", matrix_to_json(w->setup.rho.matrix())},
                              {"a", matrix_to_json(w->setup.a.matrix())},
                              {"b", matrix_to_json(w->setup.b.matrix())}};
    } else {
      below_sqrt.push_back(f);
    }
  }
  auto random_rows = run_trials(c, [&](const Trial& t) {
    const DensityMatrix rho = trial_state(t);
    const Observable a = trial_observable(t, 1);
    const Observable b = trial_observable(t, 2);
    std::vector<Row> rows;
    for (const auto& f : below_sqrt) rows.push_back(tagged(park_luo_gap(rho, f, a, b), t));
    return rows;
  });
  for (auto& r : random_rows) res.rows.push_back(std::move(r));
  res.extra_summary["witnesses"] = std::move(witnesses);
  return res;
}

CommandResult cmd_counterexample(const RunConfig& c) {
  const auto fs = functions_or(c, catalog());
  const auto lambdas = lambdas_or(c);
  CommandResult res;
  std::size_t cs_witnesses = 0;
  for (const auto& f : fs) {
    for (double l : lambdas) {
      CounterexampleRow row = independence_counterexample(l, f);
      const double l2 = 1.0 - l;
      GapReport var_a = equality_report("counterexample_var_a", 1.0, row.var_a, 1e-12, f.label());
      GapReport var_b = equality_report("counterexample_var_b", 1.0, row.var_b, 1e-12, f.label());
      GapReport comm = equality_report("counterexample_commutator", (l - l2) * (l - l2),
                                       row.commutator_term, 1e-12, f.label());
      for (GapReport* g : {&var_a, &var_b, &comm}) {
        g->dim = 2;
        g->detail = "lambda1=" + format_double(l) + ";" + g->detail;
        g->state_fingerprint = row.report.state_fingerprint;
      }
      res.rows.push_back({std::move(row.report), Expect::strict});
      res.rows.push_back({std::move(var_a)});
      res.rows.push_back({std::move(var_b)});
      res.rows.push_back({std::move(comm)});
      if (row.cauchy_schwarz.verdict == Verdict::violated) ++cs_witnesses;
      res.rows.push_back({std::move(row.cauchy_schwarz), Expect::informational});

      const ConverseCase cc = converse_case(l, f);
      GapReport conv = GapReport::make("converse_case", cc.skew_product, cc.commutator_term,
                                       1e-12, f.label());
      conv.dim = 2;
      conv.detail = "lambda1=" + format_double(l);
      res.rows.push_back({std::move(conv)});
    }
    if (f.regular()) {
      const ReverseIndependence rev = reverse_independence_example(f, c.seed);
      GapReport r = GapReport::make("reverse_independence", rev.area_bound, rev.commutator_term,
                                    1e-12, f.label());
      r.dim = 3;
      r.seed = c.seed;
      r.state_fingerprint = fingerprint(rev.rho.matrix());
      res.rows.push_back({std::move(r), Expect::strict});
    }
  }
  res.extra_summary["cauchy_schwarz_witnesses"] = cs_witnesses;
  return res;
}

CommandResult cmd_dynamics(const RunConfig& c) {
  const auto fs = functions_or(c, keys({"wy"}));
  std::vector<double> times;
  for (int k = 0; k <= 20; ++k) times.push_back(0.1 * k);
  CommandResult res;
  std::vector<std::string> trajectory(c.dims.size());
  res.rows = run_trials(c, [&](const Trial& t) {
    const DensityMatrix rho = trial_state(t);
    const Observable h = trial_observable(t, 1);
    const Observable k = trial_observable(t, 2);
    std::vector<Row> rows;
    const Evolution ev(rho, h, times);
    rows.push_back(tagged(derivative_check(ev), t));
    for (const auto& f : fs) rows.push_back(tagged(dynamic_bound(rho, f, h, k), t));

    // H = rho^2 commutes with rho, so nothing moves.
    const Observable hc(rho.matrix() * rho.matrix());
    const Evolution still(rho, hc);
    GapReport id = GapReport::make("commuting_identity", 0.0,
                                   (evolve(still, 1.3).matrix() - rho.matrix()).norm(), 1e-12);
    id.state_fingerprint = fingerprint(rho.matrix());
    rows.push_back(tagged(std::move(id), t));

    if (t.index == 0) {
      std::ostringstream csv;
      for (const auto& f : fs) {
        for (const auto& p : dynamic_trajectory(ev, f, k)) {
          csv << t.dim << ',' << t.seed << ',' << csv_escape(f.label()) << ','
              << format_double(p.t) << ',' << format_double(p.report.lhs) << ','
              << format_double(p.report.rhs) << ',' << format_double(p.report.gap) << "\r\n";
        }
      }
      const auto pos = std::find(c.dims.begin(), c.dims.end(), t.dim) - c.dims.begin();
      trajectory[static_cast<std::size_t>(pos)] = csv.str();
    }
    return rows;
  });
  std::string traj = "dim,seed,f_label,t,lhs,rhs,gap\r\n";
  for (const auto& s : trajectory) traj += s;
  res.extra_files.push_back({"dynamics_trajectory.csv", std::move(traj)});
  return res;
}

CommandResult cmd_pure_limit(const RunConfig& c) {
  const auto fs = functions_or(c, catalog());
  std::vector<MonotoneFunction> radial_fs;
  if (c.f_keys.empty()) {
    radial_fs = keys({"sld", "wy", "wyd:0.25", "bridge:0.75"});
  } else {
    for (const auto& f : fs) {
      if (f.regular()) radial_fs.push_back(f);
    }
  }
  const std::vector<double> eps = decade_epsilons(1e-2, c.eps_min);
  CommandResult res;
  std::vector<std::string> radial_csv(make_trials(c).size());
  res.rows = run_trials(c, [&](const Trial& t) {
    const DensityMatrix pure = trial_state(t, Ensemble::pure);
    const Observable a = trial_observable(t, 1);
    const Observable b = trial_observable(t, 2);
    std::vector<Row> rows;
    for (const auto& f : fs) {
      // Non-regular f: the boundary mean is arithmetic and I^f vanishes, so
      // these equalities are not expected there.
      const Expect e = f.regular() ? Expect::ok : Expect::informational;
      PureEqualityReport p = pure_equalities(pure, f, a, b);
      for (GapReport* g : {&p.area_equality, &p.variance_product, &p.corr_equals_cov,
                           &p.skew_equals_var, &p.c_tilde_vanishes}) {
        rows.push_back(tagged(std::move(*g), t, e));
      }
    }
    if (!radial_fs.empty()) {
      const RadialFamily fam(pure, eps);
      const RadialSweepReport rep = radial_limit_sweep(fam, radial_fs, a, b);
      std::ostringstream csv;
      for (const auto& r : rep.rows) {
        csv << t.dim << ',' << t.seed << ',' << csv_escape(r.f_label) << ','
            << format_double(r.epsilon) << ',' << format_double(r.q) << ','
            << format_double(r.residual) << ',' << format_double(r.spread) << "\r\n";
      }
      radial_csv[t.slot] = csv.str();
      const double scale = std::max(1.0, rep.scale);
      GapReport spread = GapReport::make("radial_spread", 0.0, rep.final_spread(), 1e-6 * scale);
      GapReport resid = GapReport::make("radial_residual", 0.0, rep.final_residual(), 1e-5 * scale);
      GapReport mono = GapReport::make("radial_monotone", 0.0,
                                       rep.spread_monotone() && rep.residual_monotone() ? 0.0 : 1.0,
                                       0.0);
      for (GapReport* g : {&spread, &resid, &mono}) {
        g->detail = "eps_min=" + format_double(eps.back());
        g->state_fingerprint = fingerprint(pure.matrix());
        rows.push_back(tagged(std::move(*g), t));
      }
    }
    return rows;
  });
  std::string csv = "dim,seed,f_label,epsilon,q,residual,spread\r\n";
  for (const auto& s : radial_csv) csv += s;
  res.extra_files.push_back({"pure_limit_radial.csv", std::move(csv)});
  return res;
}

CommandResult cmd_random_suite(const RunConfig& c) {
  const auto fs = functions_or(c, catalog());
  const MonotoneFunction sqrt_f = MonotoneFunction::sqrt_fn();
  CommandResult res;
  res.rows = run_trials(c, [&](const Trial& t) {
    const DensityMatrix rho = trial_state(t);
    const Observable a = trial_observable(t, 1);
    const Observable b = trial_observable(t, 2);
    const double scale = variance(rho, a) * variance(rho, b);
    std::vector<Row> rows;
    const bool strict = equality_certificate(rho, a, b) == EqualityClass::strict;

    // A proportional pair: B' = c A + d I.
    CounterRng rng(derive_seed(t.seed, 9));
    const double cc = rng.normal();
    const double dd = rng.normal();
    const Observable bp(cc * a.matrix() + dd * identity(t.dim));

    for (const auto& f : fs) {
      const MetricContext ctx(rho, f);
      GapReport g = main_gap(rho, f, a, b);
      if (strict && f.regular()) {
        GapReport s = GapReport::make("equality_strict", g.gap, 0.0, 1e-10 * std::max(1.0, scale),
                                      f.label());
        s.state_fingerprint = g.state_fingerprint;
        rows.push_back(tagged(std::move(s), t, Expect::strict));
      }
      rows.push_back(tagged(std::move(g), t));
      GapReport prop = main_gap(rho, f, a, bp);
      prop.name = "main_proportional";
      rows.push_back(tagged(std::move(prop), t));
      RefinedReport r = refined_heisenberg_gap(rho, f, a, b);
      rows.push_back(tagged(std::move(r.product), t));
      rows.push_back(tagged(std::move(r.factor_a), t));
      rows.push_back(tagged(std::move(r.factor_b), t));
      rows.push_back(tagged(std::move(r.hansen), t));
      rows.push_back(tagged(corr_cauchy_schwarz(ctx, a, b), t, Expect::informational));
    }
    SchrodingerReport s = schrodinger_gap(rho, a, b);
    rows.push_back(tagged(std::move(s.schrodinger), t));
    rows.push_back(tagged(std::move(s.heisenberg), t));
    rows.push_back(tagged(park_luo_gap(rho, sqrt_f, a, b), t));
    return rows;
  });
  std::size_t cs = 0;
  for (const auto& r : res.rows) {
    if (r.report.name == "corr_cauchy_schwarz" && r.report.verdict == Verdict::violated) ++cs;
  }
  res.extra_summary["cauchy_schwarz_witnesses"] = cs;
  return res;
}

CommandResult dispatch(const RunConfig& c) {
  switch (c.command) {
    case Command::axioms:
      return cmd_axioms(c);
    case Command::table1:
      return cmd_table1(c);
    case Command::main:
      return cmd_main(c);
    case Command::hk:
      return cmd_hk(c);
    case Command::refined:
      return cmd_refined(c);
    case Command::park_luo:
      return cmd_park_luo(c);
    case Command::counterexample:
      return cmd_counterexample(c);
    case Command::dynamics:
      return cmd_dynamics(c);
    case Command::pure_limit:
      return cmd_pure_limit(c);
    case Command::random_suite:
      return cmd_random_suite(c);
  }
  throw ParameterError("unknown command");
}

void write_file(const std::filesystem::path& p, const std::string& content) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + p.string() + " for writing");
  out << content;
  out.close();
  if (!out) throw IoError("failed writing " + p.string());
}

nlohmann::json summarize(const RunConfig& c, const CommandResult& res, int exit_code,
                         const std::vector<std::string>& files) {
  std::size_t holds = 0, equality = 0, violated = 0, expected_found = 0, unmet = 0;
  std::map<std::string, double> worst_by_name;
  const Row* worst = nullptr;
  for (const auto& r : res.rows) {
    switch (r.report.verdict) {
      case Verdict::holds:
        ++holds;
        break;
      case Verdict::equality:
        ++equality;
        break;
      case Verdict::violated:
        ++violated;
        break;
    }
    if (r.expect == Expect::violated && r.report.verdict == Verdict::violated) ++expected_found;
    if (!met(r)) ++unmet;
    if (r.expect == Expect::violated || r.expect == Expect::informational) continue;
    auto it = worst_by_name.find(r.report.name);
    if (it == worst_by_name.end() || r.report.gap < it->second) {
      worst_by_name[r.report.name] = r.report.gap;
    }
    if (!worst || r.report.gap < worst->report.gap) worst = &r;
  }
  nlohmann::json j;
  j["command"] = command_name(c.command);
  j["seed"] = c.seed;
  j["dims"] = c.dims;
  j["trials"] = c.trials;
  std::vector<std::string> manifest;
  for (const auto& k : c.f_keys) manifest.push_back(parse_function_key(k).label());
  if (manifest.empty()) {
    for (const auto& f : catalog()) manifest.push_back(f.label());
  }
  j["f_keys"] = manifest;
  j["counts"] = {{"total", res.rows.size()},       {"holds", holds},
                 {"equality", equality},           {"violated", violated},
                 {"expected_violations_found", expected_found},
                 {"unmet_expectations", unmet}};
  nlohmann::json wb = nlohmann::json::object();
  for (const auto& [name, gap] : worst_by_name) wb[name] = gap;
  j["worst_gap_by_name"] = wb;
  if (worst) {
    j["worst_gap"] = {{"name", worst->report.name},
                      {"f_label", worst->report.f_label},
                      {"gap", worst->report.gap},
                      {"tol", worst->report.tolerance}};
  } else {
    j["worst_gap"] = nullptr;
  }
  j["extra"] = res.extra_summary;
  j["files"] = files;
  j["exit_code"] = exit_code;
  return j;
}

}  // namespace

std::string command_name(Command c) {
  switch (c) {
    case Command::axioms:
      return "axioms";
    case Command::table1:
      return "table1";
    case Command::main:
      return "main";
    case Command::hk:
      return "hk";
    case Command::refined:
      return "refined";
    case Command::park_luo:
      return "park-luo";
    case Command::counterexample:
      return "counterexample";
    case Command::dynamics:
      return "dynamics";
    case Command::pure_limit:
      return "pure-limit";
    case Command::random_suite:
      return "random-suite";
  }
  return "unknown";
}

void validate(const RunConfig& c) {
  if (c.dims.empty()) throw DimensionError("--dims: at least one dimension is required");
  for (int d : c.dims) {
    if (d < kMinDimension || d > kMaxDimension) {
      throw DimensionError("--dims: " + std::to_string(d) + " is outside [2,16]");
    }
  }
  std::vector<int> sorted = c.dims;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw DimensionError("--dims: duplicate dimension");
  }
  if (c.trials < 1 || c.trials > 100000) throw ParameterError("--trials must lie in [1,100000]");
  if (c.threads < 1 || c.threads > 256) throw ParameterError("--threads must lie in [1,256]");
  for (const auto& k : c.f_keys) (void)parse_function_key(k);
  for (double l : c.lambda1) {
    if (!(l > 0.5 && l < 1.0)) throw ParameterError("--lambda1 must lie in (1/2,1)");
  }
  if (!(c.eps_min > 0.0 && c.eps_min <= 1e-2)) throw ParameterError("--eps-min must lie in (0,1e-2]");
  if (c.out_dir.empty()) throw ParameterError("--out-dir is empty");
}

int run(const RunConfig& config, std::ostream& log) {
  try {
    validate(config);
  } catch (const std::invalid_argument& e) {
    log << "config error: " << e.what() << '\n';
    return kConfigError;
  }

  try {
    std::error_code ec;
    std::filesystem::create_directories(config.out_dir, ec);
    if (ec || !std::filesystem::is_directory(config.out_dir)) {
      throw IoError("cannot create output directory " + config.out_dir.string());
    }

    CommandResult res;
    bool failed_by_exception = false;
    try {
      res = dispatch(config);
    } catch (const std::invalid_argument& e) {
      log << "config error: " << e.what() << '\n';
      return kConfigError;
    } catch (const ConsistencyError& e) {
      log << "internal consistency failure: " << e.what() << '\n';
      failed_by_exception = true;
    } catch (const std::domain_error& e) {
      log << "math error: " << e.what() << '\n';
      failed_by_exception = true;
    }

    const bool all_met =
        !failed_by_exception && std::all_of(res.rows.begin(), res.rows.end(), met);
    const int code = all_met ? kSuccess : kAssertionFailure;

    const std::string stem = command_name(config.command);
    std::vector<std::string> files;
    if (config.format != OutputFormat::json) {
      std::string csv = csv_header();
      for (const auto& r : res.rows) csv += to_csv_row(r.report);
      write_file(config.out_dir / (stem + ".csv"), csv);
      files.push_back(stem + ".csv");
    }
    if (config.format != OutputFormat::csv) {
      std::string jl;
      for (const auto& r : res.rows) jl += to_json(r.report).dump() + "\n";
      write_file(config.out_dir / (stem + ".jsonl"), jl);
      files.push_back(stem + ".jsonl");
    }
    for (const auto& x : res.extra_files) {
      write_file(config.out_dir / x.name, x.content);
      files.push_back(x.name);
    }
    files.push_back("summary.json");
    const nlohmann::json summary = summarize(config, res, code, files);
    write_file(config.out_dir / "summary.json", summary.dump(2) + "\n");

    log << stem << ": " << res.rows.size() << " rows, " << summary["counts"]["violated"]
        << " violated, " << summary["counts"]["unmet_expectations"] << " unmet expectations -> exit "
        << code << '\n';
    return code;
  } catch (const IoError& e) {
    log << "I/O error: " << e.what() << '\n';
    return kIoError;
  }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical checks for monotone metrics, skew information and uncertainty bounds"};
  RunConfig config;
  std::string command;
  std::string format = "both";
  std::string out_dir;
  const std::map<std::string, Command> commands = {
      {"axioms", Command::axioms},         {"table1", Command::table1},
      {"main", Command::main},             {"hk", Command::hk},
      {"refined", Command::refined},       {"park-luo", Command::park_luo},
      {"counterexample", Command::counterexample}, {"dynamics", Command::dynamics},
      {"pure-limit", Command::pure_limit}, {"random-suite", Command::random_suite},
  };
  app.add_option("command", command,
                 "axioms | table1 | main | hk | refined | park-luo | counterexample | dynamics | "
                 "pure-limit | random-suite")
      ->required();
  app.add_option("--dims", config.dims, "comma-separated dimensions in [2,16]")->delimiter(',');
  app.add_option("--trials", config.trials, "random draws per dimension");
  app.add_option("--seed", config.seed, "base seed");
  app.add_option("--f", config.f_keys, "function keys, e.g. sld,wy,wyd:0.25")->delimiter(',');
  app.add_option("--out-dir", out_dir, "output directory")->envname("QGEOM_OUT_DIR");
  app.add_option("--format", format, "json | csv | both");
  app.add_option("--lambda1", config.lambda1, "two-level weights in (1/2,1)")->delimiter(',');
  app.add_option("--eps-min", config.eps_min, "smallest radial epsilon (pure-limit)");
  app.add_option("--threads", config.threads, "worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  }

  const auto it = commands.find(command);
  if (it == commands.end()) {
    err << "config error: unknown command '" << command << "'\n";
    return kConfigError;
  }
  config.command = it->second;
  if (format == "json") {
    config.format = OutputFormat::json;
  } else if (format == "csv") {
    config.format = OutputFormat::csv;
  } else if (format == "both") {
    config.format = OutputFormat::both;
  } else {
    err << "config error: --format must be json, csv or both\n";
    return kConfigError;
  }
  config.out_dir = out_dir.empty() ? std::filesystem::path("qgeom-out") : std::filesystem::path(out_dir);
  return run(config, err);
}

}  // namespace qgeom::cli
