#include <exception>
#include <ostream>
#include <string>

#include <CLI11.hpp>

#include "darkpassage/cli.hpp"
#include "darkpassage/kernels.hpp"

namespace darkpassage::cli {

namespace {

template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const ValidationError& e) {
    err << "darkpassage: invalid input: " << e.what() << '\n';
    return kValidation;
  } catch (const NumericalError& e) {
    err << "darkpassage: numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const std::exception& e) {
    err << "darkpassage: " << e.what() << '\n';
    return kFailure;
  }
}

std::string format_component(cplx z) {
  if (z.imag() == 0.0) return format_number(z.real());
  std::string s = format_number(z.real());
  s += z.imag() < 0.0 ? "-" : "+";
  s += format_number(std::abs(z.imag())) + "i";
  return s;
}

}  // namespace

int cmd_run(const std::string& config_path, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ExperimentConfig cfg = load_config(config_path);
    if (cfg.is_sweep) throw ValidationError("config describes a sweep; use 'darkpassage sweep'");
    const RunReport report = run_experiment(cfg.params);
    const std::string summary = format_summary(cfg, report);
    const std::string trace = cfg.trace_path ? format_trace_csv(report) : std::string();
    if (cfg.summary_path) atomic_write(*cfg.summary_path, summary);
    if (cfg.trace_path) atomic_write(*cfg.trace_path, trace);
    for (const auto& w : report.warnings) err << "darkpassage: warning: " << w << '\n';
    out << summary;
    return int{kOk};
  });
}

int cmd_sweep(const std::string& config_path, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ExperimentConfig cfg = load_config(config_path);
    if (!cfg.is_sweep) throw ValidationError("config is not a sweep; use 'darkpassage run'");
    const SweepTable table = run_experiment_sweep(cfg.params, cfg.grid, sweep_threads_from_env());
    const std::string csv = format_table_csv(table);
    if (cfg.table_path) atomic_write(*cfg.table_path, csv);
    else out << csv;
    if (cfg.summary_path) {
      std::string s = "schema_version=" + std::to_string(kSchemaVersion) + "\nexperiment=sweep\n";
      s += std::string("sweep_of=") + experiment_name(cfg.params.kind) + "\n";
      s += "rows=" + std::to_string(table.rows.size()) + "\nsucceeded=" + std::to_string(table.succeeded()) + "\n";
      atomic_write(*cfg.summary_path, s);
    }
    err << "darkpassage: sweep finished, " << table.succeeded() << " of " << table.rows.size() << " rows succeeded\n";
    if (table.succeeded() > 0) return int{kOk};
    for (const auto& r : table.rows)
      if (r.status == "numerical_error") return int{kNumerical};
    return int{kValidation};
  });
}

int cmd_darkstate(const DarkstateArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    ExperimentParams e;
    e.kind = ExperimentKind::Darkstate;
    e.K = args.K;
    e.L = args.L;
    e.alpha = args.alpha;
    if (args.n && args.straddle_N) throw ValidationError("--n and --straddle are mutually exclusive");
    if (args.M && !args.straddle_N) throw ValidationError("--m requires --straddle");
    if (args.n) {
      e.darkstate_alternating = true;
      e.n = *args.n;
    }
    if (args.straddle_N) {
      if (!args.M) throw ValidationError("--straddle requires --m");
      e.darkstate_straddle = true;
      e.N = *args.straddle_N;
      e.transfer.M = *args.M;
    }
    if ((args.n || args.straddle_N) && args.alpha != 0.0)
      throw ValidationError("--alpha applies to the three-level dark state only");
    const RunReport r = run_experiment(e);
    const auto dim = static_cast<std::size_t>(r.metric("dimension"));
    out << "dark_state=[";
    for (std::size_t i = 0; i < dim; ++i) {
      const std::string base = "component_" + std::to_string(i + 1);
      if (i) out << ", ";
      out << format_component({r.metric(base + "_re"), r.metric(base + "_im")});
    }
    out << "]\nresidual=" << format_number(r.metric("residual")) << '\n';
    return int{kOk};
  });
}

int run_main(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dark-passage state transfer and rotation simulator for XY spin chains"};
  app.require_subcommand(1);

  std::string run_path, sweep_path;
  auto* run = app.add_subcommand("run", "Run one experiment from a JSON config");
  run->add_option("config", run_path, "Config file")->required();
  auto* sweep = app.add_subcommand("sweep", "Run a parameter sweep from a JSON config");
  sweep->add_option("config", sweep_path, "Config file")->required();

  DarkstateArgs ds;
  std::size_t n = 0, straddle = 0;
  double m = 0.0;
  auto* dark = app.add_subcommand("darkstate", "Print a normalised dark state");
  dark->add_option("--k", ds.K, "Pump coupling K")->required();
  dark->add_option("--l", ds.L, "Stokes coupling L")->required();
  dark->add_option("--alpha", ds.alpha, "Phase of the Stokes bond (three-level case)");
  auto* n_opt = dark->add_option("--n", n, "Alternating scheme on 2n+1 spins");
  auto* s_opt = dark->add_option("--straddle", straddle, "Straddling scheme on N spins");
  auto* m_opt = dark->add_option("--m", m, "Straddle coupling M");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "darkpassage: " << e.what() << '\n';
    return kValidation;
  }

  if (*run) return cmd_run(run_path, out, err);
  if (*sweep) return cmd_sweep(sweep_path, out, err);
  if (*n_opt) ds.n = n;
  if (*s_opt) ds.straddle_N = straddle;
  if (*m_opt) ds.M = m;
  return cmd_darkstate(ds, out, err);
}

}  // namespace darkpassage::cli
