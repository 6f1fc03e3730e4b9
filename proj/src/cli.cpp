#include "dsfa/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include "dsfa/config_file.hpp"
#include "dsfa/csv.hpp"
#include "dsfa/error.hpp"
#include "dsfa/experiments.hpp"
#include "dsfa/kernels.hpp"
#include "dsfa/metrics.hpp"
#include "dsfa/sfa.hpp"

namespace dsfa::cli {
namespace {

constexpr const char* kExitCodeHelp =
    "Exit codes: 0 success, 1 unexpected failure, 2 usage / invalid parameter,\n"
    "3 I/O error, 4 parse error (CSV, config or model file), 5 numerical error\n"
    "(rank deficiency, degenerate signal, domain violation, insufficient data).";

struct Options {
  RunConfig run;
  std::string config_path;
  std::string out_dir = "dsfa-out";
  std::string format = "csv";
  std::string noise_scale = "unit";
  std::string isa = "auto";
  unsigned threads = 0;

  // fit
  std::string series_path;
  std::string force_path;
  std::string model_out;

  // sweep
  std::string mode;
  double nu_min = 10.0;
  double nu_max = 80.0;
  double nu_step = 1.0;
  std::string q_values;
  std::string m_values;
  std::string percents = "1,2,5";
  std::string seeds = "0,1,2,3,4";

  // eta / align
  std::string in_path;
  std::string column;
  std::string target_path;
  std::string target_column = "gamma";
};

// Flag registry of one subcommand, used to apply config-file values to the
// flags that were not given on the command line.
class Bindings {
 public:
  template <typename T>
  CLI::Option* bind(CLI::App* app, const std::string& name, T& field, const std::string& help) {
    CLI::Option* opt = app->add_option("--" + name, field, help)->capture_default_str();
    setters_[name] = {opt, [&field, name](const std::string& value, long line) {
                        std::istringstream ss(value);
                        T parsed{};
                        if constexpr (std::is_same_v<T, std::string>) {
                          parsed = value;
                        } else if (!(ss >> parsed) || !(ss >> std::ws).eof()) {
                          throw ParseError("config: bad value '" + value + "' for '" + name + "' at line " +
                                               std::to_string(line),
                                           line);
                        }
                        field = parsed;
                      }};
    return opt;
  }

  void apply(const std::vector<ConfigEntry>& entries) const {
    for (const auto& e : entries) {
      const auto it = setters_.find(e.key);
      if (it == setters_.end() || e.key == "config")
        throw ParseError("config: unknown key '" + e.key + "' at line " + std::to_string(e.line), e.line);
      if (it->second.option->count() == 0) it->second.set(e.value, e.line);
    }
  }

 private:
  struct Setter {
    CLI::Option* option;
    std::function<void(const std::string&, long)> set;
  };
  std::map<std::string, Setter> setters_;
};

void add_common(CLI::App* app, Options& o, Bindings& b) {
  app->add_option("--config", o.config_path, "flat key=value config file; flags win over file values");
  b.bind(app, "out", o.out_dir, "output directory");
  b.bind(app, "format", o.format, "table format: csv | tsv")->check(CLI::IsMember({"csv", "tsv"}));
  b.bind(app, "isa", o.isa, "kernel variant: auto | scalar | avx2 | neon")
      ->check(CLI::IsMember({"auto", "scalar", "avx2", "neon"}));
}

void add_generation(CLI::App* app, Options& o, Bindings& b) {
  b.bind(app, "nu-f", o.run.nu_f, "base frequency of the driving force");
  b.bind(app, "q", o.run.q, "predictability parameter, r(t) = 4 - q + 0.1 gamma(t)");
  b.bind(app, "points", o.run.points, "number of generated samples");
  b.bind(app, "u0", o.run.u0, "initial value of the logistic map");
  b.bind(app, "burn-in", o.run.burn_in, "leading samples discarded from the series");
  b.bind(app, "noise-pct", o.run.noise_percent, "additive Gaussian noise, percent of the noise scale");
  b.bind(app, "noise-scale", o.noise_scale, "noise reference: unit (map interval [0,1]) | std (series std)")
      ->check(CLI::IsMember({"unit", "std"}));
  b.bind(app, "seed", o.run.seed, "noise seed");
}

void add_model(CLI::App* app, Options& o, Bindings& b) {
  b.bind(app, "m", o.run.m, "embedding dimension");
  b.bind(app, "tau", o.run.tau, "embedding delay");
  b.bind(app, "degree", o.run.degree, "monomial degree (1 or 2)");
  b.bind(app, "k", o.run.k, "number of slow output signals");
  b.bind(app, "svd-eps", o.run.svd_cutoff, "relative singular-value cutoff for sphering");
}

std::filesystem::path prepare_out_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir))
    throw IoError("cannot create output directory '" + dir + "'" + (ec ? ": " + ec.message() : ""));
  return dir;
}

std::string out_file(const std::filesystem::path& dir, const std::string& stem, CsvFormat format) {
  return (dir / (stem + std::string(extension(format)))).string();
}

void finalize(Options& o) {
  o.run.noise_scale = o.noise_scale == "std" ? NoiseScale::SeriesStd : NoiseScale::UnitInterval;
  if (o.isa == "auto") {
    kernels::select(kernels::available_isas().back());
  } else {
    const kernels::Isa isa =
        o.isa == "scalar" ? kernels::Isa::Scalar : (o.isa == "avx2" ? kernels::Isa::Avx2 : kernels::Isa::Neon);
    if (!kernels::select(isa)) throw InvalidParameter("kernel variant '" + o.isa + "' is not available here");
  }
}

template <typename T>
std::vector<T> parse_list(const std::string& text, const std::string& what) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::istringstream is(item);
    T v{};
    if (!(is >> v) || !(is >> std::ws).eof()) throw InvalidParameter("bad " + what + " list entry '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw InvalidParameter(what + " list is empty");
  return out;
}

void print_kv(std::ostream& out, const std::string& key, double v) { out << key << '=' << format_double(v) << '\n'; }

// --- subcommands ----------------------------------------------------------

int cmd_generate(const Options& o, std::ostream& out) {
  validate(o.run);
  const DrivingForce force = make_driving_force(o.run.nu_f, o.run.points);
  TimeSeries series = logistic_series(force, {o.run.q, o.run.u0, o.run.burn_in});
  if (o.run.noise_percent > 0.0) series = add_noise(series, o.run.noise_percent, o.run.seed, o.run.noise_scale);

  const CsvFormat format = parse_format(o.format);
  const auto dir = prepare_out_dir(o.out_dir);
  write_force(out_file(dir, "force", format), force, format);
  write_series(out_file(dir, "series", format), series, format);
  print_kv(out, "eta_gamma", eta(force.values));
  print_kv(out, "eta_gamma_slow", eta(force.slow));
  print_kv(out, "eta_gamma_fast", eta(force.fast));
  return kOk;
}

int cmd_fit(const Options& o, std::ostream& out) {
  validate(o.run);
  RunArtifacts a;
  RunConfig config = o.run;
  if (!o.series_path.empty() || !o.force_path.empty()) {
    if (o.series_path.empty() || o.force_path.empty())
      throw InvalidParameter("--series and --force must be given together");
    TimeSeries series = read_series(o.series_path);
    DrivingForce force = read_force(o.force_path);
    config.points = series.size();
    a = run_on_series(config, std::move(force), std::move(series));
  } else {
    a = run_pipeline(config);
  }

  const CsvFormat format = parse_format(o.format);
  const auto dir = prepare_out_dir(o.out_dir);

  std::vector<double> t(a.window.size());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = static_cast<double>(a.window.lo + static_cast<long>(i));

  {
    std::vector<std::string> header{"t"};
    std::vector<std::vector<double>> cols{t};
    for (std::size_t i = 0; i < a.outputs.size(); ++i) {
      header.push_back("y" + std::to_string(i + 1));
      cols.push_back(a.outputs[i]);
    }
    write_table(out_file(dir, "outputs", format), header, cols, format);
  }
  {
    const auto gamma = window_restrict(a.force.values, DrivingForce::kFirstTime, a.window);
    const auto slow = window_restrict(a.force.slow, DrivingForce::kFirstTime, a.window);
    const AlignedSignal to_full = align(a.outputs.front(), gamma);
    const AlignedSignal to_slow = align(a.outputs.front(), slow);
    const std::vector<std::string> header{"t", "gamma", "gamma_slow", "aligned_full", "aligned_slow"};
    const std::vector<std::vector<double>> cols{t, gamma, slow, to_full.values, to_slow.values};
    write_table(out_file(dir, "aligned", format), header, cols, format);
  }
  write_records(out_file(dir, "summary", format), {a.record}, format);
  if (!o.model_out.empty()) save_model(a.model, o.model_out);

  const auto& r = a.record;
  out << "retained_rank=" << r.retained_rank << '\n';
  print_kv(out, "corr_full", r.corr_full);
  print_kv(out, "corr_slow", r.corr_slow);
  print_kv(out, "corr_fast", r.corr_fast);
  print_kv(out, "eta_y1", r.eta_y1);
  print_kv(out, "eta_force", r.eta_force);
  print_kv(out, "eta_slow", r.eta_slow);
  print_kv(out, "eta_ratio", r.eta_ratio);
  return kOk;
}

int cmd_sweep(const Options& o, std::ostream& out) {
  validate(o.run);
  const CsvFormat format = parse_format(o.format);
  const SweepOptions sweep{o.threads};

  if (o.mode == "pt-scan") {
    const auto grid = frequency_grid(o.nu_min, o.nu_max, o.nu_step);
    const ScanResult scan = phase_transition_scan(o.run, grid, sweep);
    const auto dir = prepare_out_dir(o.out_dir);
    write_records(out_file(dir, "pt_scan", format), scan.records, format);
    out << "nu_pt=" << (scan.transition ? format_double(*scan.transition) : "none") << '\n';
    return kOk;
  }
  if (o.mode == "qm-grid") {
    const auto grid = frequency_grid(o.nu_min, o.nu_max, o.nu_step);
    const auto qs = parse_list<double>(o.q_values.empty() ? "0.1,0.3,0.4,0.5,0.7" : o.q_values, "q");
    const auto ms = parse_list<std::size_t>(o.m_values.empty() ? "10,15,20,30" : o.m_values, "m");
    const auto cells = sweep_qm(qs, ms, o.run, grid, sweep);
    const auto dir = prepare_out_dir(o.out_dir);
    write_qm_long(out_file(dir, "qm_long", format), cells, format);
    write_qm_summary(out_file(dir, "qm_summary", format), cells, format);
    for (const auto& c : cells)
      out << "q=" << format_double(c.q) << " m=" << c.m
          << " nu_pt=" << (c.scan.transition ? format_double(*c.scan.transition) : "none") << '\n';
    return kOk;
  }
  if (o.mode == "eta-table") {
    const auto qs = parse_list<double>(o.q_values.empty() ? "0.1,0.3,0.5,0.6,0.7" : o.q_values, "q");
    const auto ms = parse_list<std::size_t>(o.m_values.empty() ? "5,10,15,20,30" : o.m_values, "m");
    const auto cells = eta_table(ms, qs, o.run, sweep);
    const auto dir = prepare_out_dir(o.out_dir);
    write_eta_table(out_file(dir, "eta_table", format), cells, format);
    for (const auto& c : cells)
      out << "m=" << c.m << " q=" << format_double(c.q)
          << " eta_y1=" << (c.record.ok ? format_double(c.record.eta_y1) : c.record.error) << '\n';
    return kOk;
  }
  if (o.mode == "noise") {
    const auto percents = parse_list<double>(o.percents, "percent");
    const auto seeds = parse_list<std::uint64_t>(o.seeds, "seed");
    const auto ms = o.m_values.empty() ? std::vector<std::size_t>{o.run.m} : parse_list<std::size_t>(o.m_values, "m");
    const auto cells = noise_study(o.run, percents, seeds, ms, sweep);
    const auto dir = prepare_out_dir(o.out_dir);
    write_noise_table(out_file(dir, "noise", format), cells, format);
    std::vector<ExperimentRecord> runs;
    for (const auto& c : cells) runs.insert(runs.end(), c.records.begin(), c.records.end());
    write_records(out_file(dir, "noise_runs", format), runs, format);
    for (const auto& c : cells)
      out << "m=" << c.m << " noise_pct=" << format_double(c.percent)
          << " mean_corr_slow=" << format_double(c.mean_corr_slow) << '\n';
    return kOk;
  }
  throw CLI::ValidationError("--mode", "unknown mode '" + o.mode + "'");
}

int cmd_eta(const Options& o, std::ostream& out) {
  const NumericTable table = read_table(o.in_path);
  const std::string col = o.column.empty() ? "value" : o.column;
  print_kv(out, "eta", eta(table.column(col)));
  return kOk;
}

// Pairs the two columns on their common `t` values when both tables have a t
// column, else position by position.
void paired_columns(const NumericTable& a, const std::string& ca, const NumericTable& b, const std::string& cb,
                    std::vector<double>& t, std::vector<double>& x, std::vector<double>& y) {
  const auto& xa = a.column(ca);
  const auto& yb = b.column(cb);
  if (a.has_column("t") && b.has_column("t")) {
    std::map<double, double> by_time;
    const auto& tb = b.column("t");
    for (std::size_t i = 0; i < tb.size(); ++i) by_time[tb[i]] = yb[i];
    const auto& ta = a.column("t");
    for (std::size_t i = 0; i < ta.size(); ++i) {
      const auto it = by_time.find(ta[i]);
      if (it == by_time.end()) continue;
      t.push_back(ta[i]);
      x.push_back(xa[i]);
      y.push_back(it->second);
    }
    return;
  }
  if (xa.size() != yb.size()) throw InvalidParameter("columns have different lengths and no t column to join on");
  for (std::size_t i = 0; i < xa.size(); ++i) t.push_back(static_cast<double>(i + 1));
  x = xa;
  y = yb;
}

int cmd_align(const Options& o, std::ostream& out) {
  const NumericTable source = read_table(o.in_path);
  const NumericTable target = o.target_path.empty() ? source : read_table(o.target_path);
  std::vector<double> t, y, g;
  paired_columns(source, o.column.empty() ? "y1" : o.column, target, o.target_column, t, y, g);

  const AlignedSignal aligned = align(y, g);
  print_kv(out, "scale", aligned.fit.scale);
  print_kv(out, "offset", aligned.fit.offset);
  print_kv(out, "mse", aligned.fit.mse);
  print_kv(out, "corr", correlation(y, g));

  const CsvFormat format = parse_format(o.format);
  const auto dir = prepare_out_dir(o.out_dir);
  const std::vector<std::string> header{"t", "y", "target", "aligned"};
  const std::vector<std::vector<double>> cols{t, y, g, aligned.values};
  write_table(out_file(dir, "aligned", format), header, cols, format);
  return kOk;
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidParameter:
      return kUsage;
    case ErrorKind::Io:
      return kIo;
    case ErrorKind::Parse:
      return kParse;
    case ErrorKind::InsufficientData:
    case ErrorKind::NumericalDomain:
    case ErrorKind::RankDeficiency:
    case ErrorKind::DegenerateSignal:
      return kNumerical;
  }
  return kFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Slow feature analysis for driving-force detection in nonstationary time series"};
  app.name("dsfa");
  app.footer(kExitCodeHelp);
  app.require_subcommand(1);

  Options o;
  std::map<CLI::App*, Bindings> bindings;

  CLI::App* gen = app.add_subcommand("generate", "write driving force and logistic-map series CSVs");
  add_common(gen, o, bindings[gen]);
  add_generation(gen, o, bindings[gen]);

  CLI::App* fitc = app.add_subcommand("fit", "fit SFA to a generated or loaded series and report alignment");
  add_common(fitc, o, bindings[fitc]);
  add_generation(fitc, o, bindings[fitc]);
  add_model(fitc, o, bindings[fitc]);
  bindings[fitc].bind(fitc, "series", o.series_path, "input series CSV (t,value); requires --force");
  bindings[fitc].bind(fitc, "force", o.force_path, "input force CSV (t,gamma,gamma_slow,gamma_fast)");
  bindings[fitc].bind(fitc, "model-out", o.model_out, "write the fitted model to this path");

  CLI::App* sweep = app.add_subcommand("sweep", "parameter sweeps: pt-scan | qm-grid | eta-table | noise");
  add_common(sweep, o, bindings[sweep]);
  add_generation(sweep, o, bindings[sweep]);
  add_model(sweep, o, bindings[sweep]);
  auto& sb = bindings[sweep];
  sb.bind(sweep, "mode", o.mode, "pt-scan | qm-grid | eta-table | noise");
  sb.bind(sweep, "nu-min", o.nu_min, "lowest scanned base frequency");
  sb.bind(sweep, "nu-max", o.nu_max, "highest scanned base frequency");
  sb.bind(sweep, "nu-step", o.nu_step, "frequency grid step");
  sb.bind(sweep, "q-values", o.q_values,
          "comma-separated q list (qm-grid default 0.1,0.3,0.4,0.5,0.7; eta-table default 0.1,0.3,0.5,0.6,0.7)");
  sb.bind(sweep, "m-values", o.m_values,
          "comma-separated m list (qm-grid default 10,15,20,30; eta-table default 5,10,15,20,30; noise default --m)");
  sb.bind(sweep, "percents", o.percents, "noise percentages for --mode noise");
  sb.bind(sweep, "seeds", o.seeds, "comma-separated seeds for --mode noise");
  sb.bind(sweep, "threads", o.threads, "worker threads for sweep cells (0 = all cores)");

  CLI::App* etac = app.add_subcommand("eta", "slowness indicator of one CSV column");
  add_common(etac, o, bindings[etac]);
  bindings[etac].bind(etac, "in", o.in_path, "input CSV")->required();
  bindings[etac].bind(etac, "column", o.column, "column name (default value)");

  CLI::App* alignc = app.add_subcommand("align", "least-squares alignment of one CSV column to another");
  add_common(alignc, o, bindings[alignc]);
  bindings[alignc].bind(alignc, "in", o.in_path, "CSV holding the signal")->required();
  bindings[alignc].bind(alignc, "column", o.column, "signal column (default y1)");
  bindings[alignc].bind(alignc, "target", o.target_path, "CSV holding the target (default: --in)");
  bindings[alignc].bind(alignc, "target-column", o.target_column, "target column");

  std::vector<const char*> argv{"dsfa"};
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    if (!o.config_path.empty()) bindings[sub].apply(read_config(o.config_path));
    finalize(o);
    if (sub == gen) return cmd_generate(o, out);
    if (sub == fitc) return cmd_fit(o, out);
    if (sub == sweep) return cmd_sweep(o, out);
    if (sub == etac) return cmd_eta(o, out);
    return cmd_align(o, out);
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
}

}  // namespace dsfa::cli
