#include "dsfa/experiments.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <thread>

#include "dsfa/embedding.hpp"
#include "dsfa/error.hpp"
#include "dsfa/metrics.hpp"
#include "dsfa/sfa.hpp"

namespace dsfa {
namespace {

std::string fmt(double v) { return format_double(v); }
std::string fmt(std::size_t v) { return std::to_string(v); }

double safe_eta(std::span<const double> s) {
  try {
    return eta(s);
  } catch (const DegenerateSignal&) {
    return std::nan("");
  }
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  return out;
}

void finish(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace

void validate(const RunConfig& c) {
  if (!(c.nu_f > 0.0) || !std::isfinite(c.nu_f)) throw InvalidParameter("nu_f must be positive");
  if (!(c.q >= 0.1 && c.q <= 3.9)) throw InvalidParameter("q must lie in [0.1, 3.9]");
  if (c.m == 0) throw InvalidParameter("m must be positive");
  if (c.tau == 0) throw InvalidParameter("tau must be positive");
  if (c.degree != 1 && c.degree != 2) throw InvalidParameter("degree must be 1 or 2");
  if (c.k == 0) throw InvalidParameter("k must be positive");
  if (!(c.u0 > 0.0 && c.u0 < 1.0)) throw InvalidParameter("u0 must lie in (0, 1)");
  if (!(c.noise_percent >= 0.0)) throw InvalidParameter("noise percent must be nonnegative");
  if (!(c.svd_cutoff >= 0.0 && c.svd_cutoff < 1.0)) throw InvalidParameter("svd cutoff must lie in [0, 1)");
  if (c.points < c.burn_in + 2) throw InvalidParameter("points must exceed burn-in by at least 2");
}

std::size_t effective_components(const RunConfig& config) {
  return std::min(config.k, ExpansionSpec{config.degree, config.m}.expanded_dimension());
}

ExperimentRecord evaluate(const RunConfig& config, const DrivingForce& force, const TimeWindow& window,
                          const std::vector<std::vector<double>>& outputs) {
  ExperimentRecord r;
  r.config = config;
  const auto gamma = window_restrict(force.values, DrivingForce::kFirstTime, window);
  const auto slow = window_restrict(force.slow, DrivingForce::kFirstTime, window);
  const auto fast = window_restrict(force.fast, DrivingForce::kFirstTime, window);
  const auto& y1 = outputs.at(0);

  r.corr_full = std::abs(correlation(y1, gamma));
  r.corr_slow = std::abs(correlation(y1, slow));
  r.corr_fast = std::abs(correlation(y1, fast));
  r.eta_y1 = eta(y1);
  r.eta_force = eta(gamma);
  r.eta_slow = eta(slow);
  r.eta_ratio = r.eta_y1 / r.eta_force;
  r.eta_components.reserve(outputs.size());
  for (const auto& y : outputs) r.eta_components.push_back(safe_eta(y));
  r.ok = true;
  return r;
}

RunArtifacts run_pipeline(const RunConfig& config) {
  validate(config);
  DrivingForce force = make_driving_force(config.nu_f, config.points);
  TimeSeries series = logistic_series(force, {config.q, config.u0, config.burn_in});
  if (config.noise_percent > 0.0)
    series = add_noise(series, config.noise_percent, config.seed, config.noise_scale);
  return run_on_series(config, std::move(force), std::move(series));
}

RunArtifacts run_on_series(const RunConfig& config, DrivingForce force, TimeSeries series) {
  RunArtifacts a;
  a.force = std::move(force);
  a.series = std::move(series);

  const EmbeddingMatrix rows = embed(a.series, config.m, config.tau);
  const FitResult fitted = fit(rows, {config.degree, effective_components(config), config.svd_cutoff});
  a.window = rows.window();
  a.outputs.reserve(fitted.outputs.components());
  for (std::size_t i = 0; i < fitted.outputs.components(); ++i) {
    const auto s = fitted.outputs.signal(i);
    a.outputs.emplace_back(s.begin(), s.end());
  }
  a.record = evaluate(config, a.force, a.window, a.outputs);
  a.record.retained_rank = fitted.model.retained_rank();
  a.record.degenerate_pair = fitted.model.degenerate_pair;
  a.model = fitted.model;
  return a;
}

ExperimentRecord run_single(const RunConfig& config) {
  validate(config);
  try {
    return run_pipeline(config).record;
  } catch (const Error& e) {
    ExperimentRecord r;
    r.config = config;
    r.error = std::string(to_string(e.kind())) + ": " + e.what();
    if (const auto* rank = dynamic_cast<const RankDeficiency*>(&e))
      r.retained_rank = static_cast<std::size_t>(rank->retained_rank());
    return r;
  }
}

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
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
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

std::vector<double> frequency_grid(double lo, double hi, double step) {
  if (!(step > 0.0) || !(lo > 0.0) || hi < lo) throw InvalidParameter("invalid frequency grid");
  std::vector<double> grid;
  const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  grid.reserve(n);
  for (std::size_t i = 0; i < n; ++i) grid.push_back(lo + step * static_cast<double>(i));
  return grid;
}

ScanResult phase_transition_scan(const RunConfig& base, const std::vector<double>& nu_grid,
                                 const SweepOptions& options) {
  if (nu_grid.empty()) throw InvalidParameter("frequency grid is empty");
  for (std::size_t i = 1; i < nu_grid.size(); ++i)
    if (!(nu_grid[i] > nu_grid[i - 1])) throw InvalidParameter("frequency grid must be strictly ascending");

  ScanResult result;
  result.records.resize(nu_grid.size());
  parallel_for(nu_grid.size(), options.threads, [&](std::size_t i) {
    RunConfig c = base;
    c.nu_f = nu_grid[i];
    result.records[i] = run_single(c);
  });
  for (const auto& r : result.records) {
    if (r.slow_wins()) {
      result.transition = r.config.nu_f;
      break;
    }
  }
  return result;
}

std::vector<QmCell> sweep_qm(const std::vector<double>& q_values, const std::vector<std::size_t>& m_values,
                             const RunConfig& base, const std::vector<double>& nu_grid,
                             const SweepOptions& options) {
  if (q_values.empty() || m_values.empty()) throw InvalidParameter("q and m grids must be nonempty");
  std::vector<QmCell> cells;
  for (double q : q_values)
    for (std::size_t m : m_values) cells.push_back({q, m, {}});

  // Flatten (cell, frequency) so workers stay busy across cells.
  const std::size_t per_cell = nu_grid.size();
  for (auto& cell : cells) cell.scan.records.resize(per_cell);
  parallel_for(cells.size() * per_cell, options.threads, [&](std::size_t i) {
    QmCell& cell = cells[i / per_cell];
    RunConfig c = base;
    c.q = cell.q;
    c.m = cell.m;
    c.nu_f = nu_grid[i % per_cell];
    cell.scan.records[i % per_cell] = run_single(c);
  });
  for (auto& cell : cells) {
    for (const auto& r : cell.scan.records) {
      if (r.slow_wins()) {
        cell.scan.transition = r.config.nu_f;
        break;
      }
    }
  }
  return cells;
}

std::vector<EtaCell> eta_table(const std::vector<std::size_t>& m_values, const std::vector<double>& q_values,
                               const RunConfig& base, const SweepOptions& options) {
  if (q_values.empty() || m_values.empty()) throw InvalidParameter("q and m grids must be nonempty");
  std::vector<EtaCell> cells;
  for (std::size_t m : m_values)
    for (double q : q_values) cells.push_back({m, q, {}});
  parallel_for(cells.size(), options.threads, [&](std::size_t i) {
    RunConfig c = base;
    c.m = cells[i].m;
    c.q = cells[i].q;
    cells[i].record = run_single(c);
  });
  return cells;
}

std::vector<NoiseCell> noise_study(const RunConfig& config, const std::vector<double>& percents,
                                   const std::vector<std::uint64_t>& seeds, const std::vector<std::size_t>& m_values,
                                   const SweepOptions& options) {
  if (percents.empty() || seeds.empty()) throw InvalidParameter("percent and seed lists must be nonempty");
  const std::vector<std::size_t> ms = m_values.empty() ? std::vector<std::size_t>{config.m} : m_values;

  std::vector<NoiseCell> cells;
  for (std::size_t m : ms)
    for (double p : percents) cells.push_back({m, p, 0.0, 0.0, 0, std::vector<ExperimentRecord>(seeds.size())});

  const std::size_t per_cell = seeds.size();
  parallel_for(cells.size() * per_cell, options.threads, [&](std::size_t i) {
    NoiseCell& cell = cells[i / per_cell];
    const std::size_t percent_index = (i / per_cell) % percents.size();
    RunConfig c = config;
    c.m = cell.m;
    c.noise_percent = cell.percent;
    c.seed = mix_seed(seeds[i % per_cell], percent_index);
    cell.records[i % per_cell] = run_single(c);
  });

  for (auto& cell : cells) {
    double sum = 0.0, sq = 0.0;
    std::size_t n = 0;
    for (const auto& r : cell.records) {
      if (!r.ok) {
        ++cell.failures;
        continue;
      }
      sum += r.corr_slow;
      sq += r.corr_slow * r.corr_slow;
      ++n;
    }
    if (n > 0) {
      cell.mean_corr_slow = sum / static_cast<double>(n);
      cell.std_corr_slow = std::sqrt(std::max(0.0, sq / static_cast<double>(n) - cell.mean_corr_slow * cell.mean_corr_slow));
    } else {
      cell.mean_corr_slow = std::nan("");
      cell.std_corr_slow = std::nan("");
    }
  }
  return cells;
}

std::vector<std::string> record_header() {
  return {"nu_f",      "q",         "m",         "tau",           "points",          "degree",
          "k",         "u0",        "burn_in",   "noise_pct",     "noise_scale",     "seed",
          "svd_eps",   "rng",       "status",    "error",         "retained_rank",   "degenerate_pair",
          "corr_full", "corr_slow", "corr_fast", "eta_y1",        "eta_force",       "eta_slow",
          "eta_ratio", "eta_components"};
}

std::vector<std::string> record_fields(const ExperimentRecord& r) {
  const RunConfig& c = r.config;
  std::vector<std::string> f{fmt(c.nu_f),
                             fmt(c.q),
                             fmt(c.m),
                             fmt(c.tau),
                             fmt(c.points),
                             std::to_string(c.degree),
                             fmt(c.k),
                             fmt(c.u0),
                             fmt(c.burn_in),
                             fmt(c.noise_percent),
                             c.noise_scale == NoiseScale::UnitInterval ? "unit" : "std",
                             std::to_string(c.seed),
                             fmt(c.svd_cutoff),
                             kRngName,
                             r.ok ? "ok" : "error",
                             r.error,
                             fmt(r.retained_rank),
                             r.degenerate_pair ? "1" : "0"};
  if (!r.ok) {
    f.resize(record_header().size());
    return f;
  }
  for (double v : {r.corr_full, r.corr_slow, r.corr_fast, r.eta_y1, r.eta_force, r.eta_slow, r.eta_ratio})
    f.push_back(fmt(v));
  std::string comps;
  for (std::size_t i = 0; i < r.eta_components.size(); ++i) {
    if (i > 0) comps += ';';
    comps += fmt(r.eta_components[i]);
  }
  f.push_back(comps);
  return f;
}

void write_records(const std::string& path, const std::vector<ExperimentRecord>& records, CsvFormat format) {
  auto out = open_out(path);
  out << join_row(record_header(), format) << '\n';
  for (const auto& r : records) out << join_row(record_fields(r), format) << '\n';
  finish(out, path);
}

void write_qm_long(const std::string& path, const std::vector<QmCell>& cells, CsvFormat format) {
  auto out = open_out(path);
  const std::vector<std::string> header{"q",       "m",        "nu_f",      "corr_full", "corr_slow",
                                        "corr_fast", "eta_y1", "eta_force", "eta_ratio", "retained_rank",
                                        "status"};
  out << join_row(header, format) << '\n';
  for (const auto& cell : cells) {
    for (const auto& r : cell.scan.records) {
      std::vector<std::string> row{fmt(cell.q), fmt(cell.m), fmt(r.config.nu_f)};
      if (r.ok) {
        for (double v : {r.corr_full, r.corr_slow, r.corr_fast, r.eta_y1, r.eta_force, r.eta_ratio})
          row.push_back(fmt(v));
      } else {
        row.resize(9);
      }
      row.push_back(fmt(r.retained_rank));
      row.push_back(r.ok ? "ok" : r.error);
      out << join_row(row, format) << '\n';
    }
  }
  finish(out, path);
}

void write_qm_summary(const std::string& path, const std::vector<QmCell>& cells, CsvFormat format) {
  auto out = open_out(path);
  const std::vector<std::string> header{"q", "m", "nu_pt"};
  out << join_row(header, format) << '\n';
  for (const auto& cell : cells) {
    const std::vector<std::string> row{fmt(cell.q), fmt(cell.m),
                                       cell.scan.transition ? fmt(*cell.scan.transition) : "none"};
    out << join_row(row, format) << '\n';
  }
  finish(out, path);
}

void write_eta_table(const std::string& path, const std::vector<EtaCell>& cells, CsvFormat format) {
  auto out = open_out(path);
  const std::vector<std::string> header{"m", "q", "nu_f", "eta_y1", "corr_full", "corr_slow", "status"};
  out << join_row(header, format) << '\n';
  for (const auto& cell : cells) {
    const auto& r = cell.record;
    std::vector<std::string> row{fmt(cell.m), fmt(cell.q), fmt(r.config.nu_f)};
    if (r.ok) {
      for (double v : {r.eta_y1, r.corr_full, r.corr_slow}) row.push_back(fmt(v));
    } else {
      row.resize(6);
    }
    row.push_back(r.ok ? "ok" : r.error);
    out << join_row(row, format) << '\n';
  }
  finish(out, path);
}

void write_noise_table(const std::string& path, const std::vector<NoiseCell>& cells, CsvFormat format) {
  auto out = open_out(path);
  const std::vector<std::string> header{"m", "noise_pct", "seeds", "mean_corr_slow", "std_corr_slow", "failures"};
  out << join_row(header, format) << '\n';
  for (const auto& cell : cells) {
    const std::vector<std::string> row{fmt(cell.m),
                                       fmt(cell.percent),
                                       fmt(cell.records.size()),
                                       fmt(cell.mean_corr_slow),
                                       fmt(cell.std_corr_slow),
                                       fmt(cell.failures)};
    out << join_row(row, format) << '\n';
  }
  finish(out, path);
}

}  // namespace dsfa
