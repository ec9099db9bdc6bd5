#include "ebs/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

#include "ebs/params.hpp"

namespace ebs::cli {
namespace {

using metrics::format_number;

struct Job {
  SummaryRow row;
  ScenarioConfig config;
};

struct JobOutput {
  SummaryRow row;
  sim::RunResult result;
};

std::vector<Job> plan_jobs(const ParsedScenario& scenario) {
  std::vector<Job> jobs;
  const std::string param = scenario.config.sweep ? scenario.config.sweep->key : "";
  for (const SweepPoint& p : plan_sweep(scenario)) {
    Job ebs_job{SummaryRow{param, p.value, sim::Algorithm::Ebs, p.config.seed, {}, 0.0, 0.0}, p.config};
    jobs.push_back(ebs_job);
    if (p.config.mrf) {
      ebs_job.row.algorithm = sim::Algorithm::Mrf;
      jobs.push_back(std::move(ebs_job));
    }
  }
  return jobs;
}

std::vector<JobOutput> execute(const std::vector<Job>& jobs, int workers) {
  std::vector<JobOutput> outputs(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      try {
        outputs[i].row = jobs[i].row;
        outputs[i].result = sim::run(jobs[i].config, jobs[i].row.algorithm);
        const auto& r = outputs[i].result;
        outputs[i].row.steady = metrics::steady_state(r.series, static_cast<std::size_t>(jobs[i].config.steady_window));
        outputs[i].row.avg_degree_measured = r.avg_degree_measured;
        outputs[i].row.avg_degree_topology = r.avg_degree_topology;
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers <= 0) workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  workers = std::min<int>(workers, static_cast<int>(std::max<std::size_t>(jobs.size(), 1)));
  {
    std::vector<std::jthread> pool;
    for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return outputs;
}

std::string sanitize(std::string_view text) {
  std::string out;
  for (char ch : text) {
    const bool keep = (ch >= '0' && ch <= '9') || (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') ||
                      ch == '.' || ch == '-' || ch == '_';
    out += keep ? ch : '_';
  }
  return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << text;
  out.flush();
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace

std::string run_stem(const SummaryRow& row) {
  std::string stem(sim::to_string(row.algorithm));
  if (!row.sweep_param.empty()) {
    const auto dot = row.sweep_param.rfind('.');
    stem += "_" + sanitize(row.sweep_param.substr(dot + 1)) + "-" + sanitize(row.sweep_value);
  }
  return stem + "_seed" + std::to_string(row.seed);
}

std::vector<SummaryRow> run_points(const ParsedScenario& scenario, int jobs) {
  std::vector<SummaryRow> rows;
  for (auto& out : execute(plan_jobs(scenario), jobs)) rows.push_back(std::move(out.row));
  return rows;
}

void write_summary(const std::vector<SummaryRow>& rows, std::ostream& out) {
  out << kSummaryHeader << "\r\n";
  for (const SummaryRow& r : rows) {
    out << r.sweep_param << ',' << r.sweep_value << ',' << sim::to_string(r.algorithm) << ','
        << r.seed << ',' << format_number(r.steady.duty_pct) << ','
        << format_number(r.steady.thr_pct) << ',' << format_number(r.steady.steady_pct) << ','
        << r.steady.flaps << ',' << format_number(r.avg_degree_measured) << ','
        << format_number(r.avg_degree_topology) << "\r\n";
  }
}

int run_experiment(const ParsedScenario& scenario, const ExperimentOptions& options,
                   std::ostream& log, std::ostream& err) {
  std::vector<Job> jobs;
  std::vector<JobOutput> outputs;
  try {
    jobs = plan_jobs(scenario);
    if (options.trace) {
      for (Job& j : jobs) j.config.trace = true;
    }
    outputs = execute(jobs, options.jobs);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }

  namespace fs = std::filesystem;
  std::vector<fs::path> written;
  bool created_dir = false;
  try {
    if (!fs::exists(options.out_dir)) created_dir = fs::create_directories(options.out_dir);
    auto emit = [&](const fs::path& path, auto&& writer) {
      written.push_back(path);
      writer(path);
    };
    for (const JobOutput& o : outputs) {
      const std::string stem = run_stem(o.row);
      emit(options.out_dir / (stem + ".csv"),
           [&](const fs::path& p) { metrics::export_csv(o.result.series, p); });
      if (!o.result.trace.empty()) {
        std::string text;
        for (const auto& line : o.result.trace) text += line + "\n";
        emit(options.out_dir / (stem + ".trace.ndjson"), [&](const fs::path& p) { write_text(p, text); });
      }
      for (const auto& w : o.result.warnings) log << "warning [" << stem << "]: " << w << '\n';
    }
    std::vector<SummaryRow> rows;
    for (const JobOutput& o : outputs) rows.push_back(o.row);
    std::ostringstream summary;
    write_summary(rows, summary);
    emit(options.out_dir / "summary.csv", [&](const fs::path& p) { write_text(p, summary.str()); });
    emit(options.out_dir / "resolved-config.txt",
         [&](const fs::path& p) { write_text(p, render_config(scenario.config)); });
  } catch (const std::exception& e) {
    std::error_code ec;
    for (const auto& p : written) fs::remove(p, ec);
    if (created_dir) fs::remove(options.out_dir, ec);
    err << "error: " << e.what() << '\n';
    return 1;
  }

  log << std::left << std::setw(34) << "run" << std::setw(12) << "duty_pct" << std::setw(12)
      << "thr_pct" << std::setw(12) << "steady_pct" << "flaps\n";
  for (const JobOutput& o : outputs) {
    log << std::setw(34) << run_stem(o.row) << std::setw(12) << format_number(o.row.steady.duty_pct, 2)
        << std::setw(12) << format_number(o.row.steady.thr_pct, 2) << std::setw(12)
        << format_number(o.row.steady.steady_pct, 2) << o.row.steady.flaps << '\n';
  }
  log << "wrote " << written.size() << " files to " << options.out_dir.string() << '\n';
  return 0;
}

int check_params(const ScenarioConfig& config, bool strict, std::ostream& out) {
  const Topology topology = build_topology(config.topology, config.seed);
  params::ReportInputs in;
  in.epsilon = config.protocol.epsilon;
  in.sigma = config.protocol.sigma;
  in.period = config.protocol.period;
  in.c0 = config.protocol.c0;
  in.s_th = config.protocol.s_th;
  in.nu = config.delay.nominal();
  if (config.fault.collisions_enabled && config.fault.airtime_beta > 0) in.beta = config.fault.airtime_beta;
  const params::ParamReport report = params::make_report(in, topology);

  out << "nodes            " << topology.size() << " (max degree " << topology.max_degree()
      << ", average " << format_number(topology.average_degree(), 2) << ")\n";
  out << "epsilon          " << format_number(in.epsilon) << '\n';
  out << "sigma            " << format_number(in.sigma) << '\n';
  out << "delay nu         " << in.nu << " ticks\n";
  out << "stability        " << (report.stable ? "stable" : "UNSTABLE") << " (margin "
      << format_number(report.margin) << ")\n";
  out << "sigma_max        " << format_number(report.sigma_max) << '\n';
  out << "epsilon_opt      " << format_number(report.epsilon_opt) << '\n';

  std::map<std::size_t, Ticks> by_degree;
  for (const auto& [id, c] : report.adaptive_c_per_node) by_degree[topology.degree(id)] = c;
  out << "adaptive C (c0 = " << in.c0 << ", S_Th = " << format_number(in.s_th, 1) << ")\n";
  for (const auto& [degree, c] : by_degree) {
    out << "  degree " << std::setw(5) << degree << "  C = " << c << " ticks\n";
  }
  for (const auto& w : report.warnings) out << "warning: " << w << '\n';
  for (const auto& w : topology_warnings(topology)) out << "warning: " << w << '\n';
  return (strict && !report.stable) ? 2 : 0;
}

}  // namespace ebs::cli
