#include "ebs/metrics.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace ebs::metrics {

void MetricsSeries::append(const MetricsRow& row) {
  if (!rows_.empty() && row.period <= rows_.back().period) {
    throw std::invalid_argument("metrics rows must have strictly increasing period indices");
  }
  rows_.push_back(row);
}

double duty_cycle(std::span<const Ticks> awake_ticks, Ticks elapsed_ticks) {
  if (elapsed_ticks <= 0) throw std::invalid_argument("duty_cycle: elapsed ticks must be positive");
  if (awake_ticks.empty()) return 0.0;
  double sum = 0.0;
  for (Ticks a : awake_ticks) sum += 100.0 * static_cast<double>(a) / static_cast<double>(elapsed_ticks);
  return sum / static_cast<double>(awake_ticks.size());
}

double duty_cycle(std::span<const Ticks> awake_ticks, std::span<const Ticks> elapsed_ticks) {
  if (awake_ticks.size() != elapsed_ticks.size()) {
    throw std::invalid_argument("duty_cycle: awake and elapsed spans differ in length");
  }
  double sum = 0.0;
  std::size_t counted = 0;
  for (std::size_t i = 0; i < awake_ticks.size(); ++i) {
    if (elapsed_ticks[i] <= 0) continue;
    sum += 100.0 * static_cast<double>(awake_ticks[i]) / static_cast<double>(elapsed_ticks[i]);
    ++counted;
  }
  return counted == 0 ? 0.0 : sum / static_cast<double>(counted);
}

double throughput(std::int64_t received_total, double avg_degree, std::size_t n) {
  if (!(avg_degree > 0.0)) throw std::invalid_argument("throughput: average degree must be positive");
  if (n == 0) return 0.0;
  return 100.0 * static_cast<double>(received_total) / (avg_degree * static_cast<double>(n));
}

std::string format_number(double value, int decimals) {
  if (value == 0.0) value = 0.0;  // folds -0
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                 std::chars_format::fixed, decimals);
  if (ec != std::errc{}) throw std::runtime_error("format_number: value does not fit");
  return std::string(buf.data(), end);
}

void write_csv(const MetricsSeries& series, std::ostream& out) {
  // Every field is numeric, so RFC 4180 quoting never triggers.
  out << kCsvHeader << "\r\n";
  for (const MetricsRow& r : series.rows()) {
    out << r.period << ',' << format_number(r.dphi_literal) << ',' << format_number(r.dphi_circular)
        << ',' << format_number(r.dplus) << ',' << format_number(r.duty_pct) << ','
        << format_number(r.thr_pct) << ',' << format_number(r.steady_pct) << ',' << r.flaps << "\r\n";
  }
}

void export_csv(const MetricsSeries& series, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_csv(series, out);
  out.flush();
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

SteadyState steady_state(const MetricsSeries& series, std::size_t window) {
  SteadyState s;
  const auto& rows = series.rows();
  if (rows.empty()) return s;
  window = std::clamp<std::size_t>(window, 1, rows.size());
  for (std::size_t i = rows.size() - window; i < rows.size(); ++i) {
    s.duty_pct += rows[i].duty_pct;
    s.thr_pct += rows[i].thr_pct;
    s.steady_pct += rows[i].steady_pct;
  }
  const auto w = static_cast<double>(window);
  s.duty_pct /= w;
  s.thr_pct /= w;
  s.steady_pct /= w;
  s.flaps = rows.back().flaps;
  return s;
}

}  // namespace ebs::metrics
