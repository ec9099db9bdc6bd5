#pragma once

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "ebs/core.hpp"

namespace ebs::metrics {

struct MetricsRow {
  std::int64_t period = 0;
  double dphi_literal = 0.0;
  double dphi_circular = 0.0;
  double dplus = 0.0;
  double duty_pct = 0.0;
  double thr_pct = 0.0;
  double steady_pct = 0.0;
  std::int64_t flaps = 0;

  bool operator==(const MetricsRow&) const = default;
};

class MetricsSeries {
 public:
  /// Throws std::invalid_argument unless period indices strictly increase.
  void append(const MetricsRow& row);
  const std::vector<MetricsRow>& rows() const { return rows_; }
  bool empty() const { return rows_.empty(); }
  std::size_t size() const { return rows_.size(); }

  bool operator==(const MetricsSeries&) const = default;

 private:
  std::vector<MetricsRow> rows_;
};

inline constexpr std::string_view kCsvHeader =
    "period,dphi_literal,dphi_circular,dplus,duty_pct,thr_pct,steady_pct,flaps";

/// Network average of 100 * awake / elapsed.
double duty_cycle(std::span<const Ticks> awake_ticks, Ticks elapsed_ticks);
/// Per-node elapsed time (nodes present for part of the window).
double duty_cycle(std::span<const Ticks> awake_ticks, std::span<const Ticks> elapsed_ticks);

/// 100 * received / (avg_degree * n).
double throughput(std::int64_t received_total, double avg_degree, std::size_t n);

/// Locale-independent fixed-point rendering used for every CSV number.
std::string format_number(double value, int decimals = 6);

void write_csv(const MetricsSeries& series, std::ostream& out);
/// Throws std::runtime_error carrying the path on I/O failure.
void export_csv(const MetricsSeries& series, const std::filesystem::path& path);

/// Mean duty cycle / throughput over the last `window` periods.
struct SteadyState {
  double duty_pct = 0.0;
  double thr_pct = 0.0;
  double steady_pct = 0.0;
  std::int64_t flaps = 0;
};
SteadyState steady_state(const MetricsSeries& series, std::size_t window);

}  // namespace ebs::metrics
