#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "spotbid/engine.hpp"
#include "spotbid/error.hpp"
#include "spotbid/trace.hpp"

namespace spotbid {

enum class ReportFormat { Json, Csv };

/// Rounds to 6 fractional digits, the precision every reported price and
/// metric carries. Internal computation never sees the rounded value.
double round6(double value) noexcept;

/// Report schema, keys in this order:
///   trace, band, strategies[{name, spec, metrics, bids?, recommendation_bid}],
///   relative_rationality_set, engine_version, config, warnings
/// Output ends with a newline and is byte-stable for a given report.
std::string report_to_json(const BacktestReport& report, bool include_bids);

/// `name,success_rate,distance,relative_rationality`, one row per strategy.
std::string report_to_csv(const BacktestReport& report);

std::string write_report(const BacktestReport& report, ReportFormat format, bool include_bids);

/// Writes trajectory_<name>.csv (index,timestamp,spot_price,bid for i = 1..t)
/// per strategy plus comparison.csv (name,success_rate,relative_rationality).
/// Creates `dir` if needed. Returns the files written, in write order.
std::vector<std::filesystem::path> write_plot_data(const BacktestReport& report, const PriceTrace& trace,
                                                   const std::filesystem::path& dir);

struct SweepReport {
  TraceMeta trace;
  PriceBand band;
  std::vector<SweepPoint> points;
  std::string engine_version;
  nlohmann::ordered_json config_echo = nlohmann::ordered_json::object();
  std::vector<std::string> warnings;
};

std::string sweep_to_json(const SweepReport& report);

/// `kp,ki,pre_delta,post_delta,success_rate,distance,relative_rationality,pareto_member`.
std::string sweep_to_csv(const SweepReport& report);

/// Writes `content` to `path`, or throws IoError.
void write_file(const std::filesystem::path& path, const std::string& content);

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace spotbid
