#include "spotbid/report.hpp"

#include <cmath>
#include <fstream>

#include <fmt/format.h>

namespace spotbid {
namespace {

using nlohmann::ordered_json;

ordered_json trace_json(const TraceMeta& meta) {
  ordered_json j;
  j["instance_type"] = meta.instance_type;
  j["product"] = meta.product;
  j["zone"] = meta.zone;
  j["start"] = format_iso8601(meta.start);
  j["end"] = format_iso8601(meta.end);
  j["point_count"] = meta.point_count;
  return j;
}

ordered_json band_json(const PriceBand& band) {
  ordered_json j;
  j["floor"] = round6(band.floor());
  j["ceiling"] = round6(band.ceiling());
  return j;
}

ordered_json spec_json(const StrategySpec& spec) {
  ordered_json j;
  j["kind"] = std::string(to_string(spec.kind));
  j["stat_mode"] = spec.stat_mode ? ordered_json(std::string(to_string(*spec.stat_mode))) : ordered_json();
  if (spec.gains) {
    ordered_json g;
    g["kp"] = spec.gains->kp();
    g["ki"] = spec.gains->ki();
    g["sign_convention"] = spec.gains->corrective() ? "negated magnitudes (kp = -|kp|, ki = -|ki|)"
                                                    : "literal positive gains";
    j["gains"] = g;
  } else {
    j["gains"] = nullptr;
  }
  j["pre_delta"] = spec.adjustments.pre_delta;
  j["post_delta"] = spec.adjustments.post_delta;
  j["initial_bid"] = round6(spec.initial_bid);
  return j;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

std::string fixed6(double value) { return fmt::format("{:.6f}", round6(value)); }

}  // namespace

double round6(double value) noexcept {
  const double r = std::round(value * 1e6) / 1e6;
  return r == 0.0 ? 0.0 : r;  // no "-0.0" in reports
}

std::string report_to_json(const BacktestReport& report, bool include_bids) {
  ordered_json j;
  j["trace"] = trace_json(report.trace);
  j["band"] = band_json(report.band);

  ordered_json strategies = ordered_json::array();
  for (const auto& s : report.strategies) {
    ordered_json e;
    e["name"] = s.series.strategy_name;
    e["spec"] = spec_json(s.series.spec);
    ordered_json m;
    m["success_rate"] = round6(s.metrics.success_rate);
    m["distance"] = round6(s.metrics.distance);
    m["relative_rationality"] =
        s.metrics.relative_rationality ? ordered_json(round6(*s.metrics.relative_rationality)) : ordered_json();
    m["pareto_member"] = s.pareto_member;
    e["metrics"] = m;
    if (include_bids) {
      ordered_json bids = ordered_json::array();
      for (const double b : s.series.scored()) bids.push_back(round6(b));
      e["bids"] = bids;
    }
    e["recommendation_bid"] = round6(s.series.recommendation());
    strategies.push_back(e);
  }
  j["strategies"] = strategies;

  ordered_json rr = ordered_json::array();
  for (const auto& r : report.comparison_rr) {
    ordered_json e;
    e["name"] = r.name;
    e["relative_rationality"] = round6(r.relative_rationality);
    rr.push_back(e);
  }
  j["relative_rationality_set"] = rr;
  j["engine_version"] = report.engine_version;
  j["config"] = report.config_echo;
  j["warnings"] = report.warnings;
  return dump(j);
}

std::string report_to_csv(const BacktestReport& report) {
  std::string out = "name,success_rate,distance,relative_rationality\n";
  for (const auto& s : report.strategies) {
    out += fmt::format("{},{},{},{}\n", s.series.strategy_name, fixed6(s.metrics.success_rate),
                       fixed6(s.metrics.distance), fixed6(s.metrics.relative_rationality.value_or(0.0)));
  }
  return out;
}

std::string write_report(const BacktestReport& report, ReportFormat format, bool include_bids) {
  return format == ReportFormat::Json ? report_to_json(report, include_bids) : report_to_csv(report);
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(fmt::format("cannot open '{}' for writing", path.string()));
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.close();
  if (!out) throw IoError(fmt::format("failed writing '{}'", path.string()));
}

std::vector<std::filesystem::path> write_plot_data(const BacktestReport& report, const PriceTrace& trace,
                                                   const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw IoError(fmt::format("cannot create plot directory '{}'", dir.string()));
  }

  std::vector<std::filesystem::path> written;
  for (const auto& s : report.strategies) {
    const auto scored = s.series.scored();
    if (scored.size() != trace.size()) {
      throw DomainError(fmt::format("strategy '{}' is not aligned with the trace", s.series.strategy_name));
    }
    std::string out = "index,timestamp,spot_price,bid\n";
    for (std::size_t i = 0; i < trace.size(); ++i) {
      out += fmt::format("{},{},{},{}\n", i + 1, format_iso8601(trace.points[i].timestamp),
                         fixed6(trace.points[i].price), fixed6(scored[i]));
    }
    auto path = dir / fmt::format("trajectory_{}.csv", s.series.strategy_name);
    write_file(path, out);
    written.push_back(std::move(path));
  }

  std::string cmp = "name,success_rate,relative_rationality\n";
  for (const auto& s : report.strategies) {
    cmp += fmt::format("{},{},{}\n", s.series.strategy_name, fixed6(s.metrics.success_rate),
                       fixed6(s.metrics.relative_rationality.value_or(0.0)));
  }
  auto path = dir / "comparison.csv";
  write_file(path, cmp);
  written.push_back(std::move(path));
  return written;
}

std::string sweep_to_json(const SweepReport& report) {
  ordered_json j;
  j["trace"] = trace_json(report.trace);
  j["band"] = band_json(report.band);
  ordered_json points = ordered_json::array();
  for (const auto& p : report.points) {
    ordered_json e;
    e["kp"] = p.kp;
    e["ki"] = p.ki;
    e["pre_delta"] = p.pre_delta;
    e["post_delta"] = p.post_delta;
    e["success_rate"] = round6(p.success_rate);
    e["distance"] = round6(p.distance);
    e["relative_rationality"] = round6(p.relative_rationality);
    e["pareto_member"] = p.pareto_member;
    points.push_back(e);
  }
  j["points"] = points;
  j["engine_version"] = report.engine_version;
  j["config"] = report.config_echo;
  j["warnings"] = report.warnings;
  return dump(j);
}

std::string sweep_to_csv(const SweepReport& report) {
  std::string out = "kp,ki,pre_delta,post_delta,success_rate,distance,relative_rationality,pareto_member\n";
  for (const auto& p : report.points) {
    out += fmt::format("{},{},{},{},{},{},{},{}\n", p.kp, p.ki, p.pre_delta, p.post_delta, fixed6(p.success_rate),
                       fixed6(p.distance), fixed6(p.relative_rationality), p.pareto_member ? "true" : "false");
  }
  return out;
}

}  // namespace spotbid
