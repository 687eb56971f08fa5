#include "spotbid/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ranges.h>
#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include "spotbid/engine.hpp"
#include "spotbid/report.hpp"
#include "spotbid/version.hpp"

namespace spotbid::cli {
namespace {

using nlohmann::ordered_json;

struct Options {
  std::string trace_path;
  std::string aws_json_path;
  std::optional<std::string> instance_type;
  std::optional<std::string> product;
  std::optional<std::string> zone;
  std::optional<std::string> from;
  std::optional<std::string> to;

  std::optional<double> floor;
  std::optional<double> ceiling;
  std::vector<std::string> strategies{"feedback", "minimum", "mean", "high", "current", "ondemand"};
  std::vector<double> kp{10.0};
  std::vector<double> ki{10.0};
  std::vector<double> pre_delta{0.0};
  std::vector<double> post_delta{0.0};
  std::string mode = "causal";
  std::optional<double> initial_bid;
  bool allow_positive_gains = false;
  bool serial = false;

  std::string out;
  std::string plot_dir;
  std::string format = "json";
  std::optional<bool> include_bids;

  std::size_t points = 1001;
  std::size_t hold_mean = 10;
  double step_scale = 0.1;
  std::uint64_t seed = 0;
};

std::shared_ptr<spdlog::logger> logger() {
  if (auto existing = spdlog::get("spotbid")) return existing;
  auto log = spdlog::stderr_logger_mt("spotbid");
  log->set_pattern("spotbid: %l: %v");
  return log;
}

void configure_logging() {
  auto log = logger();
  const char* env = std::getenv("SPOTBID_LOG");
  const std::string level = env ? env : "warn";
  if (level == "error") {
    log->set_level(spdlog::level::err);
  } else if (level == "warn") {
    log->set_level(spdlog::level::warn);
  } else if (level == "info") {
    log->set_level(spdlog::level::info);
  } else if (level == "debug") {
    log->set_level(spdlog::level::debug);
  } else {
    log->set_level(spdlog::level::warn);
    log->warn("ignoring SPOTBID_LOG='{}' (expected error|warn|info|debug)", level);
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot read '{}'", path));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Timestamp parse_flag_time(const std::string& flag, const std::string& text) {
  const auto ts = parse_iso8601(text);
  if (!ts) throw UsageError(fmt::format("{}: '{}' is not an ISO-8601 UTC timestamp", flag, text));
  return *ts;
}

TraceFilter make_filter(const Options& o) {
  TraceFilter f{o.instance_type, o.product, o.zone, std::nullopt};
  if (o.from || o.to) {
    const Timestamp start = o.from ? parse_flag_time("--from", *o.from) : Timestamp::min();
    const Timestamp end = o.to ? parse_flag_time("--to", *o.to) : Timestamp::max();
    if (start > end) throw UsageError("--from must not be after --to");
    f.time_range = TimeRange{start, end};
  }
  return f;
}

// Loads and validates the input trace. Validation failures on CSV input are
// reported with file line numbers (header is line 1, point i is line i + 2).
PriceTrace load_trace(const Options& o) {
  if (!o.trace_path.empty()) {
    auto trace = parse_csv(read_file(o.trace_path));
    try {
      return validate(std::move(trace));
    } catch (const ValidationError& e) {
      std::vector<std::size_t> lines;
      for (const auto i : e.indices()) lines.push_back(i + 2);
      if (lines.empty()) throw;
      throw ValidationError(e.indices(),
                            fmt::format("{}: line(s) {}: {}", o.trace_path, fmt::join(lines, ", "), e.what()));
    }
  }
  const auto filter = make_filter(o);
  return validate(parse_aws_json(read_file(o.aws_json_path), filter));
}

// Flag problems in band/gain/strategy values are usage errors, not data errors.
template <typename F>
auto as_usage(F&& f) {
  try {
    return f();
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
}

PriceBand make_band(const Options& o) {
  return as_usage([&] { return PriceBand(*o.floor, *o.ceiling); });
}

double single(const std::vector<double>& values, const char* flag) {
  if (values.size() != 1) throw UsageError(fmt::format("{} takes a single value for backtest", flag));
  return values.front();
}

PiGains make_gains(const Options& o, double kp, double ki) {
  return as_usage([&] {
    return o.allow_positive_gains ? PiGains::literal(kp, ki) : PiGains::from_magnitudes(kp, ki);
  });
}

void emit(const Options& o, const std::string& content, std::ostream& out) {
  if (o.out.empty()) {
    out << content;
    out.flush();
  } else {
    write_file(o.out, content);
    logger()->info("wrote {}", o.out);
  }
}

ReportFormat report_format(const Options& o) { return o.format == "csv" ? ReportFormat::Csv : ReportFormat::Json; }

ordered_json input_echo(const Options& o) {
  ordered_json j;
  j["trace"] = o.trace_path;
  j["aws_json"] = o.aws_json_path;
  j["instance_type"] = o.instance_type ? ordered_json(*o.instance_type) : ordered_json();
  j["product"] = o.product ? ordered_json(*o.product) : ordered_json();
  j["zone"] = o.zone ? ordered_json(*o.zone) : ordered_json();
  j["from"] = o.from ? ordered_json(*o.from) : ordered_json();
  j["to"] = o.to ? ordered_json(*o.to) : ordered_json();
  j["floor"] = *o.floor;
  j["ceiling"] = *o.ceiling;
  return j;
}

int run_ingest(const Options& o, std::ostream& out) {
  const auto trace = load_trace(o);
  logger()->info("{} points from {} to {}", trace.size(), format_iso8601(trace.points.front().timestamp),
                 format_iso8601(trace.points.back().timestamp));
  emit(o, to_csv(trace), out);
  return kExitOk;
}

int run_synth(const Options& o, std::ostream& out) {
  const auto band = make_band(o);
  const SynthConfig config{band, o.points, o.hold_mean, o.step_scale, o.seed};
  const auto trace = as_usage([&] { return synth_step_hold(config); });
  emit(o, to_csv(trace), out);
  return kExitOk;
}

int run_backtest(const Options& o, std::ostream& out) {
  const auto band = make_band(o);
  const double initial_bid = o.initial_bid.value_or(initial_bid_default(band));
  const auto mode = parse_stat_mode(o.mode);
  const Adjustments adj{single(o.pre_delta, "--pre-delta"), single(o.post_delta, "--post-delta")};
  const double kp = single(o.kp, "--kp");
  const double ki = single(o.ki, "--ki");

  std::vector<StrategySpec> specs;
  for (const auto& name : o.strategies) {
    const auto kind = parse_strategy_kind(name);
    if (!kind) {
      throw UsageError(fmt::format("unknown strategy '{}' (expected feedback, minimum, mean, high, current, ondemand)",
                                   name));
    }
    switch (*kind) {
      case StrategyKind::Feedback:
        specs.push_back(StrategySpec::feedback(make_gains(o, kp, ki), initial_bid, adj));
        break;
      case StrategyKind::Current:
        specs.push_back(StrategySpec::current(initial_bid, adj));
        break;
      case StrategyKind::OnDemand:
        specs.push_back(StrategySpec::on_demand(initial_bid));
        break;
      default:
        specs.push_back(StrategySpec::statistic(*kind, *mode, initial_bid, adj));
        break;
    }
  }
  as_usage([&] {
    for (const auto& s : specs) s.check(band);
    return 0;
  });

  const auto trace = load_trace(o);
  if (!std::all_of(trace.points.begin(), trace.points.end(), [&](const PricePoint& p) { return band.contains(p.price); })) {
    logger()->warn("trace has prices outside the band [{}, {}]", band.floor(), band.ceiling());
  }
  auto report = backtest(trace, specs, band, o.serial ? Execution::Serial : Execution::Parallel);
  const bool include_bids = o.include_bids.value_or(trace.size() < 100000);

  ordered_json echo;
  echo["subcommand"] = "backtest";
  echo["input"] = input_echo(o);
  echo["strategies"] = o.strategies;
  echo["kp"] = kp;
  echo["ki"] = ki;
  echo["pre_delta"] = adj.pre_delta;
  echo["post_delta"] = adj.post_delta;
  echo["mode"] = o.mode;
  echo["initial_bid"] = initial_bid;
  echo["allow_positive_gains"] = o.allow_positive_gains;
  echo["serial"] = o.serial;
  echo["format"] = o.format;
  echo["include_bids"] = include_bids;
  echo["out"] = o.out;
  echo["plot_dir"] = o.plot_dir;
  report.config_echo = echo;
  if (o.allow_positive_gains) {
    report.warnings.insert(report.warnings.begin(),
                           "--allow-positive-gains: gains taken as positive, contrary to kp < 0 and ki < 0");
  }
  for (const auto& w : report.warnings) logger()->warn("{}", w);

  emit(o, write_report(report, report_format(o), include_bids), out);
  if (!o.plot_dir.empty()) {
    for (const auto& p : write_plot_data(report, trace, o.plot_dir)) logger()->info("wrote {}", p.string());
  }
  return kExitOk;
}

int run_sweep(const Options& o, std::ostream& out) {
  const auto band = make_band(o);
  SweepConfig config{o.kp, o.ki, o.pre_delta, o.post_delta, band, o.initial_bid.value_or(initial_bid_default(band)),
                     o.allow_positive_gains};
  as_usage([&] {
    for (const double m : o.kp) make_gains(o, m, 1.0);
    for (const double m : o.ki) make_gains(o, 1.0, m);
    StrategySpec::current(config.initial_bid).check(band);
    return 0;
  });
  if (std::any_of(o.kp.begin(), o.kp.end(), [](double v) { return !(v > 0.0); }) ||
      std::any_of(o.ki.begin(), o.ki.end(), [](double v) { return !(v > 0.0); })) {
    throw UsageError("--kp/--ki take positive magnitudes");
  }

  const auto trace = load_trace(o);
  SweepReport report{describe(trace), band, sweep(trace, config, o.serial ? Execution::Serial : Execution::Parallel),
                     kEngineVersion, {}, {}};

  ordered_json echo;
  echo["subcommand"] = "sweep";
  echo["input"] = input_echo(o);
  echo["kp"] = o.kp;
  echo["ki"] = o.ki;
  echo["pre_delta"] = o.pre_delta;
  echo["post_delta"] = o.post_delta;
  echo["initial_bid"] = config.initial_bid;
  echo["allow_positive_gains"] = o.allow_positive_gains;
  echo["serial"] = o.serial;
  echo["format"] = o.format;
  echo["out"] = o.out;
  report.config_echo = echo;
  if (o.allow_positive_gains) {
    report.warnings.push_back("--allow-positive-gains: gains taken as positive, contrary to kp < 0 and ki < 0");
  }
  for (const auto& w : report.warnings) logger()->warn("{}", w);

  emit(o, o.format == "csv" ? sweep_to_csv(report) : sweep_to_json(report), out);
  return kExitOk;
}

void add_input_flags(CLI::App* cmd, Options& o) {
  auto* trace = cmd->add_option("--trace", o.trace_path, "Spot price CSV (timestamp,price)");
  auto* aws = cmd->add_option("--aws-json", o.aws_json_path, "describe-spot-price-history JSON export");
  trace->excludes(aws);
  cmd->add_option("--instance-type", o.instance_type, "Keep only this instance type")->needs(aws);
  cmd->add_option("--product", o.product, "Keep only this product description")->needs(aws);
  cmd->add_option("--zone", o.zone, "Keep only this availability zone")->needs(aws);
  cmd->add_option("--from", o.from, "Keep records at or after this UTC instant")->needs(aws);
  cmd->add_option("--to", o.to, "Keep records at or before this UTC instant")->needs(aws);
}

void add_band_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--floor", o.floor, "Price floor, USD/hour")->required();
  cmd->add_option("--ceiling", o.ceiling, "Price ceiling (on-demand price), USD/hour")->required();
}

void add_output_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--out", o.out, "Output path (default: stdout)");
  cmd->add_option("--format", o.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
}

void add_strategy_flags(CLI::App* cmd, Options& o, bool lists) {
  const char* suffix = lists ? " (comma-separated list)" : "";
  cmd->add_option("--kp", o.kp, fmt::format("Proportional gain magnitude; kp = -value{}", suffix))
      ->delimiter(',')
      ->capture_default_str();
  cmd->add_option("--ki", o.ki, fmt::format("Integral gain magnitude; ki = -value{}", suffix))
      ->delimiter(',')
      ->capture_default_str();
  cmd->add_option("--pre-delta", o.pre_delta, fmt::format("USD added to reference prices{}", suffix))
      ->delimiter(',')
      ->capture_default_str();
  cmd->add_option("--post-delta", o.post_delta, fmt::format("USD added to emitted bids{}", suffix))
      ->delimiter(',')
      ->capture_default_str();
  cmd->add_option("--initial-bid", o.initial_bid, "First bid, USD/hour (default: ceiling / 2)");
  cmd->add_flag("--allow-positive-gains", o.allow_positive_gains,
                "Use --kp/--ki as positive gains (exploration only; bids diverge)");
  cmd->add_flag("--serial", o.serial, "Run the serial reference path instead of OpenMP");
}

int dispatch(int argc, const char* const* argv, std::ostream& out) {
  Options o;
  CLI::App app{"Backtest spot-instance bidding strategies against price history", "spotbid"};
  app.set_version_flag("--version", std::string(kEngineVersion));
  app.require_subcommand(1);

  auto* ingest = app.add_subcommand("ingest", "Parse, filter and validate a trace; write it as CSV");
  add_input_flags(ingest, o);
  ingest->add_option("--out", o.out, "Output CSV path (default: stdout)");

  auto* backtest_cmd = app.add_subcommand("backtest", "Run strategies on a trace and score them");
  add_input_flags(backtest_cmd, o);
  add_band_flags(backtest_cmd, o);
  backtest_cmd->add_option("--strategies", o.strategies, "Comma-separated strategy names")
      ->delimiter(',')
      ->capture_default_str();
  add_strategy_flags(backtest_cmd, o, false);
  backtest_cmd->add_option("--mode", o.mode, "Minimum/Mean/High statistic window")
      ->check(CLI::IsMember({"causal", "fulltrace"}))
      ->capture_default_str();
  add_output_flags(backtest_cmd, o);
  backtest_cmd->add_option("--plot-dir", o.plot_dir, "Directory for trajectory and comparison CSVs");
  backtest_cmd->add_flag("--include-bids,!--no-include-bids", o.include_bids,
                         "Include bid arrays in the JSON report (default: below 100000 points)");

  auto* sweep_cmd = app.add_subcommand("sweep", "Grid-sweep feedback gains and adjustments");
  add_input_flags(sweep_cmd, o);
  add_band_flags(sweep_cmd, o);
  add_strategy_flags(sweep_cmd, o, true);
  add_output_flags(sweep_cmd, o);

  auto* synth = app.add_subcommand("synth", "Generate a seeded step-hold synthetic trace");
  add_band_flags(synth, o);
  synth->add_option("--points", o.points, "Number of points")->check(CLI::PositiveNumber)->capture_default_str();
  synth->add_option("--hold-mean", o.hold_mean, "Mean hold length in steps")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  synth->add_option("--step-scale", o.step_scale, "Maximum jump size, USD")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  synth->add_option("--seed", o.seed, "Generator seed")->capture_default_str();
  synth->add_option("--out", o.out, "Output CSV path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << (e.get_name() == "CallForVersion" ? std::string(kEngineVersion) + "\n" : app.help());
      return kExitOk;
    }
    logger()->error("{}", e.what());
    std::cerr << "Run with --help for usage.\n";
    return kExitUsage;
  }

  if (!synth->parsed() && o.trace_path.empty() && o.aws_json_path.empty()) {
    throw UsageError("missing input: pass --trace PATH or --aws-json PATH");
  }
  if (ingest->parsed()) return run_ingest(o, out);
  if (backtest_cmd->parsed()) return run_backtest(o, out);
  if (sweep_cmd->parsed()) return run_sweep(o, out);
  return run_synth(o, out);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out) {
  configure_logging();
  try {
    return dispatch(argc, argv, out);
  } catch (const UsageError& e) {
    logger()->error("{}", e.what());
    std::cerr << "Run with --help for usage.\n";
    return kExitUsage;
  } catch (const Error& e) {
    logger()->error("{}", e.what());
    return kExitData;
  } catch (const std::exception& e) {
    logger()->error("internal error: {}", e.what());
    return kExitInternal;
  } catch (...) {
    logger()->error("internal error");
    return kExitInternal;
  }
}

}  // namespace spotbid::cli
