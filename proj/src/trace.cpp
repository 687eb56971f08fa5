#include "spotbid/trace.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include <fmt/format.h>
#include <json.hpp>

#include "spotbid/error.hpp"
#include "spotbid/rng.hpp"

namespace spotbid {
namespace {

std::optional<double> parse_decimal(std::string_view text) {
  if (text.empty()) return std::nullopt;
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (*first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || !std::isfinite(value)) return std::nullopt;
  return value;
}

std::string_view strip_cr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

// Metadata shared by every record, or empty when the records disagree.
std::string common_value(const std::vector<std::string>& values) {
  if (values.empty()) return {};
  for (const auto& v : values) {
    if (v != values.front()) return {};
  }
  return values.front();
}

}  // namespace

std::vector<double> PriceTrace::prices() const {
  std::vector<double> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(p.price);
  return out;
}

PriceTrace parse_csv(std::string_view raw) {
  if (raw.starts_with("\xEF\xBB\xBF")) raw.remove_prefix(3);

  PriceTrace trace;
  std::size_t line_no = 0;
  bool saw_header = false;
  while (!raw.empty()) {
    const auto nl = raw.find('\n');
    std::string_view line = strip_cr(raw.substr(0, nl));
    raw = nl == std::string_view::npos ? std::string_view{} : raw.substr(nl + 1);
    ++line_no;

    if (!saw_header) {
      if (line != "timestamp,price") {
        throw ParseError(line_no, fmt::format("malformed header '{}', expected 'timestamp,price'", line));
      }
      saw_header = true;
      continue;
    }
    if (line.empty()) continue;

    const auto comma = line.find(',');
    if (comma == std::string_view::npos || line.find(',', comma + 1) != std::string_view::npos) {
      throw ParseError(line_no, "expected exactly two fields 'timestamp,price'");
    }
    const auto ts_text = line.substr(0, comma);
    const auto price_text = line.substr(comma + 1);
    const auto ts = parse_iso8601(ts_text);
    if (!ts) throw ParseError(line_no, fmt::format("unparseable timestamp '{}'", ts_text));
    const auto price = parse_decimal(price_text);
    if (!price) throw ParseError(line_no, fmt::format("unparseable price '{}'", price_text));
    if (*price < 0.0) throw ParseError(line_no, fmt::format("negative price {}", price_text));
    trace.points.push_back({*ts, *price});
  }
  if (!saw_header) throw ParseError(1, "malformed header: input is empty");
  if (trace.points.empty()) throw ParseError(line_no, "empty body: no price rows after header");
  return trace;
}

PriceTrace parse_aws_json(std::string_view raw, const TraceFilter& filter) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(raw);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(0, fmt::format("invalid JSON: {}", e.what()));
  }

  const nlohmann::json* records = &doc;
  if (doc.is_object()) {
    const auto it = doc.find("SpotPriceHistory");
    if (it == doc.end()) throw ParseError(0, "JSON object has no 'SpotPriceHistory' array");
    records = &*it;
  }
  if (!records->is_array()) throw ParseError(0, "expected an array of spot price records");

  struct Record {
    PricePoint point;
    std::string instance_type, product, zone;
  };
  std::vector<Record> kept;

  for (std::size_t i = 0; i < records->size(); ++i) {
    const auto& rec = (*records)[i];
    if (!rec.is_object()) throw ParseError(0, fmt::format("record {}: not an object", i));
    auto field = [&](const char* name) -> std::string {
      const auto it = rec.find(name);
      if (it == rec.end()) throw ParseError(0, fmt::format("record {}: missing field '{}'", i, name));
      if (!it->is_string()) throw ParseError(0, fmt::format("record {}: field '{}' is not a string", i, name));
      return it->get<std::string>();
    };
    const std::string ts_text = field("Timestamp");
    const std::string price_text = field("SpotPrice");
    Record r{{}, field("InstanceType"), field("ProductDescription"), field("AvailabilityZone")};

    const auto ts = parse_iso8601(ts_text);
    if (!ts) throw ParseError(0, fmt::format("record {}: unparseable Timestamp '{}'", i, ts_text));
    const auto price = parse_decimal(price_text);
    if (!price || *price < 0.0) {
      throw ParseError(0, fmt::format("record {}: unparseable SpotPrice '{}'", i, price_text));
    }
    r.point = {*ts, *price};

    if (filter.instance_type && r.instance_type != *filter.instance_type) continue;
    if (filter.product && r.product != *filter.product) continue;
    if (filter.zone && r.zone != *filter.zone) continue;
    if (filter.time_range &&
        (r.point.timestamp < filter.time_range->start || r.point.timestamp > filter.time_range->end)) {
      continue;
    }
    kept.push_back(std::move(r));
  }
  if (kept.empty()) throw ParseError(0, "zero records after filtering");

  std::stable_sort(kept.begin(), kept.end(),
                   [](const Record& a, const Record& b) { return a.point.timestamp < b.point.timestamp; });

  PriceTrace trace;
  std::vector<std::string> types, products, zones;
  for (auto& r : kept) {
    trace.points.push_back(r.point);
    types.push_back(std::move(r.instance_type));
    products.push_back(std::move(r.product));
    zones.push_back(std::move(r.zone));
  }
  trace.instance_type = filter.instance_type.value_or(common_value(types));
  trace.product = filter.product.value_or(common_value(products));
  trace.zone = filter.zone.value_or(common_value(zones));
  return trace;
}

PriceTrace validate(PriceTrace trace) {
  const auto& pts = trace.points;
  if (pts.empty()) throw ValidationError({}, "empty trace");
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (!std::isfinite(pts[i].price) || !(pts[i].price > 0.0)) {
      throw ValidationError({i}, fmt::format("nonpositive price {} at index {}", pts[i].price, i));
    }
    if (i > 0 && pts[i].timestamp <= pts[i - 1].timestamp) {
      const char* kind = pts[i].timestamp == pts[i - 1].timestamp ? "duplicate" : "decreasing";
      throw ValidationError({i - 1, i}, fmt::format("{} timestamps at indices {} and {} ({} then {})", kind,
                                                    i - 1, i, format_iso8601(pts[i - 1].timestamp),
                                                    format_iso8601(pts[i].timestamp)));
    }
  }
  return trace;
}

std::string to_csv(const PriceTrace& trace) {
  std::string out = "timestamp,price\n";
  for (const auto& p : trace.points) {
    out += fmt::format("{},{}\n", format_iso8601(p.timestamp), p.price);
  }
  return out;
}

PriceTrace synth_step_hold(const SynthConfig& config) {
  if (config.n_points < 1 || config.hold_steps_mean < 1 || !std::isfinite(config.step_scale) ||
      !(config.step_scale > 0.0)) {
    throw DomainError("synth config needs n_points >= 1, hold_steps_mean >= 1, step_scale > 0");
  }
  const auto& band = config.band;
  auto quantize = [&](double p) { return band.clamp(std::round(p * 1e6) / 1e6); };

  SplitMix64 rng(config.seed);
  const double jump_probability = 1.0 / static_cast<double>(config.hold_steps_mean);
  const Timestamp epoch{std::chrono::seconds{kSynthEpochSeconds}};

  PriceTrace trace;
  trace.instance_type = "synthetic";
  trace.product = "step-hold";
  trace.zone = fmt::format("seed-{}", config.seed);
  trace.points.reserve(config.n_points);

  double price = quantize(band.floor() + band.width() * rng.uniform01());
  for (std::size_t i = 0; i < config.n_points; ++i) {
    if (i > 0 && rng.uniform01() < jump_probability) {
      const double jump = (2.0 * rng.uniform01() - 1.0) * config.step_scale;
      price = quantize(price + jump);
    }
    trace.points.push_back({epoch + std::chrono::minutes{static_cast<std::int64_t>(i)}, price});
  }
  return trace;
}

}  // namespace spotbid
