#include "dasa/config_io.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace dasa {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& reason) {
  throw InvalidParameter(field, reason);
}

double as_number(const json& v, const std::string& field) {
  if (!v.is_number()) fail(field, "expected a number");
  return v.get<double>();
}

// Numbers, or the strings "inf"/"infinity".
double as_extended_number(const json& v, const std::string& field) {
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "inf" || s == "infinity" || s == "Infinity")
      return std::numeric_limits<double>::infinity();
    fail(field, "expected a number or \"inf\"");
  }
  return as_number(v, field);
}

CongestionThreshold as_threshold(const json& v) {
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "inf" || s == "infinity" || s == "Infinity") return CongestionThreshold::infinite();
    fail("m", "expected a positive integer or \"inf\"");
  }
  if (v.is_number_unsigned()) {
    const auto m = v.get<std::uint64_t>();
    if (m < 1) fail("m", "finite threshold must be >= 1");
    return CongestionThreshold::finite(m);
  }
  if (v.is_number_integer()) fail("m", "finite threshold must be >= 1");
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (std::isinf(d) && d > 0) return CongestionThreshold::infinite();
    if (d >= 1 && d == std::floor(d) && d < 1.8e19)
      return CongestionThreshold::finite(static_cast<std::uint64_t>(d));
  }
  fail("m", "expected a positive integer or \"inf\"");
}

void set_field(ConfigDocument& doc, const std::string& section, const std::string& key,
               const json& v) {
  const std::string field = section + "." + key;
  if (section == "channel") {
    auto& c = doc.channel;
    if (key == "alpha") c.alpha = as_number(v, field);
    else if (key == "theta") c.theta = as_number(v, field);
    else if (key == "theta_db") c.theta = db_to_linear(as_number(v, field));
    else if (key == "noise_mw") c.noise_mw = as_number(v, field);
    else if (key == "noise_dbm") c.noise_mw = dbm_to_mw(as_number(v, field));
    else if (key == "p1_mw") c.p1_mw = as_number(v, field);
    else if (key == "p2_max_mw") c.p2_max_mw = as_number(v, field);
    else fail(field, "unknown key");
  } else if (section == "geometry") {
    auto& g = doc.geometry;
    if (key == "d_p") g.d_p = as_number(v, field);
    else if (key == "d_s") g.d_s = as_number(v, field);
    else if (key == "radius") g.radius = as_number(v, field);
    else if (key == "lambda_s") g.lambda_s = as_number(v, field);
    else fail(field, "unknown key");
  } else if (section == "protocol") {
    auto& p = doc.protocol;
    if (key == "lambda") {
      p.lambda = as_number(v, field);
    } else if (key == "q1") {
      if (v.is_string() && v.get<std::string>() == "optimal") {
        doc.q1_optimal = true;
      } else {
        p.q1 = as_number(v, field);
        doc.q1_optimal = false;
      }
    } else if (key == "q2") {
      p.q2 = as_number(v, field);
    } else if (key == "m") {
      p.m = as_threshold(v);
    } else if (key == "p2_mw") {
      p.p2_mw = as_number(v, field);
    } else {
      fail(field, "unknown key");
    }
  } else if (section == "delay_constraint") {
    if (key == "d_max") {
      doc.delay.d_max = as_extended_number(v, field);
    } else {
      fail(field, "unknown key");
    }
  } else {
    fail(section, "unknown section");
  }
}

constexpr std::array<const char*, 4> kSections = {"channel", "geometry", "protocol",
                                                  "delay_constraint"};

// Section owning a bare key, or empty when the key is unknown.
std::string section_of(const std::string& key) {
  static const std::array<std::pair<const char*, const char*>, 17> table = {{
      {"alpha", "channel"},      {"theta", "channel"},     {"theta_db", "channel"},
      {"noise_mw", "channel"},   {"noise_dbm", "channel"}, {"p1_mw", "channel"},
      {"p2_max_mw", "channel"},  {"d_p", "geometry"},      {"d_s", "geometry"},
      {"radius", "geometry"},    {"lambda_s", "geometry"}, {"lambda", "protocol"},
      {"q1", "protocol"},        {"q2", "protocol"},       {"m", "protocol"},
      {"p2_mw", "protocol"},     {"d_max", "delay_constraint"},
  }};
  for (const auto& [k, s] : table)
    if (key == k) return s;
  return {};
}

}  // namespace

ConfigDocument parse_config(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    fail("config", std::string("malformed JSON: ") + e.what());
  }
  if (!root.is_object()) fail("config", "top level must be an object");

  ConfigDocument doc;
  std::vector<Violation> violations;
  for (const auto& [section, body] : root.items()) {
    if (std::find(kSections.begin(), kSections.end(), section) == kSections.end()) {
      violations.push_back({section, "unknown section"});
      continue;
    }
    if (!body.is_object()) {
      violations.push_back({section, "section must be an object"});
      continue;
    }
    for (const auto& [key, value] : body.items()) {
      try {
        set_field(doc, section, key, value);
      } catch (const InvalidParameter& e) {
        violations.insert(violations.end(), e.violations().begin(), e.violations().end());
      }
    }
  }
  if (!violations.empty()) throw InvalidParameter(std::move(violations));
  return doc;
}

ConfigDocument load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail("config", "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

void apply_override(ConfigDocument& doc, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos || eq == 0)
    fail(std::string(assignment), "override must have the form key=value");
  std::string key(assignment.substr(0, eq));
  const std::string text(assignment.substr(eq + 1));

  std::string section;
  if (const auto dot = key.find('.'); dot != std::string::npos) {
    section = key.substr(0, dot);
    key = key.substr(dot + 1);
  } else {
    section = section_of(key);
    if (section.empty()) fail(key, "unknown key");
  }

  json value;
  try {
    value = json::parse(text);
  } catch (const json::parse_error&) {
    value = text;
  }
  set_field(doc, section, key, value);
}

std::string to_json(const ConfigDocument& doc, int indent) {
  auto num = [](double x) -> json {
    if (std::isinf(x)) return "inf";
    return x;
  };
  json j;
  j["channel"] = {{"alpha", doc.channel.alpha},
                  {"theta", doc.channel.theta},
                  {"noise_mw", doc.channel.noise_mw},
                  {"p1_mw", doc.channel.p1_mw},
                  {"p2_max_mw", doc.channel.p2_max_mw}};
  j["geometry"] = {{"d_p", doc.geometry.d_p},
                   {"d_s", doc.geometry.d_s},
                   {"radius", doc.geometry.radius},
                   {"lambda_s", doc.geometry.lambda_s}};
  json m = doc.protocol.m.is_finite() ? json(doc.protocol.m.value()) : json("inf");
  j["protocol"] = {{"lambda", doc.protocol.lambda},
                   {"q1", doc.q1_optimal ? json("optimal") : json(doc.protocol.q1)},
                   {"q2", doc.protocol.q2},
                   {"m", m},
                   {"p2_mw", doc.protocol.p2_mw}};
  j["delay_constraint"] = {{"d_max", num(doc.delay.d_max)}};
  return j.dump(indent);
}

}  // namespace dasa
