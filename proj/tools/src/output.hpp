#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "dasa/metrics.hpp"
#include "dasa/optimize.hpp"
#include "dasa/phy.hpp"
#include "dasa/queueing.hpp"
#include "dasa/sim.hpp"

namespace dasa::cli {

// Shortest round-trip-safe text with 9 significant digits, independent of
// the C locale.
std::string format_float(double x);

// RFC 4180 rows: fields containing a comma, quote or line break are quoted.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& os) : os_(os) {}
  void row(const std::vector<std::string>& fields);

 private:
  std::ostream& os_;
};

// JSON number, or null for NaN and +-inf.
nlohmann::json number(double x);

nlohmann::json to_json(const phy::SuccessProbabilities& p);
nlohmann::json to_json(const queueing::QueueAnalysis& q, const queueing::ServiceRates& r);
nlohmann::json to_json(const metrics::ThroughputReport& r);
nlohmann::json to_json(const optimize::KappaConstants& k);
nlohmann::json to_json(const optimize::OptimizationResult& r);
nlohmann::json to_json(const sim::Estimate& e);

// Flat object: nested estimates become name, name_se, name_n.
nlohmann::json to_flat_json(const sim::SimStats& s);

}  // namespace dasa::cli
