#pragma once

// JSON configuration documents.
//
// Top-level keys: channel, geometry, protocol, delay_constraint. Field names
// follow the model types. `noise_dbm` and `theta_db` are accepted in place of
// `noise_mw` and `theta`; `m` is a positive integer or "inf"; `q1` may be
// "optimal"; `d_max` may be "inf". Unknown keys are rejected.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "dasa/model.hpp"

namespace dasa {

// Parsed but not yet validated. Absent fields keep the reference scenario
// values; q1 defaults to "optimal".
struct ConfigDocument {
  ChannelParams channel = reference_channel();
  Geometry geometry = reference_geometry();
  ProtocolParams protocol;
  DelayConstraint delay = reference_delay();
  bool q1_optimal = true;
};

// Throws InvalidParameter on unknown keys, wrong types, or malformed JSON.
ConfigDocument parse_config(std::string_view json_text);
ConfigDocument load_config(const std::filesystem::path& path);

// Applies `key=value`. The key is either dotted ("protocol.q2") or bare
// ("q2"). The value is parsed as JSON when possible, otherwise taken as a
// string, so `m=inf` and `q1=optimal` work unquoted.
void apply_override(ConfigDocument& doc, std::string_view assignment);

std::string to_json(const ConfigDocument& doc, int indent = 2);

}  // namespace dasa
