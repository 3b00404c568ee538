#pragma once

// Configuration types shared by every module.
//
// Units: powers in milliwatts, distances in meters, rates in packets/slot.
// theta is stored linear.

#include <cstdint>
#include <optional>
#include <string>

#include "dasa/errors.hpp"

namespace dasa {

struct ChannelParams {
  double alpha = 4.0;       // pathloss exponent, > 2
  double theta = 1.0;       // SINR threshold, linear
  double noise_mw = 0.0;    // sigma^2
  double p1_mw = 100.0;     // primary transmit power
  double p2_max_mw = 0.02;  // maximum secondary transmit power

  bool operator==(const ChannelParams&) const = default;
};

struct Geometry {
  double d_p = 300.0;        // PT-PR distance
  double d_s = 40.0;         // ST-SR distance
  double radius = 500.0;     // network disk radius R
  double lambda_s = 2e-4;    // ST density per m^2

  bool operator==(const Geometry&) const = default;
};

// Congestion threshold M: either a positive integer or infinite (no
// congestion control).
class CongestionThreshold {
 public:
  static CongestionThreshold finite(std::uint64_t m) { return CongestionThreshold(m); }
  static CongestionThreshold infinite() { return CongestionThreshold(); }

  bool is_finite() const noexcept { return m_.has_value(); }
  bool is_infinite() const noexcept { return !m_.has_value(); }

  // Throws std::logic_error when infinite.
  std::uint64_t value() const;

  std::string to_string() const;

  bool operator==(const CongestionThreshold&) const = default;

 private:
  CongestionThreshold() = default;
  explicit CongestionThreshold(std::uint64_t m) : m_(m) {}

  std::optional<std::uint64_t> m_;
};

struct ProtocolParams {
  double lambda = 0.3;  // Bernoulli arrival rate, [0, 1)
  double q1 = 0.0;      // ST access probability when Q = 0
  double q2 = 0.0;      // ST access probability when 1 <= Q <= M
  CongestionThreshold m = CongestionThreshold::infinite();
  double p2_mw = 0.01;  // secondary transmit power, (0, p2_max_mw]

  bool operator==(const ProtocolParams&) const = default;
};

struct DelayConstraint {
  double d_max = 3.5;  // slots/packet, > 1; +inf allowed

  bool operator==(const DelayConstraint&) const = default;
};

class ValidatedConfig;

ValidatedConfig validate(const ChannelParams& channel, const Geometry& geometry,
                         const ProtocolParams& protocol);
ValidatedConfig validate(const ChannelParams& channel, const Geometry& geometry,
                         const ProtocolParams& protocol,
                         const DelayConstraint& delay);

// Immutable bundle whose invariants have been checked. Only `validate` builds
// one, so holding a ValidatedConfig is proof of validity.
class ValidatedConfig {
 public:
  const ChannelParams& channel() const noexcept { return channel_; }
  const Geometry& geometry() const noexcept { return geometry_; }
  const ProtocolParams& protocol() const noexcept { return protocol_; }
  const std::optional<DelayConstraint>& delay() const noexcept { return delay_; }

  // Re-validates with a different protocol; throws InvalidParameter.
  ValidatedConfig with_protocol(const ProtocolParams& protocol) const;
  ValidatedConfig with_delay(const DelayConstraint& delay) const;

  bool operator==(const ValidatedConfig&) const = default;

 private:
  ValidatedConfig(ChannelParams c, Geometry g, ProtocolParams p,
                  std::optional<DelayConstraint> d)
      : channel_(c), geometry_(g), protocol_(p), delay_(d) {}

  friend ValidatedConfig validate(const ChannelParams&, const Geometry&,
                                  const ProtocolParams&);
  friend ValidatedConfig validate(const ChannelParams&, const Geometry&,
                                  const ProtocolParams&, const DelayConstraint&);

  ChannelParams channel_;
  Geometry geometry_;
  ProtocolParams protocol_;
  std::optional<DelayConstraint> delay_;
};

// Protocol checks on their own, against an already-valid channel. Throws
// InvalidParameter listing every violation.
void validate_protocol(const ProtocolParams& protocol, const ChannelParams& channel);

double dbm_to_mw(double x_dbm);
double mw_to_dbm(double x_mw);
double db_to_linear(double x_db);
double linear_to_db(double x);

// Reference scenario: lambda_s = 2e-4, d_s = 40 m, d_p = 300 m,
// R = 500 m, alpha = 4, P1 = 100 mW, P2max = 0.02 mW, sigma^2 = -113.97 dBm,
// theta = 0 dB, D_max = 3.5.
ChannelParams reference_channel();
Geometry reference_geometry();
DelayConstraint reference_delay();

}  // namespace dasa
