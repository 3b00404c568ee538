#include "dasa/sim.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numbers>

namespace dasa::sim {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Batch-means accumulator for a ratio sum(y) / sum(x).
class RatioAccumulator {
 public:
  explicit RatioAccumulator(std::uint32_t batches) : y_(batches, 0.0), x_(batches, 0.0) {}

  void add(std::size_t batch, double y, double x) {
    y_[batch] += y;
    x_[batch] += x;
  }

  Estimate finish() const {
    Estimate e;
    double sy = 0.0, sx = 0.0;
    for (std::size_t b = 0; b < y_.size(); ++b) {
      sy += y_[b];
      sx += x_[b];
    }
    e.n = static_cast<std::uint64_t>(std::llround(sx));
    if (sx <= 0.0) return e;
    e.value = sy / sx;
    const double nb = static_cast<double>(y_.size());
    double ss = 0.0;
    for (std::size_t b = 0; b < y_.size(); ++b) {
      const double r = y_[b] - e.value * x_[b];
      ss += r * r;
    }
    const double mean_x = sx / nb;
    e.se = std::sqrt(ss / (nb * (nb - 1.0))) / mean_x;
    return e;
  }

 private:
  std::vector<double> y_;
  std::vector<double> x_;
};

struct SlotResult {
  bool pr_success = false;
  double sr_success = 0.0;  // successes (or conditional probabilities) inside the measure disk
  std::uint64_t sr_links = 0;
};

// Per-slot physics given the access probability and PT activity.
class SlotKernel {
 public:
  SlotKernel(const ValidatedConfig& cfg, double p2_mw, double sim_radius, double measure_radius,
             SrEstimator estimator)
      : alpha_(cfg.channel().alpha),
        theta_(cfg.channel().theta),
        noise_(cfg.channel().noise_mw),
        p1_(cfg.channel().p1_mw),
        p2_(p2_mw),
        d_s_(cfg.geometry().d_s),
        d_p_(cfg.geometry().d_p),
        lambda_s_(cfg.geometry().lambda_s),
        sim_radius_(sim_radius),
        measure_r2_(measure_radius * measure_radius),
        estimator_(estimator),
        alpha4_(alpha_ == 4.0) {
    ds_alpha_ = std::pow(d_s_, alpha_);
    sr_noise_factor_ = std::exp(-theta_ * noise_ * ds_alpha_ / p2_);
  }

  SlotResult run(std::mt19937_64& rng, double q, bool pt_active, bool measure_sr) {
    SlotResult out;
    draw_field(rng, q);
    std::exponential_distribution<double> fade(1.0);

    if (pt_active) {
      const double signal = p1_ * fade(rng) * pathloss(d_p_ * d_p_);
      double interference = 0.0;
      for (std::size_t j = 0; j < tx_x_.size(); ++j)
        interference += p2_ * fade(rng) * pathloss(tx_x_[j] * tx_x_[j] + tx_y_[j] * tx_y_[j]);
      out.pr_success = signal > theta_ * (interference + noise_);
    }

    if (measure_sr) {
      const std::size_t n = tx_x_.size();
      for (std::size_t k = 0; k < n; ++k) {
        const double rx = rx_x_[k], ry = rx_y_[k];
        if (rx * rx + ry * ry > measure_r2_) continue;
        ++out.sr_links;
        const double pt_r2 = (rx - d_p_) * (rx - d_p_) + ry * ry;
        if (estimator_ == SrEstimator::Conditional) {
          double prod = sr_noise_factor_ / interference_product(k, rx, ry);
          if (pt_active) prod /= 1.0 + theta_ * ds_alpha_ * (p1_ / p2_) * pathloss(pt_r2);
          out.sr_success += prod;
        } else {
          const double signal = p2_ * fade(rng) / ds_alpha_;
          double interference = 0.0;
          for (std::size_t j = 0; j < n; ++j) {
            if (j == k) continue;
            const double dx = tx_x_[j] - rx, dy = tx_y_[j] - ry;
            interference += p2_ * fade(rng) * pathloss(dx * dx + dy * dy);
          }
          if (pt_active) interference += p1_ * fade(rng) * pathloss(pt_r2);
          if (signal > theta_ * (interference + noise_)) out.sr_success += 1.0;
        }
      }
    }
    return out;
  }

  double lambda_s() const noexcept { return lambda_s_; }

 private:
  // prod_{j != k} (1 + theta (d_s / r_j)^alpha): the reciprocal of the
  // fading-averaged interference factor at receiver k.
  double interference_product(std::size_t k, double rx, double ry) const {
    const std::size_t n = tx_x_.size();
    const double c = theta_ * ds_alpha_;
    const double* xs = tx_x_.data();
    const double* ys = tx_y_.data();
    auto r2_of = [&](std::size_t j) {
      const double dx = xs[j] - rx, dy = ys[j] - ry;
      return dx * dx + dy * dy;
    };
    if (!alpha4_) {
      double total = 1.0;
      for (std::size_t j = 0; j < n; ++j)
        if (j != k) total *= 1.0 + c * pathloss(r2_of(j));
      return total;
    }
    // alpha = 4: each factor is (r^4 + c) / r^4. Numerators and denominators
    // run in four independent chains and are folded every 16 links, so the
    // hot loop has no division. The own link (r = d_s) is divided out last.
    double total = 1.0;
    std::size_t j = 0;
    for (; j + 16 <= n; j += 16) {
      double num[4] = {1.0, 1.0, 1.0, 1.0};
      double den[4] = {1.0, 1.0, 1.0, 1.0};
      for (std::size_t u = 0; u < 16; u += 4) {
        for (std::size_t l = 0; l < 4; ++l) {
          const double r2 = r2_of(j + u + l);
          const double r4 = r2 * r2;
          num[l] *= r4 + c;
          den[l] *= r4;
        }
      }
      total *= ((num[0] * num[1]) * (num[2] * num[3])) / ((den[0] * den[1]) * (den[2] * den[3]));
    }
    for (; j < n; ++j) {
      const double r2 = r2_of(j);
      total *= 1.0 + c / (r2 * r2);
    }
    const double r2k = r2_of(k);
    return total / (1.0 + c / (r2k * r2k));
  }

  // r^-alpha from r^2.
  double pathloss(double r2) const {
    if (alpha4_) return 1.0 / (r2 * r2);
    return std::pow(r2, -0.5 * alpha_);
  }

  // Fresh PPP on the simulation disk, independently thinned with probability q.
  void draw_field(std::mt19937_64& rng, double q) {
    tx_x_.clear();
    tx_y_.clear();
    rx_x_.clear();
    rx_y_.clear();
    if (q <= 0.0) return;
    std::poisson_distribution<std::uint64_t> count(lambda_s_ * std::numbers::pi * sim_radius_ *
                                                   sim_radius_);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    const std::uint64_t n = count(rng);
    for (std::uint64_t i = 0; i < n; ++i) {
      if (!(u01(rng) < q)) continue;
      const double r = sim_radius_ * std::sqrt(u01(rng));
      const double phi = kTwoPi * u01(rng);
      const double psi = kTwoPi * u01(rng);
      const double x = r * std::cos(phi), y = r * std::sin(phi);
      tx_x_.push_back(x);
      tx_y_.push_back(y);
      rx_x_.push_back(x + d_s_ * std::cos(psi));
      rx_y_.push_back(y + d_s_ * std::sin(psi));
    }
  }

  double alpha_, theta_, noise_, p1_, p2_, d_s_, d_p_, lambda_s_;
  double sim_radius_, measure_r2_;
  SrEstimator estimator_;
  bool alpha4_;
  double ds_alpha_ = 0.0;
  double sr_noise_factor_ = 0.0;
  std::vector<double> tx_x_, tx_y_, rx_x_, rx_y_;
};

double measure_radius_of(const SimSpec& spec, const Geometry& g) {
  return spec.measure_radius.value_or(g.radius);
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::mt19937_64 slot_rng(std::uint64_t seed, std::uint64_t slot) {
  return std::mt19937_64(splitmix64(splitmix64(seed) ^ slot));
}

void validate_spec(const SimSpec& spec, const Geometry& geometry) {
  std::vector<Violation> v;
  if (spec.slots == 0) v.push_back({"slots", "must be positive"});
  if (!(spec.slots > spec.warmup_slots)) v.push_back({"slots", "must exceed warmup_slots"});
  if (!(spec.sim_radius_factor >= 1.0) || !std::isfinite(spec.sim_radius_factor))
    v.push_back({"sim_radius_factor", "must be finite and >= 1"});
  const double mr = measure_radius_of(spec, geometry);
  if (!(mr > 0.0 && mr <= geometry.radius))
    v.push_back({"measure_radius", "must lie in (0, radius]"});
  if (spec.batches < 2) v.push_back({"batches", "must be >= 2"});
  if (spec.slots > spec.warmup_slots && spec.slots - spec.warmup_slots < spec.batches)
    v.push_back({"batches", "must not exceed the number of measured slots"});
  if (!v.empty()) throw InvalidParameter(std::move(v));
}

std::vector<Link> sample_ppp(double intensity, double radius, double d_s, std::mt19937_64& rng) {
  if (!(intensity >= 0.0)) throw InvalidParameter("intensity", "must be >= 0");
  std::vector<Link> out;
  if (intensity == 0.0 || radius <= 0.0) return out;
  std::poisson_distribution<std::uint64_t> count(intensity * std::numbers::pi * radius * radius);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  const std::uint64_t n = count(rng);
  out.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    const double r = radius * std::sqrt(u01(rng));
    const double phi = kTwoPi * u01(rng);
    const double psi = kTwoPi * u01(rng);
    const double x = r * std::cos(phi), y = r * std::sin(phi);
    out.push_back({x, y, x + d_s * std::cos(psi), y + d_s * std::sin(psi)});
  }
  return out;
}

SimStats run(const ValidatedConfig& cfg, const ProtocolParams& protocol, const SimSpec& spec) {
  validate_protocol(protocol, cfg.channel());
  validate_spec(spec, cfg.geometry());

  const auto& g = cfg.geometry();
  const double measure_radius = measure_radius_of(spec, g);
  const double measure_area = std::numbers::pi * measure_radius * measure_radius;
  SlotKernel kernel(cfg, protocol.p2_mw, spec.sim_radius_factor * g.radius, measure_radius,
                    spec.sr_estimator);

  const std::uint64_t total = spec.slots;
  const std::uint64_t measured = total - spec.warmup_slots;
  const std::uint64_t batch_len = (measured + spec.batches - 1) / spec.batches;
  const std::uint32_t nb = spec.batches;

  RatioAccumulator p22(nb), p112(nb), p212(nb), p11(nb);
  RatioAccumulator occ0(nb), occ_mid(nb), occ_above(nb), qbar(nb), delay(nb), ts(nb), mubar(nb);

  SimStats st;
  st.measured_slots = measured;
  std::deque<std::uint64_t> queue;  // arrival slots, FIFO
  std::bernoulli_distribution arrival(protocol.lambda);
  const bool finite_m = protocol.m.is_finite();
  const std::uint64_t m = finite_m ? protocol.m.value() : 0;

  const std::uint64_t q2_begin = total / 4, q2_end = total / 2, q4_begin = 3 * total / 4;
  double sum_q2 = 0.0, sum_q4 = 0.0;

  for (std::uint64_t slot = 0; slot < total; ++slot) {
    auto rng = slot_rng(spec.seed, slot);

    arrival.reset();
    if (arrival(rng)) {
      queue.push_back(slot);
      ++st.total_arrivals;
    }
    const std::uint64_t q_len = queue.size();
    int case_id;
    double access;
    if (q_len == 0) {
      case_id = 1;
      access = protocol.q1;
    } else if (!finite_m || q_len <= m) {
      case_id = 2;
      access = protocol.q2;
    } else {
      case_id = 3;
      access = 0.0;
    }
    const bool pt_active = q_len > 0;
    const bool post = slot >= spec.warmup_slots;
    const SlotResult res = kernel.run(rng, access, pt_active, spec.measure_secondary && post && access > 0.0);

    if (post) {
      const std::size_t b =
          std::min<std::uint64_t>((slot - spec.warmup_slots) / batch_len, nb - 1);
      const double ql = static_cast<double>(q_len);
      const double pr = res.pr_success ? 1.0 : 0.0;
      occ0.add(b, case_id == 1 ? 1.0 : 0.0, 1.0);
      occ_mid.add(b, case_id == 2 ? 1.0 : 0.0, 1.0);
      occ_above.add(b, case_id == 3 ? 1.0 : 0.0, 1.0);
      qbar.add(b, ql, 1.0);
      ts.add(b, res.sr_success / measure_area, 1.0);
      if (pt_active) mubar.add(b, pr, 1.0);
      switch (case_id) {
        case 1:
          ++st.slots_case1;
          p22.add(b, res.sr_success, static_cast<double>(res.sr_links));
          break;
        case 2:
          ++st.slots_case2;
          p112.add(b, pr, 1.0);
          p212.add(b, res.sr_success, static_cast<double>(res.sr_links));
          break;
        default:
          ++st.slots_case3;
          p11.add(b, pr, 1.0);
          break;
      }
      if (res.pr_success) {
        delay.add(b, static_cast<double>(slot - queue.front() + 1), 1.0);
        ++st.departures;
      }
    }
    if (res.pr_success) {
      queue.pop_front();
      ++st.total_departures;
    }

    const double q_now = static_cast<double>(q_len);
    if (slot >= q2_begin && slot < q2_end) sum_q2 += q_now;
    if (slot >= q4_begin) sum_q4 += q_now;
    if (slot + 1 == total / 2) st.q_mid = queue.size();
  }

  st.final_q = queue.size();
  st.emp_p = {p22.finish(), p112.finish(), p212.finish(), p11.finish()};
  st.emp_occupancy = {occ0.finish(), occ_mid.finish(), occ_above.finish()};
  st.emp_qbar = qbar.finish();
  st.emp_delay = delay.finish();
  st.emp_ts = ts.finish();
  st.emp_mu_bar = mubar.finish();

  st.q_second_quarter_mean = q2_end > q2_begin ? sum_q2 / static_cast<double>(q2_end - q2_begin) : 0.0;
  st.q_last_quarter_mean = total > q4_begin ? sum_q4 / static_cast<double>(total - q4_begin) : 0.0;
  const double sq = st.q_second_quarter_mean, lq = st.q_last_quarter_mean;
  st.converged = (sq == 0.0 && lq == 0.0) || std::abs(lq - sq) <= 0.1 * sq;
  return st;
}

SimStats run(const ValidatedConfig& cfg, const SimSpec& spec) {
  return run(cfg, cfg.protocol(), spec);
}

Estimate estimate_p_2_12(const ValidatedConfig& cfg, double q2, double p2_mw,
                         std::uint64_t samples, std::uint64_t seed, SrEstimator estimator) {
  if (samples < 2) throw InvalidParameter("samples", "must be >= 2");
  const auto& g = cfg.geometry();
  SlotKernel kernel(cfg, p2_mw, 3.0 * g.radius, g.radius, estimator);
  const std::uint32_t nb = static_cast<std::uint32_t>(std::min<std::uint64_t>(40, samples));
  const std::uint64_t batch_len = (samples + nb - 1) / nb;
  RatioAccumulator acc(nb);
  for (std::uint64_t i = 0; i < samples; ++i) {
    auto rng = slot_rng(seed, i);
    const auto res = kernel.run(rng, q2, true, true);
    acc.add(std::min<std::uint64_t>(i / batch_len, nb - 1), res.sr_success,
            static_cast<double>(res.sr_links));
  }
  return acc.finish();
}

Estimate pool(const std::vector<Estimate>& parts) {
  Estimate out;
  double n = 0.0;
  for (const auto& p : parts) n += static_cast<double>(p.n);
  if (n <= 0.0) return out;
  double v = 0.0, var = 0.0;
  for (const auto& p : parts) {
    if (p.n == 0) continue;
    const double w = static_cast<double>(p.n) / n;
    v += w * p.value;
    var += w * w * p.se * p.se;
  }
  out.value = v;
  out.se = std::sqrt(var);
  out.n = static_cast<std::uint64_t>(n);
  return out;
}

}  // namespace dasa::sim
