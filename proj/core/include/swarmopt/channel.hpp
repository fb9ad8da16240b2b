#pragma once

#include <random>
#include <span>
#include <vector>

#include "swarmopt/geometry.hpp"
#include "swarmopt/radiation.hpp"

namespace swarmopt {

/// Log-distance channel parameters. Powers in dBm, losses/gains in dB,
/// bandwidth in Hz, distances in meters.
struct ChannelParams {
    double bandwidth_hz = 2.4e9;
    double tx_power_dbm = 20.0;
    double jammer_power_dbm = 100.0;
    double path_loss_exponent = 2.0;
    double ref_distance_m = 1.0;
    double ref_loss_db = 30.0;
    double noise_floor_dbm = -100.0;
    double shadowing_sigma_db = 0.0;  // 0 => deterministic channel

    bool operator==(const ChannelParams&) const = default;

    void validate() const;
};

struct UavState {
    Position position;
    double beam_deg = 0.0;  // stored normalized to [0, 360)

    bool operator==(const UavState&) const = default;
};

/// Adversarial transmitter. power_dbm = -infinity means "off".
/// The pattern's boresight is fixed at world angle 0.
struct Jammer {
    Position position;
    double power_dbm = 100.0;
    RadiationPattern pattern = RadiationPattern::omni();

    bool operator==(const Jammer&) const = default;

    bool is_off() const;
    static double off_power();
};

/// Directed link capacities in bps. entries are row-major, diagonal is 0.
class CapacityMatrix {
  public:
    CapacityMatrix() = default;
    explicit CapacityMatrix(std::size_t n) : n_(n), c_(n * n, 0.0) {}

    std::size_t size() const { return n_; }
    double at(std::size_t i, std::size_t j) const { return c_[i * n_ + j]; }
    double& at(std::size_t i, std::size_t j) { return c_[i * n_ + j]; }
    std::span<const double> raw() const { return c_; }

    bool operator==(const CapacityMatrix&) const = default;

  private:
    std::size_t n_ = 0;
    std::vector<double> c_;
};

/// PL0 + 10*gamma*log10(d/d0) + shadow. Throws std::domain_error for d <= 0;
/// callers clamp d to d0 below the reference distance.
double path_loss_db(double distance_m, const ChannelParams& params, double shadow_db = 0.0);

/// One shadowing draw, zero-mean Gaussian with sigma from params (dB).
double draw_shadow_db(const ChannelParams& params, std::mt19937_64& rng);

double received_power_dbm(double tx_dbm, double gain_tx_dbi, double gain_rx_dbi, double path_loss_db);

double dbm_to_mw(double dbm);

/// mW(signal) / (mW(noise) + sum of mW(interference)); -inf terms contribute 0.
double sinr_linear(double signal_dbm, std::span<const double> interference_dbm, double noise_floor_dbm);

/// Shannon-Hartley: B * log2(1 + sinr).
double link_capacity_bps(double bandwidth_hz, double sinr);

/// Full per-link chain over every ordered UAV pair: path loss, steering gains
/// at both ends, jammer interference at the receiver, SINR, capacity.
/// shadow_rng supplies shadowing draws when params.shadowing_sigma_db > 0
/// (jammer-to-receiver links first, then pair links in row-major order).
/// Throws std::invalid_argument naming any co-located UAV pair.
CapacityMatrix build_capacity_matrix(std::span<const UavState> swarm, const Jammer& jammer,
                                     const RadiationPattern& pattern, const ChannelParams& params,
                                     std::mt19937_64* shadow_rng = nullptr);

}  // namespace swarmopt
