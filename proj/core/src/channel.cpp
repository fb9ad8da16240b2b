#include "swarmopt/channel.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace swarmopt {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kLn10Over10 = 0.23025850929940457;  // ln(10)/10
}  // namespace

void ChannelParams::validate() const {
    if (!(bandwidth_hz > 0.0)) throw std::invalid_argument("channel.bandwidth_hz must be > 0");
    if (!(ref_distance_m > 0.0)) throw std::invalid_argument("channel.ref_distance_m must be > 0");
    if (!(path_loss_exponent >= 0.0))
        throw std::invalid_argument("channel.path_loss_exponent must be >= 0");
    if (!(shadowing_sigma_db >= 0.0))
        throw std::invalid_argument("channel.shadowing_sigma_db must be >= 0");
    if (!std::isfinite(tx_power_dbm)) throw std::invalid_argument("channel.tx_power_dbm must be finite");
    if (!std::isfinite(noise_floor_dbm))
        throw std::invalid_argument("channel.noise_floor_dbm must be finite");
}

bool Jammer::is_off() const { return power_dbm == kNegInf; }

double Jammer::off_power() { return kNegInf; }

double path_loss_db(double distance_m, const ChannelParams& params, double shadow_db) {
    if (!(distance_m > 0.0))
        throw std::domain_error("path_loss_db: distance must be > 0, got " + std::to_string(distance_m));
    return params.ref_loss_db +
           10.0 * params.path_loss_exponent * std::log10(distance_m / params.ref_distance_m) +
           shadow_db;
}

double draw_shadow_db(const ChannelParams& params, std::mt19937_64& rng) {
    if (params.shadowing_sigma_db == 0.0) return 0.0;
    std::normal_distribution<double> dist(0.0, params.shadowing_sigma_db);
    return dist(rng);
}

double received_power_dbm(double tx_dbm, double gain_tx_dbi, double gain_rx_dbi, double path_loss_db) {
    return tx_dbm + gain_tx_dbi + gain_rx_dbi - path_loss_db;
}

double dbm_to_mw(double dbm) { return std::exp(dbm * kLn10Over10); }

double sinr_linear(double signal_dbm, std::span<const double> interference_dbm, double noise_floor_dbm) {
    double denom = dbm_to_mw(noise_floor_dbm);
    for (double i : interference_dbm) denom += dbm_to_mw(i);
    return dbm_to_mw(signal_dbm) / denom;
}

double link_capacity_bps(double bandwidth_hz, double sinr) {
    return bandwidth_hz * std::log2(1.0 + sinr);
}

CapacityMatrix build_capacity_matrix(std::span<const UavState> swarm, const Jammer& jammer,
                                     const RadiationPattern& pattern, const ChannelParams& params,
                                     std::mt19937_64* shadow_rng) {
    const std::size_t n = swarm.size();
    if (n < 2) throw std::invalid_argument("capacity matrix: need at least 2 UAVs");

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (distance(swarm[i].position, swarm[j].position) == 0.0) {
                throw std::invalid_argument("capacity matrix: UAVs " + std::to_string(i) + " and " +
                                            std::to_string(j) + " co-located at (" +
                                            std::to_string(swarm[i].position.x) + ", " +
                                            std::to_string(swarm[i].position.y) + ")");
            }
        }
    }

    const bool shadowing = shadow_rng != nullptr && params.shadowing_sigma_db > 0.0;

    // Interference each receiver sees from the jammer; shared by every link
    // ending at that receiver.
    std::vector<double> jam_at(n, kNegInf);
    if (!jammer.is_off()) {
        for (std::size_t j = 0; j < n; ++j) {
            const double d = distance(jammer.position, swarm[j].position);
            double gain_tx, gain_rx;
            if (d == 0.0) {
                // Jammer sitting on the receiver: bearing undefined, use boresight.
                gain_tx = jammer.pattern.gain_dbi(0.0);
                gain_rx = pattern.gain_dbi(0.0);
            } else {
                gain_tx = antenna_gain_dbi(jammer.pattern, 0.0, bearing_deg(jammer.position, swarm[j].position));
                gain_rx = antenna_gain_dbi(pattern, swarm[j].beam_deg,
                                           bearing_deg(swarm[j].position, jammer.position));
            }
            const double shadow = shadowing ? draw_shadow_db(params, *shadow_rng) : 0.0;
            const double pl = path_loss_db(std::max(d, params.ref_distance_m), params, shadow);
            jam_at[j] = received_power_dbm(jammer.power_dbm, gain_tx, gain_rx, pl);
        }
    }

    CapacityMatrix cm(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            const double d = distance(swarm[i].position, swarm[j].position);
            const double shadow = shadowing ? draw_shadow_db(params, *shadow_rng) : 0.0;
            const double pl = path_loss_db(std::max(d, params.ref_distance_m), params, shadow);
            const double gain_tx =
                antenna_gain_dbi(pattern, swarm[i].beam_deg, bearing_deg(swarm[i].position, swarm[j].position));
            const double gain_rx =
                antenna_gain_dbi(pattern, swarm[j].beam_deg, bearing_deg(swarm[j].position, swarm[i].position));
            const double signal = received_power_dbm(params.tx_power_dbm, gain_tx, gain_rx, pl);
            const double sinr = sinr_linear(signal, {&jam_at[j], 1}, params.noise_floor_dbm);
            cm.at(i, j) = link_capacity_bps(params.bandwidth_hz, sinr);
        }
    }
    return cm;
}

}  // namespace swarmopt
