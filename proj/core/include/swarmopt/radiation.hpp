#pragma once

#include <vector>

namespace swarmopt {

struct PatternSample {
    double angle_deg = 0.0;  // relative to boresight, in [0, 360)
    double gain_dbi = 0.0;

    bool operator==(const PatternSample&) const = default;
};

/// Piecewise-linear antenna radiation pattern, gain in dBi as a function of
/// the angle off boresight. Lookups interpolate linearly in dB and wrap
/// around 360 -> 0. A single-sample pattern is omnidirectional.
class RadiationPattern {
  public:
    explicit RadiationPattern(std::vector<PatternSample> samples);

    static RadiationPattern omni(double gain_dbi = 0.0);

    /// Shipped default: +9 dBi boresight tapering to -10 dBi at 180 deg,
    /// 16 samples. Stands in for a measured 360-degree steerable antenna.
    static RadiationPattern default_directional();

    double gain_dbi(double relative_angle_deg) const;

    bool is_omni() const { return samples_.size() == 1; }
    const std::vector<PatternSample>& samples() const { return samples_; }

    bool operator==(const RadiationPattern&) const = default;

  private:
    std::vector<PatternSample> samples_;
};

/// Gain of an antenna steered to beam_deg toward a target at target_bearing_deg
/// (both world angles); the pattern is sampled at their difference.
double antenna_gain_dbi(const RadiationPattern& pattern, double beam_deg, double target_bearing_deg);

}  // namespace swarmopt
