#include "swarmopt/radiation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "swarmopt/geometry.hpp"

namespace swarmopt {

RadiationPattern::RadiationPattern(std::vector<PatternSample> samples) : samples_(std::move(samples)) {
    if (samples_.empty()) throw std::invalid_argument("radiation pattern: needs at least one sample");
    if (samples_.front().angle_deg != 0.0)
        throw std::invalid_argument("radiation pattern: first sample must be at 0 degrees");
    for (std::size_t k = 0; k < samples_.size(); ++k) {
        const auto& s = samples_[k];
        if (!(s.angle_deg >= 0.0 && s.angle_deg < 360.0))
            throw std::invalid_argument("radiation pattern: angle " + std::to_string(s.angle_deg) +
                                        " outside [0, 360)");
        if (!std::isfinite(s.gain_dbi))
            throw std::invalid_argument("radiation pattern: non-finite gain at " +
                                        std::to_string(s.angle_deg) + " degrees");
        if (k > 0 && !(s.angle_deg > samples_[k - 1].angle_deg))
            throw std::invalid_argument("radiation pattern: angles must be strictly increasing");
    }
}

RadiationPattern RadiationPattern::omni(double gain_dbi) {
    return RadiationPattern({{0.0, gain_dbi}});
}

RadiationPattern RadiationPattern::default_directional() {
    return RadiationPattern({
        {0.0, 9.0},
        {22.5, 8.28},
        {45.0, 6.22},
        {67.5, 3.14},
        {90.0, -0.5},
        {112.5, -4.14},
        {135.0, -7.22},
        {157.5, -9.28},
        {180.0, -10.0},
        {202.5, -9.28},
        {225.0, -7.22},
        {247.5, -4.14},
        {270.0, -0.5},
        {292.5, 3.14},
        {315.0, 6.22},
        {337.5, 8.28},
    });
}

double RadiationPattern::gain_dbi(double relative_angle_deg) const {
    if (samples_.size() == 1) return samples_.front().gain_dbi;

    const double a = normalize_deg(relative_angle_deg);
    // First sample with angle > a; its predecessor starts the segment.
    auto it = std::upper_bound(samples_.begin(), samples_.end(), a,
                               [](double v, const PatternSample& s) { return v < s.angle_deg; });
    const std::size_t hi = static_cast<std::size_t>(it - samples_.begin());
    const std::size_t lo = hi - 1;  // hi >= 1 since samples_[0].angle == 0 <= a

    double a0 = samples_[lo].angle_deg;
    double g0 = samples_[lo].gain_dbi;
    double a1, g1;
    if (hi == samples_.size()) {  // wrap segment: last sample -> first sample at 360
        a1 = 360.0;
        g1 = samples_.front().gain_dbi;
    } else {
        a1 = samples_[hi].angle_deg;
        g1 = samples_[hi].gain_dbi;
    }
    const double t = (a - a0) / (a1 - a0);
    return g0 + (g1 - g0) * t;
}

double antenna_gain_dbi(const RadiationPattern& pattern, double beam_deg, double target_bearing_deg) {
    return pattern.gain_dbi(target_bearing_deg - beam_deg);
}

}  // namespace swarmopt
