#pragma once
// Channel log-likelihood ratios for the mod-2 integer partition of an AWGN
// channel: given a received real value r whose transmitted point was an
// integer, the bit LLR compares the evidence for the even-integer class
// against the odd-integer class. Both likelihoods are alias sums of the
// Gaussian density over the integers of that class; aliases farther than
// 8 sigma from r are negligible at double precision and are dropped.

#include <algorithm>
#include <cmath>
#include <vector>

#include "errors.hpp"

namespace ldpclat {

inline constexpr double kLlrMax = 64.0;

inline double clamp_llr(double x) { return std::clamp(x, -kLlrMax, kLlrMax); }

inline double channel_llr(double r, double sigma) {
    if (!(sigma > 0.0)) throw ConfigError("channel_llr: sigma must be positive");
    double center = std::nearbyint(r);
    int reach = std::max(2, static_cast<int>(std::ceil(8.0 * sigma)) + 1);
    double inv = 1.0 / (2.0 * sigma * sigma);
    bool center_odd = std::llround(center) & 1;
    // log-sum-exp per parity class, stabilized by the per-class maximum
    double max_exp[2] = {-HUGE_VAL, -HUGE_VAL};
    for (int k = -reach; k <= reach; ++k) {
        double d = r - (center + k);
        double e = -d * d * inv;
        int cls = (center_odd ^ (k & 1)) ? 1 : 0;
        max_exp[cls] = std::max(max_exp[cls], e);
    }
    double sum[2] = {0.0, 0.0};
    for (int k = -reach; k <= reach; ++k) {
        double d = r - (center + k);
        double e = -d * d * inv;
        int cls = (center_odd ^ (k & 1)) ? 1 : 0;
        sum[cls] += std::exp(e - max_exp[cls]);
    }
    double llr = (max_exp[0] + std::log(sum[0])) - (max_exp[1] + std::log(sum[1]));
    return clamp_llr(llr);
}

inline std::vector<double> channel_llrs(const std::vector<double>& r, double sigma) {
    std::vector<double> out(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) out[i] = channel_llr(r[i], sigma);
    return out;
}

}  // namespace ldpclat
