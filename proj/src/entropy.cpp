#include "zeno/entropy.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace zeno {

double EntropyValue::in_nats() const {
    return base == LogBase::Nats ? value : value * std::numbers::ln2;
}

double EntropyValue::in_bits() const {
    return base == LogBase::Bits ? value : value / std::numbers::ln2;
}

EntropyValue shannon_entropy(const OutcomeDistribution& dist, LogBase base) {
    double s = 0.0;
    for (Index n = 0; n < dist.size(); ++n) {
        const double w = dist.weights(n);
        if (w < -tol::weight_clamp) {
            throw NegativeWeight("shannon_entropy: weight " + std::to_string(w) +
                                 " at index " + std::to_string(n));
        }
        if (w > 0.0) { // 0·log 0 = 0 by this branch, never by arithmetic
            s -= w * std::log(w);
        }
    }
    if (dist.mode == DistributionMode::Normalized && s < 0.0) {
        s = 0.0; // rounding residue; true entropy of a distribution is nonnegative
    }
    if (base == LogBase::Bits) {
        s /= std::numbers::ln2;
    }
    return EntropyValue{s, base};
}

OutcomeDistribution normalize(const OutcomeDistribution& dist) {
    const double total = dist.total();
    if (!(total > 1e-300)) {
        throw ZeroTotalWeight("normalize: total weight " + std::to_string(total));
    }
    return OutcomeDistribution::normalized(dist.weights / total);
}

} // namespace zeno
