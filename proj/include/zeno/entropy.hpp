// entropy.hpp — Shannon entropy of outcome distributions, with explicit
// log-base and zero-weight conventions.

#pragma once

#include "zeno/model.hpp"

namespace zeno {

enum class LogBase { Nats, Bits };

// S = −Σ w log w. For normalized distributions over d outcomes,
// 0 <= value <= log d; no bound is asserted for paper-literal weight vectors,
// whose verbatim value may even be negative when a weight exceeds 1.
struct EntropyValue {
    double value = 0.0;
    LogBase base = LogBase::Nats;

    double in_nats() const;
    double in_bits() const;
};

// −Σ_n w_n log w_n with the explicit convention 0·log 0 = 0. Normalized
// distributions get the result clamped at 0 against rounding; paper-literal
// vectors are evaluated verbatim.
EntropyValue shannon_entropy(const OutcomeDistribution& dist, LogBase base = LogBase::Nats);

// Divide by the total weight; mode becomes Normalized. Throws ZeroTotalWeight
// when the total is not positive (all weights damped below ~1e-300).
OutcomeDistribution normalize(const OutcomeDistribution& dist);

} // namespace zeno
