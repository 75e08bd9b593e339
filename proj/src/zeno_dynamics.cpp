#include "zeno/zeno_dynamics.hpp"

#include <cmath>
#include <random>
#include <string>

namespace zeno {

namespace {

constexpr double kShortTimeReliabilityLimit = 0.5;

void require_index(Index n, Index dim, const char* where) {
    if (n < 0 || n >= dim) {
        throw IndexOutOfRange(std::string(where) + ": index " + std::to_string(n) +
                              " outside [0, " + std::to_string(dim) + ")");
    }
}

void require_same_dim(const Hamiltonian& h, const Observable& a, const char* where) {
    if (h.dim() != a.dim()) {
        throw DimensionMismatch(std::string(where) + ": H dim " + std::to_string(h.dim()) +
                                " vs A dim " + std::to_string(a.dim()));
    }
}

// Σ_{mk} ω_mk² P_nm P_nk for one row n.
double frequency_square_sum(const FrequencyTable& freq, const TransitionMatrix& p, Index n) {
    const Index d = p.dim();
    double sum = 0.0;
    for (Index m = 0; m < d; ++m) {
        for (Index k = 0; k < d; ++k) {
            const double w = freq.omega(m, k);
            sum += w * w * p.p(n, m) * p.p(n, k);
        }
    }
    return sum;
}

double clamp01(double x, bool* clamped) {
    if (x < 0.0 || x > 1.0 || std::isnan(x)) {
        if (clamped != nullptr) {
            *clamped = true;
        }
        if (std::isnan(x)) {
            return 0.0;
        }
        return x < 0.0 ? 0.0 : 1.0;
    }
    return x;
}

// Uniform double in [0, 1) from the top 53 bits of the engine output.
double uniform53(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t trial) {
    // splitmix64 finalizer over seed + trial index.
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (trial + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace

ZenoSchedule::ZenoSchedule(double t, long long n) : total_time(t), num_measurements(n) {
    if (!std::isfinite(t) || t <= 0.0) {
        throw InvalidSchedule("ZenoSchedule: total time must be positive and finite, got " +
                              std::to_string(t));
    }
    if (n < 1) {
        throw InvalidSchedule("ZenoSchedule: need at least one measurement, got " +
                              std::to_string(n));
    }
}

FrequencyTable::FrequencyTable(const SpectralData& spectral) {
    const Index d = spectral.dim();
    omega.resize(d, d);
    for (Index m = 0; m < d; ++m) {
        for (Index k = 0; k < d; ++k) {
            omega(m, k) = spectral.values(m) - spectral.values(k);
        }
    }
}

ZenoDiagnostics zeno_diagnostics(const Hamiltonian& h, const ZenoSchedule& schedule) {
    const FrequencyTable freq(h.spectral);
    ZenoDiagnostics diag;
    diag.tau_omega_max = schedule.tau() * freq.max_abs_value();
    diag.short_time_reliable = diag.tau_omega_max <= kShortTimeReliabilityLimit;
    return diag;
}

double energy_variance(const Hamiltonian& h, const Observable& a, Index n0) {
    require_same_dim(h, a, "energy_variance");
    require_index(n0, a.dim(), "energy_variance");
    const ComplexVector psi = a.spectral.vector(n0);
    const ComplexVector h_psi = h.matrix * psi;
    const double mean = psi.dot(h_psi).real();
    return h_psi.squaredNorm() - mean * mean;
}

Complex survival_amplitude(const Hamiltonian& h, const Observable& a, Index n0, double t) {
    require_same_dim(h, a, "survival_amplitude");
    require_index(n0, a.dim(), "survival_amplitude");
    const ComplexVector psi = a.spectral.vector(n0);
    return psi.dot(propagator(h.spectral, t) * psi);
}

OutcomeDistribution free_evolution_distribution(const Hamiltonian& h, const Observable& a,
                                                Index n0, double t) {
    require_same_dim(h, a, "free_evolution_distribution");
    require_index(n0, a.dim(), "free_evolution_distribution");
    const ComplexVector evolved = propagator(h.spectral, t) * a.spectral.vector(n0);
    const ComplexVector overlaps = a.spectral.vectors.adjoint() * evolved;
    return OutcomeDistribution::normalized(overlaps.cwiseAbs2());
}

EntropyValue free_evolution_entropy(const Hamiltonian& h, const Observable& a, Index n0,
                                    double t, LogBase base) {
    return shannon_entropy(free_evolution_distribution(h, a, n0, t), base);
}

OutcomeDistribution free_survival_family(const Hamiltonian& h, const Observable& a, double t) {
    require_same_dim(h, a, "free_survival_family");
    const FrequencyTable freq(h.spectral);
    const TransitionMatrix p = transition_matrix(a, h);
    const Index d = p.dim();
    RealVector weights(d);
    for (Index n = 0; n < d; ++n) {
        double sum = 0.0;
        for (Index m = 0; m < d; ++m) {
            for (Index k = 0; k < d; ++k) {
                sum += std::cos(freq.omega(m, k) * t) * p.p(n, m) * p.p(n, k);
            }
        }
        weights(n) = sum;
    }
    return OutcomeDistribution::paper_literal(std::move(weights));
}

EntropyValue free_evolution_entropy_paper(const Hamiltonian& h, const Observable& a, double t,
                                          LogBase base) {
    return shannon_entropy(free_survival_family(h, a, t), base);
}

double survival_short_time(const Hamiltonian& h, const Observable& a, Index n0, double tau) {
    require_same_dim(h, a, "survival_short_time");
    require_index(n0, a.dim(), "survival_short_time");
    if (!(tau >= 0.0) || !std::isfinite(tau)) {
        throw InvalidSchedule("survival_short_time: tau must be finite and >= 0");
    }
    const FrequencyTable freq(h.spectral);
    const TransitionMatrix p = transition_matrix(a, h);
    return 1.0 - 0.5 * tau * tau * frequency_square_sum(freq, p, n0);
}

double zeno_survival(const Hamiltonian& h, const Observable& a, Index n0,
                     const ZenoSchedule& schedule, ZenoFormula mode, bool* clamped) {
    require_same_dim(h, a, "zeno_survival");
    require_index(n0, a.dim(), "zeno_survival");
    if (clamped != nullptr) {
        *clamped = false;
    }
    const double t_total = schedule.total_time;
    const double n = static_cast<double>(schedule.num_measurements);

    double base = 0.0;
    if (mode == ZenoFormula::Corrected) {
        const double tau = schedule.tau();
        const double step = tau * tau * energy_variance(h, a, n0);
        if (step >= 1.0) {
            throw InvalidSchedule("zeno_survival: tau²·Var = " + std::to_string(step) +
                                  " >= 1; corrected short-time step is outside its validity");
        }
        base = 1.0 - step;
    } else {
        const FrequencyTable freq(h.spectral);
        const TransitionMatrix p = transition_matrix(a, h);
        base = 1.0 - (t_total * t_total / (2.0 * n)) * frequency_square_sum(freq, p, n0);
    }
    return clamp01(std::pow(base, n), clamped);
}

double zeno_entropy_asymptotic(const Hamiltonian& h, const Observable& a,
                               const ZenoSchedule& schedule) {
    require_same_dim(h, a, "zeno_entropy_asymptotic");
    const FrequencyTable freq(h.spectral);
    const TransitionMatrix p = transition_matrix(a, h);
    const double prefactor = schedule.total_time * schedule.total_time /
                             (2.0 * static_cast<double>(schedule.num_measurements));
    double s = 0.0;
    for (Index n = 0; n < p.dim(); ++n) {
        const double inner = frequency_square_sum(freq, p, n);
        s += inner * std::exp(-prefactor * inner);
    }
    return prefactor * s;
}

bool zeno_asymptotic_regime_ok(const Hamiltonian& h, const Observable& a,
                               const ZenoSchedule& schedule) {
    double max_var = 0.0;
    for (Index n = 0; n < a.dim(); ++n) {
        max_var = std::max(max_var, energy_variance(h, a, n));
    }
    const double scale = schedule.total_time * schedule.total_time * max_var /
                         static_cast<double>(schedule.num_measurements);
    return scale <= kShortTimeReliabilityLimit;
}

RealMatrix zeno_step_kernel(const Hamiltonian& h, const Observable& a, double tau) {
    require_same_dim(h, a, "zeno_step_kernel");
    const ComplexMatrix u_in_a_basis =
        a.spectral.vectors.adjoint() * propagator(h.spectral, tau) * a.spectral.vectors;
    return u_in_a_basis.cwiseAbs2();
}

OutcomeDistribution zeno_chain_distribution(const Hamiltonian& h, const Observable& a,
                                            Index n0, const ZenoSchedule& schedule) {
    require_index(n0, a.dim(), "zeno_chain_distribution");
    const RealMatrix kernel = zeno_step_kernel(h, a, schedule.tau());

    // kernel^N by binary exponentiation; entries stay nonnegative and column
    // sums stay 1 to rounding.
    RealMatrix power = RealMatrix::Identity(kernel.rows(), kernel.cols());
    RealMatrix square = kernel;
    long long n = schedule.num_measurements;
    while (n > 0) {
        if (n & 1) {
            power = power * square;
        }
        n >>= 1;
        if (n > 0) {
            square = square * square;
        }
    }
    RealVector q = power.col(n0);
    return OutcomeDistribution::normalized(std::move(q));
}

EntropyValue zeno_chain_entropy(const Hamiltonian& h, const Observable& a, Index n0,
                                const ZenoSchedule& schedule, LogBase base) {
    return shannon_entropy(zeno_chain_distribution(h, a, n0, schedule), base);
}

OutcomeDistribution monte_carlo_zeno(const Hamiltonian& h, const Observable& a, Index n0,
                                     const ZenoSchedule& schedule, long long trials,
                                     std::uint64_t seed) {
    require_index(n0, a.dim(), "monte_carlo_zeno");
    if (trials < 1) {
        throw InvalidSchedule("monte_carlo_zeno: trials must be >= 1");
    }
    const RealMatrix kernel = zeno_step_kernel(h, a, schedule.tau());
    const Index d = kernel.rows();

    RealVector counts = RealVector::Zero(d);
    for (long long trial = 0; trial < trials; ++trial) {
        std::mt19937_64 rng(mix_seed(seed, static_cast<std::uint64_t>(trial)));
        Index state = n0;
        for (long long step = 0; step < schedule.num_measurements; ++step) {
            const double u = uniform53(rng);
            double cdf = 0.0;
            Index next = d - 1; // guard against cdf rounding below 1
            for (Index k = 0; k < d; ++k) {
                cdf += kernel(k, state);
                if (u < cdf) {
                    next = k;
                    break;
                }
            }
            state = next;
        }
        counts(state) += 1.0;
    }
    return OutcomeDistribution::normalized(counts / static_cast<double>(trials));
}

} // namespace zeno
