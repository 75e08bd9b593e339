// zeno_dynamics.hpp — free-evolution outcome distributions, short-time and
// N-measurement survival formulas, the exact measurement-outcome Markov chain
// for repeated rank-1 projective measurements, and a seeded Monte Carlo
// trajectory sampler.

#pragma once

#include <cstdint>

#include "zeno/entropy.hpp"
#include "zeno/model.hpp"

namespace zeno {

// N instantaneous projective measurements at times τ, 2τ, …, Nτ = T.
struct ZenoSchedule {
    double total_time = 0.0;   // T > 0
    long long num_measurements = 0; // N >= 1

    ZenoSchedule(double t, long long n);

    double tau() const { return total_time / static_cast<double>(num_measurements); }
};

// Transition frequencies ω_mk = E_m − E_k (angular, ħ = 1).
// Antisymmetric with zero diagonal.
struct FrequencyTable {
    RealMatrix omega;

    explicit FrequencyTable(const SpectralData& spectral);

    double max_abs_value() const { return max_abs(omega); }
};

// τ·max|ω_mk|; the quadratic short-time formulas are flagged unreliable above 0.5.
struct ZenoDiagnostics {
    double tau_omega_max = 0.0;
    bool short_time_reliable = true;
};

ZenoDiagnostics zeno_diagnostics(const Hamiltonian& h, const ZenoSchedule& schedule);

// ⟨ψ_n0|H|ψ_n0⟩ and Var_n0(H) = ⟨ψ_n0|H²|ψ_n0⟩ − ⟨ψ_n0|H|ψ_n0⟩² for the n0-th
// eigenstate of A.
double energy_variance(const Hamiltonian& h, const Observable& a, Index n0);

// ⟨ψ_n0|U(t)|ψ_n0⟩.
Complex survival_amplitude(const Hamiltonian& h, const Observable& a, Index n0, double t);

// Born distribution of outcomes after free evolution for time t from |ψ_n0⟩:
// p_k(t) = |⟨ψ_k|U(t)|ψ_n0⟩|², normalized.
OutcomeDistribution free_evolution_distribution(const Hamiltonian& h, const Observable& a,
                                                Index n0, double t);

EntropyValue free_evolution_entropy(const Hamiltonian& h, const Observable& a, Index n0,
                                    double t, LogBase base = LogBase::Nats);

// Survival weights of every preparation n under free evolution, evaluated in
// the cosine double-sum form: w_n = Σ_{mk} cos(ω_mk t) P_nm P_nk. The family is
// not a single normalized distribution; returned in paper-literal mode.
OutcomeDistribution free_survival_family(const Hamiltonian& h, const Observable& a, double t);

// −Σ_n w_n log w_n evaluated verbatim on the survival family above.
EntropyValue free_evolution_entropy_paper(const Hamiltonian& h, const Observable& a, double t,
                                          LogBase base = LogBase::Nats);

// Quadratic short-time survival after one measurement at time τ:
// p = 1 − (τ²/2) Σ_{mk} ω_mk² P_n0m P_n0k. Algebraically equals 1 − τ²·Var_n0(H).
double survival_short_time(const Hamiltonian& h, const Observable& a, Index n0, double tau);

// Two closed forms for the survival after N measurements in [0, T].
// Corrected: (1 − τ²·Var)^N with τ = T/N — the short-time step iterated, which
// tends to 1 as N → ∞. PaperLiteral: (1 − (T²/2N)·Σ ω²PP)^N as published.
// Results are clamped to [0, 1]; *clamped reports whether clamping fired.
// Corrected mode throws InvalidSchedule when τ²·Var >= 1 (outside the formula's
// validity) instead of clamping the base.
enum class ZenoFormula { Corrected, PaperLiteral };

double zeno_survival(const Hamiltonian& h, const Observable& a, Index n0,
                     const ZenoSchedule& schedule, ZenoFormula mode, bool* clamped = nullptr);

// Large-N closed form for the entropy after N measurements, summed over all
// preparations n (nats):
// S = (T²/2N) Σ_n [ Σ_{mk} ω² P_nm P_nk · exp(−(T²/2N) Σ_{mk} ω² P_nm P_nk) ].
// A diagnostic quantity; the exact chain entropy below is the headline number.
double zeno_entropy_asymptotic(const Hamiltonian& h, const Observable& a,
                               const ZenoSchedule& schedule);

// True iff the large-N form above is inside its validity regime,
// T²·max_n Var_n / N <= 0.5.
bool zeno_asymptotic_regime_ok(const Hamiltonian& h, const Observable& a,
                               const ZenoSchedule& schedule);

// Single-step outcome kernel M_kj(τ) = |⟨ψ_k|U(τ)|ψ_j⟩|² (column-stochastic
// over k; doubly stochastic overall).
RealMatrix zeno_step_kernel(const Hamiltonian& h, const Observable& a, double tau);

// Exact distribution of the N-th measurement outcome under repeated rank-1
// collapse: q = M(τ)^N e_{n0}, normalized.
OutcomeDistribution zeno_chain_distribution(const Hamiltonian& h, const Observable& a,
                                            Index n0, const ZenoSchedule& schedule);

EntropyValue zeno_chain_entropy(const Hamiltonian& h, const Observable& a, Index n0,
                                const ZenoSchedule& schedule, LogBase base = LogBase::Nats);

// Empirical frequencies of the final outcome over `trials` simulated
// measurement trajectories. Pure function of its arguments: trial substreams
// are derived from (seed, trial index), so results do not depend on execution
// order.
OutcomeDistribution monte_carlo_zeno(const Hamiltonian& h, const Observable& a, Index n0,
                                     const ZenoSchedule& schedule, long long trials,
                                     std::uint64_t seed);

} // namespace zeno
