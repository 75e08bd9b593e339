// continuous.hpp — continuous-measurement model: non-Hermitian effective
// Hamiltonian, non-unitary evolution, the commuting-commutator closed form,
// and the resulting entropies as functions of the measurement rate and
// accuracy.

#pragma once

#include <functional>

#include "zeno/entropy.hpp"
#include "zeno/model.hpp"

namespace zeno {

// System-apparatus coupling g: must satisfy g(x) >= 0 and g(0) = 0.
// The quadratic default g(x) = x² gives Gaussian-type damping. Custom
// couplings are validated on a sample grid at construction.
class CouplingFunction {
public:
    static CouplingFunction quadratic();
    static CouplingFunction custom(std::function<double(double)> g);

    double operator()(double x) const;
    bool is_quadratic() const { return quadratic_; }

private:
    CouplingFunction(std::function<double(double)> g, bool quadratic)
        : g_(std::move(g)), quadratic_(quadratic) {}

    std::function<double(double)> g_;
    bool quadratic_ = true;
};

// Continuous-measurement parameters: rate of information gain f (1/time),
// apparatus readout a (units of A), accuracy Δa > 0 (units of A), and the
// coupling g. rate = 0 switches the measurement off (reduces to free
// evolution).
struct MeasurementConfig {
    double rate = 1.0;     // f >= 0
    double readout = 0.0;  // a
    double accuracy = 1.0; // Δa > 0
    CouplingFunction coupling = CouplingFunction::quadratic();

    MeasurementConfig(double f, double a, double delta_a,
                      CouplingFunction g = CouplingFunction::quadratic());
};

// u(A) = g((A − a)/Δa) by spectral calculus: Σ_n g((a_n − a)/Δa)|ψ_n⟩⟨ψ_n|.
ComplexMatrix coupling_operator(const Observable& a, const MeasurementConfig& cfg);

// H_eff = H − i f u(A). The anti-Hermitian part is negative semidefinite,
// so evolution never grows norms.
ComplexMatrix effective_hamiltonian(const Hamiltonian& h, const Observable& a,
                                    const MeasurementConfig& cfg);

// |ψ(t)⟩ = exp(−i H_eff t)|ψ0⟩, t >= 0. Result is unnormalized (norm <= 1 + 1e-9).
StateVector evolve_continuous(const ComplexMatrix& h_eff, const StateVector& psi0, double t);

// Outcome weights p_k = |⟨ψ_k| exp(−i H_eff t) |ψ_n0⟩|². PaperLiteral returns
// the raw subnormalized weights; Normalized divides by the total and throws
// ZeroTotalWeight when the state is fully damped.
OutcomeDistribution continuous_distribution(const Hamiltonian& h, const Observable& a,
                                            Index n0, const MeasurementConfig& cfg, double t,
                                            DistributionMode mode);

// |V_nn|² with V_nn = ⟨ψ_n| e^{−iHt} e^{−(i/2) f t² [H, u(A)]} |ψ_n⟩ — the
// survival matrix elements of the commuting-commutator split. Requires the
// split's precondition (see commuting_case_distribution).
RealVector commuting_case_vnn_sq(const Hamiltonian& h, const Observable& a,
                                 const MeasurementConfig& cfg, double t);

// Closed-form survival weights p_n = e^{−2 f g((a_n − a)/Δa) t} |V_nn|², one
// entry per preparation n (paper-literal mode). Valid only when [H, u(A)]
// commutes with both H and A within tol::bch_commutator; throws
// AssumptionViolated otherwise instead of returning a wrong closed form.
OutcomeDistribution commuting_case_distribution(const Hamiltonian& h, const Observable& a,
                                                const MeasurementConfig& cfg, double t);

// Entropy of the continuous-measurement outcome statistics from preparation
// n0. Normalized mode: Shannon entropy of the renormalized distribution (the
// physical default). PaperLiteral mode: −Σ p log p evaluated verbatim on the
// subnormalized weights.
EntropyValue continuous_entropy(const Hamiltonian& h, const Observable& a, Index n0,
                                const MeasurementConfig& cfg, double t, DistributionMode mode,
                                LogBase base = LogBase::Nats);

// All-preparations closed-form entropy (nats):
// S = 2f Σ_n u_n e^{−2f u_n}|V_nn|² − Σ_n e^{−2f u_n}|V_nn|² log|V_nn|²,
// with u_n = g((a_n − a)/Δa)·t. Subject to the same commuting-commutator
// precondition as commuting_case_distribution.
double continuous_entropy_paper_all(const Hamiltonian& h, const Observable& a,
                                    const MeasurementConfig& cfg, double t);

} // namespace zeno
