#include "zeno/continuous.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace zeno {

namespace {

void require_same_dim(const Hamiltonian& h, const Observable& a, const char* where) {
    if (h.dim() != a.dim()) {
        throw DimensionMismatch(std::string(where) + ": H dim " + std::to_string(h.dim()) +
                                " vs A dim " + std::to_string(a.dim()));
    }
}

void require_index(Index n, Index dim, const char* where) {
    if (n < 0 || n >= dim) {
        throw IndexOutOfRange(std::string(where) + ": index " + std::to_string(n) +
                              " outside [0, " + std::to_string(dim) + ")");
    }
}

// u_n = g((a_n − a)/Δa) for every eigenvalue of A.
RealVector coupling_values(const Observable& a, const MeasurementConfig& cfg) {
    RealVector u(a.dim());
    for (Index n = 0; n < a.dim(); ++n) {
        u(n) = cfg.coupling((a.outcome_value(n) - cfg.readout) / cfg.accuracy);
    }
    return u;
}

// Throws AssumptionViolated unless [H, u(A)] commutes with H and A within
// tol::bch_commutator. Returns C = [H, u(A)].
ComplexMatrix require_central_commutator(const Hamiltonian& h, const Observable& a,
                                         const MeasurementConfig& cfg) {
    const ComplexMatrix u = coupling_operator(a, cfg);
    const ComplexMatrix c = commutator(h.matrix, u);
    const double with_h = max_abs(commutator(c, h.matrix));
    const double with_a = max_abs(commutator(c, a.matrix));
    if (with_h > tol::bch_commutator || with_a > tol::bch_commutator) {
        throw AssumptionViolated(
            "commuting-commutator split: ‖[[H,u],H]‖ = " + std::to_string(with_h) +
            ", ‖[[H,u],A]‖ = " + std::to_string(with_a) + " exceed " +
            std::to_string(tol::bch_commutator));
    }
    return c;
}

} // namespace

CouplingFunction CouplingFunction::quadratic() {
    return CouplingFunction([](double x) { return x * x; }, true);
}

CouplingFunction CouplingFunction::custom(std::function<double(double)> g) {
    if (!g) {
        throw InvalidConfig("CouplingFunction: empty callable");
    }
    // Positivity and g(0) = 0 checked on a sample grid.
    if (std::abs(g(0.0)) > 1e-12) {
        throw InvalidConfig("CouplingFunction: g(0) = " + std::to_string(g(0.0)) +
                            ", must vanish at 0");
    }
    for (int i = -50; i <= 50; ++i) {
        const double x = 0.2 * static_cast<double>(i);
        const double gx = g(x);
        if (!std::isfinite(gx) || gx < 0.0) {
            throw InvalidConfig("CouplingFunction: g(" + std::to_string(x) + ") = " +
                                std::to_string(gx) + ", must be finite and >= 0");
        }
    }
    return CouplingFunction(std::move(g), false);
}

double CouplingFunction::operator()(double x) const {
    return g_(x);
}

MeasurementConfig::MeasurementConfig(double f, double a, double delta_a, CouplingFunction g)
    : rate(f), readout(a), accuracy(delta_a), coupling(std::move(g)) {
    if (!std::isfinite(rate) || rate < 0.0) {
        throw InvalidConfig("MeasurementConfig: rate f must be finite and >= 0, got " +
                            std::to_string(rate));
    }
    if (!std::isfinite(readout)) {
        throw InvalidConfig("MeasurementConfig: readout a must be finite");
    }
    if (!std::isfinite(accuracy) || accuracy <= 0.0) {
        throw InvalidConfig("MeasurementConfig: accuracy Δa must be finite and > 0, got " +
                            std::to_string(accuracy));
    }
}

ComplexMatrix coupling_operator(const Observable& a, const MeasurementConfig& cfg) {
    const RealVector u = coupling_values(a, cfg);
    return a.spectral.vectors * u.asDiagonal() * a.spectral.vectors.adjoint();
}

ComplexMatrix effective_hamiltonian(const Hamiltonian& h, const Observable& a,
                                    const MeasurementConfig& cfg) {
    require_same_dim(h, a, "effective_hamiltonian");
    return h.matrix - Complex(0.0, cfg.rate) * coupling_operator(a, cfg);
}

StateVector evolve_continuous(const ComplexMatrix& h_eff, const StateVector& psi0, double t) {
    if (h_eff.rows() != psi0.dim()) {
        throw DimensionMismatch("evolve_continuous: H_eff dim " + std::to_string(h_eff.rows()) +
                                " vs state dim " + std::to_string(psi0.dim()));
    }
    if (!(t >= 0.0) || !std::isfinite(t)) {
        throw InvalidConfig("evolve_continuous: t must be finite and >= 0 (damped evolution "
                            "is not reversible)");
    }
    const ComplexMatrix evolution = matrix_exp_general(Complex(0.0, -t) * h_eff);
    return StateVector::unnormalized(evolution * psi0.amplitudes);
}

OutcomeDistribution continuous_distribution(const Hamiltonian& h, const Observable& a,
                                            Index n0, const MeasurementConfig& cfg, double t,
                                            DistributionMode mode) {
    require_same_dim(h, a, "continuous_distribution");
    require_index(n0, a.dim(), "continuous_distribution");
    const ComplexMatrix h_eff = effective_hamiltonian(h, a, cfg);
    const StateVector evolved = evolve_continuous(h_eff, prepare_eigenstate(a, n0), t);
    const ComplexVector overlaps = a.spectral.vectors.adjoint() * evolved.amplitudes;
    OutcomeDistribution literal = OutcomeDistribution::paper_literal(overlaps.cwiseAbs2());
    if (mode == DistributionMode::PaperLiteral) {
        return literal;
    }
    return normalize(literal);
}

RealVector commuting_case_vnn_sq(const Hamiltonian& h, const Observable& a,
                                 const MeasurementConfig& cfg, double t) {
    require_same_dim(h, a, "commuting_case_vnn_sq");
    const ComplexMatrix c = require_central_commutator(h, a, cfg);
    // Exact split of exp(−iHt − f u t) when [., .] is central:
    // e^{−iHt} e^{−f u t} e^{−(i/2) f t² [H,u]}; the damping factor is pulled
    // out per eigenstate, leaving V = e^{−iHt} e^{−(i/2) f t² [H,u]}.
    const ComplexMatrix bch_factor =
        matrix_exp_general(Complex(0.0, -0.5 * cfg.rate * t * t) * c);
    const ComplexMatrix v = propagator(h.spectral, t) * bch_factor;
    RealVector out(a.dim());
    for (Index n = 0; n < a.dim(); ++n) {
        const ComplexVector psi = a.spectral.vector(n);
        out(n) = std::norm(Complex(psi.dot(v * psi)));
    }
    return out;
}

OutcomeDistribution commuting_case_distribution(const Hamiltonian& h, const Observable& a,
                                                const MeasurementConfig& cfg, double t) {
    const RealVector vnn_sq = commuting_case_vnn_sq(h, a, cfg, t);
    const RealVector u = coupling_values(a, cfg);
    RealVector weights(a.dim());
    for (Index n = 0; n < a.dim(); ++n) {
        weights(n) = std::exp(-2.0 * cfg.rate * u(n) * t) * vnn_sq(n);
    }
    return OutcomeDistribution::paper_literal(std::move(weights));
}

EntropyValue continuous_entropy(const Hamiltonian& h, const Observable& a, Index n0,
                                const MeasurementConfig& cfg, double t, DistributionMode mode,
                                LogBase base) {
    return shannon_entropy(continuous_distribution(h, a, n0, cfg, t, mode), base);
}

double continuous_entropy_paper_all(const Hamiltonian& h, const Observable& a,
                                    const MeasurementConfig& cfg, double t) {
    const RealVector vnn_sq = commuting_case_vnn_sq(h, a, cfg, t);
    const RealVector u_values = coupling_values(a, cfg);
    double s = 0.0;
    for (Index n = 0; n < a.dim(); ++n) {
        const double u_n = u_values(n) * t; // time-integrated coupling
        const double damping = std::exp(-2.0 * cfg.rate * u_n);
        s += 2.0 * cfg.rate * u_n * damping * vnn_sq(n);
        if (vnn_sq(n) > 0.0) {
            s -= damping * vnn_sq(n) * std::log(vnn_sq(n));
        }
    }
    return s;
}

} // namespace zeno
