#include "zeno/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace zeno {

namespace {

// Clamp tiny negative weights (rounding from |.|² arithmetic) to zero; reject
// anything more negative than -tol::weight_clamp.
RealVector sanitize_weights(RealVector w, const char* where) {
    for (Index k = 0; k < w.size(); ++k) {
        if (!std::isfinite(w(k))) {
            throw NumericalFailure(std::string(where) + ": non-finite weight at index " +
                                   std::to_string(k));
        }
        if (w(k) < 0.0) {
            if (w(k) < -tol::weight_clamp) {
                throw NegativeWeight(std::string(where) + ": weight " + std::to_string(w(k)) +
                                     " at index " + std::to_string(k));
            }
            w(k) = 0.0;
        }
    }
    return w;
}

} // namespace

StateVector StateVector::normalized(ComplexVector amps) {
    if (!all_finite(amps)) {
        throw NumericalFailure("StateVector: non-finite amplitudes");
    }
    const double n = amps.norm();
    if (std::abs(n - 1.0) > tol::norm_check) {
        throw UnnormalizedInput("StateVector: ‖ψ‖ = " + std::to_string(n) +
                                " is not 1 within " + std::to_string(tol::norm_check));
    }
    return StateVector{std::move(amps), true};
}

StateVector StateVector::unnormalized(ComplexVector amps) {
    if (!all_finite(amps)) {
        throw NumericalFailure("StateVector: non-finite amplitudes");
    }
    return StateVector{std::move(amps), false};
}

double TransitionMatrix::row_col_sum_defect() const {
    double defect = 0.0;
    for (Index i = 0; i < dim(); ++i) {
        defect = std::max(defect, std::abs(p.row(i).sum() - 1.0));
        defect = std::max(defect, std::abs(p.col(i).sum() - 1.0));
    }
    return defect;
}

OutcomeDistribution OutcomeDistribution::normalized(RealVector w) {
    RealVector clean = sanitize_weights(std::move(w), "OutcomeDistribution");
    const double total = clean.sum();
    if (std::abs(total - 1.0) > tol::stochastic_sum) {
        throw NumericalFailure("OutcomeDistribution: normalized weights sum to " +
                               std::to_string(total));
    }
    return OutcomeDistribution{std::move(clean), DistributionMode::Normalized};
}

OutcomeDistribution OutcomeDistribution::paper_literal(RealVector w) {
    RealVector clean = sanitize_weights(std::move(w), "OutcomeDistribution");
    return OutcomeDistribution{std::move(clean), DistributionMode::PaperLiteral};
}

TransitionMatrix transition_matrix(const Observable& a, const Hamiltonian& h) {
    if (a.dim() != h.dim()) {
        throw DimensionMismatch("transition_matrix: A is " + std::to_string(a.dim()) +
                                "-dimensional, H is " + std::to_string(h.dim()));
    }
    // Overlap matrix ⟨ψ_n|φ_m⟩ is unitary, so |.|² is doubly stochastic.
    const ComplexMatrix overlap = a.spectral.vectors.adjoint() * h.spectral.vectors;
    RealMatrix p = overlap.cwiseAbs2();
    p = p.cwiseMax(0.0).cwiseMin(1.0);

    TransitionMatrix out{std::move(p)};
    const double defect = out.row_col_sum_defect();
    if (defect > tol::stochastic_sum) {
        throw NumericalFailure("transition_matrix: row/column sum defect " +
                               std::to_string(defect));
    }
    return out;
}

StateVector prepare_eigenstate(const Observable& a, Index n) {
    if (n < 0 || n >= a.dim()) {
        throw IndexOutOfRange("prepare_eigenstate: index " + std::to_string(n) +
                              " outside [0, " + std::to_string(a.dim()) + ")");
    }
    return StateVector::normalized(a.spectral.vector(n));
}

OutcomeDistribution born_distribution(const StateVector& state, const Observable& a) {
    if (state.dim() != a.dim()) {
        throw DimensionMismatch("born_distribution: state dim " + std::to_string(state.dim()) +
                                " vs observable dim " + std::to_string(a.dim()));
    }
    if (!state.is_normalized || std::abs(state.norm() - 1.0) > tol::norm_check) {
        throw UnnormalizedInput("born_distribution: state must be normalized");
    }
    const ComplexVector overlaps = a.spectral.vectors.adjoint() * state.amplitudes;
    return OutcomeDistribution::normalized(overlaps.cwiseAbs2());
}

} // namespace zeno
