// model.hpp — observables, Hamiltonians, state preparation, Born-rule outcome
// distributions, and the doubly stochastic transition matrix between the two
// eigenbases.

#pragma once

#include <utility>

#include "zeno/linalg.hpp"

namespace zeno {

// Hermitian operator together with its cached spectral decomposition.
// Eigenvalues ascending, deterministic phases; see hermitian_eigendecomposition.
struct HermitianOperator {
    ComplexMatrix matrix;
    SpectralData spectral;

    explicit HermitianOperator(ComplexMatrix m, double hermiticity_tol = tol::hermiticity)
        : matrix(std::move(m)), spectral(hermitian_eigendecomposition(matrix, hermiticity_tol)) {}

    Index dim() const { return matrix.rows(); }
};

// Measured observable A; outcome n labels the n-th eigenstate in ascending
// eigenvalue order (rank-1 von Neumann measurement).
struct Observable : HermitianOperator {
    using HermitianOperator::HermitianOperator;

    double outcome_value(Index n) const { return spectral.values(n); } // a_n
};

// System Hamiltonian H (energy units, ħ = 1).
struct Hamiltonian : HermitianOperator {
    using HermitianOperator::HermitianOperator;

    double energy(Index m) const { return spectral.values(m); } // E_m
};

// Pure state. Continuous (non-unitary) evolution produces unnormalized states,
// tagged accordingly; everything else requires ‖ψ‖ = 1 within tol::norm_check.
struct StateVector {
    ComplexVector amplitudes;
    bool is_normalized = false;

    static StateVector normalized(ComplexVector amps);
    static StateVector unnormalized(ComplexVector amps);

    Index dim() const { return amplitudes.size(); }
    double norm() const { return amplitudes.norm(); }
};

// P(n, m) = |⟨ψ_n|φ_m⟩|²: rows labeled by A-eigenstates, columns by
// H-eigenstates. Doubly stochastic: every row and column sums to 1 within
// tol::stochastic_sum; entries clamped to [0, 1].
struct TransitionMatrix {
    RealMatrix p;

    Index dim() const { return p.rows(); }
    double row_col_sum_defect() const; // max deviation of any row/column sum from 1
};

// Probability weights over measurement-outcome labels (eigenvalue-sorted
// indices). Normalized mode asserts Σw = 1 within tol::stochastic_sum;
// PaperLiteral mode carries raw weight vectors verbatim (unnormalized).
// Negative weights within tol::weight_clamp of zero are clamped; anything more
// negative throws NegativeWeight.
enum class DistributionMode { Normalized, PaperLiteral };

struct OutcomeDistribution {
    RealVector weights;
    DistributionMode mode = DistributionMode::Normalized;

    static OutcomeDistribution normalized(RealVector w);
    static OutcomeDistribution paper_literal(RealVector w);

    Index size() const { return weights.size(); }
    double total() const { return weights.sum(); }
};

// P_nm = |⟨ψ_n|φ_m⟩|². Throws DimensionMismatch when A and H dimensions differ.
TransitionMatrix transition_matrix(const Observable& a, const Hamiltonian& h);

// |ψ_n⟩, the n-th eigenstate of A (ascending order), normalized.
StateVector prepare_eigenstate(const Observable& a, Index n);

// Born rule: weights_k = |⟨ψ_k|state⟩|², normalized mode. The state must be
// tagged normalized and satisfy the norm gate (UnnormalizedInput otherwise).
OutcomeDistribution born_distribution(const StateVector& state, const Observable& a);

} // namespace zeno
