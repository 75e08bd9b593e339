// linalg.hpp — dense complex linear algebra: Hermitian eigendecomposition with a
// deterministic ordering and phase convention, spectral propagators, and a general
// matrix exponential that handles non-normal inputs.

#pragma once

#include <Eigen/Dense>

#include <complex>

#include "zeno/errors.hpp"

namespace zeno {

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Complex = std::complex<double>;
using Index = Eigen::Index;

// Default tolerances. Comfortable for dim <= 16 in double precision.
namespace tol {
inline constexpr double hermiticity = 1e-10;      // ‖M − M†‖_max gate
inline constexpr double reconstruction = 1e-9;    // ‖VΛV† − M‖_max gate
inline constexpr double matrix_exp = 1e-10;       // relative, max norm
inline constexpr double orthonormality = 1e-10;   // |⟨v_i|v_j⟩ − δ_ij|
inline constexpr double stochastic_sum = 1e-9;    // doubly stochastic row/col sums
inline constexpr double weight_clamp = 1e-12;     // negative weights beyond this are errors
inline constexpr double norm_check = 1e-10;       // |‖ψ‖ − 1| for normalized states
inline constexpr double bch_commutator = 1e-9;    // ‖[[H,u],H]‖, ‖[[H,u],A]‖ gate
} // namespace tol

// Entrywise max norm.
double max_abs(const ComplexMatrix& m);
double max_abs(const RealMatrix& m);

// ‖M − M†‖_max.
double hermiticity_defect(const ComplexMatrix& m);

// True iff every entry is finite (no NaN/Inf in either component).
bool all_finite(const ComplexMatrix& m);
bool all_finite(const ComplexVector& v);

// XY − YX.
ComplexMatrix commutator(const ComplexMatrix& x, const ComplexMatrix& y);

// Eigenvalues and orthonormal eigenbasis of a Hermitian matrix.
//
// Columns of `vectors` are the eigenvectors, sorted by ascending eigenvalue.
// Phase convention: the first component of each vector whose magnitude exceeds
// 1e-9 is made real positive, so identical inputs produce identical output.
// Within numerically degenerate clusters the basis is re-orthonormalized; it is
// still basis-dependent there, which downstream quantities inherit.
struct SpectralData {
    RealVector values;
    ComplexMatrix vectors;

    Index dim() const { return values.size(); }
    ComplexVector vector(Index k) const { return vectors.col(k); }

    // Σ_k λ_k v_k v_k†.
    ComplexMatrix reconstruct() const;

    // max_{ij} |⟨v_i|v_j⟩ − δ_ij|.
    double orthonormality_defect() const;
};

// Diagonalize a Hermitian matrix.
//
// Requires ‖M − M†‖_max <= tol, else throws NonHermitian. The decomposition is
// checked against the reconstruction gate (tol::reconstruction) and throws
// NumericalFailure if the solver fails or the gate is missed.
SpectralData hermitian_eigendecomposition(const ComplexMatrix& m,
                                          double tol = tol::hermiticity);

// U(t) = Σ_m e^{−i E_m t} |φ_m⟩⟨φ_m|, ħ = 1. Unitary by construction.
ComplexMatrix propagator(const SpectralData& spectral, double t);

// exp(M) by scaling-and-squaring with a truncated Taylor series, accurate to
// relative tolerance `tol` in max norm. Valid for non-normal M. Throws
// NumericalFailure on overflow or non-convergence.
ComplexMatrix matrix_exp_general(const ComplexMatrix& m, double tol = tol::matrix_exp);

} // namespace zeno
