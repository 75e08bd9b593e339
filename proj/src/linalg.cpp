#include "zeno/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace zeno {

namespace {

// Components below this magnitude do not anchor the phase convention.
constexpr double kPhaseCutoff = 1e-9;

// Eigenvalues closer than this (relative to the spectral scale) form one
// degenerate cluster for re-orthonormalization.
constexpr double kDegeneracyTol = 1e-9;

void require_square(const ComplexMatrix& m, const char* where) {
    if (m.rows() != m.cols() || m.rows() < 1) {
        throw DimensionMismatch(std::string(where) + ": matrix must be square with dim >= 1, got " +
                                std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
}

void require_finite(const ComplexMatrix& m, const char* where) {
    if (!all_finite(m)) {
        throw NumericalFailure(std::string(where) + ": matrix has non-finite entries");
    }
}

// Modified Gram-Schmidt over columns [first, last) of v, in place.
void orthonormalize_block(ComplexMatrix& v, Index first, Index last) {
    for (Index j = first; j < last; ++j) {
        for (Index i = first; i < j; ++i) {
            const Complex proj = v.col(i).dot(v.col(j));
            v.col(j) -= proj * v.col(i);
        }
        const double norm = v.col(j).norm();
        if (norm < 1e-12) {
            throw NumericalFailure("hermitian_eigendecomposition: degenerate subspace collapsed "
                                   "during re-orthonormalization");
        }
        v.col(j) /= norm;
    }
}

// Rotate each column so its first component with |.| > kPhaseCutoff is real positive.
void fix_phases(ComplexMatrix& v) {
    for (Index j = 0; j < v.cols(); ++j) {
        for (Index i = 0; i < v.rows(); ++i) {
            const double mag = std::abs(v(i, j));
            if (mag > kPhaseCutoff) {
                v.col(j) *= std::conj(v(i, j)) / mag;
                break;
            }
        }
    }
}

} // namespace

double max_abs(const ComplexMatrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double max_abs(const RealMatrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double hermiticity_defect(const ComplexMatrix& m) {
    return max_abs(ComplexMatrix(m - m.adjoint()));
}

bool all_finite(const ComplexMatrix& m) {
    return m.allFinite();
}

bool all_finite(const ComplexVector& v) {
    return v.allFinite();
}

ComplexMatrix commutator(const ComplexMatrix& x, const ComplexMatrix& y) {
    if (x.rows() != y.rows() || x.cols() != y.cols()) {
        throw DimensionMismatch("commutator: operand dimensions differ");
    }
    return x * y - y * x;
}

ComplexMatrix SpectralData::reconstruct() const {
    return vectors * values.asDiagonal() * vectors.adjoint();
}

double SpectralData::orthonormality_defect() const {
    const ComplexMatrix gram = vectors.adjoint() * vectors;
    return max_abs(ComplexMatrix(gram - ComplexMatrix::Identity(dim(), dim())));
}

SpectralData hermitian_eigendecomposition(const ComplexMatrix& m, double tol) {
    require_square(m, "hermitian_eigendecomposition");
    require_finite(m, "hermitian_eigendecomposition");

    const double defect = hermiticity_defect(m);
    if (!(defect <= tol)) {
        throw NonHermitian("hermitian_eigendecomposition: ‖M − M†‖_max = " +
                           std::to_string(defect) + " exceeds tol " + std::to_string(tol));
    }

    // Symmetrize before solving; the defect is already within tol.
    const ComplexMatrix sym = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
    if (solver.info() != Eigen::Success) {
        throw NumericalFailure("hermitian_eigendecomposition: eigensolver did not converge");
    }

    SpectralData out;
    out.values = solver.eigenvalues(); // ascending
    out.vectors = solver.eigenvectors();

    // Re-orthonormalize within degenerate clusters, then fix phases globally.
    const double scale = std::max(1.0, out.values.cwiseAbs().maxCoeff());
    Index start = 0;
    for (Index k = 1; k <= out.dim(); ++k) {
        const bool boundary =
            (k == out.dim()) || (out.values(k) - out.values(k - 1) > kDegeneracyTol * scale);
        if (boundary) {
            if (k - start > 1) {
                orthonormalize_block(out.vectors, start, k);
            }
            start = k;
        }
    }
    fix_phases(out.vectors);

    const double recon = max_abs(ComplexMatrix(out.reconstruct() - m));
    if (!(recon <= tol::reconstruction)) {
        throw NumericalFailure("hermitian_eigendecomposition: reconstruction defect " +
                               std::to_string(recon) + " exceeds " +
                               std::to_string(tol::reconstruction));
    }
    return out;
}

ComplexMatrix propagator(const SpectralData& spectral, double t) {
    if (!std::isfinite(t)) {
        throw NumericalFailure("propagator: time must be finite");
    }
    const Index d = spectral.dim();
    ComplexVector phases(d);
    for (Index k = 0; k < d; ++k) {
        phases(k) = std::exp(Complex(0.0, -spectral.values(k) * t));
    }
    return spectral.vectors * phases.asDiagonal() * spectral.vectors.adjoint();
}

ComplexMatrix matrix_exp_general(const ComplexMatrix& m, double tol) {
    require_square(m, "matrix_exp_general");
    require_finite(m, "matrix_exp_general");
    if (!(tol > 0.0)) {
        throw NumericalFailure("matrix_exp_general: tolerance must be positive");
    }

    const Index d = m.rows();
    // Row-sum (infinity) norm controls the Taylor tail.
    const double norm = m.cwiseAbs().rowwise().sum().maxCoeff();

    int squarings = 0;
    if (norm > 0.5) {
        squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
        if (squarings > 1000) {
            throw NumericalFailure("matrix_exp_general: overflow at requested tolerance");
        }
    }
    const ComplexMatrix scaled = m / std::ldexp(1.0, squarings);

    // Truncated Taylor series on the scaled matrix (‖A‖ <= 0.5, so terms decay
    // by at least 1/2 per order; stopping at tol/64 leaves the tail well below tol).
    ComplexMatrix sum = ComplexMatrix::Identity(d, d);
    ComplexMatrix term = ComplexMatrix::Identity(d, d);
    constexpr int kMaxTerms = 300;
    bool converged = false;
    for (int k = 1; k <= kMaxTerms; ++k) {
        term = (term * scaled) / static_cast<double>(k);
        sum += term;
        if (max_abs(term) <= (tol / 64.0) * std::max(1.0, max_abs(sum))) {
            converged = true;
            break;
        }
    }
    if (!converged) {
        throw NumericalFailure("matrix_exp_general: Taylor series did not converge");
    }

    for (int s = 0; s < squarings; ++s) {
        sum = sum * sum;
        if (!all_finite(sum)) {
            throw NumericalFailure("matrix_exp_general: overflow at requested tolerance");
        }
    }
    return sum;
}

} // namespace zeno
