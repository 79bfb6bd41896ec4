#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "statecmp/errors.hpp"
#include "statecmp/tolerances.hpp"

// Dense complex Hermitian linear-algebra kernel: spectra, supports, kernels,
// subspace algebra, partial transpose.  All operations are pure functions on
// immutable values and safe to use concurrently.
namespace statecmp {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using Index = Eigen::Index;

// Dense Hermitian matrix together with its declared tensor-factor dimensions
// (product of factor_dims equals the matrix dimension).
struct HermitianOperator {
    ComplexMatrix matrix;
    std::vector<Index> factor_dims;

    Index dim() const { return matrix.rows(); }
};

// Validates squareness, finiteness, Hermiticity (within tol::herm) and the
// factor-dimension product.  An empty factor list defaults to a single factor.
HermitianOperator make_hermitian(const ComplexMatrix& m,
                                 std::vector<Index> factor_dims = {});

// Subspace of an ambient space, carried as orthonormal basis columns
// (zero columns encode the trivial subspace).
struct Subspace {
    Index ambient_dim = 0;
    ComplexMatrix basis; // ambient_dim x dim, orthonormal columns

    Index dim() const { return basis.cols(); }
    ComplexMatrix projector() const { return basis * basis.adjoint(); }
};

Subspace make_subspace(Index ambient_dim, const ComplexMatrix& orthonormal_basis);
Subspace zero_subspace(Index ambient_dim);
Subspace full_subspace(Index ambient_dim);

struct EighResult {
    Eigen::VectorXd eigenvalues; // ascending
    ComplexMatrix eigenvectors;  // column k belongs to eigenvalues[k]
};

// Eigendecomposition of a Hermitian operator; reconstruction error is bounded
// by tol::recon per entry.
EighResult eigh(const HermitianOperator& op);

// Span of eigenvectors with eigenvalue > tol x (largest eigenvalue); rejects
// operators with an eigenvalue below -tol x (largest eigenvalue).  The zero
// operator has zero support.
Subspace support(const HermitianOperator& op, double tol = tol::rank);

// Ortho-complement of the support (eigenvalue <= cutoff).
Subspace kernel(const HermitianOperator& op, double tol = tol::rank);

// Orthonormal column span of an arbitrary matrix.  The singular-value cutoff
// is relative with an absolute floor, so an (effectively) zero input yields
// the zero subspace instead of noise columns.
Subspace orthonormal_span(const ComplexMatrix& columns);

Subspace subspace_sum(const Subspace& a, const Subspace& b);

// Intersection from the joint projector spectrum: the eigenvalue-1 eigenspace
// of P_a P_b P_a within tol::isect.
Subspace subspace_intersection(const Subspace& a, const Subspace& b);

// Ortho-complement of `inner` taken inside `outer` (inner need not be a
// subset; only the part of `outer` orthogonal to `inner` is returned).
Subspace orthocomplement_in(const Subspace& inner, const Subspace& outer);

// Transposition applied to one tensor factor of the operator.
HermitianOperator partial_transpose(const HermitianOperator& op, std::size_t factor_index);

// Kronecker product and C-fold Kronecker power.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix kron_power(const ComplexMatrix& m, int copies);

} // namespace statecmp
