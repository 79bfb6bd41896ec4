#include "statecmp/hermlin.hpp"

#include <Eigen/SVD>
#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <numeric>
#include <string>

namespace statecmp {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw ValidationError(msg);
}

} // namespace

HermitianOperator make_hermitian(const ComplexMatrix& m, std::vector<Index> factor_dims) {
    require(m.rows() == m.cols(), "operator matrix must be square");
    if (m.rows() == 0) {
        // The empty operator (trivial space after a full reduction) is
        // Hermitian by convention and carries no tensor factors.
        require(factor_dims.empty(), "an empty operator cannot carry tensor factors");
        return HermitianOperator{m, {}};
    }
    require(m.allFinite(), "operator matrix has non-finite entries");
    const double defect = (m - m.adjoint()).cwiseAbs().maxCoeff();
    require(defect <= tol::herm,
            "matrix is not Hermitian (defect " + std::to_string(defect) + ")");
    if (factor_dims.empty()) factor_dims = {m.rows()};
    Index prod = 1;
    for (Index d : factor_dims) {
        require(d >= 1, "factor dimensions must be positive");
        prod *= d;
    }
    require(prod == m.rows(), "product of factor dimensions must equal the matrix dimension");
    return HermitianOperator{m, std::move(factor_dims)};
}

Subspace make_subspace(Index ambient_dim, const ComplexMatrix& basis) {
    require(ambient_dim >= 0, "ambient dimension must be non-negative");
    require(basis.rows() == ambient_dim || basis.size() == 0,
            "basis rows must match the ambient dimension");
    require(basis.cols() <= ambient_dim, "basis has more columns than the ambient dimension");
    if (basis.cols() > 0) {
        const double defect =
            (basis.adjoint() * basis - ComplexMatrix::Identity(basis.cols(), basis.cols()))
                .cwiseAbs()
                .maxCoeff();
        require(defect <= tol::orth,
                "basis columns are not orthonormal (defect " + std::to_string(defect) + ")");
    }
    Subspace s;
    s.ambient_dim = ambient_dim;
    s.basis = basis;
    if (basis.size() == 0) s.basis = ComplexMatrix::Zero(ambient_dim, 0);
    return s;
}

Subspace zero_subspace(Index ambient_dim) {
    return make_subspace(ambient_dim, ComplexMatrix::Zero(ambient_dim, 0));
}

Subspace full_subspace(Index ambient_dim) {
    return make_subspace(ambient_dim, ComplexMatrix::Identity(ambient_dim, ambient_dim));
}

EighResult eigh(const HermitianOperator& op) {
    // Symmetrize before factorizing; validation already bounded the defect.
    const ComplexMatrix sym = 0.5 * (op.matrix + op.matrix.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
    if (solver.info() != Eigen::Success)
        throw NumericsError("Hermitian eigendecomposition failed to converge");
    return EighResult{solver.eigenvalues(), solver.eigenvectors()};
}

Subspace support(const HermitianOperator& op, double tol) {
    const EighResult es = eigh(op);
    const Index n = op.dim();
    const double lmax = es.eigenvalues.size() ? es.eigenvalues.maxCoeff() : 0.0;
    if (lmax <= 0.0) {
        // Positive semidefinite and numerically zero: the zero subspace.
        require(es.eigenvalues.size() == 0 || es.eigenvalues.minCoeff() >= -tol::herm,
                "operator is not positive semidefinite");
        return zero_subspace(n);
    }
    if (es.eigenvalues.minCoeff() < -tol * lmax)
        throw ValidationError("operator is not positive semidefinite (eigenvalue " +
                              std::to_string(es.eigenvalues.minCoeff()) + ")");
    Index first = 0;
    while (first < n && es.eigenvalues(first) <= tol * lmax) ++first;
    return make_subspace(n, es.eigenvectors.rightCols(n - first));
}

Subspace kernel(const HermitianOperator& op, double tol) {
    const EighResult es = eigh(op);
    const Index n = op.dim();
    const double lmax = es.eigenvalues.size() ? es.eigenvalues.cwiseAbs().maxCoeff() : 0.0;
    if (lmax <= 0.0) return full_subspace(n);
    Index count = 0;
    while (count < n && std::abs(es.eigenvalues(count)) <= tol * lmax) ++count;
    return make_subspace(n, es.eigenvectors.leftCols(count));
}

Subspace orthonormal_span(const ComplexMatrix& columns) {
    const Index ambient = columns.rows();
    if (columns.cols() == 0) return zero_subspace(ambient);
    Eigen::JacobiSVD<ComplexMatrix> svd(columns, Eigen::ComputeThinU);
    const auto& sigma = svd.singularValues();
    // Relative cutoff with an absolute floor: unit-norm input columns give
    // sigma_max >= O(1), while an all-zero matrix must yield rank 0.
    const double cutoff = tol::rank * std::max(sigma.size() ? sigma(0) : 0.0, 1.0);
    Index rank = 0;
    while (rank < sigma.size() && sigma(rank) > cutoff) ++rank;
    return make_subspace(ambient, svd.matrixU().leftCols(rank));
}

Subspace subspace_sum(const Subspace& a, const Subspace& b) {
    require(a.ambient_dim == b.ambient_dim, "subspace sum: ambient dimensions differ");
    ComplexMatrix stacked(a.ambient_dim, a.dim() + b.dim());
    stacked << a.basis, b.basis;
    return orthonormal_span(stacked);
}

Subspace subspace_intersection(const Subspace& a, const Subspace& b) {
    require(a.ambient_dim == b.ambient_dim, "subspace intersection: ambient dimensions differ");
    const Index n = a.ambient_dim;
    if (a.dim() == 0 || b.dim() == 0) return zero_subspace(n);
    const ComplexMatrix pa = a.projector();
    const ComplexMatrix pb = b.projector();
    const ComplexMatrix m = pa * pb * pa;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(0.5 * (m + m.adjoint()));
    if (solver.info() != Eigen::Success)
        throw NumericsError("intersection eigendecomposition failed to converge");
    // Eigenvalues are squared cosines of principal angles; intersection = 1.
    Index first = 0;
    while (first < n && solver.eigenvalues()(first) < 1.0 - tol::isect) ++first;
    return make_subspace(n, solver.eigenvectors().rightCols(n - first));
}

Subspace orthocomplement_in(const Subspace& inner, const Subspace& outer) {
    require(inner.ambient_dim == outer.ambient_dim,
            "orthocomplement: ambient dimensions differ");
    const ComplexMatrix residual =
        outer.basis - inner.basis * (inner.basis.adjoint() * outer.basis);
    return orthonormal_span(residual);
}

HermitianOperator partial_transpose(const HermitianOperator& op, std::size_t factor_index) {
    const auto& dims = op.factor_dims;
    if (factor_index >= dims.size())
        throw ValidationError("partial transpose: factor index " +
                              std::to_string(factor_index) + " exceeds the declared " +
                              std::to_string(dims.size()) + "-factor tensor structure");
    const Index n = op.dim();
    // Strides of the mixed-radix row/column index decomposition.
    std::vector<Index> stride(dims.size());
    Index acc = 1;
    for (std::size_t f = dims.size(); f-- > 0;) {
        stride[f] = acc;
        acc *= dims[f];
    }
    const Index df = dims[factor_index];
    const Index sf = stride[factor_index];
    ComplexMatrix out(n, n);
    for (Index r = 0; r < n; ++r) {
        const Index rf = (r / sf) % df;
        const Index rbase = r - rf * sf;
        for (Index c = 0; c < n; ++c) {
            const Index cf = (c / sf) % df;
            const Index cbase = c - cf * sf;
            out(rbase + cf * sf, cbase + rf * sf) = op.matrix(r, c);
        }
    }
    HermitianOperator result;
    result.matrix = std::move(out);
    result.factor_dims = dims;
    return result;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    return Eigen::kroneckerProduct(a, b).eval();
}

ComplexMatrix kron_power(const ComplexMatrix& m, int copies) {
    require(copies >= 1, "Kronecker power needs at least one copy");
    ComplexMatrix out = m;
    for (int c = 1; c < copies; ++c) out = kron(out, m);
    return out;
}

} // namespace statecmp
