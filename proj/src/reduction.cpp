#include "statecmp/reduction.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <string>

namespace statecmp {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw ValidationError(msg);
}

// Basis of the right nullspace of a constraint matrix, with the same
// relative-plus-floor cutoff policy as orthonormal_span.
std::vector<Eigen::VectorXcd> nullspace(const ComplexMatrix& constraints) {
    const Index cols = constraints.cols();
    Eigen::JacobiSVD<ComplexMatrix> svd(constraints, Eigen::ComputeFullV);
    const auto& sigma = svd.singularValues();
    const double cutoff = tol::rank * std::max(sigma.size() ? sigma(0) : 0.0, 1.0);
    Index rank = 0;
    while (rank < sigma.size() && sigma(rank) > cutoff) ++rank;
    std::vector<Eigen::VectorXcd> basis;
    for (Index k = rank; k < cols; ++k) basis.push_back(svd.matrixV().col(k));
    return basis;
}

void validate_gram(const ComplexMatrix& gram) {
    require(gram.rows() == gram.cols() && gram.rows() >= 2,
            "Gram matrix must be square with N >= 2");
    const HermitianOperator op = make_hermitian(gram);
    const EighResult es = eigh(op);
    require(es.eigenvalues.minCoeff() > tol::rank * es.eigenvalues.maxCoeff(),
            "Gram matrix is singular: the states are linearly dependent");
}

} // namespace

Subspace first_reduction(const DiscriminationProblem& prob) {
    const Subspace supp_a = support(prob.rho_a);
    const Subspace supp_b = support(prob.rho_b);
    const Subspace overlap = subspace_intersection(supp_a, supp_b);
    if (overlap.dim() > 0)
        throw ValidationError("supports of the two hypotheses overlap (dimension " +
                              std::to_string(overlap.dim()) +
                              "); the problem does not reduce cleanly");
    return subspace_sum(supp_a, supp_b);
}

ReductionResult second_reduction(const DiscriminationProblem& prob, const Subspace& H) {
    const Subspace supp_a = support(prob.rho_a);
    const Subspace supp_b = support(prob.rho_b);
    const Subspace kern_a = kernel(prob.rho_a);
    const Subspace kern_b = kernel(prob.rho_b);

    ReductionResult result;
    result.H = H;
    result.kcap_a = subspace_intersection(kern_a, supp_b);
    result.kcap_b = subspace_intersection(kern_b, supp_a);
    const Subspace removed = subspace_sum(result.kcap_a, result.kcap_b);
    result.H_prime = orthocomplement_in(removed, H);

    const ComplexMatrix& basis = result.H_prime.basis; // isometry: ambient -> H'
    const ComplexMatrix ra = basis.adjoint() * prob.rho_a.matrix * basis;
    const ComplexMatrix rb = basis.adjoint() * prob.rho_b.matrix * basis;
    result.zeta_a = ra.trace().real();
    result.zeta_b = rb.trace().real();
    result.zeta = result.zeta_a * prob.eta_a + result.zeta_b * prob.eta_b;
    if (result.H_prime.dim() == 0 || result.zeta <= 0) {
        // Nothing left to discriminate: the corners cover everything.
        result.zeta_a = result.zeta_b = result.zeta = 0;
        result.eta_a_prime = result.eta_b_prime = 0.5;
        result.rho_a_prime = make_hermitian(ComplexMatrix::Zero(0, 0));
        result.rho_b_prime = make_hermitian(ComplexMatrix::Zero(0, 0));
        return result;
    }
    result.eta_a_prime = prob.eta_a * result.zeta_a / result.zeta;
    result.eta_b_prime = prob.eta_b * result.zeta_b / result.zeta;
    result.rho_a_prime = make_hermitian(ra / result.zeta_a, {result.H_prime.dim()});
    result.rho_b_prime = make_hermitian(rb / result.zeta_b, {result.H_prime.dim()});
    return result;
}

double lift_success(double p_prime, double zeta) {
    require(p_prime >= 0.0 && p_prime <= 1.0,
            "reduced success probability must lie in [0, 1]");
    require(zeta > 0.0 && zeta <= 1.0, "zeta must lie in (0, 1]");
    return 1.0 - (1.0 - p_prime) * zeta;
}

SymmetrySplit symmetry_split(const Subspace& H) {
    const Index ambient = H.ambient_dim;
    const Index d = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(ambient))));
    require(d * d == ambient,
            "symmetry split needs two tensor factors of equal dimension (ambient " +
                std::to_string(ambient) + " is not a perfect square)");
    ComplexMatrix swap = ComplexMatrix::Zero(ambient, ambient);
    for (Index i = 0; i < d; ++i)
        for (Index j = 0; j < d; ++j) swap(i * d + j, j * d + i) = 1.0;

    const ComplexMatrix restricted = H.basis.adjoint() * swap * H.basis;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(
        0.5 * (restricted + restricted.adjoint()));
    if (solver.info() != Eigen::Success)
        throw NumericsError("symmetry split eigendecomposition failed to converge");
    for (Index k = 0; k < solver.eigenvalues().size(); ++k)
        require(std::abs(std::abs(solver.eigenvalues()(k)) - 1.0) <= 1e-8,
                "subspace is not swap-invariant");

    Index negatives = 0;
    while (negatives < solver.eigenvalues().size() && solver.eigenvalues()(negatives) < 0)
        ++negatives;
    SymmetrySplit split;
    split.H_minus = make_subspace(ambient, H.basis * solver.eigenvectors().leftCols(negatives));
    split.H_plus = make_subspace(
        ambient, H.basis * solver.eigenvectors().rightCols(H.dim() - negatives));
    return split;
}

std::vector<ComplexMatrix> kcap_a_symmetric(const ComplexMatrix& gram) {
    validate_gram(gram);
    const Index n = gram.rows();
    // Unknowns: strictly lower-triangular entries A_ij, i > j, column by column.
    std::vector<std::pair<Index, Index>> pairs;
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < i; ++j) pairs.emplace_back(i, j);
    ComplexMatrix constraints(n, static_cast<Index>(pairs.size()));
    for (Index k = 0; k < n; ++k)
        for (std::size_t p = 0; p < pairs.size(); ++p)
            constraints(k, static_cast<Index>(p)) =
                gram(k, pairs[p].first) * gram(k, pairs[p].second);

    std::vector<ComplexMatrix> basis;
    for (const auto& coeff : nullspace(constraints)) {
        ComplexMatrix a = ComplexMatrix::Zero(n, n);
        for (std::size_t p = 0; p < pairs.size(); ++p)
            a(pairs[p].first, pairs[p].second) = coeff(static_cast<Index>(p));
        basis.push_back(std::move(a));
    }
    return basis;
}

std::vector<ComplexMatrix> kcap_b_diagonal(const ComplexMatrix& gram) {
    validate_gram(gram);
    const Index n = gram.rows();
    const Index n_pairs = n * (n - 1) / 2;
    ComplexMatrix constraints(n_pairs, n);
    Index row = 0;
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < i; ++j, ++row)
            for (Index k = 0; k < n; ++k) constraints(row, k) = gram(i, k) * gram(j, k);

    std::vector<ComplexMatrix> basis;
    for (const auto& coeff : nullspace(constraints)) {
        ComplexMatrix b = ComplexMatrix::Zero(n, n);
        for (Index k = 0; k < n; ++k) b(k, k) = coeff(k);
        basis.push_back(std::move(b));
    }
    return basis;
}

PureEnsemble equal_overlap_ensemble(int n, double cos_theta, std::vector<double> priors) {
    require(n >= 2, "equal-overlap family needs N >= 2");
    require(cos_theta >= 0.0 && cos_theta < 1.0,
            "equal-overlap family needs cos(theta) in [0, 1)");
    if (priors.empty()) priors.assign(static_cast<std::size_t>(n), 1.0 / n);

    // v_i = a u_i + b w with u_i the standard basis and w their normalized sum;
    // a, b solve the unit-norm and pairwise-overlap constraints.
    const double a = std::sqrt(1.0 - cos_theta);
    const double b = -a / std::sqrt(static_cast<double>(n)) +
                     std::sqrt(a * a / n + cos_theta);
    std::vector<ComplexVector> states;
    for (int i = 0; i < n; ++i) {
        ComplexVector v = ComplexVector::Constant(n, Complex(b / std::sqrt(static_cast<double>(n)), 0));
        v(i) += Complex(a, 0);
        states.push_back(std::move(v));
    }
    return make_pure_ensemble(n, std::move(states), std::move(priors));
}

} // namespace statecmp
