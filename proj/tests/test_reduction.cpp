#include <doctest.h>

#include <cmath>

#include "statecmp/reduction.hpp"
#include "test_helpers.hpp"

using namespace statecmp;
using namespace testutil;

namespace {

PureEnsemble qubit_pair(double q1, double cos_theta) {
    ComplexVector psi1 = basis_vector(2, 0);
    ComplexVector psi2(2);
    psi2 << cos_theta, std::sqrt(1.0 - cos_theta * cos_theta);
    return make_pure_ensemble(2, {psi1, psi2}, {q1, 1.0 - q1});
}

// Number of strictly-lower-triangular coefficient solutions plus the always
// present antisymmetric part: the expected dimension of Kern rho_a ^ Supp rho_b
// for a 2-out-of-N pure problem.
Index expected_kcap_a_dim(const ComplexMatrix& gram) {
    const Index n = gram.rows();
    return n * (n - 1) / 2 + static_cast<Index>(kcap_a_symmetric(gram).size());
}

} // namespace

TEST_CASE("first_reduction dimensions") {
    SUBCASE("two qubit states, two copies") {
        const DiscriminationProblem prob = build_problem(qubit_pair(0.5, 0.5), 2);
        CHECK(first_reduction(prob).dim() == 4);
    }
    SUBCASE("orthogonal pair still spans the full two-copy space") {
        const DiscriminationProblem prob = build_problem(qubit_pair(0.5, 0.0), 2);
        CHECK(first_reduction(prob).dim() == 4);
    }
    SUBCASE("three equal-overlap states") {
        const DiscriminationProblem prob =
            build_problem(equal_overlap_ensemble(3, 0.2), 2);
        CHECK(first_reduction(prob).dim() == 9);
    }
    SUBCASE("full-rank states make the supports overlap") {
        const PureEnsemble pure = qubit_pair(0.5, 0.5);
        std::vector<ComplexMatrix> fuzzed;
        for (const auto& psi : pure.states)
            fuzzed.push_back(0.9 * (psi * psi.adjoint()).eval() +
                             0.05 * ComplexMatrix::Identity(2, 2));
        const MixedEnsemble ens = make_mixed_ensemble(2, fuzzed, pure.priors);
        const DiscriminationProblem prob = build_problem(ens, 2);
        CHECK_THROWS_AS(first_reduction(prob), ValidationError);
    }
}

TEST_CASE("second_reduction for a qubit pair") {
    const double c = 0.5;
    const double n_plus_sq = 1.0 + c * c;
    const double n_minus = std::sqrt(1.0 - c * c);
    const PureEnsemble ens = qubit_pair(0.5, c);
    const DiscriminationProblem prob = build_problem(ens, 2);
    const ReductionResult red = second_reduction(prob, first_reduction(prob));

    CHECK(red.kcap_a.dim() == 1);
    CHECK(red.kcap_b.dim() == 1);
    CHECK(red.H_prime.dim() == 2);

    const ComplexVector psi1 = ens.states[0];
    const ComplexVector psi2 = ens.states[1];
    SUBCASE("the distinguishable corners are the known singlet-like vectors") {
        // Kern rho_a ^ Supp rho_b is spanned by the antisymmetric combination.
        const ComplexVector v_a =
            (kron(psi1, psi2) - kron(psi2, psi1)).col(0) / (std::sqrt(2.0) * n_minus);
        CHECK(max_abs_diff(red.kcap_a.projector(), v_a * v_a.adjoint()) <= 1e-10);
        // Kern rho_b ^ Supp rho_a is spanned by the difference of doubled states.
        const ComplexVector v_b =
            (kron(psi1, psi1) - kron(psi2, psi2)).col(0) / (std::sqrt(2.0) * n_minus);
        CHECK(max_abs_diff(red.kcap_b.projector(), v_b * v_b.adjoint()) <= 1e-10);
    }
    SUBCASE("retained weight and reduced priors") {
        CHECK(red.zeta_a == doctest::Approx(n_plus_sq / 2).epsilon(1e-12));
        CHECK(red.zeta_b == doctest::Approx(n_plus_sq / 2).epsilon(1e-12));
        CHECK(red.zeta == doctest::Approx(0.625).epsilon(1e-12));
        CHECK(red.eta_a_prime == doctest::Approx(0.5).epsilon(1e-12));
    }
    SUBCASE("reduced operators are unit-trace states on H'") {
        CHECK(red.rho_a_prime.dim() == 2);
        CHECK(red.rho_b_prime.dim() == 2);
        CHECK(red.rho_a_prime.matrix.trace().real() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(red.rho_b_prime.matrix.trace().real() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(min_eigenvalue(red.rho_a_prime.matrix) >= -tol::psd);
        CHECK(min_eigenvalue(red.rho_b_prime.matrix) >= -tol::psd);
    }
}

TEST_CASE("reduced priors equal the original priors for any qubit pair") {
    // The retained weights zeta_a and zeta_b coincide, so the prior ratio
    // survives the reduction unchanged.
    for (const auto& [q1, c] : {std::pair{0.3, 0.4}, std::pair{0.7, 0.2},
                                std::pair{0.55, 0.8}}) {
        const DiscriminationProblem prob = build_problem(qubit_pair(q1, c), 2);
        const ReductionResult red = second_reduction(prob, first_reduction(prob));
        CHECK(red.zeta_a == doctest::Approx(red.zeta_b).epsilon(1e-12));
        CHECK(red.eta_a_prime == doctest::Approx(prob.eta_a).epsilon(1e-12));
        CHECK(red.eta_b_prime == doctest::Approx(prob.eta_b).epsilon(1e-12));
        CHECK(red.zeta == doctest::Approx((1.0 + c * c) / 2).epsilon(1e-12));
    }
}

TEST_CASE("orthonormal states reduce to nothing") {
    const DiscriminationProblem prob = build_problem(equal_overlap_ensemble(3, 0.0), 2);
    const ReductionResult red = second_reduction(prob, first_reduction(prob));
    CHECK(red.kcap_a.dim() == 6);
    CHECK(red.kcap_b.dim() == 3);
    CHECK(red.H_prime.dim() == 0);
    CHECK(red.zeta == 0.0);
    CHECK(red.eta_a_prime == 0.5);
    CHECK(red.eta_b_prime == 0.5);
    CHECK(red.rho_a_prime.matrix.rows() == 0);
    CHECK(red.rho_b_prime.matrix.rows() == 0);
}

TEST_CASE("lift_success") {
    CHECK(lift_success(1.0, 0.625) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(lift_success(0.0, 1.0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(lift_success(0.5, 0.625) == doctest::Approx(0.6875).epsilon(1e-15));
    CHECK_THROWS_AS(lift_success(-0.1, 0.5), ValidationError);
    CHECK_THROWS_AS(lift_success(1.1, 0.5), ValidationError);
    CHECK_THROWS_AS(lift_success(0.5, 0.0), ValidationError);
    CHECK_THROWS_AS(lift_success(0.5, 1.5), ValidationError);
}

TEST_CASE("corner coefficient bases") {
    SUBCASE("two states: no symmetric corner, one diagonal solution") {
        ComplexMatrix gram(2, 2);
        gram << 1.0, 0.5, 0.5, 1.0;
        CHECK(kcap_a_symmetric(gram).size() == 0);
        const auto diag = kcap_b_diagonal(gram);
        REQUIRE(diag.size() == 1);
        // B_11 = -B_22 up to scale.
        CHECK(std::abs(diag[0](0, 0) + diag[0](1, 1)) <= 1e-10);
    }
    SUBCASE("equal-overlap counts for three and four states") {
        const double c = 0.3;
        ComplexMatrix g3 = ComplexMatrix::Constant(3, 3, c);
        g3.diagonal().setOnes();
        CHECK(kcap_a_symmetric(g3).size() == 0);
        CHECK(kcap_b_diagonal(g3).size() == 0);
        ComplexMatrix g4 = ComplexMatrix::Constant(4, 4, c);
        g4.diagonal().setOnes();
        CHECK(kcap_a_symmetric(g4).size() == 2);
        CHECK(kcap_b_diagonal(g4).size() == 0);
    }
    SUBCASE("orthonormal states leave every coefficient free") {
        const ComplexMatrix id = ComplexMatrix::Identity(3, 3);
        CHECK(kcap_a_symmetric(id).size() == 3);
        CHECK(kcap_b_diagonal(id).size() == 3);
    }
    SUBCASE("solutions satisfy the defining constraints") {
        Xoshiro256ss rng(67);
        for (int rep = 0; rep < 5; ++rep) {
            const int n = 3 + static_cast<int>(rng.next() % 2);
            std::vector<ComplexVector> states;
            for (int i = 0; i < n; ++i) states.push_back(random_unit_vector(n, rng));
            ComplexMatrix gram(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    gram(i, j) = states[static_cast<std::size_t>(i)]
                                     .dot(states[static_cast<std::size_t>(j)]);
            for (const ComplexMatrix& a : kcap_a_symmetric(gram)) {
                for (Index k = 0; k < n; ++k) {
                    Complex acc = 0;
                    for (Index i = 0; i < n; ++i)
                        for (Index j = 0; j < i; ++j)
                            acc += a(i, j) * gram(k, i) * gram(k, j);
                    CHECK(std::abs(acc) <= 1e-10);
                }
            }
            for (const ComplexMatrix& b : kcap_b_diagonal(gram)) {
                for (Index i = 0; i < n; ++i)
                    for (Index j = 0; j < i; ++j) {
                        Complex acc = 0;
                        for (Index k = 0; k < n; ++k)
                            acc += gram(i, k) * b(k, k) * gram(j, k);
                        CHECK(std::abs(acc) <= 1e-10);
                    }
            }
        }
    }
}

TEST_CASE("coefficient bases agree with the generic subspace computation") {
    for (int n = 2; n <= 4; ++n) {
        const double c = 0.35;
        const PureEnsemble ens = equal_overlap_ensemble(n, c);
        ComplexMatrix gram(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                gram(i, j) = ens.states[static_cast<std::size_t>(i)]
                                 .dot(ens.states[static_cast<std::size_t>(j)]);
        const DiscriminationProblem prob = build_problem(ens, 2);
        const ReductionResult red = second_reduction(prob, first_reduction(prob));
        CHECK(red.kcap_a.dim() == expected_kcap_a_dim(gram));
        CHECK(red.kcap_b.dim() ==
              static_cast<Index>(kcap_b_diagonal(gram).size()));
        CHECK(red.H_prime.dim() == (n == 2 ? 2 : 2 * n));

        // Vectors assembled from the coefficients really live in the corners.
        const ComplexMatrix p_a = red.kcap_a.projector();
        for (const ComplexMatrix& a : kcap_a_symmetric(gram)) {
            ComplexVector v = ComplexVector::Zero(prob.rho_a.dim());
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < i; ++j)
                    v += a(i, j) *
                         (kron(ens.states[static_cast<std::size_t>(i)],
                               ens.states[static_cast<std::size_t>(j)]) +
                          kron(ens.states[static_cast<std::size_t>(j)],
                               ens.states[static_cast<std::size_t>(i)]))
                             .col(0);
            v.normalize();
            CHECK((p_a * v - v).norm() <= 1e-9);
        }
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < i; ++j) {
                ComplexVector v =
                    (kron(ens.states[static_cast<std::size_t>(i)],
                          ens.states[static_cast<std::size_t>(j)]) -
                     kron(ens.states[static_cast<std::size_t>(j)],
                          ens.states[static_cast<std::size_t>(i)]))
                        .col(0)
                        .normalized();
                CHECK((p_a * v - v).norm() <= 1e-9);
            }
    }
}

TEST_CASE("swap symmetry split") {
    SUBCASE("full two-qubit space splits 3 + 1") {
        const SymmetrySplit split = symmetry_split(full_subspace(4));
        CHECK(split.H_plus.dim() == 3);
        CHECK(split.H_minus.dim() == 1);
    }
    SUBCASE("full two-qutrit space splits 6 + 3") {
        const SymmetrySplit split = symmetry_split(full_subspace(9));
        CHECK(split.H_plus.dim() == 6);
        CHECK(split.H_minus.dim() == 3);
    }
    SUBCASE("the retained space of the three-state problem is the symmetric part") {
        const DiscriminationProblem prob =
            build_problem(equal_overlap_ensemble(3, 0.2), 2);
        const Subspace H = first_reduction(prob);
        const ReductionResult red = second_reduction(prob, H);
        const SymmetrySplit split = symmetry_split(H);
        CHECK(max_abs_diff(red.H_prime.projector(), split.H_plus.projector()) <= 1e-9);
        CHECK(max_abs_diff(red.kcap_a.projector(), split.H_minus.projector()) <= 1e-9);
    }
    SUBCASE("ambient dimension must be a perfect square") {
        CHECK_THROWS_AS(symmetry_split(full_subspace(6)), ValidationError);
    }
    SUBCASE("subspaces that are not swap-invariant are rejected") {
        ComplexMatrix basis = ComplexMatrix::Zero(4, 1);
        basis(1, 0) = 1.0; // |01>, swapped to |10> outside the span
        CHECK_THROWS_AS(symmetry_split(make_subspace(4, basis)), ValidationError);
    }
}

TEST_CASE("retained dimension for equal-overlap families") {
    // Two states keep a plane; three or more states keep 2N directions
    // (N doubled states plus N symmetrized cross terms survive the corners).
    for (int n = 2; n <= 4; ++n) {
        for (double c : {0.1, 0.35, 0.7}) {
            const DiscriminationProblem prob =
                build_problem(equal_overlap_ensemble(n, c), 2);
            const ReductionResult red = second_reduction(prob, first_reduction(prob));
            CHECK(red.H_prime.dim() == (n == 2 ? 2 : 2 * n));
        }
    }
}

TEST_CASE("equal-overlap family construction") {
    SUBCASE("pairwise overlaps are exact") {
        for (int n : {2, 3, 5}) {
            for (double c : {0.0, 0.2, 0.8}) {
                const PureEnsemble ens = equal_overlap_ensemble(n, c);
                CHECK(ens.dim == n);
                for (std::size_t i = 0; i < ens.size(); ++i) {
                    CHECK(ens.states[i].norm() == doctest::Approx(1.0).epsilon(1e-12));
                    for (std::size_t j = 0; j < i; ++j)
                        CHECK(std::abs(ens.states[i].dot(ens.states[j]) - Complex(c)) <=
                              1e-12);
                }
                CHECK(ens.priors[0] == doctest::Approx(1.0 / n).epsilon(1e-12));
            }
        }
    }
    SUBCASE("custom priors are forwarded") {
        const PureEnsemble ens = equal_overlap_ensemble(3, 0.4, {0.5, 0.3, 0.2});
        CHECK(ens.priors[2] == doctest::Approx(0.2).epsilon(1e-15));
    }
    SUBCASE("parameter validation") {
        CHECK_THROWS_AS(equal_overlap_ensemble(1, 0.2), ValidationError);
        CHECK_THROWS_AS(equal_overlap_ensemble(3, 1.0), ValidationError);
        CHECK_THROWS_AS(equal_overlap_ensemble(3, -0.1), ValidationError);
        CHECK_THROWS_AS(equal_overlap_ensemble(3, 0.2, {0.5, 0.5}), ValidationError);
    }
}
