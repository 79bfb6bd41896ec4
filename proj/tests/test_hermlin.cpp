#include <doctest.h>

#include "statecmp/hermlin.hpp"
#include "test_helpers.hpp"

using namespace statecmp;
using namespace testutil;

TEST_CASE("eigh on fixed spectra") {
    SUBCASE("identity") {
        const auto es = eigh(make_hermitian(ComplexMatrix::Identity(2, 2)));
        CHECK(es.eigenvalues(0) == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(es.eigenvalues(1) == doctest::Approx(1.0).epsilon(1e-14));
    }
    SUBCASE("diagonal") {
        ComplexMatrix m = ComplexMatrix::Zero(2, 2);
        m(1, 1) = 1.0;
        const auto es = eigh(make_hermitian(m));
        CHECK(es.eigenvalues(0) == doctest::Approx(0.0));
        CHECK(es.eigenvalues(1) == doctest::Approx(1.0));
    }
    SUBCASE("exchange matrix has symmetric spectrum") {
        ComplexMatrix x = ComplexMatrix::Zero(2, 2);
        x(0, 1) = x(1, 0) = 1.0;
        const auto es = eigh(make_hermitian(x));
        CHECK(es.eigenvalues(0) == doctest::Approx(-1.0));
        CHECK(es.eigenvalues(1) == doctest::Approx(1.0));
    }
}

TEST_CASE("eigh reconstructs random Hermitian matrices up to dim 16") {
    Xoshiro256ss rng(11);
    for (Index n : {2, 3, 5, 8, 13, 16}) {
        const ComplexMatrix m = random_hermitian(n, rng);
        const auto es = eigh(make_hermitian(m));
        const ComplexMatrix rebuilt = es.eigenvectors *
                                      es.eigenvalues.cast<Complex>().asDiagonal() *
                                      es.eigenvectors.adjoint();
        CHECK(max_abs_diff(rebuilt, m) <= tol::recon);
        // Ascending order.
        for (Index k = 1; k < n; ++k)
            CHECK(es.eigenvalues(k) >= es.eigenvalues(k - 1));
    }
}

TEST_CASE("non-Hermitian input is rejected") {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 1) = 1.0;
    CHECK_THROWS_AS(make_hermitian(m), ValidationError);
}

TEST_CASE("support of simple operators") {
    SUBCASE("rank-1 projector") {
        const ComplexVector e0 = basis_vector(2, 0);
        const Subspace s = support(make_hermitian(e0 * e0.adjoint()));
        REQUIRE(s.dim() == 1);
        CHECK(std::abs((s.basis.col(0).adjoint() * e0)(0)) == doctest::Approx(1.0));
    }
    SUBCASE("identity has full support") {
        for (Index d : {2, 3, 5})
            CHECK(support(make_hermitian(ComplexMatrix::Identity(d, d))).dim() == d);
    }
    SUBCASE("two-term diagonal mixture") {
        ComplexMatrix m = ComplexMatrix::Zero(4, 4);
        m(1, 1) = 0.5; // |01><01|
        m(2, 2) = 0.5; // |10><10|
        CHECK(support(make_hermitian(m, {2, 2})).dim() == 2);
    }
    SUBCASE("zero operator has zero support and full kernel") {
        const HermitianOperator z = make_hermitian(ComplexMatrix::Zero(3, 3));
        CHECK(support(z).dim() == 0);
        CHECK(kernel(z).dim() == 3);
    }
    SUBCASE("negative operator is rejected") {
        ComplexMatrix m = ComplexMatrix::Identity(2, 2);
        m(1, 1) = -0.5;
        CHECK_THROWS_AS(support(make_hermitian(m)), ValidationError);
    }
}

TEST_CASE("support and kernel are complementary for random PSD operators") {
    Xoshiro256ss rng(23);
    for (Index n : {2, 4, 7}) {
        // Rank-deficient PSD: project out some directions.
        ComplexMatrix m = random_psd(n, rng);
        const ComplexVector v = random_unit_vector(n, rng);
        const ComplexMatrix p = ComplexMatrix::Identity(n, n) - v * v.adjoint();
        m = p * m * p;
        const HermitianOperator op = make_hermitian(m);
        const Subspace s = support(op);
        const Subspace k = kernel(op);
        CHECK(s.dim() + k.dim() == n);
        CHECK(max_abs_diff(s.projector() + k.projector(), ComplexMatrix::Identity(n, n)) <=
              tol::orth * 10);
    }
}

TEST_CASE("subspace sum") {
    const Subspace s0 = make_subspace(3, basis_vector(3, 0));
    const Subspace s1 = make_subspace(3, basis_vector(3, 1));
    CHECK(subspace_sum(s0, s1).dim() == 2);
    CHECK(subspace_sum(s0, s0).dim() == 1);
    ComplexVector diag = (basis_vector(3, 0) + basis_vector(3, 1)).normalized();
    CHECK(subspace_sum(s0, make_subspace(3, diag)).dim() == 2);
    const Subspace other_ambient = make_subspace(2, basis_vector(2, 0));
    CHECK_THROWS_AS(subspace_sum(s0, other_ambient), ValidationError);
}

TEST_CASE("subspace intersection") {
    ComplexMatrix b01(3, 2), b12(3, 2);
    b01 << 1, 0, 0, 1, 0, 0;
    b12 << 0, 0, 1, 0, 0, 1;
    const Subspace s01 = make_subspace(3, b01);
    const Subspace s12 = make_subspace(3, b12);
    SUBCASE("overlapping planes meet in a line") {
        const Subspace isect = subspace_intersection(s01, s12);
        REQUIRE(isect.dim() == 1);
        CHECK(std::abs(isect.basis(1, 0)) == doctest::Approx(1.0));
    }
    SUBCASE("orthogonal lines meet trivially") {
        const Subspace a = make_subspace(3, basis_vector(3, 0));
        const Subspace b = make_subspace(3, basis_vector(3, 2));
        CHECK(subspace_intersection(a, b).dim() == 0);
    }
    SUBCASE("idempotence") {
        const Subspace isect = subspace_intersection(s01, s01);
        CHECK(isect.dim() == 2);
        CHECK(max_abs_diff(isect.projector(), s01.projector()) <= tol::isect * 100);
    }
    SUBCASE("contained in both arguments") {
        Xoshiro256ss rng(31);
        for (int rep = 0; rep < 10; ++rep) {
            // Build two 3-dim subspaces of dim 5 sharing one direction.
            const ComplexVector shared = random_unit_vector(5, rng);
            ComplexMatrix ca(5, 3), cb(5, 3);
            ca.col(0) = shared;
            cb.col(0) = shared;
            for (int k = 1; k < 3; ++k) {
                ca.col(k) = random_unit_vector(5, rng);
                cb.col(k) = random_unit_vector(5, rng);
            }
            const Subspace a = orthonormal_span(ca);
            const Subspace b = orthonormal_span(cb);
            const Subspace isect = subspace_intersection(a, b);
            REQUIRE(isect.dim() >= 1);
            const ComplexMatrix pi = isect.projector();
            CHECK(max_abs_diff(a.projector() * pi, pi) <= tol::isect * 100);
            CHECK(max_abs_diff(b.projector() * pi, pi) <= tol::isect * 100);
        }
    }
}

TEST_CASE("orthonormal span of a numerically zero matrix is trivial") {
    const ComplexMatrix junk = 1e-14 * ComplexMatrix::Random(4, 3);
    CHECK(orthonormal_span(junk).dim() == 0);
}

TEST_CASE("partial transpose") {
    Xoshiro256ss rng(37);
    SUBCASE("product operator transposes one factor") {
        const ComplexMatrix a = random_hermitian(2, rng);
        const ComplexMatrix b = random_hermitian(3, rng);
        const HermitianOperator op = make_hermitian(kron(a, b), {2, 3});
        CHECK(max_abs_diff(partial_transpose(op, 1).matrix, kron(a, b.transpose())) <= 1e-14);
        CHECK(max_abs_diff(partial_transpose(op, 0).matrix, kron(a.transpose(), b)) <= 1e-14);
    }
    SUBCASE("diagonal operators are fixed points") {
        ComplexMatrix d = ComplexMatrix::Zero(4, 4);
        d.diagonal() << 0.1, 0.2, 0.3, 0.4;
        const HermitianOperator op = make_hermitian(d, {2, 2});
        CHECK(max_abs_diff(partial_transpose(op, 0).matrix, d) == 0.0);
    }
    SUBCASE("maximally entangled projector becomes indefinite") {
        ComplexVector bell = ComplexVector::Zero(4);
        bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
        const HermitianOperator op = make_hermitian(bell * bell.adjoint(), {2, 2});
        CHECK(min_eigenvalue(partial_transpose(op, 1).matrix) == doctest::Approx(-0.5));
    }
    SUBCASE("involution and exact trace preservation") {
        const ComplexMatrix m = random_hermitian(12, rng);
        const HermitianOperator op = make_hermitian(m, {2, 3, 2});
        for (std::size_t f : {0u, 1u, 2u}) {
            const HermitianOperator once = partial_transpose(op, f);
            CHECK(once.matrix.trace() == m.trace());
            CHECK(max_abs_diff(partial_transpose(once, f).matrix, m) == 0.0);
        }
    }
    SUBCASE("factor index beyond the declared structure") {
        const HermitianOperator op = make_hermitian(ComplexMatrix::Identity(4, 4), {2, 2});
        CHECK_THROWS_AS(partial_transpose(op, 2), ValidationError);
    }
}

TEST_CASE("factor dimension bookkeeping") {
    CHECK_THROWS_AS(make_hermitian(ComplexMatrix::Identity(4, 4), {2, 3}), ValidationError);
    const HermitianOperator op = make_hermitian(ComplexMatrix::Identity(4, 4), {2, 2});
    CHECK(op.dim() == 4);
}
