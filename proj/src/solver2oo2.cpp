#include "statecmp/solver2oo2.hpp"

#include <cmath>
#include <string>

namespace statecmp {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw ValidationError(msg);
}

void validate_q1(double q1) {
    require(std::isfinite(q1) && q1 > tol::prior_edge && q1 < 1.0 - tol::prior_edge,
            "q1 must lie in (0, 1) and keep both priors non-vanishing");
}

void validate_cos(double cos_theta, bool allow_limit) {
    require(std::isfinite(cos_theta), "cos(theta) must be finite");
    if (allow_limit) {
        require(cos_theta >= 0.0 && cos_theta <= 1.0,
                "cos(theta) must lie in [0, 1] in limit mode");
        return;
    }
    require(cos_theta > 0.0 && cos_theta < 1.0,
            cos_theta == 0.0 || cos_theta == 1.0
                ? "orthogonal (cos=0) and co-linear (cos=1) pairs are excluded; "
                  "use limit mode to evaluate the closed forms at the boundary"
                : "cos(theta) must lie in the open interval (0, 1)");
}

// psi_bar_1 ~ psi2 - c psi1 and psi_bar_2 ~ psi1 - c psi2: the unit vectors
// orthogonal to psi1 resp. psi2 in their common plane.  This sign convention
// keeps all closed-form components non-negative.
std::pair<ComplexVector, ComplexVector> bar_vectors(const TwoTwoInstance& inst) {
    const double s = std::sqrt(1.0 - inst.cos_theta * inst.cos_theta);
    const ComplexVector bar1 = (inst.psi2 - inst.cos_theta * inst.psi1) / s;
    const ComplexVector bar2 = (inst.psi1 - inst.cos_theta * inst.psi2) / s;
    return {bar1, bar2};
}

} // namespace

TwoTwoInstance make_two_two_instance(double q1, double cos_theta) {
    validate_q1(q1);
    validate_cos(cos_theta, false);
    TwoTwoInstance inst;
    inst.q1 = q1;
    inst.cos_theta = cos_theta;
    inst.dim = 2;
    inst.psi1 = ComplexVector::Zero(2);
    inst.psi1(0) = 1.0;
    inst.psi2 = ComplexVector::Zero(2);
    inst.psi2(0) = cos_theta;
    inst.psi2(1) = std::sqrt(1.0 - cos_theta * cos_theta);
    return inst;
}

TwoTwoInstance make_two_two_instance(double q1, const ComplexVector& psi1,
                                     const ComplexVector& psi2) {
    validate_q1(q1);
    require(psi1.size() == psi2.size() && psi1.size() >= 2,
            "state vectors must share a dimension >= 2");
    require(std::abs(psi1.norm() - 1.0) <= tol::orth && std::abs(psi2.norm() - 1.0) <= tol::orth,
            "state vectors must be normalized");
    const Complex overlap = psi1.dot(psi2);
    require(std::abs(overlap.imag()) <= 1e-12,
            "overlap must be real (fix the relative phase of the states first)");
    validate_cos(overlap.real(), false);
    TwoTwoInstance inst;
    inst.q1 = q1;
    inst.cos_theta = overlap.real();
    inst.dim = psi1.size();
    inst.psi1 = psi1;
    inst.psi2 = psi2;
    return inst;
}

EBasis e_basis(const TwoTwoInstance& inst) {
    const double c = inst.cos_theta;
    EBasis basis;
    basis.n_plus = std::sqrt(1.0 + c * c);
    basis.n_minus = std::sqrt(1.0 - c * c);
    const auto [bar1, bar2] = bar_vectors(inst);
    const ComplexVector p11 = kron(ComplexMatrix(inst.psi1), ComplexMatrix(inst.psi1));
    const ComplexVector p22 = kron(ComplexMatrix(inst.psi2), ComplexMatrix(inst.psi2));
    const ComplexVector b12 = kron(ComplexMatrix(bar1), ComplexMatrix(bar2));
    const ComplexVector b21 = kron(ComplexMatrix(bar2), ComplexMatrix(bar1));
    const double r2 = std::sqrt(2.0);
    basis.e1 = (p11 + p22) / (r2 * basis.n_plus);
    basis.e2 = (p11 - p22) / (r2 * basis.n_minus);
    basis.e3 = (b12 + b21) / (r2 * basis.n_plus);
    basis.e4 = (b12 - b21) / (r2 * basis.n_minus);
    return basis;
}

GammaVectors gamma_vector(double cos_theta, const EBasis& basis) {
    const double c = cos_theta;
    const double np2 = 1.0 + c * c;
    GammaVectors g;
    g.g1 = 2.0 * c / np2;
    g.g3 = (1.0 - c * c) / np2;
    g.gamma = g.g1 * basis.e1 + g.g3 * basis.e3;
    g.gamma_perp = g.g3 * basis.e1 - g.g1 * basis.e3;
    return g;
}

bool condition_star(double eta_a, double eta_b, double cos_theta) {
    require(std::abs(eta_a + eta_b - 1.0) <= 1e-12, "eta_a + eta_b must equal 1");
    require(eta_a >= eta_b, "condition expects eta_a >= eta_b");
    const double rhs =
        std::sqrt(eta_a / eta_b) * (1.0 - std::sqrt((eta_a - eta_b) / eta_a));
    return cos_theta < rhs;
}

POptResult p_opt(double q1, double cos_theta, bool allow_limit) {
    validate_q1(q1);
    validate_cos(cos_theta, allow_limit);
    const double q2 = 1.0 - q1;
    const double eta_a = q1 * q1 + q2 * q2;
    const double eta_b = 2.0 * q1 * q2;
    POptResult result;
    result.star = condition_star(eta_a, eta_b, cos_theta);
    if (result.star) {
        result.value = 1.0 - 2.0 * std::sqrt(eta_a * eta_b) * cos_theta;
    } else {
        const double c2 = cos_theta * cos_theta;
        result.value = (1.0 - c2) / (1.0 + c2) * (1.0 - 0.5 * eta_b * (1.0 - c2));
    }
    return result;
}

TwoTwoSolution assemble_povm(const TwoTwoInstance& inst) {
    const double eta_a = inst.eta_a();
    const double eta_b = inst.eta_b();
    TwoTwoSolution sol;
    sol.basis = e_basis(inst);
    sol.gamma = gamma_vector(inst.cos_theta, sol.basis);
    sol.star = condition_star(eta_a, eta_b, inst.cos_theta);
    if (sol.star) {
        const double g1 = sol.gamma.g1;
        const double g3sq = sol.gamma.g3 * sol.gamma.g3;
        sol.alpha = (1.0 - std::sqrt(eta_b / eta_a) * g1) / g3sq;
        sol.beta = (1.0 - std::sqrt(eta_a / eta_b) * g1) / g3sq;
    } else {
        sol.alpha = 1.0;
        sol.beta = 0.0;
    }

    const Index n = inst.dim * inst.dim;
    const std::vector<Index> factors{inst.dim, inst.dim};
    const ComplexMatrix fa = sol.alpha * sol.gamma.gamma_perp * sol.gamma.gamma_perp.adjoint() +
                             sol.basis.e2 * sol.basis.e2.adjoint();
    const ComplexMatrix fb = sol.beta * sol.basis.e3 * sol.basis.e3.adjoint() +
                             sol.basis.e4 * sol.basis.e4.adjoint();
    const ComplexMatrix fq = ComplexMatrix::Identity(n, n) - fa - fb;
    sol.povm.elements.push_back({"a", make_hermitian(fa, factors)});
    sol.povm.elements.push_back({"b", make_hermitian(fb, factors)});
    sol.povm.elements.push_back({"?", make_hermitian(fq, factors)});
    validate_povm(sol.povm);

    sol.p_opt = p_opt(inst.q1, inst.cos_theta).value;
    // The assembled measurement must reproduce the closed form.
    const PureEnsemble ens = make_pure_ensemble(
        inst.dim, {inst.psi1, inst.psi2}, {inst.q1, inst.q2()});
    const DiscriminationProblem prob = build_problem(ens, 2);
    const double measured = prob.eta_a * (fa * prob.rho_a.matrix).trace().real() +
                            prob.eta_b * (fb * prob.rho_b.matrix).trace().real();
    if (std::abs(measured - sol.p_opt) > 1e-10)
        throw NumericsError("assembled measurement success " + std::to_string(measured) +
                            " deviates from the closed form " + std::to_string(sol.p_opt));
    return sol;
}

double two_state_ud_optimum(double p_a, double p_b, double g) {
    require(p_a > 0 && p_b > 0 && std::abs(p_a + p_b - 1.0) <= 1e-10,
            "priors must be positive and sum to 1");
    require(g >= 0 && g < 1.0, "overlap must lie in [0, 1)");
    const double p_max = std::max(p_a, p_b);
    const double p_min = 1.0 - p_max;
    if (g < std::sqrt(p_min / p_max)) return 1.0 - 2.0 * std::sqrt(p_a * p_b) * g;
    return p_max * (1.0 - g * g);
}

} // namespace statecmp
