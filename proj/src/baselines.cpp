#include "statecmp/baselines.hpp"

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
    if (allow_limit)
        require(cos_theta >= 0.0 && cos_theta <= 1.0,
                "cos(theta) must lie in [0, 1] in limit mode");
    else
        require(cos_theta > 0.0 && cos_theta < 1.0,
                "cos(theta) must lie in the open interval (0, 1)");
}

} // namespace

bool condition_doublestar(double q1, double cos_theta) {
    const double q_max = std::max(q1, 1.0 - q1);
    return cos_theta < std::sqrt((1.0 - q_max) / q_max);
}

PSepResult p_sep(double q1, double cos_theta, bool allow_limit) {
    validate_q1(q1);
    validate_cos(cos_theta, allow_limit);
    const double q2 = 1.0 - q1;
    PSepResult result;
    result.doublestar = condition_doublestar(q1, cos_theta);
    if (result.doublestar) {
        const double local = 1.0 - 2.0 * std::sqrt(q1 * q2) * cos_theta;
        result.value = local * local;
    } else {
        const double sin2 = 1.0 - cos_theta * cos_theta;
        const double q_max = std::max(q1, q2);
        result.value = q_max * q_max * sin2 * sin2;
    }
    return result;
}

Povm local_ud_povm(double q1, double cos_theta) {
    validate_q1(q1);
    validate_cos(cos_theta, false);
    const double q2 = 1.0 - q1;
    const double c = cos_theta;
    const double s2 = 1.0 - c * c;
    double w1, w2;
    if (condition_doublestar(q1, cos_theta)) {
        w1 = (1.0 - std::sqrt(q2 / q1) * c) / s2;
        w2 = (1.0 - std::sqrt(q1 / q2) * c) / s2;
    } else {
        // Detect only the majority state; the minority detector gets weight 0.
        w1 = q1 >= q2 ? 1.0 : 0.0;
        w2 = q1 >= q2 ? 0.0 : 1.0;
    }
    const TwoTwoInstance inst = make_two_two_instance(q1, cos_theta);
    const double s = std::sqrt(s2);
    // bar2 annihilates psi2, so weighted |bar2><bar2| is the psi1 detector.
    const ComplexVector bar1 = (inst.psi2 - c * inst.psi1) / s;
    const ComplexVector bar2 = (inst.psi1 - c * inst.psi2) / s;
    const ComplexMatrix f1 = w1 * bar2 * bar2.adjoint();
    const ComplexMatrix f2 = w2 * bar1 * bar1.adjoint();
    const ComplexMatrix fq = ComplexMatrix::Identity(2, 2) - f1 - f2;
    Povm povm;
    povm.elements.push_back({"1", make_hermitian(f1)});
    povm.elements.push_back({"2", make_hermitian(f2)});
    povm.elements.push_back({"?", make_hermitian(fq)});
    validate_povm(povm);
    return povm;
}

SeparableSolution assemble_separable(const TwoTwoInstance& inst) {
    SeparableSolution sol;
    sol.doublestar = condition_doublestar(inst.q1, inst.cos_theta);
    sol.q_max = std::max(inst.q1, inst.q2());
    sol.eps_limit = !sol.doublestar;
    sol.local_povm = local_ud_povm(inst.q1, inst.cos_theta);
    const ComplexMatrix& f1 = sol.local_povm["1"].matrix;
    const ComplexMatrix& f2 = sol.local_povm["2"].matrix;

    const Index n = inst.dim * inst.dim;
    const std::vector<Index> factors{inst.dim, inst.dim};
    const ComplexMatrix fa = kron(f1, f1) + kron(f2, f2);
    const ComplexMatrix fb = kron(f1, f2) + kron(f2, f1);
    const ComplexMatrix fq = ComplexMatrix::Identity(n, n) - fa - fb;
    sol.povm.elements.push_back({"a", make_hermitian(fa, factors)});
    sol.povm.elements.push_back({"b", make_hermitian(fb, factors)});
    sol.povm.elements.push_back({"?", make_hermitian(fq, factors)});
    validate_povm(sol.povm);

    sol.p_sep = p_sep(inst.q1, inst.cos_theta).value;
    const PureEnsemble ens = make_pure_ensemble(
        inst.dim, {inst.psi1, inst.psi2}, {inst.q1, inst.q2()});
    const DiscriminationProblem prob = build_problem(ens, 2);
    const double measured = prob.eta_a * (fa * prob.rho_a.matrix).trace().real() +
                            prob.eta_b * (fb * prob.rho_b.matrix).trace().real();
    if (std::abs(measured - sol.p_sep) > 1e-10)
        throw NumericsError("assembled separable measurement success " +
                            std::to_string(measured) + " deviates from the closed form " +
                            std::to_string(sol.p_sep));
    return sol;
}

double gain(double q1, double cos_theta) {
    return p_opt(q1, cos_theta).value - p_sep(q1, cos_theta).value;
}

std::vector<GainRow> gain_grid(int steps_q, int steps_c) {
    require(steps_q >= 2 && steps_c >= 2, "grid needs at least 2 steps per axis");
    std::vector<GainRow> rows;
    rows.reserve(static_cast<std::size_t>(steps_q) * static_cast<std::size_t>(steps_c));
    for (int i = 0; i < steps_q; ++i) {
        const double q1 = (i + 0.5) / steps_q;
        for (int j = 0; j < steps_c; ++j) {
            const double c = (j + 0.5) / steps_c;
            GainRow row;
            row.q1 = q1;
            row.cos_theta = c;
            const POptResult po = p_opt(q1, c);
            const PSepResult ps = p_sep(q1, c);
            row.p_opt = po.value;
            row.star = po.star;
            row.p_sep = ps.value;
            row.doublestar = ps.doublestar;
            row.gain = po.value - ps.value;
            rows.push_back(row);
        }
    }
    return rows;
}

} // namespace statecmp
