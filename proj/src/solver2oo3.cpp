#include "statecmp/solver2oo3.hpp"

#include <cmath>
#include <string>

namespace statecmp {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw ValidationError(msg);
}

void validate_cos(double cos_theta) {
    require(std::isfinite(cos_theta) && cos_theta > 0.0 && cos_theta < 1.0,
            "cos(theta) must lie in the open interval (0, 1)");
}

} // namespace

ThreeInstance make_three_instance(double cos_theta) {
    validate_cos(cos_theta);
    ThreeInstance inst;
    inst.cos_theta = cos_theta;
    inst.ensemble = equal_overlap_ensemble(3, cos_theta);
    return inst;
}

double region_boundary() {
    const double r2 = std::sqrt(2.0);
    return (r2 - std::sqrt(r2)) / (2.0 - r2);
}

ThreeReport p_opt3(double cos_theta) {
    const ThreeInstance inst = make_three_instance(cos_theta);
    const ReductionResult red = reduce3(inst);
    ThreeReport report;
    report.dim_H_prime = red.H_prime.dim();
    report.dim_kcap_a = red.kcap_a.dim();
    report.dim_kcap_b = red.kcap_b.dim();
    report.boundary = region_boundary();
    report.region_ok = cos_theta <= report.boundary;
    if (report.region_ok)
        report.p_opt = 1.0 - std::sqrt(8.0) / 9.0 * (4.0 * cos_theta - cos_theta * cos_theta);
    return report;
}

ReductionResult reduce3(const ThreeInstance& inst) {
    const DiscriminationProblem prob = build_problem(inst.ensemble, 2);
    const Subspace H = first_reduction(prob);
    const ReductionResult red = second_reduction(prob, H);
    const auto check = [](Index got, Index want, const char* name) {
        if (got != want)
            throw NumericsError(std::string("unexpected reduction structure: dim ") + name +
                                " = " + std::to_string(got) + ", expected " +
                                std::to_string(want));
    };
    check(red.H.dim(), 9, "H");
    check(red.kcap_a.dim(), 3, "kcap_a");
    check(red.kcap_b.dim(), 0, "kcap_b");
    check(red.H_prime.dim(), 6, "H'");
    // H' must coincide with the swap-symmetric subspace of H.
    const SymmetrySplit split = symmetry_split(red.H);
    const double defect =
        (red.H_prime.projector() - split.H_plus.projector()).cwiseAbs().maxCoeff();
    if (defect > 1e-8)
        throw NumericsError("H' deviates from the swap-symmetric subspace (defect " +
                            std::to_string(defect) + ")");
    return red;
}

double separable3_heuristic(double cos_theta) {
    validate_cos(cos_theta);
    const PureEnsemble ens = equal_overlap_ensemble(3, cos_theta);
    // Unnormalized reciprocal vectors r_i with <r_i|psi_j> proportional to
    // delta_ij; detector i is t_i |r_i><r_i| and succeeds on state i alone.
    ComplexMatrix psi(3, 3);
    for (int i = 0; i < 3; ++i) psi.col(i) = ens.states[i];
    const ComplexMatrix gram = psi.adjoint() * psi;
    const ComplexMatrix recip = psi * gram.inverse(); // columns r_i, <r_i|psi_j> = delta_ij
    // With detector i = t_i |r_i><r_i| the success on state i is exactly t_i;
    // the constraint is sum_i t_i |r_i><r_i| <= 1.  Coarse grid search over
    // (t_1, t_2, t_3), then the local success is sum_i q_i t_i and the
    // comparison value its square (both local outcomes must be conclusive).
    const double norm_sq[3] = {recip.col(0).squaredNorm(), recip.col(1).squaredNorm(),
                               recip.col(2).squaredNorm()};
    // Exact symmetric candidate: equal t saturating the operator constraint.
    ComplexMatrix r_sum = ComplexMatrix::Zero(3, 3);
    for (int k = 0; k < 3; ++k) r_sum += recip.col(k) * recip.col(k).adjoint();
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> r_es(r_sum);
    double best_local = 1.0 / r_es.eigenvalues().maxCoeff();
    const int steps = 40;
    for (int i1 = 0; i1 <= steps; ++i1)
        for (int i2 = 0; i2 <= steps; ++i2)
            for (int i3 = 0; i3 <= steps; ++i3) {
                const double t[3] = {static_cast<double>(i1) / steps / norm_sq[0],
                                     static_cast<double>(i2) / steps / norm_sq[1],
                                     static_cast<double>(i3) / steps / norm_sq[2]};
                ComplexMatrix sum = ComplexMatrix::Zero(3, 3);
                for (int k = 0; k < 3; ++k)
                    sum += t[k] * recip.col(k) * recip.col(k).adjoint();
                Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(sum);
                if (es.eigenvalues().maxCoeff() > 1.0 + 1e-12) continue;
                double local = 0;
                for (int k = 0; k < 3; ++k) local += ens.priors[k] * t[k];
                best_local = std::max(best_local, local);
            }
    return best_local * best_local;
}

} // namespace statecmp
