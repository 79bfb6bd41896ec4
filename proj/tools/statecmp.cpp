#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "statecmp/baselines.hpp"
#include "statecmp/ensemble_io.hpp"
#include "statecmp/montecarlo.hpp"
#include "statecmp/solver2oo2.hpp"
#include "statecmp/solver2oo3.hpp"

namespace {

using nlohmann::json;
using namespace statecmp;

// 12 significant digits in machine-readable output, 6 in human output.
std::string fmt(double v, int significant) {
    char buffer[48];
    std::snprintf(buffer, sizeof buffer, "%.*g", significant, v);
    return buffer;
}

json jnum(double v) {
    return std::strtod(fmt(v, 12).c_str(), nullptr);
}

json jmatrix(const ComplexMatrix& m) {
    json rows = json::array();
    for (Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Index c = 0; c < m.cols(); ++c)
            row.push_back(json::array({jnum(m(r, c).real()), jnum(m(r, c).imag())}));
        rows.push_back(std::move(row));
    }
    return rows;
}

json jpovm(const Povm& povm) {
    json out = json::object();
    for (const auto& e : povm.elements) out[e.label] = jmatrix(e.op.matrix);
    return out;
}

std::string entry_str(const Complex& z) {
    if (z.imag() == 0.0) return fmt(z.real(), 6);
    return fmt(z.real(), 6) + (z.imag() < 0 ? "-" : "+") + fmt(std::abs(z.imag()), 6) + "i";
}

void print_matrix(const std::string& name, const ComplexMatrix& m) {
    std::cout << "  " << name << ":\n";
    for (Index r = 0; r < m.rows(); ++r) {
        std::cout << "    [";
        for (Index c = 0; c < m.cols(); ++c) std::cout << " " << entry_str(m(r, c));
        std::cout << " ]\n";
    }
}

struct SimulationOutcome {
    json report;
    bool mismatch = false;
};

SimulationOutcome run_simulation(const Povm& povm, const MixedEnsemble& ens, int copies,
                                 std::uint64_t trials, std::uint64_t seed, int shards) {
    SimConfig config;
    config.trials = trials;
    config.seed = seed;
    config.povm = povm;
    config.ensemble = ens;
    config.copies = copies;
    if (shards > 1) {
        const std::uint64_t base = trials / static_cast<std::uint64_t>(shards);
        const std::uint64_t rest = trials % static_cast<std::uint64_t>(shards);
        for (std::uint64_t s = 0; s < static_cast<std::uint64_t>(shards); ++s)
            config.shards.push_back(base + (s < rest ? 1 : 0));
    }
    const SimReport rep = simulate(config);
    const double exact = exact_success(povm, ens, copies);
    const double deviation = std::abs(rep.empirical_p - exact);
    const double z = rep.std_error > 0 ? deviation / rep.std_error : (deviation > 0 ? 1e30 : 0);
    SimulationOutcome outcome;
    outcome.mismatch = z > 5.0;
    outcome.report = {
        {"trials", rep.trials},          {"seed", seed},
        {"shards", shards},              {"empirical_p", jnum(rep.empirical_p)},
        {"std_error", jnum(rep.std_error)}, {"exact_p", jnum(exact)},
        {"z", jnum(z)},                  {"error_count", rep.error_count},
    };
    return outcome;
}

void print_simulation(const json& rep) {
    std::cout << "simulation:\n";
    std::cout << "  trials       " << rep["trials"].get<std::uint64_t>() << "\n";
    std::cout << "  seed         " << rep["seed"].get<std::uint64_t>() << "\n";
    std::cout << "  empirical_p  " << fmt(rep["empirical_p"].get<double>(), 6) << "\n";
    std::cout << "  std_error    " << fmt(rep["std_error"].get<double>(), 6) << "\n";
    std::cout << "  exact_p      " << fmt(rep["exact_p"].get<double>(), 6) << "\n";
    std::cout << "  z            " << fmt(rep["z"].get<double>(), 6) << "\n";
    std::cout << "  error_count  " << rep["error_count"].get<std::uint64_t>() << "\n";
}

int run_solve2(double q1, double costheta, bool json_out, bool allow_limit,
               std::uint64_t sim_trials, std::uint64_t seed, int shards) {
    const bool boundary = costheta == 0.0 || costheta == 1.0;
    const POptResult po = p_opt(q1, costheta, allow_limit);
    const PSepResult ps = p_sep(q1, costheta, allow_limit);
    json out = {
        {"q1", jnum(q1)},       {"cos_theta", jnum(costheta)},
        {"p_opt", jnum(po.value)}, {"star", po.star},
        {"p_sep", jnum(ps.value)}, {"doublestar", ps.doublestar},
        {"gain", jnum(po.value - ps.value)},
    };

    bool mismatch = false;
    if (!boundary) {
        const TwoTwoInstance inst = make_two_two_instance(q1, costheta);
        const TwoTwoSolution sol = assemble_povm(inst);
        const SeparableSolution sep = assemble_separable(inst);
        out["alpha"] = jnum(sol.alpha);
        out["beta"] = jnum(sol.beta);
        out["povm"] = jpovm(sol.povm);
        out["separable_povm"] = jpovm(sep.povm);
        out["eps_limit"] = sep.eps_limit;
        if (sim_trials > 0) {
            const MixedEnsemble ens = to_mixed(make_pure_ensemble(
                inst.dim, {inst.psi1, inst.psi2}, {inst.q1, inst.q2()}));
            const SimulationOutcome sim =
                run_simulation(sol.povm, ens, 2, sim_trials, seed, shards);
            out["simulation"] = sim.report;
            mismatch = sim.mismatch;
        }
    } else if (sim_trials > 0) {
        throw ValidationError("simulation is unavailable at the boundary overlaps 0 and 1");
    }

    if (json_out) {
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "two-state comparison: q1 = " << fmt(q1, 6)
                  << ", cos(theta) = " << fmt(costheta, 6) << "\n";
        std::cout << "  p_opt        " << fmt(po.value, 6) << "\n";
        std::cout << "  branch       " << (po.star ? "condition (*) holds" : "condition (*) fails")
                  << "\n";
        std::cout << "  p_sep        " << fmt(ps.value, 6) << "\n";
        std::cout << "  branch_sep   "
                  << (ps.doublestar ? "condition (**) holds" : "condition (**) fails") << "\n";
        std::cout << "  gain         " << fmt(po.value - ps.value, 6) << "\n";
        if (!boundary) {
            std::cout << "  alpha        " << fmt(out["alpha"].get<double>(), 6) << "\n";
            std::cout << "  beta         " << fmt(out["beta"].get<double>(), 6) << "\n";
            if (out["eps_limit"].get<bool>())
                std::cout << "  note         separable unambiguity holds as an epsilon-limit\n";
            const TwoTwoInstance inst = make_two_two_instance(q1, costheta);
            const TwoTwoSolution sol = assemble_povm(inst);
            const SeparableSolution sep = assemble_separable(inst);
            std::cout << "optimal measurement:\n";
            for (const auto& e : sol.povm.elements) print_matrix(e.label, e.op.matrix);
            std::cout << "separable measurement:\n";
            for (const auto& e : sep.povm.elements) print_matrix(e.label, e.op.matrix);
            if (out.contains("simulation")) print_simulation(out["simulation"]);
        }
    }
    return mismatch ? 3 : 0;
}

int run_gain_grid(int steps, const std::string& path) {
    const std::vector<GainRow> rows = gain_grid(steps, steps);
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot open output file: " + path);
    out << "q1,cos_theta,p_opt,p_sep,gain,star,doublestar\n";
    for (const auto& row : rows)
        out << fmt(row.q1, 12) << "," << fmt(row.cos_theta, 12) << "," << fmt(row.p_opt, 12)
            << "," << fmt(row.p_sep, 12) << "," << fmt(row.gain, 12) << "," << (row.star ? 1 : 0)
            << "," << (row.doublestar ? 1 : 0) << "\n";
    if (!out.good()) throw ValidationError("failed while writing: " + path);
    std::cout << "wrote " << rows.size() << " rows to " << path << "\n";
    return 0;
}

int run_solve3(double costheta, bool json_out) {
    const ThreeReport report = p_opt3(costheta);
    const double heuristic = separable3_heuristic(costheta);
    json out = {
        {"cos_theta", jnum(costheta)},
        {"dim_H_prime", report.dim_H_prime},
        {"dim_kcap_a", report.dim_kcap_a},
        {"dim_kcap_b", report.dim_kcap_b},
        {"boundary", jnum(report.boundary)},
        {"region_ok", report.region_ok},
        {"p_opt", report.p_opt ? json(jnum(*report.p_opt)) : json(nullptr)},
        {"separable_heuristic", jnum(heuristic)},
    };
    if (json_out) {
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "three-state comparison: cos(theta) = " << fmt(costheta, 6)
                  << ", equal priors\n";
        std::cout << "  dim H'       " << report.dim_H_prime << "\n";
        std::cout << "  dim Kcap_a   " << report.dim_kcap_a << "\n";
        std::cout << "  dim Kcap_b   " << report.dim_kcap_b << "\n";
        std::cout << "  boundary     " << fmt(report.boundary, 6) << "\n";
        std::cout << "  region_ok    " << (report.region_ok ? "yes" : "no") << "\n";
        if (report.p_opt)
            std::cout << "  p_opt        " << fmt(*report.p_opt, 6) << "\n";
        else
            std::cout << "  p_opt        unknown (outside the coincidence region)\n";
        std::cout << "  separable_heuristic " << fmt(heuristic, 6) << "\n";
    }
    return 0;
}

int run_feasible(const std::string& path, bool want_witness, bool json_out) {
    const MixedEnsemble ens = as_mixed(load_ensemble(path));
    const ComparabilityReport report = is_comparable(ens);
    json out = {
        {"n_states", ens.size()},
        {"dim", ens.dim},
        {"feasible", report.comparable},
    };
    json states = json::array();
    for (std::size_t i = 0; i < report.state_ok.size(); ++i)
        states.push_back({{"index", i + 1}, {"ok", static_cast<bool>(report.state_ok[i])}});
    out["states"] = std::move(states);

    Povm witness;
    WitnessReport wreport;
    if (want_witness && report.comparable) {
        witness = witness_povm(ens);
        wreport = witness_report(witness, ens);
        out["witness"] = jpovm(witness);
        json table = json::array();
        for (const auto& row : wreport.table) {
            json jrow = json::array();
            for (double t : row) jrow.push_back(jnum(t));
            table.push_back(std::move(jrow));
        }
        out["witness_table"] = std::move(table);
        out["witness_pattern_ok"] = wreport.pattern_ok;
    }

    if (json_out) {
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "ensemble: " << ens.size() << " states, dim " << ens.dim << "\n";
        for (std::size_t i = 0; i < report.state_ok.size(); ++i)
            std::cout << "  state " << i + 1 << ": "
                      << (report.state_ok[i] ? "support not contained in the others -> ok"
                                             : "support contained in the others -> blocks comparison")
                      << "\n";
        std::cout << "feasible: " << (report.comparable ? "yes" : "no") << "\n";
        if (want_witness && report.comparable) {
            std::cout << "witness measurement:\n";
            for (const auto& e : witness.elements) print_matrix(e.label, e.op.matrix);
            std::cout << "  trace table (rows: detectors, columns: states):\n";
            for (const auto& row : wreport.table) {
                std::cout << "    [";
                for (double t : row) std::cout << " " << fmt(t, 6);
                std::cout << " ]\n";
            }
            std::cout << "  pattern_ok: " << (wreport.pattern_ok ? "yes" : "no") << "\n";
        }
    }
    return report.comparable ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"statecmp: unambiguous comparison of quantum states"};
    app.require_subcommand(1);

    double q1 = 0.5, costheta = 0.5;
    bool json_out = false, allow_limit = false;
    std::uint64_t sim_trials = 0, seed = 1;
    int shards = 1;
    auto* solve2 = app.add_subcommand(
        "solve2", "Optimal and separable comparison of two pure states, two copies");
    solve2->add_option("--q1", q1, "prior of the first state, in (0, 1)")->required();
    solve2->add_option("--costheta", costheta, "overlap of the two states, in (0, 1)")
        ->required();
    solve2->add_flag("--json", json_out, "machine-readable output");
    solve2->add_flag("--allow-limit", allow_limit,
                     "evaluate the closed forms at the boundary overlaps 0 and 1");
    solve2->add_option("--simulate", sim_trials, "Monte Carlo trials for a cross-check");
    solve2->add_option("--seed", seed, "simulation seed (default 1)");
    solve2->add_option("--shards", shards, "simulation shards (default 1)")
        ->check(CLI::PositiveNumber);

    int steps = 0;
    std::string grid_path;
    auto* grid = app.add_subcommand("gain-grid", "Sweep the parameter square to CSV");
    grid->add_option("--steps", steps, "grid steps per axis (>= 2)")->required();
    grid->add_option("--out", grid_path, "output CSV path")->required();

    double costheta3 = 0.2;
    bool json_out3 = false;
    auto* solve3 = app.add_subcommand(
        "solve3", "Equal-overlap, equal-prior comparison of three pure states");
    solve3->add_option("--costheta", costheta3, "pairwise overlap, in (0, 1)")->required();
    solve3->add_flag("--json", json_out3, "machine-readable output");

    std::string ens_path;
    bool want_witness = false, json_out_f = false;
    auto* feasible = app.add_subcommand(
        "feasible", "Check whether an ensemble admits unambiguous comparison");
    feasible->add_option("--input", ens_path, "ensemble JSON file")->required();
    feasible->add_flag("--witness", want_witness, "also construct the witness measurement");
    feasible->add_flag("--json", json_out_f, "machine-readable output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (solve2->parsed())
            return run_solve2(q1, costheta, json_out, allow_limit, sim_trials, seed, shards);
        if (grid->parsed()) return run_gain_grid(steps, grid_path);
        if (solve3->parsed()) return run_solve3(costheta3, json_out3);
        if (feasible->parsed()) return run_feasible(ens_path, want_witness, json_out_f);
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const NumericsError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
