#include "statecmp/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

#include "statecmp/rng.hpp"

namespace statecmp {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw ValidationError(msg);
}

struct Tuple {
    std::vector<int> indices;
    std::string truth;                // "a"/"b" for comparison POVMs, else the state label
    std::vector<double> outcome_cdf;  // cumulative outcome probabilities, element order
};

struct Plan {
    std::vector<Tuple> tuples;        // row-major over index tuples
    std::vector<double> prior_cdf;    // cumulative priors
    std::vector<std::string> labels;  // POVM element labels, fixed order
    std::vector<bool> conclusive;     // label != "?"
    int copies = 1;
    int n_states = 0;
};

// Precomputes per-tuple outcome distributions; sampling then only draws
// uniforms.  Mirrors the preparation model: indices i_1..i_C independent with
// probabilities q_i.
Plan build_plan(const SimConfig& config) {
    const auto& ens = config.ensemble;
    require(config.trials >= 1, "simulation needs at least one trial");
    require(config.copies >= 1, "copies must be positive");
    validate_povm(config.povm);
    Index big_dim = 1;
    for (int c = 0; c < config.copies; ++c) big_dim *= ens.dim;
    require(config.povm.dim() == big_dim,
            "POVM dimension does not match dim^copies of the ensemble");
    require(config.povm.elements.back().label == "?",
            "the inconclusive element '?' must be last");

    Plan plan;
    plan.copies = config.copies;
    plan.n_states = static_cast<int>(ens.size());
    for (const auto& e : config.povm.elements) {
        plan.labels.push_back(e.label);
        plan.conclusive.push_back(e.label != "?");
    }
    const bool comparison = config.povm.has("a");

    double acc = 0;
    for (double q : ens.priors) plan.prior_cdf.push_back(acc += q);

    std::vector<int> current(static_cast<std::size_t>(config.copies), 0);
    while (true) {
        Tuple tuple;
        tuple.indices = current;
        const bool all_equal = std::all_of(current.begin(), current.end(),
                                           [&](int i) { return i == current[0]; });
        tuple.truth = comparison ? (all_equal ? "a" : "b") : std::to_string(current[0] + 1);

        ComplexMatrix sigma = ens.states[static_cast<std::size_t>(current[0])];
        for (int c = 1; c < config.copies; ++c)
            sigma = kron(sigma, ens.states[static_cast<std::size_t>(current[c])]).eval();
        double total = 0;
        for (const auto& e : config.povm.elements) {
            double p = (e.op.matrix * sigma).trace().real();
            if (p < 0) {
                require(p >= -tol::psd, "negative outcome probability: defective POVM");
                p = 0;
            }
            tuple.outcome_cdf.push_back(total += p);
        }
        require(std::abs(total - 1.0) <= tol::prob_sum,
                "outcome probabilities sum to " + std::to_string(total) +
                    ": defective POVM");
        plan.tuples.push_back(std::move(tuple));

        int pos = config.copies - 1;
        while (pos >= 0 && ++current[static_cast<std::size_t>(pos)] == plan.n_states)
            current[static_cast<std::size_t>(pos--)] = 0;
        if (pos < 0) break;
    }
    return plan;
}

struct ShardTally {
    std::map<std::pair<std::string, std::string>, std::uint64_t> counts;
    std::uint64_t conclusive = 0;
    std::uint64_t error_count = 0;
};

int draw(const std::vector<double>& cdf, double u) {
    for (std::size_t k = 0; k < cdf.size(); ++k)
        if (u < cdf[k]) return static_cast<int>(k);
    // Residual floating-point mass goes to the last entry.
    return static_cast<int>(cdf.size()) - 1;
}

// Each trial owns a counter-based stream derived from (seed, trial index),
// so the tally of a trial range is independent of how ranges are assigned to
// shards or threads.
ShardTally run_range(const Plan& plan, std::uint64_t seed, std::uint64_t first,
                     std::uint64_t count) {
    ShardTally tally;
    for (std::uint64_t t = first; t < first + count; ++t) {
        SplitMix64 mixer(seed + (t + 1) * 0x9e3779b97f4a7c15ULL);
        Xoshiro256ss rng(mixer.next());
        std::uint64_t tuple_index = 0;
        for (int c = 0; c < plan.copies; ++c)
            tuple_index = tuple_index * static_cast<std::uint64_t>(plan.n_states) +
                          static_cast<std::uint64_t>(draw(plan.prior_cdf, rng.next_double()));
        const Tuple& tuple = plan.tuples[tuple_index];
        const int outcome = draw(tuple.outcome_cdf, rng.next_double());
        const std::string& label = plan.labels[static_cast<std::size_t>(outcome)];
        ++tally.counts[{tuple.truth, label}];
        if (plan.conclusive[static_cast<std::size_t>(outcome)]) {
            ++tally.conclusive;
            if (label != tuple.truth) ++tally.error_count;
        }
    }
    return tally;
}

std::vector<std::uint64_t> shard_plan(const SimConfig& config) {
    if (config.shards.empty()) return {config.trials};
    const std::uint64_t total =
        std::accumulate(config.shards.begin(), config.shards.end(), std::uint64_t{0});
    require(total == config.trials, "shard trial counts must sum to the total trials");
    return config.shards;
}

SimReport merge(const Plan&, const SimConfig& config,
                const std::vector<ShardTally>& tallies) {
    SimReport report;
    report.trials = config.trials;
    for (const auto& tally : tallies) {
        for (const auto& [key, count] : tally.counts) report.counts[key] += count;
        report.conclusive += tally.conclusive;
        report.error_count += tally.error_count;
    }
    report.empirical_p =
        static_cast<double>(report.conclusive) / static_cast<double>(report.trials);
    report.std_error = std::sqrt(report.empirical_p * (1.0 - report.empirical_p) /
                                 static_cast<double>(report.trials));
    return report;
}

} // namespace

SimReport simulate(const SimConfig& config) {
    const Plan plan = build_plan(config);
    const std::vector<std::uint64_t> shards = shard_plan(config);
    std::vector<ShardTally> tallies(shards.size());
    std::vector<std::thread> workers;
    std::uint64_t first = 0;
    for (std::size_t s = 0; s < shards.size(); ++s) {
        workers.emplace_back([&plan, &config, &tallies, s, first, count = shards[s]] {
            tallies[s] = run_range(plan, config.seed, first, count);
        });
        first += shards[s];
    }
    for (auto& w : workers) w.join();
    return merge(plan, config, tallies);
}

SimReport simulate_serial(const SimConfig& config) {
    const Plan plan = build_plan(config);
    const std::vector<std::uint64_t> shards = shard_plan(config);
    std::vector<ShardTally> tallies;
    std::uint64_t first = 0;
    for (std::uint64_t count : shards) {
        tallies.push_back(run_range(plan, config.seed, first, count));
        first += count;
    }
    return merge(plan, config, tallies);
}

double exact_success(const Povm& povm, const MixedEnsemble& ens, int copies) {
    require(copies >= 1, "copies must be positive");
    validate_povm(povm);
    Index big_dim = 1;
    for (int c = 0; c < copies; ++c) big_dim *= ens.dim;
    require(povm.dim() == big_dim, "POVM dimension does not match dim^copies");

    ComplexMatrix conclusive = ComplexMatrix::Zero(big_dim, big_dim);
    for (const auto& e : povm.elements)
        if (e.label != "?") conclusive += e.op.matrix;

    double success = 0;
    std::vector<int> current(static_cast<std::size_t>(copies), 0);
    const int n = static_cast<int>(ens.size());
    while (true) {
        double prior = 1;
        ComplexMatrix sigma = ens.states[static_cast<std::size_t>(current[0])];
        prior *= ens.priors[static_cast<std::size_t>(current[0])];
        for (int c = 1; c < copies; ++c) {
            sigma = kron(sigma, ens.states[static_cast<std::size_t>(current[c])]).eval();
            prior *= ens.priors[static_cast<std::size_t>(current[c])];
        }
        success += prior * (conclusive * sigma).trace().real();
        int pos = copies - 1;
        while (pos >= 0 && ++current[static_cast<std::size_t>(pos)] == n)
            current[static_cast<std::size_t>(pos--)] = 0;
        if (pos < 0) break;
    }
    return success;
}

} // namespace statecmp
