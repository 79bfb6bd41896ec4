#include "statecmp/ensemble_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace statecmp {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& context, const std::string& msg) {
    throw ValidationError("ensemble file: " + context + ": " + msg);
}

Complex parse_entry(const json& node, const std::string& context) {
    if (!node.is_array() || node.size() != 2 || !node[0].is_number() || !node[1].is_number())
        fail(context, "expected a [re, im] pair");
    return Complex(node[0].get<double>(), node[1].get<double>());
}

} // namespace

LoadedEnsemble parse_ensemble(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("ensemble file: ") + e.what());
    }
    if (!doc.is_object()) fail("document", "expected a JSON object");
    if (!doc.contains("dim") || !doc["dim"].is_number_integer())
        fail("dim", "missing or not an integer");
    const Index dim = doc["dim"].get<Index>();
    if (dim < 1) fail("dim", "must be >= 1");
    if (!doc.contains("priors") || !doc["priors"].is_array())
        fail("priors", "missing or not a list");
    std::vector<double> priors;
    for (std::size_t i = 0; i < doc["priors"].size(); ++i) {
        const auto& p = doc["priors"][i];
        if (!p.is_number()) fail("priors[" + std::to_string(i) + "]", "expected a number");
        priors.push_back(p.get<double>());
    }
    if (!doc.contains("states") || !doc["states"].is_array())
        fail("states", "missing or not a list");
    const bool pure = doc.value("pure", false);
    if (doc.contains("pure") && !doc["pure"].is_boolean())
        fail("pure", "expected a boolean");

    const auto& states = doc["states"];
    if (pure) {
        std::vector<ComplexVector> vectors;
        for (std::size_t i = 0; i < states.size(); ++i) {
            const std::string context = "states[" + std::to_string(i) + "]";
            const auto& st = states[i];
            if (!st.is_array() || st.size() != static_cast<std::size_t>(dim))
                fail(context, "expected " + std::to_string(dim) +
                                  " [re, im] entries for a pure state");
            ComplexVector v(dim);
            for (Index k = 0; k < dim; ++k)
                v(k) = parse_entry(st[static_cast<std::size_t>(k)],
                                   context + "[" + std::to_string(k) + "]");
            vectors.push_back(std::move(v));
        }
        return make_pure_ensemble(dim, std::move(vectors), std::move(priors));
    }

    std::vector<ComplexMatrix> matrices;
    for (std::size_t i = 0; i < states.size(); ++i) {
        const std::string context = "states[" + std::to_string(i) + "]";
        const auto& st = states[i];
        if (!st.is_array() || st.size() != static_cast<std::size_t>(dim * dim))
            fail(context, "expected " + std::to_string(dim * dim) +
                              " [re, im] entries (dim^2, row-major) for a density matrix");
        ComplexMatrix m(dim, dim);
        for (Index r = 0; r < dim; ++r)
            for (Index c = 0; c < dim; ++c)
                m(r, c) = parse_entry(st[static_cast<std::size_t>(r * dim + c)],
                                      context + "[" + std::to_string(r * dim + c) + "]");
        matrices.push_back(std::move(m));
    }
    return make_mixed_ensemble(dim, std::move(matrices), std::move(priors));
}

LoadedEnsemble load_ensemble(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open ensemble file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_ensemble(buffer.str());
}

MixedEnsemble as_mixed(const LoadedEnsemble& loaded) {
    if (std::holds_alternative<PureEnsemble>(loaded))
        return to_mixed(std::get<PureEnsemble>(loaded));
    return std::get<MixedEnsemble>(loaded);
}

} // namespace statecmp
