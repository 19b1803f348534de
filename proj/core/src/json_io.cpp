#include "fproc/json_io.hpp"

#include "fproc/errors.hpp"

#include <json.hpp>

namespace fproc {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json map_to_json(const FuzzyProcess& p, bool delta) {
    ordered_json obj = ordered_json::object();
    for (std::size_t i = 0; i < p.size(); ++i) {
        const Membership& v = delta ? p.delta(i) : p.gamma(i);
        if (!v.is_zero())
            obj[p.universe()->label(i)] = v.str();
    }
    return obj;
}

void fill_from_json(const ordered_json& obj, const UniversePtr& universe, const char* field,
                    std::vector<Membership>& out) {
    for (const auto& [label, value] : obj.items()) {
        const auto idx = universe->index_of(label);
        if (!idx)
            throw ValidationError(std::string(field) + " names unknown execution label '" + label + "'");
        if (!value.is_string())
            throw ValidationError(std::string(field) + " value for '" + label +
                                  "' must be a rational string");
        std::string why;
        const auto m = Membership::parse(value.get<std::string>(), &why);
        if (!m)
            throw ValidationError(std::string(field) + " value for '" + label + "': " + why);
        out[*idx] = *m;
    }
}

} // namespace

std::string to_json(const FuzzyProcess& p) {
    ordered_json doc;
    doc["universe"] = p.universe()->labels();
    doc["delta"] = map_to_json(p, true);
    doc["gamma"] = map_to_json(p, false);
    return doc.dump();
}

std::string to_json(const Verdict& verdict) {
    ordered_json doc;
    doc["check"] = verdict.check;
    doc["holds"] = verdict.holds;
    doc["level"] = to_string(verdict.level);
    doc["warnings"] = verdict.warnings;
    switch (verdict.witness.kind) {
    case WitnessKind::none:
        break;
    case WitnessKind::label:
        doc["witness"] = ordered_json{{"label", verdict.witness.label}};
        break;
    case WitnessKind::tester:
        doc["witness"] = ordered_json{{"tester", ordered_json::parse(to_json(*verdict.witness.tester))}};
        break;
    case WitnessKind::chain_component:
        doc["witness"] = ordered_json{{"level", verdict.witness.level},
                                      {"component", verdict.witness.component},
                                      {"label", verdict.witness.label}};
        break;
    }
    return doc.dump();
}

FuzzyProcess process_from_json(std::string_view text) {
    ordered_json doc = ordered_json::parse(text, nullptr, false);
    if (doc.is_discarded())
        throw ValidationError("malformed process JSON");
    if (!doc.is_object() || !doc.contains("universe") || !doc["universe"].is_array())
        throw ValidationError("process JSON requires a \"universe\" label array");

    std::vector<std::string> labels;
    for (const auto& l : doc["universe"]) {
        if (!l.is_string())
            throw ValidationError("universe labels must be strings");
        labels.push_back(l.get<std::string>());
    }
    UniversePtr universe = make_universe(std::move(labels));

    std::vector<Membership> delta(universe->size());
    std::vector<Membership> gamma(universe->size());
    if (doc.contains("delta")) {
        if (!doc["delta"].is_object())
            throw ValidationError("delta must be an object");
        fill_from_json(doc["delta"], universe, "delta", delta);
    }
    if (doc.contains("gamma")) {
        if (!doc["gamma"].is_object())
            throw ValidationError("gamma must be an object");
        fill_from_json(doc["gamma"], universe, "gamma", gamma);
    }
    return FuzzyProcess(std::move(universe), std::move(delta), std::move(gamma));
}

} // namespace fproc
