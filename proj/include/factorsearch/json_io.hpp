#pragma once

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

#include "explorer.hpp"
#include "factor_search.hpp"
#include "lemma_oracles.hpp"

// JSON forms of certificates and reports. Batch outputs carry "format": 1.

namespace factorsearch {

inline constexpr int kJsonFormat = 1;

inline void to_json(nlohmann::json& j, const FactorizationCertificate& c) {
    j = nlohmann::json{{"group", c.group}, {"sizes", c.sizes}, {"factors", c.factors}};
}

inline void from_json(const nlohmann::json& j, FactorizationCertificate& c) {
    try {
        j.at("group").get_to(c.group);
        j.at("sizes").get_to(c.sizes);
        j.at("factors").get_to(c.factors);
    } catch (const nlohmann::json::exception& e) {
        throw BadCertificate("format", e.what());
    }
    for (auto& f : c.factors) std::sort(f.begin(), f.end());
}

inline void to_json(nlohmann::json& j, const LemmaReport& r) {
    j = nlohmann::json{{"lemma", to_string(r.lemma)}, {"position", r.position}, {"divisor", r.divisor},
                       {"bound", r.bound},           {"holds", r.holds}};
    if (!r.variant.empty()) j["variant"] = r.variant;
}

inline void to_json(nlohmann::json& j, const PruneSet& p) {
    j = nlohmann::json{{"prefix_div", p.prefix_div}, {"div2", p.div2}, {"div3", p.div3}};
}

inline void to_json(nlohmann::json& j, const SearchOptions& o) {
    j = nlohmann::json{{"normalize", o.normalize},
                       {"prunes", o.prunes},
                       {"deterministic", o.deterministic},
                       {"threads", o.threads},
                       {"node_budget", o.node_budget}};
}

inline void to_json(nlohmann::json& j, const PruneStats& s) {
    j = nlohmann::json{{"injectivity", s.injectivity}, {"coverage", s.coverage}, {"prefix_div", s.prefix_div},
                       {"div2", s.div2},               {"div3", s.div3}};
}

inline void to_json(nlohmann::json& j, const SearchReport& r) {
    j = nlohmann::json{{"format", kJsonFormat},
                       {"group", r.group},
                       {"sizes", r.profile.sizes},
                       {"outcome", r.found() ? "WITNESS" : "NONE"},
                       {"nodes_visited", r.nodes_visited},
                       {"nodes_by_position", r.nodes_by_position},
                       {"pruned", r.pruned},
                       {"normalized", r.normalized},
                       {"deterministic", r.deterministic},
                       {"elapsed_ms", r.elapsed_ms},
                       {"options", r.options}};
    j["certificate"] = r.witness ? nlohmann::json(*r.witness) : nlohmann::json(nullptr);
}

/// Report JSON with timing removed, for comparing runs.
inline nlohmann::json without_timing(nlohmann::json j) {
    if (j.is_object()) {
        j.erase("elapsed_ms");
        for (auto& [_, v] : j.items()) v = without_timing(v);
    } else if (j.is_array()) {
        for (auto& v : j) v = without_timing(v);
    }
    return j;
}

inline void to_json(nlohmann::json& j, const AtlasRow& r) {
    j = nlohmann::json{{"group", r.group},
                       {"order", r.order},
                       {"sizes", r.profile.sizes},
                       {"status", to_string(r.status)},
                       {"exists", r.exists()}};
    j["report"] = r.report ? nlohmann::json(*r.report) : nlohmann::json(nullptr);
    if (r.oracle_exists) j["oracle_exists"] = *r.oracle_exists;
    if (!r.note.empty()) j["note"] = r.note;
}

inline nlohmann::json atlas_json(const std::vector<AtlasRow>& rows) {
    std::size_t exists = 0, none = 0, skipped = 0;
    for (const auto& r : rows) {
        exists += r.status == AtlasStatus::EXISTS;
        none += r.status == AtlasStatus::NONE;
        skipped += r.status == AtlasStatus::SKIPPED;
    }
    return nlohmann::json{{"format", kJsonFormat},
                          {"kind", "atlas"},
                          {"summary", {{"rows", rows.size()}, {"exists", exists}, {"none", none}, {"skipped", skipped}}},
                          {"rows", rows}};
}

inline void to_json(nlohmann::json& j, const QA2Finding& f) {
    j = nlohmann::json{{"group", f.group},     {"certificate", f.certificate}, {"card_A2", f.card_a2},
                       {"closure_order", f.closure_order}, {"divides", f.divides}, {"normalized", f.normalized}};
}

inline void to_json(nlohmann::json& j, const QA2Summary& s) {
    nlohmann::json skipped = nlohmann::json::array();
    for (const auto& k : s.skipped)
        skipped.push_back({{"group", k.group}, {"sizes", k.profile.sizes}, {"normalized", k.normalized},
                           {"reason", k.reason}});
    j = nlohmann::json{{"groups", s.groups},
                       {"profiles_swept", s.profiles_swept},
                       {"factorizations_checked", s.factorizations_checked},
                       {"violations", s.violations},
                       {"unnormalized_pass", s.unnormalized_pass},
                       {"scope", s.scope},
                       {"skipped", skipped}};
}

inline nlohmann::json qa2_json(const QA2Result& r, bool include_all_findings) {
    nlohmann::json j{{"format", kJsonFormat},
                     {"kind", "qa2"},
                     {"question", "for G = A1*A2*A3, does card(A2) divide the order of <A2>?"},
                     {"summary", r.summary},
                     {"violations", r.violations()}};
    if (include_all_findings) j["findings"] = r.findings;
    return j;
}

inline void to_json(nlohmann::json& j, const Div3GapCase& c) {
    j = nlohmann::json{{"group", c.group},
                       {"subgroup", c.subgroup},
                       {"certificate", c.certificate},
                       {"is_factorization", c.is_factorization},
                       {"card_A2", c.card_a2},
                       {"M_order", c.m_order},
                       {"M_prime_order", c.m_prime_order},
                       {"M_divisible", c.m_divisible},
                       {"M_prime_divisible", c.m_prime_divisible}};
}

inline nlohmann::json div3_json(const Div3GapReport& r) {
    return nlohmann::json{{"format", kJsonFormat}, {"kind", "div3-gap"}, {"cases", r.cases}, {"elapsed_ms", r.elapsed_ms}};
}

}  // namespace factorsearch
