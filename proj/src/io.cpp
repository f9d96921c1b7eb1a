#include "rainbow/io.hpp"

#include <cstdio>
#include <stdexcept>

namespace rainbow {

json to_json(const Family& fam) {
    json j;
    j["n"] = fam.ground();
    j["sets"] = json::array();
    for (Word w : fam.members()) j["sets"].push_back(w);
    return j;
}

Family family_from_json(const json& j) {
    const int n = j.at("n").get<int>();
    if (n < 0 || n > kMaxGround) throw std::invalid_argument("family ground size out of range");
    std::vector<Word> sets;
    for (const auto& s : j.at("sets")) {
        const Word w = s.get<Word>();
        if (w & ~full_mask(n)) throw std::invalid_argument("set outside the ground");
        sets.push_back(w);
    }
    return Family(n, std::move(sets));
}

json to_json(const PosetPattern& p) {
    return json{{"size", p.size()}, {"leq", p.relation()}};
}

PosetPattern poset_from_json(const json& j) {
    if (j.is_string()) return poset_from_name(j.get<std::string>());
    auto leq = j.at("leq").get<std::vector<std::vector<bool>>>();
    if (j.contains("size") && j.at("size").get<std::size_t>() != leq.size())
        throw std::invalid_argument("poset size does not match the relation");
    return PosetPattern(std::move(leq));
}

json to_json(const Coloring& col) {
    json j;
    j["n"] = col.ground();
    j["total"] = col.total();
    j["colors"] = json::array();
    const auto sets = col.colored_sets();
    const auto colors = col.colored_set_colors();
    for (std::size_t i = 0; i < sets.size(); ++i) j["colors"].push_back(json::array({sets[i], colors[i]}));
    return j;
}

Coloring coloring_from_json(const json& j) {
    const int n = j.at("n").get<int>();
    std::vector<std::pair<Word, int>> pairs;
    for (const auto& p : j.at("colors")) pairs.emplace_back(p.at(0).get<Word>(), p.at(1).get<int>());
    Coloring col = Coloring::from_pairs(n, pairs);
    if (j.contains("total") && j.at("total").get<bool>() && !col.total())
        throw std::invalid_argument("coloring flagged total but some sets are uncolored");
    return col;
}

json to_json(const CoreChain& cc) {
    json j;
    j["n"] = cc.ground;
    j["chain"] = cc.chain;
    j["owners"] = json::array();
    for (int o : cc.owners) j["owners"].push_back(o < 0 ? json(nullptr) : json(o));
    return j;
}

CoreChain core_chain_from_json(const json& j) {
    CoreChain cc;
    cc.chain = j.at("chain").get<std::vector<Word>>();
    if (j.contains("n")) {
        cc.ground = j.at("n").get<int>();
    } else if (!cc.chain.empty()) {
        cc.ground = std::popcount(cc.chain.back());
    }
    if (j.contains("owners"))
        for (const auto& o : j.at("owners")) cc.owners.push_back(o.is_null() ? -1 : o.get<int>());
    return cc;
}

json to_json(const Embedding& e) {
    return json{{"image", e.image}, {"mode", e.mode == CopyMode::Strong ? "strong" : "weak"}, {"thin", e.thin}};
}

namespace {

json witness_json(const std::optional<PatternWitness>& w) {
    if (!w) return nullptr;
    json j = to_json(w->embedding);
    j["colors"] = w->colors;
    return j;
}

}  // namespace

json to_json(const WitnessVerdict& v) {
    return json{{"avoided", v.avoided()},
                {"mono_copy", witness_json(v.mono_copy)},
                {"rainbow_copy", witness_json(v.rainbow_copy)}};
}

json to_json(const SearchResult& r) {
    json j;
    j["problem"] = r.problem;
    if (auto v = r.integer()) {
        j["value"] = *v;
    } else {
        j["value"] = r.value_text();
    }
    j["method"] = to_string(r.method);
    j["witness"] = r.witness ? to_json(*r.witness) : json(nullptr);
    if (!r.witness_palette.empty()) j["witness_palette"] = r.witness_palette;
    j["checked"] = json{{"n_min", r.n_min}, {"n_max", r.n_max}};
    j["budget_exhausted"] = r.budget_exhausted;
    j["nodes"] = r.nodes;
    return j;
}

json to_json(const EntropyConstants& e) {
    return json{{"c", e.c}, {"residuals", e.residuals}, {"tol", e.tol}};
}

json to_json(const GenstrongBound& b) {
    json j{{"m_k", b.m_k}, {"bound", b.bound}};
    j["sharper"] = b.sharper ? json(*b.sharper) : json(nullptr);
    j["provenance"] = b.provenance;
    return j;
}

json to_json(const GridReport& g) {
    return json{{"claim", g.claim},
                {"max_violation", g.max_violation},
                {"argmax", json::array({g.alpha, g.beta})},
                {"points", g.points}};
}

std::string digest(const json& body) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : body.dump()) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

json wrap(const json& body, const RunManifest& m) {
    json man;
    man["command_line"] = m.command_line;
    man["config"] = m.config;
    man["seed"] = m.seed ? json(*m.seed) : json(nullptr);
    man["versions"] = json{{"toolkit", kToolkitVersion}, {"gmp", gmp_version}};
    man["timestamp"] = m.timestamp;
    man["wall_seconds"] = m.wall_seconds;
    man["result_digest"] = digest(body);
    return json{{"manifest", man}, {"result", body}};
}

json unwrap(const json& doc) {
    if (doc.is_object() && doc.contains("manifest") && doc.contains("result")) return doc.at("result");
    return doc;
}

}  // namespace rainbow
