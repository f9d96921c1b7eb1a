#pragma once

// JSON forms of every artifact type and the run-manifest envelope.

#include <cstdint>
#include <string>

#include <json.hpp>

#include "rainbow/asymptotics.hpp"
#include "rainbow/coloring.hpp"
#include "rainbow/corechain.hpp"
#include "rainbow/lattice.hpp"
#include "rainbow/lubell.hpp"
#include "rainbow/poset.hpp"
#include "rainbow/search.hpp"

namespace rainbow {

using json = nlohmann::ordered_json;

inline constexpr const char* kToolkitVersion = "1.0.0";

json to_json(const Family& fam);
Family family_from_json(const json& j);

json to_json(const PosetPattern& p);
PosetPattern poset_from_json(const json& j);

json to_json(const Coloring& col);
Coloring coloring_from_json(const json& j);

json to_json(const CoreChain& cc);
CoreChain core_chain_from_json(const json& j);

json to_json(const Embedding& e);
json to_json(const WitnessVerdict& v);
json to_json(const SearchResult& r);
json to_json(const EntropyConstants& e);
json to_json(const GenstrongBound& b);
json to_json(const GridReport& g);

struct RunManifest {
    std::string command_line;
    json config = json::object();
    std::optional<std::uint64_t> seed;
    double wall_seconds = 0;
    std::string timestamp;  // ISO 8601, UTC
};

/// 64-bit FNV-1a of the compact dump, as 16 hex digits.
std::string digest(const json& body);

/// {"manifest": {...}, "result": body}
json wrap(const json& body, const RunManifest& m);
/// Accepts either a wrapped document or a bare body.
json unwrap(const json& doc);

}  // namespace rainbow
