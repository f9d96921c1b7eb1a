#include <doctest.h>

#include "rainbow/io.hpp"
#include "rainbow/repro.hpp"

using namespace rainbow;

TEST_CASE("family and poset json") {
    const Family f(3, {0, 0b101, 0b111});
    const json j = to_json(f);
    CHECK(j["n"] == 3);
    CHECK(family_from_json(j) == f);
    const auto v2 = standard_poset(StandardPoset::Fork, 2);
    CHECK(poset_from_json(to_json(v2)) == v2);
    CHECK(poset_from_json(json("C3")) == standard_poset(StandardPoset::Chain, 3));
    CHECK_THROWS(family_from_json(json{{"n", 2}, {"sets", {9}}}));
}

TEST_CASE("coloring and core chain json") {
    GenerateParams p;
    p.n = 4;
    const Coloring col = generate(ColoringKind::G2Lower, p);
    CHECK(coloring_from_json(to_json(col)) == col);
    const std::vector<Family> fams{Family(3, {0b1}), Family(3, {0b111})};
    const CoreChain cc = core_chain(fams);
    const CoreChain back = core_chain_from_json(to_json(cc));
    CHECK(back.chain == cc.chain);
    CHECK(back.owners == cc.owners);
}

TEST_CASE("search results serialise their witness and checked range") {
    const auto r = rainbow_ramsey(standard_poset(StandardPoset::Chain, 2), standard_poset(StandardPoset::Chain, 3),
                                  CopyMode::Weak, 3);
    const json j = to_json(r);
    CHECK(j["value"] == 2);
    CHECK(j["method"] == "canonical-partition");
    CHECK(j.contains("witness"));
    CHECK(j["checked"]["n_max"].get<int>() >= 1);
    const auto g = two_color_partial_exact(8, Objective::Mass);
    CHECK(to_json(g)["value"] == "17/8");
}

TEST_CASE("manifest envelope") {
    RunManifest m;
    m.command_line = "rainbow lubell";
    m.seed = 3;
    m.timestamp = "2024-01-01T00:00:00Z";
    const json body{{"mass", "5/6"}};
    const json doc = wrap(body, m);
    CHECK(doc["manifest"]["result_digest"] == digest(body));
    CHECK(doc["manifest"]["seed"] == 3);
    CHECK(unwrap(doc) == body);
    CHECK(unwrap(body) == body);
    CHECK(digest(body).size() == 16);
    CHECK(digest(body) != digest(json{{"mass", "5/7"}}));
}

TEST_CASE("claim registry covers every criterion once") {
    const auto& reg = claim_registry();
    CHECK(reg.size() == 14);
    std::vector<int> seen;
    for (const auto& c : reg) seen.push_back(c.criterion);
    std::sort(seen.begin(), seen.end());
    for (int i = 0; i < 14; ++i) CHECK(seen[i] == i + 1);
    CHECK_THROWS(run_claim("no-such-claim"));
}

TEST_CASE("cheap claims run and serialise") {
    const auto rep = run_claim("subcube-mass");
    CHECK(rep.pass());
    const json j = to_json(rep);
    CHECK(j["claim"] == "subcube-mass");
    CHECK(j["pass"] == true);
}
