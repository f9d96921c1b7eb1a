// rainbow: command-line front end for the Boolean-lattice Ramsey toolkit.

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>

#include "rainbow/asymptotics.hpp"
#include "rainbow/coloring.hpp"
#include "rainbow/corechain.hpp"
#include "rainbow/io.hpp"
#include "rainbow/lubell.hpp"
#include "rainbow/repro.hpp"
#include "rainbow/search.hpp"

using namespace rainbow;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitBudget = 2;

struct Common {
    std::string out;
    std::string format = "json";
    std::optional<std::uint64_t> seed;
    int threads = 1;
    std::uint64_t budget = 0;
    int n_cap = 4;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

CopyMode parse_mode(const std::string& s) {
    if (s == "weak") return CopyMode::Weak;
    if (s == "strong") return CopyMode::Strong;
    throw UsageError("mode must be weak or strong");
}

std::string slurp(const std::string& path) {
    if (path.empty() || path == "-") {
        return std::string(std::istreambuf_iterator<char>(std::cin), {});
    }
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open " + path);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

bool looks_like_json(const std::string& text) {
    const auto pos = text.find_first_not_of(" \t\r\n");
    return pos != std::string::npos && (text[pos] == '{' || text[pos] == '[');
}

Coloring read_coloring(const std::string& path) {
    const std::string text = slurp(path);
    if (looks_like_json(text)) {
        json body = unwrap(json::parse(text));
        // `coloring gen` emits {"kind": ..., "coloring": {...}}
        if (body.contains("coloring")) body = body.at("coloring");
        return coloring_from_json(body);
    }
    return parse_col_text(text);
}

Family read_family(const std::string& path) {
    const std::string text = slurp(path);
    if (looks_like_json(text)) return family_from_json(unwrap(json::parse(text)));
    return parse_fam_text(text);
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
}

/// Rows of a CSV table built from an array of flat objects.
std::string to_csv(const json& rows) {
    std::ostringstream out;
    if (rows.empty()) return "";
    bool first = true;
    for (const auto& [key, _] : rows.front().items()) {
        out << (first ? "" : ",") << key;
        first = false;
    }
    out << "\n";
    for (const auto& row : rows) {
        first = true;
        for (const auto& [_, v] : row.items()) {
            out << (first ? "" : ",") << csv_escape(v.is_string() ? v.get<std::string>() : v.dump());
            first = false;
        }
        out << "\n";
    }
    return out.str();
}

std::string utc_now() {
    const std::time_t t = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

class Emitter {
public:
    Emitter(const Common& common, std::string command_line)
        : common_(common), command_line_(std::move(command_line)), start_(std::chrono::steady_clock::now()) {}

    /// `table` is used for --format csv; commands without one reject csv.
    int emit(const json& body, json config, const std::optional<json>& table = std::nullopt, bool exhausted = false) {
        std::string text;
        if (common_.format == "csv") {
            if (!table) throw UsageError("--format csv is not available for this command");
            text = to_csv(*table);
        } else {
            RunManifest m;
            m.command_line = command_line_;
            config["threads"] = common_.threads;
            config["budget"] = common_.budget;
            m.config = std::move(config);
            m.seed = common_.seed;
            m.timestamp = utc_now();
            m.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
            text = wrap(body, m).dump(2) + "\n";
        }
        if (common_.out.empty()) {
            std::cout << text;
        } else {
            std::ofstream out(common_.out);
            if (!out) throw UsageError("cannot write " + common_.out);
            out << text;
        }
        return exhausted ? kExitBudget : kExitOk;
    }

private:
    const Common& common_;
    std::string command_line_;
    std::chrono::steady_clock::time_point start_;
};

SearchOptions search_options(const Common& c) {
    SearchOptions o;
    o.budget = c.budget;
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rainbow Ramsey toolkit for the Boolean lattice"};
    app.require_subcommand(1);
    app.fallthrough();
    Common common;
    app.add_option("--out", common.out, "Write the result here instead of standard output");
    app.add_option("--format", common.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--seed", common.seed, "Random seed");
    app.add_option("--threads", common.threads, "Worker threads")->check(CLI::PositiveNumber);
    app.add_option("--budget", common.budget, "Node cap per search (0 = unlimited)");
    app.add_option("--n-cap", common.n_cap, "Largest ground size searched");

    std::string command_line;
    for (int i = 0; i < argc; ++i) command_line += (i ? " " : "") + std::string(argv[i]);
    Emitter emitter(common, command_line);

    // ramsey
    auto* ramsey_cmd = app.add_subcommand("ramsey", "R_k(P_1,...,P_k) by brute force");
    std::vector<std::string> ramsey_ps;
    std::string ramsey_mode = "weak";
    ramsey_cmd->add_option("--p", ramsey_ps, "Pattern per color (repeat)")->required();
    ramsey_cmd->add_option("--mode", ramsey_mode, "weak or strong");

    // rainbow
    auto* rainbow_cmd = app.add_subcommand("rainbow", "RR(P,Q) or RR*(P,Q) by canonical-partition search");
    std::string rr_p, rr_q, rr_mode = "weak";
    rainbow_cmd->add_option("--p", rr_p, "Monochromatic pattern")->required();
    rainbow_cmd->add_option("--q", rr_q, "Rainbow pattern")->required();
    rainbow_cmd->add_option("--mode", rr_mode, "weak or strong");

    // threshold
    auto* threshold_cmd = app.add_subcommand("threshold", "F(n,k) or F'(n,k) by exhaustive search");
    int th_n = 0, th_k = 2;
    bool th_partial = false, th_raw = false;
    threshold_cmd->add_option("--n", th_n, "Ground size")->required();
    threshold_cmd->add_option("--k", th_k, "Number of colors");
    threshold_cmd->add_flag("--partial", th_partial, "Partial colorings (F')");
    threshold_cmd->add_flag("--raw", th_raw, "Plain enumeration, k = 2 only");

    // two-color
    auto* two_cmd = app.add_subcommand("two-color", "F'(n,2) or G'(n,2) by the core-chain DP");
    int two_lo = -1, two_hi = -1;
    std::string two_obj = "size";
    two_cmd->add_option("--n", two_lo, "Ground size (or first of a sweep)")->required();
    two_cmd->add_option("--n-max", two_hi, "Last ground size of a sweep");
    two_cmd->add_option("--objective", two_obj, "size or mass")->check(CLI::IsMember({"size", "mass"}));

    // fork
    auto* fork_cmd = app.add_subcommand("fork", "g_k(r) exactly, or f_k(r) by brute force with --brute");
    std::uint64_t fork_r = 2, fork_r_max = 0;
    int fork_k = 1;
    bool fork_brute = false;
    fork_cmd->add_option("--r", fork_r, "Fork size (or first of a sweep)")->required();
    fork_cmd->add_option("--r-max", fork_r_max, "Last fork size of a sweep");
    fork_cmd->add_option("--k", fork_k, "Number of colors");
    fork_cmd->add_flag("--brute", fork_brute, "Compute f_k(r) = R_k(V_r) instead (k <= 2)");

    // lubell
    auto* lubell_cmd = app.add_subcommand("lubell", "Lubell mass of a family, or of a subcube");
    std::string lub_input;
    std::vector<int> lub_subcube;
    bool lub_identity = false;
    lubell_cmd->add_option("--input", lub_input, "Family file (FAM v1 or JSON; - for stdin)");
    lubell_cmd->add_option("--subcube", lub_subcube, "n a b")->expected(3);
    lubell_cmd->add_flag("--identity", lub_identity, "Also report the max-partition identity residual");

    // corechain
    auto* core_cmd = app.add_subcommand("corechain", "Core chain of mutually comparable families");
    std::string core_input;
    core_cmd->add_option("--input", core_input, "JSON {\"families\": [...]} (- for stdin)");

    // coloring gen | check
    auto* coloring_cmd = app.add_subcommand("coloring", "Generate or check colorings");
    coloring_cmd->require_subcommand(1);
    auto* gen_cmd = coloring_cmd->add_subcommand("gen", "Build one of the explicit colorings");
    std::string gen_kind, gen_tweak = "none";
    GenerateParams gp;
    std::vector<int> gen_trace;
    gen_cmd->add_option("--kind", gen_kind, "consecutive-level, trace, level, rr-lower, f2-lower, g2-lower, fk-random")
        ->required();
    gen_cmd->add_option("--n", gp.n, "Ground size");
    gen_cmd->add_option("--parts", gp.parts, "Block lengths for consecutive-level");
    gen_cmd->add_option("--trace", gen_trace, "Elements of R for trace colorings");
    gen_cmd->add_option("--e", gp.e, "rr-lower: levels per color");
    gen_cmd->add_option("--q", gp.q, "rr-lower: |Q|");
    gen_cmd->add_option("--tweak", gen_tweak, "rr-lower: none, bottom, top or both")
        ->check(CLI::IsMember({"none", "bottom", "top", "both"}));
    gen_cmd->add_option("--k", gp.k, "fk-random: number of colors");
    auto* check_cmd = coloring_cmd->add_subcommand("check", "Look for a mono P and a rainbow Q");
    std::string chk_input, chk_p, chk_q, chk_mode = "weak", chk_mode_q;
    check_cmd->add_option("--input", chk_input, "Coloring file (JSON or COL v1; default stdin)");
    check_cmd->add_option("--p", chk_p, "Monochromatic pattern")->required();
    check_cmd->add_option("--q", chk_q, "Rainbow pattern")->required();
    check_cmd->add_option("--mode", chk_mode, "weak or strong (both patterns)");
    check_cmd->add_option("--mode-q", chk_mode_q, "Separate mode for Q");

    // thin-antichain
    auto* thin_cmd = app.add_subcommand("thin-antichain", "Thin antichain of size n - 2 in B_n");
    int thin_n = 4;
    thin_cmd->add_option("--n", thin_n, "Ground size (>= 4)")->required();

    // constants
    auto* const_cmd = app.add_subcommand("constants", "c_k constants and the strong antichain bound");
    int const_k = 10;
    double const_tol = 1e-12;
    int gs_k = 0;
    double gs_lambda = 0;
    std::optional<int> gs_e_star;
    bool gs_not_small = false;
    std::string gs_prov = "user";
    const_cmd->add_option("--k-max", const_k, "Number of constants");
    const_cmd->add_option("--tol", const_tol, "Residual tolerance");
    const_cmd->add_option("--genstrong-k", gs_k, "Also evaluate the RR*(P,A_k) bound for this k");
    const_cmd->add_option("--lambda", gs_lambda, "lambda*_max(P)");
    const_cmd->add_option("--e-star", gs_e_star, "e*(P)");
    const_cmd->add_option("--provenance", gs_prov, "Where lambda*_max and e* came from");
    const_cmd->add_flag("--not-small-chain", gs_not_small, "P is neither C1 nor C2");

    // inequalities
    auto* ineq_cmd = app.add_subcommand("inequalities", "Grid checks of the real inequalities");
    std::string ineq_claim = "all";
    double ineq_step = 0;
    ineq_cmd->add_option("--claim", ineq_claim, "tech-a, tech-b, tech-c, ineq1 or all")
        ->check(CLI::IsMember({"all", "tech-a", "tech-b", "tech-c", "ineq1"}));
    ineq_cmd->add_option("--step", ineq_step, "Grid step (default 1e-3, 1e-4 for ineq1)");

    // repro
    auto* repro_cmd = app.add_subcommand("repro", "Re-run a registered claim check");
    std::string repro_id;
    repro_cmd->add_option("claim", repro_id, "Claim id, or 'all' / 'list'")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        const SearchOptions sopts = search_options(common);
        json config;
        config["n_cap"] = common.n_cap;

        if (*ramsey_cmd) {
            std::vector<PosetPattern> ps;
            for (const auto& name : ramsey_ps) ps.push_back(poset_from_name(name));
            const auto r = ramsey(ps, parse_mode(ramsey_mode), common.n_cap, sopts);
            config["p"] = ramsey_ps;
            config["mode"] = ramsey_mode;
            return emitter.emit(to_json(r), config, std::nullopt, r.budget_exhausted);
        }
        if (*rainbow_cmd) {
            const auto r = rainbow_ramsey(poset_from_name(rr_p), poset_from_name(rr_q), parse_mode(rr_mode),
                                          common.n_cap, sopts);
            config["p"] = rr_p;
            config["q"] = rr_q;
            config["mode"] = rr_mode;
            return emitter.emit(to_json(r), config, std::nullopt, r.budget_exhausted);
        }
        if (*threshold_cmd) {
            if (th_raw && th_k != 2) throw UsageError("--raw supports k = 2 only");
            const auto r = th_raw ? threshold_F2_raw(th_n, th_partial) : threshold_F(th_n, th_k, th_partial, sopts);
            config["n"] = th_n;
            config["k"] = th_k;
            config["partial"] = th_partial;
            config["raw"] = th_raw;
            return emitter.emit(to_json(r), config, std::nullopt, r.budget_exhausted);
        }
        if (*two_cmd) {
            const int hi = two_hi < 0 ? two_lo : two_hi;
            const Objective obj = two_obj == "mass" ? Objective::Mass : Objective::Size;
            json results = json::array(), table = json::array();
            for (int n = two_lo; n <= hi; ++n) {
                auto r = two_color_partial_exact(n, obj);
                if (hi != two_lo) r.witness.reset();
                results.push_back(to_json(r));
                json row{{"n", n}, {"value", r.value_text()}};
                if (auto q = std::get_if<ExactRatio>(&r.value)) row["decimal"] = q->get_d();
                table.push_back(row);
            }
            config["n"] = two_lo;
            config["n_max"] = hi;
            config["objective"] = two_obj;
            return emitter.emit(hi == two_lo ? results.front() : results, config, table);
        }
        if (*fork_cmd) {
            config["k"] = fork_k;
            if (fork_brute) {
                const auto r = fork_f_small(static_cast<int>(fork_r), fork_k, common.n_cap, sopts);
                config["r"] = fork_r;
                return emitter.emit(to_json(r), config, std::nullopt, r.budget_exhausted);
            }
            const std::uint64_t hi = fork_r_max ? fork_r_max : fork_r;
            json rows = json::array();
            for (std::uint64_t r = fork_r; r <= hi; ++r) {
                const int g = fork_g(r, fork_k);
                rows.push_back(json{{"r", r}, {"k", fork_k}, {"g", g}, {"g_over_log_r", r > 1 ? g / std::log2(double(r)) : 0.0}});
            }
            config["r"] = fork_r;
            config["r_max"] = hi;
            json body{{"problem", "g_" + std::to_string(fork_k)}, {"method", to_string(SearchMethod::Formula)}, {"values", rows}};
            return emitter.emit(body, config, rows);
        }
        if (*lubell_cmd) {
            json body;
            if (!lub_subcube.empty()) {
                body["n"] = lub_subcube[0];
                body["a"] = lub_subcube[1];
                body["b"] = lub_subcube[2];
                body["mass"] = to_string(lubell_subcube(lub_subcube[0], lub_subcube[1], lub_subcube[2]));
            } else {
                const Family fam = read_family(lub_input);
                body["family"] = to_json(fam);
                body["mass"] = to_string(lubell_mass(fam));
                if (lub_identity) body["identity_residual"] = to_string(maxpart_identity_residual(fam));
            }
            return emitter.emit(body, config);
        }
        if (*core_cmd) {
            const json doc = unwrap(json::parse(slurp(core_input)));
            std::vector<Family> fams;
            for (const auto& f : doc.at("families")) fams.push_back(family_from_json(f));
            json body;
            try {
                const auto cc = core_chain(fams);
                body["core_chain"] = to_json(cc);
                body["valid"] = validate_core_chain(cc, fams).ok;
            } catch (const NotMutuallyComparable& e) {
                body["core_chain"] = nullptr;
                body["violation"] = json{{"family_a", e.pair.family_a},
                                         {"family_b", e.pair.family_b},
                                         {"set_a", e.pair.set_a},
                                         {"set_b", e.pair.set_b}};
            }
            return emitter.emit(body, config);
        }
        if (*gen_cmd) {
            const ColoringKind kind = coloring_kind_from_name(gen_kind);
            for (int e : gen_trace) {
                if (e < 1 || e > gp.n) throw UsageError("trace element outside [n]");
                gp.trace_set |= Word{1} << (e - 1);
            }
            gp.tweak = gen_tweak == "bottom" ? ExtremeTweak::Bottom
                       : gen_tweak == "top"  ? ExtremeTweak::Top
                       : gen_tweak == "both" ? ExtremeTweak::Both
                                             : ExtremeTweak::None;
            gp.seed = common.seed;
            const Coloring col = generate(kind, gp);
            config["kind"] = gen_kind;
            config["n"] = gp.n;
            json body{{"kind", gen_kind}, {"coloring", to_json(col)}};
            if (kind == ColoringKind::RrLower && (gp.tweak == ExtremeTweak::Top || gp.tweak == ExtremeTweak::Both))
                body["note"] = "top recoloring is the inferred dual of the bottom recoloring";
            return emitter.emit(body, config);
        }
        if (*check_cmd) {
            const Coloring col = read_coloring(chk_input);
            const CopyMode mp = parse_mode(chk_mode);
            const CopyMode mq = chk_mode_q.empty() ? mp : parse_mode(chk_mode_q);
            const auto v = validate_witness(col, poset_from_name(chk_p), poset_from_name(chk_q), mp, mq);
            config["p"] = chk_p;
            config["q"] = chk_q;
            json body = to_json(v);
            body["n"] = col.ground();
            return emitter.emit(body, config);
        }
        if (*thin_cmd) {
            const Family f = thin_antichain(thin_n);
            json body{{"family", to_json(f)}, {"thin", is_thin(f)}, {"antichain", is_antichain(f)}};
            config["n"] = thin_n;
            return emitter.emit(body, config);
        }
        if (*const_cmd) {
            const auto cs = c_sequence(const_k, const_tol);
            json body = to_json(cs);
            json table = json::array();
            for (std::size_t i = 0; i < cs.c.size(); ++i)
                table.push_back(json{{"k", i + 1}, {"c", cs.c[i]}, {"residual", i ? cs.residuals[i - 1] : 0.0}});
            if (gs_k) {
                BoundInputs in;
                in.k = gs_k;
                in.lambda_star_max = gs_lambda;
                in.lambda_provenance = gs_prov;
                in.e_star = gs_e_star;
                in.e_star_provenance = gs_prov;
                in.not_small_chain = gs_not_small;
                body["genstrong"] = to_json(genstrong_bound(in));
            }
            config["k_max"] = const_k;
            config["tol"] = const_tol;
            return emitter.emit(body, config, table);
        }
        if (*ineq_cmd) {
            std::vector<InequalityClaim> claims;
            if (ineq_claim == "all") {
                claims = {InequalityClaim::TechA, InequalityClaim::TechB, InequalityClaim::TechC, InequalityClaim::Ineq1};
            } else {
                claims = {inequality_claim_from_name(ineq_claim)};
            }
            json rows = json::array();
            for (auto c : claims) {
                const double step = ineq_step > 0 ? ineq_step : (c == InequalityClaim::Ineq1 ? 1e-4 : 1e-3);
                rows.push_back(to_json(inequality_grid(c, step, common.threads)));
            }
            json table = json::array();
            for (const auto& r : rows)
                table.push_back(json{{"claim", r["claim"]},
                                     {"max_violation", r["max_violation"]},
                                     {"alpha", r["argmax"][0]},
                                     {"beta", r["argmax"][1]}});
            config["claim"] = ineq_claim;
            config["step"] = ineq_step;
            return emitter.emit(rows, config, table);
        }
        if (*repro_cmd) {
            ReproOptions ro;
            ro.threads = common.threads;
            if (common.seed) ro.seed = *common.seed;
            std::vector<std::string> ids;
            if (repro_id == "list") {
                json rows = json::array();
                for (const auto& c : claim_registry())
                    rows.push_back(json{{"claim", c.id}, {"criterion", c.criterion}, {"title", c.title}});
                return emitter.emit(rows, config, rows);
            }
            if (repro_id == "all") {
                for (const auto& c : claim_registry()) ids.push_back(c.id);
            } else {
                ids.push_back(repro_id);
            }
            json reports = json::array(), table = json::array();
            bool all_pass = true;
            for (const auto& id : ids) {
                const auto rep = run_claim(id, ro);
                all_pass = all_pass && rep.pass();
                reports.push_back(to_json(rep));
                for (const auto& row : rep.rows)
                    table.push_back(json{{"claim", id}, {"check", row.check}, {"pass", row.pass}, {"detail", row.detail}});
            }
            config["claim"] = repro_id;
            config["seed"] = ro.seed;
            const int code = emitter.emit(ids.size() == 1 ? reports.front() : reports, config, table);
            return code == kExitOk && !all_pass ? 3 : code;
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::out_of_range& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
