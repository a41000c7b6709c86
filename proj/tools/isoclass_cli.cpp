// Command-line entry point: classification pipelines, orbit reports and
// singularity reports, with table/json/csv emission and an orbit cache.
//
// Exit codes: 0 success, 2 configuration error, 3 work/orbit budget
// exceeded, 4 catalog gap.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "isoclass/classify.hpp"

using namespace isoclass;
using ordered_json = nlohmann::ordered_json;

namespace {

struct RunConfig {
    std::string catalog_path = "data/groups.cat";
    std::string cache_dir;
    std::string policy = "theorem";
    std::string format = "table";
    std::string target = "all";
    int jobs = 1;
    long long budget_tuples = 500'000'000;
    long long budget_orbit = 20'000'000;
    long long n_tuple_budget = 2'000'000;
    bool verbose = false;
};

Policy parse_policy(const std::string& s) {
    if (s == "theorem") return Policy::theorem;
    if (s == "appendix") return Policy::appendix;
    throw CLI::ValidationError("--policy must be theorem or appendix");
}

ClassifyOptions options_from(const RunConfig& cfg) {
    ClassifyOptions opt;
    opt.policy = parse_policy(cfg.policy);
    opt.enum_budget.max_nodes = cfg.budget_tuples;
    opt.orbit_budget.max_orbit = cfg.budget_orbit;
    opt.n_tuple_budget = cfg.n_tuple_budget;
    opt.verbose = cfg.verbose;
    return opt;
}

std::string cache_dir_from(const RunConfig& cfg) {
    if (!cfg.cache_dir.empty()) return cfg.cache_dir;
    if (const char* env = std::getenv("ISOCLASS_CACHE")) return env;
    return "";
}

// --- row emission ------------------------------------------------------------

ordered_json row_json(const ClassificationRow& r) {
    ordered_json j;
    j["kind"] = r.kind;
    j["K2"] = r.K2;
    j["gC"] = r.gC;
    j["gF"] = r.gF;
    j["group"] = r.group;
    j["paper_id"] = r.paper_id;
    j["sig1"] = r.sigs.empty() ? "" : r.sigs[0].to_string();
    j["sig2"] = r.sigs.size() > 1 ? r.sigs[1].to_string() : "";
    j["singularities"] = singularities_to_string(r.singularities);
    j["dim"] = r.dim;
    j["n"] = r.n_exact ? ordered_json(r.n) : ordered_json(nullptr);
    return j;
}

void emit_rows(const std::vector<ClassificationRow>& rows, const std::string& format) {
    if (format == "json") {
        ordered_json arr = ordered_json::array();
        for (const auto& r : rows) arr.push_back(row_json(r));
        std::cout << arr.dump(2) << "\n";
        return;
    }
    const std::vector<std::string> headers = {"kind", "K2",   "gC",  "gF",
                                             "group", "paper_id", "sig1", "sig2",
                                             "singularities", "dim", "n"};
    std::vector<std::vector<std::string>> cells;
    for (const auto& r : rows) {
        cells.push_back({r.kind, std::to_string(r.K2), std::to_string(r.gC),
                         std::to_string(r.gF), r.group, r.paper_id,
                         r.sigs.empty() ? "" : r.sigs[0].to_string(),
                         r.sigs.size() > 1 ? r.sigs[1].to_string() : "",
                         singularities_to_string(r.singularities), std::to_string(r.dim),
                         r.n_exact ? std::to_string(r.n) : "?"});
    }
    if (format == "csv") {
        auto quote = [](const std::string& s) {
            if (s.find_first_of(",\"") == std::string::npos) return s;
            std::string out = "\"";
            for (char c : s) out += (c == '"') ? std::string("\"\"") : std::string(1, c);
            return out + "\"";
        };
        for (size_t i = 0; i < headers.size(); ++i)
            std::cout << headers[i] << (i + 1 < headers.size() ? "," : "\n");
        for (const auto& row : cells)
            for (size_t i = 0; i < row.size(); ++i)
                std::cout << quote(row[i]) << (i + 1 < row.size() ? "," : "\n");
        return;
    }
    // aligned text table
    std::vector<size_t> width(headers.size());
    for (size_t i = 0; i < headers.size(); ++i) width[i] = headers[i].size();
    for (const auto& row : cells)
        for (size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
    auto line = [&](const std::vector<std::string>& row) {
        for (size_t i = 0; i < row.size(); ++i) {
            std::cout << row[i] << std::string(width[i] - row[i].size(), ' ');
            std::cout << (i + 1 < row.size() ? "  " : "\n");
        }
    };
    line(headers);
    for (const auto& row : cells) line(row);
}

// --- commands ----------------------------------------------------------------

int cmd_classify(const RunConfig& cfg) {
    Catalog cat = Catalog::load(cfg.catalog_path);
    ClassifyOptions opt = options_from(cfg);
    std::vector<ClassificationRow> rows;
    auto run = [&](const std::string& which) -> std::vector<ClassificationRow> {
        if (cfg.verbose) std::cerr << "running pipeline: " << which << "\n";
        if (which == "gh") return classify_gh(cat, opt);
        if (which == "agt") return classify_unmixed_agt(cat, opt);
        if (which == "mix") return classify_mixed_pgq2(cat, opt);
        if (which == "iso") return classify_isotrivial_pgq2(cat, opt);
        return classify_pgq1(cat, opt);
    };
    std::vector<std::string> pipelines;
    if (cfg.target == "pgq2") pipelines = {"gh", "agt", "mix", "iso"};
    else if (cfg.target == "isotrivial") pipelines = {"iso"};
    else if (cfg.target == "pgq1") pipelines = {"pgq1"};
    else if (cfg.target == "all") pipelines = {"gh", "agt", "mix", "iso", "pgq1"};
    else {
        std::cerr << "unknown --target " << cfg.target << "\n";
        return 2;
    }
    if (cfg.jobs > 1 && pipelines.size() > 1) {
        std::vector<std::future<std::vector<ClassificationRow>>> futs;
        for (const auto& p : pipelines)
            futs.push_back(std::async(std::launch::async, run, p));
        for (auto& f : futs) {
            auto part = f.get();
            rows.insert(rows.end(), part.begin(), part.end());
        }
    } else {
        for (const auto& p : pipelines) {
            auto part = run(p);
            rows.insert(rows.end(), part.begin(), part.end());
        }
    }
    emit_rows(rows, cfg.format);
    return 0;
}

FiniteGroup resolve_group(const Catalog& cat, const std::string& name) {
    for (const auto& e : cat.entries())
        if (e.label == name || e.paper_id == name)
            return cat.by_label(e.label);
    return construct_named(name);
}

int cmd_orbits(const RunConfig& cfg, const std::string& group_name, const std::string& sig_text) {
    Catalog cat = Catalog::load(cfg.catalog_path);
    FiniteGroup G = resolve_group(cat, group_name);
    SignatureType sig = SignatureType::parse(sig_text);
    WorkBudget wb{cfg.budget_tuples};
    OrbitBudget ob{cfg.budget_orbit};

    std::string dir = cache_dir_from(cfg);
    auto cached_partition = [&](const ActionSpec& spec, const std::string& tag) {
        std::string path;
        if (!dir.empty()) {
            std::filesystem::create_directories(dir);
            path = dir + "/" + G.label() + "_" + std::to_string(std::hash<std::string>{}(
                       G.label() + sig.to_string() + tag)) + ".orbits";
            if (auto hit = read_orbit_cache(path, G, sig, tag)) {
                std::cerr << "cache hit: " << path << "\n";
                return *hit;
            }
        }
        OrbitPartition part = orbit_representatives(G, sig, spec, wb, ob);
        if (!path.empty()) write_orbit_cache(path, G, sig, tag, part);
        return part;
    };

    Family fam = family_of(sig);
    OrbitPartition moves_only = cached_partition(ActionSpec{fam, false, false}, "moves");
    OrbitPartition with_aut = cached_partition(ActionSpec{fam, false, true}, "moves+aut");

    ordered_json j;
    j["group"] = G.label();
    j["paper_id"] = G.paper_id();
    j["signature"] = sig.to_string();
    j["vectors"] = moves_only.total;
    j["orbits_moves"] = moves_only.representatives.size();
    j["orbits_moves_aut"] = with_aut.representatives.size();
    j["orbit_sizes_moves_aut"] = with_aut.orbit_sizes;
    ordered_json reps = ordered_json::array();
    for (const auto& rep : with_aut.representatives) reps.push_back(rep.serialize());
    j["representatives"] = reps;
    if (cfg.format == "json") {
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "group:            " << G.label()
                  << (G.paper_id().empty() ? "" : "  [" + G.paper_id() + "]") << "\n"
                  << "signature:        " << sig.to_string() << "\n"
                  << "vectors:          " << moves_only.total << "\n"
                  << "orbits (moves):   " << moves_only.representatives.size() << "\n"
                  << "orbits (moves+aut): " << with_aut.representatives.size() << "\n";
        for (size_t i = 0; i < with_aut.representatives.size(); ++i)
            std::cout << "  orbit " << i << " size " << with_aut.orbit_sizes[i] << " rep "
                      << with_aut.representatives[i].serialize() << "\n";
    }
    return 0;
}

int cmd_singularities(const RunConfig& cfg, const std::string& group_name,
                      const std::string& sig1_text, const std::string& sig2_text,
                      const std::string& selector) {
    Catalog cat = Catalog::load(cfg.catalog_path);
    FiniteGroup G = resolve_group(cat, group_name);
    SignatureType s1 = SignatureType::parse(sig1_text);
    SignatureType s2 = SignatureType::parse(sig2_text);
    WorkBudget wb{cfg.budget_tuples};
    auto V1 = all_generating_vectors(G, s1, Mode::ordered, wb);
    auto V2 = all_generating_vectors(G, s2, Mode::ordered, wb);
    if (V1.empty() || V2.empty()) {
        std::cerr << "no generating vectors for "
                  << (V1.empty() ? s1.to_string() : s2.to_string()) << "\n";
        return 2;
    }
    size_t i = 0, k = 0;
    if (selector != "search") {
        std::istringstream in(selector);
        char comma = 0;
        if (!(in >> i >> comma >> k) || comma != ',' || i >= V1.size() || k >= V2.size()) {
            std::cerr << "selector must be 'search' or 'i,j' with i < " << V1.size()
                      << ", j < " << V2.size() << "\n";
            return 2;
        }
    } else {
        bool found = false;
        for (size_t a = 0; a < V1.size() && !found; ++a)
            for (size_t b = 0; b < V2.size() && !found; ++b)
                if (!singular_points(G, V1[a], V2[b]).empty()) {
                    i = a;
                    k = b;
                    found = true;
                }
        // fall back to the first pair when every pair acts freely
    }
    const GeneratingVector& A = V1[i];
    const GeneratingVector& B = V2[k];
    auto sig_set = [&](const GeneratingVector& V) {
        std::string s = "{";
        for (Elem e : stabilizer_set(V)) s += std::to_string(e) + " ";
        if (s.size() > 1) s.pop_back();
        return s + "}";
    };
    bool disjoint = are_disjoint(A, B);
    auto sings = singular_points(G, A, B);
    int gC = covering_genus(G.order(), s1);
    int gF = covering_genus(G.order(), s2);
    SurfaceInvariants inv = disjoint ? product_invariants_free(gC, gF, G.order())
                                     : resolved_invariants(gC, gF, G.order(), sings);
    ordered_json j;
    j["group"] = G.label();
    j["vector1"] = A.serialize();
    j["vector2"] = B.serialize();
    j["sigma1"] = sig_set(A);
    j["sigma2"] = sig_set(B);
    j["disjoint"] = disjoint;
    j["singularities"] = singularities_to_string(sings);
    j["K2"] = inv.K2.to_string();
    j["e"] = inv.e.to_string();
    j["chi"] = inv.chi;
    bool k2_int = inv.K2.is_integer();
    int k2 = k2_int ? static_cast<int>(inv.K2.as_integer()) : -1;
    j["basket_allowed"] =
        disjoint ? false : (k2_int && k2 >= 4 && k2 <= 6 && basket_allowed(k2, sings));
    if (cfg.format == "json") {
        std::cout << j.dump(2) << "\n";
    } else {
        if (disjoint)
            std::cout << "smooth quotient, K2=" << inv.K2.to_string() << "\n";
        for (auto& [key, val] : j.items())
            std::cout << key << ": " << (val.is_string() ? val.get<std::string>() : val.dump())
                      << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite-group classification of product-quotient surfaces"};
    app.require_subcommand(1);
    app.fallthrough();
    RunConfig cfg;
    app.add_option("--catalog", cfg.catalog_path, "catalog data file");
    app.add_option("--cache", cfg.cache_dir, "orbit cache directory (or env ISOCLASS_CACHE)");
    app.add_option("--policy", cfg.policy, "pair equivalence policy: theorem|appendix");
    app.add_option("--format", cfg.format, "output format: table|json|csv")
        ->check(CLI::IsMember({"table", "json", "csv"}));
    app.add_option("--jobs", cfg.jobs, "parallel pipeline workers")->check(CLI::PositiveNumber);
    app.add_option("--budget-tuples", cfg.budget_tuples, "enumeration node budget");
    app.add_option("--budget-orbit", cfg.budget_orbit, "orbit size budget");
    app.add_option("--budget-pair-n", cfg.n_tuple_budget,
                   "skip component counts whose enumeration space exceeds this");
    app.add_flag("--verbose", cfg.verbose, "progress on stderr");

    auto* classify = app.add_subcommand("classify", "run classification pipelines");
    classify->add_option("--target", cfg.target, "pgq2|pgq1|isotrivial|all");

    std::string group_name, sig1_text, sig2_text, selector = "search";
    auto* orbits = app.add_subcommand("orbits", "orbit report for one signature");
    orbits->add_option("group", group_name, "group label, id or constructor name")->required();
    orbits->add_option("signature", sig1_text, "signature, e.g. (0|2,2,2,2,2)")->required();

    auto* sing = app.add_subcommand("singularities", "singularity report for a vector pair");
    sing->add_option("group", group_name, "group label, id or constructor name")->required();
    sing->add_option("sig1", sig1_text, "first signature")->required();
    sing->add_option("sig2", sig2_text, "second signature")->required();
    sing->add_option("pair", selector, "'search' or explicit indices 'i,j'");

    try {
        app.parse(argc, argv);
        parse_policy(cfg.policy);
        if (classify->parsed()) return cmd_classify(cfg);
        if (orbits->parsed()) return cmd_orbits(cfg, group_name, sig1_text);
        return cmd_singularities(cfg, group_name, sig1_text, sig2_text, selector);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    } catch (const CatalogGap& e) {
        std::cerr << "catalog gap: " << e.what() << "\n";
        return 4;
    } catch (const OrderNotCovered& e) {
        std::cerr << "catalog gap: " << e.what() << "\n";
        return 4;
    } catch (const WorkBudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 3;
    } catch (const OrbitBudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
