// factorsearch: command-line front end for the factorization search engine.
//
// Exit codes:
//   0  witness found / all checks passed
//   1  bad usage
//   2  profile mismatch, group too large, budget exceeded, unreadable input
//   3  search exhausted: no factorization exists
//   4  certificate failed verification

#include <factorsearch/factorsearch.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace factorsearch;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitError = 2;
constexpr int kExitNone = 3;
constexpr int kExitBadCertificate = 4;

std::string format_subset(const std::vector<ElementId>& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(s[i]);
    }
    return out + "}";
}

std::string format_certificate(const FactorizationCertificate& c) {
    std::string out;
    for (std::size_t i = 0; i < c.factors.size(); ++i) {
        if (i) out += " · ";
        out += format_subset(c.factors[i]);
    }
    return out;
}

void write_json(const std::string& path, const json& j) {
    if (path.empty()) return;
    std::ofstream out(path);
    if (!out) throw Error("cannot write '" + path + "'");
    out << j.dump(2) << "\n";
}

struct SearchArgs {
    std::string group;
    std::string sizes;
    bool all = false;
    bool no_normalize = false;
    std::string prune = "all";
    bool deterministic = false;
    bool json_output = false;
    int threads = 1;
    std::uint64_t budget = 0;
    int max_order = kDefaultMaxOrder;
};

int cmd_search(const SearchArgs& a) {
    GroupTable g = make_catalog_group(a.group, a.max_order);
    SizeProfile profile = SizeProfile::parse(a.sizes);
    SearchOptions options;
    options.normalize = !a.no_normalize;
    options.prunes = PruneSet::parse(a.prune);
    options.deterministic = a.deterministic;
    options.threads = a.threads;
    options.node_budget = a.budget;

    if (a.all) {
        SearchReport report;
        auto certs = enumerate_all(g, profile, options, &report);
        if (a.json_output) {
            json j = report;
            j["outcome"] = certs.empty() ? "NONE" : "WITNESS";
            j["certificate"] = certs.empty() ? json(nullptr) : json(certs.front());
            j["factorizations"] = certs;
            j["count"] = certs.size();
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << certs.size() << " factorization(s) of " << g.name() << " with sizes "
                      << profile.to_string() << (options.normalize ? " (normalized)" : "") << "\n";
            for (const auto& c : certs) std::cout << "  " << format_certificate(c) << "\n";
        }
        return certs.empty() ? kExitNone : kExitOk;
    }

    SearchReport report = search(g, profile, options);
    if (a.json_output) {
        std::cout << json(report).dump(2) << "\n";
    } else {
        if (report.witness)
            std::cout << "WITNESS " << g.name() << " = " << format_certificate(*report.witness) << "\n";
        else
            std::cout << "NONE: " << g.name() << " has no factorization with sizes " << profile.to_string()
                      << " (search exhausted)\n";
        std::cout << "nodes " << report.nodes_visited << ", pruned: injectivity " << report.pruned.injectivity
                  << ", coverage " << report.pruned.coverage << ", prefix_div " << report.pruned.prefix_div
                  << ", div2 " << report.pruned.div2 << ", div3 " << report.pruned.div3 << "; " << std::fixed
                  << std::setprecision(3) << report.elapsed_ms << " ms\n";
    }
    return report.found() ? kExitOk : kExitNone;
}

int cmd_verify(const std::string& group, const std::string& path, bool json_output) {
    GroupTable g = make_catalog_group(group);
    std::ifstream in(path);
    if (!in) throw Error("cannot read certificate '" + path + "'");
    FactorizationCertificate cert;
    try {
        json j = json::parse(in);
        if (j.contains("certificate")) j = j.at("certificate");
        if (j.is_null()) throw BadCertificate("format", "report carries no certificate");
        cert = j.get<FactorizationCertificate>();
    } catch (const json::exception& e) {
        throw BadCertificate("format", e.what());
    }
    auto reports = verify_certificate(g, cert);
    if (json_output) {
        std::cout << json{{"format", kJsonFormat}, {"valid", true}, {"certificate", cert}, {"reports", reports}}.dump(2)
                  << "\n";
        return kExitOk;
    }
    std::cout << "certificate valid: " << g.name() << " = " << format_certificate(cert) << "\n";
    std::cout << std::left << std::setw(12) << "lemma" << std::setw(10) << "position" << std::setw(9) << "variant"
              << std::setw(9) << "divisor" << std::setw(7) << "bound" << "holds\n";
    for (const auto& r : reports)
        std::cout << std::setw(12) << to_string(r.lemma) << std::setw(10) << r.position << std::setw(9)
                  << (r.variant.empty() ? "-" : r.variant) << std::setw(9) << r.divisor << std::setw(7) << r.bound
                  << (r.holds ? "yes" : "NO") << "\n";
    return kExitOk;
}

int cmd_atlas(int max_order, const std::vector<int>& ks, const std::string& out, std::uint64_t budget, int threads,
              bool cross_check) {
    if (max_order > kDefaultMaxOrder) throw TooLarge("--max-order above " + std::to_string(kDefaultMaxOrder));
    AtlasOptions options;
    options.budget = budget;
    options.cross_check = cross_check;
    options.search.threads = threads;
    auto rows = run_atlas(catalog_up_to(max_order), ks, options);
    write_json(out, atlas_json(rows));

    std::size_t exists = 0, none = 0, skipped = 0;
    for (const auto& r : rows) {
        if (r.status != AtlasStatus::EXISTS)
            std::cout << std::left << std::setw(14) << r.group << std::setw(12) << r.profile.to_string()
                      << to_string(r.status)
                      << (r.oracle_exists ? (*r.oracle_exists ? " (oracle: exists)" : " (oracle confirms)") : "")
                      << (r.note.empty() ? "" : "  " + r.note) << "\n";
        exists += r.status == AtlasStatus::EXISTS;
        none += r.status == AtlasStatus::NONE;
        skipped += r.status == AtlasStatus::SKIPPED;
    }
    std::cout << "atlas: " << rows.size() << " rows, " << exists << " exist, " << none << " none, " << skipped
              << " skipped\n";
    return kExitOk;
}

int cmd_explore_q(int max_order, const std::string& out, std::uint64_t budget, bool unnormalized, bool all_findings) {
    if (max_order > kDefaultMaxOrder) throw TooLarge("--max-order above " + std::to_string(kDefaultMaxOrder));
    QA2Options options;
    options.budget = budget;
    options.unnormalized = unnormalized;
    auto result = explore_qa2(catalog_up_to(max_order), options);
    write_json(out, qa2_json(result, all_findings));
    const auto& s = result.summary;
    std::cout << "Q.A2 sweep over " << s.groups << " groups, " << s.profiles_swept << " profiles: "
              << s.factorizations_checked << " factorizations checked, " << s.violations
              << " where card(A2) does not divide |<A2>|\n";
    std::cout << "scope: " << s.scope << "\n";
    if (!s.skipped.empty()) std::cout << s.skipped.size() << " profile pass(es) skipped on budget\n";
    for (const auto& v : result.violations()) {
        std::cout << "  " << v.group << " " << format_certificate(v.certificate) << "  card(A2)=" << v.card_a2
                  << " |<A2>|=" << v.closure_order << (v.normalized ? "" : " (unnormalized)") << "\n";
    }
    return kExitOk;
}

int cmd_demo_div3(const std::string& out) {
    auto report = demo_div3_gap();
    write_json(out, div3_json(report));
    std::cout << std::left << std::setw(6) << "group" << std::setw(34) << "A2" << std::setw(9) << "card" << std::setw(7)
              << "|M|" << std::setw(7) << "|M'|" << "\n";
    for (const auto& c : report.cases)
        std::cout << std::setw(6) << c.group << std::setw(34) << c.subgroup << std::setw(9) << c.card_a2 << std::setw(7)
                  << c.m_order << std::setw(7) << c.m_prime_order << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exhaustive search for factorizations G = A1·…·Ak of small finite groups"};
    app.require_subcommand(1);
    std::uint64_t budget = budget_from_env();

    SearchArgs search_args;
    auto* search_cmd = app.add_subcommand("search", "search for a factorization with the given ordered sizes");
    search_cmd->add_option("--group", search_args.group, "group spec, e.g. A4, C2xC6, file:table.txt")->required();
    search_cmd->add_option("--sizes", search_args.sizes, "comma-separated factor sizes, e.g. 2,3,2")->required();
    search_cmd->add_flag("--all", search_args.all, "enumerate every factorization");
    search_cmd->add_flag("--no-normalize", search_args.no_normalize, "do not restrict factors to contain e");
    search_cmd->add_option("--prune", search_args.prune, "prefix,div2,div3 | all | none")->capture_default_str();
    search_cmd->add_flag("--deterministic", search_args.deterministic, "sequential run with reproducible witness");
    search_cmd->add_flag("--json", search_args.json_output, "print the report as JSON");
    search_cmd->add_option("--threads", search_args.threads, "worker threads")->check(CLI::PositiveNumber);
    search_cmd->add_option("--budget", search_args.budget, "maximum candidate factors examined (0 = unlimited)");
    search_cmd->add_option("--max-order", search_args.max_order, "largest group order accepted")
        ->check(CLI::Range(1, kMaskCapacity))
        ->capture_default_str();

    std::string verify_group, verify_path;
    bool verify_json = false;
    auto* verify_cmd = app.add_subcommand("verify", "re-check a certificate and print lemma reports");
    verify_cmd->add_option("--group", verify_group, "group spec")->required();
    verify_cmd->add_option("--certificate", verify_path, "certificate or search report JSON")->required();
    verify_cmd->add_flag("--json", verify_json, "print reports as JSON");

    int atlas_max_order = 24;
    std::vector<int> atlas_ks{2};
    std::string atlas_out;
    int atlas_threads = 1;
    bool atlas_no_cross_check = false;
    auto* atlas_cmd = app.add_subcommand("atlas", "search every ordered profile for every catalog group");
    atlas_cmd->add_option("--max-order", atlas_max_order, "largest group order in the sweep")->capture_default_str();
    atlas_cmd->add_option("--k", atlas_ks, "number of factors (repeatable)")->capture_default_str();
    atlas_cmd->add_option("--out", atlas_out, "write JSON here");
    atlas_cmd->add_option("--budget", budget, "node and oracle budget");
    atlas_cmd->add_option("--threads", atlas_threads, "worker threads per search")->check(CLI::PositiveNumber);
    atlas_cmd->add_flag("--no-cross-check", atlas_no_cross_check, "skip brute-force confirmation of NONE rows");

    int explore_max_order = 12;
    std::string explore_out;
    bool explore_unnormalized = false, explore_all = false;
    auto* explore_cmd = app.add_subcommand("explore-q", "check card(A2) against |<A2>| over all 3-fold factorizations");
    explore_cmd->add_option("--max-order", explore_max_order, "largest group order in the sweep")->capture_default_str();
    explore_cmd->add_option("--out", explore_out, "write JSON here");
    explore_cmd->add_option("--budget", budget, "enumeration node budget per profile");
    explore_cmd->add_flag("--unnormalized", explore_unnormalized, "also enumerate factorizations not containing e");
    explore_cmd->add_flag("--all-findings", explore_all, "include every finding in the JSON, not only violations");

    std::string demo_out;
    auto* demo_cmd = app.add_subcommand("demo-div3", "compare the two conjugate-closure bounds on A5 and A4");
    demo_cmd->add_option("--out", demo_out, "write JSON here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*search_cmd) {
            if (search_args.budget == 0 && std::getenv("FACTORSEARCH_BUDGET")) search_args.budget = budget;
            return cmd_search(search_args);
        }
        if (*verify_cmd) return cmd_verify(verify_group, verify_path, verify_json);
        if (*atlas_cmd)
            return cmd_atlas(atlas_max_order, atlas_ks, atlas_out, budget, atlas_threads, !atlas_no_cross_check);
        if (*explore_cmd) return cmd_explore_q(explore_max_order, explore_out, budget, explore_unnormalized, explore_all);
        if (*demo_cmd) return cmd_demo_div3(demo_out);
    } catch (const BadCertificate& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadCertificate;
    } catch (const InvalidArgument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const UnknownSpec& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitUsage;
}
