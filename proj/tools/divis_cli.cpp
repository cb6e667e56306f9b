// divis command line: expansions, feasibility checks, censuses, gamma
// searches, claim verification and table reproduction.  Uses only the C API
// of the shared library.
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "divis.h"

namespace {

// exit codes: 0 success, 1 mathematical negative, 2 usage error, 3 budget
int rc_of(int code) {
    switch (code) {
        case DIVIS_OK: return 0;
        case DIVIS_NEGATIVE: return 1;
        case DIVIS_EBUDGET: return 3;
        default: return 2;
    }
}

std::string take(char* p) {
    std::string s = p ? p : "";
    divis_free(p);
    return s;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write " + path);
    os << content;
}

std::string read_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

std::string default_cache_dir() {
    const char* env = std::getenv("DIVIS_CACHE_DIR");
    return env ? env : "";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"divisible-code analysis"};
    app.require_subcommand(1);

    int q = 2, r = 2, k = 0, max_gamma = 0, threads = 0;
    long long n = 0, delta = 2;
    uint64_t budget_nodes = 0;
    double budget_seconds = 0;
    std::string cache_dir = default_cache_dir(), out, format = "text", in_file, suite = "even", claim_id;
    int max_n = 10;

    auto add_budget = [&](CLI::App* c) {
        c->add_option("--budget-nodes", budget_nodes, "search node limit (0 = unlimited)");
        c->add_option("--budget-seconds", budget_seconds, "wall clock limit (0 = unlimited)");
        c->add_option("--cache-dir", cache_dir, "census cache directory (env DIVIS_CACHE_DIR)");
        c->add_option("--threads", threads, "worker threads for the census engine");
    };

    auto* expand = app.add_subcommand("expand", "S_q(r)-adic expansion of n");
    expand->add_option("--q", q)->required();
    expand->add_option("--r", r)->required();
    expand->add_option("--n", n)->required();
    expand->add_option("--format", format, "json|text");
    expand->add_option("--out", out, "write output to file");

    auto* feas = app.add_subcommand("feasible", "length feasibility of q^r-divisible multisets");
    feas->add_option("--q", q)->required();
    feas->add_option("--r", r)->required();
    feas->add_option("--n", n)->required();

    auto* check = app.add_subcommand("check", "validate a witness matrix file");
    check->add_option("--in", in_file, "matrix file")->required();
    check->add_option("--delta", delta)->required();

    auto* census = app.add_subcommand("census", "enumerate Delta-divisible codes up to equivalence");
    census->add_option("--q", q)->required();
    census->add_option("--delta", delta)->required();
    census->add_option("--n", n)->required();
    census->add_option("--k", k)->required();
    census->add_option("--max-gamma", max_gamma, "maximum column multiplicity");
    census->add_option("--out", out, "write representatives to file");
    add_budget(census);

    auto* gamma = app.add_subcommand("gamma", "minimum column multiplicity for (Delta, n)");
    gamma->add_option("--q", q)->required();
    gamma->add_option("--delta", delta)->required();
    gamma->add_option("--n", n)->required();
    gamma->add_option("--max-gamma", max_gamma, "stop the search at this gamma");
    gamma->add_option("--out", out, "result file; witness lands next to it as .witness.txt");
    gamma->add_flag("--lookup", "use the table lookup instead of the search");
    add_budget(gamma);

    auto* claim = app.add_subcommand("verify-claim", "machine-check one classification claim");
    claim->add_option("--id", claim_id, "claim id (see --list)");
    claim->add_flag("--list", "list known claim ids");
    add_budget(claim);

    auto* tables = app.add_subcommand("tables", "reproduce a census table as CSV");
    tables->add_option("--suite", suite, "even|doubly-even|triply-even|sixteen|ternary|quaternary")->required();
    tables->add_option("--max-n", max_n, "largest length");
    tables->add_option("--out", out, "CSV file");
    add_budget(tables);

    auto* stats = app.add_subcommand("stats", "combinatorial data rows for all classes of one cardinality");
    stats->add_option("--q", q)->required();
    stats->add_option("--delta", delta)->required();
    stats->add_option("--n", n)->required();
    stats->add_option("--out", out, "CSV file");
    add_budget(stats);

    CLI11_PARSE(app, argc, argv);

    auto emit = [&](const std::string& text) {
        if (out.empty())
            std::cout << text << (text.empty() || text.back() == '\n' ? "" : "\n");
        else
            write_file(out, text);
    };

    try {
        if (expand->parsed()) {
            char* json = nullptr;
            int rc = divis_expand(q, r, n, &json);
            if (rc == DIVIS_EINVAL || rc == DIVIS_ERROR) return 2;
            emit(take(json));
            return rc_of(rc);
        }
        if (feas->parsed()) {
            int f = 0;
            int rc = divis_feasible(q, r, n, &f);
            if (rc == DIVIS_EINVAL || rc == DIVIS_ERROR) return 2;
            std::cout << (f ? "feasible" : "infeasible") << "\n";
            return rc_of(rc);
        }
        if (check->parsed()) {
            char* report = nullptr;
            int rc = divis_check_matrix(read_file(in_file).c_str(), delta, &report);
            if (rc == DIVIS_EINVAL || rc == DIVIS_ERROR) return 2;
            emit(take(report));
            return rc_of(rc);
        }

        divis_census_t* eng = divis_census_create(cache_dir.c_str(), threads);
        if (!eng) return 2;
        int rc = DIVIS_ERROR;
        if (census->parsed()) {
            char *counts = nullptr, *reps = nullptr;
            rc = divis_census_enumerate(eng, q, delta, static_cast<int>(n), k, max_gamma, budget_nodes,
                                        budget_seconds, &counts, &reps);
            if (rc != DIVIS_EINVAL && rc != DIVIS_ERROR) {
                std::cout << take(counts);
                std::string r2 = take(reps);
                if (!out.empty()) write_file(out, r2);
            }
        } else if (gamma->parsed()) {
            char *json = nullptr, *witness = nullptr;
            if (gamma->count("--lookup"))
                rc = [&] {
                    long long value = 0;
                    int rc2 = divis_gamma_lookup(q, delta, n, &value, &witness);
                    if (rc2 == DIVIS_OK)
                        json = nullptr, std::cout << "{\"gamma\":" << value << "}\n";
                    else if (rc2 == DIVIS_NEGATIVE)
                        std::cout << "{\"gamma\":null}\n";
                    return rc2;
                }();
            else {
                rc = divis_census_gamma(eng, q, delta, n, max_gamma, budget_nodes, budget_seconds, &json, &witness);
                if (rc != DIVIS_EINVAL && rc != DIVIS_ERROR) std::cout << take(json) << "\n";
            }
            std::string w = take(witness);
            if (!w.empty() && !out.empty()) write_file(out + ".witness.txt", w);
            else if (!w.empty() && out.empty() && rc == DIVIS_OK) std::cout << w;
        } else if (claim->parsed()) {
            if (claim->count("--list")) {
                char* ids = nullptr;
                rc = divis_claim_list(&ids);
                std::cout << take(ids);
            } else if (claim_id.empty()) {
                std::cerr << "verify-claim needs --id or --list\n";
                divis_census_destroy(eng);
                return 2;
            } else {
                char* verdict = nullptr;
                rc = divis_verify_claim(eng, claim_id.c_str(), budget_nodes, budget_seconds, &verdict);
                std::cout << take(verdict) << "\n";
            }
        } else if (tables->parsed()) {
            char* csv = nullptr;
            rc = divis_tables(eng, suite.c_str(), max_n, budget_nodes, budget_seconds, &csv);
            if (rc != DIVIS_EINVAL && rc != DIVIS_ERROR) emit(take(csv));
        } else if (stats->parsed()) {
            char* csv = nullptr;
            rc = divis_stats(eng, q, delta, static_cast<int>(n), budget_nodes, budget_seconds, &csv);
            if (rc != DIVIS_EINVAL && rc != DIVIS_ERROR) emit(take(csv));
        }
        divis_census_destroy(eng);
        if (rc == DIVIS_EINVAL || rc == DIVIS_ERROR) return 2;
        return rc_of(rc);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
