#include "divis.h"

#include <cstring>
#include <sstream>

#include "census.hpp"

using namespace divis;

namespace {

char* dup_string(const std::string& s) {
    char* p = static_cast<char*>(malloc(s.size() + 1));
    if (p) std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

int wrap(const std::function<int()>& fn) {
    try {
        return fn();
    } catch (const BudgetExceeded&) {
        return DIVIS_EBUDGET;
    } catch (const std::invalid_argument&) {
        return DIVIS_EINVAL;
    } catch (const RequiresCensus&) {
        return DIVIS_EINVAL;
    } catch (const std::exception&) {
        return DIVIS_ERROR;
    }
}

}  // namespace

struct divis_census {
    CensusEngine engine;
    divis_census(const char* dir, int threads) : engine(dir ? dir : "", threads > 0 ? threads : 1) {}
};

extern "C" {

const char* divis_version(void) { return "divis 1.0.0"; }

void divis_free(char* p) { free(p); }

int divis_expand(int q, int r, long long n, char** json_out) {
    if (!json_out || q < 2 || r < 0) return DIVIS_EINVAL;
    return wrap([&] {
        Expansion e = sqr_adic_expansion(n, static_cast<unsigned>(q), static_cast<unsigned>(r));
        *json_out = dup_string(expansion_json(e));
        return e.feasible() ? DIVIS_OK : DIVIS_NEGATIVE;
    });
}

int divis_feasible(int q, int r, long long n, int* feasible_out) {
    if (!feasible_out || q < 2 || r < 0) return DIVIS_EINVAL;
    return wrap([&] {
        bool f = is_length_feasible(n, static_cast<unsigned>(q), static_cast<unsigned>(r));
        *feasible_out = f ? 1 : 0;
        return f ? DIVIS_OK : DIVIS_NEGATIVE;
    });
}

int divis_gamma_lookup(int q, long long delta, long long n, long long* value_out, char** witness_out) {
    if (!value_out || q < 2 || delta < 1) return DIVIS_EINVAL;
    return wrap([&] {
        GammaResult r = gamma_lookup(static_cast<unsigned>(q), static_cast<uint64_t>(delta), n);
        if (r.infinite) {
            *value_out = 0;
            return DIVIS_NEGATIVE;
        }
        *value_out = static_cast<long long>(r.value);
        if (witness_out) *witness_out = r.witness ? dup_string(r.witness->to_text()) : nullptr;
        return DIVIS_OK;
    });
}

int divis_check_matrix(const char* matrix_text, long long delta, char** report_json) {
    if (!matrix_text || !report_json || delta < 1) return DIVIS_EINVAL;
    return wrap([&] {
        GeneratorMatrix g = GeneratorMatrix::from_text(matrix_text);
        auto [eff, g1] = column_stats(g);
        bool div = is_divisible_code(g, static_cast<uint64_t>(delta));
        std::ostringstream os;
        os << "{\"q\":" << g.q() << ",\"k\":" << g.k() << ",\"n\":" << g.n()
           << ",\"effective_length\":" << eff << ",\"divisible\":" << (div ? "true" : "false")
           << ",\"gamma1\":" << g1 << "}";
        *report_json = dup_string(os.str());
        return div ? DIVIS_OK : DIVIS_NEGATIVE;
    });
}

divis_census_t* divis_census_create(const char* cache_dir, int threads) {
    try {
        return new divis_census(cache_dir, threads);
    } catch (...) {
        return nullptr;
    }
}

void divis_census_destroy(divis_census_t* c) { delete c; }

int divis_census_enumerate(divis_census_t* c, int q, long long delta, int n, int k, int gamma_cap,
                           uint64_t budget_nodes, double budget_seconds, char** counts_out, char** reps_out) {
    if (!c || !counts_out || q < 2 || delta < 1 || n < 1 || k < 1 || gamma_cap < 0) return DIVIS_EINVAL;
    return wrap([&] {
        Budget b(budget_nodes, budget_seconds);
        CensusKey key{static_cast<unsigned>(q), static_cast<uint64_t>(delta), static_cast<unsigned>(n),
                      static_cast<unsigned>(k), static_cast<unsigned>(gamma_cap)};
        const CensusRecord& rec = c->engine.enumerate_codes(key, b);
        std::ostringstream os;
        os << "n,k,count\n" << n << "," << k << "," << rec.count() << (rec.complete ? "" : ",partial") << "\n";
        *counts_out = dup_string(os.str());
        if (reps_out) {
            std::ostringstream rs;
            for (const auto& m : rec.reps) rs << from_multiset(m).to_text() << "\n";
            *reps_out = dup_string(rs.str());
        }
        return rec.complete ? DIVIS_OK : DIVIS_EBUDGET;
    });
}

int divis_census_gamma(divis_census_t* c, int q, long long delta, long long n, int max_gamma,
                       uint64_t budget_nodes, double budget_seconds, char** json_out, char** witness_out) {
    if (!c || !json_out || q < 2 || delta < 1) return DIVIS_EINVAL;
    return wrap([&] {
        Budget b(budget_nodes, budget_seconds);
        GammaResult r = c->engine.compute_gamma(static_cast<unsigned>(q), static_cast<uint64_t>(delta), n, b,
                                                max_gamma > 0 ? static_cast<unsigned>(max_gamma) : 0);
        std::ostringstream os;
        os << "{\"q\":" << q << ",\"delta\":" << delta << ",\"n\":" << n;
        if (r.infinite)
            os << ",\"gamma\":null";
        else
            os << ",\"gamma\":" << r.value;
        os << ",\"partial\":" << (r.partial ? "true" : "false");
        if (!r.note.empty()) os << ",\"note\":\"" << r.note << "\"";
        if (r.certificate) os << ",\"certificate\":" << expansion_json(*r.certificate);
        os << "}";
        *json_out = dup_string(os.str());
        if (witness_out) *witness_out = r.witness ? dup_string(r.witness->to_text()) : nullptr;
        if (r.partial) return DIVIS_EBUDGET;
        return r.infinite ? DIVIS_NEGATIVE : DIVIS_OK;
    });
}

int divis_verify_claim(divis_census_t* c, const char* claim_id, uint64_t budget_nodes, double budget_seconds,
                       char** verdict_out) {
    if (!c || !claim_id || !verdict_out) return DIVIS_EINVAL;
    return wrap([&] {
        Budget b(budget_nodes, budget_seconds);
        Verdict v = verify_claim(c->engine, claim_id, b);
        switch (v.outcome) {
            case Verdict::Pass:
                *verdict_out = dup_string("pass");
                return DIVIS_OK;
            case Verdict::Fail:
                *verdict_out = dup_string("fail:" + v.detail);
                return DIVIS_NEGATIVE;
            default:
                *verdict_out = dup_string("budget");
                return DIVIS_EBUDGET;
        }
    });
}

int divis_claim_list(char** ids_out) {
    if (!ids_out) return DIVIS_EINVAL;
    return wrap([&] {
        std::ostringstream os;
        for (const auto& id : claim_catalog()) os << id << "\n";
        *ids_out = dup_string(os.str());
        return DIVIS_OK;
    });
}

int divis_tables(divis_census_t* c, const char* suite, int max_n, uint64_t budget_nodes, double budget_seconds,
                 char** csv_out) {
    if (!c || !suite || !csv_out || max_n < 1) return DIVIS_EINVAL;
    return wrap([&] {
        Budget b(budget_nodes, budget_seconds);
        auto cells = table_suite(c->engine, suite, static_cast<unsigned>(max_n), b);
        *csv_out = dup_string(table_csv(cells));
        for (const auto& cell : cells)
            if (!cell.complete) return DIVIS_EBUDGET;
        return DIVIS_OK;
    });
}

int divis_stats(divis_census_t* c, int q, long long delta, int n, uint64_t budget_nodes, double budget_seconds,
                char** csv_out) {
    if (!c || !csv_out || q < 2 || delta < 1 || n < 1) return DIVIS_EINVAL;
    return wrap([&] {
        Budget b(budget_nodes, budget_seconds);
        bool complete = true;
        std::vector<const CensusRecord*> recs;
        for (unsigned k = 1; k <= static_cast<unsigned>(n); ++k) {
            const CensusRecord& rec = c->engine.enumerate_codes(
                CensusKey{static_cast<unsigned>(q), static_cast<uint64_t>(delta), static_cast<unsigned>(n), k, 0}, b);
            complete = complete && rec.complete;
            if (rec.count()) recs.push_back(&rec);
            bool layer_alive = false;
            for (unsigned m = k; m <= static_cast<unsigned>(n) && !layer_alive; ++m)
                layer_alive = c->engine
                                  .enumerate_codes(CensusKey{static_cast<unsigned>(q), static_cast<uint64_t>(delta),
                                                             m, k, 0},
                                                   b)
                                  .count() > 0;
            if (!layer_alive) break;
        }
        *csv_out = dup_string(stats_csv(c->engine.stats_table(recs)));
        return complete ? DIVIS_OK : DIVIS_EBUDGET;
    });
}

}  // end extern "C"
