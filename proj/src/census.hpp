#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "codes.hpp"
#include "lengths.hpp"

namespace divis {

struct Budget {
    uint64_t node_limit = UINT64_MAX;
    double seconds = 0;  // 0 = unlimited
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    mutable std::atomic<uint64_t> nodes{0};

    Budget() = default;
    Budget(uint64_t nl, double secs) : node_limit(nl ? nl : UINT64_MAX), seconds(secs) {}
    Budget(const Budget& o) : node_limit(o.node_limit), seconds(o.seconds), start(o.start), nodes(o.nodes.load()) {}

    bool charge(uint64_t units = 1) const {
        uint64_t v = nodes.fetch_add(units, std::memory_order_relaxed) + units;
        if (v > node_limit) return false;
        if (seconds > 0 && (v & 0x3fff) == 0) {
            auto el = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            if (el > seconds) return false;
        }
        return true;
    }
};

struct BudgetExceeded : std::runtime_error {
    BudgetExceeded() : std::runtime_error("census: budget exhausted") {}
};

struct CensusKey {
    unsigned q = 2;
    uint64_t delta = 2;
    unsigned n = 0;
    unsigned k = 1;
    unsigned gamma_cap = 0;  // 0 = unbounded

    bool operator<(const CensusKey& o) const {
        return std::tie(q, delta, n, k, gamma_cap) < std::tie(o.q, o.delta, o.n, o.k, o.gamma_cap);
    }
    std::string str() const;
};

// Equivalence-class representatives (canonical multisets) of spanning
// Delta-divisible codes with the key's parameters.
struct CensusRecord {
    CensusKey key;
    bool complete = true;
    std::vector<PointMultiset> reps;  // canonical, sorted

    uint64_t count() const { return reps.size(); }
};

struct StatsRow {
    unsigned n, k;
    uint64_t delta;
    uint32_t gamma1;
    uint64_t lambda1, lambda2, lambda3;
    std::map<uint64_t, uint64_t> spectrum;
    bool operator==(const StatsRow& o) const {
        return std::tie(n, k, delta, gamma1, lambda1, lambda2, lambda3, spectrum) ==
               std::tie(o.n, o.k, o.delta, o.gamma1, o.lambda1, o.lambda2, o.lambda3, o.spectrum);
    }
    bool operator<(const StatsRow& o) const;
};

struct CacheCorrupt : std::runtime_error {
    CacheCorrupt(const std::string& what) : std::runtime_error(what) {}
};

class CensusEngine {
  public:
    explicit CensusEngine(std::string cache_dir = "", unsigned threads = 1);

    // Complete duplicate-free list of class representatives; dimension-wise
    // extension with isomorph rejection by canonical form.  Budget exhaustion
    // yields a record marked partial, never a silent undercount.
    const CensusRecord& enumerate_codes(const CensusKey& key, const Budget& budget);

    // Least gamma admitting a Delta-divisible multiset of cardinality n, with
    // witness; infeasible cardinalities yield an expansion certificate.
    GammaResult compute_gamma(unsigned q, uint64_t delta, long long n, const Budget& budget,
                              unsigned max_gamma = 0);

    // All classes of cardinality n over every dimension (respecting the cap).
    std::vector<PointMultiset> all_classes(unsigned q, uint64_t delta, unsigned n, unsigned gamma_cap,
                                           const Budget& budget, bool* complete = nullptr);

    std::vector<StatsRow> stats_table(const std::vector<const CensusRecord*>& records) const;

    // Persistence: one text file per key under the cache directory.
    void store(const CensusRecord& rec) const;
    std::optional<CensusRecord> load(const CensusKey& key) const;

    const std::string& cache_dir() const { return cache_dir_; }
    unsigned threads() const { return threads_; }

  private:
    struct MemoEntry {
        unsigned cap_computed = 0;
        bool complete = true;
        std::vector<PointMultiset> reps;
    };

    const CensusRecord& finalize(const CensusKey& key, std::vector<PointMultiset> reps, bool complete);
    MemoEntry compute_cell(const CensusKey& key, const Budget& budget);
    bool delta_feasible(unsigned q, uint64_t delta, long long n) const;

    std::string cache_dir_;
    unsigned threads_;
    std::map<std::tuple<unsigned, uint64_t, unsigned, unsigned>, MemoEntry> memo_;
    std::map<CensusKey, std::unique_ptr<CensusRecord>> served_;
    std::vector<std::unique_ptr<CensusRecord>> retired_;  // keeps old references valid
    std::mutex mu_;
};

// Claim verification: machine checks of the classification statements.
struct Verdict {
    enum Outcome { Pass, Fail, BudgetOut } outcome = Pass;
    std::string detail;  // counterexample text on failure
};
Verdict verify_claim(CensusEngine& engine, const std::string& claim_id, const Budget& budget);
std::vector<std::string> claim_catalog();

// Appendix table suites: (suite name) -> list of (n, k, count) rows.
struct TableCell {
    unsigned n, k;
    uint64_t count;
    bool complete;
};
std::vector<TableCell> table_suite(CensusEngine& engine, const std::string& suite, unsigned max_n,
                                   const Budget& budget);
std::string table_csv(const std::vector<TableCell>& cells);
std::string stats_csv(const std::vector<StatsRow>& rows);

// Lift enumeration (exposed for tests): all spanning Delta-divisible
// children of cardinality child_n and dimension parent.k()+1 whose projection
// through the new coordinate point equals the parent.
void enumerate_lifts(const PointMultiset& parent, unsigned child_n, unsigned gamma_cap, uint64_t delta,
                     const Budget& budget, const std::function<void(const PointMultiset&)>& sink);

}  // namespace divis
