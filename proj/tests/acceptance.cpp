// Acceptance suite: one pass/fail line per criterion, grouped so ctest can
// schedule the heavy parts separately.
//   fast        expansion/feasibility, A_8, witness round trips, property suites
//   census      appendix census tables and the cardinality-17 data
//   claims      classification claim catalog
//   gamma-heavy minimum column multiplicities by exhaustive search
#include <chrono>
#include <cstring>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include "canon.hpp"
#include "census.hpp"

using namespace divis;

namespace {

int failures = 0;

void report(const std::string& name, bool ok, const std::string& detail = "") {
    std::cout << (ok ? "PASS " : "FAIL ") << name;
    if (!detail.empty()) std::cout << "  [" << detail << "]";
    std::cout << std::endl;
    if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---- criterion 1: expansion and feasibility ------------------------------

void criterion1() {
    auto t0 = std::chrono::steady_clock::now();
    Expansion e = sqr_adic_expansion(9, 2, 2);
    bool ok = e.digits == std::vector<int>{1, 1} && e.leading == -1;

    auto infeasible = [](unsigned r) {
        std::set<long long> s;
        for (long long n = 1; n <= 60; ++n)
            if (!is_length_feasible(n, 2, r)) s.insert(n);
        return s;
    };
    ok = ok && infeasible(1) == std::set<long long>{1};
    ok = ok && infeasible(2) == std::set<long long>{1, 2, 3, 5, 9};
    ok = ok && infeasible(3) == std::set<long long>{1, 2, 3, 4, 5, 6, 7, 9, 10, 11, 13, 17, 18, 19, 21, 25, 33};
    double el = seconds_since(t0);
    report("criterion 1: S_q(r)-adic expansion and infeasible length sets", ok && el < 1.0,
           "elapsed " + std::to_string(el) + "s");
}

// ---- criterion 5: A_8 -----------------------------------------------------

void criterion5() {
    auto t0 = std::chrono::steady_clock::now();
    std::set<uint64_t> expected{0,  1,  2,  3,  4,  6,  7,  8,  9,  10, 11, 13, 14,
                                15, 16, 17, 18, 21, 22, 25, 29, 30, 31, 33, 37, 45};
    bool ok = a8_reachable_set() == expected;
    double el = seconds_since(t0);
    report("criterion 5: A_8 reachable set", ok && el < 1.0, "elapsed " + std::to_string(el) + "s");
}

// ---- criterion 8: witness round trips -------------------------------------

bool witness_checks(const GeneratorMatrix& g, uint64_t delta, uint64_t n, uint64_t gamma) {
    auto [eff, g1] = column_stats(g);
    return is_divisible_code(g, delta) && eff == n && g1 == gamma;
}

void criterion8() {
    bool ok = true;
    std::string detail;
    for (uint64_t delta : {2ull, 4ull, 8ull}) {
        for (long long n = 1; n <= 60 && ok; ++n) {
            auto v = gamma_lookup_value(2, delta, n);
            if (!v) continue;
            try {
                GammaResult r = gamma_lookup(2, delta, n);
                if (!r.witness || !witness_checks(*r.witness, delta, n, *v)) {
                    ok = false;
                    detail = "delta=" + std::to_string(delta) + " n=" + std::to_string(n);
                }
            } catch (const std::exception& e) {
                ok = false;
                detail = "delta=" + std::to_string(delta) + " n=" + std::to_string(n) + ": " + e.what();
            }
        }
    }
    report("criterion 8: gamma_lookup witnesses validate for n <= 60", ok, detail);
}

// ---- criterion 7: property suites -----------------------------------------

PointMultiset random_multiset(std::mt19937& rng, unsigned q, unsigned k, unsigned n) {
    const Geometry& g = Geometry::get(q, k);
    PointMultiset m(q, k);
    for (unsigned i = 0; i < n; ++i) m.add_mult(rng() % g.num_points(), 1);
    return m;
}

void criterion7() {
    std::mt19937 rng(20260808);

    {  // standard equations, >= 1000 instances
        int bad = 0, total = 0;
        for (unsigned q : {2u, 3u, 4u})
            for (int t = 0; t < 340; ++t) {
                unsigned k = 2 + rng() % (q == 2 ? 4 : 3);
                if (!random_multiset(rng, q, k, 2 + rng() % 14).standard_equations_check()) ++bad;
                ++total;
            }
        report("criterion 7a: standard equations on " + std::to_string(total) + " random multisets", bad == 0);
    }

    {  // restriction divisibility, >= 500 divisible instances
        int bad = 0, total = 0;
        while (total < 500) {
            unsigned q = std::vector<unsigned>{2, 3, 4}[rng() % 3];
            unsigned k = 3 + rng() % 2;
            uint64_t delta = q * (1 + rng() % 2);
            PointMultiset m = random_multiset(rng, q, k, 2 + rng() % 6).scale(static_cast<uint32_t>(delta));
            const Geometry& g = m.geom();
            uint32_t h = g.value_of_point(rng() % g.num_points());
            std::vector<uint32_t> vecs;
            for (uint32_t v = 1; v < g.num_values(); ++v)
                if (g.vdot(h, v) == 0) vecs.push_back(v);
            Subspace hyp = Subspace::from_vectors(q, k, vecs);
            if (!m.is_divisible(delta) || !m.restrict_to(hyp).is_divisible(delta / q)) ++bad;
            ++total;
        }
        report("criterion 7b: restriction divisibility on 500 instances", bad == 0);
    }

    {  // projection contract, >= 500 instances
        int bad = 0, total = 0;
        while (total < 500) {
            unsigned q = std::vector<unsigned>{2, 3, 4}[rng() % 3];
            unsigned k = 3 + rng() % 2;
            uint64_t delta = 1 + rng() % 4;
            PointMultiset m = random_multiset(rng, q, k, 3 + rng() % 8).scale(static_cast<uint32_t>(delta));
            uint32_t qp = rng() % m.geom().num_points();
            PointMultiset mp = m.project(qp);
            if (mp.cardinality() != m.cardinality() - m.mult(qp) || !mp.is_divisible(delta)) ++bad;
            ++total;
        }
        report("criterion 7c: projection contract on 500 instances", bad == 0);
    }

    {  // canonical-form invariance under >= 500 semilinear transforms
        int bad = 0, transforms = 0;
        while (transforms < 500) {
            unsigned q = std::vector<unsigned>{2, 3, 4}[rng() % 3];
            unsigned k = 2 + rng() % 3;
            PointMultiset m = random_multiset(rng, q, k, k + 2 + rng() % 6);
            if (!m.is_spanning()) continue;
            auto canon = canonical_counts(m);
            const Geometry& g = m.geom();
            const FieldSpec& f = g.field();
            for (int t = 0; t < 5; ++t) {
                std::vector<uint32_t> rows(k);
                while (true) {
                    for (auto& r : rows) r = rng() % g.num_values();
                    if (linalg::rank(g, rows) == k) break;
                }
                unsigned fe = rng() % f.e();
                PointMultiset tm(q, k);
                for (uint32_t p = 0; p < g.num_points(); ++p) {
                    if (!m.mult(p)) continue;
                    uint32_t v = g.vfrob(g.value_of_point(p), fe), w = 0;
                    for (unsigned i = 0; i < k; ++i) w = w * q + g.vdot(rows[i], v);
                    tm.add_mult(g.point_of_vector(w), m.mult(p));
                }
                if (canonical_counts(tm) != canon) ++bad;
                ++transforms;
            }
        }
        report("criterion 7d: canonical form invariant under 500 semilinear transforms", bad == 0);
    }

    {  // brute force vs census, q=2, delta=2, n <= 7, all dimensions
        CensusEngine eng;
        Budget b;
        bool ok = true;
        std::string detail;
        for (unsigned n = 2; n <= 7 && ok; ++n) {
            for (unsigned k = 1; k < n && ok; ++k) {
                const Geometry& g = Geometry::get(2, k);
                uint32_t N = g.num_points();
                std::vector<std::pair<uint64_t, IsoTarget>> classes;
                auto note_survivor = [&](const PointMultiset& m) {
                    uint64_t inv = iso_invariant_hash(m);
                    for (auto& [h, t] : classes)
                        if (h == inv && multiset_iso_to(m, t)) return;
                    classes.emplace_back(inv, IsoTarget(m));
                };
                // enumerate supports as sets with one optional repeated point;
                // spanning multisets of cardinality n <= 7 have support >= k,
                // so multiplicities beyond 2 only occur with support <= n-2
                // and are enumerated by the generic composition walk below
                // when N is small; for larger N only gamma1 <= 2 shapes can
                // span, handled by the parity-mask walk.
                if (N <= 31) {
                    std::vector<uint32_t> mults(N, 0);
                    std::function<void(uint32_t, unsigned)> rec = [&](uint32_t idx, unsigned left) {
                        if (idx == N) {
                            if (left) return;
                            PointMultiset m(2, k);
                            for (uint32_t p = 0; p < N; ++p)
                                if (mults[p]) m.set_mult(p, mults[p]);
                            if (!m.is_divisible(2) || !m.is_spanning()) return;
                            note_survivor(m);
                            return;
                        }
                        for (unsigned c = 0; c <= left; ++c) {
                            mults[idx] = c;
                            rec(idx + 1, left - c);
                        }
                        mults[idx] = 0;
                    };
                    rec(0, n);
                } else {
                    // k = 6, n = 7: spanning needs support >= 6, so gamma1 <= 2
                    // sets of 7 points: parity over all 63 hyperplanes must be all-ones
                    std::vector<uint64_t> inc(N);
                    for (uint32_t p = 0; p < N; ++p) {
                        uint64_t mask = 0;
                        for (uint32_t h = 0; h < N; ++h)
                            if (g.vdot(g.value_of_point(h), g.value_of_point(p)) == 0) mask |= 1ull << h;
                        inc[p] = mask;
                    }
                    uint64_t target = (N == 64 ? ~0ull : (1ull << N) - 1);
                    std::vector<uint32_t> pick;
                    std::function<void(uint32_t, uint64_t)> recs = [&](uint32_t start, uint64_t parity) {
                        if (pick.size() == n) {
                            if (parity != target) return;
                            PointMultiset m(2, k);
                            for (uint32_t p : pick) m.set_mult(p, 1);
                            if (m.is_spanning()) note_survivor(m);
                            return;
                        }
                        if (N - start < n - pick.size()) return;
                        for (uint32_t p = start; p < N; ++p) {
                            pick.push_back(p);
                            recs(p + 1, parity ^ inc[p]);
                            pick.pop_back();
                        }
                    };
                    recs(0, 0);
                    // support 6 with one doubled point
                    std::function<void(uint32_t, uint64_t)> recd = [&](uint32_t start, uint64_t parity) {
                        if (pick.size() == 6) {
                            for (uint32_t d : pick) {
                                if ((parity ^ inc[d]) != target) continue;
                                PointMultiset m(2, k);
                                for (uint32_t p : pick) m.set_mult(p, 1);
                                m.add_mult(d, 1);
                                if (m.is_spanning()) note_survivor(m);
                            }
                            return;
                        }
                        if (N - start < 6 - pick.size()) return;
                        for (uint32_t p = start; p < N; ++p) {
                            pick.push_back(p);
                            recd(p + 1, parity ^ inc[p]);
                            pick.pop_back();
                        }
                    };
                    recd(0, 0);
                }
                uint64_t census = eng.enumerate_codes(CensusKey{2, 2, n, k, 0}, b).count();
                if (classes.size() != census) {
                    ok = false;
                    detail = "n=" + std::to_string(n) + " k=" + std::to_string(k) + " brute=" +
                             std::to_string(classes.size()) + " census=" + std::to_string(census);
                }
            }
        }
        report("criterion 7e: brute-force vs census agreement (q=2, delta=2, n <= 7)", ok, detail);
    }
}

// ---- criterion 3: census tables --------------------------------------------

struct Row {
    unsigned n;
    std::vector<uint64_t> counts;  // k = 1..counts.size()
};

bool check_table(CensusEngine& eng, const Budget& b, const std::string& name, unsigned q, uint64_t delta,
                 const std::vector<Row>& rows, unsigned max_n) {
    bool ok = true;
    std::map<std::pair<unsigned, unsigned>, uint64_t> expect;
    for (const auto& r : rows)
        for (unsigned k = 1; k <= r.counts.size(); ++k)
            if (r.counts[k - 1]) expect[{r.n, k}] = r.counts[k - 1];
    for (unsigned n = 1; n <= max_n; ++n) {
        for (unsigned k = 1; k <= n; ++k) {
            const CensusRecord& rec = eng.enumerate_codes(CensusKey{q, delta, n, k, 0}, b);
            if (!rec.complete) {
                std::cout << "  " << name << " n=" << n << " k=" << k << " incomplete (budget)\n";
                return false;
            }
            uint64_t want = expect.count({n, k}) ? expect[{n, k}] : 0;
            if (rec.count() != want) {
                std::cout << "  " << name << " n=" << n << " k=" << k << " got " << rec.count() << " want "
                          << want << "\n";
                ok = false;
            }
            bool layer_alive = false;
            for (unsigned m = k; m <= max_n && !layer_alive; ++m)
                layer_alive = eng.enumerate_codes(CensusKey{q, delta, m, k, 0}, b).count() > 0;
            if (!layer_alive) break;
        }
    }
    return ok;
}

void criterion3(CensusEngine& eng) {
    Budget b;
    auto t0 = std::chrono::steady_clock::now();

    std::vector<Row> even = {
        {2, {1}},         {3, {0, 1}},          {4, {1, 1, 1}},          {5, {0, 1, 1, 1}},
        {6, {1, 2, 3, 2, 1}}, {7, {0, 2, 4, 4, 2, 1}}, {8, {1, 3, 8, 10, 7, 3, 1}},
        {9, {0, 3, 9, 18, 16, 9, 3, 1}}, {10, {1, 4, 17, 37, 46, 30, 13, 4, 1}}};
    report("criterion 3a: even code table n <= 10", check_table(eng, b, "even", 2, 2, even, 10),
           "elapsed " + std::to_string(seconds_since(t0)) + "s");

    t0 = std::chrono::steady_clock::now();
    std::vector<Row> doubly = {
        {4, {1}},
        {6, {0, 1}},
        {7, {0, 0, 1}},
        {8, {1, 1, 1, 1}},
        {10, {0, 1, 1, 1}},
        {11, {0, 0, 1, 1}},
        {12, {1, 2, 3, 4, 2}},
        {13, {0, 0, 1, 1, 2}},
        {14, {0, 2, 4, 6, 5, 4}},
        {15, {0, 0, 3, 6, 6, 4, 2}},
        {16, {1, 3, 8, 18, 21, 15, 7, 2}},
        {17, {0, 0, 2, 7, 14, 11, 5, 1}},
        {18, {0, 3, 9, 27, 44, 45, 21, 6}},
        {19, {0, 0, 6, 22, 52, 62, 40, 10}},
        {20, {1, 4, 17, 64, 149, 212, 156, 65, 10}}};
    report("criterion 3b: doubly-even code table n <= 20", check_table(eng, b, "doubly-even", 2, 4, doubly, 20),
           "elapsed " + std::to_string(seconds_since(t0)) + "s");

    t0 = std::chrono::steady_clock::now();
    std::vector<Row> ternary = {{3, {1}}, {4, {0, 1}}, {6, {1, 1}}, {7, {0, 1, 1}}};
    report("criterion 3d: ternary 3-divisible table n <= 7", check_table(eng, b, "ternary", 3, 3, ternary, 7),
           "elapsed " + std::to_string(seconds_since(t0)) + "s");

    t0 = std::chrono::steady_clock::now();
    std::vector<Row> quaternary = {
        {4, {1}},
        {5, {0, 1}},
        {8, {1, 1}},
        {9, {0, 1, 1}},
        {10, {0, 1, 1, 1}},
        {12, {1, 2, 2}},
        {13, {0, 2, 3, 1}},
        {14, {0, 1, 5, 3, 1}},
        {15, {0, 1, 3, 6, 2, 1}},
        {16, {1, 4, 9, 7, 2}},
        {17, {0, 3, 12, 9, 2}}};
    report("criterion 3e: quaternary 4-divisible table n <= 17",
           check_table(eng, b, "quaternary", 4, 4, quaternary, 17),
           "elapsed " + std::to_string(seconds_since(t0)) + "s");

    t0 = std::chrono::steady_clock::now();
    std::vector<Row> triply = {
        {8, {1}},
        {12, {0, 1}},
        {14, {0, 0, 1}},
        {15, {0, 0, 0, 1}},
        {16, {1, 1, 1, 1, 1}},
        {20, {0, 1, 1, 1}},
        {22, {0, 0, 1, 1}},
        {23, {0, 0, 0, 1, 1}},
        {24, {1, 2, 3, 4, 4, 1}},
        {26, {0, 0, 1, 1, 2}},
        {27, {0, 0, 0, 1, 1, 1}},
        {28, {0, 2, 4, 6, 7, 6, 1}},
        {29, {0, 0, 0, 1, 1, 2, 1}},
        {30, {0, 0, 3, 6, 8, 7, 6, 2}},
        {31, {0, 0, 0, 4, 8, 8, 6, 4, 1}},
        {32, {1, 3, 8, 18, 32, 34, 24, 13, 5, 1}}};
    report("criterion 3c: triply-even code table n <= 32", check_table(eng, b, "triply-even", 2, 8, triply, 32),
           "elapsed " + std::to_string(seconds_since(t0)) + "s");
}

// ---- criterion 4: appendix data for 4-divisible n=17 -----------------------

void criterion4(CensusEngine& eng) {
    Budget b;
    auto t0 = std::chrono::steady_clock::now();
    // rows: k, gamma1, l1, l2, l3, a5, a9, a13
    const int table[40][8] = {
        {3, 7, 4, 0, 2, 4, 2, 1},    {3, 5, 3, 0, 3, 3, 4, 0},    {4, 7, 6, 2, 0, 8, 3, 4},
        {4, 6, 6, 1, 1, 7, 5, 3},    {4, 5, 5, 2, 1, 6, 7, 2},    {4, 4, 6, 2, 1, 5, 9, 1},
        {4, 4, 4, 0, 3, 6, 7, 2},    {4, 3, 4, 2, 3, 5, 9, 1},    {4, 3, 6, 4, 1, 4, 11, 0},
        {5, 7, 10, 0, 0, 16, 5, 10}, {5, 6, 7, 2, 0, 14, 9, 8},   {5, 5, 9, 0, 1, 12, 13, 6},
        {5, 5, 6, 3, 0, 12, 13, 6},  {5, 4, 7, 3, 0, 10, 17, 4},  {5, 4, 10, 0, 1, 10, 17, 4},
        {5, 4, 6, 2, 1, 11, 15, 5},  {5, 3, 5, 3, 2, 10, 17, 4},  {5, 3, 9, 1, 2, 9, 19, 3},
        {5, 3, 10, 2, 1, 8, 21, 2},  {5, 3, 6, 4, 1, 9, 19, 3},   {5, 2, 7, 5, 0, 8, 21, 2},
        {5, 2, 11, 3, 0, 7, 23, 1},  {5, 2, 15, 1, 0, 6, 25, 0},  {6, 4, 10, 0, 1, 21, 31, 11},
        {6, 4, 7, 3, 0, 21, 31, 11}, {6, 3, 11, 0, 2, 18, 37, 8}, {6, 3, 10, 2, 1, 17, 39, 7},
        {6, 3, 6, 4, 1, 19, 35, 9},  {6, 3, 12, 1, 1, 16, 41, 6}, {6, 2, 7, 5, 0, 17, 39, 7},
        {6, 2, 11, 3, 0, 15, 43, 5}, {6, 2, 13, 2, 0, 14, 45, 4}, {6, 2, 15, 1, 0, 13, 47, 3},
        {6, 1, 17, 0, 0, 12, 49, 2}, {7, 2, 11, 3, 0, 31, 83, 13},{7, 2, 7, 5, 0, 35, 75, 17},
        {7, 2, 13, 2, 0, 29, 87, 11},{7, 2, 15, 1, 0, 27, 91, 9}, {7, 1, 17, 0, 0, 25, 95, 7},
        {8, 1, 17, 0, 0, 51, 187, 17}};

    std::multiset<std::vector<uint64_t>> want;
    for (const auto& r : table)
        want.insert({static_cast<uint64_t>(r[0]), static_cast<uint64_t>(r[1]), static_cast<uint64_t>(r[2]),
                     static_cast<uint64_t>(r[3]), static_cast<uint64_t>(r[4]), static_cast<uint64_t>(r[5]),
                     static_cast<uint64_t>(r[6]), static_cast<uint64_t>(r[7])});

    std::vector<const CensusRecord*> recs;
    bool complete = true;
    for (unsigned k = 1; k <= 17; ++k) {
        const CensusRecord& rec = eng.enumerate_codes(CensusKey{2, 4, 17, k, 0}, b);
        complete = complete && rec.complete;
        if (rec.count()) recs.push_back(&rec);
        bool layer_alive = false;
        for (unsigned m = k; m <= 17 && !layer_alive; ++m)
            layer_alive = eng.enumerate_codes(CensusKey{2, 4, m, k, 0}, b).count() > 0;
        if (!layer_alive) break;
    }
    auto rows = eng.stats_table(recs);
    std::multiset<std::vector<uint64_t>> got;
    for (const auto& r : rows) {
        auto a5 = r.spectrum.count(5) ? r.spectrum.at(5) : 0;
        auto a9 = r.spectrum.count(9) ? r.spectrum.at(9) : 0;
        auto a13 = r.spectrum.count(13) ? r.spectrum.at(13) : 0;
        got.insert({r.k, r.gamma1, r.lambda1, r.lambda2, r.lambda3, a5, a9, a13});
    }
    bool ok = complete && got == want;
    std::string detail = "rows " + std::to_string(rows.size()) + ", elapsed " +
                         std::to_string(seconds_since(t0)) + "s";
    if (!ok && got.size() == want.size()) {
        for (auto it = got.begin(), jt = want.begin(); it != got.end(); ++it, ++jt)
            if (*it != *jt) {
                std::ostringstream os;
                os << " first diff got(";
                for (auto x : *it) os << x << " ";
                os << ") want(";
                for (auto x : *jt) os << x << " ";
                os << ")";
                detail += os.str();
                break;
            }
    }
    report("criterion 4: 4-divisible cardinality-17 combinatorial data (40 rows)", ok, detail);
}

// ---- criterion 6: claims ----------------------------------------------------

void criterion6(CensusEngine& eng) {
    Budget b;
    std::vector<std::string> ids = {
        "2div-n2",  "2div-n3",  "2div-n4",  "2div-n5",  "2div-n6",  "2div-n7",
        "4div-n4",  "4div-n6",  "4div-n7",  "4div-n8",  "4div-n10", "4div-n10-mults",
        "4div-n11", "4div-n12", "4div-n13", "4div-n15", "4div-n16-special",
        "4div-n16-special2", "4div-n17-aux", "4div-n17-special", "4div-n17-line123-unique",
        "8div-n8",  "8div-n12", "8div-n14", "8div-n15", "8div-n16",
        "8div-n20-gamma-ge-4", "8div-n22-gamma-ge-8", "8div-n23-gamma-ge-8",
        "8div-n24-gamma-ge-4", "8div-n26-gamma-ge-4", "8div-n27-gamma-ge-4"};
    for (const auto& id : ids) {
        auto t0 = std::chrono::steady_clock::now();
        Verdict v = verify_claim(eng, id, b);
        report("criterion 6: claim " + id, v.outcome == Verdict::Pass,
               (v.outcome == Verdict::Pass ? "" : v.detail.substr(0, 120)) + " elapsed " +
                   std::to_string(seconds_since(t0)) + "s");
    }
}

// ---- criterion 2: gamma tables ---------------------------------------------

void criterion2(CensusEngine& eng, bool heavy) {
    Budget b;
    bool ok = true;
    std::string detail;
    auto expect_gamma = [&](uint64_t delta, long long n, std::optional<uint64_t> want) {
        GammaResult r = eng.compute_gamma(2, delta, n, b);
        bool good;
        if (!want)
            good = r.infinite && r.certificate && r.certificate->leading < 0;
        else
            good = !r.infinite && !r.partial && r.value == *want && r.witness &&
                   witness_checks(*r.witness, delta, static_cast<uint64_t>(n), *want);
        if (!good && ok) {
            ok = false;
            detail = "delta=" + std::to_string(delta) + " n=" + std::to_string(n);
        }
    };

    auto t0 = std::chrono::steady_clock::now();
    for (long long n = 1; n <= 10; ++n) expect_gamma(2, n, gamma_lookup_value(2, 2, n));
    report("criterion 2a: compute_gamma matches the theorem for delta=2, n <= 10", ok,
           detail + " elapsed " + std::to_string(seconds_since(t0)) + "s");

    ok = true;
    detail.clear();
    t0 = std::chrono::steady_clock::now();
    for (long long n = 1; n <= 20; ++n) expect_gamma(4, n, gamma_lookup_value(2, 4, n));
    report("criterion 2b: compute_gamma matches the theorem for delta=4, n <= 20", ok,
           detail + " elapsed " + std::to_string(seconds_since(t0)) + "s");

    ok = true;
    detail.clear();
    t0 = std::chrono::steady_clock::now();
    for (long long n : {8, 12, 14, 15, 16, 20, 22, 23, 24, 26, 27})
        expect_gamma(8, n, gamma_lookup_value(2, 8, n));
    report("criterion 2c: compute_gamma matches the theorem for delta=8 small lengths", ok,
           detail + " elapsed " + std::to_string(seconds_since(t0)) + "s");

    if (!heavy) return;
    // declared budget for the large lengths; an explicit partial flag is an
    // acceptable outcome, a wrong value is not
    for (long long n : {35, 37, 39, 41}) {
        auto t1 = std::chrono::steady_clock::now();
        Budget big(0, 9000);
        GammaResult r = eng.compute_gamma(2, 8, n, big);
        uint64_t want = *gamma_lookup_value(2, 8, n);
        bool good;
        std::string note;
        if (r.partial && r.value == 0) {
            good = true;  // explicit partial: bound not refuted within budget
            note = "partial (budget): " + r.note;
        } else {
            good = !r.infinite && r.value == want && r.witness &&
                   witness_checks(*r.witness, 8, static_cast<uint64_t>(n), want);
            note = r.partial ? "witness found, lower bound partial" : "exact";
        }
        report("criterion 2d: delta=8 n=" + std::to_string(n) + " lower bound", good,
               note + " elapsed " + std::to_string(seconds_since(t1)) + "s");
    }
}

}  // namespace

int main(int argc, char** argv) {
    std::string group = "fast";
    for (int i = 1; i + 1 < argc; ++i)
        if (std::strcmp(argv[i], "--group") == 0) group = argv[i + 1];

    CensusEngine eng;

    if (group == "fast") {
        criterion1();
        criterion5();
        criterion8();
        criterion7();
    } else if (group == "census") {
        criterion3(eng);
        criterion4(eng);
    } else if (group == "claims") {
        criterion6(eng);
    } else if (group == "gamma-heavy") {
        criterion2(eng, true);
    } else if (group == "all") {
        criterion1();
        criterion5();
        criterion8();
        criterion7();
        criterion3(eng);
        criterion4(eng);
        criterion6(eng);
        criterion2(eng, true);
    } else {
        std::cerr << "unknown group " << group << "\n";
        return 2;
    }
    std::cout << (failures ? "FAILURES: " : "ALL PASS: ") << failures << " failed" << std::endl;
    return failures ? 1 : 0;
}
