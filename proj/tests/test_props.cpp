// Randomized property suites: standard equations, restriction and projection
// contracts, canonical-form invariance, and the brute-force census oracle.
#include <algorithm>
#include <functional>
#include <random>
#include <set>

#include "doctest.h"
#include "census.hpp"
#include "canon.hpp"

using namespace divis;

namespace {

PointMultiset random_multiset(std::mt19937& rng, unsigned q, unsigned k, unsigned n) {
    const Geometry& g = Geometry::get(q, k);
    PointMultiset m(q, k);
    for (unsigned i = 0; i < n; ++i) m.add_mult(rng() % g.num_points(), 1);
    return m;
}

PointMultiset random_divisible(std::mt19937& rng, unsigned q, unsigned k, uint64_t delta) {
    // scalings and sums of characteristic functions stay divisible
    const Geometry& g = Geometry::get(q, k);
    PointMultiset m(q, k);
    unsigned parts = 1 + rng() % 3;
    for (unsigned i = 0; i < parts; ++i) {
        unsigned dim = 1 + rng() % k;
        std::vector<uint32_t> pts;
        for (unsigned t = 0; t < dim; ++t) pts.push_back(rng() % g.num_points());
        Subspace s = Subspace::from_points(g, pts);
        uint64_t sub_count = gauss_count(s.dim(), q);
        // scale the simplex so it becomes delta-divisible: q^(dim-1)-divisible
        // characteristic functions scaled by delta work for every subspace
        PointMultiset part = chi_subspace(s, k).scale(static_cast<uint32_t>(delta));
        m = m.added(part);
        (void)sub_count;
    }
    return m;
}

}  // namespace

TEST_CASE("standard equations on 1000+ random multisets") {
    std::mt19937 rng(2024);
    int checked = 0;
    for (unsigned q : {2u, 3u, 4u}) {
        unsigned kmax = q == 2 ? 5 : 4;
        for (int t = 0; t < 340; ++t) {
            unsigned k = 2 + rng() % (kmax - 1);
            PointMultiset m = random_multiset(rng, q, k, 2 + rng() % 14);
            CHECK(m.standard_equations_check());
            ++checked;
        }
    }
    CHECK(checked >= 1000);
}

TEST_CASE("restriction divisibility on 500+ divisible instances") {
    std::mt19937 rng(99);
    int checked = 0;
    while (checked < 510) {
        unsigned q = std::vector<unsigned>{2, 3, 4}[rng() % 3];
        unsigned k = 3 + rng() % 2;
        uint64_t delta = q * (1 + rng() % 2);  // q | delta
        PointMultiset m = random_divisible(rng, q, k, delta);
        REQUIRE(m.is_divisible(delta));
        const Geometry& g = m.geom();
        uint32_t h = g.value_of_point(rng() % g.num_points());
        std::vector<uint32_t> vecs;
        for (uint32_t v = 1; v < g.num_values(); ++v)
            if (g.vdot(h, v) == 0) vecs.push_back(v);
        Subspace hyp = Subspace::from_vectors(q, k, vecs);
        REQUIRE(hyp.dim() == k - 1);
        CHECK(m.restrict_to(hyp).is_divisible(delta / q));
        ++checked;
    }
}

TEST_CASE("projection contract on 500+ instances") {
    std::mt19937 rng(7);
    int checked = 0;
    while (checked < 510) {
        unsigned q = std::vector<unsigned>{2, 3, 4}[rng() % 3];
        unsigned k = 3 + rng() % 2;
        uint64_t delta = 1 + rng() % 4;
        PointMultiset m = random_multiset(rng, q, k, 3 + rng() % 9).scale(static_cast<uint32_t>(delta));
        // scaling by delta makes every weight a multiple of delta
        REQUIRE(m.is_divisible(delta));
        uint32_t qp = rng() % m.geom().num_points();
        PointMultiset mp = m.project(qp);
        CHECK(mp.cardinality() == m.cardinality() - m.mult(qp));
        CHECK(mp.is_divisible(delta));
        // gamma1 of the projection = max over lines through Q of M(L) - M(Q)
        const Geometry& g = m.geom();
        uint64_t expect = 0;
        uint32_t qv = g.value_of_point(qp);
        for (uint32_t p = 0; p < g.num_points(); ++p) {
            if (p == qp) continue;
            Subspace line = Subspace::from_vectors(q, k, {qv, g.value_of_point(p)});
            uint64_t lm = m.multiplicity(line);
            expect = std::max(expect, lm - m.mult(qp));
        }
        if (m.support_size() > (m.mult(qp) ? 1u : 0u)) CHECK(mp.gamma1() == expect);
        ++checked;
    }
}

TEST_CASE("canonical form invariant under 500+ random semilinear transforms") {
    std::mt19937 rng(55);
    int transforms = 0;
    while (transforms < 510) {
        unsigned q = std::vector<unsigned>{2, 3, 4}[rng() % 3];
        unsigned k = 2 + rng() % 3;
        PointMultiset m = random_multiset(rng, q, k, k + 2 + rng() % 6);
        if (!m.is_spanning()) continue;
        auto canon = canonical_counts(m);
        const Geometry& g = m.geom();
        const FieldSpec& f = g.field();
        for (int t = 0; t < 5; ++t) {
            // random invertible matrix, random frobenius power
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
            CHECK(canonical_counts(tm) == canon);
            CHECK(multisets_equivalent(m, tm));
            ++transforms;
        }
    }
}

TEST_CASE("canonical forms separate inequivalent multisets") {
    // all even classes of length 6 are pairwise inequivalent
    CensusEngine eng;
    Budget b;
    std::vector<std::vector<uint32_t>> keys;
    for (unsigned k = 1; k <= 5; ++k)
        for (const auto& m : eng.enumerate_codes(CensusKey{2, 2, 6, k, 0}, b).reps)
            keys.push_back(canonical_counts(m));
    CHECK(keys.size() == 9);
    std::sort(keys.begin(), keys.end());
    CHECK(std::adjacent_find(keys.begin(), keys.end()) == keys.end());
}

// exhaustive enumeration of all spanning 2-divisible multisets without any
// isomorph rejection, bucketed by canonical form; the acceptance suite runs
// the full n <= 7 version with a faster parity-mask enumeration
TEST_CASE("brute-force census oracle agrees for q=2, delta=2, n <= 6") {
    CensusEngine eng;
    Budget b;
    for (unsigned n = 2; n <= 6; ++n) {
        for (unsigned k = 1; k < n && k <= 5; ++k) {
            const Geometry& g = Geometry::get(2, k);
            std::set<std::vector<uint32_t>> classes;
            std::vector<uint32_t> mults(g.num_points(), 0);
            uint64_t enumerated = 0;
            std::function<void(uint32_t, unsigned)> rec = [&](uint32_t idx, unsigned left) {
                if (idx == g.num_points()) {
                    if (left) return;
                    PointMultiset m(2, k);
                    for (uint32_t p = 0; p < g.num_points(); ++p)
                        if (mults[p]) m.set_mult(p, mults[p]);
                    if (!m.is_divisible(2) || !m.is_spanning()) return;
                    ++enumerated;
                    classes.insert(canonical_counts(m));
                    return;
                }
                for (unsigned c = 0; c <= left; ++c) {
                    mults[idx] = c;
                    rec(idx + 1, left - c);
                }
                mults[idx] = 0;
            };
            rec(0, n);
            CAPTURE(n);
            CAPTURE(k);
            CHECK(classes.size() == eng.enumerate_codes(CensusKey{2, 2, n, k, 0}, b).count());
            (void)enumerated;
        }
    }
}
