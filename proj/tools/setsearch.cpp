// Search for projective Delta-divisible point sets in PG(k-1,2).  Two
// engines: unions of Singer-subgroup orbits (meet in the middle over the
// orbit-hyperplane incidence), and simulated annealing on raw point sets.
// Successful finds are printed as generator matrices and re-validated with
// the library before printing.
#include <algorithm>
#include <cstdint>
#include <cstring>
#include <iostream>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "codes.hpp"
#include "pg.hpp"

using namespace divis;

namespace {

uint32_t primitive_poly(unsigned k) {
    switch (k) {
        case 4: return 0x13;    // x^4+x+1
        case 5: return 0x25;    // x^5+x^2+1
        case 6: return 0x43;    // x^6+x+1
        case 7: return 0x89;    // x^7+x^3+1
        case 8: return 0x11d;   // x^8+x^4+x^3+x^2+1
        case 9: return 0x211;   // x^9+x^4+1
        case 10: return 0x409;  // x^10+x^3+1
        case 11: return 0x805;  // x^11+x^2+1
        case 12: return 0x1053; // x^12+x^6+x^4+x+1
        default: throw std::invalid_argument("no primitive polynomial stored for this k");
    }
}

struct SingerOrbits {
    unsigned k;
    uint32_t N;  // 2^k - 1
    std::vector<std::vector<uint32_t>> orbits;  // point values grouped by orbit
    std::vector<std::vector<uint16_t>> inc;     // inc[h-1][o] = |H_h cap orbit o|
};

SingerOrbits singer_orbits(unsigned k, uint32_t order) {
    SingerOrbits so;
    so.k = k;
    so.N = (1u << k) - 1;
    if (so.N % order) throw std::invalid_argument("order does not divide 2^k-1");
    uint32_t poly = primitive_poly(k) & so.N;  // without the leading term
    auto mulx = [&](uint32_t v) {
        uint32_t top = v >> (k - 1);
        v = (v << 1) & so.N;
        if (top) v ^= poly;
        return v;
    };
    uint32_t step = so.N / order;
    // alpha^step as a map: apply mulx step times
    std::vector<uint32_t> pow_step(so.N + 1, 0);
    for (uint32_t v = 1; v <= so.N; ++v) {
        uint32_t w = v;
        for (uint32_t i = 0; i < step; ++i) w = mulx(w);
        pow_step[v] = w;
    }
    std::vector<bool> seen(so.N + 1, false);
    for (uint32_t v = 1; v <= so.N; ++v) {
        if (seen[v]) continue;
        std::vector<uint32_t> orb;
        uint32_t w = v;
        do {
            seen[w] = true;
            orb.push_back(w);
            w = pow_step[w];
        } while (w != v);
        so.orbits.push_back(std::move(orb));
    }
    so.inc.assign(so.N, std::vector<uint16_t>(so.orbits.size(), 0));
    for (uint32_t h = 1; h <= so.N; ++h)
        for (size_t o = 0; o < so.orbits.size(); ++o) {
            uint16_t c = 0;
            for (uint32_t v : so.orbits[o]) c += (__builtin_popcount(h & v) & 1) == 0;
            so.inc[h - 1][o] = c;
        }
    return so;
}

uint64_t fnv(const uint8_t* d, size_t n) {
    uint64_t h = 1469598103934665603ull;
    for (size_t i = 0; i < n; ++i) { h ^= d[i]; h *= 1099511628211ull; }
    return h;
}

// all unions of `a` orbits whose hyperplane sums are all congruent to n mod
// delta; prints up to `limit` solutions
std::vector<std::vector<uint32_t>> orbit_union_search(const SingerOrbits& so, unsigned a, unsigned delta,
                                                      unsigned n, size_t limit) {
    size_t nor = so.orbits.size();
    uint32_t H = so.N;
    std::vector<std::vector<uint32_t>> found;

    size_t half = nor / 2;
    // left: subsets of orbits [0, half) of size a1 <= a/2 stored with hashes
    struct Entry { uint64_t hash; std::vector<uint8_t> pick; };
    std::map<unsigned, std::vector<Entry>> left;  // by size a1
    std::vector<uint8_t> sums(H, 0), key(H, 0);
    std::vector<uint8_t> pick;

    std::function<void(size_t, unsigned)> lrec = [&](size_t idx, unsigned remaining_max) {
        left[static_cast<unsigned>(pick.size())].push_back(
            Entry{0, pick});  // hash filled later from sums
        auto& e = left[static_cast<unsigned>(pick.size())].back();
        for (uint32_t h = 0; h < H; ++h) key[h] = static_cast<uint8_t>((n % delta + delta - sums[h] % delta) % delta);
        e.hash = fnv(key.data(), H);
        if (pick.size() == remaining_max || idx == half) return;
        for (size_t o = idx; o < half; ++o) {
            pick.push_back(static_cast<uint8_t>(o));
            for (uint32_t h = 0; h < H; ++h) sums[h] = static_cast<uint8_t>(sums[h] + so.inc[h][o]);
            lrec(o + 1, remaining_max);
            for (uint32_t h = 0; h < H; ++h) sums[h] = static_cast<uint8_t>(sums[h] - so.inc[h][o]);
            pick.pop_back();
        }
    };
    unsigned a1max = a / 2;
    lrec(0, a1max);
    for (auto& [sz, entries] : left)
        std::sort(entries.begin(), entries.end(), [](const Entry& x, const Entry& y) { return x.hash < y.hash; });

    std::vector<uint8_t> rpick;
    std::function<void(size_t)> rrec = [&](size_t idx) {
        unsigned a2 = static_cast<unsigned>(rpick.size());
        if (a2 <= a && a - a2 <= a1max) {
            auto it = left.find(a - a2);
            if (it != left.end()) {
                for (uint32_t h = 0; h < H; ++h) key[h] = static_cast<uint8_t>(sums[h] % delta);
                uint64_t hh = fnv(key.data(), H);
                auto lo = std::lower_bound(it->second.begin(), it->second.end(), hh,
                                           [](const Entry& e, uint64_t v) { return e.hash < v; });
                for (; lo != it->second.end() && lo->hash == hh && found.size() < limit; ++lo) {
                    std::vector<uint32_t> sol;
                    for (uint8_t o : lo->pick) sol.push_back(o);
                    for (uint8_t o : rpick) sol.push_back(o);
                    // exact verification happens on the caller side
                    found.push_back(sol);
                }
            }
        }
        if (rpick.size() == a || found.size() >= limit) return;
        for (size_t o = std::max(idx, half); o < nor; ++o) {
            rpick.push_back(static_cast<uint8_t>(o));
            for (uint32_t h = 0; h < H; ++h) sums[h] = static_cast<uint8_t>(sums[h] + so.inc[h][o]);
            rrec(o + 1);
            for (uint32_t h = 0; h < H; ++h) sums[h] = static_cast<uint8_t>(sums[h] - so.inc[h][o]);
            rpick.pop_back();
            if (found.size() >= limit) return;
        }
    };
    rrec(half);
    return found;
}

bool validate_and_print(unsigned k, unsigned delta, unsigned n, const std::vector<uint32_t>& values) {
    const Geometry& g = Geometry::get(2, k);
    PointMultiset m(2, k);
    for (uint32_t v : values) m.add_mult(g.point_of_vector(v), 1);
    if (m.cardinality() != n || m.gamma1() != 1) return false;
    if (!m.is_divisible(delta)) return false;
    PointMultiset s = m.spanned_part();
    GeneratorMatrix mat = from_multiset(s);
    std::cout << "found " << delta << "-divisible projective set, n=" << n << " k=" << s.k() << "\n"
              << mat.to_text() << "\n";
    return true;
}

bool anneal(unsigned k, unsigned delta, unsigned n, uint64_t seed, uint64_t iters) {
    const uint32_t N = (1u << k) - 1;
    std::mt19937_64 rng(seed);
    std::vector<uint32_t> pts(N);
    for (uint32_t i = 0; i < N; ++i) pts[i] = i + 1;
    std::shuffle(pts.begin(), pts.end(), rng);
    std::vector<bool> in(N + 1, false);
    for (unsigned i = 0; i < n; ++i) in[pts[i]] = true;

    // hyperplane sums and the annealing objective
    std::vector<int32_t> sums(N + 1, 0);
    for (uint32_t v = 1; v <= N; ++v)
        if (in[v])
            for (uint32_t h = 1; h <= N; ++h)
                if ((__builtin_popcount(h & v) & 1) == 0) sums[h]++;
    auto pen = [&](uint32_t h) {
        int r = static_cast<int>(((sums[h] - static_cast<int>(n)) % static_cast<int>(delta) + delta) % delta);
        int d = std::min(r, static_cast<int>(delta) - r);
        return d * d;
    };
    int64_t cost = 0;
    for (uint32_t h = 1; h <= N; ++h) cost += pen(h);

    double temp = 2.0;
    for (uint64_t it = 0; it < iters && cost > 0; ++it) {
        if ((it & 0x1fff) == 0) temp = std::max(0.03, temp * 0.985);
        uint32_t vin, vout;
        do { vin = 1 + rng() % N; } while (!in[vin]);
        do { vout = 1 + rng() % N; } while (in[vout]);
        int64_t delta_cost = 0;
        for (uint32_t h = 1; h <= N; ++h) {
            int before = pen(h);
            if ((__builtin_popcount(h & vin) & 1) == 0) sums[h]--;
            if ((__builtin_popcount(h & vout) & 1) == 0) sums[h]++;
            delta_cost += pen(h) - before;
        }
        bool accept = delta_cost <= 0 || std::exponential_distribution<double>(1.0)(rng) * temp > delta_cost;
        if (accept) {
            cost += delta_cost;
            in[vin] = false;
            in[vout] = true;
        } else {
            for (uint32_t h = 1; h <= N; ++h) {
                if ((__builtin_popcount(h & vin) & 1) == 0) sums[h]++;
                if ((__builtin_popcount(h & vout) & 1) == 0) sums[h]--;
            }
        }
    }
    if (cost != 0) return false;
    std::vector<uint32_t> values;
    for (uint32_t v = 1; v <= N; ++v)
        if (in[v]) values.push_back(v);
    return validate_and_print(k, delta, n, values);
}

// Orbits of <alpha^step, x -> x^(2^f)> for k = 12, order-7 Singer part with a
// Frobenius of quotient order 3: families of size 7 and 21.  Enumerate the
// unions with 7a + 21b = n directly.
// Annealing restricted to the parity-feasible sets: start from a disjoint
// union of a plane and lines (all hyperplane sections odd) and move by
// symmetric differences with affine planes {P,Q,R,P+Q+R}, which preserve the
// section parities.  Only the residues mod delta remain to fix.
bool anneal_parity(unsigned k, unsigned delta, unsigned n, uint64_t seed, uint64_t iters) {
    if (n % 2 == 0 || n < 7 || (n - 7) % 3 != 0) return false;
    const uint32_t N = (1u << k) - 1;
    std::mt19937_64 rng(seed);

    std::vector<bool> in(N + 1, false);
    uint32_t size = 0;
    // seed: one plane and (n-7)/3 lines, pairwise disjoint supports
    {
        unsigned lines = (n - 7) / 3;
        while (true) {
            std::fill(in.begin(), in.end(), false);
            size = 0;
            auto add_span = [&](std::vector<uint32_t> gens) -> bool {
                std::vector<uint32_t> pts;
                for (uint32_t mask = 1; mask < (1u << gens.size()); ++mask) {
                    uint32_t v = 0;
                    for (size_t i = 0; i < gens.size(); ++i)
                        if (mask & (1u << i)) v ^= gens[i];
                    if (v == 0) return false;
                    pts.push_back(v);
                }
                for (uint32_t v : pts)
                    if (in[v]) return false;
                for (uint32_t v : pts) { in[v] = true; ++size; }
                return true;
            };
            bool ok = add_span({static_cast<uint32_t>(1 + rng() % N), static_cast<uint32_t>(1 + rng() % N),
                                static_cast<uint32_t>(1 + rng() % N)});
            for (unsigned l = 0; ok && l < lines; ++l)
                ok = add_span({static_cast<uint32_t>(1 + rng() % N), static_cast<uint32_t>(1 + rng() % N)});
            if (ok && size == n) break;
        }
    }

    std::vector<int32_t> sums(N + 1, 0);
    for (uint32_t v = 1; v <= N; ++v)
        if (in[v])
            for (uint32_t h = 1; h <= N; ++h)
                if ((__builtin_popcount(h & v) & 1) == 0) sums[h]++;
    auto pen = [&](uint32_t h) {
        int r = static_cast<int>(((sums[h] - static_cast<int>(n)) % static_cast<int>(delta) + delta) % delta);
        int d = std::min(r, static_cast<int>(delta) - r);
        return d * d;
    };
    auto size_pen = [&](int64_t s) { return 6 * (s - n) * (s - n); };
    int64_t cost = size_pen(size);
    for (uint32_t h = 1; h <= N; ++h) cost += pen(h);

    auto toggle = [&](uint32_t v, int dir) {
        for (uint32_t h = 1; h <= N; ++h)
            if ((__builtin_popcount(h & v) & 1) == 0) sums[h] += dir;
    };

    double temp = 3.0;
    for (uint64_t it = 0; it < iters && cost > 0; ++it) {
        if ((it & 0xfff) == 0) temp = std::max(0.05, temp * 0.99);
        // random affine plane
        uint32_t p = 1 + rng() % N, q2 = 1 + rng() % N, r2 = 1 + rng() % N;
        uint32_t s2 = p ^ q2 ^ r2;
        if (q2 == p || r2 == p || r2 == q2 || s2 == 0) continue;
        uint32_t quad[4] = {p, q2, r2, s2};
        int64_t before = cost;
        int32_t dsize = 0;
        for (uint32_t v : quad) dsize += in[v] ? -1 : 1;
        for (uint32_t v : quad) toggle(v, in[v] ? -1 : 1);
        int64_t after = size_pen(size + dsize);
        for (uint32_t h = 1; h <= N; ++h) after += pen(h);
        bool accept = after <= before || std::exponential_distribution<double>(1.0)(rng) * temp > after - before;
        if (accept) {
            for (uint32_t v : quad) in[v] = !in[v];
            size += dsize;
            cost = after;
        } else {
            for (uint32_t v : quad) toggle(v, in[v] ? 1 : -1);
        }
    }
    if (cost != 0 || size != n) return false;
    std::vector<uint32_t> values;
    for (uint32_t v = 1; v <= N; ++v)
        if (in[v]) values.push_back(v);
    return validate_and_print(k, delta, n, values);
}

bool gl_mixed_search(unsigned k, unsigned delta, unsigned n, unsigned order, unsigned frob_pow) {
    const uint32_t N = (1u << k) - 1;
    uint32_t poly = primitive_poly(k) & N;
    auto mulx = [&](uint32_t v) {
        uint32_t top = v >> (k - 1);
        v = (v << 1) & N;
        if (top) v ^= poly;
        return v;
    };
    uint32_t step = N / order;
    std::vector<uint32_t> pow_step(N + 1, 0), frob(N + 1, 0);
    for (uint32_t v = 1; v <= N; ++v) {
        uint32_t w = v;
        for (uint32_t i = 0; i < step; ++i) w = mulx(w);
        pow_step[v] = w;
        uint32_t x = v;
        for (uint32_t i = 0; i < frob_pow; ++i) {  // x -> x^2, frob_pow times
            uint32_t sq = 1;
            // square via repeated doubling within the field: x^2 = x*x
            // multiply x*x with the shift-and-add method
            uint32_t acc = 0, a = x, b = x;
            while (b) {
                if (b & 1) acc ^= a;
                a = mulx(a);
                b >>= 1;
            }
            sq = acc;
            x = sq;
        }
        frob[v] = x;
    }
    std::vector<int32_t> orbit_of(N + 1, -1);
    std::vector<std::vector<uint32_t>> orbits;
    for (uint32_t v = 1; v <= N; ++v) {
        if (orbit_of[v] >= 0) continue;
        std::vector<uint32_t> orb{v};
        orbit_of[v] = static_cast<int32_t>(orbits.size());
        for (size_t i = 0; i < orb.size(); ++i) {
            for (uint32_t w : {pow_step[orb[i]], frob[orb[i]]}) {
                if (orbit_of[w] < 0) {
                    orbit_of[w] = static_cast<int32_t>(orbits.size());
                    orb.push_back(w);
                }
            }
        }
        orbits.push_back(std::move(orb));
    }
    std::vector<uint32_t> small, large;
    for (uint32_t o = 0; o < orbits.size(); ++o)
        (orbits[o].size() == order ? small : large).push_back(o);
    std::cerr << small.size() << " orbits of size " << order << ", " << large.size() << " larger\n";

    std::vector<std::vector<uint16_t>> inc(N, std::vector<uint16_t>(orbits.size(), 0));
    for (uint32_t h = 1; h <= N; ++h)
        for (size_t o = 0; o < orbits.size(); ++o) {
            uint16_t c = 0;
            for (uint32_t v : orbits[o]) c += (__builtin_popcount(h & v) & 1) == 0;
            inc[h - 1][o] = c;
        }

    auto check_union = [&](const std::vector<uint32_t>& pick) {
        for (uint32_t h = 1; h <= N; ++h) {
            uint32_t s = 0;
            for (uint32_t o : pick) s += inc[h - 1][o];
            if (s % delta != n % delta) return false;
        }
        return true;
    };
    // patterns 7a + 21b = n
    for (unsigned b = 0; 21 * b <= n; ++b) {
        if ((n - 21 * b) % 7) continue;
        unsigned a = (n - 21 * b) / 7;
        if (a > small.size() || b > 2) continue;
        std::cerr << "pattern a=" << a << " b=" << b << "\n";
        std::vector<uint32_t> apick(a), bpick(b);
        std::function<bool(unsigned, unsigned)> recb = [&](unsigned bi, unsigned bstart) -> bool {
            if (bi == b) {
                std::function<bool(unsigned, unsigned)> reca = [&](unsigned ai, unsigned astart) -> bool {
                    if (ai == a) {
                        std::vector<uint32_t> pick = bpick;
                        pick.insert(pick.end(), apick.begin(), apick.end());
                        if (!check_union(pick)) return false;
                        std::vector<uint32_t> values;
                        for (uint32_t o : pick)
                            for (uint32_t v : orbits[o]) values.push_back(v);
                        return validate_and_print(k, delta, n, values);
                    }
                    for (unsigned s = astart; s < small.size(); ++s) {
                        apick[ai] = small[s];
                        if (reca(ai + 1, s + 1)) return true;
                    }
                    return false;
                };
                return reca(0, 0);
            }
            for (unsigned s = bstart; s < large.size(); ++s) {
                bpick[bi] = large[s];
                if (recb(bi + 1, s + 1)) return true;
            }
            return false;
        };
        if (recb(0, 0)) return true;
    }
    return false;
}

}  // namespace

int main(int argc, char** argv) {
    unsigned k = 9, delta = 8, n = 49, order = 0, glfrob = 0;
    uint64_t seed = 1, iters = 40000000;
    size_t limit = 4;
    bool use_anneal = false;
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        auto next = [&] { return std::stoull(argv[++i]); };
        if (a == "--k") k = static_cast<unsigned>(next());
        else if (a == "--delta") delta = static_cast<unsigned>(next());
        else if (a == "--n") n = static_cast<unsigned>(next());
        else if (a == "--order") order = static_cast<unsigned>(next());
        else if (a == "--gl-frob") glfrob = static_cast<unsigned>(next());
        else if (a == "--seed") seed = next();
        else if (a == "--iters") iters = next();
        else if (a == "--limit") limit = next();
        else if (a == "--anneal") use_anneal = true;
        else if (a == "--anneal2") use_anneal = true, order = 0xffffffffu;
        else {
            std::cerr << "usage: setsearch --k K --delta D --n N "
                         "[--order ORD [--gl-frob F] | --anneal | --anneal2] [--seed S]\n";
            return 2;
        }
    }
    try {
        if (glfrob) return gl_mixed_search(k, delta, n, order, glfrob) ? 0 : 1;
        if (use_anneal) {
            bool parity_mode = order == 0xffffffffu;
            for (int attempt = 0; attempt < 60; ++attempt) {
                std::cerr << "anneal attempt " << attempt << "\n";
                bool hit = parity_mode ? anneal_parity(k, delta, n, seed + attempt, iters)
                                       : anneal(k, delta, n, seed + attempt, iters);
                if (hit) return 0;
            }
            std::cerr << "no set found by annealing\n";
            return 1;
        }
        SingerOrbits so = singer_orbits(k, order);
        std::cerr << so.orbits.size() << " orbits of size " << order << "\n";
        if (n % order) { std::cerr << "n not a multiple of the orbit size\n"; return 1; }
        auto sols = orbit_union_search(so, n / order, delta, n, limit * 8);
        std::cerr << sols.size() << " raw candidates\n";
        size_t printed = 0;
        for (const auto& sol : sols) {
            std::vector<uint32_t> values;
            for (uint32_t o : sol)
                for (uint32_t v : so.orbits[o]) values.push_back(v);
            if (validate_and_print(k, delta, n, values) && ++printed >= limit) break;
        }
        return printed ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
