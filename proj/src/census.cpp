#include "census.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "canon.hpp"

namespace divis {

std::string CensusKey::str() const {
    std::ostringstream os;
    os << q << " " << delta << " " << n << " " << k << " " << gamma_cap;
    return os.str();
}

bool StatsRow::operator<(const StatsRow& o) const {
    if (k != o.k) return k < o.k;
    if (gamma1 != o.gamma1) return gamma1 > o.gamma1;
    return std::tie(lambda1, lambda2, lambda3, spectrum) < std::tie(o.lambda1, o.lambda2, o.lambda3, o.spectrum);
}

// ---------------------------------------------------------------------------
// Lift enumeration: all children of a parent multiset one dimension up, by a
// meet-in-the-middle split of the per-point bucket assignments against the
// q^j new-hyperplane congruences.

namespace {

uint64_t fnv1a(const uint8_t* data, size_t len) {
    uint64_t h = 1469598103934665603ull;
    for (size_t i = 0; i < len; ++i) { h ^= data[i]; h *= 1099511628211ull; }
    return h;
}

struct LiftCtx {
    const Geometry* gp = nullptr;
    const Geometry* gc = nullptr;
    unsigned q = 2, j = 1;
    uint32_t C = 0;
    uint64_t delta = 2;
    unsigned child_n = 0;
    uint32_t u = 0;
    unsigned cap = 0;  // 0 = none
    std::vector<uint32_t> pts, mu;
    std::vector<std::vector<std::array<uint16_t, 4>>> splits;
    std::vector<std::vector<uint8_t>> ev;
};

void apply_point(uint8_t* ps, const uint8_t* ev, const std::array<uint16_t, 4>& sp, uint32_t C, unsigned q) {
    if (q == 2) {
        uint8_t base = static_cast<uint8_t>(sp[0]);
        uint8_t diff = static_cast<uint8_t>(sp[1] - sp[0]);
        for (uint32_t h = 0; h < C; ++h) ps[h] = static_cast<uint8_t>(ps[h] + base + diff * ev[h]);
    } else {
        uint8_t s[4] = {static_cast<uint8_t>(sp[0]), static_cast<uint8_t>(sp[1]), static_cast<uint8_t>(sp[2]),
                        static_cast<uint8_t>(sp[3])};
        for (uint32_t h = 0; h < C; ++h) ps[h] = static_cast<uint8_t>(ps[h] + s[ev[h]]);
    }
}

struct LeftTable {
    std::vector<std::pair<uint64_t, uint32_t>> hashes;  // sorted (hash, leaf idx)
    std::vector<uint8_t> choices;                       // flat, nleft per leaf
    size_t nleft = 0;
};

}  // namespace

void enumerate_lifts(const PointMultiset& parent, unsigned child_n, unsigned gamma_cap, uint64_t delta,
                     const Budget& budget, const std::function<void(const PointMultiset&)>& sink) {
    LiftCtx cx;
    cx.q = parent.q();
    cx.j = parent.k();
    cx.gp = &parent.geom();
    cx.gc = &Geometry::get(cx.q, cx.j + 1);
    cx.C = 1;
    for (unsigned i = 0; i < cx.j; ++i) cx.C *= cx.q;
    cx.delta = delta;
    cx.child_n = child_n;
    cx.cap = gamma_cap;
    uint64_t m = parent.cardinality();
    if (child_n < m) return;
    cx.u = static_cast<uint32_t>(child_n - m);
    if (cx.cap && cx.u > cx.cap) return;

    cx.pts = parent.support();
    size_t t = cx.pts.size();
    cx.mu.reserve(t);
    for (uint32_t p : cx.pts) cx.mu.push_back(parent.mult(p));

    // per-point bucket splits
    cx.splits.resize(t);
    for (size_t i = 0; i < t; ++i) {
        uint32_t mi = cx.mu[i];
        std::array<uint16_t, 4> sp{};
        std::function<void(unsigned, uint32_t)> rec = [&](unsigned c, uint32_t rem) {
            if (c + 1 == cx.q) {
                if (cx.cap && rem > cx.cap) return;
                sp[c] = static_cast<uint16_t>(rem);
                cx.splits[i].push_back(sp);
                return;
            }
            uint32_t hi = cx.cap ? std::min(rem, static_cast<uint32_t>(cx.cap)) : rem;
            for (uint32_t v = 0; v <= hi; ++v) { sp[c] = static_cast<uint16_t>(v); rec(c + 1, rem - v); }
        };
        rec(0, mi);
        if (cx.splits[i].empty()) return;  // cap excludes every split
    }

    // evaluation tables: ev[i][h] = -h.r_i
    const FieldSpec& f = cx.gp->field();
    cx.ev.resize(t);
    for (size_t i = 0; i < t; ++i) {
        cx.ev[i].resize(cx.C);
        uint32_t rv = cx.gp->value_of_point(cx.pts[i]);
        for (uint32_t h = 0; h < cx.C; ++h) cx.ev[i][h] = f.neg(cx.gp->vdot(h, rv));
    }

    // split the points into a stored left part and a streamed right part
    long double total = 1;
    for (size_t i = 0; i < t; ++i) total *= cx.splits[i].size();
    uint64_t target = static_cast<uint64_t>(std::min<long double>(1u << 20, sqrtl(total) + 1));
    size_t nleft = 0;
    uint64_t prodL = 1;
    while (nleft < t && prodL * cx.splits[nleft].size() <= target) prodL *= cx.splits[nleft].size(), ++nleft;

    std::vector<uint8_t> target_vec(cx.C, static_cast<uint8_t>(child_n % delta));

    LeftTable lt;
    lt.nleft = nleft;
    std::vector<std::vector<uint8_t>> snap(t + 1, std::vector<uint8_t>(cx.C, 0));
    std::vector<uint8_t> kb(cx.C);
    std::vector<uint8_t> stack(t, 0);

    std::function<void(size_t)> lrec = [&](size_t lvl) {
        if (lvl == nleft) {
            if (!budget.charge()) throw BudgetExceeded();
            for (uint32_t h = 0; h < cx.C; ++h)
                kb[h] = static_cast<uint8_t>((target_vec[h] + 8 * delta - snap[lvl][h]) % delta);
            lt.hashes.emplace_back(fnv1a(kb.data(), cx.C), static_cast<uint32_t>(lt.hashes.size()));
            lt.choices.insert(lt.choices.end(), stack.begin(), stack.begin() + nleft);
            return;
        }
        for (size_t s = 0; s < cx.splits[lvl].size(); ++s) {
            stack[lvl] = static_cast<uint8_t>(s);
            snap[lvl + 1] = snap[lvl];
            apply_point(snap[lvl + 1].data(), cx.ev[lvl].data(), cx.splits[lvl][s], cx.C, cx.q);
            lrec(lvl + 1);
        }
    };
    lrec(0);
    std::sort(lt.hashes.begin(), lt.hashes.end());

    auto emit = [&](const std::vector<uint8_t>& right_stack) {
        // reconstruct child counts from left table entry + right stack
        if (!budget.charge()) throw BudgetExceeded();
        PointMultiset child(cx.q, cx.j + 1);
        uint32_t qj = 1;
        for (unsigned i = 0; i < cx.j; ++i) qj *= cx.q;
        if (cx.u) child.set_mult(cx.gc->point_of_vector(qj), cx.u);
        bool nonzero_bucket = cx.u > 0;
        for (size_t i = 0; i < t; ++i) {
            const auto& sp = cx.splits[i][right_stack[i]];
            uint32_t rv = cx.gp->value_of_point(cx.pts[i]);
            for (unsigned c = 0; c < cx.q; ++c) {
                if (!sp[c]) continue;
                if (c) nonzero_bucket = true;
                child.add_mult(cx.gc->point_of_vector(c * qj + rv), sp[c]);
            }
        }
        if (!nonzero_bucket) return;               // inside the hyperplane x_0 = 0
        if (!child.is_spanning()) return;          // oblique hyperplanes are possible too
        if (!child.is_divisible(cx.delta)) return;  // guards hash collisions
        sink(child);
    };

    std::vector<uint8_t> full_stack(t, 0);
    std::function<void(size_t)> rrec = [&](size_t lvl) {
        if (lvl == t) {
            if (!budget.charge()) throw BudgetExceeded();
            for (uint32_t h = 0; h < cx.C; ++h) kb[h] = static_cast<uint8_t>(snap[lvl][h] % delta);
            uint64_t hh = fnv1a(kb.data(), cx.C);
            auto lo = std::lower_bound(lt.hashes.begin(), lt.hashes.end(), std::make_pair(hh, 0u));
            for (auto it = lo; it != lt.hashes.end() && it->first == hh; ++it) {
                const uint8_t* lc = lt.choices.data() + static_cast<size_t>(it->second) * nleft;
                for (size_t i = 0; i < nleft; ++i) full_stack[i] = lc[i];
                for (size_t i = nleft; i < t; ++i) full_stack[i] = stack[i];
                emit(full_stack);
            }
            return;
        }
        for (size_t s = 0; s < cx.splits[lvl].size(); ++s) {
            stack[lvl] = static_cast<uint8_t>(s);
            snap[lvl + 1] = snap[lvl];
            apply_point(snap[lvl + 1].data(), cx.ev[lvl].data(), cx.splits[lvl][s], cx.C, cx.q);
            rrec(lvl + 1);
        }
    };
    // right enumeration starts from level nleft with zero partials
    std::fill(snap[nleft].begin(), snap[nleft].end(), 0);
    rrec(nleft);
}

// ---------------------------------------------------------------------------
// CensusEngine

CensusEngine::CensusEngine(std::string cache_dir, unsigned threads)
    : cache_dir_(std::move(cache_dir)), threads_(threads ? threads : 1) {
    if (!cache_dir_.empty()) std::filesystem::create_directories(cache_dir_);
}

bool CensusEngine::delta_feasible(unsigned q, uint64_t delta, long long n) const {
    if (n < 0) return false;
    auto [ppow, d] = ward_reduce(q, delta);
    if (n % static_cast<long long>(d) != 0) return false;
    auto [r, exact] = q_power_exponent(q, ppow);
    (void)exact;
    return is_length_feasible(n / static_cast<long long>(d), q, r);
}

static std::string cache_file_name(const CensusKey& k) {
    std::ostringstream os;
    os << "census_q" << k.q << "_d" << k.delta << "_n" << k.n << "_k" << k.k << "_c" << k.gamma_cap << ".txt";
    return os.str();
}

void CensusEngine::store(const CensusRecord& rec) const {
    if (cache_dir_.empty() || !rec.complete) return;
    std::filesystem::path p = std::filesystem::path(cache_dir_) / cache_file_name(rec.key);
    std::filesystem::path tmp = p;
    tmp += ".tmp";
    {
        std::ofstream os(tmp);
        os << rec.key.str() << " " << rec.count() << "\n";
        for (const auto& m : rec.reps) {
            os << "\n" << from_multiset(m).to_text();
        }
    }
    std::filesystem::rename(tmp, p);
}

std::optional<CensusRecord> CensusEngine::load(const CensusKey& key) const {
    if (cache_dir_.empty()) return std::nullopt;
    std::filesystem::path p = std::filesystem::path(cache_dir_) / cache_file_name(key);
    std::ifstream is(p);
    if (!is) return std::nullopt;
    CensusRecord rec;
    rec.key = key;
    unsigned q, n, k, cap;
    uint64_t delta, count;
    if (!(is >> q >> delta >> n >> k >> cap >> count)) throw CacheCorrupt("bad header in " + p.string());
    if (q != key.q || delta != key.delta || n != key.n || k != key.k || cap != key.gamma_cap)
        throw CacheCorrupt("key mismatch in " + p.string());
    std::string line;
    std::getline(is, line);
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        // read a matrix block: header line + k rows
        std::ostringstream block;
        block << line << "\n";
        for (unsigned r = 0; r < k; ++r) {
            if (!std::getline(is, line)) throw CacheCorrupt("truncated matrix in " + p.string());
            block << line << "\n";
        }
        GeneratorMatrix g = GeneratorMatrix::from_text(block.str());
        PointMultiset m = to_multiset(g);
        if (m.cardinality() != key.n || m.k() != key.k || !m.is_divisible(key.delta))
            throw CacheCorrupt("invalid representative in " + p.string());
        rec.reps.push_back(std::move(m));
    }
    if (rec.reps.size() != count) throw CacheCorrupt("count mismatch in " + p.string());
    return rec;
}

CensusEngine::MemoEntry CensusEngine::compute_cell(const CensusKey& key, const Budget& budget) {
    unsigned q = key.q, n = key.n, k = key.k;
    uint64_t delta = key.delta;
    unsigned capN = (key.gamma_cap == 0 || key.gamma_cap > n) ? n : key.gamma_cap;
    MemoEntry entry;
    entry.cap_computed = capN;
    if (n < k || n == 0 || !delta_feasible(q, delta, n)) return entry;
    if (k == 1) {
        if (n % delta == 0 && n <= capN) {
            PointMultiset m(q, 1);
            m.set_mult(0, n);
            entry.reps.push_back(std::move(m));
        }
        return entry;
    }

    bool partial = false;
    // isomorph rejection: bucket by a cheap invariant, then a direct
    // isomorphism test against the bucket; survivors are canonicalized below
    std::vector<std::pair<uint64_t, IsoTarget>> found;
    try {
        unsigned m_low = std::max(k - 1, capN < n ? n - capN : 0u);
        for (unsigned m = m_low; m <= n; ++m) {
            unsigned pcap = (static_cast<uint64_t>(q) * capN >= m) ? 0u : q * capN;
            CensusKey pkey{q, delta, m, k - 1, pcap};
            const CensusRecord& parents = enumerate_codes(pkey, budget);
            if (!parents.complete) partial = true;
            std::map<std::vector<uint32_t>, PointMultiset> raw;
            for (const auto& par : parents.reps) {
                enumerate_lifts(par, n, capN, delta, budget, [&](const PointMultiset& child) {
                    raw.emplace(child.counts(), child);
                });
            }
            for (auto& [cnts, child] : raw) {
                if (!budget.charge(4)) throw BudgetExceeded();
                uint64_t inv = iso_invariant_hash(child);
                bool dup = false;
                for (auto& [h, target] : found)
                    if (h == inv && multiset_iso_to(child, target)) { dup = true; break; }
                if (!dup) found.emplace_back(inv, IsoTarget(child));
            }
        }
    } catch (const BudgetExceeded&) {
        partial = true;
    }
    entry.complete = !partial;
    entry.reps.reserve(found.size());
    for (auto& [h, target] : found) entry.reps.push_back(std::move(target.m));
    // the enumeration order is deterministic; sort for stable output
    std::sort(entry.reps.begin(), entry.reps.end(),
              [](const PointMultiset& a, const PointMultiset& b) { return a.counts() < b.counts(); });
    return entry;
}

const CensusRecord& CensusEngine::enumerate_codes(const CensusKey& key_in, const Budget& budget) {
    CensusKey key = key_in;
    if (key.gamma_cap >= key.n) key.gamma_cap = 0;  // cap >= n is no cap
    auto served = served_.find(key);
    if (served != served_.end() && served->second->complete) return *served->second;

    unsigned capN = key.gamma_cap == 0 ? key.n : key.gamma_cap;
    auto mkey = std::make_tuple(key.q, key.delta, key.n, key.k);
    auto it = memo_.find(mkey);
    bool have = it != memo_.end() && (it->second.cap_computed >= capN || it->second.cap_computed >= key.n);
    if (have && !it->second.complete && it->second.cap_computed != capN) have = false;
    if (!have) {
        // try the disk cache: exact cap, then the full census
        std::optional<CensusRecord> disk = load(key);
        if (!disk && key.gamma_cap != 0) disk = load(CensusKey{key.q, key.delta, key.n, key.k, 0});
        if (disk) {
            MemoEntry e;
            e.cap_computed = disk->key.gamma_cap == 0 ? key.n : disk->key.gamma_cap;
            e.complete = true;
            e.reps = std::move(disk->reps);
            it = memo_.insert_or_assign(mkey, std::move(e)).first;
        } else {
            MemoEntry e = compute_cell(key, budget);
            if (it == memo_.end() || e.cap_computed >= it->second.cap_computed)
                it = memo_.insert_or_assign(mkey, std::move(e)).first;
        }
    }

    auto rec = std::make_unique<CensusRecord>();
    rec->key = key;
    rec->complete = it->second.complete;
    for (const auto& m : it->second.reps)
        if (m.gamma1() <= capN) rec->reps.push_back(m);
    if (rec->complete) store(*rec);
    auto pos = served_.find(key);
    if (pos != served_.end()) {
        retired_.push_back(std::move(pos->second));
        pos->second = std::move(rec);
    } else {
        pos = served_.emplace(key, std::move(rec)).first;
    }
    return *pos->second;
}

std::vector<PointMultiset> CensusEngine::all_classes(unsigned q, uint64_t delta, unsigned n, unsigned gamma_cap,
                                                     const Budget& budget, bool* complete) {
    std::vector<PointMultiset> out;
    bool comp = true;
    for (unsigned k = 1; k <= n; ++k) {
        const CensusRecord& rec = enumerate_codes(CensusKey{q, delta, n, k, gamma_cap}, budget);
        comp = comp && rec.complete;
        for (const auto& m : rec.reps) out.push_back(m);
        // stop once no multiset of any cardinality <= n lives in dimension k
        bool layer_alive = false;
        for (unsigned m = k; m <= n && !layer_alive; ++m) {
            const CensusRecord& full = enumerate_codes(CensusKey{q, delta, m, k, 0}, budget);
            comp = comp && full.complete;
            layer_alive = full.count() > 0;
        }
        if (!layer_alive) break;
    }
    if (complete) *complete = comp;
    return out;
}

GammaResult CensusEngine::compute_gamma(unsigned q, uint64_t delta, long long n, const Budget& budget,
                                        unsigned max_gamma) {
    GammaResult res;
    if (n == 0) { res.value = 0; return res; }
    auto [ppow, d] = ward_reduce(q, delta);
    auto [r, exact_power] = q_power_exponent(q, ppow);
    (void)exact_power;
    if (n < 0 || !delta_feasible(q, delta, n)) {
        res.infinite = true;
        if (n >= 0 && n % static_cast<long long>(d) == 0)
            res.certificate = sqr_adic_expansion(n / static_cast<long long>(d), q, r);
        res.note = n >= 0 && n % static_cast<long long>(d) != 0
                       ? "coprime repetition factor does not divide n"
                       : "negative leading coefficient";
        return res;
    }
    unsigned un = static_cast<unsigned>(n);
    unsigned gmax = max_gamma ? max_gamma : un;
    bool partial_below = false;
    try {
        for (unsigned gamma = 1; gamma <= gmax; ++gamma) {
            bool sweep_partial = false;
            for (unsigned k = 1; k <= un; ++k) {
                const CensusRecord& rec = enumerate_codes(CensusKey{q, delta, un, k, gamma}, budget);
                sweep_partial = sweep_partial || !rec.complete;
                if (rec.count() > 0) {
                    res.value = gamma;
                    res.witness = from_multiset(rec.reps.front());
                    res.partial = partial_below;
                    if (partial_below) res.note = "witness found; smaller gamma not fully excluded (budget)";
                    return res;
                }
                bool layer_alive = false;
                for (unsigned m = k; m <= un && !layer_alive; ++m) {
                    const CensusRecord& full = enumerate_codes(CensusKey{q, delta, m, k, 0}, budget);
                    sweep_partial = sweep_partial || !full.complete;
                    layer_alive = full.count() > 0;
                }
                if (!layer_alive) break;
            }
            partial_below = partial_below || sweep_partial;
        }
    } catch (const BudgetExceeded&) {
        partial_below = true;
    }
    res.partial = true;
    res.infinite = false;
    res.value = 0;
    res.note = partial_below ? "budget exhausted before finding a witness"
                             : "no witness with gamma <= " + std::to_string(gmax) + " (verified)";
    return res;
}

std::vector<StatsRow> CensusEngine::stats_table(const std::vector<const CensusRecord*>& records) const {
    std::vector<StatsRow> rows;
    for (const CensusRecord* rec : records) {
        for (const auto& m : rec->reps) {
            StatsRow row;
            row.n = rec->key.n;
            row.k = rec->key.k;
            row.delta = rec->key.delta;
            row.gamma1 = m.gamma1();
            auto lam = m.point_distribution();
            row.lambda1 = lam.count(1) ? lam[1] : 0;
            row.lambda2 = lam.count(2) ? lam[2] : 0;
            row.lambda3 = lam.count(3) ? lam[3] : 0;
            row.spectrum = m.spectrum();
            rows.push_back(std::move(row));
        }
    }
    std::sort(rows.begin(), rows.end());
    return rows;
}

// ---------------------------------------------------------------------------
// table suites

std::vector<TableCell> table_suite(CensusEngine& engine, const std::string& suite, unsigned max_n,
                                   const Budget& budget) {
    unsigned q;
    uint64_t delta;
    if (suite == "even") { q = 2; delta = 2; }
    else if (suite == "doubly-even") { q = 2; delta = 4; }
    else if (suite == "triply-even") { q = 2; delta = 8; }
    else if (suite == "sixteen") { q = 2; delta = 16; }
    else if (suite == "ternary") { q = 3; delta = 3; }
    else if (suite == "quaternary") { q = 4; delta = 4; }
    else throw std::invalid_argument("unknown table suite: " + suite);

    std::vector<TableCell> cells;
    for (unsigned n = 1; n <= max_n; ++n) {
        for (unsigned k = 1; k <= n; ++k) {
            const CensusRecord& rec = engine.enumerate_codes(CensusKey{q, delta, n, k, 0}, budget);
            if (rec.count() > 0 || !rec.complete)
                cells.push_back(TableCell{n, k, rec.count(), rec.complete});
            bool layer_alive = false;
            for (unsigned m = k; m <= n && !layer_alive; ++m)
                layer_alive = engine.enumerate_codes(CensusKey{q, delta, m, k, 0}, budget).count() > 0;
            if (!layer_alive) break;
        }
    }
    return cells;
}

std::string table_csv(const std::vector<TableCell>& cells) {
    std::ostringstream os;
    os << "n,k,count\n";
    for (const auto& c : cells) os << c.n << "," << c.k << "," << c.count << (c.complete ? "" : ",partial") << "\n";
    return os.str();
}

std::string stats_csv(const std::vector<StatsRow>& rows) {
    std::ostringstream os;
    os << "n,k,delta,gamma1,lambda1,lambda2,lambda3,spectrum\n";
    for (const auto& r : rows) {
        os << r.n << "," << r.k << "," << r.delta << "," << r.gamma1 << "," << r.lambda1 << "," << r.lambda2 << ","
           << r.lambda3 << ",";
        bool first = true;
        for (auto& [i, a] : r.spectrum) {
            if (a == 0) continue;
            os << (first ? "" : " ") << "a" << i << "=" << a;
            first = false;
        }
        os << "\n";
    }
    return os.str();
}

}  // namespace divis
