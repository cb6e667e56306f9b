#include "canon.hpp"

#include <algorithm>
#include <cstring>
#include <set>

namespace divis {

namespace {

// k x k matrices over F_q as packed row values.
struct Mat {
    std::vector<uint32_t> rows;
};

uint32_t mat_apply(const Geometry& g, const Mat& m, uint32_t v) {
    unsigned k = g.k();
    uint32_t r = 0;
    for (unsigned i = 0; i < k; ++i) r = r * g.q() + g.vdot(m.rows[i], v);
    return r;
}

// Inverse of the matrix whose COLUMNS are the given independent vectors;
// applying the result yields coordinates w.r.t. that basis.
Mat basis_inverse(const Geometry& g, const std::vector<uint32_t>& cols) {
    unsigned k = g.k();
    const FieldSpec& f = g.field();
    // build row-major matrix A with A[i][j] = coord i of cols[j], then invert
    std::vector<std::vector<uint8_t>> a(k, std::vector<uint8_t>(k)), inv(k, std::vector<uint8_t>(k, 0));
    for (unsigned i = 0; i < k; ++i)
        for (unsigned j = 0; j < k; ++j) a[i][j] = g.coord(cols[j], i);
    for (unsigned i = 0; i < k; ++i) inv[i][i] = 1;
    for (unsigned col = 0; col < k; ++col) {
        unsigned piv = col;
        while (piv < k && a[piv][col] == 0) ++piv;
        if (piv == k) throw std::logic_error("canon: singular basis");
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        uint8_t ic = f.inv(a[col][col]);
        for (unsigned j = 0; j < k; ++j) { a[col][j] = f.mul(ic, a[col][j]); inv[col][j] = f.mul(ic, inv[col][j]); }
        for (unsigned r = 0; r < k; ++r) {
            if (r == col || a[r][col] == 0) continue;
            uint8_t c = a[r][col];
            for (unsigned j = 0; j < k; ++j) {
                a[r][j] = f.sub(a[r][j], f.mul(c, a[col][j]));
                inv[r][j] = f.sub(inv[r][j], f.mul(c, inv[col][j]));
            }
        }
    }
    Mat m;
    m.rows.resize(k);
    for (unsigned i = 0; i < k; ++i) {
        uint32_t rv = 0;
        for (unsigned j = 0; j < k; ++j) rv = rv * g.q() + inv[i][j];
        m.rows[i] = rv;
    }
    return m;
}

// Linear map sending frame `from` to frame `to` (vector-wise).
Mat transition(const Geometry& g, const std::vector<uint32_t>& from, const std::vector<uint32_t>& to) {
    Mat fInv = basis_inverse(g, from);
    unsigned k = g.k();
    // to_matrix * fInv: columns of result = map applied to unit vectors
    Mat res;
    res.rows.assign(k, 0);
    for (unsigned j = 0; j < k; ++j) {
        // image of e_j: to * (fInv * e_j); fInv*e_j is column j of fInv
        uint32_t col = 0;
        for (unsigned i = 0; i < k; ++i) col = col * g.q() + g.coord(fInv.rows[i], j);
        uint32_t img = 0;
        for (unsigned i = 0; i < k; ++i) {
            uint8_t c = g.coord(col, i);
            if (c) img = g.vadd(img, g.vsmul(c, to[i]));
        }
        for (unsigned i = 0; i < k; ++i) {
            // accumulate img coord i into row i, column j
            uint8_t c = g.coord(img, i);
            if (c) {
                uint32_t pw = 1;
                for (unsigned t = 0; t + j + 1 < k; ++t) pw *= g.q();
                res.rows[i] = g.vadd(res.rows[i], g.vsmul(c, pw));
            }
        }
    }
    return res;
}

class Canonicalizer {
  public:
    Canonicalizer(const Geometry& g, const std::vector<uint32_t>& counts, uint64_t node_limit)
        : g_(g), cnt_(counts), k_(g.k()), q_(g.q()), n_(g.num_points()), node_limit_(node_limit) {
        in_span_.assign(n_, false);
        combos_ = {0};
        best_.assign(n_, 0);
        best_len_ = 0;
        frame_.reserve(k_);
    }

    void run() {
        rec(0);
        if (!best_complete_) throw std::logic_error("canon: no frame found");
    }

    const std::vector<uint32_t>& best() const { return best_; }
    const std::vector<uint32_t>& best_frame() const { return best_frame_; }
    uint64_t nodes() const { return nodes_; }

  private:
    void rec(unsigned level) {
        if (level == k_) {
            if (!best_complete_) {
                best_complete_ = true;
                best_frame_ = frame_;
            } else if (gens_.size() < 64) {
                gens_.push_back(transition(g_, best_frame_, frame_));
            }
            return;
        }
        size_t offset = (combos_.size() - 1) / (q_ - 1);  // [level]_q points already fixed
        size_t bs = combos_.size();                       // q^level block entries
        std::vector<uint32_t> tried;
        std::vector<uint32_t> blk(bs);
        for (uint32_t cand = 0; cand < n_; ++cand) {
            if (in_span_[cand]) continue;
            if (best_len_ >= offset + 1 && cnt_[cand] < best_[offset]) continue;  // block lead too small
            if (orbit_pruned(cand, level, tried)) continue;
            tried.push_back(cand);
            uint32_t cv = g_.value_of_point(cand);
            unsigned nscal = (level == 0 || q_ == 2) ? 1 : (q_ - 1);
            for (unsigned si = 0; si < nscal; ++si) {
                uint32_t w = si == 0 ? cv : g_.vsmul(static_cast<uint8_t>(si + 1), cv);
                if (++nodes_ > node_limit_) throw CanonBudgetExceeded();
                // compute block and compare against best
                int cmp = 0;  // -1 worse, 0 equal, +1 better
                for (size_t j = 0; j < bs; ++j) {
                    uint32_t pt = point_of_sum(w, combos_[j]);
                    blk[j] = cnt_[pt];
                    size_t pos = offset + j;
                    if (cmp == 0) {
                        if (pos >= best_len_) { cmp = 1; }
                        else if (blk[j] > best_[pos]) { cmp = 1; }
                        else if (blk[j] < best_[pos]) { cmp = -1; break; }
                    }
                }
                if (cmp < 0) continue;
                if (cmp > 0) {
                    std::copy(blk.begin(), blk.end(), best_.begin() + offset);
                    best_len_ = offset + bs;
                    best_complete_ = false;
                }
                descend(w, level);
            }
        }
    }

    void descend(uint32_t w, unsigned level) {
        size_t old_comb = combos_.size();
        frame_.push_back(w);
        std::vector<uint32_t> marked;
        marked.reserve(old_comb);
        for (size_t j = 0; j < old_comb; ++j) {
            uint32_t pt = point_of_sum(w, combos_[j]);
            if (!in_span_[pt]) { in_span_[pt] = true; marked.push_back(pt); }
        }
        for (unsigned lam = 1; lam < q_; ++lam) {
            uint32_t lw = g_.vsmul(static_cast<uint8_t>(lam), w);
            for (size_t j = 0; j < old_comb; ++j) combos_.push_back(g_.vadd(lw, combos_[j]));
        }
        rec(level + 1);
        combos_.resize(old_comb);
        for (uint32_t pt : marked) in_span_[pt] = false;
        frame_.pop_back();
    }

    uint32_t point_of_sum(uint32_t w, uint32_t combo) const {
        uint32_t v = g_.vadd(w, combo);
        if (q_ == 2) return v - 1;
        return g_.point_of_vector(v);
    }

    bool orbit_pruned(uint32_t cand, unsigned level, const std::vector<uint32_t>& tried) {
        if (gens_.empty() || tried.empty()) return false;
        // closure of {cand} under generators fixing the current frame vectors
        std::vector<uint32_t> orbit{cand};
        std::vector<bool> seen(n_, false);
        seen[cand] = true;
        for (size_t qi = 0; qi < orbit.size() && qi < 256; ++qi) {
            for (const Mat& gmat : gens_) {
                bool fixes = true;
                for (unsigned i = 0; i < level && fixes; ++i)
                    if (mat_apply(g_, gmat, frame_[i]) != frame_[i]) fixes = false;
                if (!fixes) continue;
                uint32_t img = g_.point_of_vector(mat_apply(g_, gmat, g_.value_of_point(orbit[qi])));
                if (std::find(tried.begin(), tried.end(), img) != tried.end()) return true;
                if (!seen[img]) { seen[img] = true; orbit.push_back(img); }
            }
        }
        return false;
    }

    const Geometry& g_;
    const std::vector<uint32_t>& cnt_;
    unsigned k_, q_;
    uint32_t n_;
    uint64_t node_limit_, nodes_ = 0;

    std::vector<bool> in_span_;
    std::vector<uint32_t> combos_;  // spanned combination vectors in suffix-lex order
    std::vector<uint32_t> frame_;
    std::vector<uint32_t> best_;
    size_t best_len_ = 0;
    bool best_complete_ = false;
    std::vector<uint32_t> best_frame_;
    std::vector<Mat> gens_;
};

}  // namespace

CanonResult canonicalize_multiset(const PointMultiset& m, uint64_t node_limit) {
    const Geometry& g = m.geom();
    if (!m.is_spanning()) throw std::invalid_argument("canon: multiset must span (normalize first)");
    unsigned aut_count = g.field().e();
    CanonResult best;
    for (unsigned s = 0; s < aut_count; ++s) {
        std::vector<uint32_t> counts(g.num_points());
        for (uint32_t p = 0; p < g.num_points(); ++p)
            counts[p] = m.mult(g.point_of_vector(g.vfrob(g.value_of_point(p), s)));
        Canonicalizer c(g, counts, node_limit);
        c.run();
        if (s == 0 || std::lexicographical_compare(best.counts.begin(), best.counts.end(), c.best().begin(),
                                                   c.best().end())) {
            best.counts = c.best();
            // frame chosen level-by-level: level i picked beta_{k-i}
            best.frame.assign(g.k(), 0);
            for (unsigned i = 0; i < g.k(); ++i) best.frame[g.k() - 1 - i] = c.best_frame()[i];
            best.frob_exp = s;
            best.nodes += c.nodes();
        }
    }
    return best;
}

std::vector<uint32_t> canonical_counts(const PointMultiset& m) { return canonicalize_multiset(m).counts; }

bool multisets_equivalent(const PointMultiset& a, const PointMultiset& b) {
    if (a.q() != b.q()) return false;
    PointMultiset sa = a.spanned_part(), sb = b.spanned_part();
    if (sa.k() != sb.k() || sa.cardinality() != sb.cardinality()) return false;
    return multiset_iso(sa, sb);
}

// ---------------------------------------------------------------------------
// direct isomorphism search

namespace {

uint64_t fnv64(const void* data, size_t len, uint64_t h = 1469598103934665603ull) {
    const uint8_t* d = static_cast<const uint8_t*>(data);
    for (size_t i = 0; i < len; ++i) { h ^= d[i]; h *= 1099511628211ull; }
    return h;
}

// per-point hash of (multiplicity, histogram of hyperplane sums through it)
std::vector<uint64_t> point_invariants(const PointMultiset& m) {
    const Geometry& g = m.geom();
    uint32_t N = g.num_points();
    std::vector<int64_t> hm = m.hyperplane_mults();
    std::vector<uint64_t> inv(N);
    for (uint32_t p = 0; p < N; ++p) inv[p] = fnv64(&m.counts()[p], 4);

    if (m.q() == 2) {
        // count hyperplanes of each section value through every point with a
        // Walsh transform per distinct value
        unsigned k = m.k();
        std::set<int64_t> values(hm.begin(), hm.end());
        std::vector<int64_t> f(1u << k);
        for (int64_t v : values) {
            std::fill(f.begin(), f.end(), 0);
            int64_t total = 0;
            for (uint32_t h = 0; h < N; ++h)
                if (hm[h] == v) { f[g.value_of_point(h)] = 1; ++total; }
            for (unsigned bit = 0; bit < k; ++bit) {
                uint32_t step = 1u << bit;
                for (uint32_t base = 0; base < f.size(); base += 2 * step)
                    for (uint32_t j = base; j < base + step; ++j) {
                        int64_t x = f[j], y = f[j + step];
                        f[j] = x + y;
                        f[j + step] = x - y;
                    }
            }
            for (uint32_t p = 0; p < N; ++p) {
                int64_t cnt = (total + f[g.value_of_point(p)]) / 2;
                inv[p] = fnv64(&v, 8, inv[p]);
                inv[p] = fnv64(&cnt, 8, inv[p]);
            }
        }
        return inv;
    }

    std::vector<std::map<int64_t, uint32_t>> hist(N);
    for (uint32_t h = 0; h < N; ++h) {
        uint32_t hv = g.value_of_point(h);
        for (uint32_t p = 0; p < N; ++p)
            if (g.vdot(hv, g.value_of_point(p)) == 0) hist[p][hm[h]]++;
    }
    for (uint32_t p = 0; p < N; ++p) {
        for (auto& [v, c] : hist[p]) {
            inv[p] = fnv64(&v, 8, inv[p]);
            inv[p] = fnv64(&c, 4, inv[p]);
        }
    }
    return inv;
}

struct IsoSearch {
    const Geometry& g;
    const std::vector<uint32_t>& ca;  // counts of A (after frobenius)
    const std::vector<uint32_t>& cb;
    const std::vector<uint64_t>& ia;
    const std::vector<uint64_t>& ib;
    unsigned q, k;
    const std::vector<uint32_t>& frameA;  // fixed spanning frame of A (vectors)
    std::vector<uint32_t> combosA{0};     // span combinations, grown per level
    std::vector<uint32_t> frameB;
    std::vector<uint32_t> combosB{0};
    std::vector<bool> spannedB;  // points of span(frameB)

    bool rec(unsigned level) {
        if (level == k) return true;
        size_t old_comb = combosB.size();
        uint32_t av = frameA[level];
        uint32_t apt = g.point_of_vector(av);
        for (uint32_t cand = 0; cand < g.num_points(); ++cand) {
            if (ib[cand] != ia[apt] || spannedB[cand]) continue;
            uint32_t cv = g.value_of_point(cand);
            unsigned nscal = (level == 0 || q == 2) ? 1 : q - 1;
            for (unsigned si = 0; si < nscal; ++si) {
                uint32_t w = si == 0 ? cv : g.vsmul(static_cast<uint8_t>(si + 1), cv);
                // multiplicities must agree on everything newly spanned
                bool ok = true;
                for (size_t j = 0; j < old_comb && ok; ++j) {
                    uint32_t pa = g.point_of_vector(g.vadd(av, combosA[j]));
                    uint32_t pb = g.point_of_vector(g.vadd(w, combosB[j]));
                    ok = ca[pa] == cb[pb] && ia[pa] == ib[pb];
                }
                if (!ok) continue;
                frameB.push_back(w);
                std::vector<uint32_t> marked;
                marked.reserve(old_comb * (q - 1));
                for (unsigned lam = 1; lam < q; ++lam) {
                    uint32_t la = g.vsmul(static_cast<uint8_t>(lam), av);
                    uint32_t lw = g.vsmul(static_cast<uint8_t>(lam), w);
                    for (size_t j = 0; j < old_comb; ++j) {
                        combosA.push_back(g.vadd(la, combosA[j]));
                        combosB.push_back(g.vadd(lw, combosB[j]));
                        if (lam == 1) {
                            uint32_t pb = g.point_of_vector(g.vadd(w, combosB[j]));
                            if (!spannedB[pb]) { spannedB[pb] = true; marked.push_back(pb); }
                        }
                    }
                }
                if (rec(level + 1)) return true;
                frameB.pop_back();
                combosA.resize(old_comb);
                combosB.resize(old_comb);
                for (uint32_t pb : marked) spannedB[pb] = false;
            }
        }
        return false;
    }
};

}  // namespace

uint64_t iso_invariant_hash(const PointMultiset& m) {
    uint64_t card = m.cardinality();
    uint64_t h = fnv64(&card, 8);
    auto sp = m.spectrum();
    for (auto& [i, a] : sp) { h = fnv64(&i, 8, h); h = fnv64(&a, 8, h); }
    auto lam = m.point_distribution();
    for (auto& [i, l] : lam) { h = fnv64(&i, 8, h); h = fnv64(&l, 8, h); }
    return h;
}

IsoTarget::IsoTarget(PointMultiset mm) : m(std::move(mm)), inv(point_invariants(m)), inv_sorted(inv) {
    std::sort(inv_sorted.begin(), inv_sorted.end());
}

bool multiset_iso_to(const PointMultiset& a, const IsoTarget& b) {
    if (a.q() != b.m.q() || a.k() != b.m.k() || a.cardinality() != b.m.cardinality()) return false;
    const Geometry& g = a.geom();
    unsigned aut = g.field().e();
    for (unsigned s = 0; s < aut; ++s) {
        std::vector<uint32_t> ca(g.num_points());
        for (uint32_t p = 0; p < g.num_points(); ++p)
            ca[p] = a.mult(g.point_of_vector(g.vfrob(g.value_of_point(p), s)));
        PointMultiset as(a.q(), a.k());
        for (uint32_t p = 0; p < g.num_points(); ++p)
            if (ca[p]) as.set_mult(p, ca[p]);
        std::vector<uint64_t> ia = point_invariants(as);
        {
            std::vector<uint64_t> ia_sorted = ia;
            std::sort(ia_sorted.begin(), ia_sorted.end());
            if (ia_sorted != b.inv_sorted) continue;
        }
        // fixed spanning frame of A: greedy independent support points
        std::vector<uint32_t> frame;
        std::vector<uint32_t> rows;
        for (uint32_t p = 0; p < g.num_points() && frame.size() < a.k(); ++p) {
            if (!ca[p]) continue;
            rows.push_back(g.value_of_point(p));
            if (linalg::rank(g, rows) == rows.size())
                frame.push_back(g.value_of_point(p));
            else
                rows.pop_back();
        }
        if (frame.size() != a.k()) continue;  // not spanning
        IsoSearch search{g, ca, b.m.counts(), ia, b.inv, a.q(), a.k(), frame};
        search.spannedB.assign(g.num_points(), false);
        if (search.rec(0)) return true;
    }
    return false;
}

bool multiset_iso(const PointMultiset& a, const PointMultiset& b) {
    if (a.q() != b.q() || a.k() != b.k() || a.cardinality() != b.cardinality()) return false;
    if (a.spectrum() != b.spectrum() || a.point_distribution() != b.point_distribution()) return false;
    return multiset_iso_to(a, IsoTarget(b));
}

}  // namespace divis
