#include "codes.hpp"

#include <algorithm>
#include <sstream>

namespace divis {

GeneratorMatrix::GeneratorMatrix(unsigned q, unsigned k, unsigned n) : q_(q), k_(k), n_(n), e_(k * n, 0) {
    FieldSpec::get(q);  // validates q
    if (k == 0) throw std::invalid_argument("codes: k must be >= 1");
}

unsigned GeneratorMatrix::effective_length() const {
    unsigned eff = 0;
    for (unsigned c = 0; c < n_; ++c) {
        bool nz = false;
        for (unsigned r = 0; r < k_ && !nz; ++r) nz = at(r, c) != 0;
        eff += nz;
    }
    return eff;
}

bool GeneratorMatrix::full_rank() const {
    // rank of the row space via the column multiset's span
    return to_multiset(*this).span().dim() == k_;
}

std::string GeneratorMatrix::to_text() const {
    const FieldSpec& f = FieldSpec::get(q_);
    std::ostringstream os;
    os << q_ << " " << k_ << " " << n_ << "\n";
    for (unsigned r = 0; r < k_; ++r) {
        for (unsigned c = 0; c < n_; ++c) os << f.symbol(at(r, c));
        os << "\n";
    }
    return os.str();
}

GeneratorMatrix GeneratorMatrix::from_text(const std::string& text) {
    std::istringstream is(text);
    unsigned q, k, n;
    if (!(is >> q >> k >> n)) throw std::invalid_argument("codes: bad matrix header");
    const FieldSpec& f = FieldSpec::get(q);
    GeneratorMatrix g(q, k, n);
    std::string line;
    std::getline(is, line);
    for (unsigned r = 0; r < k; ++r) {
        if (!std::getline(is, line) || line.size() < n)
            throw std::invalid_argument("codes: bad matrix row");
        for (unsigned c = 0; c < n; ++c) g.set(r, c, f.parse_symbol(line[c]));
    }
    return g;
}

PointMultiset to_multiset(const GeneratorMatrix& g) {
    const Geometry& geo = Geometry::get(g.q(), g.k());
    PointMultiset m(g.q(), g.k());
    for (unsigned c = 0; c < g.n(); ++c) {
        uint32_t v = 0;
        for (unsigned r = 0; r < g.k(); ++r) v = v * g.q() + g.at(r, c);
        if (v) m.add_mult(geo.point_of_vector(v), 1);
    }
    return m;
}

GeneratorMatrix from_multiset(const PointMultiset& m) {
    if (!m.is_spanning()) throw std::invalid_argument("codes: multiset must span; restrict to span first");
    const Geometry& g = m.geom();
    GeneratorMatrix mat(m.q(), m.k(), static_cast<unsigned>(m.cardinality()));
    unsigned col = 0;
    for (uint32_t p = 0; p < g.num_points(); ++p) {
        uint32_t v = g.value_of_point(p);
        for (uint32_t t = 0; t < m.mult(p); ++t) {
            for (unsigned r = 0; r < m.k(); ++r) mat.set(r, col, g.coord(v, r));
            ++col;
        }
    }
    return mat;
}

uint64_t WeightEnumerator::total() const {
    uint64_t t = 0;
    for (auto& [w, c] : coeff) t += c;
    return t;
}

WeightEnumerator weight_distribution(const GeneratorMatrix& g) {
    PointMultiset m = to_multiset(g);
    uint64_t n = m.cardinality();
    WeightEnumerator we;
    we.coeff[0] += 1;
    // message vectors group into (q-1)-tuples per hyperplane; w = n_eff - M(H)
    for (auto& [hm, count] : m.spectrum()) we.coeff[n - hm] += count * (g.q() - 1);
    return we;
}

WeightEnumerator weight_distribution_bruteforce(const GeneratorMatrix& g, uint64_t max_words) {
    uint64_t words = 1;
    for (unsigned i = 0; i < g.k(); ++i) {
        words *= g.q();
        if (words > max_words) throw std::invalid_argument("codes: q^k exceeds enumeration budget");
    }
    const FieldSpec& f = FieldSpec::get(g.q());
    WeightEnumerator we;
    std::vector<uint8_t> x(g.k(), 0);
    for (uint64_t idx = 0; idx < words; ++idx) {
        uint64_t t = idx;
        for (unsigned i = 0; i < g.k(); ++i) { x[i] = static_cast<uint8_t>(t % g.q()); t /= g.q(); }
        uint64_t w = 0;
        for (unsigned c = 0; c < g.n(); ++c) {
            uint8_t acc = 0;
            for (unsigned r = 0; r < g.k(); ++r)
                if (x[r] && g.at(r, c)) acc = f.add(acc, f.mul(x[r], g.at(r, c)));
            w += acc != 0;
        }
        we.coeff[w] += 1;
    }
    return we;
}

GeneratorMatrix matrix_direct_sum(const GeneratorMatrix& a, const GeneratorMatrix& b) {
    if (a.q() != b.q()) throw std::invalid_argument("codes: field mismatch in direct sum");
    GeneratorMatrix out(a.q(), a.k() + b.k(), a.n() + b.n());
    for (unsigned r = 0; r < a.k(); ++r)
        for (unsigned c = 0; c < a.n(); ++c) out.set(r, c, a.at(r, c));
    for (unsigned r = 0; r < b.k(); ++r)
        for (unsigned c = 0; c < b.n(); ++c) out.set(a.k() + r, a.n() + c, b.at(r, c));
    return out;
}

GeneratorMatrix matrix_repeat(const GeneratorMatrix& g, unsigned c) {
    if (c == 0) throw std::invalid_argument("codes: repetition factor must be >= 1");
    GeneratorMatrix out(g.q(), g.k(), g.n() * c);
    for (unsigned r = 0; r < g.k(); ++r)
        for (unsigned col = 0; col < g.n(); ++col)
            for (unsigned i = 0; i < c; ++i) out.set(r, col * c + i, g.at(r, col));
    return out;
}

std::pair<unsigned, uint32_t> column_stats(const GeneratorMatrix& g) {
    const FieldSpec& f = FieldSpec::get(g.q());
    std::map<std::vector<uint8_t>, uint32_t> mult;
    unsigned eff = 0;
    for (unsigned c = 0; c < g.n(); ++c) {
        std::vector<uint8_t> col(g.k());
        uint8_t lead = 0;
        for (unsigned r = 0; r < g.k(); ++r) {
            col[r] = g.at(r, c);
            if (!lead && col[r]) lead = col[r];
        }
        if (!lead) continue;
        ++eff;
        if (lead != 1) {
            uint8_t il = f.inv(lead);
            for (auto& x : col) x = f.mul(il, x);
        }
        mult[col]++;
    }
    uint32_t g1 = 0;
    for (auto& [col, m] : mult) g1 = std::max(g1, m);
    return {eff, g1};
}

bool is_divisible_code(const GeneratorMatrix& g, uint64_t delta) {
    if (delta == 0) throw std::invalid_argument("codes: delta must be >= 1");
    uint64_t values = 1;
    bool small = true;
    for (unsigned i = 0; i < g.k() && small; ++i) {
        values *= g.q();
        if (values > (1u << 20)) small = false;
    }
    if (small) {
        for (auto& [w, c] : weight_distribution(g).coeff)
            if (w % delta != 0) return false;
        return true;
    }
    // weight parity is linear over F_2, so evenness needs only the rows
    if (g.q() == 2 && delta == 2) {
        for (unsigned r = 0; r < g.k(); ++r) {
            unsigned w = 0;
            for (unsigned c = 0; c < g.n(); ++c) w += g.at(r, c);
            if (w % 2) return false;
        }
        return true;
    }
    // Gray-code walk over all codewords; witnesses beyond the geometry range
    // are binary with n <= 64
    if (g.q() == 2 && g.n() <= 64 && g.k() <= 30) {
        std::vector<uint64_t> rows(g.k(), 0);
        for (unsigned r = 0; r < g.k(); ++r)
            for (unsigned c = 0; c < g.n(); ++c)
                if (g.at(r, c)) rows[r] |= 1ull << c;
        uint64_t word = 0;
        uint64_t total = 1ull << g.k();
        for (uint64_t i = 1; i < total; ++i) {
            word ^= rows[__builtin_ctzll(i)];
            if (static_cast<uint64_t>(__builtin_popcountll(word)) % delta != 0) return false;
        }
        return true;
    }
    throw std::invalid_argument("codes: divisibility check out of range for this k");
}

CanonicalForm canonical_form(const GeneratorMatrix& g) {
    PointMultiset m = to_multiset(g);
    if (!m.is_spanning()) throw std::invalid_argument("codes: canonical form needs a full-rank generator");
    CanonResult r = canonicalize_multiset(m);
    PointMultiset cm(g.q(), g.k());
    for (uint32_t p = 0; p < r.counts.size(); ++p)
        if (r.counts[p]) cm.set_mult(p, r.counts[p]);
    CanonicalForm cf{from_multiset(cm), std::move(r.counts), std::move(r.frame), r.frob_exp};
    return cf;
}

WeightEnumerator we_product(const WeightEnumerator& a, const WeightEnumerator& b) {
    WeightEnumerator r;
    for (auto& [wa, ca] : a.coeff)
        for (auto& [wb, cb] : b.coeff) r.coeff[wa + wb] += ca * cb;
    return r;
}

std::set<uint64_t> a8_reachable_set() {
    // indecomposable weight enumerators of binary 8-divisible codes spanned by
    // weight-8 words, with maximum weight 8, 16 and 24
    auto mk = [](std::initializer_list<std::pair<uint64_t, uint64_t>> cs) {
        WeightEnumerator w;
        w.coeff[0] = 1;
        for (auto& [wt, c] : cs) w.coeff[wt] = c;
        return w;
    };
    std::vector<WeightEnumerator> max8 = {mk({{8, 1}}), mk({{8, 3}}), mk({{8, 7}}), mk({{8, 15}})};
    std::vector<WeightEnumerator> max16 = {mk({{8, 6}, {16, 1}}), mk({{8, 10}, {16, 5}}), mk({{8, 14}, {16, 1}}),
                                           mk({{8, 30}, {16, 1}})};
    std::vector<WeightEnumerator> max24 = {mk({{8, 15}, {16, 15}, {24, 1}}), mk({{8, 21}, {16, 35}, {24, 7}})};

    auto weights_ok = [](const WeightEnumerator& w) {
        for (auto& [wt, c] : w.coeff)
            if (wt != 0 && wt != 8 && wt != 16 && wt != 24) return false;
        return true;
    };
    std::set<uint64_t> out;
    auto note = [&](const WeightEnumerator& w) {
        if (!weights_ok(w)) return;
        auto it = w.coeff.find(8);
        out.insert(it == w.coeff.end() ? 0 : it->second);
    };
    note(mk({}));  // empty code
    for (auto& w : max8) note(w);
    for (auto& w : max16) note(w);
    for (auto& w : max24) note(w);
    for (size_t i = 0; i < max8.size(); ++i)
        for (size_t j = i; j < max8.size(); ++j) note(we_product(max8[i], max8[j]));
    for (auto& a : max16)
        for (auto& b : max8) note(we_product(a, b));
    return out;
}

}  // namespace divis
