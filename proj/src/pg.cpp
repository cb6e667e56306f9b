#include "pg.hpp"

#include <algorithm>
#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>

namespace divis {

uint64_t gauss_count(unsigned k, unsigned q) {
    uint64_t v = 0, pw = 1;
    for (unsigned i = 0; i < k; ++i) { v += pw; pw *= q; }
    return v;
}

// ---------------------------------------------------------------------------
// Geometry

Geometry::Geometry(unsigned q, unsigned k) : q_(q), k_(k), field_(&FieldSpec::get(q)) {
    if (k == 0 || k > 24) throw std::invalid_argument("pg: dimension out of range");
    pw_.resize(k + 1);
    pw_[0] = 1;
    for (unsigned i = 1; i <= k; ++i) {
        if (pw_[i - 1] > (1u << 28) / q) throw std::invalid_argument("pg: geometry too large");
        pw_[i] = pw_[i - 1] * q;
    }
    nvals_ = pw_[k];
    npts_ = static_cast<uint32_t>(gauss_count(k, q));
    pval_.reserve(npts_);
    pofv_.assign(nvals_, -1);
    for (uint32_t v = 1; v < nvals_; ++v) {
        // normalized iff the most significant nonzero digit is 1
        uint32_t t = v;
        unsigned top = 0;
        for (unsigned i = 0; i < k_; ++i)
            if (t >= pw_[k_ - 1 - i]) { top = i; break; }
        if (t / pw_[k_ - 1 - top] % q_ == 1) {
            pofv_[v] = static_cast<int32_t>(pval_.size());
            pval_.push_back(v);
        }
    }
    if (pval_.size() != npts_) throw std::logic_error("pg: point enumeration mismatch");
}

const Geometry& Geometry::get(unsigned q, unsigned k) {
    static std::mutex mu;
    static std::map<std::pair<unsigned, unsigned>, std::unique_ptr<Geometry>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(q, k);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, std::unique_ptr<Geometry>(new Geometry(q, k))).first;
    return *it->second;
}

uint32_t Geometry::vadd(uint32_t a, uint32_t b) const {
    if (q_ == 2) return a ^ b;
    uint32_t r = 0;
    for (unsigned i = 0; i < k_; ++i) {
        uint32_t pw = pw_[i];
        r += static_cast<uint32_t>(field_->add(static_cast<uint8_t>(a / pw % q_), static_cast<uint8_t>(b / pw % q_))) * pw;
    }
    return r;
}

uint32_t Geometry::vsub(uint32_t a, uint32_t b) const {
    if (q_ == 2) return a ^ b;
    uint32_t r = 0;
    for (unsigned i = 0; i < k_; ++i) {
        uint32_t pw = pw_[i];
        r += static_cast<uint32_t>(field_->sub(static_cast<uint8_t>(a / pw % q_), static_cast<uint8_t>(b / pw % q_))) * pw;
    }
    return r;
}

uint32_t Geometry::vsmul(uint8_t lam, uint32_t a) const {
    if (q_ == 2) return lam ? a : 0;
    uint32_t r = 0;
    for (unsigned i = 0; i < k_; ++i) {
        uint32_t pw = pw_[i];
        r += static_cast<uint32_t>(field_->mul(lam, static_cast<uint8_t>(a / pw % q_))) * pw;
    }
    return r;
}

uint8_t Geometry::vdot(uint32_t a, uint32_t b) const {
    if (q_ == 2) return static_cast<uint8_t>(__builtin_popcount(a & b) & 1);
    uint8_t acc = 0;
    for (unsigned i = 0; i < k_; ++i) {
        uint32_t pw = pw_[i];
        acc = field_->add(acc, field_->mul(static_cast<uint8_t>(a / pw % q_), static_cast<uint8_t>(b / pw % q_)));
    }
    return acc;
}

uint32_t Geometry::vfrob(uint32_t a, unsigned j) const {
    if (field_->e() == 1 || j == 0) return a;
    uint32_t r = 0;
    for (unsigned i = 0; i < k_; ++i) {
        uint32_t pw = pw_[i];
        r += static_cast<uint32_t>(field_->frobenius(static_cast<uint8_t>(a / pw % q_), j)) * pw;
    }
    return r;
}

uint32_t Geometry::normalize(uint32_t v) const {
    if (v == 0) throw std::invalid_argument("pg: cannot normalize zero vector");
    if (q_ == 2) return v;
    for (unsigned i = 0; i < k_; ++i) {
        uint8_t c = static_cast<uint8_t>(v / pw_[k_ - 1 - i] % q_);
        if (c != 0) return c == 1 ? v : vsmul(field_->inv(c), v);
    }
    return v;
}

uint32_t Geometry::point_of_vector(uint32_t v) const {
    int32_t idx = pofv_[normalize(v)];
    if (idx < 0) throw std::logic_error("pg: bad point lookup");
    return static_cast<uint32_t>(idx);
}

// ---------------------------------------------------------------------------
// linear algebra on packed rows

namespace linalg {

static unsigned pivot_pos(const Geometry& g, uint32_t v) {
    for (unsigned i = 0; i < g.k(); ++i)
        if (g.coord(v, i) != 0) return i;
    return g.k();
}

std::vector<uint32_t> rref(const Geometry& g, std::vector<uint32_t> rows) {
    const FieldSpec& f = g.field();
    std::vector<uint32_t> out;
    for (uint32_t r : rows) {
        // reduce against existing pivots
        for (uint32_t b : out) {
            unsigned p = pivot_pos(g, b);
            uint8_t c = g.coord(r, p);
            if (c != 0) r = g.vsub(r, g.vsmul(c, b));
        }
        if (r == 0) continue;
        unsigned p = pivot_pos(g, r);
        uint8_t c = g.coord(r, p);
        if (c != 1) r = g.vsmul(f.inv(c), r);
        // eliminate this pivot from earlier rows
        for (uint32_t& b : out) {
            uint8_t cb = g.coord(b, p);
            if (cb != 0) b = g.vsub(b, g.vsmul(cb, r));
        }
        out.push_back(r);
    }
    std::sort(out.begin(), out.end(), [&](uint32_t a, uint32_t b) { return pivot_pos(g, a) < pivot_pos(g, b); });
    return out;
}

unsigned rank(const Geometry& g, const std::vector<uint32_t>& rows) {
    return static_cast<unsigned>(rref(g, rows).size());
}

std::optional<std::vector<uint8_t>> coords_in_basis(const Geometry& g, const std::vector<uint32_t>& basis,
                                                    uint32_t v) {
    // Gaussian elimination on the augmented system sum c_i basis_i = v.
    const FieldSpec& f = g.field();
    std::vector<uint32_t> rows = basis;
    size_t nb = basis.size();
    std::vector<std::vector<uint8_t>> comb(nb);
    for (size_t i = 0; i < nb; ++i) { comb[i].assign(nb, 0); comb[i][i] = 1; }
    std::vector<uint8_t> vc(nb, 0);

    std::vector<bool> used(nb, false);
    for (unsigned col = 0; col < g.k(); ++col) {
        size_t piv = nb;
        for (size_t i = 0; i < nb; ++i)
            if (!used[i] && g.coord(rows[i], col) != 0) { piv = i; break; }
        if (piv == nb) continue;
        used[piv] = true;
        uint8_t c = g.coord(rows[piv], col);
        if (c != 1) {
            uint8_t ic = f.inv(c);
            rows[piv] = g.vsmul(ic, rows[piv]);
            for (auto& x : comb[piv]) x = f.mul(ic, x);
        }
        for (size_t i = 0; i < nb; ++i) {
            if (i == piv) continue;
            uint8_t ci = g.coord(rows[i], col);
            if (ci == 0) continue;
            rows[i] = g.vsub(rows[i], g.vsmul(ci, rows[piv]));
            for (size_t j = 0; j < nb; ++j) comb[i][j] = f.sub(comb[i][j], f.mul(ci, comb[piv][j]));
        }
    }
    // express v
    std::vector<uint8_t> res(nb, 0);
    uint32_t rem = v;
    for (unsigned col = 0; col < g.k() && rem != 0; ++col) {
        uint8_t c = g.coord(rem, col);
        if (c == 0) continue;
        size_t piv = nb;
        for (size_t i = 0; i < nb; ++i)
            if (used[i] && g.coord(rows[i], col) != 0 && pivot_pos(g, rows[i]) == col) { piv = i; break; }
        if (piv == nb) return std::nullopt;
        rem = g.vsub(rem, g.vsmul(c, rows[piv]));
        for (size_t j = 0; j < nb; ++j) res[j] = f.add(res[j], f.mul(c, comb[piv][j]));
    }
    if (rem != 0) return std::nullopt;
    return res;
}

}  // namespace linalg

// ---------------------------------------------------------------------------
// Subspace

Subspace Subspace::full(unsigned q, unsigned k) {
    const Geometry& g = Geometry::get(q, k);
    Subspace s(q, k);
    for (unsigned i = 0; i < k; ++i) {
        uint32_t e = 1;
        for (unsigned j = 0; j + i + 1 < k; ++j) e *= q;
        s.basis_.push_back(e);
    }
    s.basis_ = linalg::rref(g, s.basis_);
    return s;
}

Subspace Subspace::from_vectors(unsigned q, unsigned k, const std::vector<uint32_t>& vecs) {
    Subspace s(q, k);
    s.basis_ = linalg::rref(Geometry::get(q, k), vecs);
    return s;
}

Subspace Subspace::from_points(const Geometry& g, const std::vector<uint32_t>& point_idxs) {
    std::vector<uint32_t> vecs;
    vecs.reserve(point_idxs.size());
    for (uint32_t p : point_idxs) vecs.push_back(g.value_of_point(p));
    return from_vectors(g.q(), g.k(), vecs);
}

bool Subspace::contains_vector(uint32_t v) const {
    const Geometry& g = Geometry::get(q_, k_);
    for (uint32_t b : basis_) {
        unsigned p = linalg::pivot_pos(g, b);
        uint8_t c = g.coord(v, p);
        if (c != 0) v = g.vsub(v, g.vsmul(c, b));
    }
    return v == 0;
}

bool Subspace::contains(const Subspace& other) const {
    for (uint32_t b : other.basis_)
        if (!contains_vector(b)) return false;
    return true;
}

void Subspace::insert_vector(uint32_t v) {
    if (contains_vector(v)) return;
    const Geometry& g = Geometry::get(q_, k_);
    std::vector<uint32_t> rows = basis_;
    rows.push_back(v);
    basis_ = linalg::rref(g, rows);
}

std::vector<uint32_t> Subspace::points() const {
    const Geometry& g = Geometry::get(q_, k_);
    std::vector<uint32_t> out;
    unsigned l = dim();
    if (l == 0) return out;
    out.reserve(gauss_count(l, q_));
    // one combination per point: first nonzero coefficient equals 1
    std::vector<uint8_t> coef(l, 0);
    for (unsigned lead = 0; lead < l; ++lead) {
        std::fill(coef.begin(), coef.end(), 0);
        coef[lead] = 1;
        // enumerate the free coefficients after position lead
        uint64_t total = 1;
        for (unsigned i = lead + 1; i < l; ++i) total *= q_;
        for (uint64_t t = 0; t < total; ++t) {
            uint64_t x = t;
            for (unsigned i = l; i-- > lead + 1;) { coef[i] = static_cast<uint8_t>(x % q_); x /= q_; }
            uint32_t v = 0;
            for (unsigned i = lead; i < l; ++i)
                if (coef[i]) v = g.vadd(v, g.vsmul(coef[i], basis_[i]));
            out.push_back(g.point_of_vector(v));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Rational

static long long llgcd(long long a, long long b) {
    while (b) { long long t = a % b; a = b; b = t; }
    return a < 0 ? -a : a;
}

Rational::Rational(long long n, long long d) : num(n), den(d) {
    if (den == 0) throw std::domain_error("rational: zero denominator");
    if (den < 0) { num = -num; den = -den; }
    long long gg = llgcd(num, den);
    if (gg > 1) { num /= gg; den /= gg; }
}

Rational Rational::operator+(const Rational& o) const { return Rational(num * o.den + o.num * den, den * o.den); }
Rational Rational::operator-(const Rational& o) const { return Rational(num * o.den - o.num * den, den * o.den); }
Rational Rational::operator*(const Rational& o) const { return Rational(num * o.num, den * o.den); }
Rational Rational::operator/(const Rational& o) const {
    if (o.num == 0) throw std::domain_error("rational: division by zero");
    return Rational(num * o.den, den * o.num);
}

std::string Rational::str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

// ---------------------------------------------------------------------------
// PointMultiset

PointMultiset::PointMultiset(unsigned q, unsigned k)
    : q_(q), k_(k), geom_(&Geometry::get(q, k)), c_(geom_->num_points(), 0) {}

void PointMultiset::set_mult(uint32_t point_idx, uint32_t m) {
    card_ += static_cast<int64_t>(m) - c_[point_idx];
    c_[point_idx] = m;
}

void PointMultiset::add_mult(uint32_t point_idx, int64_t delta) {
    int64_t nm = static_cast<int64_t>(c_[point_idx]) + delta;
    if (nm < 0) throw std::domain_error("pg: negative multiplicity");
    card_ += delta;
    c_[point_idx] = static_cast<uint32_t>(nm);
}

uint32_t PointMultiset::gamma1() const {
    uint32_t m = 0;
    for (uint32_t x : c_) m = std::max(m, x);
    return m;
}

uint32_t PointMultiset::support_size() const {
    uint32_t s = 0;
    for (uint32_t x : c_) s += (x != 0);
    return s;
}

std::vector<uint32_t> PointMultiset::support() const {
    std::vector<uint32_t> s;
    for (uint32_t i = 0; i < c_.size(); ++i)
        if (c_[i]) s.push_back(i);
    return s;
}

uint64_t PointMultiset::multiplicity(const Subspace& s) const {
    if (s.q() != q_ || s.ambient_k() != k_) throw std::invalid_argument("pg: ambient space mismatch");
    uint64_t tot = 0;
    for (uint32_t p : s.points()) tot += c_[p];
    return tot;
}

uint64_t PointMultiset::hyperplane_mult(uint32_t dual_value) const {
    uint64_t tot = 0;
    for (uint32_t i = 0; i < c_.size(); ++i)
        if (c_[i] && geom_->vdot(dual_value, geom_->value_of_point(i)) == 0) tot += c_[i];
    return tot;
}

// Hyperplane multiplicities for all hyperplanes, indexed by dual point.
static std::vector<int64_t> all_hyperplane_mults(const PointMultiset& m) {
    const Geometry& g = m.geom();
    if (m.q() == 2) {
        // Walsh-Hadamard transform of the multiplicity function
        unsigned k = m.k();
        std::vector<int64_t> f(1u << k, 0);
        for (uint32_t i = 0; i < g.num_points(); ++i) f[g.value_of_point(i)] = m.mult(i);
        for (unsigned bit = 0; bit < k; ++bit) {
            uint32_t step = 1u << bit;
            for (uint32_t base = 0; base < f.size(); base += 2 * step)
                for (uint32_t j = base; j < base + step; ++j) {
                    int64_t a = f[j], b = f[j + step];
                    f[j] = a + b;
                    f[j + step] = a - b;
                }
        }
        int64_t n = static_cast<int64_t>(m.cardinality());
        std::vector<int64_t> res(g.num_points());
        for (uint32_t h = 0; h < g.num_points(); ++h) res[h] = (n + f[g.value_of_point(h)]) / 2;
        return res;
    }
    auto supp = m.support();
    std::vector<int64_t> res(g.num_points(), 0);
    for (uint32_t h = 0; h < g.num_points(); ++h) {
        uint32_t hv = g.value_of_point(h);
        int64_t tot = 0;
        for (uint32_t p : supp)
            if (g.vdot(hv, g.value_of_point(p)) == 0) tot += m.mult(p);
        res[h] = tot;
    }
    return res;
}

std::vector<int64_t> PointMultiset::hyperplane_mults() const { return all_hyperplane_mults(*this); }

bool PointMultiset::is_divisible(uint64_t delta) const {
    if (delta == 0) throw std::invalid_argument("pg: delta must be >= 1");
    if (delta == 1) return true;
    if (k_ == 1) return cardinality() % delta == 0;
    uint64_t n = cardinality();
    for (int64_t h : all_hyperplane_mults(*this))
        if ((n - h) % delta != 0) return false;
    return true;
}

std::map<uint64_t, uint64_t> PointMultiset::spectrum() const {
    std::map<uint64_t, uint64_t> a;
    if (k_ == 1) {
        a[0] = 1;  // the unique hyperplane of PG(0,q) is the zero subspace
        return a;
    }
    for (int64_t h : all_hyperplane_mults(*this)) a[static_cast<uint64_t>(h)]++;
    return a;
}

std::map<uint64_t, uint64_t> PointMultiset::point_distribution() const {
    std::map<uint64_t, uint64_t> lam;
    for (uint32_t x : c_) lam[x]++;
    return lam;
}

bool PointMultiset::standard_equations_check() const {
    if (!is_spanning()) return spanned_part().standard_equations_check();
    if (k_ < 2) return true;
    auto a = spectrum();
    auto lam = point_distribution();
    __int128 n = cardinality();
    __int128 nk = gauss_count(k_, q_);
    __int128 nk1 = gauss_count(k_ - 1, q_);
    __int128 nk2 = gauss_count(k_ - 2, q_);
    __int128 sum_a = 0, sum_ia = 0, sum_bin_a = 0;
    for (auto& [i, ai] : a) {
        sum_a += ai;
        sum_ia += static_cast<__int128>(i) * ai;
        sum_bin_a += static_cast<__int128>(i) * (i - 1) / 2 * ai;
    }
    __int128 sum_lam = 0, sum_ilam = 0, sum_bin_lam = 0;
    for (auto& [i, li] : lam) {
        sum_lam += li;
        sum_ilam += static_cast<__int128>(i) * li;
        sum_bin_lam += static_cast<__int128>(i) * (i - 1) / 2 * li;
    }
    __int128 qk2 = 1;
    for (unsigned i = 0; i + 2 < k_; ++i) qk2 *= q_;
    if (sum_a != nk) return false;                                     // (1)
    if (sum_ia != n * nk1) return false;                               // (2)
    if (sum_lam != nk) return false;                                   // (3)
    if (sum_ilam != n) return false;                                   // (4)
    if (sum_bin_a != n * (n - 1) / 2 * nk2 + qk2 * sum_bin_lam) return false;  // (5)
    return true;
}

Subspace PointMultiset::span() const {
    return Subspace::from_points(*geom_, support());
}

bool PointMultiset::is_spanning() const { return span().dim() == k_; }

PointMultiset PointMultiset::restrict_to(const Subspace& s) const {
    if (s.q() != q_ || s.ambient_k() != k_) throw std::invalid_argument("pg: ambient space mismatch");
    PointMultiset r(q_, k_);
    for (uint32_t p : s.points())
        if (c_[p]) r.set_mult(p, c_[p]);
    return r;
}

PointMultiset PointMultiset::restrict_renumbered(const Subspace& s) const {
    if (s.q() != q_ || s.ambient_k() != k_) throw std::invalid_argument("pg: ambient space mismatch");
    unsigned l = s.dim();
    if (l == 0) throw std::invalid_argument("pg: cannot renumber into empty space");
    const Geometry& gl = Geometry::get(q_, l);
    PointMultiset r(q_, l);
    // RREF basis: the coefficient of basis row j is the coordinate at its pivot
    const Geometry& g = *geom_;
    std::vector<unsigned> piv;
    for (uint32_t b : s.basis()) piv.push_back(linalg::pivot_pos(g, b));
    for (uint32_t p : s.points()) {
        if (!c_[p]) continue;
        uint32_t v = g.value_of_point(p);
        uint32_t w = 0;
        for (unsigned j = 0; j < l; ++j) w = w * q_ + g.coord(v, piv[j]);
        r.add_mult(gl.point_of_vector(w), c_[p]);
    }
    return r;
}

PointMultiset PointMultiset::project(uint32_t point_idx) const {
    if (k_ < 2) throw std::invalid_argument("pg: projection needs k >= 2");
    const Geometry& g = *geom_;
    const Geometry& gl = Geometry::get(q_, k_ - 1);
    uint32_t vq = g.value_of_point(point_idx);
    // complete vq to a basis, then express points in that basis and drop the
    // vq coefficient
    std::vector<uint32_t> basis{vq};
    for (unsigned i = 0; i < k_ && basis.size() < k_; ++i) {
        uint32_t e = 1;
        for (unsigned j = 0; j + i + 1 < k_; ++j) e *= q_;
        if (linalg::rank(g, [&] { auto b = basis; b.push_back(e); return b; }()) > basis.size()) basis.push_back(e);
    }
    PointMultiset r(q_, k_ - 1);
    for (uint32_t p = 0; p < g.num_points(); ++p) {
        if (!c_[p] || p == point_idx) continue;
        auto co = linalg::coords_in_basis(g, basis, g.value_of_point(p));
        if (!co) throw std::logic_error("pg: projection basis incomplete");
        uint32_t w = 0;
        for (unsigned j = 1; j < k_; ++j) w = w * q_ + (*co)[j];
        r.add_mult(gl.point_of_vector(w), c_[p]);
    }
    return r;
}

PointMultiset PointMultiset::scale(uint32_t s) const {
    PointMultiset r(q_, k_);
    for (uint32_t i = 0; i < c_.size(); ++i)
        if (c_[i]) r.set_mult(i, c_[i] * s);
    return r;
}

PointMultiset PointMultiset::added(const PointMultiset& o) const {
    if (o.q_ != q_ || o.k_ != k_) throw std::invalid_argument("pg: space mismatch");
    PointMultiset r(q_, k_);
    for (uint32_t i = 0; i < c_.size(); ++i)
        if (c_[i] + o.c_[i]) r.set_mult(i, c_[i] + o.c_[i]);
    return r;
}

PointMultiset PointMultiset::sub_checked(const PointMultiset& o) const {
    if (o.q_ != q_ || o.k_ != k_) throw std::invalid_argument("pg: space mismatch");
    PointMultiset r(q_, k_);
    for (uint32_t i = 0; i < c_.size(); ++i) {
        if (o.c_[i] > c_[i])
            throw std::domain_error("pg: subtraction negative at point " + std::to_string(i));
        if (c_[i] - o.c_[i]) r.set_mult(i, c_[i] - o.c_[i]);
    }
    return r;
}

PointMultiset PointMultiset::direct_sum(const PointMultiset& a, const PointMultiset& b) {
    if (a.q_ != b.q_) throw std::invalid_argument("pg: field mismatch in direct sum");
    unsigned q = a.q_, k = a.k_ + b.k_;
    const Geometry& g = Geometry::get(q, k);
    const Geometry& gb = b.geom();
    PointMultiset r(q, k);
    uint32_t shift = 1;
    for (unsigned i = 0; i < b.k_; ++i) shift *= q;
    for (uint32_t i = 0; i < a.c_.size(); ++i)
        if (a.c_[i]) r.add_mult(g.point_of_vector(a.geom().value_of_point(i) * shift), a.c_[i]);
    for (uint32_t i = 0; i < b.c_.size(); ++i)
        if (b.c_[i]) r.add_mult(g.point_of_vector(gb.value_of_point(i)), b.c_[i]);
    return r;
}

PointMultiset PointMultiset::spanned_part() const {
    Subspace s = span();
    if (s.dim() == k_) return *this;
    return restrict_renumbered(s);
}

uint64_t PointMultiset::gamma(unsigned i) const {
    if (i == 0 || i > k_) throw std::invalid_argument("pg: gamma index out of range");
    if (i == k_) return cardinality();
    if (i == 1) return gamma1();
    if (i == k_ - 1) {
        uint64_t best = 0;
        for (int64_t h : all_hyperplane_mults(*this)) best = std::max<uint64_t>(best, h);
        return best;
    }
    // exhaustive i-space enumeration; intended for small parameters only
    uint64_t best = 0;
    struct Rec {
        const PointMultiset* m;
        uint64_t* best;
        unsigned target;
        void go(Subspace s, uint32_t min_pt) {
            const Geometry& g = m->geom();
            if (s.dim() == target) {
                *best = std::max(*best, m->multiplicity(s));
                return;
            }
            for (uint32_t p = min_pt; p < g.num_points(); ++p) {
                if (s.contains_vector(g.value_of_point(p))) continue;
                Subspace t = s;
                t.insert_vector(g.value_of_point(p));
                go(t, p + 1);
            }
        }
    };
    if (geom_->num_points() > 700) throw std::invalid_argument("pg: gamma(i) enumeration too large");
    Rec rec{this, &best, i};
    rec.go(Subspace(q_, k_), 0);
    return best;
}

std::string PointMultiset::to_text() const {
    std::ostringstream os;
    os << q_ << " " << k_ << "\n";
    const FieldSpec& f = geom_->field();
    for (uint32_t i = 0; i < c_.size(); ++i) {
        if (!c_[i]) continue;
        uint32_t v = geom_->value_of_point(i);
        for (unsigned j = 0; j < k_; ++j) os << f.symbol(geom_->coord(v, j));
        os << ":" << c_[i] << "\n";
    }
    return os.str();
}

PointMultiset PointMultiset::from_text(const std::string& text) {
    std::istringstream is(text);
    unsigned q, k;
    if (!(is >> q >> k)) throw std::invalid_argument("pg: bad multiset header");
    PointMultiset m(q, k);
    const Geometry& g = m.geom();
    const FieldSpec& f = g.field();
    std::string line;
    std::getline(is, line);
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        auto colon = line.find(':');
        if (colon == std::string::npos || colon != k) throw std::invalid_argument("pg: bad multiset line: " + line);
        uint32_t v = 0;
        for (unsigned j = 0; j < k; ++j) v = v * q + f.parse_symbol(line[j]);
        uint32_t mult = static_cast<uint32_t>(std::stoul(line.substr(colon + 1)));
        m.add_mult(g.point_of_vector(v), mult);
    }
    return m;
}

// ---------------------------------------------------------------------------
// constructions

PointMultiset chi_subspace(const Subspace& s, unsigned ambient_k) {
    PointMultiset m(s.q(), ambient_k);
    for (uint32_t p : s.points()) m.set_mult(p, 1);
    return m;
}

PointMultiset chi_point(unsigned q, unsigned k, uint32_t point_idx) {
    PointMultiset m(q, k);
    m.set_mult(point_idx, 1);
    return m;
}

PointMultiset affine_space_multiset(unsigned q, unsigned dim) {
    if (dim == 0) throw std::invalid_argument("pg: affine multiset needs dim >= 1");
    const Geometry& g = Geometry::get(q, dim);
    PointMultiset m(q, dim);
    for (uint32_t p = 0; p < g.num_points(); ++p)
        if (g.coord(g.value_of_point(p), 0) != 0) m.set_mult(p, 1);
    return m;
}

PointMultiset projective_base(unsigned n, unsigned q) {
    if (n < 3) throw std::invalid_argument("pg: projective base needs n >= 3");
    unsigned k = n - 1;
    const Geometry& g = Geometry::get(q, k);
    PointMultiset m(q, k);
    uint32_t ones = 0;
    for (unsigned i = 0; i < k; ++i) {
        uint32_t e = 1;
        for (unsigned j = 0; j + i + 1 < k; ++j) e *= q;
        ones = g.vadd(ones, e);
        m.add_mult(g.point_of_vector(e), 1);
    }
    m.add_mult(g.point_of_vector(ones), 1);
    return m;
}

StructureTag classify_structure(const PointMultiset& m) {
    StructureTag tag;
    if (m.cardinality() == 0) return tag;
    Subspace s = m.span();
    auto supp = m.support();
    uint32_t c0 = m.mult(supp[0]);
    bool equal = true;
    for (uint32_t p : supp)
        if (m.mult(p) != c0) { equal = false; break; }

    if (equal && supp.size() == gauss_count(s.dim(), m.q())) {
        tag.kind = StructureTag::SimplexMultiple;
        tag.scalar = c0;
        tag.space = s;
        return tag;
    }
    if (equal && s.dim() >= 2) {
        // candidate affine multiple: the zero points of the span must form a
        // hyperplane of the span
        std::vector<uint32_t> zeros;
        for (uint32_t p : s.points())
            if (m.mult(p) == 0) zeros.push_back(p);
        if (zeros.size() == gauss_count(s.dim() - 1, m.q())) {
            Subspace e = Subspace::from_points(m.geom(), zeros);
            if (e.dim() == s.dim() - 1) {
                tag.kind = StructureTag::AffineMultiple;
                tag.scalar = c0;
                tag.space = s;
                tag.minus = e;
                return tag;
            }
        }
    }
    if (equal && c0 == 1 && supp.size() >= 3 && s.dim() == supp.size() - 1) {
        const Geometry& g = m.geom();
        bool base = true;
        for (size_t drop = 0; drop < supp.size() && base; ++drop) {
            std::vector<uint32_t> rest;
            for (size_t i = 0; i < supp.size(); ++i)
                if (i != drop) rest.push_back(g.value_of_point(supp[i]));
            if (linalg::rank(g, rest) != supp.size() - 1) base = false;
        }
        if (base) {
            tag.kind = StructureTag::ProjectiveBase;
            tag.base_size = static_cast<uint32_t>(supp.size());
            tag.space = s;
            return tag;
        }
    }
    return tag;
}

Rational lower_bound_space_mult(unsigned q, unsigned k, unsigned l, long long n, long long s) {
    if (l < 1 || l + 2 > k) throw std::invalid_argument("pg: need 1 <= l <= k-2");
    long long pw = 1;
    for (unsigned i = 0; i + l + 1 < k; ++i) pw *= q;
    Rational ns(n - s);
    return Rational(s) - ns / Rational(q - 1) + ns / Rational(pw * (q - 1));
}

std::pair<Rational, Rational> special_point_mult(unsigned q, unsigned r, unsigned l, unsigned k) {
    if (l >= r || k < 2) throw std::invalid_argument("pg: need 0 <= l < r and k >= 2");
    auto qpow = [&](long long e) -> Rational {
        Rational res(1);
        for (long long i = 0; i < e; ++i) res = res * Rational(q);
        for (long long i = 0; i > e; --i) res = res / Rational(q);
        return res;
    };
    Rational first = qpow(l);
    Rational second = qpow(r) - (qpow(l) - qpow(2 + static_cast<long long>(r) - static_cast<long long>(k))) / Rational(q - 1);
    return {first, second};
}

}  // namespace divis
