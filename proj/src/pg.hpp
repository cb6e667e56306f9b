#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gf.hpp"

namespace divis {

// Points of PG(k-1,q) as normalized vectors (first nonzero coordinate = 1).
// A vector is packed into a uint32_t "value": value = sum_i c_i * q^(k-i),
// i.e. coordinate 1 is the most significant digit.  Point indices enumerate
// the normalized values in ascending order, which makes the point list of
// the subspace <e_j,...,e_k> a prefix of the enumeration for every j.
class Geometry {
  public:
    static const Geometry& get(unsigned q, unsigned k);

    unsigned q() const { return q_; }
    unsigned k() const { return k_; }
    const FieldSpec& field() const { return *field_; }
    uint32_t num_points() const { return npts_; }
    uint32_t num_values() const { return nvals_; }  // q^k

    uint32_t value_of_point(uint32_t idx) const { return pval_[idx]; }
    int32_t point_of_value(uint32_t v) const { return pofv_[v]; }  // -1 if not normalized
    uint32_t point_of_vector(uint32_t v) const;                    // normalizes first

    uint8_t coord(uint32_t value, unsigned i) const { return static_cast<uint8_t>(value / pw_[k_ - 1 - i] % q_); }
    uint32_t vadd(uint32_t a, uint32_t b) const;
    uint32_t vsub(uint32_t a, uint32_t b) const;
    uint32_t vsmul(uint8_t lam, uint32_t a) const;
    uint8_t vdot(uint32_t a, uint32_t b) const;
    uint32_t vfrob(uint32_t a, unsigned j) const;  // coordinate-wise Frobenius
    uint32_t normalize(uint32_t v) const;          // v != 0

  private:
    Geometry(unsigned q, unsigned k);

    unsigned q_, k_;
    const FieldSpec* field_;
    uint32_t npts_, nvals_;
    std::vector<uint32_t> pw_;    // q^0..q^k
    std::vector<uint32_t> pval_;  // point idx -> value
    std::vector<int32_t> pofv_;   // value -> point idx
};

// Row-reduced echelon basis of a linear subspace; the echelon form is the
// unique canonical basis of the row space.
class Subspace {
  public:
    Subspace(unsigned q, unsigned k) : q_(q), k_(k) {}  // zero space

    static Subspace full(unsigned q, unsigned k);
    static Subspace from_vectors(unsigned q, unsigned k, const std::vector<uint32_t>& vecs);
    static Subspace from_points(const Geometry& g, const std::vector<uint32_t>& point_idxs);

    unsigned q() const { return q_; }
    unsigned ambient_k() const { return k_; }
    unsigned dim() const { return static_cast<unsigned>(basis_.size()); }
    const std::vector<uint32_t>& basis() const { return basis_; }

    bool contains_vector(uint32_t v) const;
    bool contains(const Subspace& other) const;
    void insert_vector(uint32_t v);  // extend span

    // All point indices of the subspace, ascending.
    std::vector<uint32_t> points() const;

    bool operator==(const Subspace& o) const { return q_ == o.q_ && k_ == o.k_ && basis_ == o.basis_; }

  private:
    unsigned q_, k_;
    std::vector<uint32_t> basis_;  // RREF rows, pivots left to right
};

// Exact rational arithmetic for the subspace-multiplicity bounds.
struct Rational {
    long long num = 0, den = 1;
    Rational() = default;
    Rational(long long n) : num(n), den(1) {}
    Rational(long long n, long long d);
    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational operator/(const Rational& o) const;
    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
    bool is_integer() const { return den == 1; }
    std::string str() const;
};

// A multiset of points in PG(k-1,q), the central object.
class PointMultiset {
  public:
    PointMultiset(unsigned q, unsigned k);

    unsigned q() const { return q_; }
    unsigned k() const { return k_; }
    const Geometry& geom() const { return *geom_; }

    uint32_t mult(uint32_t point_idx) const { return c_[point_idx]; }
    void set_mult(uint32_t point_idx, uint32_t m);
    void add_mult(uint32_t point_idx, int64_t delta);

    uint64_t cardinality() const { return card_; }
    uint32_t gamma1() const;
    uint32_t support_size() const;
    std::vector<uint32_t> support() const;
    const std::vector<uint32_t>& counts() const { return c_; }

    // gamma_i: maximum multiplicity over all i-dimensional subspaces.
    uint64_t gamma(unsigned i) const;

    uint64_t multiplicity(const Subspace& s) const;
    uint64_t hyperplane_mult(uint32_t dual_value) const;  // hyperplane = ker(<h,.>)

    bool is_divisible(uint64_t delta) const;
    std::map<uint64_t, uint64_t> spectrum() const;             // a_i
    std::vector<int64_t> hyperplane_mults() const;             // indexed by dual point
    std::map<uint64_t, uint64_t> point_distribution() const;   // lambda_i, including lambda_0
    bool standard_equations_check() const;

    Subspace span() const;
    bool is_spanning() const;

    PointMultiset restrict_to(const Subspace& s) const;           // same ambient space
    PointMultiset restrict_renumbered(const Subspace& s) const;   // re-coordinatized to PG(dim-1,q)
    PointMultiset project(uint32_t point_idx) const;              // projection through a point
    PointMultiset scale(uint32_t c) const;
    PointMultiset added(const PointMultiset& o) const;
    PointMultiset sub_checked(const PointMultiset& o) const;      // throws with offending point
    static PointMultiset direct_sum(const PointMultiset& a, const PointMultiset& b);

    // Keep only the span, re-coordinatized; identity when already spanning.
    PointMultiset spanned_part() const;

    bool operator==(const PointMultiset& o) const { return q_ == o.q_ && k_ == o.k_ && c_ == o.c_; }

    std::string to_text() const;
    static PointMultiset from_text(const std::string& text);

  private:
    unsigned q_, k_;
    const Geometry* geom_;
    std::vector<uint32_t> c_;
    uint64_t card_ = 0;
};

// Characteristic multisets.
PointMultiset chi_subspace(const Subspace& s, unsigned ambient_k);
PointMultiset chi_point(unsigned q, unsigned k, uint32_t point_idx);
PointMultiset affine_space_multiset(unsigned q, unsigned dim);  // chi_{K_dim \ K_{dim-1}} spanning PG(dim-1,q)
PointMultiset projective_base(unsigned n, unsigned q);          // B_n in PG(n-2,q)

// Structure detection for the classification claims.
struct StructureTag {
    enum Kind { SimplexMultiple, AffineMultiple, ProjectiveBase, Other } kind = Other;
    uint32_t scalar = 0;            // lambda resp. c
    std::optional<Subspace> space;  // K
    std::optional<Subspace> minus;  // E (AffineMultiple)
    uint32_t base_size = 0;         // n (ProjectiveBase)
};
StructureTag classify_structure(const PointMultiset& m);

// M(K) when all hyperplanes through the l-space K have cardinality s (exact),
// or a lower bound when they have cardinality at least s.
Rational lower_bound_space_mult(unsigned q, unsigned k, unsigned l, long long n, long long s);

// The two possible gamma_1 values of a q^r-divisible multiset of cardinality
// q^l*[r+1-l]_q + q^r spanning PG(k-1,q).
std::pair<Rational, Rational> special_point_mult(unsigned q, unsigned r, unsigned l, unsigned k);

namespace linalg {
// Small dense matrices over F_q with packed-row vectors of ambient width k.
// Rows are Geometry-packed values.
std::vector<uint32_t> rref(const Geometry& g, std::vector<uint32_t> rows);
unsigned rank(const Geometry& g, const std::vector<uint32_t>& rows);
// Solve coordinates of v in terms of the given independent basis vectors;
// returns coefficient per basis vector.
std::optional<std::vector<uint8_t>> coords_in_basis(const Geometry& g, const std::vector<uint32_t>& basis,
                                                    uint32_t v);
}  // namespace linalg

uint64_t gauss_count(unsigned k, unsigned q);  // [k]_q

}  // namespace divis
