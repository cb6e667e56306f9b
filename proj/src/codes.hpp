#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "canon.hpp"
#include "pg.hpp"

namespace divis {

// A k x n generator matrix over F_q.  Zero columns are permitted; the
// effective length is the number of nonzero columns.
class GeneratorMatrix {
  public:
    GeneratorMatrix(unsigned q, unsigned k, unsigned n);

    unsigned q() const { return q_; }
    unsigned k() const { return k_; }
    unsigned n() const { return n_; }

    uint8_t at(unsigned r, unsigned c) const { return e_[r * n_ + c]; }
    void set(unsigned r, unsigned c, uint8_t v) { e_[r * n_ + c] = v; }

    unsigned effective_length() const;
    bool full_rank() const;

    std::string to_text() const;
    static GeneratorMatrix from_text(const std::string& text);

    bool operator==(const GeneratorMatrix& o) const {
        return q_ == o.q_ && k_ == o.k_ && n_ == o.n_ && e_ == o.e_;
    }

  private:
    unsigned q_, k_, n_;
    std::vector<uint8_t> e_;
};

struct WeightEnumerator {
    std::map<uint64_t, uint64_t> coeff;  // weight -> count, includes A_0
    uint64_t total() const;
    bool operator==(const WeightEnumerator& o) const { return coeff == o.coeff; }
};

// Geometric correspondence.
PointMultiset to_multiset(const GeneratorMatrix& g);
GeneratorMatrix from_multiset(const PointMultiset& m);

// Matrix-level constructions that stay usable when k is too large for the
// dense geometry (witnesses can span dozens of dimensions).
GeneratorMatrix matrix_direct_sum(const GeneratorMatrix& a, const GeneratorMatrix& b);
GeneratorMatrix matrix_repeat(const GeneratorMatrix& g, unsigned c);  // every column c times

// (effective length, maximum column multiplicity), any k.
std::pair<unsigned, uint32_t> column_stats(const GeneratorMatrix& g);

// Exact weight histogram over all q^k codewords.  Computed by a hyperplane
// sweep on the column multiset; the direct codeword enumeration is kept for
// cross-checks and refuses k beyond the budget.
WeightEnumerator weight_distribution(const GeneratorMatrix& g);
WeightEnumerator weight_distribution_bruteforce(const GeneratorMatrix& g, uint64_t max_words = 1ull << 26);

bool is_divisible_code(const GeneratorMatrix& g, uint64_t delta);

// Semilinear canonical form: invariant under column permutation, column
// scaling, row operations and field automorphisms; distinct for inequivalent
// codes.  The canonical matrix lists the canonical multiset's columns in
// point order (zero columns are dropped).
struct CanonicalForm {
    GeneratorMatrix matrix;
    std::vector<uint32_t> canonical_counts;
    std::vector<uint32_t> frame;  // witness basis (new coordinate i <- beta_i)
    unsigned frob_exp = 0;
    bool operator==(const CanonicalForm& o) const {
        return canonical_counts == o.canonical_counts && matrix.q() == o.matrix.q() && matrix.k() == o.matrix.k();
    }
};
CanonicalForm canonical_form(const GeneratorMatrix& g);

// Product of weight enumerators = enumerator of the direct sum.
WeightEnumerator we_product(const WeightEnumerator& a, const WeightEnumerator& b);

// A_8 values realizable by binary codes with nonzero weights in {8,16,24}
// spanned by weight-8 codewords, per the classification of the indecomposable
// blocks: the empty code, one block, two blocks of maximum weight 8, or a
// maximum-weight-16 block with a maximum-weight-8 block.
std::set<uint64_t> a8_reachable_set();

}  // namespace divis
