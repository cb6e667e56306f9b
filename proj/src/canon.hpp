#pragma once

#include <cstdint>
#include <vector>

#include "pg.hpp"

namespace divis {

// Canonical form of a multiset of points under the semilinear group
// PGammaL(k,q): the lexicographically largest multiplicity signature over all
// ordered bases and field automorphisms.  Signatures are read off in the
// nested-flag point order of Geometry, so the canonical counts vector is
// directly comparable between multisets.
//
// The witness records new coordinates: with basis vectors beta_1..beta_k
// (beta_i is the basis vector of NEW coordinate i) and Frobenius exponent s,
// canonical(x_1..x_k) = M(frob^s(sum_i x_i beta_i)).
struct CanonResult {
    std::vector<uint32_t> counts;
    std::vector<uint32_t> frame;  // beta_1..beta_k, packed vectors
    unsigned frob_exp = 0;
    uint64_t nodes = 0;
};

struct CanonBudgetExceeded : std::runtime_error {
    CanonBudgetExceeded() : std::runtime_error("canonicalization node budget exceeded") {}
};

CanonResult canonicalize_multiset(const PointMultiset& m, uint64_t node_limit = 400000000ull);

// Packed canonical counts usable as a hash key.
std::vector<uint32_t> canonical_counts(const PointMultiset& m);

bool multisets_equivalent(const PointMultiset& a, const PointMultiset& b);

// Direct backtracking equivalence test for spanning multisets of the same
// geometry.  Much cheaper than comparing canonical forms when the two are
// actually equivalent, which is the common case during census deduplication.
bool multiset_iso(const PointMultiset& a, const PointMultiset& b);

// Precomputed target-side data for repeated tests against the same multiset.
struct IsoTarget {
    PointMultiset m;
    std::vector<uint64_t> inv;
    std::vector<uint64_t> inv_sorted;
    explicit IsoTarget(PointMultiset mm);
};
bool multiset_iso_to(const PointMultiset& a, const IsoTarget& b);

// Cheap equivalence invariant (cardinality, spectrum and multiplicity
// histograms) for bucketing.
uint64_t iso_invariant_hash(const PointMultiset& m);

}  // namespace divis
