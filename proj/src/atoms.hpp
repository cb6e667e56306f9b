#pragma once

#include "pg.hpp"

namespace divis {

// Sporadic divisible multisets used as witness building blocks where no
// direct construction from simplices, affine spaces and projective bases
// exists.  Stored as matrix text; found once by exhaustive/orbit search and
// validated by the test suite.
const char* atom_matrix_text(unsigned q, uint64_t delta, unsigned n, unsigned gamma1);

PointMultiset atom_multiset(unsigned q, uint64_t delta, unsigned n, unsigned gamma1);
bool atom_available(unsigned q, uint64_t delta, unsigned n, unsigned gamma1);

}  // namespace divis
