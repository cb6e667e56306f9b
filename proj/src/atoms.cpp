#include "atoms.hpp"

#include "codes.hpp"

namespace divis {

namespace {

struct AtomEntry {
    unsigned q;
    uint64_t delta;
    unsigned n;
    unsigned gamma1;
    const char* text;
};

// Projective (gamma_1 = 1) divisible sets without a closed-form construction
// in this code base; produced by tools/setsearch (Singer-orbit unions and
// simulated annealing) and checked by tests/test_lengths.cpp.
const AtomEntry kAtoms[] = {
    {2, 4, 17, 1,
     "2 7 17\n"
     "00000000011111111\n"
     "01111111100001111\n"
     "00000111100110011\n"
     "00001011111000101\n"
     "10001100101001011\n"
     "00111000110010011\n"
     "11011001101110111\n"},
    {2, 4, 18, 1,
     "2 7 18\n"
     "000000000011111111\n"
     "000000111100001111\n"
     "000111011100010001\n"
     "001001001100110110\n"
     "010010010111000011\n"
     "000111010000010111\n"
     "111010111101100110\n"},
    {2, 4, 19, 1,
     "2 7 19\n"
     "0000000111111111111\n"
     "0001111000011111111\n"
     "1110111011101111111\n"
     "0011011100000000111\n"
     "1100101100110111011\n"
     "1101001001111011101\n"
     "0111010000011001001\n"},
    {2, 4, 20, 1,
     "2 7 20\n"
     "00000000000011111111\n"
     "00000000111100001111\n"
     "00011111000100010001\n"
     "00100001011001100011\n"
     "01001110101010101111\n"
     "10110110111011010100\n"
     "11110010101101111000\n"},
    {2, 8, 50, 1,
     "2 8 50\n"
     "00000000000000000000000000111111111111111111111111\n"
     "00000000001111111111111111000000001111111111111111\n"
     "00111111110000111111111111000011110000000011111111\n"
     "01000000010111000000000111000100010000011100000111\n"
     "11000000111001000011111001011001100000001101111011\n"
     "11001111111111001100111111001100110011100110011001\n"
     "11000011000110010101011001011010010101111100101000\n"
     "11010101010011111001101011111101010010111010111110\n"},
    {2, 8, 51, 1,
     "2 8 51\n"
     "000000000000000000000000000111111111111111111111111\n"
     "000000000000000111111111111000000000000111111111111\n"
     "000000000111111000000111111000000111111000000111111\n"
     "000011111000001000111000111000111000111000001011111\n"
     "011111111001111000000011011001001001001000110000011\n"
     "100000011010011011001001101110010010110111000000111\n"
     "100100101010100111010100100010100001111001010011101\n"
     "101101111110111101100111101110001111011011100001000\n"},
    {0, 0, 0, 0, nullptr},
};

}  // namespace

const char* atom_matrix_text(unsigned q, uint64_t delta, unsigned n, unsigned gamma1) {
    for (const auto& a : kAtoms)
        if (a.text && a.q == q && a.delta == delta && a.n == n && a.gamma1 == gamma1) return a.text;
    return nullptr;
}

bool atom_available(unsigned q, uint64_t delta, unsigned n, unsigned gamma1) {
    return atom_matrix_text(q, delta, n, gamma1) != nullptr;
}

PointMultiset atom_multiset(unsigned q, uint64_t delta, unsigned n, unsigned gamma1) {
    const char* t = atom_matrix_text(q, delta, n, gamma1);
    if (!t) throw std::invalid_argument("atoms: no stored example for these parameters");
    return to_multiset(GeneratorMatrix::from_text(t));
}

}  // namespace divis
