#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace divis {

// Arithmetic for a small finite field F_q, q = p^e <= 16.
//
// Elements are indices 0..q-1.  For extension fields the index is read as a
// polynomial over F_p in little-endian base-p digits, reduced modulo a fixed
// irreducible polynomial.  For q = 4 the modulus is x^2 + x + 1, so the
// element map is (0, 1, a, a^2=a+1) <-> (0, 1, 2, 3).
class FieldSpec {
  public:
    static const FieldSpec& get(unsigned q);

    unsigned q() const { return q_; }
    unsigned p() const { return p_; }
    unsigned e() const { return e_; }

    uint8_t add(uint8_t a, uint8_t b) const { return add_[a * q_ + b]; }
    uint8_t sub(uint8_t a, uint8_t b) const { return sub_[a * q_ + b]; }
    uint8_t mul(uint8_t a, uint8_t b) const { return mul_[a * q_ + b]; }
    uint8_t neg(uint8_t a) const { return sub_[a]; /* 0 - a */ }
    uint8_t inv(uint8_t a) const;
    uint8_t div(uint8_t a, uint8_t b) const { return mul(a, inv(b)); }

    // x -> x^(p^j), 0 <= j < e.
    uint8_t frobenius(uint8_t a, unsigned j) const;

    // Element symbols used in all text formats: "0","1",... and for q = 4
    // the letters a = 2, b = a^2 = 3.
    char symbol(uint8_t a) const { return symbols_[a]; }
    uint8_t parse_symbol(char c) const;

  private:
    explicit FieldSpec(unsigned q);

    unsigned q_, p_, e_;
    std::vector<uint8_t> add_, sub_, mul_, inv_, frob_;  // frob_ is one step x->x^p
    std::string symbols_;
};

}  // namespace divis
