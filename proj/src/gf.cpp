#include "gf.hpp"

#include <map>
#include <memory>
#include <mutex>

namespace divis {

namespace {

bool is_prime(unsigned n) {
    if (n < 2) return false;
    for (unsigned d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Irreducible monic moduli over F_p, little-endian coefficient lists
// including the leading 1.  Only prime powers up to 16 are needed.
std::vector<uint8_t> modulus_for(unsigned p, unsigned e) {
    if (p == 2) {
        if (e == 2) return {1, 1, 1};              // x^2+x+1
        if (e == 3) return {1, 1, 0, 1};           // x^3+x+1
        if (e == 4) return {1, 1, 0, 0, 1};        // x^4+x+1
    }
    if (p == 3 && e == 2) return {1, 0, 1};        // x^2+1
    throw std::invalid_argument("gf: unsupported extension field");
}

}  // namespace

FieldSpec::FieldSpec(unsigned q) : q_(q) {
    unsigned p = 0, e = 0;
    for (unsigned cand = 2; cand <= q; ++cand) {
        if (!is_prime(cand)) continue;
        unsigned pw = cand, deg = 1;
        while (pw < q) pw *= cand, ++deg;
        if (pw == q) { p = cand; e = deg; break; }
    }
    if (p == 0 || q > 16) throw std::invalid_argument("gf: q must be a prime power <= 16");
    p_ = p;
    e_ = e;

    // Polynomial representation: index = sum coeff_i * p^i.
    auto digits = [&](uint8_t a) {
        std::array<unsigned, 5> d{};
        for (unsigned i = 0; i < e_; ++i) { d[i] = a % p_; a = static_cast<uint8_t>(a / p_); }
        return d;
    };
    auto undigits = [&](const std::array<unsigned, 5>& d) {
        unsigned v = 0;
        for (unsigned i = e_; i-- > 0;) v = v * p_ + d[i];
        return static_cast<uint8_t>(v);
    };

    add_.assign(q_ * q_, 0);
    sub_.assign(q_ * q_, 0);
    mul_.assign(q_ * q_, 0);
    for (unsigned a = 0; a < q_; ++a) {
        auto da = digits(static_cast<uint8_t>(a));
        for (unsigned b = 0; b < q_; ++b) {
            auto db = digits(static_cast<uint8_t>(b));
            std::array<unsigned, 5> s{}, m{};
            for (unsigned i = 0; i < e_; ++i) {
                s[i] = (da[i] + db[i]) % p_;
                m[i] = (da[i] + p_ - db[i]) % p_;
            }
            add_[a * q_ + b] = undigits(s);
            sub_[a * q_ + b] = undigits(m);
        }
    }

    if (e_ == 1) {
        for (unsigned a = 0; a < q_; ++a)
            for (unsigned b = 0; b < q_; ++b) mul_[a * q_ + b] = static_cast<uint8_t>(a * b % p_);
    } else {
        auto mod = modulus_for(p_, e_);
        for (unsigned a = 0; a < q_; ++a) {
            auto da = digits(static_cast<uint8_t>(a));
            for (unsigned b = 0; b < q_; ++b) {
                auto db = digits(static_cast<uint8_t>(b));
                std::array<unsigned, 9> prod{};
                for (unsigned i = 0; i < e_; ++i)
                    for (unsigned j = 0; j < e_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
                for (unsigned d = 2 * e_ - 2; d >= e_ && d < 9; --d) {
                    unsigned c = prod[d];
                    if (c == 0) continue;
                    prod[d] = 0;
                    for (unsigned i = 0; i < e_; ++i)
                        prod[d - e_ + i] = (prod[d - e_ + i] + c * (p_ - mod[i])) % p_;
                }
                std::array<unsigned, 5> r{};
                for (unsigned i = 0; i < e_; ++i) r[i] = prod[i];
                mul_[a * q_ + b] = undigits(r);
            }
        }
    }

    inv_.assign(q_, 0);
    for (unsigned a = 1; a < q_; ++a)
        for (unsigned b = 1; b < q_; ++b)
            if (mul_[a * q_ + b] == 1) { inv_[a] = static_cast<uint8_t>(b); break; }

    frob_.assign(q_, 0);
    for (unsigned a = 0; a < q_; ++a) {
        uint8_t r = 1;
        for (unsigned i = 0; i < p_; ++i) r = mul_[r * q_ + a];
        frob_[a] = r;  // a^p, with frob_[0] = 0 handled by the loop (r ends as 0)
    }

    if (q_ == 4)
        symbols_ = "01ab";
    else
        symbols_ = std::string("0123456789abcdef").substr(0, q_);
}

uint8_t FieldSpec::inv(uint8_t a) const {
    if (a == 0) throw std::domain_error("gf: inverse of zero");
    return inv_[a];
}

uint8_t FieldSpec::frobenius(uint8_t a, unsigned j) const {
    if (j >= e_) throw std::invalid_argument("gf: frobenius exponent out of range");
    uint8_t r = a;
    for (unsigned i = 0; i < j; ++i) r = frob_[r];
    return r;
}

uint8_t FieldSpec::parse_symbol(char c) const {
    auto pos = symbols_.find(c);
    if (pos == std::string::npos) throw std::invalid_argument(std::string("gf: bad element symbol '") + c + "'");
    return static_cast<uint8_t>(pos);
}

const FieldSpec& FieldSpec::get(unsigned q) {
    static std::mutex mu;
    static std::map<unsigned, std::unique_ptr<FieldSpec>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(q);
    if (it == cache.end()) it = cache.emplace(q, std::unique_ptr<FieldSpec>(new FieldSpec(q))).first;
    return *it->second;
}

}  // namespace divis
