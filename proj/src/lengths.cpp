#include "lengths.hpp"

#include <algorithm>
#include <sstream>

#include "atoms.hpp"

namespace divis {

uint64_t gauss(unsigned k, unsigned q) { return gauss_count(k, q); }

BaseSequence BaseSequence::make(unsigned q, unsigned r) {
    BaseSequence b;
    b.q = q;
    b.r = r;
    long long pw = 1;
    for (unsigned i = 0; i <= r; ++i) {
        b.s.push_back(pw * static_cast<long long>(gauss_count(r - i + 1, q)));
        pw *= q;
    }
    return b;
}

Expansion sqr_adic_expansion(long long n, unsigned q, unsigned r) {
    BaseSequence b = BaseSequence::make(q, r);
    Expansion e;
    e.n = n;
    e.q = q;
    e.r = r;
    // peel digits: s_q(r,i)/q^i = [r-i+1]_q = 1 (mod q)
    long long rem = n;
    for (unsigned i = 0; i < r; ++i) {
        long long d = ((rem % q) + q) % q;
        e.digits.push_back(static_cast<int>(d));
        rem = (rem - d * static_cast<long long>(gauss_count(r - i + 1, q))) / q;
    }
    e.leading = rem;
    // identity check
    long long acc = e.leading * b.s[r];
    for (unsigned i = 0; i < r; ++i) acc += e.digits[i] * b.s[i];
    if (acc != n) throw std::logic_error("lengths: expansion identity violated");
    return e;
}

bool is_length_feasible(long long n, unsigned q, unsigned r) { return sqr_adic_expansion(n, q, r).feasible(); }

std::pair<uint64_t, uint64_t> ward_reduce(unsigned q, uint64_t delta) {
    if (delta == 0) throw std::invalid_argument("lengths: delta must be >= 1");
    unsigned p = FieldSpec::get(q).p();
    uint64_t ppow = 1, d = delta;
    while (d % p == 0) { d /= p; ppow *= p; }
    return {ppow, d};
}

std::pair<unsigned, bool> q_power_exponent(unsigned q, uint64_t p_power) {
    unsigned r = 0;
    uint64_t t = p_power;
    while (t % q == 0) { t /= q; ++r; }
    return {r, t == 1};
}

std::string expansion_json(const Expansion& e) {
    std::ostringstream os;
    os << "{\"n\":" << e.n << ",\"q\":" << e.q << ",\"r\":" << e.r << ",\"digits\":[";
    for (size_t i = 0; i < e.digits.size(); ++i) os << (i ? "," : "") << e.digits[i];
    os << "],\"leading\":" << e.leading << ",\"feasible\":" << (e.feasible() ? "true" : "false") << "}";
    return os.str();
}

// ---------------------------------------------------------------------------
// Gamma tables for q = 2 (main theorem) and witness constructions.

namespace {

bool in(std::initializer_list<long long> xs, long long n) {
    return std::find(xs.begin(), xs.end(), n) != xs.end();
}

std::optional<uint64_t> gamma2_table(uint64_t delta, long long n) {  // delta in {2,4,8}
    if (delta == 2) {
        if (n == 1) return std::nullopt;
        if (n == 2) return 2;
        return 1;  // n >= 3
    }
    if (delta == 4) {
        if (in({1, 2, 3, 5, 9}, n)) return std::nullopt;
        if (n == 7 || n == 8 || n >= 14) return 1;
        if (in({6, 10, 12, 13}, n)) return 2;
        if (n == 4 || n == 11) return 4;
    }
    if (delta == 8) {
        if (in({1, 2, 3, 4, 5, 6, 7, 9, 10, 11, 13, 17, 18, 19, 21, 25, 33}, n)) return std::nullopt;
        if (in({15, 16, 30, 31, 32, 45, 46, 47, 48, 49, 50, 51}, n) || n >= 60) return 1;
        if (in({14, 28, 29, 34, 36, 38, 40, 42, 43, 44, 52, 53, 54, 55, 56, 57, 58, 59}, n)) return 2;
        if (in({12, 20, 24, 26, 27, 35, 39, 41}, n)) return 4;
        if (in({8, 22, 23, 37}, n)) return 8;
    }
    throw std::logic_error("lengths: gamma table gap at n=" + std::to_string(n));
}

// Witnesses are assembled at matrix level: the ambient dimension of a direct
// sum of small pieces grows past what the dense geometry supports.
GeneratorMatrix simplex_mult(unsigned q, uint32_t lambda, unsigned dim) {
    return matrix_repeat(from_multiset(chi_subspace(Subspace::full(q, dim), dim)), lambda);
}

GeneratorMatrix base_matrix(unsigned n) {  // B_n as an (n-1) x n matrix
    GeneratorMatrix g(2, n - 1, n);
    for (unsigned i = 0; i < n - 1; ++i) {
        g.set(i, i, 1);
        g.set(i, n - 1, 1);
    }
    return g;
}

GeneratorMatrix affine_matrix(unsigned dim) { return from_multiset(affine_space_multiset(2, dim)); }

GeneratorMatrix witness4(long long n, uint64_t val);

GeneratorMatrix witness2(long long n, uint64_t val) {
    if (val == 2 && n == 2) return simplex_mult(2, 2, 1);
    if (val == 1 && n >= 3) return base_matrix(static_cast<unsigned>(n));
    throw std::logic_error("lengths: no witness rule (delta=2)");
}

// smallest-part-count decomposition of n over the given part sizes; prefers
// larger parts first for determinism
std::optional<std::vector<long long>> decompose(long long n, std::vector<long long> parts) {
    std::sort(parts.rbegin(), parts.rend());
    std::vector<int> cnt(static_cast<size_t>(n) + 1, -1);
    std::vector<long long> from(static_cast<size_t>(n) + 1, 0);
    cnt[0] = 0;
    for (long long v = 1; v <= n; ++v)
        for (long long p : parts) {
            if (p > v || cnt[v - p] < 0) continue;
            if (cnt[v] < 0 || cnt[v - p] + 1 < cnt[v]) { cnt[v] = cnt[v - p] + 1; from[v] = p; }
        }
    if (cnt[n] < 0) return std::nullopt;
    std::vector<long long> out;
    for (long long v = n; v > 0; v -= from[v]) out.push_back(from[v]);
    return out;
}

GeneratorMatrix atom_matrix(unsigned q, uint64_t delta, unsigned n) {
    return GeneratorMatrix::from_text(atom_matrix_text(q, delta, n, 1));
}

GeneratorMatrix witness4(long long n, uint64_t val) {
    if (val == 4) {
        if (n == 4) return simplex_mult(2, 4, 1);
        if (n == 11) return matrix_direct_sum(simplex_mult(2, 1, 3), simplex_mult(2, 4, 1));
    }
    if (val == 2) {
        if (n == 6) return simplex_mult(2, 2, 2);
        if (n == 10) return matrix_repeat(base_matrix(5), 2);
        if (n == 12) return matrix_repeat(base_matrix(6), 2);
        if (n == 13) return matrix_direct_sum(simplex_mult(2, 1, 3), simplex_mult(2, 2, 2));
    }
    if (val == 1) {
        auto part = [&](long long p) -> GeneratorMatrix {
            switch (p) {
                case 7: return simplex_mult(2, 1, 3);
                case 8: return affine_matrix(4);
                case 15: return simplex_mult(2, 1, 4);
                case 16: return affine_matrix(5);
                default: return atom_matrix(2, 4, static_cast<unsigned>(p));
            }
        };
        std::vector<long long> sizes{7, 8, 15, 16};
        for (long long a : {17, 18, 19, 20})
            if (atom_available(2, 4, static_cast<unsigned>(a), 1)) sizes.push_back(a);
        auto dec = decompose(n, sizes);
        if (dec) {
            GeneratorMatrix m = part((*dec)[0]);
            for (size_t i = 1; i < dec->size(); ++i) m = matrix_direct_sum(m, part((*dec)[i]));
            return m;
        }
    }
    throw std::logic_error("lengths: no witness rule (delta=4, n=" + std::to_string(n) + ")");
}

GeneratorMatrix witness8(long long n, uint64_t val) {
    if (val == 8) {
        GeneratorMatrix p8 = simplex_mult(2, 8, 1);
        if (n == 8) return p8;
        if (n == 22) return matrix_direct_sum(p8, simplex_mult(2, 2, 3));
        if (n == 23) return matrix_direct_sum(p8, simplex_mult(2, 1, 4));
        if (n == 37)
            return matrix_direct_sum(p8, matrix_direct_sum(simplex_mult(2, 1, 4), simplex_mult(2, 2, 3)));
    }
    if (val == 4) {
        if (n == 12) return simplex_mult(2, 4, 2);
        if (n == 27) return matrix_direct_sum(simplex_mult(2, 4, 2), simplex_mult(2, 1, 4));
        if (in({20, 24, 26}, n)) return matrix_repeat(witness4(n / 2, 2), 2);
        if (in({35, 39, 41}, n)) return matrix_direct_sum(witness8(n - 15, 4), simplex_mult(2, 1, 4));
    }
    if (val == 2) {
        if (n == 14) return simplex_mult(2, 2, 3);
        if (n % 2 == 0) return matrix_repeat(witness4(n / 2, gamma2_table(4, n / 2).value()), 2);
        return matrix_direct_sum(simplex_mult(2, 1, 4), witness8(n - 15, 2));
    }
    if (val == 1) {
        auto part = [&](long long p) -> GeneratorMatrix {
            switch (p) {
                case 15: return simplex_mult(2, 1, 4);
                case 16: return affine_matrix(5);
                case 31: return simplex_mult(2, 1, 5);
                case 32: return affine_matrix(6);
                default: return atom_matrix(2, 8, static_cast<unsigned>(p));
            }
        };
        std::vector<long long> sizes{15, 16, 31, 32};
        for (long long a : {49, 50, 51})
            if (atom_available(2, 8, static_cast<unsigned>(a), 1)) sizes.push_back(a);
        auto dec = decompose(n, sizes);
        if (dec) {
            GeneratorMatrix m = part((*dec)[0]);
            for (size_t i = 1; i < dec->size(); ++i) m = matrix_direct_sum(m, part((*dec)[i]));
            return m;
        }
    }
    throw std::logic_error("lengths: no witness rule (delta=8, n=" + std::to_string(n) + ")");
}

}  // namespace

std::optional<uint64_t> gamma_lookup_value(unsigned q, uint64_t delta, long long n) {
    if (q != 2) throw RequiresCensus("gamma_lookup covers q = 2 only; run the census for q = " + std::to_string(q));
    if (n <= 0) return n == 0 ? std::optional<uint64_t>(0) : std::nullopt;
    auto [ppow, d] = ward_reduce(q, delta);
    if (ppow > 8) throw RequiresCensus("gamma_lookup covers 2-power parts up to 8; run the census");
    if (n % static_cast<long long>(d) != 0) return std::nullopt;
    long long n0 = n / static_cast<long long>(d);
    std::optional<uint64_t> base;
    if (ppow == 1)
        base = 1;
    else
        base = gamma2_table(ppow, n0);
    if (!base) return std::nullopt;
    return *base * d;
}

GammaResult gamma_lookup(unsigned q, uint64_t delta, long long n) {
    GammaResult res;
    auto v = gamma_lookup_value(q, delta, n);
    auto [ppow, d] = ward_reduce(q, delta);
    unsigned r = q_power_exponent(q, ppow).first;
    if (!v) {
        res.infinite = true;
        if (n >= 0 && n % static_cast<long long>(d) == 0)
            res.certificate = sqr_adic_expansion(n / static_cast<long long>(d), q, r);
        return res;
    }
    res.value = *v;
    if (n == 0) return res;
    long long n0 = n / static_cast<long long>(d);
    uint64_t v0 = *v / d;
    GeneratorMatrix m = [&]() -> GeneratorMatrix {
        if (ppow == 1) {
            // 1-divisible: any independent point set works
            GeneratorMatrix id(2, static_cast<unsigned>(n0), static_cast<unsigned>(n0));
            for (long long i = 0; i < n0; ++i) id.set(static_cast<unsigned>(i), static_cast<unsigned>(i), 1);
            return id;
        }
        if (ppow == 2) return witness2(n0, v0);
        if (ppow == 4) return witness4(n0, v0);
        return witness8(n0, v0);
    }();
    if (d > 1) m = matrix_repeat(m, static_cast<unsigned>(d));
    res.witness = std::move(m);
    return res;
}

}  // namespace divis
