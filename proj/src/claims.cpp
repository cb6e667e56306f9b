#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "canon.hpp"
#include "census.hpp"

namespace divis {

namespace {

PointMultiset simplex_mult(unsigned q, uint32_t lambda, unsigned dim) {
    return chi_subspace(Subspace::full(q, dim), dim).scale(lambda);
}

std::string describe(const PointMultiset& m) { return m.to_text(); }

// distinct lines spanned by support point pairs
std::vector<Subspace> support_lines(const PointMultiset& m) {
    auto supp = m.support();
    const Geometry& g = m.geom();
    std::set<std::vector<uint32_t>> seen;
    std::vector<Subspace> lines;
    for (size_t i = 0; i < supp.size(); ++i)
        for (size_t j = i + 1; j < supp.size(); ++j) {
            Subspace L = Subspace::from_points(g, {supp[i], supp[j]});
            if (seen.insert(L.basis()).second) lines.push_back(std::move(L));
        }
    return lines;
}

std::vector<Subspace> support_planes(const PointMultiset& m) {
    auto supp = m.support();
    const Geometry& g = m.geom();
    std::set<std::vector<uint32_t>> seen;
    std::vector<Subspace> planes;
    for (size_t i = 0; i < supp.size(); ++i)
        for (size_t j = i + 1; j < supp.size(); ++j)
            for (size_t l = j + 1; l < supp.size(); ++l) {
                Subspace E = Subspace::from_points(g, {supp[i], supp[j], supp[l]});
                if (E.dim() != 3) continue;
                if (seen.insert(E.basis()).second) planes.push_back(std::move(E));
            }
    return planes;
}

bool contains_full_line(const PointMultiset& m, uint32_t min_mult) {
    for (const auto& L : support_lines(m)) {
        bool full = true;
        for (uint32_t p : L.points())
            if (m.mult(p) < min_mult) { full = false; break; }
        if (full) return true;
    }
    return false;
}

bool contains_full_plane(const PointMultiset& m) {
    for (const auto& E : support_planes(m)) {
        bool full = true;
        for (uint32_t p : E.points())
            if (m.mult(p) < 1) { full = false; break; }
        if (full) return true;
    }
    return false;
}

bool equiv_to(const PointMultiset& a, const PointMultiset& b) { return multisets_equivalent(a, b); }

// M with a point of maximum multiplicity reduced by `red`, restricted to its
// span
std::optional<PointMultiset> reduce_top_point(const PointMultiset& m, uint32_t red) {
    uint32_t best = 0, arg = 0;
    for (uint32_t p = 0; p < m.geom().num_points(); ++p)
        if (m.mult(p) > best) { best = m.mult(p); arg = p; }
    if (best < red) return std::nullopt;
    PointMultiset r = m;
    r.add_mult(arg, -static_cast<int64_t>(red));
    if (r.cardinality() == 0) return std::nullopt;
    return r.spanned_part();
}

// the cardinality-13 second structure: a triple point C joined to a
// projective base of size 5 by full lines
PointMultiset cone_over_b5() {
    const Geometry& g = Geometry::get(2, 5);
    PointMultiset m(2, 5);
    uint32_t c = 1u << 4;  // e_1
    m.set_mult(g.point_of_vector(c), 3);
    PointMultiset b5 = projective_base(5, 2);
    const Geometry& g4 = b5.geom();
    for (uint32_t p : b5.support()) {
        uint32_t v = g4.value_of_point(p);  // lives in the last 4 coordinates
        m.add_mult(g.point_of_vector(v), 1);
        m.add_mult(g.point_of_vector(v ^ c), 1);
    }
    return m;
}

const char* k17_line123_matrix =
    "2 5 17\n"
    "11111111000000000\n"
    "00011101100000011\n"
    "00001111001010101\n"
    "00000000000110011\n"
    "00000000000001111\n";

struct ClaimDef {
    const char* id;
    std::function<Verdict(CensusEngine&, const Budget&)> run;
};

Verdict pass() { return Verdict{Verdict::Pass, ""}; }
Verdict fail(const PointMultiset& m, const std::string& why) {
    return Verdict{Verdict::Fail, why + "\n" + describe(m)};
}
Verdict fail_msg(const std::string& why) { return Verdict{Verdict::Fail, why}; }

// the census classes must all satisfy pred; optionally also match the
// expected class list exactly
Verdict check_classes(CensusEngine& eng, unsigned q, uint64_t delta, unsigned n, unsigned cap, const Budget& b,
                      const std::function<bool(const PointMultiset&)>& pred,
                      const std::vector<PointMultiset>* exactly = nullptr) {
    bool complete = true;
    auto classes = eng.all_classes(q, delta, n, cap, b, &complete);
    if (!complete) return Verdict{Verdict::BudgetOut, "census incomplete"};
    for (const auto& m : classes)
        if (!pred(m)) return fail(m, "class violates the claimed structure");
    if (exactly) {
        if (classes.size() != exactly->size())
            return fail_msg("class count " + std::to_string(classes.size()) + " != expected " +
                            std::to_string(exactly->size()));
        for (const auto& want : *exactly) {
            bool found = false;
            for (const auto& got : classes)
                if (equiv_to(got, want)) { found = true; break; }
            if (!found) return fail(want, "expected class not found");
        }
    }
    return pass();
}

Verdict check_empty(CensusEngine& eng, unsigned q, uint64_t delta, unsigned n, unsigned cap, const Budget& b) {
    bool complete = true;
    auto classes = eng.all_classes(q, delta, n, cap, b, &complete);
    if (!classes.empty()) return fail(classes.front(), "unexpected multiset below the claimed bound");
    if (!complete) return Verdict{Verdict::BudgetOut, "census incomplete"};
    return pass();
}

bool all_mults_in(const PointMultiset& m, std::initializer_list<uint32_t> allowed) {
    for (uint32_t p = 0; p < m.geom().num_points(); ++p)
        if (std::find(allowed.begin(), allowed.end(), m.mult(p)) == allowed.end()) return false;
    return true;
}

uint64_t lambda_i(const PointMultiset& m, uint32_t i) {
    auto d = m.point_distribution();
    return d.count(i) ? d[i] : 0;
}

std::vector<ClaimDef> build_catalog() {
    std::vector<ClaimDef> cat;

    auto single_simplex = [](unsigned q, uint64_t delta, unsigned n, uint32_t lambda, unsigned dim) {
        return [=](CensusEngine& eng, const Budget& b) {
            std::vector<PointMultiset> want{simplex_mult(q, lambda, dim)};
            return check_classes(eng, q, delta, n, 0, b, [](const PointMultiset&) { return true; }, &want);
        };
    };

    cat.push_back({"2div-n2", single_simplex(2, 2, 2, 2, 1)});
    cat.push_back({"2div-n3", single_simplex(2, 2, 3, 1, 2)});
    cat.push_back({"4div-n4", single_simplex(2, 4, 4, 4, 1)});
    cat.push_back({"4div-n6", single_simplex(2, 4, 6, 2, 2)});
    cat.push_back({"4div-n7", single_simplex(2, 4, 7, 1, 3)});
    cat.push_back({"8div-n8", single_simplex(2, 8, 8, 8, 1)});
    cat.push_back({"8div-n12", single_simplex(2, 8, 12, 4, 2)});
    cat.push_back({"8div-n14", single_simplex(2, 8, 14, 2, 3)});
    cat.push_back({"8div-n15", single_simplex(2, 8, 15, 1, 4)});

    cat.push_back({"2div-n4", [](CensusEngine& eng, const Budget& b) {
        return check_classes(eng, 2, 2, 4, 0, b, [](const PointMultiset& m) {
            if (all_mults_in(m, {0, 2, 4})) return true;  // 2P1 + 2P2 (possibly equal)
            auto tag = classify_structure(m);
            return tag.kind == StructureTag::AffineMultiple && tag.scalar == 1 && tag.space->dim() == 3;
        });
    }});

    cat.push_back({"2div-n5", [](CensusEngine& eng, const Budget& b) {
        return check_classes(eng, 2, 2, 5, 0, b, [](const PointMultiset& m) {
            if (classify_structure(m).kind == StructureTag::ProjectiveBase) return true;
            auto rest = reduce_top_point(m, 2);
            return rest && classify_structure(*rest).kind == StructureTag::SimplexMultiple &&
                   classify_structure(*rest).scalar == 1 && rest->cardinality() == 3;
        });
    }});

    cat.push_back({"2div-n6", [](CensusEngine& eng, const Budget& b) {
        return check_classes(eng, 2, 2, 6, 0, b, [](const PointMultiset& m) {
            if (m.gamma1() >= 2) return true;
            auto tag = classify_structure(m);
            if (tag.kind == StructureTag::ProjectiveBase && tag.base_size == 6) return true;
            // two disjoint lines
            for (const auto& L : support_lines(m)) {
                bool full = true;
                for (uint32_t p : L.points()) full = full && m.mult(p) == 1;
                if (!full) continue;
                PointMultiset rest = m;
                for (uint32_t p : L.points()) rest.add_mult(p, -1);
                auto t2 = classify_structure(rest.spanned_part());
                if (t2.kind == StructureTag::SimplexMultiple && t2.scalar == 1 && rest.cardinality() == 3)
                    return true;
            }
            return false;
        });
    }});

    cat.push_back({"2div-n7", [](CensusEngine& eng, const Budget& b) {
        return check_classes(eng, 2, 2, 7, 0, b, [](const PointMultiset& m) {
            if (m.gamma1() >= 2) return true;
            if (contains_full_line(m, 1)) return true;
            auto tag = classify_structure(m);
            return tag.kind == StructureTag::ProjectiveBase && tag.base_size == 7;
        });
    }});

    auto affine_prop = [](unsigned r, unsigned n) {
        return [=](CensusEngine& eng, const Budget& b) {
            return check_classes(eng, 2, 1ull << r, n, 0, b, [=](const PointMultiset& m) {
                auto tag = classify_structure(m);
                if (tag.kind == StructureTag::SimplexMultiple && tag.scalar == n && tag.space->dim() == 1)
                    return true;
                if (tag.kind != StructureTag::AffineMultiple) return false;
                unsigned dimE = tag.minus->dim();
                return dimE >= 1 && dimE <= r + 1 && tag.scalar == (n >> dimE);
            });
        };
    };
    cat.push_back({"4div-n8", affine_prop(2, 8)});
    cat.push_back({"8div-n16", affine_prop(3, 16)});

    cat.push_back({"4div-n10", [](CensusEngine& eng, const Budget& b) {
        PointMultiset dbl_base = projective_base(5, 2).scale(2);
        return check_classes(eng, 2, 4, 10, 0, b, [&](const PointMultiset& m) {
            return m.gamma1() >= 4 || equiv_to(m, dbl_base);
        });
    }});

    cat.push_back({"4div-n10-mults", [](CensusEngine& eng, const Budget& b) {
        return check_classes(eng, 2, 4, 10, 0, b,
                             [](const PointMultiset& m) { return all_mults_in(m, {0, 2, 4, 6}); });
    }});

    cat.push_back({"4div-n11", [](CensusEngine& eng, const Budget& b) {
        return check_classes(eng, 2, 4, 11, 0, b, [](const PointMultiset& m) {
            auto rest = reduce_top_point(m, 4);
            if (!rest) return false;
            auto tag = classify_structure(*rest);
            return tag.kind == StructureTag::SimplexMultiple && tag.scalar == 1 && tag.space->dim() == 3;
        });
    }});

    cat.push_back({"4div-n12", [](CensusEngine& eng, const Budget& b) {
        return check_classes(eng, 2, 4, 12, 0, b, [](const PointMultiset& m) {
            if (m.gamma1() >= 4) return true;
            for (uint32_t p = 0; p < m.geom().num_points(); ++p)
                if (m.mult(p) % 2) return false;
            return true;
        });
    }});

    cat.push_back({"4div-n13", [](CensusEngine& eng, const Budget& b) {
        PointMultiset cone = cone_over_b5();
        return check_classes(eng, 2, 4, 13, 0, b, [&](const PointMultiset& m) {
            for (const auto& L : support_lines(m)) {
                bool ok = true;
                for (uint32_t p : L.points()) ok = ok && m.mult(p) >= 2;
                if (!ok) continue;
                PointMultiset rest = m;
                for (uint32_t p : L.points()) rest.add_mult(p, -2);
                auto tag = classify_structure(rest.spanned_part());
                if (tag.kind == StructureTag::SimplexMultiple && tag.scalar == 1 && tag.space->dim() == 3)
                    return true;
            }
            return equiv_to(m, cone);
        });
    }});

    cat.push_back({"4div-n15", [](CensusEngine& eng, const Budget& b) {
        return check_classes(eng, 2, 4, 15, 0, b, [](const PointMultiset& m) {
            return m.gamma1() >= 4 || m.gamma1() == 1 || contains_full_plane(m);
        });
    }});

    cat.push_back({"4div-n16-special", [](CensusEngine& eng, const Budget& b) {
        return check_classes(eng, 2, 4, 16, 3, b, [](const PointMultiset& m) {
            uint64_t l2 = lambda_i(m, 2), l3 = lambda_i(m, 3);
            if (l3 > 4 || l2 + 3 * l3 > 12) return false;
            return l3 >= 4 || l3 <= 2;
        });
    }});

    cat.push_back({"4div-n16-special2", [](CensusEngine& eng, const Budget& b) {
        return check_classes(eng, 2, 4, 16, 3, b, [](const PointMultiset& m) {
            if (m.gamma1() != 3 || lambda_i(m, 2) < 2) return true;
            uint64_t l1 = lambda_i(m, 1), l2 = lambda_i(m, 2), l3 = lambda_i(m, 3);
            auto is = [&](uint64_t a, uint64_t bb, uint64_t c) { return l1 == a && l2 == bb && l3 == c; };
            return is(7, 3, 1) || is(6, 2, 2) || is(9, 2, 1);
        });
    }});

    cat.push_back({"4div-n17-aux", [](CensusEngine& eng, const Budget& b) {
        return check_classes(eng, 2, 4, 17, 3, b, [](const PointMultiset& m) {
            if (m.gamma1() < 2) return true;
            unsigned k = m.k();
            if (k < 4) return false;
            auto sp = m.spectrum();
            uint64_t a5 = 0, a9 = 0, a13 = 0;
            for (auto& [i, a] : sp) {
                if (i == 5) a5 = a;
                else if (i == 9) a9 = a;
                else if (i == 13) a13 = a;
                else if (a) return false;
            }
            uint64_t pk3 = 1ull << (k - 3);
            if (a5 != pk3 + 2 + a13) return false;
            if (a9 + 3 + 2 * a13 != 7 * pk3) return false;
            if (k <= 6) {
                if (lambda_i(m, 2) + 3 * lambda_i(m, 3) + 5 != (1ull << (6 - k)) * (3 + a13)) return false;
            }
            // three double-or-triple points never collinear, four never coplanar
            std::vector<uint32_t> heavy;
            for (uint32_t p = 0; p < m.geom().num_points(); ++p)
                if (m.mult(p) >= 2) heavy.push_back(p);
            for (size_t i = 0; i < heavy.size(); ++i)
                for (size_t j = i + 1; j < heavy.size(); ++j)
                    for (size_t l = j + 1; l < heavy.size(); ++l) {
                        if (Subspace::from_points(m.geom(), {heavy[i], heavy[j], heavy[l]}).dim() != 3)
                            return false;
                        for (size_t h = l + 1; h < heavy.size(); ++h)
                            if (Subspace::from_points(m.geom(), {heavy[i], heavy[j], heavy[l], heavy[h]}).dim() != 4)
                                return false;
                    }
            return true;
        });
    }});

    cat.push_back({"4div-n17-special", [](CensusEngine& eng, const Budget& b) {
        return check_classes(eng, 2, 4, 17, 3, b, [](const PointMultiset& m) {
            if (m.gamma1() < 2) return true;
            return lambda_i(m, 2) >= 1 || m.k() >= 6 || lambda_i(m, 3) == 1;
        });
    }});

    cat.push_back({"4div-n17-line123-unique", [](CensusEngine& eng, const Budget& b) {
        bool complete = true;
        auto classes = eng.all_classes(2, 4, 17, 3, b, &complete);
        if (!complete) return Verdict{Verdict::BudgetOut, "census incomplete"};
        PointMultiset printed = to_multiset(GeneratorMatrix::from_text(k17_line123_matrix));
        std::vector<PointMultiset> hits;
        for (const auto& m : classes) {
            if (m.gamma1() != 3) continue;
            bool has_line = false;
            for (const auto& L : support_lines(m)) {
                std::vector<uint32_t> ms;
                for (uint32_t p : L.points()) ms.push_back(m.mult(p));
                std::sort(ms.begin(), ms.end());
                if (ms == std::vector<uint32_t>{1, 2, 3}) { has_line = true; break; }
            }
            if (has_line) hits.push_back(m);
        }
        if (hits.size() != 1) return fail_msg("expected a unique class, found " + std::to_string(hits.size()));
        const PointMultiset& m = hits.front();
        if (!equiv_to(m, printed)) return fail(m, "class is not equivalent to the printed matrix");
        if (m.k() != 5 || lambda_i(m, 1) != 9 || lambda_i(m, 2) != 1 || lambda_i(m, 3) != 2)
            return fail(m, "lambda vector mismatch");
        auto sp = m.spectrum();
        if (sp[5] != 9 || sp[9] != 19 || sp[13] != 3) return fail(m, "spectrum mismatch");
        return pass();
    }});

    auto lower_bound = [](unsigned n, unsigned cap) {
        return [=](CensusEngine& eng, const Budget& b) { return check_empty(eng, 2, 8, n, cap, b); };
    };
    cat.push_back({"8div-n20-gamma-ge-4", lower_bound(20, 3)});
    cat.push_back({"8div-n22-gamma-ge-8", lower_bound(22, 7)});
    cat.push_back({"8div-n23-gamma-ge-8", lower_bound(23, 7)});
    cat.push_back({"8div-n24-gamma-ge-4", lower_bound(24, 3)});
    cat.push_back({"8div-n26-gamma-ge-4", lower_bound(26, 3)});
    cat.push_back({"8div-n27-gamma-ge-4", lower_bound(27, 3)});
    cat.push_back({"8div-n35-gamma-ge-4", lower_bound(35, 3)});
    cat.push_back({"8div-n37-gamma-ge-8", lower_bound(37, 7)});
    cat.push_back({"8div-n39-gamma-ge-4", lower_bound(39, 3)});
    cat.push_back({"8div-n41-gamma-ge-4", lower_bound(41, 3)});

    return cat;
}

const std::vector<ClaimDef>& catalog() {
    static std::vector<ClaimDef> cat = build_catalog();
    return cat;
}

}  // namespace

std::vector<std::string> claim_catalog() {
    std::vector<std::string> ids;
    for (const auto& c : catalog()) ids.push_back(c.id);
    return ids;
}

Verdict verify_claim(CensusEngine& engine, const std::string& claim_id, const Budget& budget) {
    for (const auto& c : catalog())
        if (claim_id == c.id) {
            try {
                return c.run(engine, budget);
            } catch (const BudgetExceeded&) {
                return Verdict{Verdict::BudgetOut, "budget exhausted"};
            }
        }
    throw std::invalid_argument("unknown claim id: " + claim_id);
}

}  // namespace divis
