#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "steenrod/hit.hpp"
#include "steenrod/verify.hpp"

using namespace steenrod;

TEST_CASE("x^2 is hit in P_1 and x is not") {
    auto p1 = ModuleRealization::full_poly(1);
    auto rep = hit_membership(p1, parse_poly("x1^2", 1), OpSet::full());
    REQUIRE(rep.hit);
    REQUIRE(rep.certificate);
    REQUIRE(rep.certificate->terms.size() == 1);
    CHECK(rep.certificate->terms[0].first == 1);
    CHECK(rep.certificate->terms[0].second == parse_poly("x1", 1));

    CHECK_FALSE(hit_membership(p1, parse_poly("x1", 1), OpSet::full()).hit);
}

TEST_CASE("c32*c31 is hit under A(1) in P_3") {
    auto p3 = ModuleRealization::full_poly(3);
    Polynomial target = mul(dickson(3, 2), dickson(3, 1));
    auto rep = hit_membership(p3, target, OpSet::a(1));
    REQUIRE(rep.hit);
    CHECK(verify_certificate(*rep.certificate, p3).ok);
}

TEST_CASE("certificate verification catches tampering") {
    auto p1 = ModuleRealization::full_poly(1);
    auto rep = hit_membership(p1, parse_poly("x1^2", 1), OpSet::full());
    REQUIRE(rep.hit);
    HitCertificate cert = *rep.certificate;
    CHECK(verify_certificate(cert).ok);

    // perturb a preimage by a slice basis element
    HitCertificate bad = cert;
    bad.terms[0].second = add(bad.terms[0].second, parse_poly("x1", 1));
    auto ver = verify_certificate(bad);
    CHECK_FALSE(ver.ok);
    CHECK_FALSE(ver.discrepancy.is_zero());

    // the empty certificate proves exactly the zero target
    HitCertificate empty;
    empty.module_spec = "P(1)";
    empty.degree = 4;
    empty.target = Polynomial::zero(1);
    CHECK(verify_certificate(empty).ok);
}

TEST_CASE("target outside the module slice is rejected") {
    auto f1 = ModuleRealization::free_unstable(1);
    CHECK_THROWS_AS(hit_membership(f1, parse_poly("x1^3", 1), OpSet::full()),
                    std::invalid_argument);
}

TEST_CASE("hit monotonicity in the subalgebra bound") {
    std::mt19937_64 rng(17);
    auto p2 = ModuleRealization::full_poly(2);
    for (int trial = 0; trial < 60; ++trial) {
        int d = 2 + static_cast<int>(rng() % 9);
        auto slice = p2->basis_of_degree(d);
        BitVector coords(slice->dim());
        for (std::size_t j = 0; j < slice->dim(); ++j)
            if (rng() & 1) coords.flip(j);
        Polynomial target = slice->from_coordinates(coords);
        if (target.is_zero()) continue;
        bool prev = false;
        for (int m = 0; m <= 3; ++m) {
            bool now = hit_membership(p2, target, OpSet::a(m)).hit;
            if (prev) CHECK(now);
            prev = now;
        }
        if (prev) CHECK(hit_membership(p2, target, OpSet::full()).hit);
    }
}

TEST_CASE("indecomposables of P_1 and P_3") {
    auto p1 = ModuleRealization::full_poly(1);
    CHECK(indecomposables_dim(p1, 1) == 1);
    CHECK(indecomposables_dim(p1, 2) == 0);

    // brute-force oracle at P_3 degree 4: dense elimination over all Sq^k images
    auto p3 = ModuleRealization::full_poly(3);
    auto slice4 = p3->basis_of_degree(4);
    std::vector<std::vector<int>> rows;
    for (int k = 1; k <= 4; ++k) {
        auto lower = p3->basis_of_degree(4 - k);
        for (const auto& b : lower->basis()) {
            Polynomial img = sq(k, b);
            if (img.is_zero()) continue;
            auto coords = slice4->coordinates(img);
            REQUIRE(coords);
            std::vector<int> row(slice4->dim(), 0);
            for (std::size_t c = 0; c < slice4->dim(); ++c) row[c] = coords->get(c);
            rows.push_back(std::move(row));
        }
    }
    std::size_t hit_dim = oracle::dense_rank(rows);
    CHECK(indecomposables_dim(p3, 4) == slice4->dim() - hit_dim);
    // the main statement forces c32 into the hit subspace
    CHECK(hit_membership(p3, dickson(3, 2), OpSet::full()).hit);
}

TEST_CASE("cohits of P_k vanish exactly when the digit sum of d+k exceeds k") {
    // spikes prod x_j^{2^{a_j}-1} are never hit, and everything is hit when
    // alpha(d+k) > k
    auto alpha = [](int v) { return __builtin_popcount(static_cast<unsigned>(v)); };
    const int d_caps[4] = {0, 33, 24, 14};
    for (int k = 1; k <= 3; ++k) {
        auto pk = ModuleRealization::full_poly(k);
        for (int d = 1; d <= d_caps[k]; ++d) {
            bool vanishes = indecomposables_dim(pk, d) == 0;
            CHECK(vanishes == (alpha(d + k) > k));
        }
    }
}

TEST_CASE("q0_reduce on c30 (x) m with Q_0 m = 0") {
    auto f1 = ModuleRealization::free_unstable(1);
    const int nv = 4;
    Polynomial m = parse_poly("x1^2", 1); // Q_0 x^2 = 0
    Polynomial y = mul(r_expand(RMonomial{{0, 0, 1}, {}}, 1), embed(m, 3, nv));
    auto red = q0_reduce(f1, y);
    CHECK(red.conditions_hold);
    CHECK(red.kernel_part.is_zero());
    CHECK(red.preimage == mul(r_expand(RMonomial{{0, 1, 0}, {}}, 1), embed(m, 3, nv)));
    CHECK(add(red.kernel_part, milnor_q(0, red.preimage)) == y);
}

TEST_CASE("q0_reduce keeps even powers in the kernel part") {
    auto f1 = ModuleRealization::free_unstable(1);
    const int nv = 4;
    Polynomial m = parse_poly("x1^2", 1);
    Polynomial y = mul(r_expand(RMonomial{{2, 0, 0}, {}}, 1), embed(m, 3, nv));
    auto red = q0_reduce(f1, y);
    CHECK(red.conditions_hold);
    CHECK(red.kernel_part == y);
    CHECK(red.preimage.is_zero());
}

TEST_CASE("q0_reduce decomposes St_3 of the fundamental class") {
    auto f1 = ModuleRealization::free_unstable(1);
    Polynomial y = st_s(3, Polynomial::variable(1, 0));
    REQUIRE(milnor_q(0, y).is_zero());
    auto red = q0_reduce(f1, y);
    CHECK(red.conditions_hold);
    CHECK(add(red.kernel_part, milnor_q(0, red.preimage)) == y);
    CHECK_FALSE(red.kernel_part.is_zero());
}

TEST_CASE("q0_reduce decomposes St_3 of the rank-2 fundamental class") {
    auto f2 = ModuleRealization::free_unstable(2);
    Polynomial y = st_s(3, parse_poly("x1*x2", 2));
    REQUIRE(milnor_q(0, y).is_zero());
    auto red = q0_reduce(f2, y);
    CHECK(red.conditions_hold);
    CHECK(add(red.kernel_part, milnor_q(0, red.preimage)) == y);
    // the kernel part carries the 1 (x) (top square)^3 term
    Monomial top;
    top.e[3] = 8;
    top.e[4] = 8;
    bool found = false;
    for (const auto& t : red.kernel_part.terms())
        if (t == top) found = true;
    CHECK(found);
}

TEST_CASE("q0_reduce rejects elements outside ker Q_0") {
    auto f1 = ModuleRealization::free_unstable(1);
    const int nv = 4;
    Polynomial y = mul(r_expand(RMonomial{{0, 1, 0}, {}}, 1), embed(parse_poly("x1^2", 1), 3, nv));
    CHECK_THROWS_AS(q0_reduce(f1, y), std::invalid_argument);
}

TEST_CASE("exclude_step on the smallest instance") {
    // m = c32 c31: length 2, fullness 1, i = 0; Sq^4(c31 v^2) = m v^2 + ...
    SingerMonomial m{0, {1, 1, 0}, {}};
    auto out = exclude_step(m, 0, Polynomial::one(3));
    CHECK(out.equality_holds);
    CHECK(out.main_term_found);
    CHECK(out.residues_in_rtilde);
    CHECK(out.fullness_bounded);
    for (const auto& [s, v] : out.residues) CHECK(standard_form(s).f == 0);
}

TEST_CASE("exclude_step on a fullness-2 monomial with an St factor") {
    // (c32 c31)^3 St_3(x^2): length 8, binomial C(8,1) is even at i = 0
    SingerMonomial m{1, {3, 3, 0}, {2}};
    REQUIRE(standard_form(m).f == 2);
    REQUIRE_FALSE(binom_mod2(m.length(), 1));
    auto out = exclude_step(m, 0, parse_poly("x1 + x2", 3));
    CHECK(out.equality_holds);
    CHECK(out.main_term_found);
    CHECK(out.residues_in_rtilde);
    CHECK(out.fullness_bounded);
}

TEST_CASE("exclude_step rejects violated hypotheses") {
    SingerMonomial m{0, {1, 1, 0}, {}};
    CHECK_THROWS_AS(exclude_step(m, 1, Polynomial::one(3)), std::invalid_argument);
    // length 3 has odd C(3,1)
    SingerMonomial m2{0, {1, 1, 1}, {}};
    CHECK_THROWS_AS(exclude_step(m2, 0, Polynomial::one(3)), std::invalid_argument);
    CHECK_THROWS_AS(exclude_step(m, 0, Polynomial::one(3), 2), std::invalid_argument);
}

TEST_CASE("analyze_theta_terms on a fullness-1 full monomial") {
    // c32 c31 St_3(x): length 3 = 1 mod 2
    SingerMonomial m{1, {1, 1, 0}, {1}};
    REQUIRE(standard_form(m).is_full);
    for (int k = 1; k <= 4; ++k) {
        auto terms = analyze_theta_terms(k, m);
        for (const auto& t : terms) CHECK(t.dichotomy_ok);
    }
    // Sq^2 applied to the Dickson half drops fullness
    auto terms = analyze_theta_terms(2, m);
    bool saw_length_preserving = false;
    for (const auto& t : terms)
        if (t.length == m.length()) {
            saw_length_preserving = true;
            CHECK(t.fullness < 1);
        }
    CHECK(saw_length_preserving);
}

TEST_CASE("analyze_theta_terms rejects k = 0 and non-full inputs") {
    SingerMonomial m{1, {1, 1, 0}, {1}};
    CHECK_THROWS_AS(analyze_theta_terms(0, m), std::invalid_argument);
    SingerMonomial nf{1, {2, 1, 0}, {1}};
    CHECK_THROWS_AS(analyze_theta_terms(1, nf), std::invalid_argument);
}

namespace {

// coefficient vectors c over the degree-d slice with Q_i(sum c_r b_r) = 0
std::vector<BitVector> qi_kernel_vectors(const std::shared_ptr<ModuleRealization>& m, int i,
                                         int d) {
    const int q = (1 << (i + 1)) - 1;
    auto src = m->basis_of_degree(d);
    auto dst = m->basis_of_degree(d + q);
    F2Matrix by_dst(dst->dim(), src->dim()); // columns indexed by source basis
    for (std::size_t r = 0; r < src->dim(); ++r) {
        Polynomial img = milnor_q(i, src->basis()[r]);
        if (img.is_zero()) continue;
        auto coords = *dst->coordinates(img);
        for (std::size_t row = 0; row < dst->dim(); ++row)
            if (coords.get(row)) by_dst.set(row, r);
    }
    return kernel_basis(by_dst);
}

} // namespace

TEST_CASE("ker Q_0 + ker Q_1 is hit under A(1) in Pbar_k") {
    std::mt19937_64 rng(29);
    for (int k = 1; k <= 3; ++k) {
        auto pk = ModuleRealization::full_poly(k);
        for (int d = 2; d <= 10; ++d) {
            auto slice = pk->basis_of_degree(d);
            auto k0 = qi_kernel_vectors(pk, 0, d), k1 = qi_kernel_vectors(pk, 1, d);
            std::vector<BitVector> all = k0;
            all.insert(all.end(), k1.begin(), k1.end());
            if (all.empty()) continue;
            DegreeSolver solver(pk, d, OpSet::a(1));
            for (int trial = 0; trial < 8; ++trial) {
                BitVector combo(slice->dim());
                for (const auto& v : all)
                    if (rng() & 1) combo.xor_with(v);
                Polynomial target = slice->from_coordinates(combo);
                if (target.is_zero()) continue;
                CHECK(solver.solve(target).hit);
            }
        }
    }
}

TEST_CASE("Pbar_3 (x) St_3 intersected with ker Q_0 + ker Q_1 is hit under A(1)") {
    std::mt19937_64 rng(31);
    for (int n : {1, 2}) {
        auto sf = ModuleRealization::singer_free(n);
        for (int d = 8 * n + 1; d <= 8 * n + 8; ++d) {
            auto slice = sf->basis_of_degree(d);
            if (slice->dim() == 0) continue;
            // subspace spanned by u (x) St_3 y with deg u >= 1
            std::vector<BitVector> w_cols;
            for (std::size_t j = 0; j < slice->dim(); ++j) {
                const Polynomial& b = slice->basis()[j];
                bool positive_p3 = true;
                for (const auto& t : b.terms()) {
                    int p3deg = t.e[0] + t.e[1] + t.e[2];
                    if (p3deg == 0) positive_p3 = false;
                }
                if (positive_p3) {
                    BitVector v(slice->dim());
                    v.set(j);
                    w_cols.push_back(v);
                }
            }
            auto k0 = qi_kernel_vectors(sf, 0, d), k1 = qi_kernel_vectors(sf, 1, d);
            std::vector<BitVector> ker_cols = k0;
            ker_cols.insert(ker_cols.end(), k1.begin(), k1.end());
            auto inter = column_space_intersection(w_cols, ker_cols, slice->dim());
            if (inter.empty()) continue;
            DegreeSolver solver(sf, d, OpSet::a(1));
            for (int trial = 0; trial < 6; ++trial) {
                BitVector combo(slice->dim());
                for (const auto& v : inter)
                    if (rng() & 1) combo.xor_with(v);
                Polynomial target = slice->from_coordinates(combo);
                if (target.is_zero()) continue;
                CHECK(solver.solve(target).hit);
            }
        }
    }
}

TEST_CASE("exclusion identities and the term dichotomy at fullness 3") {
    std::vector<SingerMonomial> deep;
    for (int n = 0; n <= 1; ++n)
        for (int d = 70; d <= 86; ++d)
            for (const auto& m : r3_basis(n, d, R3Part::Rtilde))
                if (standard_form(m).f == 3) deep.push_back(m);
    REQUIRE(deep.size() >= 5);
    int exclusions = 0, dichotomies = 0;
    for (const auto& m : deep) {
        for (int i = 0; i < 3; ++i) {
            if (binom_mod2(m.length(), 1u << i)) continue;
            auto out = exclude_step(m, i, Polynomial::one(3));
            CHECK(out.equality_holds);
            CHECK(out.main_term_found);
            CHECK(out.residues_in_rtilde);
            CHECK(out.fullness_bounded);
            ++exclusions;
        }
        if (standard_form(m).is_full && (m.length() & 7) == 7) {
            for (int k = 1; k <= 16; ++k)
                for (const auto& t : analyze_theta_terms(k, m)) CHECK(t.dichotomy_ok);
            ++dichotomies;
        }
    }
    CHECK(exclusions >= 3);
    CHECK(dichotomies >= 2);
}

TEST_CASE("certificates are deterministic across solver runs") {
    auto p3 = ModuleRealization::full_poly(3);
    Polynomial target = mul(dickson(3, 2), dickson(3, 1));
    auto a = hit_membership(p3, target, OpSet::a(1));
    auto b = hit_membership(p3, target, OpSet::a(1));
    REQUIRE(a.hit);
    REQUIRE(b.hit);
    REQUIRE(a.certificate->terms.size() == b.certificate->terms.size());
    for (std::size_t i = 0; i < a.certificate->terms.size(); ++i) {
        CHECK(a.certificate->terms[i].first == b.certificate->terms[i].first);
        CHECK(a.certificate->terms[i].second == b.certificate->terms[i].second);
    }
}

TEST_CASE("operation set parsing round trips") {
    for (const char* s : {"full", "A(1)", "A(3)", "allk", "sq:1,4", "sq:1,8,12"}) {
        CHECK(OpSet::parse(s).to_string() == s);
    }
    CHECK(OpSet::full().ops_for_degree(10) == std::vector<int>{1, 2, 4, 8});
    CHECK(OpSet::a(1).ops_for_degree(10) == std::vector<int>{1, 2});
    CHECK(OpSet::explicit_ops({1, 8}).ops_for_degree(6) == std::vector<int>{1});
    CHECK_THROWS_AS(OpSet::parse("bogus"), std::invalid_argument);
}
