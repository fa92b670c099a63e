#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "steenrod/margolis.hpp"
#include "steenrod/modules.hpp"
#include "steenrod/singer.hpp"
#include "steenrod/verify.hpp"

using namespace steenrod;

TEST_CASE("rank-1 and rank-2 Dickson invariants") {
    CHECK(dickson(1, 0) == parse_poly("x1", 1));
    CHECK(dickson(2, 1) == parse_poly("x1^2 + x1*x2 + x2^2", 2));
    CHECK(dickson(2, 0) == parse_poly("x1^2*x2 + x1*x2^2", 2));
    CHECK_THROWS_AS(dickson(2, 2), std::invalid_argument);
}

TEST_CASE("rank-3 Dickson invariants have the right degrees and GL-invariance") {
    for (int i = 0; i < 3; ++i) {
        Polynomial c = dickson(3, i);
        CHECK(c.degree() == 8 - (1 << i));
        CHECK(c.is_homogeneous());
        for (const auto& m : gl_sk_generators(3, 0)) CHECK(linear_substitute(c, m) == c);
    }
}

TEST_CASE("Mui invariants") {
    // rank 1: V_1(1) = x_m (x_m + u)
    CHECK(mui(1, 1, 1) == parse_poly("x2^2 + x1*x2", 2));
    for (int s = 1; s <= 3; ++s) CHECK(mui(s, 1, 1).degree() == (1 << s));
    // V(j) = St_s(x_j)
    for (int s = 1; s <= 3; ++s)
        CHECK(mui(s, 1, 1) == st_s(s, Polynomial::variable(1, 0)));
    CHECK_THROWS_AS(mui(3, 2, 1), std::invalid_argument);
}

TEST_CASE("st1 on small inputs") {
    CHECK(st1(Polynomial::variable(1, 0)) == parse_poly("x2^2 + x1*x2", 2));
    CHECK(st1(Polynomial::one(1)) == Polynomial::one(2));
    CHECK_THROWS_AS(st1(parse_poly("x1 + x1^2", 1)), std::invalid_argument);
}

TEST_CASE("st1 is multiplicative") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        auto p = detail::random_nonzero_homogeneous(rng, 2, 1 + rng() % 3, 2);
        auto q = detail::random_nonzero_homogeneous(rng, 2, 1 + rng() % 3, 2);
        CHECK(st1(mul(p, q)) == mul(st1(p), st1(q)));
    }
}

TEST_CASE("the product route for St_s matches the recursive route") {
    std::mt19937_64 rng(5);
    for (int s = 1; s <= 3; ++s) {
        for (int trial = 0; trial < 12; ++trial) {
            int nv = 1 + static_cast<int>(rng() % 2);
            auto p = detail::random_nonzero_homogeneous(rng, nv, 1 + rng() % 3, 2);
            CHECK(st_s(s, p) == st_s_recursive(s, p));
        }
    }
    CHECK(st_s(4, Polynomial::variable(1, 0)) ==
          st_s_recursive(4, Polynomial::variable(1, 0)));
}

TEST_CASE("St_3 degrees and squares") {
    Polynomial x = Polynomial::variable(1, 0);
    Polynomial v = mui(3, 1, 1);
    CHECK(st_s(3, frobenius(x)) == frobenius(v));
    CHECK(st_s(3, frobenius(x)).degree() == 16);
    // St_3(iota_2) = V(1) V(2)
    CHECK(st_s(3, parse_poly("x1*x2", 2)) == mul(mui(3, 1, 2), mui(3, 2, 2)));
}

TEST_CASE("named table cells from expansions") {
    CHECK(sq_on_generator(RGenName::C32, 2) == RPoly{RMonomial{{0, 1, 0}, {}}});
    CHECK(sq_on_generator(RGenName::C32, 3) == RPoly{RMonomial{{0, 0, 1}, {}}});
    CHECK(sq_on_generator(RGenName::C31, 6) == RPoly{RMonomial{{0, 2, 0}, {}}});
    CHECK(sq_on_generator(RGenName::C30, 5).empty());
    CHECK(sq_on_generator(RGenName::V, 8) == RPoly{RMonomial{{0, 0, 0}, {2}}});
    CHECK(sq_on_generator(RGenName::V, 1).empty());
}

TEST_CASE("r3 basis enumeration") {
    auto b4 = r3_basis(0, 4);
    REQUIRE(b4.size() == 1);
    CHECK(to_string(b4[0]) == "c32");

    auto b8 = r3_basis(1, 8, R3Part::St3Only);
    REQUIRE(b8.size() == 1);
    CHECK(to_string(b8[0]) == "V1");

    auto b10 = r3_basis(0, 10);
    REQUIRE(b10.size() == 1);
    CHECK(to_string(b10[0]) == "c32*c31");

    CHECK(r3_basis(0, 1).empty());
    CHECK(r3_basis(0, 0, R3Part::Rtilde).empty());
}

TEST_CASE("r3 basis splits as the positive-Dickson part plus the St_3 part") {
    for (int n : {0, 1, 2}) {
        for (int d = 0; d <= 32; ++d) {
            auto all = r3_basis(n, d, R3Part::All);
            auto rt = r3_basis(n, d, R3Part::Rtilde);
            auto st = r3_basis(n, d, R3Part::St3Only);
            CHECK(all.size() == rt.size() + st.size());
        }
    }
}

TEST_CASE("r3 basis expansions are linearly independent") {
    for (int n : {0, 1, 2}) {
        for (int d = 1; d <= 22; ++d) {
            auto basis = r3_basis(n, d);
            if (basis.empty()) continue;
            std::vector<Polynomial> exps;
            for (const auto& m : basis) exps.push_back(expand(m));
            std::vector<Monomial> support;
            for (const auto& e : exps)
                for (const auto& t : e.terms()) support.push_back(t);
            std::sort(support.begin(), support.end(), [](const Monomial& a, const Monomial& b) {
                return grevlex_cmp(a, b) > 0;
            });
            support.erase(std::unique(support.begin(), support.end()), support.end());
            std::unordered_map<Monomial, std::size_t, MonomialHash> index;
            for (std::size_t i = 0; i < support.size(); ++i) index.emplace(support[i], i);
            F2Matrix rows(exps.size(), support.size());
            for (std::size_t r = 0; r < exps.size(); ++r)
                for (const auto& t : exps[r].terms()) rows.row(r).flip(index.at(t));
            CHECK(echelonize(rows).rank == basis.size());
        }
    }
}

TEST_CASE("length counts letters") {
    SingerMonomial a{2, {1, 0, 0}, {1, 1}}; // c32 * St_3(iota_2)
    CHECK(length(a) == 3);
    SingerMonomial b{0, {1, 1, 0}, {}};
    CHECK(length(b) == 2);
    SingerMonomial c{1, {0, 0, 0}, {2}}; // V^2
    CHECK(length(c) == 2);
}

TEST_CASE("standard form extraction") {
    auto sf = standard_form(1, 1);
    CHECK(sf.f == 1);
    CHECK(sf.is_full);

    sf = standard_form(3, 1);
    CHECK(sf.f == 1);
    CHECK(sf.j2 == 1);
    CHECK(sf.j1 == 0);
    CHECK_FALSE(sf.is_full);

    sf = standard_form(0, 0, 5);
    CHECK(sf.f == 0);
    CHECK_FALSE(sf.is_full);

    for (std::uint32_t i2 = 0; i2 <= 64; ++i2)
        for (std::uint32_t i1 = 0; i1 <= 64; ++i1) {
            auto s = standard_form(i2, i1);
            CHECK(((1u << s.f) - 1) + s.j2 * (1u << s.f) == i2);
            CHECK(((1u << s.f) - 1) + s.j1 * (1u << s.f) == i1);
            CHECK((s.j1 * s.j2) % 2 == 0);
        }
}

TEST_CASE("formal multiplication and Sq agree with expansions") {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 40; ++trial) {
        int n = static_cast<int>(rng() % 2);
        RMonomial a{{static_cast<std::uint32_t>(rng() % 3), static_cast<std::uint32_t>(rng() % 3),
                     static_cast<std::uint32_t>(rng() % 2)},
                    {}};
        if (n == 1 && rng() % 2) a.v = {1u << (rng() % 2)};
        a.canon();
        int k = static_cast<int>(rng() % 10);
        CHECK(r_expand(r_sq(k, RPoly{a}), n) == sq(k, r_expand(a, n)));
    }
}

TEST_CASE("singer monomial printing") {
    SingerMonomial m{1, {3, 1, 0}, {2}};
    CHECK(to_string(m) == "c32^3*c31*V1^2");
    SingerMonomial unit{0, {0, 0, 0}, {}};
    CHECK(to_string(unit) == "1");
}

TEST_CASE("St_3 labels match the free-module structure over D_3") {
    // the slicewise count of R_3 F(n) equals dim D_3 (x) St_3 F(n)
    for (int n : {1, 2}) {
        for (int d = 0; d <= 28; ++d) {
            std::size_t direct = r3_basis(n, d).size();
            std::size_t conv = 0;
            for (int b = 0; 8 * b <= d; ++b)
                conv += dickson_complex::monomials_of_degree(d - 8 * b).size() *
                        st3_labels(n, b).size();
            CHECK(direct == conv);
        }
    }
}
