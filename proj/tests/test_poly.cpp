#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "steenrod/poly.hpp"
#include "steenrod/verify.hpp"

using namespace steenrod;

namespace {

Polynomial P(const std::string& text, int n_vars) { return parse_poly(text, n_vars); }

Polynomial random_homogeneous(std::mt19937_64& rng, int n_vars, int degree, int max_terms) {
    std::vector<Monomial> all;
    Monomial acc;
    auto rec = [&](auto&& self, int j, int rem) -> void {
        if (j == n_vars - 1) {
            acc.e[j] = static_cast<std::uint16_t>(rem);
            all.push_back(acc);
            acc.e[j] = 0;
            return;
        }
        for (int e = 0; e <= rem; ++e) {
            acc.e[j] = static_cast<std::uint16_t>(e);
            self(self, j + 1, rem - e);
        }
        acc.e[j] = 0;
    };
    if (n_vars == 0) return degree == 0 ? Polynomial::one(0) : Polynomial::zero(0);
    rec(rec, 0, degree);
    std::vector<Monomial> chosen;
    int terms = 1 + static_cast<int>(rng() % max_terms);
    for (int t = 0; t < terms; ++t) chosen.push_back(all[rng() % all.size()]);
    return Polynomial::from_terms(n_vars, std::move(chosen));
}

} // namespace

TEST_CASE("addition is cancellative and unital") {
    auto p = P("x1*x2 + x1^3", 2);
    CHECK(add(p, p).is_zero());
    CHECK(add(p, Polynomial::zero(2)) == p);
    CHECK(add(P("x1", 2), P("x2", 2)) == P("x1 + x2", 2));
}

TEST_CASE("multiplication basics") {
    CHECK(mul(P("x1", 2), P("x1", 2)) == P("x1^2", 2));
    CHECK(mul(P("x1 + x2", 2), P("x1 + x2", 2)) == P("x1^2 + x2^2", 2));
    CHECK(mul(P("x1 + x2", 2), P("x1", 2)) == P("x1^2 + x1*x2", 2));
}

TEST_CASE("ambient mismatch is rejected") {
    CHECK_THROWS_AS(add(P("x1", 1), P("x1", 2)), std::invalid_argument);
    CHECK_THROWS_AS(mul(P("x1", 1), P("x1", 2)), std::invalid_argument);
}

TEST_CASE("small Steenrod squares") {
    CHECK(sq(1, P("x1*x2", 2)) == P("x1^2*x2 + x1*x2^2", 2));
    CHECK(sq(2, P("x1*x2", 2)) == P("x1^2*x2^2", 2));
}

TEST_CASE("squares on one variable match the total-square oracle") {
    // frozen case first: C(3,2) is odd, so Sq^2 x^3 = x^5
    CHECK(sq(2, P("x1^3", 1)) == P("x1^5", 1));
    for (int n = 0; n <= 12; ++n) {
        Polynomial xn = pow(Polynomial::variable(1, 0), n);
        for (int k = 0; k <= n + 2; ++k)
            CHECK(sq(k, xn) == oracle::sq_via_total_square(k, xn));
    }
}

TEST_CASE("Milnor operations on generators") {
    CHECK(milnor_q(0, P("x1", 1)) == P("x1^2", 1));
    CHECK(milnor_q(1, P("x1", 1)) == P("x1^4", 1)); // Sq^2 Sq^1 x + Sq^1 Sq^2 x = Sq^2 x^2
    CHECK(milnor_q(1, P("x1", 1)) == milnor_q_via_squares(1, P("x1", 1)));
}

TEST_CASE("Milnor operations kill squares") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        auto p = random_homogeneous(rng, 3, 1 + rng() % 5, 4);
        CHECK(milnor_q(0, frobenius(p)).is_zero());
        CHECK(milnor_q(1, frobenius(p)).is_zero());
    }
    CHECK_THROWS_AS(milnor_q(2, P("x1", 1)), std::invalid_argument);
}

TEST_CASE("frobenius squares") {
    CHECK(frobenius(P("x1", 2)) == P("x1^2", 2));
    CHECK(frobenius(P("x1 + x2", 2)) == P("x1^2 + x2^2", 2));
    CHECK(frobenius(Polynomial::one(2)) == Polynomial::one(2));
}

TEST_CASE("binomials mod 2") {
    CHECK(binom_mod2(7, 2));
    CHECK_FALSE(binom_mod2(4, 2));
    for (std::uint64_t n = 0; n < 20; ++n) CHECK(binom_mod2(n, 0));
}

TEST_CASE("binom_mod2 matches the Pascal triangle") {
    std::vector<std::vector<unsigned>> pascal(65, std::vector<unsigned>(65, 0));
    for (int n = 0; n <= 64; ++n) {
        pascal[n][0] = 1;
        for (int k = 1; k <= n; ++k)
            pascal[n][k] = (pascal[n - 1][k - 1] + (k <= n - 1 ? pascal[n - 1][k] : 0)) & 1u;
    }
    for (int n = 0; n <= 64; ++n)
        for (int k = 0; k <= 64; ++k)
            CHECK(binom_mod2(n, k) == (k <= n && pascal[n][k] == 1));
}

TEST_CASE("linear substitution") {
    F2Matrix id(2, 2);
    id.set(0, 0);
    id.set(1, 1);
    auto p = P("x1^2 + x1*x2", 2);
    CHECK(linear_substitute(p, id) == p);

    F2Matrix swap(2, 2);
    swap.set(0, 1);
    swap.set(1, 0);
    CHECK(linear_substitute(P("x1*x2", 2), swap) == P("x1*x2", 2));

    F2Matrix tv(2, 2); // x1 -> x1 + x2, x2 fixed
    tv.set(0, 0);
    tv.set(0, 1);
    tv.set(1, 1);
    CHECK(linear_substitute(P("x1^2", 2), tv) == P("x1^2 + x2^2", 2));
}

TEST_CASE("parser and printer are inverse on canonical forms") {
    std::mt19937_64 rng(23);
    CHECK(to_string(Polynomial::zero(3)) == "0");
    CHECK(to_string(Polynomial::one(3)) == "1");
    CHECK(parse_poly("0", 3).is_zero());
    CHECK(parse_poly("1", 3) == Polynomial::one(3));
    for (int trial = 0; trial < 100; ++trial) {
        auto p = random_homogeneous(rng, 1 + rng() % 4, rng() % 7, 5);
        CHECK(parse_poly(to_string(p), p.n_vars()) == p);
    }
    CHECK_THROWS_WITH(parse_poly("x1 + ", 2), Catch::Matchers::ContainsSubstring("position"));
    CHECK_THROWS_AS(parse_poly("x9", 2), std::invalid_argument);
}

TEST_CASE("degree slices") {
    auto p = P("x1^3 + x1*x2 + x2", 2);
    CHECK(p.degree_slice(2) == P("x1*x2", 2));
    CHECK(p.degree_slice(5).is_zero());
    CHECK_FALSE(p.is_homogeneous());
    CHECK(P("x1^2 + x1*x2", 2).is_homogeneous());
}
