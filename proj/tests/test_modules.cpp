#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "steenrod/modules.hpp"
#include "steenrod/singer.hpp"

using namespace steenrod;

TEST_CASE("F(1) slice dimensions are supported on powers of two") {
    auto f1 = ModuleRealization::free_unstable(1);
    std::vector<std::size_t> dims;
    for (int d = 1; d <= 8; ++d) dims.push_back(f1->basis_of_degree(d)->dim());
    CHECK(dims == std::vector<std::size_t>{1, 1, 0, 1, 0, 0, 0, 1});
    for (int d = 1; d <= 64; ++d) {
        bool pow2 = (d & (d - 1)) == 0;
        CHECK(f1->basis_of_degree(d)->dim() == (pow2 ? 1u : 0u));
    }
}

TEST_CASE("F(2) bottom slices") {
    auto f2 = ModuleRealization::free_unstable(2);
    auto s2 = f2->basis_of_degree(2);
    REQUIRE(s2->dim() == 1);
    CHECK(s2->basis()[0] == parse_poly("x1*x2", 2));
    auto s3 = f2->basis_of_degree(3);
    REQUIRE(s3->dim() == 1);
    CHECK(s3->basis()[0] == sq(1, parse_poly("x1*x2", 2)));
    CHECK(s3->basis()[0] == parse_poly("x1^2*x2 + x1*x2^2", 2));
}

TEST_CASE("coordinates on slices") {
    auto f2 = ModuleRealization::free_unstable(2);
    auto s3 = f2->basis_of_degree(3);
    auto first = s3->coordinates(s3->basis()[0]);
    REQUIRE(first);
    CHECK(first->get(0));
    CHECK(first->popcount() == 1);

    auto zero = s3->coordinates(Polynomial::zero(2));
    REQUIRE(zero);
    CHECK_FALSE(zero->any());

    // x1^3 is not in F(2); similarly F(1) has nothing in degree 3
    CHECK_FALSE(s3->coordinates(parse_poly("x1^3", 2)));
    auto f1 = ModuleRealization::free_unstable(1);
    CHECK_FALSE(f1->basis_of_degree(3)->coordinates(parse_poly("x1^3", 1)));
    CHECK_THROWS_AS(s3->coordinates(parse_poly("x1*x2", 2)), std::invalid_argument);
}

TEST_CASE("full polynomial slices") {
    auto p2 = ModuleRealization::full_poly(2);
    CHECK(p2->basis_of_degree(0)->dim() == 1);
    CHECK(p2->basis_of_degree(5)->dim() == 6);
    auto p0 = ModuleRealization::full_poly(0);
    CHECK(p0->basis_of_degree(0)->dim() == 1);
    CHECK(p0->basis_of_degree(3)->dim() == 0);
    auto pbar = ModuleRealization::pbar_poly(2);
    CHECK(pbar->basis_of_degree(0)->dim() == 0);
    CHECK(pbar->basis_of_degree(5)->dim() == 6);
}

TEST_CASE("A-closure of the realizations") {
    CHECK(check_a_closure(ModuleRealization::full_poly(2), 10).closed);
    CHECK(check_a_closure(ModuleRealization::free_unstable(2), 12).closed);
    CHECK(check_a_closure(ModuleRealization::tensor_p3(ModuleRealization::free_unstable(1)), 12)
              .closed);
    CHECK(check_a_closure(ModuleRealization::singer_free(1), 14).closed);
}

TEST_CASE("F(n) slices are symmetric-group invariant") {
    for (int n : {2, 3}) {
        auto fn = ModuleRealization::free_unstable(n);
        for (int d = n; d <= n + 10; ++d) {
            auto slice = fn->basis_of_degree(d);
            for (int i = 0; i + 1 < n; ++i) {
                F2Matrix swap(n, n);
                for (int j = 0; j < n; ++j) swap.set(j, j);
                swap.set(i, i, false);
                swap.set(i + 1, i + 1, false);
                swap.set(i, i + 1);
                swap.set(i + 1, i);
                for (const auto& b : slice->basis())
                    CHECK(slice->coordinates(linear_substitute(b, swap)).has_value());
            }
        }
    }
}

TEST_CASE("tensor slice dimensions are the convolution") {
    auto f1 = ModuleRealization::free_unstable(1);
    auto t = ModuleRealization::tensor_p3(f1);
    for (int d = 0; d <= 16; ++d) {
        std::size_t expected = 0;
        for (int a = 0; a <= d; ++a)
            expected += static_cast<std::size_t>((a + 2) * (a + 1) / 2) *
                        f1->basis_of_degree(d - a)->dim();
        CHECK(t->basis_of_degree(d)->dim() == expected);
    }
}

TEST_CASE("F(n) slices agree with the symmetrized power-of-two monomial basis") {
    for (int n : {1, 2, 3}) {
        auto fn = ModuleRealization::free_unstable(n);
        for (int b = n; b <= n + 12; ++b) {
            auto labels = st3_labels(n, b);
            auto slice = fn->basis_of_degree(b);
            CHECK(labels.size() == slice->dim());
            for (const auto& lam : labels) {
                // symmetrized monomial with exponents lam
                std::vector<Monomial> terms;
                for (const auto& arr : label_arrangements(lam)) {
                    Monomial m;
                    for (int j = 0; j < n; ++j) m.e[j] = static_cast<std::uint16_t>(arr[j]);
                    terms.push_back(m);
                }
                CHECK(slice->coordinates(Polynomial::from_terms(n, terms)).has_value());
            }
        }
    }
}

TEST_CASE("module spec mini-language round trips") {
    for (const char* spec :
         {"P(3)", "Pbar(2)", "F(2)", "P3xF(1)", "P3xP(2)", "SingerFree(2)", "P4xF(1)"}) {
        auto m = ModuleRealization::parse(spec);
        CHECK(m->spec_string() == spec);
    }
    CHECK_THROWS_AS(ModuleRealization::parse("Q(3)"), std::invalid_argument);
    CHECK_THROWS_AS(ModuleRealization::parse("P()"), std::invalid_argument);
}

TEST_CASE("SingerFree(0) realizes P_3") {
    auto s0 = ModuleRealization::singer_free(0);
    for (int d = 0; d <= 10; ++d)
        CHECK(s0->basis_of_degree(d)->dim() ==
              static_cast<std::size_t>((d + 2) * (d + 1) / 2));
}

TEST_CASE("SingerFree slices contain the R_3 F(n) basis expansions") {
    for (int n : {0, 1, 2}) {
        auto sf = ModuleRealization::singer_free(n);
        for (int d = 1; d <= 20; ++d) {
            for (const auto& m : r3_basis(n, d)) {
                auto slice = sf->basis_of_degree(d);
                CHECK(slice->coordinates(expand(m)).has_value());
            }
        }
    }
}
