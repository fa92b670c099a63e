// Margolis homology ker Q_i / im Q_i of graded realizations, plus the
// abstract rank-3 Dickson algebra as a Q_i-complex in its own right.
#pragma once

#include <array>
#include <map>
#include <memory>
#include <string>
#include <stdexcept>
#include <vector>

#include "steenrod/f2linalg.hpp"
#include "steenrod/modules.hpp"
#include "steenrod/poly.hpp"
#include "steenrod/singer.hpp"

namespace steenrod {

struct MargolisSlice {
    int degree = 0;
    std::size_t dim_ker = 0;
    std::size_t dim_im = 0; // image arriving from below
    std::size_t dim_h = 0;
};

namespace detail {

// rank of Q_i restricted to the degree-d slice of a realization
inline std::size_t qi_rank(const std::shared_ptr<ModuleRealization>& m, int i, int d) {
    const int q = (1 << (i + 1)) - 1;
    auto src = m->basis_of_degree(d);
    if (src->dim() == 0) return 0;
    auto dst = m->basis_of_degree(d + q);
    F2Matrix rows(src->dim(), dst->dim());
    for (std::size_t r = 0; r < src->dim(); ++r) {
        Polynomial img = milnor_q(i, src->basis()[r]);
        if (img.is_zero()) continue;
        auto coords = dst->coordinates(img);
        if (!coords) throw std::logic_error("margolis: Q_i image escaped the module");
        rows.row(r) = *coords;
    }
    return echelonize(rows).rank;
}

} // namespace detail

// Per-degree kernel, image and homology dimensions of Q_i. Q_i^2 = 0 is
// asserted on every basis element along the way.
inline std::vector<MargolisSlice> margolis_dims(const std::shared_ptr<ModuleRealization>& m,
                                                int i, int d_lo, int d_hi) {
    if (i != 0 && i != 1) throw std::invalid_argument("margolis_dims: i must be 0 or 1");
    if (d_lo < 0 || d_hi < d_lo) throw std::invalid_argument("margolis_dims: bad degree range");
    const int q = (1 << (i + 1)) - 1;
    std::vector<MargolisSlice> out;
    for (int d = d_lo; d <= d_hi; ++d) {
        auto slice = m->basis_of_degree(d);
        for (const auto& b : slice->basis())
            if (!milnor_q(i, milnor_q(i, b)).is_zero())
                throw std::logic_error("margolis: Q_i^2 is not zero");
        MargolisSlice ms;
        ms.degree = d;
        ms.dim_ker = slice->dim() - detail::qi_rank(m, i, d);
        ms.dim_im = d >= q ? detail::qi_rank(m, i, d - q) : 0;
        if (ms.dim_im > ms.dim_ker) throw std::logic_error("margolis: im exceeds ker");
        ms.dim_h = ms.dim_ker - ms.dim_im;
        out.push_back(ms);
    }
    return out;
}

// ---- squares and the induced surjection onto H(P_k; Q_i) ------------------

struct PhiSurjectionRow {
    int degree = 0;
    std::size_t dim_h = 0;
    std::size_t expected_dim_h = 0;      // monomial count of F2[x_j^2]/(x_j^{2^{i+1}})
    bool squares_in_kernel = false;
    bool squares_span_h = false;
    bool truncation_maps_to_im = false;  // squares divisible by some x_j^{2^{i+1}}
};

struct PhiSurjectionReport {
    bool ok = true;
    std::vector<PhiSurjectionRow> rows;
};

inline PhiSurjectionReport phi_surjection_check(int k, int i, int d_max) {
    if (i != 0 && i != 1) throw std::invalid_argument("phi_surjection_check: i must be 0 or 1");
    PhiSurjectionReport rep;
    auto m = ModuleRealization::full_poly(k);
    const int q = (1 << (i + 1)) - 1;
    for (int d = 0; d <= d_max; ++d) {
        PhiSurjectionRow row;
        row.degree = d;
        auto slice = m->basis_of_degree(d);
        const std::size_t dim = slice->dim();

        // Q_i matrices out of degree d and into degree d
        std::vector<BitVector> im_cols;
        if (d >= q) {
            auto below = m->basis_of_degree(d - q);
            for (const auto& b : below->basis()) {
                Polynomial img = milnor_q(i, b);
                if (img.is_zero()) continue;
                im_cols.push_back(*slice->coordinates(img));
            }
        }
        std::size_t rank_out = detail::qi_rank(m, i, d);
        std::size_t dim_ker = dim - rank_out;
        F2Matrix im_rows(im_cols.size(), dim);
        for (std::size_t r = 0; r < im_cols.size(); ++r) im_rows.row(r) = im_cols[r];
        std::size_t dim_im = echelonize(im_rows).rank;
        row.dim_h = dim_ker - dim_im;

        // the squares in this degree, and the truncation ideal among them
        std::vector<BitVector> sq_cols;
        std::vector<BitVector> truncated_cols;
        row.squares_in_kernel = true;
        for (const auto& b : slice->basis()) {
            const Monomial& t = b.terms().front();
            bool all_even = true, truncated = false;
            for (int j = 0; j < k; ++j) {
                if (t.e[j] & 1) all_even = false;
                if (t.e[j] >= (1 << (i + 1))) truncated = true;
            }
            if (!all_even) continue;
            if (!milnor_q(i, b).is_zero()) row.squares_in_kernel = false;
            auto coords = *slice->coordinates(b);
            sq_cols.push_back(coords);
            if (truncated) truncated_cols.push_back(coords);
        }

        // classes of squares span H: im + squares must fill ker
        std::vector<BitVector> both = im_cols;
        both.insert(both.end(), sq_cols.begin(), sq_cols.end());
        F2Matrix both_rows(both.size(), dim);
        for (std::size_t r = 0; r < both.size(); ++r) both_rows.row(r) = both[r];
        row.squares_span_h = (echelonize(both_rows).rank == dim_ker);

        // squares in the truncation ideal die in homology
        row.truncation_maps_to_im = true;
        if (!truncated_cols.empty()) {
            MembershipSolver im_solver(im_cols, dim);
            for (const auto& tc : truncated_cols)
                if (!im_solver.solve(tc)) row.truncation_maps_to_im = false;
        }

        // expected homology: exponents 2 a_j with a_j < 2^i
        std::size_t expected = 0;
        auto rec = [&](auto&& self, int j, int rem) -> void {
            if (j == k) {
                if (rem == 0) ++expected;
                return;
            }
            for (int a = 0; 2 * a <= rem && a < (1 << i); ++a) self(self, j + 1, rem - 2 * a);
        };
        if (k == 0)
            expected = (d == 0) ? 1 : 0;
        else
            rec(rec, 0, d);
        row.expected_dim_h = expected;

        if (!row.squares_in_kernel || !row.squares_span_h || !row.truncation_maps_to_im ||
            row.dim_h != row.expected_dim_h)
            rep.ok = false;
        rep.rows.push_back(row);
    }
    return rep;
}

// ---- the rank-3 Dickson algebra as an abstract complex ---------------------
// Polynomial algebra on c_{3,2}, c_{3,1}, c_{3,0} with weighted degrees
// 4, 6, 7 and the derivations Q_0: c31 -> c30, Q_1: c32 -> c30.

namespace dickson_complex {

using CMono = std::array<std::uint32_t, 3>; // exponents of c32, c31, c30
using CPoly = std::vector<CMono>;           // sorted, duplicate-free

inline int cdeg(const CMono& m) { return 4 * m[0] + 6 * m[1] + 7 * m[2]; }

inline CPoly normalize(CPoly p) {
    std::sort(p.begin(), p.end());
    CPoly out;
    std::size_t i = 0;
    while (i < p.size()) {
        std::size_t j = i;
        while (j < p.size() && p[j] == p[i]) ++j;
        if ((j - i) & 1) out.push_back(p[i]);
        i = j;
    }
    return out;
}

// derivation with Q_0 c31 = c30, Q_1 c32 = c30, all other generators killed
inline CPoly q_action(int i, const CMono& m) {
    CPoly out;
    if (i == 0) {
        if (m[1] & 1) out.push_back({m[0], m[1] - 1, m[2] + 1});
    } else if (i == 1) {
        if (m[0] & 1) out.push_back({m[0] - 1, m[1], m[2] + 1});
    } else {
        throw std::invalid_argument("dickson_complex: i must be 0 or 1");
    }
    return out;
}

inline std::vector<CMono> monomials_of_degree(int d) {
    std::vector<CMono> out;
    if (d < 0) return out;
    for (std::uint32_t i0 = 0; 7 * i0 <= static_cast<std::uint32_t>(d); ++i0)
        for (std::uint32_t i1 = 0; 7 * i0 + 6 * i1 <= static_cast<std::uint32_t>(d); ++i1) {
            int r = d - static_cast<int>(7 * i0 + 6 * i1);
            if (r % 4) continue;
            out.push_back({static_cast<std::uint32_t>(r / 4), i1, i0});
        }
    std::sort(out.begin(), out.end());
    return out;
}

inline std::size_t q_rank(int i, int d) {
    const int q = (1 << (i + 1)) - 1;
    auto src = monomials_of_degree(d);
    auto dst = monomials_of_degree(d + q);
    std::map<CMono, std::size_t> index;
    for (std::size_t j = 0; j < dst.size(); ++j) index.emplace(dst[j], j);
    F2Matrix rows(src.size(), dst.size());
    for (std::size_t r = 0; r < src.size(); ++r)
        for (const auto& t : q_action(i, src[r])) rows.row(r).flip(index.at(t));
    return echelonize(rows).rank;
}

inline std::vector<MargolisSlice> margolis_dims(int i, int d_lo, int d_hi) {
    const int q = (1 << (i + 1)) - 1;
    std::vector<MargolisSlice> out;
    for (int d = d_lo; d <= d_hi; ++d) {
        MargolisSlice ms;
        ms.degree = d;
        ms.dim_ker = monomials_of_degree(d).size() - q_rank(i, d);
        ms.dim_im = d >= q ? q_rank(i, d - q) : 0;
        if (ms.dim_im > ms.dim_ker) throw std::logic_error("dickson_complex: im exceeds ker");
        ms.dim_h = ms.dim_ker - ms.dim_im;
        out.push_back(ms);
    }
    return out;
}

// number of monomials of F2[c32, c31^2] in degree d
inline std::size_t h_q0_expected(int d) {
    std::size_t count = 0;
    for (int b = 0; 12 * b <= d; ++b)
        if ((d - 12 * b) % 4 == 0) ++count;
    return count;
}

// A monomial lies in ker Q_0 iff it has the form c32^{i2} c31^{2u} c30^t,
// and with t > 0 it lies in im Q_0. Verified exhaustively through d_max.
inline bool kernel_image_form_check(int d_max) {
    for (int d = 0; d <= d_max; ++d) {
        auto monos = monomials_of_degree(d);
        // columns of Q_0 arriving in degree d
        auto below = monomials_of_degree(d - 1);
        std::map<CMono, std::size_t> index;
        for (std::size_t j = 0; j < monos.size(); ++j) index.emplace(monos[j], j);
        std::vector<BitVector> im_cols;
        for (const auto& b : below) {
            CPoly img = q_action(0, b);
            if (img.empty()) continue;
            BitVector col(monos.size());
            for (const auto& t : img) col.flip(index.at(t));
            im_cols.push_back(std::move(col));
        }
        MembershipSolver im_solver(im_cols, monos.size());
        for (const auto& m : monos) {
            bool in_ker = q_action(0, m).empty();
            if (in_ker != (m[1] % 2 == 0)) return false;
            if (in_ker && m[2] > 0) {
                BitVector v(monos.size());
                v.flip(index.at(m));
                if (!im_solver.solve(v)) return false;
            }
        }
    }
    return true;
}

// The inclusion into P_3 commutes with Q_i on every monomial through d_max.
inline bool embedding_commutes(int d_max) {
    for (int d = 0; d <= d_max; ++d) {
        for (const auto& m : monomials_of_degree(d)) {
            RMonomial rm;
            rm.c = m;
            Polynomial exp = r_expand(rm, 0);
            for (int i = 0; i <= 1; ++i) {
                Polynomial lhs = milnor_q(i, exp);
                Polynomial rhs(3);
                for (const auto& t : q_action(i, m)) {
                    RMonomial rt;
                    rt.c = t;
                    rhs = add(rhs, r_expand(rt, 0));
                }
                if (lhs != rhs) return false;
            }
        }
    }
    return true;
}

} // namespace dickson_complex

} // namespace steenrod
