// Graded A-submodule realizations inside ambient polynomial algebras, with
// degree-wise basis slices and membership tests.
//
// Realizations: P(k), Pbar(k), F(n) (free unstable, embedded in P_n as the
// submodule generated by x_1..x_n), P_s (x) M tensor realizations, and
// SingerFree(n) = P_3 (x)_{D_3} R_3 F(n), free over P_3 on St_3 F(n).
#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "steenrod/f2linalg.hpp"
#include "steenrod/poly.hpp"
#include "steenrod/singer.hpp"

namespace steenrod {

// A homogeneous degree slice with its coordinate map. Basis elements have
// pairwise distinct leading monomials in the slice order (module variables
// dominate Singer variables), so coordinates reduce by leading-term
// elimination.
class BasisSlice {
public:
    BasisSlice(int degree, int split, std::vector<Polynomial> basis)
        : degree_(degree), split_(split), basis_(std::move(basis)) {
        for (const auto& b : basis_)
            if (b.is_zero()) throw std::logic_error("BasisSlice: zero basis element");
        std::sort(basis_.begin(), basis_.end(), [&](const Polynomial& a, const Polynomial& b) {
            return split_cmp(lead_of(a), lead_of(b), split_) > 0;
        });
        for (std::size_t i = 0; i < basis_.size(); ++i) {
            auto [it, fresh] = lead_.emplace(lead_of(basis_[i]), i);
            if (!fresh) throw std::logic_error("BasisSlice: duplicate leading monomial");
        }
    }

    int degree() const { return degree_; }
    std::size_t dim() const { return basis_.size(); }
    const std::vector<Polynomial>& basis() const { return basis_; }

    // Coordinates of p in the slice basis, or nullopt for non-members.
    std::optional<BitVector> coordinates(const Polynomial& p) const {
        if (!p.is_zero() && (!p.is_homogeneous() || p.degree() != degree_))
            throw std::invalid_argument("coordinates: wrong degree");
        BitVector coords(basis_.size());
        Polynomial r = p;
        while (!r.is_zero()) {
            const Monomial& lm = lead_of(r);
            auto it = lead_.find(lm);
            if (it == lead_.end()) return std::nullopt;
            coords.flip(it->second);
            r = add(r, basis_[it->second]);
        }
        return coords;
    }

    bool contains(const Polynomial& p) const { return coordinates(p).has_value(); }

    Polynomial from_coordinates(const BitVector& coords) const {
        if (coords.size() != basis_.size())
            throw std::invalid_argument("from_coordinates: dimension mismatch");
        Polynomial out = basis_.empty() ? Polynomial() : Polynomial(basis_.front().n_vars());
        for (std::size_t i = 0; i < basis_.size(); ++i)
            if (coords.get(i)) out = add(out, basis_[i]);
        return out;
    }

private:
    const Monomial& lead_of(const Polynomial& p) const {
        const auto& ts = p.terms();
        std::size_t best = 0;
        for (std::size_t i = 1; i < ts.size(); ++i)
            if (split_cmp(ts[i], ts[best], split_) > 0) best = i;
        return ts[best];
    }

    int degree_;
    int split_;
    std::vector<Polynomial> basis_;
    std::unordered_map<Monomial, std::size_t, MonomialHash> lead_;
};

enum class ModuleKind { FullPolynomial, PbarPolynomial, FreeUnstable, TensorPoly, SingerFree };

class ModuleRealization : public std::enable_shared_from_this<ModuleRealization> {
public:
    static std::shared_ptr<ModuleRealization> full_poly(int k) {
        return wrap(ModuleKind::FullPolynomial, k, k, nullptr, 0);
    }
    static std::shared_ptr<ModuleRealization> pbar_poly(int k) {
        return wrap(ModuleKind::PbarPolynomial, k, k, nullptr, 0);
    }
    static std::shared_ptr<ModuleRealization> free_unstable(int n) {
        return wrap(ModuleKind::FreeUnstable, n, n, nullptr, 0);
    }
    static std::shared_ptr<ModuleRealization> tensor(int s, std::shared_ptr<ModuleRealization> inner) {
        if (!inner) throw std::invalid_argument("tensor: null inner module");
        const int ambient = s + inner->ambient_vars();
        return wrap(ModuleKind::TensorPoly, 0, ambient, std::move(inner), s);
    }
    static std::shared_ptr<ModuleRealization> tensor_p3(std::shared_ptr<ModuleRealization> inner) {
        return tensor(3, std::move(inner));
    }
    static std::shared_ptr<ModuleRealization> singer_free(int n) {
        return wrap(ModuleKind::SingerFree, n, 3 + n, nullptr, 3);
    }

    ModuleKind kind() const { return kind_; }
    int rank_param() const { return param_; }
    int ambient_vars() const { return ambient_vars_; }
    int singer_vars() const { return split_; }
    const std::shared_ptr<ModuleRealization>& inner() const { return inner_; }

    // Mini-language: P(k), Pbar(k), F(n), P3xF(n), P3xP(k), SingerFree(n);
    // PsxF(n) / PsxP(k) generalize the tensor forms.
    static std::shared_ptr<ModuleRealization> parse(const std::string& spec);

    std::string spec_string() const {
        switch (kind_) {
        case ModuleKind::FullPolynomial: return "P(" + std::to_string(param_) + ")";
        case ModuleKind::PbarPolynomial: return "Pbar(" + std::to_string(param_) + ")";
        case ModuleKind::FreeUnstable: return "F(" + std::to_string(param_) + ")";
        case ModuleKind::TensorPoly:
            return "P" + std::to_string(split_) + "x" + inner_->spec_string();
        case ModuleKind::SingerFree: return "SingerFree(" + std::to_string(param_) + ")";
        }
        return "?";
    }

    std::shared_ptr<const BasisSlice> basis_of_degree(int d) const {
        if (d < 0) throw std::invalid_argument("basis_of_degree: negative degree");
        std::lock_guard<std::recursive_mutex> lock(mtx_);
        auto it = cache_.find(d);
        if (it != cache_.end()) return it->second;
        auto slice = std::make_shared<const BasisSlice>(d, split_, build_basis(d));
        cache_.emplace(d, slice);
        return slice;
    }

    std::optional<BitVector> coordinates(int d, const Polynomial& p) const {
        return basis_of_degree(d)->coordinates(p);
    }

private:
    ModuleRealization() = default;
    static std::shared_ptr<ModuleRealization> wrap(ModuleKind kind, int param, int ambient,
                                                   std::shared_ptr<ModuleRealization> inner,
                                                   int split) {
        if (ambient > kMaxVars) throw std::invalid_argument("module ambient too large");
        auto m = std::shared_ptr<ModuleRealization>(new ModuleRealization());
        m->kind_ = kind;
        m->param_ = param;
        m->ambient_vars_ = ambient;
        m->inner_ = std::move(inner);
        m->split_ = split;
        return m;
    }

    std::vector<Polynomial> build_basis(int d) const;

    ModuleKind kind_ = ModuleKind::FullPolynomial;
    int param_ = 0;
    int ambient_vars_ = 0;
    int split_ = 0; // number of leading Singer variables; 0 for plain modules
    std::shared_ptr<ModuleRealization> inner_;
    mutable std::recursive_mutex mtx_;
    mutable std::map<int, std::shared_ptr<const BasisSlice>> cache_;
};

namespace detail {

inline void enumerate_monomials(int n_vars, int d, std::vector<Monomial>& out) {
    Monomial acc;
    auto rec = [&](auto&& self, int j, int remaining) -> void {
        if (j == n_vars - 1) {
            acc.e[j] = static_cast<std::uint16_t>(remaining);
            out.push_back(acc);
            acc.e[j] = 0;
            return;
        }
        for (int e = 0; e <= remaining; ++e) {
            acc.e[j] = static_cast<std::uint16_t>(e);
            self(self, j + 1, remaining - e);
        }
        acc.e[j] = 0;
    };
    if (n_vars == 0) {
        if (d == 0) out.push_back(acc);
        return;
    }
    rec(rec, 0, d);
}

// Reduce candidates to a canonical echelon basis under grevlex. Returns the
// reduced basis (each survivor fully reduced against the others).
inline std::vector<Polynomial> echelon_basis(const std::vector<Polynomial>& gens) {
    std::vector<Polynomial> basis; // kept reduced, with distinct leads
    std::unordered_map<Monomial, std::size_t, MonomialHash> leads;
    auto lead = [](const Polynomial& p) { return p.terms().front(); };
    for (const auto& g : gens) {
        Polynomial r = g;
        while (!r.is_zero()) {
            auto it = leads.find(lead(r));
            if (it == leads.end()) break;
            r = add(r, basis[it->second]);
        }
        if (r.is_zero()) continue;
        leads.emplace(lead(r), basis.size());
        basis.push_back(std::move(r));
    }
    // back-substitute for the reduced form
    for (std::size_t i = 0; i < basis.size(); ++i) {
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto& t : basis[i].terms()) {
                auto it = leads.find(t);
                if (it != leads.end() && it->second != i) {
                    basis[i] = add(basis[i], basis[it->second]);
                    changed = true;
                    break;
                }
            }
        }
    }
    std::sort(basis.begin(), basis.end(), [&](const Polynomial& a, const Polynomial& b) {
        return grevlex_cmp(a.terms().front(), b.terms().front()) > 0;
    });
    return basis;
}

} // namespace detail

inline std::vector<Polynomial> ModuleRealization::build_basis(int d) const {
    std::vector<Polynomial> out;
    switch (kind_) {
    case ModuleKind::FullPolynomial:
    case ModuleKind::PbarPolynomial: {
        if (kind_ == ModuleKind::PbarPolynomial && d == 0) return out;
        std::vector<Monomial> monos;
        detail::enumerate_monomials(param_, d, monos);
        for (const auto& m : monos) out.push_back(Polynomial::monomial(param_, m));
        return out;
    }
    case ModuleKind::FreeUnstable: {
        const int n = param_;
        if (d < n) return out;
        if (n == 0) return d == 0 ? std::vector<Polynomial>{Polynomial::one(0)} : out;
        if (d == n) {
            Monomial m;
            for (int j = 0; j < n; ++j) m.e[j] = 1;
            out.push_back(Polynomial::monomial(n, m));
            return out;
        }
        // closure: F(n)_d = sum_k Sq^k F(n)_{d-k}
        std::vector<Polynomial> gens;
        for (int k = 1; k <= d - n; ++k) {
            auto lower = basis_of_degree(d - k);
            for (const auto& b : lower->basis()) {
                Polynomial s = sq(k, b);
                if (!s.is_zero()) gens.push_back(std::move(s));
            }
        }
        return detail::echelon_basis(gens);
    }
    case ModuleKind::TensorPoly: {
        const int s = split_;
        const int nv = ambient_vars_;
        for (int a = 0; a <= d; ++a) {
            auto inner_slice = inner_->basis_of_degree(d - a);
            if (inner_slice->dim() == 0) continue;
            std::vector<Monomial> monos;
            detail::enumerate_monomials(s, a, monos);
            for (const auto& b : inner_slice->basis()) {
                Polynomial shifted = embed(b, s, nv);
                for (const auto& u : monos) {
                    Polynomial up = Polynomial::monomial(s, u);
                    out.push_back(mul(embed(up, 0, nv), shifted));
                }
            }
        }
        return out;
    }
    case ModuleKind::SingerFree: {
        const int n = param_;
        const int nv = ambient_vars_;
        for (int b = 0; 8 * b <= d; ++b) {
            auto labels = st3_labels(n, b);
            if (labels.empty()) continue;
            std::vector<Monomial> monos;
            detail::enumerate_monomials(3, d - 8 * b, monos);
            for (const auto& lam : labels) {
                Polynomial st = st3_label_expand(n, lam);
                for (const auto& u : monos) {
                    Polynomial up = Polynomial::monomial(3, u);
                    out.push_back(mul(embed(up, 0, nv), st));
                }
            }
        }
        return out;
    }
    }
    return out;
}

inline std::shared_ptr<ModuleRealization> ModuleRealization::parse(const std::string& spec) {
    auto fail = [&] { throw std::invalid_argument("bad module spec: " + spec); };
    auto num_in_parens = [&](std::size_t open) -> int {
        if (open >= spec.size() || spec[open] != '(' || spec.back() != ')') fail();
        int v = 0;
        for (std::size_t i = open + 1; i + 1 < spec.size(); ++i) {
            if (spec[i] < '0' || spec[i] > '9') fail();
            v = v * 10 + (spec[i] - '0');
        }
        if (open + 1 >= spec.size() - 1) fail();
        return v;
    };
    if (spec.rfind("Pbar", 0) == 0) return pbar_poly(num_in_parens(4));
    if (spec.rfind("SingerFree", 0) == 0) return singer_free(num_in_parens(10));
    if (spec.rfind("F", 0) == 0) return free_unstable(num_in_parens(1));
    // P<s>xF(n), P<s>xP(k)
    if (!spec.empty() && spec[0] == 'P') {
        std::size_t i = 1;
        while (i < spec.size() && spec[i] >= '0' && spec[i] <= '9') ++i;
        if (i < spec.size() && spec[i] == 'x' && i > 1) {
            int s = std::stoi(spec.substr(1, i - 1));
            auto inner = parse(spec.substr(i + 1));
            return tensor(s, inner);
        }
        if (i < spec.size() && spec[i] == '(') return full_poly(num_in_parens(1));
    }
    fail();
    return nullptr;
}

// Verifies, for all d <= d_max and 1 <= k <= d, that Sq^k maps the degree-d
// slice into the degree-(d+k) slice.
struct ClosureReport {
    bool closed = true;
    int bad_degree = -1, bad_k = -1;
    std::string witness;
};

inline ClosureReport check_a_closure(const std::shared_ptr<ModuleRealization>& m, int d_max) {
    ClosureReport rep;
    for (int d = 0; d <= d_max; ++d) {
        auto slice = m->basis_of_degree(d);
        for (int k = 1; k <= d; ++k) {
            auto target = m->basis_of_degree(d + k);
            for (const auto& b : slice->basis()) {
                Polynomial s = sq(k, b);
                if (s.is_zero()) continue;
                if (!target->coordinates(s)) {
                    rep.closed = false;
                    rep.bad_degree = d;
                    rep.bad_k = k;
                    rep.witness = to_string(b);
                    return rep;
                }
            }
        }
    }
    return rep;
}

} // namespace steenrod
