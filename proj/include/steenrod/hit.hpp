// The hit-problem solver: membership of a homogeneous element in the span of
// positive-degree Steenrod operations applied to a module realization, with
// restricted-subalgebra variants and re-checkable certificates.
//
// Generator sets: A is generated by the Sq^{2^i} and any positive-degree
// product acts through its leftmost generator, so Abar N = sum_i Sq^{2^i} N;
// likewise Abar(m) N = sum_{i<=m} Sq^{2^i} N. The AllUpTo mode adds every
// Sq^k column and exists to cross-check this reduction.
#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <stdexcept>
#include <utility>
#include <vector>

#include "steenrod/f2linalg.hpp"
#include "steenrod/modules.hpp"
#include "steenrod/poly.hpp"
#include "steenrod/singer.hpp"

namespace steenrod {

struct OpSet {
    enum class Kind { Full, Am, Explicit, AllUpTo };
    Kind kind = Kind::Full;
    int m = -1;              // for Am
    std::vector<int> ks;     // for Explicit

    static OpSet full() { return OpSet{}; }
    static OpSet a(int m) {
        if (m < 0) throw std::invalid_argument("OpSet: A(m) needs m >= 0");
        return OpSet{Kind::Am, m, {}};
    }
    static OpSet explicit_ops(std::vector<int> ks) {
        for (int k : ks)
            if (k < 1) throw std::invalid_argument("OpSet: operations must have positive degree");
        std::sort(ks.begin(), ks.end());
        ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
        return OpSet{Kind::Explicit, -1, std::move(ks)};
    }
    static OpSet all_up_to() { return OpSet{Kind::AllUpTo, -1, {}}; }

    // Operation degrees contributing to targets of degree d, ascending.
    std::vector<int> ops_for_degree(int d) const {
        std::vector<int> out;
        switch (kind) {
        case Kind::Full:
            for (int k = 1; k <= d; k *= 2) out.push_back(k);
            break;
        case Kind::Am:
            for (int i = 0; i <= m; ++i) {
                int k = 1 << i;
                if (k <= d) out.push_back(k);
            }
            break;
        case Kind::Explicit:
            for (int k : ks)
                if (k <= d) out.push_back(k);
            break;
        case Kind::AllUpTo:
            for (int k = 1; k <= d; ++k) out.push_back(k);
            break;
        }
        return out;
    }

    std::string to_string() const {
        switch (kind) {
        case Kind::Full: return "full";
        case Kind::Am: return "A(" + std::to_string(m) + ")";
        case Kind::AllUpTo: return "allk";
        case Kind::Explicit: {
            std::string s = "sq:";
            for (std::size_t i = 0; i < ks.size(); ++i) {
                if (i) s += ',';
                s += std::to_string(ks[i]);
            }
            return s;
        }
        }
        return "?";
    }

    // "full" | "A(m)" | "allk" | "sq:k1,k2,..."
    static OpSet parse(const std::string& s) {
        if (s == "full") return full();
        if (s == "allk") return all_up_to();
        if (s.rfind("A(", 0) == 0 && s.back() == ')')
            return a(std::stoi(s.substr(2, s.size() - 3)));
        if (s.rfind("sq:", 0) == 0) {
            std::vector<int> ks;
            std::string rest = s.substr(3);
            std::size_t pos = 0;
            while (pos < rest.size()) {
                std::size_t comma = rest.find(',', pos);
                if (comma == std::string::npos) comma = rest.size();
                ks.push_back(std::stoi(rest.substr(pos, comma - pos)));
                pos = comma + 1;
            }
            return explicit_ops(std::move(ks));
        }
        throw std::invalid_argument("bad operation set: " + s);
    }

    bool operator==(const OpSet&) const = default;
};

struct HitQuery {
    std::shared_ptr<ModuleRealization> module;
    Polynomial target; // homogeneous, in the module's degree-|target| slice
    OpSet ops;
};

struct HitCertificate {
    std::string module_spec;
    int degree = 0;
    Polynomial target;
    std::vector<std::pair<int, Polynomial>> terms; // (operation degree k, preimage)
};

struct HitReport {
    bool hit = false;
    std::size_t slice_dim = 0;
    std::size_t hit_dim = 0;
    std::optional<HitCertificate> certificate;
};

// Assembles, for one (module, degree, operation set), the matrix whose
// columns are Sq^k(b) over the basis elements b of the lower slices, and
// answers membership queries against it.
class DegreeSolver {
public:
    DegreeSolver(std::shared_ptr<ModuleRealization> module, int degree, OpSet ops)
        : module_(std::move(module)), degree_(degree), ops_(std::move(ops)),
          slice_(module_->basis_of_degree(degree)) {
        std::vector<BitVector> cols;
        for (int k : ops_.ops_for_degree(degree_)) {
            auto lower = module_->basis_of_degree(degree_ - k);
            for (std::size_t i = 0; i < lower->dim(); ++i) {
                Polynomial img = sq(k, lower->basis()[i]);
                if (img.is_zero()) continue;
                auto coords = slice_->coordinates(img);
                if (!coords)
                    throw std::logic_error("DegreeSolver: Sq image escaped the module slice");
                cols.push_back(std::move(*coords));
                sources_.push_back({k, i});
            }
        }
        solver_ = std::make_unique<MembershipSolver>(cols, slice_->dim());
    }

    std::size_t slice_dim() const { return slice_->dim(); }
    std::size_t hit_dim() const { return solver_->rank(); }
    const std::shared_ptr<const BasisSlice>& slice() const { return slice_; }

    HitReport solve(const Polynomial& target) const {
        auto tc = slice_->coordinates(target);
        if (!tc) throw std::invalid_argument("hit query: target is outside the module slice");
        HitReport rep;
        rep.slice_dim = slice_dim();
        rep.hit_dim = hit_dim();
        auto sol = solver_->solve(*tc);
        if (!sol) return rep;
        rep.hit = true;
        HitCertificate cert;
        cert.module_spec = module_->spec_string();
        cert.degree = degree_;
        cert.target = target;
        std::map<int, Polynomial> preimages;
        for (std::size_t j = 0; j < sources_.size(); ++j) {
            if (!sol->get(j)) continue;
            const auto& [k, idx] = sources_[j];
            auto lower = module_->basis_of_degree(degree_ - k);
            auto it = preimages.find(k);
            if (it == preimages.end())
                preimages.emplace(k, lower->basis()[idx]);
            else
                it->second = add(it->second, lower->basis()[idx]);
        }
        for (auto& [k, p] : preimages)
            if (!p.is_zero()) cert.terms.emplace_back(k, std::move(p));
        rep.certificate = std::move(cert);
        return rep;
    }

private:
    std::shared_ptr<ModuleRealization> module_;
    int degree_;
    OpSet ops_;
    std::shared_ptr<const BasisSlice> slice_;
    std::vector<std::pair<int, std::size_t>> sources_; // (k, index in lower slice)
    std::unique_ptr<MembershipSolver> solver_;
};

struct CertVerification {
    bool ok = false;
    std::string message;
    Polynomial discrepancy;
};

// Independent recomputation: evaluate each Sq^k(preimage) directly, sum,
// compare with the target, and check every preimage's membership.
inline CertVerification verify_certificate(const HitCertificate& cert,
                                           std::shared_ptr<ModuleRealization> module = nullptr) {
    CertVerification out;
    if (!module) module = ModuleRealization::parse(cert.module_spec);
    auto slice = module->basis_of_degree(cert.degree);
    if (!slice->coordinates(cert.target)) {
        out.message = "target is not in the module slice";
        return out;
    }
    Polynomial sum(module->ambient_vars());
    for (const auto& [k, pre] : cert.terms) {
        if (k < 1) {
            out.message = "operation degree must be positive";
            return out;
        }
        if (!pre.is_zero() &&
            !module->basis_of_degree(cert.degree - k)->coordinates(pre)) {
            out.message = "preimage for Sq^" + std::to_string(k) + " is not in the module";
            return out;
        }
        sum = add(sum, sq(k, pre));
    }
    out.discrepancy = add(sum, cert.target);
    if (!out.discrepancy.is_zero()) {
        out.message = "operation images do not sum to the target";
        return out;
    }
    out.ok = true;
    out.message = "ok";
    return out;
}

// One-shot query; the certificate is re-verified before being returned.
inline HitReport hit_membership(const std::shared_ptr<ModuleRealization>& module,
                                const Polynomial& target, const OpSet& ops) {
    if (!target.is_homogeneous() || target.is_zero())
        throw std::invalid_argument("hit query: target must be homogeneous and non-zero");
    DegreeSolver solver(module, target.degree(), ops);
    HitReport rep = solver.solve(target);
    if (rep.hit) {
        auto check = verify_certificate(*rep.certificate, module);
        if (!check.ok) throw std::logic_error("hit_membership: certificate failed: " + check.message);
    }
    return rep;
}

inline HitReport hit_membership(const HitQuery& q) {
    return hit_membership(q.module, q.target, q.ops);
}

inline std::size_t indecomposables_dim(const std::shared_ptr<ModuleRealization>& module, int d) {
    DegreeSolver solver(module, d, OpSet::full());
    return solver.slice_dim() - solver.hit_dim();
}

// ---- Q_0 structure of D_3 (x) M -------------------------------------------

struct Q0Reduction {
    Polynomial kernel_part; // sum over even i1, i0 = 0 of c^I y_I
    Polynomial preimage;    // Q_0(preimage) + kernel_part recombines to y
    bool conditions_hold = false;
    std::string message;
};

// Decomposes y in ker Q_0 inside the D_3 (x) M realization (ambient
// P_3 (x) M): checks Q_0 y_{i2,2u,t+1} = y_{i2,2u+1,t} and Q_0 y_{i2,2u,0} = 0
// on the coefficients, and produces y = kernel_part + Q_0(preimage).
inline Q0Reduction q0_reduce(const std::shared_ptr<ModuleRealization>& inner,
                             const Polynomial& y) {
    Q0Reduction out;
    if (y.is_zero()) {
        out.conditions_hold = true;
        out.message = "zero input";
        const int nv = 3 + inner->ambient_vars();
        out.kernel_part = Polynomial::zero(nv);
        out.preimage = Polynomial::zero(nv);
        return out;
    }
    if (!y.is_homogeneous()) throw std::invalid_argument("q0_reduce: input must be homogeneous");
    const int k_inner = inner->ambient_vars();
    const int nv = 3 + k_inner;
    if (y.n_vars() != nv) throw std::invalid_argument("q0_reduce: ambient mismatch");
    if (!milnor_q(0, y).is_zero()) throw std::invalid_argument("q0_reduce: input is not in ker Q_0");
    const int d = y.degree();

    // basis of the D_3 (x) M slice: pairs (c^I, inner basis element)
    struct Pair {
        std::array<std::uint32_t, 3> I;
        Polynomial inner_elem; // in the inner ambient
        Polynomial product;    // expanded in P_{3+k}
    };
    std::vector<Pair> pairs;
    for (int i0 = 0; 7 * i0 <= d; ++i0)
        for (int i1 = 0; 7 * i0 + 6 * i1 <= d; ++i1)
            for (int i2 = 0; 7 * i0 + 6 * i1 + 4 * i2 <= d; ++i2) {
                int b = d - 7 * i0 - 6 * i1 - 4 * i2;
                auto slice = inner->basis_of_degree(b);
                if (slice->dim() == 0) continue;
                RMonomial cm;
                cm.c = {static_cast<std::uint32_t>(i2), static_cast<std::uint32_t>(i1),
                        static_cast<std::uint32_t>(i0)};
                Polynomial cexp = r_expand(cm, k_inner);
                for (const auto& m : slice->basis())
                    pairs.push_back({cm.c, m, mul(cexp, embed(m, 3, nv))});
            }

    // solve for the coefficients of y over the pair basis
    std::vector<Monomial> support;
    for (const auto& p : pairs)
        for (const auto& t : p.product.terms()) support.push_back(t);
    for (const auto& t : y.terms()) support.push_back(t);
    std::sort(support.begin(), support.end(),
              [](const Monomial& a, const Monomial& b) { return grevlex_cmp(a, b) > 0; });
    support.erase(std::unique(support.begin(), support.end()), support.end());
    std::unordered_map<Monomial, std::size_t, MonomialHash> index;
    for (std::size_t i = 0; i < support.size(); ++i) index.emplace(support[i], i);
    auto to_vec = [&](const Polynomial& p) {
        BitVector v(support.size());
        for (const auto& t : p.terms()) v.flip(index.at(t));
        return v;
    };
    std::vector<BitVector> cols;
    cols.reserve(pairs.size());
    for (const auto& p : pairs) cols.push_back(to_vec(p.product));
    auto sol = MembershipSolver(cols, support.size()).solve(to_vec(y));
    if (!sol) throw std::invalid_argument("q0_reduce: input is not in the D_3 (x) M span");

    // y_I as inner polynomials
    std::map<std::array<std::uint32_t, 3>, Polynomial> coeff;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (!sol->get(i)) continue;
        auto it = coeff.find(pairs[i].I);
        if (it == coeff.end())
            coeff.emplace(pairs[i].I, pairs[i].inner_elem);
        else
            it->second = add(it->second, pairs[i].inner_elem);
    }
    auto get_coeff = [&](std::uint32_t i2, std::uint32_t i1, std::uint32_t i0) {
        auto it = coeff.find({i2, i1, i0});
        return it == coeff.end() ? Polynomial::zero(k_inner) : it->second;
    };

    out.conditions_hold = true;
    for (const auto& [I, yI] : coeff) {
        if (I[1] % 2 == 0) {
            if (I[2] == 0) {
                if (!milnor_q(0, yI).is_zero()) {
                    out.conditions_hold = false;
                    out.message = "Q_0 y_{i2,2u,0} != 0";
                }
            } else {
                // condition at (i2, 2u, t+1): Q_0 y_{i2,2u,t+1} = y_{i2,2u+1,t}
                Polynomial rhs = get_coeff(I[0], I[1] + 1, I[2] - 1);
                if (milnor_q(0, yI) != rhs) {
                    out.conditions_hold = false;
                    out.message = "Q_0 y_{i2,2u,t+1} != y_{i2,2u+1,t}";
                }
            }
        } else {
            // odd i1 coefficients must be matched by condition (1); checked above
            Polynomial lhs = milnor_q(0, get_coeff(I[0], I[1] - 1, I[2] + 1));
            if (lhs != yI) {
                out.conditions_hold = false;
                out.message = "odd-i1 coefficient not matched";
            }
        }
    }

    // assemble the two parts
    out.kernel_part = Polynomial::zero(nv);
    out.preimage = Polynomial::zero(nv);
    for (const auto& [I, yI] : coeff) {
        if (yI.is_zero()) continue;
        if (I[1] % 2 == 0 && I[2] == 0) {
            RMonomial cm;
            cm.c = I;
            out.kernel_part = add(out.kernel_part, mul(r_expand(cm, k_inner), embed(yI, 3, nv)));
        }
        if (I[1] % 2 == 0 && I[2] > 0) {
            RMonomial cm;
            cm.c = {I[0], I[1] + 1, I[2] - 1};
            out.preimage = add(out.preimage, mul(r_expand(cm, k_inner), embed(yI, 3, nv)));
        }
    }
    if (out.conditions_hold) {
        Polynomial recombined = add(out.kernel_part, milnor_q(0, out.preimage));
        if (recombined != y) {
            out.conditions_hold = false;
            out.message = "recombination mismatch";
        }
    }
    if (out.message.empty()) out.message = "ok";
    return out;
}

// ---- length/fullness machinery for R~_3 F(n) -------------------------------

struct ExcludeStepResult {
    Polynomial applied;                                  // Sq^{4*2^i}(m c32^{-2^i} v^{2^f})
    std::vector<std::pair<SingerMonomial, Polynomial>> residues; // (s_l, v_l)
    bool equality_holds = false;
    bool main_term_found = false;
    bool residues_in_rtilde = true;
    bool fullness_bounded = true; // every residue has fullness <= i
};

// Applies Sq^{4*2^i} to m c_{3,2}^{-2^i} v^{2^f} and checks the resulting
// identity m v^{2^f} + sum_l s_l v_l^{2^f} with fullness(s_l) <= i < f.
// Preconditions: i < f = fullness(m), binom(length(m), 2^i) even.
inline ExcludeStepResult exclude_step(const SingerMonomial& m, int i, const Polynomial& v,
                                      int f_claimed = -1) {
    StandardForm sf = standard_form(m);
    const int f = static_cast<int>(sf.f);
    if (f_claimed >= 0 && f_claimed != f)
        throw std::invalid_argument("exclude_step: fullness mismatch");
    if (!m.in_rtilde()) throw std::invalid_argument("exclude_step: m must lie in the positive part");
    if (i < 0 || i >= f) throw std::invalid_argument("exclude_step: requires 0 <= i < fullness");
    if (binom_mod2(static_cast<std::uint64_t>(m.length()), 1u << i))
        throw std::invalid_argument("exclude_step: binomial hypothesis fails");
    if (m.I[0] < (1u << i)) throw std::invalid_argument("exclude_step: c32 exponent too small");
    if (v.n_vars() != 3) throw std::invalid_argument("exclude_step: v must lie in P_3");

    const int n = m.n;
    const int nv = 3 + n;
    const int K = 4 * (1 << i);
    SingerMonomial mp = m; // m c32^{-2^i}
    mp.I[0] -= 1u << i;

    ExcludeStepResult out;
    Polynomial v_emb = embed(v, 0, nv);
    Polynomial vf = pow(v_emb, 1u << f);
    out.applied = sq(K, mul(expand(mp), vf));

    // Cartan split: only Sq^b with 2^f | b act on v^{2^f}
    Polynomial rhs = mul(expand(m), vf);
    for (int b = 0; b <= K; b += (1 << f)) {
        Polynomial vb = sq(b >> f, v);
        if (vb.is_zero()) continue;
        RPoly w = r_sq(K - b, singer_to_rpoly(mp));
        std::vector<SingerMonomial> terms = rpoly_to_singer(w, n);
        for (const auto& t : terms) {
            if (b == 0 && t == m) {
                out.main_term_found = true;
                continue; // this is the m v^{2^f} term
            }
            out.residues.emplace_back(t, vb);
        }
    }
    if (v.is_zero()) out.main_term_found = true; // degenerate: both sides vanish

    for (const auto& [s, vl] : out.residues) {
        rhs = add(rhs, mul(expand(s), pow(embed(vl, 0, nv), 1u << f)));
        if (!s.in_rtilde()) out.residues_in_rtilde = false;
        if (static_cast<int>(standard_form(s).f) > i) out.fullness_bounded = false;
    }
    out.equality_holds = (out.applied == rhs);
    return out;
}

struct ThetaTerm {
    SingerMonomial term;
    int length = 0;
    std::uint32_t fullness = 0;
    bool dichotomy_ok = false; // fullness < f, or length not congruent
};

// Expands Sq^k(m) for a full monomial m with l(m) = 2^f - 1 mod 2^f and
// 1 <= k <= 2^{f+1}; each term must have smaller fullness or break the
// length congruence at its own fullness.
inline std::vector<ThetaTerm> analyze_theta_terms(int k, const SingerMonomial& m) {
    StandardForm sf = standard_form(m);
    const int f = static_cast<int>(sf.f);
    if (!sf.is_full) throw std::invalid_argument("analyze_theta_terms: m must be full");
    if (k < 1 || k > (1 << (f + 1)))
        throw std::invalid_argument("analyze_theta_terms: k out of range");
    const int l = m.length();
    if ((l & ((1 << f) - 1)) != (1 << f) - 1)
        throw std::invalid_argument("analyze_theta_terms: length congruence fails");

    RPoly image = r_sq(k, singer_to_rpoly(m));
    std::vector<ThetaTerm> out;
    for (const auto& t : rpoly_to_singer(image, m.n)) {
        ThetaTerm tt;
        tt.term = t;
        tt.length = t.length();
        tt.fullness = standard_form(t).f;
        const int tf = static_cast<int>(tt.fullness);
        bool congruent = (tt.length & ((1 << tf) - 1)) == (1 << tf) - 1;
        tt.dichotomy_ok = (tf < f) || !congruent;
        out.push_back(std::move(tt));
    }
    return out;
}

} // namespace steenrod
