// Dickson and Mui invariants, the total Steenrod power St_s, and the rank-3
// Singer construction R_3 F(n): its monomial basis c^I St_3(y), the length
// grading and the standard form / fullness combinatorics.
//
// Layout convention everywhere: the s Singer variables occupy the lowest
// ambient indices; module variables follow.
#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <map>
#include <mutex>
#include <string>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "steenrod/f2linalg.hpp"
#include "steenrod/poly.hpp"

namespace steenrod {

namespace detail {

// prod_{v in span(x_1..x_s)} (X + v), computed in P_{s+1} with X the last
// variable. Its X^{2^i} coefficients are the rank-s Dickson invariants.
inline Polynomial omega_product(int s) {
    const int n = s + 1;
    Polynomial prod = Polynomial::one(n);
    for (unsigned mask = 0; mask < (1u << s); ++mask) {
        Polynomial factor = Polynomial::variable(n, s); // X
        for (int i = 0; i < s; ++i)
            if (mask & (1u << i)) factor = add(factor, Polynomial::variable(n, i));
        prod = mul(prod, factor);
    }
    return prod;
}

} // namespace detail

// Dickson invariant c_{s,i} in P_s, of degree 2^s - 2^i.
inline Polynomial dickson(int s, int i) {
    if (s < 1 || s > 4 || i < 0 || i >= s)
        throw std::invalid_argument("dickson: index out of range");
    static std::map<std::pair<int, int>, Polynomial> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find({s, i});
    if (it != cache.end()) return it->second;
    Polynomial omega = detail::omega_product(s);
    std::vector<Monomial> picked;
    const int target = 1 << i;
    for (const auto& t : omega.terms()) {
        if (t.e[s] == target) {
            Monomial m = t;
            m.e[s] = 0;
            picked.push_back(m);
        }
    }
    Polynomial c = Polynomial::from_terms(s, std::move(picked));
    if (c.degree() != (1 << s) - (1 << i) || !c.is_homogeneous())
        throw std::logic_error("dickson: unexpected degree");
    cache.emplace(std::make_pair(s, i), c);
    return c;
}

// Mui invariant V_s(j) = prod_{y in F_2^s} (x_j + y) in P_{s + module_vars},
// for the 1-based module variable index j.
inline Polynomial mui(int s, int j, int module_vars) {
    if (s < 1 || s > 4) throw std::invalid_argument("mui: rank out of range");
    if (j < 1 || j > module_vars)
        throw std::invalid_argument("mui: module variable out of range");
    static std::map<std::array<int, 3>, Polynomial> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find({s, j, module_vars});
    if (it != cache.end()) return it->second;
    const int n = s + module_vars;
    Polynomial prod = Polynomial::one(n);
    for (unsigned mask = 0; mask < (1u << s); ++mask) {
        Polynomial factor = Polynomial::variable(n, s + j - 1);
        for (int i = 0; i < s; ++i)
            if (mask & (1u << i)) factor = add(factor, Polynomial::variable(n, i));
        prod = mul(prod, factor);
    }
    cache.emplace(std::array<int, 3>{s, j, module_vars}, prod);
    return prod;
}

// St_1(p) = sum_i u^{|p|-i} Sq^i(p), with a fresh Singer variable u inserted
// at index 0.
inline Polynomial st1(const Polynomial& p) {
    if (!p.is_homogeneous()) throw std::invalid_argument("st1: input must be homogeneous");
    const int n = p.n_vars() + 1;
    if (n > kMaxVars) throw std::invalid_argument("st1: ambient too large");
    if (p.is_zero()) return Polynomial::zero(n);
    const int d = p.degree();
    Polynomial out(n);
    for (int i = 0; i <= d; ++i) {
        Polynomial si = sq(i, p);
        if (si.is_zero()) continue;
        Polynomial u_pow = pow(Polynomial::variable(n, 0), static_cast<unsigned>(d - i));
        out = add(out, mul(u_pow, embed(si, 1, n)));
    }
    return out;
}

// St_s by iterating St_1; the definitional route, kept as a cross-check.
inline Polynomial st_s_recursive(int s, const Polynomial& p) {
    if (s < 1) throw std::invalid_argument("st_s: rank must be positive");
    Polynomial out = p;
    for (int level = 0; level < s; ++level) out = st1(out);
    return out;
}

// St_s by multiplicativity: on a module monomial prod x_j^{e_j} it equals
// prod V_s(j)^{e_j}, extended additively over the terms of a homogeneous
// polynomial.
inline Polynomial st_s(int s, const Polynomial& p) {
    if (s < 1) throw std::invalid_argument("st_s: rank must be positive");
    if (!p.is_homogeneous()) throw std::invalid_argument("st_s: input must be homogeneous");
    const int k = p.n_vars();
    const int n = s + k;
    if (n > kMaxVars) throw std::invalid_argument("st_s: ambient too large");
    Polynomial out(n);
    for (const auto& t : p.terms()) {
        Polynomial prod = Polynomial::one(n);
        for (int j = 0; j < k; ++j)
            if (t.e[j]) prod = mul(prod, pow(mui(s, j + 1, k), t.e[j]));
        out = add(out, prod);
    }
    return out;
}

// ---- formal layer: the polynomial ring F2[c_{3,2}, c_{3,1}, c_{3,0}, V(1..n)]
// with the Steenrod action on generators given by the rank-3 action table.

struct RMonomial {
    std::array<std::uint32_t, 3> c{}; // exponents of c_{3,2}, c_{3,1}, c_{3,0}
    std::vector<std::uint32_t> v;     // exponents of V(1)..V(n); no trailing zeros

    int degree() const {
        int d = 4 * c[0] + 6 * c[1] + 7 * c[2];
        for (auto e : v) d += 8 * e;
        return d;
    }
    int length() const {
        int l = c[0] + c[1] + c[2];
        for (auto e : v) l += e;
        return l;
    }
    void canon() {
        while (!v.empty() && v.back() == 0) v.pop_back();
    }
    bool operator==(const RMonomial&) const = default;
    auto operator<=>(const RMonomial&) const = default;
};

using RPoly = std::vector<RMonomial>; // sorted, duplicate-free (F2 sum)

inline RPoly r_normalize(RPoly p) {
    for (auto& m : p) m.canon();
    std::sort(p.begin(), p.end());
    RPoly out;
    std::size_t i = 0;
    while (i < p.size()) {
        std::size_t j = i;
        while (j < p.size() && p[j] == p[i]) ++j;
        if ((j - i) & 1) out.push_back(p[i]);
        i = j;
    }
    return out;
}

inline RPoly r_add(const RPoly& a, const RPoly& b) {
    RPoly out = a;
    out.insert(out.end(), b.begin(), b.end());
    return r_normalize(std::move(out));
}

inline RMonomial r_mono_mul(const RMonomial& a, const RMonomial& b) {
    RMonomial out = a;
    for (int i = 0; i < 3; ++i) out.c[i] += b.c[i];
    if (out.v.size() < b.v.size()) out.v.resize(b.v.size(), 0);
    for (std::size_t i = 0; i < b.v.size(); ++i) out.v[i] += b.v[i];
    out.canon();
    return out;
}

inline RPoly r_mul(const RPoly& a, const RPoly& b) {
    RPoly out;
    out.reserve(a.size() * b.size());
    for (const auto& x : a)
        for (const auto& y : b) out.push_back(r_mono_mul(x, y));
    return r_normalize(std::move(out));
}

namespace detail {

// Sq^k on a single generator of R_3 P_k: the rank-3 action table, with the
// V row written for slot 0. Absent entries are zero.
inline RPoly r_sq_gen(int kind, int k) {
    auto mono = [](std::uint32_t a, std::uint32_t b, std::uint32_t c, std::uint32_t vexp) {
        RMonomial m;
        m.c = {a, b, c};
        if (vexp) m.v = {vexp};
        return RPoly{m};
    };
    switch (kind) {
    case 0: // c_{3,2}, degree 4
        if (k == 0) return mono(1, 0, 0, 0);
        if (k == 2) return mono(0, 1, 0, 0);
        if (k == 3) return mono(0, 0, 1, 0);
        if (k == 4) return mono(2, 0, 0, 0);
        return {};
    case 1: // c_{3,1}, degree 6
        if (k == 0) return mono(0, 1, 0, 0);
        if (k == 1) return mono(0, 0, 1, 0);
        if (k == 4) return mono(1, 1, 0, 0);
        if (k == 5) return mono(1, 0, 1, 0);
        if (k == 6) return mono(0, 2, 0, 0);
        return {};
    case 2: // c_{3,0}, degree 7
        if (k == 0) return mono(0, 0, 1, 0);
        if (k == 4) return mono(1, 0, 1, 0);
        if (k == 6) return mono(0, 1, 1, 0);
        if (k == 7) return mono(0, 0, 2, 0);
        return {};
    default: // V(j), degree 8
        if (k == 0) return mono(0, 0, 0, 1);
        if (k == 4) return mono(1, 0, 0, 1);
        if (k == 6) return mono(0, 1, 0, 1);
        if (k == 7) return mono(0, 0, 1, 1);
        if (k == 8) return mono(0, 0, 0, 2);
        return {};
    }
}

inline RPoly r_frobenius(const RPoly& p, int times) {
    RPoly out = p;
    for (auto& m : out) {
        for (auto& e : m.c) e <<= times;
        for (auto& e : m.v) e <<= times;
    }
    return out; // doubling preserves the order
}

// Sq^k on g^a via binary splitting a = sum 2^e, the Cartan formula, and
// Sq^k(g^{2^e}) = frobenius^e of the table entry for k/2^e. Memoized per
// (kind, a, k); kind-3 results are produced in V slot 0 and relabelled by
// the caller.
inline const RPoly& r_sq_gen_pow(int kind, std::uint32_t a, int k) {
    static std::map<std::array<std::uint64_t, 3>, RPoly> cache;
    static std::recursive_mutex mtx;
    std::lock_guard<std::recursive_mutex> lock(mtx);
    std::array<std::uint64_t, 3> key{static_cast<std::uint64_t>(kind), a,
                                     static_cast<std::uint64_t>(k)};
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    RPoly result;
    if (a == 0) {
        if (k == 0) result = RPoly{RMonomial{}};
    } else if (std::has_single_bit(a)) {
        const int e = std::countr_zero(a);
        if ((k & ((1 << e) - 1)) == 0) result = r_frobenius(r_sq_gen(kind, k >> e), e);
    } else {
        const std::uint32_t bit = a & (~a + 1); // lowest set bit
        const std::uint32_t rest = a & (a - 1);
        for (int j = 0; j <= k; ++j) {
            const RPoly& x = r_sq_gen_pow(kind, bit, j);
            if (x.empty()) continue;
            const RPoly& y = r_sq_gen_pow(kind, rest, k - j);
            if (y.empty()) continue;
            RPoly prod = r_mul(x, y);
            result.insert(result.end(), prod.begin(), prod.end());
        }
        result = r_normalize(std::move(result));
    }
    return cache.emplace(key, std::move(result)).first->second;
}

// Move V-slot 0 exponents of a generic V-row result into slot vidx.
inline RPoly r_relabel_v(RPoly p, int vidx) {
    if (vidx == 0) return p;
    for (auto& m : p) {
        std::uint32_t e = m.v.empty() ? 0 : m.v[0];
        if (!e) continue;
        m.v[0] = 0;
        if (static_cast<int>(m.v.size()) < vidx + 1) m.v.resize(vidx + 1, 0);
        m.v[vidx] = e;
    }
    return r_normalize(std::move(p));
}

} // namespace detail

// Sq^k on an element of F2[c32, c31, c30, V(1..n)] via the action table and
// the Cartan formula.
inline RPoly r_sq(int k, const RPoly& p) {
    if (k < 0) throw std::invalid_argument("r_sq: negative k");
    RPoly out;
    for (const auto& m : p) {
        struct Factor {
            int kind;
            int vidx;
            std::uint32_t exp;
        };
        std::vector<Factor> factors;
        for (int i = 0; i < 3; ++i)
            if (m.c[i]) factors.push_back({i, 0, m.c[i]});
        for (std::size_t j = 0; j < m.v.size(); ++j)
            if (m.v[j]) factors.push_back({3, static_cast<int>(j), m.v[j]});
        struct State {
            RPoly poly;
            int used;
        };
        std::vector<State> states{{RPoly{RMonomial{}}, 0}};
        for (const auto& f : factors) {
            std::vector<State> next;
            for (const auto& st : states) {
                for (int j = 0; j + st.used <= k; ++j) {
                    RPoly part = detail::r_sq_gen_pow(f.kind, f.exp, j);
                    if (part.empty()) continue;
                    if (f.kind == 3) part = detail::r_relabel_v(std::move(part), f.vidx);
                    next.push_back({r_mul(st.poly, part), st.used + j});
                }
            }
            states = std::move(next);
        }
        for (const auto& st : states)
            if (st.used == k) out.insert(out.end(), st.poly.begin(), st.poly.end());
    }
    return r_normalize(std::move(out));
}

// Expand a formal monomial into P_{3+n}. Dickson-power parts are cached.
inline Polynomial r_expand(const RMonomial& m, int n) {
    const int nv = 3 + n;
    if (nv > kMaxVars) throw std::invalid_argument("r_expand: ambient too large");
    static std::map<std::pair<std::array<std::uint32_t, 3>, int>, Polynomial> c_cache;
    static std::mutex mtx;
    Polynomial cpart(nv);
    {
        std::lock_guard<std::mutex> lock(mtx);
        auto key = std::make_pair(m.c, nv);
        auto it = c_cache.find(key);
        if (it != c_cache.end()) {
            cpart = it->second;
        } else {
            cpart = Polynomial::one(nv);
            for (int i = 0; i < 3; ++i) {
                if (!m.c[i]) continue;
                Polynomial g = embed(dickson(3, 2 - i), 0, nv);
                cpart = mul(cpart, pow(g, m.c[i]));
            }
            c_cache.emplace(key, cpart);
        }
    }
    Polynomial out = cpart;
    for (std::size_t j = 0; j < m.v.size(); ++j) {
        if (!m.v[j]) continue;
        out = mul(out, pow(mui(3, static_cast<int>(j) + 1, n), m.v[j]));
    }
    return out;
}

inline Polynomial r_expand(const RPoly& p, int n) {
    Polynomial out(3 + n);
    for (const auto& m : p) out = add(out, r_expand(m, n));
    return out;
}

// ---- Singer monomials: basis elements c^I St_3(y) of R_3 F(n) ------------

// Labels for the length-homogeneous basis of St_3 F(n): partitions of b into
// exactly n parts, each a power of two. St_3 of the corresponding symmetrized
// monomial of F(n) is the symmetrized V-monomial with these exponents.
inline std::vector<std::vector<std::uint32_t>> st3_labels(int n, int b) {
    std::vector<std::vector<std::uint32_t>> out;
    if (n == 0) {
        if (b == 0) out.push_back({});
        return out;
    }
    if (b < n) return out;
    std::vector<std::uint32_t> acc;
    auto rec = [&](auto&& self, int remaining_parts, int remaining_sum,
                   std::uint32_t max_part) -> void {
        if (remaining_parts == 0) {
            if (remaining_sum == 0) out.push_back(acc);
            return;
        }
        for (std::uint32_t part = max_part; part >= 1; part >>= 1) {
            if (static_cast<int>(part) > remaining_sum) continue;
            if (static_cast<long>(part) * remaining_parts < remaining_sum) break;
            acc.push_back(part);
            self(self, remaining_parts - 1, remaining_sum - static_cast<int>(part), part);
            acc.pop_back();
        }
    };
    rec(rec, n, b, std::bit_floor(static_cast<std::uint32_t>(b)));
    return out;
}

struct SingerMonomial {
    int n = 0;                         // rank of F(n)
    std::array<std::uint32_t, 3> I{};  // exponents of c_{3,2}, c_{3,1}, c_{3,0}
    std::vector<std::uint32_t> lambda; // y label: descending powers of two, size n

    int y_degree() const {
        int b = 0;
        for (auto p : lambda) b += p;
        return b;
    }
    int degree() const { return 4 * I[0] + 6 * I[1] + 7 * I[2] + 8 * y_degree(); }
    int length() const { return I[0] + I[1] + I[2] + y_degree(); }
    bool in_rtilde() const { return I[0] || I[1] || I[2]; }

    bool operator==(const SingerMonomial&) const = default;
    auto operator<=>(const SingerMonomial&) const = default;
};

inline std::string to_string(const SingerMonomial& m) {
    std::string s;
    auto app = [&](const std::string& name, std::uint32_t e) {
        if (!e) return;
        if (!s.empty()) s += '*';
        s += name;
        if (e > 1) s += '^' + std::to_string(e);
    };
    app("c32", m.I[0]);
    app("c31", m.I[1]);
    app("c30", m.I[2]);
    for (std::size_t j = 0; j < m.lambda.size(); ++j)
        app("V" + std::to_string(j + 1), m.lambda[j]);
    return s.empty() ? "1" : s;
}

// The distinct arrangements of the label over the n module slots.
inline std::vector<std::vector<std::uint32_t>> label_arrangements(
    const std::vector<std::uint32_t>& lambda) {
    std::vector<std::uint32_t> sorted = lambda;
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::vector<std::uint32_t>> out;
    do {
        out.push_back(sorted);
    } while (std::next_permutation(sorted.begin(), sorted.end()));
    return out;
}

inline RPoly singer_to_rpoly(const SingerMonomial& m) {
    RPoly out;
    for (const auto& arr : label_arrangements(m.lambda)) {
        RMonomial r;
        r.c = m.I;
        r.v.assign(arr.begin(), arr.end());
        out.push_back(r);
    }
    return r_normalize(std::move(out));
}

// Regroup a symmetric formal polynomial into Singer monomials. Every
// S_n-orbit must be complete; anything else means the input was not an
// element of R_3 F(n).
inline std::vector<SingerMonomial> rpoly_to_singer(const RPoly& p, int n) {
    std::map<std::pair<std::array<std::uint32_t, 3>, std::vector<std::uint32_t>>, std::size_t>
        seen;
    for (const auto& m : p) {
        std::vector<std::uint32_t> lam(m.v.begin(), m.v.end());
        lam.resize(n, 0);
        std::sort(lam.rbegin(), lam.rend());
        seen[{m.c, lam}]++;
    }
    std::vector<SingerMonomial> out;
    for (const auto& [key, count] : seen) {
        SingerMonomial sm;
        sm.n = n;
        sm.I = key.first;
        sm.lambda = key.second;
        for (auto e : sm.lambda)
            if (e == 0 || !std::has_single_bit(e))
                throw std::invalid_argument("rpoly_to_singer: not an St_3 F(n) shape");
        if (count != label_arrangements(sm.lambda).size())
            throw std::invalid_argument("rpoly_to_singer: incomplete symmetric orbit");
        out.push_back(std::move(sm));
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Expansion of the symmetrized V-monomial for a label, in P_{3+n}; cached.
inline Polynomial st3_label_expand(int n, const std::vector<std::uint32_t>& lambda) {
    static std::map<std::pair<int, std::vector<std::uint32_t>>, Polynomial> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto key = std::make_pair(n, lambda);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    const int nv = 3 + n;
    Polynomial out(nv);
    for (const auto& arr : label_arrangements(lambda)) {
        Polynomial prod = Polynomial::one(nv);
        for (int j = 0; j < n; ++j)
            if (arr[j]) prod = mul(prod, pow(mui(3, j + 1, n), arr[j]));
        out = add(out, prod);
    }
    cache.emplace(key, out);
    return out;
}

inline Polynomial expand(const SingerMonomial& m) {
    RMonomial c;
    c.c = m.I;
    return mul(r_expand(c, m.n), st3_label_expand(m.n, m.lambda));
}

enum class R3Part { All, Rtilde, St3Only };

// All basis elements c^I St_3(y) of R_3 F(n) in total degree d.
inline std::vector<SingerMonomial> r3_basis(int n, int d, R3Part part = R3Part::All) {
    std::vector<SingerMonomial> out;
    for (int b = 0; 8 * b <= d; ++b) {
        auto labels = st3_labels(n, b);
        if (labels.empty()) continue;
        const int rem = d - 8 * b;
        for (int i0 = 0; 7 * i0 <= rem; ++i0) {
            for (int i1 = 0; 6 * i1 + 7 * i0 <= rem; ++i1) {
                int r = rem - 7 * i0 - 6 * i1;
                if (r % 4) continue;
                int i2 = r / 4;
                bool trivial_I = (i2 == 0 && i1 == 0 && i0 == 0);
                if (part == R3Part::Rtilde && trivial_I) continue;
                if (part == R3Part::St3Only && !trivial_I) continue;
                for (const auto& lam : labels) {
                    SingerMonomial m;
                    m.n = n;
                    m.I = {static_cast<std::uint32_t>(i2), static_cast<std::uint32_t>(i1),
                           static_cast<std::uint32_t>(i0)};
                    m.lambda = lam;
                    out.push_back(std::move(m));
                }
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---- standard form and fullness -------------------------------------------

struct StandardForm {
    std::uint32_t f = 0;
    std::uint32_t j2 = 0, j1 = 0;
    std::uint32_t i0 = 0;
    bool is_full = false;
};

// Writing i_a = (2^f - 1) + j_a 2^f forces the low f bits of both i2 and i1
// to be 1, and j1 j2 even forces bit f of i1 or i2 to vanish; hence f is the
// common count of trailing 1-bits and the decomposition is unique.
inline StandardForm standard_form(std::uint32_t i2, std::uint32_t i1, std::uint32_t i0 = 0) {
    StandardForm sf;
    sf.f = std::min(static_cast<std::uint32_t>(std::countr_one(i2)),
                    static_cast<std::uint32_t>(std::countr_one(i1)));
    sf.j2 = i2 >> sf.f;
    sf.j1 = i1 >> sf.f;
    sf.i0 = i0;
    sf.is_full = (sf.j1 == 0 && sf.j2 == 0 && sf.f > 0);
    const std::uint32_t ones = (1u << sf.f) - 1u;
    if (((sf.j1 & 1u) && (sf.j2 & 1u)) || ((sf.j2 << sf.f) | ones) != i2 ||
        ((sf.j1 << sf.f) | ones) != i1)
        throw std::logic_error("standard_form: reconstruction failed");
    return sf;
}

inline StandardForm standard_form(const SingerMonomial& m) {
    return standard_form(m.I[0], m.I[1], m.I[2]);
}

inline int length(const SingerMonomial& m) { return m.length(); }

// ---- action-table verification --------------------------------------------

enum class RGenName { C32, C31, C30, V };

// Sq^k on a named generator, computed from the polynomial expansion and
// re-expressed in the generators of R_3 P_{module_vars} by membership in the
// invariant ring. Reproduces the action table, including the zero entries.
inline RPoly sq_on_generator(RGenName g, int k, int module_vars = 1, int j = 1) {
    if (k < 0 || k > 8) throw std::invalid_argument("sq_on_generator: k out of range");
    const int n = module_vars;
    RMonomial base;
    switch (g) {
    case RGenName::C32: base.c = {1, 0, 0}; break;
    case RGenName::C31: base.c = {0, 1, 0}; break;
    case RGenName::C30: base.c = {0, 0, 1}; break;
    case RGenName::V:
        if (j < 1 || j > n) throw std::invalid_argument("sq_on_generator: bad V index");
        base.v.resize(j, 0);
        base.v[j - 1] = 1;
        break;
    }
    Polynomial image = sq(k, r_expand(base, n));
    if (image.is_zero()) return {};
    const int d = base.degree() + k;

    // all generator monomials of degree d
    std::vector<RMonomial> candidates;
    static const int cdegs[3] = {4, 6, 7};
    auto rec = [&](auto&& self, int gi, int remaining, RMonomial acc) -> void {
        if (gi == 3) {
            if (remaining % 8) return;
            int total = remaining / 8;
            std::vector<std::uint32_t> ve(n, 0);
            auto rec2 = [&](auto&& self2, int vj, int rem) -> void {
                if (vj == n) {
                    if (rem == 0) {
                        RMonomial m = acc;
                        m.v = ve;
                        m.canon();
                        candidates.push_back(m);
                    }
                    return;
                }
                for (int e = 0; e <= rem; ++e) {
                    ve[vj] = e;
                    self2(self2, vj + 1, rem - e);
                }
                ve[vj] = 0;
            };
            rec2(rec2, 0, total);
            return;
        }
        for (int e = 0; e * cdegs[gi] <= remaining; ++e) {
            RMonomial m = acc;
            m.c[gi] = e;
            self(self, gi + 1, remaining - e * cdegs[gi], m);
        }
    };
    rec(rec, 0, d, RMonomial{});
    std::sort(candidates.begin(), candidates.end());

    // index the union of monomial supports and solve for the coefficients
    std::vector<Polynomial> expansions;
    expansions.reserve(candidates.size());
    for (const auto& c : candidates) expansions.push_back(r_expand(c, n));
    std::vector<Monomial> support;
    for (const auto& e : expansions)
        for (const auto& t : e.terms()) support.push_back(t);
    for (const auto& t : image.terms()) support.push_back(t);
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
    cols.reserve(expansions.size());
    for (const auto& e : expansions) cols.push_back(to_vec(e));
    auto sol = MembershipSolver(cols, support.size()).solve(to_vec(image));
    if (!sol) throw std::logic_error("sq_on_generator: image is not in the invariant ring");
    RPoly out;
    for (std::size_t i = 0; i < candidates.size(); ++i)
        if (sol->get(i)) out.push_back(candidates[i]);
    return r_normalize(std::move(out));
}

} // namespace steenrod
