// Multivariate polynomials over F2 with the Steenrod-square and Milnor
// actions. Terms are kept in descending graded-reverse-lexicographic order,
// so every polynomial has one canonical form.
#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <stdexcept>
#include <vector>

#include "steenrod/f2linalg.hpp"

namespace steenrod {

// All ambients in play are small (P_{k+s} with k+s <= 8).
inline constexpr int kMaxVars = 8;

// The ambient polynomial algebra is determined by its generator count; every
// generator has degree 1. Monomials and polynomials carry it as n_vars.
struct Monomial {
    std::array<std::uint16_t, kMaxVars> e{};

    int degree() const {
        int d = 0;
        for (auto x : e) d += x;
        return d;
    }
    bool operator==(const Monomial&) const = default;
};

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const {
        std::size_t h = 1469598103934665603ull;
        for (auto x : m.e) {
            h ^= x;
            h *= 1099511628211ull;
        }
        return h;
    }
};

// grevlex: higher degree wins; on equal degree the *last* differing
// exponent decides, smaller exponent winning.
inline int grevlex_cmp(const Monomial& a, const Monomial& b) {
    int da = a.degree(), db = b.degree();
    if (da != db) return da < db ? -1 : 1;
    for (int i = kMaxVars - 1; i >= 0; --i) {
        if (a.e[i] != b.e[i]) return a.e[i] > b.e[i] ? -1 : 1;
    }
    return 0;
}

// Order used by module slices: the variables at index >= split dominate,
// each block compared by grevlex.
inline int split_cmp(const Monomial& a, const Monomial& b, int split) {
    int da = 0, db = 0;
    for (int i = split; i < kMaxVars; ++i) {
        da += a.e[i];
        db += b.e[i];
    }
    if (da != db) return da < db ? -1 : 1;
    for (int i = kMaxVars - 1; i >= split; --i)
        if (a.e[i] != b.e[i]) return a.e[i] > b.e[i] ? -1 : 1;
    for (int i = 0; i < split; ++i) {
        da += a.e[i];
        db += b.e[i];
    }
    if (da != db) return da < db ? -1 : 1;
    for (int i = split - 1; i >= 0; --i)
        if (a.e[i] != b.e[i]) return a.e[i] > b.e[i] ? -1 : 1;
    return 0;
}

inline Monomial mono_mul(const Monomial& a, const Monomial& b) {
    Monomial out;
    for (int i = 0; i < kMaxVars; ++i)
        out.e[i] = static_cast<std::uint16_t>(a.e[i] + b.e[i]);
    return out;
}

class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(int n_vars) : n_vars_(n_vars) { check_vars(n_vars); }

    static Polynomial zero(int n_vars) { return Polynomial(n_vars); }

    static Polynomial one(int n_vars) {
        Polynomial p(n_vars);
        p.terms_.push_back(Monomial{});
        return p;
    }

    // x_{j+1} for 0-based index j.
    static Polynomial variable(int n_vars, int j) {
        if (j < 0 || j >= n_vars) throw std::invalid_argument("variable index out of range");
        Polynomial p(n_vars);
        Monomial m;
        m.e[j] = 1;
        p.terms_.push_back(m);
        return p;
    }

    static Polynomial monomial(int n_vars, const Monomial& m) {
        Polynomial p(n_vars);
        for (int i = n_vars; i < kMaxVars; ++i)
            if (m.e[i]) throw std::invalid_argument("monomial uses variable outside ambient");
        p.terms_.push_back(m);
        return p;
    }

    static Polynomial from_terms(int n_vars, std::vector<Monomial> terms) {
        Polynomial p(n_vars);
        p.terms_ = std::move(terms);
        p.normalize();
        return p;
    }

    int n_vars() const { return n_vars_; }
    const std::vector<Monomial>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    bool is_homogeneous() const {
        if (terms_.empty()) return true;
        int d = terms_.front().degree();
        for (const auto& t : terms_)
            if (t.degree() != d) return false;
        return true;
    }

    // Maximal term degree; -1 for the zero polynomial.
    int degree() const {
        int d = -1;
        for (const auto& t : terms_) d = std::max(d, t.degree());
        return d;
    }

    Polynomial degree_slice(int d) const {
        Polynomial out(n_vars_);
        for (const auto& t : terms_)
            if (t.degree() == d) out.terms_.push_back(t);
        return out;
    }

    bool operator==(const Polynomial&) const = default;

private:
    static void check_vars(int n) {
        if (n < 0 || n > kMaxVars) throw std::invalid_argument("ambient size out of range");
    }
    void normalize() {
        std::sort(terms_.begin(), terms_.end(),
                  [](const Monomial& a, const Monomial& b) { return grevlex_cmp(a, b) > 0; });
        std::vector<Monomial> out;
        out.reserve(terms_.size());
        std::size_t i = 0;
        while (i < terms_.size()) {
            std::size_t j = i;
            while (j < terms_.size() && terms_[j] == terms_[i]) ++j;
            if ((j - i) & 1) out.push_back(terms_[i]);
            i = j;
        }
        terms_ = std::move(out);
    }

    int n_vars_ = 0;
    std::vector<Monomial> terms_;
};

inline void require_same_ambient(const Polynomial& p, const Polynomial& q) {
    if (p.n_vars() != q.n_vars()) throw std::invalid_argument("ambient mismatch");
}

// Symmetric difference of term sets.
inline Polynomial add(const Polynomial& p, const Polynomial& q) {
    require_same_ambient(p, q);
    std::vector<Monomial> out;
    out.reserve(p.term_count() + q.term_count());
    const auto& a = p.terms();
    const auto& b = q.terms();
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        int c = grevlex_cmp(a[i], b[j]);
        if (c > 0)
            out.push_back(a[i++]);
        else if (c < 0)
            out.push_back(b[j++]);
        else {
            ++i;
            ++j;
        }
    }
    out.insert(out.end(), a.begin() + i, a.end());
    out.insert(out.end(), b.begin() + j, b.end());
    return Polynomial::from_terms(p.n_vars(), std::move(out));
}

inline Polynomial operator+(const Polynomial& p, const Polynomial& q) { return add(p, q); }

inline Polynomial mul(const Polynomial& p, const Polynomial& q) {
    require_same_ambient(p, q);
    if (p.is_zero() || q.is_zero()) return Polynomial::zero(p.n_vars());
    std::vector<Monomial> out;
    out.reserve(p.term_count() * q.term_count());
    for (const auto& a : p.terms())
        for (const auto& b : q.terms()) out.push_back(mono_mul(a, b));
    return Polynomial::from_terms(p.n_vars(), std::move(out));
}

inline Polynomial operator*(const Polynomial& p, const Polynomial& q) { return mul(p, q); }

// p^2: exponent doubling (char 2).
inline Polynomial frobenius(const Polynomial& p) {
    std::vector<Monomial> out;
    out.reserve(p.term_count());
    for (const auto& t : p.terms()) {
        Monomial m;
        for (int i = 0; i < kMaxVars; ++i) m.e[i] = static_cast<std::uint16_t>(2 * t.e[i]);
        out.push_back(m);
    }
    // squaring is injective and order preserving, no renormalization needed
    return Polynomial::from_terms(p.n_vars(), std::move(out));
}

inline Polynomial pow(const Polynomial& p, unsigned n) {
    Polynomial acc = Polynomial::one(p.n_vars());
    Polynomial base = p;
    while (n) {
        if (n & 1) acc = mul(acc, base);
        base = frobenius(base);
        n >>= 1;
    }
    return acc;
}

// C(n, k) mod 2 by the digit criterion.
inline bool binom_mod2(std::uint64_t n, std::uint64_t k) { return (n & k) == k; }

namespace detail {

// Sq^k on a single monomial: sum over k = sum k_j of prod C(e_j, k_j) x^{e+k},
// keeping only odd binomials, i.e. k_j a submask of e_j.
inline void sq_term(const Monomial& m, int n_vars, int k, std::vector<Monomial>& out) {
    Monomial acc = m;
    // recurse over variables, distributing the budget
    auto rec = [&](auto&& self, int j, int remaining) -> void {
        if (j == n_vars) {
            if (remaining == 0) out.push_back(acc);
            return;
        }
        const std::uint32_t e = m.e[j];
        // enumerate submasks s of e with s <= remaining
        std::uint32_t s = e & 0xFFFFu;
        while (true) {
            if (static_cast<int>(s) <= remaining) {
                acc.e[j] = static_cast<std::uint16_t>(e + s);
                self(self, j + 1, remaining - static_cast<int>(s));
            }
            if (s == 0) break;
            s = (s - 1) & e;
        }
        acc.e[j] = static_cast<std::uint16_t>(e);
    };
    rec(rec, 0, k);
}

} // namespace detail

// Steenrod square, extended linearly over terms.
inline Polynomial sq(int k, const Polynomial& p) {
    if (k < 0) throw std::invalid_argument("sq: negative k");
    if (k == 0) return p;
    std::vector<Monomial> out;
    for (const auto& t : p.terms()) detail::sq_term(t, p.n_vars(), k, out);
    return Polynomial::from_terms(p.n_vars(), std::move(out));
}

// Milnor Q_i as a derivation: Q_i(x_j) = x_j^{2^{i+1}}.
inline Polynomial milnor_q(int i, const Polynomial& p) {
    if (i != 0 && i != 1) throw std::invalid_argument("milnor_q: only Q_0 and Q_1 supported");
    std::vector<Monomial> out;
    for (const auto& t : p.terms()) {
        for (int j = 0; j < p.n_vars(); ++j) {
            if (t.e[j] & 1) {
                Monomial m = t;
                m.e[j] = static_cast<std::uint16_t>(m.e[j] - 1 + (1 << (i + 1)));
                out.push_back(m);
            }
        }
    }
    return Polynomial::from_terms(p.n_vars(), std::move(out));
}

// Q_i from the bracket presentation Q_0 = Sq^1, Q_1 = Sq^2 Sq^1 + Sq^1 Sq^2.
inline Polynomial milnor_q_via_squares(int i, const Polynomial& p) {
    if (i == 0) return sq(1, p);
    if (i == 1) return add(sq(2, sq(1, p)), sq(1, sq(2, p)));
    throw std::invalid_argument("milnor_q_via_squares: only Q_0 and Q_1 supported");
}

// Substitute each variable by a linear form; row j of `map` gives the image
// of x_{j+1}.
inline Polynomial linear_substitute(const Polynomial& p, const F2Matrix& map) {
    const int n = p.n_vars();
    if (map.n_rows() != static_cast<std::size_t>(n) || map.n_cols() != static_cast<std::size_t>(n))
        throw std::invalid_argument("linear_substitute: matrix size mismatch");
    std::vector<Polynomial> images;
    images.reserve(n);
    for (int j = 0; j < n; ++j) {
        Polynomial l(n);
        for (int i = 0; i < n; ++i)
            if (map.get(j, i)) l = add(l, Polynomial::variable(n, i));
        images.push_back(l);
    }
    Polynomial out(n);
    for (const auto& t : p.terms()) {
        Polynomial prod = Polynomial::one(n);
        for (int j = 0; j < n; ++j)
            if (t.e[j]) prod = mul(prod, pow(images[j], t.e[j]));
        out = add(out, prod);
    }
    return out;
}

// Re-index into a larger ambient, shifting variables up by `offset`.
inline Polynomial embed(const Polynomial& p, int offset, int new_n_vars) {
    if (p.n_vars() + offset > new_n_vars)
        throw std::invalid_argument("embed: target ambient too small");
    std::vector<Monomial> out;
    out.reserve(p.term_count());
    for (const auto& t : p.terms()) {
        Monomial m;
        for (int i = 0; i < p.n_vars(); ++i) m.e[i + offset] = t.e[i];
        out.push_back(m);
    }
    return Polynomial::from_terms(new_n_vars, std::move(out));
}

// ---- text format ----------------------------------------------------------
// variables x1..xN, monomial "x1^3*x2", sum " + ", unit "1", zero "0".

inline std::string to_string(const Monomial& m, int n_vars) {
    std::string s;
    for (int i = 0; i < n_vars; ++i) {
        if (!m.e[i]) continue;
        if (!s.empty()) s += '*';
        s += 'x';
        s += std::to_string(i + 1);
        if (m.e[i] > 1) {
            s += '^';
            s += std::to_string(m.e[i]);
        }
    }
    return s.empty() ? "1" : s;
}

inline std::string to_string(const Polynomial& p) {
    if (p.is_zero()) return "0";
    std::string s;
    for (const auto& t : p.terms()) {
        if (!s.empty()) s += " + ";
        s += to_string(t, p.n_vars());
    }
    return s;
}

inline Polynomial parse_poly(const std::string& text, int n_vars) {
    auto fail = [&](std::size_t pos, const std::string& why) {
        throw std::invalid_argument("polynomial parse error at position " + std::to_string(pos) +
                                    ": " + why);
    };
    std::vector<Monomial> terms;
    std::size_t i = 0;
    const std::size_t n = text.size();
    auto skip_ws = [&] {
        while (i < n && (text[i] == ' ' || text[i] == '\t' || text[i] == '\n')) ++i;
    };
    auto read_uint = [&]() -> long {
        std::size_t start = i;
        long v = 0;
        while (i < n && text[i] >= '0' && text[i] <= '9') {
            v = v * 10 + (text[i] - '0');
            if (v > 1000000) fail(start, "number too large");
            ++i;
        }
        if (i == start) fail(i, "expected a number");
        return v;
    };
    skip_ws();
    if (i == n) fail(i, "empty input");
    while (true) {
        skip_ws();
        // one term: "0", "1", or factors joined by '*'
        if (i < n && text[i] == '0') {
            ++i;
        } else {
            Monomial m;
            bool first_factor = true;
            while (true) {
                skip_ws();
                if (i < n && text[i] == '1' && first_factor) {
                    ++i;
                } else if (i < n && text[i] == 'x') {
                    ++i;
                    long idx = read_uint();
                    if (idx < 1 || idx > n_vars) fail(i, "variable index out of range");
                    long exp = 1;
                    if (i < n && text[i] == '^') {
                        ++i;
                        exp = read_uint();
                    }
                    m.e[idx - 1] = static_cast<std::uint16_t>(m.e[idx - 1] + exp);
                } else {
                    fail(i, "expected a factor");
                }
                first_factor = false;
                skip_ws();
                if (i < n && text[i] == '*') {
                    ++i;
                    continue;
                }
                break;
            }
            terms.push_back(m);
        }
        skip_ws();
        if (i < n && text[i] == '+') {
            ++i;
            continue;
        }
        if (i != n) fail(i, "unexpected trailing input");
        break;
    }
    return Polynomial::from_terms(n_vars, std::move(terms));
}

} // namespace steenrod
