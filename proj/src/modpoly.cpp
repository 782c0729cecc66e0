#include "tamagawa/modpoly.hpp"

#include <algorithm>
#include <stdexcept>

namespace tamagawa {

namespace {

// dense coefficients ascending, reduced into [0, p), trailing zeros trimmed
using MP = std::vector<Int>;

Int mod_p(const Int& a, const Int& p) {
    Int r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
    return r;
}

void mp_trim(MP& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

long mp_deg(const MP& a) { return long(a.size()) - 1; }

MP mp_reduce(const Poly& f, const Int& p) {
    MP a(f.degree() + 1);
    for (long i = 0; i <= f.degree(); ++i) a[i] = mod_p(f[i].get_num(), p);
    mp_trim(a);
    return a;
}

Int mp_eval(const MP& a, const Int& r, const Int& p) {
    Int acc = 0;
    for (size_t i = a.size(); i-- > 0;) acc = mod_p(acc * r + a[i], p);
    return acc;
}

MP mp_mul(const MP& a, const MP& b, const Int& p) {
    if (a.empty() || b.empty()) return {};
    MP c(a.size() + b.size() - 1, Int(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    for (Int& v : c) v = mod_p(v, p);
    mp_trim(c);
    return c;
}

Int mp_inv(const Int& a, const Int& p) {
    Int r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t()) == 0)
        throw std::logic_error("mp_inv: non-invertible element");
    return r;
}

MP mp_rem(MP a, const MP& b, const Int& p) {
    long db = mp_deg(b);
    Int ilb = mp_inv(b.back(), p);
    while (mp_deg(a) >= db) {
        long da = mp_deg(a);
        Int coef = mod_p(a[da] * ilb, p);
        for (long j = 0; j <= db; ++j) a[da - db + j] = mod_p(a[da - db + j] - coef * b[j], p);
        mp_trim(a);
    }
    return a;
}

MP mp_monic(MP a, const Int& p) {
    if (a.empty()) return a;
    Int inv = mp_inv(a.back(), p);
    for (Int& c : a) c = mod_p(c * inv, p);
    return a;
}

MP mp_gcd(MP a, MP b, const Int& p) {
    while (!b.empty()) {
        MP r = mp_rem(std::move(a), b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return mp_monic(std::move(a), p);
}

// base^e mod (m, p); m nonconstant
MP mp_powmod(MP base, Int e, const MP& m, const Int& p) {
    MP acc{Int(1)};
    base = mp_rem(std::move(base), m, p);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) acc = mp_rem(mp_mul(acc, base, p), m, p);
        base = mp_rem(mp_mul(base, base, p), m, p);
        e >>= 1;
    }
    return acc;
}

// quotient a / (x - r) given that r is a root; a monic-agnostic synthetic division
MP mp_div_linear_root(const MP& a, const Int& r, const Int& p) {
    long d = mp_deg(a);
    MP q(d, Int(0));
    Int carry = 0;
    for (long i = d; i >= 1; --i) {
        carry = mod_p(a[i] + carry * r, p);
        q[i - 1] = carry;
    }
    mp_trim(q);
    return q;
}

// g splits into distinct monic linear factors; collect its roots
void cz_split(const MP& g, const Int& p, std::vector<Int>& out) {
    long d = mp_deg(g);
    if (d <= 0) return;
    if (d == 1) {
        out.push_back(mod_p(-g[0], p));
        return;
    }
    Int half = (p - 1) / 2;
    long cap = 200 + 8 * long(mpz_sizeinbase(p.get_mpz_t(), 2));
    for (long delta = 0; delta <= cap; ++delta) {
        Int dl(delta);
        Int neg = mod_p(-dl, p);
        if (mp_eval(g, neg, p) == 0) {
            out.push_back(neg);
            cz_split(mp_div_linear_root(g, neg, p), p, out);
            return;
        }
        MP w = mp_powmod(MP{dl, Int(1)}, half, g, p);
        if (w.empty())
            w = MP{mod_p(Int(-1), p)};
        else
            w[0] = mod_p(w[0] - 1, p);
        mp_trim(w);
        MP h = mp_gcd(g, w, p);
        long dh = mp_deg(h);
        if (dh > 0 && dh < d) {
            size_t base = out.size();
            cz_split(h, p, out);
            MP rest = g;
            for (size_t i = base; i < out.size(); ++i)
                rest = mp_div_linear_root(rest, out[i], p);
            cz_split(rest, p, out);
            return;
        }
    }
    throw std::logic_error("roots_mod_p: splitting sweep exhausted");
}

}  // namespace

std::vector<Int> roots_mod_p(const Poly& f, const Int& p) {
    if (!is_prime(p)) throw ArgumentError("roots_mod_p: p must be prime");
    if (!f.is_integral()) throw ArgumentError("roots_mod_p: polynomial must be integral");
    MP a = mp_reduce(f, p);
    if (a.empty()) throw ArgumentError("roots_mod_p: polynomial vanishes mod p");
    std::vector<Int> roots;
    if (mp_deg(a) == 0) return roots;
    if (p < 50) {
        for (Int r = 0; r < p; ++r)
            if (mp_eval(a, r, p) == 0) roots.push_back(r);
        return roots;
    }
    // g = gcd(a, x^p - x) collects the distinct roots as linear factors
    MP xp = mp_powmod(MP{Int(0), Int(1)}, p, a, p);
    if (xp.size() < 2) xp.resize(2, Int(0));
    xp[1] = mod_p(xp[1] - 1, p);
    mp_trim(xp);
    MP g = mp_monic(xp.empty() ? a : mp_gcd(a, xp, p), p);
    cz_split(g, p, roots);
    std::sort(roots.begin(), roots.end());
    return roots;
}

bool quadratic_splits_mod_p(const Int& b, const Int& c, const Int& p) {
    if (!is_prime(p)) throw ArgumentError("quadratic_splits_mod_p: p must be prime");
    if (p == 2) return mod_p(c, p) == 0 || mod_p(1 + b + c, p) == 0;
    Int disc = b * b - 4 * c;
    return legendre_symbol(disc, p) >= 0;
}

std::optional<CubicMultipleRoot> cubic_multiple_root_mod_p(const Int& b, const Int& c,
                                                           const Int& d, const Int& p) {
    if (!is_prime(p)) throw ArgumentError("cubic_multiple_root_mod_p: p must be prime");
    if (p < 5) {
        MP P{mod_p(d, p), mod_p(c, p), mod_p(b, p), Int(1)};
        for (Int r = 0; r < p; ++r) {
            if (mp_eval(P, r, p) != 0) continue;
            int mult = 1;
            MP q = mp_div_linear_root(P, r, p);
            while (mp_eval(q, r, p) == 0) {
                ++mult;
                q = mp_div_linear_root(q, r, p);
            }
            if (mult >= 2) return CubicMultipleRoot{r, mult};
        }
        return std::nullopt;
    }
    // gcd(P, P') has degree 0, 1 or 2: no multiple root, a double root, or a
    // triple root. 3 is invertible, so the triple root is -b/3.
    MP P{mod_p(d, p), mod_p(c, p), mod_p(b, p), Int(1)};
    MP dP{mod_p(c, p), mod_p(2 * b, p), Int(3)};
    MP g = mp_gcd(P, dP, p);
    long dg = mp_deg(g);
    if (dg == 0) return std::nullopt;
    if (dg == 1) return CubicMultipleRoot{mod_p(-g[0], p), 2};
    Int r = mod_p(-b * mp_inv(Int(3), p), p);
    if (mp_eval(P, r, p) != 0) throw std::logic_error("cubic_multiple_root_mod_p: bad triple root");
    return CubicMultipleRoot{r, 3};
}

}  // namespace tamagawa
