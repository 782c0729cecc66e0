#include "tamagawa/curve.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace tamagawa {

namespace {

Invariants invariants_unchecked(const Rat& a1, const Rat& a2, const Rat& a3, const Rat& a4,
                                const Rat& a6) {
    Invariants v;
    v.b2 = a1 * a1 + 4 * a2;
    v.b4 = 2 * a4 + a1 * a3;
    v.b6 = a3 * a3 + 4 * a6;
    v.b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    v.c4 = v.b2 * v.b2 - 24 * v.b4;
    v.c6 = -v.b2 * v.b2 * v.b2 + 36 * v.b2 * v.b4 - 216 * v.b6;
    v.disc = -v.b2 * v.b2 * v.b8 - 8 * v.b4 * v.b4 * v.b4 - 27 * v.b6 * v.b6 + 9 * v.b2 * v.b4 * v.b6;
    return v;
}

}  // namespace

Curve::Curve(Rat a1_, Rat a2_, Rat a3_, Rat a4_, Rat a6_)
    : a1(std::move(a1_)), a2(std::move(a2_)), a3(std::move(a3_)), a4(std::move(a4_)), a6(std::move(a6_)) {
    if (invariants_unchecked(a1, a2, a3, a4, a6).disc == 0)
        throw SingularCurveError("singular Weierstrass model: " + curve_to_string(*this));
}

bool Curve::is_integral() const {
    for (const Rat* a : {&a1, &a2, &a3, &a4, &a6})
        if (a->get_den() != 1) return false;
    return true;
}

Invariants invariants(const Curve& E) {
    return invariants_unchecked(E.a1, E.a2, E.a3, E.a4, E.a6);
}

Transformation Transformation::then(const Transformation& next) const {
    Transformation c;
    c.u = u * next.u;
    c.r = r + u * u * next.r;
    c.s = s + u * next.s;
    c.t = t + u * u * s * next.r + u * u * u * next.t;
    return c;
}

Transformation Transformation::inverse() const {
    Transformation inv;
    Rat u2 = u * u, u3 = u * u * u;
    inv.u = 1 / u;
    inv.r = -r / u2;
    inv.s = -s / u;
    inv.t = (s * r - t) / u3;
    return inv;
}

Curve apply_transform(const Curve& E, const Transformation& T) {
    if (T.u == 0) throw ArgumentError("apply_transform: u must be nonzero");
    const Rat &u = T.u, &r = T.r, &s = T.s, &t = T.t;
    Rat u2 = u * u, u3 = u2 * u;
    Rat a1 = (E.a1 + 2 * s) / u;
    Rat a2 = (E.a2 - s * E.a1 + 3 * r - s * s) / u2;
    Rat a3 = (E.a3 + r * E.a1 + 2 * t) / u3;
    Rat a4 = (E.a4 - s * E.a3 + 2 * r * E.a2 - (t + r * s) * E.a1 + 3 * r * r - 2 * s * t) / (u2 * u2);
    Rat a6 = (E.a6 + r * E.a4 + r * r * E.a2 + r * r * r - t * E.a3 - t * t - r * t * E.a1) / (u3 * u3);
    return Curve(a1, a2, a3, a4, a6);
}

Curve quadratic_twist(const Curve& E, const Int& d) {
    if (d == 0) throw ArgumentError("quadratic_twist: d must be nonzero");
    Int s = squarefree_part(d).first;
    Invariants v = invariants(E);
    Rat A = -27 * v.c4;
    Rat B = -54 * v.c6;
    Rat s2(s * s), s3(s * s * s);
    return Curve(0, 0, 0, A * s2, B * s3);
}

namespace {

// Kraus: (c4, c6) of an integral model satisfies these local conditions;
// conversely any pair satisfying them arises from an integral model.
bool kraus_ok_3(const Int& c6) {
    if (c6 == 0) return true;
    return valuation(c6, 3) != 2;
}

bool kraus_ok_2(const Int& c4, const Int& c6) {
    Int m4;
    mpz_mod(m4.get_mpz_t(), c6.get_mpz_t(), Int(4).get_mpz_t());
    if (m4 == 3) return true;  // c6 = -1 mod 4
    bool c4_ok = (c4 == 0) || valuation(c4, 2) >= 4;
    if (!c4_ok) return false;
    Int m32;
    mpz_mod(m32.get_mpz_t(), c6.get_mpz_t(), Int(32).get_mpz_t());
    return m32 == 0 || m32 == 8;
}

Int pow_int(const Int& p, long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(e));
    return r;
}

Int exact_div(const Int& a, const Int& b, const char* what) {
    Int q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    if (r != 0) throw std::logic_error(std::string("minimal_model: inexact division in ") + what);
    return q;
}

}  // namespace

MinimalModel minimal_model(const Curve& E, const FactorBudget& budget,
                           const std::vector<Int>& hint_primes) {
    // integralize: x -> x/m^2, y -> y/m^3 scales ai by m^i
    Int m = 1;
    for (const Rat* a : {&E.a1, &E.a2, &E.a3, &E.a4, &E.a6})
        mpz_lcm(m.get_mpz_t(), m.get_mpz_t(), a->get_den().get_mpz_t());
    Transformation to_int;
    to_int.u = Rat(1, m);
    Curve Ei = apply_transform(E, to_int);

    Invariants v = invariants(Ei);
    Int C4 = v.c4.get_num(), C6 = v.c6.get_num(), D = v.disc.get_num();

    // candidate primes for unscaling: 2, 3 and the support of gcd(C4, C6)
    Int g;
    mpz_gcd(g.get_mpz_t(), C4.get_mpz_t(), C6.get_mpz_t());
    std::vector<Int> primes{2, 3};
    if (g > 1) {
        PrimeFactorization pf = factorize(g, budget, hint_primes);
        if (!pf.complete()) pf = factorize(g, budget.scaled(8), hint_primes);
        if (!pf.complete())
            throw IncompleteFactorization("minimal_model: cannot factor gcd(c4, c6) = " + to_string(g));
        for (const auto& [p, e] : pf.factors) primes.push_back(p);
    }
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());

    Int u0 = 1;
    for (const Int& p : primes) {
        auto vterm = [&](const Int& x, long k) -> long {
            return x == 0 ? val_inf : valuation(x, p) / k;  // v(0) = infinity
        };
        long d = std::min({vterm(C4, 4), vterm(C6, 6), vterm(D, 12)});
        if (d == val_inf) throw std::logic_error("minimal_model: unbounded scaling");
        if (p == 2) {
            while (d > 0 && !kraus_ok_2(exact_div(C4, pow_int(p, 4 * d), "kraus2"),
                                        exact_div(C6, pow_int(p, 6 * d), "kraus2")))
                --d;
        } else if (p == 3) {
            while (d > 0 && !kraus_ok_3(exact_div(C6, pow_int(p, 6 * d), "kraus3"))) --d;
        }
        u0 *= pow_int(p, d);
    }

    Int c4m = exact_div(C4, u0 * u0 * u0 * u0, "c4 unscale");
    Int c6m = exact_div(C6, pow_int(u0, 6), "c6 unscale");

    // Connell standardization: b2 is determined by -c6 mod 12
    Int r12;
    {
        Int neg = -c6m;
        mpz_mod(r12.get_mpz_t(), neg.get_mpz_t(), Int(12).get_mpz_t());
    }
    Int b2;
    if (r12 == 0) b2 = 0;
    else if (r12 == 1) b2 = 1;
    else if (r12 == 4) b2 = 4;
    else if (r12 == 5) b2 = 5;
    else if (r12 == 8) b2 = -4;
    else if (r12 == 9) b2 = -3;
    else throw std::logic_error("minimal_model: -c6 = " + to_string(r12) + " mod 12");

    Int b4 = exact_div(b2 * b2 - c4m, 24, "b4");
    Int b6 = exact_div(-b2 * b2 * b2 + 36 * b2 * b4 - c6m, 216, "b6");
    Int a1 = b2 % 2 == 0 ? 0 : 1;
    Int a2 = exact_div(b2 - a1, 4, "a2");
    Int a3 = b6 % 2 == 0 ? 0 : 1;
    Int a6 = exact_div(b6 - a3, 4, "a6");
    Int a4 = exact_div(b4 - a1 * a3, 2, "a4");
    Curve Em{Rat(a1), Rat(a2), Rat(a3), Rat(a4), Rat(a6)};

    // recover the coordinate change E -> Em; its scale is u0/m, and (r,s,t)
    // are forced by matching a1, a2, a3
    Transformation T;
    T.u = Rat(u0, m);
    T.u.canonicalize();
    T.s = (T.u * Em.a1 - E.a1) / 2;
    T.r = (T.u * T.u * Em.a2 - E.a2 + T.s * E.a1 + T.s * T.s) / 3;
    T.t = (T.u * T.u * T.u * Em.a3 - E.a3 - T.r * E.a1) / 2;
    if (!(apply_transform(E, T) == Em))
        throw std::logic_error("minimal_model: transformation recovery failed");

    Invariants vm = invariants(Em);
    if (vm.c4 != c4m || vm.c6 != c6m)
        throw std::logic_error("minimal_model: Connell reconstruction mismatch");

    return MinimalModel{Em, T};
}

std::pair<Int, Int> minimal_invariants_key(const Curve& E, const FactorBudget& budget,
                                           const std::vector<Int>& hint_primes) {
    Invariants v = invariants(minimal_model(E, budget, hint_primes).curve);
    return {v.c4.get_num(), v.c6.get_num()};
}

namespace {

Rat parse_rat_entry(const std::string& tok) {
    size_t slash = tok.find('/');
    if (slash == std::string::npos) return Rat(Int(tok));
    Rat r(Int(tok.substr(0, slash)), Int(tok.substr(slash + 1)));
    r.canonicalize();
    return r;
}

}  // namespace

Curve parse_curve(const std::string& s) {
    std::string t;
    for (char ch : s)
        if (!std::isspace(static_cast<unsigned char>(ch))) t.push_back(ch);
    std::vector<Rat> vals;
    size_t pos = 0;
    while (pos <= t.size()) {
        size_t comma = t.find(',', pos);
        std::string tok = t.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (tok.empty()) throw ArgumentError("parse_curve: empty entry");
        vals.push_back(parse_rat_entry(tok));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (vals.size() != 5) throw ArgumentError("parse_curve: expected a1,a2,a3,a4,a6");
    return Curve(vals[0], vals[1], vals[2], vals[3], vals[4]);
}

std::string curve_to_string(const Curve& E) {
    return "[" + to_string(E.a1) + "," + to_string(E.a2) + "," + to_string(E.a3) + "," +
           to_string(E.a4) + "," + to_string(E.a6) + "]";
}

}  // namespace tamagawa
