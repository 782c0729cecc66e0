#include "tamagawa/poly.hpp"

#include <algorithm>
#include <cctype>

namespace tamagawa {

void Poly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly::Poly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly::Poly(std::initializer_list<long> coeffs) {
    for (long v : coeffs) c_.emplace_back(v);
    trim();
}

Poly Poly::x() { return Poly({0, 1}); }

Poly Poly::constant(const Rat& c) { return Poly(std::vector<Rat>{c}); }

Poly Poly::monomial(long deg, const Rat& c) {
    std::vector<Rat> v(deg + 1, Rat(0));
    v[deg] = c;
    return Poly(std::move(v));
}

const Rat& Poly::operator[](long i) const {
    static const Rat zero(0);
    if (i < 0 || i >= long(c_.size())) return zero;
    return c_[i];
}

Rat Poly::lc() const {
    if (is_zero()) throw ArgumentError("lc of zero polynomial");
    return c_.back();
}

bool Poly::is_integral() const {
    for (const Rat& c : c_)
        if (c.get_den() != 1) return false;
    return true;
}

Poly Poly::operator-() const {
    std::vector<Rat> v = c_;
    for (Rat& c : v) c = -c;
    return Poly(std::move(v));
}

Poly Poly::operator+(const Poly& o) const {
    std::vector<Rat> v(std::max(c_.size(), o.c_.size()), Rat(0));
    for (size_t i = 0; i < c_.size(); ++i) v[i] = c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) v[i] += o.c_[i];
    return Poly(std::move(v));
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return Poly();
    std::vector<Rat> v(c_.size() + o.c_.size() - 1, Rat(0));
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < o.c_.size(); ++j) v[i + j] += c_[i] * o.c_[j];
    return Poly(std::move(v));
}

Poly Poly::operator*(const Rat& s) const {
    std::vector<Rat> v = c_;
    for (Rat& c : v) c *= s;
    return Poly(std::move(v));
}

Rat Poly::eval(const Rat& x) const {
    Rat acc(0);
    for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
}

Poly Poly::derivative() const {
    if (degree() < 1) return Poly();
    std::vector<Rat> v(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * Rat(long(i));
    return Poly(std::move(v));
}

Poly Poly::pow(long e) const {
    if (e < 0) throw ArgumentError("Poly::pow: negative exponent");
    Poly acc = constant(1), base = *this;
    while (e > 0) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

std::pair<Poly, Poly> divmod(const Poly& f, const Poly& g) {
    if (g.is_zero()) throw ArgumentError("divmod: division by zero polynomial");
    std::vector<Rat> r = f.coeffs();
    long dg = g.degree();
    if (f.degree() < dg) return {Poly(), f};
    std::vector<Rat> q(f.degree() - dg + 1, Rat(0));
    Rat inv_lc = 1 / g.lc();
    for (long i = f.degree(); i >= dg; --i) {
        Rat c = r[i] * inv_lc;
        if (c == 0) continue;
        q[i - dg] = c;
        for (long j = 0; j <= dg; ++j) r[i - dg + j] -= c * g[j];
    }
    return {Poly(std::move(q)), Poly(std::move(r))};
}

Poly poly_gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
        if (!b.is_zero()) b = b * (1 / b.lc());
    }
    if (a.is_zero()) return a;
    return a * (1 / a.lc());
}

std::pair<Rat, Poly> content_primitive(const Poly& f) {
    if (f.is_zero()) throw ArgumentError("content_primitive: zero polynomial");
    Int den_lcm = 1;
    for (const Rat& c : f.coeffs()) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
    Int num_gcd = 0;
    for (const Rat& c : f.coeffs()) {
        Int scaled = c.get_num() * (den_lcm / c.get_den());
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), scaled.get_mpz_t());
    }
    Rat content(num_gcd, den_lcm);
    content.canonicalize();
    if (f.lc() < 0) content = -content;
    Poly prim = f * (1 / content);
    return {content, prim};
}

namespace {

// integer polynomials ascending; helpers for the subresultant PRS
using ZPoly = std::vector<Int>;

ZPoly zp_from(const Poly& f) {
    ZPoly v(f.degree() + 1);
    for (long i = 0; i <= f.degree(); ++i) v[i] = f[i].get_num();
    return v;
}

void zp_trim(ZPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

long zp_deg(const ZPoly& a) { return long(a.size()) - 1; }

// pseudo remainder: lc(b)^(deg a - deg b + 1) * a mod b, exact over Z
ZPoly zp_prem(ZPoly a, const ZPoly& b) {
    long db = zp_deg(b);
    const Int& lb = b.back();
    long e = zp_deg(a) - db + 1;
    while (zp_deg(a) >= db) {
        long da = zp_deg(a);
        Int coef = a[da];
        for (Int& c : a) c *= lb;
        for (long j = 0; j <= db; ++j) a[da - db + j] -= coef * b[j];
        zp_trim(a);
        --e;
    }
    while (e-- > 0)
        for (Int& c : a) c *= lb;
    return a;
}

}  // namespace

Rat resultant(const Poly& f, const Poly& g) {
    if (f.is_zero() && g.is_zero()) throw ArgumentError("resultant: both polynomials zero");
    if (f.is_zero() || g.is_zero()) return Rat(0);
    long df = f.degree(), dg = g.degree();
    if (df == 0) {
        Rat c = f.lc(), acc(1);
        for (long i = 0; i < dg; ++i) acc *= c;
        return acc;
    }
    if (dg == 0) {
        Rat c = g.lc(), acc(1);
        for (long i = 0; i < df; ++i) acc *= c;
        return acc;
    }

    auto [cf, F] = content_primitive(f);
    auto [cg, G] = content_primitive(g);
    Rat scale(1);
    for (long i = 0; i < dg; ++i) scale *= cf;
    for (long i = 0; i < df; ++i) scale *= cg;

    ZPoly A = zp_from(F), B = zp_from(G);
    int s = 1;
    if (zp_deg(A) < zp_deg(B)) {
        if ((zp_deg(A) % 2) && (zp_deg(B) % 2)) s = -s;
        std::swap(A, B);
    }
    Int gg = 1, hh = 1;
    while (true) {
        long da = zp_deg(A), db = zp_deg(B);
        long delta = da - db;
        if ((da % 2) && (db % 2)) s = -s;
        ZPoly R = zp_prem(A, B);
        A = B;
        // divide R exactly by g * h^delta
        Int divisor = gg;
        for (long i = 0; i < delta; ++i) divisor *= hh;
        for (Int& c : R) {
            Int quot, rem;
            mpz_tdiv_qr(quot.get_mpz_t(), rem.get_mpz_t(), c.get_mpz_t(), divisor.get_mpz_t());
            if (rem != 0) throw std::logic_error("resultant: inexact subresultant division");
            c = quot;
        }
        B = R;
        zp_trim(B);
        if (zp_deg(B) <= 0) break;
        gg = A.back();
        // h = g^delta * h^(1-delta), exact in Z
        Int gd = 1;
        for (long i = 0; i < delta; ++i) gd *= gg;
        if (delta == 0)
            ;  // h unchanged
        else {
            Int hpow = 1;
            for (long i = 0; i < delta - 1; ++i) hpow *= hh;
            Int quot, rem;
            mpz_tdiv_qr(quot.get_mpz_t(), rem.get_mpz_t(), gd.get_mpz_t(), hpow.get_mpz_t());
            if (rem != 0) throw std::logic_error("resultant: inexact h update");
            hh = quot;
        }
    }
    if (B.empty()) return Rat(0);
    // final correction: h^(1 - deg A) * lc(B)^(deg A)
    long da = zp_deg(A);
    Int lb = B.back();
    Int num = 1;
    for (long i = 0; i < da; ++i) num *= lb;
    Int denom = 1;
    for (long i = 0; i < da - 1; ++i) denom *= hh;
    Int res, rem;
    mpz_tdiv_qr(res.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), denom.get_mpz_t());
    if (rem != 0) throw std::logic_error("resultant: inexact final correction");
    Rat out = Rat(res) * scale;
    if (s < 0) out = -out;
    return out;
}

long root_multiplicity(const Poly& f, const Rat& a) {
    if (f.is_zero()) throw ArgumentError("root_multiplicity: zero polynomial");
    Poly lin(std::vector<Rat>{-a, Rat(1)});
    long m = 0;
    Poly cur = f;
    while (cur.eval(a) == 0) {
        cur = divmod(cur, lin).first;
        ++m;
    }
    return m;
}

RationalFunction::RationalFunction(Poly n, Poly d) : num(std::move(n)), den(std::move(d)) {
    if (den.is_zero()) throw ArgumentError("RationalFunction: zero denominator");
    if (num.is_zero()) {
        den = Poly::constant(1);
        return;
    }
    Poly g = poly_gcd(num, den);
    if (g.degree() > 0) {
        num = divmod(num, g).first;
        den = divmod(den, g).first;
    }
    Rat dl = den.lc();
    num = num * (1 / dl);
    den = den * (1 / dl);
}

bool RationalFunction::defined_at(const Rat& t) const { return den.eval(t) != 0; }

Rat RationalFunction::eval(const Rat& t) const {
    Rat dv = den.eval(t);
    if (dv == 0) throw ArgumentError("RationalFunction: pole at t = " + to_string(t));
    return num.eval(t) / dv;
}

RationalFunction substitute_mobius(const RationalFunction& F, const Int& a, const Int& b,
                                   const Int& c, const Int& d) {
    if (a * d - b * c == 0) throw ArgumentError("substitute_mobius: degenerate map");
    Poly atb(std::vector<Rat>{Rat(b), Rat(a)});  // a*t + b
    Poly ctd(std::vector<Rat>{Rat(d), Rat(c)});  // c*t + d
    long dn = F.num.degree(), dd = F.den.degree();
    long L = std::max(dn, dd);
    auto lift = [&](const Poly& P, long target) -> Poly {
        Poly acc;
        for (long i = 0; i <= P.degree(); ++i) {
            if (P[i] == 0) continue;
            acc = acc + atb.pow(i) * ctd.pow(P.degree() - i) * P[i];
        }
        return acc * ctd.pow(target - P.degree());
    };
    return RationalFunction(lift(F.num, L), lift(F.den, L));
}

namespace {

Rat parse_rat(const std::string& tok) {
    size_t slash = tok.find('/');
    if (slash == std::string::npos) return Rat(Int(tok));
    Rat r(Int(tok.substr(0, slash)), Int(tok.substr(slash + 1)));
    r.canonicalize();
    return r;
}

}  // namespace

Poly parse_poly(const std::string& s) {
    std::string t;
    for (char ch : s)
        if (!std::isspace(static_cast<unsigned char>(ch))) t.push_back(ch);
    if (t.empty()) throw ArgumentError("parse_poly: empty input");

    if (t.find(',') != std::string::npos) {
        std::vector<Rat> coeffs;
        size_t pos = 0;
        while (pos <= t.size()) {
            size_t comma = t.find(',', pos);
            std::string tok = t.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
            if (tok.empty()) throw ArgumentError("parse_poly: empty coefficient");
            coeffs.push_back(parse_rat(tok));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        return Poly(std::move(coeffs));
    }

    char var = 0;
    for (char ch : t)
        if (std::isalpha(static_cast<unsigned char>(ch))) {
            var = ch;
            break;
        }

    std::vector<Rat> coeffs;
    auto add_term = [&](const Int& coef, long deg) {
        if (deg >= long(coeffs.size())) coeffs.resize(deg + 1, Rat(0));
        coeffs[deg] += Rat(coef);
    };

    size_t i = 0;
    while (i < t.size()) {
        int sign = 1;
        while (i < t.size() && (t[i] == '+' || t[i] == '-')) {
            if (t[i] == '-') sign = -sign;
            ++i;
        }
        if (i >= t.size()) throw ArgumentError("parse_poly: trailing sign");
        std::string digits;
        while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) digits.push_back(t[i++]);
        Int coef = digits.empty() ? Int(1) : Int(digits);
        if (sign < 0) coef = -coef;
        if (i < t.size() && t[i] == '*') ++i;
        long deg = 0;
        if (i < t.size() && t[i] == var) {
            ++i;
            deg = 1;
            if (i < t.size() && t[i] == '^') {
                ++i;
                std::string e;
                while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) e.push_back(t[i++]);
                if (e.empty()) throw ArgumentError("parse_poly: missing exponent");
                deg = std::stol(e);
            }
        } else if (digits.empty()) {
            throw ArgumentError("parse_poly: unexpected character '" + std::string(1, t[i]) + "'");
        }
        add_term(coef, deg);
    }
    return Poly(std::move(coeffs));
}

std::string poly_to_string(const Poly& f, const std::string& var) {
    if (f.is_zero()) return "0";
    std::string out;
    for (long i = f.degree(); i >= 0; --i) {
        const Rat& c = f[i];
        if (c == 0) continue;
        Int an = c.get_num();
        if (an < 0) an = -an;
        std::string mag = to_string(Rat(an, c.get_den()));
        bool neg = c < 0;
        if (out.empty())
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        bool unit = (mag == "1");
        if (i == 0)
            out += mag;
        else {
            if (!unit) out += mag + "*";
            out += var;
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

}  // namespace tamagawa
