#pragma once

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "tamagawa/arith.hpp"

namespace tamagawa {

// Univariate polynomial over Q. Coefficients ascending, trailing zeros trimmed,
// so degree() == coeffs().size() - 1 and the zero polynomial has degree -1.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<Rat> coeffs);
    Poly(std::initializer_list<long> coeffs);

    static Poly x();
    static Poly constant(const Rat& c);
    static Poly monomial(long deg, const Rat& c);

    long degree() const { return long(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    // coefficient of x^i, zero beyond the degree
    const Rat& operator[](long i) const;
    const std::vector<Rat>& coeffs() const { return c_; }
    Rat lc() const;
    bool is_integral() const;  // all denominators 1

    Poly operator-() const;
    Poly operator+(const Poly&) const;
    Poly operator-(const Poly&) const;
    Poly operator*(const Poly&) const;
    Poly operator*(const Rat&) const;
    bool operator==(const Poly&) const = default;

    Rat eval(const Rat& x) const;
    Poly derivative() const;
    Poly pow(long e) const;

private:
    std::vector<Rat> c_;
    void trim();
};

// Euclidean division f = q*g + r with deg r < deg g. g nonzero.
std::pair<Poly, Poly> divmod(const Poly& f, const Poly& g);

// Monic gcd over Q (zero if both zero).
Poly poly_gcd(Poly a, Poly b);

// f = content * primitive with primitive integral, coefficient gcd 1 and
// positive leading coefficient; the sign lives in the content.
std::pair<Rat, Poly> content_primitive(const Poly& f);

// res(f, g) with the convention res(x - a, g) = g(a), i.e.
// lc(f)^deg(g) * prod g(alpha_i) over the roots of f.
// Computed by subresultant PRS over Z after content clearing.
Rat resultant(const Poly& f, const Poly& g);

// Multiplicity of a as a root of f (0 if f(a) != 0). f nonzero.
long root_multiplicity(const Poly& f, const Rat& a);

// Quotient num/den, normalized: gcd(num, den) = 1 and den monic.
struct RationalFunction {
    Poly num, den;

    RationalFunction(Poly n, Poly d);
    bool defined_at(const Rat& t) const;
    Rat eval(const Rat& t) const;
    bool operator==(const RationalFunction&) const = default;
};

// F((a*t + b)/(c*t + d)) as a normalized rational function in t; ad - bc != 0.
RationalFunction substitute_mobius(const RationalFunction& F, const Int& a, const Int& b,
                                   const Int& c, const Int& d);

// Accepts "c0,c1,...,cn" (ascending, rational entries allowed) or a symbolic
// sum of integer monomials like "x^3+2x^2-9x-2" in any single-letter variable.
Poly parse_poly(const std::string& s);
std::string poly_to_string(const Poly& f, const std::string& var = "x");

}  // namespace tamagawa
