#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tamagawa/arith.hpp"

namespace tamagawa {

struct SingularCurveError : std::domain_error {
    using std::domain_error::domain_error;
};

// Weierstrass model y^2 + a1*x*y + a3*y = x^3 + a2*x^2 + a4*x + a6 over Q.
// Construction rejects singular models (discriminant zero).
struct Curve {
    Rat a1, a2, a3, a4, a6;

    Curve(Rat a1_, Rat a2_, Rat a3_, Rat a4_, Rat a6_);
    bool is_integral() const;
    bool operator==(const Curve&) const = default;
};

struct Invariants {
    Rat b2, b4, b6, b8, c4, c6, disc;
    Rat j() const { return c4 * c4 * c4 / disc; }
};

Invariants invariants(const Curve& E);

// Change of coordinates x = u^2 x' + r, y = u^3 y' + s u^2 x' + t with u != 0.
struct Transformation {
    Rat u = 1, r = 0, s = 0, t = 0;

    // composite "apply *this, then next" as a single transformation
    Transformation then(const Transformation& next) const;
    Transformation inverse() const;
    bool operator==(const Transformation&) const = default;
};

Curve apply_transform(const Curve& E, const Transformation& T);

// Quadratic twist by the squarefree part of d (d nonzero). The result is the
// short model [0,0,0, -27*c4*s^2, -54*c6*s^3]; for square d this is just a
// model of E itself.
Curve quadratic_twist(const Curve& E, const Int& d);

struct MinimalModel {
    Curve curve;           // global minimal model, Connell-standardized
    Transformation trans;  // takes the input model to the minimal one
};

// Laska-Kraus-Connell reduction. Factoring gcd(c4, c6) can exhaust the budget
// on contrived inputs; hint_primes supplements trial division there.
MinimalModel minimal_model(const Curve& E, const FactorBudget& budget = {},
                           const std::vector<Int>& hint_primes = {});

// (c4, c6) of the minimal model: a canonical Q-isomorphism class key.
std::pair<Int, Int> minimal_invariants_key(const Curve& E, const FactorBudget& budget = {},
                                           const std::vector<Int>& hint_primes = {});

// "a1,a2,a3,a4,a6" with rational entries
Curve parse_curve(const std::string& s);
std::string curve_to_string(const Curve& E);

}  // namespace tamagawa
