#pragma once

#include <optional>
#include <vector>

#include "tamagawa/poly.hpp"

namespace tamagawa {

// Distinct roots of f mod p, sorted, each in [0, p). f must have integer
// coefficients and a nonzero reduction mod p; p must be prime.
// Exhaustive search for p < 50, otherwise gcd with x^p - x followed by
// equal-degree splitting with a deterministic shift sweep.
std::vector<Int> roots_mod_p(const Poly& f, const Int& p);

// Whether T^2 + b*T + c factors into linear factors over F_p (a double root
// counts). Valid at p = 2 as well.
bool quadratic_splits_mod_p(const Int& b, const Int& c, const Int& p);

struct CubicMultipleRoot {
    Int root;          // in [0, p)
    int multiplicity;  // 2 or 3
};

// Multiple root of the monic cubic T^3 + b*T^2 + c*T + d over F_p, if any.
// A cubic has at most one multiple root, so the answer is unique.
std::optional<CubicMultipleRoot> cubic_multiple_root_mod_p(const Int& b, const Int& c,
                                                           const Int& d, const Int& p);

}  // namespace tamagawa
