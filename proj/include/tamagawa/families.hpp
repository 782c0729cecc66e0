#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "tamagawa/arith.hpp"
#include "tamagawa/curve.hpp"
#include "tamagawa/poly.hpp"

namespace tamagawa {

// Loaded family data failed an anchor or structural check.
struct FamilyValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Specialization at a parameter where the fiber degenerates.
struct SingularFiberError : std::domain_error {
    using std::domain_error::domain_error;
};

// j-map evaluated at a cusp.
struct CuspError : std::domain_error {
    using std::domain_error::domain_error;
};

// One-parameter family y^2 + xy = x^3 + A2(u)x^2 + A4(u)x + A6(u) whose
// fibers acquire torsion Z/2 x Z/14 over a cyclic cubic field. Coefficients
// come from a JSON data file; loading validates the printed anchors, the
// discriminant valuations at u = +-1 and the resultant pins, and refuses the
// file otherwise. Immutable once loaded.
class TorsionFamily {
public:
    const Poly& A2() const { return a2_; }
    const Poly& A4() const { return a4_; }
    const Poly& A6() const { return a6_; }
    // short model y^2 = x^3 + A(u)x + B(u) of the same fibers
    const Poly& shortA() const { return sa_; }
    const Poly& shortB() const { return sb_; }
    // invariants of the long model as polynomials in u
    const Poly& c4() const { return c4_; }
    const Poly& c6() const { return c6_; }
    const Poly& disc() const { return disc_; }

    bool has_cubic() const { return !cubic_x_.empty(); }
    // Primitive integral 2-division cubic of the fiber at u, ascending
    // coefficients; its root generates the fiber's torsion cubic field.
    Poly fiber_cubic(const Rat& u) const;

    // Long-model fiber. Throws SingularFiberError at u = +-1 or disc(u) = 0.
    Curve specialize(const Rat& u) const;

    // FNV-1a hash of the data file bytes, for scan reports.
    const std::string& checksum() const { return checksum_; }

private:
    Poly a2_, a4_, a6_, sa_, sb_, c4_, c6_, disc_;
    std::vector<Poly> cubic_x_;  // x^0..x^3 coefficients as u-polynomials
    std::string checksum_;

    friend TorsionFamily load_torsion_family(const std::string& path);
    TorsionFamily() = default;
};

TorsionFamily load_torsion_family(const std::string& path);

// j-map of X_0(n) for the genus-zero levels with nontrivial parameterization
struct JMap {
    long n = 0;
    RationalFunction j;
    std::vector<Rat> cusps;  // excluded h: no elliptic fiber there

    bool is_cusp(const Rat& h) const;
    Rat eval(const Rat& h) const;  // CuspError on cusps
};

// n in {6, 8, 10, 18}; ArgumentError otherwise
const JMap& jmap(long n);

// Fixed j-invariant classes of X_0(n) for n where the parameter space is
// finite, each with the designated prime whose reduction type is III on the
// class representatives.
struct FixedIsogenyClass {
    Rat j;
    Int designated_prime;
};

// n in {14, 17, 19, 37, 43, 67, 163}; ArgumentError otherwise
const std::vector<FixedIsogenyClass>& fixed_isogeny_classes(long n);
std::vector<Rat> fixed_j_list(long n);

// Designated representative with the given j-invariant:
// y^2 + xy = x^3 - 36/(j-1728) x - 1/(j-1728) for j outside {0, 1728},
// y^2 + y = x^3 for j = 0, and y^2 = x^3 - x for j = 1728.
Curve curve_from_j(const Rat& j);

}  // namespace tamagawa
