#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tamagawa/curve.hpp"

namespace tamagawa {

struct UnsupportedCaseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class KodairaKind { I, Istar, II, III, IV, IVstar, IIIstar, IIstar };

struct KodairaSymbol {
    KodairaKind kind = KodairaKind::I;
    long k = 0;  // parameter of I_k / I_k*; 0 otherwise

    static KodairaSymbol In(long k) { return {KodairaKind::I, k}; }
    static KodairaSymbol Instar(long k) { return {KodairaKind::Istar, k}; }

    // "I0", "I14", "I0*", "II", "IV*", ...
    std::string str() const;
    bool operator==(const KodairaSymbol&) const = default;
};

enum class SplitClass { good, split, nonsplit, additive };

std::string to_string(SplitClass s);

struct LocalData {
    Int p;
    KodairaSymbol kodaira;
    SplitClass split_class = SplitClass::good;
    long f = 0;        // conductor exponent
    long c = 1;        // Tamagawa number [E(Q_p) : E_0(Q_p)]
    long v_disc = 0;   // valuation of the p-minimal discriminant
    Transformation local_transformation;  // input model -> the p-minimal model used
};

// Tate's algorithm at p, any residue characteristic. Works on a p-integral
// model and self-minimalizes by the u = p rescaling when it reaches the
// non-minimality step.
LocalData tate_local(const Curve& E, const Int& p);

// Split/nonsplit for odd multiplicative primes: split iff -c6 of the
// p-minimal model is a square mod p. Throws at p = 2 or when the reduction
// is not multiplicative.
SplitClass split_classification_c6(const Curve& E, const Int& p);

// Conductor as a factorization object: factors hold p^{f_p} for the bad
// primes found; a nontrivial cofactor records the unfactored part of the
// discriminant (primes whose exponents are undetermined).
PrimeFactorization conductor(const Curve& E, const FactorBudget& budget = {},
                             const std::vector<Int>& hint_primes = {});

struct GlobalData {
    PrimeFactorization conductor;
    Int c_E = 1;                   // product of c_p over the locals found
    std::vector<LocalData> locals;  // bad primes only
    bool complete = true;          // false: c_E is only a certified divisor
};

GlobalData tamagawa_number(const Curve& E, const FactorBudget& budget = {},
                           const std::vector<Int>& hint_primes = {});

// Kodaira symbol of the quadratic twist by squarefree d at L.p, from the
// twisting table: unchanged for odd p not dividing d, the quadratic-twist
// involution for odd p | d. At p = 2 only multiplicative inputs are
// supported: d = 1 mod 4 keeps I_n, d = 3 mod 4 gives I_{n+4}*, and even d
// gives I_{n+8}*; the starred index keeps the parity of n.
KodairaSymbol predict_twist_type(const LocalData& L, const Int& d);

// (kodaira, split_class, f, c) jointly consistent with the reduction table
bool table1_consistent(const LocalData& L);

}  // namespace tamagawa
