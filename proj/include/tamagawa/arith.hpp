#pragma once

#include <gmpxx.h>

#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tamagawa {

using Int = mpz_class;
using Rat = mpq_class;

// Domain violation in an argument (non-prime p, zero where nonzero required, ...).
struct ArgumentError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A factorization job exceeded its budget in a context that cannot tolerate an
// unfactored cofactor.
struct IncompleteFactorization : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Sentinel for ord_p(0). Comparisons against finite valuations behave as +infinity.
inline constexpr long val_inf = std::numeric_limits<long>::max();

// ord_p(x). Requires p prime, returns val_inf for x = 0.
long valuation(const Int& x, const Int& p);
long valuation(const Rat& x, const Int& p);

bool is_prime(const Int& n);

struct FactorBudget {
    // Iterations per Pollard-Brent round; ~3e6 reliably splits factors up to ~1e13.
    long rho_iterations = 3'000'000;
    int rho_rounds = 20;

    FactorBudget scaled(long mult) const {
        FactorBudget b = *this;
        b.rho_iterations *= mult;
        return b;
    }
};

struct PrimeFactorization {
    // (prime, exponent), primes strictly increasing, exponents >= 1.
    std::vector<std::pair<Int, long>> factors;
    // Unfactored remainder, 1 when the factorization is complete.
    Int cofactor = 1;
    int sign = 1;

    bool complete() const { return cofactor == 1; }
    // |n| reconstructed from the pieces.
    Int abs_value() const;
    // Product of p^e over the identified primes (excludes cofactor).
    Int factored_part() const;
    long exponent_of(const Int& p) const;
};

// Factor n (n != 0). Hint primes are divided out first (composite hints are
// ignored); then trial division to 1e6, perfect-power reduction, Miller-Rabin
// certification and Pollard-Brent rho within the budget. A surviving composite
// ends up in cofactor; it is never silently dropped.
PrimeFactorization factorize(const Int& n, const FactorBudget& budget = {},
                             const std::vector<Int>& hint_primes = {});

// d = s * m^2 with s squarefree, sign(s) = sign(d). Throws IncompleteFactorization
// when d cannot be fully factored within the default budget.
std::pair<Int, Int> squarefree_part(const Int& d, const FactorBudget& budget = {});

// (a|p) for odd prime p.
int legendre_symbol(const Int& a, const Int& p);

// All reduced p/q with 1 <= q <= H, |p| <= H, ordered by ascending q then ascending p.
std::vector<Rat> enumerate_rationals(long H);

// Primes <= 1e6, ascending.
const std::vector<uint32_t>& small_primes();

std::string to_string(const Int& n);
std::string to_string(const Rat& x);

}  // namespace tamagawa
