#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tamagawa/arith.hpp"
#include "tamagawa/curve.hpp"
#include "tamagawa/families.hpp"
#include "tamagawa/tate.hpp"

namespace tamagawa {

// A scan could not locate a required representative curve. This signals a
// twist-logic bug rather than bad input, so it is not a CheckResult.
struct RepresentativeSearchError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Verdict { pass, fail, skipped };
std::string to_string(Verdict v);

// Identifies a curve class that is exempt from a divisibility statement.
struct ExceptionTag {
    Int conductor;
    Int c_E;
    Rat j;
};

// One executed check on one instance (a parameter value, possibly twisted).
struct CheckResult {
    std::string proposition;            // stable id, e.g. "torsion/witness-prime"
    std::string instance;               // e.g. "u=5/3" or "h=-2 d=7"
    Verdict verdict = Verdict::pass;
    std::vector<std::string> evidence;  // local reduction data summaries
    std::optional<ExceptionTag> exception_tag;
    std::string replay;                 // on fail: command line reproducing the instance
    std::string skip_reason;            // on skipped: why the verdict is unavailable
};

struct ScanConfig {
    std::string kind;
    long n = 0;
    long height = 0;
    long twist_bound = 0;
    long prime_bound = 0;
    unsigned long long seed = 0;
    long rho_iterations = 0;      // effective factorization budget
    std::string family_checksum;  // torsion scans only
    int workers = 1;
};

struct Summary {
    long passed = 0;
    long failed = 0;
    long skipped = 0;
};

// Deterministic report: results appear in canonical enumeration order
// (parameter first, twist second), so equal configs serialize byte-identically.
struct ScanReport {
    ScanConfig config;
    std::vector<CheckResult> results;

    Summary summary() const;
    bool clean() const;  // no failed results
    std::string to_json() const;
};

struct ScanOptions {
    FactorBudget budget{};
    int workers = 0;                    // 0: one per hardware thread
    std::optional<Rat> only_parameter;  // narrow to a single u or h (replay)
    std::optional<Int> only_twist;      // narrow to a single d (replay)
};

// Applies the TAMAGAWA_RHO_ITERATIONS environment override, if set.
FactorBudget budget_from_env(FactorBudget base = {});

// All squarefree d with 1 <= |d| <= bound, ordered by |d| with the positive
// sign first. Includes the trivial twist d = 1.
std::vector<Int> squarefree_twists(long bound);

// For every fiber E_u with u of height <= H (u = +-1 excluded), checks that
// (a) reduction at 2 is split I_{14k} with c_2 = 14k, (b) unless E_u lies in
// the Q-isomorphism class of E_3, some odd prime dividing the numerator or
// denominator of u-1 or u+1 carries split I_{14t}, so 14^2 | c_E, and
// (c) the fiber's 2-division cubic splits completely over Q_2.
ScanReport scan_torsion_family(const TorsionFamily& family, long height,
                               const ScanOptions& opts = {});

// For every non-cuspidal h of height <= H on X_0(n) and every squarefree
// |d| <= D, computes global reduction data of the d-th twist of the fiber's
// least-conductor representative and checks the divisibility dichotomy for
// that n. n in {6, 8, 10, 18}.
ScanReport scan_isogeny_family(long n, long height, long twist_bound,
                               const ScanOptions& opts = {});

// The finitely many j-invariants with an n-isogeny, n in {14, 17, 19, 37,
// 43, 67, 163}: every twist |d| <= D keeps Kodaira III or III* with c = 2 at
// the designated prime. n = 0 runs all seven levels.
ScanReport verify_fixed_isogeny(long n, long twist_bound,
                                const ScanOptions& opts = {});

// Quadratic twists that create I_0* fibers: locates the conductor-20 and
// conductor-80 representatives by twist search, verifies c_p = 2 or 4 by the
// class of p mod 5 for good primes p <= bound, checks the printed twist table
// of the j = 0 conductor-27 curve, and measures the density of primes where
// T^3 + 11664 has no root.
ScanReport verify_i0star_congruences(long prime_bound,
                                     const ScanOptions& opts = {});

// Seeded randomized cross-checks tying the modules together: invariant
// identities, consistency of every computed local datum, twist prediction
// against recomputation, the c6 split classifier against Tate's algorithm,
// minimal-model idempotence, and the resultant evaluation oracle.
ScanReport run_property_suite(unsigned long long seed,
                              const ScanOptions& opts = {});

// One acceptance criterion outcome; detail is a human-readable amplification.
struct CriterionResult {
    int id = 0;
    std::string title;
    bool passed = false;
    std::string detail;
};

// Runs the twelve acceptance criteria against the family file at family_path.
std::vector<CriterionResult> run_acceptance(const std::string& family_path,
                                            const ScanOptions& opts = {});

// The acceptance run wrapped as a report, for `verify all`.
ScanReport acceptance_report(const std::string& family_path,
                             const ScanOptions& opts = {});

}  // namespace tamagawa
