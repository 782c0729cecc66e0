#pragma once

#include <stdexcept>
#include <vector>

#include "tamagawa/arith.hpp"
#include "tamagawa/poly.hpp"

namespace tamagawa {

// The lifting budget ran out before every candidate residue was certified or
// eliminated. The counts computed so far are unusable; callers must treat the
// answer as unknown, never as zero.
struct IndeterminateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One p-adic root, certified by the Hensel inequality
// v(g(approx)) > 2 v(g'(approx)) where g is the primitive part of f, or of
// the reversal x^deg(f) f(1/x) when reciprocal is set. The inequality proves
// a unique root within distance p^-(f_val - fprime_val) of approx.
struct PadicCertifiedRoot {
    Int approx;       // representative in [0, p^precision)
    long precision;   // number of p-adic digits of approx that are pinned down
    long f_val;       // v(g(approx)); val_inf when g(approx) = 0 exactly
    long fprime_val;  // v(g'(approx))
    bool reciprocal;  // approx approximates 1/root (root has negative valuation)
};

struct PadicRootReport {
    Int p;
    int root_count = 0;  // distinct roots in Q_p; 0, 1 or 3 for a cubic
    std::vector<PadicCertifiedRoot> certified_roots;
    long precision_used = 0;  // most p-adic digits any certificate needed
};

// Number of distinct roots of f in Q_p. f must be an integral squarefree
// cubic (checked; ArgumentError otherwise, also for composite p). The search
// recurses on balls a + p^j Z_p: a residue root with unit derivative is a
// Hensel-certified leaf; a multiple residue root is translated into the ball
// and the p-content of the translate stripped, which makes v_p(disc) drop by
// at least 2 per level, so the depth is linear in v_p(disc f). Roots of
// negative valuation come from the reversed polynomial x^3 f(1/x) restricted
// to the ball p Z_p. Throws IndeterminateError when a certificate would need
// more than max_precision digits.
PadicRootReport count_padic_roots(const Poly& f, const Int& p, long max_precision = 64);

// True iff f has three roots in Q_p, i.e. p splits completely in the cubic
// field Q[x]/(f). f must in addition be irreducible: a rational root fails
// the precondition (ArgumentError); irreducibility beyond that is the
// caller's attestation, since for a cubic a rational root is the only way
// to be reducible.
bool splits_completely_at(const Poly& f, const Int& p, long max_precision = 64);

// All rational roots of an integral squarefree nonzero polynomial of degree
// <= 3, exact and complete (monicize + certified 2-adic lifting to the height
// bound; no divisor enumeration, so huge coefficients are fine).
std::vector<Rat> rational_roots(const Poly& f);

}  // namespace tamagawa
