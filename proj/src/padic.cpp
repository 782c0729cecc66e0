#include "tamagawa/padic.hpp"

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>

#include "tamagawa/modpoly.hpp"

namespace tamagawa {

namespace {

// Ascending integer coefficients, leading entry nonzero.
using Coeffs = std::vector<Int>;

Int ieval(const Coeffs& g, const Int& x) {
    Int r(0);
    for (auto it = g.rbegin(); it != g.rend(); ++it) r = r * x + *it;
    return r;
}

Coeffs ideriv(const Coeffs& g) {
    Coeffs d;
    for (std::size_t i = 1; i < g.size(); ++i) d.push_back(Int(i) * g[i]);
    return d;
}

Int icontent(const Coeffs& g) {
    Int c(0);
    for (const Int& x : g) mpz_gcd(c.get_mpz_t(), c.get_mpz_t(), x.get_mpz_t());
    return c;
}

Int ipow(const Int& p, long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(e));
    return r;
}

Coeffs to_int_coeffs(const Poly& f) {
    Coeffs out;
    for (const Rat& c : f.coeffs()) out.push_back(c.get_num());
    return out;
}

Poly to_poly(const Coeffs& g) {
    std::vector<Rat> cs;
    for (const Int& c : g) cs.emplace_back(c);
    return Poly(std::move(cs));
}

// h(y) = g(t + p*y); h_k = p^k * (k-th Taylor coefficient of g at t).
// The y-degree equals the x-degree; only the content gains p-valuation.
Coeffs translate_scale(const Coeffs& g, const Int& t, const Int& p) {
    const std::size_t n = g.size();
    std::vector<Int> tp(n, Int(1));
    for (std::size_t i = 1; i < n; ++i) tp[i] = tp[i - 1] * t;
    Coeffs h(n, Int(0));
    Int pk(1);
    for (std::size_t k = 0; k < n; ++k) {
        Int acc(0);
        for (std::size_t i = k; i < n; ++i) {
            Int binom;
            mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(i),
                         static_cast<unsigned long>(k));
            acc += binom * g[i] * tp[i - k];
        }
        h[k] = pk * acc;
        pk *= p;
    }
    return h;
}

// Newton lift of a simple residue root: g'(t0) must be a p-unit. Returns
// T = t0 (mod p) with g(T) = 0 (mod p^digits), 0 <= T < p^digits.
Int newton_refine(const Coeffs& g, const Int& t0, const Int& p, long digits) {
    const Coeffs gp = ideriv(g);
    Int T = t0;
    long prec = 1;
    while (prec < digits) {
        prec = std::min(2 * prec, digits);
        const Int mod = ipow(p, prec);
        Int inv;
        const Int gpT = ieval(gp, T);
        if (mpz_invert(inv.get_mpz_t(), gpT.get_mpz_t(), mod.get_mpz_t()) == 0)
            throw std::logic_error("newton_refine: derivative is not a p-unit");
        T = (T - ieval(g, T) * inv) % mod;
        if (T < 0) T += mod;
    }
    return T;
}

// A certified root of the reference polynomial: v(f(approx)) = s, v(f'(approx)) = m,
// with s > 2m (s = val_inf allowed), so a unique root lies within p^-(s-m) of approx.
struct BallCert {
    Int approx;
    long digits;
    long s;
    long m;
};

// Ball a + p^depth Z_p together with the normalized local polynomial:
// f_ref(center + p^depth y) = p^stripped * g(y) with g primitive.
struct Node {
    Int center;
    long depth;
    Coeffs g;
    long stripped;
};

// Exhausts the balls on the stack. Simple residue roots of g mod p become
// Hensel-certified leaves; a multiple residue root t is translated into its
// ball and the p-content c >= 2 stripped (c = 1 would leave a unit constant,
// so that ball holds no roots and is dropped). Stripping makes v_p(disc g)
// fall by at least 2 per pushed node, which bounds the depth by
// v_p(disc)/2 + O(1); branching is bounded because a squarefree cubic has at
// most one multiple residue root mod p. Each leaf asks for
// max(1, stripped - 2 depth + 1) + 2 digits, enough to make the Hensel
// inequality strict; min_leaf_digits can raise that (used by the rational
// root search to reach its height bound).
std::vector<BallCert> run_tree(std::vector<Node> stack, const Coeffs& f_ref, const Int& p,
                               long max_digits, long min_leaf_digits, long& deepest) {
    const Coeffs fp_ref = ideriv(f_ref);
    std::vector<BallCert> out;
    while (!stack.empty()) {
        Node node = std::move(stack.back());
        stack.pop_back();
        deepest = std::max(deepest, node.depth);
        const Coeffs gp = ideriv(node.g);
        const Int pj = ipow(p, node.depth);
        for (const Int& t : roots_mod_p(to_poly(node.g), p)) {
            if (ieval(gp, t) % p != 0) {
                long L = std::max(1L, node.stripped - 2 * node.depth + 1) + 2;
                L = std::max(L, min_leaf_digits - node.depth);
                if (node.depth + L > max_digits)
                    throw IndeterminateError(
                        "p-adic lifting needs " + std::to_string(node.depth + L) +
                        " digits at p = " + p.get_str() + ", budget is " +
                        std::to_string(max_digits));
                const Int T = newton_refine(node.g, t, p, L);
                BallCert cert;
                cert.approx = node.center + pj * T;
                cert.digits = node.depth + L;
                cert.s = valuation(ieval(f_ref, cert.approx), p);
                cert.m = valuation(ieval(fp_ref, cert.approx), p);
                if (cert.m == val_inf || (cert.s != val_inf && cert.s <= 2 * cert.m))
                    throw std::logic_error("run_tree: leaf fails the Hensel inequality");
                out.push_back(std::move(cert));
            } else {
                if (node.depth + 1 > max_digits)
                    throw IndeterminateError(
                        "p-adic lifting needs depth " + std::to_string(node.depth + 1) +
                        " at p = " + p.get_str() + ", budget is " +
                        std::to_string(max_digits));
                Coeffs h = translate_scale(node.g, t, p);
                const long c = valuation(icontent(h), p);
                if (c == 1) continue;  // h/p has a unit constant term: no roots here
                const Int pc = ipow(p, c);
                for (Int& x : h) x /= pc;
                stack.push_back(Node{node.center + pj * t, node.depth + 1, std::move(h),
                                     node.stripped + c});
            }
        }
    }
    return out;
}

Coeffs primitive_part(const Coeffs& g) {
    const Int c = icontent(g);
    Coeffs out = g;
    for (Int& x : out) x /= c;
    return out;
}

Coeffs reversed_trimmed(const Coeffs& g) {
    Coeffs rev(g.rbegin(), g.rend());
    while (!rev.empty() && rev.back() == 0) rev.pop_back();
    return rev;
}

void require_squarefree(const Poly& f, const char* who) {
    if (f.degree() >= 1 && poly_gcd(f, f.derivative()).degree() != 0)
        throw ArgumentError(std::string(who) + ": polynomial must be squarefree");
}

// disc of a polynomial of degree 2 or 3 (ascending coefficients, trimmed).
Int disc_small(const Coeffs& g) {
    if (g.size() == 4) {
        const Int &d = g[0], &c = g[1], &b = g[2], &a = g[3];
        Int r = 18 * a * b * c * d;
        r -= 4 * b * b * b * d;
        r += b * b * c * c;
        r -= 4 * a * c * c * c;
        r -= 27 * a * a * d * d;
        return r;
    }
    if (g.size() == 3) {
        Int r = g[1] * g[1];
        r -= 4 * g[2] * g[0];
        return r;
    }
    return Int(1);
}

}  // namespace

PadicRootReport count_padic_roots(const Poly& f, const Int& p, long max_precision) {
    if (!is_prime(p)) throw ArgumentError("count_padic_roots: p must be prime");
    if (f.degree() != 3) throw ArgumentError("count_padic_roots: cubic required");
    if (!f.is_integral())
        throw ArgumentError("count_padic_roots: integer coefficients required");
    if (max_precision < 2)
        throw ArgumentError("count_padic_roots: max_precision must be at least 2");
    require_squarefree(f, "count_padic_roots");

    const Coeffs f1 = primitive_part(to_int_coeffs(f));
    long deepest = 0;
    const std::vector<BallCert> main_certs =
        run_tree({Node{Int(0), 0, f1, 0}}, f1, p, max_precision, 0, deepest);

    // Roots of negative valuation: x -> 1/x turns them into roots of the
    // reversal that lie in p Z_p, i.e. in the ball below residue 0. The seed
    // translation is not a multiple-root step, so c = 1 is kept here.
    const Coeffs rev = reversed_trimmed(f1);
    std::vector<BallCert> neg_certs;
    if (rev[0] % p == 0) {
        Coeffs h = translate_scale(rev, Int(0), p);
        const long c = valuation(icontent(h), p);
        const Int pc = ipow(p, c);
        for (Int& x : h) x /= pc;
        neg_certs = run_tree({Node{Int(0), 1, std::move(h), c}}, rev, p, max_precision, 0,
                             deepest);
    }

    PadicRootReport report;
    report.p = p;
    report.root_count = static_cast<int>(main_certs.size() + neg_certs.size());
    if (report.root_count != 0 && report.root_count != 1 && report.root_count != 3)
        throw std::logic_error("count_padic_roots: a squarefree cubic has 0, 1 or 3 roots");
    report.precision_used = deepest;
    for (const BallCert& c : main_certs) {
        report.certified_roots.push_back(PadicCertifiedRoot{c.approx, c.digits, c.s, c.m, false});
        report.precision_used = std::max(report.precision_used, c.digits);
    }
    for (const BallCert& c : neg_certs) {
        report.certified_roots.push_back(PadicCertifiedRoot{c.approx, c.digits, c.s, c.m, true});
        report.precision_used = std::max(report.precision_used, c.digits);
    }
    std::sort(report.certified_roots.begin(), report.certified_roots.end(),
              [](const PadicCertifiedRoot& a, const PadicCertifiedRoot& b) {
                  if (a.reciprocal != b.reciprocal) return !a.reciprocal;
                  return a.approx < b.approx;
              });
    return report;
}

bool splits_completely_at(const Poly& f, const Int& p, long max_precision) {
    if (f.degree() == 3 && !rational_roots(f).empty())
        throw ArgumentError(
            "splits_completely_at: f has a rational root, irreducible cubic required");
    return count_padic_roots(f, p, max_precision).root_count == 3;
}

std::vector<Rat> rational_roots(const Poly& f) {
    if (f.is_zero()) throw ArgumentError("rational_roots: nonzero polynomial required");
    if (f.degree() > 3) throw ArgumentError("rational_roots: degree at most 3 required");
    if (!f.is_integral()) throw ArgumentError("rational_roots: integer coefficients required");
    require_squarefree(f, "rational_roots");

    Coeffs g = primitive_part(to_int_coeffs(f));
    std::vector<Rat> roots;
    if (g[0] == 0) {  // a single factor of x; two would contradict squarefreeness
        roots.emplace_back(0);
        g.erase(g.begin());
    }
    const std::size_t d = g.size() - 1;
    if (d == 1) {
        Rat r(-g[0], g[1]);
        r.canonicalize();
        roots.push_back(std::move(r));
    } else if (d >= 2) {
        // Rational roots of g are z / lc for integer roots z of the monic
        // polynomial mon(y) = lc^(d-1) g(y / lc). An integer root is in
        // particular a 2-adic root, so certify the 2-adic roots to enough
        // digits to pin an integer below the Cauchy height bound, then check
        // the two lifts of each certificate exactly.
        const Int lc = g[d];
        Coeffs mon(d + 1);
        mon[d] = 1;
        for (std::size_t i = 0; i < d; ++i) mon[i] = g[i] * ipow(lc, static_cast<long>(d - 1 - i));
        Int bound(1);
        for (std::size_t i = 0; i < d; ++i) bound = std::max(bound, Int(abs(mon[i])));
        bound = 2 * (bound + 1);  // |z| <= 1 + max |coeff| for monic, doubled for signs
        const long K =
            static_cast<long>(mpz_sizeinbase(bound.get_mpz_t(), 2)) + 1;  // 2^K > bound
        const Int two(2);
        const long vdisc = valuation(disc_small(mon), two);
        const long budget = K + vdisc + 16;
        long deepest = 0;
        const std::vector<BallCert> certs =
            run_tree({Node{Int(0), 0, mon, 0}}, mon, two, budget, K, deepest);
        const Int twoK = ipow(two, K);
        for (const BallCert& c : certs) {
            const Int z1 = c.approx % twoK;
            for (const Int& z : {z1, Int(z1 - twoK)}) {
                if (ieval(mon, z) == 0) {
                    Rat r(z, lc);
                    r.canonicalize();
                    roots.push_back(std::move(r));
                }
            }
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

}  // namespace tamagawa
