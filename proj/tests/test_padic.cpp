#include <doctest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "tamagawa/arith.hpp"
#include "tamagawa/families.hpp"
#include "tamagawa/padic.hpp"
#include "tamagawa/poly.hpp"

using namespace tamagawa;

namespace {

const TorsionFamily& family() {
    static TorsionFamily fam = load_torsion_family(TAMAGAWA_DATA_DIR "/torsion_2_14.json");
    return fam;
}

Poly reversed_poly(const Poly& f) {
    std::vector<Rat> rc(f.coeffs().rbegin(), f.coeffs().rend());
    return Poly(std::move(rc));
}

long hensel_radius(const PadicCertifiedRoot& c) {
    return c.f_val == val_inf ? val_inf : c.f_val - c.fprime_val;
}

// Re-derives every claim a certificate makes, against the primitive part of f
// (or of its reversal for reciprocal certificates).
void check_certificates(const Poly& f, const PadicRootReport& rep) {
    REQUIRE(rep.root_count == static_cast<int>(rep.certified_roots.size()));
    const Poly f1 = content_primitive(f).second;
    const Poly frev = reversed_poly(f1);
    for (const PadicCertifiedRoot& c : rep.certified_roots) {
        CAPTURE(c.approx.get_str());
        const Poly& g = c.reciprocal ? frev : f1;
        CHECK(c.approx >= 0);
        Int pk;
        mpz_pow_ui(pk.get_mpz_t(), rep.p.get_mpz_t(), static_cast<unsigned long>(c.precision));
        CHECK(c.approx < pk);
        CHECK(valuation(g.eval(Rat(c.approx)), rep.p) == c.f_val);
        CHECK(valuation(g.derivative().eval(Rat(c.approx)), rep.p) == c.fprime_val);
        const bool hensel = c.f_val == val_inf || c.f_val > 2 * c.fprime_val;
        CHECK(hensel);
        CHECK(rep.precision_used >= c.precision);
    }
    // distinct certificates pin distinct roots: the centers are farther apart
    // than either certificate's uniqueness radius
    for (std::size_t i = 0; i < rep.certified_roots.size(); ++i) {
        for (std::size_t j = i + 1; j < rep.certified_roots.size(); ++j) {
            const auto& a = rep.certified_roots[i];
            const auto& b = rep.certified_roots[j];
            if (a.reciprocal != b.reciprocal) continue;  // opposite valuation signs
            const Int diff = a.approx - b.approx;
            CHECK(valuation(diff, rep.p) < std::min(hensel_radius(a), hensel_radius(b)));
        }
    }
}

int count_reciprocal(const PadicRootReport& rep) {
    int n = 0;
    for (const auto& c : rep.certified_roots) n += c.reciprocal ? 1 : 0;
    return n;
}

}  // namespace

TEST_SUITE("padic") {

TEST_CASE("two-division fiber cubics at u = 2, 1/2, 3 split completely at 2") {
    const Poly at2{4, -27, -4, 3};      // 3x^3 - 4x^2 - 27x + 4
    const Poly at_half{47, 54, -47, -6};  // -6x^3 - 47x^2 + 54x + 47
    const Poly at3{-2, -9, 2, 1};       // x^3 + 2x^2 - 9x - 2
    for (const Poly* f : {&at2, &at_half, &at3}) {
        const PadicRootReport rep = count_padic_roots(*f, 2);
        CHECK(rep.root_count == 3);
        CHECK(splits_completely_at(*f, 2));
        check_certificates(*f, rep);
    }
    // lc(-6x^3 + ...) is even, so exactly one root has negative valuation
    CHECK(count_reciprocal(count_padic_roots(at_half, 2)) == 1);
    CHECK(count_reciprocal(count_padic_roots(at3, 2)) == 0);
    CHECK(count_reciprocal(count_padic_roots(at2, 2)) == 0);
}

TEST_CASE("root counts with hand-checkable factorizations") {
    const Poly cube2{-2, 0, 0, 1};  // x^3 - 2
    // v_2(root) = 1/3 is not an integer, so no roots in Q_2
    CHECK(count_padic_roots(cube2, 2).root_count == 0);
    CHECK_FALSE(splits_completely_at(cube2, 2));
    // cubing is a bijection on F_5* (gcd(3, 4) = 1): one residue root, Hensel lifts
    {
        const PadicRootReport rep = count_padic_roots(cube2, 5);
        CHECK(rep.root_count == 1);
        REQUIRE(rep.certified_roots.size() == 1);
        // 53^3 - 2 = 148875 = 5^3 * 1191
        CHECK(rep.certified_roots[0].approx == 53);
        CHECK_FALSE(rep.certified_roots[0].reciprocal);
        check_certificates(cube2, rep);
    }
    // 2^10 = 1024 = 33*31 + 1, so 2 is a cube mod 31, and mu_3 lies in F_31
    // because 31 = 1 mod 3: all three roots are there, and disc = -108 is a
    // 31-unit so each lifts
    CHECK(count_padic_roots(cube2, 31).root_count == 3);
    CHECK(splits_completely_at(cube2, 31));
    // x^3 - 4x^2 - 8x - 9 = (x + 1)(x^2 + x + 1) mod 2 with the quadratic
    // irreducible mod 2: exactly one root in Q_2
    const Poly one_root{-9, -8, -4, 1};
    const PadicRootReport rep = count_padic_roots(one_root, 2);
    CHECK(rep.root_count == 1);
    CHECK_FALSE(splits_completely_at(one_root, 2));
    check_certificates(one_root, rep);
}

TEST_CASE("preconditions are rejected") {
    const Poly cubic{-2, -9, 2, 1};
    CHECK_THROWS_AS(count_padic_roots(cubic, 4), ArgumentError);
    CHECK_THROWS_AS(count_padic_roots(cubic, 6), ArgumentError);
    CHECK_THROWS_AS(count_padic_roots(Poly{1, 0, 1}, 2), ArgumentError);   // degree 2
    CHECK_THROWS_AS(count_padic_roots(Poly{0, 0, 0, 1}, 2), ArgumentError);  // x^3, not squarefree
    CHECK_THROWS_AS(count_padic_roots(cubic, 2, 1), ArgumentError);
    const Poly half = parse_poly("0,-1/2,0,1");
    CHECK_THROWS_AS(count_padic_roots(half, 2), ArgumentError);
    // a rational root makes the cubic reducible, which splits_completely_at rejects
    CHECK_THROWS_AS(splits_completely_at(Poly{-1, 0, 0, 1}, 2), ArgumentError);
}

TEST_CASE("budget exhaustion throws, cheap failures do not") {
    const Poly deep{-2, -9, 2, 1};  // needs 4 digits for its first certificate
    CHECK_THROWS_AS(count_padic_roots(deep, 2, 2), IndeterminateError);
    // x^3 - x + 1 has no roots mod 2, so even a tiny budget answers 0
    CHECK(count_padic_roots(Poly{1, -1, 0, 1}, 2, 2).root_count == 0);
    // x^3 - 2 at p = 2 dies on the content-1 prune at depth 1, within budget
    CHECK(count_padic_roots(Poly{-2, 0, 0, 1}, 2, 2).root_count == 0);
}

TEST_CASE("torsion family fiber cubics split completely at 2") {
    const TorsionFamily& fam = family();
    const std::vector<Rat> params = {Rat(2),  Rat(1, 2),   Rat(3),
                                     Rat(0),  Rat(20),     Rat(-19, 17)};
    for (const Rat& u : params) {
        CAPTURE(u.get_str());
        const Poly cubic = fam.fiber_cubic(u);
        const PadicRootReport rep = count_padic_roots(cubic, 2, 300);
        CHECK(rep.root_count == 3);
        CHECK(splits_completely_at(cubic, 2, 300));
        check_certificates(cubic, rep);
    }
    // at u = 2 the leading coefficient is 2^29 and the constant term is odd:
    // all three roots have negative valuation
    CHECK(count_reciprocal(count_padic_roots(fam.fiber_cubic(Rat(2)), 2, 300)) == 3);
}

TEST_CASE("count is invariant under coefficient reversal") {
    std::mt19937_64 rng(20260817);
    std::uniform_int_distribution<long> coeff(-200, 200);
    int done = 0;
    while (done < 40) {
        const Poly f{coeff(rng), coeff(rng), coeff(rng), coeff(rng)};
        if (f.degree() != 3 || f[0] == 0) continue;
        if (poly_gcd(f, f.derivative()).degree() != 0) continue;
        const Int p = (done % 2 == 0) ? 2 : 3;
        const PadicRootReport a = count_padic_roots(f, p, 200);
        const PadicRootReport b = count_padic_roots(reversed_poly(f), p, 200);
        CAPTURE(poly_to_string(f));
        CHECK(a.root_count == b.root_count);
        CHECK((a.root_count == 0 || a.root_count == 1 || a.root_count == 3));
        check_certificates(f, a);
        check_certificates(reversed_poly(f), b);
        ++done;
    }
}

TEST_CASE("cubics built from three integer roots count 3 and recover the roots") {
    std::mt19937_64 rng(14);
    std::uniform_int_distribution<long> pick(-30, 30);
    const long leads[] = {1, 2, 3, 5};
    int done = 0;
    while (done < 30) {
        const long a = pick(rng), b = pick(rng), c = pick(rng);
        if (a == b || a == c || b == c) continue;
        const long lead = leads[done % 4];
        const Poly f = Poly{-a, 1} * Poly{-b, 1} * Poly{-c, 1} * Poly::constant(Rat(lead));
        for (long p : {2L, 3L, 5L}) {
            const PadicRootReport rep = count_padic_roots(f, p, 200);
            CHECK(rep.root_count == 3);
            check_certificates(f, rep);
        }
        std::vector<Rat> expect = {Rat(a), Rat(b), Rat(c)};
        std::sort(expect.begin(), expect.end());
        CHECK(rational_roots(f) == expect);
        ++done;
    }
}

TEST_CASE("rational_roots finds exact roots and nothing else") {
    // (2x - 1)(3x + 2)(x - 5)
    const Poly f = Poly{-1, 2} * Poly{2, 3} * Poly{-5, 1};
    const std::vector<Rat> expect = {Rat(-2, 3), Rat(1, 2), Rat(5)};
    CHECK(rational_roots(f) == expect);

    CHECK(rational_roots(Poly{-2, 0, 0, 1}).empty());  // x^3 - 2
    CHECK(rational_roots(family().fiber_cubic(Rat(2))).empty());  // cubic field
    CHECK(rational_roots(Poly{0, 1}) == std::vector<Rat>{Rat(0)});
    CHECK(rational_roots(Poly{7, 3}) == std::vector<Rat>{Rat(-7, 3)});
    // x^3 - 4x = x(x - 2)(x + 2): strips the x factor, then works on a quadratic
    CHECK(rational_roots(Poly{0, -4, 0, 1}) == std::vector<Rat>({Rat(-2), Rat(0), Rat(2)}));
    CHECK(rational_roots(Poly{1, 0, 1}).empty());  // x^2 + 1

    // (x - 2^40)(x + 3)(2x + 1): the height bound climbs to ~42 bits
    const Poly big = Poly{-(1L << 40), 1} * Poly{3, 1} * Poly{1, 2};
    const std::vector<Rat> expect_big = {Rat(-3), Rat(-1, 2), Rat(Int(1L << 40))};
    CHECK(rational_roots(big) == expect_big);

    CHECK_THROWS_AS(rational_roots(Poly(std::vector<Rat>{})), ArgumentError);  // zero
    CHECK_THROWS_AS(rational_roots(Poly{0, 0, 1, 1}), ArgumentError);  // x^2(x+1)
    CHECK_THROWS_AS(rational_roots(Poly{-1, 0, 0, 0, 1}), ArgumentError);  // degree 4
    CHECK_THROWS_AS(rational_roots(parse_poly("1/2,1")), ArgumentError);
}

TEST_CASE("report bookkeeping") {
    const PadicRootReport rep = count_padic_roots(Poly{47, 54, -47, -6}, 2);
    CHECK(rep.p == 2);
    CHECK(rep.root_count == 3);
    CHECK(rep.precision_used >= 1);
    long max_digits = 0;
    for (const auto& c : rep.certified_roots) max_digits = std::max(max_digits, c.precision);
    CHECK(rep.precision_used >= max_digits);
}

}  // TEST_SUITE
