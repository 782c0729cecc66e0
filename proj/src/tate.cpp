#include "tamagawa/tate.hpp"

#include <stdexcept>

#include "tamagawa/modpoly.hpp"
#include "tamagawa/poly.hpp"

namespace tamagawa {

std::string KodairaSymbol::str() const {
    switch (kind) {
        case KodairaKind::I: return "I" + std::to_string(k);
        case KodairaKind::Istar: return "I" + std::to_string(k) + "*";
        case KodairaKind::II: return "II";
        case KodairaKind::III: return "III";
        case KodairaKind::IV: return "IV";
        case KodairaKind::IVstar: return "IV*";
        case KodairaKind::IIIstar: return "III*";
        case KodairaKind::IIstar: return "II*";
    }
    return "?";
}

std::string to_string(SplitClass s) {
    switch (s) {
        case SplitClass::good: return "good";
        case SplitClass::split: return "split";
        case SplitClass::nonsplit: return "nonsplit";
        case SplitClass::additive: return "additive";
    }
    return "?";
}

namespace {

void algo_check(bool cond, const char* what) {
    if (!cond) throw std::logic_error(std::string("tate_local: ") + what);
}

Int pow_p(const Int& p, long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(e));
    return r;
}

// running state: an integral model, the prime, and the accumulated change of
// coordinates from the original input
struct State {
    Curve cur;
    Transformation T;
    Int p;

    Int a(int i) const {
        switch (i) {
            case 1: return cur.a1.get_num();
            case 2: return cur.a2.get_num();
            case 3: return cur.a3.get_num();
            case 4: return cur.a4.get_num();
            default: return cur.a6.get_num();
        }
    }

    long v(const Int& x) const { return x == 0 ? val_inf : valuation(x, p); }
    long va(int i) const { return v(a(i)); }

    Int rep(const Int& x) const {
        Int r;
        mpz_mod(r.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t());
        return r;
    }

    Int rep_mod(const Int& x, const Int& mod) const {
        Int r;
        mpz_mod(r.get_mpz_t(), x.get_mpz_t(), mod.get_mpz_t());
        return r;
    }

    // a_i / p^e, exact
    Int ap(int i, long e) const {
        Int x = a(i);
        if (x == 0) return 0;
        Int q, r;
        Int d = pow_p(p, e);
        mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), x.get_mpz_t(), d.get_mpz_t());
        algo_check(r == 0, "inexact coefficient division");
        return q;
    }

    void move(const Rat& u, const Rat& r, const Rat& s, const Rat& t) {
        Transformation M;
        M.u = u;
        M.r = r;
        M.s = s;
        M.t = t;
        cur = apply_transform(cur, M);
        T = T.then(M);
        algo_check(cur.is_integral(), "model left Z after a step");
    }

    Int inv_mod(const Int& x, const Int& mod) const {
        Int r;
        algo_check(mpz_invert(r.get_mpz_t(), x.get_mpz_t(), mod.get_mpz_t()) != 0,
                   "non-invertible element");
        return r;
    }
};

struct IntInvariants {
    Int b2, b4, b6, b8, c4, c6, disc;
};

IntInvariants int_invariants(const Curve& E) {
    Invariants v = invariants(E);
    return {v.b2.get_num(), v.b4.get_num(), v.b6.get_num(), v.b8.get_num(),
            v.c4.get_num(), v.c6.get_num(), v.disc.get_num()};
}

// translate the singular point of the reduced curve to (0,0)
void move_singular_point_to_origin(State& st) {
    const Int& p = st.p;
    Int x0, y0;
    bool found = false;
    if (p <= 3) {
        // brute force over F_p^2: F = F_x = F_y = 0
        Int a1 = st.a(1), a2 = st.a(2), a3 = st.a(3), a4 = st.a(4), a6 = st.a(5);
        for (Int x = 0; x < p && !found; ++x)
            for (Int y = 0; y < p && !found; ++y) {
                Int F = y * y + a1 * x * y + a3 * y - x * x * x - a2 * x * x - a4 * x - a6;
                Int Fx = a1 * y - 3 * x * x - 2 * a2 * x - a4;
                Int Fy = 2 * y + a1 * x + a3;
                if (st.rep(F) == 0 && st.rep(Fx) == 0 && st.rep(Fy) == 0) {
                    x0 = x;
                    y0 = y;
                    found = true;
                }
            }
    } else {
        IntInvariants iv = int_invariants(st.cur);
        if (st.rep(iv.c4) != 0) {
            // node: double root of the right-hand cubic in terms of b-invariants
            x0 = st.rep((18 * iv.b6 - iv.b2 * iv.b4) * st.inv_mod(st.rep(iv.c4), p));
        } else {
            // cusp: triple root at -b2/12
            x0 = st.rep(-iv.b2 * st.inv_mod(12, p));
        }
        y0 = st.rep(-(st.a(1) * x0 + st.a(3)) * st.inv_mod(2, p));
        found = true;
    }
    algo_check(found, "singular point not found");
    st.move(1, Rat(x0), 0, Rat(y0));
    algo_check(st.rep(st.a(3)) == 0 && st.rep(st.a(4)) == 0 && st.rep(st.a(5)) == 0,
               "singular point not at the origin");
}

// valuation bounds on the conductor exponent: 2 for p >= 5, 5 at 3, 8 at 2
long f_bound(const Int& p) { return p == 2 ? 8 : p == 3 ? 5 : 2; }

// number of irreducible components of the special fibre (with multiplicity one
// each counted once), entering the relation v(disc) = f + m - 1
long component_count(const KodairaSymbol& K) {
    switch (K.kind) {
        case KodairaKind::I: return K.k == 0 ? 1 : K.k;
        case KodairaKind::II: return 1;
        case KodairaKind::III: return 2;
        case KodairaKind::IV: return 3;
        case KodairaKind::Istar: return K.k + 5;
        case KodairaKind::IVstar: return 7;
        case KodairaKind::IIIstar: return 8;
        case KodairaKind::IIstar: return 9;
    }
    return 0;
}

LocalData finish(const State& st, KodairaSymbol K, SplitClass sc, long f, long c, long vdisc) {
    algo_check(f >= 0 && f <= f_bound(st.p), "conductor exponent out of range");
    algo_check(vdisc == f + component_count(K) - 1, "discriminant/conductor mismatch");
    LocalData L;
    L.p = st.p;
    L.kodaira = K;
    L.split_class = sc;
    L.f = f;
    L.c = c;
    L.v_disc = vdisc;
    L.local_transformation = st.T;
    algo_check(table1_consistent(L), "output violates the reduction-type table");
    return L;
}

}  // namespace

LocalData tate_local(const Curve& E, const Int& p) {
    if (!is_prime(p)) throw ArgumentError("tate_local: p must be prime");

    State st{E, Transformation{}, p};
    {
        Int m = 1;
        for (const Rat* a : {&E.a1, &E.a2, &E.a3, &E.a4, &E.a6})
            mpz_lcm(m.get_mpz_t(), m.get_mpz_t(), a->get_den().get_mpz_t());
        if (m != 1) st.move(Rat(1, m), 0, 0, 0);
    }

    // each restart divides the discriminant valuation by exactly p^12
    const long max_passes = st.v(int_invariants(st.cur).disc) / 12 + 2;
    for (long pass = 0; pass <= max_passes; ++pass) {
        IntInvariants iv = int_invariants(st.cur);
        long n = st.v(iv.disc);
        if (n == 0)
            return finish(st, KodairaSymbol::In(0), SplitClass::good, 0, 1, 0);

        move_singular_point_to_origin(st);

        if (st.rep(iv.c4) != 0) {
            // type I_n; split iff T^2 + a1 T - a2 splits over F_p
            bool split = quadratic_splits_mod_p(st.a(1), -st.a(2), p);
            long c = split ? n : (n % 2 == 0 ? 2 : 1);
            return finish(st, KodairaSymbol::In(n),
                          split ? SplitClass::split : SplitClass::nonsplit, 1, c, n);
        }

        if (st.va(5) < 2)
            return finish(st, {KodairaKind::II}, SplitClass::additive, n, 1, n);

        IntInvariants tv = int_invariants(st.cur);  // b-invariants after translation
        if (st.v(tv.b8) < 3)
            return finish(st, {KodairaKind::III}, SplitClass::additive, n - 1, 2, n);

        if (st.v(tv.b6) < 3) {
            long c = quadratic_splits_mod_p(st.ap(3, 1), -st.ap(5, 2), p) ? 3 : 1;
            return finish(st, {KodairaKind::IV}, SplitClass::additive, n - 2, c, n);
        }

        // prepare for the I_0* test: v(a1) >= 1, v(a2) >= 1, v(a3) >= 2,
        // v(a4) >= 2, v(a6) >= 3
        if (p == 2) {
            Int s = st.rep(st.a(2));
            st.move(1, 0, Rat(s), 0);
            Int t = 2 * st.rep(st.ap(5, 2));
            st.move(1, 0, 0, Rat(t));
        } else {
            Int s = st.rep(-st.a(1) * st.inv_mod(2, p));
            st.move(1, 0, Rat(s), 0);
            Int p2 = p * p;
            Int t = st.rep_mod(-st.a(3) * st.inv_mod(2, p2), p2);
            st.move(1, 0, 0, Rat(t));
        }
        algo_check(st.va(1) >= 1 && st.va(2) >= 1 && st.va(3) >= 2 && st.va(4) >= 2 &&
                       st.va(5) >= 3,
                   "step 6 preparation failed");

        // P(T) = T^3 + (a2/p) T^2 + (a4/p^2) T + (a6/p^3) over F_p
        Int Pb = st.ap(2, 1), Pc = st.ap(4, 2), Pd = st.ap(5, 3);
        auto mult_root = cubic_multiple_root_mod_p(Pb, Pc, Pd, p);

        if (!mult_root) {
            Poly P(std::vector<Rat>{Rat(Pd), Rat(Pc), Rat(Pb), Rat(1)});
            long nroots = long(roots_mod_p(P, p).size());
            algo_check(nroots == 0 || nroots == 1 || nroots == 3, "I0* root count");
            return finish(st, KodairaSymbol::Instar(0), SplitClass::additive, n - 4,
                          1 + nroots, n);
        }

        if (mult_root->multiplicity == 2) {
            // I_k* subprocedure
            st.move(1, Rat(p * mult_root->root), 0, 0);
            algo_check(st.va(2) == 1 && st.va(3) >= 2 && st.va(4) >= 3 && st.va(5) >= 4,
                       "double-root translation failed");
            for (long k = 1;; ++k) {
                algo_check(k <= n, "I_k* loop bound");
                algo_check(st.va(1) >= 1 && st.va(2) == 1 && st.va(3) >= k + 1 &&
                               st.va(4) >= k + 2 && st.va(5) >= 2 * k + 2,
                           "I_k* loop invariant");
                Int yb = st.ap(3, k + 1), yc = st.ap(5, 2 * k + 2);
                bool y_sep = p == 2 ? st.rep(yb) != 0 : st.rep(yb * yb + 4 * yc) != 0;
                if (y_sep) {
                    long c = 2 + (quadratic_splits_mod_p(yb, -yc, p) ? 2 : 0);
                    return finish(st, KodairaSymbol::Instar(2 * k - 1), SplitClass::additive,
                                  n - 3 - 2 * k, c, n);
                }
                Int y0 = p == 2 ? st.rep(yc) : st.rep(-yb * st.inv_mod(2, p));
                st.move(1, 0, 0, Rat(pow_p(p, k + 1) * y0));
                algo_check(st.va(3) >= k + 2 && st.va(5) >= 2 * k + 3, "y-translation failed");

                Int qa = st.ap(2, 1), qb = st.ap(4, k + 2), qc = st.ap(5, 2 * k + 3);
                bool x_sep = p == 2 ? st.rep(qb) != 0 : st.rep(qb * qb - 4 * qa * qc) != 0;
                if (x_sep) {
                    Poly Q(std::vector<Rat>{Rat(qc), Rat(qb), Rat(qa)});
                    long c = roots_mod_p(Q, p).empty() ? 2 : 4;
                    return finish(st, KodairaSymbol::Instar(2 * k), SplitClass::additive,
                                  n - 4 - 2 * k, c, n);
                }
                Int x0 = p == 2 ? st.rep(qc * qa) : st.rep(-qb * st.inv_mod(2 * qa, p));
                st.move(1, Rat(pow_p(p, k + 1) * x0), 0, 0);
            }
        }

        // triple root: candidate types IV*, III*, II* or restart
        st.move(1, Rat(p * mult_root->root), 0, 0);
        algo_check(st.va(2) >= 2 && st.va(4) >= 3 && st.va(5) >= 4,
                   "triple-root translation failed");

        Int yb = st.ap(3, 2), yc = st.ap(5, 4);
        bool y_sep = p == 2 ? st.rep(yb) != 0 : st.rep(yb * yb + 4 * yc) != 0;
        if (y_sep) {
            long c = quadratic_splits_mod_p(yb, -yc, p) ? 3 : 1;
            return finish(st, {KodairaKind::IVstar}, SplitClass::additive, n - 6, c, n);
        }
        Int y0 = p == 2 ? st.rep(yc) : st.rep(-yb * st.inv_mod(2, p));
        st.move(1, 0, 0, Rat(p * p * y0));
        algo_check(st.va(3) >= 3 && st.va(5) >= 5, "step 8 y-translation failed");

        if (st.va(4) == 3)
            return finish(st, {KodairaKind::IIIstar}, SplitClass::additive, n - 7, 2, n);
        algo_check(st.va(4) >= 4, "step 9 valuation");

        if (st.va(5) == 5)
            return finish(st, {KodairaKind::IIstar}, SplitClass::additive, n - 8, 1, n);
        algo_check(st.va(5) >= 6, "step 10 valuation");

        // non-minimal: rescale and run again
        algo_check(st.va(1) >= 1 && st.va(2) >= 2 && st.va(3) >= 3, "step 11 valuations");
        st.move(Rat(p), 0, 0, 0);
    }
    throw std::logic_error("tate_local: minimality loop did not terminate");
}

SplitClass split_classification_c6(const Curve& E, const Int& p) {
    if (p == 2) throw ArgumentError("split_classification_c6: p must be odd");
    LocalData L = tate_local(E, p);
    if (L.split_class != SplitClass::split && L.split_class != SplitClass::nonsplit)
        throw ArgumentError("split_classification_c6: reduction at " + to_string(p) +
                            " is not multiplicative");
    Curve M = apply_transform(E, L.local_transformation);
    Int c6 = invariants(M).c6.get_num();
    return legendre_symbol(-c6, p) == 1 ? SplitClass::split : SplitClass::nonsplit;
}

GlobalData tamagawa_number(const Curve& E, const FactorBudget& budget,
                           const std::vector<Int>& hint_primes) {
    Int m = 1;
    for (const Rat* a : {&E.a1, &E.a2, &E.a3, &E.a4, &E.a6})
        mpz_lcm(m.get_mpz_t(), m.get_mpz_t(), a->get_den().get_mpz_t());
    Transformation T0;
    T0.u = Rat(1, m);
    Curve Ei = m == 1 ? E : apply_transform(E, T0);
    Int D = invariants(Ei).disc.get_num();

    PrimeFactorization pf = factorize(D, budget, hint_primes);
    GlobalData G;
    G.complete = pf.complete();
    G.conductor.sign = 1;
    G.conductor.cofactor = pf.cofactor;  // primes with undetermined exponents
    for (const auto& [q, e] : pf.factors) {
        LocalData L = tate_local(E, q);
        if (L.f == 0) continue;  // the input model was non-minimal at q
        G.conductor.factors.emplace_back(q, L.f);
        G.c_E *= L.c;
        G.locals.push_back(std::move(L));
    }
    return G;
}

PrimeFactorization conductor(const Curve& E, const FactorBudget& budget,
                             const std::vector<Int>& hint_primes) {
    return tamagawa_number(E, budget, hint_primes).conductor;
}

KodairaSymbol predict_twist_type(const LocalData& L, const Int& d) {
    if (d == 0) throw ArgumentError("predict_twist_type: d must be nonzero");
    if (squarefree_part(d).second != 1)
        throw ArgumentError("predict_twist_type: d must be squarefree");

    if (L.p == 2) {
        if (!(L.kodaira.kind == KodairaKind::I && L.kodaira.k >= 1))
            throw UnsupportedCaseError(
                "predict_twist_type: only multiplicative reduction is supported at p = 2");
        Int m4;
        mpz_mod(m4.get_mpz_t(), d.get_mpz_t(), Int(4).get_mpz_t());
        // d = 1 mod 4: the twist character is unramified at 2, the type
        // survives. Ramified characters give I_m* where m grows with the
        // character conductor: v(disc) gains 12 (odd d) or 18 (even d) while
        // f becomes 4 or 6, so m = n + 4 or n + 8. Either way m = n mod 2,
        // which is what the parity arguments downstream rely on.
        if (m4 == 1) return L.kodaira;
        return KodairaSymbol::Instar(L.kodaira.k + (m4 == 3 ? 4 : 8));
    }

    if (!mpz_divisible_p(d.get_mpz_t(), L.p.get_mpz_t())) return L.kodaira;

    switch (L.kodaira.kind) {
        case KodairaKind::I: return KodairaSymbol::Instar(L.kodaira.k);
        case KodairaKind::Istar: return KodairaSymbol::In(L.kodaira.k);
        case KodairaKind::II: return {KodairaKind::IVstar};
        case KodairaKind::IVstar: return {KodairaKind::II};
        case KodairaKind::III: return {KodairaKind::IIIstar};
        case KodairaKind::IIIstar: return {KodairaKind::III};
        case KodairaKind::IV: return {KodairaKind::IIstar};
        case KodairaKind::IIstar: return {KodairaKind::IV};
    }
    throw std::logic_error("predict_twist_type: unreachable");
}

bool table1_consistent(const LocalData& L) {
    const KodairaSymbol& K = L.kodaira;
    switch (L.split_class) {
        case SplitClass::good:
            return K == KodairaSymbol::In(0) && L.f == 0 && L.c == 1;
        case SplitClass::split:
            return K.kind == KodairaKind::I && K.k >= 1 && L.f == 1 && L.c == K.k;
        case SplitClass::nonsplit:
            return K.kind == KodairaKind::I && K.k >= 1 && L.f == 1 &&
                   L.c == (K.k % 2 == 0 ? 2 : 1);
        case SplitClass::additive:
            if (L.f < 2) return false;
            switch (K.kind) {
                case KodairaKind::I: return false;
                case KodairaKind::II:
                case KodairaKind::IIstar: return L.c == 1;
                case KodairaKind::III:
                case KodairaKind::IIIstar: return L.c == 2;
                case KodairaKind::IV:
                case KodairaKind::IVstar: return L.c == 1 || L.c == 3;
                case KodairaKind::Istar:
                    return K.k == 0 ? (L.c == 1 || L.c == 2 || L.c == 4)
                                    : (L.c == 2 || L.c == 4);
            }
    }
    return false;
}

}  // namespace tamagawa
