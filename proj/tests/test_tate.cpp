#include "tamagawa/tate.hpp"

#include <doctest.h>

#include "tamagawa/curve.hpp"

using namespace tamagawa;

namespace {

const Curve E27a3{0, 0, 1, 0, 0};
const Curve E11a1{0, -1, 1, -10, -20};

// y^2 + xy = x^3 - 31714388875 x + 2132064170125553, split I_14 at 2
Curve e1() {
    return Curve{1, 0, 0, Rat(Int("-31714388875")), Rat(Int("2132064170125553"))};
}

// the same family one level up: split I_28 at 2
Curve e2() {
    return Curve{1, 0, 0, Rat(Int("-35365397163613670")),
                 Rat(Int("2559848051274532647229668"))};
}

// shorthand for a short Weierstrass curve y^2 = x^3 + a x + b
Curve shw(long a, long b) { return Curve{0, 0, 0, a, b}; }

void check_local(const LocalData& L, const Int& p, KodairaSymbol K, SplitClass sc, long f,
                 long c, long vdisc) {
    CAPTURE(L.kodaira.str());
    CHECK(L.p == p);
    CHECK(L.kodaira == K);
    CHECK(L.split_class == sc);
    CHECK(L.f == f);
    CHECK(L.c == c);
    CHECK(L.v_disc == vdisc);
    CHECK(table1_consistent(L));
}

// the recorded transformation really lands on a p-integral model of the
// stated discriminant valuation
void check_transformation(const Curve& E, const LocalData& L) {
    Curve M = apply_transform(E, L.local_transformation);
    CHECK(M.is_integral());
    CHECK(valuation(invariants(M).disc.get_num(), L.p) == L.v_disc);
}

}  // namespace

TEST_SUITE_BEGIN("tate");

TEST_CASE("good reduction") {
    check_local(tate_local(E27a3, 5), 5, KodairaSymbol::In(0), SplitClass::good, 0, 1, 0);
    check_local(tate_local(E27a3, 2), 2, KodairaSymbol::In(0), SplitClass::good, 0, 1, 0);
    check_local(tate_local(E11a1, 7), 7, KodairaSymbol::In(0), SplitClass::good, 0, 1, 0);
}

TEST_CASE("additive type II at 3: y^2 + y = x^3") {
    LocalData L = tate_local(E27a3, 3);
    check_local(L, 3, {KodairaKind::II}, SplitClass::additive, 3, 1, 3);
    check_transformation(E27a3, L);
}

TEST_CASE("split multiplicative anchors at 2") {
    LocalData L1 = tate_local(e1(), 2);
    check_local(L1, 2, KodairaSymbol::In(14), SplitClass::split, 1, 14, 14);
    check_transformation(e1(), L1);

    LocalData L2 = tate_local(e2(), 2);
    check_local(L2, 2, KodairaSymbol::In(28), SplitClass::split, 1, 28, 28);
}

TEST_CASE("split multiplicative at an odd prime: 11a1") {
    LocalData L = tate_local(E11a1, 11);
    check_local(L, 11, KodairaSymbol::In(5), SplitClass::split, 1, 5, 5);
    check_transformation(E11a1, L);
    CHECK(split_classification_c6(E11a1, 11) == SplitClass::split);
}

TEST_CASE("nonsplit multiplicative, odd and even n") {
    // twisting 11a1 by 2 flips the split class at 11 (2 is a non-residue);
    // n = 5 is odd, so c drops to 1
    Curve T2 = quadratic_twist(E11a1, 2);
    LocalData L = tate_local(T2, 11);
    check_local(L, 11, KodairaSymbol::In(5), SplitClass::nonsplit, 1, 1, 5);
    CHECK(split_classification_c6(T2, 11) == SplitClass::nonsplit);

    // twisting by 5 is unramified at 2 and flips the split class there;
    // n = 14 is even, so c = 2. The twist model is non-minimal at 2, which
    // exercises the rescaling step.
    Curve T5 = quadratic_twist(e1(), 5);
    LocalData L5 = tate_local(T5, 2);
    check_local(L5, 2, KodairaSymbol::In(14), SplitClass::nonsplit, 1, 2, 14);
    check_transformation(T5, L5);
}

TEST_CASE("type I_0* with component counts 1, 2, 4") {
    // twists of y^2 = x^3 + 11664 by d = p: the component count follows the
    // number of roots of the reduced cubic mod p
    for (auto [d, c] : {std::pair<long, long>{7, 1}, {5, 2}, {31, 4}}) {
        Curve T = quadratic_twist(E27a3, d);
        LocalData L = tate_local(T, d);
        check_local(L, d, KodairaSymbol::Instar(0), SplitClass::additive, 2, c, 6);
        check_transformation(T, L);
    }
    check_local(tate_local(shw(9, 0), 3), 3, KodairaSymbol::Instar(0), SplitClass::additive,
                2, 2, 6);
    check_local(tate_local(shw(25, 0), 5), 5, KodairaSymbol::Instar(0), SplitClass::additive,
                2, 4, 6);
}

TEST_CASE("type I_3* at 2: y^2 = x^3 + 4x") {
    LocalData L = tate_local(shw(4, 0), 2);
    check_local(L, 2, KodairaSymbol::Instar(3), SplitClass::additive, 5, 4, 12);
    check_transformation(shw(4, 0), L);
}

TEST_CASE("predicted star types match the computed twist") {
    // I_5 at 11 twisted by 11 must come out as I_5*
    LocalData base = tate_local(E11a1, 11);
    Curve T = quadratic_twist(E11a1, 11);
    LocalData L = tate_local(T, 11);
    CHECK(L.kodaira == predict_twist_type(base, 11));
    CHECK(L.kodaira == KodairaSymbol::Instar(5));
    CHECK(L.split_class == SplitClass::additive);
    CHECK(L.f == 2);
    CHECK(table1_consistent(L));
}

TEST_CASE("type IV at 2 and 3: y^2 = x^3 + 9") {
    LocalData L3 = tate_local(shw(0, 9), 3);
    check_local(L3, 3, {KodairaKind::IV}, SplitClass::additive, 5, 3, 7);
    LocalData L2 = tate_local(shw(0, 9), 2);
    check_local(L2, 2, {KodairaKind::IV}, SplitClass::additive, 2, 3, 4);
    check_transformation(shw(0, 9), L2);
}

TEST_CASE("types II, III at 2 and 3") {
    // y^2 = x^3 + 2 has type II at both 2 and 3
    check_local(tate_local(shw(0, 2), 2), 2, {KodairaKind::II}, SplitClass::additive, 6, 1, 6);
    check_local(tate_local(shw(0, 2), 3), 3, {KodairaKind::II}, SplitClass::additive, 3, 1, 3);
    // y^2 = x^3 - x has type III at 2; y^2 = x^3 + 1 has type III at 3
    check_local(tate_local(shw(-1, 0), 2), 2, {KodairaKind::III}, SplitClass::additive, 5, 2, 6);
    check_local(tate_local(shw(0, 1), 3), 3, {KodairaKind::III}, SplitClass::additive, 2, 2, 3);
}

TEST_CASE("star types IV*, III*, II* at 3") {
    check_local(tate_local(shw(0, 81), 3), 3, {KodairaKind::IVstar}, SplitClass::additive, 5,
                3, 11);
    check_local(tate_local(shw(27, 0), 3), 3, {KodairaKind::IIIstar}, SplitClass::additive, 2,
                2, 9);
    check_local(tate_local(shw(0, 243), 3), 3, {KodairaKind::IIstar}, SplitClass::additive, 5,
                1, 13);
}

TEST_CASE("non-minimal input is minimalized before classification") {
    Transformation down;
    down.u = Rat(1, 2);
    Curve blown = apply_transform(e1(), down);  // a_i scaled by 2^i
    LocalData L = tate_local(blown, 2);
    check_local(L, 2, KodairaSymbol::In(14), SplitClass::split, 1, 14, 14);
    check_transformation(blown, L);
}

TEST_CASE("rational models are integralized first") {
    // y^2 = x^3 + 1/4 is isomorphic to y^2 + y = x^3, which is 27a3
    Curve Eq{0, 0, 0, 0, Rat(1, 4)};
    LocalData L2 = tate_local(Eq, 2);
    CHECK(L2.split_class == SplitClass::good);
    LocalData L3 = tate_local(Eq, 3);
    CHECK(L3.kodaira == KodairaSymbol{KodairaKind::II});
    CHECK(L3.f == 3);
    check_transformation(Eq, L3);
}

TEST_CASE("conductor and global Tamagawa data") {
    PrimeFactorization N = conductor(E27a3);
    REQUIRE(N.factors.size() == 1);
    CHECK(N.factors[0] == std::pair<Int, long>{3, 3});
    CHECK(N.complete());
    CHECK(N.abs_value() == 27);

    GlobalData G11 = tamagawa_number(E11a1);
    CHECK(G11.complete);
    CHECK(G11.c_E == 5);
    CHECK(G11.conductor.abs_value() == 11);
    REQUIRE(G11.locals.size() == 1);
    CHECK(G11.locals[0].kodaira == KodairaSymbol::In(5));

    // y^2 = x^3 + 1: IV at 2 (c = 3) and III at 3 (c = 2), conductor 36
    GlobalData G36 = tamagawa_number(shw(0, 1));
    CHECK(G36.complete);
    CHECK(G36.c_E == 6);
    CHECK(G36.conductor.abs_value() == 36);
    REQUIRE(G36.locals.size() == 2);
    for (const auto& L : G36.locals) CHECK(table1_consistent(L));

    // y^2 = x^3 - x: conductor 32, the only bad prime is 2
    GlobalData G32 = tamagawa_number(shw(-1, 0));
    CHECK(G32.conductor.abs_value() == 32);
    CHECK(G32.c_E == 2);
}

TEST_CASE("c6 split classifier agrees across twists of 11a1") {
    for (long d : {-1, 3, 6, 7, 10}) {
        Curve T = quadratic_twist(E11a1, d);
        LocalData L = tate_local(T, 11);
        REQUIRE((L.split_class == SplitClass::split || L.split_class == SplitClass::nonsplit));
        CHECK(split_classification_c6(T, 11) == L.split_class);
    }
}

TEST_CASE("twist-type prediction table") {
    LocalData mult31;
    mult31.p = 31;
    mult31.kodaira = KodairaSymbol::In(14);
    mult31.split_class = SplitClass::split;
    mult31.f = 1;
    mult31.c = 14;
    CHECK(predict_twist_type(mult31, 31) == KodairaSymbol::Instar(14));
    CHECK(predict_twist_type(mult31, 3) == KodairaSymbol::In(14));

    LocalData mult2;
    mult2.p = 2;
    mult2.kodaira = KodairaSymbol::In(7);
    mult2.split_class = SplitClass::nonsplit;
    mult2.f = 1;
    mult2.c = 1;
    CHECK(predict_twist_type(mult2, 5) == KodairaSymbol::In(7));
    CHECK(predict_twist_type(mult2, -3) == KodairaSymbol::In(7));  // -3 = 1 mod 4
    CHECK(predict_twist_type(mult2, 3) == KodairaSymbol::Instar(11));
    CHECK(predict_twist_type(mult2, 10) == KodairaSymbol::Instar(15));

    // end to end at p = 2: I_1 gains 4 under a 3-mod-4 twist, 8 under an
    // even twist, and survives a 1-mod-4 twist
    Curve E{1, 0, 1, -23, 12};
    LocalData base2 = tate_local(E, 2);
    REQUIRE(base2.kodaira == KodairaSymbol::In(1));
    for (long d : {-1, 2, -2, 3, 5, 6}) {
        CHECK(tate_local(quadratic_twist(E, d), 2).kodaira ==
              predict_twist_type(base2, d));
    }
    CHECK(tate_local(quadratic_twist(E, -1), 2).kodaira == KodairaSymbol::Instar(5));
    CHECK(tate_local(quadratic_twist(E, 2), 2).kodaira == KodairaSymbol::Instar(9));

    LocalData add7;
    add7.p = 7;
    add7.kodaira = {KodairaKind::III};
    add7.split_class = SplitClass::additive;
    add7.f = 2;
    add7.c = 2;
    CHECK(predict_twist_type(add7, 7) == KodairaSymbol{KodairaKind::IIIstar});
    CHECK(predict_twist_type(add7, 5) == KodairaSymbol{KodairaKind::III});
    add7.kodaira = {KodairaKind::IVstar};
    CHECK(predict_twist_type(add7, -7) == KodairaSymbol{KodairaKind::II});
    add7.kodaira = KodairaSymbol::Instar(0);
    CHECK(predict_twist_type(add7, 7) == KodairaSymbol::In(0));
}

TEST_CASE("argument validation") {
    CHECK_THROWS_AS(tate_local(E27a3, 4), ArgumentError);
    CHECK_THROWS_AS(split_classification_c6(e1(), 2), ArgumentError);
    CHECK_THROWS_AS(split_classification_c6(E27a3, 3), ArgumentError);   // additive
    CHECK_THROWS_AS(split_classification_c6(E27a3, 5), ArgumentError);   // good

    LocalData mult31;
    mult31.p = 31;
    mult31.kodaira = KodairaSymbol::In(14);
    CHECK_THROWS_AS(predict_twist_type(mult31, 0), ArgumentError);
    CHECK_THROWS_AS(predict_twist_type(mult31, 12), ArgumentError);  // not squarefree

    LocalData add2;
    add2.p = 2;
    add2.kodaira = {KodairaKind::II};
    add2.split_class = SplitClass::additive;
    add2.f = 4;
    CHECK_THROWS_AS(predict_twist_type(add2, 5), UnsupportedCaseError);
}

TEST_CASE("kodaira symbol formatting") {
    CHECK(KodairaSymbol::In(0).str() == "I0");
    CHECK(KodairaSymbol::In(14).str() == "I14");
    CHECK(KodairaSymbol::Instar(0).str() == "I0*");
    CHECK(KodairaSymbol::Instar(3).str() == "I3*");
    CHECK(KodairaSymbol{KodairaKind::IVstar}.str() == "IV*");
    CHECK(KodairaSymbol{KodairaKind::II}.str() == "II");
    CHECK(to_string(SplitClass::nonsplit) == "nonsplit");
}

TEST_SUITE_END();
