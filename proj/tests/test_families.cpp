#include "tamagawa/families.hpp"

#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>

#include "tamagawa/curve.hpp"
#include "tamagawa/tate.hpp"

using namespace tamagawa;

namespace {

const char* data_path() { return TAMAGAWA_DATA_DIR "/torsion_2_14.json"; }

// load once; validation runs minimal models on the anchors
const TorsionFamily& family() {
    static const TorsionFamily fam = load_torsion_family(data_path());
    return fam;
}

const std::vector<Int> kHints{2, 3, 7, 13, 31, 37, 499, 3181};

Curve e1() {
    return Curve{1, 0, 0, Rat(Int("-31714388875")), Rat(Int("2132064170125553"))};
}

Curve e2() {
    return Curve{1, 0, 0, Rat(Int("-35365397163613670")),
                 Rat(Int("2559848051274532647229668"))};
}

}  // namespace

TEST_SUITE_BEGIN("families");

TEST_CASE("family loads with the expected shape") {
    const TorsionFamily& fam = family();
    CHECK(fam.A2().is_zero());
    CHECK(fam.A4().degree() == 48);
    CHECK(fam.A6().degree() == 72);
    CHECK(fam.shortA().degree() == 48);
    CHECK(fam.shortB().degree() == 72);
    CHECK(fam.c4().degree() == 48);
    CHECK(fam.c6().degree() == 72);
    CHECK(fam.disc().degree() == 130);
    CHECK(fam.has_cubic());
    CHECK(!fam.checksum().empty());
}

TEST_CASE("anchor fibers minimalize to the printed curves") {
    MinimalModel m1 = minimal_model(family().specialize(2), {}, kHints);
    CHECK(m1.curve == e1());
    MinimalModel m2 = minimal_model(family().specialize(Rat(1, 2)), {}, kHints);
    CHECK(m2.curve == e2());
}

TEST_CASE("anchor fibers have split I_14 and I_28 at 2") {
    LocalData L1 = tate_local(family().specialize(2), 2);
    CHECK(L1.kodaira == KodairaSymbol::In(14));
    CHECK(L1.split_class == SplitClass::split);
    CHECK(L1.c == 14);

    LocalData L2 = tate_local(family().specialize(Rat(1, 2)), 2);
    CHECK(L2.kodaira == KodairaSymbol::In(28));
    CHECK(L2.split_class == SplitClass::split);
    CHECK(L2.c == 28);
}

TEST_CASE("u = 3 and u = 0 give one isomorphism class") {
    auto k3 = minimal_invariants_key(family().specialize(3), {}, kHints);
    auto k0 = minimal_invariants_key(family().specialize(0), {}, kHints);
    CHECK(k3 == k0);
}

TEST_CASE("the repeated fiber is the conductor-1922 curve with c = 14") {
    GlobalData G = tamagawa_number(family().specialize(3), {}, kHints);
    REQUIRE(G.complete);
    CHECK(G.conductor.abs_value() == 1922);  // 2 * 31^2
    CHECK(G.c_E == 14);
    for (const LocalData& L : G.locals) {
        if (L.p == 2) {
            CHECK(L.kodaira == KodairaSymbol::In(14));
            CHECK(L.split_class == SplitClass::split);
            CHECK(L.c == 14);
        } else {
            CHECK(L.p == 31);
            CHECK(L.c == 1);
        }
    }
}

TEST_CASE("specialization rejects singular parameters") {
    CHECK_THROWS_AS(family().specialize(1), SingularFiberError);
    CHECK_THROWS_AS(family().specialize(-1), SingularFiberError);
    CHECK_THROWS_AS(family().fiber_cubic(1), SingularFiberError);
    CHECK_THROWS_AS(family().fiber_cubic(-1), SingularFiberError);
}

TEST_CASE("discriminant valuation and resultant pins at u = +-1") {
    const Poly& D = family().disc();
    const Poly& c4 = family().c4();
    const Rat two82{Int("4835703278458516698824704")};
    const Rat two32{Int("4294967296")};
    for (long s : {1L, -1L}) {
        CAPTURE(s);
        CHECK(root_multiplicity(D, s) == 14);
        Poly lin(std::vector<Rat>{Rat(-s), Rat(1)});
        Poly q = D;
        for (int i = 0; i < 14; ++i) {
            auto [quot, rem] = divmod(q, lin);
            REQUIRE(rem.is_zero());
            q = quot;
        }
        CHECK(resultant(lin, q) == two82);
        CHECK(resultant(lin, c4) == two32);
    }
}

TEST_CASE("fiber 2-division cubic is integral and primitive") {
    Poly f0 = family().fiber_cubic(0);
    REQUIRE(f0.degree() == 3);
    CHECK(f0.is_integral());
    CHECK(f0.lc() > 0);
    // frozen specialization at u = 0
    CHECK(f0[0] == Rat(Int("1833629629461017")));
    CHECK(f0[1] == Rat(Int("-99974503641600")));
    CHECK(f0[2] == Rat(Int("3623878656")));
    CHECK(f0[3] == Rat(Int("14495514624")));
    auto [content, prim] = content_primitive(f0);
    CHECK(content == 1);
    CHECK(prim == f0);

    Poly f2 = family().fiber_cubic(2);
    REQUIRE(f2.degree() == 3);
    CHECK(f2.is_integral());
    CHECK(f2.lc() > 0);
}

TEST_CASE("perturbed coefficients are refused with the anchor named") {
    nlohmann::json doc;
    {
        std::ifstream in(data_path());
        REQUIRE(in.good());
        in >> doc;
    }
    doc["A4"][0] = "1";
    auto tmp = std::filesystem::temp_directory_path() / "family_perturbed.json";
    {
        std::ofstream out(tmp);
        out << doc;
    }
    try {
        load_torsion_family(tmp.string());
        FAIL("perturbed family file was accepted");
    } catch (const FamilyValidationError& e) {
        CHECK(std::string(e.what()).find("anchor u=2") != std::string::npos);
    }
    std::filesystem::remove(tmp);
}

TEST_CASE("checksum is stable across loads") {
    TorsionFamily again = load_torsion_family(data_path());
    CHECK(again.checksum() == family().checksum());
}

TEST_CASE("j-maps: frozen values") {
    CHECK(jmap(18).eval(1) == Rat(-15625, 28));
    CHECK(jmap(8).eval(1) == Rat(-1, 15));
    CHECK(jmap(6).eval(-10) == Rat(16384, 5));
}

TEST_CASE("j-maps: cusps are rejected") {
    CHECK(jmap(18).is_cusp(2));
    for (long n : {6L, 8L, 10L, 18L}) {
        const JMap& m = jmap(n);
        CHECK(m.n == n);
        CHECK(m.cusps.size() == 3);
        for (const Rat& c : m.cusps) {
            CAPTURE(n);
            CHECK(m.is_cusp(c));
            CHECK_THROWS_AS(m.eval(c), CuspError);
        }
    }
    CHECK_THROWS_AS(jmap(12), ArgumentError);
    CHECK_THROWS_AS(jmap(7), ArgumentError);
}

TEST_CASE("fixed j-invariant classes") {
    CHECK(fixed_j_list(14) == std::vector<Rat>{Rat(-3375), Rat(16581375)});
    CHECK(fixed_j_list(19) == std::vector<Rat>{Rat(-884736)});
    Rat j17a(Int("-297756989"), Int(2));
    Rat j17b(Int("-882216989"), Int(131072));
    CHECK(fixed_j_list(17) == std::vector<Rat>{j17a, j17b});

    const std::pair<long, long> designated[] = {{14, 7},  {17, 5},  {19, 19},
                                                {37, 5},  {43, 43}, {67, 67},
                                                {163, 163}};
    for (auto [n, p] : designated) {
        CAPTURE(n);
        for (const FixedIsogenyClass& cls : fixed_isogeny_classes(n))
            CHECK(cls.designated_prime == p);
    }
    CHECK(fixed_j_list(43).size() == 1);
    CHECK(fixed_j_list(37).size() == 2);
    CHECK_THROWS_AS(fixed_isogeny_classes(20), ArgumentError);
}

TEST_CASE("curve_from_j reproduces the j-invariant") {
    CHECK(invariants(curve_from_j(0)).j() == 0);
    CHECK(invariants(curve_from_j(1728)).j() == 1728);
    for (long k = 1; k <= 100; ++k) {
        Rat j(2 * k - 101, 7);  // odd numerators: never 0 or 1728
        j.canonicalize();
        CAPTURE(k);
        CHECK(invariants(curve_from_j(j)).j() == j);
    }
}

TEST_CASE("curve_from_j(-3375) has conductor 7^a times a square") {
    GlobalData G = tamagawa_number(curve_from_j(Rat(-3375)), {}, kHints);
    REQUIRE(G.complete);
    for (const auto& [p, e] : G.conductor.factors) {
        CAPTURE(to_string(p));
        CHECK((p == 2 || p == 3 || p == 5 || p == 7));
        if (p != 7) CHECK(e % 2 == 0);
    }
}

TEST_SUITE_END();
