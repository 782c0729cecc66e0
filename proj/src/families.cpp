#include "tamagawa/families.hpp"

#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <utility>

namespace tamagawa {

namespace {

using nlohmann::json;

Poly poly_from_json(const json& arr, const std::string& what) {
    if (!arr.is_array() || arr.empty())
        throw FamilyValidationError("family file: " + what +
                                    " is not a nonempty array");
    std::string joined;
    for (const auto& item : arr) {
        if (!item.is_string())
            throw FamilyValidationError("family file: " + what +
                                        " holds a non-string coefficient");
        if (!joined.empty()) joined.push_back(',');
        joined += item.get<std::string>();
    }
    return parse_poly(joined);
}

std::string fnv1a_hex(const std::string& bytes) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

// b-invariants of y^2 + xy = x^3 + A2 x^2 + A4 x + A6 as u-polynomials
struct LongInvariants {
    Poly b2, b4, b6, b8, c4, c6, disc;
};

LongInvariants long_invariants(const Poly& A2, const Poly& A4, const Poly& A6) {
    LongInvariants r;
    const Poly one = Poly::constant(1);
    r.b2 = one + A2 * Rat(4);
    r.b4 = A4 * Rat(2);
    r.b6 = A6 * Rat(4);
    r.b8 = A6 + A2 * A6 * Rat(4) - A4 * A4;
    r.c4 = r.b2 * r.b2 - r.b4 * Rat(24);
    r.c6 = -(r.b2 * r.b2 * r.b2) + r.b2 * r.b4 * Rat(36) - r.b6 * Rat(216);
    r.disc = -(r.b2 * r.b2 * r.b8) - r.b4 * r.b4 * r.b4 * Rat(8) -
             r.b6 * r.b6 * Rat(27) + r.b2 * r.b4 * r.b6 * Rat(9);
    return r;
}

// disc_x(a x^3 + b x^2 + c x + d) with polynomial coefficients in u
Poly cubic_disc(const Poly& a, const Poly& b, const Poly& c, const Poly& d) {
    return a * b * c * d * Rat(18) - b * b * b * d * Rat(4) + b * b * c * c -
           a * c * c * c * Rat(4) - a * a * d * d * Rat(27);
}

void check_anchor(const TorsionFamily& fam, const Rat& u, const Curve& want,
                  const std::string& name) {
    // anchor fibers carry only small bad primes; hints keep the reduction
    // independent of the factoring budget
    static const std::vector<Int> hints{2, 3, 7, 13, 31, 499, 3181};
    try {
        Curve fiber = fam.specialize(u);
        MinimalModel mm = minimal_model(fiber, FactorBudget{}, hints);
        if (!(mm.curve == want))
            throw FamilyValidationError(
                "family file: anchor " + name + " failed: fiber at u = " +
                to_string(u) + " minimalizes to " + curve_to_string(mm.curve) +
                ", expected " + curve_to_string(want));
    } catch (const FamilyValidationError&) {
        throw;
    } catch (const std::exception& e) {
        throw FamilyValidationError("family file: anchor " + name +
                                    " failed: " + e.what());
    }
}

void check_resultant_pins(const Poly& c4s, const Poly& discs) {
    struct Pin {
        Rat at;
        const char* name;
    };
    const Pin pins[2] = {{Rat(1), "u-1"}, {Rat(-1), "u+1"}};
    for (const Pin& pin : pins) {
        if (root_multiplicity(discs, pin.at) != 14)
            throw FamilyValidationError(
                std::string("family file: short-model discriminant valuation "
                            "at (") +
                pin.name + ") is not 14");
        Poly lin(std::vector<Rat>{-pin.at, Rat(1)});
        Poly quotient = discs;
        for (int i = 0; i < 14; ++i) quotient = divmod(quotient, lin).first;
        Rat rq = resultant(lin, quotient);
        Rat rc = resultant(lin, c4s);
        Rat want_q{Int("4835703278458516698824704")};  // 2^82
        Rat want_c{Int("4294967296")};                 // 2^32
        if (rq != want_q)
            throw FamilyValidationError(
                std::string("family file: res(") + pin.name +
                ", disc/(" + pin.name + ")^14) is " + to_string(rq) +
                ", expected 2^82");
        if (rc != want_c)
            throw FamilyValidationError(std::string("family file: res(") +
                                        pin.name + ", c4) is " + to_string(rc) +
                                        ", expected 2^32");
    }
}

}  // namespace

Poly TorsionFamily::fiber_cubic(const Rat& u) const {
    if (!has_cubic())
        throw ArgumentError("fiber_cubic: family file carries no cubic");
    if (u == 1 || u == -1 || disc_.eval(u) == 0)
        throw SingularFiberError("fiber_cubic: singular fiber at u = " +
                                 to_string(u));
    std::vector<Rat> coeffs;
    for (const Poly& cx : cubic_x_) coeffs.push_back(cx.eval(u));
    Poly raw(std::move(coeffs));
    return content_primitive(raw).second;
}

Curve TorsionFamily::specialize(const Rat& u) const {
    if (u == 1 || u == -1)
        throw SingularFiberError("singular fiber at u = " + to_string(u));
    if (disc_.eval(u) == 0)
        throw SingularFiberError("singular fiber at u = " + to_string(u));
    return Curve(1, a2_.eval(u), 0, a4_.eval(u), a6_.eval(u));
}

TorsionFamily load_torsion_family(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FamilyValidationError("family file: cannot open " + path);
    std::string bytes((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
    json doc;
    try {
        doc = json::parse(bytes);
    } catch (const json::parse_error& e) {
        throw FamilyValidationError(std::string("family file: ") + e.what());
    }
    if (doc.value("model", "") != "long")
        throw FamilyValidationError("family file: model must be \"long\"");

    TorsionFamily fam;
    fam.checksum_ = fnv1a_hex(bytes);
    fam.a2_ = poly_from_json(doc.at("A2"), "A2");
    fam.a4_ = poly_from_json(doc.at("A4"), "A4");
    fam.a6_ = poly_from_json(doc.at("A6"), "A6");

    LongInvariants inv = long_invariants(fam.a2_, fam.a4_, fam.a6_);
    fam.c4_ = inv.c4;
    fam.c6_ = inv.c6;
    fam.disc_ = inv.disc;
    Poly lhs = inv.c4 * inv.c4 * inv.c4 - inv.c6 * inv.c6;
    if (!(lhs == inv.disc * Rat(1728)))
        throw FamilyValidationError(
            "family file: c4^3 - c6^2 != 1728 disc on the long model");

    check_anchor(fam, Rat(2),
                 Curve(1, 0, 0, Int("-31714388875"), Int("2132064170125553")),
                 "u=2");
    check_anchor(fam, Rat(1, 2),
                 Curve(1, 0, 0, Int("-35365397163613670"),
                       Int("2559848051274532647229668")),
                 "u=1/2");

    if (doc.contains("short")) {
        fam.sa_ = poly_from_json(doc.at("short").at("A"), "short.A");
        fam.sb_ = poly_from_json(doc.at("short").at("B"), "short.B");
    } else {
        fam.sa_ = fam.c4_ * Rat(-1, 48);
        fam.sb_ = fam.c6_ * Rat(-1, 864);
    }
    if (!(fam.sa_ * Rat(-48) == fam.c4_) || !(fam.sb_ * Rat(-864) == fam.c6_))
        throw FamilyValidationError(
            "family file: short model does not match the long model "
            "(c4, c6 disagree)");

    if (doc.contains("cubic_field_poly")) {
        const json& cub = doc.at("cubic_field_poly");
        if (!cub.is_array() || cub.size() != 4)
            throw FamilyValidationError(
                "family file: cubic_field_poly must list 4 coefficient arrays");
        for (size_t i = 0; i < 4; ++i)
            fam.cubic_x_.push_back(
                poly_from_json(cub[i], "cubic_field_poly[" +
                                           std::to_string(i) + "]"));
        // the family cubic must be the 2-division cubic of the long model:
        // its discriminant in x is then 16 * disc(u), a perfect square
        Poly dd = cubic_disc(fam.cubic_x_[3], fam.cubic_x_[2], fam.cubic_x_[1],
                             fam.cubic_x_[0]);
        if (!(dd == fam.disc_ * Rat(16)))
            throw FamilyValidationError(
                "family file: cubic_field_poly is not the fiber 2-division "
                "cubic (disc_x != 16 disc)");
    }

    check_resultant_pins(fam.sa_ * Rat(-48), fam.disc_);
    return fam;
}

bool JMap::is_cusp(const Rat& h) const {
    for (const Rat& c : cusps)
        if (c == h) return true;
    return false;
}

Rat JMap::eval(const Rat& h) const {
    if (is_cusp(h))
        throw CuspError("X0(" + std::to_string(n) + "): h = " + to_string(h) +
                        " is a cusp, no elliptic fiber");
    return j.eval(h);
}

const JMap& jmap(long n) {
    static const std::map<long, JMap> maps = [] {
        std::map<long, JMap> m;
        auto P = [](const char* s) { return parse_poly(s); };
        m.emplace(18, JMap{18,
                           RationalFunction(P("h^3-2").pow(3) *
                                                P("h^9-6h^6-12h^3-8").pow(3),
                                            P("h^9") * P("h^3-8") *
                                                P("h^3+1").pow(2)),
                           {Rat(0), Rat(-1), Rat(2)}});
        m.emplace(10, JMap{10,
                           RationalFunction(P("h^6-4h^5+16h+16").pow(3),
                                            P("h+1").pow(2) * P("h-4") *
                                                P("h^5")),
                           {Rat(-1), Rat(4), Rat(0)}});
        m.emplace(8, JMap{8,
                          RationalFunction(P("h^4-16h^2+16").pow(3),
                                           P("h^2-16") * P("h^2")),
                          {Rat(0), Rat(4), Rat(-4)}});
        m.emplace(6, JMap{6,
                          RationalFunction(P("h+6").pow(3) *
                                               P("h^3+18h^2+84h+24").pow(3),
                                           P("h") * P("h+8").pow(3) *
                                               P("h+9").pow(2)),
                          {Rat(0), Rat(-8), Rat(-9)}});
        return m;
    }();
    auto it = maps.find(n);
    if (it == maps.end())
        throw ArgumentError("jmap: no genus-zero parameterization for n = " +
                            std::to_string(n));
    return it->second;
}

const std::vector<FixedIsogenyClass>& fixed_isogeny_classes(long n) {
    static const std::map<long, std::vector<FixedIsogenyClass>> table = [] {
        std::map<long, std::vector<FixedIsogenyClass>> t;
        auto frac = [](const char* num, const char* den) {
            Rat q{Int(num), Int(den)};
            q.canonicalize();
            return q;
        };
        t[14] = {{Rat(-3375), 7}, {Rat(16581375), 7}};
        // -17^2 101^3 / 2 and -17 * 373^3 / 2^17
        t[17] = {{frac("-297756989", "2"), 5},
                 {frac("-882216989", "131072"), 5}};
        t[19] = {{Rat(-884736), 19}};
        // -7 * 11^3 and -7 * 137^3 * 2083^3
        t[37] = {{Rat(-9317), 5},
                 {Rat(Int("-162677523113838677")), 5}};
        t[43] = {{Rat(Int("-884736000")), 43}};
        t[67] = {{Rat(Int("-147197952000")), 67}};
        t[163] = {{Rat(Int("-262537412640768000")), 163}};
        return t;
    }();
    auto it = table.find(n);
    if (it == table.end())
        throw ArgumentError("fixed_isogeny_classes: n = " + std::to_string(n) +
                            " is not a fixed-j level");
    return it->second;
}

std::vector<Rat> fixed_j_list(long n) {
    std::vector<Rat> out;
    for (const FixedIsogenyClass& row : fixed_isogeny_classes(n))
        out.push_back(row.j);
    return out;
}

Curve curve_from_j(const Rat& j) {
    if (j == 0) return Curve(0, 0, 1, 0, 0);
    if (j == 1728) return Curve(0, 0, 0, -1, 0);
    Rat s = j - 1728;
    return Curve(1, 0, 0, Rat(-36) / s, Rat(-1) / s);
}

}  // namespace tamagawa
