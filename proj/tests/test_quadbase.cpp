#include <qhmf/quadfield.hpp>

#include <catch2/catch_amalgamated.hpp>

using namespace qhmf;

namespace {

// brute-force oracle: smallest unit > 1 in O_F, searching a + b*sqrt(d)
// (or half-integer coordinates) with small b
AlgElem brute_force_unit(const QuadField& F) {
    long d = F.d();
    bool half = F.half_integer_basis();
    for (long twob = 1; twob < 4000; ++twob) {
        // candidate sqrt-coefficient b = twob / (half ? 2 : 1)
        Rat b = half ? make_rat(twob, 2) : Rat(twob);
        // a^2 = d b^2 +- 1
        for (int s = -1; s <= 1; s += 2) {
            Rat a2 = Rat(d) * b * b + s;
            auto a = rat_sqrt(a2);
            if (!a) continue;
            AlgElem u = F.elem(*a, b);
            if (F.is_unit(u)) return u;
        }
    }
    throw std::runtime_error("brute_force_unit: not found");
}

}  // namespace

TEST_CASE("fundamental units") {
    QuadField F2(2);
    CHECK(F2.fundamental_unit() == F2.elem(1, 1));  // 1 + sqrt2
    CHECK(F2.unit_norm() == -1);

    QuadField F3(3);
    CHECK(F3.fundamental_unit() == F3.elem(2, 1));  // 2 + sqrt3 (oracle below too)
    CHECK(F3.fundamental_unit() == brute_force_unit(F3));

    QuadField F5(5);
    CHECK(F5.fundamental_unit() == F5.elem(Rat(1, 2), Rat(1, 2)));  // (1+sqrt5)/2
    CHECK(F5.fundamental_unit() == brute_force_unit(F5));

    for (long d : {6, 7, 10, 11, 13, 14, 17, 19, 21}) {
        QuadField F(d);
        CHECK(F.fundamental_unit() == brute_force_unit(F));
    }

    CHECK_THROWS_AS(QuadField(12), std::invalid_argument);  // not squarefree
}

TEST_CASE("total positivity") {
    QuadField F(2, true);
    CHECK(F.is_totally_positive(F.elem(5, -3)));   // 5 - 3 sqrt2
    CHECK_FALSE(F.is_totally_positive(F.elem(1, 1)));  // 1 + sqrt2, negative at sigma2
    CHECK_FALSE(F.is_totally_positive(F.field()->zero()));
}

TEST_CASE("canonical totally positive generators") {
    QuadField F(2, true);
    CHECK(F.totally_positive_generator(F.from_rat(Rat(-3))) == F.from_rat(Rat(3)));
    // 5 - 3 sqrt2 normalizes within its associate class; result is an associate
    AlgElem g = F.totally_positive_generator(F.elem(5, -3));
    CHECK(F.is_totally_positive(g));
    CHECK(abs(F.norm(g)) == 7);
    // stripping u^2: (1+sqrt2)^2 * 7 -> 7
    AlgElem u = F.fundamental_unit();
    CHECK(F.totally_positive_generator(u * u * Rat(7)) == F.from_rat(Rat(7)));
    // idempotent and constant on associate classes
    CHECK(F.totally_positive_generator(g) == g);
    CHECK(F.totally_positive_generator(-(g * u * u * u)) == g);
}

TEST_CASE("narrow class one scope checks") {
    CHECK_NOTHROW(QuadField(2, true));
    CHECK_NOTHROW(QuadField(5, true));
    CHECK_THROWS_AS(QuadField(3, true), ScopeError);  // Nm(2+sqrt3) = +1
    QuadField F3(3, false);
    CHECK_THROWS_AS(F3.totally_positive_generator(F3.from_rat(Rat(3))), ScopeError);
}

TEST_CASE("prime level and residue reduction") {
    QuadField F(2, true);
    FPrimeLevel level(F, F.elem(5, -3));  // norm 7
    CHECK(level.q() == 7);
    CHECK(level.sqrt_d_image() == 4);  // sqrt2 = 4 mod 7 on this prime
    CHECK(level.reduce(F.elem(5, -3)) == 0);
    CHECK(level.reduce(F.elem(0, 1)) == 4);
    CHECK(level.is_coprime(F.elem(1, 1)));

    // 3 + sqrt2 is totally positive with norm 7: another generator of a prime above 7
    CHECK_NOTHROW(FPrimeLevel(F, F.elem(3, 1)));
    CHECK_THROWS_AS(FPrimeLevel(F, F.elem(3, 0)), std::invalid_argument);   // norm 9 not prime
    CHECK_THROWS_AS(FPrimeLevel(F, F.elem(1, 1)), std::invalid_argument);   // not totally positive
}

TEST_CASE("epsilon character") {
    QuadField F(2, true);
    FPrimeLevel level(F, F.elem(5, -3));
    EpsilonChar eps(level, true);

    CHECK(eps(F.from_rat(Rat(3))) == -1);   // 3^3 = 27 = -1 mod 7
    CHECK(eps(F.from_rat(Rat(1))) == 1);
    CHECK(eps(F.elem(5, -2)) == 1);         // 5 - 2 sqrt2 = 4 mod 7, a square
    CHECK(eps(F.elem(0, 1)) == 1);          // sqrt2 = 4 = 2^2 mod 7
    CHECK_THROWS_AS(eps(F.elem(5, -3)), std::domain_error);

    // multiplicative and quadratic on residues, exhaustively for every
    // degree-one prime level of norm <= 100 below
    std::vector<AlgElem> gens = {F.elem(5, -3), F.elem(5, 2),  F.elem(5, 1),  F.elem(7, 3),
                                 F.elem(7, 2),  F.elem(7, 1),  F.elem(11, 5), F.elem(9, 2),
                                 F.elem(9, 1),  F.elem(11, 4), F.elem(13, 6)};
    for (const auto& g : gens) {
        FPrimeLevel lv(F, g);
        if (lv.q() > 100 || lv.q() < 3) continue;
        EpsilonChar e(lv, true);
        std::uint64_t q = lv.q();
        int nontrivial_hits = 0;
        for (std::uint64_t x = 1; x < q; ++x) {
            if (e.at_residue(x) == -1) ++nontrivial_hits;
            CHECK(e.at_residue(x) * e.at_residue(x) == 1);
            for (std::uint64_t y = 1; y < q; ++y)
                CHECK(e.at_residue(x * y % q) == e.at_residue(x) * e.at_residue(y));
        }
        CHECK(nontrivial_hits == static_cast<int>((q - 1) / 2));  // nontrivial quadratic
    }
}

TEST_CASE("p1 points") {
    QuadField F(2, true);
    FPrimeLevel lv7(F, F.elem(5, -3));
    auto pts = p1_points(lv7);
    CHECK(pts.size() == 8);
    CHECK(std::count(pts.begin(), pts.end(), P1Point{0, 1}) == 1);
    CHECK(std::count(pts.begin(), pts.end(), P1Point{1, 0}) == 1);

    FPrimeLevel lv2(F, F.elem(2, -1));  // 2 - sqrt2, norm 2
    CHECK(p1_points(lv2).size() == 3);
}

TEST_CASE("unit sign condition") {
    QuadField F(2, true);
    FPrimeLevel level(F, F.elem(5, -3));
    EpsilonChar eps(level, true);
    EpsilonChar trivial(level, false);

    // paper weight: k = (4,3), t = (-7/4, -5/4), nontrivial eps
    CHECK(check_sign_condition(F, {4, 3}, {Rat(-7, 4), Rat(-5, 4)}, eps));
    CHECK_FALSE(check_sign_condition(F, {4, 3}, {Rat(-7, 4), Rat(-5, 4)}, trivial));
    CHECK(check_sign_condition(F, {4, 4}, {Rat(0), Rat(0)}, trivial));
    // unreasonable t fails outright
    CHECK_FALSE(check_sign_condition(F, {4, 3}, {Rat(0), Rat(0)}, eps));
}
