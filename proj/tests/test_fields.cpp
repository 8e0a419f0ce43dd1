#include <qhmf/field.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace qhmf;

namespace {

FieldPtr make_sqrt2() {
    FieldPtr QQ = FieldSpec::rationals();
    return adjoin_square_root(QQ, QQ->from_rat(Rat(2)), "F", "w");
}

AlgElem fe(const FieldPtr& F, long a, long b) {
    return F->element({Rat(a), Rat(b)});
}

AlgElem random_elem(const FieldPtr& F, std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-20, 20);
    std::uniform_int_distribution<long> den(1, 7);
    std::vector<Rat> c;
    for (int i = 0; i < F->degree(); ++i) c.push_back(make_rat(num(rng), den(rng)));
    return F->element(std::move(c));
}

}  // namespace

TEST_CASE("field axioms on random triples") {
    FieldPtr F = make_sqrt2();
    FieldPtr K = adjoin_square_root(F, -F->one(), "K", "s");
    std::mt19937_64 rng(12345);
    for (const FieldPtr& fld : {F, K}) {
        for (int trial = 0; trial < 50; ++trial) {
            AlgElem x = random_elem(fld, rng), y = random_elem(fld, rng), z = random_elem(fld, rng);
            CHECK((x * y) * z == x * (y * z));
            CHECK(x * (y + z) == x * y + x * z);
            if (!x.is_zero()) CHECK(x * x.inverse() == fld->one());
        }
    }
}

TEST_CASE("embed_sign on Q(sqrt 2)") {
    FieldPtr F = make_sqrt2();
    REQUIRE(F->real_roots().size() == 2);
    // roots ascending: index 0 is -sqrt2 (sigma_2), index 1 is +sqrt2 (sigma_1)
    AlgElem u = fe(F, 1, 1);  // 1 + sqrt2
    CHECK(embed_sign(u, 1) == 1);
    CHECK(embed_sign(u, 0) == -1);
    CHECK(embed_sign(F->zero(), 0) == 0);
    AlgElem sq = fe(F, 3, -2);  // 3 - 2 sqrt2 = (1 - sqrt2)^2
    CHECK(embed_sign(sq, 0) == 1);
    CHECK(embed_sign(sq, 1) == 1);
    CHECK_THROWS_AS(embed_sign(u, 2), std::out_of_range);
}

TEST_CASE("embed_sign is multiplicative") {
    FieldPtr F = make_sqrt2();
    std::mt19937_64 rng(777);
    for (int trial = 0; trial < 40; ++trial) {
        AlgElem x = random_elem(F, rng), y = random_elem(F, rng);
        for (size_t root = 0; root < 2; ++root)
            CHECK(embed_sign(x * y, root) == embed_sign(x, root) * embed_sign(y, root));
    }
}

TEST_CASE("adjoin_square_root builds the expected fields") {
    FieldPtr QQ = FieldSpec::rationals();
    FieldPtr F = adjoin_square_root(QQ, QQ->from_rat(Rat(2)), "F", "w");
    CHECK(F->degree() == 2);
    CHECK(F->min_poly() == QPoly({Rat(-2), Rat(0), Rat(1)}));

    // b^2 = -3 sqrt2 - 8 gives a degree-4 field
    AlgElem delta = fe(F, -8, -3);
    FieldPtr L = adjoin_square_root(F, delta, "L", "t");
    CHECK(L->degree() == 4);
    AlgElem b = tower_sqrt_elem(L);
    CHECK(b * b == tower_embed(L, delta));
    // the embedding of the base is a ring map
    AlgElem w = tower_embed(L, F->generator());
    CHECK(w * w == L->from_rat(Rat(2)));
    CHECK(L->real_roots().empty());  // totally imaginary

    // delta a square is rejected, with the root reported
    AlgElem sq = fe(F, 3, 2);  // (1 + sqrt2)^2
    CHECK_THROWS_AS(adjoin_square_root(F, sq, "X", "y"), DeltaIsSquareError);
}

TEST_CASE("square detection in towers") {
    FieldPtr QQ = FieldSpec::rationals();
    FieldPtr F = make_sqrt2();

    CHECK(is_square_ratio(QQ->from_rat(Rat(4)), QQ->one())->rational_value() == 2);

    AlgElem x = fe(F, -32, -12);  // -12 sqrt2 - 32 = 4 * (-3 sqrt2 - 8)
    AlgElem y = fe(F, -8, -3);
    auto c = is_square_ratio(x, y);
    REQUIRE(c.has_value());
    CHECK((*c) * (*c) == x / y);
    CHECK((*c == fe(F, 2, 0) || *c == fe(F, -2, 0)));

    CHECK_FALSE(is_square_ratio(F->generator(), F->one()).has_value());  // sqrt2 is not a square
    CHECK(field_sqrt(fe(F, 3, 2)).has_value());                          // 3 + 2 sqrt2 = (1+sqrt2)^2
    CHECK_FALSE(field_sqrt(fe(F, -8, -3)).has_value());
}

TEST_CASE("cyclotomic field of eighth roots of unity") {
    // zeta^4 + 1 = 0; zeta + zeta^-1 squares to 2, zeta^2 squares to -1
    FieldPtr K = FieldSpec::create(QPoly({Rat(1), Rat(0), Rat(0), Rat(0), Rat(1)}), "Qzeta8", "z");
    AlgElem zeta = K->generator();
    AlgElem root2 = zeta + zeta.inverse();
    CHECK(root2 * root2 == K->from_rat(Rat(2)));
    AlgElem i = zeta * zeta;
    CHECK(i * i == K->from_rat(Rat(-1)));
    CHECK(K->real_roots().empty());
}

TEST_CASE("the composite degree-8 field K(b)") {
    FieldPtr F = make_sqrt2();
    FieldPtr K = adjoin_square_root(F, -F->one(), "K", "s");
    CHECK(K->degree() == 4);
    AlgElem delta_K = tower_embed(K, fe(F, -8, -3));
    FieldPtr Kb = adjoin_square_root(K, delta_K, "Kb", "u");
    CHECK(Kb->degree() == 8);
    AlgElem b = tower_sqrt_elem(Kb);
    CHECK(b * b == tower_embed(Kb, delta_K));
    // degree cap: one more extension must be refused
    CHECK_THROWS_AS(adjoin_square_root(Kb, Kb->from_rat(Rat(3)), "X", "y"), std::invalid_argument);
}

TEST_CASE("tower decomposition round trip") {
    FieldPtr F = make_sqrt2();
    FieldPtr K = adjoin_square_root(F, -F->one(), "K", "s");
    std::mt19937_64 rng(999);
    for (int trial = 0; trial < 20; ++trial) {
        AlgElem z = random_elem(K, rng);
        auto [u, v] = tower_decompose(z);
        CHECK(tower_embed(K, u) + tower_embed(K, v) * tower_sqrt_elem(K) == z);
        CHECK(tower_conj(tower_conj(z)) == z);
    }
}
