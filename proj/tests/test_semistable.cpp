#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "drw/semistable.hpp"

using namespace drw;

namespace {
SemistablePoly tvar(const FrameShape& s, const Int& mod, unsigned i, long e = 1) {
    ExponentVector v(s.d + 1, 0);
    v[i] = e;
    return SemistablePoly::monomial(s, mod, v);
}
} // namespace

TEST_CASE("normalize_monomial on the special fiber") {
    FrameShape s(1, 1);
    CHECK(normalize_monomial({1, 1}, s, Int(0)).isZero());
    CHECK(normalize_monomial({2, 1}, s, Int(0)).isZero());
    FrameShape s2(2, 1);
    auto m = normalize_monomial({1, 0, 3}, s2, Int(0));
    CHECK(m.terms().size() == 1);
    CHECK(m.coeff({1, 0, 3}) == 1);
    CHECK_THROWS_AS(normalize_monomial({-1, 0, 0}, s2, Int(0)), ShapeMismatch);
}

TEST_CASE("normalize_monomial substitutes pi in the q-model") {
    FrameShape s(1, 1);
    // t0^2 t1 = t0 * (t0 t1) = pi * t0 with pi = 2
    auto m = normalize_monomial({2, 1}, s, Int(0), Int(2));
    CHECK(m.coeff({1, 0}) == 2);
    auto m2 = normalize_monomial({2, 2}, s, Int(0), Int(2));
    CHECK(m2.coeff({0, 0}) == 4);
}

TEST_CASE("normalize is idempotent") {
    FrameShape s(2, 1);
    std::mt19937_64 rng(5);
    for (int t = 0; t < 100; ++t) {
        ExponentVector e = {static_cast<long>(rng() % 4), static_cast<long>(rng() % 4),
                            static_cast<long>(rng() % 7) - 3};
        auto a = normalize_monomial(e, s, Int(0));
        if (a.isZero()) continue;
        auto again = normalize_monomial(a.terms().begin()->first, s, Int(0));
        CHECK(a == again);
    }
}

TEST_CASE("poly_mul: fixed examples") {
    FrameShape s(1, 1);
    CHECK((tvar(s, Int(0), 0) * tvar(s, Int(0), 1)).isZero());

    FrameShape s2(2, 1);
    auto one = SemistablePoly::constant(s2, Int(0), Int(1));
    CHECK(tvar(s2, Int(0), 2, 1) * tvar(s2, Int(0), 2, -1) == one);

    auto a = one + tvar(s2, Int(0), 0);
    auto b = one + tvar(s2, Int(0), 1);
    auto prod = a * b;
    CHECK(prod == one + tvar(s2, Int(0), 0) + tvar(s2, Int(0), 1));
}

TEST_CASE("poly_mul rejects mismatched shapes") {
    FrameShape s1(1, 1), s2(2, 1);
    CHECK_THROWS_AS(tvar(s1, Int(0), 0) * tvar(s2, Int(0), 0), ShapeMismatch);
}

TEST_CASE("multiplication is associative and commutative") {
    FrameShape s(2, 1);
    std::mt19937_64 rng(17);
    auto randPoly = [&]() {
        SemistablePoly p = SemistablePoly::zero(s, Int(9));
        for (int k = 0; k < 3; ++k) {
            ExponentVector e = {static_cast<long>(rng() % 3), static_cast<long>(rng() % 3),
                                static_cast<long>(rng() % 5) - 2};
            p = p + SemistablePoly::monomial(s, Int(9), e, Int(static_cast<long>(rng() % 9)));
        }
        return p;
    };
    for (int t = 0; t < 300; ++t) {
        auto a = randPoly(), b = randPoly(), c = randPoly();
        CHECK(a * (b * c) == (a * b) * c);
        CHECK(a * b == b * a);
    }
}

TEST_CASE("monomial_basis: fixed examples") {
    FrameShape s(1, 1);
    auto basis = monomial_basis(s, 1, MonomialVariant::Plus);
    CHECK(basis == std::vector<ExponentVector>{{0, 0}, {0, 1}, {1, 0}});

    FrameShape s0(1, 0);
    auto laurent = monomial_basis(s0, 1, MonomialVariant::Laurent);
    CHECK(laurent == std::vector<ExponentVector>{{0, -1}, {0, 0}, {0, 1}});

    CHECK(monomial_basis(s, 0, MonomialVariant::Plus) ==
          std::vector<ExponentVector>{{0, 0}});
}

TEST_CASE("monomial count matches the closed formula") {
    for (unsigned d = 1; d <= 3; ++d)
        for (unsigned r = 0; r <= d; ++r)
            for (unsigned B = 0; B <= 3; ++B) {
                FrameShape s(d, r);
                auto basis = monomial_basis(s, B, MonomialVariant::Plus);
                // (B+1)^(d+1) - B^(r+1) (B+1)^(d-r)
                long expect = 1;
                for (unsigned i = 0; i <= d; ++i) expect *= (B + 1);
                long sub = 1;
                for (unsigned i = 0; i <= r; ++i) sub *= B;
                for (unsigned i = 0; i < d - r; ++i) sub *= (B + 1);
                CHECK(static_cast<long>(basis.size()) == expect - sub);
            }
}

TEST_CASE("basis monomials are linearly independent normal forms") {
    FrameShape s(2, 2);
    auto basis = monomial_basis(s, 2, MonomialVariant::Plus);
    for (const auto& e : basis) {
        auto m = normalize_monomial(e, s, Int(0));
        REQUIRE_FALSE(m.isZero());
        CHECK(m.terms().begin()->first == e);
    }
}
