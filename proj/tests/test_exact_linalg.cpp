#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "drw/exact_linalg.hpp"

using namespace drw;

namespace {

IntMatrix mat(std::size_t r, std::size_t c, std::initializer_list<long> vals) {
    IntMatrix m(r, c);
    auto it = vals.begin();
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = Int(*it++);
    return m;
}

ModMatrix mmat(std::size_t r, std::size_t c, long mod, std::initializer_list<long> vals) {
    return ModMatrix::fromInt(mat(r, c, vals), Int(mod));
}

// all vectors of (Z/q)^n in a deterministic order
std::vector<std::vector<Int>> allVectors(const Int& q, std::size_t n) {
    std::vector<std::vector<Int>> out;
    std::vector<Int> cur(n, Int(0));
    for (;;) {
        out.push_back(cur);
        std::size_t i = 0;
        while (i < n) {
            cur[i] += 1;
            if (cur[i] < q) break;
            cur[i] = 0;
            ++i;
        }
        if (i == n) break;
    }
    return out;
}

std::set<std::vector<Int>> rowSpan(const ModMatrix& m) {
    std::set<std::vector<Int>> span;
    const Int q = m.modulus();
    for (const auto& coeffs : allVectors(q, m.rows())) {
        std::vector<Int> v(m.cols(), Int(0));
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j)
                v[j] = (v[j] + coeffs[i] * m(i, j)) % q;
        span.insert(v);
    }
    return span;
}

// invariant factors of a finite abelian p-group given as an explicit set of
// vectors closed under addition mod q, via order statistics
std::vector<unsigned> groupInvariants(const std::set<std::vector<Int>>& ker,
                                      const std::set<std::vector<Int>>& im,
                                      const Int& q, const Int& p) {
    // quotient ker/im: count elements killed by p^j
    unsigned m = padic_val(q, p);
    // cosets
    std::map<std::vector<Int>, std::size_t> cosetOf;
    std::vector<std::vector<Int>> reps;
    for (const auto& x : ker) {
        if (cosetOf.count(x)) continue;
        for (const auto& y : im) {
            std::vector<Int> z(x.size());
            for (std::size_t i = 0; i < x.size(); ++i) z[i] = (x[i] + y[i]) % q;
            cosetOf[z] = reps.size();
        }
        reps.push_back(x);
    }
    auto scale = [&](const std::vector<Int>& x, const Int& c) {
        std::vector<Int> z(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) z[i] = (c * x[i]) % q;
        return z;
    };
    // N_j = #{classes killed by p^j} = p^{sum min(e_i, j)}
    std::vector<unsigned> sums; // sum min(e_i, j) for j = 0..m
    for (unsigned j = 0; j <= m; ++j) {
        Int pj = pow_int(p, j);
        std::size_t count = 0;
        for (const auto& r : reps)
            if (cosetOf.at(scale(r, pj)) == cosetOf.at(scale(r, Int(0)))) ++count;
        unsigned s = 0;
        std::size_t c = count;
        while (c > 1) { c /= mpz_get_ui(p.get_mpz_t()); ++s; }
        sums.push_back(s);
    }
    // recover multiset of e_i from the concave sequence sums
    std::vector<unsigned> exps;
    for (unsigned j = 1; j <= m; ++j) {
        unsigned dj = sums[j] - sums[j - 1]; // #ofe_i >= j
        unsigned dnext = (j < m) ? sums[j + 1] - sums[j] : 0;
        for (unsigned t = 0; t < dj - dnext; ++t) exps.push_back(j);
    }
    std::sort(exps.rbegin(), exps.rend());
    return exps;
}

} // namespace

TEST_CASE("smith normal form: fixed examples") {
    auto s0 = smith_normal_form(mat(1, 1, {0}));
    CHECK(s0.d(0, 0) == 0);
    CHECK(s0.rank == 0);

    auto s1 = smith_normal_form(mat(2, 2, {2, 4, 6, 8}));
    CHECK(s1.d(0, 0) == 2);
    CHECK(s1.d(1, 1) == 4);
    CHECK(s1.u * s1.d * s1.v == mat(2, 2, {2, 4, 6, 8}));

    auto s2 = smith_normal_form(IntMatrix::identity(3));
    CHECK(s2.d == IntMatrix::identity(3));
    CHECK(s2.rank == 3);
}

TEST_CASE("smith normal form: random matrices satisfy the contract") {
    std::mt19937_64 rng(20260810);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t r = 1 + rng() % 8, c = 1 + rng() % 8;
        IntMatrix m(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j)
                m(i, j) = Int(static_cast<long>(rng() % 101) - 50);
        auto s = smith_normal_form(m);
        CHECK(s.u * s.d * s.v == m);
        CHECK(snf_abs_det(s.u) == 1);
        CHECK(snf_abs_det(s.v) == 1);
        CHECK(s.u * s.uinv == IntMatrix::identity(r));
        CHECK(s.v * s.vinv == IntMatrix::identity(c));
        for (std::size_t i = 0; i + 1 < std::min(r, c); ++i) {
            CHECK(s.d(i, i) >= 0);
            if (s.d(i, i) != 0) CHECK(s.d(i + 1, i + 1) % s.d(i, i) == 0);
            else CHECK(s.d(i + 1, i + 1) == 0);
        }
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j)
                if (i != j) CHECK(s.d(i, j) == 0);
    }
}

TEST_CASE("integer kernel and solve") {
    IntMatrix m = mat(2, 3, {1, 2, 3, 2, 4, 6});
    IntMatrix k = int_kernel(m);
    CHECK(k.cols() == 2);
    CHECK((m * k).isZero());

    IntMatrix b = mat(2, 1, {3, 6});
    IntMatrix x = int_solve(m, b);
    CHECK(m * x == b);
    CHECK_FALSE(int_solvable(m, mat(2, 1, {1, 1})));
}

TEST_CASE("howell form: fixed examples") {
    CHECK(howell_form(mmat(1, 1, 4, {2})) == mmat(1, 1, 4, {2}));
    CHECK(howell_form(mmat(2, 2, 4, {1, 1, 0, 2})) == mmat(2, 2, 4, {1, 1, 0, 2}));
    ModMatrix z(1, 2, Int(4));
    CHECK(howell_form(z).rows() == 0);
}

TEST_CASE("howell form: idempotent and span preserving (exhaustive over Z/p^2)") {
    for (long p : {2L, 3L}) {
        Int q = Int(p) * Int(p);
        std::mt19937_64 rng(7 + p);
        for (int trial = 0; trial < 60; ++trial) {
            std::size_t r = 1 + rng() % 3, c = 1 + rng() % 3;
            ModMatrix m(r, c, q);
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j < c; ++j) m(i, j) = Int(static_cast<long>(rng() % mpz_get_ui(q.get_mpz_t())));
            ModMatrix h = howell_form(m);
            CHECK(howell_form(h) == h);
            CHECK(rowSpan(h) == rowSpan(m));
            // canonicity: a different generating set of the same span gives the same form
            if (h.rows() >= 1) {
                ModMatrix g(m.rows() + 1, c, q);
                for (std::size_t i = 0; i < m.rows(); ++i)
                    for (std::size_t j = 0; j < c; ++j) g(i, j) = m(i, j);
                for (std::size_t j = 0; j < c; ++j)
                    g(m.rows(), j) = (Int(3) * m(0, j)) % q;
                CHECK(howell_form(g) == h);
            }
        }
    }
}

TEST_CASE("submodule membership") {
    CHECK(submodule_membership(mmat(1, 2, 4, {2, 0}), {Int(2), Int(0)}));
    CHECK_FALSE(submodule_membership(mmat(1, 2, 4, {2, 0}), {Int(1), Int(0)}));
    CHECK(submodule_membership(mmat(2, 2, 4, {1, 1, 0, 2}), {Int(3), Int(1)}));
    CHECK_THROWS_AS(submodule_membership(mmat(1, 2, 4, {2, 0}), {Int(1)}), DimensionMismatch);
}

TEST_CASE("howell solve recovers coefficients") {
    ModMatrix g = mmat(2, 3, 8, {1, 2, 3, 0, 4, 4});
    std::vector<Int> v = {Int(1), Int(6), Int(7)}; // row0 + row1
    auto x = howell_solve(g, v);
    REQUIRE(x.has_value());
    std::vector<Int> chk(3, Int(0));
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 3; ++j) chk[j] = (chk[j] + (*x)[i] * g(i, j)) % 8;
    CHECK(chk == v);
    CHECK_FALSE(howell_solve(g, {Int(0), Int(1), Int(0)}).has_value());
}

TEST_CASE("complex cohomology: fixed examples") {
    // Z/4 --x2--> Z/4
    ModMatrix d = mmat(1, 1, 4, {2});
    auto h = complex_cohomology_mod({1, 1}, {d}, Int(2));
    REQUIRE(h.size() == 2);
    CHECK(h[0].exps == std::vector<unsigned>{1});
    CHECK(h[1].exps == std::vector<unsigned>{1});

    auto hi = complex_cohomology_int({1, 1}, {mat(1, 1, {1})}, Int(2));
    CHECK(hi[0].mod.isZero());
    CHECK(hi[1].mod.isZero());

    auto hz = complex_cohomology_int({1, 1}, {mat(1, 1, {0})}, Int(2));
    CHECK(hz[0].mod.freeRank == 1);
    CHECK(hz[1].mod.freeRank == 1);
}

TEST_CASE("complex cohomology rejects non-complexes") {
    std::vector<ModMatrix> ds = {mmat(1, 1, 4, {1}), mmat(1, 1, 4, {1})};
    CHECK_THROWS_AS(complex_cohomology_mod({1, 1, 1}, ds, Int(2)), CompositionNonzero);
}

TEST_CASE("complex cohomology agrees with brute-force enumeration") {
    std::mt19937_64 rng(424242);
    for (long p : {2L, 3L}) {
        for (int trial = 0; trial < 40; ++trial) {
            unsigned m = 1 + rng() % 2;
            Int q = pow_int(Int(p), m);
            // pick small ranks so q^(r0+r1+r2) <= 4096
            std::size_t r0 = 1 + rng() % 2, r1 = 1 + rng() % 2, r2 = rng() % 2;
            double total = std::pow(static_cast<double>(mpz_get_ui(q.get_mpz_t())),
                                    static_cast<double>(r0 + r1 + r2));
            if (total > 4096) continue;
            // random pair of composable differentials: d1 = b * a with a,b random
            // does not force d1 d0 = 0; instead build d0 random, d1 from kernel
            ModMatrix d0(r1, r0, q);
            for (std::size_t i = 0; i < r1; ++i)
                for (std::size_t j = 0; j < r0; ++j) d0(i, j) = Int(static_cast<long>(rng() % mpz_get_ui(q.get_mpz_t())));
            // choose d1 rows from annihilator relations of the columns of d0:
            // simplest valid choice: multiply by q / p (kills p-divisible images)
            ModMatrix d1(r2, r1, q);
            if (r2 > 0) {
                // find a matrix with d1*d0 = 0 by brute force over small entries
                bool ok = false;
                for (int attempt = 0; attempt < 200 && !ok; ++attempt) {
                    for (std::size_t i = 0; i < r2; ++i)
                        for (std::size_t j = 0; j < r1; ++j)
                            d1(i, j) = Int(static_cast<long>(rng() % mpz_get_ui(q.get_mpz_t())));
                    ModMatrix c = d1 * d0;
                    ok = true;
                    for (std::size_t i = 0; i < c.rows() && ok; ++i)
                        for (std::size_t j = 0; j < c.cols() && ok; ++j)
                            if (c(i, j) != 0) ok = false;
                }
                if (!ok) continue;
            }
            std::vector<std::size_t> ranks = {r0, r1};
            std::vector<ModMatrix> diffs = {d0};
            if (r2 > 0) { ranks.push_back(r2); diffs.push_back(d1); }

            auto hs = complex_cohomology_mod(ranks, diffs, Int(p));

            // brute force in middle degree 1: ker(d1)/im(d0) (or full/im if no d1)
            std::set<std::vector<Int>> ker, im;
            for (const auto& v : allVectors(q, r1)) {
                bool inKer = true;
                if (r2 > 0) {
                    for (std::size_t i = 0; i < r2 && inKer; ++i) {
                        Int s = 0;
                        for (std::size_t j = 0; j < r1; ++j) s = (s + d1(i, j) * v[j]) % q;
                        if (s != 0) inKer = false;
                    }
                }
                if (inKer) ker.insert(v);
            }
            for (const auto& u : allVectors(q, r0)) {
                std::vector<Int> w(r1, Int(0));
                for (std::size_t i = 0; i < r1; ++i)
                    for (std::size_t j = 0; j < r0; ++j) w[i] = (w[i] + d0(i, j) * u[j]) % q;
                im.insert(w);
            }
            auto oracle = groupInvariants(ker, im, q, Int(p));
            CHECK(hs[1].exps == oracle);
        }
    }
}
