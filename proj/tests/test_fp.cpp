#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "torslat/fp.hpp"

using namespace torslat;

TEST_CASE("rank on stock matrices") {
    CHECK(FpMatrix::identity(2, 5).rank() == 2);
    CHECK(FpMatrix(3, 4, 5).rank() == 0);
    // [[1,2],[2,4]] over F_5 has proportional rows
    CHECK(FpMatrix::from_rows({{1, 2}, {2, 4}}, 5).rank() == 1);
}

TEST_CASE("kernel basis") {
    CHECK(FpMatrix::identity(3, 5).kernel_basis().empty());
    CHECK(FpMatrix(2, 2, 5).kernel_basis().size() == 2);
    auto m = FpMatrix::from_rows({{1, 2}, {2, 4}}, 5);
    auto ker = m.kernel_basis();
    REQUIRE(ker.size() == 1);
    // x + 2y = 0 mod 5: (3, 1) spans the kernel
    FpVec v = ker[0];
    CHECK(m.apply(v) == FpVec{0, 0});
    bool scalar_of = false;
    for (uint32_t c = 1; c < 5; ++c)
        if (v[0] == 3 * c % 5 && v[1] == c) scalar_of = true;
    CHECK(scalar_of);
}

TEST_CASE("solve") {
    auto id = FpMatrix::identity(2, 5);
    auto x = id.solve({2, 3});
    REQUIRE(x);
    CHECK(*x == FpVec{2, 3});

    CHECK_FALSE(FpMatrix(2, 2, 5).solve({1, 0}));

    auto m = FpMatrix::from_rows({{1, 1}, {0, 1}}, 5);
    auto y = m.solve({2, 3});
    REQUIRE(y);
    CHECK(*y == FpVec{4, 3});
}

TEST_CASE("rank-nullity over random matrices") {
    std::mt19937 rng(20240901);
    for (int trial = 0; trial < 1200; ++trial) {
        int rows = 1 + (int)(rng() % 6), cols = 1 + (int)(rng() % 6);
        uint32_t p = (trial % 3 == 0) ? 3 : 5;
        FpMatrix m(rows, cols, p);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) m.set(i, j, rng() % p);
        CHECK(m.rank() + (int)m.kernel_basis().size() == cols);
        for (const FpVec& v : m.kernel_basis())
            CHECK(m.apply(v) == FpVec(rows, 0));
    }
}

TEST_CASE("solve is exact and absence means rank jump") {
    std::mt19937 rng(77);
    for (int trial = 0; trial < 1000; ++trial) {
        int rows = 1 + (int)(rng() % 5), cols = 1 + (int)(rng() % 5);
        FpMatrix m(rows, cols, 5);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) m.set(i, j, rng() % 5);
        FpVec b(rows);
        for (auto& x : b) x = rng() % 5;
        auto sol = m.solve(b);
        if (sol) {
            CHECK(m.apply(*sol) == b);
        } else {
            FpMatrix aug(rows, cols + 1, 5);
            aug.paste(0, 0, m);
            for (int i = 0; i < rows; ++i) aug.set(i, cols, b[i]);
            CHECK(aug.rank() == m.rank() + 1);
        }
    }
}

TEST_CASE("inverse and column space") {
    auto m = FpMatrix::from_rows({{1, 1}, {0, 1}}, 5);
    auto inv = m.inverse();
    REQUIRE(inv);
    CHECK(m.mul(*inv) == FpMatrix::identity(2, 5));
    CHECK_FALSE(FpMatrix::from_rows({{1, 2}, {2, 4}}, 5).inverse());

    // equal spans give equal canonical forms
    auto a = FpMatrix::from_rows({{1, 2}, {0, 0}, {3, 1}}, 5).transpose();
    auto b = FpMatrix::from_rows({{2, 4}, {0, 0}, {4, 3}}, 5).transpose();
    CHECK(a.column_space().cols() == 1);  // (3,1) = 3 * (1,2) mod 5
    CHECK(b.column_space().cols() == 1);
    CHECK(a.column_space() == b.column_space());
    auto full = FpMatrix::from_rows({{1, 0}, {2, 1}, {3, 3}}, 5).transpose();
    CHECK(full.column_space().cols() == 2);
}
