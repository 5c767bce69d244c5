#include <doctest.h>

#include <random>

#include "emss/linalg.hpp"
#include "oracles.hpp"

using namespace emss;

TEST_CASE("rank agrees with textbook elimination")
{
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> entry(-3, 3), size(1, 9);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t r = size(rng), c = size(rng);
        std::vector<std::vector<long>> raw(r, std::vector<long>(c));
        for (auto& row : raw)
            for (auto& x : row)
                x = trial % 3 == 0 ? entry(rng) * entry(rng) % 2 : entry(rng);
        for (unsigned p : {2u, 3u, 7u}) {
            Matrix m(Field(p), r, c);
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j < c; ++j)
                    m.add(i, j, raw[i][j]);
            CHECK(rank(m) == oracle::rank_mod(raw, p));
        }
        Matrix q(Field(0), r, c);
        std::vector<std::vector<mpq_class>> rq(r, std::vector<mpq_class>(c));
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) {
                mpq_class v(raw[i][j], 1 + (i + j) % 3);
                v.canonicalize();
                rq[i][j] = v;
                q.set(i, j, Scalar(Field(0), v));
            }
        CHECK(rank(q) == oracle::rank_q(rq));
    }
}

TEST_CASE("kernel and solve")
{
    Field f(0);
    Matrix m(f, 2, 3);
    m.add(0, 0, 1L);
    m.add(0, 1, 2L);
    m.add(1, 2, 1L);
    Matrix k = kernel(m);
    REQUIRE(k.rows() == 1);
    CHECK(is_zero(m.apply(k.row(0))));
    Vector b{Scalar(f, 3), Scalar(f, 5)};
    auto x = solve(m, b);
    REQUIRE(x);
    CHECK(m.apply(*x) == b);
    Matrix z(f, 1, 1);
    CHECK(!solve(z, Vector{Scalar(f, 1)}));
}

TEST_CASE("echelon membership")
{
    Field f(3);
    Matrix m = Matrix::from_rows(f, 3, {{Scalar(f, 1), Scalar(f, 1), Scalar(f, 0)}, {Scalar(f, 2), Scalar(f, 2), Scalar(f, 0)}});
    Echelon e = row_echelon(m);
    CHECK(e.size() == 1);
    CHECK(e.contains({Scalar(f, 2), Scalar(f, 2), Scalar(f, 0)}));
    CHECK(!e.contains({Scalar(f, 1), Scalar(f, 0), Scalar(f, 0)}));
}
