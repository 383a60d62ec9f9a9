#include "doctest.h"
#include "generators.hpp"
#include "poislin/error.hpp"
#include "poislin/ranklocus.hpp"

using namespace poislin;

namespace {

RationalMatrix random_antisymmetric(testing::Gen& g, std::size_t n) {
    RationalMatrix m(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            m[i][j] = g.rational(6);
            m[j][i] = -m[i][j];
        }
    return m;
}

std::vector<Rational> pt(std::initializer_list<int> v) {
    std::vector<Rational> out;
    for (int x : v) out.emplace_back(x);
    return out;
}

}  // namespace

TEST_CASE("structure matrices") {
    auto lin = split_linear(counterexample_structure(AlgebraKind::saff2)).first;
    auto M = structure_matrix(lin);
    auto c = lin.coords();
    auto p = [&](const char* s) { return parse_polynomial(s, c); };
    CHECK(M.dim() == 5);
    CHECK(M.entries[0][1] == p("2*e"));
    CHECK(M.entries[0][2] == p("-2*f"));
    CHECK(M.entries[1][2] == p("h"));
    CHECK(M.entries[0][3] == p("y1"));
    CHECK(M.entries[0][4] == p("-y2"));
    CHECK(M.entries[1][4] == p("y1"));
    CHECK(M.entries[2][3] == p("y2"));
    CHECK(M.entries[1][3].is_zero());
    CHECK(M.entries[3][4].is_zero());
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j) CHECK(M.entries[i][j] == -M.entries[j][i]);

    auto Z = structure_matrix(PolyVector(c, 2));
    for (const auto& row : Z.entries)
        for (const auto& e : row) CHECK(e.is_zero());

    auto E = structure_matrix(counterexample_structure(AlgebraKind::e3));
    auto ce = E.coords;
    auto r = parse_polynomial("x1^2 + x2^2 + x3^2", ce);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) CHECK(E.entries[3 + i][3 + j] == r * E.entries[i][j]);

    CHECK_THROWS_AS(structure_matrix(PolyVector(c, 1)), DimensionError);
}

TEST_CASE("pfaffian squared is the determinant") {
    testing::Gen g(31);
    for (int t = 0; t < 100; ++t) {
        const auto n = static_cast<std::size_t>(2 * g.integer(2, 4));
        auto m = random_antisymmetric(g, n);
        Rational pf = pfaffian(m);
        CHECK(pf * pf == determinant(m));
    }
    CHECK(pfaffian(random_antisymmetric(g, 5)) == 0);
    RationalMatrix j{{0, 1}, {-1, 0}};
    CHECK(pfaffian(j) == 1);
}

TEST_CASE("sub-pfaffians") {
    testing::Gen g(32);
    auto c4 = make_coords({"a", "b", "c", "d"});
    for (int t = 0; t < 10; ++t) {
        auto m = random_antisymmetric(g, 4);
        PolyVector P(c4, 2);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = i + 1; j < 4; ++j) P.add({i, j}, Polynomial(c4, m[i][j]));
        auto ideal = sub_pfaffians_rank2(structure_matrix(P));
        REQUIRE(ideal.generators.size() == 1);
        CHECK(ideal.generators[0] == Polynomial(c4, pfaffian(m)));
    }

    auto lin = split_linear(counterexample_structure(AlgebraKind::saff2)).first;
    auto c = lin.coords();
    auto ideal = sub_pfaffians_rank2(structure_matrix(lin));
    CHECK(ideal.generators.size() == 5);
    std::vector<Polynomial> y_zero{Polynomial::variable(c, 0), Polynomial::variable(c, 1), Polynomial::variable(c, 2),
                                   Polynomial(c), Polynomial(c)};
    CHECK(ideal.vanishes_on(y_zero));

    auto zero = sub_pfaffians_rank2(structure_matrix(PolyVector(c, 2)));
    for (const auto& p : zero.generators) CHECK(p.is_zero());
}

TEST_CASE("rank at points") {
    auto saff = counterexample_structure(AlgebraKind::saff2);
    auto saff_lin = split_linear(saff).first;
    CHECK(rank_at_point(saff_lin, pt({1, 0, 0, 0, 0})) == 2);
    CHECK(rank_at_point(saff, pt({1, 0, 0, 0, 0})) == 4);
    CHECK(rank_at_point(saff, pt({0, 0, 0, 0, 0})) == 0);

    auto e3 = counterexample_structure(AlgebraKind::e3);
    auto e3_lin = split_linear(e3).first;
    CHECK(rank_at_point(e3_lin, pt({1, 0, 0, 0, 0, 0})) == 2);
    CHECK(rank_at_point(e3, pt({1, 0, 0, 0, 0, 0})) == 4);
    CHECK(rank_at_point(e3, pt({0, 0, 0, 0, 0, 0})) == 0);

    CHECK_THROWS_AS(rank_at_point(e3, pt({1, 0})), DimensionError);
}

TEST_CASE("rank is even and invariant under linear changes of coordinates") {
    testing::Gen g(33);
    auto saff = counterexample_structure(AlgebraKind::saff2);
    auto c = saff.coords();
    for (int t = 0; t < 20; ++t) {
        std::vector<Rational> p;
        for (std::size_t i = 0; i < 5; ++i) p.push_back(g.rational(3));
        const auto r = rank_at_point(saff, p);
        CHECK(r % 2 == 0);

        // u = L x with L unipotent upper triangular plus a diagonal scaling
        std::vector<Polynomial> imgs;
        RationalMatrix L(5, std::vector<Rational>(5));
        for (std::size_t i = 0; i < 5; ++i) {
            L[i][i] = g.nonzero_rational(3);
            for (std::size_t j = i + 1; j < 5; ++j) L[i][j] = g.rational(2);
            Polynomial img(c);
            for (std::size_t j = 0; j < 5; ++j) img += Polynomial::variable(c, j) * L[i][j];
            imgs.push_back(img);
        }
        auto moved = pushforward(FormalDiffeo(imgs, 3), saff, 3);
        std::vector<Rational> q(5);
        for (std::size_t i = 0; i < 5; ++i)
            for (std::size_t j = 0; j < 5; ++j) q[i] += L[i][j] * p[j];
        CHECK(rank_at_point(moved, q) == r);
    }
}

TEST_CASE("saff2 cone and generic points") {
    auto saff = counterexample_structure(AlgebraKind::saff2);
    auto ideal = sub_pfaffians_rank2(structure_matrix(saff));
    auto st = make_coords({"s", "t"});
    std::vector<Polynomial> cone{parse_polynomial("2*s*t", st), parse_polynomial("s^2", st),
                                 parse_polynomial("-t^2", st), Polynomial(st), Polynomial(st)};
    CHECK(ideal.vanishes_on(cone));
    testing::Gen g(34);
    for (int t = 0; t < 20; ++t) {
        auto h = g.rational(4), e = g.rational(4), f = g.rational(4);
        if (h * h + 4 * e * f == 0) continue;
        std::vector<Rational> p{h, e, f, 0, 0};
        CHECK_FALSE(ideal.vanishes_at(p));
    }
}

TEST_CASE("counterexample reports") {
    for (auto kind : {AlgebraKind::saff2, AlgebraKind::e3}) {
        auto r = verify_counterexample(kind);
        CHECK(r.passed());
        auto text = r.to_string();
        CHECK(text.find("FAIL") == std::string::npos);
        CHECK(text.find("PASS " + r.id + " counterexample") != std::string::npos);
    }
    CHECK_THROWS_AS(verify_counterexample(AlgebraKind::gl), PreconditionError);
}
