#include "doctest.h"
#include "generators.hpp"
#include "poislin/error.hpp"
#include "poislin/liealg.hpp"
#include "poislin/linearizer.hpp"

using namespace poislin;

namespace {

struct Aff {
    std::size_t n;
    Coords c;
    PolyVector linear;
    std::vector<PolyVector> X;
    std::vector<Polynomial> F;

    explicit Aff(std::size_t rank)
        : n(rank),
          c(aff_coords(rank)),
          linear(aff_linear_poisson(c, rank)),
          X(casimir_vector_fields(c, rank)),
          F(gl_casimirs(c, rank).funcs) {}

    Polynomial p(const char* text) const { return parse_polynomial(text, c); }
};

Polynomial zpoly(std::size_t n, const char* text) { return parse_polynomial(text, casimir_space(n)); }

// x-x and x-y brackets linear and standard, nothing else constrained.
bool semi_linear(const PolyVector& pi, std::size_t n) {
    const auto standard = aff_linear_poisson(pi.coords(), n);
    for (std::size_t i = 0; i < n * n; ++i)
        for (std::size_t j = 0; j < n * n + n; ++j)
            if (!(pi.component({i, j}) == standard.component({i, j}))) return false;
    return true;
}

}  // namespace

TEST_CASE("split_linear") {
    Aff a(2);
    auto [l0, t0] = split_linear(a.linear);
    CHECK(l0 == a.linear);
    CHECK(t0.is_zero());

    auto w = wedge(a.X[0], a.X[1]);
    auto [l1, t1] = split_linear(a.linear + w);
    CHECK(l1 == a.linear);
    CHECK(t1 == w);

    auto s = LieAlgebraSpec::make({AlgebraKind::saff2, 2});
    auto lin = standard_linear_poisson(s);
    PolyVector tail(s.coords(), 2);
    tail.add({3, 4}, parse_polynomial("h^2 + 4*e*f", s.coords()));
    auto [l2, t2] = split_linear(lin + tail);
    CHECK(l2 == lin);
    CHECK(t2 == tail);

    PolyVector bad = a.linear;
    bad.add({4, 5}, a.p("1 + y1^2"));
    CHECK_THROWS_AS(split_linear(bad), PreconditionError);
}

TEST_CASE("semi_linearize leaves semi-linear input alone") {
    Aff a(2);
    auto pi = a.linear + scale(a.F[0], wedge(a.X[0], a.X[1]));
    auto semi = semi_linearize(pi, 2, 6);
    CHECK(semi.psi.is_identity());
    CHECK(semi.psi_inverse.is_identity());
    CHECK(semi.steps.empty());
    CHECK(semi.pi == pi);
}

TEST_CASE("semi_linearize recovers a scrambled aff(1)") {
    Aff a(1);
    // x -> x + y^2 preserves {x, y} = y; the second map does not
    for (auto img : {std::vector<const char*>{"x11 + y1^2", "y1"}, std::vector<const char*>{"x11 + x11*y1", "y1 + x11^2"}}) {
        FormalDiffeo scramble({a.p(img[0]), a.p(img[1])}, 7);
        auto pi = pushforward(scramble, a.linear, 6);
        auto semi = semi_linearize(pi, 1, 6);
        CHECK(semi.pi == a.linear);
        CHECK(pushforward(semi.psi, semi.psi_inverse, pi, 6) == semi.pi);
    }
    FormalDiffeo moving({a.p("x11 + x11*y1"), a.p("y1 + x11^2")}, 7);
    CHECK_FALSE(pushforward(moving, a.linear, 6) == a.linear);
}

TEST_CASE("semi_linearize on scrambled aff(2) structures") {
    testing::Gen g(21);
    Aff a(2);
    for (int t = 0; t < 3; ++t) {
        auto tail = recompose(g.tail(2, 2, 1, 6), a.c, 6);
        auto pi = pushforward(g.near_identity(a.c, 2, 2, 6), a.linear + tail, 6);
        auto semi = semi_linearize(pi, 2, 6);
        CHECK(semi_linear(semi.pi, 2));
        CHECK(schouten(semi.pi, semi.pi, 6).is_zero());
        CHECK(pushforward(semi.psi, semi.psi_inverse, pi, 6) == semi.pi);
        CHECK(compose(semi.psi, semi.psi_inverse).is_identity());
        // y0 = F_1 acts on y by the identity
        for (std::size_t r = 4; r < 6; ++r)
            CHECK(poisson_bracket(semi.pi, a.F[0], Polynomial::variable(a.c, r)) == Polynomial::variable(a.c, r));
    }
}

TEST_CASE("semi_linearize preconditions") {
    Aff a(2);
    auto s = LieAlgebraSpec::make({AlgebraKind::gl, 2});
    CHECK_THROWS_AS(semi_linearize(standard_linear_poisson(s), 2, 4), DimensionError);
    CHECK_THROWS_AS(semi_linearize(a.linear * Rational(2), 2, 4), PreconditionError);
    PolyVector not_poisson = a.linear;
    not_poisson.add({0, 4}, a.p("x11^2"));
    CHECK_THROWS_AS(semi_linearize(not_poisson, 2, 4), PreconditionError);
}

TEST_CASE("decompose_tail examples") {
    Aff a(2);
    auto w = wedge(a.X[0], a.X[1]);
    auto one = decompose_tail(w, 2, 8);
    CHECK(one.phi(0, 1) == zpoly(2, "1"));
    CHECK(one.phi(1, 0) == zpoly(2, "-1"));
    CHECK(decompose_tail(scale(a.F[0], w), 2, 8).phi(0, 1) == zpoly(2, "z1"));
    CHECK(decompose_tail(PolyVector(a.c, 2), 2, 8).is_zero());

    PolyVector stray(a.c, 2);
    stray.add({4, 5}, a.p("y1^2*x11"));
    CHECK_THROWS_AS(decompose_tail(stray, 2, 8), TailSpanError);
    PolyVector mixed(a.c, 2);
    mixed.add({0, 5}, a.p("y1^2"));
    CHECK_THROWS_AS(decompose_tail(mixed, 2, 8), PreconditionError);

    Aff b(1);
    CHECK(decompose_tail(PolyVector(b.c, 2), 1, 6).is_zero());
}

TEST_CASE("decompose_tail inverts recompose") {
    testing::Gen g(22);
    Aff a(2);
    for (int t = 0; t < 20; ++t) {
        auto phi = g.tail(2, 3, 2, 8);
        CHECK(decompose_tail(recompose(phi, a.c, 8), 2, 8) == phi);
    }
    Aff b(3);
    for (int t = 0; t < 3; ++t) {
        auto phi = exterior_derivative(g.one_form(3, 2, 1, 2), 7);
        CHECK(decompose_tail(recompose(phi, b.c, 7), 3, 7) == phi);
    }
}

TEST_CASE("check_closed") {
    TailDecomposition cyc(3, 6);
    cyc.set(0, 1, zpoly(3, "z3"));
    cyc.set(1, 2, zpoly(3, "z1"));
    cyc.set(2, 0, zpoly(3, "z2"));
    CHECK_FALSE(check_closed(cyc));

    TailDecomposition constant(3, 6);
    constant.set(0, 1, zpoly(3, "2"));
    constant.set(0, 2, zpoly(3, "-1/3"));
    CHECK(check_closed(constant));

    testing::Gen g(23);
    for (std::size_t n = 2; n <= 4; ++n)
        for (int t = 0; t < 10; ++t) CHECK(check_closed(exterior_derivative(g.one_form(n, 3, 0, 4), 8)));
}

TEST_CASE("primitive examples") {
    TailDecomposition unit(2, 6);
    unit.set(0, 1, zpoly(2, "1"));
    auto a = primitive(unit);
    CHECK(a.alpha[0] == zpoly(2, "-1/2*z2"));
    CHECK(a.alpha[1] == zpoly(2, "1/2*z1"));

    TailDecomposition lin(2, 6);
    lin.set(0, 1, zpoly(2, "z1"));
    auto b = primitive(lin);
    CHECK(b.alpha[0] == zpoly(2, "-1/3*z1*z2"));
    CHECK(b.alpha[1] == zpoly(2, "1/3*z1^2"));

    auto zero = primitive(TailDecomposition(3, 6));
    for (const auto& p : zero.alpha) CHECK(p.is_zero());

    TailDecomposition cyc(3, 6);
    cyc.set(0, 1, zpoly(3, "z3"));
    cyc.set(1, 2, zpoly(3, "z1"));
    cyc.set(2, 0, zpoly(3, "z2"));
    CHECK_THROWS_AS(primitive(cyc), PreconditionError);
}

TEST_CASE("primitive of random exact forms") {
    testing::Gen g(24);
    for (int t = 0; t < 60; ++t) {
        const auto n = static_cast<std::size_t>(g.integer(2, 4));
        auto phi = exterior_derivative(g.one_form(n, 3, 1, 4), 8);
        CHECK(exterior_derivative(primitive(phi), 8) == phi);
    }
}

TEST_CASE("homotopy field") {
    Aff a(2);
    CHECK(build_homotopy_field(PrimitiveOneForm{{zpoly(2, "0"), zpoly(2, "0")}}, a.c, 2, 8).is_zero());

    TailDecomposition unit(2, 8);
    unit.set(0, 1, zpoly(2, "1"));
    auto Y = build_homotopy_field(primitive(unit), a.c, 2, 8);
    // alpha = (-z2/2, z1/2), Y = -sum alpha_i(F) X_i
    auto expect = (scale(a.F[1], a.X[0]) - scale(a.F[0], a.X[1])) * Rational(1, 2);
    CHECK(Y == expect);
    auto w = wedge(a.X[0], a.X[1]);
    CHECK(schouten(Y, a.linear) == w * Rational(-1));
    CHECK(schouten(Y, w).is_zero());

    testing::Gen g(25);
    for (int t = 0; t < 5; ++t) {
        auto phi = g.tail(2, 3, 2, 8);
        auto tail = recompose(phi, a.c, 8);
        auto Yr = build_homotopy_field(primitive(phi), a.c, 2, 8);
        CHECK(schouten(Yr, a.linear, 8) == tail * Rational(-1));
        CHECK(schouten(Yr, tail, 8).is_zero());
        // the flow of Y carries Pi^(1) to Pi^(1) + Pi~
        CHECK(pushforward_along_flow(Yr, 1, a.linear, 8) == a.linear + tail);
    }

    Aff b(1);
    CHECK(build_homotopy_field(PrimitiveOneForm{{zpoly(1, "0")}}, b.c, 1, 6).is_zero());
}

TEST_CASE("the solve chain is linear in the tail") {
    testing::Gen g(26);
    Aff a(2);
    for (int t = 0; t < 5; ++t) {
        auto tail = recompose(g.tail(2, 2, 2, 8), a.c, 8);
        Rational lambda = g.nonzero_rational(4);
        auto phi = decompose_tail(tail, 2, 8), phi_l = decompose_tail(tail * lambda, 2, 8);
        CHECK(phi_l.phi(0, 1) == phi.phi(0, 1) * lambda);
        auto al = primitive(phi), al_l = primitive(phi_l);
        for (std::size_t i = 0; i < 2; ++i) CHECK(al_l.alpha[i] == al.alpha[i] * lambda);
        CHECK(build_homotopy_field(al_l, a.c, 2, 8) == build_homotopy_field(al, a.c, 2, 8) * lambda);
    }
}

TEST_CASE("linearize") {
    Aff a(2);
    auto id = linearize(a.linear, 2, 6);
    CHECK(id.psi.is_identity());
    CHECK(id.verified());
    CHECK(id.report().find("degree 6 : residual 0") != std::string::npos);

    auto r = linearize(a.linear + scale(a.F[0], wedge(a.X[0], a.X[1])), 2, 8);
    CHECK(r.verified());
    CHECK(r.tail.phi(0, 1) == zpoly(2, "z1"));
    CHECK(r.residual_terms.size() == 9);

    testing::Gen g(27);
    for (int t = 0; t < 3; ++t) {
        auto tail = recompose(g.tail(2, 2, 1, 6), a.c, 6);
        auto pi = pushforward(g.near_identity(a.c, 2, 3, 6), a.linear + tail, 6);
        auto res = linearize(pi, 2, 6);
        CHECK(res.verified());
        CHECK(pushforward(res.psi, pi, 6) == a.linear);
    }
}

TEST_CASE("linearize on aff(1) and aff(3)") {
    testing::Gen g(28);
    Aff a(1);
    for (int t = 0; t < 5; ++t) {
        auto pi = pushforward(g.near_identity(a.c, 2, 3, 7), a.linear, 7);
        auto res = linearize(pi, 1, 7);
        CHECK(res.semi.pi == a.linear);
        CHECK(res.tail.is_zero());
        CHECK(res.verified());
    }

    Aff b(3);
    TailDecomposition phi(3, 5);
    phi.set(0, 1, zpoly(3, "1"));
    auto res = linearize(b.linear + recompose(phi, b.c, 5), 3, 5);
    CHECK(res.verified());
    CHECK(res.tail == phi);
}
