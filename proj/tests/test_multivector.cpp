#include "doctest.h"
#include "generators.hpp"
#include "poislin/diffeo.hpp"
#include "poislin/error.hpp"
#include "poislin/liealg.hpp"
#include "poislin/multivector.hpp"

using namespace poislin;

namespace {

int graded_sign(unsigned p, unsigned q) { return ((p + 1) * (q + 1)) % 2 == 0 ? 1 : -1; }  // (-1)^((p-1)(q-1))

Coords plane() { return make_coords({"x"}, {"y1", "y2"}); }

PolyVector vf(const Coords& c, std::initializer_list<const char*> comps) {
    std::vector<Polynomial> v;
    for (auto s : comps) v.push_back(parse_polynomial(s, c));
    return PolyVector::vector_field(v);
}

}  // namespace

TEST_CASE("wedge examples") {
    auto c = plane();
    auto d1 = PolyVector::basis(c, 1), d2 = PolyVector::basis(c, 2);
    auto unit = wedge(d1, d2);
    CHECK(unit.grade() == 2);
    CHECK(unit.components().size() == 1);
    CHECK(unit.component({1, 2}) == Polynomial(c, Rational(1)));
    CHECK(unit.component({2, 1}) == Polynomial(c, Rational(-1)));

    testing::Gen g(5);
    for (int t = 0; t < 10; ++t) {
        auto v = g.multivector(c, 1, 3, 2, 0, 2);
        CHECK(wedge(v, v).is_zero());
    }

    auto a = vf(c, {"0", "y1", "0"}), b = vf(c, {"0", "0", "y2"});
    PolyVector expect(c, 2);
    expect.add({1, 2}, parse_polynomial("y1*y2", c));
    CHECK(wedge(a, b) == expect);
}

TEST_CASE("wedge is graded commutative and overflows to zero") {
    testing::Gen g(6);
    auto c = make_coords({"a", "b", "c", "d"});
    for (int t = 0; t < 30; ++t) {
        unsigned p = static_cast<unsigned>(g.integer(0, 2)), q = static_cast<unsigned>(g.integer(0, 2));
        auto P = g.multivector(c, p, 3, 2, 0, 2), Q = g.multivector(c, q, 3, 2, 0, 2);
        CHECK(wedge(Q, P) == wedge(P, Q) * Rational((p * q) % 2 ? -1 : 1));
    }
    auto P = g.multivector(c, 3, 2, 2, 0, 1), Q = g.multivector(c, 2, 2, 2, 0, 1);
    CHECK(wedge(P, Q).is_zero());
}

TEST_CASE("schouten on vector fields and functions") {
    auto c = make_coords({"y"});
    auto Y1 = vf(c, {"y"}), Y2 = vf(c, {"y^2"});
    CHECK(schouten(Y1, Y2) == vf(c, {"y^2"}));

    auto c3 = plane();
    auto X = vf(c3, {"x*y1", "y2^2", "3"});
    auto f = parse_polynomial("x^2*y2 + y1", c3);
    CHECK(schouten(X, PolyVector::function(f)).scalar() == X.apply(f));
    CHECK(schouten(PolyVector::function(f), X).scalar() == -X.apply(f));
}

TEST_CASE("schouten normalization: [Pi,Pi](df,dg,dh) is twice the cyclic sum") {
    testing::Gen g(7);
    auto c = make_coords({"a", "b", "c"});
    for (int t = 0; t < 10; ++t) {
        auto pi = g.multivector(c, 2, 3, 2, 1, 2);
        auto J = schouten(pi, pi);
        auto a = Polynomial::variable(c, 0), b = Polynomial::variable(c, 1), d = Polynomial::variable(c, 2);
        auto cyc = poisson_bracket(pi, a, poisson_bracket(pi, b, d)) + poisson_bracket(pi, b, poisson_bracket(pi, d, a)) +
                   poisson_bracket(pi, d, poisson_bracket(pi, a, b));
        CHECK(J.component({0, 1, 2}) == cyc * Rational(2));
    }
}

TEST_CASE("graded antisymmetry on random multivectors") {
    testing::Gen g(8);
    auto c = make_coords({"a", "b", "c", "d"});
    for (int t = 0; t < 60; ++t) {
        unsigned p = static_cast<unsigned>(g.integer(0, 3)), q = static_cast<unsigned>(g.integer(0, 3));
        if (p + q == 0) continue;
        auto P = g.multivector(c, p, 2, 2, 0, 2), Q = g.multivector(c, q, 2, 2, 0, 2);
        CHECK(schouten(P, Q) == schouten(Q, P) * Rational(-graded_sign(p, q)));
    }
}

TEST_CASE("graded Jacobi identity on random triples") {
    testing::Gen g(9);
    auto c = make_coords({"a", "b", "c", "d"});
    int checked = 0;
    while (checked < 40) {
        unsigned p = static_cast<unsigned>(g.integer(1, 2)), q = static_cast<unsigned>(g.integer(0, 2)),
                 r = static_cast<unsigned>(g.integer(0, 2));
        if (p + q + r > 5 || q + r == 0) continue;
        auto P = g.multivector(c, p, 2, 2, 0, 2), Q = g.multivector(c, q, 2, 2, 0, 2), R = g.multivector(c, r, 2, 2, 0, 2);
        // [P,[Q,R]] = [[P,Q],R] + (-1)^((p-1)(q-1)) [Q,[P,R]]
        auto lhs = schouten(P, schouten(Q, R));
        auto rhs = schouten(schouten(P, Q), R) + schouten(Q, schouten(P, R)) * Rational(graded_sign(p, q));
        CHECK(lhs == rhs);
        ++checked;
    }
}

TEST_CASE("hamiltonian vector fields") {
    auto spec = LieAlgebraSpec::make({AlgebraKind::aff, 2});
    auto pi = standard_linear_poisson(spec);
    auto c = spec.coords();
    CHECK(hamiltonian_vf(pi, Polynomial(c, Rational(7))).is_zero());
    auto F1 = parse_polynomial("x11 + x22", c);
    CHECK(hamiltonian_vf(pi, F1) == vf(c, {"0", "0", "0", "0", "y1", "y2"}));

    testing::Gen g(10);
    for (int t = 0; t < 20; ++t) {
        auto f = g.polynomial(c, 3, 0, 2), h = g.polynomial(c, 3, 0, 2);
        // [X_f, Pi] = 0 for Poisson Pi
        CHECK(schouten(hamiltonian_vf(pi, f), pi).is_zero());
        // X_f(h) = -X_h(f)
        CHECK(hamiltonian_vf(pi, f).apply(h) == -hamiltonian_vf(pi, h).apply(f));
        // X_{fh} = f X_h + h X_f
        CHECK(hamiltonian_vf(pi, f * h) == scale(f, hamiltonian_vf(pi, h)) + scale(h, hamiltonian_vf(pi, f)));
    }
}

TEST_CASE("hamiltonian_vf of a semi-linear y0 coordinate") {
    // {y0, y_r} = y_r on a structure whose x-brackets are nonlinear elsewhere
    auto c = make_coords({"y0"}, {"y1", "y2"});
    PolyVector pi(c, 2);
    pi.add({0, 1}, parse_polynomial("y1", c));
    pi.add({0, 2}, parse_polynomial("y2", c));
    pi.add({1, 2}, parse_polynomial("y0^2 + y1*y2", c));
    auto X = hamiltonian_vf(pi, Polynomial::variable(c, 0));
    CHECK(X.apply(Polynomial::variable(c, 1)) == Polynomial::variable(c, 1));
    CHECK(X.apply(Polynomial::variable(c, 2)) == Polynomial::variable(c, 2));
}

TEST_CASE("formal_flow examples") {
    auto c = make_coords({"y"});
    CHECK(formal_flow(PolyVector(c, 1), 1, 5).is_identity());
    auto Y = vf(c, {"y^2"});
    auto flow = formal_flow(Y, 1, 3);
    CHECK(flow.image(0) == parse_polynomial("y + y^2 + y^3", c));
    CHECK(formal_flow(Y, Rational(1, 2), 4).image(0) == parse_polynomial("y + 1/2*y^2 + 1/4*y^3 + 1/8*y^4", c));
    CHECK_THROWS_AS(formal_flow(vf(c, {"y"}), 1, 3), PreconditionError);
    CHECK_THROWS_AS(formal_flow(vf(c, {"1 + y^2"}), 1, 3), PreconditionError);
}

TEST_CASE("flow group law") {
    testing::Gen g(12);
    auto c = plane();
    for (int t = 0; t < 5; ++t) {
        auto Y = g.multivector(c, 1, 3, 2, 2, 3);
        auto fwd = formal_flow(Y, 1, 6), back = formal_flow(Y, -1, 6);
        CHECK(compose(fwd, back).is_identity());
        CHECK(compose(back, fwd).is_identity());
        CHECK(fwd.inverse().images() == back.images());
    }
}

TEST_CASE("pushforward examples") {
    auto spec = LieAlgebraSpec::make({AlgebraKind::aff, 1});
    auto c = spec.coords();
    auto pi = standard_linear_poisson(spec);
    CHECK(pushforward(FormalDiffeo::identity(c, 4), pi, 4) == pi);

    std::vector<Polynomial> scale2{Polynomial::variable(c, 0), parse_polynomial("2*y1", c)};
    CHECK(pushforward(FormalDiffeo(scale2, 4), pi, 4) == pi);

    CHECK_THROWS_AS(pushforward(FormalDiffeo::identity(c, 3), pi, 4), PreconditionError);
}

TEST_CASE("pushforward is functorial") {
    testing::Gen g(13);
    auto c = plane();
    const unsigned N = 5;
    for (int t = 0; t < 4; ++t) {
        auto P = g.multivector(c, 2, 3, 3, 1, 3);
        auto mk = [&] {
            std::vector<Polynomial> imgs;
            for (std::size_t i = 0; i < 3; ++i)
                imgs.push_back(Polynomial::variable(c, i) * Rational(g.integer(1, 2)) + g.polynomial(c, 2, 2, 3));
            return FormalDiffeo(imgs, N);
        };
        auto a = mk(), b = mk();
        CHECK(pushforward(compose(a, b), P, N) == pushforward(a, pushforward(b, P, N), N));
    }
}

TEST_CASE("pushforward along a flow matches the Lie series") {
    testing::Gen g(14);
    auto c = plane();
    const unsigned N = 6;
    for (int t = 0; t < 6; ++t) {
        auto Y = g.multivector(c, 1, 3, 2, 2, 3);
        auto P = g.multivector(c, static_cast<unsigned>(g.integer(0, 2)), 3, 3, 0, 3);
        Rational s = g.nonzero_rational(2);
        CHECK(pushforward(formal_flow(Y, s, N + 1), P, N) == pushforward_along_flow(Y, s, P, N));
    }
}

TEST_CASE("first-order term of the flow pushforward is the Schouten bracket") {
    // Q(s) = pushforward along flow(-s) is polynomial in s; recover its
    // linear coefficient by exact interpolation at s = h, 2h, ..., (N+1)h.
    testing::Gen g(15);
    auto c = plane();
    const unsigned N = 6;
    for (int t = 0; t < 6; ++t) {
        auto Y = g.multivector(c, 1, 2, 2, 2, 2);
        auto P = g.multivector(c, 2, 2, 2, 1, 2);
        const Rational h(1, 7);
        const int K = N + 1;
        PolyVector a1(c, 2);
        for (int i = 1; i <= K; ++i) {
            const Rational si = h * i;
            Rational w = 1 / si;
            for (int j = 1; j <= K; ++j)
                if (j != i) w *= (h * j) / (h * j - si);
            a1 += (pushforward(formal_flow(Y, -si, N + 1), P, N) - P) * w;
        }
        CHECK(a1 == schouten(Y, P, N));
    }
}
