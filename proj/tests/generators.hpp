#pragma once

// Seeded random generators shared by the property tests.

#include <random>
#include <vector>

#include "poislin/diffeo.hpp"
#include "poislin/linearizer.hpp"
#include "poislin/multivector.hpp"
#include "poislin/polynomial.hpp"

namespace poislin::testing {

class Gen {
public:
    explicit Gen(unsigned seed) : rng_(seed) {}

    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

    Rational rational(int span = 5) {
        Rational r(mpz_class(integer(-span, span)), mpz_class(integer(1, 3)));
        r.canonicalize();
        return r;
    }

    Rational nonzero_rational(int span = 5) {
        Rational r = 0;
        while (is_zero(r)) r = rational(span);
        return r;
    }

    Monomial monomial(std::size_t vars, int min_deg, int max_deg) {
        Monomial m;
        int d = integer(min_deg, max_deg);
        for (int k = 0; k < d; ++k) {
            auto v = static_cast<std::size_t>(integer(0, static_cast<int>(vars) - 1));
            m.set(v, m[v] + 1);
        }
        return m;
    }

    Polynomial polynomial(const Coords& c, int terms, int min_deg, int max_deg) {
        std::vector<Term> ts;
        for (int t = 0; t < terms; ++t) ts.push_back({monomial(c->size(), min_deg, max_deg), rational()});
        return Polynomial::from_terms(c, std::move(ts));
    }

    PolyVector multivector(const Coords& c, unsigned grade, int comps, int terms, int min_deg, int max_deg) {
        PolyVector p(c, grade);
        for (int k = 0; k < comps; ++k) {
            std::vector<std::size_t> idx;
            while (idx.size() < grade) {
                auto i = static_cast<std::size_t>(integer(0, static_cast<int>(c->size()) - 1));
                bool dup = false;
                for (auto j : idx) dup = dup || j == i;
                if (!dup) idx.push_back(i);
            }
            p.add(idx, polynomial(c, terms, min_deg, max_deg));
        }
        return p;
    }

    /// Identity linear part plus a few random terms of degree 2..max_deg per image.
    FormalDiffeo near_identity(const Coords& c, int terms, int max_deg, unsigned truncation) {
        std::vector<Polynomial> imgs;
        for (std::size_t i = 0; i < c->size(); ++i)
            imgs.push_back(Polynomial::variable(c, i) + polynomial(c, integer(0, terms), 2, max_deg));
        return FormalDiffeo(std::move(imgs), truncation);
    }

    /// Random 1-form on z_1..z_n with coefficients of degree min_deg..max_deg.
    PrimitiveOneForm one_form(std::size_t n, int terms, int min_deg, int max_deg) {
        const Coords z = casimir_space(n);
        PrimitiveOneForm out;
        for (std::size_t i = 0; i < n; ++i) out.alpha.push_back(polynomial(z, terms, min_deg, max_deg));
        return out;
    }

    /// Random phi_ij in z with z-degree <= max_deg (n = 2 makes every phi closed).
    TailDecomposition tail(std::size_t n, int terms, int max_deg, unsigned truncation) {
        TailDecomposition out(n, truncation);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) out.set(i, j, polynomial(out.z(), terms, 0, max_deg));
        return out;
    }

    std::mt19937& engine() { return rng_; }

private:
    std::mt19937 rng_;
};

}  // namespace poislin::testing
