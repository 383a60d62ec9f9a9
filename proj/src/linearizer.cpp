#include "poislin/linearizer.hpp"

#include <functional>
#include <set>

#include "poislin/error.hpp"
#include "poislin/liealg.hpp"
#include "poislin/linsolve.hpp"

namespace poislin {

namespace {

using Weight = std::vector<int>;

// Equation label: a multivector component and a monomial of its coefficient.
struct EquationKey {
    Blade blade;
    Monomial mono;
    friend bool operator<(const EquationKey& a, const EquationKey& b) {
        if (a.blade != b.blade) return BladeOrder{}(a.blade, b.blade);
        return b.mono < a.mono;
    }
};

void for_each_monomial(std::size_t vars, unsigned degree, const std::function<void(const Monomial&)>& fn) {
    Monomial m;
    std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned left) {
        if (i + 1 == vars) {
            m.set(i, left);
            fn(m);
            m.set(i, 0);
            return;
        }
        for (unsigned e = left + 1; e-- > 0;) {
            m.set(i, e);
            rec(i + 1, left - e);
        }
        m.set(i, 0);
    };
    if (vars == 0) {
        if (degree == 0) fn(m);
        return;
    }
    rec(0, degree);
}

// Diagonal-torus weights on the aff(n) ambient: x_pq -> e_p - e_q, y_r -> e_r.
class TorusWeights {
public:
    explicit TorusWeights(std::size_t n) : n_(n) {
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = 0; q < n; ++q) {
                Weight w(n);
                w[p] += 1;
                w[q] -= 1;
                coord_.push_back(std::move(w));
            }
        for (std::size_t r = 0; r < n; ++r) {
            Weight w(n);
            w[r] = 1;
            coord_.push_back(std::move(w));
        }
    }

    Weight of(const Monomial& m) const {
        Weight w(n_);
        for (std::size_t v = 0; v < coord_.size(); ++v)
            if (m[v])
                for (std::size_t t = 0; t < n_; ++t) w[t] += static_cast<int>(m[v]) * coord_[v][t];
        return w;
    }

    Weight of(const Monomial& m, Blade blade) const {
        Weight w = of(m);
        for (auto i : blade_indices(blade))
            for (std::size_t t = 0; t < n_; ++t) w[t] -= coord_[i][t];
        return w;
    }

private:
    std::size_t n_;
    std::vector<Weight> coord_;
};

bool constrained_blade(Blade b, std::size_t nx) {
    for (auto i : blade_indices(b))
        if (i < nx) return true;
    return false;
}

// Degree-k part of the x-x and x-y components.
PolyVector semi_defect(const PolyVector& pi, unsigned k, std::size_t nx) {
    PolyVector out(pi.coords(), 2);
    for (const auto& [blade, coef] : pi.components()) {
        if (!constrained_blade(blade, nx)) continue;
        Polynomial part = coef.homogeneous_part(k);
        if (!part.is_zero()) out.add(blade, part);
    }
    return out;
}

// Solves [V, linear] = defect on the x-x and x-y components for a
// homogeneous V of degree k, one torus-weight block at a time.
PolyVector solve_homological(const PolyVector& linear, const PolyVector& defect, unsigned k, std::size_t n) {
    const Coords& c = linear.coords();
    const std::size_t m = c->size(), nx = n * n;
    const TorusWeights weights(n);

    std::map<Weight, std::map<EquationKey, Rational>> rhs_by_weight;
    for (const auto& [blade, coef] : defect.components())
        for (const auto& t : coef.terms()) rhs_by_weight[weights.of(t.mono, blade)][{blade, t.mono}] = t.coef;

    std::map<Weight, std::vector<std::pair<std::size_t, Monomial>>> columns;
    for (std::size_t i = 0; i < m; ++i)
        for_each_monomial(m, k, [&](const Monomial& mono) {
            Weight w = weights.of(mono, make_blade(std::vector<std::size_t>{i}));
            if (rhs_by_weight.count(w)) columns[w].emplace_back(i, mono);
        });

    std::vector<Polynomial> field(m, Polynomial(c));
    for (const auto& [w, rhs] : rhs_by_weight) {
        const auto& cols = columns[w];
        std::map<EquationKey, SparseSystem::Row> rows;
        for (const auto& [key, value] : rhs) rows[key];
        for (std::size_t col = 0; col < cols.size(); ++col) {
            std::vector<Polynomial> comps(m, Polynomial(c));
            comps[cols[col].first] = Polynomial::monomial(c, cols[col].second);
            PolyVector image = schouten(PolyVector::vector_field(comps), linear);
            for (const auto& [blade, coef] : image.components()) {
                if (!constrained_blade(blade, nx)) continue;
                for (const auto& t : coef.terms()) rows[{blade, t.mono}].emplace_back(col, t.coef);
            }
        }
        SparseSystem sys(cols.size());
        for (auto& [key, row] : rows) {
            auto it = rhs.find(key);
            sys.add_equation(std::move(row), it == rhs.end() ? Rational(0) : it->second);
        }
        auto sol = sys.solve();
        if (!sol)
            throw InternalError("semi-linearization: homological equation at degree " + std::to_string(k) +
                                " is inconsistent");
        for (std::size_t col = 0; col < cols.size(); ++col)
            if (!is_zero((*sol)[col])) field[cols[col].first] += Polynomial::monomial(c, cols[col].second, (*sol)[col]);
    }
    return PolyVector::vector_field(field);
}

void require_aff_ambient(const Coords& c, std::size_t n, const char* op) {
    if (n < 1 || c->size() != n * n + n)
        throw DimensionError(std::string(op) + ": ambient of dimension " + std::to_string(c->size()) +
                             " is not aff(" + std::to_string(n) + ")");
}

// z^beta(F) X_i ^ X_j for every (i < j, beta) of total degree D.
struct SpanBasis {
    std::vector<std::pair<std::size_t, std::size_t>> pair;
    std::vector<Monomial> beta;
    std::vector<PolyVector> element;
};

SpanBasis casimir_span(std::size_t n, unsigned D, const std::vector<Polynomial>& F,
                       const std::vector<std::vector<PolyVector>>& W) {
    SpanBasis out;
    const Coords& c = F.front().coords();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const unsigned base = static_cast<unsigned>(i + j + 2);
            if (base > D) continue;
            // beta with sum_k (k+1) beta_k = D - base
            Monomial beta;
            std::function<void(std::size_t, unsigned, const Polynomial&)> rec = [&](std::size_t k, unsigned left,
                                                                                     const Polynomial& value) {
                if (k == n) {
                    if (left == 0) {
                        out.pair.emplace_back(i, j);
                        out.beta.push_back(beta);
                        out.element.push_back(scale(value, W[i][j]));
                    }
                    return;
                }
                Polynomial v = value;
                for (unsigned e = 0; e * (k + 1) <= left; ++e) {
                    beta.set(k, e);
                    rec(k + 1, left - e * static_cast<unsigned>(k + 1), v);
                    v = v * F[k];
                }
                beta.set(k, 0);
            };
            rec(0, D - base, Polynomial(c, Rational(1)));
        }
    return out;
}

}  // namespace

Coords casimir_space(std::size_t n) {
    std::vector<std::string> names;
    for (std::size_t k = 1; k <= n; ++k) names.push_back("z" + std::to_string(k));
    return make_coords(names);
}

TailDecomposition::TailDecomposition(std::size_t n, unsigned truncation)
    : n_(n), truncation_(truncation), z_(casimir_space(n)) {}

Polynomial TailDecomposition::phi(std::size_t i, std::size_t j) const {
    if (i >= n_ || j >= n_) throw DimensionError("phi index out of range");
    if (i == j) return Polynomial(z_);
    auto it = entries_.find({std::min(i, j), std::max(i, j)});
    if (it == entries_.end()) return Polynomial(z_);
    return i < j ? it->second : -it->second;
}

void TailDecomposition::set(std::size_t i, std::size_t j, const Polynomial& value) {
    if (i >= n_ || j >= n_ || i == j) throw DimensionError("phi index out of range");
    require_same_ambient(z_, value.coords(), "tail decomposition");
    Polynomial v = i < j ? value : -value;
    std::pair key{std::min(i, j), std::max(i, j)};
    if (v.is_zero())
        entries_.erase(key);
    else
        entries_.insert_or_assign(key, std::move(v));
}

bool TailDecomposition::is_zero() const { return entries_.empty(); }

bool operator==(const TailDecomposition& a, const TailDecomposition& b) {
    return a.n_ == b.n_ && a.entries_.size() == b.entries_.size() &&
           std::equal(a.entries_.begin(), a.entries_.end(), b.entries_.begin(),
                      [](const auto& x, const auto& y) { return x.first == y.first && x.second == y.second; });
}

std::string TailDecomposition::to_string() const {
    std::string out;
    for (const auto& [key, p] : entries_)
        out += "phi " + std::to_string(key.first + 1) + " " + std::to_string(key.second + 1) + " : " + p.to_string() +
               "\n";
    return out;
}

std::pair<PolyVector, PolyVector> split_linear(const PolyVector& Pi) {
    if (Pi.grade() != 2) throw DimensionError("split_linear: expected a bivector");
    PolyVector lin(Pi.coords(), 2), rest(Pi.coords(), 2);
    for (const auto& [blade, coef] : Pi.components()) {
        if (!is_zero(coef.constant_term()))
            throw PreconditionError("structure does not vanish at the origin (constant part in " +
                                    Pi.coords()->name(blade_indices(blade)[0]) + " " +
                                    Pi.coords()->name(blade_indices(blade)[1]) + ")");
        Polynomial one = coef.homogeneous_part(1);
        if (!one.is_zero()) lin.add(blade, one);
        Polynomial tail = coef - one;
        if (!tail.is_zero()) rest.add(blade, tail);
    }
    return {lin, rest};
}

SemiLinearForm semi_linearize(const PolyVector& Pi, std::size_t n, unsigned max_degree) {
    if (Pi.grade() != 2) throw DimensionError("semi_linearize: expected a bivector");
    const Coords& c = Pi.coords();
    require_aff_ambient(c, n, "semi_linearize");
    const std::size_t nx = n * n;
    auto [lin, rest] = split_linear(Pi);
    const PolyVector standard = aff_linear_poisson(c, n);
    if (!(lin == standard)) throw PreconditionError("semi_linearize: linear part is not the standard aff(n) structure");
    if (!schouten(Pi, Pi, max_degree).is_zero())
        throw PreconditionError("semi_linearize: input is not Poisson modulo degree " + std::to_string(max_degree));

    PolyVector current = Pi.truncated(max_degree);
    std::vector<PolyVector> steps;
    for (unsigned k = 2; k <= max_degree; ++k) {
        PolyVector defect = semi_defect(current, k, nx);
        if (defect.is_zero()) continue;
        PolyVector V = solve_homological(standard, defect, k, n);
        current = pushforward_along_flow(V, 1, current, max_degree);
        if (!semi_defect(current, k, nx).is_zero())
            throw InternalError("semi-linearization: degree " + std::to_string(k) + " defect survived its correction");
        steps.push_back(std::move(V));
    }
    for (unsigned k = 2; k <= max_degree; ++k)
        if (!semi_defect(current, k, nx).is_zero())
            throw InternalError("semi-linearization: defect reappeared at degree " + std::to_string(k));

    std::vector<Polynomial> fwd, back;
    for (std::size_t i = 0; i < c->size(); ++i) {
        Polynomial g = Polynomial::variable(c, i);
        for (auto it = steps.rbegin(); it != steps.rend(); ++it) g = lie_series(*it, 1, g, max_degree);
        fwd.push_back(std::move(g));
        Polynomial h = Polynomial::variable(c, i);
        for (const auto& V : steps) h = lie_series(V, -1, h, max_degree);
        back.push_back(std::move(h));
    }
    return {FormalDiffeo(std::move(fwd), max_degree), FormalDiffeo(std::move(back), max_degree), std::move(current), n,
            std::move(steps)};
}

PolyVector recompose(const TailDecomposition& phi, const Coords& coords, unsigned max_degree) {
    const std::size_t n = phi.n();
    require_aff_ambient(coords, n, "recompose");
    PolyVector out(coords, 2);
    if (n < 2) return out;
    const auto X = casimir_vector_fields(coords, n);
    const auto F = gl_casimirs(coords, n).funcs;
    Substitution at_F(F, max_degree);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            Polynomial p = phi.phi(i, j);
            if (p.is_zero()) continue;
            out += scale(at_F.apply(p), wedge(X[i], X[j], max_degree), max_degree);
        }
    return out;
}

TailDecomposition decompose_tail(const PolyVector& tail, std::size_t n, unsigned max_degree) {
    if (tail.grade() != 2) throw DimensionError("decompose_tail: expected a bivector");
    const Coords& c = tail.coords();
    require_aff_ambient(c, n, "decompose_tail");
    const std::size_t nx = n * n;
    TailDecomposition out(n, max_degree);
    const PolyVector target = tail.truncated(max_degree);
    for (const auto& [blade, coef] : target.components()) {
        if (constrained_blade(blade, nx))
            throw PreconditionError("decompose_tail: tail has a component outside the y-y block");
        if (coef.min_degree() < 2) throw PreconditionError("decompose_tail: tail must start in degree 2");
    }
    if (target.is_zero()) return out;
    if (n == 1) throw TailSpanError("tail is not in the Casimir span: aff(1) admits no nonzero tail");

    const auto X = casimir_vector_fields(c, n);
    const auto F = gl_casimirs(c, n).funcs;
    std::vector<std::vector<PolyVector>> W(n, std::vector<PolyVector>(n, PolyVector(c, 2)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) W[i][j] = wedge(X[i], X[j]);

    std::vector<Polynomial> acc(n * n, Polynomial(out.z()));
    for (unsigned D = 2; D <= max_degree; ++D) {
        std::map<EquationKey, Rational> rhs;
        for (const auto& [blade, coef] : target.components()) {
            const Polynomial part = coef.homogeneous_part(D);
            for (const auto& t : part.terms()) rhs[{blade, t.mono}] = t.coef;
        }
        if (rhs.empty()) continue;
        SpanBasis basis = casimir_span(n, D, F, W);
        std::map<EquationKey, SparseSystem::Row> rows;
        for (const auto& [key, v] : rhs) rows[key];
        for (std::size_t col = 0; col < basis.element.size(); ++col)
            for (const auto& [blade, coef] : basis.element[col].components())
                for (const auto& t : coef.terms()) rows[{blade, t.mono}].emplace_back(col, t.coef);
        SparseSystem sys(basis.element.size());
        for (auto& [key, row] : rows) {
            auto it = rhs.find(key);
            sys.add_equation(std::move(row), it == rhs.end() ? Rational(0) : it->second);
        }
        auto sol = sys.solve();
        if (!sol) throw TailSpanError("tail is not in the Casimir span at degree " + std::to_string(D));
        for (std::size_t col = 0; col < basis.element.size(); ++col) {
            if (is_zero((*sol)[col])) continue;
            auto [i, j] = basis.pair[col];
            acc[i * n + j] += Polynomial::monomial(out.z(), basis.beta[col], (*sol)[col]);
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) out.set(i, j, acc[i * n + j]);
    return out;
}

TailDecomposition exterior_derivative(const PrimitiveOneForm& beta, unsigned truncation) {
    const std::size_t n = beta.alpha.size();
    TailDecomposition out(n, truncation);
    for (const auto& a : beta.alpha) require_same_ambient(out.z(), a.coords(), "exterior_derivative");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) out.set(i, j, beta.alpha[j].partial(i) - beta.alpha[i].partial(j));
    return out;
}

bool check_closed(const TailDecomposition& phi) {
    const std::size_t n = phi.n();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k)
                if (!(phi.phi(i, j).partial(k) + phi.phi(j, k).partial(i) + phi.phi(k, i).partial(j)).is_zero())
                    return false;
    return true;
}

PrimitiveOneForm primitive(const TailDecomposition& phi) {
    if (!check_closed(phi)) throw PreconditionError("primitive: the 2-form is not closed");
    const std::size_t n = phi.n();
    const Coords& z = phi.z();
    PrimitiveOneForm out{std::vector<Polynomial>(n, Polynomial(z))};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const Polynomial p = phi.phi(i, j);
            if (p.is_zero()) continue;
            const Polynomial zi = Polynomial::variable(z, i), zj = Polynomial::variable(z, j);
            for (int k = p.min_degree(); k <= p.degree(); ++k) {
                Polynomial part = p.homogeneous_part(static_cast<unsigned>(k));
                if (part.is_zero()) continue;
                part *= Rational(1, k + 2);
                out.alpha[j] += zi * part;
                out.alpha[i] -= zj * part;
            }
        }
    if (!(exterior_derivative(out, phi.truncation()) == phi))
        throw InternalError("primitive: homotopy formula failed to reproduce the 2-form");
    return out;
}

PolyVector build_homotopy_field(const PrimitiveOneForm& alpha, const Coords& coords, std::size_t n,
                                unsigned max_degree) {
    require_aff_ambient(coords, n, "build_homotopy_field");
    if (alpha.alpha.size() != n) throw DimensionError("build_homotopy_field: need one alpha component per Casimir");
    PolyVector Y(coords, 1);
    const auto X = casimir_vector_fields(coords, n);
    Substitution at_F(gl_casimirs(coords, n).funcs, max_degree);
    for (std::size_t i = 0; i < n; ++i)
        if (!alpha.alpha[i].is_zero()) Y -= scale(at_F.apply(alpha.alpha[i]), X[i], max_degree);

    const PolyVector tail = recompose(exterior_derivative(alpha, max_degree), coords, max_degree);
    const PolyVector linear = aff_linear_poisson(coords, n);
    if (!(schouten(Y, linear, max_degree) == tail * Rational(-1)))
        throw InternalError("homotopy field: [Y, Pi^(1)] differs from -Pi~");
    if (!schouten(Y, tail, max_degree).is_zero()) throw InternalError("homotopy field: [Y, Pi~] is nonzero");
    return Y;
}

bool LinearizationResult::verified() const {
    for (auto r : residual_terms)
        if (r) return false;
    return true;
}

std::string LinearizationResult::report() const {
    std::string out;
    for (std::size_t k = 2; k < residual_terms.size(); ++k)
        out += "degree " + std::to_string(k) + " : residual " + std::to_string(residual_terms[k]) + "\n";
    return out;
}

LinearizationResult linearize(const PolyVector& Pi, std::size_t n, unsigned max_degree) {
    SemiLinearForm semi = semi_linearize(Pi, n, max_degree);
    const Coords& c = Pi.coords();
    auto [linear, tail] = split_linear(semi.pi);
    TailDecomposition phi = decompose_tail(tail, n, max_degree);
    if (!check_closed(phi)) throw InternalError("linearize: tail decomposition is not closed");
    PrimitiveOneForm alpha = primitive(phi);
    PolyVector Y = build_homotopy_field(alpha, c, n, max_degree);

    std::vector<Polynomial> fwd, back;
    for (std::size_t i = 0; i < c->size(); ++i) {
        Polynomial g = Y.is_zero() ? Polynomial::variable(c, i) : lie_series(Y, -1, Polynomial::variable(c, i), max_degree);
        for (auto it = semi.steps.rbegin(); it != semi.steps.rend(); ++it) g = lie_series(*it, 1, g, max_degree);
        fwd.push_back(std::move(g));
        Polynomial h = Polynomial::variable(c, i);
        for (const auto& V : semi.steps) h = lie_series(V, -1, h, max_degree);
        if (!Y.is_zero()) h = lie_series(Y, 1, h, max_degree);
        back.push_back(std::move(h));
    }
    FormalDiffeo psi(std::move(fwd), max_degree), psi_inv(std::move(back), max_degree);

    const PolyVector moved = pushforward(psi, psi_inv, Pi.truncated(max_degree), max_degree);
    const PolyVector diff = moved - linear;
    std::vector<std::size_t> residual(max_degree + 1);
    for (const auto& [blade, coef] : diff.components())
        for (const auto& t : coef.terms()) ++residual[t.mono.degree()];

    return {std::move(psi), std::move(psi_inv), std::move(semi), std::move(phi), std::move(alpha), std::move(Y),
            std::move(residual)};
}

}  // namespace poislin
