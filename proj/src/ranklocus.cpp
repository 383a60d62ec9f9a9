#include "poislin/ranklocus.hpp"

#include "poislin/error.hpp"
#include "poislin/linearizer.hpp"

namespace poislin {

namespace {

std::string point_text(std::span<const Rational> pt) {
    std::string s = "(";
    for (std::size_t i = 0; i < pt.size(); ++i) s += (i ? "," : "") + to_string(pt[i]);
    return s + ")";
}

std::vector<Rational> point_of(std::initializer_list<int> v) {
    std::vector<Rational> out;
    for (int x : v) out.emplace_back(x);
    return out;
}

// Checks shared by both examples: Jacobi, and the linear locus y = 0.
void common_checks(CounterexampleReport& r, const PolyVector& linear, const PolyVector& full) {
    r.checks.push_back({schouten(linear, linear).is_zero(), "[Pi1,Pi1] = 0"});
    r.checks.push_back({schouten(full, full).is_zero(), "[Pi,Pi] = 0"});

    const Coords& c = linear.coords();
    std::vector<Polynomial> y_zero;
    for (std::size_t i = 0; i < c->size(); ++i)
        y_zero.push_back(c->is_x(i) ? Polynomial::variable(c, i) : Polynomial(c));
    auto ideal = sub_pfaffians_rank2(structure_matrix(linear));
    r.checks.push_back({ideal.vanishes_on(y_zero), "Pi1 rank<=2 generators vanish identically on y = 0"});
}

void rank_check(CounterexampleReport& r, const PolyVector& P, const std::string& label, std::span<const Rational> pt,
                std::size_t expect) {
    const std::size_t got = rank_at_point(P, pt);
    r.checks.push_back({got == expect, "rank " + label + " at " + point_text(pt) + " = " + std::to_string(got) +
                                           " (expected " + std::to_string(expect) + ")"});
}

void witness_check(CounterexampleReport& r, const PolyVector& P, const std::string& label,
                   std::span<const Rational> pt) {
    const bool off = !sub_pfaffians_rank2(structure_matrix(P)).vanishes_at(pt);
    r.checks.push_back({off, label + " rank<=2 generators do not all vanish at " + point_text(pt)});
}

}  // namespace

RationalMatrix StructureMatrix::evaluate(std::span<const Rational> point) const {
    if (point.size() != coords->size())
        throw DimensionError("point has " + std::to_string(point.size()) + " coordinates, expected " +
                             std::to_string(coords->size()));
    RationalMatrix m(dim(), std::vector<Rational>(dim()));
    for (std::size_t i = 0; i < dim(); ++i)
        for (std::size_t j = 0; j < dim(); ++j)
            if (!entries[i][j].is_zero()) m[i][j] = entries[i][j].evaluate(point);
    return m;
}

StructureMatrix structure_matrix(const PolyVector& Pi) {
    if (Pi.grade() != 2) throw DimensionError("structure_matrix: expected a bivector");
    const Coords& c = Pi.coords();
    const std::size_t m = c->size();
    StructureMatrix out{c, std::vector<std::vector<Polynomial>>(m, std::vector<Polynomial>(m, Polynomial(c)))};
    for (const auto& [blade, coef] : Pi.components()) {
        auto idx = blade_indices(blade);
        out.entries[idx[0]][idx[1]] = coef;
        out.entries[idx[1]][idx[0]] = -coef;
    }
    return out;
}

bool PfaffianIdeal::vanishes_at(std::span<const Rational> point) const {
    for (const auto& g : generators)
        if (!is_zero(g.evaluate(point))) return false;
    return true;
}

bool PfaffianIdeal::vanishes_on(std::span<const Polynomial> parametrization) const {
    Substitution sub(std::vector<Polynomial>(parametrization.begin(), parametrization.end()));
    for (const auto& g : generators)
        if (!sub.apply(g).is_zero()) return false;
    return true;
}

PfaffianIdeal sub_pfaffians_rank2(const StructureMatrix& M) {
    PfaffianIdeal out;
    const std::size_t m = M.dim();
    const auto& e = M.entries;
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a + 1; b < m; ++b)
            for (std::size_t c = b + 1; c < m; ++c)
                for (std::size_t d = c + 1; d < m; ++d) {
                    out.subsets.push_back({a, b, c, d});
                    out.generators.push_back(e[a][b] * e[c][d] - e[a][c] * e[b][d] + e[a][d] * e[b][c]);
                }
    return out;
}

Rational pfaffian(const RationalMatrix& m) {
    const std::size_t n = m.size();
    for (const auto& row : m)
        if (row.size() != n) throw DimensionError("pfaffian of a non-square matrix");
    if (n == 0) return 1;
    if (n % 2) return 0;
    Rational total = 0;
    for (std::size_t j = 1; j < n; ++j) {
        if (is_zero(m[0][j])) continue;
        RationalMatrix minor;
        for (std::size_t r = 1; r < n; ++r) {
            if (r == j) continue;
            std::vector<Rational> row;
            for (std::size_t c = 1; c < n; ++c)
                if (c != j) row.push_back(m[r][c]);
            minor.push_back(std::move(row));
        }
        Rational term = m[0][j] * pfaffian(minor);
        if (j % 2)
            total += term;
        else
            total -= term;
    }
    return total;
}

std::size_t rank_at_point(const PolyVector& Pi, std::span<const Rational> point) {
    return matrix_rank(structure_matrix(Pi).evaluate(point));
}

PolyVector counterexample_structure(AlgebraKind kind) {
    if (kind != AlgebraKind::saff2 && kind != AlgebraKind::e3)
        throw PreconditionError("counterexamples exist for saff2 and e3 only");
    const auto spec = LieAlgebraSpec::make({kind, kind == AlgebraKind::e3 ? 3u : 2u});
    const Coords& c = spec.coords();
    PolyVector pi = standard_linear_poisson(spec);
    if (kind == AlgebraKind::saff2) {
        pi.add({3, 4}, parse_polynomial("h^2 + 4*e*f", c));
    } else {
        const Polynomial r = parse_polynomial("x1^2 + x2^2 + x3^2", c);
        pi.add({4, 5}, r * Polynomial::variable(c, 0));
        pi.add({5, 3}, r * Polynomial::variable(c, 1));
        pi.add({3, 4}, r * Polynomial::variable(c, 2));
    }
    return pi;
}

bool CounterexampleReport::passed() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

std::string CounterexampleReport::to_string() const {
    std::string out;
    for (const auto& c : checks) out += (c.pass ? "PASS " : "FAIL ") + c.text + "\n";
    out += std::string(passed() ? "PASS " : "FAIL ") + id + " counterexample\n";
    return out;
}

CounterexampleReport verify_counterexample(AlgebraKind kind) {
    const PolyVector full = counterexample_structure(kind);
    const PolyVector linear = split_linear(full).first;
    const Coords& c = full.coords();
    CounterexampleReport r;
    r.id = kind == AlgebraKind::saff2 ? "saff2" : "e3";
    common_checks(r, linear, full);

    if (kind == AlgebraKind::saff2) {
        // cone h^2 + 4ef = 0, y = 0 parametrized by (s, t)
        const Coords st = make_coords({"s", "t"});
        std::vector<Polynomial> cone{parse_polynomial("2*s*t", st), parse_polynomial("s^2", st),
                                     parse_polynomial("-t^2", st), Polynomial(st), Polynomial(st)};
        const auto ideal = sub_pfaffians_rank2(structure_matrix(full));
        r.checks.push_back(
            {ideal.vanishes_on(cone), "Pi rank<=2 generators vanish identically on h=2st, e=s^2, f=-t^2, y=0"});

        const auto on_plane = point_of({1, 0, 0, 0, 0});
        rank_check(r, linear, "Pi1", on_plane, 2);
        rank_check(r, full, "Pi", on_plane, 4);
        witness_check(r, full, "Pi", on_plane);
        witness_check(r, linear, "Pi1", point_of({0, 0, 0, 1, 0}));
    } else {
        const auto on_plane = point_of({1, 0, 0, 0, 0, 0});
        rank_check(r, linear, "Pi1", on_plane, 2);
        rank_check(r, full, "Pi", on_plane, 4);
        witness_check(r, full, "Pi", on_plane);
        witness_check(r, linear, "Pi1", point_of({0, 0, 0, 1, 0, 0}));

        // On y = 0 the generators Pf(x_j, x_k, y_j, y_k) equal |x|^2 x_i^2;
        // their sum |x|^4 vanishes only at the origin over R.
        std::vector<Polynomial> y_zero;
        for (std::size_t i = 0; i < 6; ++i) y_zero.push_back(i < 3 ? Polynomial::variable(c, i) : Polynomial(c));
        Substitution sub(y_zero);
        const auto ideal = sub_pfaffians_rank2(structure_matrix(full));
        Polynomial sum(c);
        for (std::size_t g = 0; g < ideal.subsets.size(); ++g) {
            const auto& s = ideal.subsets[g];
            for (std::size_t i = 0; i < 3; ++i) {
                const std::size_t j = (i + 1) % 3, k = (i + 2) % 3;
                std::array<std::size_t, 4> want{std::min(j, k), std::max(j, k), 3 + std::min(j, k), 3 + std::max(j, k)};
                if (s == want) sum += sub.apply(ideal.generators[g]);
            }
        }
        const Polynomial r2 = parse_polynomial("x1^2 + x2^2 + x3^2", c);
        r.checks.push_back({sum == r2 * r2,
                            "Pi generators on y = 0 sum to (x1^2+x2^2+x3^2)^2, so the rank<=2 locus meets y = 0 only at 0"});
    }
    return r;
}

}  // namespace poislin
