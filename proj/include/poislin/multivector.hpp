#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "poislin/polynomial.hpp"

namespace poislin {

/// Strictly increasing index tuple, stored as a bit set over coordinates.
using Blade = std::uint32_t;

/// Lexicographic order on the increasing index tuples of equal-size blades.
struct BladeOrder {
    bool operator()(Blade a, Blade b) const noexcept {
        if (a == b) return false;
        Blade diff = a ^ b;
        return (a & diff & (~diff + 1)) != 0;
    }
};

Blade make_blade(std::span<const std::size_t> sorted_indices);
std::vector<std::size_t> blade_indices(Blade b);
inline unsigned blade_grade(Blade b) { return static_cast<unsigned>(__builtin_popcount(b)); }

/// Antisymmetric multivector field of fixed grade with polynomial
/// components. Grade 0 holds a single function on the empty blade.
class PolyVector {
public:
    using Components = std::map<Blade, Polynomial, BladeOrder>;

    PolyVector(Coords coords, unsigned grade);

    static PolyVector function(const Polynomial& f);
    /// The coordinate vector field d/dx_i.
    static PolyVector basis(const Coords& coords, std::size_t i);
    /// Vector field sum_i comps[i] d/dx_i.
    static PolyVector vector_field(std::span<const Polynomial> comps);

    const Coords& coords() const noexcept { return coords_; }
    unsigned grade() const noexcept { return grade_; }
    const Components& components() const noexcept { return comps_; }
    bool is_zero() const noexcept { return comps_.empty(); }

    /// Component on the given indices; any order, antisymmetry applied.
    Polynomial component(std::span<const std::size_t> indices) const;
    Polynomial component(std::initializer_list<std::size_t> indices) const {
        return component(std::span<const std::size_t>(indices.begin(), indices.size()));
    }
    Polynomial component(Blade b) const;
    /// Adds value to the component on the given indices (any order).
    void add(std::span<const std::size_t> indices, const Polynomial& value);
    void add(std::initializer_list<std::size_t> indices, const Polynomial& value) {
        add(std::span<const std::size_t>(indices.begin(), indices.size()), value);
    }
    void add(Blade b, const Polynomial& value);

    /// The function for grade 0.
    Polynomial scalar() const;

    int degree() const noexcept;
    int min_degree() const noexcept;
    PolyVector homogeneous_part(unsigned k) const;
    PolyVector truncated(unsigned max_degree) const;

    /// V(f) for a vector field V.
    Polynomial apply(const Polynomial& f, unsigned max_degree = kNoTruncation) const;

    PolyVector operator-() const;
    PolyVector& operator+=(const PolyVector& o);
    PolyVector& operator-=(const PolyVector& o);
    PolyVector& operator*=(const Rational& s);
    friend PolyVector operator+(PolyVector a, const PolyVector& b) { return a += b; }
    friend PolyVector operator-(PolyVector a, const PolyVector& b) { return a -= b; }
    friend PolyVector operator*(PolyVector a, const Rational& s) { return a *= s; }
    friend PolyVector operator*(const Rational& s, PolyVector a) { return a *= s; }

    friend bool operator==(const PolyVector& a, const PolyVector& b);

    PolyVector rehomed(const Coords& coords) const;

    /// One line per nonzero component: `fun : p`, `vec a : p`, `biv a b : p`,
    /// or `mv a b c : p` for higher grades.
    std::string to_string() const;

private:
    Coords coords_;
    unsigned grade_;
    Components comps_;
};

PolyVector scale(const Polynomial& f, const PolyVector& P, unsigned max_degree = kNoTruncation);
PolyVector wedge(const PolyVector& P, const PolyVector& Q, unsigned max_degree = kNoTruncation);

/// Schouten-Nijenhuis bracket of grade p+q-1, normalized so that [X, f] = X(f),
/// [X, Y] is the Lie bracket of vector fields, and [Pi, Pi](df, dg, dh) is
/// twice the cyclic sum of {f, {g, h}}.
PolyVector schouten(const PolyVector& P, const PolyVector& Q, unsigned max_degree = kNoTruncation);

/// X_f = {f, .} for the bracket {f, g} = Pi(df, dg).
PolyVector hamiltonian_vf(const PolyVector& Pi, const Polynomial& f, unsigned max_degree = kNoTruncation);

/// {f, g} = Pi(df, dg).
Polynomial poisson_bracket(const PolyVector& Pi, const Polynomial& f, const Polynomial& g,
                           unsigned max_degree = kNoTruncation);

/// Parses the multivector text form produced by PolyVector::to_string.
PolyVector parse_polyvector(std::string_view text, const Coords& coords, unsigned grade);

}  // namespace poislin
