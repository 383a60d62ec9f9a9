#pragma once

#include <vector>

#include "poislin/linsolve.hpp"
#include "poislin/multivector.hpp"
#include "poislin/polynomial.hpp"

namespace poislin {

/// Degree-truncated formal coordinate change x -> (images_1(x), ..., images_m(x)),
/// exact modulo terms of total degree above `truncation()`.
class FormalDiffeo {
public:
    /// Throws PreconditionError unless the linear part is invertible and the
    /// images vanish at the origin.
    FormalDiffeo(std::vector<Polynomial> images, unsigned truncation);

    static FormalDiffeo identity(const Coords& coords, unsigned truncation);

    const Coords& coords() const noexcept { return images_.front().coords(); }
    const std::vector<Polynomial>& images() const noexcept { return images_; }
    const Polynomial& image(std::size_t i) const { return images_.at(i); }
    unsigned truncation() const noexcept { return truncation_; }

    RationalMatrix linear_part() const;
    bool is_identity() const;

    /// f o psi, truncated.
    Polynomial pullback(const Polynomial& f) const;

    /// Formal inverse, computed by fixed-point iteration on the nonlinear part.
    FormalDiffeo inverse() const;

    /// `coord <name> : <polynomial>` per coordinate.
    std::string to_string() const;

private:
    std::vector<Polynomial> images_;
    unsigned truncation_;
};

/// (a o b)(x) = a(b(x)), truncated at the smaller truncation degree.
FormalDiffeo compose(const FormalDiffeo& a, const FormalDiffeo& b);

/// sum_k t^k/k! Y^k(f), truncated at max_degree. Requires Y to raise degree.
Polynomial lie_series(const PolyVector& Y, const Rational& t, const Polynomial& f, unsigned max_degree);

/// Time-t flow of Y as a formal diffeo. Y must have no constant or linear part.
FormalDiffeo formal_flow(const PolyVector& Y, const Rational& t, unsigned max_degree);

/// psi_* P modulo degree N: components in the new coordinates u = psi(x).
/// psi must be exact to degree N, or N + 1 when P has constant components.
PolyVector pushforward(const FormalDiffeo& psi, const PolyVector& P, unsigned max_degree);
/// Same, with a precomputed inverse of psi.
PolyVector pushforward(const FormalDiffeo& psi, const FormalDiffeo& psi_inverse, const PolyVector& P,
                       unsigned max_degree);

/// Pushforward along the time-t flow of Y, evaluated as the series
/// exp(-t ad_Y) P. Agrees with pushforward(formal_flow(Y, t, N), P, N).
PolyVector pushforward_along_flow(const PolyVector& Y, const Rational& t, const PolyVector& P,
                                  unsigned max_degree);

/// Parses `coord <name> : <polynomial>` lines; every coordinate must appear once.
FormalDiffeo parse_diffeo(std::string_view text, const Coords& coords, unsigned truncation);

}  // namespace poislin
