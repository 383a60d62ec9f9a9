#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "poislin/diffeo.hpp"
#include "poislin/multivector.hpp"
#include "poislin/polynomial.hpp"

namespace poislin {

/// Default truncation degree of the pipeline.
inline constexpr unsigned kDefaultDegree = 6;

/// Result of the semi-linearization stage. In `pi` every x-x and x-y
/// bracket is linear and standard; only y-y brackets may be nonlinear.
struct SemiLinearForm {
    FormalDiffeo psi;
    FormalDiffeo psi_inverse;
    PolyVector pi;
    std::size_t n;
    /// Homogeneous correction fields V_2, V_3, ...; psi is the composite of
    /// their time-1 flows, V_2 applied first.
    std::vector<PolyVector> steps;
};

/// Coordinates z_1..z_n standing for the Casimirs F_1..F_n.
Coords casimir_space(std::size_t n);

/// Antisymmetric array phi_ij of polynomials in z, stored for i < j.
class TailDecomposition {
public:
    TailDecomposition(std::size_t n, unsigned truncation);

    std::size_t n() const noexcept { return n_; }
    unsigned truncation() const noexcept { return truncation_; }
    const Coords& z() const noexcept { return z_; }

    /// phi_ij with antisymmetry applied (0-based indices).
    Polynomial phi(std::size_t i, std::size_t j) const;
    void set(std::size_t i, std::size_t j, const Polynomial& value);

    bool is_zero() const;
    friend bool operator==(const TailDecomposition& a, const TailDecomposition& b);

    /// `phi <i> <j> : <polynomial>` per nonzero entry, 1-based.
    std::string to_string() const;

private:
    std::size_t n_;
    unsigned truncation_;
    Coords z_;
    std::map<std::pair<std::size_t, std::size_t>, Polynomial> entries_;
};

/// alpha = sum_i alpha_i dz_i.
struct PrimitiveOneForm {
    std::vector<Polynomial> alpha;
};

/// (Pi^(1), Pi~) with Pi^(1) the degree-1 part. Throws PreconditionError if
/// Pi has a constant component.
std::pair<PolyVector, PolyVector> split_linear(const PolyVector& Pi);

SemiLinearForm semi_linearize(const PolyVector& Pi, std::size_t n, unsigned max_degree);

/// sum_{i<j} phi_ij(F) X_i ^ X_j on the aff(n) ambient, truncated.
PolyVector recompose(const TailDecomposition& phi, const Coords& coords, unsigned max_degree);

/// Throws TailSpanError if the tail is not in the Casimir span.
TailDecomposition decompose_tail(const PolyVector& tail, std::size_t n, unsigned max_degree);

/// d(beta)_ij = d beta_j / dz_i - d beta_i / dz_j.
TailDecomposition exterior_derivative(const PrimitiveOneForm& beta, unsigned truncation);

bool check_closed(const TailDecomposition& phi);

/// Euler homotopy primitive. Throws PreconditionError on non-closed input.
PrimitiveOneForm primitive(const TailDecomposition& phi);

/// Y = -sum_i alpha_i(F) X_i, which satisfies [Y, Pi^(1)] = -Pi~ and
/// [Y, Pi~] = 0 for Pi~ = recompose(d alpha). Both are checked mod degree N.
PolyVector build_homotopy_field(const PrimitiveOneForm& alpha, const Coords& coords, std::size_t n,
                                unsigned max_degree);

struct LinearizationResult {
    FormalDiffeo psi;
    FormalDiffeo psi_inverse;
    SemiLinearForm semi;
    TailDecomposition tail;
    PrimitiveOneForm alpha;
    PolyVector homotopy_field;
    /// Nonzero term count of pushforward(psi, Pi) - Pi^(1) in degrees 0..N.
    std::vector<std::size_t> residual_terms;

    bool verified() const;
    /// `degree <k> : residual <count>` lines for k = 2..N.
    std::string report() const;
};

/// Full pipeline. The postcondition pushforward(psi, Pi) = Pi^(1) mod N is
/// evaluated and recorded in residual_terms; see verified().
LinearizationResult linearize(const PolyVector& Pi, std::size_t n, unsigned max_degree);

}  // namespace poislin
