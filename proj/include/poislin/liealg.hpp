#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "poislin/multivector.hpp"
#include "poislin/polynomial.hpp"

namespace poislin {

enum class AlgebraKind { gl, sl, aff, saff2, e3 };

struct AlgebraId {
    AlgebraKind kind;
    std::size_t n = 0;  // rank for gl/sl/aff; 2 or 3 for saff2/e3

    /// `gl:<n>`, `sl:<n>`, `aff:<n>`, `saff2`, `e3`.
    static AlgebraId parse(std::string_view text);
    std::string to_string() const;
    friend bool operator==(const AlgebraId&, const AlgebraId&) = default;
};

/// Sparse structure constants: for i < j, the list of (k, c_ij^k).
using StructureConstants = std::map<std::pair<std::size_t, std::size_t>, std::vector<std::pair<std::size_t, Rational>>>;

/// A Lie algebra given by structure constants in a named basis. Each basis
/// element doubles as a linear coordinate on the dual space.
class LieAlgebraSpec {
public:
    /// Validates the Jacobi identity of the constants; throws PreconditionError.
    LieAlgebraSpec(std::string name, Coords coords, StructureConstants constants);

    static LieAlgebraSpec make(const AlgebraId& id);

    const std::string& name() const noexcept { return name_; }
    std::size_t dimension() const noexcept { return coords_->size(); }
    const Coords& coords() const noexcept { return coords_; }
    const StructureConstants& constants() const noexcept { return constants_; }

    /// c_ij^k with antisymmetry applied.
    Rational constant(std::size_t i, std::size_t j, std::size_t k) const;

private:
    std::string name_;
    Coords coords_;
    StructureConstants constants_;
};

/// Coordinates of aff(n): x_pq (row-major, p,q = 1..n) then y_1..y_n.
Coords aff_coords(std::size_t n);

/// Pi^(1) with {b_i, b_j} = sum_k c_ij^k b_k.
PolyVector standard_linear_poisson(const LieAlgebraSpec& spec);
/// The aff(n) linear structure placed on an ambient whose first n^2
/// coordinates are x_pq (row-major) and whose last n are y_r.
PolyVector aff_linear_poisson(const Coords& coords, std::size_t n);

/// Newton power sums F_k = tr(M^k), k = 1..n, of the coordinate matrix
/// M = (x_pq) formed by the first n^2 coordinates of the ambient.
struct CasimirSet {
    std::size_t n;
    std::vector<Polynomial> funcs;
};

CasimirSet gl_casimirs(std::size_t n);
CasimirSet gl_casimirs(const Coords& coords, std::size_t n);

/// X_k = hamiltonian_vf(Pi^(1)_aff(n), F_k) on the aff(n) ambient.
std::vector<PolyVector> casimir_vector_fields(std::size_t n);
std::vector<PolyVector> casimir_vector_fields(const Coords& coords, std::size_t n);

}  // namespace poislin
