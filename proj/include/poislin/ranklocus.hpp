#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "poislin/liealg.hpp"
#include "poislin/linsolve.hpp"
#include "poislin/multivector.hpp"

namespace poislin {

/// Antisymmetric bracket matrix, entry (i, j) = {coord_i, coord_j}.
struct StructureMatrix {
    Coords coords;
    std::vector<std::vector<Polynomial>> entries;

    std::size_t dim() const noexcept { return entries.size(); }
    RationalMatrix evaluate(std::span<const Rational> point) const;
};

StructureMatrix structure_matrix(const PolyVector& Pi);

/// Pfaffians of all principal 4x4 submatrices; they cut out rank <= 2.
struct PfaffianIdeal {
    unsigned rank_bound = 2;
    std::vector<std::array<std::size_t, 4>> subsets;
    std::vector<Polynomial> generators;

    bool vanishes_at(std::span<const Rational> point) const;
    /// Every generator after substituting coord_k -> subs[k].
    bool vanishes_on(std::span<const Polynomial> parametrization) const;
};

PfaffianIdeal sub_pfaffians_rank2(const StructureMatrix& M);

/// Pfaffian of an antisymmetric rational matrix by expansion along the
/// first row; zero for odd size.
Rational pfaffian(const RationalMatrix& m);

/// Exact rank of the structure matrix at a point. Throws DimensionError.
std::size_t rank_at_point(const PolyVector& Pi, std::span<const Rational> point);

/// Full structure Pi^(1) + Pi~ of the degenerate examples (saff2 or e3).
PolyVector counterexample_structure(AlgebraKind kind);

struct CheckLine {
    bool pass;
    std::string text;
};

struct CounterexampleReport {
    std::string id;
    std::vector<CheckLine> checks;

    bool passed() const;
    /// One `PASS ...` / `FAIL ...` line per check.
    std::string to_string() const;
};

/// Throws PreconditionError for kinds other than saff2 and e3.
CounterexampleReport verify_counterexample(AlgebraKind kind);

}  // namespace poislin
