#include "poislin/liealg.hpp"

#include "poislin/error.hpp"
#include "poislin/linsolve.hpp"

namespace poislin {

namespace {

struct BasisElement {
    std::string name;
    RationalMatrix matrix;
    bool x_type;
};

RationalMatrix unit(std::size_t d, std::size_t p, std::size_t q) {
    RationalMatrix m(d, std::vector<Rational>(d));
    m[p][q] = 1;
    return m;
}

RationalMatrix commutator(const RationalMatrix& a, const RationalMatrix& b) {
    const std::size_t d = a.size();
    RationalMatrix r(d, std::vector<Rational>(d));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t k = 0; k < d; ++k) {
            if (is_zero(a[i][k]) && is_zero(b[i][k])) continue;
            for (std::size_t j = 0; j < d; ++j) {
                if (!is_zero(a[i][k])) r[i][j] += a[i][k] * b[k][j];
                if (!is_zero(b[i][k])) r[i][j] -= b[i][k] * a[k][j];
            }
        }
    return r;
}

std::string idx(std::size_t p, std::size_t q) { return std::to_string(p + 1) + std::to_string(q + 1); }

std::vector<BasisElement> matrix_basis(const AlgebraId& id) {
    std::vector<BasisElement> out;
    const std::size_t n = id.n;
    switch (id.kind) {
        case AlgebraKind::gl:
            for (std::size_t p = 0; p < n; ++p)
                for (std::size_t q = 0; q < n; ++q) out.push_back({"x" + idx(p, q), unit(n, p, q), true});
            break;
        case AlgebraKind::sl:
            for (std::size_t p = 0; p + 1 < n; ++p) {
                RationalMatrix h = unit(n, p, p);
                h[p + 1][p + 1] = -1;
                out.push_back({"h" + std::to_string(p + 1), h, true});
            }
            for (std::size_t p = 0; p < n; ++p)
                for (std::size_t q = 0; q < n; ++q)
                    if (p != q) out.push_back({"x" + idx(p, q), unit(n, p, q), true});
            break;
        case AlgebraKind::aff:
            for (std::size_t p = 0; p < n; ++p)
                for (std::size_t q = 0; q < n; ++q) out.push_back({"x" + idx(p, q), unit(n + 1, p, q), true});
            for (std::size_t r = 0; r < n; ++r) out.push_back({"y" + std::to_string(r + 1), unit(n + 1, r, n), false});
            break;
        case AlgebraKind::saff2: {
            RationalMatrix h = unit(3, 0, 0);
            h[1][1] = -1;
            out.push_back({"h", h, true});
            out.push_back({"e", unit(3, 0, 1), true});
            out.push_back({"f", unit(3, 1, 0), true});
            out.push_back({"y1", unit(3, 0, 2), false});
            out.push_back({"y2", unit(3, 1, 2), false});
            break;
        }
        case AlgebraKind::e3: {
            // Rotation generators (L_i)_jk = -eps_ijk, so [L_1, L_2] = L_3.
            for (std::size_t i = 0; i < 3; ++i) {
                RationalMatrix l(4, std::vector<Rational>(4));
                std::size_t j = (i + 1) % 3, k = (i + 2) % 3;
                l[j][k] = -1;
                l[k][j] = 1;
                out.push_back({"x" + std::to_string(i + 1), l, true});
            }
            for (std::size_t r = 0; r < 3; ++r) out.push_back({"y" + std::to_string(r + 1), unit(4, r, 3), false});
            break;
        }
    }
    return out;
}

}  // namespace

AlgebraId AlgebraId::parse(std::string_view text) {
    if (text == "saff2") return {AlgebraKind::saff2, 2};
    if (text == "e3") return {AlgebraKind::e3, 3};
    auto colon = text.find(':');
    if (colon == std::string_view::npos) throw PreconditionError("unknown algebra id '" + std::string(text) + "'");
    std::string_view kind = text.substr(0, colon);
    std::string rank(text.substr(colon + 1));
    if (rank.empty() || rank.find_first_not_of("0123456789") != std::string::npos)
        throw PreconditionError("bad rank in algebra id '" + std::string(text) + "'");
    std::size_t n = std::stoul(rank);
    AlgebraId id{};
    if (kind == "gl")
        id = {AlgebraKind::gl, n};
    else if (kind == "sl")
        id = {AlgebraKind::sl, n};
    else if (kind == "aff")
        id = {AlgebraKind::aff, n};
    else
        throw PreconditionError("unknown algebra family '" + std::string(kind) + "'");
    const std::size_t dim = kind == "aff" ? n * n + n : kind == "sl" ? n * n - 1 : n * n;
    if (n < 1 || (kind == "sl" && n < 2) || dim > kMaxVariables)
        throw PreconditionError("unsupported rank in algebra id '" + std::string(text) + "'");
    return id;
}

std::string AlgebraId::to_string() const {
    switch (kind) {
        case AlgebraKind::gl: return "gl:" + std::to_string(n);
        case AlgebraKind::sl: return "sl:" + std::to_string(n);
        case AlgebraKind::aff: return "aff:" + std::to_string(n);
        case AlgebraKind::saff2: return "saff2";
        case AlgebraKind::e3: return "e3";
    }
    return {};
}

LieAlgebraSpec::LieAlgebraSpec(std::string name, Coords coords, StructureConstants constants)
    : name_(std::move(name)), coords_(std::move(coords)), constants_(std::move(constants)) {
    const std::size_t d = coords_->size();
    std::vector<std::vector<std::vector<Rational>>> c(d, std::vector<std::vector<Rational>>(d, std::vector<Rational>(d)));
    for (auto& [key, list] : constants_) {
        auto [i, j] = key;
        if (i >= j || j >= d) throw PreconditionError("structure constants must be keyed by i < j < dimension");
        for (auto& [k, v] : list) {
            if (k >= d) throw PreconditionError("structure constant index out of range");
            c[i][j][k] += v;
            c[j][i][k] -= v;
        }
    }
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j)
            for (std::size_t k = j + 1; k < d; ++k)
                for (std::size_t m = 0; m < d; ++m) {
                    Rational s = 0;
                    for (std::size_t l = 0; l < d; ++l) {
                        if (!is_zero(c[i][j][l])) s += c[i][j][l] * c[l][k][m];
                        if (!is_zero(c[j][k][l])) s += c[j][k][l] * c[l][i][m];
                        if (!is_zero(c[k][i][l])) s += c[k][i][l] * c[l][j][m];
                    }
                    if (!is_zero(s))
                        throw PreconditionError("structure constants of " + name_ + " violate the Jacobi identity at (" +
                                                coords_->name(i) + ", " + coords_->name(j) + ", " + coords_->name(k) + ")");
                }
}

LieAlgebraSpec LieAlgebraSpec::make(const AlgebraId& id) {
    const auto basis = matrix_basis(id);
    std::vector<std::string> xs, ys;
    for (const auto& b : basis) (b.x_type ? xs : ys).push_back(b.name);
    Coords coords = make_coords(xs, ys);

    const std::size_t dim = basis.size(), d = basis[0].matrix.size();
    RationalMatrix flat(d * d, std::vector<Rational>(dim));
    for (std::size_t k = 0; k < dim; ++k)
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t s = 0; s < d; ++s) flat[r * d + s][k] = basis[k].matrix[r][s];

    StructureConstants constants;
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = i + 1; j < dim; ++j) {
            RationalMatrix br = commutator(basis[i].matrix, basis[j].matrix);
            std::vector<Rational> rhs(d * d);
            bool zero = true;
            for (std::size_t r = 0; r < d; ++r)
                for (std::size_t s = 0; s < d; ++s) {
                    rhs[r * d + s] = br[r][s];
                    zero = zero && is_zero(br[r][s]);
                }
            if (zero) continue;
            auto coeffs = solve_dense(flat, rhs);
            if (!coeffs) throw InternalError("matrix basis of " + id.to_string() + " is not closed under brackets");
            auto& list = constants[{i, j}];
            for (std::size_t k = 0; k < dim; ++k)
                if (!is_zero((*coeffs)[k])) list.emplace_back(k, (*coeffs)[k]);
        }
    return LieAlgebraSpec(id.to_string(), std::move(coords), std::move(constants));
}

Rational LieAlgebraSpec::constant(std::size_t i, std::size_t j, std::size_t k) const {
    if (i == j) return 0;
    const bool flip = i > j;
    auto it = constants_.find(flip ? std::pair{j, i} : std::pair{i, j});
    if (it == constants_.end()) return 0;
    for (const auto& [kk, v] : it->second)
        if (kk == k) return flip ? Rational(-v) : v;
    return 0;
}

Coords aff_coords(std::size_t n) { return LieAlgebraSpec::make({AlgebraKind::aff, n}).coords(); }

PolyVector standard_linear_poisson(const LieAlgebraSpec& spec) {
    const Coords& c = spec.coords();
    PolyVector pi(c, 2);
    for (const auto& [key, list] : spec.constants()) {
        Polynomial v(c);
        for (const auto& [k, coef] : list) v += Polynomial::variable(c, k) * coef;
        pi.add({key.first, key.second}, v);
    }
    return pi;
}

PolyVector aff_linear_poisson(const Coords& coords, std::size_t n) {
    if (coords->size() != n * n + n)
        throw DimensionError("aff(" + std::to_string(n) + ") needs " + std::to_string(n * n + n) + " coordinates");
    return standard_linear_poisson(LieAlgebraSpec::make({AlgebraKind::aff, n})).rehomed(coords);
}

CasimirSet gl_casimirs(std::size_t n) {
    return gl_casimirs(LieAlgebraSpec::make({AlgebraKind::gl, n}).coords(), n);
}

CasimirSet gl_casimirs(const Coords& coords, std::size_t n) {
    if (n < 1 || coords->size() < n * n) throw DimensionError("gl_casimirs: ambient too small");
    using PolyMatrix = std::vector<std::vector<Polynomial>>;
    PolyMatrix m(n, std::vector<Polynomial>(n, Polynomial(coords)));
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q) m[p][q] = Polynomial::variable(coords, p * n + q);
    CasimirSet out{n, {}};
    PolyMatrix power = m;
    for (std::size_t k = 1; k <= n; ++k) {
        if (k > 1) {
            PolyMatrix next(n, std::vector<Polynomial>(n, Polynomial(coords)));
            for (std::size_t p = 0; p < n; ++p)
                for (std::size_t q = 0; q < n; ++q)
                    for (std::size_t r = 0; r < n; ++r) next[p][q] += power[p][r] * m[r][q];
            power = std::move(next);
        }
        Polynomial tr(coords);
        for (std::size_t p = 0; p < n; ++p) tr += power[p][p];
        out.funcs.push_back(std::move(tr));
    }
    return out;
}

std::vector<PolyVector> casimir_vector_fields(std::size_t n) { return casimir_vector_fields(aff_coords(n), n); }

std::vector<PolyVector> casimir_vector_fields(const Coords& coords, std::size_t n) {
    const PolyVector pi = aff_linear_poisson(coords, n);
    std::vector<PolyVector> out;
    for (const auto& f : gl_casimirs(coords, n).funcs) out.push_back(hamiltonian_vf(pi, f));
    return out;
}

}  // namespace poislin
