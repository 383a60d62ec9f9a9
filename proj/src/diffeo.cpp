#include "poislin/diffeo.hpp"

#include <sstream>

#include "poislin/error.hpp"

namespace poislin {

namespace {

void require_raising(const PolyVector& Y, const char* op) {
    if (Y.grade() != 1) throw DimensionError(std::string(op) + ": expected a vector field");
    if (!Y.is_zero() && Y.min_degree() < 2)
        throw PreconditionError(std::string(op) + ": vector field must have no constant or linear part");
}

}  // namespace

FormalDiffeo::FormalDiffeo(std::vector<Polynomial> images, unsigned truncation) : truncation_(truncation) {
    if (images.empty()) throw DimensionError("diffeo needs at least one coordinate");
    const Coords& c = images.front().coords();
    if (images.size() != c->size()) throw DimensionError("diffeo: one image per coordinate required");
    for (auto& p : images) {
        require_same_ambient(c, p.coords(), "diffeo");
        if (!is_zero(p.constant_term())) throw PreconditionError("diffeo images must vanish at the origin");
        images_.push_back(p.truncated(truncation));
    }
    if (matrix_rank(linear_part()) != images_.size())
        throw PreconditionError("diffeo linear part is not invertible");
}

FormalDiffeo FormalDiffeo::identity(const Coords& coords, unsigned truncation) {
    std::vector<Polynomial> imgs;
    for (std::size_t i = 0; i < coords->size(); ++i) imgs.push_back(Polynomial::variable(coords, i));
    return FormalDiffeo(std::move(imgs), truncation);
}

RationalMatrix FormalDiffeo::linear_part() const {
    const std::size_t m = images_.size();
    RationalMatrix L(m, std::vector<Rational>(m));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) L[i][j] = images_[i].coefficient(Monomial::variable(j));
    return L;
}

bool FormalDiffeo::is_identity() const {
    for (std::size_t i = 0; i < images_.size(); ++i)
        if (!(images_[i] == Polynomial::variable(coords(), i))) return false;
    return true;
}

Polynomial FormalDiffeo::pullback(const Polynomial& f) const {
    return compose(f, std::span<const Polynomial>(images_), truncation_);
}

FormalDiffeo FormalDiffeo::inverse() const {
    const Coords& c = coords();
    const std::size_t m = images_.size();
    const RationalMatrix Linv = matrix_inverse(linear_part());
    std::vector<Polynomial> nonlinear;
    for (const auto& p : images_) {
        Polynomial q = p;
        q -= p.homogeneous_part(1);
        nonlinear.push_back(std::move(q));
    }
    auto apply_linv = [&](const std::vector<Polynomial>& v) {
        std::vector<Polynomial> out(m, Polynomial(c));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j)
                if (!is_zero(Linv[i][j])) out[i] += v[j] * Linv[i][j];
        return out;
    };
    std::vector<Polynomial> u;
    for (std::size_t i = 0; i < m; ++i) u.push_back(Polynomial::variable(c, i));
    std::vector<Polynomial> phi = apply_linv(u);
    // Each pass fixes one more degree of phi = Linv (u - h(phi)).
    for (unsigned pass = 1; pass < truncation_; ++pass) {
        Substitution sub(phi, truncation_);
        std::vector<Polynomial> rhs = u;
        for (std::size_t i = 0; i < m; ++i)
            if (!nonlinear[i].is_zero()) rhs[i] -= sub.apply(nonlinear[i]);
        phi = apply_linv(rhs);
    }
    return FormalDiffeo(std::move(phi), truncation_);
}

std::string FormalDiffeo::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < images_.size(); ++i)
        out += "coord " + coords()->name(i) + " : " + images_[i].to_string() + "\n";
    return out;
}

FormalDiffeo compose(const FormalDiffeo& a, const FormalDiffeo& b) {
    require_same_ambient(a.coords(), b.coords(), "compose diffeos");
    const unsigned n = std::min(a.truncation(), b.truncation());
    Substitution sub(b.images(), n);
    std::vector<Polynomial> imgs;
    for (const auto& p : a.images()) imgs.push_back(sub.apply(p));
    return FormalDiffeo(std::move(imgs), n);
}

Polynomial lie_series(const PolyVector& Y, const Rational& t, const Polynomial& f, unsigned max_degree) {
    require_raising(Y, "lie_series");
    Polynomial sum = f.truncated(max_degree);
    Polynomial term = sum;
    for (unsigned k = 1; !term.is_zero(); ++k) {
        term = Y.apply(term, max_degree);
        term *= t / Rational(k);
        sum += term;
    }
    return sum;
}

FormalDiffeo formal_flow(const PolyVector& Y, const Rational& t, unsigned max_degree) {
    require_raising(Y, "formal_flow");
    std::vector<Polynomial> imgs;
    for (std::size_t i = 0; i < Y.coords()->size(); ++i)
        imgs.push_back(lie_series(Y, t, Polynomial::variable(Y.coords(), i), max_degree));
    return FormalDiffeo(std::move(imgs), max_degree);
}

namespace {

// Jacobian entries lose one degree of accuracy, so a multivector with
// components of degree d needs the diffeo exact up to N + 1 - d.
unsigned needed_truncation(const PolyVector& P, unsigned max_degree) {
    if (P.grade() == 0 || P.is_zero()) return max_degree;
    const int low = P.min_degree();
    return low >= 1 ? max_degree : max_degree + 1;
}

}  // namespace

PolyVector pushforward(const FormalDiffeo& psi, const PolyVector& P, unsigned max_degree) {
    const unsigned need = needed_truncation(P, max_degree);
    if (psi.truncation() < need)
        throw PreconditionError("pushforward: diffeo truncated at degree " + std::to_string(psi.truncation()) +
                                " < " + std::to_string(need));
    return pushforward(psi, psi.inverse(), P, max_degree);
}

PolyVector pushforward(const FormalDiffeo& psi, const FormalDiffeo& psi_inverse, const PolyVector& P,
                       unsigned max_degree) {
    require_same_ambient(psi.coords(), P.coords(), "pushforward");
    if (psi.truncation() < needed_truncation(P, max_degree) || psi_inverse.truncation() < max_degree)
        throw PreconditionError("pushforward: diffeo truncation below requested degree");
    const Coords& c = P.coords();
    const std::size_t m = c->size();

    // d/dx_a maps to sum_i (d psi_i / d x_a) d/du_i.
    std::vector<PolyVector> columns;
    for (std::size_t a = 0; a < m; ++a) {
        std::vector<Polynomial> comps;
        for (std::size_t i = 0; i < m; ++i) comps.push_back(psi.image(i).partial(a).truncated(max_degree));
        columns.push_back(PolyVector::vector_field(comps));
    }
    PolyVector moved(c, P.grade());
    for (const auto& [blade, coef] : P.components()) {
        PolyVector w = PolyVector::function(Polynomial(c, Rational(1)));
        for (auto a : blade_indices(blade)) w = wedge(w, columns[a], max_degree);
        moved += scale(coef, w, max_degree);
    }
    Substitution back(psi_inverse.images(), max_degree);
    PolyVector out(c, P.grade());
    for (const auto& [blade, coef] : moved.components()) out.add(blade, back.apply(coef));
    return out;
}

PolyVector pushforward_along_flow(const PolyVector& Y, const Rational& t, const PolyVector& P,
                                  unsigned max_degree) {
    require_raising(Y, "pushforward_along_flow");
    PolyVector sum = P.truncated(max_degree);
    PolyVector term = sum;
    for (unsigned k = 1; !term.is_zero(); ++k) {
        term = schouten(Y, term, max_degree);
        term *= -t / Rational(k);
        sum += term;
    }
    return sum;
}

FormalDiffeo parse_diffeo(std::string_view text, const Coords& coords, unsigned truncation) {
    std::vector<std::optional<Polynomial>> imgs(coords->size());
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        auto colon = line.find(':');
        std::istringstream head(line.substr(0, colon));
        std::string tag, label, extra;
        if (!(head >> tag)) continue;
        if (tag != "coord" || !(head >> label) || (head >> extra) || colon == std::string::npos)
            throw ParseError(lineno, "expected 'coord <name> : <polynomial>'");
        auto i = coords->find(label);
        if (!i) throw ParseError(lineno, "unknown coordinate '" + label + "'");
        if (imgs[*i]) throw ParseError(lineno, "duplicate coordinate '" + label + "'");
        try {
            imgs[*i] = parse_polynomial(line.substr(colon + 1), coords);
        } catch (const Error& e) {
            throw ParseError(lineno, e.what());
        }
    }
    std::vector<Polynomial> out;
    for (std::size_t i = 0; i < imgs.size(); ++i) {
        if (!imgs[i]) throw ParseError(0, "missing image for coordinate '" + coords->name(i) + "'");
        out.push_back(*imgs[i]);
    }
    return FormalDiffeo(std::move(out), truncation);
}

}  // namespace poislin
