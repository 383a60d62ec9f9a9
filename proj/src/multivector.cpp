#include "poislin/multivector.hpp"

#include <algorithm>
#include <sstream>

#include "poislin/error.hpp"

namespace poislin {

namespace {

// Sign of theta_A ^ theta_B relative to the sorted blade A|B: (-1)^(number of
// pairs a in A, b in B with a > b). Zero when the blades overlap.
int wedge_sign(Blade a, Blade b) {
    if (a & b) return 0;
    unsigned swaps = 0;
    for (Blade rest = b; rest; rest &= rest - 1) {
        unsigned idx = static_cast<unsigned>(__builtin_ctz(rest));
        Blade above = idx >= 31 ? 0 : (~Blade{0} << (idx + 1));
        swaps += static_cast<unsigned>(__builtin_popcount(a & above));
    }
    return (swaps & 1u) ? -1 : 1;
}

// Right derivative d/dtheta_k of theta_A: move theta_k to the end first.
int right_derivative_sign(Blade a, unsigned k) {
    Blade above = k >= 31 ? 0 : (~Blade{0} << (k + 1));
    return (__builtin_popcount(a & above) & 1) ? -1 : 1;
}

// Sorts indices in place and returns the permutation sign, 0 on repeats.
int sort_sign(std::vector<std::size_t>& idx) {
    int sign = 1;
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = 0; j + 1 < idx.size() - i; ++j)
            if (idx[j] > idx[j + 1]) {
                std::swap(idx[j], idx[j + 1]);
                sign = -sign;
            }
    for (std::size_t i = 0; i + 1 < idx.size(); ++i)
        if (idx[i] == idx[i + 1]) return 0;
    return sign;
}

}  // namespace

Blade make_blade(std::span<const std::size_t> sorted_indices) {
    Blade b = 0;
    for (auto i : sorted_indices) {
        if (i >= kMaxVariables) throw DimensionError("blade index out of range");
        b |= Blade{1} << i;
    }
    return b;
}

std::vector<std::size_t> blade_indices(Blade b) {
    std::vector<std::size_t> out;
    for (; b; b &= b - 1) out.push_back(static_cast<std::size_t>(__builtin_ctz(b)));
    return out;
}

PolyVector::PolyVector(Coords coords, unsigned grade) : coords_(std::move(coords)), grade_(grade) {}

PolyVector PolyVector::function(const Polynomial& f) {
    PolyVector r(f.coords(), 0);
    r.add(Blade{0}, f);
    return r;
}

PolyVector PolyVector::basis(const Coords& coords, std::size_t i) {
    if (i >= coords->size()) throw CoordinateError("coordinate index out of range");
    PolyVector r(coords, 1);
    r.add(Blade{1} << i, Polynomial(coords, Rational(1)));
    return r;
}

PolyVector PolyVector::vector_field(std::span<const Polynomial> comps) {
    if (comps.empty()) throw DimensionError("vector_field needs components");
    const Coords& c = comps[0].coords();
    if (comps.size() != c->size()) throw DimensionError("vector_field: one component per coordinate required");
    PolyVector r(c, 1);
    for (std::size_t i = 0; i < comps.size(); ++i) r.add(Blade{1} << i, comps[i]);
    return r;
}

Polynomial PolyVector::component(std::span<const std::size_t> indices) const {
    std::vector<std::size_t> idx(indices.begin(), indices.end());
    if (idx.size() != grade_) throw DimensionError("component: wrong number of indices");
    int sign = sort_sign(idx);
    if (sign == 0) return Polynomial(coords_);
    Polynomial p = component(make_blade(idx));
    return sign > 0 ? p : -p;
}

Polynomial PolyVector::component(Blade b) const {
    auto it = comps_.find(b);
    return it == comps_.end() ? Polynomial(coords_) : it->second;
}

void PolyVector::add(std::span<const std::size_t> indices, const Polynomial& value) {
    std::vector<std::size_t> idx(indices.begin(), indices.end());
    if (idx.size() != grade_) throw DimensionError("add: wrong number of indices");
    for (auto i : idx)
        if (i >= coords_->size()) throw CoordinateError("component index out of range");
    int sign = sort_sign(idx);
    if (sign == 0) return;
    add(make_blade(idx), sign > 0 ? value : -value);
}

void PolyVector::add(Blade b, const Polynomial& value) {
    require_same_ambient(coords_, value.coords(), "multivector component");
    if (value.is_zero()) return;
    auto [it, fresh] = comps_.try_emplace(b, value);
    if (!fresh) {
        it->second += value;
        if (it->second.is_zero()) comps_.erase(it);
    }
}

Polynomial PolyVector::scalar() const {
    if (grade_ != 0) throw DimensionError("scalar() requires grade 0");
    return component(Blade{0});
}

int PolyVector::degree() const noexcept {
    int d = -1;
    for (const auto& [b, p] : comps_) d = std::max(d, p.degree());
    return d;
}

int PolyVector::min_degree() const noexcept {
    int d = -1;
    for (const auto& [b, p] : comps_) {
        int m = p.min_degree();
        d = d < 0 ? m : std::min(d, m);
    }
    return d;
}

PolyVector PolyVector::homogeneous_part(unsigned k) const {
    PolyVector r(coords_, grade_);
    for (const auto& [b, p] : comps_) r.add(b, p.homogeneous_part(k));
    return r;
}

PolyVector PolyVector::truncated(unsigned max_degree) const {
    PolyVector r(coords_, grade_);
    for (const auto& [b, p] : comps_) r.add(b, p.truncated(max_degree));
    return r;
}

Polynomial PolyVector::apply(const Polynomial& f, unsigned max_degree) const {
    if (grade_ != 1) throw DimensionError("apply() requires a vector field");
    require_same_ambient(coords_, f.coords(), "apply");
    Polynomial out(coords_);
    for (const auto& [b, p] : comps_) {
        auto i = static_cast<std::size_t>(__builtin_ctz(b));
        Polynomial d = f.partial(i);
        if (!d.is_zero()) out += multiply(p, d, max_degree);
    }
    return out;
}

PolyVector PolyVector::operator-() const {
    PolyVector r = *this;
    for (auto& [b, p] : r.comps_) p = -p;
    return r;
}

PolyVector& PolyVector::operator+=(const PolyVector& o) {
    require_same_ambient(coords_, o.coords_, "multivector add");
    if (o.grade_ != grade_) throw DimensionError("multivector add: grade mismatch");
    for (const auto& [b, p] : o.comps_) add(b, p);
    return *this;
}

PolyVector& PolyVector::operator-=(const PolyVector& o) { return *this += -o; }

PolyVector& PolyVector::operator*=(const Rational& s) {
    if (poislin::is_zero(s)) {
        comps_.clear();
        return *this;
    }
    for (auto& [b, p] : comps_) p *= s;
    return *this;
}

bool operator==(const PolyVector& a, const PolyVector& b) {
    if (!same_ambient(a.coords_, b.coords_) || a.grade_ != b.grade_ || a.comps_.size() != b.comps_.size()) return false;
    auto i = a.comps_.begin();
    auto j = b.comps_.begin();
    for (; i != a.comps_.end(); ++i, ++j)
        if (i->first != j->first || !(i->second == j->second)) return false;
    return true;
}

PolyVector PolyVector::rehomed(const Coords& coords) const {
    PolyVector r(coords, grade_);
    for (const auto& [b, p] : comps_) r.add(b, p.rehomed(coords));
    return r;
}

std::string PolyVector::to_string() const {
    static const char* tags[] = {"fun", "vec", "biv"};
    std::string out;
    for (const auto& [b, p] : comps_) {
        out += grade_ < 3 ? tags[grade_] : "mv";
        for (auto i : blade_indices(b)) out += " " + coords_->name(i);
        out += " : " + p.to_string() + "\n";
    }
    return out;
}

PolyVector scale(const Polynomial& f, const PolyVector& P, unsigned max_degree) {
    PolyVector r(P.coords(), P.grade());
    if (f.is_zero()) return r;
    for (const auto& [b, p] : P.components()) r.add(b, multiply(f, p, max_degree));
    return r;
}

PolyVector wedge(const PolyVector& P, const PolyVector& Q, unsigned max_degree) {
    require_same_ambient(P.coords(), Q.coords(), "wedge");
    PolyVector r(P.coords(), P.grade() + Q.grade());
    for (const auto& [a, pa] : P.components())
        for (const auto& [b, qb] : Q.components()) {
            int s = wedge_sign(a, b);
            if (s == 0) continue;
            Polynomial prod = multiply(pa, qb, max_degree);
            r.add(a | b, s > 0 ? prod : -prod);
        }
    return r;
}

PolyVector schouten(const PolyVector& P, const PolyVector& Q, unsigned max_degree) {
    require_same_ambient(P.coords(), Q.coords(), "schouten");
    const unsigned p = P.grade(), q = Q.grade();
    if (p + q == 0) return PolyVector(P.coords(), 0);
    PolyVector r(P.coords(), p + q - 1);
    const std::size_t n = P.coords()->size();

    // sum_k (d P / d theta_k) ^ (d Q / d x_k)  -  sigma (d Q / d theta_k) ^ (d P / d x_k),
    // sigma = (-1)^((p-1)(q-1)), with right derivatives in theta.
    auto half = [&](const PolyVector& A, const PolyVector& B, int sign) {
        if (A.grade() == 0) return;
        std::vector<std::vector<std::pair<Blade, Polynomial>>> dB(n);
        std::vector<bool> done(n, false);
        for (const auto& [a, ca] : A.components()) {
            for (Blade rest = a; rest; rest &= rest - 1) {
                auto k = static_cast<unsigned>(__builtin_ctz(rest));
                if (!done[k]) {
                    for (const auto& [b, cb] : B.components()) {
                        Polynomial d = cb.partial(k);
                        if (!d.is_zero()) dB[k].emplace_back(b, std::move(d));
                    }
                    done[k] = true;
                }
                Blade reduced = a & ~(Blade{1} << k);
                int s1 = sign * right_derivative_sign(a, k);
                for (const auto& [b, db] : dB[k]) {
                    int s2 = wedge_sign(reduced, b);
                    if (s2 == 0) continue;
                    Polynomial prod = multiply(ca, db, max_degree);
                    if (prod.is_zero()) continue;
                    r.add(reduced | b, s1 * s2 > 0 ? prod : -prod);
                }
            }
        }
    };
    const int sigma = ((p + 1) * (q + 1)) % 2 == 0 ? 1 : -1;  // parity of (p-1)(q-1)
    half(P, Q, 1);
    half(Q, P, -sigma);
    return r;
}

PolyVector hamiltonian_vf(const PolyVector& Pi, const Polynomial& f, unsigned max_degree) {
    if (Pi.grade() != 2) throw DimensionError("hamiltonian_vf needs a bivector");
    require_same_ambient(Pi.coords(), f.coords(), "hamiltonian_vf");
    // X_f = sum_{i<j} pi_ij (df_i d_j - df_j d_i)
    std::vector<Polynomial> comps(Pi.coords()->size(), Polynomial(Pi.coords()));
    std::vector<Polynomial> grad;
    for (std::size_t i = 0; i < Pi.coords()->size(); ++i) grad.push_back(f.partial(i));
    for (const auto& [b, pij] : Pi.components()) {
        auto idx = blade_indices(b);
        const auto i = idx[0], j = idx[1];
        if (!grad[i].is_zero()) comps[j] += multiply(pij, grad[i], max_degree);
        if (!grad[j].is_zero()) comps[i] -= multiply(pij, grad[j], max_degree);
    }
    return PolyVector::vector_field(comps);
}

Polynomial poisson_bracket(const PolyVector& Pi, const Polynomial& f, const Polynomial& g, unsigned max_degree) {
    return hamiltonian_vf(Pi, f, max_degree).apply(g, max_degree);
}

PolyVector parse_polyvector(std::string_view text, const Coords& coords, unsigned grade) {
    PolyVector r(coords, grade);
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto colon = line.find(':');
        std::istringstream head(line.substr(0, colon));
        std::string tag;
        if (!(head >> tag)) continue;
        if (colon == std::string::npos) throw ParseError(lineno, "missing ':'");
        std::vector<std::size_t> idx;
        std::string label;
        while (head >> label) {
            auto i = coords->find(label);
            if (!i) throw ParseError(lineno, "unknown coordinate '" + label + "'");
            idx.push_back(*i);
        }
        if (idx.size() != grade) throw ParseError(lineno, "expected " + std::to_string(grade) + " indices");
        try {
            r.add(idx, parse_polynomial(line.substr(colon + 1), coords));
        } catch (const ParseError& e) {
            throw ParseError(lineno, e.what());
        } catch (const CoordinateError& e) {
            throw ParseError(lineno, e.what());
        }
    }
    return r;
}

}  // namespace poislin
