#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "poislin/rational.hpp"

namespace poislin {

inline constexpr std::size_t kMaxVariables = 32;
inline constexpr unsigned kNoTruncation = std::numeric_limits<unsigned>::max();

/// Ordered coordinate labels with an x/y split: the first `x_count()` labels
/// are x-type (dual of the reductive part), the rest are y-type.
class CoordinateSystem {
public:
    CoordinateSystem(std::vector<std::string> x_names, std::vector<std::string> y_names);

    std::size_t size() const noexcept { return names_.size(); }
    std::size_t x_count() const noexcept { return x_count_; }
    std::size_t y_count() const noexcept { return names_.size() - x_count_; }
    bool is_x(std::size_t i) const noexcept { return i < x_count_; }

    const std::string& name(std::size_t i) const { return names_.at(i); }
    const std::vector<std::string>& names() const noexcept { return names_; }

    std::optional<std::size_t> find(std::string_view label) const;
    /// Like find() but throws CoordinateError for an unknown label.
    std::size_t index(std::string_view label) const;

    friend bool operator==(const CoordinateSystem&, const CoordinateSystem&) = default;

private:
    std::vector<std::string> names_;
    std::size_t x_count_;
};

using Coords = std::shared_ptr<const CoordinateSystem>;

Coords make_coords(std::vector<std::string> x_names, std::vector<std::string> y_names = {});

/// Identical object or equal labels and split.
bool same_ambient(const Coords& a, const Coords& b);
void require_same_ambient(const Coords& a, const Coords& b, std::string_view op);

/// Exponent vector. Entries past the ambient dimension are always zero.
class Monomial {
public:
    Monomial() = default;

    static Monomial variable(std::size_t i, unsigned power = 1);

    unsigned operator[](std::size_t i) const { return exps_[i]; }
    unsigned degree() const noexcept { return degree_; }
    bool is_one() const noexcept { return degree_ == 0; }

    void set(std::size_t i, unsigned e);

    Monomial operator*(const Monomial& o) const;
    /// Exponent of variable i lowered by one. Requires (*this)[i] > 0.
    Monomial lowered(std::size_t i) const;

    std::size_t hash() const noexcept;

    friend bool operator==(const Monomial& a, const Monomial& b) noexcept {
        return a.degree_ == b.degree_ && a.exps_ == b.exps_;
    }
    /// Graded lexicographic order.
    friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) noexcept;

private:
    std::array<std::uint8_t, kMaxVariables> exps_{};
    std::uint16_t degree_ = 0;
};

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const noexcept { return m.hash(); }
};

struct Term {
    Monomial mono;
    Rational coef;
};

/// Sparse multivariate polynomial over Q. Terms are kept strictly
/// decreasing in graded lex order with no zero coefficients.
class Polynomial {
public:
    explicit Polynomial(Coords coords) : coords_(std::move(coords)) {}
    Polynomial(Coords coords, const Rational& constant);

    static Polynomial variable(const Coords& coords, std::size_t i);
    static Polynomial variable(const Coords& coords, std::string_view label);
    static Polynomial monomial(const Coords& coords, const Monomial& m, const Rational& c = 1);
    /// Takes terms in any order, merges duplicates and drops zeros.
    static Polynomial from_terms(const Coords& coords, std::vector<Term> terms);

    const Coords& coords() const noexcept { return coords_; }
    std::span<const Term> terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_constant() const noexcept;
    Rational constant_term() const;
    Rational coefficient(const Monomial& m) const;

    /// Highest total degree; -1 for the zero polynomial.
    int degree() const noexcept;
    /// Lowest total degree; -1 for the zero polynomial.
    int min_degree() const noexcept;

    Polynomial homogeneous_part(unsigned k) const;
    Polynomial truncated(unsigned max_degree) const;
    Polynomial partial(std::size_t i) const;
    Polynomial partial(std::string_view label) const;

    Rational evaluate(std::span<const Rational> point) const;

    /// Same term data, reinterpreted over another ambient of equal dimension.
    Polynomial rehomed(const Coords& coords) const;

    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial& operator*=(const Rational& s);

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
    friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

    friend bool operator==(const Polynomial& a, const Polynomial& b);

    std::string to_string() const;

private:
    friend Polynomial multiply(const Polynomial&, const Polynomial&, unsigned);
    Polynomial(Coords coords, std::vector<Term> sorted_terms)
        : coords_(std::move(coords)), terms_(std::move(sorted_terms)) {}

    Coords coords_;
    std::vector<Term> terms_;
};

/// Product with every term of total degree above max_degree dropped.
Polynomial multiply(const Polynomial& a, const Polynomial& b, unsigned max_degree = kNoTruncation);
Polynomial truncate(const Polynomial& a, unsigned max_degree);

/// Substitutes z_k -> subs[k]. The result lives in the ambient of subs.
Polynomial compose(const Polynomial& a, std::span<const Polynomial> subs,
                   unsigned max_degree = kNoTruncation);

/// Reusable substitution that caches powers of the substituted polynomials.
class Substitution {
public:
    Substitution(std::vector<Polynomial> subs, unsigned max_degree = kNoTruncation);

    const Coords& target() const noexcept { return target_; }
    Polynomial apply(const Polynomial& a);

private:
    const Polynomial& power(std::size_t k, unsigned e);

    Coords target_;
    std::vector<Polynomial> subs_;
    std::vector<int> min_degree_;
    std::vector<std::vector<Polynomial>> powers_;
    unsigned max_degree_;
};

/// Text syntax: `2*e - 1/3*x1^2*y1 + h`. Whitespace is ignored.
Polynomial parse_polynomial(std::string_view text, const Coords& coords);

}  // namespace poislin
