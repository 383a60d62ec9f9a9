#include "poislin/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <unordered_map>
#include <unordered_set>

#include "poislin/error.hpp"

namespace poislin {

// ---------------------------------------------------------------------------
// Rational

Rational parse_rational(std::string_view text) {
    std::string s(text);
    auto valid_int = [](std::string_view t, bool allow_sign) {
        if (!t.empty() && allow_sign && (t[0] == '-' || t[0] == '+')) t.remove_prefix(1);
        return !t.empty() && std::all_of(t.begin(), t.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
    };
    auto slash = s.find('/');
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!valid_int(num, true) || !valid_int(den, false)) throw Error("malformed rational '" + s + "'");
    if (num[0] == '+') num.erase(0, 1);
    Rational r;
    r.get_num() = mpz_class(num, 10);
    r.get_den() = mpz_class(den, 10);
    if (r.get_den() == 0) throw Error("zero denominator in '" + s + "'");
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& r) { return r.get_str(10); }

// ---------------------------------------------------------------------------
// CoordinateSystem

CoordinateSystem::CoordinateSystem(std::vector<std::string> x_names, std::vector<std::string> y_names)
    : x_count_(x_names.size()) {
    names_ = std::move(x_names);
    names_.insert(names_.end(), std::make_move_iterator(y_names.begin()), std::make_move_iterator(y_names.end()));
    if (names_.size() > kMaxVariables)
        throw DimensionError("at most " + std::to_string(kMaxVariables) + " coordinates are supported");
    std::unordered_set<std::string> seen;
    for (const auto& n : names_) {
        if (n.empty()) throw CoordinateError("empty coordinate label");
        if (!seen.insert(n).second) throw CoordinateError("duplicate coordinate label '" + n + "'");
    }
}

std::optional<std::size_t> CoordinateSystem::find(std::string_view label) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == label) return i;
    return std::nullopt;
}

std::size_t CoordinateSystem::index(std::string_view label) const {
    if (auto i = find(label)) return *i;
    throw CoordinateError("unknown coordinate '" + std::string(label) + "'");
}

Coords make_coords(std::vector<std::string> x_names, std::vector<std::string> y_names) {
    return std::make_shared<const CoordinateSystem>(std::move(x_names), std::move(y_names));
}

bool same_ambient(const Coords& a, const Coords& b) {
    return a == b || (a && b && *a == *b);
}

void require_same_ambient(const Coords& a, const Coords& b, std::string_view op) {
    if (!same_ambient(a, b)) throw CoordinateError(std::string(op) + ": operands live in different coordinate systems");
}

// ---------------------------------------------------------------------------
// Monomial

Monomial Monomial::variable(std::size_t i, unsigned power) {
    Monomial m;
    m.set(i, power);
    return m;
}

void Monomial::set(std::size_t i, unsigned e) {
    if (i >= kMaxVariables) throw DimensionError("variable index out of range");
    if (e > 255) throw DimensionError("exponent overflow");
    degree_ = static_cast<std::uint16_t>(degree_ - exps_[i] + e);
    exps_[i] = static_cast<std::uint8_t>(e);
}

Monomial Monomial::operator*(const Monomial& o) const {
    Monomial r;
    for (std::size_t i = 0; i < kMaxVariables; ++i) {
        unsigned e = exps_[i] + o.exps_[i];
        if (e > 255) throw DimensionError("exponent overflow");
        r.exps_[i] = static_cast<std::uint8_t>(e);
    }
    r.degree_ = static_cast<std::uint16_t>(degree_ + o.degree_);
    return r;
}

Monomial Monomial::lowered(std::size_t i) const {
    Monomial r = *this;
    --r.exps_[i];
    --r.degree_;
    return r;
}

std::size_t Monomial::hash() const noexcept {
    std::uint64_t words[kMaxVariables / 8];
    std::memcpy(words, exps_.data(), sizeof(words));
    std::uint64_t h = 0x9e3779b97f4a7c15ull ^ degree_;
    for (auto w : words) {
        h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        h *= 0xff51afd7ed558ccdull;
    }
    return static_cast<std::size_t>(h ^ (h >> 33));
}

std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) noexcept {
    if (auto c = a.degree_ <=> b.degree_; c != 0) return c;
    // memcmp on unsigned bytes is lexicographic with variable 0 most significant.
    int c = std::memcmp(a.exps_.data(), b.exps_.data(), kMaxVariables);
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

// ---------------------------------------------------------------------------
// Polynomial

namespace {

bool term_desc(const Term& a, const Term& b) { return a.mono > b.mono; }

std::vector<Term> drain_sorted(std::unordered_map<Monomial, Rational, MonomialHash>& acc) {
    std::vector<Term> out;
    out.reserve(acc.size());
    for (auto& [m, c] : acc)
        if (!poislin::is_zero(c)) out.push_back({m, std::move(c)});
    std::sort(out.begin(), out.end(), term_desc);
    return out;
}

}  // namespace

Polynomial::Polynomial(Coords coords, const Rational& constant) : coords_(std::move(coords)) {
    if (!poislin::is_zero(constant)) terms_.push_back({Monomial{}, constant});
}

Polynomial Polynomial::variable(const Coords& coords, std::size_t i) {
    if (i >= coords->size()) throw CoordinateError("coordinate index out of range");
    return monomial(coords, Monomial::variable(i));
}

Polynomial Polynomial::variable(const Coords& coords, std::string_view label) {
    return variable(coords, coords->index(label));
}

Polynomial Polynomial::monomial(const Coords& coords, const Monomial& m, const Rational& c) {
    Polynomial p(coords);
    if (!poislin::is_zero(c)) p.terms_.push_back({m, c});
    return p;
}

Polynomial Polynomial::from_terms(const Coords& coords, std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(), term_desc);
    std::vector<Term> out;
    out.reserve(terms.size());
    for (auto& t : terms) {
        if (!out.empty() && out.back().mono == t.mono)
            out.back().coef += t.coef;
        else
            out.push_back(std::move(t));
    }
    std::erase_if(out, [](const Term& t) { return poislin::is_zero(t.coef); });
    return Polynomial(coords, std::move(out));
}

bool Polynomial::is_constant() const noexcept {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one());
}

Rational Polynomial::constant_term() const {
    if (!terms_.empty() && terms_.back().mono.is_one()) return terms_.back().coef;
    return 0;
}

Rational Polynomial::coefficient(const Monomial& m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m, [](const Term& t, const Monomial& k) { return t.mono > k; });
    if (it != terms_.end() && it->mono == m) return it->coef;
    return 0;
}

int Polynomial::degree() const noexcept { return terms_.empty() ? -1 : static_cast<int>(terms_.front().mono.degree()); }
int Polynomial::min_degree() const noexcept { return terms_.empty() ? -1 : static_cast<int>(terms_.back().mono.degree()); }

Polynomial Polynomial::homogeneous_part(unsigned k) const {
    std::vector<Term> out;
    for (const auto& t : terms_)
        if (t.mono.degree() == k) out.push_back(t);
    return Polynomial(coords_, std::move(out));
}

Polynomial Polynomial::truncated(unsigned max_degree) const {
    if (degree() <= static_cast<int>(std::min<unsigned>(max_degree, 1u << 20))) return *this;
    std::vector<Term> out;
    for (const auto& t : terms_)
        if (t.mono.degree() <= max_degree) out.push_back(t);
    return Polynomial(coords_, std::move(out));
}

Polynomial truncate(const Polynomial& a, unsigned max_degree) { return a.truncated(max_degree); }

Polynomial Polynomial::partial(std::size_t i) const {
    if (i >= coords_->size()) throw CoordinateError("coordinate index out of range");
    // Lowering one exponent preserves graded lex order among the survivors.
    std::vector<Term> out;
    for (const auto& t : terms_) {
        unsigned e = t.mono[i];
        if (e == 0) continue;
        out.push_back({t.mono.lowered(i), t.coef * e});
    }
    return Polynomial(coords_, std::move(out));
}

Polynomial Polynomial::partial(std::string_view label) const { return partial(coords_->index(label)); }

Rational Polynomial::evaluate(std::span<const Rational> point) const {
    if (point.size() != coords_->size())
        throw DimensionError("evaluation point has " + std::to_string(point.size()) + " entries, expected " +
                             std::to_string(coords_->size()));
    Rational sum = 0;
    for (const auto& t : terms_) {
        Rational v = t.coef;
        for (std::size_t i = 0; i < point.size(); ++i)
            for (unsigned e = 0; e < t.mono[i]; ++e) v *= point[i];
        sum += v;
    }
    return sum;
}

Polynomial Polynomial::rehomed(const Coords& coords) const {
    if (coords->size() != coords_->size()) throw DimensionError("rehome: dimension mismatch");
    return Polynomial(coords, terms_);
}

Polynomial Polynomial::operator-() const {
    Polynomial r = *this;
    for (auto& t : r.terms_) t.coef = -t.coef;
    return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    require_same_ambient(coords_, o.coords_, "add");
    if (o.terms_.empty()) return *this;
    std::vector<Term> out;
    out.reserve(terms_.size() + o.terms_.size());
    auto a = terms_.begin(), ae = terms_.end();
    auto b = o.terms_.begin(), be = o.terms_.end();
    while (a != ae || b != be) {
        if (b == be || (a != ae && a->mono > b->mono)) {
            out.push_back(std::move(*a++));
        } else if (a == ae || b->mono > a->mono) {
            out.push_back(*b++);
        } else {
            Rational c = a->coef + b->coef;
            if (!poislin::is_zero(c)) out.push_back({a->mono, std::move(c)});
            ++a;
            ++b;
        }
    }
    terms_ = std::move(out);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) { return *this += -o; }

Polynomial& Polynomial::operator*=(const Rational& s) {
    if (poislin::is_zero(s)) {
        terms_.clear();
        return *this;
    }
    for (auto& t : terms_) t.coef *= s;
    return *this;
}

Polynomial multiply(const Polynomial& a, const Polynomial& b, unsigned max_degree) {
    require_same_ambient(a.coords_, b.coords_, "multiply");
    if (a.terms_.empty() || b.terms_.empty()) return Polynomial(a.coords_);
    if (a.min_degree() + b.min_degree() > static_cast<long>(std::min<unsigned>(max_degree, 1u << 20)))
        return Polynomial(a.coords_);
    const Polynomial& big = a.terms_.size() >= b.terms_.size() ? a : b;
    const Polynomial& small = &big == &a ? b : a;
    if (small.terms_.size() == 1) {
        // Multiplying by a single monomial preserves the term order.
        const Term& s = small.terms_[0];
        std::vector<Term> out;
        out.reserve(big.terms_.size());
        for (const auto& t : big.terms_) {
            if (t.mono.degree() + s.mono.degree() > max_degree) continue;
            out.push_back({t.mono * s.mono, t.coef * s.coef});
        }
        return Polynomial(a.coords_, std::move(out));
    }
    std::unordered_map<Monomial, Rational, MonomialHash> acc;
    acc.reserve(std::min<std::size_t>(a.terms_.size() * b.terms_.size(), 1u << 16));
    Rational tmp;
    for (const auto& s : small.terms_) {
        for (const auto& t : big.terms_) {
            if (s.mono.degree() + t.mono.degree() > max_degree) continue;
            mpq_mul(tmp.get_mpq_t(), s.coef.get_mpq_t(), t.coef.get_mpq_t());
            auto [it, fresh] = acc.try_emplace(s.mono * t.mono);
            if (fresh)
                it->second = tmp;
            else
                it->second += tmp;
        }
    }
    return Polynomial(a.coords_, drain_sorted(acc));
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) { return multiply(a, b); }

bool operator==(const Polynomial& a, const Polynomial& b) {
    if (!same_ambient(a.coords_, b.coords_)) return false;
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
        if (a.terms_[i].mono != b.terms_[i].mono || a.terms_[i].coef != b.terms_[i].coef) return false;
    return true;
}

std::string Polynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& t : terms_) {
        bool neg = sgn(t.coef) < 0;
        if (first)
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        first = false;
        Rational mag = abs(t.coef);
        std::string mono;
        for (std::size_t i = 0; i < coords_->size(); ++i) {
            unsigned e = t.mono[i];
            if (e == 0) continue;
            if (!mono.empty()) mono += '*';
            mono += coords_->name(i);
            if (e > 1) mono += "^" + std::to_string(e);
        }
        if (mono.empty())
            out += poislin::to_string(mag);
        else if (is_one(mag))
            out += mono;
        else
            out += poislin::to_string(mag) + "*" + mono;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Composition

Substitution::Substitution(std::vector<Polynomial> subs, unsigned max_degree)
    : subs_(std::move(subs)), max_degree_(max_degree) {
    if (subs_.empty()) throw DimensionError("substitution needs at least one polynomial");
    target_ = subs_[0].coords();
    for (const auto& s : subs_) require_same_ambient(target_, s.coords(), "compose");
    for (const auto& s : subs_) min_degree_.push_back(s.is_zero() ? -1 : s.min_degree());
    powers_.resize(subs_.size());
}

const Polynomial& Substitution::power(std::size_t k, unsigned e) {
    auto& cache = powers_[k];
    if (cache.empty()) {
        cache.emplace_back(target_, Rational(1));
        cache.push_back(subs_[k].truncated(max_degree_));
    }
    while (cache.size() <= e) cache.push_back(multiply(cache.back(), cache[1], max_degree_));
    return cache[e];
}

Polynomial Substitution::apply(const Polynomial& a) {
    const std::size_t nvars = a.coords()->size();
    if (nvars != subs_.size())
        throw DimensionError("compose: " + std::to_string(subs_.size()) + " substitutions for " +
                             std::to_string(nvars) + " variables");

    struct Sparse {
        std::vector<std::pair<std::uint8_t, std::uint8_t>> factors;  // (variable, exponent)
        const Rational* coef;
    };
    std::vector<Sparse> work;
    work.reserve(a.size());
    const long cap = std::min<unsigned>(max_degree_, 1u << 20);
    for (const auto& t : a.terms()) {
        Sparse s{{}, &t.coef};
        long lower = 0;
        bool vanishes = false;
        for (std::size_t v = 0; v < nvars; ++v) {
            unsigned e = t.mono[v];
            if (!e) continue;
            if (min_degree_[v] < 0) vanishes = true;
            lower += static_cast<long>(e) * std::max(min_degree_[v], 0);
            s.factors.emplace_back(static_cast<std::uint8_t>(v), static_cast<std::uint8_t>(e));
        }
        if (vanishes || lower > cap) continue;
        work.push_back(std::move(s));
    }
    std::sort(work.begin(), work.end(), [](const Sparse& x, const Sparse& y) { return x.factors < y.factors; });

    // Shared prefixes of the factor lists reuse their partial products.
    std::vector<std::pair<std::pair<std::uint8_t, std::uint8_t>, Polynomial>> stack;
    std::unordered_map<Monomial, Rational, MonomialHash> acc;
    const Polynomial one(target_, Rational(1));
    Rational tmp;
    for (const auto& w : work) {
        std::size_t common = 0;
        while (common < stack.size() && common < w.factors.size() && stack[common].first == w.factors[common]) ++common;
        stack.resize(common, {{}, one});
        for (std::size_t f = common; f < w.factors.size(); ++f) {
            const auto [v, e] = w.factors[f];
            const Polynomial& base = stack.empty() ? one : stack.back().second;
            stack.emplace_back(w.factors[f], multiply(base, power(v, e), max_degree_));
        }
        const Polynomial& prod = stack.empty() ? one : stack.back().second;
        for (const auto& t : prod.terms()) {
            mpq_mul(tmp.get_mpq_t(), t.coef.get_mpq_t(), w.coef->get_mpq_t());
            auto [it, fresh] = acc.try_emplace(t.mono);
            if (fresh)
                it->second = tmp;
            else
                it->second += tmp;
        }
    }
    std::vector<Term> terms;
    terms.reserve(acc.size());
    for (auto& [m, c] : acc)
        if (!poislin::is_zero(c)) terms.push_back({m, std::move(c)});
    return Polynomial::from_terms(target_, std::move(terms));
}

Polynomial compose(const Polynomial& a, std::span<const Polynomial> subs, unsigned max_degree) {
    if (subs.size() != a.coords()->size())
        throw DimensionError("compose: " + std::to_string(subs.size()) + " substitutions for " +
                             std::to_string(a.coords()->size()) + " variables");
    Substitution s(std::vector<Polynomial>(subs.begin(), subs.end()), max_degree);
    return s.apply(a);
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class PolyParser {
public:
    PolyParser(std::string_view text, const Coords& coords) : coords_(coords) {
        for (char c : text)
            if (!std::isspace(static_cast<unsigned char>(c))) s_.push_back(c);
    }

    Polynomial parse() {
        if (s_.empty()) fail("empty polynomial");
        std::vector<Term> terms;
        bool first = true;
        while (pos_ < s_.size()) {
            int sign = 1;
            if (peek() == '+' || peek() == '-') {
                sign = get() == '-' ? -1 : 1;
            } else if (!first) {
                fail("expected '+' or '-'");
            }
            first = false;
            Term t = term();
            if (sign < 0) t.coef = -t.coef;
            terms.push_back(std::move(t));
        }
        return Polynomial::from_terms(coords_, std::move(terms));
    }

private:
    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    char get() { return s_[pos_++]; }
    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError(0, what + " at offset " + std::to_string(pos_) + " in '" + s_ + "'");
    }

    std::string digits() {
        std::string d;
        while (std::isdigit(static_cast<unsigned char>(peek()))) d.push_back(get());
        if (d.empty()) fail("expected digits");
        return d;
    }

    Term term() {
        Term t{Monomial{}, Rational(1)};
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            std::string c = digits();
            if (peek() == '/') {
                get();
                c += "/" + digits();
            }
            try {
                t.coef = parse_rational(c);
            } catch (const Error& e) {
                fail(e.what());
            }
            if (peek() != '*') return t;
            get();
        }
        while (true) {
            factor(t.mono);
            if (peek() != '*') break;
            get();
        }
        return t;
    }

    void factor(Monomial& m) {
        std::string name;
        if (!(std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_')) fail("expected coordinate name");
        while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') name.push_back(get());
        auto idx = coords_->find(name);
        if (!idx) throw CoordinateError("unknown coordinate '" + name + "' in polynomial");
        unsigned e = 1;
        if (peek() == '^') {
            get();
            e = static_cast<unsigned>(std::stoul(digits()));
        }
        m.set(*idx, m[*idx] + e);
    }

    const Coords& coords_;
    std::string s_;
    std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, const Coords& coords) { return PolyParser(text, coords).parse(); }

}  // namespace poislin
