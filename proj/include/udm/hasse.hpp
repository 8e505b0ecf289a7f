#pragma once

/**
 * @file hasse.hpp
 * @brief Univariate polynomials over GF(q) with Hasse derivatives.
 *
 * The i-th Hasse derivative maps sum a_k X^k to sum C(k,i) a_k X^{k-i}. Unlike
 * the formal derivative it detects root multiplicities in positive
 * characteristic: beta is a root of multiplicity at least m exactly when the
 * derivatives of order 0..m-1 all vanish at beta.
 */

#include <udm/error.hpp>
#include <udm/gf.hpp>

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace udm {

/// Coefficient vector, index k holds the coefficient of X^k. Always normalized.
class Polynomial {
public:
    explicit Polynomial(Field field) : field_(std::move(field)) {}

    Polynomial(Field field, std::vector<Element> coeffs) : field_(std::move(field)), coeffs_(std::move(coeffs))
    {
        normalize();
    }

    static Polynomial from_values(const Field& field, std::initializer_list<std::int64_t> coeffs)
    {
        std::vector<Element> c;
        for (auto v : coeffs) c.push_back(field.element(v));
        return {field, std::move(c)};
    }

    static Polynomial constant(const Field& field, Element c) { return {field, {c}}; }

    /// c X^t
    static Polynomial monomial(const Field& field, std::size_t t, Element c)
    {
        std::vector<Element> v(t + 1, field.zero());
        v[t] = c;
        return {field, std::move(v)};
    }

    [[nodiscard]] const Field& field() const noexcept { return field_; }
    [[nodiscard]] std::span<const Element> coeffs() const noexcept { return coeffs_; }
    [[nodiscard]] bool is_zero() const noexcept { return coeffs_.empty(); }

    /// Empty for the zero polynomial.
    [[nodiscard]] std::optional<std::size_t> degree() const noexcept
    {
        if (coeffs_.empty()) return std::nullopt;
        return coeffs_.size() - 1;
    }

    /// Coefficient of X^k, zero beyond the degree.
    [[nodiscard]] Element coeff(std::size_t k) const noexcept
    {
        return k < coeffs_.size() ? coeffs_[k] : Element{0};
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b)
    {
        return a.field_ == b.field_ && a.coeffs_ == b.coeffs_;
    }

private:
    void normalize()
    {
        while (!coeffs_.empty() && coeffs_.back().value == 0) coeffs_.pop_back();
    }

    Field field_;
    std::vector<Element> coeffs_;
};

inline Polynomial operator+(const Polynomial& a, const Polynomial& b)
{
    if (!(a.field() == b.field())) throw Error(Errc::FieldMismatch, "polynomials over different fields");
    const Field& f = a.field();
    const std::size_t len = std::max(a.coeffs().size(), b.coeffs().size());
    std::vector<Element> c(len);
    for (std::size_t k = 0; k < len; ++k) c[k] = f.add(a.coeff(k), b.coeff(k));
    return {f, std::move(c)};
}

inline Polynomial operator-(const Polynomial& a, const Polynomial& b)
{
    if (!(a.field() == b.field())) throw Error(Errc::FieldMismatch, "polynomials over different fields");
    const Field& f = a.field();
    const std::size_t len = std::max(a.coeffs().size(), b.coeffs().size());
    std::vector<Element> c(len);
    for (std::size_t k = 0; k < len; ++k) c[k] = f.sub(a.coeff(k), b.coeff(k));
    return {f, std::move(c)};
}

inline Polynomial operator*(const Polynomial& a, const Polynomial& b)
{
    if (!(a.field() == b.field())) throw Error(Errc::FieldMismatch, "polynomials over different fields");
    const Field& f = a.field();
    if (a.is_zero() || b.is_zero()) return Polynomial(f);
    std::vector<Element> c(a.coeffs().size() + b.coeffs().size() - 1, f.zero());
    for (std::size_t i = 0; i < a.coeffs().size(); ++i)
        for (std::size_t j = 0; j < b.coeffs().size(); ++j) c[i + j] = f.add(c[i + j], f.mul(a.coeff(i), b.coeff(j)));
    return {f, std::move(c)};
}

inline Polynomial scale(const Polynomial& a, Element c)
{
    const Field& f = a.field();
    std::vector<Element> out(a.coeffs().begin(), a.coeffs().end());
    for (auto& e : out) e = f.mul(e, c);
    return {f, std::move(out)};
}

/// i-th Hasse derivative; zero when i exceeds the degree, identity for i = 0.
inline Polynomial hasse_derivative(const Polynomial& p, std::size_t i)
{
    const Field& f = p.field();
    if (i == 0) return p;
    if (p.is_zero() || i > *p.degree()) return Polynomial(f);
    PascalTable binomial(f);
    std::vector<Element> out(p.coeffs().size() - i);
    for (std::size_t k = i; k < p.coeffs().size(); ++k)
        out[k - i] = f.mul(binomial(static_cast<std::int64_t>(k), static_cast<std::int64_t>(i)), p.coeff(k));
    return {f, std::move(out)};
}

/// Horner evaluation.
inline Element evaluate(const Polynomial& p, Element beta)
{
    const Field& f = p.field();
    Element acc = f.zero();
    for (std::size_t k = p.coeffs().size(); k-- > 0;) acc = f.add(f.mul(acc, beta), p.coeff(k));
    return acc;
}

/// Root multiplicity, or the infinite sentinel for the zero polynomial.
class Multiplicity {
public:
    static constexpr Multiplicity infinite() noexcept { return Multiplicity(true, 0); }
    static constexpr Multiplicity finite(std::size_t m) noexcept { return Multiplicity(false, m); }

    [[nodiscard]] constexpr bool is_infinite() const noexcept { return infinite_; }
    [[nodiscard]] constexpr std::size_t value() const noexcept { return value_; }

    friend constexpr bool operator==(const Multiplicity&, const Multiplicity&) = default;

private:
    constexpr Multiplicity(bool inf, std::size_t v) noexcept : infinite_(inf), value_(v) {}
    bool infinite_;
    std::size_t value_;
};

/// Smallest i with D^(i)(p)(beta) != 0.
inline Multiplicity root_multiplicity(const Polynomial& p, Element beta)
{
    if (p.is_zero()) return Multiplicity::infinite();
    for (std::size_t i = 0;; ++i)
        if (evaluate(hasse_derivative(p, i), beta).value != 0) return Multiplicity::finite(i);
}

/// prod (X - gamma)^m over the given pairs; the empty product is 1.
inline Polynomial from_linear_factors(const Field& field, std::span<const std::pair<Element, std::size_t>> factors)
{
    Polynomial out = Polynomial::constant(field, field.one());
    for (const auto& [gamma, m] : factors) {
        const Polynomial linear(field, {field.neg(gamma), field.one()});
        for (std::size_t r = 0; r < m; ++r) out = out * linear;
    }
    return out;
}

/// A point of the projective line as a pair (x, z); only (beta, 1) and (1, 0) are used.
struct ProjectivePoint {
    Element x;
    Element z;
};

/**
 * i-th Hasse derivative of the homogeneous monomial L^t Lt^{n-1-t}.
 *
 * At (beta, 1) the derivative is taken in L and equals C(t,i) beta^{t-i}.
 * At (1, 0) it is taken in Lt, which leaves 1 exactly when i = n-1-t.
 * Any other point throws BadPoint.
 */
inline Element hasse_monomial_bivariate(const Field& field, std::size_t t, std::size_t n, std::size_t i,
                                        ProjectivePoint point)
{
    if (t >= n) throw Error(Errc::DimensionMismatch, "monomial index t must be below n");
    const std::size_t other = n - 1 - t;
    if (point.z == field.one()) {
        // D_L^(i) (L^t Lt^other) = C(t,i) L^{t-i} Lt^other, evaluated at Lt = 1.
        const Polynomial d = hasse_derivative(Polynomial::monomial(field, t, field.one()), i);
        return evaluate(d, point.x);
    }
    if (point.x == field.one() && point.z == field.zero()) {
        // D_Lt^(i) (L^t Lt^other) = C(other,i) L^t Lt^{other-i}; at Lt = 0 only other == i survives.
        const Polynomial d = hasse_derivative(Polynomial::monomial(field, other, field.one()), i);
        return d.coeff(0);
    }
    throw Error(Errc::BadPoint, "only (beta, 1) and (1, 0) are supported");
}

}  // namespace udm
