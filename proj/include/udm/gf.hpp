#pragma once

/**
 * @file gf.hpp
 * @brief Runtime finite fields GF(p^s) with a canonical integer encoding.
 *
 * An element of GF(p^s) is stored as an integer in [0, q) whose base-p digits,
 * least significant first, are the coefficients of its polynomial-basis
 * representation modulo the field's defining polynomial. The defining
 * polynomial is the lexicographically smallest monic irreducible of degree s,
 * comparing coefficient lists from the constant term upward, so every build
 * agrees on the encoding.
 *
 * Multiplication goes through log/antilog tables built once at construction
 * from the primitive element; the tables reproduce plain polynomial
 * multiplication modulo the defining polynomial (see detail::poly_mulmod).
 */

#include <udm/error.hpp>

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace udm {

/// Field elements are plain values; the field they belong to is carried by the container.
struct Element {
    std::uint32_t value = 0;

    friend constexpr auto operator<=>(const Element&, const Element&) = default;
};

inline constexpr std::uint32_t max_field_order = 1u << 16;

namespace detail {

using Digits = std::vector<std::uint32_t>;

inline bool is_prime(std::int64_t n)
{
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n)
{
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

inline void trim(Digits& a)
{
    while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo a monic b, both over GF(p).
inline Digits poly_mod(Digits a, const Digits& b, std::uint32_t p)
{
    trim(a);
    const std::size_t db = b.size() - 1;
    while (a.size() > db) {
        const std::uint32_t lead = a.back();
        const std::size_t shift = a.size() - 1 - db;
        for (std::size_t j = 0; j <= db; ++j)
            a[shift + j] = (a[shift + j] + (p - lead) * b[j]) % p;
        trim(a);
    }
    return a;
}

inline Digits poly_mul(const Digits& a, const Digits& b, std::uint32_t p)
{
    if (a.empty() || b.empty()) return {};
    Digits c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            c[i + j] = (c[i + j] + a[i] * b[j]) % p;
    trim(c);
    return c;
}

inline Digits to_digits(std::uint32_t v, std::uint32_t p, std::uint32_t s)
{
    Digits d(s, 0);
    for (std::uint32_t i = 0; i < s; ++i) {
        d[i] = v % p;
        v /= p;
    }
    return d;
}

inline std::uint32_t from_digits(const Digits& d, std::uint32_t p)
{
    std::uint32_t v = 0;
    for (std::size_t i = d.size(); i-- > 0;) v = v * p + d[i];
    return v;
}

/// Product of two encoded elements by schoolbook multiplication modulo `modulus`.
inline std::uint32_t poly_mulmod(std::uint32_t a, std::uint32_t b, const Digits& modulus, std::uint32_t p)
{
    const auto s = static_cast<std::uint32_t>(modulus.size() - 1);
    auto c = poly_mod(poly_mul(to_digits(a, p, s), to_digits(b, p, s), p), modulus, p);
    return from_digits(c, p);
}

inline bool is_irreducible(const Digits& f, std::uint32_t p)
{
    const std::size_t deg = f.size() - 1;
    if (deg <= 1) return true;
    if (f[0] == 0) return false;
    for (std::size_t d = 1; d <= deg / 2; ++d) {
        std::uint64_t count = 1;
        for (std::size_t k = 0; k < d; ++k) count *= p;
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            Digits g = to_digits(static_cast<std::uint32_t>(idx), p, static_cast<std::uint32_t>(d));
            g.push_back(1);
            if (poly_mod(f, g, p).empty()) return false;
        }
    }
    return true;
}

// Monic irreducible of degree s, smallest when (c_0, c_1, ..., c_{s-1}) is compared left to right.
inline Digits smallest_irreducible(std::uint32_t p, std::uint32_t s)
{
    std::uint64_t count = 1;
    for (std::uint32_t k = 0; k < s; ++k) count *= p;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        Digits f(s + 1, 0);
        std::uint64_t rest = idx;
        for (std::uint32_t j = s; j-- > 0;) {
            f[j] = static_cast<std::uint32_t>(rest % p);
            rest /= p;
        }
        // f[0] is now the most significant digit of idx.
        f[s] = 1;
        if (is_irreducible(f, p)) return f;
    }
    throw Error(Errc::BadExponent, "no irreducible polynomial found");
}

struct FieldData {
    std::uint32_t p = 0;
    std::uint32_t s = 0;
    std::uint32_t q = 0;
    Digits modulus;
    std::uint32_t primitive = 0;
    std::vector<std::uint32_t> log;  // log[0] unused
    std::vector<std::uint32_t> exp;  // length 2(q-1), so exp[log a + log b] needs no reduction
};

}  // namespace detail

/**
 * Handle to an immutable finite field. Copies share the same tables.
 */
class Field {
public:
    /// GF(p^s). Throws NotPrime, BadExponent, or FieldTooLarge when q > 2^16.
    Field(std::int64_t p, std::int64_t s)
    {
        if (!detail::is_prime(p)) throw Error(Errc::NotPrime, std::to_string(p) + " is not prime");
        if (s < 1) throw Error(Errc::BadExponent, "exponent must be >= 1, got " + std::to_string(s));
        std::uint64_t q = 1;
        for (std::int64_t k = 0; k < s; ++k) {
            q *= static_cast<std::uint64_t>(p);
            if (q > max_field_order)
                throw Error(Errc::FieldTooLarge, "field order exceeds 2^16");
        }
        auto d = std::make_shared<detail::FieldData>();
        d->p = static_cast<std::uint32_t>(p);
        d->s = static_cast<std::uint32_t>(s);
        d->q = static_cast<std::uint32_t>(q);
        if (s == 1)
            d->modulus = {0, 1};
        else
            d->modulus = detail::smallest_irreducible(d->p, d->s);
        d->primitive = find_primitive(*d);
        build_tables(*d);
        data_ = std::move(d);
    }

    /// Factors q = p^s. Throws NotPrimePower.
    static Field from_order(std::int64_t q)
    {
        if (q < 2) throw Error(Errc::NotPrimePower, std::to_string(q) + " is not a prime power");
        const auto factors = detail::prime_factors(static_cast<std::uint64_t>(q));
        if (factors.size() != 1) throw Error(Errc::NotPrimePower, std::to_string(q) + " is not a prime power");
        std::int64_t s = 0;
        for (std::int64_t r = q; r > 1; r /= static_cast<std::int64_t>(factors[0])) ++s;
        return Field(static_cast<std::int64_t>(factors[0]), s);
    }

    /// Parses `q=<p>^<s>` or `q=<p>^<s>;mod=<c_0,...,c_s>`. The modulus, when present, must match.
    static Field parse(std::string_view text)
    {
        auto fail = [&](const std::string& why) {
            return Error(Errc::ParseError, "bad field string '" + std::string(text) + "': " + why);
        };
        if (text.substr(0, 2) != "q=") throw fail("expected 'q='");
        auto semi = text.find(';');
        std::string head(text.substr(2, semi == std::string_view::npos ? std::string_view::npos : semi - 2));
        auto caret = head.find('^');
        if (caret == std::string::npos) throw fail("expected '<p>^<s>'");
        std::int64_t p = 0;
        std::int64_t s = 0;
        try {
            std::size_t used = 0;
            p = std::stoll(head.substr(0, caret), &used);
            if (used != caret) throw fail("bad prime");
            std::string exps = head.substr(caret + 1);
            s = std::stoll(exps, &used);
            if (used != exps.size()) throw fail("bad exponent");
        } catch (const std::logic_error&) {
            throw fail("bad number");
        }
        std::optional<Field> built;
        try {
            built.emplace(p, s);
        } catch (const Error& e) {
            throw fail(e.what());
        }
        const Field& f = *built;
        if (semi != std::string_view::npos) {
            std::string_view rest = text.substr(semi + 1);
            if (rest.substr(0, 4) != "mod=") throw fail("expected 'mod='");
            if (f.to_string() != text) throw fail("modulus does not match the canonical one");
        } else if (s > 1) {
            throw fail("missing modulus");
        }
        return *built;
    }

    [[nodiscard]] std::uint32_t characteristic() const noexcept { return data_->p; }
    [[nodiscard]] std::uint32_t degree() const noexcept { return data_->s; }
    [[nodiscard]] std::uint32_t order() const noexcept { return data_->q; }
    /// Coefficients c_0..c_s of the defining polynomial (x for prime fields).
    [[nodiscard]] const std::vector<std::uint32_t>& modulus() const noexcept { return data_->modulus; }

    [[nodiscard]] Element zero() const noexcept { return {0}; }
    [[nodiscard]] Element one() const noexcept { return {1}; }

    /// Element from its canonical encoding; throws ParseError when out of range.
    [[nodiscard]] Element element(std::int64_t value) const
    {
        if (value < 0 || value >= static_cast<std::int64_t>(data_->q))
            throw Error(Errc::ParseError,
                        "element " + std::to_string(value) + " outside [0," + std::to_string(data_->q) + ")");
        return {static_cast<std::uint32_t>(value)};
    }

    [[nodiscard]] bool contains(Element a) const noexcept { return a.value < data_->q; }

    [[nodiscard]] Element add(Element a, Element b) const noexcept
    {
        const auto p = data_->p;
        if (data_->s == 1) return {(a.value + b.value) % p};
        if (p == 2) return {a.value ^ b.value};
        std::uint32_t out = 0;
        std::uint32_t place = 1;
        for (std::uint32_t i = 0; i < data_->s; ++i) {
            out += ((a.value % p + b.value % p) % p) * place;
            a.value /= p;
            b.value /= p;
            place *= p;
        }
        return {out};
    }

    [[nodiscard]] Element neg(Element a) const noexcept
    {
        const auto p = data_->p;
        if (data_->s == 1) return {(p - a.value) % p};
        if (p == 2) return a;
        std::uint32_t out = 0;
        std::uint32_t place = 1;
        for (std::uint32_t i = 0; i < data_->s; ++i) {
            out += ((p - a.value % p) % p) * place;
            a.value /= p;
            place *= p;
        }
        return {out};
    }

    [[nodiscard]] Element sub(Element a, Element b) const noexcept { return add(a, neg(b)); }

    [[nodiscard]] Element mul(Element a, Element b) const noexcept
    {
        if (a.value == 0 || b.value == 0) return {0};
        return {data_->exp[data_->log[a.value] + data_->log[b.value]]};
    }

    [[nodiscard]] Element inv(Element a) const
    {
        if (a.value == 0) throw Error(Errc::DivisionByZero, "inverse of zero");
        const auto order = data_->q - 1;
        return {data_->exp[(order - data_->log[a.value]) % order]};
    }

    [[nodiscard]] Element div(Element a, Element b) const { return mul(a, inv(b)); }

    /// a^e for any integer e; a^0 = 1 including a = 0. Negative e on zero throws DivisionByZero.
    [[nodiscard]] Element pow(Element a, std::int64_t e) const
    {
        if (e == 0) return one();
        if (a.value == 0) {
            if (e < 0) throw Error(Errc::DivisionByZero, "zero raised to a negative power");
            return zero();
        }
        const auto order = static_cast<std::int64_t>(data_->q - 1);
        std::int64_t r = (e % order) * static_cast<std::int64_t>(data_->log[a.value]) % order;
        if (r < 0) r += order;
        return {data_->exp[static_cast<std::size_t>(r)]};
    }

    /// Image of an integer in the prime subfield.
    [[nodiscard]] Element nat_map(std::int64_t z) const noexcept
    {
        const auto p = static_cast<std::int64_t>(data_->p);
        return {static_cast<std::uint32_t>(((z % p) + p) % p)};
    }

    /// Smallest-encoded generator of the multiplicative group.
    [[nodiscard]] Element primitive_element() const noexcept { return {data_->primitive}; }

    /// Multiplicative order of a nonzero element.
    [[nodiscard]] std::uint32_t multiplicative_order(Element a) const
    {
        if (a.value == 0) throw Error(Errc::DivisionByZero, "zero has no multiplicative order");
        std::uint32_t k = 1;
        for (Element x = a; x != one(); x = mul(x, a)) ++k;
        return k;
    }

    /// `q=<p>^<s>` plus `;mod=<c_0,...,c_s>` when s > 1.
    [[nodiscard]] std::string to_string() const
    {
        std::ostringstream os;
        os << "q=" << data_->p << '^' << data_->s;
        if (data_->s > 1) {
            os << ";mod=";
            for (std::size_t i = 0; i < data_->modulus.size(); ++i) os << (i ? "," : "") << data_->modulus[i];
        }
        return os.str();
    }

    friend bool operator==(const Field& a, const Field& b) noexcept
    {
        return a.data_ == b.data_ || (a.data_->p == b.data_->p && a.data_->s == b.data_->s &&
                                      a.data_->modulus == b.data_->modulus);
    }

private:
    static std::uint32_t find_primitive(const detail::FieldData& d)
    {
        const std::uint32_t order = d.q - 1;
        const auto factors = detail::prime_factors(order);
        auto slow_pow = [&](std::uint32_t a, std::uint64_t e) {
            std::uint32_t r = 1;
            while (e) {
                if (e & 1) r = d.s == 1 ? static_cast<std::uint32_t>(std::uint64_t(r) * a % d.p)
                                        : detail::poly_mulmod(r, a, d.modulus, d.p);
                a = d.s == 1 ? static_cast<std::uint32_t>(std::uint64_t(a) * a % d.p)
                             : detail::poly_mulmod(a, a, d.modulus, d.p);
                e >>= 1;
            }
            return r;
        };
        for (std::uint32_t g = 1; g < d.q; ++g) {
            bool ok = true;
            for (auto r : factors)
                if (slow_pow(g, order / r) == 1) {
                    ok = false;
                    break;
                }
            if (ok) return g;
        }
        throw Error(Errc::NotPrime, "no primitive element");  // unreachable for a genuine field
    }

    static void build_tables(detail::FieldData& d)
    {
        const std::uint32_t order = d.q - 1;
        d.log.assign(d.q, 0);
        d.exp.assign(2 * static_cast<std::size_t>(order) + 1, 0);
        std::uint32_t x = 1;
        for (std::uint32_t k = 0; k < order; ++k) {
            d.exp[k] = x;
            d.log[x] = k;
            x = d.s == 1 ? static_cast<std::uint32_t>(std::uint64_t(x) * d.primitive % d.p)
                         : detail::poly_mulmod(x, d.primitive, d.modulus, d.p);
        }
        for (std::uint32_t k = order; k < d.exp.size(); ++k) d.exp[k] = d.exp[k - order];
    }

    std::shared_ptr<const detail::FieldData> data_;
};

/**
 * Binomial coefficient mapped into the prime subfield of `field`.
 *
 * Zero for b < 0, one for b = 0. For a >= 0 the value is built from the Pascal
 * recurrence C(a,b) = C(a-1,b-1) + C(a-1,b) carried out mod p; for a < 0 it uses
 * C(a,b) = (-1)^b C(b-a-1,b), which follows from the same recurrence.
 */
inline Element binom(const Field& field, std::int64_t a, std::int64_t b)
{
    if (b < 0) return field.zero();
    if (b == 0) return field.one();
    if (a < 0) {
        Element v = binom(field, b - a - 1, b);
        return (b % 2) ? field.neg(v) : v;
    }
    if (b > a) return field.zero();
    const std::uint32_t p = field.characteristic();
    std::vector<std::uint32_t> row(static_cast<std::size_t>(b) + 1, 0);
    row[0] = 1;
    for (std::int64_t r = 1; r <= a; ++r) {
        for (std::int64_t j = std::min(r, b); j >= 1; --j) row[j] = (row[j] + row[j - 1]) % p;
    }
    return {row[static_cast<std::size_t>(b)]};
}

/// Memoized Pascal triangle mod p, grown on demand. Not thread-safe; keep one per caller.
class PascalTable {
public:
    explicit PascalTable(Field field) : field_(std::move(field)) { rows_.push_back({1}); }

    Element operator()(std::int64_t a, std::int64_t b)
    {
        if (b < 0) return field_.zero();
        if (b == 0) return field_.one();
        if (a < 0) return binom(field_, a, b);
        if (b > a) return field_.zero();
        const std::uint32_t p = field_.characteristic();
        while (rows_.size() <= static_cast<std::size_t>(a)) {
            const auto& prev = rows_.back();
            std::vector<std::uint32_t> next(prev.size() + 1, 0);
            next[0] = 1;
            for (std::size_t j = 1; j < prev.size(); ++j) next[j] = (prev[j - 1] + prev[j]) % p;
            next.back() = 1;
            rows_.push_back(std::move(next));
        }
        return {rows_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]};
    }

private:
    Field field_;
    std::vector<std::vector<std::uint32_t>> rows_;
};

}  // namespace udm
