#pragma once

// Independent reference computations for the unit and acceptance suites.
// Nothing here calls the elimination, binomial or table-multiplication paths it is used to check.

#include <udm/all.hpp>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

namespace udm::oracle {

/// Exact integer binomial for 0 <= b <= a <= 64 via the integer Pascal triangle.
inline unsigned __int128 integer_binomial(int a, int b)
{
    if (b < 0 || b > a) return 0;
    std::vector<std::vector<unsigned __int128>> rows(static_cast<std::size_t>(a) + 1);
    for (int r = 0; r <= a; ++r) {
        rows[r].assign(static_cast<std::size_t>(r) + 1, 1);
        for (int j = 1; j < r; ++j) rows[r][j] = rows[r - 1][j - 1] + rows[r - 1][j];
    }
    return rows[a][b];
}

/// a(a-1)...(a-b+1)/b! evaluated with signed 128-bit integers (small |a| only).
inline __int128 falling_binomial(long a, long b)
{
    if (b < 0) return 0;
    if (b == 0) return 1;
    __int128 num = 1;
    __int128 den = 1;
    for (long j = 0; j < b; ++j) {
        num *= (a - j);
        den *= (j + 1);
    }
    return num / den;
}

/// Product of encoded elements by explicit polynomial arithmetic mod the field's modulus.
inline Element schoolbook_mul(const Field& f, Element a, Element b)
{
    const std::uint32_t p = f.characteristic();
    const std::uint32_t s = f.degree();
    std::vector<std::uint32_t> da(s), db(s), prod(2 * s, 0);
    for (std::uint32_t i = 0, x = a.value, y = b.value; i < s; ++i, x /= p, y /= p) {
        da[i] = x % p;
        db[i] = y % p;
    }
    for (std::uint32_t i = 0; i < s; ++i)
        for (std::uint32_t j = 0; j < s; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
    const auto& mod = f.modulus();
    for (std::uint32_t d = 2 * s - 1; d >= s; --d) {
        const std::uint32_t lead = prod[d];
        if (lead)
            for (std::uint32_t j = 0; j <= s; ++j) prod[d - s + j] = (prod[d - s + j] + (p - lead) * mod[j]) % p;
        if (d == s) break;
    }
    std::uint32_t v = 0;
    for (std::uint32_t i = s; i-- > 0;) v = v * p + prod[i];
    return {v};
}

/// Determinant by Leibniz expansion over all permutations.
inline Element leibniz_det(const Field& f, const std::vector<std::vector<Element>>& m)
{
    const std::size_t n = m.size();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    Element det = f.zero();
    do {
        std::size_t inversions = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (perm[i] > perm[j]) ++inversions;
        Element term = f.one();
        for (std::size_t i = 0; i < n; ++i) term = f.mul(term, m[i][perm[i]]);
        det = (inversions % 2) ? f.sub(det, term) : f.add(det, term);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return det;
}

inline void for_each_subset(std::size_t n, std::size_t k, const std::function<bool(const std::vector<std::size_t>&)>& fn)
{
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    if (k > n) return;
    for (;;) {
        if (!fn(idx)) return;
        std::size_t pos = k;
        while (pos > 0 && idx[pos - 1] == n - k + pos - 1) --pos;
        if (pos == 0) return;
        ++idx[pos - 1];
        for (std::size_t j = pos; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

/// Largest k with a nonzero k x k minor.
inline std::size_t minor_rank(const Matrix& a)
{
    const Field& f = a.field();
    for (std::size_t k = std::min(a.rows(), a.cols()); k > 0; --k) {
        bool found = false;
        for_each_subset(a.rows(), k, [&](const std::vector<std::size_t>& rows) {
            for_each_subset(a.cols(), k, [&](const std::vector<std::size_t>& cols) {
                std::vector<std::vector<Element>> sub(k, std::vector<Element>(k));
                for (std::size_t i = 0; i < k; ++i)
                    for (std::size_t j = 0; j < k; ++j) sub[i][j] = a(rows[i], cols[j]);
                if (leibniz_det(f, sub).value != 0) found = true;
                return !found;
            });
            return !found;
        });
        if (found) return k;
    }
    return 0;
}

/// Multiplicity of beta by repeated synthetic division by (X - beta).
inline std::size_t division_multiplicity(const Polynomial& p, Element beta)
{
    const Field& f = p.field();
    std::vector<Element> c(p.coeffs().begin(), p.coeffs().end());
    std::size_t m = 0;
    while (!c.empty()) {
        // Synthetic division: quotient q and remainder r with p = (X - beta) q + r.
        std::vector<Element> q(c.size() - 1);
        Element carry = f.zero();
        for (std::size_t k = c.size(); k-- > 0;) {
            const Element v = f.add(c[k], carry);
            if (k == 0) {
                if (v.value != 0) return m;
            } else {
                q[k - 1] = v;
                carry = f.mul(v, beta);
            }
        }
        c = std::move(q);
        ++m;
    }
    return m;
}

inline Matrix random_matrix(const Field& f, std::size_t r, std::size_t c, std::mt19937_64& rng)
{
    std::uniform_int_distribution<std::uint32_t> d(0, f.order() - 1);
    Matrix m(f, r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = Element{d(rng)};
    return m;
}

inline Vector random_vector(const Field& f, std::size_t n, std::mt19937_64& rng)
{
    std::uniform_int_distribution<std::uint32_t> d(0, f.order() - 1);
    Vector v(f, n);
    for (std::size_t i = 0; i < n; ++i) v[i] = Element{d(rng)};
    return v;
}

inline Polynomial random_polynomial(const Field& f, std::size_t max_len, std::mt19937_64& rng)
{
    std::uniform_int_distribution<std::size_t> len(0, max_len);
    std::uniform_int_distribution<std::uint32_t> d(0, f.order() - 1);
    std::vector<Element> c(len(rng));
    for (auto& e : c) e = Element{d(rng)};
    return {f, std::move(c)};
}

/// The four matrices printed for L = 4, n = 3, q = 3.
inline std::vector<Matrix> example2_matrices(const Field& f3)
{
    return {
        Matrix::from_values(f3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}),
        Matrix::from_values(f3, {{0, 0, 1}, {0, 1, 0}, {1, 0, 0}}),
        Matrix::from_values(f3, {{1, 1, 1}, {0, 1, 2}, {0, 0, 1}}),
        Matrix::from_values(f3, {{1, 2, 1}, {0, 1, 1}, {0, 0, 1}}),
    };
}

/// Every field order in the construction sweep.
inline std::vector<std::int64_t> sweep_orders() { return {2, 3, 4, 5, 7, 8, 9}; }

}  // namespace udm::oracle
