#pragma once

/**
 * @file udm.hpp
 * @brief Universally decodable matrices: construction, verification, transformations.
 *
 * L matrices A_0..A_{L-1} of size n x n over GF(q) are (L,n,q)-UDMs when, for
 * every tuple (k_0..k_{L-1}) with 0 <= k_l <= n and sum >= n, the matrix
 * stacking the first k_l rows of each A_l has full column rank n. Checking the
 * tuples whose sum is exactly n suffices.
 *
 * The explicit family built by construct() is
 *   A_0 = I_n,  A_1 = J_n,  [A_{l+2}]_{i,t} = C(t,i) alpha^{l(t-i)},
 * for a primitive element alpha, valid whenever L <= q+1.
 */

#include <udm/error.hpp>
#include <udm/gf.hpp>
#include <udm/hasse.hpp>
#include <udm/linalg.hpp>
#include <udm/tuples.hpp>

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace udm {

/// L square matrices of one size over one field. `alpha` is set only by construct().
class UdmFamily {
public:
    UdmFamily(Field field, std::size_t n, std::vector<Matrix> matrices, std::optional<Element> alpha = std::nullopt)
        : field_(std::move(field)), n_(n), matrices_(std::move(matrices)), alpha_(alpha)
    {
        if (matrices_.empty()) throw Error(Errc::DimensionMismatch, "a family needs at least one matrix");
        for (const auto& m : matrices_) {
            if (!(m.field() == field_)) throw Error(Errc::FieldMismatch, "family matrix over a different field");
            if (m.rows() != n_ || m.cols() != n_)
                throw Error(Errc::DimensionMismatch, "family matrix is " + std::to_string(m.rows()) + "x" +
                                                         std::to_string(m.cols()) + ", expected " +
                                                         std::to_string(n_) + "x" + std::to_string(n_));
        }
    }

    [[nodiscard]] const Field& field() const noexcept { return field_; }
    [[nodiscard]] std::size_t L() const noexcept { return matrices_.size(); }
    [[nodiscard]] std::size_t n() const noexcept { return n_; }
    [[nodiscard]] std::span<const Matrix> matrices() const noexcept { return matrices_; }
    [[nodiscard]] const Matrix& operator[](std::size_t l) const { return matrices_[l]; }
    [[nodiscard]] std::optional<Element> alpha() const noexcept { return alpha_; }

    /// Field, size and matrices; alpha is bookkeeping and not compared.
    friend bool operator==(const UdmFamily& a, const UdmFamily& b)
    {
        return a.field_ == b.field_ && a.n_ == b.n_ && a.matrices_ == b.matrices_;
    }

private:
    Field field_;
    std::size_t n_;
    std::vector<Matrix> matrices_;
    std::optional<Element> alpha_;
};

// ---------------------------------------------------------------------------
// Construction

/// Explicit family; TooManyChannels when L > q+1 and n >= 2 (any L is accepted for n = 1).
inline UdmFamily construct(const Field& field, std::size_t L, std::size_t n)
{
    if (L < 1 || n < 1) throw Error(Errc::DimensionMismatch, "construct needs L >= 1 and n >= 1");
    if (n >= 2 && L > std::size_t{field.order()} + 1)
        throw Error(Errc::TooManyChannels, "(L,n,q)-UDMs with n >= 2 need L <= q+1; got L=" + std::to_string(L) +
                                               ", q=" + std::to_string(field.order()));
    const Element alpha = field.primitive_element();
    PascalTable binomial(field);
    std::vector<Matrix> mats;
    mats.reserve(L);
    mats.push_back(identity(field, n));
    if (L >= 2) mats.push_back(anti_identity(field, n));
    for (std::size_t l = 0; l + 2 < L; ++l) {
        Matrix a(field, n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t t = i; t < n; ++t) {
                const auto diff = static_cast<std::int64_t>(t) - static_cast<std::int64_t>(i);
                a(i, t) = field.mul(binomial(static_cast<std::int64_t>(t), static_cast<std::int64_t>(i)),
                                    field.pow(alpha, static_cast<std::int64_t>(l) * diff));
            }
        mats.push_back(std::move(a));
    }
    return {field, n, std::move(mats), alpha};
}

/**
 * [A_l]_{i,t} computed independently of construct(): the i-th Hasse derivative
 * of L^t evaluated at beta_l, with beta_0 = 0 and beta_{l+2} = alpha^l. Channel 1
 * is the point at infinity, evaluated via the homogenized monomial at (1, 0).
 */
inline Element construct_entry_oracle(const Field& field, std::size_t L, std::size_t n, std::size_t l, std::size_t i,
                                      std::size_t t)
{
    if (l >= L || i >= n || t >= n) throw Error(Errc::DimensionMismatch, "oracle index out of range");
    if (l == 1) return hasse_monomial_bivariate(field, t, n, i, {field.one(), field.zero()});
    Element beta = field.zero();
    if (l >= 2) {
        beta = field.one();
        for (std::size_t r = 0; r < l - 2; ++r) beta = field.mul(beta, field.primitive_element());
    }
    return hasse_monomial_bivariate(field, t, n, i, {beta, field.one()});
}

// ---------------------------------------------------------------------------
// Verification

struct Witness {
    ErasureTuple tuple;
    Matrix stacked;
    std::size_t rank;
};

struct VerifyReport {
    bool passed = true;
    /// Tuples examined in enumeration order, up to and including the first failure.
    std::uint64_t tuples_checked = 0;
    std::optional<Witness> witness;
};

struct VerifyOptions {
    /// Also check every tuple with sum > n.
    bool superset = false;
    /// 0 or 1 runs on the calling thread.
    unsigned workers = 1;
};

/// Full column rank n for the stacked prefixes of k.
inline bool satisfies_condition(const UdmFamily& family, const ErasureTuple& k)
{
    return rank(stack_prefixes(family.matrices(), k.ks)) == family.n();
}

inline VerifyReport verify(const UdmFamily& family, VerifyOptions options = {})
{
    const auto tuples = options.superset ? enumerate_superset_tuples(family.L(), family.n())
                                         : enumerate_exact_tuples(family.L(), family.n());
    const std::size_t total = tuples.size();
    const std::size_t none = std::numeric_limits<std::size_t>::max();
    std::atomic<std::size_t> first_failure{none};

    auto scan = [&](std::size_t begin, std::size_t end) {
        for (std::size_t idx = begin; idx < end; ++idx) {
            if (idx >= first_failure.load(std::memory_order_relaxed)) return;
            if (!satisfies_condition(family, tuples[idx])) {
                std::size_t seen = first_failure.load();
                while (idx < seen && !first_failure.compare_exchange_weak(seen, idx)) {
                }
                return;
            }
        }
    };

    const unsigned workers = std::max(1u, std::min<unsigned>(options.workers, static_cast<unsigned>(total ? total : 1)));
    if (workers == 1) {
        scan(0, total);
    } else {
        std::vector<std::jthread> pool;
        const std::size_t chunk = (total + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            const std::size_t begin = w * chunk;
            const std::size_t end = std::min(total, begin + chunk);
            if (begin < end) pool.emplace_back(scan, begin, end);
        }
    }

    VerifyReport report;
    const std::size_t fail = first_failure.load();
    if (fail == none) {
        report.tuples_checked = total;
        return report;
    }
    Matrix stacked = stack_prefixes(family.matrices(), tuples[fail].ks);
    const std::size_t r = rank(stacked);
    report.passed = false;
    report.tuples_checked = fail + 1;
    report.witness = Witness{tuples[fail], std::move(stacked), r};
    return report;
}

// ---------------------------------------------------------------------------
// UDM-preserving transformations

/// Replaces A_l by C A_l for lower triangular C with nonzero diagonal.
inline UdmFamily left_transform(const UdmFamily& family, std::size_t l, const Matrix& c)
{
    if (l >= family.L()) throw Error(Errc::DimensionMismatch, "channel index out of range");
    if (c.rows() != family.n() || c.cols() != family.n())
        throw Error(Errc::DimensionMismatch, "left factor must be n x n");
    if (!is_lower_triangular(c)) throw Error(Errc::NotLowerTriangular, "left factor is not lower triangular");
    if (!has_nonzero_diagonal(c)) throw Error(Errc::ZeroDiagonal, "left factor has a zero on its diagonal");
    std::vector<Matrix> mats(family.matrices().begin(), family.matrices().end());
    mats[l] = matmul(c, mats[l]);
    return {family.field(), family.n(), std::move(mats)};
}

/// Replaces every A_l by A_l B for invertible B; throws Singular otherwise.
inline UdmFamily right_multiply(const UdmFamily& family, const Matrix& b)
{
    if (b.rows() != family.n() || b.cols() != family.n())
        throw Error(Errc::DimensionMismatch, "right factor must be n x n");
    if (rank(b) < family.n()) throw Error(Errc::Singular, "right factor is singular");
    std::vector<Matrix> mats;
    for (const auto& a : family.matrices()) mats.push_back(matmul(a, b));
    return {family.field(), family.n(), std::move(mats)};
}

/// Matrices reordered as A_{sigma(0)}, ..., A_{sigma(L-1)}.
inline UdmFamily permute(const UdmFamily& family, std::span<const std::size_t> sigma)
{
    if (sigma.size() != family.L()) throw Error(Errc::DimensionMismatch, "permutation has the wrong length");
    std::vector<bool> seen(family.L(), false);
    std::vector<Matrix> mats;
    for (auto s : sigma) {
        if (s >= family.L() || seen[s]) throw Error(Errc::DimensionMismatch, "not a permutation");
        seen[s] = true;
        mats.push_back(family[s]);
    }
    return {family.field(), family.n(), std::move(mats)};
}

/// The first `count` matrices.
inline UdmFamily prefix(const UdmFamily& family, std::size_t count)
{
    if (count < 1 || count > family.L()) throw Error(Errc::DimensionMismatch, "prefix length out of range");
    return {family.field(), family.n(),
            std::vector<Matrix>(family.matrices().begin(), family.matrices().begin() + static_cast<std::ptrdiff_t>(count)),
            family.alpha()};
}

/**
 * m-fold Kronecker power of every matrix. The result is only a candidate: it is
 * not UDMs in general and should be verified by the caller.
 */
inline UdmFamily tensor_power(const UdmFamily& family, std::size_t m)
{
    if (m < 1) throw Error(Errc::DimensionMismatch, "tensor power needs m >= 1");
    std::vector<Matrix> mats;
    std::size_t size = family.n();
    for (std::size_t r = 1; r < m; ++r) size *= family.n();
    for (const auto& a : family.matrices()) {
        Matrix acc = a;
        for (std::size_t r = 1; r < m; ++r) acc = kron(acc, a);
        mats.push_back(std::move(acc));
    }
    return {family.field(), size, std::move(mats), family.alpha()};
}

/**
 * Rewrites each pair (A_{2j}, A_{2j+1}) so that A'_{2j+1} = J_n A'_{2j}.
 *
 * Row i of the even matrix and row n-1-i of the odd one are replaced by the
 * common vector b0^T B0 = -b1^T B1, where (b0 | b1) spans the left null space of
 * rows 0..i of A'_{2j} stacked over rows 0..n-1-i of A'_{2j+1}. Both
 * replacements are lower triangular row operations because the last entries of
 * b0 and b1 are nonzero for genuine UDMs; a zero there throws
 * DegenerateNullVector. With odd L the last matrix is left alone.
 */
inline UdmFamily reverse_pairs(const UdmFamily& family)
{
    const Field& f = family.field();
    const std::size_t n = family.n();
    std::vector<Matrix> mats(family.matrices().begin(), family.matrices().end());
    for (std::size_t pair = 0; 2 * pair + 1 < mats.size(); ++pair) {
        Matrix& even = mats[2 * pair];
        Matrix& odd = mats[2 * pair + 1];
        for (std::size_t i = 0; i < n; ++i) {
            const Matrix b0 = row_block(even, 0, i + 1);
            const Matrix b1 = row_block(odd, 0, n - i);
            const Matrix stacked = stack_prefixes(std::vector<Matrix>{b0, b1}, std::vector<std::size_t>{i + 1, n - i});
            const Vector b = left_null_vector(stacked);
            std::vector<Element> head(b.entries().begin(), b.entries().begin() + static_cast<std::ptrdiff_t>(i + 1));
            std::vector<Element> tail(b.entries().begin() + static_cast<std::ptrdiff_t>(i + 1), b.entries().end());
            if (head.back().value == 0 || tail.back().value == 0)
                throw Error(Errc::DegenerateNullVector,
                            "null vector has a zero pivot at step " + std::to_string(i) + "; input is not UDMs");
            const Vector new_even = left_multiply(Vector(f, std::move(head)), b0);
            const Vector new_odd = left_multiply(Vector(f, std::move(tail)), b1);
            for (std::size_t c = 0; c < n; ++c) {
                even(i, c) = new_even[c];
                odd(n - 1 - i, c) = f.neg(new_odd[c]);
            }
        }
    }
    return {f, n, std::move(mats)};
}

/**
 * (L,n,q) -> (L,n-1,q) for a family with A_0 = I_n and A_1 = J_n: A_1 loses its
 * first column and last row, every other matrix its last column and last row.
 */
inline UdmFamily reduce(const UdmFamily& family)
{
    const Field& f = family.field();
    const std::size_t n = family.n();
    if (n < 2) throw Error(Errc::DimensionMismatch, "reduce needs n >= 2");
    if (!(family[0] == identity(f, n)) || (family.L() >= 2 && !(family[1] == anti_identity(f, n))))
        throw Error(Errc::BadNormalization, "reduce needs A_0 = I_n and A_1 = J_n");
    std::vector<Matrix> mats;
    for (std::size_t l = 0; l < family.L(); ++l) {
        const std::size_t col0 = l == 1 ? 1 : 0;
        Matrix m(f, n - 1, n - 1);
        for (std::size_t i = 0; i + 1 < n; ++i)
            for (std::size_t j = 0; j + 1 < n; ++j) m(i, j) = family[l](i, j + col0);
        mats.push_back(std::move(m));
    }
    return {f, n - 1, std::move(mats), family.alpha()};
}

// ---------------------------------------------------------------------------
// Pascal-matrix factorization and the radix-p entry formula

/// Ones on the diagonal and -1 at (t'-1, t') for t < t' <= n-1.
inline Matrix delta_matrix(const Field& field, std::size_t n, std::size_t t)
{
    if (t >= n) throw Error(Errc::DimensionMismatch, "delta index must be below n");
    Matrix d = identity(field, n);
    for (std::size_t c = t + 1; c < n; ++c) d(c - 1, c) = field.neg(field.one());
    return d;
}

/// A_2 Delta_0 ... Delta_{n-1} == I_n.
inline bool pascal_inverse_check(const UdmFamily& family)
{
    if (family.L() < 3) throw Error(Errc::DimensionMismatch, "family has no A_2");
    Matrix acc = family[2];
    for (std::size_t t = 0; t < family.n(); ++t) acc = matmul(acc, delta_matrix(family.field(), family.n(), t));
    return acc == identity(family.field(), family.n());
}

/**
 * [A_{l+2}]_{i,t} as prod_h C(t_h, i_h) alpha^{l (t_h - i_h) p^h} over the radix-p
 * digits of i and t, with m the smallest integer such that n <= p^m.
 */
inline Element lucas_entry(const Field& field, std::size_t L, std::size_t n, std::size_t l, std::size_t i,
                           std::size_t t)
{
    if (l + 2 >= L) throw Error(Errc::DimensionMismatch, "channel index out of range");
    if (i >= n || t >= n) throw Error(Errc::DimensionMismatch, "entry index out of range");
    const std::int64_t p = field.characteristic();
    std::size_t m = 0;
    for (std::size_t pm = 1; pm < n; pm *= static_cast<std::size_t>(p)) ++m;
    const Element alpha = field.primitive_element();
    Element out = field.one();
    std::int64_t place = 1;
    auto ii = static_cast<std::int64_t>(i);
    auto tt = static_cast<std::int64_t>(t);
    for (std::size_t h = 0; h < m; ++h) {
        const std::int64_t ih = ii % p;
        const std::int64_t th = tt % p;
        ii /= p;
        tt /= p;
        const Element factor =
            field.mul(binom(field, th, ih), field.pow(alpha, static_cast<std::int64_t>(l) * (th - ih) * place));
        out = field.mul(out, factor);
        place *= p;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Exhaustive search for the L <= q+1 bound

struct SearchReport {
    std::size_t L = 0;
    std::size_t n = 0;
    std::uint32_t q = 0;
    /// q^(n^2 (L-2)): assignments of the free matrices before pruning.
    std::uint64_t candidates_total = 0;
    /// Assignments surviving the first-row and distinct-entry necessary conditions.
    std::uint64_t candidates_after_pruning = 0;
    std::uint64_t families_found = 0;
    /// The first few passing families, in search order.
    std::vector<UdmFamily> examples;
    std::string note;

    [[nodiscard]] bool exists() const noexcept { return families_found > 0; }
};

inline constexpr std::uint64_t default_search_budget = 10'000'000;

/**
 * Searches every (L,n,q) family normalized to A_0 = I_n, A_1 = J_n.
 *
 * A candidate for A_l (l >= 2) must have an all-nonzero first row, and the
 * entries [A_l]_{0,n-2} must be pairwise distinct across l; both are necessary
 * conditions and are applied before the full rank check. L defaults to q+2.
 * Throws BudgetExceeded if q^(n^2 (L-2)) exceeds `budget`.
 */
inline SearchReport refute_bound(const Field& field, std::size_t n, std::optional<std::size_t> channels = std::nullopt,
                                 std::uint64_t budget = default_search_budget, std::size_t keep_examples = 16)
{
    const std::uint32_t q = field.order();
    SearchReport report;
    report.L = channels.value_or(std::size_t{q} + 2);
    report.n = n;
    report.q = q;
    const std::size_t L = report.L;
    if (n < 1 || L < 1) throw Error(Errc::DimensionMismatch, "search needs L >= 1 and n >= 1");

    if (n == 1) {
        report.candidates_total = 1;
        report.candidates_after_pruning = 1;
        report.families_found = 1;
        report.examples.push_back(construct(field, L, 1));
        report.note = "n = 1: the matrices (1), ..., (1) are UDMs for every L";
        return report;
    }

    const std::size_t free = L > 2 ? L - 2 : 0;
    const std::size_t cells = n * n;
    std::uint64_t total = 1;
    for (std::size_t r = 0; r < cells * free; ++r) {
        total *= q;
        if (total > budget)
            throw Error(Errc::BudgetExceeded, "q^(n^2 (L-2)) exceeds the search budget of " + std::to_string(budget));
    }
    report.candidates_total = total;

    std::vector<Matrix> base{identity(field, n)};
    if (L >= 2) base.push_back(anti_identity(field, n));

    // Per-matrix candidates with an all-nonzero first row.
    std::vector<Matrix> pool;
    if (free > 0) {
        std::uint64_t per = 1;
        for (std::size_t r = 0; r < cells; ++r) per *= q;
        for (std::uint64_t idx = 0; idx < per; ++idx) {
            Matrix m(field, n, n);
            std::uint64_t rest = idx;
            for (std::size_t c = cells; c-- > 0;) {
                m(c / n, c % n) = Element{static_cast<std::uint32_t>(rest % q)};
                rest /= q;
            }
            bool ok = true;
            for (std::size_t j = 0; j < n && ok; ++j) ok = m(0, j).value != 0;
            if (ok) pool.push_back(std::move(m));
        }
    }

    std::vector<std::size_t> choice;
    auto record = [&]() {
        std::vector<Matrix> mats = base;
        for (auto c : choice) mats.push_back(pool[c]);
        UdmFamily fam(field, n, std::move(mats));
        ++report.candidates_after_pruning;
        if (verify(fam).passed) {
            ++report.families_found;
            if (report.examples.size() < keep_examples) report.examples.push_back(std::move(fam));
        }
    };
    auto dfs = [&](auto&& self) -> void {
        if (choice.size() == free) {
            record();
            return;
        }
        for (std::size_t c = 0; c < pool.size(); ++c) {
            const Element e = pool[c](0, n - 2);
            bool distinct = true;
            for (auto prev : choice)
                if (pool[prev](0, n - 2) == e) {
                    distinct = false;
                    break;
                }
            if (!distinct) continue;
            choice.push_back(c);
            self(self);
            choice.pop_back();
        }
    };
    dfs(dfs);

    if (report.exists())
        report.note = "found " + std::to_string(report.families_found) + " normalized family/families";
    else
        report.note = "no (" + std::to_string(L) + "," + std::to_string(n) + "," + std::to_string(q) +
                      ")-UDMs exist with A_0 = I, A_1 = J";
    return report;
}

}  // namespace udm
