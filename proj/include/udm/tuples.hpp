#pragma once

// Erasure tuples (k_0, ..., k_{L-1}): per-channel counts of surviving prefix symbols.

#include <udm/error.hpp>

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

namespace udm {

struct ErasureTuple {
    std::vector<std::size_t> ks;

    [[nodiscard]] std::size_t channels() const noexcept { return ks.size(); }
    [[nodiscard]] std::size_t weight() const noexcept { return std::accumulate(ks.begin(), ks.end(), std::size_t{0}); }

    friend bool operator==(const ErasureTuple&, const ErasureTuple&) = default;
};

inline std::string to_string(const ErasureTuple& k)
{
    std::string out = "(";
    for (std::size_t l = 0; l < k.ks.size(); ++l) out += (l ? "," : "") + std::to_string(k.ks[l]);
    return out + ")";
}

/// Throws BadTuple unless k has L entries, each at most n.
inline void check_tuple(const ErasureTuple& k, std::size_t L, std::size_t n)
{
    if (k.ks.size() != L)
        throw Error(Errc::BadTuple, "tuple " + to_string(k) + " has " + std::to_string(k.ks.size()) +
                                        " entries, expected " + std::to_string(L));
    for (auto v : k.ks)
        if (v > n) throw Error(Errc::BadTuple, "tuple " + to_string(k) + " has an entry above " + std::to_string(n));
}

/// C(n+L-1, L-1), the number of tuples with entries summing to n.
inline std::uint64_t count_exact_tuples(std::size_t L, std::size_t n)
{
    if (L == 0) return 0;
    std::uint64_t c = 1;
    // C(n+L-1, L-1) built incrementally; each intermediate value is itself a binomial.
    for (std::size_t j = 1; j < L; ++j) c = c * (n + j) / j;
    return c;
}

/**
 * Walks the tuples with sum exactly n in lexicographic order, k_0 varying slowest:
 * (0,...,0,n), (0,...,1,n-1), ..., (n,0,...,0).
 */
class ExactTupleEnumerator {
public:
    ExactTupleEnumerator(std::size_t L, std::size_t n) : current_{std::vector<std::size_t>(L, 0)}, done_(L == 0)
    {
        if (L) current_.ks.back() = n;
    }

    [[nodiscard]] bool done() const noexcept { return done_; }
    [[nodiscard]] const ErasureTuple& current() const noexcept { return current_; }

    void advance()
    {
        auto& k = current_.ks;
        const std::size_t L = k.size();
        if (L < 2 || k.front() == std::accumulate(k.begin(), k.end(), std::size_t{0})) {
            done_ = true;
            return;
        }
        // Rightmost j < L-1 whose suffix k[j+1..] is nonzero.
        std::size_t j = L - 2;
        std::size_t suffix = k[L - 1];
        while (suffix == 0) {
            --j;
            suffix += k[j + 1];
        }
        ++k[j];
        for (std::size_t r = j + 1; r < L; ++r) k[r] = 0;
        k[L - 1] = suffix - 1;
    }

private:
    ErasureTuple current_;
    bool done_;
};

inline std::vector<ErasureTuple> enumerate_exact_tuples(std::size_t L, std::size_t n)
{
    std::vector<ErasureTuple> out;
    for (ExactTupleEnumerator e(L, n); !e.done(); e.advance()) out.push_back(e.current());
    return out;
}

/// Every tuple in [0,n]^L whose sum is at least n, lexicographic.
inline std::vector<ErasureTuple> enumerate_superset_tuples(std::size_t L, std::size_t n)
{
    std::vector<ErasureTuple> out;
    if (L == 0) return out;
    std::vector<std::size_t> k(L, 0);
    for (;;) {
        if (std::accumulate(k.begin(), k.end(), std::size_t{0}) >= n) out.push_back({k});
        std::size_t pos = L;
        while (pos > 0 && k[pos - 1] == n) k[--pos] = 0;
        if (pos == 0) break;
        ++k[pos - 1];
    }
    return out;
}

}  // namespace udm
