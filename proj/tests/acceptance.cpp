// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
// Optional argv[1]: path to the udm CLI, used to check the generate output file.

#include "oracles.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

using namespace udm;

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start)
{
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

struct Outcome {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what)
    {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

int failures = 0;

template <class Body>
void criterion(int id, const std::string& name, Body body)
{
    Outcome out;
    try {
        body(out);
    } catch (const std::exception& e) {
        out.ok = false;
        out.detail = std::string("exception: ") + e.what();
    }
    if (!out.ok) ++failures;
    std::cout << (out.ok ? "PASS" : "FAIL") << "  criterion " << id << ": " << name;
    if (!out.detail.empty()) std::cout << " (" << out.detail << ")";
    std::cout << '\n';
}

std::string fmt_ms(double ms)
{
    std::ostringstream os;
    os.precision(3);
    os << ms << " ms";
    return os.str();
}

UdmFamily example2()
{
    const Field f3(3, 1);
    return {f3, 3, oracle::example2_matrices(f3)};
}

}  // namespace

int main(int argc, char** argv)
{
    const std::string cli = argc > 1 ? argv[1] : "";

    criterion(1, "generate (q=3, L=4, n=3) reproduces the four printed matrices", [&](Outcome& o) {
        const Field f3(3, 1);
        const auto start = Clock::now();
        const auto fam = construct(f3, 4, 3);
        const double ms = ms_since(start);
        o.require(fam == example2(), "matrices differ");
        o.require(ms < 1.0, "construct took " + fmt_ms(ms));
        if (!cli.empty()) {
            const auto path = std::filesystem::temp_directory_path() / "udm_acceptance_ex2.udm";
            const std::string cmd = "\"" + cli + "\" generate --q 3 --L 4 --n 3 --out \"" + path.string() + "\" > /dev/null";
            o.require(std::system(cmd.c_str()) == 0, "CLI generate exited nonzero");
            std::ifstream in(path);
            std::stringstream text;
            text << in.rdbuf();
            o.require(parse_family(text.str()) == example2(), "CLI file differs");
            std::filesystem::remove(path);
        }
        if (o.ok) o.detail = "construct " + fmt_ms(ms) + (cli.empty() ? "" : ", CLI file checked");
    });

    criterion(2, "verify checks 20 tuples; spot matrices have rank 3", [&](Outcome& o) {
        const auto fam = example2();
        const auto rep = verify(fam);
        o.require(rep.passed, "verify failed");
        o.require(rep.tuples_checked == 20, "tuples_checked = " + std::to_string(rep.tuples_checked));
        o.require(oracle::integer_binomial(6, 3) == 20, "C(6,3) != 20");
        for (const auto& k : std::vector<std::vector<std::size_t>>{{0, 0, 3, 0}, {0, 0, 1, 2}, {1, 1, 0, 1}}) {
            const Matrix s = stack_prefixes(fam.matrices(), k);
            o.require(rank(s) == 3 && oracle::minor_rank(s) == 3, "spot tuple " + to_string(ErasureTuple{k}));
        }
    });

    criterion(3, "{I_5, J_5} verifies for q in {2,3}; (3,2) stack has rank 5", [&](Outcome& o) {
        for (std::uint32_t q : {2u, 3u}) {
            const Field f(q, 1);
            const UdmFamily fam(f, 5, {identity(f, 5), anti_identity(f, 5)});
            o.require(verify(fam).passed, "q=" + std::to_string(q) + " failed");
            const std::vector<std::size_t> k{3, 2};
            o.require(rank(stack_prefixes(fam.matrices(), k)) == 5, "(3,2) rank");
        }
    });

    criterion(4, "construct(F, q+1, n) verifies for q in {2,3,4,5,7,8,9}, n in 1..6", [&](Outcome& o) {
        const auto start = Clock::now();
        std::uint64_t tuples = 0;
        for (auto q : oracle::sweep_orders()) {
            const Field f = Field::from_order(q);
            for (std::size_t n = 1; n <= 6; ++n) {
                const auto rep = verify(construct(f, f.order() + 1, n));
                o.require(rep.passed, "q=" + std::to_string(q) + " n=" + std::to_string(n));
                tuples += rep.tuples_checked;
            }
        }
        const double ms = ms_since(start);
        o.require(ms < 30000.0, "took " + fmt_ms(ms));
        if (o.ok) o.detail = std::to_string(tuples) + " tuples, " + fmt_ms(ms) + " single-threaded";
    });

    criterion(5, "Hasse-derivative oracle equals construct entrywise over the sweep", [&](Outcome& o) {
        std::uint64_t entries = 0;
        for (auto q : oracle::sweep_orders()) {
            const Field f = Field::from_order(q);
            for (std::size_t n = 1; n <= 6; ++n) {
                const std::size_t L = f.order() + 1;
                const auto fam = construct(f, L, n);
                for (std::size_t l = 0; l < L; ++l)
                    for (std::size_t i = 0; i < n; ++i)
                        for (std::size_t t = 0; t < n; ++t, ++entries)
                            o.require(fam[l](i, t) == construct_entry_oracle(f, L, n, l, i, t),
                                      "q=" + std::to_string(q) + " n=" + std::to_string(n) + " l=" + std::to_string(l));
            }
        }
        if (o.ok) o.detail = std::to_string(entries) + " entries";
    });

    criterion(6, "Example family squared verifies as (4,9,3); prime tensor powers match construct", [&](Outcome& o) {
        const auto start = Clock::now();
        const auto rep = verify(tensor_power(example2(), 2));
        const double ms = ms_since(start);
        o.require(rep.passed, "tensor square failed verify");
        o.require(rep.tuples_checked == 220, "tuples_checked = " + std::to_string(rep.tuples_checked));
        o.require(ms < 5000.0, "took " + fmt_ms(ms));
        for (std::uint32_t p : {2u, 3u}) {
            const Field f(p, 1);
            o.require(tensor_power(construct(f, p + 1, p), 2) == construct(f, p + 1, p * p),
                      "tensor power differs for p=" + std::to_string(p));
        }
        if (o.ok) o.detail = "220 tuples, " + fmt_ms(ms);
    });

    criterion(7, "reduce(construct(F,q+1,n)) equals construct(F,q+1,n-1)", [&](Outcome& o) {
        for (auto q : oracle::sweep_orders()) {
            const Field f = Field::from_order(q);
            for (std::size_t n = 2; n <= 6; ++n)
                o.require(reduce(construct(f, f.order() + 1, n)) == construct(f, f.order() + 1, n - 1),
                          "q=" + std::to_string(q) + " n=" + std::to_string(n));
        }
    });

    criterion(8, "reverse_pairs on the example family verifies with A'_1 = J A'_0, A'_3 = J A'_2", [&](Outcome& o) {
        const auto out = reverse_pairs(example2());
        const Field& f = out.field();
        o.require(verify(out).passed, "output failed verify");
        o.require(out[1] == matmul(anti_identity(f, 3), out[0]), "A'_1 != J A'_0");
        o.require(out[3] == matmul(anti_identity(f, 3), out[2]), "A'_3 != J A'_2");
    });

    criterion(9, "search finds no (4,2,2)-UDMs and at least one (3,2,2) family", [&](Outcome& o) {
        const Field f2(2, 1);
        const auto start = Clock::now();
        const auto four = refute_bound(f2, 2, 4);
        const auto three = refute_bound(f2, 2, 3);
        const double ms = ms_since(start);
        o.require(!four.exists(), "found a (4,2,2) family");
        o.require(four.candidates_total <= 256, "candidates_total = " + std::to_string(four.candidates_total));
        o.require(three.exists(), "no (3,2,2) family found");
        o.require(ms < 1000.0, "took " + fmt_ms(ms));
        if (o.ok)
            o.detail = std::to_string(four.candidates_total) + " candidates pruned to " +
                       std::to_string(four.candidates_after_pruning) + ", " + std::to_string(three.families_found) +
                       " (3,2,2) families, " + fmt_ms(ms);
    });

    criterion(10, "codec: 27 vectors x 20 tuples decode; short patterns raise InsufficientSymbols", [&](Outcome& o) {
        const auto fam = example2();
        const Field& f = fam.field();
        std::size_t ok = 0, refused = 0;
        for (std::uint32_t idx = 0; idx < 27; ++idx) {
            Vector u(f, 3);
            for (std::uint32_t t = 0, v = idx; t < 3; ++t, v /= 3) u[t] = Element{v % 3};
            const auto x = encode(fam, u);
            for (const auto& k : enumerate_exact_tuples(4, 3)) {
                if (decode(fam, erase(x, k)) == u) ++ok;
            }
            for (std::size_t w = 0; w < 3; ++w)
                for (const auto& k : enumerate_exact_tuples(4, w)) {
                    try {
                        (void)decode(fam, erase(x, k));
                    } catch (const Error& e) {
                        if (e.code() == Errc::InsufficientSymbols) ++refused;
                    }
                }
        }
        // 1 + 4 + 10 short tuples per vector.
        o.require(ok == 540, std::to_string(ok) + " of 540 decoded");
        o.require(refused == 27 * 15, std::to_string(refused) + " of 405 refused");
    });

    criterion(11, "Hasse derivative properties and vanishing pattern, q in {2,3,4,5}", [&](Outcome& o) {
        std::uint64_t polys = 0;
        for (std::int64_t q : {2, 3, 4, 5}) {
            const Field f = Field::from_order(q);
            // Every multiplicity vector over GF(q) with total at most 6.
            std::vector<std::size_t> m(f.order(), 0);
            for (;;) {
                std::vector<std::pair<Element, std::size_t>> pairs;
                for (std::uint32_t r = 0; r < f.order(); ++r) pairs.push_back({Element{r}, m[r]});
                const auto p = from_linear_factors(f, pairs);
                ++polys;
                for (std::uint32_t r = 0; r < f.order(); ++r) {
                    for (std::size_t i = 0; i < m[r]; ++i)
                        o.require(evaluate(hasse_derivative(p, i), Element{r}).value == 0, "vanishing");
                    o.require(evaluate(hasse_derivative(p, m[r]), Element{r}).value != 0, "nonvanishing");
                    o.require(oracle::division_multiplicity(p, Element{r}) == m[r], "division oracle");
                }
                // Linearity, product rule and composition against a second polynomial.
                const auto g = p * Polynomial::from_values(f, {1, 1});
                for (std::size_t i = 0; i <= 4; ++i) {
                    o.require(hasse_derivative(p + g, i) == hasse_derivative(p, i) + hasse_derivative(g, i), "linearity");
                    Polynomial sum(f);
                    for (std::size_t j = 0; j <= i; ++j) sum = sum + hasse_derivative(p, j) * hasse_derivative(g, i - j);
                    o.require(hasse_derivative(p * g, i) == sum, "product rule");
                    for (std::size_t i2 = 0; i2 <= 4; ++i2) {
                        const auto c = f.nat_map(static_cast<std::int64_t>(oracle::integer_binomial(int(i + i2), int(i)) %
                                                                           f.characteristic()));
                        o.require(hasse_derivative(hasse_derivative(p, i2), i) == scale(hasse_derivative(p, i + i2), c),
                                  "composition");
                    }
                }
                std::size_t pos = 0;
                for (;;) {
                    if (pos == m.size()) goto next_field;
                    ++m[pos];
                    std::size_t total = 0;
                    for (auto v : m) total += v;
                    if (total <= 6) break;
                    m[pos++] = 0;
                }
            }
        next_field:;
        }
        if (o.ok) o.detail = std::to_string(polys) + " polynomials";
    });

    criterion(12, "A_2 Delta_0 ... Delta_{n-1} = I_n for q in {3,5}, n in 2..5", [&](Outcome& o) {
        for (std::uint32_t q : {3u, 5u})
            for (std::size_t n = 2; n <= 5; ++n) {
                const Field f(q, 1);
                const auto fam = construct(f, 3, n);
                // Independent product with explicitly written Delta_t.
                Matrix acc = fam[2];
                for (std::size_t t = 0; t < n; ++t) {
                    Matrix d = identity(f, n);
                    for (std::size_t c = t + 1; c < n; ++c) d(c - 1, c) = Element{q - 1};
                    acc = matmul(acc, d);
                }
                o.require(acc == identity(f, n), "q=" + std::to_string(q) + " n=" + std::to_string(n));
                o.require(pascal_inverse_check(fam), "pascal_inverse_check q=" + std::to_string(q));
            }
    });

    std::cout << (failures ? std::to_string(failures) + " criteria failed" : std::string("all 12 criteria passed")) << '\n';
    return failures ? 1 : 0;
}
