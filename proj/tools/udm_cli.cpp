// Command-line front end for the udm library.
// Exit codes: 0 success, 1 semantic failure (verification or decoding), 2 usage or parse error.

#include <udm/all.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

using namespace udm;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_semantic = 1;
constexpr int exit_usage = 2;

/// Raised for bad arguments that CLI11 itself cannot detect.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path)
{
    if (path == "-") {
        std::stringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const std::string& text)
{
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw UsageError("cannot write '" + path + "'");
    out << text;
}

unsigned default_workers()
{
    if (const char* env = std::getenv("UDM_WORKERS")) {
        try {
            const long v = std::stol(env);
            if (v > 0) return static_cast<unsigned>(v);
        } catch (const std::logic_error&) {
        }
        throw UsageError(std::string("UDM_WORKERS must be a positive integer, got '") + env + "'");
    }
    return 1;
}

std::string render_matrix(const Matrix& m, const std::string& indent)
{
    std::ostringstream os;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << indent;
        for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m(i, j).value;
        os << '\n';
    }
    return os.str();
}

/// Rows separated by ';' or ',', entries by whitespace.
Matrix parse_matrix_arg(const Field& f, std::string text)
{
    std::replace(text.begin(), text.end(), ',', ';');
    std::vector<std::vector<Element>> rows;
    std::stringstream ss(text);
    std::string row;
    while (std::getline(ss, row, ';')) {
        const Vector v = parse_vector(f, row);
        rows.emplace_back(v.entries().begin(), v.entries().end());
    }
    if (rows.empty()) throw Error(Errc::ParseError, "empty matrix argument");
    std::vector<Element> flat;
    for (const auto& r : rows) {
        if (r.size() != rows.front().size()) throw Error(Errc::ParseError, "matrix rows have different lengths");
        flat.insert(flat.end(), r.begin(), r.end());
    }
    return {f, rows.size(), rows.front().size(), std::move(flat)};
}

std::string family_summary(const UdmFamily& fam)
{
    std::ostringstream os;
    os << "(L,n,q) = (" << fam.L() << "," << fam.n() << "," << fam.field().order() << "), field "
       << fam.field().to_string();
    if (fam.alpha()) os << ", alpha = " << fam.alpha()->value;
    return os.str();
}

int report_verify(const UdmFamily& fam, bool superset, unsigned workers)
{
    const auto rep = verify(fam, {.superset = superset, .workers = workers});
    if (rep.passed) {
        std::cout << "PASS (" << rep.tuples_checked << " tuples)\n";
        return exit_ok;
    }
    const auto& w = *rep.witness;
    std::cout << "FAIL witness " << to_string(w.tuple) << " rank " << w.rank << " < " << fam.n() << " after "
              << rep.tuples_checked << " tuples\n"
              << "stacked matrix:\n"
              << render_matrix(w.stacked, "  ");
    return exit_semantic;
}

bool is_semantic(Errc c)
{
    return c == Errc::InsufficientSymbols || c == Errc::RankDeficient || c == Errc::Inconsistent;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Universally decodable matrices: construct, verify, transform, encode and decode."};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for every subcommand");

    // generate
    auto* gen = app.add_subcommand("generate", "Write the explicit (L,n,q) family");
    std::int64_t q = 0;
    std::size_t L = 0;
    std::size_t n = 0;
    std::string out_path;
    gen->add_option("--q", q, "Field order (a prime power)")->required();
    gen->add_option("--L", L, "Number of matrices")->required()->check(CLI::PositiveNumber);
    gen->add_option("--n", n, "Matrix size")->required()->check(CLI::PositiveNumber);
    gen->add_option("--out", out_path, "Output file ('-' or omitted for stdout)");

    // verify
    auto* ver = app.add_subcommand("verify", "Check the rank condition for every erasure tuple");
    std::string in_path;
    bool superset = false;
    std::optional<unsigned> workers_opt;
    ver->add_option("--in", in_path, "Family file ('-' for stdin)")->required();
    ver->add_flag("--superset", superset, "Also check tuples whose sum exceeds n");
    ver->add_option("--workers", workers_opt, "Worker threads (default: UDM_WORKERS or 1)")->check(CLI::PositiveNumber);

    // transform
    auto* tr = app.add_subcommand("transform", "Apply a rank-condition-preserving transformation");
    std::string op;
    std::size_t power = 2;
    std::size_t index = 0;
    std::string matrix_arg;
    bool then_verify = false;
    tr->add_option("--in", in_path, "Family file ('-' for stdin)")->required();
    tr->add_option("--op", op, "tensor | reduce | reverse-pairs | right-mul | left-tri")
        ->required()
        ->check(CLI::IsMember({"tensor", "reduce", "reverse-pairs", "right-mul", "left-tri"}));
    tr->add_option("--m", power, "Tensor power (tensor)")->check(CLI::PositiveNumber);
    tr->add_option("--index", index, "Matrix index (left-tri)");
    tr->add_option("--matrix", matrix_arg, "n x n matrix, rows separated by ';' or ',' (right-mul, left-tri)");
    tr->add_option("--out", out_path, "Output file ('-' or omitted for stdout)");
    tr->add_flag("--then-verify", then_verify, "Verify the result; exit 1 if it fails");

    // codec
    auto* codec = app.add_subcommand("codec", "Encode, decode or round-trip over prefix-erasure channels");
    codec->require_subcommand(1);
    std::string u_arg;
    std::string k_arg;
    std::string obs_path;
    bool pad = false;
    auto* enc = codec->add_subcommand("encode", "Print A_l u per channel, optionally truncated by --k");
    enc->add_option("--in", in_path, "Family file")->required();
    enc->add_option("--u", u_arg, "Information vector, space separated")->required();
    enc->add_option("--k", k_arg, "Erasure tuple, space separated (default: nothing erased)");
    enc->add_flag("--pad", pad, "Show erased positions as '?'");
    auto* dec = codec->add_subcommand("decode", "Recover u from an observation file");
    dec->add_option("--in", in_path, "Family file")->required();
    dec->add_option("--obs", obs_path, "Observation file ('-' for stdin)")->required();
    auto* rt = codec->add_subcommand("roundtrip", "Encode u, erase by k, decode and compare");
    rt->add_option("--in", in_path, "Family file")->required();
    rt->add_option("--u", u_arg, "Information vector")->required();
    rt->add_option("--k", k_arg, "Erasure tuple")->required();

    // oracle
    auto* orc = app.add_subcommand("oracle", "Independent cross-checks of the construction");
    orc->require_subcommand(1);
    std::uint64_t budget = default_search_budget;
    std::optional<std::size_t> L_opt;
    auto* o_hasse = orc->add_subcommand("hasse", "Compare construct with Hasse-derivative evaluation");
    auto* o_lucas = orc->add_subcommand("lucas", "Compare construct with the radix-p digit product");
    auto* o_delta = orc->add_subcommand("delta", "Check A_2 Delta_0 ... Delta_{n-1} = I_n");
    auto* o_bound = orc->add_subcommand("bound", "Exhaustively search for (L,n,q) families, L defaulting to q+2");
    for (auto* sub : {o_hasse, o_lucas}) {
        sub->add_option("--q", q, "Field order")->required();
        sub->add_option("--L", L, "Number of matrices")->required()->check(CLI::PositiveNumber);
        sub->add_option("--n", n, "Matrix size")->required()->check(CLI::PositiveNumber);
    }
    o_delta->add_option("--q", q, "Field order")->required();
    o_delta->add_option("--n", n, "Matrix size")->required()->check(CLI::PositiveNumber);
    o_bound->add_option("--q", q, "Field order")->required();
    o_bound->add_option("--n", n, "Matrix size")->required()->check(CLI::PositiveNumber);
    o_bound->add_option("--L", L_opt, "Number of matrices (default q+2)")->check(CLI::PositiveNumber);
    o_bound->add_option("--budget", budget, "Maximum q^(n^2 (L-2)) candidates");

    // simulate
    auto* sim = app.add_subcommand("simulate", "Monte Carlo encode/erase/decode statistics");
    std::uint64_t trials = 10000;
    std::uint64_t seed = 1;
    std::string pattern = "box";
    double p_erase = 0.2;
    sim->add_option("--in", in_path, "Family file")->required();
    sim->add_option("--trials", trials, "Number of trials");
    sim->add_option("--seed", seed, "Random seed");
    sim->add_option("--pattern", pattern, "box | exact | geometric")->check(CLI::IsMember({"box", "exact", "geometric"}));
    sim->add_option("--p-erase", p_erase, "Per-symbol erasure probability (geometric)")->check(CLI::Range(0.0, 1.0));
    sim->add_option("--workers", workers_opt, "Worker threads (default: UDM_WORKERS or 1)")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? exit_ok : exit_usage;
    }

    try {
        const unsigned workers = workers_opt ? *workers_opt : default_workers();

        if (*gen) {
            const Field f = Field::from_order(q);
            const auto fam = construct(f, L, n);
            write_output(out_path, render_family(fam));
            std::ostream& info = (out_path.empty() || out_path == "-") ? std::cerr : std::cout;
            info << "generated " << family_summary(fam) << '\n';
            return exit_ok;
        }

        if (*ver) {
            const auto fam = parse_family(read_input(in_path));
            return report_verify(fam, superset, workers);
        }

        if (*tr) {
            const auto fam = parse_family(read_input(in_path));
            std::optional<UdmFamily> result;
            if (op == "tensor") {
                result = tensor_power(fam, power);
            } else if (op == "reduce") {
                result = reduce(fam);
            } else if (op == "reverse-pairs") {
                result = reverse_pairs(fam);
            } else {
                if (matrix_arg.empty()) throw UsageError("--op " + op + " needs --matrix");
                const Matrix m = parse_matrix_arg(fam.field(), matrix_arg);
                result = op == "right-mul" ? right_multiply(fam, m) : left_transform(fam, index, m);
            }
            write_output(out_path, render_family(*result));
            std::ostream& info = (out_path.empty() || out_path == "-") ? std::cerr : std::cout;
            info << op << " -> " << family_summary(*result) << '\n';
            if (then_verify) {
                // Keep stdout clean when it carries the family.
                std::streambuf* saved = nullptr;
                if (&info == &std::cerr) saved = std::cout.rdbuf(std::cerr.rdbuf());
                const int rc = report_verify(*result, false, workers);
                if (saved) std::cout.rdbuf(saved);
                return rc;
            }
            return exit_ok;
        }

        if (*enc) {
            const auto fam = parse_family(read_input(in_path));
            const auto u = parse_vector(fam.field(), u_arg);
            const auto x = encode(fam, u);
            ErasureTuple k{std::vector<std::size_t>(fam.L(), fam.n())};
            if (!k_arg.empty()) k = parse_tuple(k_arg);
            check_tuple(k, fam.L(), fam.n());
            std::cout << render_observation(erase(x, k), pad ? std::optional<std::size_t>(fam.n()) : std::nullopt);
            return exit_ok;
        }

        if (*dec) {
            const auto fam = parse_family(read_input(in_path));
            const auto obs = parse_observation(fam.field(), read_input(obs_path));
            try {
                std::cout << render_vector(decode(fam, obs)) << '\n';
            } catch (const Error& e) {
                if (!is_semantic(e.code())) throw;
                std::cerr << (e.code() == Errc::InsufficientSymbols ? "insufficient symbols: " : "decode failed: ")
                          << e.what() << '\n';
                return exit_semantic;
            }
            return exit_ok;
        }

        if (*rt) {
            const auto fam = parse_family(read_input(in_path));
            const auto u = parse_vector(fam.field(), u_arg);
            const auto k = parse_tuple(k_arg);
            check_tuple(k, fam.L(), fam.n());
            try {
                const auto decoded = decode(fam, erase(encode(fam, u), k));
                if (decoded == u) {
                    std::cout << "PASS u = " << render_vector(u) << " recovered from k = " << to_string(k) << '\n';
                    return exit_ok;
                }
                std::cout << "FAIL decoded " << render_vector(decoded) << " != " << render_vector(u) << '\n';
                return exit_semantic;
            } catch (const Error& e) {
                if (!is_semantic(e.code())) throw;
                std::cout << "FAIL " << (e.code() == Errc::InsufficientSymbols ? "insufficient symbols: " : "")
                          << e.what() << '\n';
                return exit_semantic;
            }
        }

        if (*o_hasse || *o_lucas) {
            const Field f = Field::from_order(q);
            const auto fam = construct(f, L, n);
            const bool hasse = o_hasse->parsed();
            const std::size_t first = hasse ? 0 : 2;
            std::size_t compared = 0;
            std::size_t at_infinity = 0;
            std::size_t mismatches = 0;
            for (std::size_t l = first; l < L; ++l)
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t t = 0; t < n; ++t, ++compared) {
                        if (l == 1) ++at_infinity;
                        const Element e = hasse ? construct_entry_oracle(f, L, n, l, i, t) : lucas_entry(f, L, n, l - 2, i, t);
                        if (!(e == fam[l](i, t))) ++mismatches;
                    }
            const std::size_t matrices = L - std::min(first, L);
            std::cout << (mismatches ? "FAIL" : "PASS") << ", " << compared << " entries compared over " << matrices
                      << " matrices (" << n * n << " entries per matrix";
            if (at_infinity) std::cout << "; " << compared - at_infinity << " at finite points, " << at_infinity << " at (1,0)";
            std::cout << ")";
            if (mismatches) std::cout << ", " << mismatches << " mismatches";
            std::cout << '\n';
            return mismatches ? exit_semantic : exit_ok;
        }

        if (*o_delta) {
            const Field f = Field::from_order(q);
            const auto fam = construct(f, 3, n);
            const bool ok = pascal_inverse_check(fam);
            std::cout << (ok ? "PASS" : "FAIL") << ", A_2";
            for (std::size_t t = 0; t < n; ++t) std::cout << " Delta_" << t;
            std::cout << (ok ? " = I_" : " != I_") << n << '\n';
            return ok ? exit_ok : exit_semantic;
        }

        if (*o_bound) {
            const Field f = Field::from_order(q);
            const auto rep = refute_bound(f, n, L_opt, budget);
            const std::string params =
                "(" + std::to_string(rep.L) + "," + std::to_string(rep.n) + "," + std::to_string(rep.q) + ")";
            if (rep.exists())
                std::cout << params << "-UDMs exist: " << rep.families_found << " normalized "
                          << (rep.families_found == 1 ? "family" : "families") << "; ";
            else
                std::cout << "no " << params << "-UDMs exist; ";
            std::cout << rep.candidates_total << " candidates pruned to " << rep.candidates_after_pruning << '\n';
            if (!rep.note.empty() && n == 1) std::cout << rep.note << '\n';
            if (rep.exists() && !rep.examples.empty()) {
                std::cout << "first family found:\n";
                for (std::size_t l = 0; l < rep.examples.front().L(); ++l)
                    std::cout << "  A_" << l << ":\n" << render_matrix(rep.examples.front()[l], "    ");
            }
            return exit_ok;
        }

        if (*sim) {
            const auto fam = parse_family(read_input(in_path));
            PatternSource patterns = pattern == "box"     ? uniform_box_patterns()
                                     : pattern == "exact" ? uniform_exact_patterns()
                                                          : truncated_geometric_patterns(p_erase);
            const auto stats = simulate(fam, trials, patterns, seed, workers);
            std::cout << "trials " << stats.trials << '\n'
                      << "successes " << stats.successes << '\n'
                      << "failures_insufficient " << stats.failures_insufficient << '\n'
                      << "failures_rank_deficient " << stats.failures_rank_deficient << '\n'
                      << "failures_inconsistent " << stats.failures_inconsistent << '\n'
                      << "wrong_decodes " << stats.wrong_decodes << '\n'
                      << "success_rate " << stats.success_rate() << '\n'
                      << "mean_weight " << stats.mean_weight() << '\n'
                      << "weight_histogram";
            for (auto c : stats.weight_histogram) std::cout << ' ' << c;
            std::cout << '\n';
            const bool clean = stats.wrong_decodes == 0 && stats.failures_rank_deficient == 0 &&
                               stats.failures_inconsistent == 0;
            return clean ? exit_ok : exit_semantic;
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    }
    return exit_usage;
}
