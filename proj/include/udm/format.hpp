#pragma once

/**
 * @file format.hpp
 * @brief Text formats: UDMv1 family files, vectors and channel observations.
 *
 * UDMv1 layout, one item per line:
 *
 *     UDMv1
 *     field q=<p>^<s>[;mod=<c_0,...,c_s>]
 *     L <L>
 *     n <n>
 *     alpha <a>            (optional)
 *     matrix 0
 *     <n rows of n canonical element integers>
 *     matrix 1
 *     ...
 *
 * Observations are one line per channel, `k=<k>: s_0 ... s_{k-1}`, optionally
 * followed by n-k `?` placeholders for the erased tail.
 */

#include <udm/codec.hpp>
#include <udm/error.hpp>
#include <udm/gf.hpp>
#include <udm/linalg.hpp>
#include <udm/udm.hpp>

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace udm {

inline constexpr std::string_view udm_format_tag = "UDMv1";

namespace detail {

inline std::vector<std::string> split_lines(std::string_view text)
{
    std::vector<std::string> lines;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos) continue;
        if (line[first] == '#') continue;
        lines.push_back(line);
    }
    return lines;
}

inline std::vector<std::string> split_words(std::string_view text)
{
    std::vector<std::string> words;
    std::istringstream in{std::string(text)};
    std::string w;
    while (in >> w) words.push_back(w);
    return words;
}

inline std::int64_t parse_int(std::string_view word, std::string_view what)
{
    std::int64_t v = 0;
    std::size_t used = 0;
    try {
        v = std::stoll(std::string(word), &used);
    } catch (const std::logic_error&) {
        throw Error(Errc::ParseError, "expected an integer for " + std::string(what) + ", got '" + std::string(word) + "'");
    }
    if (used != word.size())
        throw Error(Errc::ParseError, "expected an integer for " + std::string(what) + ", got '" + std::string(word) + "'");
    return v;
}

inline std::int64_t parse_keyed(const std::string& line, std::string_view key)
{
    const auto w = split_words(line);
    if (w.size() != 2 || w[0] != key) throw Error(Errc::ParseError, "expected '" + std::string(key) + " <int>', got '" + line + "'");
    return parse_int(w[1], key);
}

}  // namespace detail

inline std::string render_family(const UdmFamily& family)
{
    std::ostringstream os;
    os << udm_format_tag << '\n';
    os << "field " << family.field().to_string() << '\n';
    os << "L " << family.L() << '\n';
    os << "n " << family.n() << '\n';
    if (family.alpha()) os << "alpha " << family.alpha()->value << '\n';
    for (std::size_t l = 0; l < family.L(); ++l) {
        os << "matrix " << l << '\n';
        const Matrix& a = family[l];
        for (std::size_t i = 0; i < a.rows(); ++i) {
            for (std::size_t j = 0; j < a.cols(); ++j) os << (j ? " " : "") << a(i, j).value;
            os << '\n';
        }
    }
    return os.str();
}

inline UdmFamily parse_family(std::string_view text)
{
    const auto lines = detail::split_lines(text);
    std::size_t pos = 0;
    auto next = [&](std::string_view what) -> const std::string& {
        if (pos >= lines.size()) throw Error(Errc::ParseError, "unexpected end of file, expected " + std::string(what));
        return lines[pos++];
    };
    if (detail::split_words(next("format tag")) != std::vector<std::string>{std::string(udm_format_tag)})
        throw Error(Errc::ParseError, "missing UDMv1 tag");
    const auto fw = detail::split_words(next("field line"));
    if (fw.size() != 2 || fw[0] != "field") throw Error(Errc::ParseError, "expected 'field <q=p^s...>'");
    const Field field = Field::parse(fw[1]);
    const auto L = detail::parse_keyed(next("L"), "L");
    const auto n = detail::parse_keyed(next("n"), "n");
    if (L < 1 || n < 1) throw Error(Errc::ParseError, "L and n must be positive");
    std::optional<Element> alpha;
    if (pos < lines.size() && detail::split_words(lines[pos]).front() == "alpha")
        alpha = field.element(detail::parse_keyed(next("alpha"), "alpha"));

    std::vector<Matrix> mats;
    for (std::int64_t l = 0; l < L; ++l) {
        if (detail::parse_keyed(next("matrix header"), "matrix") != l)
            throw Error(Errc::ParseError, "matrix blocks out of order at index " + std::to_string(l));
        std::vector<Element> e;
        e.reserve(static_cast<std::size_t>(n * n));
        for (std::int64_t i = 0; i < n; ++i) {
            const auto words = detail::split_words(next("matrix row"));
            if (words.size() != static_cast<std::size_t>(n))
                throw Error(Errc::ParseError, "matrix " + std::to_string(l) + " row " + std::to_string(i) + " has " +
                                                  std::to_string(words.size()) + " entries");
            for (const auto& w : words) e.push_back(field.element(detail::parse_int(w, "matrix entry")));
        }
        mats.emplace_back(field, static_cast<std::size_t>(n), static_cast<std::size_t>(n), std::move(e));
    }
    if (pos != lines.size()) throw Error(Errc::ParseError, "trailing content after the last matrix");
    return {field, static_cast<std::size_t>(n), std::move(mats), alpha};
}

/// Whitespace-separated canonical integers.
inline std::string render_vector(const Vector& v)
{
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? " " : "") + std::to_string(v[i].value);
    return out;
}

inline Vector parse_vector(const Field& field, std::string_view text)
{
    std::vector<Element> e;
    for (const auto& w : detail::split_words(text)) e.push_back(field.element(detail::parse_int(w, "vector entry")));
    return {field, std::move(e)};
}

inline ErasureTuple parse_tuple(std::string_view text)
{
    ErasureTuple k;
    for (const auto& w : detail::split_words(text)) {
        const auto v = detail::parse_int(w, "tuple entry");
        if (v < 0) throw Error(Errc::ParseError, "tuple entries must be non-negative");
        k.ks.push_back(static_cast<std::size_t>(v));
    }
    return k;
}

/// `k=<k>: s_0 ... s_{k-1}` per channel; with `pad_to` set, erased positions print as `?`.
inline std::string render_observation(const ChannelOutput& obs, std::optional<std::size_t> pad_to = std::nullopt)
{
    std::ostringstream os;
    for (const auto& c : obs.channels) {
        os << "k=" << c.k << ':';
        for (auto s : c.symbols) os << ' ' << s.value;
        if (pad_to)
            for (std::size_t r = c.k; r < *pad_to; ++r) os << " ?";
        os << '\n';
    }
    return os.str();
}

inline ChannelOutput parse_observation(const Field& field, std::string_view text)
{
    ChannelOutput obs;
    for (const auto& line : detail::split_lines(text)) {
        const auto colon = line.find(':');
        const auto start = line.find_first_not_of(" \t");
        if (colon == std::string::npos || line.compare(start, 2, "k=") != 0)
            throw Error(Errc::ParseError, "expected 'k=<int>: ...', got '" + line + "'");
        const auto k = detail::parse_int(line.substr(start + 2, colon - start - 2), "k");
        if (k < 0) throw Error(Errc::ParseError, "k must be non-negative");
        ChannelObservation ch;
        ch.k = static_cast<std::size_t>(k);
        bool erased_tail = false;
        for (const auto& w : detail::split_words(line.substr(colon + 1))) {
            if (w == "?") {
                erased_tail = true;
                continue;
            }
            if (erased_tail) throw Error(Errc::ParseError, "symbol after an erased position");
            ch.symbols.push_back(field.element(detail::parse_int(w, "symbol")));
        }
        if (ch.symbols.size() != ch.k)
            throw Error(Errc::ParseError, "channel declares k=" + std::to_string(k) + " but carries " +
                                              std::to_string(ch.symbols.size()) + " symbols");
        obs.channels.push_back(std::move(ch));
    }
    return obs;
}

}  // namespace udm
