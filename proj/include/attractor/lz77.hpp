#ifndef ATTRACTOR_LZ77_HPP
#define ATTRACTOR_LZ77_HPP

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "attractor/common.hpp"
#include "attractor/suffix_index.hpp"
#include "attractor/text.hpp"

namespace attractor {

// Greedy leftmost factorization without self-references and without trailing
// characters: a copy's source ends strictly before the phrase start, and a
// literal appears only for the first occurrence of a symbol.
struct Lz77Parse {
    struct Literal { int rank; };
    struct Copy { std::int64_t src; std::int64_t len; };
    using Phrase = std::variant<Literal, Copy>;

    std::vector<Phrase> phrases;

    std::int64_t z() const { return static_cast<std::int64_t>(phrases.size()); }

    std::vector<int> decode_ranks() const {
        std::vector<int> out;
        for (const auto& ph : phrases) {
            if (std::holds_alternative<Literal>(ph)) {
                out.push_back(std::get<Literal>(ph).rank);
            } else {
                const auto& c = std::get<Copy>(ph);
                for (std::int64_t k = 0; k < c.len; ++k)
                    out.push_back(out[static_cast<std::size_t>(c.src - 1 + k)]);
            }
        }
        return out;
    }
};

inline Lz77Parse lz77_parse(const Text& t, const SuffixIndex& idx) {
    Lz77Parse parse;
    std::int64_t n = t.n();
    std::int64_t pos = 1;
    while (pos <= n) {
        // longest ell with an occurrence of T[pos..pos+ell-1] starting at or
        // before pos - ell (source entirely before the phrase)
        std::int64_t best_len = 0;
        std::int64_t lo = 0, hi = static_cast<std::int64_t>(idx.sa().size()) - 1;
        std::int64_t ell = 1;
        while (pos + ell - 1 <= n) {
            auto [l2, h2] = idx.pattern_range(t, pos, pos + ell - 1);
            if (l2 > h2) break;
            if (idx.min_start_in_range(l2, h2) <= pos - ell) {
                best_len = ell;
                lo = l2;
                hi = h2;
                ++ell;
            } else {
                break;
            }
        }
        if (best_len == 0) {
            parse.phrases.push_back(Lz77Parse::Literal{t.at(pos)});
            pos += 1;
        } else {
            // leftmost valid source: the global minimum start is itself valid
            std::int64_t src = idx.min_start_in_range(lo, hi);
            parse.phrases.push_back(Lz77Parse::Copy{src, best_len});
            pos += best_len;
        }
    }
    return parse;
}

// Phrase-end positions form an attractor of size at most z.
inline AttractorSet attractor_from_lz77(const Lz77Parse& p) {
    std::vector<std::int64_t> ends;
    std::int64_t pos = 0;
    for (const auto& ph : p.phrases) {
        pos += std::holds_alternative<Lz77Parse::Literal>(ph)
                   ? 1
                   : std::get<Lz77Parse::Copy>(ph).len;
        ends.push_back(pos);
    }
    return AttractorSet(std::move(ends), "lz77");
}

inline nlohmann::json lz77_to_json(const Lz77Parse& p, const Text& t) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& ph : p.phrases) {
        if (std::holds_alternative<Lz77Parse::Literal>(ph)) {
            arr.push_back({{"lit", byte_to_json_char(
                               t.byte_of_rank(std::get<Lz77Parse::Literal>(ph).rank))}});
        } else {
            const auto& cp = std::get<Lz77Parse::Copy>(ph);
            arr.push_back({{"src", cp.src}, {"len", cp.len}});
        }
    }
    return arr;
}

// Decodes a serialized parse directly to bytes (literals carry real characters).
inline std::string lz77_json_to_bytes(const nlohmann::json& arr) {
    std::string out;
    for (const auto& ph : arr) {
        if (ph.contains("lit")) {
            unsigned char b;
            if (!json_char_to_byte(ph.at("lit").get<std::string>(), b))
                throw Error("lz77-invalid", "literal must be a single character");
            out.push_back(static_cast<char>(b));
        } else {
            std::int64_t src = ph.at("src").get<std::int64_t>();
            std::int64_t len = ph.at("len").get<std::int64_t>();
            if (src < 1 || len < 1 || src + len - 1 > static_cast<std::int64_t>(out.size()))
                throw Error("lz77-invalid", "copy source not contained in previously decoded text");
            for (std::int64_t k = 0; k < len; ++k)
                out.push_back(out[static_cast<std::size_t>(src - 1 + k)]);
        }
    }
    return out;
}

}  // namespace attractor

#endif
