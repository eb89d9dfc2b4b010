#ifndef ATTRACTOR_MACRO_HPP
#define ATTRACTOR_MACRO_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "attractor/common.hpp"
#include "attractor/lz77.hpp"
#include "attractor/text.hpp"

namespace attractor {

// A set of copy/assign directives from which the text is reconstructed by
// fixpoint. A bidirectional parse is the special case whose left-hand sides
// partition [1..n]; only then is the height defined.
struct MacroScheme {
    struct CopyDir { std::int64_t di, dj, si, sj; };
    struct AssignDir { std::int64_t pos; unsigned char ch; };
    using Directive = std::variant<CopyDir, AssignDir>;

    std::int64_t n = 0;
    std::vector<Directive> dirs;

    std::int64_t b1() const {
        std::int64_t c = 0;
        for (const auto& d : dirs) c += std::holds_alternative<CopyDir>(d) ? 1 : 0;
        return c;
    }
    std::int64_t b2() const { return static_cast<std::int64_t>(dirs.size()) - b1(); }
    std::int64_t b() const { return static_cast<std::int64_t>(dirs.size()); }

    bool is_partition() const {
        std::vector<std::int64_t> count(static_cast<std::size_t>(n) + 1, 0);
        for (const auto& d : dirs) {
            if (std::holds_alternative<CopyDir>(d)) {
                const auto& c = std::get<CopyDir>(d);
                for (std::int64_t p = c.di; p <= c.dj; ++p) ++count[static_cast<std::size_t>(p)];
            } else {
                ++count[static_cast<std::size_t>(std::get<AssignDir>(d).pos)];
            }
        }
        for (std::int64_t p = 1; p <= n; ++p)
            if (count[static_cast<std::size_t>(p)] != 1) return false;
        return true;
    }
};

struct MacroDecodeResult {
    Text text;
    std::optional<std::int64_t> height;  // only for bidirectional parses
};

// Worklist fixpoint: repeatedly resolve positions whose source symbol is known;
// all n positions must resolve, and every directive is re-checked against the
// resolved text.
inline MacroDecodeResult decode_macro(const MacroScheme& ms) {
    std::int64_t n = ms.n;
    if (n < 1) throw Error("macro-invalid", "target length must be at least 1");
    for (const auto& d : ms.dirs) {
        if (std::holds_alternative<MacroScheme::CopyDir>(d)) {
            const auto& c = std::get<MacroScheme::CopyDir>(d);
            if (c.di < 1 || c.dj > n || c.di > c.dj || c.si < 1 || c.sj > n || c.si > c.sj)
                throw Error("macro-invalid", "directive interval outside [1..n]");
            if (c.dj - c.di != c.sj - c.si)
                throw Error("macro-invalid", "copy intervals must have equal lengths");
        } else {
            const auto& a = std::get<MacroScheme::AssignDir>(d);
            if (a.pos < 1 || a.pos > n) throw Error("macro-invalid", "assign position outside [1..n]");
        }
    }
    // outgoing copy links: src position -> (dst position) pairs, flattened
    std::vector<std::int64_t> head(static_cast<std::size_t>(n) + 1, -1);
    std::vector<std::pair<std::int64_t, std::int64_t>> links;  // (dst, next-index)
    std::vector<bool> covered(static_cast<std::size_t>(n) + 1, false);
    std::vector<unsigned char> value(static_cast<std::size_t>(n) + 1, 0);
    std::vector<bool> known(static_cast<std::size_t>(n) + 1, false);
    std::vector<std::int64_t> height(static_cast<std::size_t>(n) + 1, 0);
    std::vector<std::int64_t> queue;
    for (const auto& d : ms.dirs) {
        if (std::holds_alternative<MacroScheme::CopyDir>(d)) {
            const auto& c = std::get<MacroScheme::CopyDir>(d);
            for (std::int64_t k = 0; k <= c.dj - c.di; ++k) {
                std::int64_t dst = c.di + k, src = c.si + k;
                covered[static_cast<std::size_t>(dst)] = true;
                links.emplace_back(dst, head[static_cast<std::size_t>(src)]);
                head[static_cast<std::size_t>(src)] = static_cast<std::int64_t>(links.size()) - 1;
            }
        } else {
            const auto& a = std::get<MacroScheme::AssignDir>(d);
            covered[static_cast<std::size_t>(a.pos)] = true;
            if (!known[static_cast<std::size_t>(a.pos)]) {
                known[static_cast<std::size_t>(a.pos)] = true;
                value[static_cast<std::size_t>(a.pos)] = a.ch;
                height[static_cast<std::size_t>(a.pos)] = 1;
                queue.push_back(a.pos);
            }
        }
    }
    for (std::int64_t p = 1; p <= n; ++p)
        if (!covered[static_cast<std::size_t>(p)])
            throw Error("uncovered-position",
                        "position " + std::to_string(p) + " has no directive");
    std::size_t qi = 0;
    std::int64_t resolved = static_cast<std::int64_t>(queue.size());
    while (qi < queue.size()) {
        std::int64_t src = queue[qi++];
        for (std::int64_t li = head[static_cast<std::size_t>(src)]; li != -1; li = links[static_cast<std::size_t>(li)].second) {
            std::int64_t dst = links[static_cast<std::size_t>(li)].first;
            if (known[static_cast<std::size_t>(dst)]) continue;
            known[static_cast<std::size_t>(dst)] = true;
            value[static_cast<std::size_t>(dst)] = value[static_cast<std::size_t>(src)];
            height[static_cast<std::size_t>(dst)] = height[static_cast<std::size_t>(src)] + 1;
            queue.push_back(dst);
            ++resolved;
        }
    }
    if (resolved != n)
        throw Error("unresolvable-cycle", "fixpoint stalls with " + std::to_string(n - resolved) +
                                              " unresolved positions");
    for (const auto& d : ms.dirs) {
        if (std::holds_alternative<MacroScheme::CopyDir>(d)) {
            const auto& c = std::get<MacroScheme::CopyDir>(d);
            for (std::int64_t k = 0; k <= c.dj - c.di; ++k)
                if (value[static_cast<std::size_t>(c.di + k)] != value[static_cast<std::size_t>(c.si + k)])
                    throw Error("inconsistent-directives", "copy directive disagrees with resolved text");
        } else {
            const auto& a = std::get<MacroScheme::AssignDir>(d);
            if (value[static_cast<std::size_t>(a.pos)] != a.ch)
                throw Error("inconsistent-directives", "assign directive disagrees with resolved text");
        }
    }
    std::string bytes(reinterpret_cast<const char*>(value.data()) + 1, static_cast<std::size_t>(n));
    MacroDecodeResult out{Text::from_bytes(bytes), std::nullopt};
    if (ms.is_partition()) {
        std::int64_t h = 0;
        for (std::int64_t p = 1; p <= n; ++p) h = std::max(h, height[static_cast<std::size_t>(p)]);
        out.height = h;
    }
    return out;
}

// Copy-destination endpoints plus assign positions; size at most 2b.
inline AttractorSet attractor_from_macro(const MacroScheme& ms) {
    std::vector<std::int64_t> pos;
    for (const auto& d : ms.dirs) {
        if (std::holds_alternative<MacroScheme::CopyDir>(d)) {
            const auto& c = std::get<MacroScheme::CopyDir>(d);
            pos.push_back(c.di);
            pos.push_back(c.dj);
        } else {
            pos.push_back(std::get<MacroScheme::AssignDir>(d).pos);
        }
    }
    return AttractorSet(std::move(pos), "macro");
}

// LZ77 is the optimal unidirectional bidirectional parse; this is its macro view.
inline MacroScheme macro_from_lz77(const Lz77Parse& p, const Text& t) {
    MacroScheme ms;
    ms.n = t.n();
    std::int64_t pos = 1;
    for (const auto& ph : p.phrases) {
        if (std::holds_alternative<Lz77Parse::Literal>(ph)) {
            ms.dirs.push_back(MacroScheme::AssignDir{
                pos, t.byte_of_rank(std::get<Lz77Parse::Literal>(ph).rank)});
            pos += 1;
        } else {
            const auto& c = std::get<Lz77Parse::Copy>(ph);
            ms.dirs.push_back(MacroScheme::CopyDir{pos, pos + c.len - 1, c.src, c.src + c.len - 1});
            pos += c.len;
        }
    }
    return ms;
}

inline nlohmann::json macro_to_json(const MacroScheme& ms) {
    nlohmann::json dirs = nlohmann::json::array();
    for (const auto& d : ms.dirs) {
        if (std::holds_alternative<MacroScheme::CopyDir>(d)) {
            const auto& c = std::get<MacroScheme::CopyDir>(d);
            dirs.push_back({{"dst", {c.di, c.dj}}, {"src", {c.si, c.sj}}});
        } else {
            const auto& a = std::get<MacroScheme::AssignDir>(d);
            dirs.push_back({{"pos", a.pos}, {"ch", byte_to_json_char(a.ch)}});
        }
    }
    return nlohmann::json{{"n", ms.n}, {"dirs", dirs}};
}

inline MacroScheme macro_from_json(const nlohmann::json& j) {
    MacroScheme ms;
    ms.n = j.at("n").get<std::int64_t>();
    for (const auto& d : j.at("dirs")) {
        if (d.contains("dst")) {
            ms.dirs.push_back(MacroScheme::CopyDir{d["dst"][0].get<std::int64_t>(),
                                                   d["dst"][1].get<std::int64_t>(),
                                                   d["src"][0].get<std::int64_t>(),
                                                   d["src"][1].get<std::int64_t>()});
        } else {
            unsigned char b;
            if (!json_char_to_byte(d.at("ch").get<std::string>(), b))
                throw Error("macro-invalid", "assign character must be a single byte");
            ms.dirs.push_back(MacroScheme::AssignDir{d.at("pos").get<std::int64_t>(), b});
        }
    }
    return ms;
}

}  // namespace attractor

#endif
