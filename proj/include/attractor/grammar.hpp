#ifndef ATTRACTOR_GRAMMAR_HPP
#define ATTRACTOR_GRAMMAR_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "attractor/common.hpp"
#include "attractor/text.hpp"

namespace attractor {

// Run-length grammar: rules X -> AB or Y -> Z^l (l >= 2) over symbols that are
// either terminals (single byte) or nonterminals. Symbol encoding: id < 256 is
// the terminal byte; id >= 256 indexes rules_[id - 256].
struct RlGrammar {
    struct Pair { std::int64_t a, b; };
    struct Power { std::int64_t z; std::int64_t exp; };
    using Rule = std::variant<Pair, Power>;

    std::vector<Rule> rules;
    std::int64_t start = -1;  // symbol id; may be a bare terminal

    static bool is_terminal(std::int64_t sym) { return sym < 256; }

    std::int64_t add_pair(std::int64_t a, std::int64_t b) {
        rules.emplace_back(Pair{a, b});
        return 256 + static_cast<std::int64_t>(rules.size()) - 1;
    }
    std::int64_t add_power(std::int64_t z, std::int64_t exp) {
        rules.emplace_back(Power{z, exp});
        return 256 + static_cast<std::int64_t>(rules.size()) - 1;
    }

    std::int64_t g_pair() const {
        std::int64_t c = 0;
        for (const auto& r : rules) c += std::holds_alternative<Pair>(r) ? 1 : 0;
        return c;
    }
    std::int64_t g_power() const { return static_cast<std::int64_t>(rules.size()) - g_pair(); }
    std::int64_t g() const { return static_cast<std::int64_t>(rules.size()); }

    // expansion lengths with cycle detection; saturates at cap
    std::vector<std::int64_t> expansion_lengths(std::int64_t cap) const {
        std::vector<std::int64_t> len(rules.size(), -1);
        std::vector<int> state(rules.size(), 0);  // 0 new, 1 open, 2 done
        auto sym_len = [&](auto&& self, std::int64_t sym) -> std::int64_t {
            if (is_terminal(sym)) return 1;
            std::size_t r = static_cast<std::size_t>(sym - 256);
            if (r >= rules.size()) throw Error("grammar-invalid", "undefined nonterminal");
            if (state[r] == 1) throw Error("grammar-invalid", "cyclic rules");
            if (state[r] == 2) return len[r];
            state[r] = 1;
            std::int64_t out;
            if (std::holds_alternative<Pair>(rules[r])) {
                const auto& p = std::get<Pair>(rules[r]);
                out = self(self, p.a) + self(self, p.b);
            } else {
                const auto& p = std::get<Power>(rules[r]);
                if (p.exp < 2) throw Error("grammar-invalid", "power exponent must be >= 2");
                out = self(self, p.z) * p.exp;
            }
            out = std::min(out, cap);
            state[r] = 2;
            len[r] = out;
            return out;
        };
        for (std::size_t r = 0; r < rules.size(); ++r) sym_len(sym_len, 256 + static_cast<std::int64_t>(r));
        return len;
    }

    std::string expand_bytes(std::int64_t cap = (std::int64_t{1} << 40)) const {
        auto len = expansion_lengths(cap);
        std::int64_t total = start < 256 ? 1 : len[static_cast<std::size_t>(start - 256)];
        if (total >= cap) throw Error("grammar-invalid", "expansion too large");
        std::string out;
        out.reserve(static_cast<std::size_t>(total));
        std::vector<std::pair<std::int64_t, std::int64_t>> stack;  // (symbol, remaining copies)
        stack.emplace_back(start, 1);
        while (!stack.empty()) {
            auto [sym, copies] = stack.back();
            stack.pop_back();
            if (is_terminal(sym)) {
                for (std::int64_t k = 0; k < copies; ++k) out.push_back(static_cast<char>(sym));
                continue;
            }
            if (copies > 1) stack.emplace_back(sym, copies - 1);
            const auto& rule = rules[static_cast<std::size_t>(sym - 256)];
            if (std::holds_alternative<Pair>(rule)) {
                const auto& p = std::get<Pair>(rule);
                stack.emplace_back(p.b, 1);
                stack.emplace_back(p.a, 1);
            } else {
                const auto& p = std::get<Power>(rule);
                stack.emplace_back(p.z, p.exp);
            }
        }
        return out;
    }

    // rule ids reachable from start
    std::vector<bool> reachable() const {
        std::vector<bool> seen(rules.size(), false);
        std::vector<std::int64_t> stack{start};
        while (!stack.empty()) {
            std::int64_t sym = stack.back();
            stack.pop_back();
            if (is_terminal(sym)) continue;
            std::size_t r = static_cast<std::size_t>(sym - 256);
            if (r >= rules.size() || seen[r]) continue;
            seen[r] = true;
            if (std::holds_alternative<Pair>(rules[r])) {
                stack.push_back(std::get<Pair>(rules[r]).a);
                stack.push_back(std::get<Pair>(rules[r]).b);
            } else {
                stack.push_back(std::get<Power>(rules[r]).z);
            }
        }
        return seen;
    }

    RlGrammar pruned() const {
        auto keep = reachable();
        std::vector<std::int64_t> remap(rules.size(), -1);
        RlGrammar out;
        for (std::size_t r = 0; r < rules.size(); ++r)
            if (keep[r]) {
                remap[r] = 256 + static_cast<std::int64_t>(out.rules.size());
                out.rules.push_back(rules[r]);
            }
        auto fix = [&](std::int64_t sym) {
            return is_terminal(sym) ? sym : remap[static_cast<std::size_t>(sym - 256)];
        };
        for (auto& r : out.rules) {
            if (std::holds_alternative<Pair>(r)) {
                auto& p = std::get<Pair>(r);
                p.a = fix(p.a);
                p.b = fix(p.b);
            } else {
                auto& p = std::get<Power>(r);
                p.z = fix(p.z);
            }
        }
        out.start = fix(start);
        return out;
    }
};

// One position per rule: the end of the left child's expansion (Pair) or of the
// first base copy (Power), taken in the leftmost derivation-tree occurrence.
// The character at a rule's split is the same in every occurrence, so the
// splits cover every character value occurring before position n; position n
// is appended only when the final character has no occurrence at a split.
inline AttractorSet attractor_from_grammar(const RlGrammar& grammar, const Text& t) {
    RlGrammar gr = grammar.pruned();
    auto len = gr.expansion_lengths(t.n() + 1);
    std::int64_t total = gr.start < 256 ? 1 : len[static_cast<std::size_t>(gr.start - 256)];
    if (total != t.n() || gr.expand_bytes() != t.bytes())
        throw Error("grammar-invalid", "grammar expansion does not equal the text");
    auto sym_len = [&](std::int64_t sym) {
        return RlGrammar::is_terminal(sym) ? 1 : len[static_cast<std::size_t>(sym - 256)];
    };
    std::vector<std::int64_t> positions;
    std::vector<bool> seen(gr.rules.size(), false);
    // leftmost occurrence of each rule = first DFS encounter; skipping visited
    // rules is safe because identical subtrees repeat identically
    auto walk = [&](auto&& self, std::int64_t sym, std::int64_t offset) -> void {
        if (RlGrammar::is_terminal(sym)) return;
        std::size_t r = static_cast<std::size_t>(sym - 256);
        if (seen[r]) return;
        seen[r] = true;
        if (std::holds_alternative<RlGrammar::Pair>(gr.rules[r])) {
            const auto& p = std::get<RlGrammar::Pair>(gr.rules[r]);
            positions.push_back(offset + sym_len(p.a));
            self(self, p.a, offset);
            self(self, p.b, offset + sym_len(p.a));
        } else {
            const auto& p = std::get<RlGrammar::Power>(gr.rules[r]);
            positions.push_back(offset + sym_len(p.z));
            self(self, p.z, offset);
        }
    };
    walk(walk, gr.start, 0);
    bool last_covered = false;
    for (std::int64_t p : positions)
        if (t.at(p) == t.at(t.n())) { last_covered = true; break; }
    if (!last_covered) positions.push_back(t.n());
    return AttractorSet(std::move(positions), "grammar");
}

// JSON ids: any single-character string is a terminal; longer strings name rules.
inline nlohmann::json grammar_to_json(const RlGrammar& gr) {
    auto sym_name = [](std::int64_t sym) {
        if (RlGrammar::is_terminal(sym))
            return byte_to_json_char(static_cast<unsigned char>(sym));
        return "N" + std::to_string(sym - 256);
    };
    nlohmann::json rules = nlohmann::json::object();
    for (std::size_t r = 0; r < gr.rules.size(); ++r) {
        if (std::holds_alternative<RlGrammar::Pair>(gr.rules[r])) {
            const auto& p = std::get<RlGrammar::Pair>(gr.rules[r]);
            rules["N" + std::to_string(r)] = {{"pair", {sym_name(p.a), sym_name(p.b)}}};
        } else {
            const auto& p = std::get<RlGrammar::Power>(gr.rules[r]);
            rules["N" + std::to_string(r)] = {{"power", {sym_name(p.z), p.exp}}};
        }
    }
    return nlohmann::json{{"start", sym_name(gr.start)}, {"rules", rules}};
}

inline RlGrammar grammar_from_json(const nlohmann::json& j) {
    RlGrammar gr;
    const auto& rules = j.at("rules");
    std::map<std::string, std::int64_t> ids;
    std::int64_t next = 256;
    for (auto it = rules.begin(); it != rules.end(); ++it) ids[it.key()] = next++;
    gr.rules.resize(rules.size());
    auto sym_of = [&](const std::string& name) -> std::int64_t {
        auto it = ids.find(name);
        if (it != ids.end()) return it->second;
        unsigned char b;
        if (json_char_to_byte(name, b)) return b;
        throw Error("grammar-invalid", "unknown rule id " + name);
    };
    for (auto it = rules.begin(); it != rules.end(); ++it) {
        std::size_t r = static_cast<std::size_t>(ids[it.key()] - 256);
        const auto& body = it.value();
        if (body.contains("pair")) {
            gr.rules[r] = RlGrammar::Pair{sym_of(body["pair"][0].get<std::string>()),
                                          sym_of(body["pair"][1].get<std::string>())};
        } else if (body.contains("power")) {
            std::int64_t exp = body["power"][1].get<std::int64_t>();
            if (exp < 2) throw Error("grammar-invalid", "power exponent must be >= 2");
            gr.rules[r] = RlGrammar::Power{sym_of(body["power"][0].get<std::string>()), exp};
        } else {
            throw Error("grammar-invalid", "rule must be a pair or a power");
        }
    }
    gr.start = sym_of(j.at("start").get<std::string>());
    return gr;
}

}  // namespace attractor

#endif
