#ifndef ATTRACTOR_TEXT_HPP
#define ATTRACTOR_TEXT_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "attractor/common.hpp"

namespace attractor {

// Single-character JSON strings carry raw bytes; values above 0x7f are encoded
// as the corresponding U+0080..U+00FF code points so serialized forms stay
// valid UTF-8 for arbitrary byte files.
inline std::string byte_to_json_char(unsigned char b) {
    if (b < 0x80) return std::string(1, static_cast<char>(b));
    std::string s;
    s.push_back(static_cast<char>(0xC0 | (b >> 6)));
    s.push_back(static_cast<char>(0x80 | (b & 0x3F)));
    return s;
}

inline bool json_char_to_byte(const std::string& s, unsigned char& out) {
    if (s.size() == 1) {
        out = static_cast<unsigned char>(s[0]);
        return true;
    }
    if (s.size() == 2) {
        unsigned char c0 = static_cast<unsigned char>(s[0]);
        unsigned char c1 = static_cast<unsigned char>(s[1]);
        if ((c0 & 0xFC) == 0xC0 && (c1 & 0xC0) == 0x80) {
            out = static_cast<unsigned char>(((c0 & 0x03) << 6) | (c1 & 0x3F));
            return true;
        }
    }
    return false;
}

// A text over a densified alphabet: input bytes are remapped to ranks 1..sigma
// in byte-sorted order (order-preserving, so lexicographic structure survives),
// and the inverse map is kept so output operations can reproduce the original
// bytes. Positions are 1-based throughout.
class Text {
public:
    static Text from_bytes(std::string_view bytes) {
        if (bytes.empty()) throw Error("empty-text", "the empty string is rejected at ingestion");
        std::array<bool, 256> present{};
        for (unsigned char c : bytes) present[c] = true;
        Text t;
        std::array<int, 256> rank{};
        for (int c = 0; c < 256; ++c) {
            if (present[c]) {
                rank[c] = static_cast<int>(t.rank_to_byte_.size()) + 1;
                t.rank_to_byte_.push_back(static_cast<unsigned char>(c));
            }
        }
        t.chars_.reserve(bytes.size());
        for (unsigned char c : bytes) t.chars_.push_back(rank[c]);
        return t;
    }

    std::int64_t n() const { return static_cast<std::int64_t>(chars_.size()); }
    int sigma() const { return static_cast<int>(rank_to_byte_.size()); }

    // rank at 1-based position p
    int at(std::int64_t p) const { return chars_[static_cast<std::size_t>(p - 1)]; }

    const std::vector<int>& chars() const { return chars_; }

    unsigned char byte_of_rank(int r) const { return rank_to_byte_[static_cast<std::size_t>(r - 1)]; }

    std::string bytes() const {
        std::string out;
        out.reserve(chars_.size());
        for (int r : chars_) out.push_back(static_cast<char>(byte_of_rank(r)));
        return out;
    }

    std::string substr_bytes(std::int64_t i, std::int64_t j) const {
        std::string out;
        out.reserve(static_cast<std::size_t>(j - i + 1));
        for (std::int64_t p = i; p <= j; ++p) out.push_back(static_cast<char>(byte_of_rank(at(p))));
        return out;
    }

private:
    std::vector<int> chars_;
    std::vector<unsigned char> rank_to_byte_;
};

// A candidate or verified set of attractor positions, strictly increasing,
// tagged with the construction that produced it.
struct AttractorSet {
    std::vector<std::int64_t> positions;
    std::string provenance;

    AttractorSet() = default;
    AttractorSet(std::vector<std::int64_t> pos, std::string prov)
        : positions(std::move(pos)), provenance(std::move(prov)) {
        normalize();
    }

    std::int64_t gamma() const { return static_cast<std::int64_t>(positions.size()); }

    void normalize() {
        std::sort(positions.begin(), positions.end());
        positions.erase(std::unique(positions.begin(), positions.end()), positions.end());
    }

    void check_range(std::int64_t n) const {
        for (std::int64_t p : positions) {
            if (p < 1 || p > n)
                throw Error("position-out-of-range",
                            "attractor position " + std::to_string(p) + " outside [1.." +
                                std::to_string(n) + "]");
        }
    }

    nlohmann::json to_json(std::int64_t n) const {
        return nlohmann::json{{"n", n}, {"positions", positions}, {"provenance", provenance}};
    }

    static AttractorSet from_json(const nlohmann::json& j) {
        AttractorSet g;
        g.positions = j.at("positions").get<std::vector<std::int64_t>>();
        g.provenance = j.value("provenance", std::string("user"));
        g.normalize();
        return g;
    }
};

// One uncovered substring reported by a failed verification.
struct Witness {
    std::int64_t i = 0, j = 0;  // an occurrence of the uncovered substring
    std::string reason;
};

}  // namespace attractor

#endif
