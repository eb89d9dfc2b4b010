#ifndef ATTRACTOR_VERIFY_HPP
#define ATTRACTOR_VERIFY_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "attractor/common.hpp"
#include "attractor/suffix_index.hpp"
#include "attractor/text.hpp"

namespace attractor {

struct VerifyResult {
    bool valid = false;
    std::optional<Witness> witness;
};

// Definition check reduced to suffix-tree edges: the set verifies iff for every
// edge e' some occurrence of st(e') (root through the first label character)
// crosses a position of the set. Every other substring extends some st(e')
// along an edge, and every occurrence of st(e') carries the same extension.
inline VerifyResult verify_attractor(const Text& t, const SuffixIndex& idx,
                                     const AttractorSet& g) {
    g.check_range(t.n());
    const auto& pos = g.positions;
    if (pos.empty()) {
        VerifyResult r;
        r.valid = false;
        if (idx.e() > 0) {
            const auto& e0 = idx.st_edges().front();
            r.witness = Witness{e0.min_start, e0.min_start + e0.parent_depth,
                                "empty candidate set covers nothing"};
        }
        return r;
    }
    const auto& sa = idx.sa();
    for (const auto& e : idx.st_edges()) {
        std::int64_t d = e.parent_depth;  // st(e') spans [start, start+d]
        bool covered = false;
        for (std::int64_t q = e.lo; q <= e.hi && !covered; ++q) {
            std::int64_t start = sa[q];
            auto it = std::lower_bound(pos.begin(), pos.end(), start);
            if (it != pos.end() && *it <= start + d) covered = true;
        }
        if (!covered) {
            VerifyResult r;
            r.valid = false;
            r.witness = Witness{e.min_start, e.min_start + d,
                                "no occurrence of this substring crosses the set"};
            return r;
        }
    }
    return VerifyResult{true, std::nullopt};
}

struct CrossingOccurrence {
    std::int64_t i, j;          // the occurrence interval
    std::int64_t crossing_pos;  // smallest attractor position inside it
};

// Leftmost occurrence of T[i..j] containing an attractor position, or nullopt.
inline std::optional<CrossingOccurrence> find_occurrence_crossing(const Text& t,
                                                                  const SuffixIndex& idx,
                                                                  std::int64_t i, std::int64_t j,
                                                                  const AttractorSet& g) {
    if (i < 1 || j > t.n() || i > j)
        throw Error("interval-out-of-range", "interval [" + std::to_string(i) + ".." +
                                                 std::to_string(j) + "] outside the text");
    std::int64_t len = j - i + 1;
    auto [lo, hi] = idx.pattern_range(t, i, j);
    const auto& pos = g.positions;
    std::int64_t best = -1;
    for (std::int64_t q = lo; q <= hi; ++q) {
        std::int64_t start = idx.sa()[q];
        if (start + len - 1 > t.n()) continue;
        if (best != -1 && start >= best) continue;
        auto it = std::lower_bound(pos.begin(), pos.end(), start);
        if (it != pos.end() && *it <= start + len - 1) best = start;
    }
    if (best == -1) return std::nullopt;
    auto it = std::lower_bound(pos.begin(), pos.end(), best);
    return CrossingOccurrence{best, best + len - 1, *it};
}

// Exact smallest attractor by subset enumeration, increasing cardinality,
// lexicographically smallest position sequence among minima.
inline AttractorSet smallest_attractor_bruteforce(const Text& t, const SuffixIndex& idx,
                                                  int limit = 18) {
    std::int64_t n = t.n();
    if (n > limit || n > 63)
        throw Error("input-too-large",
                    "brute force accepts n <= " + std::to_string(std::min<std::int64_t>(limit, 63)));
    // positions p coverable per edge, as bitmasks over [1..n]
    std::vector<std::uint64_t> cover;
    cover.reserve(idx.st_edges().size());
    const auto& sa = idx.sa();
    for (const auto& e : idx.st_edges()) {
        std::uint64_t mask = 0;
        std::int64_t d = e.parent_depth;
        for (std::int64_t q = e.lo; q <= e.hi; ++q) {
            std::int64_t start = sa[q];
            for (std::int64_t p = start; p <= start + d; ++p) mask |= 1ull << (p - 1);
        }
        cover.push_back(mask);
    }
    auto valid = [&](std::uint64_t cand) {
        for (std::uint64_t m : cover)
            if ((m & cand) == 0) return false;
        return true;
    };
    int start_k = std::max(1, t.sigma());  // any attractor satisfies gamma >= sigma
    for (int k = start_k; k <= n; ++k) {
        std::vector<std::int64_t> c(static_cast<std::size_t>(k));
        for (int x = 0; x < k; ++x) c[static_cast<std::size_t>(x)] = x + 1;
        while (true) {
            std::uint64_t cand = 0;
            for (std::int64_t p : c) cand |= 1ull << (p - 1);
            if (valid(cand)) return AttractorSet(c, "brute");
            // next combination in lexicographic order
            int x = k - 1;
            while (x >= 0 && c[static_cast<std::size_t>(x)] == n - (k - 1 - x)) --x;
            if (x < 0) break;
            ++c[static_cast<std::size_t>(x)];
            for (int y = x + 1; y < k; ++y)
                c[static_cast<std::size_t>(y)] = c[static_cast<std::size_t>(y - 1)] + 1;
        }
    }
    // the full position set always verifies, so this is unreachable
    std::vector<std::int64_t> all(static_cast<std::size_t>(n));
    for (std::int64_t p = 1; p <= n; ++p) all[static_cast<std::size_t>(p - 1)] = p;
    return AttractorSet(all, "brute");
}

}  // namespace attractor

#endif
