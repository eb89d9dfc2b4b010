#ifndef ATTRACTOR_SUFFIX_INDEX_HPP
#define ATTRACTOR_SUFFIX_INDEX_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "attractor/common.hpp"
#include "attractor/text.hpp"

namespace attractor {

// Range-minimum over a static array, sparse table.
template <typename T>
class RangeMin {
public:
    RangeMin() = default;

    explicit RangeMin(const std::vector<T>& v) {
        std::size_t n = v.size();
        if (n == 0) return;
        int levels = 1;
        while ((std::size_t{1} << levels) <= n) ++levels;
        table_.assign(levels, v);
        for (int k = 1; k < levels; ++k) {
            std::size_t half = std::size_t{1} << (k - 1);
            for (std::size_t i = 0; i + (std::size_t{1} << k) <= n; ++i)
                table_[k][i] = std::min(table_[k - 1][i], table_[k - 1][i + half]);
        }
    }

    // min over v[l..r], inclusive, 0-based
    T query(std::size_t l, std::size_t r) const {
        int k = floor_log2(static_cast<std::int64_t>(r - l + 1));
        return std::min(table_[k][l], table_[k][r + 1 - (std::size_t{1} << k)]);
    }

private:
    std::vector<std::vector<T>> table_;
};

// Suffix structures over T plus a sentinel ranked below every symbol.
// The suffix tree is derived from the SA/LCP pair; edges whose label begins
// with the sentinel are removed and trailing sentinels are trimmed from leaf
// labels, so the remaining automaton recognizes exactly the substrings of T.
class SuffixIndex {
public:
    struct Edge {
        std::int64_t parent_depth;  // string depth of the edge's origin node
        std::int64_t label_pos;     // 1-based position of the first label character in T
        std::int64_t label_len;     // label length after sentinel trimming
        std::int64_t lo, hi;        // SA range of the subtree below the edge (occurrences of st(e'))
        std::int64_t min_start;     // leftmost occurrence start of st(e')
    };

    explicit SuffixIndex(const Text& t) : n_(t.n()) {
        build_sa(t);
        build_lcp(t);
        sa_min_ = RangeMin<std::int64_t>(sa_);
        lcp_min_ = RangeMin<std::int64_t>(lcp_);
        build_tree();
    }

    std::int64_t n() const { return n_; }

    // sa over T·sentinel: n+1 entries, 1-based suffix start positions (n+1 = sentinel suffix)
    const std::vector<std::int64_t>& sa() const { return sa_; }
    const std::vector<std::int64_t>& isa() const { return isa_; }
    // lcp[q] = longest common prefix of suffixes sa[q-1], sa[q]; lcp[0] = 0
    const std::vector<std::int64_t>& lcp() const { return lcp_; }

    const std::vector<Edge>& st_edges() const { return edges_; }
    std::int64_t e() const { return static_cast<std::int64_t>(edges_.size()); }

    std::int64_t count_distinct_substrings() const {
        std::int64_t total = n_ * (n_ + 1) / 2;
        for (std::size_t q = 1; q < lcp_.size(); ++q) total -= lcp_[q];
        return total;
    }

    std::int64_t longest_repeated_len() const {
        std::int64_t m = 0;
        for (std::size_t q = 1; q < lcp_.size(); ++q) m = std::max(m, lcp_[q]);
        return m;
    }

    // SA range [lo..hi] of suffixes having T[i..j] as a prefix; empty -> lo > hi.
    // The pattern is given as an interval of the indexed text itself.
    std::pair<std::int64_t, std::int64_t> pattern_range(const Text& t, std::int64_t i,
                                                        std::int64_t j) const {
        std::int64_t len = j - i + 1;
        auto cmp_lt = [&](std::int64_t suffix, bool upper) {
            // compares suffix (start position) against the pattern
            for (std::int64_t k = 0; k < len; ++k) {
                std::int64_t p = suffix + k;
                int sc = p <= n_ ? t.at(p) : 0;
                int pc = t.at(i + k);
                if (sc != pc) return sc < pc;
            }
            return upper;  // equal prefixes: suffix >= pattern; for upper bound treat as less
        };
        std::int64_t lo = 0, hi = static_cast<std::int64_t>(sa_.size());
        // lower bound
        {
            std::int64_t a = lo, b = hi;
            while (a < b) {
                std::int64_t m = (a + b) / 2;
                if (cmp_lt(sa_[m], false)) a = m + 1; else b = m;
            }
            lo = a;
        }
        {
            std::int64_t a = lo, b = hi;
            while (a < b) {
                std::int64_t m = (a + b) / 2;
                if (cmp_lt(sa_[m], true)) a = m + 1; else b = m;
            }
            hi = a;
        }
        return {lo, hi - 1};
    }

    std::int64_t min_start_in_range(std::int64_t lo, std::int64_t hi) const {
        return sa_min_.query(static_cast<std::size_t>(lo), static_cast<std::size_t>(hi));
    }

private:
    void build_sa(const Text& t) {
        std::int64_t m = n_ + 1;  // text + sentinel
        std::vector<std::int64_t> rank(m);
        for (std::int64_t i = 0; i < n_; ++i) rank[i] = t.chars()[static_cast<std::size_t>(i)];
        rank[n_] = 0;
        std::vector<std::int64_t> order(m);
        std::iota(order.begin(), order.end(), 0);
        std::vector<std::int64_t> next(m);
        for (std::int64_t k = 1;; k <<= 1) {
            auto key = [&](std::int64_t i) {
                return std::pair<std::int64_t, std::int64_t>(rank[i], i + k < m ? rank[i + k] : -1);
            };
            std::sort(order.begin(), order.end(),
                      [&](std::int64_t a, std::int64_t b) { return key(a) < key(b); });
            next[order[0]] = 0;
            for (std::int64_t q = 1; q < m; ++q)
                next[order[q]] = next[order[q - 1]] + (key(order[q - 1]) < key(order[q]) ? 1 : 0);
            rank.swap(next);
            if (rank[order[m - 1]] == m - 1) break;
        }
        sa_.resize(m);
        isa_.assign(m + 1, 0);
        for (std::int64_t q = 0; q < m; ++q) {
            sa_[q] = order[q] + 1;  // 1-based suffix starts
            isa_[sa_[q]] = q;
        }
    }

    void build_lcp(const Text& t) {
        std::int64_t m = n_ + 1;
        auto ch = [&](std::int64_t p) { return p <= n_ ? t.at(p) : 0; };
        lcp_.assign(m, 0);
        std::int64_t k = 0;
        for (std::int64_t i = 1; i <= m; ++i) {  // Kasai over suffix starts
            if (k > 0) --k;
            std::int64_t q = isa_[i];
            if (q == 0) { k = 0; continue; }
            std::int64_t j = sa_[q - 1];
            while (i + k <= m && j + k <= m && ch(i + k) == ch(j + k)) ++k;
            lcp_[q] = k;
        }
    }

    // Recursive split of the SA into the lcp-interval tree; emits edges in
    // lexicographic DFS order.
    void build_tree() {
        std::int64_t m = n_ + 1;
        build_node(0, m - 1, 0);
    }

    // Suffixes sa[lo..hi] share exactly a common prefix of length depth.
    void build_node(std::int64_t lo, std::int64_t hi, std::int64_t depth) {
        // group boundaries: q in (lo..hi] with lcp[q] == depth
        std::vector<std::int64_t> bounds;
        collect_min_positions(lo + 1, hi, depth, bounds);
        std::vector<std::int64_t> starts{lo};
        for (std::int64_t b : bounds) starts.push_back(b);
        starts.push_back(hi + 1);
        for (std::size_t g = 0; g + 1 < starts.size(); ++g) {
            std::int64_t gl = starts[g], gr = starts[g + 1] - 1;
            std::int64_t label_pos = sa_[gl] + depth;
            std::int64_t child_depth;
            if (gl == gr) {
                child_depth = (n_ + 1) - sa_[gl] + 1;  // full suffix incl. sentinel
            } else {
                child_depth = lcp_min_.query(static_cast<std::size_t>(gl + 1),
                                             static_cast<std::size_t>(gr));
            }
            std::int64_t label_len = child_depth - depth;
            if (label_pos == n_ + 1) continue;  // label begins with the sentinel: removed
            if (label_pos + label_len - 1 == n_ + 1) --label_len;  // trim trailing sentinel
            Edge e;
            e.parent_depth = depth;
            e.label_pos = label_pos;
            e.label_len = label_len;
            e.lo = gl;
            e.hi = gr;
            e.min_start = sa_min_.query(static_cast<std::size_t>(gl), static_cast<std::size_t>(gr));
            edges_.push_back(e);
            if (gl < gr) build_node(gl, gr, child_depth);
        }
    }

    void collect_min_positions(std::int64_t lo, std::int64_t hi, std::int64_t value,
                               std::vector<std::int64_t>& out) const {
        if (lo > hi) return;
        if (lcp_min_.query(static_cast<std::size_t>(lo), static_cast<std::size_t>(hi)) > value)
            return;
        if (lo == hi) { out.push_back(lo); return; }
        std::int64_t mid = (lo + hi) / 2;
        collect_min_positions(lo, mid, value, out);
        collect_min_positions(mid + 1, hi, value, out);
    }

    std::int64_t n_;
    std::vector<std::int64_t> sa_, isa_, lcp_;
    std::vector<Edge> edges_;
    RangeMin<std::int64_t> sa_min_, lcp_min_;
};

inline std::int64_t count_distinct_substrings(const SuffixIndex& idx) {
    return idx.count_distinct_substrings();
}

inline std::int64_t longest_repeated_len(const SuffixIndex& idx) {
    return idx.longest_repeated_len();
}

}  // namespace attractor

#endif
