#ifndef ATTRACTOR_TREEATTR_HPP
#define ATTRACTOR_TREEATTR_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "attractor/common.hpp"
#include "attractor/labeled_tree.hpp"
#include "attractor/suffix_index.hpp"
#include "attractor/text.hpp"

namespace attractor {

namespace detail {

// Compacted trie of the reversed root-to-node paths of a labeled tree. Label
// characters are read off ancestor chains rather than materialized; total
// label work is O(n^2).
class ReversedPrefixTrie {
public:
    explicit ReversedPrefixTrie(const LabeledTree& g) : g_(&g) {
        nodes_.push_back(TrieNode{0, -1, -1, {}, {}});
        for (int v = 1; v < g.num_nodes(); ++v) insert(v);
        build_edges();
    }

    struct TrieEdge {
        int child;      // trie node below the edge
        int depth;      // |st(e')| = parent depth + 1
    };

    std::int64_t edge_count() const { return static_cast<std::int64_t>(edges_.size()); }
    const std::vector<TrieEdge>& edges() const { return edges_; }

    // all G-nodes registered in the subtree below a trie node
    void subtree_regs(int trie_node, std::vector<int>& out) const {
        const auto& nd = nodes_[static_cast<std::size_t>(trie_node)];
        for (int v : nd.regs) out.push_back(v);
        for (const auto& [c, ch] : nd.children) subtree_regs(ch, out);
    }

private:
    struct TrieNode {
        int depth;
        int ref;     // G-node whose reversed path spells the root..here string
        int parent;
        std::map<unsigned char, int> children;
        std::vector<int> regs;
    };

    // char k (1-based) of the reversed root path of G-node v
    unsigned char char_at(int v, int k) const {
        int cur = v;
        for (int s = 1; s < k; ++s) cur = g_->parent(cur);
        return g_->edges()[static_cast<std::size_t>(g_->parent_edge(cur))].label;
    }

    void insert(int v) {
        int depth_v = g_->depth(v);
        int cur = 0;
        int matched = 0;
        while (true) {
            if (matched == depth_v) {
                nodes_[static_cast<std::size_t>(cur)].regs.push_back(v);
                return;
            }
            unsigned char c = char_at(v, matched + 1);
            auto it = nodes_[static_cast<std::size_t>(cur)].children.find(c);
            if (it == nodes_[static_cast<std::size_t>(cur)].children.end()) {
                int leaf = static_cast<int>(nodes_.size());
                nodes_.push_back(TrieNode{depth_v, v, cur, {}, {v}});
                nodes_[static_cast<std::size_t>(cur)].children[c] = leaf;
                return;
            }
            int child = it->second;
            int lim = std::min(nodes_[static_cast<std::size_t>(child)].depth, depth_v);
            int k = matched + 1;
            while (k <= lim &&
                   char_at(nodes_[static_cast<std::size_t>(child)].ref, k) == char_at(v, k))
                ++k;
            if (k > nodes_[static_cast<std::size_t>(child)].depth) {
                matched = nodes_[static_cast<std::size_t>(child)].depth;
                cur = child;
                continue;
            }
            // split the edge at string depth k-1
            int mid = static_cast<int>(nodes_.size());
            nodes_.push_back(TrieNode{k - 1, nodes_[static_cast<std::size_t>(child)].ref, cur, {}, {}});
            nodes_[static_cast<std::size_t>(cur)].children[c] = mid;
            nodes_[static_cast<std::size_t>(mid)]
                .children[char_at(nodes_[static_cast<std::size_t>(child)].ref, k)] = child;
            nodes_[static_cast<std::size_t>(child)].parent = mid;
            if (k - 1 == depth_v) {
                nodes_[static_cast<std::size_t>(mid)].regs.push_back(v);
            } else {
                int leaf = static_cast<int>(nodes_.size());
                nodes_.push_back(TrieNode{depth_v, v, mid, {}, {v}});
                nodes_[static_cast<std::size_t>(mid)].children[char_at(v, k)] = leaf;
            }
            return;
        }
    }

    void build_edges() {
        // DFS in label order for deterministic edge ids
        std::vector<int> stack{0};
        std::vector<int> order;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            order.push_back(u);
            const auto& ch = nodes_[static_cast<std::size_t>(u)].children;
            for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back(it->second);
        }
        for (int u : order)
            if (u != 0)
                edges_.push_back(TrieEdge{
                    u, nodes_[static_cast<std::size_t>(nodes_[static_cast<std::size_t>(u)].parent)].depth + 1});
    }

    const LabeledTree* g_;
    std::vector<TrieNode> nodes_;
    std::vector<TrieEdge> edges_;

    friend class TrieCover;
};

// Bipartite incidence between tree edges and trie edges: <e, e'> present iff
// an occurrence of reverse(st(e')) crosses e. Kept as one bitset per tree edge.
class TrieCover {
public:
    // generic trees
    TrieCover(const LabeledTree& g, const ReversedPrefixTrie& trie) {
        n_ = g.n();
        N_ = trie.edge_count();
        words_ = static_cast<std::size_t>((N_ + 63) / 64);
        cover_.assign(static_cast<std::size_t>(n_), std::vector<std::uint64_t>(words_, 0));
        info_.reserve(static_cast<std::size_t>(N_));
        std::vector<int> regs;
        for (std::int64_t id = 0; id < N_; ++id) {
            const auto& e = trie.edges()[static_cast<std::size_t>(id)];
            regs.clear();
            trie.subtree_regs(e.child, regs);
            info_.push_back({regs.empty() ? -1 : regs.front(), e.depth});
            for (int v : regs) {
                int cur = v;
                for (int s = 0; s < e.depth; ++s) {
                    set_bit(g.parent_edge(cur), id);
                    cur = g.parent(cur);
                }
            }
        }
    }

    // path graphs of a text, built from the suffix tree of the reversed text
    TrieCover(const Text& t, const SuffixIndex& rev_idx) {
        std::int64_t n = t.n();
        n_ = n;
        N_ = rev_idx.e();
        words_ = static_cast<std::size_t>((N_ + 63) / 64);
        cover_.assign(static_cast<std::size_t>(n_), std::vector<std::uint64_t>(words_, 0));
        info_.reserve(static_cast<std::size_t>(N_));
        const auto& sa = rev_idx.sa();
        std::vector<std::int64_t> ends;
        for (std::int64_t id = 0; id < N_; ++id) {
            const auto& e = rev_idx.st_edges()[static_cast<std::size_t>(id)];
            std::int64_t d = e.parent_depth + 1;
            ends.clear();
            for (std::int64_t q = e.lo; q <= e.hi; ++q) ends.push_back(n - sa[q] + 1);
            std::sort(ends.begin(), ends.end());
            info_.push_back({static_cast<int>(ends.front()), static_cast<int>(d)});
            // union of the windows [end-d+1, end] over tree-edge ids end-1 etc.
            std::int64_t cur_lo = -1, cur_hi = -2;
            auto flush = [&]() {
                for (std::int64_t p = cur_lo; p <= cur_hi; ++p) set_bit(static_cast<int>(p - 1), id);
            };
            for (std::int64_t end : ends) {
                std::int64_t lo = end - d + 1;
                if (lo <= cur_hi + 1) {
                    cur_hi = end;
                } else {
                    if (cur_lo >= 0) flush();
                    cur_lo = lo;
                    cur_hi = end;
                }
            }
            if (cur_lo >= 0) flush();
        }
    }

    std::int64_t tree_edge_count() const { return n_; }
    std::int64_t universe_size() const { return N_; }

    bool edge_covers(int tree_edge, std::int64_t trie_edge) const {
        return (cover_[static_cast<std::size_t>(tree_edge)][static_cast<std::size_t>(trie_edge >> 6)] >>
                (trie_edge & 63)) & 1;
    }

    // first trie edge not covered by the selection, or -1
    std::int64_t first_uncovered(const std::vector<int>& selection) const {
        std::vector<std::uint64_t> acc(words_, 0);
        for (int e : selection)
            for (std::size_t w = 0; w < words_; ++w) acc[w] |= cover_[static_cast<std::size_t>(e)][w];
        return first_missing(acc);
    }

    std::vector<int> greedy() const {
        std::vector<std::uint64_t> covered(words_, 0);
        std::int64_t remaining = N_;
        std::vector<int> chosen;
        while (remaining > 0) {
            int best = -1;
            std::int64_t best_deg = 0;
            for (std::int64_t e = 0; e < n_; ++e) {
                std::int64_t deg = 0;
                const auto& c = cover_[static_cast<std::size_t>(e)];
                for (std::size_t w = 0; w < words_; ++w)
                    deg += std::popcount(c[w] & ~covered[w]);
                if (deg > best_deg) {
                    best_deg = deg;
                    best = static_cast<int>(e);
                }
            }
            if (best < 0) throw Error("internal-invariant", "greedy ran out of useful edges");
            chosen.push_back(best);
            const auto& c = cover_[static_cast<std::size_t>(best)];
            for (std::size_t w = 0; w < words_; ++w) covered[w] |= c[w];
            remaining -= best_deg;
        }
        std::sort(chosen.begin(), chosen.end());
        return chosen;
    }

    // exact minimum via forced-edge closure, dominance pruning, and subset
    // enumeration by increasing size; lexicographic tie-break by edge id
    std::vector<int> brute_minimum() const {
        std::vector<std::uint64_t> covered(words_, 0);
        std::vector<int> forced;
        std::vector<bool> is_forced(static_cast<std::size_t>(n_), false);
        while (true) {
            int added = -1;
            for (std::int64_t u = 0; u < N_ && added < 0; ++u) {
                if ((covered[static_cast<std::size_t>(u >> 6)] >> (u & 63)) & 1) continue;
                int candidate = -1;
                int count = 0;
                for (std::int64_t e = 0; e < n_ && count < 2; ++e)
                    if (edge_covers(static_cast<int>(e), u)) {
                        ++count;
                        candidate = static_cast<int>(e);
                    }
                if (count == 0) throw Error("internal-invariant", "uncoverable trie edge");
                if (count == 1 && !is_forced[static_cast<std::size_t>(candidate)]) added = candidate;
            }
            if (added < 0) break;
            forced.push_back(added);
            is_forced[static_cast<std::size_t>(added)] = true;
            for (std::size_t w = 0; w < words_; ++w)
                covered[w] |= cover_[static_cast<std::size_t>(added)][w];
        }
        if (first_missing(covered) < 0) {
            std::sort(forced.begin(), forced.end());
            return forced;
        }
        // remaining candidates: useful, not dominated by a smaller-id candidate
        std::vector<int> cand;
        std::vector<std::vector<std::uint64_t>> rem;
        for (std::int64_t e = 0; e < n_; ++e) {
            if (is_forced[static_cast<std::size_t>(e)]) continue;
            std::vector<std::uint64_t> r(words_);
            bool useful = false;
            for (std::size_t w = 0; w < words_; ++w) {
                r[w] = cover_[static_cast<std::size_t>(e)][w] & ~covered[w];
                useful |= r[w] != 0;
            }
            if (!useful) continue;
            bool dominated = false;
            for (std::size_t k = 0; k < cand.size() && !dominated; ++k) {
                bool subset = true;
                for (std::size_t w = 0; w < words_ && subset; ++w)
                    subset = (r[w] & ~rem[k][w]) == 0;
                dominated = subset;
            }
            if (dominated) continue;
            cand.push_back(static_cast<int>(e));
            rem.push_back(std::move(r));
        }
        // exact branch and bound: branch on the first uncovered trie edge's
        // candidate coverers; keep the lexicographically smallest minimum
        int m = static_cast<int>(cand.size());
        std::int64_t max_deg = 1;
        for (const auto& r : rem) {
            std::int64_t deg = 0;
            for (std::uint64_t w : r) deg += std::popcount(w);
            max_deg = std::max(max_deg, deg);
        }
        std::vector<int> best;
        bool have_best = false;
        std::vector<int> chosen;
        std::int64_t budget = 80'000'000;  // search nodes before giving up
        auto lex_less = [](const std::vector<int>& a, const std::vector<int>& b) {
            if (a.size() != b.size()) return a.size() < b.size();
            return a < b;
        };
        auto recurse = [&](auto&& self, std::vector<std::uint64_t>& acc) -> void {
            if (--budget < 0) throw Error("input-too-large", "brute-force search space too large");
            std::int64_t missing = first_missing(acc);
            if (missing < 0) {
                std::vector<int> sol = chosen;
                std::sort(sol.begin(), sol.end());
                if (!have_best || lex_less(sol, best)) {
                    best = std::move(sol);
                    have_best = true;
                }
                return;
            }
            std::int64_t uncovered = 0;
            for (std::int64_t u = 0; u < N_; ++u)
                if (!((acc[static_cast<std::size_t>(u >> 6)] >> (u & 63)) & 1)) ++uncovered;
            std::int64_t lb = (uncovered + max_deg - 1) / max_deg;
            if (have_best &&
                static_cast<std::int64_t>(chosen.size()) + lb > static_cast<std::int64_t>(best.size()))
                return;
            for (int x = 0; x < m; ++x) {
                if ((rem[static_cast<std::size_t>(x)][static_cast<std::size_t>(missing >> 6)] >>
                     (missing & 63) & 1) == 0)
                    continue;
                std::vector<std::uint64_t> saved = acc;
                for (std::size_t w = 0; w < words_; ++w) acc[w] |= rem[static_cast<std::size_t>(x)][w];
                chosen.push_back(cand[static_cast<std::size_t>(x)]);
                self(self, acc);
                chosen.pop_back();
                acc = saved;
            }
        };
        std::vector<std::uint64_t> acc = covered;
        recurse(recurse, acc);
        if (!have_best) throw Error("internal-invariant", "no covering edge subset exists");
        std::vector<int> out = forced;
        out.insert(out.end(), best.begin(), best.end());
        std::sort(out.begin(), out.end());
        return out;
    }

    struct Info {
        int ref;    // reference G-node / text end position
        int depth;  // |st(e')|
    };
    const Info& info(std::int64_t trie_edge) const { return info_[static_cast<std::size_t>(trie_edge)]; }

private:
    void set_bit(int tree_edge, std::int64_t trie_edge) {
        cover_[static_cast<std::size_t>(tree_edge)][static_cast<std::size_t>(trie_edge >> 6)] |=
            std::uint64_t{1} << (trie_edge & 63);
    }

    std::int64_t first_missing(const std::vector<std::uint64_t>& acc) const {
        for (std::int64_t u = 0; u < N_; ++u)
            if (!((acc[static_cast<std::size_t>(u >> 6)] >> (u & 63)) & 1)) return u;
        return -1;
    }

    std::int64_t n_ = 0, N_ = 0;
    std::size_t words_ = 0;
    std::vector<std::vector<std::uint64_t>> cover_;
    std::vector<Info> info_;
};

inline std::string witness_path_label(const LabeledTree& g, int ref, int depth) {
    std::string chars;
    int cur = ref;
    for (int s = 0; s < depth; ++s) {
        chars.push_back(static_cast<char>(g.edges()[static_cast<std::size_t>(g.parent_edge(cur))].label));
        cur = g.parent(cur);
    }
    std::reverse(chars.begin(), chars.end());
    return chars;
}

}  // namespace detail

struct PathVerifyResult {
    bool valid = false;
    std::optional<std::string> witness_path;
};

inline PathVerifyResult verify_path_attractor(const LabeledTree& g, const PathAttractor& a) {
    for (int e : a.edge_ids)
        if (e < 0 || e >= g.n())
            throw Error("edge-not-in-tree", "edge id " + std::to_string(e) + " is not a tree edge");
    detail::ReversedPrefixTrie trie(g);
    detail::TrieCover cover(g, trie);
    std::int64_t missing = cover.first_uncovered(a.edge_ids);
    if (missing < 0) return {true, std::nullopt};
    const auto& info = cover.info(missing);
    return {false, detail::witness_path_label(g, info.ref, info.depth)};
}

inline PathAttractor greedy_path_attractor(const LabeledTree& g) {
    if (g.n() < 1) throw Error("tree-invalid", "the tree has no edges");
    detail::ReversedPrefixTrie trie(g);
    detail::TrieCover cover(g, trie);
    return PathAttractor{cover.greedy()};
}

inline PathAttractor bruteforce_path_attractor(const LabeledTree& g, int limit = 16) {
    if (g.n() > limit)
        throw Error("input-too-large",
                    "brute force accepts trees with at most " + std::to_string(limit) + " edges");
    detail::ReversedPrefixTrie trie(g);
    detail::TrieCover cover(g, trie);
    return PathAttractor{cover.brute_minimum()};
}

// Degree-greedy over the path graph of the text, using the suffix tree of the
// reversed text as the trie; identical selections to greedy_path_attractor.
inline AttractorSet greedy_string_attractor(const Text& t) {
    std::string rev = t.bytes();
    std::reverse(rev.begin(), rev.end());
    Text rt = Text::from_bytes(rev);
    SuffixIndex rev_idx(rt);
    detail::TrieCover cover(t, rev_idx);
    std::vector<std::int64_t> pos;
    for (int e : cover.greedy()) pos.push_back(e + 1);
    return AttractorSet(std::move(pos), "greedy");
}

// Number of trie edges backing the greedy reduction, for the ln-approximation bound.
inline std::int64_t trie_edge_count(const LabeledTree& g) {
    return detail::ReversedPrefixTrie(g).edge_count();
}

}  // namespace attractor

#endif
