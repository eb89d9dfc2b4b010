#ifndef ATTRACTOR_LABELED_TREE_HPP
#define ATTRACTOR_LABELED_TREE_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "attractor/common.hpp"
#include "attractor/text.hpp"

namespace attractor {

// Edge-labeled rooted tree; paths are downward label sequences. Edge ids are
// assigned in insertion order and drive every deterministic tie-break.
class LabeledTree {
public:
    struct Edge {
        int parent, child;
        unsigned char label;
    };

    static LabeledTree single_root() {
        LabeledTree t;
        t.parent_.push_back(-1);
        t.parent_edge_.push_back(-1);
        t.depth_.push_back(0);
        t.children_.emplace_back();
        return t;
    }

    int add_child(int parent, unsigned char label) {
        int node = static_cast<int>(parent_.size());
        parent_.push_back(parent);
        depth_.push_back(depth_[static_cast<std::size_t>(parent)] + 1);
        children_.emplace_back();
        edges_.push_back(Edge{parent, node, label});
        parent_edge_.push_back(static_cast<int>(edges_.size()) - 1);
        children_[static_cast<std::size_t>(parent)].push_back(static_cast<int>(edges_.size()) - 1);
        return node;
    }

    // path graph of a text: edge i-1 carries T[i]
    static LabeledTree path_of(const Text& t) {
        LabeledTree g = single_root();
        int cur = 0;
        for (std::int64_t p = 1; p <= t.n(); ++p)
            cur = g.add_child(cur, t.byte_of_rank(t.at(p)));
        return g;
    }

    int root() const { return 0; }
    std::int64_t n() const { return static_cast<std::int64_t>(edges_.size()); }
    std::int64_t num_nodes() const { return static_cast<std::int64_t>(parent_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }
    int parent(int v) const { return parent_[static_cast<std::size_t>(v)]; }
    int parent_edge(int v) const { return parent_edge_[static_cast<std::size_t>(v)]; }
    int depth(int v) const { return depth_[static_cast<std::size_t>(v)]; }
    const std::vector<int>& child_edges(int v) const { return children_[static_cast<std::size_t>(v)]; }

    nlohmann::json to_json() const {
        nlohmann::json es = nlohmann::json::array();
        for (const auto& e : edges_)
            es.push_back({{"parent", e.parent},
                          {"child", e.child},
                          {"label", byte_to_json_char(e.label)}});
        return nlohmann::json{{"root", 0}, {"edges", es}};
    }

    static LabeledTree from_json(const nlohmann::json& j) {
        // external node ids are arbitrary; remap to dense ids, root first
        std::int64_t ext_root = j.at("root").get<std::int64_t>();
        LabeledTree t = single_root();
        std::map<std::int64_t, int> id;
        id[ext_root] = 0;
        const auto& es = j.at("edges");
        std::vector<bool> used(es.size(), false);
        std::size_t remaining = es.size();
        while (remaining > 0) {
            bool progress = false;
            for (std::size_t k = 0; k < es.size(); ++k) {
                if (used[k]) continue;
                std::int64_t p = es[k].at("parent").get<std::int64_t>();
                auto it = id.find(p);
                if (it == id.end()) continue;
                unsigned char lab;
                if (!json_char_to_byte(es[k].at("label").get<std::string>(), lab))
                    throw Error("tree-invalid", "labels must be single characters");
                std::int64_t c = es[k].at("child").get<std::int64_t>();
                if (id.count(c)) throw Error("tree-invalid", "node has two parents");
                id[c] = t.add_child(it->second, lab);
                used[k] = true;
                --remaining;
                progress = true;
            }
            if (!progress) throw Error("tree-invalid", "edges do not form a tree rooted at root");
        }
        return t;
    }

private:
    std::vector<int> parent_, parent_edge_, depth_;
    std::vector<std::vector<int>> children_;
    std::vector<Edge> edges_;
};

struct PathAttractor {
    std::vector<int> edge_ids;  // sorted
    std::int64_t k() const { return static_cast<std::int64_t>(edge_ids.size()); }
};

struct SetCoverInstance {
    std::int64_t universe = 0;                   // elements 0..universe-1
    std::vector<std::vector<std::int64_t>> sets;

    void validate() const {
        if (universe < 1) throw Error("empty-universe", "the universe must be nonempty");
        std::vector<bool> hit(static_cast<std::size_t>(universe), false);
        for (const auto& s : sets)
            for (std::int64_t u : s) {
                if (u < 0 || u >= universe)
                    throw Error("setcover-invalid", "element outside the universe");
                hit[static_cast<std::size_t>(u)] = true;
            }
        for (bool h : hit)
            if (!h) throw Error("setcover-invalid", "the sets do not cover the universe");
    }

    nlohmann::json to_json() const { return {{"universe", universe}, {"sets", sets}}; }

    static SetCoverInstance from_json(const nlohmann::json& j) {
        SetCoverInstance sc;
        sc.universe = j.at("universe").get<std::int64_t>();
        sc.sets = j.at("sets").get<std::vector<std::vector<std::int64_t>>>();
        return sc;
    }
};

// The set-cover -> path-attractor reduction: pad the universe to a power of
// two with one extra set, then hang per-set twin binary tries under 0/1 edges.
// Alphabet is {0, 1, s_1..s_t}; set markers use bytes 'A'+i.
inline std::pair<LabeledTree, std::int64_t> tree_from_setcover(const SetCoverInstance& input) {
    input.validate();
    SetCoverInstance sc = input;
    int m = ceil_log2(sc.universe);  // universe becomes 2^m
    std::int64_t padded = std::int64_t{1} << m;
    if (padded > sc.universe) {
        std::vector<std::int64_t> extra;
        for (std::int64_t u = sc.universe; u < padded; ++u) extra.push_back(u);
        sc.sets.push_back(std::move(extra));
        sc.universe = padded;
    }
    std::int64_t t = static_cast<std::int64_t>(sc.sets.size());
    LabeledTree tree = LabeledTree::single_root();
    for (std::int64_t i = 0; i < t; ++i) {
        int ci = tree.add_child(tree.root(), static_cast<unsigned char>('A' + i));
        for (unsigned char bit : {static_cast<unsigned char>('0'), static_cast<unsigned char>('1')}) {
            int cx = tree.add_child(ci, bit);
            // binary trie of the m-bit representations, most significant first
            std::map<std::pair<int, std::string>, int> trie;
            std::vector<std::int64_t> elems = sc.sets[static_cast<std::size_t>(i)];
            std::sort(elems.begin(), elems.end());
            for (std::int64_t u : elems) {
                int cur = cx;
                std::string prefix;
                for (int b = m - 1; b >= 0; --b) {
                    char c = ((u >> b) & 1) ? '1' : '0';
                    prefix.push_back(c);
                    auto key = std::make_pair(cx, prefix);
                    auto it = trie.find(key);
                    if (it == trie.end()) {
                        cur = tree.add_child(cur, static_cast<unsigned char>(c));
                        trie[key] = cur;
                    } else {
                        cur = it->second;
                    }
                }
            }
        }
    }
    return {tree, t};
}

}  // namespace attractor

#endif
