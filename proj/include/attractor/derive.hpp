#ifndef ATTRACTOR_DERIVE_HPP
#define ATTRACTOR_DERIVE_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <vector>

#include "attractor/common.hpp"
#include "attractor/grammar.hpp"
#include "attractor/macro.hpp"
#include "attractor/suffix_index.hpp"
#include "attractor/text.hpp"
#include "attractor/verify.hpp"

namespace attractor {

// A verified attractor together with up to gamma equally spaced extra
// positions, so consecutive elements (with virtual fences 0 and n+1) are at
// most ceil(n/gamma) apart.
struct PaddedAttractor {
    AttractorSet base;
    AttractorSet padded;
    std::int64_t max_gap = 0;
};

inline std::int64_t max_gap_of(const std::vector<std::int64_t>& pos, std::int64_t n) {
    std::int64_t prev = 0, gap = 0;
    for (std::int64_t p : pos) {
        gap = std::max(gap, p - prev);
        prev = p;
    }
    return std::max(gap, n + 1 - prev);
}

inline PaddedAttractor pad_attractor(const Text& t, const SuffixIndex& idx, const AttractorSet& g) {
    if (!verify_attractor(t, idx, g).valid)
        throw Error("invalid-attractor", "padding requires a verifying attractor");
    std::int64_t n = t.n();
    std::int64_t s = ceil_div(n, g.gamma());
    std::vector<std::int64_t> pos = g.positions;
    for (std::int64_t k = 1; k <= g.gamma(); ++k) pos.push_back(std::min(k * s, n));
    PaddedAttractor out;
    out.base = g;
    out.padded = AttractorSet(std::move(pos), "padded");
    out.max_gap = max_gap_of(out.padded.positions, n);
    return out;
}

// The bidirectional parse of a padded attractor, with per-gap bookkeeping kept
// for the size/height assertions and for the SLP construction.
struct DerivedParse {
    struct Phrase {
        std::int64_t i, j;        // destination interval
        std::int64_t src = 0;     // source start, copies only
        bool assign = false;
        unsigned char ch = 0;
    };
    MacroScheme scheme;
    std::vector<Phrase> phrases;                        // in text order
    std::vector<std::pair<std::int64_t, std::int64_t>> gap_bounds;  // fences included
    std::vector<std::int64_t> gap_copy_counts;
    std::int64_t max_gap = 0;
};

namespace detail {

// Hole pieces between the exponential runs: every piece is either a power of
// two no longer than its distance to the nearer gap boundary, or at most half
// that distance, so copy sources always land in strictly shorter phrases.
inline void hole_pieces(std::int64_t x, std::int64_t y, std::int64_t s,
                        std::vector<std::pair<std::int64_t, std::int64_t>>& out) {
    std::int64_t cur = x;
    std::int64_t remaining = y - x + 1;
    while (remaining > 0) {
        std::int64_t ell;
        if (remaining >= s) ell = s;
        else if ((remaining & (remaining - 1)) == 0 || remaining <= (s + 1) / 2) ell = remaining;
        else ell = floor_pow2(remaining);
        out.emplace_back(cur, cur + ell - 1);
        cur += ell;
        remaining -= ell;
    }
}

}  // namespace detail

inline DerivedParse parse_from_attractor(const Text& t, const SuffixIndex& idx,
                                         const PaddedAttractor& pa) {
    const auto& A = pa.padded.positions;
    std::int64_t n = t.n();
    DerivedParse out;
    out.scheme.n = n;
    out.max_gap = pa.max_gap;
    for (std::int64_t p : A) {
        unsigned char c = t.byte_of_rank(t.at(p));
        out.scheme.dirs.push_back(MacroScheme::AssignDir{p, c});
        out.phrases.push_back(DerivedParse::Phrase{p, p, 0, true, c});
    }
    std::vector<std::int64_t> fences;
    fences.push_back(0);
    fences.insert(fences.end(), A.begin(), A.end());
    fences.push_back(n + 1);
    for (std::size_t k = 0; k + 1 < fences.size(); ++k) {
        std::int64_t g1 = fences[k], g2 = fences[k + 1];
        out.gap_bounds.emplace_back(g1, g2);
        if (g2 - g1 <= 1) { out.gap_copy_counts.push_back(0); continue; }
        std::int64_t m = (g1 + g2) / 2;
        std::vector<std::pair<std::int64_t, std::int64_t>> copies;
        // rightward run from g1, lengths 1,2,4,... stopping before covering m
        std::int64_t x = g1 + 1, len = 1;
        while (x + len - 1 < m) {
            copies.emplace_back(x, x + len - 1);
            x += len;
            len <<= 1;
        }
        // leftward run from g2, symmetric
        std::int64_t y = g2 - 1;
        len = 1;
        std::vector<std::pair<std::int64_t, std::int64_t>> left;
        while (y - len + 1 > m) {
            left.emplace_back(y - len + 1, y);
            y -= len;
            len <<= 1;
        }
        std::int64_t run_r = x - g1, run_l = g2 - y;  // first unused lengths, powers of two
        detail::hole_pieces(x, y, std::min(run_r, run_l), copies);
        for (auto it = left.rbegin(); it != left.rend(); ++it) copies.push_back(*it);
        std::sort(copies.begin(), copies.end());
        for (auto [a, b] : copies) {
            auto occ = find_occurrence_crossing(t, idx, a, b, pa.padded);
            if (!occ)
                throw Error("internal-invariant", "verified attractor yielded no crossing occurrence");
            if (occ->i == a && occ->j == b)
                throw Error("internal-invariant", "phrase cannot be its own source");
            out.scheme.dirs.push_back(MacroScheme::CopyDir{a, b, occ->i, occ->j});
            out.phrases.push_back(DerivedParse::Phrase{a, b, occ->i, false, 0});
        }
        out.gap_copy_counts.push_back(static_cast<std::int64_t>(copies.size()));
    }
    std::sort(out.phrases.begin(), out.phrases.end(),
              [](const auto& a, const auto& b) { return a.i < b.i; });
    return out;
}

// Straight-line program produced from the parse by processing phrases in order
// of increasing length over a 2-3 level structure. Interior blocks of each
// phrase's source are reused; fresh nonterminals appear only at block borders
// and when adjacent processed regions are re-joined.
struct Slp {
    RlGrammar grammar;
    std::vector<int> rule_level;                // per rule of grammar
    std::int64_t max_gap = 0;
    std::vector<std::int64_t> per_phrase_new;   // fresh rules charged to each copied phrase
};

namespace detail {

class SlpBuilder {
public:
    explicit SlpBuilder(const Text& t) : text_(t) {
        term_of_rank_.assign(static_cast<std::size_t>(t.sigma()) + 1, -1);
    }

    Slp run(const DerivedParse& parse) {
        std::int64_t n = text_.n();
        // base pass: maximal runs of length-1 phrases become 2-3 trees
        std::vector<DerivedParse::Phrase> longer;
        std::int64_t run_start = -1, run_end = -2;
        auto flush_run = [&]() {
            if (run_start < 0) return;
            int root = terminal(text_.at(run_start));
            for (std::int64_t p = run_start + 1; p <= run_end; ++p)
                root = join(root, terminal(text_.at(p)));
            regions_[run_start] = Region{run_start, run_end, root};
            run_start = -1;
        };
        for (const auto& ph : parse.phrases) {
            if (ph.j - ph.i == 0) {
                if (ph.i == run_end + 1 && run_start >= 0) { run_end = ph.i; continue; }
                flush_run();
                run_start = run_end = ph.i;
            } else {
                longer.push_back(ph);
            }
        }
        flush_run();
        std::stable_sort(longer.begin(), longer.end(), [](const auto& a, const auto& b) {
            return std::make_pair(a.j - a.i, a.i) < std::make_pair(b.j - b.i, b.i);
        });
        Slp out;
        out.max_gap = parse.max_gap;
        for (const auto& ph : longer) {
            fresh_rules_ = 0;
            process_phrase(ph);
            out.per_phrase_new.push_back(fresh_rules_);
        }
        auto it = regions_.begin();
        if (it == regions_.end() || it->second.start != 1 || it->second.end != n ||
            std::next(it) != regions_.end())
            throw Error("internal-invariant", "phrase processing left a fragmented region map");
        serialize(it->second.root, out);
        return out;
    }

private:
    struct Node {
        std::array<int, 3> ch{-1, -1, -1};
        int nch = 0;  // 0 marks a terminal
        int level = 0;
        std::int64_t span = 1;
        bool shared = false;
        int term = 0;
    };
    struct Region {
        std::int64_t start, end;
        int root;
    };

    int terminal(int rank) {
        int& id = term_of_rank_[static_cast<std::size_t>(rank)];
        if (id < 0) {
            id = static_cast<int>(nodes_.size());
            Node nd;
            nd.term = rank;
            nd.shared = true;
            nodes_.push_back(nd);
        }
        return id;
    }

    int fresh(int a, int b, int c = -1) {
        Node nd;
        nd.ch = {a, b, c};
        nd.nch = c < 0 ? 2 : 3;
        nd.level = nodes_[static_cast<std::size_t>(a)].level + 1;
        nd.span = nodes_[static_cast<std::size_t>(a)].span + nodes_[static_cast<std::size_t>(b)].span +
                  (c < 0 ? 0 : nodes_[static_cast<std::size_t>(c)].span);
        nodes_.push_back(nd);
        fresh_rules_ += nd.nch - 1;
        return static_cast<int>(nodes_.size()) - 1;
    }

    std::int64_t span(int x) const { return nodes_[static_cast<std::size_t>(x)].span; }
    int level(int x) const { return nodes_[static_cast<std::size_t>(x)].level; }

    // a copy-on-write leaves the original alive, so the children now have two
    // parents and must never be edited in place again
    void mark_children_shared(int x) {
        Node& nd = nodes_[static_cast<std::size_t>(x)];
        for (int k = 0; k < nd.nch; ++k)
            nodes_[static_cast<std::size_t>(nd.ch[static_cast<std::size_t>(k)])].shared = true;
    }

    void recompute(int x) {
        Node& nd = nodes_[static_cast<std::size_t>(x)];
        std::int64_t s = 0;
        for (int k = 0; k < nd.nch; ++k) s += span(nd.ch[static_cast<std::size_t>(k)]);
        nd.span = s;
    }

    // 2-3 concatenation; mutates unshared spine nodes in place, copies shared ones.
    int join(int a, int b) {
        if (level(a) == level(b)) return fresh(a, b);
        if (level(a) > level(b)) {
            auto [root, carry] = attach(a, b, false, /*right=*/true);
            return carry < 0 ? root : fresh(root, carry);
        }
        auto [root, carry] = attach(b, a, false, /*right=*/false);
        return carry < 0 ? root : fresh(carry, root);
    }

    // Inserts `small` as the outermost descendant of x at its own level.
    // Returns the (possibly replaced) node and an optional carry of x's level.
    std::pair<int, int> attach(int x, int small, bool shared_ctx, bool right) {
        bool ctx = shared_ctx || nodes_[static_cast<std::size_t>(x)].shared;
        int k = nodes_[static_cast<std::size_t>(x)].nch;
        int edge_idx = right ? k - 1 : 0;
        int edge_child = nodes_[static_cast<std::size_t>(x)].ch[static_cast<std::size_t>(edge_idx)];
        if (level(edge_child) == level(small)) {
            return splice(x, edge_idx, edge_child, small, ctx, right);
        }
        auto [nc, carry] = attach(edge_child, small, ctx, right);
        if (carry < 0) {
            if (nc == edge_child) {
                // the child grew in place; refresh this span (in-place implies !ctx)
                recompute(x);
                return {x, -1};
            }
            if (!ctx) {
                nodes_[static_cast<std::size_t>(x)].ch[static_cast<std::size_t>(edge_idx)] = nc;
                recompute(x);
                return {x, -1};
            }
            std::array<int, 3> ch = nodes_[static_cast<std::size_t>(x)].ch;
            ch[static_cast<std::size_t>(edge_idx)] = nc;
            int copy = k == 2 ? fresh(ch[0], ch[1]) : fresh(ch[0], ch[1], ch[2]);
            mark_children_shared(copy);
            return {copy, -1};
        }
        return splice(x, edge_idx, nc, carry, ctx, right);
    }

    // Replaces child edge_idx of x with `kept` and inserts `extra` beside it
    // (outside). Overflow above 3 children splits off a carry.
    std::pair<int, int> splice(int x, int edge_idx, int kept, int extra, bool ctx, bool right) {
        int k = nodes_[static_cast<std::size_t>(x)].nch;
        std::array<int, 4> seq{-1, -1, -1, -1};
        int m = 0;
        for (int q = 0; q < k; ++q) {
            int c = nodes_[static_cast<std::size_t>(x)].ch[static_cast<std::size_t>(q)];
            if (q == edge_idx) {
                if (right) { seq[static_cast<std::size_t>(m++)] = kept; seq[static_cast<std::size_t>(m++)] = extra; }
                else { seq[static_cast<std::size_t>(m++)] = extra; seq[static_cast<std::size_t>(m++)] = kept; }
            } else {
                seq[static_cast<std::size_t>(m++)] = c;
            }
        }
        if (m <= 3) {
            if (!ctx) {
                Node& nd = nodes_[static_cast<std::size_t>(x)];
                nd.ch = {seq[0], seq[1], m == 3 ? seq[2] : -1};
                nd.nch = m;
                recompute(x);
                return {x, -1};
            }
            int copy = m == 2 ? fresh(seq[0], seq[1]) : fresh(seq[0], seq[1], seq[2]);
            mark_children_shared(copy);
            return {copy, -1};
        }
        // four children: split 2+2, carry the outer pair
        int inner, carry;
        if (right) {
            carry = fresh(seq[2], seq[3]);
            inner = ctx ? fresh(seq[0], seq[1]) : x;
            if (!ctx) {
                Node& nd = nodes_[static_cast<std::size_t>(x)];
                nd.ch = {seq[0], seq[1], -1};
                nd.nch = 2;
                recompute(x);
            } else {
                mark_children_shared(inner);
                mark_children_shared(carry);
            }
        } else {
            carry = fresh(seq[0], seq[1]);
            inner = ctx ? fresh(seq[2], seq[3]) : x;
            if (!ctx) {
                Node& nd = nodes_[static_cast<std::size_t>(x)];
                nd.ch = {seq[2], seq[3], -1};
                nd.nch = 2;
                recompute(x);
            } else {
                mark_children_shared(inner);
                mark_children_shared(carry);
            }
        }
        return {inner, carry};
    }

    // All maximal subtrees of `node` (spanning [ns..]) inside [a..b], in order.
    void collect(int node, std::int64_t ns, std::int64_t a, std::int64_t b, std::vector<int>& out) {
        if (a <= ns && ns + span(node) - 1 <= b) {
            nodes_[static_cast<std::size_t>(node)].shared = true;
            out.push_back(node);
            return;
        }
        std::int64_t off = ns;
        const Node nd = nodes_[static_cast<std::size_t>(node)];
        for (int q = 0; q < nd.nch; ++q) {
            int c = nd.ch[static_cast<std::size_t>(q)];
            std::int64_t ce = off + span(c) - 1;
            if (off <= b && ce >= a) collect(c, off, a, b, out);
            off = ce + 1;
        }
    }

    void process_phrase(const DerivedParse::Phrase& ph) {
        std::int64_t len = ph.j - ph.i + 1;
        auto it = regions_.upper_bound(ph.src);
        if (it == regions_.begin()) throw Error("internal-invariant", "phrase source not processed");
        --it;
        const Region src_region = it->second;
        if (src_region.start > ph.src || src_region.end < ph.src + len - 1)
            throw Error("internal-invariant", "phrase source spans unprocessed text");
        std::vector<int> parts;
        collect(src_region.root, src_region.start, ph.src, ph.src + len - 1, parts);
        int root = parts[0];
        for (std::size_t q = 1; q < parts.size(); ++q) root = join(root, parts[q]);
        // merge the new region with processed neighbors to keep maximal regions collapsed
        std::int64_t start = ph.i, end = ph.j;
        auto right_it = regions_.find(end + 1);
        if (right_it != regions_.end()) {
            root = join(root, right_it->second.root);
            end = right_it->second.end;
            regions_.erase(right_it);
        }
        auto after = regions_.lower_bound(start);
        if (after != regions_.begin()) {
            auto left_it = std::prev(after);
            if (left_it->second.end == start - 1) {
                root = join(left_it->second.root, root);
                start = left_it->second.start;
                regions_.erase(left_it);
            }
        }
        regions_[start] = Region{start, end, root};
    }

    void serialize(int root, Slp& out) {
        std::vector<std::int64_t> sym(nodes_.size(), -1);
        auto emit = [&](auto&& self, int x) -> std::int64_t {
            const Node& nd = nodes_[static_cast<std::size_t>(x)];
            if (nd.nch == 0) return static_cast<std::int64_t>(text_.byte_of_rank(nd.term));
            if (sym[static_cast<std::size_t>(x)] >= 0) return sym[static_cast<std::size_t>(x)];
            std::int64_t a = self(self, nd.ch[0]);
            std::int64_t b = self(self, nd.ch[1]);
            std::int64_t s;
            if (nd.nch == 2) {
                s = out.grammar.add_pair(a, b);
                out.rule_level.push_back(nd.level);
            } else {
                std::int64_t c = self(self, nd.ch[2]);
                std::int64_t aux = out.grammar.add_pair(b, c);
                out.rule_level.push_back(nd.level);
                s = out.grammar.add_pair(a, aux);
                out.rule_level.push_back(nd.level);
            }
            sym[static_cast<std::size_t>(x)] = s;
            return s;
        };
        out.grammar.start = emit(emit, root);
    }

    const Text& text_;
    std::vector<Node> nodes_;
    std::vector<int> term_of_rank_;
    std::map<std::int64_t, Region> regions_;
    std::int64_t fresh_rules_ = 0;
};

}  // namespace detail

inline Slp slp_from_attractor(const Text& t, const SuffixIndex& idx, const PaddedAttractor& pa) {
    DerivedParse parse = parse_from_attractor(t, idx, pa);
    return detail::SlpBuilder(t).run(parse);
}

inline Slp slp_from_parse(const Text& t, const DerivedParse& parse) {
    return detail::SlpBuilder(t).run(parse);
}

}  // namespace attractor

#endif
