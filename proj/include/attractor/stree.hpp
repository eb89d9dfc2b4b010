#ifndef ATTRACTOR_STREE_HPP
#define ATTRACTOR_STREE_HPP

#include <cstdint>
#include <vector>

#include "attractor/suffix_index.hpp"
#include "attractor/text.hpp"

namespace attractor {

// One position per suffix-tree edge: the end of the leftmost occurrence of
// st(e'), the string from the root through the first label character.
inline AttractorSet attractor_from_suffix_tree(const Text&, const SuffixIndex& idx) {
    std::vector<std::int64_t> pos;
    pos.reserve(static_cast<std::size_t>(idx.e()));
    for (const auto& e : idx.st_edges()) pos.push_back(e.min_start + e.parent_depth);
    return AttractorSet(std::move(pos), "suffix-tree");
}

}  // namespace attractor

#endif
