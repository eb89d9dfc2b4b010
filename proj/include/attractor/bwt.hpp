#ifndef ATTRACTOR_BWT_HPP
#define ATTRACTOR_BWT_HPP

#include <cstdint>
#include <vector>

#include "attractor/suffix_index.hpp"
#include "attractor/text.hpp"

namespace attractor {

// Last column of the sorted rotations of T·sentinel. bwt[q] stores the symbol
// rank, 0 for the sentinel. row_to_text maps a row to the text position its
// character occupies (undefined where sa[q] = 1, i.e. the sentinel row).
struct BwtRuns {
    std::vector<int> bwt;
    std::vector<std::int64_t> run_starts;   // row index where each run begins
    std::vector<std::int64_t> row_to_text;  // 0 marks undefined
    std::int64_t r() const { return static_cast<std::int64_t>(run_starts.size()); }
};

inline BwtRuns bwt_runs(const Text& t, const SuffixIndex& idx) {
    BwtRuns out;
    const auto& sa = idx.sa();
    std::int64_t m = static_cast<std::int64_t>(sa.size());
    out.bwt.reserve(static_cast<std::size_t>(m));
    out.row_to_text.reserve(static_cast<std::size_t>(m));
    for (std::int64_t q = 0; q < m; ++q) {
        if (sa[q] == 1) {
            out.bwt.push_back(0);
            out.row_to_text.push_back(0);
        } else {
            out.bwt.push_back(t.at(sa[q] - 1));
            out.row_to_text.push_back(sa[q] - 1);
        }
    }
    for (std::int64_t q = 0; q < m; ++q)
        if (q == 0 || out.bwt[static_cast<std::size_t>(q)] != out.bwt[static_cast<std::size_t>(q - 1)])
            out.run_starts.push_back(q);
    return out;
}

// Positions of first/last characters of each BWT run, plus n for the skipped
// sentinel row; size at most 2r.
inline AttractorSet attractor_from_bwt_runs(const Text& t, const BwtRuns& runs) {
    std::vector<std::int64_t> pos;
    std::int64_t m = static_cast<std::int64_t>(runs.bwt.size());
    for (std::size_t k = 0; k < runs.run_starts.size(); ++k) {
        std::int64_t first = runs.run_starts[k];
        std::int64_t last = (k + 1 < runs.run_starts.size() ? runs.run_starts[k + 1] : m) - 1;
        for (std::int64_t q : {first, last}) {
            std::int64_t p = runs.row_to_text[static_cast<std::size_t>(q)];
            if (p != 0) pos.push_back(p);
        }
    }
    pos.push_back(t.n());
    return AttractorSet(std::move(pos), "bwt-runs");
}

// Inverse transform via LF mapping; used by round-trip checks.
inline std::vector<int> bwt_invert(const BwtRuns& runs) {
    std::int64_t m = static_cast<std::int64_t>(runs.bwt.size());
    int maxc = 0;
    for (int c : runs.bwt) maxc = std::max(maxc, c);
    std::vector<std::int64_t> count(static_cast<std::size_t>(maxc + 2), 0);
    for (int c : runs.bwt) ++count[static_cast<std::size_t>(c + 1)];
    for (std::size_t c = 1; c < count.size(); ++c) count[c] += count[c - 1];
    std::vector<std::int64_t> lf(static_cast<std::size_t>(m));
    std::vector<std::int64_t> seen(static_cast<std::size_t>(maxc + 1), 0);
    for (std::int64_t q = 0; q < m; ++q) {
        int c = runs.bwt[static_cast<std::size_t>(q)];
        lf[static_cast<std::size_t>(q)] = count[static_cast<std::size_t>(c)] + seen[static_cast<std::size_t>(c)];
        ++seen[static_cast<std::size_t>(c)];
    }
    std::vector<int> out(static_cast<std::size_t>(m - 1));
    std::int64_t row = 0;  // the sentinel row in F order
    for (std::int64_t k = m - 2; k >= 0; --k) {
        // walking backwards from the sentinel yields the text right to left
        int c = runs.bwt[static_cast<std::size_t>(row)];
        out[static_cast<std::size_t>(k)] = c;
        row = lf[static_cast<std::size_t>(row)];
    }
    return out;
}

}  // namespace attractor

#endif
