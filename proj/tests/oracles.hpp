#ifndef TESTS_ORACLES_HPP
#define TESTS_ORACLES_HPP

// Independent brute-force oracles. Everything here works on plain std::string
// with direct enumeration and stays deliberately ignorant of the library's
// suffix structures.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace oracles {

inline std::vector<std::int64_t> occurrences(const std::string& s, const std::string& pat) {
    std::vector<std::int64_t> out;
    if (pat.empty() || pat.size() > s.size()) return out;
    for (std::size_t i = 0; i + pat.size() <= s.size(); ++i)
        if (s.compare(i, pat.size(), pat) == 0) out.push_back(static_cast<std::int64_t>(i) + 1);
    return out;
}

inline std::set<std::string> distinct_substrings(const std::string& s) {
    std::set<std::string> subs;
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t l = 1; i + l <= s.size(); ++l) subs.insert(s.substr(i, l));
    return subs;
}

// Definition check by full enumeration: every distinct substring has an
// occurrence spanning a position of the set (1-based positions).
inline bool verify(const std::string& s, const std::vector<std::int64_t>& positions) {
    for (const auto& sub : distinct_substrings(s)) {
        bool covered = false;
        for (std::int64_t o : occurrences(s, sub)) {
            std::int64_t lo = o, hi = o + static_cast<std::int64_t>(sub.size()) - 1;
            for (std::int64_t p : positions)
                if (p >= lo && p <= hi) { covered = true; break; }
            if (covered) break;
        }
        if (!covered) return false;
    }
    return true;
}

inline std::int64_t smallest_gamma(const std::string& s) {
    std::int64_t n = static_cast<std::int64_t>(s.size());
    for (std::int64_t k = 1; k <= n; ++k) {
        std::vector<std::int64_t> c(static_cast<std::size_t>(k));
        for (std::int64_t x = 0; x < k; ++x) c[static_cast<std::size_t>(x)] = x + 1;
        while (true) {
            if (verify(s, c)) return k;
            std::int64_t x = k - 1;
            while (x >= 0 && c[static_cast<std::size_t>(x)] == n - (k - 1 - x)) --x;
            if (x < 0) break;
            ++c[static_cast<std::size_t>(x)];
            for (std::int64_t y = x + 1; y < k; ++y)
                c[static_cast<std::size_t>(y)] = c[static_cast<std::size_t>(y - 1)] + 1;
        }
    }
    return n;
}

struct LzPhrase {
    bool literal;
    char ch;
    std::int64_t src, len;
};

// Greedy leftmost-longest with the source entirely before the phrase.
inline std::vector<LzPhrase> lz77(const std::string& s) {
    std::vector<LzPhrase> out;
    std::int64_t n = static_cast<std::int64_t>(s.size());
    std::int64_t pos = 1;
    while (pos <= n) {
        std::int64_t best_len = 0, best_src = 0;
        for (std::int64_t len = 1; pos + len - 1 <= n; ++len) {
            bool found = false;
            for (std::int64_t src = 1; src + len - 1 <= pos - 1; ++src) {
                if (s.compare(static_cast<std::size_t>(src - 1), static_cast<std::size_t>(len),
                              s, static_cast<std::size_t>(pos - 1), static_cast<std::size_t>(len)) == 0) {
                    found = true;
                    if (len > best_len) { best_len = len; best_src = src; }
                    break;  // leftmost
                }
            }
            if (!found) break;
        }
        if (best_len == 0) {
            out.push_back({true, s[static_cast<std::size_t>(pos - 1)], 0, 0});
            pos += 1;
        } else {
            out.push_back({false, 0, best_src, best_len});
            pos += best_len;
        }
    }
    return out;
}

// Last column of the sorted rotations of s + sentinel; sentinel returned as 0.
inline std::vector<int> bwt(const std::string& s) {
    std::string t = s;
    t.push_back('\0');
    std::size_t m = t.size();
    std::vector<std::size_t> rot(m);
    for (std::size_t i = 0; i < m; ++i) rot[i] = i;
    std::sort(rot.begin(), rot.end(), [&](std::size_t a, std::size_t b) {
        for (std::size_t k = 0; k < m; ++k) {
            unsigned char ca = static_cast<unsigned char>(t[(a + k) % m]);
            unsigned char cb = static_cast<unsigned char>(t[(b + k) % m]);
            if (ca != cb) return ca < cb;
        }
        return false;
    });
    std::vector<int> last;
    last.reserve(m);
    for (std::size_t r : rot) last.push_back(static_cast<unsigned char>(t[(r + m - 1) % m]));
    return last;
}

inline std::int64_t bwt_run_count(const std::vector<int>& col) {
    std::int64_t r = 0;
    for (std::size_t q = 0; q < col.size(); ++q)
        if (q == 0 || col[q] != col[q - 1]) ++r;
    return r;
}

inline std::int64_t longest_repeated(const std::string& s) {
    std::int64_t best = 0;
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j) {
            std::size_t l = 0;
            while (j + l < s.size() && s[i + l] == s[j + l]) ++l;
            best = std::max<std::int64_t>(best, static_cast<std::int64_t>(l));
        }
    return best;
}

inline std::vector<std::int64_t> kmer_counts(const std::string& s) {
    std::vector<std::int64_t> out;
    for (std::size_t k = 1; k <= s.size(); ++k) {
        std::set<std::string> kmers;
        for (std::size_t i = 0; i + k <= s.size(); ++i) kmers.insert(s.substr(i, k));
        out.push_back(static_cast<std::int64_t>(kmers.size()));
    }
    return out;
}

}  // namespace oracles

#endif
