#ifndef ATTRACTOR_BOUNDS_HPP
#define ATTRACTOR_BOUNDS_HPP

#include <cstdint>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "attractor/common.hpp"
#include "attractor/suffix_index.hpp"
#include "attractor/text.hpp"
#include "attractor/verify.hpp"

namespace attractor {

// Distinct k-mer counts for k = 1..n, derived from the LCP array:
// count(k) = (n-k+1) - #{q : lcp[q] >= k}.
inline std::vector<std::int64_t> distinct_kmer_counts(const Text& t, const SuffixIndex& idx) {
    std::int64_t n = t.n();
    std::vector<std::int64_t> hist(static_cast<std::size_t>(n) + 2, 0);
    for (std::size_t q = 1; q < idx.lcp().size(); ++q) ++hist[static_cast<std::size_t>(idx.lcp()[q])];
    std::vector<std::int64_t> count(static_cast<std::size_t>(n), 0);
    std::int64_t ge = 0;
    for (std::int64_t k = n; k >= 1; --k) {
        ge += hist[static_cast<std::size_t>(k)];
        count[static_cast<std::size_t>(k - 1)] = (n - k + 1) - ge;
    }
    return count;
}

struct KmerReport {
    std::vector<std::int64_t> counts;  // per k, 1-based k at index k-1
    std::vector<std::int64_t> caps;    // gamma * k
};

inline KmerReport kmer_counts(const Text& t, const SuffixIndex& idx, const AttractorSet& g) {
    if (!verify_attractor(t, idx, g).valid)
        throw Error("invalid-attractor", "k-mer caps require a verifying attractor");
    KmerReport out;
    out.counts = distinct_kmer_counts(t, idx);
    out.caps.reserve(out.counts.size());
    for (std::int64_t k = 1; k <= t.n(); ++k) out.caps.push_back(g.gamma() * k);
    return out;
}

// sigma^k with saturation: the min is unaffected once the power exceeds n.
inline std::int64_t saturating_power(std::int64_t base, std::int64_t exp, std::int64_t cap) {
    std::int64_t v = 1;
    for (std::int64_t k = 0; k < exp; ++k) {
        if (v > cap / base) return cap + 1;
        v *= base;
    }
    return v;
}

struct LcResult {
    double lc;
    double bound;
    std::int64_t sub_count;
    std::int64_t denom;          // max distinct substrings for this n, sigma
    std::int64_t bound_numer;    // capped by gamma*k
};

inline LcResult lc_and_bound(const Text& t, const SuffixIndex& idx, std::int64_t gamma) {
    std::int64_t n = t.n(), sigma = t.sigma();
    std::int64_t denom = 0, numer = 0;
    for (std::int64_t k = 1; k <= n; ++k) {
        std::int64_t p = saturating_power(sigma, k, n);
        std::int64_t m = std::min(p, n - k + 1);
        denom += m;
        numer += std::min(m, gamma * k);
    }
    LcResult out;
    out.sub_count = idx.count_distinct_substrings();
    out.denom = denom;
    out.bound_numer = numer;
    out.lc = static_cast<double>(out.sub_count) / static_cast<double>(denom);
    out.bound = static_cast<double>(numer) / static_cast<double>(denom);
    return out;
}

struct LmaxResult {
    std::int64_t lmax;
    double lower_on_lmax;   // (n - gamma) / (gamma + 1)
    double lower_on_gamma;  // (n - lmax) / (lmax + 1), meaningful only for exact gamma*
    bool lmax_ok;
    bool gamma_ok;
};

// With the exact optimum both directions hold; with an upper bound on gamma*
// only the first is asserted (it weakens as gamma grows).
inline LmaxResult lmax_bounds(const Text& t, const SuffixIndex& idx, std::int64_t gamma,
                              bool gamma_is_exact) {
    LmaxResult out;
    out.lmax = idx.longest_repeated_len();
    std::int64_t n = t.n();
    out.lower_on_lmax = static_cast<double>(n - gamma) / static_cast<double>(gamma + 1);
    out.lower_on_gamma = static_cast<double>(n - out.lmax) / static_cast<double>(out.lmax + 1);
    out.lmax_ok = static_cast<double>(out.lmax) >= out.lower_on_lmax;
    out.gamma_ok = !gamma_is_exact || static_cast<double>(gamma) >= out.lower_on_gamma;
    return out;
}

struct BoundsReport {
    std::int64_t n, sigma, gamma;
    bool gamma_exact;
    KmerReport kmers;
    LcResult lc;
    LmaxResult lmax;

    std::string table() const {
        std::ostringstream os;
        auto row = [&](const std::string& k, const std::string& v) {
            os << std::left << std::setw(22) << k << v << "\n";
        };
        auto num = [](double v) {
            std::ostringstream s;
            s << std::fixed << std::setprecision(4) << v;
            return s.str();
        };
        row("n", std::to_string(n));
        row("sigma", std::to_string(sigma));
        row("gamma", std::to_string(gamma) + (gamma_exact ? " (exact)" : " (upper bound)"));
        row("|SUB|", std::to_string(lc.sub_count));
        row("LC", num(lc.lc));
        row("LC bound", num(lc.bound));
        row("l_max", std::to_string(lmax.lmax));
        row("l_max lower bound", num(lmax.lower_on_lmax));
        row("gamma lower bound", num(lmax.lower_on_gamma));
        std::ostringstream caps;
        for (std::size_t k = 0; k < kmers.counts.size() && k < 8; ++k)
            caps << kmers.counts[k] << "/" << kmers.caps[k] << " ";
        row("k-mers/caps (k<=8)", caps.str());
        return os.str();
    }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["n"] = n;
        j["sigma"] = sigma;
        j["gamma"] = gamma;
        j["gamma_exact"] = gamma_exact;
        j["kmer_counts"] = kmers.counts;
        j["kmer_caps"] = kmers.caps;
        j["sub_count"] = lc.sub_count;
        j["lc"] = lc.lc;
        j["lc_bound"] = lc.bound;
        j["lmax"] = lmax.lmax;
        j["lmax_lower_bound"] = lmax.lower_on_lmax;
        j["gamma_lower_bound"] = lmax.lower_on_gamma;
        return j;
    }
};

// Fails construction if any of the asserted inequalities is violated on the
// report's own numbers.
inline BoundsReport bounds_report(const Text& t, const SuffixIndex& idx, const AttractorSet& g,
                                  bool gamma_is_exact) {
    BoundsReport rep;
    rep.n = t.n();
    rep.sigma = t.sigma();
    rep.gamma = g.gamma();
    rep.gamma_exact = gamma_is_exact;
    rep.kmers = kmer_counts(t, idx, g);
    for (std::size_t k = 0; k < rep.kmers.counts.size(); ++k)
        if (rep.kmers.counts[k] > rep.kmers.caps[k])
            throw Error("bounds-violated", "k-mer count exceeds gamma*k at k=" + std::to_string(k + 1));
    rep.lc = lc_and_bound(t, idx, g.gamma());
    if (rep.lc.lc > rep.lc.bound + 1e-12)
        throw Error("bounds-violated", "linguistic complexity exceeds its bound");
    rep.lmax = lmax_bounds(t, idx, g.gamma(), gamma_is_exact);
    if (!rep.lmax.lmax_ok || !rep.lmax.gamma_ok)
        throw Error("bounds-violated", "longest-repeat inequality does not hold");
    return rep;
}

}  // namespace attractor

#endif
