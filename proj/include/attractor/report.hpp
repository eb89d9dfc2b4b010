#ifndef ATTRACTOR_REPORT_HPP
#define ATTRACTOR_REPORT_HPP

#include <cmath>
#include <cstdint>
#include <iomanip>
#include <sstream>
#include <string>

#include <json.hpp>

#include "attractor/bwt.hpp"
#include "attractor/derive.hpp"
#include "attractor/lz77.hpp"
#include "attractor/stree.hpp"
#include "attractor/suffix_index.hpp"
#include "attractor/text.hpp"
#include "attractor/treeattr.hpp"
#include "attractor/verify.hpp"

namespace attractor {

// Side-by-side repetitiveness measures plus the sizes of the parse and SLP
// derived from the smallest attractor at hand. Reports only; asserts nothing.
struct MeasuresReport {
    std::int64_t n = 0, sigma = 0;
    std::int64_t sub_count = 0;
    std::int64_t z = 0, r = 0, e = 0;
    std::int64_t greedy_gamma = 0;
    std::int64_t brute_gamma = -1;  // -1 when n exceeds the brute-force limit
    std::string smallest_provenance;
    std::int64_t smallest_gamma = 0;
    std::int64_t parse_size = 0;  // directives of the derived bidirectional parse
    std::int64_t slp_size = 0;    // rules of the derived SLP
    double parse_ratio = 0;       // parse_size / (gamma * log2(n/gamma))
    double slp_ratio = 0;         // slp_size / (gamma * log2^2(n/gamma))

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["n"] = n;
        j["sigma"] = sigma;
        j["sub_count"] = sub_count;
        j["z"] = z;
        j["r"] = r;
        j["e"] = e;
        j["greedy_gamma"] = greedy_gamma;
        if (brute_gamma >= 0) j["brute_gamma"] = brute_gamma;
        j["smallest_gamma"] = smallest_gamma;
        j["smallest_provenance"] = smallest_provenance;
        j["parse_size"] = parse_size;
        j["slp_size"] = slp_size;
        j["parse_ratio"] = parse_ratio;
        j["slp_ratio"] = slp_ratio;
        return j;
    }

    std::string table() const {
        std::ostringstream os;
        auto row = [&](const std::string& k, const std::string& v) {
            os << std::left << std::setw(22) << k << v << "\n";
        };
        row("n", std::to_string(n));
        row("sigma", std::to_string(sigma));
        row("|SUB|", std::to_string(sub_count));
        row("z (lz77)", std::to_string(z));
        row("r (bwt runs)", std::to_string(r));
        row("e (suffix tree)", std::to_string(e));
        row("gamma (greedy)", std::to_string(greedy_gamma));
        row("gamma* (brute)", brute_gamma >= 0 ? std::to_string(brute_gamma) : "-");
        row("smallest attractor", std::to_string(smallest_gamma) + " (" + smallest_provenance + ")");
        row("parse size", std::to_string(parse_size));
        row("slp size", std::to_string(slp_size));
        std::ostringstream r1, r2;
        r1 << std::fixed << std::setprecision(4) << parse_ratio;
        r2 << std::fixed << std::setprecision(4) << slp_ratio;
        row("parse/(g log(n/g))", r1.str());
        row("slp/(g log^2(n/g))", r2.str());
        return os.str();
    }
};

inline MeasuresReport measures_report(const Text& t, int brute_limit = 18) {
    SuffixIndex idx(t);
    MeasuresReport rep;
    rep.n = t.n();
    rep.sigma = t.sigma();
    rep.sub_count = idx.count_distinct_substrings();
    Lz77Parse lz = lz77_parse(t, idx);
    rep.z = lz.z();
    BwtRuns runs = bwt_runs(t, idx);
    rep.r = runs.r();
    rep.e = idx.e();
    AttractorSet best = attractor_from_lz77(lz);
    rep.smallest_provenance = best.provenance;
    auto consider = [&](const AttractorSet& g) {
        if (g.gamma() < best.gamma()) {
            best = g;
            rep.smallest_provenance = g.provenance;
        }
    };
    consider(attractor_from_bwt_runs(t, runs));
    consider(attractor_from_suffix_tree(t, idx));
    AttractorSet greedy = greedy_string_attractor(t);
    rep.greedy_gamma = greedy.gamma();
    consider(greedy);
    if (t.n() <= brute_limit) {
        AttractorSet brute = smallest_attractor_bruteforce(t, idx, brute_limit);
        rep.brute_gamma = brute.gamma();
        consider(brute);
    }
    rep.smallest_gamma = best.gamma();
    PaddedAttractor pa = pad_attractor(t, idx, best);
    DerivedParse parse = parse_from_attractor(t, idx, pa);
    rep.parse_size = parse.scheme.b();
    Slp slp = slp_from_parse(t, parse);
    rep.slp_size = slp.grammar.g();
    double g = static_cast<double>(best.gamma());
    double lg = std::max(1.0, std::log2(static_cast<double>(rep.n) / g));
    rep.parse_ratio = static_cast<double>(rep.parse_size) / (g * lg);
    rep.slp_ratio = static_cast<double>(rep.slp_size) / (g * lg * lg);
    return rep;
}

}  // namespace attractor

#endif
