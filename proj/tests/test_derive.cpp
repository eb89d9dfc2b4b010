#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>

#include "attractor/attractor.hpp"
#include "corpus.hpp"

using namespace attractor;

namespace {

std::vector<AttractorSet> induced_attractors(const Text& t, const SuffixIndex& idx) {
    std::vector<AttractorSet> out;
    Lz77Parse lz = lz77_parse(t, idx);
    out.push_back(attractor_from_lz77(lz));
    out.push_back(attractor_from_bwt_runs(t, bwt_runs(t, idx)));
    out.push_back(attractor_from_suffix_tree(t, idx));
    out.push_back(attractor_from_macro(macro_from_lz77(lz, t)));
    out.push_back(greedy_string_attractor(t));
    return out;
}

// map of position -> copy phrase length; assigns excluded
std::map<std::int64_t, std::int64_t> phrase_len_at(const DerivedParse& parse) {
    std::map<std::int64_t, std::int64_t> at;
    for (const auto& ph : parse.phrases)
        if (!ph.assign)
            for (std::int64_t p = ph.i; p <= ph.j; ++p) at[p] = ph.j - ph.i + 1;
    return at;
}

void check_parse_contracts(const Text& t, const SuffixIndex& idx, const PaddedAttractor& pa,
                           const DerivedParse& parse) {
    REQUIRE(parse.scheme.is_partition());
    // assigns sit exactly at the padded attractor positions
    std::vector<std::int64_t> assign_pos;
    for (const auto& d : parse.scheme.dirs)
        if (std::holds_alternative<MacroScheme::AssignDir>(d))
            assign_pos.push_back(std::get<MacroScheme::AssignDir>(d).pos);
    std::sort(assign_pos.begin(), assign_pos.end());
    REQUIRE(assign_pos == pa.padded.positions);
    auto res = decode_macro(parse.scheme);
    REQUIRE(res.text.bytes() == t.bytes());
    REQUIRE(res.height.has_value());
    REQUIRE(*res.height <= ceil_log2(pa.max_gap) + 2);
    // per-gap directive budget
    for (std::size_t k = 0; k < parse.gap_bounds.size(); ++k) {
        std::int64_t gap = parse.gap_bounds[k].second - parse.gap_bounds[k].first;
        REQUIRE(parse.gap_copy_counts[k] <= 2 * ceil_log2(std::max<std::int64_t>(1, gap)) + 3);
    }
    // source positions of a scale-e phrase sit in strictly smaller scales
    auto len_at = phrase_len_at(parse);
    std::set<std::int64_t> explicit_pos(pa.padded.positions.begin(), pa.padded.positions.end());
    for (const auto& ph : parse.phrases) {
        if (ph.assign) continue;
        std::int64_t len = ph.j - ph.i + 1;
        int e = ceil_log2(len);
        std::int64_t half = e == 0 ? 0 : (std::int64_t{1} << (e - 1));
        for (std::int64_t q = ph.src; q <= ph.src + len - 1; ++q) {
            if (explicit_pos.count(q)) continue;
            auto it = len_at.find(q);
            REQUIRE(it != len_at.end());
            REQUIRE(it->second <= half);
        }
    }
    // every copy's source crosses an attractor position and differs from the phrase
    for (const auto& d : parse.scheme.dirs) {
        if (!std::holds_alternative<MacroScheme::CopyDir>(d)) continue;
        const auto& c = std::get<MacroScheme::CopyDir>(d);
        bool crosses = false;
        for (std::int64_t p : pa.padded.positions)
            if (p >= c.si && p <= c.sj) { crosses = true; break; }
        REQUIRE(crosses);
        REQUIRE((c.si != c.di || c.sj != c.dj));
    }
    (void)idx;
}

void check_slp_contracts(const Text& t, const PaddedAttractor& pa, const Slp& slp) {
    REQUIRE(slp.grammar.g_power() == 0);
    REQUIRE(slp.grammar.expand_bytes() == t.bytes());
    std::int64_t budget = 4 * (ceil_log2(pa.max_gap) + 2);
    for (std::int64_t c : slp.per_phrase_new) REQUIRE(c <= budget);
}

}  // namespace

TEST_CASE("padding adds equally spaced positions") {
    SECTION("the running example") {
        Text t = Text::from_bytes("CDABCCDABCCA");
        SuffixIndex idx(t);
        PaddedAttractor pa = pad_attractor(t, idx, AttractorSet({4, 7, 11, 12}, "user"));
        REQUIRE(pa.max_gap <= 3);  // ceil(12/4)
        REQUIRE(pa.padded.gamma() <= 2 * pa.base.gamma());
        REQUIRE(verify_attractor(t, idx, pa.padded).valid);
    }
    SECTION("a fully explicit set is unchanged") {
        Text t = Text::from_bytes("abcab");
        SuffixIndex idx(t);
        PaddedAttractor pa = pad_attractor(t, idx, AttractorSet({1, 2, 3, 4, 5}, "user"));
        REQUIRE(pa.padded.positions == std::vector<std::int64_t>{1, 2, 3, 4, 5});
        REQUIRE(pa.max_gap == 1);
    }
    SECTION("a unary singleton keeps its gap within ceil(n/gamma)") {
        Text t = Text::from_bytes("aaaa");
        SuffixIndex idx(t);
        PaddedAttractor pa = pad_attractor(t, idx, AttractorSet({1}, "user"));
        REQUIRE(pa.max_gap <= 4);
        REQUIRE(pa.padded.gamma() <= 2);
        REQUIRE(verify_attractor(t, idx, pa.padded).valid);
    }
    SECTION("non-verifying input is rejected") {
        Text t = Text::from_bytes("ab");
        SuffixIndex idx(t);
        REQUIRE_THROWS_MATCHES(pad_attractor(t, idx, AttractorSet({1}, "user")), Error,
                               Catch::Matchers::Predicate<Error>(
                                   [](const Error& e) { return e.code() == "invalid-attractor"; }));
    }
}

TEST_CASE("parse with explicit padded positions on a unary string") {
    Text t = Text::from_bytes("aaaa");
    SuffixIndex idx(t);
    PaddedAttractor pa;
    pa.base = AttractorSet({1}, "user");
    pa.padded = AttractorSet({1, 2, 4}, "padded");
    pa.max_gap = max_gap_of(pa.padded.positions, t.n());
    DerivedParse parse = parse_from_attractor(t, idx, pa);
    std::int64_t assigns = 0;
    for (const auto& d : parse.scheme.dirs)
        assigns += std::holds_alternative<MacroScheme::AssignDir>(d) ? 1 : 0;
    REQUIRE(assigns == 3);
    auto res = decode_macro(parse.scheme);
    REQUIRE(res.text.bytes() == "aaaa");
    check_parse_contracts(t, idx, pa, parse);
}

TEST_CASE("a fully padded set yields all assigns at height one") {
    Text t = Text::from_bytes("abcab");
    SuffixIndex idx(t);
    PaddedAttractor pa = pad_attractor(t, idx, AttractorSet({1, 2, 3, 4, 5}, "user"));
    DerivedParse parse = parse_from_attractor(t, idx, pa);
    REQUIRE(parse.scheme.b() == t.n());
    auto res = decode_macro(parse.scheme);
    REQUIRE(res.height.has_value());
    REQUIRE(*res.height == 1);
}

TEST_CASE("parse of the running example decodes and meets its budgets") {
    Text t = Text::from_bytes("CDABCCDABCCA");
    SuffixIndex idx(t);
    PaddedAttractor pa = pad_attractor(t, idx, AttractorSet({4, 7, 11, 12}, "user"));
    DerivedParse parse = parse_from_attractor(t, idx, pa);
    check_parse_contracts(t, idx, pa, parse);
    std::int64_t budget = 0;
    for (auto [g1, g2] : parse.gap_bounds)
        budget += 2 * ceil_log2(std::max<std::int64_t>(1, g2 - g1)) + 3;
    std::int64_t copies = 0;
    for (std::int64_t c : parse.gap_copy_counts) copies += c;
    REQUIRE(copies <= budget);
}

TEST_CASE("slp of a two-character text is a single pair over terminals") {
    Text t = Text::from_bytes("ab");
    SuffixIndex idx(t);
    PaddedAttractor pa = pad_attractor(t, idx, AttractorSet({1, 2}, "user"));
    Slp slp = slp_from_attractor(t, idx, pa);
    REQUIRE(slp.grammar.g() == 1);
    REQUIRE(slp.grammar.expand_bytes() == "ab");
}

TEST_CASE("slp of a singleton text has a bare terminal start") {
    Text t = Text::from_bytes("a");
    SuffixIndex idx(t);
    PaddedAttractor pa = pad_attractor(t, idx, AttractorSet({1}, "user"));
    Slp slp = slp_from_attractor(t, idx, pa);
    REQUIRE(slp.grammar.g() == 0);
    REQUIRE(slp.grammar.expand_bytes() == "a");
}

TEST_CASE("slp expands on a unary string") {
    Text t = Text::from_bytes("aaaa");
    SuffixIndex idx(t);
    PaddedAttractor pa = pad_attractor(t, idx, AttractorSet({1}, "user"));
    Slp slp = slp_from_attractor(t, idx, pa);
    check_slp_contracts(t, pa, slp);
}

TEST_CASE("slp of the running example round-trips through the grammar attractor") {
    Text t = Text::from_bytes("CDABCCDABCCA");
    SuffixIndex idx(t);
    PaddedAttractor pa = pad_attractor(t, idx, AttractorSet({4, 7, 11, 12}, "user"));
    Slp slp = slp_from_attractor(t, idx, pa);
    check_slp_contracts(t, pa, slp);
    AttractorSet g = attractor_from_grammar(slp.grammar, t);
    REQUIRE(g.gamma() <= slp.grammar.g());
    REQUIRE(verify_attractor(t, idx, g).valid);
}

TEST_CASE("derive round-trips over the corpus and every induced attractor") {
    for (const auto& s : corpus::standard_upto(600)) {
        Text t = Text::from_bytes(s);
        SuffixIndex idx(t);
        for (const auto& base : induced_attractors(t, idx)) {
            PaddedAttractor pa = pad_attractor(t, idx, base);
            DerivedParse parse = parse_from_attractor(t, idx, pa);
            check_parse_contracts(t, idx, pa, parse);
            Slp slp = slp_from_parse(t, parse);
            check_slp_contracts(t, pa, slp);
            // closure: both derived forms induce verifying attractors
            REQUIRE(verify_attractor(t, idx, attractor_from_macro(parse.scheme)).valid);
            REQUIRE(verify_attractor(t, idx, attractor_from_grammar(slp.grammar, t)).valid);
        }
    }
}

TEST_CASE("measures report lists the expected sizes for the running example") {
    Text t = Text::from_bytes("CDABCCDABCCA");
    MeasuresReport rep = measures_report(t);
    REQUIRE(rep.z == 8);
    REQUIRE(rep.brute_gamma == 4);
    REQUIRE(rep.parse_size > 0);
    REQUIRE(rep.slp_size > 0);
    REQUIRE(rep.parse_ratio > 0);
}

TEST_CASE("measures report sees slowly growing z and constant r on unary strings") {
    std::int64_t last_z = 0;
    for (std::int64_t n : {4, 8, 16, 32, 64, 128}) {
        MeasuresReport rep = measures_report(Text::from_bytes(std::string(static_cast<std::size_t>(n), 'a')));
        if (n > 4) REQUIRE(rep.z == last_z + 1);  // one extra doubling copy
        last_z = rep.z;
        REQUIRE(rep.r == 2);
    }
}
