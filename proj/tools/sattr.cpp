// Command-line surface for the string-attractor toolkit. One subcommand per
// batch operation; file arguments accept '-' for stdin/stdout; all positions
// in inputs and outputs are 1-based.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "attractor/attractor.hpp"

namespace {

using nlohmann::json;

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw attractor::Error("io", "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json read_json(const std::string& path) {
    return json::parse(read_input(path));
}

void write_output(const std::string& path, const std::string& data) {
    if (path == "-" || path.empty()) {
        std::cout << data;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw attractor::Error("io", "cannot open " + path + " for writing");
    out << data;
}

attractor::Text load_text(const std::string& path) {
    return attractor::Text::from_bytes(read_input(path));
}

std::string json_safe(const std::string& bytes) {
    std::string out;
    for (unsigned char b : bytes) out += attractor::byte_to_json_char(b);
    return out;
}

attractor::AttractorSet induce(const std::string& kind, const attractor::Text& t,
                               const attractor::SuffixIndex& idx) {
    using namespace attractor;
    if (kind == "lz77") return attractor_from_lz77(lz77_parse(t, idx));
    if (kind == "bwt") return attractor_from_bwt_runs(t, bwt_runs(t, idx));
    if (kind == "stree") return attractor_from_suffix_tree(t, idx);
    if (kind == "greedy") return greedy_string_attractor(t);
    if (kind == "macro") {
        // LZ77 viewed as a macro scheme; endpoints give a set of size <= 2z
        MacroScheme ms = macro_from_lz77(lz77_parse(t, idx), t);
        return attractor_from_macro(ms);
    }
    if (kind == "grammar") {
        // balanced SLP derived from the LZ77 attractor, then one split per rule
        PaddedAttractor pa = pad_attractor(t, idx, attractor_from_lz77(lz77_parse(t, idx)));
        Slp slp = slp_from_attractor(t, idx, pa);
        return attractor_from_grammar(slp.grammar, t);
    }
    throw attractor::Error("unknown-subcommand", "no attractor construction named " + kind);
}

struct Options {
    std::string kind, text_path, attr_path, file_path, out_path = "-";
    int limit = 18;
    int tree_limit = 16;
    std::int64_t tau = 2, w = 64, pos = 1, len = 1, gamma = -1;
    bool table = false;
};

int dispatch(const std::string& cmd, const Options& opt) {
    using namespace attractor;
    if (cmd == "attractor") {
        Text t = load_text(opt.text_path);
        SuffixIndex idx(t);
        AttractorSet g = induce(opt.kind, t, idx);
        write_output(opt.out_path, g.to_json(t.n()).dump() + "\n");
        return 0;
    }
    if (cmd == "verify") {
        Text t = load_text(opt.text_path);
        SuffixIndex idx(t);
        AttractorSet g = AttractorSet::from_json(read_json(opt.attr_path));
        VerifyResult res = verify_attractor(t, idx, g);
        json out{{"valid", res.valid}};
        if (!res.valid && res.witness) {
            out["witness"] = {{"i", res.witness->i},
                              {"j", res.witness->j},
                              {"substring", json_safe(t.substr_bytes(res.witness->i, res.witness->j))},
                              {"reason", res.witness->reason}};
        }
        write_output(opt.out_path, out.dump() + "\n");
        return res.valid ? 0 : 1;
    }
    if (cmd == "brute") {
        Text t = load_text(opt.text_path);
        SuffixIndex idx(t);
        AttractorSet g = smallest_attractor_bruteforce(t, idx, opt.limit);
        write_output(opt.out_path, g.to_json(t.n()).dump() + "\n");
        return 0;
    }
    if (cmd == "greedy") {
        Text t = load_text(opt.text_path);
        AttractorSet g = greedy_string_attractor(t);
        write_output(opt.out_path, g.to_json(t.n()).dump() + "\n");
        return 0;
    }
    if (cmd == "tree-greedy" || cmd == "tree-brute") {
        LabeledTree g = LabeledTree::from_json(read_json(opt.file_path));
        PathAttractor a = cmd == "tree-greedy" ? greedy_path_attractor(g)
                                               : bruteforce_path_attractor(g, opt.tree_limit);
        json out{{"edges", a.edge_ids}, {"k", a.k()}};
        write_output(opt.out_path, out.dump() + "\n");
        return 0;
    }
    if (cmd == "to-parse" || cmd == "to-slp") {
        Text t = load_text(opt.text_path);
        SuffixIndex idx(t);
        AttractorSet g = AttractorSet::from_json(read_json(opt.attr_path));
        PaddedAttractor pa = pad_attractor(t, idx, g);
        if (cmd == "to-parse") {
            DerivedParse parse = parse_from_attractor(t, idx, pa);
            write_output(opt.out_path, macro_to_json(parse.scheme).dump() + "\n");
        } else {
            Slp slp = slp_from_attractor(t, idx, pa);
            write_output(opt.out_path, grammar_to_json(slp.grammar).dump() + "\n");
        }
        return 0;
    }
    if (cmd == "decode-parse") {
        MacroScheme ms = macro_from_json(read_json(opt.file_path));
        write_output(opt.out_path, decode_macro(ms).text.bytes());
        return 0;
    }
    if (cmd == "decode-slp") {
        RlGrammar gr = grammar_from_json(read_json(opt.file_path));
        write_output(opt.out_path, gr.expand_bytes());
        return 0;
    }
    if (cmd == "decode-lz77") {
        write_output(opt.out_path, lz77_json_to_bytes(read_json(opt.file_path)));
        return 0;
    }
    if (cmd == "adag-build") {
        Text t = load_text(opt.text_path);
        SuffixIndex idx(t);
        AttractorSet g = AttractorSet::from_json(read_json(opt.attr_path));
        ADag d = ADag::build(t, idx, g, opt.tau, opt.w);
        std::ostringstream ss;
        d.serialize(ss);
        write_output(opt.out_path, ss.str());
        return 0;
    }
    if (cmd == "adag-extract") {
        std::istringstream ss(read_input(opt.file_path));
        ADag d = ADag::deserialize(ss);
        write_output(opt.out_path, d.extract(opt.pos, opt.len));
        return 0;
    }
    if (cmd == "bounds") {
        Text t = load_text(opt.text_path);
        SuffixIndex idx(t);
        if (opt.gamma >= 0) {
            LcResult lc = lc_and_bound(t, idx, opt.gamma);
            LmaxResult lm = lmax_bounds(t, idx, opt.gamma, false);
            json out{{"n", t.n()},          {"sigma", t.sigma()},
                     {"gamma", opt.gamma},  {"gamma_exact", false},
                     {"sub_count", lc.sub_count}, {"lc", lc.lc},
                     {"lc_bound", lc.bound}, {"lmax", lm.lmax},
                     {"lmax_lower_bound", lm.lower_on_lmax}};
            write_output(opt.out_path, out.dump() + "\n");
            return 0;
        }
        bool exact = t.n() <= opt.limit;
        AttractorSet g = exact ? smallest_attractor_bruteforce(t, idx, opt.limit)
                               : greedy_string_attractor(t);
        BoundsReport rep = bounds_report(t, idx, g, exact);
        write_output(opt.out_path, opt.table ? rep.table() : rep.to_json().dump() + "\n");
        return 0;
    }
    if (cmd == "report") {
        Text t = load_text(opt.text_path);
        MeasuresReport rep = measures_report(t, opt.limit);
        if (opt.table)
            write_output(opt.out_path, rep.table());
        else
            write_output(opt.out_path, rep.to_json().dump() + "\n");
        return 0;
    }
    if (cmd == "reduce-setcover") {
        SetCoverInstance sc = SetCoverInstance::from_json(read_json(opt.file_path));
        auto [tree, t_count] = tree_from_setcover(sc);
        json out = tree.to_json();
        out["t"] = t_count;
        write_output(opt.out_path, out.dump() + "\n");
        return 0;
    }
    throw attractor::Error("unknown-subcommand", "unhandled command " + cmd);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"string attractor toolkit"};
    app.require_subcommand(1);
    Options opt;
    std::string active;

    auto* attr = app.add_subcommand("attractor", "emit the attractor induced by a compressor");
    attr->add_option("kind", opt.kind, "lz77|bwt|grammar|macro|stree|greedy")->required();
    attr->add_option("text", opt.text_path, "text file ('-' for stdin)")->required();
    attr->add_option("-o,--out", opt.out_path, "output path");

    auto* ver = app.add_subcommand("verify", "verify an attractor against a text");
    ver->add_option("text", opt.text_path)->required();
    ver->add_option("attractor", opt.attr_path, "attractor JSON ('-' for stdin)")->required();
    ver->add_option("-o,--out", opt.out_path);

    auto* brute = app.add_subcommand("brute", "smallest attractor by exhaustive search");
    brute->add_option("text", opt.text_path)->required();
    brute->add_option("--limit", opt.limit, "maximum n");
    brute->add_option("-o,--out", opt.out_path);

    auto* greedy = app.add_subcommand("greedy", "greedy set-cover attractor");
    greedy->add_option("text", opt.text_path)->required();
    greedy->add_option("-o,--out", opt.out_path);

    auto* tg = app.add_subcommand("tree-greedy", "greedy path attractor of a labeled tree");
    tg->add_option("tree", opt.file_path, "tree JSON")->required();
    tg->add_option("-o,--out", opt.out_path);

    auto* tb = app.add_subcommand("tree-brute", "smallest path attractor of a labeled tree");
    tb->add_option("tree", opt.file_path, "tree JSON")->required();
    tb->add_option("--limit", opt.tree_limit, "maximum edge count");
    tb->add_option("-o,--out", opt.out_path);

    auto* tp = app.add_subcommand("to-parse", "bidirectional parse from an attractor");
    tp->add_option("text", opt.text_path)->required();
    tp->add_option("attractor", opt.attr_path)->required();
    tp->add_option("-o,--out", opt.out_path);

    auto* ts = app.add_subcommand("to-slp", "straight-line program from an attractor");
    ts->add_option("text", opt.text_path)->required();
    ts->add_option("attractor", opt.attr_path)->required();
    ts->add_option("-o,--out", opt.out_path);

    auto* dec = app.add_subcommand("decode", "decode a serialized compressed form");
    std::string dec_kind;
    dec->add_option("kind", dec_kind, "parse|slp|lz77")->required();
    dec->add_option("file", opt.file_path, "serialized form ('-' for stdin)")->required();
    dec->add_option("-o,--out", opt.out_path);

    auto* adag = app.add_subcommand("adag", "build or query the A-DAG structure");
    adag->require_subcommand(1);
    auto* ab = adag->add_subcommand("build", "build from text and attractor");
    ab->add_option("text", opt.text_path)->required();
    ab->add_option("attractor", opt.attr_path)->required();
    ab->add_option("--tau", opt.tau, "branching parameter (>= 2)");
    ab->add_option("--w", opt.w, "machine word size in bits");
    ab->add_option("-o,--out", opt.out_path)->required();
    auto* ae = adag->add_subcommand("extract", "extract a substring");
    ae->add_option("file", opt.file_path, ".adag file")->required();
    ae->add_option("--pos", opt.pos, "1-based start position")->required();
    ae->add_option("--len", opt.len, "length")->required();
    ae->add_option("-o,--out", opt.out_path);

    auto* bounds = app.add_subcommand("bounds", "repetitiveness bounds report");
    bounds->add_option("text", opt.text_path)->required();
    bounds->add_option("--gamma", opt.gamma, "attractor size to bound against");
    bounds->add_option("--limit", opt.limit, "brute-force limit for exact gamma*");
    bounds->add_flag("--table", opt.table, "aligned text table instead of JSON");
    bounds->add_option("-o,--out", opt.out_path);

    auto* report = app.add_subcommand("report", "repetitiveness measures report");
    report->add_option("text", opt.text_path)->required();
    report->add_option("--limit", opt.limit, "brute-force limit for exact gamma*");
    report->add_flag("--table", opt.table, "aligned text table instead of JSON");
    report->add_option("-o,--out", opt.out_path);

    auto* rsc = app.add_subcommand("reduce-setcover", "set-cover to path-attractor reduction tree");
    rsc->add_option("instance", opt.file_path, "set-cover JSON")->required();
    rsc->add_option("-o,--out", opt.out_path);

    CLI11_PARSE(app, argc, argv);

    for (auto* sub : app.get_subcommands()) {
        active = sub->get_name();
        if (active == "decode") active = "decode-" + dec_kind;
        if (active == "adag")
            active = sub->get_subcommands().front()->get_name() == "build" ? "adag-build"
                                                                           : "adag-extract";
    }
    try {
        if (active == "decode-parse" || active == "decode-slp" || active == "decode-lz77" ||
            active.rfind("decode-", 0) == 0) {
            if (dec_kind != "parse" && dec_kind != "slp" && dec_kind != "lz77")
                throw attractor::Error("unknown-subcommand", "decode kind must be parse|slp|lz77");
        }
        return dispatch(active, opt);
    } catch (const attractor::Error& err) {
        nlohmann::json rec{{"error", err.code()}, {"command", active}, {"message", err.what()}};
        std::cerr << rec.dump() << "\n";
        return 1;
    } catch (const std::exception& ex) {
        nlohmann::json rec{{"error", "internal"}, {"command", active}, {"message", ex.what()}};
        std::cerr << rec.dump() << "\n";
        return 2;
    }
}
