#ifndef ATTRACTOR_ADAG_HPP
#define ATTRACTOR_ADAG_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "attractor/common.hpp"
#include "attractor/suffix_index.hpp"
#include "attractor/text.hpp"
#include "attractor/verify.hpp"

namespace attractor {

struct ADagConfig {
    std::int64_t tau = 2;
    std::int64_t w = 64;
    std::int64_t alpha = 1;   // query unit in characters, floored to >= 1
    std::int64_t istar = 0;   // deepest level: smallest i with s_i < 4*alpha
    int bits = 0;             // ceil(log2 sigma) bits per packed character
};

// Leveled block/half-block structure anchored at attractor positions. Level-0
// blocks partition the text; deeper levels keep, per attractor element, a grid
// of half-blocks at quarter-scale offsets (the aligned plus staggered cells of
// the construction). Every cell stores the coordinate of an occurrence of its
// content crossing an attractor position; level i* stores packed characters.
class ADag {
public:
    struct Coord {
        std::int64_t off = 0;
        std::int64_t jidx = -1;  // index into the attractor; -1 marks an absent cell
        bool present() const { return jidx >= 0; }
    };

    struct Level {
        std::int64_t s = 0;          // block length s_i
        std::int64_t h = 0;          // half-block (cell) length
        std::int64_t q = 0;          // grid step
        std::int64_t cells = 0;      // grid positions per attractor element
        std::vector<Coord> coords;   // cells * gamma entries
    };

    struct ExtractStats {
        std::int64_t units = 0;
        std::int64_t max_hops = 0;
    };

    static ADag build(const Text& t, const SuffixIndex& idx, const AttractorSet& g,
                      std::int64_t tau, std::int64_t w = 64) {
        if (tau < 2) throw Error("parameter-out-of-range", "tau must be at least 2");
        if (w < 1) throw Error("parameter-out-of-range", "w must be at least 1");
        if (!verify_attractor(t, idx, g).valid)
            throw Error("invalid-attractor", "the A-DAG requires a verifying attractor");
        ADag d;
        d.n_ = t.n();
        d.sigma_ = t.sigma();
        d.positions_ = g.positions;
        d.rank_to_byte_.resize(static_cast<std::size_t>(t.sigma()));
        for (int r = 1; r <= t.sigma(); ++r)
            d.rank_to_byte_[static_cast<std::size_t>(r - 1)] = t.byte_of_rank(r);
        d.cfg_.tau = tau;
        d.cfg_.w = w;
        d.cfg_.bits = t.sigma() == 1 ? 0 : ceil_log2(t.sigma());
        std::int64_t gamma = g.gamma();
        double logt = std::log2(static_cast<double>(d.n_) / static_cast<double>(gamma)) /
                      std::log2(static_cast<double>(tau));
        d.cfg_.alpha = std::max<std::int64_t>(
            1, static_cast<std::int64_t>(std::floor(static_cast<double>(w) * logt /
                                                    static_cast<double>(std::max(1, d.cfg_.bits)))));
        auto s_of = [&](std::int64_t i) {
            std::int64_t div = gamma;
            for (std::int64_t k = 0; k < i; ++k) {
                if (div > d.n_) break;
                div *= tau;
            }
            return ceil_div(d.n_, div);
        };
        std::int64_t istar = 0;
        while (s_of(istar) >= 4 * d.cfg_.alpha) ++istar;
        d.cfg_.istar = istar;
        if (istar == 0) {  // n/gamma below the query unit: store the text packed
            d.plain_ = pack(t, 1, d.n_, d.cfg_.bits);
            return d;
        }
        d.s0_ = s_of(0);
        std::int64_t blocks = ceil_div(d.n_, d.s0_);
        for (std::int64_t b = 0; b < blocks; ++b) {
            std::int64_t lo = b * d.s0_ + 1, hi = std::min(d.n_, (b + 1) * d.s0_);
            d.top_.push_back(d.coord_of(t, idx, g, lo, hi, d.s0_));
        }
        for (std::int64_t i = 1; i < istar; ++i) {
            Level lv;
            lv.s = s_of(i);
            lv.h = ceil_div(lv.s, 2);
            lv.q = ceil_div(lv.h, 2);
            // one grid start within q of every region position; the last cells
            // may overhang the region and are clamped to the text
            lv.cells = (2 * tau * lv.s - 1) / lv.q + 1;
            lv.coords.assign(static_cast<std::size_t>(lv.cells * gamma), Coord{});
            for (std::int64_t jx = 0; jx < gamma; ++jx) {
                std::int64_t p = d.positions_[static_cast<std::size_t>(jx)];
                std::int64_t rs = p - tau * lv.s + 1;
                for (std::int64_t c = 0; c < lv.cells; ++c) {
                    std::int64_t lo = std::max<std::int64_t>(1, rs + c * lv.q);
                    std::int64_t hi = std::min(d.n_, rs + c * lv.q + lv.h - 1);
                    if (lo > hi) continue;  // cell entirely outside the text
                    lv.coords[static_cast<std::size_t>(jx * lv.cells + c)] =
                        d.coord_of(t, idx, g, lo, hi, lv.s);
                }
            }
            d.levels_.push_back(std::move(lv));
        }
        // leaf payload: the full level-i* region around every attractor element
        d.leaf_s_ = s_of(istar);
        std::int64_t bit_pos = 0;
        for (std::int64_t jx = 0; jx < gamma; ++jx) {
            std::int64_t p = d.positions_[static_cast<std::size_t>(jx)];
            std::int64_t lo = std::max<std::int64_t>(1, p - tau * d.leaf_s_ + 1);
            std::int64_t hi = std::min(d.n_, p + tau * d.leaf_s_);
            d.leaf_lo_.push_back(lo);
            d.leaf_bit_off_.push_back(bit_pos);
            bit_pos += (hi - lo + 1) * d.cfg_.bits;
        }
        d.leaves_.assign(static_cast<std::size_t>((bit_pos + 63) / 64), 0);
        for (std::int64_t jx = 0; jx < gamma; ++jx) {
            std::int64_t p = d.positions_[static_cast<std::size_t>(jx)];
            std::int64_t lo = d.leaf_lo_[static_cast<std::size_t>(jx)];
            std::int64_t hi = std::min(d.n_, p + tau * d.leaf_s_);
            std::int64_t off = d.leaf_bit_off_[static_cast<std::size_t>(jx)];
            for (std::int64_t pos = lo; pos <= hi; ++pos) {
                write_bits(d.leaves_, off, t.at(pos) - 1, d.cfg_.bits);
                off += d.cfg_.bits;
            }
        }
        return d;
    }

    const ADagConfig& config() const { return cfg_; }
    std::int64_t n() const { return n_; }
    std::int64_t sigma() const { return sigma_; }
    std::int64_t gamma() const { return static_cast<std::int64_t>(positions_.size()); }
    const std::vector<Level>& levels() const { return levels_; }
    const std::vector<std::int64_t>& positions() const { return positions_; }

    std::string extract(std::int64_t i, std::int64_t ell, ExtractStats* stats = nullptr) const {
        if (ell < 1 || i < 1 || i + ell - 1 > n_)
            throw Error("range-out-of-bounds", "extraction range [" + std::to_string(i) + ", +" +
                                                   std::to_string(ell) + ") outside [1..n]");
        std::string out;
        out.reserve(static_cast<std::size_t>(ell));
        std::int64_t a = i;
        while (a <= i + ell - 1) {
            std::int64_t len = std::min(cfg_.alpha, i + ell - a);
            extract_unit(a, len, out, stats);
            a += len;
        }
        return out;
    }

    struct SpaceBreakdown {
        std::int64_t coord_words = 0;
        std::int64_t position_words = 0;
        std::int64_t leaf_words = 0;
        std::int64_t plain_words = 0;
        double ratio = 0;  // non-payload words / (gamma * tau * (ceil(log_tau(n/gamma)) + 1))
    };

    SpaceBreakdown space_report() const {
        SpaceBreakdown sp;
        sp.position_words = gamma();
        sp.coord_words = static_cast<std::int64_t>(top_.size());
        for (const auto& lv : levels_)
            for (const auto& c : lv.coords) sp.coord_words += c.present() ? 1 : 0;
        sp.leaf_words = static_cast<std::int64_t>(leaves_.size());
        sp.plain_words = static_cast<std::int64_t>(plain_.size());
        double logt = std::log2(static_cast<double>(n_) / static_cast<double>(gamma())) /
                      std::log2(static_cast<double>(cfg_.tau));
        double denom = static_cast<double>(gamma()) * static_cast<double>(cfg_.tau) *
                       (std::ceil(std::max(0.0, logt)) + 1);
        sp.ratio = static_cast<double>(sp.coord_words + sp.position_words) / denom;
        return sp;
    }

    void serialize(std::ostream& os) const {
        os.write("ADAG", 4);
        put32(os, 1);
        for (std::int64_t v : {n_, sigma_, gamma(), cfg_.tau, cfg_.w, cfg_.alpha, cfg_.istar,
                               static_cast<std::int64_t>(cfg_.bits), s0_, leaf_s_})
            put64(os, static_cast<std::uint64_t>(v));
        os.write(reinterpret_cast<const char*>(rank_to_byte_.data()),
                 static_cast<std::streamsize>(rank_to_byte_.size()));
        for (std::int64_t p : positions_) put64(os, static_cast<std::uint64_t>(p));
        if (cfg_.istar == 0) {
            put64(os, plain_.size());
            for (std::uint64_t wv : plain_) put64(os, wv);
            return;
        }
        put64(os, top_.size());
        for (const auto& c : top_) put_coord(os, c);
        for (const auto& lv : levels_) {
            put64(os, static_cast<std::uint64_t>(lv.s));
            put64(os, static_cast<std::uint64_t>(lv.cells));
            for (const auto& c : lv.coords) put_coord(os, c);
        }
        put64(os, leaves_.size());
        for (std::uint64_t wv : leaves_) put64(os, wv);
    }

    static ADag deserialize(std::istream& is) {
        char magic[4];
        is.read(magic, 4);
        if (!is || std::string(magic, 4) != "ADAG")
            throw Error("adag-format", "not an A-DAG file");
        if (get32(is) != 1) throw Error("adag-format", "unsupported A-DAG version");
        ADag d;
        d.n_ = static_cast<std::int64_t>(get64(is));
        d.sigma_ = static_cast<std::int64_t>(get64(is));
        std::int64_t gamma = static_cast<std::int64_t>(get64(is));
        d.cfg_.tau = static_cast<std::int64_t>(get64(is));
        d.cfg_.w = static_cast<std::int64_t>(get64(is));
        d.cfg_.alpha = static_cast<std::int64_t>(get64(is));
        d.cfg_.istar = static_cast<std::int64_t>(get64(is));
        d.cfg_.bits = static_cast<int>(get64(is));
        d.s0_ = static_cast<std::int64_t>(get64(is));
        d.leaf_s_ = static_cast<std::int64_t>(get64(is));
        d.rank_to_byte_.resize(static_cast<std::size_t>(d.sigma_));
        is.read(reinterpret_cast<char*>(d.rank_to_byte_.data()),
                static_cast<std::streamsize>(d.rank_to_byte_.size()));
        d.positions_.resize(static_cast<std::size_t>(gamma));
        for (auto& p : d.positions_) p = static_cast<std::int64_t>(get64(is));
        if (d.cfg_.istar == 0) {
            d.plain_.resize(get64(is));
            for (auto& wv : d.plain_) wv = get64(is);
            return d;
        }
        d.top_.resize(get64(is));
        for (auto& c : d.top_) c = get_coord(is);
        for (std::int64_t i = 1; i < d.cfg_.istar; ++i) {
            Level lv;
            lv.s = static_cast<std::int64_t>(get64(is));
            lv.h = ceil_div(lv.s, 2);
            lv.q = ceil_div(lv.h, 2);
            lv.cells = static_cast<std::int64_t>(get64(is));
            lv.coords.resize(static_cast<std::size_t>(lv.cells * gamma));
            for (auto& c : lv.coords) c = get_coord(is);
            d.levels_.push_back(std::move(lv));
        }
        d.leaves_.resize(get64(is));
        for (auto& wv : d.leaves_) wv = get64(is);
        std::int64_t bit_pos = 0;
        for (std::int64_t jx = 0; jx < gamma; ++jx) {
            std::int64_t p = d.positions_[static_cast<std::size_t>(jx)];
            std::int64_t lo = std::max<std::int64_t>(1, p - d.cfg_.tau * d.leaf_s_ + 1);
            std::int64_t hi = std::min(d.n_, p + d.cfg_.tau * d.leaf_s_);
            d.leaf_lo_.push_back(lo);
            d.leaf_bit_off_.push_back(bit_pos);
            bit_pos += (hi - lo + 1) * d.cfg_.bits;
        }
        if (!is) throw Error("adag-format", "truncated A-DAG file");
        return d;
    }

private:
    Coord coord_of(const Text& t, const SuffixIndex& idx, const AttractorSet& g, std::int64_t lo,
                   std::int64_t hi, std::int64_t scale) const {
        auto occ = find_occurrence_crossing(t, idx, lo, hi, g);
        if (!occ) throw Error("internal-invariant", "verified attractor yielded no crossing occurrence");
        auto it = std::lower_bound(positions_.begin(), positions_.end(), occ->crossing_pos);
        Coord c;
        c.jidx = it - positions_.begin();
        c.off = occ->i - (occ->crossing_pos - scale) - 1;
        if (c.off < 0 || c.off >= 2 * scale)
            throw Error("internal-invariant", "coordinate offset out of range");
        return c;
    }

    void extract_unit(std::int64_t a, std::int64_t len, std::string& out,
                      ExtractStats* stats) const {
        if (cfg_.istar == 0) {
            if (stats) ++stats->units;
            for (std::int64_t p = a; p < a + len; ++p)
                out.push_back(read_char(plain_, (p - 1) * cfg_.bits));
            return;
        }
        std::int64_t b1 = (a - 1) / s0_, b2 = (a + len - 2) / s0_;
        if (b1 != b2) {  // unit spans two top blocks: answer as two sub-queries
            std::int64_t cut = b2 * s0_;  // last position of block b1
            extract_unit(a, cut - a + 1, out, stats);
            extract_unit(cut + 1, a + len - 1 - cut, out, stats);
            return;
        }
        if (stats) ++stats->units;
        std::int64_t hops = 0;
        std::int64_t bs = b1 * s0_ + 1;
        const Coord& c0 = top_[static_cast<std::size_t>(b1)];
        std::int64_t p = positions_[static_cast<std::size_t>(c0.jidx)];
        std::int64_t occ_start = p - s0_ + c0.off + 1;
        std::int64_t cur = occ_start + (a - bs);
        ++hops;
        std::int64_t jx = c0.jidx;
        for (const auto& lv : levels_) {
            std::int64_t rs = p - cfg_.tau * lv.s + 1;
            std::int64_t cell = std::min((cur - rs) / lv.q, lv.cells - 1);
            std::int64_t cs = std::max<std::int64_t>(1, rs + cell * lv.q);
            const Coord& cc = lv.coords[static_cast<std::size_t>(jx * lv.cells + cell)];
            if (!cc.present())
                throw Error("internal-invariant", "extraction reached an absent cell");
            std::int64_t p2 = positions_[static_cast<std::size_t>(cc.jidx)];
            std::int64_t o2 = p2 - lv.s + cc.off + 1;
            cur = o2 + (cur - cs);
            p = p2;
            jx = cc.jidx;
            ++hops;
        }
        std::int64_t lo = leaf_lo_[static_cast<std::size_t>(jx)];
        std::int64_t bit = leaf_bit_off_[static_cast<std::size_t>(jx)] + (cur - lo) * cfg_.bits;
        for (std::int64_t k = 0; k < len; ++k) {
            out.push_back(read_char(leaves_, bit));
            bit += cfg_.bits;
        }
        if (stats) stats->max_hops = std::max(stats->max_hops, hops);
    }

    char read_char(const std::vector<std::uint64_t>& words, std::int64_t bit) const {
        int rank;
        if (cfg_.bits == 0) {
            rank = 1;
        } else {
            rank = static_cast<int>(read_bits(words, bit, cfg_.bits)) + 1;
        }
        return static_cast<char>(rank_to_byte_[static_cast<std::size_t>(rank - 1)]);
    }

    static std::vector<std::uint64_t> pack(const Text& t, std::int64_t lo, std::int64_t hi, int bits) {
        std::vector<std::uint64_t> words(static_cast<std::size_t>(((hi - lo + 1) * bits + 63) / 64), 0);
        std::int64_t off = 0;
        for (std::int64_t p = lo; p <= hi; ++p) {
            write_bits(words, off, t.at(p) - 1, bits);
            off += bits;
        }
        return words;
    }

    static void write_bits(std::vector<std::uint64_t>& words, std::int64_t bit, std::int64_t value,
                           int bits) {
        for (int k = 0; k < bits; ++k) {
            if ((value >> k) & 1)
                words[static_cast<std::size_t>((bit + k) >> 6)] |= std::uint64_t{1} << ((bit + k) & 63);
        }
    }

    static std::int64_t read_bits(const std::vector<std::uint64_t>& words, std::int64_t bit, int bits) {
        std::int64_t v = 0;
        for (int k = 0; k < bits; ++k)
            v |= static_cast<std::int64_t>(
                     (words[static_cast<std::size_t>((bit + k) >> 6)] >> ((bit + k) & 63)) & 1)
                 << k;
        return v;
    }

    static void put32(std::ostream& os, std::uint32_t v) {
        for (int k = 0; k < 4; ++k) os.put(static_cast<char>((v >> (8 * k)) & 0xff));
    }
    static void put64(std::ostream& os, std::uint64_t v) {
        for (int k = 0; k < 8; ++k) os.put(static_cast<char>((v >> (8 * k)) & 0xff));
    }
    static std::uint32_t get32(std::istream& is) {
        std::uint32_t v = 0;
        for (int k = 0; k < 4; ++k) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(is.get())) << (8 * k);
        return v;
    }
    static std::uint64_t get64(std::istream& is) {
        std::uint64_t v = 0;
        for (int k = 0; k < 8; ++k) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(is.get())) << (8 * k);
        return v;
    }
    void put_coord(std::ostream& os, const Coord& c) const {
        if (!c.present()) { put64(os, ~std::uint64_t{0}); return; }
        put64(os, (static_cast<std::uint64_t>(c.off) << 32) | static_cast<std::uint64_t>(c.jidx));
    }
    static Coord get_coord(std::istream& is) {
        std::uint64_t v = get64(is);
        if (v == ~std::uint64_t{0}) return Coord{};
        return Coord{static_cast<std::int64_t>(v >> 32),
                     static_cast<std::int64_t>(v & 0xffffffffull)};
    }

    ADagConfig cfg_;
    std::int64_t n_ = 0, sigma_ = 0;
    std::vector<std::int64_t> positions_;
    std::vector<unsigned char> rank_to_byte_;
    std::int64_t s0_ = 0, leaf_s_ = 0;
    std::vector<Coord> top_;
    std::vector<Level> levels_;
    std::vector<std::uint64_t> leaves_, plain_;
    std::vector<std::int64_t> leaf_lo_, leaf_bit_off_;
};

}  // namespace attractor

#endif
