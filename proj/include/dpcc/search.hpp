#pragma once

#include <array>
#include <chrono>
#include <cstdint>
#include <future>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "dpcc/bitmatrix.hpp"
#include "dpcc/constructions.hpp"
#include "dpcc/scheme.hpp"
#include "dpcc/verify.hpp"

namespace dpcc {

struct SearchReport {
    std::string name;
    std::uint64_t candidates_examined = 0;
    std::uint64_t feasible_found = 0;
    std::vector<std::string> witnesses;
    std::map<std::string, bool> sub_lemma_checks;
    double elapsed_seconds = 0.0;
    bool privacy_condition = true;
    std::string scope;
};

// All 2x4 cache coefficient matrices in reduced block form
// [[a,b,0,0],[0,0,c,d]] with (a,b) and (c,d) nonzero; every rank-2 cache
// whose per-file halves have rank 1 is row-equivalent to exactly one of
// these nine.
inline std::vector<BitMatrix> enumerate_reduced_caches() {
    std::vector<BitMatrix> out;
    for (unsigned ab = 1; ab < 4; ++ab)
        for (unsigned cd = 1; cd < 4; ++cd)
            out.push_back(BitMatrix::from_rows({std::uint64_t(ab), std::uint64_t(cd) << 2}, 4));
    return out;
}

namespace detail {

inline std::string bits_of(const BitMatrix& m) {
    std::string s = "[";
    auto rows = m.to_strings();
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i) s += ",";
        s += rows[i];
    }
    return s + "]";
}

}  // namespace detail

// Exhaustive search showing no (2,2; 1, 1/2) private linear scheme with
// subpacketization 2 exists: over all reduced cache pairs and all candidate
// transmissions, no tuple serves demand (A,A) under the privacy-necessary
// condition and still serves demand (A,B).
inline SearchReport search_sub2(bool privacy_condition = true) {
    auto start = std::chrono::steady_clock::now();
    SearchReport rep;
    rep.name = "sub2";
    rep.privacy_condition = privacy_condition;
    rep.scope =
        "deterministic rank-2 cache pairs in reduced block form (the full linear class up to "
        "row equivalence), single-row transmissions over GF(2), privacy modeled by the necessary "
        "condition that X^AA touches both files; randomized-cache schemes are outside this "
        "hypothesis set";

    const SchemeParams p{2, 2, 2};
    const auto caches = enumerate_reduced_caches();
    for (const BitMatrix& c0 : caches) {
        for (const BitMatrix& c1 : caches) {
            for (std::uint64_t taa = 0; taa < 16; ++taa) {
                ++rep.candidates_examined;
                BitMatrix t_aa = BitMatrix::from_rows({taa}, 4);
                if (privacy_condition && ((taa & 0b0011) == 0 || (taa & 0b1100) == 0)) continue;
                if (!decodes(c0, t_aa, 0, p) || !decodes(c1, t_aa, 0, p)) continue;
                for (std::uint64_t tab = 0; tab < 16; ++tab) {
                    ++rep.candidates_examined;
                    BitMatrix t_ab = BitMatrix::from_rows({tab}, 4);
                    if (decodes(c0, t_ab, 0, p) && decodes(c1, t_ab, 1, p)) {
                        ++rep.feasible_found;
                        rep.witnesses.push_back("C0=" + detail::bits_of(c0) + " C1=" + detail::bits_of(c1) +
                                                " TAA=" + detail::bits_of(t_aa) +
                                                " TAB=" + detail::bits_of(t_ab));
                    }
                }
            }
        }
    }
    rep.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

struct Sub3Options {
    bool privacy_condition = true;   // per-cell weak-privacy requirement
    bool restrict_structural = false;  // only caches with 2 subfiles of one file + 1 of the other
    unsigned threads = 1;
    bool progress = false;
};

namespace detail {

// fixed-size bitset over the 651 canonical 2-dim transmission row spaces
struct SubspaceSet {
    std::array<std::uint64_t, 11> w{};
    void set(std::size_t i) { w[i >> 6] |= std::uint64_t(1) << (i & 63); }
    friend SubspaceSet operator&(const SubspaceSet& a, const SubspaceSet& b) {
        SubspaceSet r;
        for (std::size_t i = 0; i < r.w.size(); ++i) r.w[i] = a.w[i] & b.w[i];
        return r;
    }
    friend SubspaceSet operator|(const SubspaceSet& a, const SubspaceSet& b) {
        SubspaceSet r;
        for (std::size_t i = 0; i < r.w.size(); ++i) r.w[i] = a.w[i] | b.w[i];
        return r;
    }
    bool any() const {
        for (std::uint64_t x : w)
            if (x) return true;
        return false;
    }
};

inline std::string symbol_name(unsigned sym) {
    return std::string(1, sym < 3 ? 'A' : 'B') + std::to_string(sym % 3);
}

inline std::string option_name(const std::vector<unsigned>& opt) {
    std::string s = "{";
    for (std::size_t i = 0; i < opt.size(); ++i) {
        if (i) s += ",";
        s += symbol_name(opt[i]);
    }
    return s + "}";
}

}  // namespace detail

// Exhaustive reproduction of the uncoded-prefetching impossibility at
// subpacketization 3: with two equally likely uncoded 3-subset caches per
// user, no transmission plan serves every (demand, key) cell while keeping
// the per-cell weak-privacy condition.
inline SearchReport search_sub3_uncoded(const Sub3Options& opts = {}) {
    auto start = std::chrono::steady_clock::now();
    SearchReport rep;
    rep.name = "sub3-uncoded";
    rep.privacy_condition = opts.privacy_condition;
    rep.scope =
        "uncoded caches of 3 of the 6 subfile symbols, exactly two uniform options per user "
        "(the constructive randomization class), transmissions ranging over all 651 canonical "
        "2-dimensional row spaces; option counts beyond two are covered only through the "
        "per-cell necessary condition";

    const SchemeParams p{2, 2, 3};
    const auto subspaces = enumerate_row_spaces(6, 2);  // 651 candidates

    // candidate caches: 3-subsets of the 6 symbols, lexicographic
    std::vector<std::vector<unsigned>> options;
    for (const auto& sub : detail::combinations(6, 3)) {
        if (opts.restrict_structural) {
            unsigned a_count = 0;
            for (unsigned sym : sub)
                if (sym < 3) ++a_count;
            if (a_count == 0 || a_count == 3) continue;
        }
        options.push_back(sub);
    }
    const std::size_t n_opts = options.size();

    std::vector<BitMatrix> option_mats;
    for (const auto& sub : options) {
        std::vector<std::uint64_t> rows;
        for (unsigned sym : sub) rows.push_back(std::uint64_t(1) << sym);
        option_mats.push_back(BitMatrix::from_rows(rows, 6));
    }

    // per (option, file): set of subspaces from which that cache decodes
    // the file
    std::vector<std::array<detail::SubspaceSet, 2>> dec(n_opts);
    for (std::size_t o = 0; o < n_opts; ++o)
        for (std::size_t t = 0; t < subspaces.size(); ++t)
            for (unsigned w = 0; w < 2; ++w)
                if (decodes(option_mats[o], subspaces[t], w, p)) dec[o][w].set(t);

    // unordered option pairs per user and their weak-privacy cover sets
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t a = 0; a < n_opts; ++a)
        for (std::size_t b = a + 1; b < n_opts; ++b) pairs.emplace_back(a, b);
    std::vector<detail::SubspaceSet> cover(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i)
        cover[i] = (dec[pairs[i].first][0] | dec[pairs[i].second][0]) &
                   (dec[pairs[i].first][1] | dec[pairs[i].second][1]);
    detail::SubspaceSet all;
    for (std::size_t t = 0; t < subspaces.size(); ++t) all.set(t);

    auto run_range = [&](std::size_t lo, std::size_t hi, std::vector<std::string>& witnesses,
                         std::uint64_t& feasible) {
        for (std::size_t i0 = lo; i0 < hi; ++i0) {
            const auto [a0, b0] = pairs[i0];
            const detail::SubspaceSet cov0 = opts.privacy_condition ? cover[i0] : all;
            for (std::size_t i1 = 0; i1 < pairs.size(); ++i1) {
                const auto [a1, b1] = pairs[i1];
                const detail::SubspaceSet cov1 = opts.privacy_condition ? cover[i1] : all;
                bool feasible_pair = true;
                for (unsigned d0 = 0; d0 < 2 && feasible_pair; ++d0)
                    for (unsigned d1 = 0; d1 < 2 && feasible_pair; ++d1)
                        for (unsigned k0 = 0; k0 < 2 && feasible_pair; ++k0)
                            for (unsigned k1 = 0; k1 < 2 && feasible_pair; ++k1) {
                                std::size_t u0 = k0 ? b0 : a0;
                                std::size_t u1 = k1 ? b1 : a1;
                                if (!(dec[u0][d0] & dec[u1][d1] & cov0 & cov1).any())
                                    feasible_pair = false;
                            }
                if (feasible_pair) {
                    ++feasible;
                    witnesses.push_back("Z0=" + detail::option_name(options[a0]) + "/" +
                                        detail::option_name(options[b0]) + " Z1=" +
                                        detail::option_name(options[a1]) + "/" +
                                        detail::option_name(options[b1]));
                }
            }
            if (opts.progress) {
                std::uint64_t done = std::uint64_t(i0 - lo + 1) * pairs.size() * 16 * subspaces.size();
                if (done / 1'000'000 != (done - pairs.size() * 16 * subspaces.size()) / 1'000'000)
                    std::cerr << "sub3-uncoded: " << done << " candidates in range\n";
            }
        }
    };

    std::uint64_t feasible = 0;
    std::vector<std::string> witnesses;
    const unsigned threads = std::max(1u, opts.threads);
    if (threads == 1) {
        run_range(0, pairs.size(), witnesses, feasible);
    } else {
        std::vector<std::future<std::pair<std::uint64_t, std::vector<std::string>>>> futs;
        const std::size_t chunk = (pairs.size() + threads - 1) / threads;
        for (unsigned t = 0; t < threads; ++t) {
            std::size_t lo = std::min(pairs.size(), std::size_t(t) * chunk);
            std::size_t hi = std::min(pairs.size(), lo + chunk);
            futs.push_back(std::async(std::launch::async, [&, lo, hi]() {
                std::uint64_t f = 0;
                std::vector<std::string> w;
                run_range(lo, hi, w, f);
                return std::make_pair(f, std::move(w));
            }));
        }
        for (auto& fut : futs) {
            auto [f, w] = fut.get();
            feasible += f;
            witnesses.insert(witnesses.end(), w.begin(), w.end());
        }
    }
    rep.feasible_found = feasible;
    rep.witnesses = std::move(witnesses);
    std::sort(rep.witnesses.begin(), rep.witnesses.end());
    rep.candidates_examined =
        std::uint64_t(pairs.size()) * pairs.size() * 16 * subspaces.size();

    // Sub-lemma: with Z_0 = {A0, A1, B2} fixed and demand (B, A), every
    // transmission serving both users forces A2 into user 1's cache.
    {
        std::vector<std::uint64_t> z0_rows = {1ull << 0, 1ull << 1, 1ull << 5};
        BitMatrix z0 = BitMatrix::from_rows(z0_rows, 6);
        bool forced = true;
        const auto all_options = detail::combinations(6, 3);
        for (const auto& z1 : all_options) {
            bool has_a2 = std::find(z1.begin(), z1.end(), 2u) != z1.end();
            if (has_a2) continue;
            std::vector<std::uint64_t> rows;
            for (unsigned sym : z1) rows.push_back(std::uint64_t(1) << sym);
            BitMatrix z1m = BitMatrix::from_rows(rows, 6);
            for (const BitMatrix& t : subspaces) {
                if (decodes(z0, t, 1, p) && decodes(z1m, t, 0, p)) {
                    forced = false;
                    break;
                }
            }
            if (!forced) break;
        }
        rep.sub_lemma_checks["A2-forced"] = forced;
    }

    rep.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

}  // namespace dpcc
