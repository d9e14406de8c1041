#pragma once

#include <cstdint>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dpcc/bitmatrix.hpp"
#include "dpcc/rational.hpp"
#include "dpcc/scheme.hpp"
#include "dpcc/verify.hpp"

namespace dpcc {

namespace detail {

// all t-subsets of [n], lexicographic
inline std::vector<std::vector<unsigned>> combinations(unsigned n, unsigned t) {
    std::vector<std::vector<unsigned>> out;
    if (t > n) return out;
    std::vector<unsigned> cur(t);
    for (unsigned i = 0; i < t; ++i) cur[i] = i;
    while (true) {
        out.push_back(cur);
        unsigned i = t;
        while (i > 0 && cur[i - 1] == n - t + (i - 1)) --i;
        if (i == 0) break;
        ++cur[i - 1];
        for (unsigned j = i; j < t; ++j) cur[j] = cur[j - 1] + 1;
    }
    return out;
}

}  // namespace detail

// Maddah-Ali--Niesen scheme: f = C(K,t), user i caches subfile (n, tau) for
// every t-subset tau containing i, one XOR transmission row per (t+1)-subset.
inline Scheme build_mn(unsigned K, unsigned N, unsigned t) {
    if (K < 1 || N < 1 || t > K) throw std::invalid_argument("build_mn: need K >= 1, N >= 1, 0 <= t <= K");
    Int f_big = binomial(K, t);
    if (Int(N) * f_big > 64) throw std::invalid_argument("build_mn: symbol space width N*C(K,t) exceeds 64");
    const unsigned f = f_big.convert_to<unsigned>();

    Scheme s;
    s.params = {K, N, f};
    s.provenance = "mn(K=" + std::to_string(K) + ",N=" + std::to_string(N) + ",t=" + std::to_string(t) + ")";

    const auto subsets = detail::combinations(K, t);
    auto subset_index = [&](const std::vector<unsigned>& sub) -> unsigned {
        for (unsigned i = 0; i < subsets.size(); ++i)
            if (subsets[i] == sub) return i;
        throw std::logic_error("subset not found");
    };

    for (unsigned i = 0; i < K; ++i) {
        std::vector<std::uint64_t> rows;
        for (unsigned n = 0; n < N; ++n)
            for (unsigned u = 0; u < f; ++u)
                if (std::find(subsets[u].begin(), subsets[u].end(), i) != subsets[u].end())
                    rows.push_back(std::uint64_t(1) << s.params.symbol(n, u));
        s.cache_options.push_back({BitMatrix::from_rows(rows, s.params.width())});
    }

    const auto deliver = detail::combinations(K, t + 1);
    const std::uint64_t demands = s.demand_count();
    for (std::uint64_t d = 0; d < demands; ++d) {
        DemandVector dv = s.demand_at(d);
        std::vector<std::uint64_t> rows;
        for (const auto& sigma : deliver) {
            std::uint64_t row = 0;
            for (unsigned k : sigma) {
                std::vector<unsigned> rest;
                for (unsigned m : sigma)
                    if (m != k) rest.push_back(m);
                row ^= std::uint64_t(1) << s.params.symbol(dv[k], subset_index(rest));
            }
            rows.push_back(row);
        }
        s.transmissions[{d, 0}] = {BitMatrix::from_rows(rows, s.params.width())};
    }
    return s;
}

enum class TrivialMode { EmptyCache, FullCache };

// Trade-off curve endpoints: broadcast everything, or cache everything.
inline Scheme build_trivial(unsigned N, unsigned K, TrivialMode mode) {
    if (N < 1 || K < 1 || N > 64) throw std::invalid_argument("build_trivial: bad parameters");
    Scheme s;
    s.params = {K, N, 1};
    s.provenance = std::string("trivial(") +
                   (mode == TrivialMode::EmptyCache ? "empty-cache" : "full-cache") + ")";
    BitMatrix cache = mode == TrivialMode::EmptyCache ? BitMatrix(0, N) : BitMatrix::identity(N);
    BitMatrix tx = mode == TrivialMode::EmptyCache ? BitMatrix::identity(N) : BitMatrix(0, N);
    for (unsigned i = 0; i < K; ++i) s.cache_options.push_back({cache});
    for (std::uint64_t d = 0; d < s.demand_count(); ++d) s.transmissions[{d, 0}] = {tx};
    return s;
}

// (K, f, Z, S) placement delivery array; kStar marks uncached cells.
struct Pda {
    static constexpr int kStar = -1;
    unsigned K = 0;  // columns (users)
    unsigned f = 0;  // rows (subfiles)
    unsigned Z = 0;  // stars per column
    unsigned S = 0;  // integer alphabet size
    std::vector<std::vector<int>> cells;  // f rows of K entries
};

inline std::vector<Violation> validate_pda(const Pda& p) {
    std::vector<Violation> out;
    auto bad = [&](std::string msg) {
        out.push_back({Violation::Kind::ShapeError, 0, 0, 0, 0, std::move(msg)});
    };
    if (p.K < 1 || p.f < 1 || p.S < 1) {
        bad("K, f and S must be positive");
        return out;
    }
    if (p.cells.size() != p.f) {
        bad("expected " + std::to_string(p.f) + " rows");
        return out;
    }
    for (unsigned j = 0; j < p.f; ++j)
        if (p.cells[j].size() != p.K) {
            bad("row " + std::to_string(j) + " has wrong length");
            return out;
        }
    for (unsigned j = 0; j < p.f; ++j)
        for (unsigned k = 0; k < p.K; ++k)
            if (p.cells[j][k] != Pda::kStar && (p.cells[j][k] < 0 || p.cells[j][k] >= int(p.S)))
                bad("cell (" + std::to_string(j) + "," + std::to_string(k) + ") outside [0," +
                    std::to_string(p.S) + ")");
    if (!out.empty()) return out;

    // D1: exactly Z stars per column
    for (unsigned k = 0; k < p.K; ++k) {
        unsigned stars = 0;
        for (unsigned j = 0; j < p.f; ++j)
            if (p.cells[j][k] == Pda::kStar) ++stars;
        if (stars != p.Z)
            bad("D1: column " + std::to_string(k) + " has " + std::to_string(stars) + " stars, expected " +
                std::to_string(p.Z));
    }
    // D2: every integer occurs
    std::vector<bool> seen(p.S, false);
    for (unsigned j = 0; j < p.f; ++j)
        for (unsigned k = 0; k < p.K; ++k)
            if (p.cells[j][k] != Pda::kStar) seen[p.cells[j][k]] = true;
    for (unsigned v = 0; v < p.S; ++v)
        if (!seen[v]) bad("D2: integer " + std::to_string(v) + " never occurs");
    // D3: equal integers lie in distinct rows/columns with star crossings
    for (unsigned j1 = 0; j1 < p.f; ++j1)
        for (unsigned k1 = 0; k1 < p.K; ++k1) {
            if (p.cells[j1][k1] == Pda::kStar) continue;
            for (unsigned j2 = j1; j2 < p.f; ++j2)
                for (unsigned k2 = (j2 == j1 ? k1 + 1 : 0); k2 < p.K; ++k2) {
                    if (p.cells[j2][k2] != p.cells[j1][k1]) continue;
                    if (j1 == j2 || k1 == k2) {
                        bad("D3: integer " + std::to_string(p.cells[j1][k1]) +
                            " repeats in the same row or column");
                        continue;
                    }
                    if (p.cells[j1][k2] != Pda::kStar || p.cells[j2][k1] != Pda::kStar)
                        bad("D3: crossing cells of integer " + std::to_string(p.cells[j1][k1]) +
                            " at (" + std::to_string(j1) + "," + std::to_string(k1) + ") and (" +
                            std::to_string(j2) + "," + std::to_string(k2) + ") are not both stars");
                }
        }
    return out;
}

// Text format: header "K f Z S", then one row per line, "*" for stars.
inline Pda parse_pda(const std::string& text) {
    std::istringstream in(text);
    Pda p;
    if (!(in >> p.K >> p.f >> p.Z >> p.S))
        throw std::invalid_argument("pda: bad header, expected 'K f Z S'");
    p.cells.assign(p.f, std::vector<int>(p.K, Pda::kStar));
    for (unsigned j = 0; j < p.f; ++j)
        for (unsigned k = 0; k < p.K; ++k) {
            std::string tok;
            if (!(in >> tok))
                throw std::invalid_argument("pda: missing cell (" + std::to_string(j) + "," +
                                            std::to_string(k) + ")");
            if (tok == "*")
                p.cells[j][k] = Pda::kStar;
            else {
                try {
                    p.cells[j][k] = std::stoi(tok);
                } catch (const std::exception&) {
                    throw std::invalid_argument("pda: bad cell token '" + tok + "'");
                }
            }
        }
    return p;
}

inline std::string serialize_pda(const Pda& p) {
    std::ostringstream out;
    out << p.K << ' ' << p.f << ' ' << p.Z << ' ' << p.S << '\n';
    for (unsigned j = 0; j < p.f; ++j) {
        for (unsigned k = 0; k < p.K; ++k) {
            if (k) out << ' ';
            if (p.cells[j][k] == Pda::kStar)
                out << '*';
            else
                out << p.cells[j][k];
        }
        out << '\n';
    }
    return out.str();
}

// The (6, 4, 2, 4) array used for the K=3, N=2 pipeline.
inline Pda eq11_pda() {
    Pda p;
    p.K = 6;
    p.f = 4;
    p.Z = 2;
    p.S = 4;
    const int X = Pda::kStar;
    p.cells = {{X, 1, X, 2, X, 0},
               {0, X, X, 3, 1, X},
               {X, 3, 0, X, 2, X},
               {2, X, 1, X, X, 3}};
    return p;
}

// Non-private scheme from a PDA: stars place subfiles, each integer becomes
// one XOR transmission row.
inline Scheme build_from_pda(const Pda& p, unsigned N) {
    auto violations = validate_pda(p);
    if (!violations.empty()) throw std::invalid_argument("build_from_pda: " + violations[0].detail);
    if (N < 1 || std::size_t(N) * p.f > 64)
        throw std::invalid_argument("build_from_pda: symbol space width N*f exceeds 64");
    Scheme s;
    s.params = {p.K, N, p.f};
    s.provenance = "pda(K=" + std::to_string(p.K) + ",f=" + std::to_string(p.f) + ",Z=" +
                   std::to_string(p.Z) + ",S=" + std::to_string(p.S) + ")";
    for (unsigned k = 0; k < p.K; ++k) {
        std::vector<std::uint64_t> rows;
        for (unsigned n = 0; n < N; ++n)
            for (unsigned j = 0; j < p.f; ++j)
                if (p.cells[j][k] == Pda::kStar)
                    rows.push_back(std::uint64_t(1) << s.params.symbol(n, j));
        s.cache_options.push_back({BitMatrix::from_rows(rows, s.params.width())});
    }
    for (std::uint64_t d = 0; d < s.demand_count(); ++d) {
        DemandVector dv = s.demand_at(d);
        std::vector<std::uint64_t> rows(p.S, 0);
        for (unsigned j = 0; j < p.f; ++j)
            for (unsigned k = 0; k < p.K; ++k)
                if (p.cells[j][k] != Pda::kStar)
                    rows[p.cells[j][k]] ^= std::uint64_t(1) << s.params.symbol(dv[k], j);
        s.transmissions[{d, 0}] = {BitMatrix::from_rows(rows, s.params.width())};
    }
    return s;
}

// Cyclic extension: block k of the output covers positions kN..kN+N-1 and is
// a permutation of [N] placing d_k at offset keys_k.
inline DemandVector extend_demand(const DemandVector& d, const KeyVector& keys, unsigned N) {
    if (d.size() != keys.size()) throw std::invalid_argument("extend_demand: length mismatch");
    const unsigned K = static_cast<unsigned>(d.size());
    DemandVector out(std::size_t(N) * K);
    for (unsigned k = 0; k < K; ++k) {
        if (d[k] >= N || keys[k] >= N) throw std::out_of_range("extend_demand: entry out of range");
        for (unsigned j = k * N; j < (k + 1) * N; ++j)
            out[j] = (d[k] + N - keys[k] % N + j) % N;
    }
    return out;
}

// Deterministic NK-user scheme -> private K-user scheme: each user draws one
// of N caches uniformly; the served demand is hidden among the block's
// cyclic extension.
inline Scheme privatize(const Scheme& np) {
    const unsigned N = np.params.files;
    if (np.params.users % N != 0)
        throw std::invalid_argument("privatize: user count must be a multiple of N");
    const unsigned K = np.params.users / N;
    for (unsigned i = 0; i < np.params.users; ++i)
        if (np.option_count(i) != 1)
            throw std::invalid_argument("privatize: source scheme must be deterministic (one option per user)");
    for (const auto& [key, cell] : np.transmissions)
        if (cell.size() != 1)
            throw std::invalid_argument("privatize: source scheme must have a single branch per cell");

    Scheme s;
    s.params = {K, N, np.params.subpack};
    s.provenance = "private(" + np.provenance + ")";
    for (unsigned k = 0; k < K; ++k) {
        std::vector<BitMatrix> opts;
        for (unsigned r = 0; r < N; ++r) opts.push_back(np.cache_options[k * N + r][0]);
        s.cache_options.push_back(std::move(opts));
    }
    for (std::uint64_t d = 0; d < s.demand_count(); ++d) {
        DemandVector dv = s.demand_at(d);
        for (std::uint64_t k = 0; k < s.key_count(); ++k) {
            KeyVector kv = s.key_at(k);
            DemandVector ext = extend_demand(dv, kv, N);
            s.transmissions[{d, k}] = {np.transmissions.at({np.demand_index(ext), 0})[0]};
        }
    }
    return s;
}

// Rate of the privatized Maddah-Ali--Niesen scheme for integer KM.
inline Rational private_rate_formula(unsigned K, unsigned N, const Rational& M) {
    if (K < 1 || N < 1) throw std::invalid_argument("private_rate_formula: K, N must be positive");
    if (M < 0 || M > N) throw std::invalid_argument("private_rate_formula: need 0 <= M <= N");
    Rational KM = Rational(K) * M;
    if (denominator(KM) != 1) throw std::invalid_argument("private_rate_formula: KM must be an integer");
    if (M >= Rational(Int(K) - 1, Int(K)))
        return Rational(K) * (Rational(N) - M) / (1 + KM);
    return Rational(N) - M;
}

// The direct (2,2; 1, 2/3) scheme with subpacketization 3: coded caches,
// two options per user, four fixed two-row transmissions. Each cell is the
// unique alphabet member both users decode their demand from.
inline Scheme build_table1() {
    Scheme s;
    s.params = {2, 2, 3};
    s.provenance = "table1";
    const std::size_t w = s.params.width();  // A -> cols 0..2, B -> cols 3..5
    auto mat = [&](std::vector<std::string> rows) { return BitMatrix::from_strings(rows, w); };
    s.cache_options = {
        {mat({"110000", "000110", "001010"}),   // Z00: A0+A1, B0+B1, A2+B1
         mat({"110000", "000110", "010001"})},  // Z01: A0+A1, B0+B1, A1+B2
        {mat({"101000", "000101", "010001"}),   // Z10: A0+A2, B0+B2, A1+B2
         mat({"101000", "000101", "001010"})},  // Z11: A0+A2, B0+B2, A2+B1
    };
    const std::vector<BitMatrix> alphabet = {
        mat({"100000", "000100"}),  // A0, B0
        mat({"010000", "000010"}),  // A1, B1
        mat({"001000", "000001"}),  // A2, B2
        mat({"111000", "000111"}),  // A0+A1+A2, B0+B1+B2
    };
    for (std::uint64_t d = 0; d < s.demand_count(); ++d) {
        DemandVector dv = s.demand_at(d);
        for (std::uint64_t k = 0; k < s.key_count(); ++k) {
            KeyVector kv = s.key_at(k);
            const BitMatrix* unique = nullptr;
            for (const BitMatrix& x : alphabet) {
                if (decodes(s.cache_options[0][kv[0]], x, dv[0], s.params) &&
                    decodes(s.cache_options[1][kv[1]], x, dv[1], s.params)) {
                    if (unique) throw std::logic_error("build_table1: cell not unique");
                    unique = &x;
                }
            }
            if (!unique) throw std::logic_error("build_table1: cell has no transmission");
            s.transmissions[{d, k}] = {*unique};
        }
    }
    return s;
}

// Interchange the roles of caches and transmissions of a (2,2) private
// scheme with two options per user. The four transmissions are partitioned
// into two option pairs; the pair containing the first transmission stays
// with user 1, and the first partition whose induced scheme is correct and
// exactly private wins.
inline Scheme dualize(const Scheme& s) {
    if (s.params.users != 2 || s.params.files != 2)
        throw std::invalid_argument("dualize: requires K = 2, N = 2");
    if (s.option_count(0) != 2 || s.option_count(1) != 2)
        throw std::invalid_argument("dualize: requires two cache options per user");

    // transmission alphabet in first-appearance order
    std::vector<BitMatrix> alphabet;
    for (std::uint64_t d = 0; d < s.demand_count(); ++d)
        for (std::uint64_t k = 0; k < s.key_count(); ++k) {
            const auto& cell = s.transmissions.at({d, k});
            if (cell.size() != 1) throw std::invalid_argument("dualize: scheme must be deterministic per cell");
            if (std::find(alphabet.begin(), alphabet.end(), cell[0]) == alphabet.end())
                alphabet.push_back(cell[0]);
        }
    if (alphabet.size() != 4)
        throw std::invalid_argument("dualize: expected exactly four distinct transmissions");

    const std::vector<BitMatrix> old_caches = {s.cache_options[0][0], s.cache_options[0][1],
                                               s.cache_options[1][0], s.cache_options[1][1]};
    // recovery must be unambiguous: each (cache, transmission) decodes
    // exactly one file
    for (const BitMatrix& z : old_caches)
        for (const BitMatrix& x : alphabet) {
            unsigned decodable = 0;
            for (unsigned w = 0; w < 2; ++w)
                if (decodes(z, x, w, s.params)) ++decodable;
            if (decodable != 1)
                throw std::invalid_argument("dualize: recovery table is not a complete permutation table");
        }

    const unsigned partners[3] = {1, 2, 3};  // partition = {0, partner} vs rest
    for (unsigned partner : partners) {
        std::vector<BitMatrix> u1_opts = {alphabet[0], alphabet[partner]};
        std::vector<BitMatrix> u0_opts;
        for (unsigned i = 1; i < 4; ++i)
            if (i != partner) u0_opts.push_back(alphabet[i]);

        Scheme dual;
        dual.params = s.params;
        dual.provenance = "dual(" + s.provenance + ")";
        dual.cache_options = {u0_opts, u1_opts};
        bool complete = true;
        for (std::uint64_t d = 0; d < dual.demand_count() && complete; ++d) {
            DemandVector dv = dual.demand_at(d);
            for (std::uint64_t k = 0; k < dual.key_count() && complete; ++k) {
                KeyVector kv = dual.key_at(k);
                const BitMatrix* found = nullptr;
                for (const BitMatrix& z : old_caches) {
                    if (decodes(dual.cache_options[0][kv[0]], z, dv[0], dual.params) &&
                        decodes(dual.cache_options[1][kv[1]], z, dv[1], dual.params)) {
                        found = &z;
                        break;
                    }
                }
                if (!found)
                    complete = false;
                else
                    dual.transmissions[{d, k}] = {*found};
            }
        }
        if (!complete) continue;
        if (!verify_correctness(dual).empty()) continue;
        if (!privacy_report(dual).exact_private) continue;
        return dual;
    }
    throw std::invalid_argument("dualize: no transmission partition induces a valid private scheme");
}

// File-splitting time share: segment 1 carries weight alpha of every file
// under s1, segment 2 the rest under s2, keys independent.
inline Scheme time_share(const Scheme& s1, const Scheme& s2, const Rational& alpha) {
    if (s1.params.users != s2.params.users || s1.params.files != s2.params.files)
        throw std::invalid_argument("time_share: schemes must share (K, N)");
    if (alpha < 0 || alpha > 1) throw std::invalid_argument("time_share: alpha must be in [0, 1]");
    const unsigned K = s1.params.users;
    const unsigned N = s1.params.files;
    const unsigned f1 = s1.params.subpack;
    const unsigned f2 = s2.params.subpack;

    // minimal f with a = alpha*f/f1 and b = (1-alpha)*f/f2 both integral
    unsigned f = 0, a = 0, b = 0;
    for (unsigned cand = 1; std::size_t(N) * cand <= 64; ++cand) {
        Rational ra = alpha * cand / f1;
        Rational rb = (1 - alpha) * cand / f2;
        if (denominator(ra) == 1 && denominator(rb) == 1) {
            f = cand;
            a = numerator(ra).convert_to<unsigned>();
            b = numerator(rb).convert_to<unsigned>();
            break;
        }
    }
    if (f == 0) throw std::invalid_argument("time_share: no subfile split with N*f <= 64 realizes alpha");

    Scheme out;
    out.params = {K, N, f};
    out.provenance = "timeshare(" + s1.provenance + "," + s2.provenance + ",alpha=" + to_string(alpha) + ")";

    // subfile u of segment scheme (subpack fs) expands to `reps` combined
    // subfiles starting at `offset` within each file block
    auto expand = [&](const BitMatrix& m, unsigned fs, unsigned reps, unsigned offset) {
        std::vector<std::uint64_t> rows;
        for (std::size_t r = 0; r < m.rows(); ++r) {
            for (unsigned t = 0; t < reps; ++t) {
                std::uint64_t row = 0;
                for (unsigned n = 0; n < N; ++n)
                    for (unsigned u = 0; u < fs; ++u)
                        if (m.get(r, std::size_t(n) * fs + u))
                            row ^= std::uint64_t(1) << out.params.symbol(n, offset + u * reps + t);
                rows.push_back(row);
            }
        }
        return BitMatrix::from_rows(rows, out.params.width());
    };
    const unsigned offset2 = f1 * a;  // segment 2 starts after segment 1's subfiles

    for (unsigned i = 0; i < K; ++i) {
        std::vector<BitMatrix> opts;
        for (unsigned j1 = 0; j1 < s1.option_count(i); ++j1)
            for (unsigned j2 = 0; j2 < s2.option_count(i); ++j2)
                opts.push_back(stack(expand(s1.cache_options[i][j1], f1, a, 0),
                                     expand(s2.cache_options[i][j2], f2, b, offset2)));
        out.cache_options.push_back(std::move(opts));
    }

    for (std::uint64_t d = 0; d < out.demand_count(); ++d) {
        DemandVector dv = out.demand_at(d);
        for (std::uint64_t k = 0; k < out.key_count(); ++k) {
            KeyVector kv = out.key_at(k);
            KeyVector kv1(K), kv2(K);
            for (unsigned i = 0; i < K; ++i) {
                kv1[i] = kv[i] / s2.option_count(i);
                kv2[i] = kv[i] % s2.option_count(i);
            }
            const auto& cell1 = s1.transmissions.at({s1.demand_index(dv), s1.key_index(kv1)});
            const auto& cell2 = s2.transmissions.at({s2.demand_index(dv), s2.key_index(kv2)});
            std::vector<BitMatrix> cell;
            for (const BitMatrix& m1 : cell1)
                for (const BitMatrix& m2 : cell2)
                    cell.push_back(stack(expand(m1, f1, a, 0), expand(m2, f2, b, offset2)));
            out.transmissions[{d, k}] = std::move(cell);
        }
    }
    return out;
}

namespace detail {

// ordered (len)-selections without replacement from `pool`, lexicographic
inline void ordered_selections(const std::vector<unsigned>& pool, unsigned len,
                               std::vector<unsigned>& cur, std::vector<bool>& used,
                               std::vector<std::vector<unsigned>>& out) {
    if (cur.size() == len) {
        out.push_back(cur);
        return;
    }
    for (std::size_t i = 0; i < pool.size(); ++i) {
        if (used[i]) continue;
        used[i] = true;
        cur.push_back(pool[i]);
        ordered_selections(pool, len, cur, used, out);
        cur.pop_back();
        used[i] = false;
    }
}

}  // namespace detail

// Partially private scheme: user k draws one of L caches; the unassigned
// options are served decoy demands drawn without replacement from the other
// files. Decoy randomness is materialized as exhaustive auxiliary branches.
inline Scheme build_partial_private(const Scheme& np, unsigned L) {
    const unsigned N = np.params.files;
    if (L < 2 || L > N) throw std::invalid_argument("build_partial_private: need 2 <= L <= N");
    if (np.params.users % L != 0)
        throw std::invalid_argument("build_partial_private: user count must be a multiple of L");
    const unsigned K = np.params.users / L;
    for (unsigned i = 0; i < np.params.users; ++i)
        if (np.option_count(i) != 1)
            throw std::invalid_argument("build_partial_private: source scheme must be deterministic");

    Scheme s;
    s.params = {K, N, np.params.subpack};
    s.provenance = "partial(" + np.provenance + ",L=" + std::to_string(L) + ")";
    for (unsigned k = 0; k < K; ++k) {
        std::vector<BitMatrix> opts;
        for (unsigned r = 0; r < L; ++r) opts.push_back(np.cache_options[k * L + r][0]);
        s.cache_options.push_back(std::move(opts));
    }

    for (std::uint64_t d = 0; d < s.demand_count(); ++d) {
        DemandVector dv = s.demand_at(d);
        for (std::uint64_t k = 0; k < s.key_count(); ++k) {
            KeyVector kv = s.key_at(k);
            // per user, all ordered decoy assignments to its L-1 free slots
            std::vector<std::vector<std::vector<unsigned>>> per_user(K);
            for (unsigned u = 0; u < K; ++u) {
                std::vector<unsigned> pool;
                for (unsigned w = 0; w < N; ++w)
                    if (w != dv[u]) pool.push_back(w);
                std::vector<unsigned> cur;
                std::vector<bool> used(pool.size(), false);
                detail::ordered_selections(pool, L - 1, cur, used, per_user[u]);
            }
            std::vector<BitMatrix> branches;
            std::vector<std::size_t> pick(K, 0);
            while (true) {
                DemandVector ext(std::size_t(L) * K);
                for (unsigned u = 0; u < K; ++u) {
                    const auto& decoys = per_user[u][pick[u]];
                    std::size_t di = 0;
                    for (unsigned r = 0; r < L; ++r)
                        ext[u * L + r] = (r == kv[u]) ? dv[u] : decoys[di++];
                }
                branches.push_back(np.transmissions.at({np.demand_index(ext), 0})[0]);
                // next pick, user 0 most significant
                unsigned u = K;
                while (u > 0) {
                    if (++pick[u - 1] < per_user[u - 1].size()) break;
                    pick[u - 1] = 0;
                    --u;
                }
                if (u == 0) break;
            }
            s.transmissions[{d, k}] = std::move(branches);
        }
    }
    return s;
}

struct RatePoint {
    Rational memory;
    Rational rate;
    std::string label;
};

// The four constructive vertices of the (2,2) private trade-off region,
// each verified correct and exactly private before inclusion.
inline std::vector<RatePoint> tradeoff_curve() {
    std::vector<std::pair<Scheme, std::string>> schemes;
    schemes.emplace_back(build_trivial(2, 2, TrivialMode::EmptyCache), "broadcast");
    Scheme t1 = build_table1();
    schemes.emplace_back(dualize(t1), "dual-subpack3");
    schemes.emplace_back(t1, "subpack3");
    schemes.emplace_back(build_trivial(2, 2, TrivialMode::FullCache), "full-cache");

    std::vector<RatePoint> out;
    for (auto& [s, label] : schemes) {
        if (!verify_correctness(s).empty())
            throw std::logic_error("tradeoff_curve: vertex '" + label + "' fails correctness");
        if (!privacy_report(s).exact_private)
            throw std::logic_error("tradeoff_curve: vertex '" + label + "' is not exactly private");
        auto [m, r] = rate_and_memory(s);
        out.push_back({m, r, label});
    }
    return out;
}

// Subpacketization of the fully private vs the L-file-private construction
// from Maddah-Ali--Niesen base schemes.
inline std::pair<Int, Int> subpack_comparison(unsigned N, unsigned K, const Rational& M, unsigned L) {
    if (N < 1 || K < 1 || L < 1) throw std::invalid_argument("subpack_comparison: bad parameters");
    Rational t_full = Rational(Int(N) * K) * M / N;
    Rational t_part = Rational(Int(L) * K) * M / N;
    if (denominator(t_full) != 1 || denominator(t_part) != 1)
        throw std::invalid_argument("subpack_comparison: K'M/N must be integral for both K' = NK and LK");
    return {binomial(N * K, numerator(t_full).convert_to<unsigned>()),
            binomial(L * K, numerator(t_part).convert_to<unsigned>())};
}

}  // namespace dpcc
