#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "dpcc/bitmatrix.hpp"
#include "dpcc/rational.hpp"
#include "dpcc/scheme.hpp"

namespace dpcc {

struct Violation {
    enum class Kind { DecodeFailure, PrivacyLeak, ShapeError };
    Kind kind;
    unsigned user = 0;
    std::uint64_t demand = 0;
    std::uint64_t keys = 0;
    std::size_t branch = 0;
    std::string detail;
};

inline const char* to_string(Violation::Kind k) {
    switch (k) {
        case Violation::Kind::DecodeFailure: return "decode-failure";
        case Violation::Kind::PrivacyLeak: return "privacy-leak";
        case Violation::Kind::ShapeError: return "shape-error";
    }
    return "?";
}

struct EnumerationCapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// True iff every subfile of `file` lies in the row span of cache and tx
// combined.
inline bool decodes(const BitMatrix& cache, const BitMatrix& tx, unsigned file,
                    const SchemeParams& params) {
    if (cache.cols() != params.width() || tx.cols() != params.width())
        throw std::invalid_argument("decodes: matrix width does not match N*f");
    if (file >= params.files) throw std::out_of_range("decodes: file index out of range");
    auto basis = detail::echelon_basis(stack(cache, tx));
    for (unsigned s = 0; s < params.subpack; ++s) {
        std::uint64_t unit = std::uint64_t(1) << params.symbol(file, s);
        if (!detail::reduces_to_zero(unit, basis)) return false;
    }
    return true;
}

inline std::vector<Violation> validate_shape(const Scheme& s) {
    std::vector<Violation> out;
    auto shape = [&](std::string msg) {
        out.push_back({Violation::Kind::ShapeError, 0, 0, 0, 0, std::move(msg)});
    };
    try {
        s.params.validate();
    } catch (const std::exception& e) {
        shape(e.what());
        return out;
    }
    if (s.cache_options.size() != s.params.users) {
        shape("cache option sets for " + std::to_string(s.cache_options.size()) + " users, expected " +
              std::to_string(s.params.users));
        return out;
    }
    for (unsigned i = 0; i < s.params.users; ++i) {
        const auto& opts = s.cache_options[i];
        if (opts.empty()) {
            shape("user " + std::to_string(i) + " has no cache options");
            continue;
        }
        for (std::size_t k = 0; k < opts.size(); ++k) {
            if (opts[k].cols() != s.params.width())
                shape("user " + std::to_string(i) + " option " + std::to_string(k) + " width mismatch");
            else if (opts[k].rows() != opts[0].rows())
                shape("user " + std::to_string(i) + " option " + std::to_string(k) +
                      " row count differs from option 0");
            else if (rank(opts[k]) != opts[k].rows())
                shape("user " + std::to_string(i) + " option " + std::to_string(k) +
                      " is not full row rank");
        }
    }
    if (!out.empty()) return out;

    const std::uint64_t demands = s.demand_count();
    const std::uint64_t keysets = s.key_count();
    std::size_t branch_count = 0;
    std::size_t tx_rows = 0;
    bool first = true;
    for (std::uint64_t d = 0; d < demands; ++d) {
        for (std::uint64_t k = 0; k < keysets; ++k) {
            auto it = s.transmissions.find({d, k});
            if (it == s.transmissions.end() || it->second.empty()) {
                out.push_back({Violation::Kind::ShapeError, 0, d, k, 0, "transmission cell missing"});
                continue;
            }
            for (std::size_t b = 0; b < it->second.size(); ++b) {
                const BitMatrix& m = it->second[b];
                if (m.cols() != s.params.width())
                    out.push_back({Violation::Kind::ShapeError, 0, d, k, b, "transmission width mismatch"});
                if (first) {
                    branch_count = it->second.size();
                    tx_rows = m.rows();
                    first = false;
                } else {
                    if (it->second.size() != branch_count)
                        out.push_back({Violation::Kind::ShapeError, 0, d, k, b,
                                       "auxiliary branch count differs across cells"});
                    if (m.rows() != tx_rows)
                        out.push_back({Violation::Kind::ShapeError, 0, d, k, b,
                                       "transmission row count differs across cells"});
                }
            }
        }
    }
    if (s.transmissions.size() > demands * keysets)
        out.push_back({Violation::Kind::ShapeError, 0, 0, 0, 0, "transmission table has extra cells"});
    return out;
}

// Every user decodes their demanded file in every cell and branch.
inline std::vector<Violation> verify_correctness(const Scheme& s) {
    std::vector<Violation> shape = validate_shape(s);
    if (!shape.empty()) return shape;
    std::vector<Violation> out;
    const std::uint64_t demands = s.demand_count();
    const std::uint64_t keysets = s.key_count();
    for (std::uint64_t d = 0; d < demands; ++d) {
        DemandVector dv = s.demand_at(d);
        for (std::uint64_t k = 0; k < keysets; ++k) {
            KeyVector kv = s.key_at(k);
            const auto& branches = s.transmissions.at({d, k});
            for (std::size_t b = 0; b < branches.size(); ++b) {
                for (unsigned i = 0; i < s.params.users; ++i) {
                    if (!decodes(s.cache_options[i][kv[i]], branches[b], dv[i], s.params))
                        out.push_back({Violation::Kind::DecodeFailure, i, d, k, b,
                                       "user cannot decode its demanded file"});
                }
            }
        }
    }
    return out;
}

// Local necessary condition for demand privacy: in every populated cell,
// every alternative file of every user must be decodable under some cache
// option of that user.
inline std::vector<Violation> weak_privacy_check(const Scheme& s) {
    std::vector<Violation> shape = validate_shape(s);
    if (!shape.empty()) return shape;
    std::vector<Violation> out;
    const std::uint64_t demands = s.demand_count();
    const std::uint64_t keysets = s.key_count();
    for (std::uint64_t d = 0; d < demands; ++d) {
        for (std::uint64_t k = 0; k < keysets; ++k) {
            const auto& branches = s.transmissions.at({d, k});
            for (std::size_t b = 0; b < branches.size(); ++b) {
                for (unsigned i = 0; i < s.params.users; ++i) {
                    for (unsigned w = 0; w < s.params.files; ++w) {
                        bool found = false;
                        for (unsigned opt = 0; opt < s.option_count(i) && !found; ++opt)
                            found = decodes(s.cache_options[i][opt], branches[b], w, s.params);
                        if (!found)
                            out.push_back({Violation::Kind::PrivacyLeak, i, d, k, b,
                                           "no cache option of user decodes file " + std::to_string(w)});
                    }
                }
            }
        }
    }
    return out;
}

struct PairDetail {
    unsigned observer = 0;  // user i holding the view
    unsigned peer = 0;      // user j whose demand is inferred
    bool posterior_uniform = false;
    std::size_t min_ambiguity = 0;
    std::size_t views = 0;
    Rational mi_bits = 0;    // valid when mi_exact
    bool mi_exact = false;
    double mi_bits_approx = 0.0;
};

struct PrivacyReport {
    bool exact_private = false;
    Rational max_mutual_info_bits = 0;
    bool mutual_info_exact = false;      // max_mutual_info_bits is an exact rational
    double max_mutual_info_bits_approx = 0.0;
    std::size_t min_ambiguity = 0;
    std::vector<PairDetail> per_pair;
    std::uint64_t scenarios = 0;
};

// Exact enumeration of the joint distribution of (demands, keys, auxiliary
// branch), all uniform and independent. The view of user i is its own key,
// its own demand, and the transmitted coefficient matrix.
inline PrivacyReport privacy_report(const Scheme& s, std::uint64_t cap = 10'000'000) {
    std::vector<Violation> shape = validate_shape(s);
    if (!shape.empty()) throw std::invalid_argument("privacy_report: malformed scheme: " + shape[0].detail);

    const unsigned K = s.params.users;
    const unsigned N = s.params.files;
    const std::uint64_t demands = s.demand_count();
    const std::uint64_t keysets = s.key_count();
    const std::size_t branches = s.transmissions.begin()->second.size();
    const std::uint64_t total = demands * keysets * branches;
    if (total > cap)
        throw EnumerationCapExceeded("privacy enumeration needs " + std::to_string(total) +
                                     " scenarios, cap is " + std::to_string(cap));

    using ViewKey = std::tuple<unsigned, unsigned, BitMatrix>;  // (key_i, d_i, tx)
    // per observer: view -> counts of peer demands, one table per ordered pair
    std::vector<std::vector<std::map<ViewKey, std::vector<std::uint64_t>>>> counts(
        K, std::vector<std::map<ViewKey, std::vector<std::uint64_t>>>(K));

    for (std::uint64_t d = 0; d < demands; ++d) {
        DemandVector dv = s.demand_at(d);
        for (std::uint64_t k = 0; k < keysets; ++k) {
            KeyVector kv = s.key_at(k);
            const auto& cell = s.transmissions.at({d, k});
            for (const BitMatrix& tx : cell) {
                for (unsigned i = 0; i < K; ++i) {
                    ViewKey view{kv[i], dv[i], tx};
                    for (unsigned j = 0; j < K; ++j) {
                        if (j == i) continue;
                        auto& tab = counts[i][j][view];
                        if (tab.empty()) tab.assign(N, 0);
                        tab[dv[j]]++;
                    }
                }
            }
        }
    }

    PrivacyReport rep;
    rep.scenarios = total;
    rep.exact_private = true;
    rep.mutual_info_exact = true;
    rep.min_ambiguity = N;
    for (unsigned i = 0; i < K; ++i) {
        for (unsigned j = 0; j < K; ++j) {
            if (j == i) continue;
            PairDetail pd;
            pd.observer = i;
            pd.peer = j;
            pd.posterior_uniform = true;
            pd.min_ambiguity = N;
            pd.mi_exact = true;
            pd.views = counts[i][j].size();
            for (const auto& [view, tab] : counts[i][j]) {
                std::uint64_t cv = 0;
                std::size_t support = 0;
                for (std::uint64_t c : tab) {
                    cv += c;
                    if (c > 0) ++support;
                }
                pd.min_ambiguity = std::min(pd.min_ambiguity, support);
                for (unsigned dj = 0; dj < N; ++dj) {
                    std::uint64_t c = tab[dj];
                    if (c == 0) continue;
                    if (c * N != cv) pd.posterior_uniform = false;
                    // term (c/T) * log2(N*c / cv); exact when N*c/cv is a
                    // power of two
                    Int num = Int(N) * c;
                    Int den = cv;
                    Int g = gcd(num, den);
                    num /= g;
                    den /= g;
                    pd.mi_bits_approx += double(c) / double(total) *
                                         std::log2(num.convert_to<double>() / den.convert_to<double>());
                    long exp2 = 0;
                    bool pow2 = false;
                    if (den == 1 && (num & (num - 1)) == 0) {
                        pow2 = true;
                        while (num > 1) { num >>= 1; ++exp2; }
                    } else if (num == 1 && (den & (den - 1)) == 0) {
                        pow2 = true;
                        while (den > 1) { den >>= 1; --exp2; }
                    }
                    if (pow2)
                        pd.mi_bits += Rational(Int(c) * exp2, Int(total));
                    else
                        pd.mi_exact = false;
                }
            }
            if (!pd.mi_exact) pd.mi_bits = 0;
            rep.exact_private = rep.exact_private && pd.posterior_uniform;
            rep.min_ambiguity = std::min(rep.min_ambiguity, pd.min_ambiguity);
            rep.mutual_info_exact = rep.mutual_info_exact && pd.mi_exact;
            if (pd.mi_exact && pd.mi_bits > rep.max_mutual_info_bits)
                rep.max_mutual_info_bits = pd.mi_bits;
            rep.max_mutual_info_bits_approx =
                std::max(rep.max_mutual_info_bits_approx, pd.mi_bits_approx);
            rep.per_pair.push_back(std::move(pd));
        }
    }
    if (!rep.mutual_info_exact) rep.max_mutual_info_bits = 0;
    if (rep.exact_private) {
        rep.max_mutual_info_bits = 0;
        rep.mutual_info_exact = true;
    }
    return rep;
}

// (M, R): cache rows / f and transmission rows / f, exact.
inline std::pair<Rational, Rational> rate_and_memory(const Scheme& s) {
    std::vector<Violation> shape = validate_shape(s);
    if (!shape.empty()) throw std::invalid_argument("rate_and_memory: malformed scheme: " + shape[0].detail);
    std::size_t cache_rows = s.cache_options[0][0].rows();
    for (unsigned i = 1; i < s.params.users; ++i)
        cache_rows = std::max(cache_rows, s.cache_options[i][0].rows());
    std::size_t tx_rows = s.transmissions.begin()->second[0].rows();
    return {Rational(Int(cache_rows), Int(s.params.subpack)), Rational(Int(tx_rows), Int(s.params.subpack))};
}

}  // namespace dpcc
