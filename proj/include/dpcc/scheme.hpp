#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dpcc/bitmatrix.hpp"

namespace dpcc {

struct SchemeParams {
    unsigned users = 0;    // K
    unsigned files = 0;    // N
    unsigned subpack = 0;  // f, subfiles per file

    std::size_t width() const { return std::size_t(files) * subpack; }

    // column index of subfile s of file n
    std::size_t symbol(unsigned file, unsigned sub) const {
        return std::size_t(file) * subpack + sub;
    }

    void validate() const {
        if (users < 1 || files < 1 || subpack < 1)
            throw std::invalid_argument("scheme params must be positive");
        if (width() > 64)
            throw std::invalid_argument("symbol space width N*f exceeds 64");
    }
};

using DemandVector = std::vector<unsigned>;  // length K, entries in [N]
using KeyVector = std::vector<unsigned>;     // length K, entry i in [L_i]

// cell key: demand index base-N (user 0 most significant), key index
// mixed-radix over per-user option counts
using CellKey = std::pair<std::uint64_t, std::uint64_t>;

// Complete description of a (possibly randomized) caching scheme.
// Each transmission cell carries one matrix per auxiliary branch;
// deterministic schemes have a single branch everywhere.
struct Scheme {
    SchemeParams params;
    std::vector<std::vector<BitMatrix>> cache_options;      // [user][option]
    std::map<CellKey, std::vector<BitMatrix>> transmissions;
    std::string provenance;

    unsigned option_count(unsigned user) const {
        return static_cast<unsigned>(cache_options.at(user).size());
    }

    std::uint64_t demand_count() const {
        std::uint64_t n = 1;
        for (unsigned i = 0; i < params.users; ++i) n *= params.files;
        return n;
    }

    std::uint64_t key_count() const {
        std::uint64_t n = 1;
        for (unsigned i = 0; i < params.users; ++i) n *= option_count(i);
        return n;
    }

    std::uint64_t demand_index(const DemandVector& d) const {
        if (d.size() != params.users) throw std::invalid_argument("demand vector length mismatch");
        std::uint64_t idx = 0;
        for (unsigned i = 0; i < params.users; ++i) {
            if (d[i] >= params.files) throw std::out_of_range("demand out of range");
            idx = idx * params.files + d[i];
        }
        return idx;
    }

    DemandVector demand_at(std::uint64_t idx) const {
        DemandVector d(params.users);
        for (unsigned i = params.users; i-- > 0;) {
            d[i] = static_cast<unsigned>(idx % params.files);
            idx /= params.files;
        }
        return d;
    }

    std::uint64_t key_index(const KeyVector& k) const {
        if (k.size() != params.users) throw std::invalid_argument("key vector length mismatch");
        std::uint64_t idx = 0;
        for (unsigned i = 0; i < params.users; ++i) {
            if (k[i] >= option_count(i)) throw std::out_of_range("key out of range");
            idx = idx * option_count(i) + k[i];
        }
        return idx;
    }

    KeyVector key_at(std::uint64_t idx) const {
        KeyVector k(params.users);
        for (unsigned i = params.users; i-- > 0;) {
            k[i] = static_cast<unsigned>(idx % option_count(i));
            idx /= option_count(i);
        }
        return k;
    }

    const std::vector<BitMatrix>& cell(const DemandVector& d, const KeyVector& k) const {
        auto it = transmissions.find({demand_index(d), key_index(k)});
        if (it == transmissions.end()) throw std::out_of_range("transmission cell missing");
        return it->second;
    }

    friend bool operator==(const Scheme& a, const Scheme& b) {
        return a.params.users == b.params.users && a.params.files == b.params.files &&
               a.params.subpack == b.params.subpack && a.cache_options == b.cache_options &&
               a.transmissions == b.transmissions && a.provenance == b.provenance;
    }
};

}  // namespace dpcc
