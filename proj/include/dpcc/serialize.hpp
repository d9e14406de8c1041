#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "dpcc/scheme.hpp"
#include "dpcc/verify.hpp"

namespace dpcc {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline char radix_digit(unsigned v) {
    static const char* digits = "0123456789abcdefghijklmnopqrstuvwxyz";
    if (v >= 36) throw ParseError("radix digit out of range (max 36 symbols per position)");
    return digits[v];
}

inline unsigned radix_value(char c) {
    if (c >= '0' && c <= '9') return unsigned(c - '0');
    if (c >= 'a' && c <= 'z') return unsigned(c - 'a') + 10;
    throw ParseError(std::string("invalid digit '") + c + "' in transmission key");
}

inline std::string cell_label(const Scheme& s, std::uint64_t d, std::uint64_t k) {
    DemandVector dv = s.demand_at(d);
    KeyVector kv = s.key_at(k);
    std::string out;
    for (unsigned v : dv) out += radix_digit(v);
    out += ';';
    for (unsigned v : kv) out += radix_digit(v);
    return out;
}

}  // namespace detail

inline nlohmann::json to_json(const Scheme& s) {
    nlohmann::json j;
    j["users"] = s.params.users;
    j["files"] = s.params.files;
    j["subpack"] = s.params.subpack;
    if (!s.provenance.empty()) j["provenance"] = s.provenance;
    nlohmann::json opts = nlohmann::json::array();
    for (const auto& user_opts : s.cache_options) {
        nlohmann::json per_user = nlohmann::json::array();
        for (const BitMatrix& m : user_opts) per_user.push_back(m.to_strings());
        opts.push_back(std::move(per_user));
    }
    j["cache_options"] = std::move(opts);

    std::size_t branches = s.transmissions.empty() ? 1 : s.transmissions.begin()->second.size();
    if (branches > 1) j["aux_branches"] = branches;
    nlohmann::json tx = nlohmann::json::object();
    for (const auto& [key, cell] : s.transmissions) {
        std::string label = detail::cell_label(s, key.first, key.second);
        if (branches > 1) {
            nlohmann::json arr = nlohmann::json::array();
            for (const BitMatrix& m : cell) arr.push_back(m.to_strings());
            tx[label] = std::move(arr);
        } else {
            tx[label] = cell.at(0).to_strings();
        }
    }
    j["transmissions"] = std::move(tx);
    return j;
}

inline std::string serialize_scheme(const Scheme& s) { return to_json(s).dump(2) + "\n"; }

inline Scheme scheme_from_json(const nlohmann::json& j) {
    Scheme s;
    try {
        s.params.users = j.at("users").get<unsigned>();
        s.params.files = j.at("files").get<unsigned>();
        s.params.subpack = j.at("subpack").get<unsigned>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("scheme header: ") + e.what());
    }
    try {
        s.params.validate();
    } catch (const std::exception& e) {
        throw ParseError(std::string("scheme header: ") + e.what());
    }
    if (j.contains("provenance")) s.provenance = j.at("provenance").get<std::string>();

    const std::size_t width = s.params.width();
    auto parse_matrix = [&](const nlohmann::json& rows, const std::string& where) -> BitMatrix {
        if (!rows.is_array()) throw ParseError(where + ": expected an array of bit strings");
        std::vector<std::string> strs;
        for (const auto& r : rows) {
            if (!r.is_string()) throw ParseError(where + ": row is not a string");
            strs.push_back(r.get<std::string>());
        }
        try {
            return BitMatrix::from_strings(strs, width);
        } catch (const std::exception& e) {
            throw ParseError(where + ": " + e.what());
        }
    };

    const auto& opts = j.at("cache_options");
    if (!opts.is_array() || opts.size() != s.params.users)
        throw ParseError("cache_options: expected one option list per user");
    for (std::size_t i = 0; i < opts.size(); ++i) {
        std::vector<BitMatrix> per_user;
        if (!opts[i].is_array() || opts[i].empty())
            throw ParseError("cache_options[" + std::to_string(i) + "]: expected a non-empty array");
        for (std::size_t k = 0; k < opts[i].size(); ++k)
            per_user.push_back(parse_matrix(
                opts[i][k], "cache_options[" + std::to_string(i) + "][" + std::to_string(k) + "]"));
        s.cache_options.push_back(std::move(per_user));
    }

    std::size_t branches = 1;
    if (j.contains("aux_branches")) {
        branches = j.at("aux_branches").get<std::size_t>();
        if (branches < 2) throw ParseError("aux_branches must be >= 2 when present");
    }
    const auto& tx = j.at("transmissions");
    if (!tx.is_object()) throw ParseError("transmissions: expected an object");
    for (auto it = tx.begin(); it != tx.end(); ++it) {
        const std::string& label = it.key();
        auto semi = label.find(';');
        if (semi == std::string::npos || semi != s.params.users ||
            label.size() != 2 * std::size_t(s.params.users) + 1)
            throw ParseError("transmissions: bad cell label '" + label + "'");
        DemandVector dv;
        KeyVector kv;
        for (unsigned i = 0; i < s.params.users; ++i) dv.push_back(detail::radix_value(label[i]));
        for (unsigned i = 0; i < s.params.users; ++i)
            kv.push_back(detail::radix_value(label[semi + 1 + i]));
        std::uint64_t d, k;
        try {
            d = s.demand_index(dv);
            k = s.key_index(kv);
        } catch (const std::exception& e) {
            throw ParseError("transmissions: cell '" + label + "': " + e.what());
        }
        std::vector<BitMatrix> cell;
        if (branches > 1) {
            if (!it.value().is_array() || it.value().size() != branches)
                throw ParseError("transmissions: cell '" + label + "': expected " +
                                 std::to_string(branches) + " branches");
            for (std::size_t b = 0; b < branches; ++b)
                cell.push_back(parse_matrix(it.value()[b],
                                            "transmissions['" + label + "'][" + std::to_string(b) + "]"));
        } else {
            cell.push_back(parse_matrix(it.value(), "transmissions['" + label + "']"));
        }
        if (!s.transmissions.emplace(CellKey{d, k}, std::move(cell)).second)
            throw ParseError("transmissions: duplicate cell '" + label + "'");
    }

    std::vector<Violation> shape = validate_shape(s);
    if (!shape.empty())
        throw ParseError("shape-error: " + shape[0].detail);
    return s;
}

inline Scheme deserialize_scheme(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    return scheme_from_json(j);
}

}  // namespace dpcc
