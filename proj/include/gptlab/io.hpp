#pragma once

// JSON encodings of behaviors and reports, and the flat CSV view of a report.

#include <gptlab/advice.hpp>
#include <gptlab/boxworld.hpp>
#include <gptlab/commcc.hpp>
#include <gptlab/theory_json.hpp>

#include <json.hpp>

#include <string>

namespace gptlab {

/// {"n": int, "table": {"x-bits|a-bits": "p/q"}}, zero entries omitted.
inline nlohmann::ordered_json behavior_to_json(const Behavior &b) {
    nlohmann::ordered_json j;
    j["n"] = b.parties();
    auto &table = j["table"] = nlohmann::ordered_json::object();
    const unsigned n = b.parties();
    for (std::uint64_t x = 0; x < b.settings_count(); ++x) {
        for (std::uint64_t a = 0; a < b.settings_count(); ++a) {
            if (b(x, a) != 0) {
                table[bit_string(x, n) + "|" + bit_string(a, n)] = to_string(b(x, a));
            }
        }
    }
    return j;
}

inline Behavior behavior_from_json(const nlohmann::ordered_json &j) {
    if (!j.is_object() || !j.contains("n") || !j.at("n").is_number_unsigned() || !j.contains("table") ||
        !j.at("table").is_object()) {
        throw SchemaError("behavior: expected {\"n\": int, \"table\": {...}}");
    }
    const unsigned n = j.at("n").get<unsigned>();
    if (n == 0) {
        throw SchemaError("behavior: n must be positive");
    }
    require_parties(n);
    std::map<std::pair<std::uint64_t, std::uint64_t>, Rational> cells;
    for (const auto &[key, value] : j.at("table").items()) {
        const auto bar = key.find('|');
        if (bar != n || key.size() != 2 * n + 1) {
            throw SchemaError("behavior: key '" + key + "' is not of the form x-bits|a-bits");
        }
        try {
            cells[{parse_bit_string(key.substr(0, n)), parse_bit_string(key.substr(n + 1))}] =
                json_detail::rational_from(value, "behavior.table." + key);
        } catch (const std::invalid_argument &e) {
            throw SchemaError("behavior: key '" + key + "': " + e.what());
        }
    }
    return Behavior::from_function(n, [&](std::uint64_t x, std::uint64_t a) {
        auto it = cells.find({x, a});
        return it == cells.end() ? Rational(0) : it->second;
    });
}

inline nlohmann::ordered_json report_to_json(const VanDamReport &r) {
    nlohmann::ordered_json j;
    j["correct"] = r.correct;
    j["total"] = r.total;
    j["max_messages"] = r.max_messages;
    j["one_way_cc"] = r.one_way_cc;
    j["det_cc"] = r.det_cc ? nlohmann::ordered_json(*r.det_cc) : nlohmann::ordered_json(nullptr);
    return j;
}

inline nlohmann::ordered_json report_to_json(const SliceReport &r) {
    nlohmann::ordered_json j;
    j["n"] = r.n;
    j["agreement"] = r.agreement;
    j["total"] = r.total;
    j["gap"] = to_string(r.gap);
    j["advice_ports"] = r.advice_ports;
    return j;
}

/// Header line of top-level keys, then one line of values. Nested values are
/// written as compact JSON.
inline std::string flatten_csv(const nlohmann::ordered_json &j) {
    std::string header, values;
    bool first = true;
    for (const auto &[k, v] : j.items()) {
        if (!first) {
            header += ",";
            values += ",";
        }
        first = false;
        header += k;
        std::string cell = v.is_string() ? v.get<std::string>() : v.dump();
        if (cell.find_first_of(",\"\n") != std::string::npos) {
            std::string quoted = "\"";
            for (char c : cell) {
                quoted += c;
                if (c == '"') {
                    quoted += '"';
                }
            }
            cell = quoted + "\"";
        }
        values += cell;
    }
    return header + "\n" + values + "\n";
}

}  // namespace gptlab
