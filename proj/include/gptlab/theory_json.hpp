#pragma once

// Theory JSON schema:
//   {"name": str, "sampled": bool,
//    "systems": [{"label": str, "dim": int}],
//    "pure_states":       {label: [[rational, ...], ...]},
//    "unit_effect":       {label: [rational, ...]},
//    "effect_generators": {label: [[rational, ...], ...]},
//    "measurements":      {label: [[[rational, ...], ...], ...]},
//    "reversible_group":  {label: [[[rational, ...], ...], ...]},
//    "composite_dims":    {"A*B": int}}
// Rationals are strings "p/q" or "p". "name" and "sampled" are optional.

#include <gptlab/theory.hpp>

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gptlab {

class SchemaError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

namespace json_detail {

using nlohmann::ordered_json;

inline ordered_json to_json(const RVector &v) {
    ordered_json a = ordered_json::array();
    for (const auto &c : v) {
        a.push_back(to_string(c));
    }
    return a;
}

inline ordered_json to_json(const RMatrix &m) {
    ordered_json a = ordered_json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        a.push_back(to_json(m.row(i)));
    }
    return a;
}

inline Rational rational_from(const ordered_json &j, const std::string &where) {
    try {
        if (j.is_string()) {
            return parse_rational(j.get<std::string>());
        }
        if (j.is_number_integer()) {
            return Rational(j.get<long long>());
        }
    } catch (const std::invalid_argument &e) {
        throw SchemaError(where + ": " + e.what());
    }
    throw SchemaError(where + ": expected a rational string");
}

inline const ordered_json &field(const ordered_json &j, const char *key, const std::string &where) {
    if (!j.is_object() || !j.contains(key)) {
        throw SchemaError(where + ": missing field '" + key + "'");
    }
    return j.at(key);
}

inline RVector vector_from(const ordered_json &j, std::size_t dim, const std::string &where) {
    if (!j.is_array()) {
        throw SchemaError(where + ": expected an array");
    }
    if (j.size() != dim) {
        throw SchemaError(where + ": expected " + std::to_string(dim) + " coordinates, got " +
                          std::to_string(j.size()));
    }
    RVector v(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        v[i] = rational_from(j[i], where + "[" + std::to_string(i) + "]");
    }
    return v;
}

inline RMatrix matrix_from(const ordered_json &j, std::size_t dim, const std::string &where) {
    if (!j.is_array() || j.size() != dim) {
        throw SchemaError(where + ": expected a " + std::to_string(dim) + "x" + std::to_string(dim) + " matrix");
    }
    RMatrix m(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
        RVector r = vector_from(j[i], dim, where + "[" + std::to_string(i) + "]");
        for (std::size_t c = 0; c < dim; ++c) {
            m(i, c) = r[c];
        }
    }
    return m;
}

inline const ordered_json *per_system(const ordered_json &root, const char *key, const std::string &label) {
    if (!root.contains(key)) {
        return nullptr;
    }
    const auto &obj = root.at(key);
    if (!obj.is_object()) {
        throw SchemaError(std::string(key) + ": expected an object keyed by system label");
    }
    auto it = obj.find(label);
    return it == obj.end() ? nullptr : &*it;
}

}  // namespace json_detail

inline nlohmann::ordered_json theory_to_json(const TheoryInstance &t) {
    using json_detail::ordered_json;
    using json_detail::to_json;
    ordered_json j;
    j["name"] = t.name;
    j["sampled"] = t.sampled;
    j["systems"] = ordered_json::array();
    for (const auto &s : t.systems) {
        j["systems"].push_back({{"label", s.label}, {"dim", s.dim}});
    }
    ordered_json pure = ordered_json::object(), unit = ordered_json::object(), gens = ordered_json::object(),
                 meas = ordered_json::object(), group = ordered_json::object(), comp = ordered_json::object();
    for (const auto &s : t.systems) {
        auto &p = pure[s.label] = ordered_json::array();
        for (const auto &st : t.pure(s.label)) {
            p.push_back(to_json(st.vec));
        }
        if (t.unit_effect.count(s.label)) {
            unit[s.label] = to_json(t.unit(s.label).vec);
        }
        auto &g = gens[s.label] = ordered_json::array();
        for (const auto &e : t.generators(s.label)) {
            g.push_back(to_json(e.vec));
        }
        auto &m = meas[s.label] = ordered_json::array();
        for (const auto &mm : t.measurements_on(s.label)) {
            ordered_json effects = ordered_json::array();
            for (const auto &e : mm.effects) {
                effects.push_back(to_json(e.vec));
            }
            m.push_back(std::move(effects));
        }
        auto &gr = group[s.label] = ordered_json::array();
        for (const auto &tr : t.group(s.label)) {
            gr.push_back(to_json(tr.matrix));
        }
    }
    for (const auto &[k, d] : t.composite_dims) {
        comp[k] = d;
    }
    j["pure_states"] = std::move(pure);
    j["unit_effect"] = std::move(unit);
    j["effect_generators"] = std::move(gens);
    j["measurements"] = std::move(meas);
    j["reversible_group"] = std::move(group);
    j["composite_dims"] = std::move(comp);
    return j;
}

/// Parses the schema. Structural problems throw SchemaError; the result is
/// not validated, pass it through checked() for the theory invariants.
inline TheoryInstance theory_from_json(const nlohmann::ordered_json &j) {
    using namespace json_detail;
    if (!j.is_object()) {
        throw SchemaError("theory: expected a JSON object");
    }
    TheoryInstance t;
    t.name = j.value("name", std::string("custom"));
    if (j.contains("sampled")) {
        if (!j.at("sampled").is_boolean()) {
            throw SchemaError("sampled: expected a boolean");
        }
        t.sampled = j.at("sampled").get<bool>();
    }
    const auto &systems = field(j, "systems", "theory");
    if (!systems.is_array() || systems.empty()) {
        throw SchemaError("systems: expected a non-empty array");
    }
    for (const auto &s : systems) {
        const auto &label = field(s, "label", "systems[]");
        const auto &dim = field(s, "dim", "systems[]");
        if (!label.is_string() || !dim.is_number_unsigned() || dim.get<std::size_t>() == 0) {
            throw SchemaError("systems[]: label must be a string and dim a positive integer");
        }
        t.systems.push_back({label.get<std::string>(), dim.get<std::size_t>()});
    }
    for (const auto &sys : t.systems) {
        const std::string &l = sys.label;
        if (const auto *p = per_system(j, "pure_states", l)) {
            if (!p->is_array()) {
                throw SchemaError("pure_states." + l + ": expected an array");
            }
            for (std::size_t i = 0; i < p->size(); ++i) {
                t.pure_states[l].emplace_back(sys, vector_from((*p)[i], sys.dim, "pure_states." + l));
            }
        }
        const auto *u = per_system(j, "unit_effect", l);
        if (!u) {
            throw SchemaError("unit_effect: missing entry for system '" + l + "'");
        }
        t.unit_effect.emplace(l, Effect(sys, vector_from(*u, sys.dim, "unit_effect." + l)));
        if (const auto *g = per_system(j, "effect_generators", l)) {
            if (!g->is_array()) {
                throw SchemaError("effect_generators." + l + ": expected an array");
            }
            for (const auto &e : *g) {
                t.effect_generators[l].emplace_back(sys, vector_from(e, sys.dim, "effect_generators." + l));
            }
        }
        if (const auto *m = per_system(j, "measurements", l)) {
            if (!m->is_array()) {
                throw SchemaError("measurements." + l + ": expected an array");
            }
            for (const auto &mm : *m) {
                if (!mm.is_array() || mm.empty()) {
                    throw SchemaError("measurements." + l + ": each measurement is a non-empty array of effects");
                }
                Measurement meas;
                for (const auto &e : mm) {
                    meas.effects.emplace_back(sys, vector_from(e, sys.dim, "measurements." + l));
                }
                t.measurements[l].push_back(std::move(meas));
            }
        }
        if (const auto *g = per_system(j, "reversible_group", l)) {
            if (!g->is_array()) {
                throw SchemaError("reversible_group." + l + ": expected an array");
            }
            for (const auto &m : *g) {
                t.reversible_group[l].push_back({sys, sys, matrix_from(m, sys.dim, "reversible_group." + l), true});
            }
        }
    }
    if (j.contains("composite_dims")) {
        const auto &c = j.at("composite_dims");
        if (!c.is_object()) {
            throw SchemaError("composite_dims: expected an object");
        }
        for (const auto &[k, v] : c.items()) {
            if (!v.is_number_unsigned()) {
                throw SchemaError("composite_dims." + k + ": expected a positive integer");
            }
            t.composite_dims[k] = v.get<std::size_t>();
        }
    }
    return t;
}

}  // namespace gptlab
