#ifndef TORIC_MODEL_HPP
#define TORIC_MODEL_HPP

// JSON model files: exponent set plus optional labels, moment weights,
// control scheme and affine chart generators.
//
//   {
//     "name": "pillow",
//     "n": 2,
//     "exponents": [[1,0],[-1,0],[0,1],[0,-1],[0,0]],
//     "labels": ["a", ...],                       optional
//     "weights": [1, "2", "1/3"],                 optional, positive
//     "projection": [["1","1","0","0"], ...],     optional raw p_i
//     "control_points": [{"weight": "2", "point": ["1/2", 0, 1]}, ...],
//     "variables": ["w","x","y","z"],             optional target names
//     "charts": [{"name": "cone", "generators": [[1,-1],[1,1],[1,0]]}]
//   }
//
// Integers beyond JSON's safe range go in decimal strings; rationals are
// "p/q" strings (decimal strings such as "0.25" are also accepted).

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "toric/arith.hpp"
#include "toric/error.hpp"
#include "toric/lattice.hpp"
#include "toric/patch.hpp"

namespace toric {

struct ChartSpec {
    std::string name;
    std::vector<Exponent> generators;
};

struct ModelFile {
    std::string name;
    ExponentSet exponents;
    std::vector<std::string> labels;
    RatVector weights;
    std::optional<ControlScheme> control;
    std::vector<std::string> variables;
    std::vector<ChartSpec> charts;

    /// The model's control scheme, or the identity projection when absent.
    ControlScheme scheme() const { return control ? *control : ControlScheme::identity(exponents.size()); }

    std::vector<double> weights_as_double() const {
        std::vector<double> w;
        for (const auto& q : weights) w.push_back(to_double(q));
        return w;
    }
};

namespace detail {

[[noreturn]] inline void model_error(const std::string& field, const std::string& what) {
    throw Error(ErrorKind::InvalidInput, "model field '" + field + "': " + what);
}

inline std::int64_t json_int64(const nlohmann::json& j, const std::string& field) {
    if (j.is_number_unsigned() && j.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX))
        model_error(field, "integer does not fit in 64 bits");
    if (j.is_number_integer()) return j.get<std::int64_t>();
    if (j.is_string()) {
        try {
            return to_int64(parse_integer(j.get<std::string>()));
        } catch (const Error& e) {
            model_error(field, e.what());
        }
    }
    model_error(field, "expected an integer");
}

inline Rational json_rational(const nlohmann::json& j, const std::string& field) {
    try {
        if (j.is_number_unsigned()) return Rational(Integer(j.get<std::uint64_t>()));
        if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
        if (j.is_number_float()) return parse_rational(j.dump());
        if (j.is_string()) return parse_rational(j.get<std::string>());
    } catch (const Error& e) {
        model_error(field, e.what());
    }
    model_error(field, "expected a number or a \"p/q\" string");
}

inline RatVector json_rat_vector(const nlohmann::json& j, const std::string& field) {
    if (!j.is_array()) model_error(field, "expected an array");
    RatVector out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(json_rational(j[i], field + "[" + std::to_string(i) + "]"));
    return out;
}

inline Exponent json_exponent(const nlohmann::json& j, const std::string& field) {
    if (!j.is_array()) model_error(field, "expected an array of integers");
    Exponent out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(json_int64(j[i], field + "[" + std::to_string(i) + "]"));
    return out;
}

} // namespace detail

inline ModelFile parse_model(const nlohmann::json& doc) {
    using detail::model_error;
    if (!doc.is_object()) model_error("$", "model must be a JSON object");
    ModelFile m;
    if (doc.contains("name")) {
        if (!doc["name"].is_string()) model_error("name", "expected a string");
        m.name = doc["name"].get<std::string>();
    }
    if (!doc.contains("n")) model_error("n", "missing");
    std::int64_t n = detail::json_int64(doc["n"], "n");
    if (n < 1) model_error("n", "must be positive");
    if (!doc.contains("exponents")) model_error("exponents", "missing");
    const auto& ex = doc["exponents"];
    if (!ex.is_array() || ex.empty()) model_error("exponents", "must be a nonempty array");
    std::vector<Exponent> vecs;
    for (std::size_t i = 0; i < ex.size(); ++i) {
        std::string field = "exponents[" + std::to_string(i) + "]";
        Exponent e = detail::json_exponent(ex[i], field);
        if (e.size() != static_cast<std::size_t>(n))
            model_error(field, "has " + std::to_string(e.size()) + " entries, expected n = " + std::to_string(n));
        for (std::size_t j = 0; j < i; ++j)
            if (vecs[j] == e) model_error(field, "duplicates exponents[" + std::to_string(j) + "]");
        vecs.push_back(std::move(e));
    }
    m.exponents = ExponentSet(static_cast<std::size_t>(n), std::move(vecs));
    const std::size_t count = m.exponents.size();

    if (doc.contains("labels")) {
        const auto& l = doc["labels"];
        if (!l.is_array() || l.size() != count) model_error("labels", "expected " + std::to_string(count) + " strings");
        for (std::size_t i = 0; i < l.size(); ++i) {
            if (!l[i].is_string()) model_error("labels[" + std::to_string(i) + "]", "expected a string");
            m.labels.push_back(l[i].get<std::string>());
        }
    }
    if (doc.contains("weights")) {
        m.weights = detail::json_rat_vector(doc["weights"], "weights");
        if (m.weights.size() != count) model_error("weights", "expected " + std::to_string(count) + " entries");
        for (std::size_t i = 0; i < count; ++i)
            if (m.weights[i] <= 0) model_error("weights[" + std::to_string(i) + "]", "must be positive");
    }
    if (doc.contains("projection") && doc.contains("control_points"))
        model_error("projection", "give either 'projection' or 'control_points', not both");
    if (doc.contains("projection")) {
        const auto& p = doc["projection"];
        if (!p.is_array() || p.size() != count)
            model_error("projection", "expected " + std::to_string(count) + " vectors, one per exponent");
        std::vector<RatVector> pts;
        for (std::size_t i = 0; i < count; ++i) {
            std::string field = "projection[" + std::to_string(i) + "]";
            pts.push_back(detail::json_rat_vector(p[i], field));
            if (pts.back().size() != pts.front().size()) model_error(field, "length differs from projection[0]");
        }
        try {
            m.control = ControlScheme(std::move(pts));
        } catch (const Error& e) {
            model_error("projection", e.what());
        }
    }
    if (doc.contains("control_points")) {
        const auto& cp = doc["control_points"];
        if (!cp.is_array() || cp.size() != count)
            model_error("control_points", "expected " + std::to_string(count) + " entries, one per exponent");
        RatVector w;
        std::vector<RatVector> pts;
        for (std::size_t i = 0; i < count; ++i) {
            std::string field = "control_points[" + std::to_string(i) + "]";
            if (!cp[i].is_object() || !cp[i].contains("point")) model_error(field, "expected {\"weight\", \"point\"}");
            Rational wi = cp[i].contains("weight") ? detail::json_rational(cp[i]["weight"], field + ".weight") : Rational(1);
            if (wi <= 0) model_error(field + ".weight", "must be positive");
            w.push_back(wi);
            pts.push_back(detail::json_rat_vector(cp[i]["point"], field + ".point"));
            if (pts.back().size() != pts.front().size()) model_error(field + ".point", "length differs from entry 0");
        }
        m.control = ControlScheme::from_weighted(w, pts);
    }
    if (doc.contains("variables")) {
        const auto& v = doc["variables"];
        if (!v.is_array()) model_error("variables", "expected an array of strings");
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (!v[i].is_string()) model_error("variables[" + std::to_string(i) + "]", "expected a string");
            m.variables.push_back(v[i].get<std::string>());
        }
        std::size_t expected = m.scheme().target_dim() + 1;
        if (m.variables.size() != expected)
            model_error("variables", "expected " + std::to_string(expected) + " names for the target coordinates");
    }
    if (doc.contains("charts")) {
        const auto& cs = doc["charts"];
        if (!cs.is_array()) model_error("charts", "expected an array");
        for (std::size_t i = 0; i < cs.size(); ++i) {
            std::string field = "charts[" + std::to_string(i) + "]";
            if (!cs[i].is_object() || !cs[i].contains("generators"))
                model_error(field, "expected {\"name\", \"generators\"}");
            ChartSpec c;
            c.name = cs[i].value("name", "chart" + std::to_string(i));
            const auto& g = cs[i]["generators"];
            if (!g.is_array() || g.empty()) model_error(field + ".generators", "must be a nonempty array");
            for (std::size_t j = 0; j < g.size(); ++j) {
                std::string gf = field + ".generators[" + std::to_string(j) + "]";
                c.generators.push_back(detail::json_exponent(g[j], gf));
                if (c.generators.back().size() != static_cast<std::size_t>(n)) model_error(gf, "expected n entries");
            }
            m.charts.push_back(std::move(c));
        }
    }
    return m;
}

inline ModelFile load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Io, "cannot open model file '" + path + "'");
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorKind::InvalidInput, "model file '" + path + "' is not valid JSON: " + e.what());
    }
    return parse_model(doc);
}

} // namespace toric

#endif // TORIC_MODEL_HPP
