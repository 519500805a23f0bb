#pragma once

// JSON schemas:
//   lattice        {"rank": n, "gram": [[...], ...]}
//   Mukai vector   {"r": int, "c1": [int, ...], "a": int}
//   isometry word  [{"type": "translate", "N": [...]}, {"type": "reflect", "u": {...}},
//                   {"type": "ns_auto", "M": [[...]]}, {"type": "negate"}, {"type": "dual"}]
//   rational       {"num": int, "den": int}
// Integers too large for int64 are written as decimal strings.

#include "k3tk/errors.hpp"
#include "k3tk/isometry.hpp"
#include "k3tk/lattice.hpp"
#include "k3tk/numeric.hpp"
#include "k3tk/qseries.hpp"
#include "k3tk/rational.hpp"

#include <json.hpp>

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace k3tk {

using json = nlohmann::ordered_json;

namespace detail {

template <class T>
T get_field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw input_error(std::string("missing field \"") + key + "\"");
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw input_error(std::string("bad field \"") + key + "\": " + e.what());
    }
}

}  // namespace detail

inline json big_int_to_json(const big_int& x) {
    if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max()) {
        return x.convert_to<std::int64_t>();
    }
    return x.str();
}

inline big_int big_int_from_json(const json& j) {
    if (j.is_number_integer()) return big_int(j.get<std::int64_t>());
    if (j.is_string()) {
        try {
            return big_int(j.get<std::string>());
        } catch (const std::exception&) {
        }
    }
    throw input_error("expected an integer");
}

inline json rational_to_json(const rational& x) {
    return json{{"num", big_int_to_json(numerator_of(x))}, {"den", big_int_to_json(denominator_of(x))}};
}

inline rational rational_from_json(const json& j) {
    if (j.is_number_integer() || j.is_string()) return rational(big_int_from_json(j));
    if (!j.is_object() || !j.contains("num") || !j.contains("den")) throw input_error("expected {\"num\": ..., \"den\": ...}");
    const big_int den = big_int_from_json(j.at("den"));
    if (den == 0) throw input_error("zero denominator");
    return rational(big_int_from_json(j.at("num")), den);
}

inline json complex_to_json(complex z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

inline json lattice_to_json(const even_lattice& lattice) {
    return json{{"rank", lattice.rank()}, {"gram", lattice.gram()}};
}

inline even_lattice lattice_from_json(const json& j) {
    const auto gram = detail::get_field<std::vector<std::vector<std::int64_t>>>(j, "gram");
    if (j.contains("rank") && detail::get_field<std::size_t>(j, "rank") != gram.size()) {
        throw input_error("lattice \"rank\" does not match the Gram matrix");
    }
    return even_lattice(gram);
}

inline json vector_to_json(const mukai_vector& v) { return json{{"r", v.r}, {"c1", v.c1}, {"a", v.a}}; }

inline mukai_vector vector_from_json(const json& j) {
    return {detail::get_field<std::int64_t>(j, "r"), detail::get_field<coord_vector>(j, "c1"),
            detail::get_field<std::int64_t>(j, "a")};
}

inline json elem_to_json(const isometry_elem& g) {
    return std::visit(
        [](const auto& op) -> json {
            using T = std::decay_t<decltype(op)>;
            if constexpr (std::is_same_v<T, translate_op>) {
                return json{{"type", "translate"}, {"N", op.n}};
            } else if constexpr (std::is_same_v<T, reflect_op>) {
                return json{{"type", "reflect"}, {"u", vector_to_json(op.u)}};
            } else if constexpr (std::is_same_v<T, ns_auto_op>) {
                return json{{"type", "ns_auto"}, {"M", op.m}};
            } else if constexpr (std::is_same_v<T, negate_op>) {
                return json{{"type", "negate"}};
            } else {
                return json{{"type", "dual"}};
            }
        },
        g.value());
}

inline isometry_elem elem_from_json(const json& j, const even_lattice& lattice) {
    const auto type = detail::get_field<std::string>(j, "type");
    if (type == "translate") return isometry_elem::translate(detail::get_field<coord_vector>(j, "N"), lattice);
    if (type == "reflect") {
        if (!j.contains("u")) throw input_error("missing field \"u\"");
        return isometry_elem::reflect(vector_from_json(j.at("u")), lattice);
    }
    if (type == "ns_auto") {
        return isometry_elem::ns_auto(detail::get_field<std::vector<std::vector<std::int64_t>>>(j, "M"), lattice);
    }
    if (type == "negate") return isometry_elem::negate();
    if (type == "dual") return isometry_elem::dualize();
    throw input_error("unknown isometry type \"" + type + "\"");
}

inline json word_to_json(const isometry_word& word) {
    json out = json::array();
    for (const auto& g : word) out.push_back(elem_to_json(g));
    return out;
}

inline isometry_word word_from_json(const json& j, const even_lattice& lattice) {
    if (!j.is_array()) throw input_error("isometry word must be a JSON array");
    isometry_word word;
    for (const auto& e : j) word.push_back(elem_from_json(e, lattice));
    return word;
}

/// {"denom": D, "trunc": rational or null, "terms": [{"exponent": rational, "coeff": rational}, ...]}
inline json qseries_to_json(const qseries& s) {
    json terms = json::array();
    for (const auto& [k, c] : s.terms()) {
        terms.push_back(json{{"exponent", rational_to_json(s.exponent_of(k))}, {"coeff", rational_to_json(c)}});
    }
    return json{{"denom", s.denom()}, {"trunc", s.trunc() ? rational_to_json(*s.trunc()) : json(nullptr)}, {"terms", terms}};
}

}  // namespace k3tk
