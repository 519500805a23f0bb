#pragma once

// Command-line front end. Every subcommand prints exactly one JSON document.
// Exit codes: 0 success, 2 bad input (with {"error": ...}), 1 internal failure.
//
// Arguments that take JSON accept either a file path or inline JSON text.

#include "k3tk/k3tk.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iterator>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace k3tk::cli {

inline json load_json(const std::string& arg) {
    std::string text;
    const auto first = arg.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) {
        text = arg;
    } else {
        std::ifstream in(arg);
        if (!in) throw input_error("cannot open " + arg);
        text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    }
    try {
        return json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw input_error(std::string("malformed JSON: ") + e.what());
    }
}

inline rational parse_rational(const std::string& text) {
    try {
        const auto slash = text.find('/');
        if (slash == std::string::npos) return rational(big_int(text));
        const big_int den(text.substr(slash + 1));
        if (den == 0) throw input_error("zero denominator");
        return rational(big_int(text.substr(0, slash)), den);
    } catch (const input_error&) {
        throw;
    } catch (const std::exception&) {
        throw input_error("not a rational number: " + text);
    }
}

inline std::vector<complex> parse_complex_vector(const std::vector<double>& interleaved, std::size_t rank) {
    if (interleaved.empty()) return std::vector<complex>(rank, complex(0.0, 0.0));
    if (interleaved.size() != 2 * rank) throw input_error("--x needs 2 * rank numbers (re, im interleaved)");
    std::vector<complex> out(rank);
    for (std::size_t i = 0; i < rank; ++i) out[i] = {interleaved[2 * i], interleaved[2 * i + 1]};
    return out;
}

inline splitting load_splitting(const std::string& arg, const even_lattice& lattice) {
    if (arg.empty()) return splitting::from_form(lattice);
    const json j = load_json(arg);
    auto to_matrix = [&](const char* key) {
        const auto rows = detail::get_field<std::vector<std::vector<double>>>(j, key);
        const auto n = static_cast<Eigen::Index>(rows.size());
        Eigen::MatrixXd m(n, n);
        for (Eigen::Index i = 0; i < n; ++i) {
            if (static_cast<Eigen::Index>(rows[static_cast<std::size_t>(i)].size()) != n) throw input_error("splitting matrix is not square");
            for (Eigen::Index k = 0; k < n; ++k) m(i, k) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
        }
        return m;
    };
    return splitting(to_matrix("pl"), to_matrix("pr"), lattice);
}

inline json evaluation_to_json(const evaluation& ev) {
    return json{{"value", complex_to_json(ev.value)}, {"tail", ev.tail}};
}

/// Runs one CLI invocation; `args` excludes the program name.
inline int dispatch(const std::vector<std::string>& args, std::ostream& out) {
    CLI::App app{"Exact computations with Mukai vectors and K3 partition functions", "k3tk"};
    app.require_subcommand(1);

    std::string surface_arg;
    auto surface_opt = [&](CLI::App* sub) { sub->add_option("--surface", surface_arg, "lattice JSON (default: Gram [2])"); };
    auto surface = [&]() { return surface_arg.empty() ? even_lattice::rank_one(2) : lattice_from_json(load_json(surface_arg)); };

    std::string x_arg, y_arg, v_arg, u_arg, n_arg, word_arg, alpha_arg, split_arg, method, order_arg;
    std::int64_t rank = 1, order_int = 0, l = 0, r = 0, s = 0, a = 0, bound = 500;
    std::vector<double> tau{0.0, 1.0}, x_coords;
    double radius = 4.0;
    bool lines = false;

    json result;

    auto* pair = app.add_subcommand("pair", "Mukai pairing <x, y>");
    surface_opt(pair);
    pair->add_option("--x", x_arg)->required();
    pair->add_option("--y", y_arg)->required();
    pair->callback([&] {
        const auto lat = surface();
        result = json{{"pairing", mukai_pairing(vector_from_json(load_json(x_arg)), vector_from_json(load_json(y_arg)), lat)}};
    });

    auto* dualize = app.add_subcommand("dualize", "v -> v^vee");
    surface_opt(dualize);
    dualize->add_option("--v", v_arg)->required();
    dualize->callback([&] {
        const auto v = vector_from_json(load_json(v_arg));
        surface().check_dim(v.c1.size());
        result = json{{"v", vector_to_json(dual(v))}};
    });

    auto* translate = app.add_subcommand("translate", "v -> ch(N) v");
    surface_opt(translate);
    translate->add_option("--N", n_arg, "JSON integer array")->required();
    translate->add_option("--v", v_arg)->required();
    translate->callback([&] {
        const auto lat = surface();
        const json nj = load_json(n_arg);
        coord_vector n;
        try {
            n = nj.get<coord_vector>();
        } catch (const nlohmann::json::exception&) {
            throw input_error("--N must be an integer array");
        }
        result = json{{"v", vector_to_json(apply_translate(n, vector_from_json(load_json(v_arg)), lat))}};
    });

    auto* reflect = app.add_subcommand("reflect", "v -> v + <v,u> u");
    surface_opt(reflect);
    reflect->add_option("--u", u_arg)->required();
    reflect->add_option("--v", v_arg)->required();
    reflect->callback([&] {
        const auto lat = surface();
        const auto u = vector_from_json(load_json(u_arg));
        const auto v = vector_from_json(load_json(v_arg));
        const auto targets = reflection_target(v, u, lat);
        result = json{{"v", vector_to_json(apply_reflect(u, v, lat))},
                      {"target", vector_to_json(targets.plain)},
                      {"target_dual", vector_to_json(targets.dual)}};
    });

    auto* word = app.add_subcommand("word", "apply an isometry word (right to left)");
    surface_opt(word);
    word->add_option("--word", word_arg)->required();
    word->add_option("--v", v_arg)->required();
    word->callback([&] {
        const auto lat = surface();
        const auto w = word_from_json(load_json(word_arg), lat);
        result = json{{"v", vector_to_json(apply_word(w, vector_from_json(load_json(v_arg)), lat))}};
    });

    auto* invariants = app.add_subcommand("invariants", "moduli invariants of a Mukai vector");
    surface_opt(invariants);
    invariants->add_option("--v", v_arg)->required();
    invariants->callback([&] {
        const auto lat = surface();
        const auto v = vector_from_json(load_json(v_arg));
        lat.check_dim(v.c1.size());
        if (v.r <= 0) throw precondition_error("Mukai vector must have positive rank");
        const auto cls = classify_case(v, lat);
        json j{{"v", vector_to_json(v)},
               {"square", square(v, lat)},
               {"ell", ell(v)},
               {"primitive", primitive(v)},
               {"case", cls.which == vector_case::a ? "A" : "B"},
               {"v0", cls.witness ? vector_to_json(*cls.witness) : json(nullptr)},
               {"exists_semistable", exists_semistable(v, lat)},
               {"chi_virtual", rational_to_json(chi_virtual(v, lat))}};
        if (primitive(v)) {
            const bool exists = exists_stable_primitive(v, lat);
            j["exists"] = exists;
            if (exists) {
                const auto nlf = classify_non_locally_free(v, lat);
                j["dim"] = moduli_dim(v, lat);
                j["hilb_index"] = hilb_index(v, lat);
                j["euler"] = big_int_to_json(euler_characteristic(v, lat));
                j["mu_stable"] = exists_mu_stable(v, lat);
                j["mu_stable_boundary_corner"] = mu_stable_boundary_corner(v, lat);
                j["non_locally_free"] = json{{"kind", to_string(nlf.kind)}, {"model", nlf.model}};
            }
        } else {
            j["exists"] = nullptr;
        }
        result = std::move(j);
    });

    auto* gottsche = app.add_subcommand("gottsche", "chi(X^[n]) for n < order");
    gottsche->add_option("--order", order_int)->required();
    gottsche->add_flag("--lines", lines, "print one coefficient per line instead of JSON");
    gottsche->callback([&] {
        const auto series = gottsche_series(order_int);
        json coeffs = json::array();
        for (const auto& [k, c] : series.terms()) coeffs.push_back(big_int_to_json(numerator_of(c)));
        result = json{{"coeffs", coeffs}};
    });

    auto* chiv = app.add_subcommand("chivirtual", "virtual Euler characteristic sum_{v=aw} chi(X^[<w^2>/2+1])/a^2");
    surface_opt(chiv);
    chiv->add_option("--v", v_arg)->required();
    chiv->callback([&] {
        const auto lat = surface();
        result = json{{"chi", rational_to_json(chi_virtual(vector_from_json(load_json(v_arg)), lat))}};
    });

    auto alpha_of = [&](const even_lattice& lat) {
        if (alpha_arg.empty()) return coord_vector(lat.rank(), 0);
        try {
            auto al = load_json(alpha_arg).get<coord_vector>();
            lat.check_dim(al.size());
            return al;
        } catch (const nlohmann::json::exception&) {
            throw input_error("--alpha must be an integer array");
        }
    };

    auto* zseries = app.add_subcommand("zseries", "PSU(r) partition function Z_r^alpha");
    surface_opt(zseries);
    zseries->add_option("--rank", rank)->required();
    zseries->add_option("--alpha", alpha_arg, "JSON integer array (default 0)");
    zseries->add_option("--order", order_arg, "truncation order (integer or p/q)")->required();
    zseries->add_option("--method", method)->check(CLI::IsMember({"direct", "hecke", "literal"}))->default_val("direct");
    zseries->callback([&] {
        const auto lat = surface();
        const auto al = alpha_of(lat);
        const rational ord = parse_rational(order_arg);
        if (method == "literal") {
            const auto ns = z_psu_hecke_literal(rank, al, ord, lat);
            json terms = json::array();
            for (const auto& [k, c] : ns.coeffs) {
                terms.push_back(json{{"exponent", rational_to_json(rational(big_int(k), big_int(ns.denom)))}, {"coeff", complex_to_json(c)}});
            }
            result = json{{"method", method}, {"denom", ns.denom}, {"trunc", rational_to_json(ns.trunc)}, {"terms", terms}};
        } else {
            const qseries z = method == "direct" ? z_psu_direct(rank, al, ord, lat) : z_psu_hecke(rank, al, ord, lat);
            result = qseries_to_json(z);
            result["method"] = method;
        }
    });

    auto* theta = app.add_subcommand("theta", "truncated Siegel-Narain theta function");
    surface_opt(theta);
    theta->add_option("--rank", rank);
    theta->add_option("--alpha", alpha_arg);
    theta->add_option("--tau", tau, "re im")->expected(2);
    theta->add_option("--x", x_coords, "re im pairs");
    theta->add_option("--splitting", split_arg, "JSON {\"pl\": [[...]], \"pr\": [[...]]} (default: eigenspaces of Q)");
    theta->add_option("--radius", radius);
    theta->callback([&] {
        const auto lat = surface();
        const auto th = theta_siegel_narain(lat, alpha_of(lat), rank, {tau[0], tau[1]}, load_splitting(split_arg, lat),
                                            parse_complex_vector(x_coords, lat.rank()), radius);
        result = json{{"value", complex_to_json(th.value)}, {"tail", th.tail}, {"points", th.points}};
    });

    auto* zfull = app.add_subcommand("zfull", "U(r) partition function Z_r(tau, x)");
    surface_opt(zfull);
    zfull->add_option("--rank", rank);
    zfull->add_option("--tau", tau, "re im")->expected(2);
    zfull->add_option("--x", x_coords, "re im pairs");
    zfull->add_option("--splitting", split_arg);
    zfull->add_option("--order", order_arg, "exponent cutoff")->default_val("4");
    zfull->add_option("--radius", radius);
    zfull->add_option("--method", method)->check(CLI::IsMember({"direct", "factorized"}))->default_val("direct");
    zfull->callback([&] {
        const auto lat = surface();
        const auto p = load_splitting(split_arg, lat);
        const auto xs = parse_complex_vector(x_coords, lat.rank());
        const rational ord = parse_rational(order_arg);
        const complex t{tau[0], tau[1]};
        const evaluation ev = method == "direct" ? z_full_direct(lat, rank, t, p, xs, ord, radius)
                                                 : z_full_factorized(lat, rank, t, p, xs, ord, radius);
        result = evaluation_to_json(ev);
        result["method"] = method;
    });

    auto* construct = app.add_subcommand("construct", "auxiliary construction for v = l(r + xi) + a omega, s = (xi^2)/2");
    construct->add_option("--l", l)->required();
    construct->add_option("--r", r)->required();
    construct->add_option("--s", s)->required();
    construct->add_option("--a", a)->required();
    construct->add_option("--bound", bound);
    construct->callback([&] {
        const auto c = build_auxiliary(l, r, s, a, bound);
        const auto w = reflected_target(c);
        result = json{{"l", c.l}, {"r", c.r}, {"s", c.s}, {"a", c.a},
                      {"r1", c.r1}, {"d1", c.d1}, {"d_prime", c.d_prime}, {"q", c.q}, {"k", c.k},
                      {"surface", lattice_to_json(c.lattice)},
                      {"v_prime", vector_to_json(c.v_prime)}, {"v1", vector_to_json(c.v1)}, {"w", vector_to_json(w)},
                      {"square", square(c.v_prime, c.lattice)}};
    });

    auto* verify = app.add_subcommand("verify", "exhaustive lemma sweeps");
    verify->require_subcommand(1);
    auto* tri = verify->add_subcommand("triangle", "empty lattice triangles");
    tri->add_option("--bound", bound)->default_val(40);
    tri->callback([&] {
        const auto rep = verify_triangle(bound);
        result = json{{"lemma", "triangle"}, {"bound", bound}, {"checked", rep.checked}, {"counterexamples", rep.counterexamples}};
    });
    auto* farey = verify->add_subcommand("farey", "Farey neighbour gap");
    farey->add_option("--bound", bound)->default_val(60);
    farey->callback([&] {
        const auto rep = verify_farey(bound);
        result = json{{"lemma", "farey"}, {"bound", bound}, {"checked", rep.checked}, {"counterexamples", rep.counterexamples}};
    });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        out << json{{"error", e.what()}}.dump() << '\n';
        return 2;
    } catch (const input_error& e) {
        out << json{{"error", e.what()}}.dump() << '\n';
        return 2;
    } catch (const computation_error& e) {
        out << json{{"error", e.what()}, {"internal", true}}.dump() << '\n';
        return 1;
    } catch (const std::exception& e) {
        out << json{{"error", e.what()}, {"internal", true}}.dump() << '\n';
        return 1;
    }

    if (lines && result.contains("coeffs")) {
        for (const auto& c : result["coeffs"]) out << (c.is_string() ? c.get<std::string>() : c.dump()) << '\n';
        return 0;
    }
    out << result.dump() << '\n';
    return 0;
}

}  // namespace k3tk::cli
