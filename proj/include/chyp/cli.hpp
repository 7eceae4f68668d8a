#pragma once

/**
 * @file cli.hpp
 * @brief The `chyp` command line, as a function from arguments to output and exit code.
 *
 * Exit codes: 0 success, 1 a check failed, 2 usage or input error.
 */

#include "chyp/certificates.hpp"
#include "chyp/search.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace chyp {

struct CommandResult {
    int exit_code = 0;
    std::string output;
    std::string error;
};

namespace cli_detail {

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::vector<BoundaryPoint> parse_points(const std::vector<std::string>& literals, const std::string& model) {
    std::vector<BoundaryPoint> out;
    for (std::size_t k = 0; k < literals.size(); ++k) {
        try {
            out.push_back(parse_point(literals[k]));
        } catch (const ParseError& e) {
            throw ParseError("point " + std::to_string(k + 1) + " '" + literals[k] + "': " + e.message(), e.position());
        }
    }
    Model target = out.empty() ? Model::Ball : out[0].model();
    if (model == "ball") target = Model::Ball;
    if (model == "siegel") target = Model::Siegel;
    for (auto& p : out) p = to_model(p, target);
    return out;
}

}  // namespace cli_detail

inline CommandResult run(const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    CommandResult result;

    CLI::App app{"Exact Cartan invariants, cup squares and lower-bound certificates", "chyp"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for all subcommands");

    std::vector<std::string> cartan_points;
    std::string cartan_model;
    auto* cartan_cmd = app.add_subcommand("cartan", "Cartan invariant of three boundary points");
    cartan_cmd->add_option("points", cartan_points, "three point literals")->required()->expected(3);
    cartan_cmd->add_option("--model", cartan_model, "model to evaluate in")->check(CLI::IsMember({"ball", "siegel"}));

    std::vector<std::string> cup_points;
    bool cup_oracle = false;
    auto* cup_cmd = app.add_subcommand("cupsq", "Alternated cup square of c_phi on five points");
    cup_cmd->add_option("points", cup_points, "five point literals")->required()->expected(5);
    cup_cmd->add_flag("--oracle", cup_oracle, "use the 120-term alternation");

    auto* verify_cmd = app.add_subcommand("verify-paper", "Check every value of the six-point configuration");

    std::string chi_text;
    auto* constants_cmd = app.add_subcommand("constants", "Volume, norm and Milnor-Wood constants for given chi");
    constants_cmd->add_option("--chi", chi_text, "Euler characteristic (positive integer)")->required();

    std::string points_file, group_file, cert_out;
    SearchOptions opts;
    auto* search_cmd = app.add_subcommand("search", "Search for a lower-bound certificate");
    search_cmd->add_option("--points", points_file, "point file")->required();
    search_cmd->add_option("--group", group_file, "group generator file")->required();
    search_cmd->add_option("--max-tuples", opts.max_tuples, "cap on enumerated 5-tuples")->check(CLI::PositiveNumber);
    search_cmd->add_option("--word-length", opts.word_length, "closure word length")->check(CLI::PositiveNumber);
    search_cmd->add_option("--threads", opts.threads, "worker threads for cup squares")->check(CLI::PositiveNumber);
    search_cmd->add_flag("--antiholomorphic", opts.include_antiholomorphic, "use anti-holomorphic generators too");
    search_cmd->add_option("--out", cert_out, "write the certificate here");

    std::string cert_file;
    auto* check_cmd = app.add_subcommand("check-cert", "Independently re-verify a certificate file");
    check_cmd->add_option("certificate", cert_file, "certificate file")->required();

    std::string convert_to, convert_point;
    auto* convert_cmd = app.add_subcommand("convert", "Convert a point between models");
    convert_cmd->add_option("--to", convert_to, "target")->required()->check(CLI::IsMember({"ball", "siegel", "heis"}));
    convert_cmd->add_option("point", convert_point, "point literal")->required();

    std::vector<std::string> argv_rev(args.rbegin(), args.rend());
    try {
        app.parse(argv_rev);
    } catch (const CLI::ParseError& e) {
        result.exit_code = app.exit(e, out, err) == 0 ? 0 : 2;
        result.output = out.str();
        result.error = err.str();
        return result;
    }

    try {
        if (cartan_cmd->parsed()) {
            auto p = cli_detail::parse_points(cartan_points, cartan_model);
            out << cartan(p[0], p[1], p[2]).to_string() << "\n";
        } else if (cup_cmd->parsed()) {
            auto p = cli_detail::parse_points(cup_points, "");
            PiValue v = cup_oracle ? cup_sq_full_oracle(p) : cup_sq_reduced(p);
            out << (v.is_exact_zero() ? std::string("0") : v.to_string()) << "\n";
        } else if (verify_cmd->parsed()) {
            bool ok = true;
            for (const Report& r : {verify_cartan_table(), verify_symmetry_lemmas()}) {
                out << r.to_string();
                ok = ok && r.pass();
            }
            const Certificate cert = lower_bound_certificate();
            const CheckResult chk = check_certificate(cert);
            out << "== Lower-bound certificate" << (chk.ok() ? "" : " [FAILED]") << "\n";
            for (const auto& f : chk.failures) out << "  FAIL " << f << "\n";
            out << "  cup square (x+,x_i,y+,y_i,y_-i) = " << format_pi_multiple(cert.cvalues.at(0), 2) << "\n";
            out << "  cup square (x+,x_i,y+,y_i,v) = " << format_pi_multiple(cert.cvalues.at(1), 2) << "\n";
            out << "  lambda:" << detail::rational_list(cert.lambda) << "\n";
            out << "  bound: " << cert.bound_value().to_string() << "\n";
            ok = ok && chk.ok();
            const NormBounds nb = theorem_bounds();
            out << "== Norm of the cup-square class\n  " << nb.lower.to_string()
                << " <= ||[c_phi cup c_phi]|| <= " << nb.upper.to_string() << "\n";
            for (const Report& r : {check_falbel_tetrahedron(), check_octahedron_cube_values(), check_eisenstein_tuple()}) {
                out << r.to_string();
                ok = ok && r.pass();
            }
            out << "== Derived constants\n" << to_string(derived_constants(1));
            out << coefficient_erratum() << "\n";
            out << (ok ? "all checks passed" : "some checks FAILED") << "\n";
            result.exit_code = ok ? 0 : 1;
        } else if (constants_cmd->parsed()) {
            Integer chi;
            try {
                chi = Integer(chi_text);
            } catch (const std::exception&) {
                throw cli_detail::InputError("--chi expects an integer, got '" + chi_text + "'");
            }
            if (chi <= 0) throw cli_detail::InputError("--chi must be positive");
            out << to_string(derived_constants(chi));
        } else if (search_cmd->parsed()) {
            std::istringstream pin(cli_detail::read_file(points_file));
            std::vector<BoundaryPoint> points = read_points(pin);
            if (points.empty()) throw cli_detail::InputError("no points in '" + points_file + "'");
            for (auto& p : points) p = to_model(p, points[0].model());
            std::istringstream gin(cli_detail::read_file(group_file));
            std::vector<Isometry> group = read_group(gin, points[0].model());
            SearchOutcome s = search(points, group, opts);
            const CheckResult chk = check_certificate(s.certificate);
            out << "points: " << points.size() << "\n";
            out << "group elements: " << s.group_size << "\n";
            out << "face orbits: " << s.orbits << " (" << s.free_orbits << " free)\n";
            out << "tuples: " << s.tuples_enumerated << " enumerated, " << s.tuples_inexact << " skipped as inexact\n";
            out << "kernel dimension: " << s.kernel_dimension << "\n";
            out << "lambda:" << detail::rational_list(s.certificate.lambda) << "\n";
            out << "bound: " << s.certificate.bound_value().to_string() << "\n";
            out << "self-check: " << (chk.ok() ? "ok" : "FAILED") << "\n";
            for (const auto& f : chk.failures) out << "  " << f << "\n";
            if (!cert_out.empty()) {
                std::ofstream f(cert_out);
                if (!f) throw cli_detail::InputError("cannot write '" + cert_out + "'");
                f << write_certificate(s.certificate);
                out << "certificate written to " << cert_out << "\n";
            }
            result.exit_code = chk.ok() ? 0 : 1;
        } else if (check_cmd->parsed()) {
            std::istringstream in(cli_detail::read_file(cert_file));
            Certificate cert = read_certificate(in);
            const CheckResult chk = check_certificate(cert);
            for (const auto& n : chk.notes) out << "note: " << n << "\n";
            for (const auto& f : chk.failures) out << "FAIL " << f << "\n";
            out << "bound: " << cert.bound_value().to_string() << "\n";
            out << (chk.ok() ? "certificate ok" : "certificate INVALID") << "\n";
            result.exit_code = chk.ok() ? 0 : 1;
        } else if (convert_cmd->parsed()) {
            BoundaryPoint p = cli_detail::parse_points({convert_point}, "")[0];
            std::string text;
            if (convert_to == "ball") text = format_point(to_model(p, Model::Ball));
            if (convert_to == "siegel") text = format_point(to_model(p, Model::Siegel));
            if (convert_to == "heis") text = to_string(heisenberg_coordinates(to_model(p, Model::Siegel)));
            const bool exact = convert_to == "heis" ? heisenberg_coordinates(to_model(p, Model::Siegel)).is_exact()
                                                    : p.is_exact();
            out << text << (exact ? "" : "  # inexact") << "\n";
        }
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        result.exit_code = 2;
    } catch (const cli_detail::InputError& e) {
        err << "error: " << e.what() << "\n";
        result.exit_code = 2;
    } catch (const GeometryError& e) {
        err << "error: " << e.what() << "\n";
        result.exit_code = 2;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        result.exit_code = 2;
    }
    result.output = out.str();
    result.error = err.str();
    return result;
}

}  // namespace chyp
