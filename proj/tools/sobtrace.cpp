// Command-line front end: runs one verification or table per invocation and
// emits the reports as JSON, CSV or plain text. Exit status 0 means every
// report passed, 1 means at least one failed, 2 means a usage error.

#include <cmath>
#include <functional>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sobtrace/conformal.hpp"
#include "sobtrace/halfspace.hpp"
#include "sobtrace/inequality.hpp"
#include "sobtrace/report.hpp"
#include "sobtrace/specfun.hpp"

using namespace sobtrace;

namespace {

constexpr const char* kToolVersion = "1.0.0";

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Accepts "p/q" rationals and ordinary decimal literals.
double parse_number(const std::string& text, const char* flag) {
    try {
        if (text.find('/') != std::string::npos) return Rat::parse(text).to_double();
        std::size_t used = 0;
        double v = std::stod(text, &used);
        if (used != text.size() || !std::isfinite(v)) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw UsageError(std::string(flag) + ": not a number: " + text);
    }
}

Rat parse_rational(const std::string& text, const char* flag) {
    try {
        return Rat::parse(text);
    } catch (const std::exception&) {
        throw UsageError(std::string(flag) + ": not an exact rational: " + text);
    }
}

void require(bool ok, const std::string& message) {
    if (!ok) throw UsageError(message);
}

int order_to_m(int order, int lo, int hi) {
    require(order % 2 == 0 && order / 2 >= lo && order / 2 <= hi,
            "--order must be an even operator order between " + std::to_string(2 * lo) + " and " +
                std::to_string(2 * hi));
    return order / 2;
}

struct Settings {
    std::string format = "json";
    std::string output;
    double tol_equality = 1e-6;
    double tol_strict = 1e-9;

    // Shared subcommand parameters, stored as given on the command line.
    std::string order = "all";
    int dim = 0;
    std::string s_text;
    std::string gamma_text;
    std::string tau_text = "0.2";
    int kmax = 40;
    int quad = 0;
    std::string perturb;
    std::string lambda_text;
    int k = 1;
    int samples = 100;
    double step = 0;
    bool extended = false;
    unsigned long long seed = 20240101ULL;
};

// ---------------------------------------------------------------------------
// Subcommand bodies. Each validates its inputs first, then computes.

std::vector<Json> run_identities(const Settings& s, Json& config) {
    std::vector<int> orders;
    if (s.order == "all") {
        orders = {1, 2, 3, 4};
    } else {
        int o = 0;
        try {
            o = std::stoi(s.order);
        } catch (const std::exception&) {
            throw UsageError("--order must be 2, 4, 6, 8 or all");
        }
        orders = {order_to_m(o, 1, 4)};
    }
    config["order"] = s.order;
    std::vector<Json> out;
    for (int m : orders) out.push_back(to_json(coefficient_identity(m)));
    if (s.order == "all") {
        Json p4;
        p4["kind"] = "identity";
        p4["name"] = "fourth-order multiplier factorization";
        RationalPoly residual = p4_factorization_residual();
        p4["residual"] = residual.is_zero() ? "0" : residual.str();
        p4["pass"] = residual.is_zero();
        out.push_back(p4);

        Json pre;
        pre["kind"] = "identity";
        pre["name"] = "half-space prefactors";
        Json values = Json::array();
        bool ok = true;
        const Rat expected[4] = {Rat(1), Rat(2), Rat(8, 3), Rat(16, 5)};
        for (int m = 1; m <= 4; ++m) {
            Rat v = halfspace_prefactor(m);
            values.push_back(v.str());
            ok = ok && v == expected[m - 1];
        }
        pre["values"] = values;
        pre["pass"] = ok;
        out.push_back(pre);
    }
    return out;
}

double parse_tau(const Settings& s) {
    double tau = parse_number(s.tau_text, "--tau");
    require(tau >= 0 && tau <= 0.5, "--tau must lie in [0, 0.5]");
    return tau;
}

Tolerance tolerance(const Settings& s) { return {s.tol_equality, s.tol_strict}; }

std::vector<Json> run_trace(const Settings& s, Json& config) {
    int order = 0;
    try {
        order = std::stoi(s.order);
    } catch (const std::exception&) {
        throw UsageError("--order is required");
    }
    const int m = order_to_m(order, 1, 4);
    require(s.dim > 2 * m - 1, "--dim must exceed 2m - 1 = " + std::to_string(2 * m - 1));
    const double tau = parse_tau(s);
    require(s.kmax >= 0 && s.kmax <= 200, "--kmax must lie in [0, 200]");
    require(s.quad >= 0, "--quad must be non-negative");
    std::optional<std::pair<int, double>> perturb;
    if (!s.perturb.empty()) {
        auto colon = s.perturb.find(':');
        require(colon != std::string::npos, "--perturb expects J:EPS");
        int j = 0;
        try {
            j = std::stoi(s.perturb.substr(0, colon));
        } catch (const std::exception&) {
            throw UsageError("--perturb expects J:EPS");
        }
        require(j >= 1 && j <= s.kmax, "--perturb mode must lie in 1..kmax");
        perturb = {j, parse_number(s.perturb.substr(colon + 1), "--perturb")};
    }
    config["order"] = order;
    config["dim"] = s.dim;
    config["tau"] = tau;
    config["kmax"] = s.kmax;
    config["quad"] = s.quad;
    config["perturb"] = s.perturb.empty() ? Json(nullptr) : Json(s.perturb);

    ZonalFunction f = extremal_power(s.dim, (s.dim - 2 * m + 1) / 2.0, tau, s.kmax);
    bool equality = true;
    if (perturb) {
        const double amplitude = std::abs(f(1.0)) / gegenbauer(perturb->first, s.dim, 1.0);
        f = f + zonal_mode(s.dim, perturb->first, perturb->second * amplitude, s.kmax);
        equality = perturb->second == 0.0;
    }
    return {to_json(trace_report(m, s.dim, f, equality, tolerance(s), s.quad))};
}

std::vector<Json> run_beckner(const Settings& s, Json& config) {
    int order = 0;
    try {
        order = std::stoi(s.order);
    } catch (const std::exception&) {
        throw UsageError("--order is required");
    }
    const int m = order_to_m(order, 1, 3);
    require(s.dim >= 1, "--dim is required");
    require(!s.s_text.empty(), "--s is required");
    const double sv = parse_number(s.s_text, "--s");
    require(sv > 0 && (2 * m - 1) * sv < s.dim, "--s must lie in (0, n/(2m-1))");
    const double tau = parse_tau(s);
    config["order"] = order;
    config["dim"] = s.dim;
    config["s"] = sv;
    config["tau"] = tau;
    ZonalFunction f = extremal_power(s.dim, (s.dim - (2 * m - 1) * sv) / 2, tau);
    return {to_json(beckner_report(m, s.dim, sv, f, true, tolerance(s)))};
}

std::vector<Json> run_weighted(const Settings& s, Json& config) {
    require(s.dim >= 1, "--dim is required");
    require(!s.s_text.empty(), "--s is required");
    const double sv = parse_number(s.s_text, "--s");
    require(sv > 0 && sv < std::min(2.0, static_cast<double>(s.dim)), "--s must lie in (0, min(2, n))");
    const double tau = parse_tau(s);
    config["dim"] = s.dim;
    config["s"] = sv;
    config["tau"] = tau;
    ZonalFunction f = extremal_power(s.dim, (s.dim - sv) / 2, tau);
    return {to_json(weighted_beckner_report(s.dim, sv, f, true, tolerance(s)))};
}

std::vector<Json> run_sphere(const Settings& s, Json& config) {
    require(s.dim >= 1, "--dim is required");
    require(!s.gamma_text.empty(), "--gamma is required");
    const double g = parse_number(s.gamma_text, "--gamma");
    require(g > 0 && 2 * g < s.dim, "--gamma must lie in (0, n/2)");
    const double tau = parse_tau(s);
    config["dim"] = s.dim;
    config["gamma"] = g;
    config["tau"] = tau;
    ZonalFunction f = extremal_power(s.dim, (s.dim - 2 * g) / 2, tau);
    return {to_json(sphere_sobolev_report(s.dim, g, f, true, tolerance(s)))};
}

std::vector<Json> run_lm(const Settings& s, Json& config) {
    int order = 0;
    try {
        order = std::stoi(s.order);
    } catch (const std::exception&) {
        throw UsageError("--order is required");
    }
    const int m = order_to_m(order, 1, 4);
    const double tau = parse_tau(s);
    config["order"] = order;
    config["tau"] = tau;
    ZonalFunction f = extremal_log(2 * m - 1, tau);
    return {to_json(lm_report(m, f, true, tolerance(s)))};
}

RationalPoly published_halfspace_energy(int m) {
    const RationalPoly l = RationalPoly::var(Var::lambda);
    switch (m) {
        case 2:
            return RationalPoly(2);
        case 3:
            return Rat(3) * l * l - Rat(2) * l + RationalPoly(3);
        default:
            return Rat(20) * l * l - Rat(8) * l + RationalPoly(4);
    }
}

std::vector<Json> run_halfspace(const Settings& s, Json& config) {
    std::vector<int> orders;
    if (s.order == "all") {
        orders = {2, 3, 4};
    } else {
        int o = 0;
        try {
            o = std::stoi(s.order);
        } catch (const std::exception&) {
            throw UsageError("--order must be 4, 6, 8 or all");
        }
        orders = {order_to_m(o, 2, 4)};
    }
    std::optional<Rat> lambda;
    if (!s.lambda_text.empty()) lambda = parse_rational(s.lambda_text, "--lambda");
    config["order"] = s.order;
    config["lambda"] = s.lambda_text.empty() ? Json(nullptr) : Json(s.lambda_text);

    std::vector<Json> out;
    for (int m : orders) {
        Json j;
        j["kind"] = "halfspace";
        j["order"] = 2 * m;
        j["m"] = m;
        const RationalPoly energy = profile_energy_poly(m);
        const bool ode_ok = [&] {
            for (const RationalPoly& c : profile_ode_residual(m).c)
                if (!c.is_zero()) return false;
            return true;
        }();
        const bool closed_ok = energy == published_halfspace_energy(m);
        Rat lam = lambda.value_or(Rat(0));
        std::optional<std::pair<Rat, Rat>> best;
        if (m >= 3) {
            best = optimal_lambda(m);
            if (!lambda) lam = best->first;
        }
        const Rat e = profile_energy(m, lam);
        j["lambda"] = m >= 3 ? Json(lam.str()) : Json(nullptr);
        j["energy"] = e.str();
        j["energy_value"] = e.to_double();
        j["energy_polynomial"] = energy.str();
        j["optimal_lambda"] = best ? Json(best->first.str()) : Json(nullptr);
        j["minimum_energy"] = best ? Json(best->second.str()) : Json(e.str());
        j["prefactor"] = halfspace_prefactor(m).str();
        j["ode_residual_zero"] = ode_ok;
        j["closed_form_match"] = closed_ok;
        j["note"] = halfspace_energy_note(m);
        j["pass"] = ode_ok && closed_ok && (!best || e >= best->second);
        out.push_back(j);
    }
    return out;
}

TestField polynomial_field(int d) {
    MultiPoly p = MultiPoly::norm_power(d, 2);
    MultiPoly z0 = MultiPoly::coordinate(d, 0);
    MultiPoly zl = MultiPoly::coordinate(d, d - 1);
    p = p + z0 * zl * zl + 0.5 * (z0 * z0 * z0) + MultiPoly::constant(d, 1.0);
    return TestField::polynomial(p, "|z|^4 + z1 z_d^2 + z1^3/2 + 1");
}

TestField gaussian_field(int d) {
    std::vector<double> c(static_cast<std::size_t>(d), 0.0);
    c[0] = 0.2;
    c[static_cast<std::size_t>(d - 1)] = -0.1;
    return TestField::gaussian(c, 1.3, "exp(-1.3 |z - c|^2)");
}

std::vector<Json> run_conformal(const Settings& s, Json& config) {
    require(s.dim >= 1, "--dim is required");
    require(s.k >= 1 && s.k <= 3, "--k must be 1, 2 or 3");
    require(s.dim > 2 * s.k, "--dim must exceed 2k");
    require(s.samples >= 1, "--samples must be positive");
    require(s.step >= 0, "--step must be non-negative");
    config["dim"] = s.dim;
    config["k"] = s.k;
    config["samples"] = s.samples;
    config["step"] = s.step;
    config["extended"] = s.extended;
    config["seed"] = s.seed;

    const int n = s.dim;
    const int d = n + 1;
    std::mt19937_64 rng(s.seed);
    std::vector<HalfSpacePoint> points;
    for (int i = 0; i < s.samples; ++i) points.push_back(sample_point(n, rng));
    const std::vector<TestField> fields{polynomial_field(d), gaussian_field(d)};
    // Degree five so that Delta^2 u does not vanish.
    const MultiPoly z0 = MultiPoly::coordinate(d, 0), zl = MultiPoly::coordinate(d, d - 1);
    const MultiPoly u = MultiPoly::norm_power(d, 2) * z0 + zl * zl * zl * zl * z0 + zl * zl * zl + MultiPoly::constant(d, 1.0);
    const int shift_m = std::min(s.k, 2);
    const Precision precision = s.extended ? Precision::extended : Precision::standard;

    struct Check {
        std::string name;
        double tol;
        std::function<Residual(const HalfSpacePoint&)> run;
    };
    auto over_fields = [&](auto fn) {
        return [&, fn](const HalfSpacePoint& p) {
            Residual worst;
            for (const TestField& F : fields) {
                Residual r = fn(F, p);
                worst.value = std::max(worst.value, r.value);
                worst.step_ok = worst.step_ok && r.step_ok;
            }
            return worst;
        };
    };
    std::vector<Check> checks{
        {"orthogonality", 1e-6, [](const HalfSpacePoint& p) { return Residual{check_orthogonality(p), true}; }},
        {"phi_calculus", 1e-6,
         [&](const HalfSpacePoint& p) {
             Residual a = check_phi_calculus((n - 1) / 2.0, p, s.step);
             Residual b = check_phi_calculus(1.0, p, s.step);
             return Residual{std::max(a.value, b.value), a.step_ok && b.step_ok};
         }},
        {"laplacian_identity", 1e-6,
         over_fields([&](const TestField& F, const HalfSpacePoint& p) { return check_laplacian_identity(F, p, s.step); })},
        {"gradient_identity", 1e-6,
         over_fields([&](const TestField& F, const HalfSpacePoint& p) { return check_gradient_identity(F, p, s.step); })},
        {"conformal_covariance", s.k == 1 ? 1e-6 : 1e-4,
         over_fields([&](const TestField& F, const HalfSpacePoint& p) {
             return check_conformal_covariance(F, s.k, p, s.step, precision);
         })},
        {"covariant_shift", 1e-4,
         [&](const HalfSpacePoint& p) { return check_covariant_shift(u, shift_m, p, s.step); }},
    };

    std::vector<Json> out;
    for (const Check& c : checks) {
        double worst = 0;
        std::size_t worst_index = 0;
        int bad_steps = 0;
        for (std::size_t i = 0; i < points.size(); ++i) {
            Residual r = c.run(points[i]);
            if (i == 0 || !(r.value <= worst)) {
                worst = r.value;
                worst_index = i;
            }
            if (!r.step_ok) ++bad_steps;
        }
        Json j;
        j["kind"] = "conformal";
        j["check"] = c.name;
        j["n"] = n;
        j["k"] = c.name == "covariant_shift" ? shift_m : s.k;
        j["samples"] = s.samples;
        j["max_residual"] = worst;
        j["tolerance"] = c.tol;
        Json pt;
        pt["x"] = points[worst_index].x;
        pt["y"] = points[worst_index].y;
        j["worst_point"] = pt;
        j["unstable_steps"] = bad_steps;
        j["pass"] = worst < c.tol;
        out.push_back(j);
    }
    return out;
}

std::vector<std::string> coefficient_labels(int m) {
    switch (m) {
        case 1:
            return {"a"};
        case 2:
            return {"b", "gradient"};
        case 3:
            return {"c3", "c2", "c1"};
        default:
            return {"d4", "d3", "d2", "d1"};
    }
}

std::vector<Json> run_tables(const Settings& s, Json& config) {
    int order = 0;
    try {
        order = std::stoi(s.order);
    } catch (const std::exception&) {
        throw UsageError("--order is required");
    }
    const int m = order_to_m(order, 1, 4);
    require(s.dim >= 0, "--dim must be non-negative");
    config["order"] = order;
    config["dim"] = s.dim > 0 ? Json(s.dim) : Json(nullptr);

    const std::vector<RationalPoly> published = published_coefficients(m);
    const std::vector<RationalPoly>& derived = derived_coefficients(m);
    const std::vector<std::string> labels = coefficient_labels(m);
    Json pub, der;
    bool agree = true;
    for (std::size_t j = 0; j < labels.size(); ++j) {
        if (s.dim > 0) {
            Rat p = published[j].eval(Rat(0), Rat(s.dim));
            Rat d = derived[j].eval(Rat(0), Rat(s.dim));
            pub[labels[j]] = p.str();
            der[labels[j]] = d.str();
            agree = agree && p == d;
        } else {
            pub[labels[j]] = published[j].str();
            der[labels[j]] = derived[j].str();
            agree = agree && published[j] == derived[j];
        }
    }
    Json j;
    j["kind"] = "coefficients";
    j["order"] = order;
    j["m"] = m;
    j["n"] = s.dim > 0 ? Json(s.dim) : Json(nullptr);
    j["published"] = pub;
    j["derived"] = der;
    j["agree"] = agree;
    j["pass"] = true;
    return {j};
}

std::string render(const Json& doc, const std::vector<Json>& reports, const std::string& format) {
    if (format == "csv") return to_csv(reports);
    if (format == "pretty") return to_pretty(doc);
    return dump_json(doc) + "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sharp trace, Beckner and Lebedev-Milin inequality verifier"};
    app.require_subcommand(1);
    // Global flags may appear after the subcommand as well.
    app.fallthrough();
    Settings s;
    app.add_option("--format", s.format, "Output format")->check(CLI::IsMember({"json", "csv", "pretty"}));
    app.add_option("--output,-o", s.output, "Write the output to this file instead of stdout");
    app.add_option("--tol-equality", s.tol_equality, "Relative tolerance for equality cases")
        ->check(CLI::PositiveNumber);
    app.add_option("--tol-strict", s.tol_strict, "Allowed negative slack relative to the right side")
        ->check(CLI::NonNegativeNumber);

    CLI::App* verify = app.add_subcommand("verify", "Run a verification");
    verify->require_subcommand(1);
    CLI::App* tables = app.add_subcommand("tables", "Emit coefficient tables");
    tables->require_subcommand(1);

    CLI::App* identities = verify->add_subcommand("identities", "Exact coefficient identities");
    identities->add_option("--order", s.order, "2, 4, 6, 8 or all");

    CLI::App* trace = verify->add_subcommand("trace", "Trace inequality at an extremal");
    trace->add_option("--order", s.order, "Operator order 2, 4, 6 or 8")->required();
    trace->add_option("--dim", s.dim, "Sphere dimension n")->required();
    trace->add_option("--tau", s.tau_text, "Extremal offset in [0, 0.5]");
    trace->add_option("--kmax", s.kmax, "Band limit");
    trace->add_option("--quad", s.quad, "Quadrature nodes (0 selects 4 kmax + 32)");
    trace->add_option("--perturb", s.perturb, "Add EPS times mode J, as J:EPS");

    CLI::App* beckner = verify->add_subcommand("beckner", "Beckner-type inequality at an extremal");
    beckner->add_option("--order", s.order, "Operator order 2, 4 or 6")->required();
    beckner->add_option("--dim", s.dim, "Sphere dimension n")->required();
    beckner->add_option("--s", s.s_text, "Parameter s")->required();
    beckner->add_option("--tau", s.tau_text, "Extremal offset in [0, 0.5]");

    CLI::App* weighted = verify->add_subcommand("weighted", "Weighted Beckner inequality at an extremal");
    weighted->add_option("--dim", s.dim, "Sphere dimension n")->required();
    weighted->add_option("--s", s.s_text, "Parameter s")->required();
    weighted->add_option("--tau", s.tau_text, "Extremal offset in [0, 0.5]");

    CLI::App* sphere = verify->add_subcommand("sphere", "Sphere Sobolev inequality at an extremal");
    sphere->add_option("--dim", s.dim, "Sphere dimension n")->required();
    sphere->add_option("--gamma", s.gamma_text, "Half order gamma")->required();
    sphere->add_option("--tau", s.tau_text, "Extremal offset in [0, 0.5]");

    CLI::App* lm = verify->add_subcommand("lm", "Lebedev-Milin inequality at an extremal");
    lm->add_option("--order", s.order, "Operator order 2, 4, 6 or 8")->required();
    lm->add_option("--tau", s.tau_text, "Extremal offset in [0, 0.5]");

    CLI::App* halfspace = verify->add_subcommand("halfspace", "Half-space profile energies");
    halfspace->add_option("--order", s.order, "Operator order 4, 6, 8 or all");
    halfspace->add_option("--lambda", s.lambda_text, "Boundary parameter (exact rational)");

    CLI::App* conformal = verify->add_subcommand("conformal", "Conformal calculus identities at random points");
    conformal->add_option("--dim", s.dim, "Boundary dimension n")->required();
    conformal->add_option("--k", s.k, "Covariance order 1, 2 or 3")->required();
    conformal->add_option("--samples", s.samples, "Number of random points");
    conformal->add_option("--step", s.step, "Finite-difference step (0 selects 1e-2 / Phi)");
    conformal->add_flag("--extended", s.extended, "Evaluate the nested stencils in quad precision");
    conformal->add_option("--seed", s.seed, "Random seed");

    CLI::App* coeffs = tables->add_subcommand("coeffs", "Published and derived boundary coefficients");
    coeffs->add_option("--order", s.order, "Operator order 2, 4, 6 or 8")->required();
    coeffs->add_option("--dim", s.dim, "Evaluate at this dimension");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    std::string name;
    std::vector<Json> (*runner)(const Settings&, Json&) = nullptr;
    const std::vector<std::pair<CLI::App*, std::vector<Json> (*)(const Settings&, Json&)>> table{
        {identities, run_identities}, {trace, run_trace},         {beckner, run_beckner},
        {weighted, run_weighted},     {sphere, run_sphere},       {lm, run_lm},
        {halfspace, run_halfspace},   {conformal, run_conformal}, {coeffs, run_tables}};
    for (const auto& [cmd, fn] : table) {
        if (cmd->parsed()) {
            name = cmd->get_parent()->get_name() + " " + cmd->get_name();
            runner = fn;
        }
    }

    Json config;
    config["subcommand"] = name;
    std::vector<Json> reports;
    try {
        reports = runner(s, config);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "computation failed: " << e.what() << "\n";
        return 1;
    }
    config["format"] = s.format;
    config["tol_equality"] = s.tol_equality;
    config["tol_strict"] = s.tol_strict;

    bool all_pass = true;
    for (const Json& r : reports) all_pass = all_pass && r.value("pass", false);
    Json doc;
    doc["tool_version"] = kToolVersion;
    doc["config"] = config;
    doc["reports"] = reports;
    doc["pass"] = all_pass;

    const std::string text = render(doc, reports, s.format);
    if (s.output.empty()) {
        std::cout << text;
    } else {
        std::ofstream file(s.output, std::ios::binary);
        if (!file) {
            std::cerr << "cannot write " << s.output << "\n";
            return 2;
        }
        file << text;
    }
    if (!all_pass) {
        for (const Json& r : reports)
            if (!r.value("pass", false)) std::cerr << "FAILED:\n" << to_pretty(r);
        return 1;
    }
    return 0;
}
