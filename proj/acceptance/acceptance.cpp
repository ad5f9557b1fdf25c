// Acceptance run: one PASS/FAIL line per criterion. With --only ID a single
// criterion is evaluated; the exit status is 0 iff every evaluated criterion
// passed.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "sobtrace/conformal.hpp"
#include "sobtrace/extension.hpp"
#include "sobtrace/halfspace.hpp"
#include "sobtrace/inequality.hpp"
#include "sobtrace/specfun.hpp"

using namespace sobtrace;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* format, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, format, v);
    return buf;
}

RationalPoly K() { return RationalPoly::var(Var::k); }
RationalPoly N() { return RationalPoly::var(Var::n); }
RationalPoly L() { return RationalPoly::var(Var::lambda); }

ZonalFunction random_band_limited(int n, int kmax, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> a(static_cast<std::size_t>(kmax) + 1);
    a[0] = 1.0 + std::abs(u(rng));
    for (int k = 1; k <= kmax; ++k) a[static_cast<std::size_t>(k)] = u(rng) / (1.0 + k * k);
    return ZonalFunction(n, a);
}

Outcome identity_order6() {
    auto start = Clock::now();
    IdentityResult r = coefficient_identity(3);
    RationalPoly kk = casimir_poly();
    RationalPoly product = Rat(1, 18) * (Rat(4) * (N() + 3) * kk + (N() - 3) * (N() * N() + Rat(4) * N() - 9)) *
                           (Rat(4) * kk + (N() + 3) * (N() - 5));
    bool factored = poly_equal(trace_prefactor(3) * gamma_ratio_poly(5) - interior_energy_coefficient(3), product);
    double t = seconds_since(start);
    return {r.ok && r.residual.is_zero() && factored && t < 1,
            "residual " + r.residual.str() + ", factored form " + (factored ? "matches" : "differs") + ", " +
                fmt("%.3f s", t)};
}

Outcome identity_order8() {
    auto start = Clock::now();
    IdentityResult r = coefficient_identity(4);
    bool display = poly_equal(interior_energy_coefficient(4), interior_energy_closed_form(4));
    double t = seconds_since(start);
    std::string detail = r.residual.is_zero()
                             ? std::string("residual 0")
                             : "nonzero residual of degree " + std::to_string(r.residual.degree()) + " (" +
                                   r.residual.eval(Rat(1), Rat(9)).str() + " at k=1, n=9)";
    detail += "; interior coefficient " + std::string(display ? "equals" : "differs from") + " the published closed form";
    return {r.ok && display && t < 1, detail + ", " + fmt("%.3f s", t)};
}

Outcome identity_order4() {
    auto start = Clock::now();
    IdentityResult r = coefficient_identity(2);
    RationalPoly expected = Rat(1, 2) * (N() + 1) * (N() - 3);
    bool constant = poly_equal(r.derived.at(0), expected);
    double t = seconds_since(start);
    std::string detail = "derived constant term " + r.derived.at(0).str();
    for (const std::string& note : r.notes) detail += "; " + note;
    return {r.ok && constant && t < 1, detail};
}

Outcome p4_factorization() {
    RationalPoly r = p4_factorization_residual();
    return {r.is_zero(), "residual " + (r.is_zero() ? std::string("0") : r.str())};
}

Outcome prefactors() {
    const std::vector<Rat> expected{Rat(1), Rat(2), Rat(8, 3), Rat(16, 5)};
    Outcome o;
    for (int m = 1; m <= 4; ++m) {
        Rat c = halfspace_prefactor(m);
        o.pass = o.pass && c == expected[static_cast<std::size_t>(m - 1)] && trace_prefactor(m) == c;
        o.detail += (m > 1 ? ", " : "") + c.str();
    }
    return o;
}

Outcome closed_forms() {
    Outcome o;
    for (int m = 2; m <= 3; ++m) {
        std::vector<RationalPoly> a = radial_coefficient_polys(m), b = radial_coefficients_closed_form(m);
        bool same = a.size() == b.size();
        for (std::size_t j = 0; same && j < a.size(); ++j) same = poly_equal(a[j], b[j]);
        o.pass = o.pass && same;
        o.detail += "radial m=" + std::to_string(m) + (same ? " ok; " : " differs; ");
    }
    for (int m = 1; m <= 3; ++m) {
        bool same = poly_equal(interior_energy_coefficient(m), interior_energy_closed_form(m));
        o.pass = o.pass && same;
        o.detail += "energy m=" + std::to_string(m) + (same ? " ok" : " differs") + (m < 3 ? "; " : "");
    }
    return o;
}

Outcome halfspace_profiles() {
    auto start = Clock::now();
    bool ok = profile_energy(2) == Rat(2);
    ok = ok && poly_equal(profile_energy_poly(3), Rat(3) * L() * L() - Rat(2) * L() + 3);
    ok = ok && poly_equal(profile_energy_poly(4), Rat(20) * L() * L() - Rat(8) * L() + 4);
    auto m3 = optimal_lambda(3), m4 = optimal_lambda(4);
    ok = ok && m3 == std::pair<Rat, Rat>{Rat(1, 3), Rat(8, 3)} && m4 == std::pair<Rat, Rat>{Rat(1, 5), Rat(16, 5)};
    double t = seconds_since(start);
    return {ok && t < 1, "E3 = " + profile_energy_poly(3).str() + ", E4 = " + profile_energy_poly(4).str() +
                             ", minima (" + m3.first.str() + ", " + m3.second.str() + "), (" + m4.first.str() + ", " +
                             m4.second.str() + "), " + fmt("%.3f s", t)};
}

Outcome sharpness() {
    Outcome o;
    double worst = 0, slowest = 0;
    const int kmax = 40;
    for (int m = 1; m <= 4; ++m) {
        auto start = Clock::now();
        for (int n : {2 * m, 2 * m + 2})
            for (double tau : {0.0, 0.2, 0.4}) {
                ZonalFunction f = extremal_power(n, 0.5 * (n - 2 * m + 1), tau, kmax);
                InequalityReport r = trace_report(m, n, f, true, {}, default_quad_degree(kmax));
                worst = std::max(worst, std::abs(r.rel_slack));
                o.pass = o.pass && std::abs(r.rel_slack) < 1e-6 && r.pass;
            }
        slowest = std::max(slowest, seconds_since(start));
    }
    InequalityReport c2 = trace_report(1, 3, zonal_mode(3, 0, 1.0), true);
    InequalityReport c4 = trace_report(2, 5, zonal_mode(5, 0, 1.0), true);
    const double a = 2 * M_PI * M_PI, b = 12 * sphere_surface(5);
    bool hand = std::abs(c2.lhs - a) < 1e-12 * a && std::abs(c2.rhs - a) < 1e-12 * a && std::abs(c4.lhs - b) < 1e-12 * b &&
                std::abs(c4.rhs - b) < 1e-12 * b;
    o.pass = o.pass && hand && slowest < 30;
    o.detail = "max |rel_slack| " + fmt("%.2e", worst) + " over 24 cases; constants " + (hand ? "match" : "differ") +
               " (2 pi^2, 12 omega_5); slowest order " + fmt("%.2f s", slowest);
    return o;
}

Outcome strictness() {
    Outcome o;
    const std::vector<double> eps{-0.1, -0.05, -0.02, 0.0, 0.02, 0.05, 0.1};
    double smallest = INFINITY;
    for (int m = 1; m <= 3; ++m) {
        const int n = 2 * m + 1;
        ZonalFunction f0 = extremal_power(n, 0.5 * (n - 2 * m + 1), 0.3, 40);
        for (int j = 1; j <= 2; ++j) {
            ScanResult s = extremality_scan([m, n](const ZonalFunction& f) { return trace_report(m, n, f, false); }, f0,
                                            j, eps);
            o.pass = o.pass && s.zero_at_origin && s.positive && s.monotone;
            for (const ScanPoint& p : s.curve)
                if (p.epsilon != 0) smallest = std::min(smallest, p.slack);
        }
    }
    o.detail = "orders 2, 4, 6, modes 1 and 2; smallest slack off the extremal " + fmt("%.3e", smallest);
    return o;
}

Outcome beckner_consistency() {
    Outcome o;
    std::mt19937_64 rng(20240101);
    double worst = 0;
    for (int i = 0; i < 20; ++i) {
        const int m = 1 + i % 3;
        const int n = 2 * m + i % 4;
        ZonalFunction f = random_band_limited(n, 16, rng);
        InequalityReport b = beckner_report(m, n, 1.0, f, false);
        InequalityReport t = trace_report(m, n, f, false);
        double e = std::max(std::abs(b.lhs - t.lhs) / std::abs(t.lhs), std::abs(b.rhs - t.rhs) / std::abs(t.rhs));
        worst = std::max(worst, e);
    }
    o.pass = worst < 1e-12;
    o.detail = "20 random band-limited f, orders 2-6; max relative difference " + fmt("%.2e", worst);
    return o;
}

Outcome weighted() {
    Outcome o;
    double worst_energy = 0, worst_limit = 0, worst_slack = 0;
    struct Case {
        int n;
        double s;
    };
    for (Case c : {Case{3, 0.5}, Case{4, 0.75}}) {
        const double b = 1 - c.s;
        ZonalFunction f = extremal_power(c.n, 0.5 * (c.n - c.s), 0.2);
        double spectral = weighted_energy_spectral(b, f);
        double quad = weighted_energy_quadrature(b, f);
        worst_energy = std::max(worst_energy, std::abs(spectral - quad) / spectral);
        InequalityReport r = weighted_beckner_report(c.n, c.s, f, true);
        worst_slack = std::max(worst_slack, std::abs(r.rel_slack));
        o.pass = o.pass && r.pass && std::abs(r.rel_slack) < 1e-4;
    }
    struct Limit {
        double b;
        int n;
    };
    for (Limit l : {Limit{0.5, 3}, Limit{0.25, 4}, Limit{-0.5, 4}})
        for (int k = 1; k <= 8; ++k) {
            double a = beckner_A(l.b, k, l.n);
            double e = std::abs(weighted_limit(l.b, k, l.n).value - a) / std::abs(a);
            worst_limit = std::max(worst_limit, e);
        }
    o.pass = o.pass && worst_energy < 1e-5 && worst_limit < 1e-4;
    o.detail = "spectral vs quadrature " + fmt("%.2e", worst_energy) + ", limit vs closed form " +
               fmt("%.2e", worst_limit) + " (k <= 8, b in {1/2, 1/4, -1/2}), extremal |rel_slack| " +
               fmt("%.2e", worst_slack);
    return o;
}

TestField polynomial_field(int d) {
    MultiPoly z0 = MultiPoly::coordinate(d, 0), zl = MultiPoly::coordinate(d, d - 1);
    return TestField::polynomial(MultiPoly::norm_power(d, 2) + z0 * zl * zl + 0.5 * (z0 * z0 * z0) +
                                 MultiPoly::constant(d, 1.0));
}

TestField gaussian_field(int d) {
    std::vector<double> c(static_cast<std::size_t>(d), 0.0);
    c[0] = 0.2;
    c[static_cast<std::size_t>(d - 1)] = -0.1;
    return TestField::gaussian(c, 1.3);
}

Outcome conformal() {
    auto start = Clock::now();
    Outcome o;
    const int samples = 100;
    struct Worst {
        const char* name;
        double tol;
        double value = 0;
    };
    std::vector<Worst> worst{{"orthogonality", 1e-6},        {"phi", 1e-6},         {"laplacian", 1e-6},
                             {"gradient", 1e-6},             {"covariance k=1", 1e-6}, {"covariance k=2", 1e-4},
                             {"shift m=2", 1e-4}};
    std::mt19937_64 rng(20240101);
    for (int n : {3, 5, 7}) {
        const int d = n + 1;
        const std::vector<TestField> fields{polynomial_field(d), gaussian_field(d)};
        const MultiPoly z0 = MultiPoly::coordinate(d, 0), zl = MultiPoly::coordinate(d, d - 1);
        const MultiPoly u =
            MultiPoly::norm_power(d, 2) * z0 + zl * zl * zl * zl * z0 + zl * zl * zl + MultiPoly::constant(d, 1.0);
        for (int i = 0; i < samples; ++i) {
            HalfSpacePoint p = sample_point(n, rng);
            auto note = [&](std::size_t idx, double v) { worst[idx].value = std::max(worst[idx].value, v); };
            note(0, check_orthogonality(p));
            note(1, std::max(check_phi_calculus((n - 1) / 2.0, p).value, check_phi_calculus(1.0, p).value));
            for (const TestField& F : fields) {
                note(2, check_laplacian_identity(F, p).value);
                note(3, check_gradient_identity(F, p).value);
                note(4, check_conformal_covariance(F, 1, p).value);
                if (n > 4) note(5, check_conformal_covariance(F, 2, p).value);
            }
            note(6, check_covariant_shift(u, 2, p).value);
        }
    }
    double t = seconds_since(start);
    for (const Worst& w : worst) {
        o.pass = o.pass && w.value < w.tol;
        o.detail += std::string(w.name) + " " + fmt("%.1e", w.value) + ", ";
    }
    o.pass = o.pass && t < 60;
    o.detail += "n in {3,5,7} x " + std::to_string(samples) + " points, " + fmt("%.1f s", t);
    return o;
}

Outcome lebedev_milin() {
    Outcome o;
    for (int m = 1; m <= 4; ++m) {
        InequalityReport r = lm_report(m, extremal_log(2 * m - 1, 0.3), true);
        InequalityReport z = lm_report(m, zonal_mode(2 * m - 1, 0, 0.0), true);
        bool ok = std::abs(r.rel_slack) < (m < 4 ? 1e-6 : 1e-5) && z.lhs == 0 && z.rhs == 0;
        o.pass = o.pass && ok;
        o.detail += "m=" + std::to_string(m) + " " + fmt("%.1e", std::abs(r.rel_slack)) + (m < 4 ? ", " : "");
    }
    o.detail += "; f = 0 gives 0 = 0";
    return o;
}

Outcome spectral_vs_quadrature() {
    Outcome o;
    std::mt19937_64 rng(20240102);
    double worst = 0;
    for (int m = 1; m <= 4; ++m)
        for (int n : {2 * m, 2 * m + 2, 2 * m + 4}) {
            PolyharmonicExtension ext = make_extension(m, random_band_limited(n, 20, rng));
            double spectral = interior_energy_spectral(ext);
            double quad = interior_energy_quadrature(ext);
            worst = std::max(worst, std::abs(spectral - quad) / std::abs(spectral));
        }
    o.pass = worst < 1e-10;
    o.detail = "orders 2-8, three dimensions each, kmax 20; max relative difference " + fmt("%.2e", worst);
    return o;
}

struct Criterion {
    std::string id;
    std::string title;
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> criteria{
        {"1a", "order-6 coefficient identity", identity_order6},
        {"1b", "order-8 coefficient identity against the published coefficients", identity_order8},
        {"1c", "order-4 boundary constant", identity_order4},
        {"1d", "fourth-order multiplier factorization", p4_factorization},
        {"1e", "half-space prefactors", prefactors},
        {"2", "radial and energy closed forms", closed_forms},
        {"3", "half-space profile energies", halfspace_profiles},
        {"4", "sharpness at extremals", sharpness},
        {"5", "strict slack under perturbation", strictness},
        {"6", "Beckner/trace consistency", beckner_consistency},
        {"7", "weighted order-2 inequality", weighted},
        {"8", "conformal identities", conformal},
        {"9", "Lebedev-Milin equality cases", lebedev_milin},
        {"10", "spectral vs quadrature energies", spectral_vs_quadrature},
    };
    std::string only;
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        if (a == "--only" && i + 1 < argc) {
            only = argv[++i];
        } else {
            std::fprintf(stderr, "usage: %s [--only ID]\n", argv[0]);
            return 2;
        }
    }
    bool all = true, any = false;
    for (const Criterion& c : criteria) {
        if (!only.empty() && c.id != only) continue;
        any = true;
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("%s criterion %s: %s -- %s\n", o.pass ? "PASS" : "FAIL", c.id.c_str(), c.title.c_str(),
                    o.detail.c_str());
        std::fflush(stdout);
        all = all && o.pass;
    }
    if (!any) {
        std::fprintf(stderr, "unknown criterion '%s'\n", only.c_str());
        return 2;
    }
    return all ? 0 : 1;
}
