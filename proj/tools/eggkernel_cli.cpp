// eggkernel: Bergman and Szego kernels of egg domains { sum |z_j|^{2 m_j} < 1 }
// and their boundary asymptotics. See README.md for the verb reference.
#include <cmath>
#include <complex>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "eggkernel/asymptotics.hpp"
#include "eggkernel/egg_domain.hpp"
#include "eggkernel/errors.hpp"
#include "eggkernel/json_io.hpp"
#include "eggkernel/kernel_eval.hpp"
#include "eggkernel/settings.hpp"

namespace ek = eggkernel;
namespace io = eggkernel::jsonio;

namespace {

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

std::vector<double> parse_double_list(const char* flag, const std::string& s) {
    std::vector<double> out;
    for (const std::string& p : split_commas(s)) {
        try {
            size_t used = 0;
            out.push_back(std::stod(p, &used));
            if (used != p.size()) throw std::invalid_argument(p);
        } catch (const std::exception&) {
            ek::throw_domain(ek::errc::invalid_argument,
                             std::string(flag) + ": cannot parse \"" + p + "\" as a number");
        }
    }
    return out;
}

std::vector<int> parse_int_list(const char* flag, const std::string& s) {
    std::vector<int> out;
    for (double v : parse_double_list(flag, s)) {
        if (v != static_cast<int>(v))
            ek::throw_domain(ek::errc::invalid_argument,
                             std::string(flag) + ": entries must be integers");
        out.push_back(static_cast<int>(v));
    }
    return out;
}

// Complex vectors travel as flat re,im pairs: --z re1,im1,re2,im2,...
std::vector<std::complex<double>> parse_complex_list(const char* flag, const std::string& s) {
    std::vector<double> flat = parse_double_list(flag, s);
    if (flat.size() % 2 != 0)
        ek::throw_domain(ek::errc::invalid_argument,
                         std::string(flag) + ": expected flat re,im pairs (even count), got " +
                             std::to_string(flat.size()) + " numbers");
    std::vector<std::complex<double>> z;
    for (size_t i = 0; i < flat.size(); i += 2) z.emplace_back(flat[i], flat[i + 1]);
    return z;
}

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

struct CommonOpts {
    std::string settings_path = "./eggkernel.json";
    double tol = 0.0;
    bool tol_set = false;
    std::string format = "json";
};

void add_common(CLI::App* sub, CommonOpts& c) {
    sub->add_option("--settings", c.settings_path, "Settings/calibration file")
        ->capture_default_str();
    sub->add_option("--tol", c.tol, "Relative tolerance (default 1e-8)");
    sub->add_option("--format", c.format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
}

ek::EvalSettings load_settings_for(const CommonOpts& c, bool need_stamp) {
    ek::EvalSettings s;
    if (std::filesystem::exists(c.settings_path)) s = io::load_settings(c.settings_path);
    if (c.tol_set) s.tol = c.tol;
    s.validate();
    if (need_stamp && !s.calibrated())
        ek::throw_domain(ek::errc::calibration_missing,
                         "--settings: " + c.settings_path +
                             " carries no calibration stamp; run `eggkernel calibrate` first");
    return s;
}

std::string join_semis(const std::vector<int>& v, int offset) {
    std::string out;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += ";";
        out += std::to_string(v[i] + offset);
    }
    return out;
}

std::string join_semis(const std::vector<double>& v) {
    std::string out;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += ";";
        out += io::fmt(v[i]);
    }
    return out;
}

void print_kernel_csv(const ek::KernelValue& kv, bool header) {
    if (header) std::cout << "kernel,method,value,error_estimate,r\n";
    std::cout << ek::kernel_name(kv.kernel) << "," << ek::method_name(kv.method) << ","
              << io::fmt(kv.value) << "," << io::fmt(kv.error_estimate) << "," << io::fmt(kv.r)
              << "\n";
}

void print_report(const ek::AsymptoticReport& rep, const std::string& format) {
    if (format == "json") {
        std::cout << io::report_json(rep) << "\n";
        return;
    }
    std::cout << "r,kernel_value,leading_value,residual\n";
    for (size_t i = 0; i < rep.r_grid.size(); ++i)
        std::cout << io::fmt(rep.r_grid[i]) << "," << io::fmt(rep.kernel_values[i]) << ","
                  << io::fmt(rep.leading_values[i]) << "," << io::fmt(rep.residuals[i]) << "\n";
    std::cout << "slope_fit," << io::fmt(rep.slope_fit) << ",,\n";
    std::cout << "slope_expected," << io::fmt(rep.slope_expected) << ",,\n";
    std::cout << "bounded," << (rep.bounded ? 1 : 0) << ",,\n";
}

std::vector<double> geometric_grid(double from, double to, int steps) {
    if (!(from > to) || !(to > 0.0))
        ek::throw_domain(ek::errc::invalid_argument, "--r-from/--r-to: need r-from > r-to > 0");
    if (steps < 2) ek::throw_domain(ek::errc::invalid_argument, "--steps: need at least 2");
    std::vector<double> g(static_cast<size_t>(steps));
    for (int i = 0; i < steps; ++i)
        g[static_cast<size_t>(i)] = from * std::pow(to / from, static_cast<double>(i) / (steps - 1));
    return g;
}

// The closed-form profile only exists for m = (1,...,1,mhat); returns mhat.
int closed_form_shape(const ek::EggDomain& domain, const ek::BoundaryClassification& cls) {
    if (domain.n() < 2 || cls.P.size() != 1)
        ek::throw_domain(ek::errc::invalid_argument,
                         "--method closed: needs n >= 2 and exactly one degenerate direction");
    int p = cls.P.front();
    for (int j = 0; j < domain.n(); ++j)
        if (j != p && domain.m_at(j) != 1)
            ek::throw_domain(ek::errc::invalid_argument,
                             "--method closed: domain must have m = (1,...,1,m)");
    return domain.m_at(p);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bergman and Szego kernels of egg domains and their boundary asymptotics"};
    app.require_subcommand(1);
    std::function<void()> action;

    // ---- eval ----------------------------------------------------------
    auto* eval = app.add_subcommand("eval", "Evaluate a kernel at an interior point");
    {
        static CommonOpts c;
        static std::string m_str, z_str, z0_str, kernel = "bergman", method = "both";
        eval->add_option("--m", m_str, "Exponents m_1,...,m_n")->required();
        eval->add_option("--z", z_str, "Interior point, flat re,im pairs")->required();
        eval->add_option("--z0", z0_str, "Boundary point (required for leading/closed)");
        eval->add_option("--kernel", kernel)->check(CLI::IsMember({"bergman", "szego"}))
            ->capture_default_str();
        eval->add_option("--method", method)
            ->check(CLI::IsMember({"series", "integral", "both", "leading", "closed"}))
            ->capture_default_str();
        add_common(eval, c);
        eval->callback([&] {
            c.tol_set = eval->count("--tol") > 0;
            action = [&] {
                ek::EggDomain domain(parse_int_list("--m", m_str));
                auto z = parse_complex_list("--z", z_str);
                ek::Kernel kern = kernel == "bergman" ? ek::Kernel::bergman : ek::Kernel::szego;
                bool needs_stamp = method == "series" || method == "both" || method == "closed";
                ek::EvalSettings s = load_settings_for(c, needs_stamp);

                auto run = [&](ek::Method how) {
                    if (how == ek::Method::series)
                        return kern == ek::Kernel::bergman ? ek::bergman_series(domain, z, s)
                                                           : ek::szego_series(domain, z, s);
                    return kern == ek::Kernel::bergman ? ek::bergman_integral(domain, z, s)
                                                       : ek::szego_integral(domain, z, s);
                };

                if (method == "series" || method == "integral") {
                    ek::KernelValue kv =
                        run(method == "series" ? ek::Method::series : ek::Method::integral);
                    if (c.format == "json")
                        std::cout << io::kernel_value_json(domain, z, kv, s) << "\n";
                    else
                        print_kernel_csv(kv, true);
                    return;
                }
                if (method == "both") {
                    ek::KernelValue a = run(ek::Method::series);
                    ek::KernelValue b = run(ek::Method::integral);
                    double rel = std::abs(a.value - b.value) / std::abs(b.value);
                    if (c.format == "json") {
                        std::cout << io::ObjectWriter()
                                         .field_raw("domain", io::domain_json(domain))
                                         .field_raw("z", io::array_of(z))
                                         .field("kernel", ek::kernel_name(kern))
                                         .field_raw("series", io::kernel_value_json(domain, z, a, s))
                                         .field_raw("integral",
                                                    io::kernel_value_json(domain, z, b, s))
                                         .field("relative_difference", rel)
                                         .str()
                                  << "\n";
                    } else {
                        print_kernel_csv(a, true);
                        print_kernel_csv(b, false);
                    }
                    return;
                }

                // leading / closed need the chart center z0.
                if (z0_str.empty())
                    ek::throw_domain(ek::errc::invalid_argument,
                                     "--z0: required for --method " + method);
                ek::BoundaryClassification cls =
                    ek::classify(domain, parse_complex_list("--z0", z0_str));
                ek::ProfileContext ctx{domain, cls};
                ek::PolarPoint p = ek::to_polar(domain, cls, z);
                ek::KernelValue kv;
                kv.kernel = kern;
                kv.r = p.r;
                if (method == "leading") {
                    kv.method = ek::Method::leading;
                    kv.value = ek::leading_term(ctx, z, kern, s);
                } else {
                    kv.method = ek::Method::closed;
                    int mhat = closed_form_shape(domain, cls);
                    double T = std::pow(p.t.front(), 2 * mhat);
                    int n = domain.n();
                    double prod_q = 1.0;
                    for (int j : cls.Q) {
                        int mj = domain.m_at(j);
                        prod_q *= mj * mj * std::pow(std::norm(cls.z0[static_cast<size_t>(j)]), mj - 1);
                    }
                    if (kern == ek::Kernel::bergman)
                        kv.value = factorial(n) / std::pow(std::numbers::pi, n) * prod_q *
                                   ek::phi_b_closed_special(n, mhat, T, s) /
                                   std::pow(p.r, ctx.exponent_B());
                    else
                        kv.value = factorial(n - 1) / (2.0 * std::pow(std::numbers::pi, n)) *
                                   prod_q * ek::phi_s_closed_special(n, mhat, T, s) /
                                   std::pow(p.r, ctx.exponent_S());
                }
                // Estimate covers the profile quadrature, not the omitted
                // lower-order terms of the expansion.
                kv.error_estimate = std::abs(kv.value) * s.tol;
                if (c.format == "json")
                    std::cout << io::kernel_value_json(domain, z, kv, s) << "\n";
                else
                    print_kernel_csv(kv, true);
            };
        });
    }

    // ---- classify ------------------------------------------------------
    auto* classify_cmd = app.add_subcommand("classify", "Classify a boundary point (I/P/Q/k)");
    {
        static CommonOpts c;
        static std::string m_str, z0_str;
        classify_cmd->add_option("--m", m_str)->required();
        classify_cmd->add_option("--z0", z0_str, "Boundary point, flat re,im pairs")->required();
        add_common(classify_cmd, c);
        classify_cmd->callback([&] {
            action = [&] {
                ek::EggDomain domain(parse_int_list("--m", m_str));
                ek::BoundaryClassification cls =
                    ek::classify(domain, parse_complex_list("--z0", z0_str));
                if (c.format == "json") {
                    std::cout << io::classification_json(domain, cls) << "\n";
                } else {
                    std::cout << "field,value\n";
                    std::cout << "m," << join_semis(domain.m(), 0) << "\n";
                    std::cout << "n," << domain.n() << "\n";
                    std::cout << "I," << join_semis(cls.I, 1) << "\n";
                    std::cout << "P," << join_semis(cls.P, 1) << "\n";
                    std::cout << "Q," << join_semis(cls.Q, 1) << "\n";
                    std::cout << "k," << cls.degenerate_rank << "\n";
                }
            };
        });
    }

    // ---- polar ---------------------------------------------------------
    auto* polar_cmd = app.add_subcommand("polar", "Polar chart (t, r) of an interior point");
    {
        static CommonOpts c;
        static std::string m_str, z0_str, z_str, variant = "power";
        static double alpha = 0.0;
        polar_cmd->add_option("--m", m_str)->required();
        polar_cmd->add_option("--z0", z0_str, "Chart center on the boundary")->required();
        polar_cmd->add_option("--z", z_str, "Interior point")->required();
        polar_cmd->add_option("--alpha", alpha, "Also report U_alpha membership (alpha >= 1)");
        polar_cmd->add_option("--ualpha-variant", variant)
            ->check(CLI::IsMember({"power", "sum"}))
            ->capture_default_str();
        add_common(polar_cmd, c);
        polar_cmd->callback([&] {
            bool with_alpha = polar_cmd->count("--alpha") > 0;
            action = [&, with_alpha] {
                ek::EggDomain domain(parse_int_list("--m", m_str));
                ek::BoundaryClassification cls =
                    ek::classify(domain, parse_complex_list("--z0", z0_str));
                auto z = parse_complex_list("--z", z_str);
                ek::PolarPoint p = ek::to_polar(domain, cls, z);
                bool inside = false;
                ek::UalphaVariant uv = variant == "power" ? ek::UalphaVariant::power
                                                          : ek::UalphaVariant::sum;
                if (with_alpha) inside = ek::in_admissible_region(domain, cls, z, alpha, uv);
                if (c.format == "json") {
                    io::ObjectWriter w;
                    w.field_raw("m", io::array_of(domain.m()))
                        .field("n", domain.n())
                        .field_raw("z", io::array_of(z))
                        .field_raw("t", io::array_of(p.t))
                        .field("r", p.r);
                    if (with_alpha)
                        w.field("alpha", alpha)
                            .field("ualpha_variant", variant)
                            .field("in_admissible_region", inside);
                    std::cout << w.str() << "\n";
                } else {
                    std::cout << "field,value\n";
                    std::cout << "t," << join_semis(p.t) << "\n";
                    std::cout << "r," << io::fmt(p.r) << "\n";
                    if (with_alpha)
                        std::cout << "in_admissible_region," << (inside ? 1 : 0) << "\n";
                }
            };
        });
    }

    // ---- phi -----------------------------------------------------------
    auto* phi_cmd = app.add_subcommand("phi", "Singular profile at angular coordinates t");
    {
        static CommonOpts c;
        static std::string m_str, z0_str, t_str, kernel = "bergman";
        phi_cmd->add_option("--m", m_str)->required();
        phi_cmd->add_option("--z0", z0_str)->required();
        phi_cmd->add_option("--t", t_str, "Angular coordinates, one per P index")->required();
        phi_cmd->add_option("--kernel", kernel)->check(CLI::IsMember({"bergman", "szego"}))
            ->capture_default_str();
        add_common(phi_cmd, c);
        phi_cmd->callback([&] {
            c.tol_set = phi_cmd->count("--tol") > 0;
            action = [&] {
                ek::EggDomain domain(parse_int_list("--m", m_str));
                ek::BoundaryClassification cls =
                    ek::classify(domain, parse_complex_list("--z0", z0_str));
                ek::ProfileContext ctx{domain, cls};
                std::vector<double> t = parse_double_list("--t", t_str);
                ek::EvalSettings s = load_settings_for(c, false);
                bool berg = kernel == "bergman";
                double v = berg ? ek::phi_b(ctx, t, s) : ek::phi_s(ctx, t, s);
                double expo = berg ? ctx.exponent_B() : ctx.exponent_S();
                if (c.format == "json") {
                    std::cout << io::ObjectWriter()
                                     .field_raw("m", io::array_of(domain.m()))
                                     .field("n", domain.n())
                                     .field_raw("t", io::array_of(t))
                                     .field("kernel", kernel)
                                     .field("phi", v)
                                     .field("error_estimate", std::abs(v) * s.tol)
                                     .field("exponent", expo)
                                     .str()
                              << "\n";
                } else {
                    std::cout << "field,value\n";
                    std::cout << "phi," << io::fmt(v) << "\n";
                    std::cout << "error_estimate," << io::fmt(std::abs(v) * s.tol) << "\n";
                    std::cout << "exponent," << io::fmt(expo) << "\n";
                }
            };
        });
    }

    // ---- limit-scan ------------------------------------------------------
    auto* scan_cmd = app.add_subcommand(
        "limit-scan", "Scan r -> 0 at fixed t and compare kernel against its leading term");
    {
        static CommonOpts c;
        static std::string m_str, z0_str, t_str, kernel = "bergman";
        static double r_from = 0.1, r_to = 0.001;
        static int steps = 20;
        scan_cmd->add_option("--m", m_str)->required();
        scan_cmd->add_option("--z0", z0_str)->required();
        scan_cmd->add_option("--t", t_str, "Fixed angular coordinates")->required();
        scan_cmd->add_option("--kernel", kernel)->check(CLI::IsMember({"bergman", "szego"}))
            ->capture_default_str();
        scan_cmd->add_option("--r-from", r_from)->capture_default_str();
        scan_cmd->add_option("--r-to", r_to)->capture_default_str();
        scan_cmd->add_option("--steps", steps)->capture_default_str();
        add_common(scan_cmd, c);
        scan_cmd->callback([&] {
            c.tol_set = scan_cmd->count("--tol") > 0;
            action = [&] {
                ek::EggDomain domain(parse_int_list("--m", m_str));
                ek::BoundaryClassification cls =
                    ek::classify(domain, parse_complex_list("--z0", z0_str));
                ek::ProfileContext ctx{domain, cls};
                std::vector<double> t = parse_double_list("--t", t_str);
                ek::EvalSettings s = load_settings_for(c, false);
                ek::Kernel kern = kernel == "bergman" ? ek::Kernel::bergman : ek::Kernel::szego;
                ek::AsymptoticReport rep =
                    ek::residual_scan(ctx, t, geometric_grid(r_from, r_to, steps), kern, s);
                print_report(rep, c.format);
            };
        });
    }

    // ---- recursion-check -------------------------------------------------
    auto* rec_cmd = app.add_subcommand(
        "recursion-check", "Check one profile recursion step along a path into the simplex");
    {
        static CommonOpts c;
        static std::string m_str, z0_str, t0_str, t_str;
        static double r_from = 0.2, r_to = 0.002;
        static int steps = 16;
        rec_cmd->add_option("--m", m_str)->required();
        rec_cmd->add_option("--z0", z0_str)->required();
        rec_cmd->add_option("--t0", t0_str, "Simplex boundary point being approached")->required();
        rec_cmd->add_option("--t", t_str, "Fixed next-level angular coordinates")->required();
        rec_cmd->add_option("--r-from", r_from)->capture_default_str();
        rec_cmd->add_option("--r-to", r_to)->capture_default_str();
        rec_cmd->add_option("--steps", steps)->capture_default_str();
        add_common(rec_cmd, c);
        rec_cmd->callback([&] {
            c.tol_set = rec_cmd->count("--tol") > 0;
            action = [&] {
                ek::EggDomain domain(parse_int_list("--m", m_str));
                ek::BoundaryClassification cls =
                    ek::classify(domain, parse_complex_list("--z0", z0_str));
                ek::ProfileContext ctx{domain, cls};
                ek::RecursionState state = ek::recursion_initial(ctx);
                ek::EvalSettings s = load_settings_for(c, false);
                ek::AsymptoticReport rep = ek::recursion_residual_check(
                    state, parse_double_list("--t0", t0_str), parse_double_list("--t", t_str),
                    geometric_grid(r_from, r_to, steps), s);
                print_report(rep, c.format);
            };
        });
    }

    // ---- calibrate -------------------------------------------------------
    auto* cal_cmd = app.add_subcommand(
        "calibrate", "Measure the normalization constants and stamp the settings file");
    {
        static CommonOpts c;
        add_common(cal_cmd, c);
        cal_cmd->callback([&] {
            c.tol_set = cal_cmd->count("--tol") > 0;
            action = [&] {
                ek::EvalSettings base;
                if (std::filesystem::exists(c.settings_path))
                    base = io::load_settings(c.settings_path);
                if (c.tol_set) base.tol = c.tol;
                ek::CalibrationReport rep = ek::calibrate_constants(base);
                io::save_settings(rep.settings, c.settings_path);
                if (c.format == "json") {
                    std::cout << io::calibration_json(rep) << "\n";
                } else {
                    std::cout << "field,value\n";
                    std::cout << "series_ratio_monomial," << io::fmt(rep.series_ratio_monomial) << "\n";
                    std::cout << "series_ratio_disc," << io::fmt(rep.series_ratio_disc) << "\n";
                    std::cout << "closed_ratio_bergman," << io::fmt(rep.closed_ratio_bergman) << "\n";
                    std::cout << "closed_ratio_szego," << io::fmt(rep.closed_ratio_szego) << "\n";
                }
            };
        });
    }

    // ---- estimate-check ----------------------------------------------------
    auto* est_cmd = app.add_subcommand(
        "estimate-check",
        "Compare decomposition terms against their power-law estimates (ratio bound C)");
    {
        static CommonOpts c;
        static std::string m_str, z0_str, z_str, t_str;
        est_cmd->add_option("--m", m_str)->required();
        est_cmd->add_option("--z0", z0_str)->required();
        est_cmd->add_option("--z", z_str, "Interior point: check the kernel-side terms I_K");
        est_cmd->add_option("--t", t_str, "Angular point: check the profile-side terms J_K");
        add_common(est_cmd, c);
        est_cmd->callback([&] {
            c.tol_set = est_cmd->count("--tol") > 0;
            action = [&] {
                ek::EggDomain domain(parse_int_list("--m", m_str));
                ek::BoundaryClassification cls =
                    ek::classify(domain, parse_complex_list("--z0", z0_str));
                ek::ProfileContext ctx{domain, cls};
                ek::EvalSettings s = load_settings_for(c, false);
                if (z_str.empty() == t_str.empty())
                    ek::throw_domain(ek::errc::invalid_argument,
                                     "--z/--t: pass exactly one of them");
                if (domain.n() > 16)
                    ek::throw_domain(ek::errc::invalid_argument,
                                     "--m: estimate-check enumerates subsets, n <= 16 only");

                std::string rows;
                double worst = 1.0;
                auto add_row = [&](const std::vector<int>& K, double value, double estimate) {
                    if (value == 0.0 && estimate == 0.0) return;  // t_j = 0 kills both sides
                    double ratio = value / estimate;
                    worst = std::max(worst, std::max(ratio, 1.0 / ratio));
                    if (!rows.empty()) rows += ", ";
                    rows += io::ObjectWriter()
                                .field_raw("K", io::array_of(K, 1))
                                .field("value", value)
                                .field("estimate", estimate)
                                .field("ratio", ratio)
                                .str();
                };

                std::string route;
                if (!z_str.empty()) {
                    route = "I";
                    auto z = parse_complex_list("--z", z_str);
                    unsigned i_mask = 0;
                    for (int j : cls.I) i_mask |= 1u << j;
                    for (unsigned mask = 0; mask < (1u << domain.n()); ++mask) {
                        if ((mask & i_mask) != i_mask) continue;
                        std::vector<int> K;
                        for (int j = 0; j < domain.n(); ++j)
                            if (mask & (1u << j)) K.push_back(j);
                        add_row(K, ek::i_k_term(domain, cls, K, z, s).value,
                                ek::i_k_estimate(domain, K, z));
                    }
                } else {
                    route = "J";
                    std::vector<double> t = parse_double_list("--t", t_str);
                    size_t np = cls.P.size();
                    for (unsigned mask = 0; mask < (1u << np); ++mask) {
                        std::vector<int> K;
                        for (size_t j = 0; j < np; ++j)
                            if (mask & (1u << j)) K.push_back(cls.P[j]);
                        add_row(K, ek::j_k_term(ctx, K, t, s), ek::j_k_estimate(ctx, K, t));
                    }
                }

                if (c.format == "json") {
                    std::cout << io::ObjectWriter()
                                     .field_raw("m", io::array_of(domain.m()))
                                     .field("n", domain.n())
                                     .field("route", route)
                                     .field_raw("terms", "[" + rows + "]")
                                     .field("C", worst)
                                     .field("bounded", worst <= 100.0)
                                     .str()
                              << "\n";
                } else {
                    std::cout << "route,C,bounded\n";
                    std::cout << route << "," << io::fmt(worst) << "," << (worst <= 100.0 ? 1 : 0)
                              << "\n";
                }
            };
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        action();
    } catch (const ek::DomainError& e) {
        std::cerr << "error: " << app.get_subcommands().front()->get_name() << ": " << e.what()
                  << "\n";
        return 2;
    } catch (const ek::NumericError& e) {
        std::cerr << "error: " << app.get_subcommands().front()->get_name() << ": " << e.what()
                  << "\n";
        return 3;
    }
    return 0;
}
