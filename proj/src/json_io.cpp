#include "eggkernel/json_io.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "eggkernel/errors.hpp"

#include <json.hpp>

namespace eggkernel::jsonio {

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace {

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out + "\"";
}

} // namespace

ObjectWriter& ObjectWriter::field_raw(const std::string& key, const std::string& json) {
    if (!body_.empty()) body_ += ", ";
    body_ += quote(key) + ": " + json;
    return *this;
}

ObjectWriter& ObjectWriter::field(const std::string& key, double v) { return field_raw(key, fmt(v)); }
ObjectWriter& ObjectWriter::field(const std::string& key, int v) {
    return field_raw(key, std::to_string(v));
}
ObjectWriter& ObjectWriter::field(const std::string& key, long v) {
    return field_raw(key, std::to_string(v));
}
ObjectWriter& ObjectWriter::field(const std::string& key, bool v) {
    return field_raw(key, v ? "true" : "false");
}
ObjectWriter& ObjectWriter::field(const std::string& key, const std::string& v) {
    return field_raw(key, quote(v));
}
ObjectWriter& ObjectWriter::field(const std::string& key, const char* v) {
    return field_raw(key, quote(v));
}

std::string ObjectWriter::str() const { return "{" + body_ + "}"; }

std::string array_of(const std::vector<double>& v) {
    std::string out = "[";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += fmt(v[i]);
    }
    return out + "]";
}

std::string array_of(const std::vector<int>& v, int offset) {
    std::string out = "[";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += std::to_string(v[i] + offset);
    }
    return out + "]";
}

std::string array_of(const std::vector<std::complex<double>>& v) {
    std::string out = "[";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += "[" + fmt(v[i].real()) + ", " + fmt(v[i].imag()) + "]";
    }
    return out + "]";
}

std::string domain_json(const EggDomain& domain) {
    return ObjectWriter().field_raw("m", array_of(domain.m())).field("n", domain.n()).str();
}

std::string classification_json(const EggDomain& domain, const BoundaryClassification& cls) {
    // Index sets are reported 1-based, matching the usual coordinate naming
    // z_1..z_n, while the C++ API stays 0-based throughout.
    return ObjectWriter()
        .field_raw("m", array_of(domain.m()))
        .field("n", domain.n())
        .field_raw("z0", array_of(cls.z0))
        .field_raw("I", array_of(cls.I, 1))
        .field_raw("P", array_of(cls.P, 1))
        .field_raw("Q", array_of(cls.Q, 1))
        .field("k", cls.degenerate_rank)
        .str();
}

std::string polar_json(const EggDomain& domain, const std::vector<std::complex<double>>& z,
                       const PolarPoint& p) {
    return ObjectWriter()
        .field_raw("m", array_of(domain.m()))
        .field("n", domain.n())
        .field_raw("z", array_of(z))
        .field_raw("t", array_of(p.t))
        .field("r", p.r)
        .str();
}

std::string kernel_value_json(const EggDomain& domain, const std::vector<std::complex<double>>& z,
                              const KernelValue& kv, const EvalSettings& settings) {
    return ObjectWriter()
        .field_raw("domain", domain_json(domain))
        .field_raw("z", array_of(z))
        .field("kernel", kernel_name(kv.kernel))
        .field("method", method_name(kv.method))
        .field("value", kv.value)
        .field("error_estimate", kv.error_estimate)
        .field("r", kv.r)
        .field("settings_digest", settings.digest())
        .str();
}

std::string report_json(const AsymptoticReport& rep) {
    return ObjectWriter()
        .field_raw("t_fixed", array_of(rep.t_fixed))
        .field_raw("r_grid", array_of(rep.r_grid))
        .field_raw("kernel_values", array_of(rep.kernel_values))
        .field_raw("leading_values", array_of(rep.leading_values))
        .field_raw("residuals", array_of(rep.residuals))
        .field("slope_fit", rep.slope_fit)
        .field("slope_expected", rep.slope_expected)
        .field("bounded", rep.bounded)
        .str();
}

std::string calibration_json(const CalibrationReport& rep) {
    return ObjectWriter()
        .field("series_ratio_monomial", rep.series_ratio_monomial)
        .field("series_ratio_disc", rep.series_ratio_disc)
        .field("closed_ratio_bergman", rep.closed_ratio_bergman)
        .field("closed_ratio_szego", rep.closed_ratio_szego)
        .field_raw("settings", settings_json(rep.settings))
        .str();
}

std::string settings_json(const EvalSettings& s) {
    ObjectWriter w;
    w.field("tol", s.tol)
        .field("max_subdivisions", s.max_subdivisions)
        .field("max_series_terms", s.max_series_terms)
        .field("max_series_degree", s.max_series_degree)
        .field("precision", precision_name(s.precision));
    // JSON has no NaN; an uncalibrated constant is simply absent.
    if (std::isfinite(s.series_constant_c)) w.field("series_constant_c", s.series_constant_c);
    if (std::isfinite(s.closed_form_constant))
        w.field("closed_form_constant", s.closed_form_constant);
    if (std::isfinite(s.closed_form_constant_szego))
        w.field("closed_form_constant_szego", s.closed_form_constant_szego);
    return w.str();
}

EvalSettings load_settings(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw_domain(errc::invalid_argument, "cannot open settings file " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw_domain(errc::invalid_argument, "settings file " + path + ": " + e.what());
    }
    if (!j.is_object())
        throw_domain(errc::invalid_argument, "settings file " + path + ": top level must be an object");

    EvalSettings s;
    try {
        for (const auto& [key, val] : j.items()) {
            if (key == "tol") s.tol = val.get<double>();
            else if (key == "max_subdivisions") s.max_subdivisions = val.get<int>();
            else if (key == "max_series_terms") s.max_series_terms = val.get<long>();
            else if (key == "max_series_degree") s.max_series_degree = val.get<int>();
            else if (key == "precision") {
                std::string p = val.get<std::string>();
                if (p == "standard") s.precision = PrecisionMode::standard;
                else if (p == "extended") s.precision = PrecisionMode::extended;
                else throw_domain(errc::invalid_argument, "settings: unknown precision \"" + p + "\"");
            }
            else if (key == "series_constant_c") s.series_constant_c = val.get<double>();
            else if (key == "closed_form_constant") s.closed_form_constant = val.get<double>();
            else if (key == "closed_form_constant_szego")
                s.closed_form_constant_szego = val.get<double>();
            else throw_domain(errc::invalid_argument, "settings: unrecognized key \"" + key + "\"");
        }
    } catch (const nlohmann::json::exception& e) {
        throw_domain(errc::invalid_argument, std::string("settings: bad value type: ") + e.what());
    }
    s.validate();
    return s;
}

void save_settings(const EvalSettings& settings, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw_domain(errc::invalid_argument, "cannot write settings file " + path);
    out << settings_json(settings) << "\n";
}

} // namespace eggkernel::jsonio

namespace eggkernel {

std::string EvalSettings::digest() const {
    std::string canon = jsonio::settings_json(*this);
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : canon) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace eggkernel
