#ifndef EGGKERNEL_JSON_IO_HPP
#define EGGKERNEL_JSON_IO_HPP

#include <complex>
#include <string>
#include <vector>

#include "eggkernel/asymptotics.hpp"
#include "eggkernel/egg_domain.hpp"
#include "eggkernel/kernel_eval.hpp"
#include "eggkernel/settings.hpp"

namespace eggkernel::jsonio {

/** Doubles in output are always rendered with printf "%.17g" so repeated runs
 *  are byte-identical and round-trip exactly. */
std::string fmt(double x);

/**
 * Minimal append-only JSON object builder. Keys appear in insertion order and
 * nothing is ever re-sorted, which is what makes the CLI output deterministic.
 * Values either come from the typed field() overloads or are passed as
 * already-rendered JSON through field_raw().
 */
class ObjectWriter {
  public:
    ObjectWriter& field(const std::string& key, double v);
    ObjectWriter& field(const std::string& key, int v);
    ObjectWriter& field(const std::string& key, long v);
    ObjectWriter& field(const std::string& key, bool v);
    ObjectWriter& field(const std::string& key, const std::string& v);
    ObjectWriter& field(const std::string& key, const char* v);
    ObjectWriter& field_raw(const std::string& key, const std::string& json);
    std::string str() const;

  private:
    std::string body_;
};

std::string array_of(const std::vector<double>& v);
std::string array_of(const std::vector<int>& v, int offset = 0);
/** Complex entries render as two-element [re, im] arrays. */
std::string array_of(const std::vector<std::complex<double>>& v);

std::string domain_json(const EggDomain& domain);
std::string classification_json(const EggDomain& domain, const BoundaryClassification& cls);
std::string polar_json(const EggDomain& domain, const std::vector<std::complex<double>>& z,
                       const PolarPoint& p);
std::string kernel_value_json(const EggDomain& domain, const std::vector<std::complex<double>>& z,
                              const KernelValue& kv, const EvalSettings& settings);
std::string report_json(const AsymptoticReport& rep);
std::string calibration_json(const CalibrationReport& rep);
std::string settings_json(const EvalSettings& settings);

/** Parse a settings file. Absent keys keep their defaults, absent calibration
 *  constants stay NaN (uncalibrated), and unrecognized keys are rejected so a
 *  typo cannot silently fall back to a default. */
EvalSettings load_settings(const std::string& path);
void save_settings(const EvalSettings& settings, const std::string& path);

} // namespace eggkernel::jsonio

#endif
