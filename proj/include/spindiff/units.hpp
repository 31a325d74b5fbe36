#pragma once

#include <string>

namespace spindiff {

// Quantities in configuration files are strings with a unit suffix
// ("2.73 angstrom", "560 T/m", "9.01e-18 s"). These parse to SI.
// A bare number is accepted only by parse_number. Unknown or
// wrong-dimension units raise ConfigError naming the offending token.

double parse_length(const std::string& text);    // -> m
double parse_energy(const std::string& text);    // -> J
double parse_time(const std::string& text);      // -> s
double parse_bfield(const std::string& text);    // -> T
double parse_gradient(const std::string& text);  // -> T/m
double parse_velocity(const std::string& text);  // -> m/s
double parse_number(const std::string& text);    // dimensionless

constexpr double kElectronVolt = 1.602176634e-19;  // J

}  // namespace spindiff
