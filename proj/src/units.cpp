#include "spindiff/units.hpp"

#include <cctype>
#include <cstdlib>
#include <map>

#include "spindiff/errors.hpp"

namespace spindiff {

namespace {

struct Parsed {
  double value;
  std::string unit;  // empty for bare numbers
};

Parsed split(const std::string& text) {
  const char* s = text.c_str();
  char* end = nullptr;
  double v = std::strtod(s, &end);
  if (end == s) throw ConfigError("not a quantity: '" + text + "'");
  std::string unit(end);
  while (!unit.empty() && std::isspace(static_cast<unsigned char>(unit.front()))) unit.erase(unit.begin());
  while (!unit.empty() && std::isspace(static_cast<unsigned char>(unit.back()))) unit.pop_back();
  return {v, unit};
}

double convert(const std::string& text, const std::map<std::string, double>& table,
               const char* dimension) {
  Parsed p = split(text);
  auto it = table.find(p.unit);
  if (it == table.end())
    throw ConfigError(std::string("bad ") + dimension + " unit in '" + text + "'");
  return p.value * it->second;
}

}  // namespace

double parse_length(const std::string& text) {
  static const std::map<std::string, double> table = {
      {"m", 1.0},     {"cm", 1e-2},       {"mm", 1e-3},       {"um", 1e-6},
      {"nm", 1e-9},   {"angstrom", 1e-10}, {"Angstrom", 1e-10}, {"A", 1e-10},
      {"pm", 1e-12}};
  return convert(text, table, "length");
}

double parse_energy(const std::string& text) {
  static const std::map<std::string, double> table = {
      {"J", 1.0},
      {"eV", kElectronVolt},
      {"meV", 1e-3 * kElectronVolt},
      {"keV", 1e3 * kElectronVolt}};
  return convert(text, table, "energy");
}

double parse_time(const std::string& text) {
  static const std::map<std::string, double> table = {
      {"s", 1.0}, {"ms", 1e-3}, {"us", 1e-6}, {"ns", 1e-9}, {"ps", 1e-12},
      {"fs", 1e-15}, {"as", 1e-18}};
  return convert(text, table, "time");
}

double parse_bfield(const std::string& text) {
  static const std::map<std::string, double> table = {
      {"T", 1.0}, {"Tesla", 1.0}, {"mT", 1e-3}, {"uT", 1e-6}, {"nT", 1e-9}};
  return convert(text, table, "magnetic field");
}

double parse_gradient(const std::string& text) {
  static const std::map<std::string, double> table = {
      {"T/m", 1.0}, {"Tesla/m", 1.0}, {"mT/m", 1e-3}, {"T/mm", 1e3}};
  return convert(text, table, "field gradient");
}

double parse_velocity(const std::string& text) {
  static const std::map<std::string, double> table = {
      {"m/s", 1.0}, {"km/s", 1e3}, {"mm/s", 1e-3}};
  return convert(text, table, "velocity");
}

double parse_number(const std::string& text) {
  Parsed p = split(text);
  if (!p.unit.empty()) throw ConfigError("expected bare number, got '" + text + "'");
  return p.value;
}

}  // namespace spindiff
