#include "ssusy/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "ssusy/classify.hpp"
#include "ssusy/error.hpp"
#include "ssusy/spectra.hpp"
#include "ssusy/verify.hpp"

namespace ssusy::cli {

using nlohmann::json;

namespace {

[[noreturn]] void parse_fail(const std::string& field, const std::string& why) {
  throw Error(ErrorCode::ParseError, field + ": " + why);
}

const json& require(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object() || !obj.contains(key)) parse_fail(path, "missing field");
  return obj.at(key);
}

double number(const json& v, const std::string& path) {
  if (!v.is_number()) parse_fail(path, "expected a number");
  return v.get<double>();
}

double number_or(const json& obj, const char* key, double fallback, const std::string& path) {
  return obj.contains(key) ? number(obj.at(key), path) : fallback;
}

Mat2 parse_entries(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 4) parse_fail(path, "expected 4 entries in row-major order");
  std::array<cplx, 4> e{};
  for (std::size_t i = 0; i < 4; ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    const json& z = v.at(i);
    if (z.is_number()) {
      e[i] = z.get<double>();
    } else if (z.is_array() && z.size() == 2) {
      e[i] = cplx(number(z.at(0), p + "[0]"), number(z.at(1), p + "[1]"));
    } else {
      parse_fail(p, "expected [re, im]");
    }
  }
  return {e[0], e[1], e[2], e[3]};
}

struct ParsedU {
  Mat2 m;
  std::optional<double> theta;  // angles form only
};

ParsedU parse_u(const json& u, double L0) {
  if (!u.is_object()) parse_fail("U", "expected an object");
  const std::string form = u.contains("form") ? u.at("form").get<std::string>()
                                              : (u.contains("entries") ? "matrix" : "angles");
  if (form == "matrix") return {parse_entries(require(u, "entries", "U.entries"), "U.entries"), {}};
  if (form != "angles") parse_fail("U.form", "expected \"angles\" or \"matrix\"");
  double theta = 0.0;
  if (u.contains("theta")) {
    theta = number(u.at("theta"), "U.theta");
  } else if (u.contains("L")) {
    theta = theta_from_length(number(u.at("L"), "U.L"), L0);
  } else {
    parse_fail("U.theta", "missing field");
  }
  const double mu = number_or(u, "mu", 0.0, "U.mu");
  const double nu = number_or(u, "nu", 0.0, "U.nu");
  return {characteristic_from_angles(theta, mu, nu), theta};
}

Mat2 parse_dl(const json& d, const ParsedU& u, double L0) {
  if (!d.is_object()) parse_fail("Dl", "expected an object");
  if (d.contains("theta_l")) return wall_from_theta(number(d.at("theta_l"), "Dl.theta_l"));
  if (d.contains("L_l")) return wall_from_theta(theta_from_length(number(d.at("L_l"), "Dl.L_l"), L0));
  if (d.contains("link")) {
    if (!u.theta) parse_fail("Dl.link", "needs U in angles form");
    const std::string link = d.at("link").get<std::string>();
    if (link == "theta") return wall_from_theta(*u.theta);
    if (link == "-theta") return wall_from_theta(-*u.theta);
    parse_fail("Dl.link", "expected \"theta\" or \"-theta\"");
  }
  if (d.contains("entries")) {
    const Mat2 m = parse_entries(d.at("entries"), "Dl.entries");
    if (!m.is_diagonal(1e-12)) throw Error(ErrorCode::NotDiagonal, "Dl.entries: wall matrix must be diagonal");
    return m;
  }
  parse_fail("Dl", "expected theta_l, L_l, link or entries");
}

double clean(double x) { return x == 0.0 ? 0.0 : x; }

json entries_json(const Mat2& m) {
  json out = json::array();
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) out.push_back({clean(m(r, c).real()), clean(m(r, c).imag())});
  return out;
}

json vec_json(const Vec3& v) { return {clean(v.x), clean(v.y), clean(v.z)}; }

std::string fmt(double x) {
  if (std::isnan(x)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", clean(x));
  std::string s = buf;
  return s == "-0" ? "0" : s;
}

json classification_json(const SusyClassification& c) {
  json charges = json::array();
  for (const auto& q : c.charges) {
    charges.push_back({{"alpha", clean(q.alpha)},
                       {"c", clean(q.c)},
                       {"theta", clean(q.theta)},
                       {"a", vec_json(q.a)},
                       {"b", vec_json(q.b)},
                       {"kinetic_vector", vec_json(q.kinetic_vector())},
                       {"shift_vector", vec_json(q.shift_vector())},
                       {"conjugator", entries_json(q.conjugator)},
                       {"half_parity_dressed", q.half_parity_dressed},
                       {"shift", clean(q.shift())}});
  }
  return {{"degree", to_string(c.degree)},
          {"goodness", to_string(c.goodness)},
          {"shift", clean(c.shift)},
          {"mu", clean(c.mu)},
          {"nu", clean(c.nu)},
          {"notes", c.notes},
          {"charges", charges}};
}

void write_spectrum(const Spectrum& s, Format format, std::ostream& out) {
  if (format == Format::Json) {
    json levels = json::array();
    for (std::size_t i = 0; i < s.levels.size(); ++i) {
      const Level& l = s.levels[i];
      levels.push_back({{"index", i},
                        {"sector", to_string(l.sector)},
                        {"k_or_kappa", clean(l.rate)},
                        {"energy", clean(l.energy)},
                        {"multiplicity", l.multiplicity}});
    }
    const json doc = {{"levels", levels},
                      {"scan_window", {clean(s.e_min), clean(s.e_max)}},
                      {"solver_report",
                       {{"bracket_count", s.report.bracket_count},
                        {"refinement_tolerance", s.report.refinement_tolerance},
                        {"nullity_method", s.report.nullity_method},
                        {"nullity_mismatches", s.report.nullity_mismatches},
                        {"truncated", s.report.truncated}}}};
    out << doc.dump(2) << "\n";
    return;
  }
  out << "index,sector,k_or_kappa,energy,multiplicity\n";
  for (std::size_t i = 0; i < s.levels.size(); ++i) {
    const Level& l = s.levels[i];
    out << i << ',' << to_string(l.sector) << ',' << fmt(l.rate) << ',' << fmt(l.energy) << ','
        << l.multiplicity << "\n";
  }
}

json report_json(const VerificationReport& r) {
  json out = json::array();
  for (const auto& c : r.checks)
    out.push_back({{"name", c.name},
                   {"passed", c.passed},
                   {"residual", clean(c.residual)},
                   {"tolerance", c.tolerance},
                   {"details", c.details}});
  return out;
}

void set_scan_value(json& doc, const std::string& param, double v) {
  json& u = doc["U"];
  const bool angles = u.is_object() && !u.contains("entries") && u.value("form", "angles") == "angles";
  if (param == "theta" || param == "mu" || param == "L") {
    if (!angles) parse_fail("U.form", "scan over " + param + " needs U in angles form");
    if (param == "theta") {
      u.erase("L");
      u["theta"] = v;
    } else if (param == "L") {
      u.erase("theta");
      u["L"] = v;
    } else {
      u["mu"] = v;
    }
  } else if (param == "theta_l") {
    doc["Dl"] = json{{"theta_l", v}};
  } else {
    parse_fail("scan", "unknown parameter " + param);
  }
}

struct ScanRow {
  double value = 0.0;
  std::string degree, goodness;
  double shift = 0.0;
  double ground = std::nan("");
};

ScanRow scan_point(const json& base, const ScanSpec& scan, double v) {
  json doc = base;
  set_scan_value(doc, scan.parameter, v);
  const SystemSpec spec = load_system(doc.dump());
  const SusyClassification cls = classify(spec);
  const Spectrum s = solve_spectrum(spec, 1);
  ScanRow row;
  row.value = v;
  row.degree = to_string(cls.degree);
  row.goodness = to_string(cls.goodness);
  row.shift = cls.shift;
  if (!s.levels.empty()) row.ground = s.levels.front().energy;
  return row;
}

int run_scan(const RunConfig& config, std::ostream& out) {
  const ScanSpec& scan = *config.scan;
  json base;
  try {
    base = json::parse(config.system_json);
  } catch (const json::parse_error& e) {
    parse_fail("system", e.what());
  }
  const int n = scan.steps;
  std::vector<ScanRow> rows(static_cast<std::size_t>(n));
  std::vector<std::string> errors(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < n; ++i) {
    const double v = scan.from + (scan.to - scan.from) * static_cast<double>(i) / static_cast<double>(n - 1);
    try {
      rows[static_cast<std::size_t>(i)] = scan_point(base, scan, v);
    } catch (const std::exception& e) {
      errors[static_cast<std::size_t>(i)] = e.what();
    }
  }
  for (int i = 0; i < n; ++i)
    if (!errors[static_cast<std::size_t>(i)].empty())
      throw std::runtime_error("scan point " + std::to_string(i) + ": " + errors[static_cast<std::size_t>(i)]);
  if (config.format == Format::Json) {
    json doc = json::array();
    for (const auto& r : rows)
      doc.push_back({{"param", scan.parameter},
                     {"value", clean(r.value)},
                     {"degree", r.degree},
                     {"shift", clean(r.shift)},
                     {"ground_energy", std::isnan(r.ground) ? json(nullptr) : json(clean(r.ground))},
                     {"goodness", r.goodness}});
    out << doc.dump(2) << "\n";
  } else {
    out << "param,value,degree,shift,ground_energy,goodness\n";
    for (const auto& r : rows)
      out << scan.parameter << ',' << fmt(r.value) << ',' << r.degree << ',' << fmt(r.shift) << ','
          << fmt(r.ground) << ',' << r.goodness << "\n";
  }
  return 0;
}

int dispatch(const RunConfig& config, std::ostream& out) {
  const bool csv = config.format == Format::Csv;
  switch (config.command) {
    case Command::Classify: {
      if (csv) throw Error(ErrorCode::InvalidArgument, "classify writes JSON only");
      out << classification_json(classify(load_system(config.system_json))).dump(2) << "\n";
      return 0;
    }
    case Command::Spectrum: {
      const SystemSpec spec = load_system(config.system_json);
      write_spectrum(solve_spectrum(spec, config.n_levels), config.format, out);
      return 0;
    }
    case Command::Verify: {
      if (csv) throw Error(ErrorCode::InvalidArgument, "verify writes JSON only");
      const VerificationReport r = verify_system(load_system(config.system_json), config.n_levels, config.tol);
      out << report_json(r).dump(2) << "\n";
      return r.passed() ? 0 : 1;
    }
    case Command::Scan: {
      if (!config.scan) throw Error(ErrorCode::InvalidArgument, "scan needs --scan");
      return run_scan(config, out);
    }
    case Command::HalfParity: {
      if (csv) throw Error(ErrorCode::InvalidArgument, "half-parity writes JSON only");
      out << canonical_system_json(half_parity_system(load_system(config.system_json))) << "\n";
      return 0;
    }
  }
  return 2;
}

}  // namespace

SystemSpec load_system(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    parse_fail("system", std::string("invalid JSON: ") + e.what());
  }
  if (!root.is_object()) parse_fail("system", "expected an object");
  try {
    const json& geo = require(root, "geometry", "geometry");
    const json& type = require(geo, "type", "geometry.type");
    if (!type.is_string()) parse_fail("geometry.type", "expected a string");
    const double lambda = number_or(root, "lambda", 1.0, "lambda");
    const double L0 = number_or(root, "L0", 1.0, "L0");
    if (!(lambda > 0.0)) parse_fail("lambda", "must be positive");
    if (!(L0 > 0.0)) parse_fail("L0", "must be positive");
    const ParsedU u = parse_u(require(root, "U", "U"), L0);
    const std::string t = type.get<std::string>();
    if (t == "line") return SystemSpec::line(u.m, lambda, L0);
    if (t != "interval") parse_fail("geometry.type", "expected \"interval\" or \"line\"");
    const double l = number(require(geo, "l", "geometry.l"), "geometry.l");
    if (!(l > 0.0)) parse_fail("geometry.l", "must be positive");
    const Mat2 dl = parse_dl(require(root, "Dl", "Dl"), u, L0);
    return SystemSpec::interval(l, u.m, dl, lambda, L0);
  } catch (const json::exception& e) {
    parse_fail("system", e.what());
  }
}

std::string canonical_system_json(const SystemSpec& spec) {
  json doc;
  doc["lambda"] = spec.lambda;
  doc["L0"] = spec.L0;
  doc["U"] = {{"form", "matrix"}, {"entries", entries_json(spec.U)}};
  if (spec.on_interval()) {
    doc["geometry"] = {{"type", "interval"}, {"l", spec.l()}};
    doc["Dl"] = {{"entries", entries_json(spec.Dl)}};
  } else {
    doc["geometry"] = {{"type", "line"}};
  }
  return doc.dump(2);
}

ScanSpec parse_scan(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  if (parts.size() != 4) parse_fail("--scan", "expected <param>:<from>:<to>:<steps>");
  ScanSpec s;
  s.parameter = parts[0];
  if (s.parameter != "theta" && s.parameter != "theta_l" && s.parameter != "mu" && s.parameter != "L")
    parse_fail("--scan", "parameter must be theta, theta_l, mu or L");
  try {
    s.from = std::stod(parts[1]);
    s.to = std::stod(parts[2]);
    s.steps = std::stoi(parts[3]);
  } catch (const std::exception&) {
    parse_fail("--scan", "bad number");
  }
  if (s.steps < 2) parse_fail("--scan", "steps must be at least 2");
  if (s.from == s.to) parse_fail("--scan", "from and to must differ");
  return s;
}

Command parse_command(const std::string& text) {
  if (text == "classify") return Command::Classify;
  if (text == "spectrum") return Command::Spectrum;
  if (text == "verify") return Command::Verify;
  if (text == "scan") return Command::Scan;
  if (text == "half-parity") return Command::HalfParity;
  parse_fail("command", "unknown command " + text);
}

double tolerance_from_env() {
  const char* v = std::getenv("SINGULAR_SUSY_TOL");
  if (!v || !*v) return 1e-8;
  char* end = nullptr;
  const double t = std::strtod(v, &end);
  if (end == v || *end != '\0' || !(t > 0.0)) parse_fail("SINGULAR_SUSY_TOL", "expected a positive number");
  return t;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (config.scan.has_value() != (config.command == Command::Scan))
      throw Error(ErrorCode::InvalidArgument, "--scan is required for scan and only valid there");
    if (config.output.empty()) return dispatch(config, out);
    std::ostringstream buffer;
    const int code = dispatch(config, buffer);
    std::ofstream file(config.output, std::ios::binary);
    if (!file) throw Error(ErrorCode::InvalidArgument, "cannot open " + config.output);
    file << buffer.str();
    return code;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace ssusy::cli
