#include "anidecay/run_config.hpp"

#include "anidecay/errors.hpp"
#include "anidecay/norms.hpp"
#include "anidecay/series_io.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

namespace anidecay {

const std::map<std::string, std::string>& config_key_table() {
  static const std::map<std::string, std::string> table = {
      {"n_h", "modes per horizontal axis (even, >= 8)"},
      {"n_v", "modes on the vertical axis (even, >= 8)"},
      {"l_h", "horizontal box length"},
      {"l_v", "vertical box length"},
      {"dt", "time step"},
      {"t_end", "integration end time"},
      {"viscosity_mode", "anisotropic | isotropic | linear-only"},
      {"output_cadence", "interval between recorded norm rows"},
      {"snapshot_cadence", "interval between stored field snapshots (0 = off)"},
      {"duhamel_online", "0/1: accumulate the v3 Duhamel split during the run"},
      {"seed", "random seed for the initial data phases"},
      {"s", "negative horizontal regularity index, gate (.,1)"},
      {"s1", "vertical regularity index, must be > 2"},
      {"target_c0", "rescale data to this B^{0,1/2} norm (0 keeps amplitude)"},
      {"envelope.a_h", "horizontal low-frequency envelope exponent"},
      {"envelope.b_v", "vertical envelope exponent"},
      {"envelope.sigma", "Gaussian roll-off scale of the envelope"},
      {"envelope.amplitude", "envelope amplitude before rescaling"},
      {"fit.t0", "decay-fit window start"},
      {"fit.t1", "decay-fit window end (clamped to the infrared bound)"},
      {"cfl_safety", "CFL advisory constant"},
      {"blowup_factor", "blow-up detector threshold on ||v||_inf growth"},
  };
  return table;
}

namespace {

double parse_double(const std::string& key, const std::string& val) {
  std::size_t pos = 0;
  double x = 0.0;
  try {
    x = std::stod(val, &pos);
  } catch (const std::exception&) {
    throw ParameterError("config key '" + key + "': expected a number, got '" + val + "'");
  }
  while (pos < val.size() && std::isspace(static_cast<unsigned char>(val[pos]))) ++pos;
  if (pos != val.size())
    throw ParameterError("config key '" + key + "': trailing junk in '" + val + "'");
  return x;
}

long long parse_int(const std::string& key, const std::string& val) {
  const double x = parse_double(key, val);
  if (x != std::floor(x))
    throw ParameterError("config key '" + key + "': expected an integer, got '" + val + "'");
  return static_cast<long long>(x);
}

bool parse_bool(const std::string& key, const std::string& val) {
  if (val == "1" || val == "true") return true;
  if (val == "0" || val == "false") return false;
  throw ParameterError("config key '" + key + "': expected 0/1/true/false, got '" + val + "'");
}

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

void apply_key(RunConfig& c, int& n_h, int& n_v, double& l_h, double& l_v,
               const std::string& key, const std::string& val) {
  if (config_key_table().find(key) == config_key_table().end())
    throw ParameterError("config: unknown key '" + key + "'");
  if (key == "n_h") n_h = static_cast<int>(parse_int(key, val));
  else if (key == "n_v") n_v = static_cast<int>(parse_int(key, val));
  else if (key == "l_h") l_h = parse_double(key, val);
  else if (key == "l_v") l_v = parse_double(key, val);
  else if (key == "dt") c.dt = parse_double(key, val);
  else if (key == "t_end") c.t_end = parse_double(key, val);
  else if (key == "viscosity_mode") c.viscosity_mode = viscosity_mode_from_string(val);
  else if (key == "output_cadence") c.output_cadence = parse_double(key, val);
  else if (key == "snapshot_cadence") c.snapshot_cadence = parse_double(key, val);
  else if (key == "duhamel_online") c.duhamel_online = parse_bool(key, val);
  else if (key == "seed") c.envelope.seed = static_cast<std::uint64_t>(parse_int(key, val));
  else if (key == "s") c.s = parse_double(key, val);
  else if (key == "s1") c.s1 = parse_double(key, val);
  else if (key == "target_c0") c.target_c0 = parse_double(key, val);
  else if (key == "envelope.a_h") c.envelope.a_h = parse_double(key, val);
  else if (key == "envelope.b_v") c.envelope.b_v = parse_double(key, val);
  else if (key == "envelope.sigma") c.envelope.sigma = parse_double(key, val);
  else if (key == "envelope.amplitude") c.envelope.amplitude = parse_double(key, val);
  else if (key == "fit.t0") c.fit.t0 = parse_double(key, val);
  else if (key == "fit.t1") c.fit.t1 = parse_double(key, val);
  else if (key == "cfl_safety") c.cfl_safety = parse_double(key, val);
  else if (key == "blowup_factor") c.blowup_factor = parse_double(key, val);
}

} // namespace

RunConfig parse_config_text(const std::string& text, const std::vector<std::string>& overrides) {
  RunConfig c;
  int n_h = c.grid.n_h, n_v = c.grid.n_v;
  double l_h = c.grid.l_h, l_v = c.grid.l_v;

  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ParameterError("config line " + std::to_string(lineno) +
                           ": expected 'key = value', got '" + line + "'");
    apply_key(c, n_h, n_v, l_h, l_v, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  for (const auto& ov : overrides) {
    const std::size_t eq = ov.find('=');
    if (eq == std::string::npos)
      throw ParameterError("override '" + ov + "': expected key=value");
    apply_key(c, n_h, n_v, l_h, l_v, trim(ov.substr(0, eq)), trim(ov.substr(eq + 1)));
  }

  c.grid = Grid3(n_h, n_v, l_h, l_v); // validates evenness/positivity
  if (!(c.dt > 0.0)) throw ParameterError("config: dt must be positive");
  if (!(c.t_end > 0.0)) throw ParameterError("config: t_end must be positive");
  if (!(c.output_cadence > 0.0)) throw ParameterError("config: output_cadence must be positive");
  if (c.snapshot_cadence < 0.0) throw ParameterError("config: snapshot_cadence must be >= 0");
  if (c.target_c0 < 0.0) throw ParameterError("config: target_c0 must be >= 0");
  check_parameter_gate(c.s, c.s1);
  if (!(c.envelope.a_h > c.s - 1.0))
    throw ParameterError("config: envelope.a_h must exceed s - 1 for H^{-s,0} membership");
  return c;
}

RunConfig parse_config_file(const std::string& path, const std::vector<std::string>& overrides) {
  return parse_config_text(read_text_file(path), overrides);
}

std::string config_text(const RunConfig& c) {
  std::ostringstream os;
  os << "n_h = " << c.grid.n_h << "\n";
  os << "n_v = " << c.grid.n_v << "\n";
  os << "l_h = " << format_double(c.grid.l_h) << "\n";
  os << "l_v = " << format_double(c.grid.l_v) << "\n";
  os << "dt = " << format_double(c.dt) << "\n";
  os << "t_end = " << format_double(c.t_end) << "\n";
  os << "viscosity_mode = " << to_string(c.viscosity_mode) << "\n";
  os << "output_cadence = " << format_double(c.output_cadence) << "\n";
  os << "snapshot_cadence = " << format_double(c.snapshot_cadence) << "\n";
  os << "duhamel_online = " << (c.duhamel_online ? 1 : 0) << "\n";
  os << "seed = " << c.envelope.seed << "\n";
  os << "s = " << format_double(c.s) << "\n";
  os << "s1 = " << format_double(c.s1) << "\n";
  os << "target_c0 = " << format_double(c.target_c0) << "\n";
  os << "envelope.a_h = " << format_double(c.envelope.a_h) << "\n";
  os << "envelope.b_v = " << format_double(c.envelope.b_v) << "\n";
  os << "envelope.sigma = " << format_double(c.envelope.sigma) << "\n";
  os << "envelope.amplitude = " << format_double(c.envelope.amplitude) << "\n";
  os << "fit.t0 = " << format_double(c.fit.t0) << "\n";
  os << "fit.t1 = " << format_double(c.fit.t1) << "\n";
  os << "cfl_safety = " << format_double(c.cfl_safety) << "\n";
  os << "blowup_factor = " << format_double(c.blowup_factor) << "\n";
  return os.str();
}

std::string manifest_json(const RunConfig& c) {
  nlohmann::json j;
  j["schema"] = "anidecay.manifest/1";
  j["version"] = kVersion;
  j["seed"] = c.envelope.seed;
  nlohmann::json cfg;
  cfg["n_h"] = c.grid.n_h;
  cfg["n_v"] = c.grid.n_v;
  cfg["l_h"] = c.grid.l_h;
  cfg["l_v"] = c.grid.l_v;
  cfg["dt"] = c.dt;
  cfg["t_end"] = c.t_end;
  cfg["viscosity_mode"] = to_string(c.viscosity_mode);
  cfg["output_cadence"] = c.output_cadence;
  cfg["snapshot_cadence"] = c.snapshot_cadence;
  cfg["duhamel_online"] = c.duhamel_online;
  cfg["seed"] = c.envelope.seed;
  cfg["s"] = c.s;
  cfg["s1"] = c.s1;
  cfg["target_c0"] = c.target_c0;
  cfg["envelope.a_h"] = c.envelope.a_h;
  cfg["envelope.b_v"] = c.envelope.b_v;
  cfg["envelope.sigma"] = c.envelope.sigma;
  cfg["envelope.amplitude"] = c.envelope.amplitude;
  cfg["fit.t0"] = c.fit.t0;
  cfg["fit.t1"] = c.fit.t1;
  cfg["cfl_safety"] = c.cfl_safety;
  cfg["blowup_factor"] = c.blowup_factor;
  j["config"] = cfg;
  return j.dump(2) + "\n";
}

} // namespace anidecay
