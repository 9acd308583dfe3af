#include "anidecay/series_io.hpp"

#include "anidecay/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace anidecay {

using nlohmann::json;

const std::vector<std::string>& series_columns() {
  static const std::vector<std::string> cols = {
      "t",
      "l2_sq",
      "vh_l2_sq",
      "v3_l2_sq",
      "grad_h_l2_sq",
      "grad_h_v3_l2_sq",
      "d3v_l2_sq",
      "d3v_hneg_half_sq",
      "d3v_hpos_half_sq",
      "d3sq_l2_sq",
      "hneg_s_sq",
      "grad_h_hneg_s_sq",
      "hneg_mixed_sq",
      "h0s1_sq",
      "b0half",
      "grad_h_b0half",
      "lap_h_l2_sq",
      "div_h_vh_l2_sq",
      "khzero_energy",
      "diss_integral",
      "vinf",
      "duhamel_res",
  };
  return cols;
}

double series_value(const SeriesRow& r, const std::string& c) {
  if (c == "t") return r.t;
  if (c == "l2_sq") return r.l2_sq;
  if (c == "vh_l2_sq") return r.vh_l2_sq;
  if (c == "v3_l2_sq") return r.v3_l2_sq;
  if (c == "grad_h_l2_sq") return r.grad_h_l2_sq;
  if (c == "grad_h_v3_l2_sq") return r.grad_h_v3_l2_sq;
  if (c == "d3v_l2_sq") return r.d3v_l2_sq;
  if (c == "d3v_hneg_half_sq") return r.d3v_hneg_half_sq;
  if (c == "d3v_hpos_half_sq") return r.d3v_hpos_half_sq;
  if (c == "d3sq_l2_sq") return r.d3sq_l2_sq;
  if (c == "hneg_s_sq") return r.hneg_s_sq;
  if (c == "grad_h_hneg_s_sq") return r.grad_h_hneg_s_sq;
  if (c == "hneg_mixed_sq") return r.hneg_mixed_sq;
  if (c == "h0s1_sq") return r.h0s1_sq;
  if (c == "b0half") return r.b0half;
  if (c == "grad_h_b0half") return r.grad_h_b0half;
  if (c == "lap_h_l2_sq") return r.lap_h_l2_sq;
  if (c == "div_h_vh_l2_sq") return r.div_h_vh_l2_sq;
  if (c == "khzero_energy") return r.khzero_energy;
  if (c == "diss_integral") return r.diss_integral;
  if (c == "vinf") return r.vinf;
  if (c == "duhamel_res") return r.duhamel_res;
  throw ParameterError("unknown series column '" + c + "'");
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string series_csv(const TrajectoryRecord& record) {
  std::ostringstream os;
  const auto& cols = series_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
  os << "\n";
  for (const auto& row : record.rows) {
    for (std::size_t i = 0; i < cols.size(); ++i)
      os << (i ? "," : "") << format_double(series_value(row, cols[i]));
    os << "\n";
  }
  return os.str();
}

void write_series_csv(const std::string& path, const TrajectoryRecord& record) {
  write_text_file(path, series_csv(record));
}

bool CsvTable::has_column(const std::string& name) const {
  for (const auto& c : columns)
    if (c == name) return true;
  return false;
}

std::vector<double> CsvTable::column_values(const std::string& name) const {
  std::size_t idx = columns.size();
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == name) idx = i;
  if (idx == columns.size()) throw ParameterError("csv: no column named '" + name + "'");
  std::vector<double> out;
  out.reserve(cells.size());
  for (const auto& row : cells) out.push_back(row[idx]);
  return out;
}

TrajectoryRecord record_from_csv(const CsvTable& table, const RunConfig& config) {
  TrajectoryRecord rec;
  rec.config = config;
  const auto& cols = series_columns();
  for (const auto& c : cols)
    if (!table.has_column(c)) throw ParameterError("series csv: missing column '" + c + "'");
  for (std::size_t r = 0; r < table.cells.size(); ++r) {
    SeriesRow row;
    const auto get = [&](const char* name) {
      for (std::size_t i = 0; i < table.columns.size(); ++i)
        if (table.columns[i] == name) return table.cells[r][i];
      return 0.0;
    };
    row.t = get("t");
    row.l2_sq = get("l2_sq");
    row.vh_l2_sq = get("vh_l2_sq");
    row.v3_l2_sq = get("v3_l2_sq");
    row.grad_h_l2_sq = get("grad_h_l2_sq");
    row.grad_h_v3_l2_sq = get("grad_h_v3_l2_sq");
    row.d3v_l2_sq = get("d3v_l2_sq");
    row.d3v_hneg_half_sq = get("d3v_hneg_half_sq");
    row.d3v_hpos_half_sq = get("d3v_hpos_half_sq");
    row.d3sq_l2_sq = get("d3sq_l2_sq");
    row.hneg_s_sq = get("hneg_s_sq");
    row.grad_h_hneg_s_sq = get("grad_h_hneg_s_sq");
    row.hneg_mixed_sq = get("hneg_mixed_sq");
    row.h0s1_sq = get("h0s1_sq");
    row.b0half = get("b0half");
    row.grad_h_b0half = get("grad_h_b0half");
    row.lap_h_l2_sq = get("lap_h_l2_sq");
    row.div_h_vh_l2_sq = get("div_h_vh_l2_sq");
    row.khzero_energy = get("khzero_energy");
    row.diss_integral = get("diss_integral");
    row.vinf = get("vinf");
    row.duhamel_res = get("duhamel_res");
    rec.rows.push_back(row);
  }
  return rec;
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open csv file: " + path);
  CsvTable t;
  std::string line;
  if (!std::getline(in, line)) throw IoError("empty csv file: " + path);
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) t.columns.push_back(cell);
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw IoError("csv: non-numeric cell '" + cell + "' in " + path);
      }
    }
    if (row.size() != t.columns.size())
      throw IoError("csv: row width mismatch in " + path);
    t.cells.push_back(std::move(row));
  }
  return t;
}

// ---------------------------------------------------------------------------

namespace {
json target_to_json(const AcceptanceTarget& t) {
  return json{{"quantity", t.quantity},
              {"fitted", t.fitted},
              {"target", t.target},
              {"tolerance", t.tolerance},
              {"stderr", t.stderr_exponent},
              {"r2", t.r2},
              {"pass", t.pass},
              {"informational", t.informational}};
}
} // namespace

std::string acceptance_json(const AcceptanceReport& rep) {
  json j;
  j["schema"] = "anidecay.acceptance/1";
  j["s"] = rep.s;
  j["s1"] = rep.s1;
  j["tolerance"] = rep.tolerance;
  j["gap_tolerance"] = rep.gap_tolerance;
  j["window"] = {{"t0", rep.t0}, {"t1", rep.t1}, {"ir_bound", rep.ir_bound}};
  j["excluded_plane_fraction"] = rep.excluded_plane_fraction;
  j["targets"] = json::array();
  for (const auto& t : rep.targets) j["targets"].push_back(target_to_json(t));
  j["ordering"] = {{"gap_fitted", rep.ordering_gap_fitted},
                   {"gap_target", rep.ordering_gap_target},
                   {"pass", rep.ordering_pass}};
  j["all_pass"] = rep.all_pass;
  return j.dump(2) + "\n";
}

bool validate_acceptance_json(const std::string& text, std::string* why) {
  const auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) return fail("not valid JSON");
  if (!j.is_object()) return fail("top level must be an object");
  if (j.value("schema", "") != "anidecay.acceptance/1") return fail("bad schema tag");
  for (const char* key : {"s", "s1", "tolerance", "gap_tolerance", "excluded_plane_fraction"})
    if (!j.contains(key) || !j[key].is_number()) return fail(std::string("missing number ") + key);
  if (!j.contains("window") || !j["window"].is_object()) return fail("missing window object");
  for (const char* key : {"t0", "t1", "ir_bound"})
    if (!j["window"].contains(key) || !j["window"][key].is_number())
      return fail(std::string("window missing ") + key);
  if (!j.contains("targets") || !j["targets"].is_array()) return fail("missing targets array");
  for (const auto& t : j["targets"]) {
    if (!t.is_object()) return fail("target entries must be objects");
    if (!t.contains("quantity") || !t["quantity"].is_string()) return fail("target.quantity");
    for (const char* key : {"fitted", "target", "tolerance", "stderr", "r2"})
      if (!t.contains(key) || !t[key].is_number()) return fail(std::string("target.") + key);
    for (const char* key : {"pass", "informational"})
      if (!t.contains(key) || !t[key].is_boolean()) return fail(std::string("target.") + key);
  }
  if (!j.contains("ordering") || !j["ordering"].is_object()) return fail("missing ordering");
  if (!j.contains("all_pass") || !j["all_pass"].is_boolean()) return fail("missing all_pass");
  return true;
}

std::string acceptance_text(const AcceptanceReport& rep) {
  std::ostringstream os;
  os << "acceptance report (s = " << rep.s << ", s1 = " << rep.s1 << ", window [" << rep.t0
     << ", " << rep.t1 << "], ir_bound " << rep.ir_bound << ")\n";
  for (const auto& t : rep.targets) {
    os << "  " << (t.pass ? "PASS" : "FAIL") << "  " << t.quantity << ": fitted " << t.fitted
       << " vs target " << t.target << " (+" << t.tolerance << ")"
       << (t.informational ? "  [informational]" : "") << "\n";
  }
  os << "  " << (rep.ordering_pass ? "PASS" : "FAIL")
     << "  ordering gap exponent(v3^2)-exponent(vh^2): fitted " << rep.ordering_gap_fitted
     << " vs target " << rep.ordering_gap_target << " (+" << rep.gap_tolerance << ")\n";
  os << (rep.all_pass ? "ALL PASS" : "FAILURES PRESENT") << "\n";
  return os.str();
}

std::string initial_report_json(const InitialDataReport& rep) {
  json j;
  j["schema"] = "anidecay.initial_data/1";
  j["s"] = rep.s;
  j["s1"] = rep.s1;
  j["a_s"] = rep.a_s;
  j["b_s"] = rep.b_s;
  j["e0"] = rep.e0;
  j["c0_norm"] = rep.c0_norm;
  j["l2_sq"] = rep.l2_sq;
  j["v3_l2_sq"] = rep.v3_l2_sq;
  j["hneg_s_sq"] = rep.hneg_s_sq;
  j["hneg_mixed_sq"] = rep.hneg_mixed_sq;
  j["d3_hneg_half_sq"] = rep.d3_hneg_half_sq;
  j["h0s1_sq"] = rep.h0s1_sq;
  j["excluded_mass"] = rep.excluded_mass;
  return j.dump(2) + "\n";
}

std::string decay_fit_json(const DecayFit& fit) {
  json j;
  j["schema"] = "anidecay.fit/1";
  j["quantity"] = fit.quantity;
  j["window"] = {{"t0", fit.t0}, {"t1", fit.t1}};
  j["exponent"] = fit.exponent;
  j["stderr"] = fit.stderr_exponent;
  j["r2"] = fit.r2;
  j["n_samples"] = fit.n_samples;
  j["ir_bound"] = fit.ir_bound;
  j["excluded_plane_fraction"] = fit.excluded_plane_fraction;
  return j.dump(2) + "\n";
}

std::string sparkline_svg(const std::vector<double>& t, const std::vector<double>& y,
                          const std::string& label) {
  const double W = 320.0, H = 96.0, pad = 8.0;
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < t.size() && i < y.size(); ++i) {
    if (!(t[i] > 0.0) || !(y[i] > 0.0)) continue;
    const double lx = std::log10(t[i]), ly = std::log10(y[i]);
    pts.emplace_back(lx, ly);
    xmin = std::min(xmin, lx);
    xmax = std::max(xmax, lx);
    ymin = std::min(ymin, ly);
    ymax = std::max(ymax, ly);
  }
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
     << "\">\n";
  if (pts.size() >= 2 && xmax > xmin) {
    const double yspan = ymax > ymin ? ymax - ymin : 1.0;
    os << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1\" points=\"";
    for (const auto& [lx, ly] : pts) {
      const double px = pad + (W - 2 * pad) * (lx - xmin) / (xmax - xmin);
      const double py = H - pad - (H - 2 * pad) * (ly - ymin) / yspan;
      os << px << "," << py << " ";
    }
    os << "\"/>\n";
  }
  os << "<text x=\"" << pad << "\" y=\"" << pad + 4 << "\" font-size=\"8\">" << label
     << " (log-log)</text>\n</svg>\n";
  return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << content;
  if (!out) throw IoError("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

} // namespace anidecay
