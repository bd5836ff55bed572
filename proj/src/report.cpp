#include "hitchinlab/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace hitchinlab {

using nlohmann::ordered_json;

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string Provenance::csv_header() const {
  std::string out = "# hitchinlab " + std::string(version) + "\n# subcommand: " + subcommand + "\n# flags:";
  for (const auto& [k, v] : flags) out += " --" + k + "=" + v;
  return out + "\n";
}

CheckResult check_below(std::string id, std::string ref, double value, double threshold) {
  return {std::move(id), std::move(ref), value, threshold, std::isfinite(value) && value < threshold};
}

CheckResult check_at_most(std::string id, std::string ref, double value, double threshold) {
  return {std::move(id), std::move(ref), value, threshold, std::isfinite(value) && value <= threshold};
}

CheckResult check_at_least(std::string id, std::string ref, double value, double threshold) {
  return {std::move(id), std::move(ref), value, threshold, std::isfinite(value) && value >= threshold};
}

static ordered_json checks_json(const std::vector<CheckResult>& checks);

static ordered_json number(double v) {
  if (std::isfinite(v)) return v;
  return format_number(v);
}

std::string report_json(const std::vector<CheckResult>& checks, const Provenance& prov) {
  ordered_json j;
  j["tool"] = "hitchinlab";
  j["version"] = version;
  j["subcommand"] = prov.subcommand;
  ordered_json flags = ordered_json::object();
  for (const auto& [k, v] : prov.flags) flags[k] = v;
  j["flags"] = flags;
  j["checks"] = checks_json(checks);
  j["pass"] = all_pass(checks);
  return j.dump(2) + "\n";
}

std::string error_json(const std::string& kind, const std::string& message, const Provenance& prov) {
  ordered_json j;
  j["tool"] = "hitchinlab";
  j["version"] = version;
  j["subcommand"] = prov.subcommand;
  j["error"] = kind;
  j["message"] = message;
  j["pass"] = false;
  return j.dump(2) + "\n";
}

bool all_pass(const std::vector<CheckResult>& checks) {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".partial";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw Error(ErrorKind::Io, "cannot open " + tmp.string());
    out << text;
    if (!out) throw Error(ErrorKind::Io, "write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string render_csv(const CsvTable& table, const Provenance& prov) {
  std::string out = prov.csv_header();
  for (size_t c = 0; c < table.columns.size(); ++c) out += (c ? "," : "") + table.columns[c];
  out += "\n";
  for (const auto& row : table.rows) {
    for (size_t c = 0; c < row.size(); ++c) out += (c ? "," : "") + row[c];
    out += "\n";
  }
  return out;
}

static std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

CsvTable parse_csv(const std::string& text) {
  CsvTable t;
  std::stringstream ss(text);
  std::string line;
  bool have_header = false;
  while (std::getline(ss, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!have_header) {
      t.columns = split(line);
      have_header = true;
      continue;
    }
    auto cells = split(line);
    if (cells.size() != t.columns.size())
      throw Error(ErrorKind::Parse, "row has " + std::to_string(cells.size()) + " cells, expected " +
                                        std::to_string(t.columns.size()));
    t.rows.push_back(std::move(cells));
  }
  if (!have_header) throw Error(ErrorKind::Parse, "missing column header");
  return t;
}

std::filesystem::path sidecar_path(const std::filesystem::path& csv) {
  auto p = csv;
  p += ".json";
  return p;
}

static ordered_json checks_json(const std::vector<CheckResult>& checks) {
  ordered_json arr = ordered_json::array();
  for (const auto& c : checks)
    arr.push_back({{"check_id", c.check_id},
                   {"paper_ref", c.paper_ref},
                   {"value", number(c.value)},
                   {"threshold", number(c.threshold)},
                   {"pass", c.pass}});
  return arr;
}

std::string mapgrid_csv(const MapGrid& grid, const Provenance& prov) {
  CsvTable t;
  t.columns = {"x", "y"};
  for (int c = 0; c < grid.dim(); ++c) t.columns.push_back("c" + std::to_string(c));
  for (int j = 0; j < grid.ny(); ++j)
    for (int i = 0; i < grid.nx(); ++i) {
      Point p = grid.node(i, j);
      std::vector<std::string> row{format_number(p.x), format_number(p.y)};
      const auto& v = grid.at(i, j);
      for (int c = 0; c < grid.dim(); ++c) row.push_back(format_number(v[c]));
      t.rows.push_back(std::move(row));
    }
  return render_csv(t, prov);
}

std::string mapgrid_sidecar(const MapGrid& grid, const std::vector<CheckResult>& checks) {
  const GridSpec& s = grid.spec();
  ordered_json side;
  side["tool"] = "hitchinlab";
  side["version"] = version;
  side["target"] = to_string(grid.target());
  side["grid"] = {{"x0", s.x0}, {"y0", s.y0}, {"hx", s.hx}, {"hy", s.hy}, {"nx", s.nx}, {"ny", s.ny}};
  ordered_json ev = ordered_json::array();
  for (const auto& e : grid.events) ev.push_back({{"i", e.i}, {"j", e.j}, {"event", e.what}});
  side["events"] = ev;
  ordered_json diag = ordered_json::object();
  for (const auto& [k, v] : grid.diagnostics) diag[k] = number(v);
  side["diagnostics"] = diag;
  if (!checks.empty()) {
    side["checks"] = checks_json(checks);
    side["pass"] = all_pass(checks);
  }
  return side.dump(2) + "\n";
}

void write_mapgrid(const std::filesystem::path& csv, const MapGrid& grid, const Provenance& prov) {
  write_text(csv, mapgrid_csv(grid, prov));
  write_text(sidecar_path(csv), mapgrid_sidecar(grid));
}

static std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

MapGrid read_mapgrid(const std::filesystem::path& csv) {
  ordered_json side;
  try {
    side = ordered_json::parse(slurp(sidecar_path(csv)));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("sidecar: ") + e.what());
  }
  GridSpec s;
  try {
    const auto& g = side.at("grid");
    s.x0 = g.at("x0").get<double>();
    s.y0 = g.at("y0").get<double>();
    s.hx = g.at("hx").get<double>();
    s.hy = g.at("hy").get<double>();
    s.nx = g.at("nx").get<int>();
    s.ny = g.at("ny").get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("sidecar grid: ") + e.what());
  }
  Target target = target_from_string(side.value("target", std::string("H3")));
  CsvTable t = parse_csv(slurp(csv));
  int dim = target_dim(target);
  if (static_cast<int>(t.columns.size()) != dim + 2) throw Error(ErrorKind::Parse, "column count does not match target");
  if (static_cast<long>(t.rows.size()) != static_cast<long>(s.nx) * s.ny)
    throw Error(ErrorKind::Parse, "row count does not match grid");
  MapGrid m(s, target);
  size_t r = 0;
  for (int j = 0; j < s.ny; ++j)
    for (int i = 0; i < s.nx; ++i, ++r) {
      Eigen::VectorXd v(dim);
      for (int c = 0; c < dim; ++c) {
        try {
          v[c] = std::stod(t.rows[r][c + 2]);
        } catch (const std::exception&) {
          throw Error(ErrorKind::Parse, "bad number in row " + std::to_string(r));
        }
      }
      m.at(i, j) = v;
    }
  try {
    ordered_json events = side.value("events", ordered_json::array());
    ordered_json diagnostics = side.value("diagnostics", ordered_json::object());
    for (const auto& e : events)
      m.events.push_back({e.at("i").get<int>(), e.at("j").get<int>(), e.at("event").get<std::string>()});
    for (const auto& [k, v] : diagnostics.items())
      m.diagnostics.push_back({k, v.is_number() ? v.get<double>() : std::stod(v.get<std::string>())});
  } catch (const std::exception& e) {
    throw Error(ErrorKind::Parse, std::string("sidecar events: ") + e.what());
  }
  return m;
}

CsvTable matrix_field_table(const std::vector<Point>& points, const std::vector<Mat2>& values) {
  CsvTable t;
  t.columns = {"x", "y", "re00", "im00", "re01", "im01", "re10", "im10", "re11", "im11"};
  for (size_t k = 0; k < points.size(); ++k) {
    std::vector<std::string> row{format_number(points[k].x), format_number(points[k].y)};
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        row.push_back(format_number(values[k](a, b).real()));
        row.push_back(format_number(values[k](a, b).imag()));
      }
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace hitchinlab
