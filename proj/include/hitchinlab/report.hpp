#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "hitchinlab/core.hpp"
#include "hitchinlab/mapgrid.hpp"

namespace hitchinlab {

struct Provenance {
  std::string subcommand;
  std::vector<std::pair<std::string, std::string>> flags;

  std::string csv_header() const;
};

std::string format_number(double v);

struct CheckResult {
  std::string check_id;
  std::string paper_ref;
  double value = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

// pass iff value < threshold; non-finite values fail
CheckResult check_below(std::string id, std::string ref, double value, double threshold);
// pass iff value <= threshold
CheckResult check_at_most(std::string id, std::string ref, double value, double threshold);
CheckResult check_at_least(std::string id, std::string ref, double value, double threshold);

std::string report_json(const std::vector<CheckResult>& checks, const Provenance& prov);
std::string error_json(const std::string& kind, const std::string& message, const Provenance& prov);
bool all_pass(const std::vector<CheckResult>& checks);

// files are written to a sibling temporary and renamed into place
void write_text(const std::filesystem::path& path, const std::string& text);

struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};
std::string render_csv(const CsvTable& table, const Provenance& prov);
CsvTable parse_csv(const std::string& text);

std::string mapgrid_csv(const MapGrid& grid, const Provenance& prov);
std::string mapgrid_sidecar(const MapGrid& grid, const std::vector<CheckResult>& checks = {});
void write_mapgrid(const std::filesystem::path& csv, const MapGrid& grid, const Provenance& prov);
MapGrid read_mapgrid(const std::filesystem::path& csv);
std::filesystem::path sidecar_path(const std::filesystem::path& csv);

CsvTable matrix_field_table(const std::vector<Point>& points, const std::vector<Mat2>& values);

}  // namespace hitchinlab
