#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace cli {

/// Fixed-format number text shared by every CSV column ("nan"/"inf" for the
/// non-finite values) so reruns are byte-identical.
std::string fmt(double v);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}
  void add_row(std::vector<std::string> row);
  /// `# mobicell-csv v1` metadata line, then the header and rows.
  void write(const std::filesystem::path& path, const std::string& command, std::uint64_t seed,
             const std::string& config_hash) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> ci;  // empty, or whisker half-widths per point
  bool line = true;        // false draws markers only
};

struct Plot {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<PlotSeries> series;
};

/// Self-contained SVG line plot; non-finite points are skipped.
void write_svg(const std::filesystem::path& path, const Plot& plot);

std::string csv_escape(const std::string& s);

}  // namespace cli
