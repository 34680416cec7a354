#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "metric_depth/analysis.hpp"
#include "metric_depth/counterexamples.hpp"
#include "metric_depth/distribution.hpp"
#include "metric_depth/metrics.hpp"
#include "metric_depth/oracle.hpp"

namespace metric_depth {

// All readers throw Error(Parse) for malformed text, citing the line (and
// cell, where relevant), and Error(Validation) for well-formed but invalid
// content. `source` names the input in messages.

struct LabeledCurve {
  std::string label;
  Curve curve;
};

// Header `label,t=<v1>,t=<v2>,...` defines the grid; each row is one curve.
// Rows labelled `name#channel` are grouped into one multi-channel curve
// `name`, channels in order of appearance.
std::vector<LabeledCurve> parse_curves_csv(std::istream& in, const std::string& source = "<input>");
std::vector<LabeledCurve> read_curves_csv(const std::filesystem::path& path);

// Header `<corner>,A,B,...`; each row `A,d_AA,d_AB,...` with row labels
// matching the header in order.
DistanceMatrix parse_matrix_csv(std::istream& in, const std::string& source = "<input>");
DistanceMatrix read_matrix_csv(const std::filesystem::path& path);

// Long format with header `label,bin_left,bin_right,count`; bins of each
// label are collected in file order. Labels keep first-appearance order.
std::vector<std::pair<std::string, StepCdf>> parse_histograms_csv(std::istream& in,
                                                                  const std::string& source = "<input>");
std::vector<std::pair<std::string, StepCdf>> read_histograms_csv(const std::filesystem::path& path);

// Header `label,<coordinate names>...`; each row is one vector.
std::vector<std::pair<std::string, std::vector<double>>> parse_points_csv(std::istream& in,
                                                                         const std::string& source = "<input>");
std::vector<std::pair<std::string, std::vector<double>>> read_points_csv(const std::filesystem::path& path);

// Numbers are written with 10 significant digits ("%.10g").
std::string format_number(double value);

// `label,depth,rank`; rows in the given item order.
void write_report_csv(std::ostream& out, const DepthReport& report, const std::vector<std::size_t>& rows);

struct ReportRow {
  std::string label;
  double depth;
  std::size_t rank;
};
std::vector<ReportRow> parse_report_csv(std::istream& in, const std::string& source = "<input>");

// `x1,x2,depth`, x1-major.
void write_depth_map_csv(std::ostream& out, const DepthMap& map);
DepthMap parse_depth_map_csv(std::istream& in, const std::string& source = "<input>");

// `coordinate,depth`.
void write_section_csv(std::ostream& out, const std::vector<SectionPoint>& points);

// Writes `content` to `path` through a temporary file and rename, so a
// failure never leaves a partial file behind.
void write_file_atomically(const std::filesystem::path& path, const std::string& content);

}  // namespace metric_depth
