#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "metric_depth/depth.hpp"

namespace metric_depth {

enum class InputKind { Matrix, Curves, Histograms, Points };

enum class MetricKind { L2, Sup, Deriv2, Pca, Wasserstein, Matrix, Euclidean, Minkowski };

// Parsed data-workflow options shared by the depth subcommands.
struct RunConfig {
  MetricKind metric = MetricKind::Matrix;
  std::size_t pca_k = 2;
  double wasserstein_r = 2.0;
  double minkowski_p = 2.0;
  Engine engine = Engine::exact();
  InputKind input = InputKind::Matrix;
  std::filesystem::path input_path;
  std::optional<std::filesystem::path> output_path;
  std::optional<std::size_t> block_width;
};

MetricKind default_metric(InputKind input);
// Throws Error(Usage) when the metric cannot be applied to the input kind
// or an option does not fit the metric.
void validate(const RunConfig& config);

// Runs one CLI invocation. `args` excludes the program name. Exit codes: 0 on
// success, 2 on usage or validation errors, 1 on runtime errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace metric_depth
