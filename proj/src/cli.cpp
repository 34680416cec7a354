#include "metric_depth/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <memory>
#include <sstream>

#include "metric_depth/analysis.hpp"
#include "metric_depth/counterexamples.hpp"
#include "metric_depth/csv_io.hpp"
#include "metric_depth/distribution.hpp"
#include "metric_depth/metrics.hpp"
#include "metric_depth/pca.hpp"

namespace metric_depth {
namespace {

const std::map<std::string, MetricKind> kMetricNames{
    {"l2", MetricKind::L2},
    {"sup", MetricKind::Sup},
    {"deriv2", MetricKind::Deriv2},
    {"pca", MetricKind::Pca},
    {"wasserstein", MetricKind::Wasserstein},
    {"matrix", MetricKind::Matrix},
    {"euclidean", MetricKind::Euclidean},
    {"minkowski", MetricKind::Minkowski},
};

// Every item the run touches, addressed by index, with one distance.
struct Catalog {
  std::vector<std::string> labels;
  std::function<double(std::size_t, std::size_t)> distance;
};

using Sample = PointCloud<std::size_t>;

Sample make_sample(const Catalog& catalog, std::vector<std::size_t> members) {
  return Sample(std::move(members), catalog.distance);
}

std::vector<std::size_t> index_range(std::size_t begin, std::size_t end) {
  std::vector<std::size_t> out;
  for (std::size_t i = begin; i < end; ++i) {
    out.push_back(i);
  }
  return out;
}

// Items loaded from one or more files of the same kind.
struct Items {
  std::vector<std::string> labels;
  std::vector<Curve> curves;
  std::vector<StepCdf> cdfs;
  std::vector<std::vector<double>> vectors;

  std::size_t size() const { return labels.size(); }
};

void append_file(Items& items, InputKind kind, const std::filesystem::path& path) {
  switch (kind) {
    case InputKind::Curves:
      for (auto& [label, curve] : read_curves_csv(path)) {
        items.labels.push_back(label);
        items.curves.push_back(std::move(curve));
      }
      break;
    case InputKind::Histograms:
      for (auto& [label, cdf] : read_histograms_csv(path)) {
        items.labels.push_back(label);
        items.cdfs.push_back(std::move(cdf));
      }
      break;
    case InputKind::Points:
      for (auto& [label, v] : read_points_csv(path)) {
        items.labels.push_back(label);
        items.vectors.push_back(std::move(v));
      }
      break;
    case InputKind::Matrix:
      throw Error(ErrorKind::Usage, "matrix input is not an item file");
  }
}

// Builds the callback distance for loaded items. PCA is fitted on the first
// `reference_count` items.
Catalog callback_catalog(const RunConfig& config, Items items, std::size_t reference_count) {
  auto shared = std::make_shared<Items>(std::move(items));
  if (config.block_width) {
    if (shared->curves.empty()) {
      throw Error(ErrorKind::Usage, "--block-width applies to curve input only");
    }
    for (Curve& c : shared->curves) {
      c = block_average(c, *config.block_width);
    }
  }
  for (std::size_t i = 1; i < shared->curves.size(); ++i) {
    require_compatible(shared->curves[0], shared->curves[i]);
  }
  for (std::size_t i = 1; i < shared->vectors.size(); ++i) {
    if (shared->vectors[i].size() != shared->vectors[0].size()) {
      throw Error(ErrorKind::Validation, "points '" + shared->labels[0] + "' and '" + shared->labels[i] +
                                             "' differ in dimension");
    }
  }

  Catalog catalog;
  catalog.labels = shared->labels;
  switch (config.metric) {
    case MetricKind::L2:
      catalog.distance = [shared](std::size_t i, std::size_t j) {
        return l2_curve_distance(shared->curves[i], shared->curves[j]);
      };
      break;
    case MetricKind::Sup:
      catalog.distance = [shared](std::size_t i, std::size_t j) {
        return sup_curve_distance(shared->curves[i], shared->curves[j]);
      };
      break;
    case MetricKind::Deriv2:
      catalog.distance = [shared](std::size_t i, std::size_t j) {
        return second_derivative_pseudo_distance(shared->curves[i], shared->curves[j]);
      };
      break;
    case MetricKind::Pca: {
      const std::span<const Curve> reference(shared->curves.data(), reference_count);
      auto basis = std::make_shared<const PcaBasis>(fit_pca_basis(reference, config.pca_k));
      auto scores = std::make_shared<std::vector<std::vector<double>>>();
      for (const Curve& c : shared->curves) {
        scores->push_back(basis->scores(c));
      }
      catalog.distance = [scores](std::size_t i, std::size_t j) {
        return euclidean_distance((*scores)[i], (*scores)[j]);
      };
      break;
    }
    case MetricKind::Wasserstein:
      catalog.distance = [shared, r = config.wasserstein_r](std::size_t i, std::size_t j) {
        return wasserstein_distance(shared->cdfs[i], shared->cdfs[j], r);
      };
      break;
    case MetricKind::Euclidean:
      catalog.distance = [shared](std::size_t i, std::size_t j) {
        return euclidean_distance(shared->vectors[i], shared->vectors[j]);
      };
      break;
    case MetricKind::Minkowski:
      catalog.distance = [shared, p = config.minkowski_p](std::size_t i, std::size_t j) {
        return minkowski_distance(shared->vectors[i], shared->vectors[j], p);
      };
      break;
    case MetricKind::Matrix:
      throw Error(ErrorKind::Usage, "matrix metric needs matrix input");
  }
  return catalog;
}

Catalog matrix_catalog(const DistanceMatrix& m) {
  auto shared = std::make_shared<const DistanceMatrix>(m);
  return {m.labels(), [shared](std::size_t i, std::size_t j) { return i <= j ? (*shared)(i, j) : (*shared)(j, i); }};
}

std::vector<std::string> split_labels(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    if (!part.empty()) {
      out.push_back(part);
    }
  }
  return out;
}

std::vector<std::size_t> label_indices(const DistanceMatrix& m, const std::vector<std::string>& labels) {
  std::vector<std::size_t> out;
  for (const auto& label : labels) {
    try {
      out.push_back(m.index_of(label));
    } catch (const Error& e) {
      throw Error(ErrorKind::Validation, e.what());
    }
  }
  return out;
}

std::vector<std::string> labels_of(const Catalog& catalog, const std::vector<std::size_t>& indices) {
  std::vector<std::string> out;
  for (const std::size_t i : indices) {
    out.push_back(catalog.labels[i]);
  }
  return out;
}

std::vector<DepthValue> query_depths(const Sample& sample, const std::vector<std::size_t>& queries,
                                     const Engine& engine) {
  return depth_profile(sample, std::span<const std::size_t>(queries), engine);
}

void emit(const RunConfig& config, const std::string& content, std::ostream& out) {
  if (config.output_path) {
    write_file_atomically(*config.output_path, content);
  } else {
    out << content;
  }
}

// Raw option values before they are resolved into a RunConfig.
struct DataOptions {
  std::string matrix, curves, histograms, points;
  std::string metric;
  std::size_t k = 2;
  double r = 2.0;
  double p = 2.0;
  std::string engine = "exact";
  std::uint64_t budget = 0;
  std::uint64_t seed = 0;
  std::string output;
  std::size_t block_width = 0;
};

void add_data_options(CLI::App* cmd, DataOptions& o) {
  auto* group = cmd->add_option_group("input", "exactly one input file");
  group->add_option("--matrix", o.matrix, "distance matrix CSV");
  group->add_option("--curves", o.curves, "curves CSV");
  group->add_option("--histograms", o.histograms, "histograms CSV (long format)");
  group->add_option("--points", o.points, "vectors CSV");
  group->require_option(1);
  cmd->add_option("--metric", o.metric, "l2|sup|deriv2|pca|wasserstein|matrix|euclidean|minkowski");
  cmd->add_option("--k", o.k, "retained principal components for --metric pca");
  cmd->add_option("--r", o.r, "Wasserstein exponent");
  cmd->add_option("--p", o.p, "Minkowski exponent (inf allowed)");
  cmd->add_option("--engine", o.engine, "exact|subsampled")->check(CLI::IsMember({"exact", "subsampled"}));
  cmd->add_option("--budget", o.budget, "pairs per query for the subsampled engine");
  cmd->add_option("--seed", o.seed, "seed for the subsampled engine");
  cmd->add_option("--output", o.output, "output CSV (default: stdout)");
  cmd->add_option("--block-width", o.block_width, "average curves over blocks of this many grid points");
}

RunConfig resolve(const DataOptions& o, const CLI::App* cmd) {
  RunConfig config;
  if (!o.matrix.empty()) {
    config.input = InputKind::Matrix;
    config.input_path = o.matrix;
  } else if (!o.curves.empty()) {
    config.input = InputKind::Curves;
    config.input_path = o.curves;
  } else if (!o.histograms.empty()) {
    config.input = InputKind::Histograms;
    config.input_path = o.histograms;
  } else {
    config.input = InputKind::Points;
    config.input_path = o.points;
  }
  if (o.metric.empty()) {
    config.metric = default_metric(config.input);
  } else {
    const auto it = kMetricNames.find(o.metric);
    if (it == kMetricNames.end()) {
      throw Error(ErrorKind::Usage, "unknown metric '" + o.metric + "'");
    }
    config.metric = it->second;
  }
  if (cmd->count("--k") > 0 && config.metric != MetricKind::Pca) {
    throw Error(ErrorKind::Usage, "--k applies to --metric pca only");
  }
  if (cmd->count("--r") > 0 && config.metric != MetricKind::Wasserstein) {
    throw Error(ErrorKind::Usage, "--r applies to --metric wasserstein only");
  }
  if (cmd->count("--p") > 0 && config.metric != MetricKind::Minkowski) {
    throw Error(ErrorKind::Usage, "--p applies to --metric minkowski only");
  }
  config.pca_k = o.k;
  config.wasserstein_r = o.r;
  config.minkowski_p = o.p;
  if (o.engine == "subsampled") {
    if (o.budget == 0) {
      throw Error(ErrorKind::InvalidBudget, "--engine subsampled needs --budget >= 1");
    }
    config.engine = Engine::subsampled(o.budget, o.seed);
  } else if (cmd->count("--budget") > 0) {
    throw Error(ErrorKind::Usage, "--budget applies to --engine subsampled only");
  }
  if (!o.output.empty()) {
    config.output_path = o.output;
  }
  if (cmd->count("--block-width") > 0) {
    config.block_width = o.block_width;
  }
  validate(config);
  return config;
}

// --- subcommands -------------------------------------------------------------

std::string report_text(const DepthReport& report, const std::vector<std::size_t>& rows) {
  std::ostringstream ss;
  write_report_csv(ss, report, rows);
  return ss.str();
}

DepthReport sample_report(const RunConfig& config) {
  if (config.input == InputKind::Matrix) {
    const DistanceMatrix m = read_matrix_csv(config.input_path);
    const MatrixOracle oracle = matrix_oracle(m);
    return rank_by_depth(oracle, m.labels(), config.engine);
  }
  Items items;
  append_file(items, config.input, config.input_path);
  const std::size_t n = items.size();
  const Catalog catalog = callback_catalog(config, std::move(items), n);
  const Sample sample = make_sample(catalog, index_range(0, n));
  return rank_by_depth(sample, catalog.labels, config.engine);
}

void run_rank(const RunConfig& config, std::ostream& out) {
  const DepthReport report = sample_report(config);
  emit(config, report_text(report, report.ordering()), out);
}

void run_outliers(const RunConfig& config, std::size_t count, std::ostream& out, std::ostream& err) {
  const DepthReport report = sample_report(config);
  const OutlierSelection selection = flag_outliers(report, count);
  std::vector<std::size_t> rows;
  for (const auto& label : selection.labels) {
    for (std::size_t i = 0; i < report.size(); ++i) {
      if (report.items()[i].label == label) {
        rows.push_back(i);
      }
    }
  }
  if (!selection.tie_spill.empty()) {
    err << "warning: depth tie at the selection boundary; also tied:";
    for (const auto& label : selection.tie_spill) {
      err << ' ' << label;
    }
    err << '\n';
  }
  emit(config, report_text(report, rows), out);
}

void run_depth(const RunConfig& config, const std::string& queries_path, const std::vector<std::string>& query_labels,
               const std::string& member_labels, std::ostream& out) {
  Catalog catalog;
  std::vector<std::size_t> members;
  std::vector<std::size_t> queries;
  if (config.input == InputKind::Matrix) {
    if (!queries_path.empty()) {
      throw Error(ErrorKind::Usage, "matrix input takes --query labels, not --queries");
    }
    const DistanceMatrix m = read_matrix_csv(config.input_path);
    members = member_labels.empty() ? index_range(0, m.size()) : label_indices(m, split_labels(member_labels));
    queries = query_labels.empty() ? index_range(0, m.size()) : label_indices(m, query_labels);
    catalog = matrix_catalog(m);
  } else {
    if (queries_path.empty() || !query_labels.empty() || !member_labels.empty()) {
      throw Error(ErrorKind::Usage, "item input needs --queries FILE (and no --query/--members)");
    }
    Items items;
    append_file(items, config.input, config.input_path);
    const std::size_t n = items.size();
    append_file(items, config.input, queries_path);
    const std::size_t total = items.size();
    catalog = callback_catalog(config, std::move(items), n);
    members = index_range(0, n);
    queries = index_range(n, total);
  }
  const Sample sample = make_sample(catalog, members);
  std::vector<DepthValue> depths = query_depths(sample, queries, config.engine);
  const DepthReport report(labels_of(catalog, queries), std::move(depths));
  emit(config, report_text(report, index_range(0, report.size())), out);
}

void run_ddplot(const RunConfig& config, const std::string& sample_b_path, const std::string& group_a,
                const std::string& group_b, const std::string& queries_path,
                const std::vector<std::string>& query_labels, std::ostream& out) {
  Catalog catalog;
  std::vector<std::size_t> a;
  std::vector<std::size_t> b;
  std::vector<std::size_t> queries;
  if (config.input == InputKind::Matrix) {
    if (group_a.empty() || group_b.empty() || !sample_b_path.empty() || !queries_path.empty()) {
      throw Error(ErrorKind::Usage, "matrix input needs --group-a and --group-b label lists");
    }
    const DistanceMatrix m = read_matrix_csv(config.input_path);
    a = label_indices(m, split_labels(group_a));
    b = label_indices(m, split_labels(group_b));
    queries = query_labels.empty() ? index_range(0, m.size()) : label_indices(m, query_labels);
    catalog = matrix_catalog(m);
  } else {
    if (sample_b_path.empty() || !group_a.empty() || !group_b.empty() || !query_labels.empty()) {
      throw Error(ErrorKind::Usage, "item input needs --sample-b FILE");
    }
    Items items;
    append_file(items, config.input, config.input_path);
    const std::size_t na = items.size();
    append_file(items, config.input, sample_b_path);
    const std::size_t nab = items.size();
    if (!queries_path.empty()) {
      append_file(items, config.input, queries_path);
    }
    const std::size_t total = items.size();
    catalog = callback_catalog(config, std::move(items), nab);
    a = index_range(0, na);
    b = index_range(na, nab);
    queries = queries_path.empty() ? index_range(0, nab) : index_range(nab, total);
  }
  const Sample sample_a = make_sample(catalog, a);
  const Sample sample_b = make_sample(catalog, b);
  const std::vector<DepthValue> da = query_depths(sample_a, queries, config.engine);
  const std::vector<DepthValue> db = query_depths(sample_b, queries, config.engine);
  std::ostringstream ss;
  ss << "label,depth_a,depth_b\n";
  for (std::size_t k = 0; k < queries.size(); ++k) {
    ss << catalog.labels[queries[k]] << ',' << format_number(da[k].value) << ',' << format_number(db[k].value)
       << '\n';
  }
  emit(config, ss.str(), out);
}

void run_classify(const RunConfig& config, const std::vector<std::string>& class_specs,
                  const std::vector<std::string>& query_labels, std::ostream& out) {
  if (class_specs.size() < 2) {
    throw Error(ErrorKind::Usage, "classify needs at least two --class NAME=SPEC options");
  }
  std::vector<std::string> names;
  std::vector<std::string> specs;
  for (const auto& spec : class_specs) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == spec.size()) {
      throw Error(ErrorKind::Usage, "--class expects NAME=SPEC, got '" + spec + "'");
    }
    names.push_back(spec.substr(0, eq));
    specs.push_back(spec.substr(eq + 1));
  }

  Catalog catalog;
  std::vector<std::vector<std::size_t>> classes;
  std::vector<std::size_t> queries;
  if (config.input == InputKind::Matrix) {
    const DistanceMatrix m = read_matrix_csv(config.input_path);
    for (const auto& spec : specs) {
      classes.push_back(label_indices(m, split_labels(spec)));
    }
    queries = query_labels.empty() ? index_range(0, m.size()) : label_indices(m, query_labels);
    catalog = matrix_catalog(m);
  } else {
    if (!query_labels.empty()) {
      throw Error(ErrorKind::Usage, "--query applies to matrix input only");
    }
    Items items;
    for (const auto& spec : specs) {
      const std::size_t begin = items.size();
      append_file(items, config.input, spec);
      classes.push_back(index_range(begin, items.size()));
    }
    const std::size_t reference = items.size();
    append_file(items, config.input, config.input_path);
    const std::size_t total = items.size();
    catalog = callback_catalog(config, std::move(items), reference);
    queries = index_range(reference, total);
  }

  std::vector<std::vector<DepthValue>> depths;
  for (const auto& members : classes) {
    depths.push_back(query_depths(make_sample(catalog, members), queries, config.engine));
  }
  std::ostringstream ss;
  ss << "label,assigned";
  for (const auto& name : names) {
    ss << ",depth_" << name;
  }
  ss << ",outcome\n";
  for (std::size_t q = 0; q < queries.size(); ++q) {
    std::vector<double> per_class;
    for (const auto& d : depths) {
      per_class.push_back(d[q].value);
    }
    const Classification c = classify_by_depth(names, per_class);
    std::string assigned;
    for (std::size_t i = 0; i < c.labels.size(); ++i) {
      assigned += (i == 0 ? "" : "|") + c.labels[i];
    }
    ss << catalog.labels[queries[q]] << ',' << assigned;
    for (const double d : per_class) {
      ss << ',' << format_number(d);
    }
    ss << ',' << to_string(c.outcome) << '\n';
  }
  emit(config, ss.str(), out);
}

struct CounterexampleOptions {
  int example = 1;
  std::size_t n = 5000;
  std::uint64_t seed = 42;
  std::size_t grid = 101;
  double half_width = 0.0;
  std::string engine = "exact";
  std::uint64_t budget = 0;
  std::string prefix;
};

void run_counterexample(const CounterexampleOptions& o, std::ostream& out) {
  if (o.n < 2) {
    throw Error(ErrorKind::InvalidArgument, "--n must be at least 2");
  }
  Engine engine = Engine::exact();
  if (o.engine == "subsampled") {
    if (o.budget == 0) {
      throw Error(ErrorKind::InvalidBudget, "--engine subsampled needs --budget >= 1");
    }
    engine = Engine::subsampled(o.budget, o.seed);
  }
  const double half_width = o.half_width > 0.0 ? o.half_width : default_half_width(o.example);
  const std::vector<double> axis = symmetric_axis(half_width, o.grid);
  const std::vector<Point2> points = sample_counterexample(o.example, o.n, o.seed);
  DepthMap map = grid_depth_map(points, axis, axis, engine);
  map.seed = o.seed;
  map.distribution = counterexample_name(o.example);

  const std::string prefix = o.prefix.empty() ? "counterexample" + std::to_string(o.example) : o.prefix;
  std::vector<std::pair<std::string, std::string>> files;
  std::ostringstream map_csv;
  write_depth_map_csv(map_csv, map);
  files.emplace_back(prefix + "_map.csv", map_csv.str());
  const std::pair<SectionLine, const char*> lines[] = {
      {SectionLine::X2Zero, "_section_x2_0.csv"},
      {SectionLine::X1Zero, "_section_x1_0.csv"},
      {SectionLine::Diagonal, "_section_diag.csv"},
  };
  for (const auto& [line, suffix] : lines) {
    std::ostringstream ss;
    write_section_csv(ss, section(map, line));
    files.emplace_back(prefix + suffix, ss.str());
  }
  const CenterReport center = center_maximality_check(map);

  for (const auto& [path, content] : files) {
    write_file_atomically(path, content);
  }
  out << "distribution," << map.distribution << '\n'
      << "n," << map.n << '\n'
      << "seed," << map.seed << '\n'
      << "center_depth," << format_number(center.center_depth) << '\n'
      << "global_max_depth," << format_number(center.global_max_depth) << '\n'
      << "is_center_max," << (center.is_center_max ? "true" : "false") << '\n';
}

}  // namespace

MetricKind default_metric(InputKind input) {
  switch (input) {
    case InputKind::Matrix: return MetricKind::Matrix;
    case InputKind::Curves: return MetricKind::L2;
    case InputKind::Histograms: return MetricKind::Wasserstein;
    case InputKind::Points: return MetricKind::Euclidean;
  }
  return MetricKind::Matrix;
}

void validate(const RunConfig& config) {
  bool ok = false;
  switch (config.metric) {
    case MetricKind::Matrix: ok = config.input == InputKind::Matrix; break;
    case MetricKind::L2:
    case MetricKind::Sup:
    case MetricKind::Deriv2:
    case MetricKind::Pca: ok = config.input == InputKind::Curves; break;
    case MetricKind::Wasserstein: ok = config.input == InputKind::Histograms; break;
    case MetricKind::Euclidean:
    case MetricKind::Minkowski: ok = config.input == InputKind::Points; break;
  }
  if (!ok) {
    throw Error(ErrorKind::Usage, "metric does not match the input kind");
  }
  if (config.metric == MetricKind::Pca && config.pca_k == 0) {
    throw Error(ErrorKind::Usage, "--k must be at least 1");
  }
  if (config.metric == MetricKind::Wasserstein && !(config.wasserstein_r >= 1.0)) {
    throw Error(ErrorKind::Usage, "--r must be >= 1");
  }
  if (config.metric == MetricKind::Minkowski && !(config.minkowski_p >= 1.0)) {
    throw Error(ErrorKind::Usage, "--p must be >= 1");
  }
  if (config.block_width && (config.input != InputKind::Curves || *config.block_width == 0)) {
    throw Error(ErrorKind::Usage, "--block-width needs curve input and a positive width");
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Metric depth: lens depth over arbitrary (pseudo-)distances", "metric_depth"};
  app.require_subcommand(1);

  DataOptions depth_opts, rank_opts, outliers_opts, dd_opts, classify_opts;
  std::string queries_path, members;
  std::vector<std::string> query_labels;
  std::size_t outlier_count = 0;
  std::string sample_b, group_a, group_b, dd_queries;
  std::vector<std::string> dd_query_labels;
  std::vector<std::string> class_specs, classify_query_labels;
  CounterexampleOptions ce;

  auto* depth = app.add_subcommand("depth", "depth of query items in a sample");
  add_data_options(depth, depth_opts);
  depth->add_option("--queries", queries_path, "query items (same format as the sample)");
  depth->add_option("--query", query_labels, "matrix label to evaluate (repeatable)");
  depth->add_option("--members", members, "comma-separated matrix labels forming the sample");

  auto* rank = app.add_subcommand("rank", "depth of every sample item, deepest first");
  add_data_options(rank, rank_opts);

  auto* outliers = app.add_subcommand("outliers", "the least deep sample items");
  add_data_options(outliers, outliers_opts);
  outliers->add_option("--count", outlier_count, "number of items to flag")->required();

  auto* ddplot = app.add_subcommand("ddplot", "depths of queries in two samples");
  add_data_options(ddplot, dd_opts);
  ddplot->add_option("--sample-b", sample_b, "second sample file");
  ddplot->add_option("--group-a", group_a, "matrix labels of sample A");
  ddplot->add_option("--group-b", group_b, "matrix labels of sample B");
  ddplot->add_option("--queries", dd_queries, "query items file");
  ddplot->add_option("--query", dd_query_labels, "matrix query label (repeatable)");

  auto* classify = app.add_subcommand("classify", "maximum-depth classification of the input items");
  add_data_options(classify, classify_opts);
  classify->add_option("--class", class_specs, "NAME=FILE, or NAME=label,label,... for matrix input")
      ->required()
      ->allow_extra_args(false);
  classify->add_option("--query", classify_query_labels, "matrix query label (repeatable)");

  auto* counter = app.add_subcommand("counterexample", "depth map of a centrally symmetric counterexample");
  counter->add_option("--example", ce.example, "1 (mixture), 2 (four squares), 3 (frame)")
      ->required()
      ->check(CLI::Range(1, 3));
  counter->add_option("--n", ce.n, "sample size");
  counter->add_option("--seed", ce.seed, "sampler seed");
  counter->add_option("--grid", ce.grid, "nodes per axis")->check(CLI::PositiveNumber);
  counter->add_option("--half-width", ce.half_width, "half-width of the square window");
  counter->add_option("--engine", ce.engine, "exact|subsampled")->check(CLI::IsMember({"exact", "subsampled"}));
  counter->add_option("--budget", ce.budget, "pairs per node for the subsampled engine");
  counter->add_option("--output-prefix", ce.prefix, "prefix for the map and section CSV files");

  std::vector<const char*> argv{"metric_depth"};
  for (const auto& a : args) {
    argv.push_back(a.c_str());
  }

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 2;
  }

  try {
    if (depth->parsed()) {
      run_depth(resolve(depth_opts, depth), queries_path, query_labels, members, out);
    } else if (rank->parsed()) {
      run_rank(resolve(rank_opts, rank), out);
    } else if (outliers->parsed()) {
      run_outliers(resolve(outliers_opts, outliers), outlier_count, out, err);
    } else if (ddplot->parsed()) {
      run_ddplot(resolve(dd_opts, ddplot), sample_b, group_a, group_b, dd_queries, dd_query_labels, out);
    } else if (classify->parsed()) {
      run_classify(resolve(classify_opts, classify), class_specs, classify_query_labels, out);
    } else if (counter->parsed()) {
      run_counterexample(ce, out);
    }
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    if (e.kind() == ErrorKind::Usage) {
      err << app.help();
    }
    return e.is_validation() ? 2 : 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace metric_depth
