// Writes a two-cluster set of daily temperature-like curves as curves CSV.
//
//   make_synthetic_curves [output] [seed]

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>

#include "metric_depth/csv_io.hpp"
#include "metric_depth/random.hpp"

namespace {

struct Cluster {
  const char* name;
  int count;
  double mean_level, sd_level;
  double mean_amplitude, sd_amplitude;
};

constexpr int kDays = 365;

}  // namespace

int main(int argc, char** argv) {
  const std::string output = argc > 1 ? argv[1] : "synthetic_curves.csv";
  const std::uint64_t seed = argc > 2 ? std::stoull(argv[2]) : 2024;
  metric_depth::Rng rng(seed);

  const Cluster clusters[] = {{"coastal", 20, 8.0, 1.5, 7.0, 1.2}, {"continental", 15, -2.0, 2.0, 17.0, 2.0}};

  std::ostringstream csv;
  csv << "label";
  for (int day = 1; day <= kDays; ++day) {
    csv << ",t=" << day;
  }
  csv << '\n';
  for (const Cluster& cluster : clusters) {
    for (int i = 1; i <= cluster.count; ++i) {
      const double level = cluster.mean_level + cluster.sd_level * rng.normal();
      const double amplitude = cluster.mean_amplitude + cluster.sd_amplitude * rng.normal();
      const double wobble_sin = 0.8 * rng.normal();
      const double wobble_cos = 0.8 * rng.normal();
      csv << cluster.name << (i < 10 ? "0" : "") << i;
      for (int day = 1; day <= kDays; ++day) {
        const double phase = 2.0 * std::numbers::pi * (day - 15) / kDays;
        const double value = level - amplitude * std::cos(phase) + wobble_sin * std::sin(2.0 * phase) +
                             wobble_cos * std::cos(2.0 * phase) + 0.4 * rng.normal();
        csv << ',' << metric_depth::format_number(value);
      }
      csv << '\n';
    }
  }
  metric_depth::write_file_atomically(output, csv.str());
  std::cerr << "wrote " << output << '\n';
  return 0;
}
