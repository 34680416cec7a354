#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "metric_depth/cli.hpp"
#include "metric_depth/csv_io.hpp"

using namespace metric_depth;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

const std::string kMiddleton = std::string(METRIC_DEPTH_DATA_DIR) + "/middleton.csv";
const std::string kCurves = std::string(METRIC_DEPTH_DATA_DIR) + "/synthetic_curves.csv";

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name, const std::string& content = {}) const {
    const fs::path p = path / name;
    if (!content.empty()) {
      std::ofstream(p) << content;
    }
    return p.string();
  }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::vector<ReportRow> report_of(const std::string& text) {
  std::istringstream in(text);
  return parse_report_csv(in);
}

}  // namespace

TEST_CASE("rank on the Middleton matrix") {
  const Result r = run({"rank", "--matrix", kMiddleton});
  REQUIRE(r.code == 0);
  const auto rows = report_of(r.out);
  REQUIRE(rows.size() == 9);
  CHECK(rows[0].label == "Trk");
  CHECK(rows[1].label == "Dis");
  CHECK(r.out.find("Trk,0.4166666667,1\n") != std::string::npos);
  CHECK(r.out.find("Dis,0.4166666667,1\n") != std::string::npos);
  CHECK(rows[8].label == "Val");
  CHECK(r.out.rfind("label,depth,rank\n", 0) == 0);
}

TEST_CASE("depth and outliers subcommands") {
  const Result d = run({"depth", "--matrix", kMiddleton, "--query", "Val", "--query", "Dis"});
  REQUIRE(d.code == 0);
  const auto rows = report_of(d.out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].label == "Val");
  CHECK(rows[0].depth == doctest::Approx(2.0 / 36.0));

  const Result o = run({"outliers", "--matrix", kMiddleton, "--count", "1"});
  REQUIRE(o.code == 0);
  const auto flagged = report_of(o.out);
  REQUIRE(flagged.size() == 1);
  CHECK(flagged[0].label == "Val");
}

TEST_CASE("exit codes") {
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"rank"}).code == 2);
  CHECK(run({"rank", "--matrix", kMiddleton, "--curves", kCurves}).code == 2);
  CHECK(run({"rank", "--matrix", kMiddleton, "--metric", "l2"}).code == 2);
  CHECK(run({"rank", "--matrix", "/nonexistent/file.csv"}).code == 2);
  CHECK(run({"outliers", "--matrix", kMiddleton, "--count", "10"}).code == 2);

  TempDir dir("metric_depth_cli_codes");
  const std::string bad = dir.file("bad.csv", ",a,b\na,0,abc\nb,1,0\n");
  const Result parse = run({"rank", "--matrix", bad});
  CHECK(parse.code == 2);
  CHECK(parse.err.find("line 2") != std::string::npos);
  const std::string asym = dir.file("asym.csv", ",a,b\na,0,1\nb,2,0\n");
  CHECK(run({"rank", "--matrix", asym}).code == 2);

  const Result unwritable = run({"rank", "--matrix", kMiddleton, "--output", (dir.path / "no" / "x.csv").string()});
  CHECK(unwritable.code == 1);
}

TEST_CASE("output files are complete or absent") {
  TempDir dir("metric_depth_cli_output");
  const std::string target = dir.file("report.csv");
  const Result ok = run({"rank", "--matrix", kMiddleton, "--output", target});
  REQUIRE(ok.code == 0);
  CHECK(ok.out.empty());
  CHECK(report_of(slurp(target)).size() == 9);

  const std::string bad = dir.file("bad.csv", ",a,b,c\na,0,1,1\nb,1,0,-1\nc,1,-1,0\n");
  const std::string second = dir.file("second.csv");
  CHECK(run({"rank", "--matrix", bad, "--output", second}).code == 2);
  CHECK_FALSE(fs::exists(second));
  for (const auto& entry : fs::directory_iterator(dir.path)) {
    CHECK(entry.path().extension() != ".tmp");
  }
}

TEST_CASE("repeated runs are byte-identical") {
  const std::vector<std::string> exact{"rank", "--curves", kCurves, "--metric", "pca", "--k", "2"};
  CHECK(run(exact).out == run(exact).out);
  const std::vector<std::string> sub{"rank", "--matrix", kMiddleton, "--engine", "subsampled", "--budget", "10", "--seed", "5"};
  const Result a = run(sub);
  REQUIRE(a.code == 0);
  CHECK(a.out == run(sub).out);
}

TEST_CASE("curve metrics end to end") {
  for (const std::vector<std::string>& extra : std::vector<std::vector<std::string>>{
           {"--metric", "l2"}, {"--metric", "sup"}, {"--metric", "l2", "--block-width", "30"},
           {"--metric", "pca", "--k", "2"}, {"--metric", "deriv2"}}) {
    std::vector<std::string> args{"rank", "--curves", kCurves};
    args.insert(args.end(), extra.begin(), extra.end());
    const Result r = run(args);
    CHECK(r.code == 0);
    CHECK(report_of(r.out).size() == 35);
  }
  CHECK(run({"rank", "--curves", kCurves, "--metric", "pca", "--k", "40"}).code == 2);
}

TEST_CASE("histograms and points") {
  TempDir dir("metric_depth_cli_kinds");
  const std::string hist = dir.file("h.csv",
                                    "label,bin_left,bin_right,count\n"
                                    "a,0,1,1\nb,0,1,2\nb,1,2,1\nc,1,2,4\nd,0,2,3\n");
  const Result w = run({"rank", "--histograms", hist, "--r", "1"});
  CHECK(w.code == 0);
  CHECK(report_of(w.out).size() == 4);

  const std::string pts = dir.file("p.csv", "label,x\np0,0\np1,1\np2,2\n");
  const Result e = run({"rank", "--points", pts});
  REQUIRE(e.code == 0);
  const auto rows = report_of(e.out);
  CHECK(rows[0].label == "p1");
  CHECK(rows[0].depth == doctest::Approx(1.0 / 3.0));
  CHECK(run({"rank", "--points", pts, "--metric", "minkowski", "--p", "0.5"}).code == 2);
  CHECK(run({"rank", "--points", pts, "--metric", "minkowski", "--p", "inf"}).code == 0);
}

TEST_CASE("ddplot and classify") {
  TempDir dir("metric_depth_cli_classes");
  const std::string a = dir.file("a.csv", "label,x\na0,0\na1,1\na2,2\n");
  const std::string b = dir.file("b.csv", "label,x\nb0,10\nb1,11\nb2,12\n");
  const std::string q = dir.file("q.csv", "label,x\nq1,1\nq11,11\nfar,100\n");

  const Result dd = run({"ddplot", "--points", a, "--sample-b", b, "--queries", q});
  REQUIRE(dd.code == 0);
  CHECK(dd.out.find("label,depth_a,depth_b\n") == 0);
  CHECK(dd.out.find("q1,0.3333333333,0\n") != std::string::npos);
  CHECK(dd.out.find("q11,0,0.3333333333\n") != std::string::npos);

  const Result cl = run({"classify", "--points", q, "--class", "A=" + a, "--class", "B=" + b});
  REQUIRE(cl.code == 0);
  CHECK(cl.out.find("q1,A,") != std::string::npos);
  CHECK(cl.out.find("q11,B,") != std::string::npos);
  CHECK(cl.out.find("outlying") != std::string::npos);

  const Result m = run({"classify", "--matrix", kMiddleton, "--class", "x=Phn,Mad,Trk,Pur", "--class",
                        "y=Alm,CMC,Dis,Val", "--query", "WBW"});
  CHECK(m.code == 0);
  CHECK(m.out.find("WBW,") != std::string::npos);
}

TEST_CASE("counterexample writes map and sections") {
  TempDir dir("metric_depth_cli_counter");
  const std::string prefix = (dir.path / "ce").string();
  const Result r = run({"counterexample", "--example", "2", "--n", "300", "--seed", "7", "--grid", "11",
                        "--output-prefix", prefix});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("is_center_max,") != std::string::npos);
  std::istringstream map_text(slurp(prefix + "_map.csv"));
  const DepthMap map = parse_depth_map_csv(map_text);
  CHECK(map.x1_axis.size() == 11);
  CHECK(map.x2_axis.size() == 11);
  CHECK(map.x1_axis.front() == -5.0);
  for (const char* name : {"_section_x2_0.csv", "_section_x1_0.csv", "_section_diag.csv"}) {
    const std::string text = slurp(prefix + name);
    CHECK(text.rfind("coordinate,depth\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 12);
  }
  const Result again = run({"counterexample", "--example", "2", "--n", "300", "--seed", "7", "--grid", "11",
                            "--output-prefix", prefix});
  CHECK(again.out == r.out);
  CHECK(run({"counterexample", "--example", "4"}).code == 2);
  CHECK(run({"counterexample", "--example", "1", "--grid", "10", "--output-prefix", prefix}).code == 2);
}
