#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <map>
#include <memory>
#include <sstream>

#include "latfold/io.hpp"

namespace fs = std::filesystem;
using namespace latfold;

namespace {

struct Run {
  int status = 0;
  std::map<std::string, std::string> fields;
};

Run run_cli(const std::string& args) {
  const std::string cmd = std::string(LATFOLD_CLI_PATH) + " " + args + " 2>/dev/null";
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
  Run r;
  std::string out;
  std::array<char, 512> buf{};
  while (fgets(buf.data(), buf.size(), pipe.get())) out += buf.data();
  r.status = pclose(pipe.release());
  std::istringstream in(out);
  std::string line;
  while (std::getline(in, line)) {
    const auto sp = line.find(' ');
    if (sp != std::string::npos) r.fields[line.substr(0, sp)] = line.substr(sp + 1);
  }
  return r;
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("latfold_cli_" + name);
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST(Cli, BuildReportsQubitCounts) {
  const auto dir = scratch("build7");
  const auto r = run_cli("build --sequence APRLRFY -o " + dir.string());
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(r.fields.at("n"), "9");
  EXPECT_EQ(r.fields.at("n_int"), "2");
  EXPECT_TRUE(fs::exists(dir / "hamiltonian.json"));
  EXPECT_TRUE(fs::exists(dir / "hamiltonian.txt"));
  const auto layout = read_json(dir / "layout.json");
  EXPECT_EQ(layout.at("n").get<int>(), 9);

  const auto r10 = run_cli("build --sequence DRVYVHPFHL -o " + scratch("build10").string());
  ASSERT_EQ(r10.status, 0);
  EXPECT_EQ(r10.fields.at("n"), "22");
}

TEST(Cli, EnumerateWritesSpectrum) {
  const auto dir = scratch("enum");
  const auto r = run_cli("enumerate --sequence APRLRFY -o " + dir.string());
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(r.fields.at("ground_energy"), "-4.81");
  EXPECT_EQ(r.fields.at("ground_contacts"), "10");
  EXPECT_TRUE(fs::exists(dir / "spectrum.json"));
  EXPECT_TRUE(fs::exists(dir / "conformations" / "entry_0000.xyz"));
}

TEST(Cli, FoldAndReport) {
  const auto dir = scratch("fold");
  const auto r = run_cli("fold --sequence APRLRFY --generations 5 --seed 3 --oracle true -o " + dir.string());
  ASSERT_EQ(r.status, 0);
  for (const char* f : {"trajectory.csv", "histogram.json", "best_fold.xyz", "manifest.json", "result.json"}) {
    EXPECT_TRUE(fs::exists(dir / f)) << f;
  }
  const auto hist = histogram_from_json(read_json(dir / "histogram.json"));
  ASSERT_FALSE(hist.empty());
  for (const auto& [key, bin] : hist) EXPECT_EQ(key.size(), 2u);
  const auto manifest = read_json(dir / "manifest.json");
  EXPECT_EQ(manifest.at("seed").get<int>(), 3);
  EXPECT_DOUBLE_EQ(manifest.at("ground_energy").get<double>(), -4.81);
  EXPECT_EQ(parse_trajectory_csv(read_text(dir / "trajectory.csv")).size(), 6u);

  const auto rep = run_cli("report " + dir.string());
  ASSERT_EQ(rep.status, 0);
  EXPECT_EQ(rep.fields.at("generations"), "6");
  EXPECT_TRUE(fs::exists(dir / "report_histogram.csv"));
  EXPECT_TRUE(fs::exists(dir / "report_p0.csv"));
}

TEST(Cli, FoldIsReproducible) {
  const auto a = scratch("rep_a"), b = scratch("rep_b");
  ASSERT_EQ(run_cli("fold --sequence APRLRFY --generations 3 --seed 11 -o " + a.string()).status, 0);
  ASSERT_EQ(run_cli("fold --sequence APRLRFY --generations 3 --seed 11 -o " + b.string()).status, 0);
  EXPECT_EQ(read_text(a / "trajectory.csv"), read_text(b / "trajectory.csv"));
  EXPECT_EQ(read_text(a / "histogram.json"), read_text(b / "histogram.json"));
}

TEST(Cli, ConfigFileAndErrors) {
  const auto dir = scratch("cfg");
  const auto r = run_cli("build -c " + (fs::path(LATFOLD_CONFIG_DIR) / "angiotensin.json").string() + " -o " +
                         dir.string());
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(r.fields.at("n"), "22");
  EXPECT_NE(run_cli("build --sequence APRLRFY --encoding fancy -o " + dir.string()).status, 0);
  EXPECT_NE(run_cli("report " + (dir / "missing").string()).status, 0);
  EXPECT_NE(run_cli("").status, 0);
}
