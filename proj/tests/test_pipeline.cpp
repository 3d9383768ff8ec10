#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

#include "c2lab/pipeline.hpp"
#include "support.hpp"

using namespace c2lab;
namespace fs = std::filesystem;

namespace {

const std::string kData = C2LAB_DATA_DIR;
const std::string kCli = C2LAB_CLI;

GraphInput load_one(const std::string& name) { return load_graph_files({kData + "/" + name}).at(0); }

std::string temp_path(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("c2lab_test_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return (dir / name).string();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

struct Run {
  int code = -1;
  std::string out;
};

Run run_cli(const std::string& args) {
  Run r;
  std::string cmd = kCli + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf{};
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  int st = pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

Config small_config() {
  Config cfg;
  cfg.prime_bound = 13;
  cfg.threads = 1;
  return cfg;
}

}  // namespace

TEST(ParseCount, Forms) {
  EXPECT_EQ(parse_count("1e9"), 1'000'000'000u);
  EXPECT_EQ(parse_count("5E3"), 5000u);
  EXPECT_EQ(parse_count("10^8"), 100'000'000u);
  EXPECT_EQ(parse_count("2^10"), 1024u);
  EXPECT_EQ(parse_count("12345"), 12345u);
  for (const char* bad : {"", "abc", "1e", "-5", "1.5e3", "10^", "1e30", "2^70", "12x"}) {
    EXPECT_THROW(parse_count(bad), std::invalid_argument) << bad;
  }
}

TEST(PrimeList, DefaultsAndOverrides) {
  Config cfg;
  cfg.prime_bound = 13;
  EXPECT_EQ(prime_list(cfg, true), (std::vector<uint64_t>{2, 3, 5, 7, 11, 13}));
  EXPECT_EQ(prime_list(cfg, false), (std::vector<uint64_t>{3, 5, 7, 11, 13}));
  cfg.primes = {7, 2, 7, 5};
  EXPECT_EQ(prime_list(cfg, true), (std::vector<uint64_t>{2, 5, 7}));
  EXPECT_EQ(prime_list(cfg, false), (std::vector<uint64_t>{5, 7}));
  cfg.primes = {9};
  EXPECT_THROW(prime_list(cfg, true), std::invalid_argument);
}

TEST(Cache, StoresAndReloads) {
  std::string path = temp_path("cache_basic.txt");
  fs::remove(path);
  {
    ResultCache c(path);
    EXPECT_EQ(c.size(), 0u);
    c.put("abc", 5, "oracle", C2Entry{4, Provenance::oracle});
    c.put("abc", 7, "reduce:greedy", C2Entry{6, Provenance::quadratic_invariant});
    auto e = c.get("abc", 5, "oracle");
    ASSERT_TRUE(e.has_value());
    EXPECT_EQ(e->residue, 4u);
    EXPECT_FALSE(c.get("abc", 5, "reduce:greedy").has_value());
    EXPECT_EQ(c.hits(), 1u);
  }
  ResultCache again(path);
  EXPECT_EQ(again.size(), 2u);
  auto e = again.get("abc", 7, "reduce:greedy");
  ASSERT_TRUE(e.has_value());
  EXPECT_EQ(e->residue, 6u);
  EXPECT_EQ(e->source, Provenance::quadratic_invariant);
}

TEST(Compute, K4) {
  auto r = compute_report(load_one("k4.txt"), small_config(), default_pool(), nullptr);
  ASSERT_TRUE(r.ok()) << r.json.dump();
  const auto& j = r.json;
  EXPECT_EQ(j["command"], "compute");
  EXPECT_EQ(j["reduction"]["status"], "exhausted");
  ASSERT_EQ(j["c2"].size(), 6u);
  for (const auto& e : j["c2"]) EXPECT_EQ(e["residue"].get<uint64_t>(), e["p"].get<uint64_t>() - 1);
  EXPECT_EQ(j["c2"][0]["source"], "standard_invariant");
  EXPECT_EQ(j["identification"]["status"], "unique");
  EXPECT_EQ(j["identification"]["matches"], ojson::array({"constant -1"}));
  EXPECT_FALSE(j.contains("timings_ms"));
}

TEST(Compute, TimingsOnlyWhenAsked) {
  auto cfg = small_config();
  cfg.timings = true;
  auto r = compute_report(load_one("k4.txt"), cfg, default_pool(), nullptr);
  EXPECT_TRUE(r.json.contains("timings_ms"));
}

TEST(Compute, TinyGraphsAreCountedDirectly) {
  // path with a self-loop at the end: the 3-invariant drops weight, c2 = 1
  GraphInput in{"inline", 0, Multigraph(3, {{2, 2}, {0, 1}, {1, 2}})};
  auto r = compute_report(in, small_config(), default_pool(), nullptr);
  ASSERT_TRUE(r.ok()) << r.json.dump();
  EXPECT_EQ(r.json["reduction"]["status"], "weight_drop");
  for (const auto& e : r.json["c2"]) {
    EXPECT_EQ(e["residue"], 1);
    EXPECT_EQ(e["source"], "oracle");
  }
  // the constant 1 is not in the pool
  EXPECT_EQ(r.json["identification"]["status"], "unidentified");
}

TEST(Compute, CompletedGraphIsAnError) {
  auto r = compute_report(load_one("k5.txt"), small_config(), default_pool(), nullptr);
  EXPECT_FALSE(r.ok());
}

TEST(Compute, CacheGivesIdenticalOutput) {
  std::string path = temp_path("cache_compute.txt");
  fs::remove(path);
  auto cfg = small_config();
  auto in = load_one("octahedron_decompleted.txt");
  std::string first, second;
  {
    ResultCache c(path);
    first = compute_report(in, cfg, default_pool(), &c).json.dump();
    EXPECT_EQ(c.hits(), 0u);
    EXPECT_GT(c.size(), 0u);
  }
  {
    ResultCache c(path);
    second = compute_report(in, cfg, default_pool(), &c).json.dump();
    EXPECT_GT(c.hits(), 0u);
  }
  EXPECT_EQ(first, second);
}

TEST(Compute, ExplicitStrategy) {
  auto cfg = small_config();
  cfg.strategy = "file-order";
  auto r = compute_report(load_one("k4.txt"), cfg, default_pool(), nullptr);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r.json["reduction"]["strategy"], "file-order");
  EXPECT_EQ(r.json["identification"]["matches"], ojson::array({"constant -1"}));
}

TEST(Reduce, TextDump) {
  auto r = reduce_report(load_one("k4.txt"), small_config());
  ASSERT_TRUE(r.ok());
  EXPECT_NE(r.text.find("# n 6\n"), std::string::npos);
  EXPECT_EQ(r.json["reduction"]["n"], 6);
}

TEST(Oracle, K4AtSmallPrimes) {
  auto cfg = small_config();
  cfg.primes = {2, 3, 5};
  auto r = oracle_report(load_one("k4.txt"), cfg, nullptr);
  ASSERT_TRUE(r.ok()) << r.json.dump();
  ASSERT_EQ(r.json["c2"].size(), 3u);
  for (const auto& e : r.json["c2"]) {
    EXPECT_EQ(e["residue"].get<uint64_t>(), e["p"].get<uint64_t>() - 1);
    EXPECT_EQ(e["source"], "oracle");
  }
}

TEST(Oracle, BudgetIsReported) {
  auto cfg = small_config();
  cfg.primes = {7};
  cfg.max_points = 1000;
  auto r = oracle_report(load_one("k4.txt"), cfg, nullptr);
  EXPECT_FALSE(r.ok());
}

TEST(Census, OctahedronFallsToK5) {
  auto r = census_report(load_one("octahedron.txt"));
  ASSERT_TRUE(r.ok()) << r.json.dump();
  EXPECT_EQ(r.json["prime_ancestor"], false);
  EXPECT_EQ(r.json["ancestor"]["vertices"], 5);
  EXPECT_EQ(r.json["ancestor"]["steps"], 1);
  auto k5 = census_report(load_one("k5.txt"));
  EXPECT_EQ(k5.json["prime_ancestor"], true);
}

TEST(Pairs, ParseAndCount) {
  Poly f = Poly::var(1) + Poly::var(2);
  Poly g = Poly::var(1) * Poly::var(3) * Poly::var(4) + Poly::var(2) * Poly::var(3) * Poly::var(4) +
           Poly::var(1) * Poly::var(2) * Poly::var(3);
  std::string text = f.serialize() + "\n---\n" + g.serialize() + "\n";
  auto [a, b] = parse_pair(text);
  EXPECT_EQ(a, f);
  EXPECT_EQ(b, g);
  EXPECT_THROW(parse_pair(f.serialize()), std::invalid_argument);
  EXPECT_THROW(parse_pair(text + "---\n"), std::invalid_argument);

  std::string path = temp_path("pair.txt");
  write_file(path, text);
  auto cfg = small_config();
  cfg.primes = {2, 3, 5};
  auto r = pairs_report(path, cfg, default_pool(), nullptr);
  ASSERT_TRUE(r.ok()) << r.json.dump();
  ASSERT_EQ(r.json["counts"].size(), 2u);  // odd primes only
  for (const auto& e : r.json["counts"]) {
    uint64_t p = e["p"].get<uint64_t>();
    EXPECT_EQ(e["count"].get<int64_t>(), pair_intersection_exact(f, g, p));
    EXPECT_EQ(e["residue"].get<uint64_t>(), pair_intersection_count(f, g, p));
  }
}

TEST(Pairs, BadFileIsAnError) {
  std::string path = temp_path("pair_bad.txt");
  write_file(path, "x1^2\n---\nx2\n");
  auto r = pairs_report(path, small_config(), default_pool(), nullptr);
  EXPECT_FALSE(r.ok());
}

TEST(Selftest, AllSuitesPass) {
  auto reports = selftest(small_config());
  EXPECT_GE(reports.size(), 5u);
  for (const auto& r : reports) EXPECT_TRUE(r.ok()) << r.json.dump();
}

TEST(Csv, HeaderMatchesRow) {
  auto r = compute_report(load_one("k4.txt"), small_config(), default_pool(), nullptr);
  auto count = [](const std::string& s) { return std::count(s.begin(), s.end(), ','); };
  EXPECT_EQ(count(csv_header("compute")), count(csv_row("compute", r)));
}

TEST(Cli, ComputeK4) {
  auto r = run_cli("compute -q --primes 7 " + kData + "/k4.txt");
  EXPECT_EQ(r.code, 0);
  auto j = ojson::parse(r.out);
  EXPECT_EQ(j["identification"]["matches"], ojson::array({"constant -1"}));
  EXPECT_EQ(j["c2"].size(), 4u);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run_cli("compute -q " + kData + "/k5.txt").code, 1);
  EXPECT_EQ(run_cli("compute -q --max-points lots " + kData + "/k4.txt").code, 2);
  EXPECT_EQ(run_cli("compute -q --prime 9 " + kData + "/k4.txt").code, 2);
  EXPECT_NE(run_cli("compute -q " + kData + "/missing.txt").code, 0);
  EXPECT_NE(run_cli("").code, 0);
}

TEST(Cli, SeveralGraphsOneLineEach) {
  auto r = run_cli("compute -q --primes 5 --no-two " + kData + "/k4.txt " + kData + "/octahedron_decompleted.txt");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 2);
}

TEST(Cli, CsvAndText) {
  auto csv = run_cli("oracle -q --format csv --prime 3 " + kData + "/k4.txt");
  EXPECT_EQ(csv.code, 0);
  EXPECT_EQ(csv.out.rfind(csv_header("oracle") + "\n", 0), 0u);
  auto text = run_cli("reduce -q --format text " + kData + "/k4.txt");
  EXPECT_NE(text.out.find("# status exhausted"), std::string::npos);
}

TEST(Cli, ConfigFileAndOverride) {
  std::string path = temp_path("c2lab.ini");
  write_file(path, "primes=5\nno-two=true\n");
  auto r = run_cli("compute -q --config " + path + " " + kData + "/k4.txt");
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(ojson::parse(r.out)["c2"].size(), 2u);  // 3, 5
  auto o = run_cli("compute -q --config " + path + " --primes 7 " + kData + "/k4.txt");
  EXPECT_EQ(ojson::parse(o.out)["c2"].size(), 3u);
}

TEST(Cli, CensusOnlyPrime) {
  auto r = run_cli("census -q --only-prime " + kData + "/census_small.txt");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 1);
}
