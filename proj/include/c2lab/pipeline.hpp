#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <tuple>
#include <string>
#include <vector>

#include "c2lab/denred.hpp"
#include "c2lab/fpcount.hpp"
#include "c2lab/identify.hpp"
#include "json.hpp"

namespace c2lab {

using ojson = nlohmann::ordered_json;

struct Config {
  uint64_t max_points = 1'000'000'000;
  uint64_t prime_bound = 31;
  std::vector<uint64_t> primes;  // explicit list; overrides prime_bound when set
  std::string strategy = "greedy";
  unsigned threads = 0;
  std::string cache_path;  // empty: no cache
  bool timings = false;
  bool with_two = true;
  std::vector<std::string> newform_tables;
  bool only_prime = false;  // census: keep prime ancestors only
};

// "1000000", "1e9", "10^8".
uint64_t parse_count(const std::string& text);

// Append-only result store. Lines: "<hash> <prime> <method> <residue> <source>".
class ResultCache {
 public:
  ResultCache() = default;
  explicit ResultCache(std::string path);
  std::optional<C2Entry> get(const std::string& hash, uint64_t p, const std::string& method) const;
  void put(const std::string& hash, uint64_t p, const std::string& method, const C2Entry& e);
  size_t size() const;
  size_t hits() const;

 private:
  std::string path_;
  mutable std::mutex mu_;
  std::map<std::tuple<std::string, uint64_t, std::string>, C2Entry> entries_;
  mutable size_t hits_ = 0;
};

struct GraphInput {
  std::string file;
  size_t index = 0;  // position within the file
  Multigraph graph;
};

std::vector<GraphInput> load_graph_files(const std::vector<std::string>& files);
std::string read_file(const std::string& path);

struct RunReport {
  ojson json;
  std::string text;  // plain dump, where a command has one
  std::vector<std::string> errors;
  bool ok() const { return errors.empty(); }
};

// Primes to count at, odd ones from the config plus 2 when requested.
std::vector<uint64_t> prime_list(const Config& cfg, bool with_two);

CandidatePool pool_from_config(const Config& cfg);

RunReport compute_report(const GraphInput& in, const Config& cfg, const CandidatePool& pool, ResultCache* cache);
RunReport reduce_report(const GraphInput& in, const Config& cfg);
RunReport oracle_report(const GraphInput& in, const Config& cfg, ResultCache* cache);
RunReport census_report(const GraphInput& in);

// Two serialized polynomials separated by a "---" line.
std::pair<Poly, Poly> parse_pair(const std::string& text);
RunReport pairs_report(const std::string& file, const Config& cfg, const CandidatePool& pool, ResultCache* cache);

// Small identity suites; one report per suite.
std::vector<RunReport> selftest(const Config& cfg);

// One line per report for the human table.
std::string table_row(const std::string& command, const RunReport& r);
std::string csv_header(const std::string& command);
std::string csv_row(const std::string& command, const RunReport& r);

}  // namespace c2lab
