#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "c2lab/pipeline.hpp"

using namespace c2lab;

int main(int argc, char** argv) {
  CLI::App app{"c2 invariants of graphs by quadratic denominator reduction and point counting"};
  app.set_config("--config", "", "TOML/INI file with default flag values; flags on the command line win");
  app.require_subcommand(1);

  Config cfg;
  std::string max_points = "1e9";
  std::string format = "json";
  std::string cache_path;
  bool quiet = false;
  std::vector<std::string> files;

  app.add_option("--max-points", max_points, "grid size cap, e.g. 1e9 or 10^8")->capture_default_str();
  app.add_option("--primes", cfg.prime_bound, "largest prime to count at")->capture_default_str();
  app.add_option("--prime", cfg.primes, "count only at these primes (repeatable, or comma list)")
      ->allow_extra_args(false)
      ->delimiter(',');
  app.add_option("--strategy", cfg.strategy, "greedy, file-order, or a comma list of edge labels")
      ->capture_default_str();
  app.add_option("--threads", cfg.threads, "worker threads, 0 for all cores")->capture_default_str();
  app.add_option("--cache", cache_path, "append-only result cache file");
  app.add_option("--format", format, "json, csv, or text (reduce only)")
      ->check(CLI::IsMember({"json", "csv", "text"}))
      ->capture_default_str();
  app.add_option("--newforms", cfg.newform_tables, "external newform coefficient tables")->allow_extra_args(false);
  app.add_flag("--timings", cfg.timings, "include per-phase timings in reports");
  app.add_flag("!--no-two", cfg.with_two, "skip p = 2 in compute");
  app.add_flag("--only-prime", cfg.only_prime, "census: print prime ancestors only");
  app.add_flag("-q,--quiet", quiet, "no table on standard error");

  std::vector<CLI::App*> subs;
  for (auto [name, help] : std::vector<std::pair<std::string, std::string>>{
           {"compute", "reduce, count and identify each graph"},
           {"reduce", "dump the quadratic invariant reached"},
           {"oracle", "brute-force c2 from the graph polynomial"},
           {"census", "prime-ancestor filter and double-triangle ancestors"},
           {"pairs", "intersection counts of Dodgson-pair files"},
           {"selftest", "small identity suites"}}) {
    auto* s = app.add_subcommand(name, help);
    s->fallthrough();
    if (name != "selftest") s->add_option("files", files, "input files")->required()->check(CLI::ExistingFile);
    subs.push_back(s);
  }

  CLI11_PARSE(app, argc, argv);
  std::string command = app.get_subcommands().front()->get_name();

  std::unique_ptr<ResultCache> cache;
  std::vector<RunReport> reports;
  try {
    cfg.max_points = parse_count(max_points);
    if (!cache_path.empty()) {
      cfg.cache_path = cache_path;
      cache = std::make_unique<ResultCache>(cache_path);
    }
    if (command == "selftest") {
      reports = selftest(cfg);
    } else if (command == "pairs") {
      auto pool = pool_from_config(cfg);
      for (const auto& f : files) reports.push_back(pairs_report(f, cfg, pool, cache.get()));
    } else {
      auto graphs = load_graph_files(files);
      if (command == "compute") {
        auto pool = pool_from_config(cfg);
        prime_list(cfg, cfg.with_two);  // fail early on a bad --prime
        for (const auto& g : graphs) reports.push_back(compute_report(g, cfg, pool, cache.get()));
      } else if (command == "reduce") {
        for (const auto& g : graphs) reports.push_back(reduce_report(g, cfg));
      } else if (command == "oracle") {
        for (const auto& g : graphs) reports.push_back(oracle_report(g, cfg, cache.get()));
      } else {
        for (const auto& g : graphs) reports.push_back(census_report(g));
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "c2lab: " << e.what() << "\n";
    return 2;
  }

  bool ok = true;
  if (format == "csv") std::cout << csv_header(command) << "\n";
  for (const auto& r : reports) {
    ok = ok && r.ok();
    if (command == "census" && cfg.only_prime && !r.json.value("prime_ancestor", false)) continue;
    if (format == "csv") {
      std::cout << csv_row(command, r) << "\n";
    } else if (format == "text" && command == "reduce" && !r.text.empty()) {
      std::cout << r.text;
    } else {
      std::cout << r.json.dump() << "\n";
    }
    if (!quiet) std::cerr << table_row(command, r) << "\n";
  }
  return ok ? 0 : 1;
}
