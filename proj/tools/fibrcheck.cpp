#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "fibrcheck/analyze.hpp"
#include "fibrcheck/error.hpp"

namespace {

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  fibrcheck::configure_logging();

  CLI::App app{"Twisted Alexander polynomial obstructions for 0-surgeries on knots"};
  app.require_subcommand(1);

  auto* analyze = app.add_subcommand("analyze", "search epimorphisms and evaluate the fiberedness criteria");
  std::string input;
  std::string groups = "S3,S4,S5";
  std::string primes = "5,7,11,13";
  std::string mode = "symplectic";
  std::size_t max_homs = 10'000;
  unsigned workers = 1;
  std::string cache;
  std::string out;
  std::uint64_t regular_max = 24;
  long search_seconds = 600;

  analyze->add_option("presentation", input, "presentation JSON file")->required();
  analyze->add_option("--groups", groups, "comma-separated target groups, e.g. S3,S4,A4")->capture_default_str();
  analyze->add_option("--primes", primes, "comma-separated primes")->capture_default_str();
  analyze->add_option("--mode", mode, "symplectic or fibered")->capture_default_str();
  analyze->add_option("--max-homs", max_homs, "homomorphism limit per group")->capture_default_str();
  analyze->add_option("--workers", workers, "worker threads")->capture_default_str();
  analyze->add_option("--cache", cache, "epimorphism cache file");
  analyze->add_option("--out", out, "report JSON output path");
  analyze->add_option("--regular-max-order", regular_max,
                      "evaluate the regular representation for |G| up to this order")
      ->capture_default_str();
  analyze->add_option("--search-seconds", search_seconds, "wall-clock limit per group search")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : fibrcheck::kExitError;
  }

  fibrcheck::RunConfig config;
  try {
    config.input = input;
    for (const auto& g : split_list(groups)) config.groups.push_back(fibrcheck::TargetGroup::parse(g));
    for (const auto& p : split_list(primes)) config.primes.push_back(std::stoll(p));
    config.mode = fibrcheck::parse_mode(mode);
  } catch (const std::exception& e) {
    std::cerr << "fibrcheck: " << e.what() << '\n';
    return fibrcheck::kExitError;
  }
  config.max_homs = max_homs;
  config.workers = workers;
  if (!cache.empty()) config.cache = cache;
  if (!out.empty()) config.out = out;
  config.regular_max_order = regular_max;
  config.search_time = std::chrono::seconds(search_seconds);

  return fibrcheck::analyze_with_exit_code(config);
}
