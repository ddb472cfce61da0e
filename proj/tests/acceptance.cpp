// Acceptance suite: runs every verification criterion at its pinned
// tolerance and prints one PASS/FAIL line per criterion. Exits nonzero if
// any criterion fails.

#include <cstdio>
#include <cstdlib>
#include <string>

#include "nclam/verify.hpp"

int main() {
  nclam::VerifyOptions options;
  options.seed = 20240517;
  options.workers = 2;
  if (const char* cli = std::getenv("NCLAM_CLI")) options.cli_path = cli;
  if (const char* workers = std::getenv("NCLAM_WORKERS")) options.workers = std::max(1, std::atoi(workers));

  const auto results = nclam::run_suite("all", options);
  bool all_pass = true;
  int idx = 0;
  for (const auto& r : results) {
    ++idx;
    std::printf("%s %2d %-24s %8.2fs  %s\n", r.pass ? "PASS" : "FAIL", idx, r.name.c_str(), r.seconds,
                r.detail.c_str());
    std::fflush(stdout);
    all_pass = all_pass && r.pass;
  }
  std::printf("%s: %d criteria\n", all_pass ? "ALL PASS" : "FAILURES PRESENT", idx);
  return all_pass ? 0 : 1;
}
