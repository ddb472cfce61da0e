#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace nclam {

struct VerifyResult {
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct VerifyOptions {
  std::uint64_t seed = 20240517;
  int workers = 2;
  std::string cli_path;  // needed by the determinism suite
};

// Suite names accepted by `nclam verify`.
const std::vector<std::string>& verify_suites();

// Runs one named suite ("all" runs everything); throws DomainError for an
// unknown name.
std::vector<VerifyResult> run_suite(const std::string& suite, const VerifyOptions& options);

}  // namespace nclam
