// Named numerical verification suites shared by the CLI and the test binaries.

#pragma once

#include "keyrep/opcore.hpp"
#include "keyrep/report.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace keyrep {

struct Check {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  std::string relation;  // how value is compared with threshold: "<=" or ">="
  bool pass = false;
};

Check check_at_most(std::string name, double value, double threshold);
Check check_at_least(std::string name, double value, double threshold);

struct VerifyOptions {
  Index max_d = 16;      // largest shield dimension for pbit / ppt-mixture
  Index shield_d = 2;    // erasure suite
  std::uint64_t seed = 7;
  std::size_t dense_cap = kDefaultDenseCap;
};

const std::vector<std::string>& suite_names();

/// Throws DomainError for an unknown suite or unusable options.
std::vector<Check> run_suite(const std::string& suite, const VerifyOptions& options);

bool all_pass(const std::vector<Check>& checks);
Table checks_table(const std::string& suite, const std::vector<Check>& checks);

}  // namespace keyrep
