#pragma once

#include <cstdint>
#include <ostream>
#include <string>

#include "formsieve/report.hpp"

namespace formsieve {

/// Every knob of a CLI run. Output paths and the worker count do not change
/// results, so they are left out of the echoed config.
struct ExperimentConfig {
  std::string command;
  std::string form = "1,0,0,2";
  bool assume_irreducible = false;
  std::int64_t n = 100;
  double theta = 1.0;
  std::int64_t d = 0;  // explicit modulus / D; 0 means unset
  std::int64_t d_max = 20;
  std::int64_t m1 = 1;
  std::string alpha = "primes";
  double delta = 0.1;
  double delta1 = 0.4;
  double eta = 0.05;
  std::int64_t vmax = -1;  // -1: floor(D N^{-1+delta})
  std::int64_t root_index = 0;
  bool split_b11 = false;
  double tol = 1e-12;
  std::uint64_t work_limit = 0;
  unsigned jobs = 1;
  std::uint64_t seed = 1;
  std::uint64_t rho_budget = 50'000'000;
  int r = 0;  // 0: r_threshold(k)
  double alpha_exp = 0.1;
  double beta_exp = 0.5;
  double zmax = 1e6;
  std::string out;
  std::string csv;

  [[nodiscard]] Json to_json() const;
};

// Parses argv and runs one subcommand. Exit status: 0 success, 2 invalid
// input or failed hypotheses, 3 work-limit refusal, 1 anything else.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace formsieve
