#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ppn/factorize.hpp"

namespace ppn {

struct ReproductionCheck {
  std::string id;        // "group.name"
  std::string claim;     // what is being checked
  std::string inputs;
  std::string expected;
  std::string source;    // where the expected value comes from
  std::string computed;
  bool pass = false;

  friend bool operator==(const ReproductionCheck&, const ReproductionCheck&) = default;
};

struct ReproductionReport {
  std::vector<ReproductionCheck> checks;

  std::size_t passed() const;
  std::size_t failed() const;
  bool ok() const { return failed() == 0; }
  std::string to_text() const;

  friend bool operator==(const ReproductionReport&, const ReproductionReport&) = default;
};

struct ReproductionOptions {
  /// Check id or group prefix ("mod288" selects "mod288.N9" and "mod288.N10").
  std::vector<std::string> only;
  /// Test mode: perturb the expected value of this check before comparing.
  std::optional<std::string> corrupt;
  FactorBudget budget;
};

/// Group names in execution order.
std::vector<std::string> reproduction_groups();

ReproductionReport run_reproduction(const ReproductionOptions& options = {});

}  // namespace ppn
