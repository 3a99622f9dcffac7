#pragma once

// One-shot reproduction of every machine-checkable claim about the
// registry algebras, the identity family and the small-order census.

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "aisemi/algebra.hpp"

namespace aisemi {

enum class ClaimStatus { Pass, Fail, Skipped, OutOfScope };

std::string_view status_name(ClaimStatus s);

struct ClaimResult {
  int id = 0;  // 0 for declared out-of-scope items
  std::string name;
  std::string description;
  ClaimStatus status = ClaimStatus::Skipped;
  std::string expected;
  std::string observed;
  double seconds = 0;
};

struct RunReport {
  std::string command;
  std::vector<ClaimResult> claims;

  bool ok() const;
};

struct VerifyOptions {
  bool full = false;  // include the order-4 census
  unsigned threads = 1;
  std::uint64_t seed = 20240101;
  std::size_t oracle_samples = 10000;
  std::size_t delta_samples = 2000;
  std::size_t graph_samples = 1000;
  std::size_t derivation_samples = 1000;
  // Source of the named algebras; defaults to registry().
  std::function<FiniteAiSemiring(std::string_view)> lookup;
};

RunReport paper_verify(const VerifyOptions& opts = {});

std::string render_text(const RunReport& r);

}  // namespace aisemi
