#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "idealtop/sequence.hpp"

namespace idealtop {

// Exact eventually-periodic structure of (u_n mod q): the preperiod entries
// followed by the minimal period, valid for all n.
struct ResidueCycle {
  std::uint64_t q = 2;
  std::vector<std::uint64_t> preperiod;
  std::vector<std::uint64_t> period;  // nonempty, minimal

  std::uint64_t at(std::uint64_t n) const {
    if (n < preperiod.size()) return preperiod[n];
    return period[(n - preperiod.size()) % period.size()];
  }
  std::uint64_t stabilized_length() const { return preperiod.size() + period.size(); }
};

struct CacheConfig {
  std::string dir;      // empty = disabled
  bool enabled = false;

  static CacheConfig disabled() { return {}; }
  static CacheConfig from_environment();  // IDEALTOP_CACHE_DIR
};

// Derives the cycle structurally: multiplicative state for pow, the eventual
// zero tail for fact, period dividing q for poly, and composition rules for
// affine/interleave and plants over eventually periodic descriptors. Sequences
// planted on sparse descriptors are not eventually periodic mod q; those and
// horizon-only lists throw CycleNotDetected.
ResidueCycle residue_analysis(const SequenceSpec& u, std::uint64_t q,
                              std::uint64_t horizon = 1u << 20,
                              const CacheConfig& cache = CacheConfig::disabled());

// Canonical trim: drop preperiod entries the rotated period explains, then
// minimize the period.
ResidueCycle canonical_cycle(std::uint64_t q, std::vector<std::uint64_t> pre,
                             std::vector<std::uint64_t> per);

}  // namespace idealtop
