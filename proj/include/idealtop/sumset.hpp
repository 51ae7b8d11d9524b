#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "idealtop/descriptor.hpp"
#include "idealtop/group.hpp"
#include "idealtop/sequence.hpp"

namespace idealtop {

// Index set for sumset terms: the tail {n >= m} or the complement of a
// descriptor.
struct IndexSet {
  bool is_tail = true;
  std::uint64_t tail_m = 0;
  SetDescriptor excluded;  // complement-of-descriptor form

  static IndexSet tail(std::uint64_t m) { return {true, m, SetDescriptor::empty()}; }
  static IndexSet off_descriptor(SetDescriptor d) { return {false, 0, std::move(d)}; }
  bool admits(std::uint64_t n) const {
    return is_tail ? n >= tail_m : !excluded.contains(n);
  }
  std::string str() const;
};

// One signed term of a decomposition: sign * u_index.
struct WitnessTerm {
  std::uint64_t index = 0;
  int sign = 1;  // +1 or -1
};

struct SumsetEntry {
  BigInt value;
  std::vector<WitnessTerm> terms;  // at most k signed terms, indices in the index set
};

struct SumsetParams {
  std::uint64_t horizon = 64;       // indices considered: n <= horizon
  BigInt window = 1000;             // keep |value| <= window
  std::uint64_t budget = 10'000'000;
};

struct SumsetResult {
  std::vector<SumsetEntry> entries;  // sorted by value; 0 always present
  std::uint32_t k = 0;
  IndexSet index_set;
  std::uint64_t horizon = 0;
  BigInt window;
  // True only when a certified tail divisor shows indices beyond the horizon
  // cannot contribute new window elements.
  bool complete_in_window = false;

  bool contains(const BigInt& v) const;
  const SumsetEntry* find(const BigInt& v) const;
};

// {0} union {+-u_n : n <= H, n admitted}; for the tail form this is the
// truncation of the symmetric tail set, for the descriptor form of u_I.
std::vector<BigInt> truncated_terms(const SequenceSpec& u, const IndexSet& idx,
                                    std::uint64_t horizon);

// All values of signed sums of at most k admitted terms, within the window.
SumsetResult sumset(const SequenceSpec& u, std::uint32_t k, const IndexSet& idx,
                    const SumsetParams& params);

// Stage-N truncation of the basic neighborhood u_{I_1} + ... + u_{I_N}.
// Chains must be ascending pointwise up to the horizon.
std::vector<BigInt> nbhd_stage(const SequenceSpec& u, const std::vector<SetDescriptor>& chain,
                               const SumsetParams& params);

// Minimal m with g representable as a signed sum of at most m admitted terms
// (indices <= horizon); nullopt when no representation exists within the
// bounds. g = 0 answers 0.
std::optional<std::uint32_t> cover_index(const BigInt& g, const SequenceSpec& u,
                                         const IndexSet& idx, std::uint32_t max_m,
                                         const SumsetParams& params);

}  // namespace idealtop
