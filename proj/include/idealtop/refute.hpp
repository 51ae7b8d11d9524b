#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "idealtop/sequence.hpp"
#include "idealtop/sumset.hpp"

namespace idealtop {

// Witnessed failure of the tail-sumset separation criterion: some g != 0 and
// fold count k stay inside k (.) u_m for every tail m up to the horizon M.
// Existence of such a certificate refutes the criterion up to (k, M); absence
// within bounds is only a horizon-relative non-result.
struct RefutationCertificate {
  BigInt g;
  std::uint32_t k = 1;
  std::uint64_t M = 0;
  struct WitnessAtTail {
    std::uint64_t m = 0;
    std::vector<WitnessTerm> terms;  // <= k signed terms, all indices >= m
  };
  std::vector<WitnessAtTail> witnesses;  // one per m in 0..M

  std::string to_json() const;  // {schema_version, g, k, M, witnesses:[...]}
  static RefutationCertificate from_json(const std::string& text);
};

struct RefuteParams {
  std::uint32_t kmax = 2;
  std::uint64_t M = 30;
  SumsetParams sumset;  // horizon, window, budget
};

// Searches for a certificate: candidates g enumerated by increasing
// magnitude, positive before negative, then by fold count; the first hit is
// returned. Deterministic.
std::optional<RefutationCertificate> t_refute(const SequenceSpec& u, const RefuteParams& params);

// Independent checker: re-evaluates every witness sum directly from the
// sequence, never touching the search path.
bool verify_refutation(const RefutationCertificate& cert, const SequenceSpec& u);

}  // namespace idealtop
