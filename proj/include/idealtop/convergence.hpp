#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "idealtop/circle.hpp"
#include "idealtop/descriptor.hpp"
#include "idealtop/ideal.hpp"
#include "idealtop/residue.hpp"
#include "idealtop/sequence.hpp"

namespace idealtop {

// Per-scale exception set E_k = {n : u_n(x) outside T_k} with its ideal
// verdict.
struct ExceptionReport {
  std::uint32_t k = 1;
  SetDescriptor set;
  IdealVerdict verdict;
};

// Three-valued convergence verdict with a machine-checkable certificate.
struct Verdict {
  VerdictOutcome outcome = VerdictOutcome::Undecided;

  enum class CertKind { ExceptionSets, OutWitness, HorizonLimit };
  CertKind cert = CertKind::HorizonLimit;

  // ExceptionSets (In): every E_k for k up to the derived sufficient scale.
  // OutWitness (Out): the least k whose E_k escapes the ideal.
  std::vector<ExceptionReport> exception_sets;
  std::uint32_t witness_k = 0;
  std::optional<SetDescriptor> witness_set;
  Rational witness_upper_density = 0;
  Cardinality witness_cardinality = Cardinality::Unknown;

  // The scale beyond which all E_k coincide (derived from the finitely many
  // distinct circle values of the residue cycle).
  std::uint32_t sufficient_k = 0;
  std::string note;
};

struct IconvParams {
  std::uint32_t kmax = 8;           // reporting cap; sufficiency is derived
  std::uint64_t horizon = 1u << 20; // cycle-detection budget
  CacheConfig cache;
};

// The circle values of u_n * x on the residue cycle, as exact circle points
// with the same preperiod/period structure.
struct CircleValueCycle {
  std::vector<CirclePoint> preperiod;
  std::vector<CirclePoint> period;

  const CirclePoint& at(std::uint64_t n) const {
    if (n < preperiod.size()) return preperiod[n];
    return period[(n - preperiod.size()) % period.size()];
  }
  std::uint64_t stabilized_length() const { return preperiod.size() + period.size(); }

  // Least k that separates every nonzero value from T_k, i.e. E_k = E_inf
  // from this scale on. 1 when every value is zero.
  std::uint32_t sufficient_k() const;
  // Exception descriptor at scale k; eventually-zero cycles come back as
  // Finite descriptors.
  SetDescriptor exception_set(std::uint32_t k) const;
  SetDescriptor nonzero_set() const;  // E_inf
};

CircleValueCycle circle_values(const SequenceSpec& u, const CirclePoint& x,
                               const IconvParams& params = {});

// The whole family of exception sets of a sequence of circle values: an exact
// descriptor per scale, all scales beyond sufficient_k equal to the nonzero
// set. Built from a cycle, or composed structurally for plants over sparse
// descriptors.
struct ExceptionFamily {
  std::uint32_t sufficient_k = 1;
  std::function<SetDescriptor(std::uint32_t)> at;
  SetDescriptor nonzero;

  static ExceptionFamily from_cycle(const CircleValueCycle& cyc);
  // t's family on the descriptor, s's family off it.
  static ExceptionFamily plant(const SetDescriptor& where, ExceptionFamily s,
                               ExceptionFamily t);
};

// Verdict for any exactly known exception family (used both for u_n * x on
// the circle and for character pairings on finite groups).
Verdict verdict_from_family(const ExceptionFamily& fam, const IdealSpec& ideal,
                            std::uint32_t kmax = 8);
Verdict verdict_from_cycle(const CircleValueCycle& cyc, const IdealSpec& ideal,
                           std::uint32_t kmax = 8);

// E_k for exact rational x. Plants over sparse descriptors are handled
// structurally, as combos of the branch exception sets with the plant set.
SetDescriptor exception_set(const SequenceSpec& u, const CirclePoint& x, std::uint32_t k,
                            const IconvParams& params = {});

// Does u_n * x converge to 0 along the ideal? Exact for rational x whenever
// the exception sets are computable and the ideal decides them.
Verdict iconverges(const SequenceSpec& u, const CirclePoint& x, const IdealSpec& ideal,
                   const IconvParams& params = {});

// Numeric path: prefix-sampled interval evaluation; always Undecided, with
// margin bookkeeping in the note.
Verdict iconverges_numeric(const SequenceSpec& u, const ApproxCirclePoint& x,
                           const IdealSpec& ideal, std::uint64_t samples = 256);

// For a statistically convergent pair (verdict In under the density ideal),
// a descriptor J of exact density zero whose removal leaves every exception
// set finite. Throws NoExtraction on Out and HorizonLimit on Undecided.
SetDescriptor extract_convergent_cofinite(const SequenceSpec& u, const CirclePoint& x,
                                          const IconvParams& params = {});

// Independent certificate check: re-evaluates u_n * x at sampled indices
// against the stored descriptors and re-runs the ideal decisions.
bool verify_verdict(const Verdict& v, const SequenceSpec& u, const CirclePoint& x,
                    const IdealSpec& ideal, std::uint64_t samples = 1000);

}  // namespace idealtop
