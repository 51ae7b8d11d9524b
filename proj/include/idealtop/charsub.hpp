#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "idealtop/convergence.hpp"
#include "idealtop/group.hpp"
#include "idealtop/ideal.hpp"
#include "idealtop/sequence.hpp"

namespace idealtop {

// The members found for one (u, ideal) query, with the provenance that
// produced them. Closed under negation and contains the zero element.
struct CharacterFamily {
  std::string group;  // "T" or a finite shape "n1,n2,..."
  std::vector<CirclePoint> circle_members;
  std::vector<FiniteAbElem> finite_members;
  std::string seq, ideal;
  std::uint64_t bound = 0;  // denominator bound or group size
};

// Membership of the circle point x: does u_n * x converge to 0 along the
// ideal? Exact for rational x with a computable exception structure.
Verdict member_circle(const SequenceSpec& u, const CirclePoint& x, const IdealSpec& ideal,
                      const IconvParams& params = {});

// Membership of a finite-group element under the pairing values u_n(x).
Verdict member_finite(const FiniteAbSequence& u, const FiniteAbElem& x, const IdealSpec& ideal,
                      const IconvParams& params = {});

struct FiniteScanReport {
  CharacterFamily family;
  struct Row {
    FiniteAbElem element;
    VerdictOutcome outcome;
    std::string certificate_kind;
    std::uint32_t witness_k;
  };
  std::vector<Row> rows;
};

// Exhaustive membership scan over a finite abelian group. Verifies the
// subgroup axioms on the member set before returning.
FiniteScanReport subgroup_scan_finite(const FiniteAbSequence& u, const IdealSpec& ideal,
                                      std::uint64_t size_bound = 4096,
                                      const IconvParams& params = {});

struct TbEvidenceReport {
  CharacterFamily members;
  bool infinite_subgroup_evidence = false;
  std::uint64_t largest_order = 1;
  // per-point rows for the scan report: (point, verdict, certificate kind,
  // witness scale)
  struct Row {
    CirclePoint point;
    VerdictOutcome outcome;
    std::string certificate_kind;
    std::uint32_t witness_k;
  };
  std::vector<Row> rows;
};

// Scans all reduced rationals with denominator <= qmax in ascending order.
// Evidence of an infinite member subgroup: an order in the top half of the
// scan range keeps the data inconsistent with any fixed finite subgroup the
// scan could already have resolved. Evidence, never proof.
TbEvidenceReport tb_evidence(const SequenceSpec& u, const IdealSpec& ideal, std::uint64_t qmax,
                             const IconvParams& params = {});

// One closed building block of the F-sigma-delta decomposition: the finite
// violation set on (j, nu] weighed by the submeasure against 1/m.
struct FsdCell {
  std::uint32_t k = 1;
  std::uint32_t m = 1;
  std::uint64_t j = 0;
  std::uint64_t nu = 1;  // nu >= j+1
};

bool fsd_member(const SequenceSpec& u, const CirclePoint& x, const Submeasure& phi,
                const FsdCell& cell);

struct FsdDepth {
  std::uint32_t kmax = 3;
  std::uint32_t mmax = 3;
  std::uint64_t nmax = 10;
  std::uint64_t jmax = 200;
};

struct FsdReport {
  VerdictOutcome direct = VerdictOutcome::Undecided;
  bool truncation_passes = false;  // all (k,m) admit a working N
  bool consistent = false;
  std::optional<std::pair<std::uint32_t, std::uint32_t>> failing_cell;  // (k, m)
};

// Checks the truncated cell decomposition against the direct verdict for
// Exh(phi): an In verdict must admit, for every k <= kmax and m <= mmax, a
// stage N <= nmax from which all cells up to jmax hold; an Out verdict must
// exhibit a (k, m) where every stage fails.
FsdReport fsd_consistency(const SequenceSpec& u, const CirclePoint& x, const Submeasure& phi,
                          const FsdDepth& depth = {}, const IconvParams& params = {});

}  // namespace idealtop
