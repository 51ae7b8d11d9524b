#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "idealtop/rational.hpp"

namespace idealtop {

// Sparse families with exact counting: squares {k^2+offset}, geometric
// positions {c^k+offset}, factorial positions {k!+offset} (as a set, so 0!
// and 1! contribute one point).
enum class SparseKind { Squares, Geometric, Factorials };

struct SparseLeaf {
  SparseKind kind = SparseKind::Squares;
  std::uint64_t base = 2;  // geometric only, >= 2
  std::uint64_t offset = 0;

  bool same_support(const SparseLeaf& o) const;
  bool contains(std::uint64_t n) const;
  // Support points <= limit, ascending.
  std::vector<std::uint64_t> points_upto(std::uint64_t limit) const;
};

enum class ComboOp { Union, Inter, Diff };

enum class Cardinality { Empty, Finite, Infinite, Unknown };

struct CardinalityReport {
  Cardinality card = Cardinality::Unknown;
  // When card is Empty/Finite, the sorted member list as far as it could be
  // enumerated; members_exact is false if points beyond the 64-bit universe
  // could not be ruled out.
  std::vector<std::uint64_t> members;
  bool members_exact = false;
  std::string note;
};

struct DensityBounds {
  Rational lower = 0;
  Rational upper = 0;
  bool exact = true;
};

// Finitely describable subset of N_0. Immutable value type (copies share
// structure); all queries are exact.
class SetDescriptor {
 public:
  struct Finite {
    std::vector<std::uint64_t> elems;  // strictly sorted
  };
  // Membership by preamble bits, then the period word repeated forever.
  // Canonical form: the period is minimal and the preamble carries no suffix
  // that the rotated period already explains.
  struct Periodic {
    std::vector<bool> preamble;
    std::vector<bool> period;  // nonempty
  };
  struct Combo {
    ComboOp op = ComboOp::Union;
    std::vector<SetDescriptor> operands;  // exactly two
    const SetDescriptor& lhs() const { return operands[0]; }
    const SetDescriptor& rhs() const { return operands[1]; }
  };

  SetDescriptor();  // empty set

  static SetDescriptor finite(std::vector<std::uint64_t> elems);
  static SetDescriptor periodic(std::vector<bool> preamble, std::vector<bool> period);
  static SetDescriptor sparse(SparseLeaf leaf);
  static SetDescriptor squares() { return sparse({SparseKind::Squares, 2, 0}); }
  static SetDescriptor geometric(std::uint64_t base) {
    return sparse({SparseKind::Geometric, base, 0});
  }
  static SetDescriptor factorials() { return sparse({SparseKind::Factorials, 2, 0}); }
  static SetDescriptor combo(ComboOp op, SetDescriptor lhs, SetDescriptor rhs);
  static SetDescriptor empty() { return finite({}); }
  static SetDescriptor all() { return periodic({}, {true}); }
  static SetDescriptor evens() { return periodic({}, {true, false}); }
  // The interval [0, n] as a descriptor.
  static SetDescriptor initial_segment(std::uint64_t n);

  bool contains(std::uint64_t n) const;
  // |A intersect [0, n]|, exact.
  std::uint64_t count(std::uint64_t n) const;
  DensityBounds density() const;
  CardinalityReport cardinality() const;

  // A \ [0, n].
  SetDescriptor tail_from(std::uint64_t n) const;

  // Pointwise subset test, exact where cardinality analysis of the difference
  // is exact; Unknown otherwise.
  enum class Subset { Yes, No, Unknown };
  Subset subset_of(const SetDescriptor& other) const;

  std::size_t leaf_count() const;
  bool is_finite_class() const;
  bool is_periodic_class() const;
  bool is_sparse_class() const;
  bool is_combo_class() const;
  const Finite& as_finite() const;
  const Periodic& as_periodic() const;
  const SparseLeaf& as_sparse() const;
  const Combo& as_combo() const;

  // Grammar: finite:{3,5,8} | period:<preamble>/<word> | squares | geom:<c>
  //        | factpos | union(d1,d2) | inter(d1,d2) | diff(d1,d2)
  std::string str() const;
  static SetDescriptor parse(const std::string& text);

  bool structurally_equal(const SetDescriptor& o) const;

 private:
  struct Node;
  struct Compiled;
  explicit SetDescriptor(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
  const Compiled& compiled() const;
};

}  // namespace idealtop
