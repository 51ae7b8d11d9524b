#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "idealtop/circle.hpp"
#include "idealtop/rational.hpp"

namespace idealtop {

// Shape of a finite abelian product Z/n1 x ... x Z/nr, all n_i >= 2.
struct FiniteAbShape {
  std::vector<std::uint64_t> orders;

  std::uint64_t size() const;
  bool operator==(const FiniteAbShape&) const = default;
  std::string str() const;                       // "n1,n2,..."
  static FiniteAbShape parse(const std::string&);
};

struct FiniteAbElem {
  FiniteAbShape shape;
  std::vector<std::uint64_t> coords;  // 0 <= coords[i] < orders[i]

  bool operator==(const FiniteAbElem&) const = default;
};

// Element of Z/n0 x (Z/2)^(N0): a head residue plus a finite set of indices
// where the Z/2 tail is 1. The support list is sorted and duplicate-free.
struct SparseSumElem {
  std::uint64_t head_mod = 4;
  std::uint64_t head = 0;
  std::vector<std::uint64_t> tail;

  bool operator==(const SparseSumElem&) const = default;
};

// Closed tagged union of the supported abelian groups. All arithmetic is
// exact; elements are immutable values.
class GroupElement {
 public:
  using IntVector = std::vector<BigInt>;

  GroupElement() : v_(BigInt(0)) {}
  explicit GroupElement(BigInt x) : v_(std::move(x)) {}
  explicit GroupElement(IntVector x) : v_(std::move(x)) {}
  explicit GroupElement(FiniteAbElem x);
  explicit GroupElement(SparseSumElem x);

  bool is_integer() const { return std::holds_alternative<BigInt>(v_); }
  bool is_vector() const { return std::holds_alternative<IntVector>(v_); }
  bool is_finite_ab() const { return std::holds_alternative<FiniteAbElem>(v_); }
  bool is_sparse_sum() const { return std::holds_alternative<SparseSumElem>(v_); }

  const BigInt& as_integer() const { return std::get<BigInt>(v_); }
  const IntVector& as_vector() const { return std::get<IntVector>(v_); }
  const FiniteAbElem& as_finite_ab() const { return std::get<FiniteAbElem>(v_); }
  const SparseSumElem& as_sparse_sum() const { return std::get<SparseSumElem>(v_); }

  GroupElement operator+(const GroupElement& o) const;
  GroupElement operator-() const;
  GroupElement operator-(const GroupElement& o) const { return *this + (-o); }
  GroupElement scaled(const BigInt& k) const;

  bool is_zero() const;
  GroupElement zero_like() const;

  bool operator==(const GroupElement& o) const { return v_ == o.v_; }
  // Canonical total order; used for deterministic set enumeration.
  bool operator<(const GroupElement& o) const;

  // Content-based fingerprint, stable within a process.
  std::size_t fingerprint() const;

  // Largest coordinate magnitude; used for window pruning. Finite groups and
  // sparse sums have no meaningful magnitude and report 0.
  BigInt magnitude() const;
  bool bounded_by(const BigInt& window) const;

  std::string str() const;  // integers "v"; vectors "(a,b)"; finite "c1,c2@n1,n2"
  static GroupElement parse_finite_ab(const std::string& text);  // "c1,c2@n1,n2"

 private:
  std::variant<BigInt, IntVector, FiniteAbElem, SparseSumElem> v_;
};

// The concrete pairing chi_a(b) = sum a_i b_i / n_i mod 1 on a finite abelian
// shape; realizes the duality of finite groups at exact scale.
CirclePoint pair_eval(const FiniteAbElem& a, const FiniteAbElem& b);

// All elements of a finite shape, in mixed-radix order (last coordinate
// fastest). Throws GroupTooLarge beyond the bound.
std::vector<FiniteAbElem> enumerate_elements(const FiniteAbShape& shape,
                                             std::uint64_t bound = 4096);

}  // namespace idealtop
