#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "idealtop/descriptor.hpp"
#include "idealtop/group.hpp"
#include "idealtop/rational.hpp"

namespace idealtop {

// Finite description of an integer sequence u: N_0 -> Z, evaluable exactly at
// any index. Immutable value type; copies share structure.
//
// Grammar: "pow:"INT | "fact" | "poly:"INT(","INT)* | "list:"PATH
//        | "affine("seq","INT","INT")" | "interleave("seq","seq")"
//        | "plant("seq","seq","descriptor")"
class SequenceSpec {
 public:
  struct Pow { BigInt base; };
  struct Fact {};
  struct Poly { std::vector<BigInt> coeffs; };  // high degree first
  struct List {
    std::string path;
    std::vector<BigInt> values;
    bool constant_tail = false;  // set programmatically; never from the grammar
  };
  struct Affine { BigInt a, b; };        // a*child + b
  struct Interleave {};                  // s_k at 2k, t_k at 2k+1
  struct Plant { SetDescriptor where; }; // t_n on the descriptor, s_n elsewhere

  static SequenceSpec pow(BigInt base);
  static SequenceSpec fact();
  static SequenceSpec poly(std::vector<BigInt> coeffs);
  static SequenceSpec constant(BigInt c) { return poly({std::move(c)}); }
  static SequenceSpec list(std::string path, std::vector<BigInt> values,
                           bool constant_tail = false);
  static SequenceSpec affine(SequenceSpec s, BigInt a, BigInt b);
  static SequenceSpec interleave(SequenceSpec s, SequenceSpec t);
  static SequenceSpec plant(SequenceSpec s, SequenceSpec t, SetDescriptor where);

  // Exact value u_n. Throws HorizonLimit past the end of a list without a
  // declared tail rule.
  BigInt eval(std::uint64_t n) const;

  // Largest |u_n| over n in [0, h].
  BigInt max_abs_upto(std::uint64_t h) const;

  // A divisor D > 1 dividing every u_n with n > h, when the structure
  // certifies one; nullopt otherwise. Powers contribute base^(h+1), the
  // factorial sequence (h+1)!, scalings |a| times the child floor.
  std::optional<BigInt> tail_divisor(std::uint64_t h) const;

  std::string str() const;
  static SequenceSpec parse(const std::string& text);

  // Cache key: the printed form, except lists key on their contents.
  std::string cache_key() const;

  enum class Tag { Pow, Fact, Poly, List, Affine, Interleave, Plant };
  Tag tag() const;
  const SequenceSpec& child(std::size_t i) const;
  std::size_t child_count() const;
  const Pow& as_pow() const;
  const Poly& as_poly() const;
  const List& as_list() const;
  const Affine& as_affine() const;
  const Plant& as_plant() const;

 private:
  struct Node;
  explicit SequenceSpec(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// True when the spec is a plant over a descriptor with sparse leaves: the one
// composition residue analysis cannot fold into a cycle, handled structurally
// by the convergence layer instead.
bool is_sparse_plant(const SequenceSpec& u);

// Sequence valued in a finite abelian product, one integer spec per
// coordinate, reduced coordinatewise.
struct FiniteAbSequence {
  FiniteAbShape shape;
  std::vector<SequenceSpec> coords;

  FiniteAbElem eval(std::uint64_t n) const;
  std::string str() const;  // "s1;s2;...@n1,n2,..."
};

// The sparse-sum shaped sequences used by the order-sensitivity material:
// u_n = (head, e_n) where e_n is the n-th generator of the Z/2 tail (or no
// tail generator at all).
struct SparseSumSequence {
  std::uint64_t head_mod = 4;
  std::uint64_t head = 0;
  bool with_generator = true;

  SparseSumElem eval(std::uint64_t n) const;
};

// plant(s, t, where) over sparse-sum branches: t on the descriptor, s off it.
struct PlantedSparseSumSequence {
  SparseSumSequence off_branch;
  SparseSumSequence on_branch;
  SetDescriptor where;

  SparseSumElem eval(std::uint64_t n) const;
  // Exact descriptor of {n : lambda * u_n != 0}; branch values scale to a
  // constant nonzero/zero pattern, so the answer is a combo of `where`.
  SetDescriptor scaled_nonzero_set(const BigInt& lambda) const;
};

}  // namespace idealtop
