#pragma once

// Random generators and brute-force oracles shared across the test suite.
// Every generator takes an explicit engine so failures reproduce from the
// seed printed by the test.

#include <cstdint>
#include <random>
#include <vector>

#include "idealtop/circle.hpp"
#include "idealtop/descriptor.hpp"
#include "idealtop/group.hpp"
#include "idealtop/sequence.hpp"

namespace testgen {

using idealtop::BigInt;
using idealtop::CirclePoint;
using idealtop::ComboOp;
using idealtop::FiniteAbShape;
using idealtop::SequenceSpec;
using idealtop::SetDescriptor;

using Rng = std::mt19937_64;

inline std::uint64_t pick(Rng& rng, std::uint64_t lo, std::uint64_t hi) {
  return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng);
}

inline SetDescriptor random_finite(Rng& rng, std::uint64_t universe = 64) {
  std::vector<std::uint64_t> elems;
  std::uint64_t n = pick(rng, 0, 6);
  for (std::uint64_t i = 0; i < n; ++i) elems.push_back(pick(rng, 0, universe));
  return SetDescriptor::finite(std::move(elems));
}

inline SetDescriptor random_periodic(Rng& rng) {
  std::vector<bool> pre, per;
  std::uint64_t pl = pick(rng, 0, 5), wl = pick(rng, 1, 6);
  for (std::uint64_t i = 0; i < pl; ++i) pre.push_back(pick(rng, 0, 1));
  for (std::uint64_t i = 0; i < wl; ++i) per.push_back(pick(rng, 0, 1));
  return SetDescriptor::periodic(std::move(pre), std::move(per));
}

inline SetDescriptor random_sparse(Rng& rng) {
  switch (pick(rng, 0, 2)) {
    case 0: return SetDescriptor::squares();
    case 1: return SetDescriptor::geometric(pick(rng, 2, 5));
    default: return SetDescriptor::factorials();
  }
}

inline SetDescriptor random_leaf(Rng& rng) {
  switch (pick(rng, 0, 2)) {
    case 0: return random_finite(rng);
    case 1: return random_periodic(rng);
    default: return random_sparse(rng);
  }
}

// Random descriptor spanning all classes; depth-bounded combos.
inline SetDescriptor random_descriptor(Rng& rng, int depth = 2) {
  if (depth == 0 || pick(rng, 0, 2) == 0) return random_leaf(rng);
  ComboOp op = static_cast<ComboOp>(pick(rng, 0, 2));
  return SetDescriptor::combo(op, random_descriptor(rng, depth - 1),
                              random_descriptor(rng, depth - 1));
}

inline CirclePoint random_point(Rng& rng, std::uint64_t qmax = 50) {
  std::uint64_t q = pick(rng, 2, qmax);
  std::uint64_t p = pick(rng, 0, q - 1);
  return CirclePoint::from_fraction(BigInt(p), BigInt(q));
}

inline SequenceSpec random_base_sequence(Rng& rng) {
  switch (pick(rng, 0, 2)) {
    case 0: return SequenceSpec::pow(BigInt(pick(rng, 2, 5)));
    case 1: return SequenceSpec::fact();
    default: {
      std::vector<BigInt> coeffs;
      std::uint64_t deg = pick(rng, 0, 2);
      for (std::uint64_t i = 0; i <= deg; ++i)
        coeffs.push_back(BigInt(static_cast<std::int64_t>(pick(rng, 0, 6)) - 3));
      if (coeffs[0] == 0) coeffs[0] = 1;
      return SequenceSpec::poly(std::move(coeffs));
    }
  }
}

inline SequenceSpec random_sequence(Rng& rng, int depth = 1) {
  if (depth == 0 || pick(rng, 0, 2) == 0) return random_base_sequence(rng);
  switch (pick(rng, 0, 2)) {
    case 0:
      return SequenceSpec::affine(random_sequence(rng, depth - 1),
                                  BigInt(pick(rng, 1, 4)),
                                  BigInt(static_cast<std::int64_t>(pick(rng, 0, 8)) - 4));
    case 1:
      return SequenceSpec::interleave(random_sequence(rng, depth - 1),
                                      random_sequence(rng, depth - 1));
    default:
      return SequenceSpec::plant(random_sequence(rng, depth - 1),
                                 random_sequence(rng, depth - 1),
                                 pick(rng, 0, 1) ? SetDescriptor::squares()
                                                 : random_periodic(rng));
  }
}

inline FiniteAbShape random_shape(Rng& rng, std::uint64_t max_size = 64) {
  FiniteAbShape shape;
  std::uint64_t size = 1;
  std::uint64_t ncoords = pick(rng, 1, 3);
  for (std::uint64_t i = 0; i < ncoords; ++i) {
    std::uint64_t order = pick(rng, 2, 8);
    if (size * order > max_size) break;
    size *= order;
    shape.orders.push_back(order);
  }
  if (shape.orders.empty()) shape.orders.push_back(2);
  return shape;
}

// Brute-force count |A cap [0, n]| by direct membership, the oracle against
// the closed-form counting path.
inline std::uint64_t brute_count(const SetDescriptor& d, std::uint64_t n) {
  std::uint64_t c = 0;
  for (std::uint64_t i = 0; i <= n; ++i)
    if (d.contains(i)) ++c;
  return c;
}

}  // namespace testgen
