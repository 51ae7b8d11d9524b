#include <doctest.h>

#include "idealtop/convergence.hpp"
#include "idealtop/errors.hpp"
#include "support/gen.hpp"

using namespace idealtop;

namespace {

// Direct oracle: does u_n * x leave T_k at index n?
bool violates(const SequenceSpec& u, const CirclePoint& x, std::uint32_t k, std::uint64_t n) {
  return !CirclePoint::from_rational(Rational(u.eval(n)) * x.value()).in_Tk(k);
}

}  // namespace

TEST_CASE("exception sets from residue cycles") {
  auto u = SequenceSpec::parse("pow:2");
  CirclePoint third = CirclePoint::parse("1/3");
  SetDescriptor e1 = exception_set(u, third, 1);
  CHECK(e1.structurally_equal(SetDescriptor::all()));
  for (std::uint64_t n = 0; n <= 100; ++n) CHECK(e1.contains(n) == violates(u, third, 1, n));

  auto f = SequenceSpec::parse("fact");
  SetDescriptor ef = exception_set(f, third, 1);
  CHECK(ef.structurally_equal(SetDescriptor::finite({0, 1, 2})));

  SetDescriptor e8 = exception_set(u, CirclePoint::parse("1/8"), 1);
  CHECK(e8.structurally_equal(SetDescriptor::finite({2})));
}

TEST_CASE("structural exception sets for sparse plants") {
  auto u = SequenceSpec::parse("plant(fact,affine(fact,1,1),squares)");
  CirclePoint third = CirclePoint::parse("1/3");
  SetDescriptor e1 = exception_set(u, third, 1);
  for (std::uint64_t n = 0; n <= 300; ++n) CHECK(e1.contains(n) == violates(u, third, 1, n));
  // eventually the exception set is exactly the squares
  SetDescriptor sym1 = SetDescriptor::combo(ComboOp::Diff, e1, SetDescriptor::squares());
  SetDescriptor sym2 = SetDescriptor::combo(ComboOp::Diff, SetDescriptor::squares(), e1);
  CHECK(sym1.cardinality().card != Cardinality::Infinite);
  CHECK(sym2.cardinality().card != Cardinality::Infinite);
}

TEST_CASE("statistical divergence of doubling at one third") {
  Verdict v = iconverges(SequenceSpec::parse("pow:2"), CirclePoint::parse("1/3"),
                         IdealSpec::density());
  CHECK(v.outcome == VerdictOutcome::Out);
  CHECK(v.witness_k == 1);
  CHECK(v.witness_set->structurally_equal(SetDescriptor::all()));
  CHECK(v.witness_upper_density == 1);
  CHECK(verify_verdict(v, SequenceSpec::parse("pow:2"), CirclePoint::parse("1/3"),
                       IdealSpec::density()));
}

TEST_CASE("factorials converge classically at every rational with small denominator") {
  auto f = SequenceSpec::parse("fact");
  for (std::uint64_t q = 2; q <= 50; ++q) {
    std::uint64_t p = 1;
    while (gcd_u64(p, q) != 1) ++p;
    Verdict v = iconverges(f, CirclePoint::from_fraction(BigInt(p), BigInt(q)),
                           IdealSpec::fin());
    CHECK(v.outcome == VerdictOutcome::In);
  }
}

TEST_CASE("planted factorial pair: statistically but not classically convergent") {
  auto u = SequenceSpec::parse("plant(fact,affine(fact,1,1),squares)");
  CirclePoint third = CirclePoint::parse("1/3");
  Verdict density = iconverges(u, third, IdealSpec::density());
  CHECK(density.outcome == VerdictOutcome::In);
  Verdict fin = iconverges(u, third, IdealSpec::fin());
  CHECK(fin.outcome == VerdictOutcome::Out);
  CHECK(fin.witness_cardinality == Cardinality::Infinite);
  CHECK(fin.witness_upper_density == 0);
  CHECK(verify_verdict(density, u, third, IdealSpec::density()));
  CHECK(verify_verdict(fin, u, third, IdealSpec::fin()));
}

TEST_CASE("cofinite extraction") {
  auto u = SequenceSpec::parse("plant(fact,affine(fact,1,1),squares)");
  CirclePoint third = CirclePoint::parse("1/3");
  SetDescriptor j = extract_convergent_cofinite(u, third);
  CHECK(j.density().upper == 0);
  // J equals the squares up to a finite set
  for (auto* d : {&j}) {
    SetDescriptor a = SetDescriptor::combo(ComboOp::Diff, *d, SetDescriptor::squares());
    SetDescriptor b = SetDescriptor::combo(ComboOp::Diff, SetDescriptor::squares(), *d);
    CHECK(a.cardinality().card != Cardinality::Infinite);
    CHECK(b.cardinality().card != Cardinality::Infinite);
  }
  // every exception set minus J is finite
  for (std::uint32_t k = 1; k <= 3; ++k) {
    SetDescriptor res = SetDescriptor::combo(ComboOp::Diff, exception_set(u, third, k), j);
    auto card = res.cardinality().card;
    CHECK((card == Cardinality::Finite || card == Cardinality::Empty));
  }

  // classically convergent pairs extract the empty set
  SetDescriptor none = extract_convergent_cofinite(SequenceSpec::parse("fact"),
                                                   CirclePoint::parse("1/5"));
  CHECK(none.cardinality().card == Cardinality::Empty);

  CHECK_THROWS_AS(extract_convergent_cofinite(SequenceSpec::parse("pow:2"),
                                              CirclePoint::parse("1/3")),
                  NoExtraction);
}

TEST_CASE("convergence is monotone in the ideal") {
  testgen::Rng rng(61);
  int decided = 0;
  for (int i = 0; i < 100; ++i) {
    SequenceSpec u = testgen::random_sequence(rng);
    CirclePoint x = testgen::random_point(rng, 30);
    Verdict fin = iconverges(u, x, IdealSpec::fin());
    if (fin.outcome != VerdictOutcome::In) continue;
    ++decided;
    CHECK(iconverges(u, x, IdealSpec::density()).outcome == VerdictOutcome::In);
    // powerset of a density-zero set sits below the density ideal
    Verdict ps = iconverges(u, x, IdealSpec::powerset(SetDescriptor::squares()));
    if (ps.outcome == VerdictOutcome::In)
      CHECK(iconverges(u, x, IdealSpec::density()).outcome == VerdictOutcome::In);
  }
  CHECK(decided > 5);
}

TEST_CASE("planting along an ideal member preserves convergence") {
  testgen::Rng rng(62);
  int checked = 0;
  for (int i = 0; i < 100; ++i) {
    // the off-branch converges to 0 classically at x; the planted branch is
    // arbitrary but sits on a density-zero set
    CirclePoint x = testgen::random_point(rng, 20);
    SequenceSpec noise = testgen::random_sequence(rng);
    SetDescriptor where =
        testgen::pick(rng, 0, 1) ? SetDescriptor::squares() : SetDescriptor::geometric(3);
    SequenceSpec u = SequenceSpec::plant(SequenceSpec::fact(), noise, where);
    Verdict v = iconverges(u, x, IdealSpec::density());
    if (v.outcome == VerdictOutcome::Undecided) continue;
    ++checked;
    CHECK(v.outcome == VerdictOutcome::In);
  }
  CHECK(checked > 60);
}

TEST_CASE("certificates survive independent re-evaluation") {
  testgen::Rng rng(63);
  int verified = 0;
  for (int i = 0; i < 60; ++i) {
    SequenceSpec u = testgen::random_sequence(rng);
    CirclePoint x = testgen::random_point(rng, 25);
    for (auto ideal : {IdealSpec::fin(), IdealSpec::density()}) {
      Verdict v = iconverges(u, x, ideal);
      if (v.outcome == VerdictOutcome::Undecided) continue;
      CHECK(verify_verdict(v, u, x, ideal, 200));
      ++verified;
    }
  }
  CHECK(verified > 60);
}

TEST_CASE("order sensitivity of the sparse-sum plant") {
  // the doubled sequence is nonzero exactly on the planted set; swapping the
  // index set with its complement therefore swaps the exception set exactly
  PlantedSparseSumSequence original;
  original.off_branch = {4, 0, true};
  original.on_branch = {4, 1, true};
  original.where = SetDescriptor::evens();
  CHECK(original.scaled_nonzero_set(2).structurally_equal(SetDescriptor::evens()));

  PlantedSparseSumSequence swapped = original;
  swapped.where = SetDescriptor::combo(ComboOp::Diff, SetDescriptor::all(),
                                       SetDescriptor::evens());
  SetDescriptor swapped_nonzero = swapped.scaled_nonzero_set(2);
  SetDescriptor odds = SetDescriptor::periodic({}, {false, true});
  for (std::uint64_t n = 0; n < 64; ++n) CHECK(swapped_nonzero.contains(n) == odds.contains(n));
  // the swapped exception set has density 1/2, so it escapes the ideal
  // generated by the original evens-complement
  CHECK(swapped_nonzero.density().upper == Rational(1, 2));
  CHECK(ideal_member(IdealSpec::powerset(SetDescriptor::evens()), swapped_nonzero).outcome ==
        VerdictOutcome::Out);
}

TEST_CASE("numeric points stay undecided") {
  Verdict v = iconverges_numeric(SequenceSpec::parse("pow:2"), ApproxCirclePoint(1.0 / 3, 1e-12),
                                 IdealSpec::density());
  CHECK(v.outcome == VerdictOutcome::Undecided);
  CHECK(v.cert == Verdict::CertKind::HorizonLimit);
}

TEST_CASE("undecidable inputs come back as horizon limits") {
  // interleaving a sparse plant is not residue-cyclic and has no structural rule
  auto u = SequenceSpec::parse("interleave(plant(fact,pow:2,squares),fact)");
  Verdict v = iconverges(u, CirclePoint::parse("1/3"), IdealSpec::density());
  CHECK(v.outcome == VerdictOutcome::Undecided);
  CHECK(v.cert == Verdict::CertKind::HorizonLimit);
}
