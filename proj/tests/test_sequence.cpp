#include <doctest.h>

#include <fstream>

#include "idealtop/errors.hpp"
#include "idealtop/sequence.hpp"
#include "support/gen.hpp"

using namespace idealtop;

TEST_CASE("basic evaluation") {
  auto p = SequenceSpec::parse("pow:2");
  CHECK(p.eval(0) == 1);
  CHECK(p.eval(10) == 1024);
  auto f = SequenceSpec::parse("fact");
  CHECK(f.eval(0) == 1);
  CHECK(f.eval(5) == 120);
  CHECK(f.eval(20) == BigInt("2432902008176640000"));
  auto poly = SequenceSpec::parse("poly:2,3");
  CHECK(poly.eval(0) == 3);
  CHECK(poly.eval(4) == 11);
  CHECK(SequenceSpec::parse("poly:1").eval(99) == 1);
}

TEST_CASE("the interleaved factorial pair") {
  auto u = SequenceSpec::parse("interleave(fact,affine(fact,1,1))");
  std::vector<std::int64_t> expect{1, 2, 1, 2, 2, 3, 6, 7, 24, 25};
  for (std::size_t n = 0; n < expect.size(); ++n) CHECK(u.eval(n) == expect[n]);
  // consecutive odd/even entries differ by exactly one at every level
  for (std::uint64_t k = 0; k < 12; ++k) CHECK(u.eval(2 * k + 1) - u.eval(2 * k) == 1);
}

TEST_CASE("plants switch branch on the descriptor") {
  auto u = SequenceSpec::parse("plant(fact,affine(fact,1,1),squares)");
  CHECK(u.eval(0) == 2);   // 0 is a square: factorial + 1
  CHECK(u.eval(2) == 2);   // off: 2!
  CHECK(u.eval(3) == 6);
  CHECK(u.eval(4) == 25);  // 4 is a square: 4! + 1
}

TEST_CASE("parse errors carry positions") {
  try {
    SequenceSpec::parse("pow:");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position == 4);
  }
  CHECK_THROWS_AS(SequenceSpec::parse("affine(fact,1)"), ParseError);
  CHECK_THROWS_AS(SequenceSpec::parse("pow:2 "), ParseError);
  CHECK_THROWS_AS(SequenceSpec::parse("plant(fact,fact,nope)"), ParseError);
}

TEST_CASE("print round trip") {
  for (const char* text :
       {"pow:2", "fact", "poly:2,-1,0", "affine(fact,1,1)",
        "interleave(fact,affine(fact,1,1))", "plant(fact,pow:3,squares)",
        "plant(pow:2,fact,union(squares,period:/10))"}) {
    CHECK(SequenceSpec::parse(text).str() == text);
  }
}

TEST_CASE("list sequences are horizon-limited without a tail rule") {
  std::string path = "/tmp/idealtop_test_list.txt";
  {
    std::ofstream f(path);
    f << "5\n-3\n7\n";
  }
  auto u = SequenceSpec::parse("list:" + path);
  CHECK(u.eval(0) == 5);
  CHECK(u.eval(1) == -3);
  CHECK(u.eval(2) == 7);
  CHECK_THROWS_AS(u.eval(3), HorizonLimit);
  CHECK_THROWS_AS(SequenceSpec::parse("list:/nonexistent/nope.txt"), IoError);

  auto tailed = SequenceSpec::list(path, {BigInt(5), BigInt(-3), BigInt(7)}, true);
  CHECK(tailed.eval(100) == 7);
}

TEST_CASE("affine transforms compose") {
  auto u = SequenceSpec::parse("affine(pow:2,-3,5)");
  CHECK(u.eval(0) == 2);    // -3*1 + 5
  CHECK(u.eval(3) == -19);  // -3*8 + 5
}

TEST_CASE("tail divisors certify growth floors") {
  CHECK(*SequenceSpec::parse("pow:2").tail_divisor(3) == 16);
  CHECK(*SequenceSpec::parse("fact").tail_divisor(3) == 24);
  CHECK(*SequenceSpec::parse("affine(pow:2,3,0)").tail_divisor(2) == 24);
  CHECK_FALSE(SequenceSpec::parse("poly:1,0").tail_divisor(5).has_value());
  CHECK_FALSE(SequenceSpec::parse("affine(fact,1,1)").tail_divisor(5).has_value());
  auto inter = SequenceSpec::parse("interleave(pow:2,pow:2)").tail_divisor(10);
  CHECK(inter.has_value());
  CHECK(*inter == 64);  // both halves live beyond index 5
}

TEST_CASE("sparse-sum sequences scale to constant branch patterns") {
  PlantedSparseSumSequence seq;
  seq.off_branch = {4, 0, true};  // (0, e_n)
  seq.on_branch = {4, 1, true};   // (c, e_n)
  seq.where = SetDescriptor::evens();
  CHECK(seq.eval(2).head == 1);
  CHECK(seq.eval(3).head == 0);
  CHECK(seq.eval(3).tail == std::vector<std::uint64_t>{3});

  SetDescriptor doubled = seq.scaled_nonzero_set(2);
  CHECK(doubled.structurally_equal(SetDescriptor::evens()));
  // scaling by 4 kills the head, scaling by an odd number keeps every tail
  CHECK(seq.scaled_nonzero_set(4).cardinality().card == Cardinality::Empty);
  CHECK(seq.scaled_nonzero_set(3).density().upper == 1);
}
