#include <doctest.h>

#include "idealtop/refute.hpp"
#include "support/gen.hpp"

using namespace idealtop;

TEST_CASE("the interleaved factorial pair is refuted with g = 1, k = 2") {
  RefuteParams p;
  p.kmax = 2;
  p.M = 30;
  p.sumset = {64, BigInt(100), 1u << 22};
  auto cert = t_refute(SequenceSpec::parse("interleave(fact,affine(fact,1,1))"), p);
  REQUIRE(cert.has_value());
  CHECK(big_abs(cert->g) == 1);
  CHECK(cert->k == 2);
  CHECK(cert->witnesses.size() == 31);
  CHECK(verify_refutation(*cert, SequenceSpec::parse("interleave(fact,affine(fact,1,1))")));
  // witnesses respect their tails
  for (const auto& w : cert->witnesses)
    for (const auto& t : w.terms) CHECK(t.index >= w.m);
}

TEST_CASE("doubling admits no persistent element") {
  RefuteParams p;
  p.kmax = 3;
  p.M = 20;
  p.sumset = {48, BigInt(1000), 1u << 22};
  CHECK_FALSE(t_refute(SequenceSpec::parse("pow:2"), p).has_value());
}

TEST_CASE("constant sequences are refuted immediately") {
  RefuteParams p;
  p.kmax = 1;
  p.M = 10;
  p.sumset = {20, BigInt(10), 1u << 20};
  auto cert = t_refute(SequenceSpec::parse("poly:1"), p);
  REQUIRE(cert.has_value());
  CHECK(cert->g == 1);
  CHECK(cert->k == 1);
  CHECK(verify_refutation(*cert, SequenceSpec::parse("poly:1")));
}

TEST_CASE("certificate JSON round trip") {
  RefuteParams p;
  p.kmax = 2;
  p.M = 8;
  p.sumset = {24, BigInt(50), 1u << 20};
  auto cert = t_refute(SequenceSpec::parse("interleave(fact,affine(fact,1,1))"), p);
  REQUIRE(cert.has_value());
  RefutationCertificate back = RefutationCertificate::from_json(cert->to_json());
  CHECK(back.g == cert->g);
  CHECK(back.k == cert->k);
  CHECK(back.M == cert->M);
  CHECK(back.witnesses.size() == cert->witnesses.size());
  CHECK(verify_refutation(back, SequenceSpec::parse("interleave(fact,affine(fact,1,1))")));
}

TEST_CASE("the checker accepts every emitted certificate across 1000 randomized runs") {
  testgen::Rng rng(80);
  for (int round = 0; round < 1000; ++round) {
    std::uint64_t d = testgen::pick(rng, 1, 6);
    SequenceSpec u =
        testgen::pick(rng, 0, 1)
            ? SequenceSpec::interleave(SequenceSpec::fact(),
                                       SequenceSpec::affine(SequenceSpec::fact(), BigInt(1),
                                                            BigInt(d)))
            : SequenceSpec::constant(BigInt(d));
    RefuteParams p;
    p.kmax = 2;
    p.M = testgen::pick(rng, 2, 8);
    p.sumset = {24, BigInt(64), 1u << 22};
    auto cert = t_refute(u, p);
    REQUIRE(cert.has_value());
    CHECK(verify_refutation(*cert, u));
  }
}

TEST_CASE("the checker accepts emitted certificates and rejects every mutation") {
  testgen::Rng rng(81);
  int accepted = 0, rejected = 0;
  for (int round = 0; round < 40; ++round) {
    // sequences with differences that stay small produce certificates
    std::uint64_t d = testgen::pick(rng, 1, 5);
    SequenceSpec u =
        testgen::pick(rng, 0, 1)
            ? SequenceSpec::interleave(SequenceSpec::fact(),
                                       SequenceSpec::affine(SequenceSpec::fact(), BigInt(1),
                                                            BigInt(d)))
            : SequenceSpec::constant(BigInt(d));
    RefuteParams p;
    p.kmax = 2;
    p.M = testgen::pick(rng, 4, 12);
    p.sumset = {32, BigInt(64), 1u << 22};
    auto cert = t_refute(u, p);
    REQUIRE(cert.has_value());
    CHECK(verify_refutation(*cert, u));
    ++accepted;

    for (int mut = 0; mut < 25; ++mut) {
      RefutationCertificate bad = *cert;
      switch (testgen::pick(rng, 0, 4)) {
        case 0:
          bad.g += testgen::pick(rng, 1, 3);  // wrong sum target
          break;
        case 1: {  // push an index below its tail bound
          std::size_t wi = testgen::pick(rng, 1, bad.witnesses.size() - 1);
          if (bad.witnesses[wi].terms.empty()) {
            bad.witnesses[wi].terms.push_back({0, 1});
          } else {
            bad.witnesses[wi].terms[0].index = 0;
            if (bad.witnesses[wi].m == 0) bad.witnesses[wi].m = 1;
          }
          break;
        }
        case 2: {  // flip a sign
          std::size_t wi = testgen::pick(rng, 0, bad.witnesses.size() - 1);
          if (bad.witnesses[wi].terms.empty()) {
            bad.g += 1;
          } else {
            bad.witnesses[wi].terms[0].sign *= -1;
          }
          break;
        }
        case 3:  // drop a witness level
          bad.witnesses.pop_back();
          break;
        default:  // exceed the fold bound
          bad.k = 0;
          break;
      }
      if (!verify_refutation(bad, u)) ++rejected;
    }
  }
  CHECK(accepted == 40);
  CHECK(rejected == 40 * 25);
}
