#include <doctest.h>

#include "idealtop/errors.hpp"
#include "idealtop/group.hpp"
#include "support/gen.hpp"

using namespace idealtop;

namespace {

FiniteAbElem elem(std::vector<std::uint64_t> orders, std::vector<std::uint64_t> coords) {
  return FiniteAbElem{FiniteAbShape{std::move(orders)}, std::move(coords)};
}

GroupElement random_element(testgen::Rng& rng, int variant) {
  switch (variant) {
    case 0:
      return GroupElement(BigInt(static_cast<std::int64_t>(testgen::pick(rng, 0, 2000)) - 1000));
    case 1: {
      GroupElement::IntVector v;
      for (int i = 0; i < 3; ++i)
        v.push_back(BigInt(static_cast<std::int64_t>(testgen::pick(rng, 0, 200)) - 100));
      return GroupElement(std::move(v));
    }
    case 2: {
      FiniteAbShape shape{{4, 6}};
      return GroupElement(
          elem({4, 6}, {testgen::pick(rng, 0, 3), testgen::pick(rng, 0, 5)}));
    }
    default: {
      SparseSumElem e;
      e.head_mod = 4;
      e.head = testgen::pick(rng, 0, 3);
      std::uint64_t n = testgen::pick(rng, 0, 3);
      for (std::uint64_t i = 0; i < n; ++i) e.tail.push_back(testgen::pick(rng, 0, 10));
      return GroupElement(std::move(e));
    }
  }
}

}  // namespace

TEST_CASE("pairing on finite shapes") {
  CHECK(pair_eval(elem({4}, {2}), elem({4}, {1})).str() == "1/2");
  CHECK(pair_eval(elem({4}, {0}), elem({4}, {3})).str() == "0");
  // 1/2 + 2/3 mod 1
  CHECK(pair_eval(elem({2, 3}, {1, 1}), elem({2, 3}, {1, 2})).str() == "1/6");
  CHECK_THROWS_AS(pair_eval(elem({4}, {1}), elem({2, 3}, {1, 1})), ShapeMismatch);
}

TEST_CASE("pairing is bilinear, exhaustively on shapes up to 64 elements") {
  for (auto orders : {std::vector<std::uint64_t>{2, 3}, {4, 4}, {8}, {2, 2, 2}, {3, 7}}) {
    FiniteAbShape shape{orders};
    auto all = enumerate_elements(shape);
    bool ok = true;
    for (const auto& a : all)
      for (const auto& b : all)
        for (const auto& c : all) {
          auto bc = (GroupElement(b) + GroupElement(c)).as_finite_ab();
          ok = ok && pair_eval(a, bc) == pair_eval(a, b) + pair_eval(a, c);
        }
    CHECK(ok);
  }
}

TEST_CASE("abelian group axioms hold exactly for every variant") {
  testgen::Rng rng(21);
  for (int variant = 0; variant < 4; ++variant) {
    for (int i = 0; i < 100; ++i) {
      GroupElement a = random_element(rng, variant);
      GroupElement b = random_element(rng, variant);
      GroupElement c = random_element(rng, variant);
      CHECK(a + b == b + a);
      CHECK((a + b) + c == a + (b + c));
      CHECK(a + (-a) == a.zero_like());
      CHECK(a + a.zero_like() == a);
      CHECK(a.scaled(2) == a + a);
    }
  }
}

TEST_CASE("sparse-sum tails are 2-torsion with exact support") {
  SparseSumElem e;
  e.head_mod = 4;
  e.head = 1;
  e.tail = {5, 2, 5};  // duplicates collapse to canonical support
  GroupElement g{e};
  CHECK(g.as_sparse_sum().tail == std::vector<std::uint64_t>{2, 5});
  CHECK((g + g).as_sparse_sum().tail.empty());
  CHECK((g + g).as_sparse_sum().head == 2);
  CHECK(g.scaled(2) == g + g);
  CHECK(g.scaled(4).is_zero());
}

TEST_CASE("finite element string form") {
  GroupElement g = GroupElement::parse_finite_ab("2@4");
  CHECK(g.str() == "2@4");
  CHECK(GroupElement::parse_finite_ab("1,2@2,3").str() == "1,2@2,3");
  CHECK(GroupElement::parse_finite_ab("5,2@2,3").str() == "1,2@2,3");  // reduced
  CHECK_THROWS_AS(GroupElement::parse_finite_ab("1,2@2"), ShapeMismatch);
  CHECK_THROWS_AS(GroupElement::parse_finite_ab("12"), ParseError);
}

TEST_CASE("element enumeration respects the scan bound") {
  CHECK(enumerate_elements(FiniteAbShape{{4}}).size() == 4);
  CHECK(enumerate_elements(FiniteAbShape{{2, 3}}).size() == 6);
  CHECK_THROWS_AS(enumerate_elements(FiniteAbShape{{64, 64, 64}}, 4096), GroupTooLarge);
}
