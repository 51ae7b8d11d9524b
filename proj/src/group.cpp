#include "idealtop/group.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

#include "idealtop/errors.hpp"

namespace idealtop {

namespace {

std::vector<std::uint64_t> parse_u64_list(const std::string& text, std::size_t offset) {
  std::vector<std::uint64_t> out;
  std::size_t i = 0;
  while (i < text.size()) {
    std::size_t j = i;
    while (j < text.size() && text[j] != ',') ++j;
    std::string tok = text.substr(i, j - i);
    if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](char c) {
          return std::isdigit(static_cast<unsigned char>(c));
        }))
      throw ParseError(offset + i, "nonnegative integer");
    out.push_back(std::stoull(tok));
    i = j + (j < text.size() ? 1 : 0);
  }
  if (out.empty()) throw ParseError(offset, "nonempty integer list");
  return out;
}

}  // namespace

std::uint64_t FiniteAbShape::size() const {
  std::uint64_t s = 1;
  for (auto n : orders) s *= n;
  return s;
}

std::string FiniteAbShape::str() const {
  std::string out;
  for (std::size_t i = 0; i < orders.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(orders[i]);
  }
  return out;
}

FiniteAbShape FiniteAbShape::parse(const std::string& text) {
  FiniteAbShape s{parse_u64_list(text, 0)};
  for (auto n : s.orders)
    if (n < 2) throw ParseError(0, "orders >= 2");
  return s;
}

GroupElement::GroupElement(FiniteAbElem x) : v_(std::move(x)) {
  auto& e = std::get<FiniteAbElem>(v_);
  if (e.coords.size() != e.shape.orders.size())
    throw ShapeMismatch("coordinate count differs from shape");
  for (std::size_t i = 0; i < e.coords.size(); ++i) e.coords[i] %= e.shape.orders[i];
}

GroupElement::GroupElement(SparseSumElem x) : v_(std::move(x)) {
  auto& e = std::get<SparseSumElem>(v_);
  e.head %= e.head_mod;
  std::sort(e.tail.begin(), e.tail.end());
  e.tail.erase(std::unique(e.tail.begin(), e.tail.end()), e.tail.end());
}

GroupElement GroupElement::operator+(const GroupElement& o) const {
  if (v_.index() != o.v_.index()) throw ShapeMismatch("adding different group variants");
  if (is_integer()) return GroupElement(as_integer() + o.as_integer());
  if (is_vector()) {
    const auto& a = as_vector();
    const auto& b = o.as_vector();
    if (a.size() != b.size()) throw ShapeMismatch("vector dimensions differ");
    IntVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return GroupElement(std::move(r));
  }
  if (is_finite_ab()) {
    const auto& a = as_finite_ab();
    const auto& b = o.as_finite_ab();
    if (a.shape != b.shape) throw ShapeMismatch("finite shapes differ");
    FiniteAbElem r = a;
    for (std::size_t i = 0; i < r.coords.size(); ++i)
      r.coords[i] = (r.coords[i] + b.coords[i]) % r.shape.orders[i];
    return GroupElement(std::move(r));
  }
  const auto& a = as_sparse_sum();
  const auto& b = o.as_sparse_sum();
  if (a.head_mod != b.head_mod) throw ShapeMismatch("sparse-sum head moduli differ");
  SparseSumElem r;
  r.head_mod = a.head_mod;
  r.head = (a.head + b.head) % a.head_mod;
  // tails add mod 2: symmetric difference of supports
  std::set_symmetric_difference(a.tail.begin(), a.tail.end(), b.tail.begin(), b.tail.end(),
                                std::back_inserter(r.tail));
  return GroupElement(std::move(r));
}

GroupElement GroupElement::operator-() const {
  if (is_integer()) return GroupElement(-as_integer());
  if (is_vector()) {
    IntVector r = as_vector();
    for (auto& x : r) x = -x;
    return GroupElement(std::move(r));
  }
  if (is_finite_ab()) {
    FiniteAbElem r = as_finite_ab();
    for (std::size_t i = 0; i < r.coords.size(); ++i)
      r.coords[i] = (r.shape.orders[i] - r.coords[i]) % r.shape.orders[i];
    return GroupElement(std::move(r));
  }
  SparseSumElem r = as_sparse_sum();  // tail is 2-torsion; head negates
  r.head = (r.head_mod - r.head) % r.head_mod;
  return GroupElement(std::move(r));
}

GroupElement GroupElement::scaled(const BigInt& k) const {
  if (is_integer()) return GroupElement(as_integer() * k);
  if (is_vector()) {
    IntVector r = as_vector();
    for (auto& x : r) x *= k;
    return GroupElement(std::move(r));
  }
  if (is_finite_ab()) {
    FiniteAbElem r = as_finite_ab();
    for (std::size_t i = 0; i < r.coords.size(); ++i) {
      BigInt c = mod_floor(BigInt(r.coords[i]) * k, BigInt(r.shape.orders[i]));
      r.coords[i] = c.convert_to<std::uint64_t>();
    }
    return GroupElement(std::move(r));
  }
  SparseSumElem r = as_sparse_sum();
  BigInt h = mod_floor(BigInt(r.head) * k, BigInt(r.head_mod));
  r.head = h.convert_to<std::uint64_t>();
  if (mod_floor(k, 2) == 0) r.tail.clear();
  return GroupElement(std::move(r));
}

bool GroupElement::is_zero() const {
  if (is_integer()) return as_integer() == 0;
  if (is_vector())
    return std::all_of(as_vector().begin(), as_vector().end(),
                       [](const BigInt& x) { return x == 0; });
  if (is_finite_ab())
    return std::all_of(as_finite_ab().coords.begin(), as_finite_ab().coords.end(),
                       [](std::uint64_t c) { return c == 0; });
  return as_sparse_sum().head == 0 && as_sparse_sum().tail.empty();
}

GroupElement GroupElement::zero_like() const { return scaled(0); }

bool GroupElement::operator<(const GroupElement& o) const {
  if (v_.index() != o.v_.index()) return v_.index() < o.v_.index();
  if (is_integer()) return as_integer() < o.as_integer();
  if (is_vector()) return as_vector() < o.as_vector();
  if (is_finite_ab()) return as_finite_ab().coords < o.as_finite_ab().coords;
  const auto& a = as_sparse_sum();
  const auto& b = o.as_sparse_sum();
  if (a.head != b.head) return a.head < b.head;
  return a.tail < b.tail;
}

std::size_t GroupElement::fingerprint() const {
  std::hash<std::string> h;
  return h(str());
}

BigInt GroupElement::magnitude() const {
  if (is_integer()) return big_abs(as_integer());
  if (is_vector()) {
    BigInt m = 0;
    for (const auto& x : as_vector()) m = std::max(m, big_abs(x));
    return m;
  }
  return 0;
}

bool GroupElement::bounded_by(const BigInt& window) const {
  if (is_integer() || is_vector()) return magnitude() <= window;
  return true;
}

std::string GroupElement::str() const {
  if (is_integer()) return as_integer().str();
  if (is_vector()) {
    std::string out = "(";
    const auto& v = as_vector();
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) out += ',';
      out += v[i].str();
    }
    return out + ")";
  }
  if (is_finite_ab()) {
    const auto& e = as_finite_ab();
    std::string out;
    for (std::size_t i = 0; i < e.coords.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(e.coords[i]);
    }
    return out + "@" + e.shape.str();
  }
  const auto& e = as_sparse_sum();
  std::string out = "sparse(" + std::to_string(e.head) + "@" + std::to_string(e.head_mod) + ";";
  for (std::size_t i = 0; i < e.tail.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(e.tail[i]);
  }
  return out + ")";
}

GroupElement GroupElement::parse_finite_ab(const std::string& text) {
  std::size_t at = text.find('@');
  if (at == std::string::npos) throw ParseError(text.size(), "'@' separating coords and orders");
  FiniteAbElem e;
  e.coords = parse_u64_list(text.substr(0, at), 0);
  e.shape = FiniteAbShape::parse(text.substr(at + 1));
  if (e.coords.size() != e.shape.orders.size())
    throw ShapeMismatch("coordinate count differs from shape");
  return GroupElement(std::move(e));
}

CirclePoint pair_eval(const FiniteAbElem& a, const FiniteAbElem& b) {
  if (a.shape != b.shape) throw ShapeMismatch("pairing requires a common shape");
  Rational sum = 0;
  for (std::size_t i = 0; i < a.coords.size(); ++i)
    sum += Rational(BigInt(a.coords[i]) * b.coords[i], BigInt(a.shape.orders[i]));
  return CirclePoint::from_rational(sum);
}

std::vector<FiniteAbElem> enumerate_elements(const FiniteAbShape& shape, std::uint64_t bound) {
  std::uint64_t n = shape.size();
  if (n > bound) throw GroupTooLarge(n, bound);
  std::vector<FiniteAbElem> out;
  out.reserve(n);
  FiniteAbElem cur{shape, std::vector<std::uint64_t>(shape.orders.size(), 0)};
  for (std::uint64_t i = 0; i < n; ++i) {
    out.push_back(cur);
    for (std::size_t j = cur.coords.size(); j-- > 0;) {
      if (++cur.coords[j] < shape.orders[j]) break;
      cur.coords[j] = 0;
    }
  }
  return out;
}

}  // namespace idealtop
