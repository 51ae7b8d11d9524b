#include "idealtop/sequence.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <fstream>
#include <functional>
#include <variant>

#include "idealtop/errors.hpp"

namespace idealtop {

struct SequenceSpec::Node {
  std::variant<Pow, Fact, Poly, List, Affine, Interleave, Plant> v;
  std::vector<SequenceSpec> children;
};

SequenceSpec SequenceSpec::pow(BigInt base) {
  auto n = std::make_shared<Node>();
  n->v = Pow{std::move(base)};
  return SequenceSpec(std::move(n));
}

SequenceSpec SequenceSpec::fact() {
  auto n = std::make_shared<Node>();
  n->v = Fact{};
  return SequenceSpec(std::move(n));
}

SequenceSpec SequenceSpec::poly(std::vector<BigInt> coeffs) {
  if (coeffs.empty()) throw Error("polynomial needs at least one coefficient");
  auto n = std::make_shared<Node>();
  n->v = Poly{std::move(coeffs)};
  return SequenceSpec(std::move(n));
}

SequenceSpec SequenceSpec::list(std::string path, std::vector<BigInt> values,
                                bool constant_tail) {
  auto n = std::make_shared<Node>();
  n->v = List{std::move(path), std::move(values), constant_tail};
  return SequenceSpec(std::move(n));
}

SequenceSpec SequenceSpec::affine(SequenceSpec s, BigInt a, BigInt b) {
  auto n = std::make_shared<Node>();
  n->v = Affine{std::move(a), std::move(b)};
  n->children.push_back(std::move(s));
  return SequenceSpec(std::move(n));
}

SequenceSpec SequenceSpec::interleave(SequenceSpec s, SequenceSpec t) {
  auto n = std::make_shared<Node>();
  n->v = Interleave{};
  n->children.push_back(std::move(s));
  n->children.push_back(std::move(t));
  return SequenceSpec(std::move(n));
}

SequenceSpec SequenceSpec::plant(SequenceSpec s, SequenceSpec t, SetDescriptor where) {
  auto n = std::make_shared<Node>();
  n->v = Plant{std::move(where)};
  n->children.push_back(std::move(s));
  n->children.push_back(std::move(t));
  return SequenceSpec(std::move(n));
}

SequenceSpec::Tag SequenceSpec::tag() const {
  return static_cast<Tag>(node_->v.index());
}
const SequenceSpec& SequenceSpec::child(std::size_t i) const { return node_->children[i]; }
std::size_t SequenceSpec::child_count() const { return node_->children.size(); }
const SequenceSpec::Pow& SequenceSpec::as_pow() const { return std::get<Pow>(node_->v); }
const SequenceSpec::Poly& SequenceSpec::as_poly() const { return std::get<Poly>(node_->v); }
const SequenceSpec::List& SequenceSpec::as_list() const { return std::get<List>(node_->v); }
const SequenceSpec::Affine& SequenceSpec::as_affine() const {
  return std::get<Affine>(node_->v);
}
const SequenceSpec::Plant& SequenceSpec::as_plant() const { return std::get<Plant>(node_->v); }

BigInt SequenceSpec::eval(std::uint64_t n) const {
  switch (tag()) {
    case Tag::Pow:
      return big_pow(as_pow().base, n);
    case Tag::Fact: {
      BigInt f = 1;
      for (std::uint64_t k = 2; k <= n; ++k) f *= k;
      return f;
    }
    case Tag::Poly: {
      BigInt acc = 0;
      for (const BigInt& c : as_poly().coeffs) acc = acc * n + c;
      return acc;
    }
    case Tag::List: {
      const auto& l = as_list();
      if (n < l.values.size()) return l.values[n];
      if (l.constant_tail && !l.values.empty()) return l.values.back();
      throw HorizonLimit("list sequence has no value at index " + std::to_string(n));
    }
    case Tag::Affine: {
      const auto& a = as_affine();
      return a.a * child(0).eval(n) + a.b;
    }
    case Tag::Interleave:
      return child(n % 2).eval(n / 2);
    case Tag::Plant:
      return as_plant().where.contains(n) ? child(1).eval(n) : child(0).eval(n);
  }
  throw Error("unreachable");
}

BigInt SequenceSpec::max_abs_upto(std::uint64_t h) const {
  BigInt best = 0;
  for (std::uint64_t n = 0; n <= h; ++n) best = std::max(best, big_abs(eval(n)));
  return best;
}

std::optional<BigInt> SequenceSpec::tail_divisor(std::uint64_t h) const {
  switch (tag()) {
    case Tag::Pow: {
      BigInt b = big_abs(as_pow().base);
      if (b < 2) return std::nullopt;
      return big_pow(b, h + 1);
    }
    case Tag::Fact: {
      BigInt f = 1;
      for (std::uint64_t k = 2; k <= h + 1; ++k) f *= k;
      return f;
    }
    case Tag::Affine: {
      const auto& a = as_affine();
      if (a.b != 0 || a.a == 0) return std::nullopt;
      auto inner = child(0).tail_divisor(h);
      if (!inner) return std::nullopt;
      return big_abs(a.a) * *inner;
    }
    case Tag::Interleave: {
      auto s = child(0).tail_divisor(h / 2);
      auto t = child(1).tail_divisor(h / 2);
      if (!s || !t) return std::nullopt;
      BigInt g = big_gcd(*s, *t);
      return g > 1 ? std::optional<BigInt>(g) : std::nullopt;
    }
    case Tag::Plant: {
      auto s = child(0).tail_divisor(h);
      auto t = child(1).tail_divisor(h);
      if (!s || !t) return std::nullopt;
      BigInt g = big_gcd(*s, *t);
      return g > 1 ? std::optional<BigInt>(g) : std::nullopt;
    }
    default:
      return std::nullopt;
  }
}

// --------------------------------------------------------------------------

namespace {

struct Cursor {
  const std::string& s;
  std::size_t pos = 0;

  bool eof() const { return pos >= s.size(); }
  bool consume(char c) {
    if (!eof() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  void expect(char c, const char* what) {
    if (!consume(c)) throw ParseError(pos, what);
  }
  bool consume_word(const char* w) {
    std::size_t n = std::strlen(w);
    if (s.compare(pos, n, w) == 0) {
      pos += n;
      return true;
    }
    return false;
  }
  BigInt parse_int() {
    std::size_t start = pos;
    if (!eof() && (s[pos] == '-' || s[pos] == '+')) ++pos;
    std::size_t digits = pos;
    while (!eof() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == digits) throw ParseError(pos, "integer");
    return BigInt(s.substr(start, pos - start));
  }
};

std::vector<BigInt> read_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open list file " + path);
  std::vector<BigInt> values;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back())))
      line.pop_back();
    std::size_t i = 0;
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i >= line.size()) continue;
    values.emplace_back(line.substr(i));
  }
  return values;
}

SequenceSpec parse_seq(Cursor& cur) {
  if (cur.consume_word("pow:")) return SequenceSpec::pow(cur.parse_int());
  if (cur.consume_word("factpos"))  // guard: descriptor keyword, not a sequence
    throw ParseError(cur.pos, "sequence");
  if (cur.consume_word("fact")) return SequenceSpec::fact();
  if (cur.consume_word("poly:")) {
    std::vector<BigInt> coeffs;
    coeffs.push_back(cur.parse_int());
    // a comma continues the coefficient list only when an integer follows;
    // otherwise it separates arguments of an enclosing form
    while (!cur.eof() && cur.s[cur.pos] == ',') {
      std::size_t next = cur.pos + 1;
      if (next < cur.s.size() && (std::isdigit(static_cast<unsigned char>(cur.s[next])) ||
                                  cur.s[next] == '-' || cur.s[next] == '+')) {
        ++cur.pos;
        coeffs.push_back(cur.parse_int());
      } else {
        break;
      }
    }
    return SequenceSpec::poly(std::move(coeffs));
  }
  if (cur.consume_word("list:")) {
    std::size_t start = cur.pos;
    int depth = 0;
    while (!cur.eof()) {
      char c = cur.s[cur.pos];
      if (c == '(') ++depth;
      if (c == ')' && depth-- == 0) break;
      if (c == ',' && depth == 0) break;
      ++cur.pos;
    }
    std::string path = cur.s.substr(start, cur.pos - start);
    if (path.empty()) throw ParseError(start, "file path");
    return SequenceSpec::list(path, read_list_file(path));
  }
  if (cur.consume_word("affine")) {
    cur.expect('(', "'('");
    SequenceSpec s = parse_seq(cur);
    cur.expect(',', "','");
    BigInt a = cur.parse_int();
    cur.expect(',', "','");
    BigInt b = cur.parse_int();
    cur.expect(')', "')'");
    return SequenceSpec::affine(std::move(s), std::move(a), std::move(b));
  }
  if (cur.consume_word("interleave")) {
    cur.expect('(', "'('");
    SequenceSpec s = parse_seq(cur);
    cur.expect(',', "','");
    SequenceSpec t = parse_seq(cur);
    cur.expect(')', "')'");
    return SequenceSpec::interleave(std::move(s), std::move(t));
  }
  if (cur.consume_word("plant")) {
    cur.expect('(', "'('");
    SequenceSpec s = parse_seq(cur);
    cur.expect(',', "','");
    SequenceSpec t = parse_seq(cur);
    cur.expect(',', "','");
    std::size_t start = cur.pos;
    int depth = 0;
    while (!cur.eof()) {
      char c = cur.s[cur.pos];
      if (c == '(') ++depth;
      if (c == ')') {
        if (depth == 0) break;
        --depth;
      }
      if (c == ',' && depth == 0) break;
      ++cur.pos;
    }
    SetDescriptor where = SetDescriptor::parse(cur.s.substr(start, cur.pos - start));
    cur.expect(')', "')'");
    return SequenceSpec::plant(std::move(s), std::move(t), std::move(where));
  }
  throw ParseError(cur.pos, "sequence");
}

}  // namespace

std::string SequenceSpec::str() const {
  switch (tag()) {
    case Tag::Pow:
      return "pow:" + as_pow().base.str();
    case Tag::Fact:
      return "fact";
    case Tag::Poly: {
      std::string out = "poly:";
      const auto& c = as_poly().coeffs;
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) out += ',';
        out += c[i].str();
      }
      return out;
    }
    case Tag::List:
      return "list:" + as_list().path;
    case Tag::Affine:
      return "affine(" + child(0).str() + "," + as_affine().a.str() + "," +
             as_affine().b.str() + ")";
    case Tag::Interleave:
      return "interleave(" + child(0).str() + "," + child(1).str() + ")";
    case Tag::Plant:
      return "plant(" + child(0).str() + "," + child(1).str() + "," + as_plant().where.str() +
             ")";
  }
  return "?";
}

std::string SequenceSpec::cache_key() const {
  if (tag() == Tag::List) {
    const auto& l = as_list();
    std::size_t h = std::hash<std::string>{}(l.path);
    for (const auto& v : l.values)
      h = h * 1099511628211ull ^ std::hash<std::string>{}(v.str());
    return "list#" + std::to_string(h) + "#" + std::to_string(l.values.size());
  }
  std::string out;
  switch (tag()) {
    case Tag::Affine:
      return "affine(" + child(0).cache_key() + "," + as_affine().a.str() + "," +
             as_affine().b.str() + ")";
    case Tag::Interleave:
      return "interleave(" + child(0).cache_key() + "," + child(1).cache_key() + ")";
    case Tag::Plant:
      return "plant(" + child(0).cache_key() + "," + child(1).cache_key() + "," +
             as_plant().where.str() + ")";
    default:
      return str();
  }
}

SequenceSpec SequenceSpec::parse(const std::string& text) {
  Cursor cur{text};
  SequenceSpec s = parse_seq(cur);
  if (!cur.eof()) throw ParseError(cur.pos, "end of input");
  return s;
}

bool is_sparse_plant(const SequenceSpec& u) {
  if (u.tag() != SequenceSpec::Tag::Plant) return false;
  bool sparse = false;
  std::function<void(const SetDescriptor&)> walk = [&](const SetDescriptor& d) {
    if (d.is_sparse_class()) sparse = true;
    if (d.is_combo_class()) {
      walk(d.as_combo().lhs());
      walk(d.as_combo().rhs());
    }
  };
  walk(u.as_plant().where);
  return sparse;
}

FiniteAbElem FiniteAbSequence::eval(std::uint64_t n) const {
  if (coords.size() != shape.orders.size())
    throw ShapeMismatch("coordinate sequences do not match the shape");
  FiniteAbElem e{shape, std::vector<std::uint64_t>(coords.size(), 0)};
  for (std::size_t i = 0; i < coords.size(); ++i) {
    BigInt v = mod_floor(coords[i].eval(n), BigInt(shape.orders[i]));
    e.coords[i] = v.convert_to<std::uint64_t>();
  }
  return e;
}

std::string FiniteAbSequence::str() const {
  std::string out;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (i) out += ';';
    out += coords[i].str();
  }
  return out + "@" + shape.str();
}

SparseSumElem SparseSumSequence::eval(std::uint64_t n) const {
  SparseSumElem e;
  e.head_mod = head_mod;
  e.head = head % head_mod;
  if (with_generator) e.tail = {n};
  return e;
}

SparseSumElem PlantedSparseSumSequence::eval(std::uint64_t n) const {
  return where.contains(n) ? on_branch.eval(n) : off_branch.eval(n);
}

SetDescriptor PlantedSparseSumSequence::scaled_nonzero_set(const BigInt& lambda) const {
  auto branch_nonzero = [&](const SparseSumSequence& b) {
    bool head_nz = mod_floor(lambda * b.head, BigInt(b.head_mod)) != 0;
    bool tail_nz = b.with_generator && mod_floor(lambda, 2) != 0;
    return head_nz || tail_nz;
  };
  bool on_nz = branch_nonzero(on_branch);
  bool off_nz = branch_nonzero(off_branch);
  if (on_nz && off_nz) return SetDescriptor::all();
  if (on_nz) return where;
  if (off_nz) return SetDescriptor::combo(ComboOp::Diff, SetDescriptor::all(), where);
  return SetDescriptor::empty();
}

}  // namespace idealtop
