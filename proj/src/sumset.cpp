#include "idealtop/sumset.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "idealtop/errors.hpp"

namespace idealtop {

std::string IndexSet::str() const {
  if (is_tail) return "tail:" + std::to_string(tail_m);
  return "off:" + excluded.str();
}

bool SumsetResult::contains(const BigInt& v) const { return find(v) != nullptr; }

const SumsetEntry* SumsetResult::find(const BigInt& v) const {
  auto it = std::lower_bound(entries.begin(), entries.end(), v,
                             [](const SumsetEntry& e, const BigInt& x) { return e.value < x; });
  if (it != entries.end() && it->value == v) return &*it;
  return nullptr;
}

std::vector<BigInt> truncated_terms(const SequenceSpec& u, const IndexSet& idx,
                                    std::uint64_t horizon) {
  std::set<BigInt> vals;
  vals.insert(0);
  for (std::uint64_t n = 0; n <= horizon; ++n) {
    if (!idx.admits(n)) continue;
    BigInt v = u.eval(n);
    vals.insert(v);
    vals.insert(-v);
  }
  return {vals.begin(), vals.end()};
}

namespace {

std::vector<std::uint64_t> admitted_indices(const IndexSet& idx, std::uint64_t horizon) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = 0; n <= horizon; ++n)
    if (idx.admits(n)) out.push_back(n);
  return out;
}

// Recursive enumeration over nondecreasing index tuples with signs. Partial
// sums are never window-pruned: small values of huge terms only appear after
// cancellation, so the cut happens on the final value alone.
void enumerate_sums(const std::vector<std::uint64_t>& indices,
                    const std::vector<BigInt>& values, std::uint32_t k, const BigInt& window,
                    std::uint64_t budget, std::map<BigInt, std::vector<WitnessTerm>>& out) {
  std::vector<WitnessTerm> stack;
  std::uint64_t steps = 0;
  std::function<void(std::size_t, const BigInt&)> rec = [&](std::size_t from,
                                                            const BigInt& sum) {
    if (++steps > budget) throw WindowOverflow(budget);
    if (big_abs(sum) <= window) {
      auto it = out.find(sum);
      if (it == out.end()) {
        out.emplace(sum, stack);
        if (out.size() > budget) throw WindowOverflow(budget);
      }
    }
    if (stack.size() == k) return;
    for (std::size_t i = from; i < indices.size(); ++i) {
      for (int sign : {+1, -1}) {
        stack.push_back({indices[i], sign});
        BigInt next = sign > 0 ? BigInt(sum + values[i]) : BigInt(sum - values[i]);
        rec(i, next);
        stack.pop_back();
      }
    }
  };
  rec(0, BigInt(0));
}

}  // namespace

SumsetResult sumset(const SequenceSpec& u, std::uint32_t k, const IndexSet& idx,
                    const SumsetParams& params) {
  SumsetResult res;
  res.k = k;
  res.index_set = idx;
  res.horizon = params.horizon;
  res.window = params.window;

  std::vector<std::uint64_t> indices = admitted_indices(idx, params.horizon);
  std::vector<BigInt> values;
  values.reserve(indices.size());
  for (auto n : indices) values.push_back(u.eval(n));

  std::map<BigInt, std::vector<WitnessTerm>> found;
  enumerate_sums(indices, values, k, params.window, params.budget, found);
  res.entries.reserve(found.size());
  for (auto& [v, w] : found) res.entries.push_back({v, std::move(w)});

  // completeness: a tail divisor D with D > window + (k-1)*max|u_n| rules out
  // any witness touching indices beyond the horizon (a nonzero part from
  // beyond cannot be cancelled back into the window, and a zero part is
  // redundant)
  if (auto d = u.tail_divisor(params.horizon)) {
    BigInt amax = u.max_abs_upto(params.horizon);
    if (k >= 1 && *d > params.window + BigInt(k - 1) * amax) res.complete_in_window = true;
  }
  return res;
}

std::vector<BigInt> nbhd_stage(const SequenceSpec& u, const std::vector<SetDescriptor>& chain,
                               const SumsetParams& params) {
  if (chain.empty()) return {BigInt(0)};
  for (std::size_t i = 0; i + 1 < chain.size(); ++i)
    for (std::uint64_t n = 0; n <= params.horizon; ++n)
      if (chain[i].contains(n) && !chain[i + 1].contains(n)) throw ChainNotAscending();

  std::vector<std::vector<BigInt>> factors;
  for (const auto& d : chain)
    factors.push_back(truncated_terms(u, IndexSet::off_descriptor(d), params.horizon));

  // meet in the middle: expand the two halves fully, prune only at the join
  auto expand = [&](std::size_t lo, std::size_t hi) {
    std::set<BigInt> acc{BigInt(0)};
    for (std::size_t i = lo; i < hi; ++i) {
      std::set<BigInt> next;
      for (const BigInt& a : acc)
        for (const BigInt& t : factors[i]) {
          next.insert(a + t);
          if (next.size() > params.budget) throw WindowOverflow(params.budget);
        }
      acc = std::move(next);
    }
    return std::vector<BigInt>(acc.begin(), acc.end());
  };
  std::size_t mid = chain.size() / 2;
  std::vector<BigInt> left = expand(0, mid);
  std::vector<BigInt> right = expand(mid, chain.size());

  std::set<BigInt> out;
  for (const BigInt& a : left) {
    // b in [-window - a, window - a]
    auto lo = std::lower_bound(right.begin(), right.end(), -params.window - a);
    auto hi = std::upper_bound(right.begin(), right.end(), params.window - a);
    for (auto it = lo; it != hi; ++it) {
      out.insert(a + *it);
      if (out.size() > params.budget) throw WindowOverflow(params.budget);
    }
  }
  return {out.begin(), out.end()};
}

std::optional<std::uint32_t> cover_index(const BigInt& g, const SequenceSpec& u,
                                         const IndexSet& idx, std::uint32_t max_m,
                                         const SumsetParams& params) {
  if (g == 0) return 0;  // 0-fold sumset is {0} by convention
  std::vector<std::uint64_t> indices = admitted_indices(idx, params.horizon);
  std::vector<BigInt> values;
  for (auto n : indices) values.push_back(u.eval(n));

  // sums of exactly <= t terms via two balanced halves
  auto half_sums = [&](std::uint32_t terms) {
    std::set<BigInt> acc{BigInt(0)};
    for (std::uint32_t step = 0; step < terms; ++step) {
      std::set<BigInt> next = acc;  // allow fewer terms
      for (const BigInt& a : acc)
        for (const BigInt& v : values) {
          next.insert(a + v);
          next.insert(a - v);
          if (next.size() > params.budget) throw WindowOverflow(params.budget);
        }
      acc = std::move(next);
    }
    return acc;
  };

  for (std::uint32_t t = 1; t <= max_m; ++t) {
    std::uint32_t lhs = t / 2, rhs = t - t / 2;
    std::set<BigInt> a = half_sums(lhs);
    std::set<BigInt> b = half_sums(rhs);
    for (const BigInt& x : a)
      if (b.count(g - x)) return t;
  }
  return std::nullopt;
}

}  // namespace idealtop
