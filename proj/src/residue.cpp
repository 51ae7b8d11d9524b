#include "idealtop/residue.hpp"

#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>

#include <json.hpp>

#include "idealtop/errors.hpp"

namespace idealtop {

namespace {

using nlohmann::json;

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string cache_file_for(const CacheConfig& cache, const std::string& key) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a(key)));
  return cache.dir + "/" + buf + ".json";
}

std::optional<ResidueCycle> cache_load(const CacheConfig& cache, const std::string& key,
                                       std::uint64_t q) {
  std::ifstream in(cache_file_for(cache, key));
  if (!in) return std::nullopt;
  try {
    json j = json::parse(in);
    if (j.value("key", "") != key || j.value("q", std::uint64_t(0)) != q) return std::nullopt;
    ResidueCycle c;
    c.q = q;
    c.preperiod = j.at("preperiod").get<std::vector<std::uint64_t>>();
    c.period = j.at("period").get<std::vector<std::uint64_t>>();
    if (c.period.empty()) return std::nullopt;
    return c;
  } catch (...) {
    return std::nullopt;
  }
}

void cache_store(const CacheConfig& cache, const std::string& key, const ResidueCycle& c) {
  std::error_code ec;
  std::filesystem::create_directories(cache.dir, ec);
  json j{{"key", key}, {"q", c.q}, {"preperiod", c.preperiod}, {"period", c.period}};
  std::string final_path = cache_file_for(cache, key);
  std::string tmp = final_path + "." + std::to_string(::getpid()) + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) return;
    out << j.dump();
  }
  std::filesystem::rename(tmp, final_path, ec);  // atomic whole-file replacement
  if (ec) std::filesystem::remove(tmp, ec);
}

ResidueCycle analyze(const SequenceSpec& u, std::uint64_t q, std::uint64_t horizon);

ResidueCycle analyze_pow(const BigInt& base, std::uint64_t q) {
  std::uint64_t b = mod_floor(base, BigInt(q)).convert_to<std::uint64_t>();
  std::map<std::uint64_t, std::uint64_t> seen;
  std::vector<std::uint64_t> vals;
  std::uint64_t v = 1 % q;
  while (!seen.count(v)) {
    seen[v] = vals.size();
    vals.push_back(v);
    v = (v * b) % q;
  }
  std::uint64_t start = seen[v];
  std::vector<std::uint64_t> pre(vals.begin(), vals.begin() + start);
  std::vector<std::uint64_t> per(vals.begin() + start, vals.end());
  return canonical_cycle(q, std::move(pre), std::move(per));
}

ResidueCycle analyze_fact(std::uint64_t q) {
  std::vector<std::uint64_t> pre;
  std::uint64_t f = 1 % q;
  std::uint64_t n = 0;
  while (f != 0) {
    pre.push_back(f);
    ++n;
    f = (f * (n % q)) % q;
  }
  return canonical_cycle(q, std::move(pre), {0});
}

ResidueCycle analyze_poly(const std::vector<BigInt>& coeffs, std::uint64_t q) {
  std::vector<std::uint64_t> vals(q);
  for (std::uint64_t n = 0; n < q; ++n) {
    BigInt acc = 0;
    for (const BigInt& c : coeffs) acc = acc * n + c;
    vals[n] = mod_floor(acc, BigInt(q)).convert_to<std::uint64_t>();
  }
  return canonical_cycle(q, {}, std::move(vals));
}

ResidueCycle analyze_plant(const SequenceSpec& u, std::uint64_t q, std::uint64_t horizon) {
  const SetDescriptor& where = u.as_plant().where;
  if (!where.is_finite_class() && !where.is_periodic_class()) {
    // combos may still be eventually periodic if they carry no sparse leaf
    bool sparse_free = true;
    std::function<void(const SetDescriptor&)> walk = [&](const SetDescriptor& d) {
      if (d.is_sparse_class()) sparse_free = false;
      if (d.is_combo_class()) {
        walk(d.as_combo().lhs());
        walk(d.as_combo().rhs());
      }
    };
    walk(where);
    if (!sparse_free) throw CycleNotDetected(horizon);
  }
  ResidueCycle s = analyze(u.child(0), q, horizon);
  ResidueCycle t = analyze(u.child(1), q, horizon);

  // preamble/period of the descriptor itself
  std::uint64_t d_pre = 0, d_per = 1;
  std::function<void(const SetDescriptor&)> shape = [&](const SetDescriptor& d) {
    if (d.is_finite_class()) {
      if (!d.as_finite().elems.empty())
        d_pre = std::max(d_pre, d.as_finite().elems.back() + 1);
    } else if (d.is_periodic_class()) {
      d_pre = std::max<std::uint64_t>(d_pre, d.as_periodic().preamble.size());
      d_per = lcm_u64(d_per, d.as_periodic().period.size());
    } else if (d.is_combo_class()) {
      shape(d.as_combo().lhs());
      shape(d.as_combo().rhs());
    }
  };
  shape(where);

  std::uint64_t pre_len = std::max({s.preperiod.size(), t.preperiod.size(),
                                    static_cast<std::size_t>(d_pre)});
  std::uint64_t per_len = lcm_u64(lcm_u64(s.period.size(), t.period.size()), d_per);
  if (per_len > horizon) throw CycleNotDetected(horizon);
  std::vector<std::uint64_t> pre(pre_len), per(per_len);
  for (std::uint64_t n = 0; n < pre_len; ++n)
    pre[n] = where.contains(n) ? t.at(n) : s.at(n);
  for (std::uint64_t i = 0; i < per_len; ++i) {
    std::uint64_t n = pre_len + i;
    per[i] = where.contains(n) ? t.at(n) : s.at(n);
  }
  return canonical_cycle(q, std::move(pre), std::move(per));
}

ResidueCycle analyze(const SequenceSpec& u, std::uint64_t q, std::uint64_t horizon) {
  switch (u.tag()) {
    case SequenceSpec::Tag::Pow:
      return analyze_pow(u.as_pow().base, q);
    case SequenceSpec::Tag::Fact:
      return analyze_fact(q);
    case SequenceSpec::Tag::Poly:
      return analyze_poly(u.as_poly().coeffs, q);
    case SequenceSpec::Tag::List: {
      const auto& l = u.as_list();
      if (!l.constant_tail) throw CycleNotDetected(horizon);
      std::vector<std::uint64_t> pre;
      pre.reserve(l.values.size());
      for (const auto& v : l.values)
        pre.push_back(mod_floor(v, BigInt(q)).convert_to<std::uint64_t>());
      std::uint64_t last = pre.empty() ? 0 : pre.back();
      return canonical_cycle(q, std::move(pre), {last});
    }
    case SequenceSpec::Tag::Affine: {
      ResidueCycle c = analyze(u.child(0), q, horizon);
      std::uint64_t a = mod_floor(u.as_affine().a, BigInt(q)).convert_to<std::uint64_t>();
      std::uint64_t b = mod_floor(u.as_affine().b, BigInt(q)).convert_to<std::uint64_t>();
      for (auto& r : c.preperiod) r = (r * a + b) % q;
      for (auto& r : c.period) r = (r * a + b) % q;
      return canonical_cycle(q, std::move(c.preperiod), std::move(c.period));
    }
    case SequenceSpec::Tag::Interleave: {
      ResidueCycle s = analyze(u.child(0), q, horizon);
      ResidueCycle t = analyze(u.child(1), q, horizon);
      std::uint64_t pre_half = std::max(s.preperiod.size(), t.preperiod.size());
      std::uint64_t per_half = lcm_u64(s.period.size(), t.period.size());
      if (2 * per_half > horizon) throw CycleNotDetected(horizon);
      std::vector<std::uint64_t> pre(2 * pre_half), per(2 * per_half);
      for (std::uint64_t k = 0; k < pre_half; ++k) {
        pre[2 * k] = s.at(k);
        pre[2 * k + 1] = t.at(k);
      }
      for (std::uint64_t i = 0; i < per_half; ++i) {
        std::uint64_t k = pre_half + i;
        per[2 * i] = s.at(k);
        per[2 * i + 1] = t.at(k);
      }
      return canonical_cycle(q, std::move(pre), std::move(per));
    }
    case SequenceSpec::Tag::Plant:
      return analyze_plant(u, q, horizon);
  }
  throw Error("unreachable");
}

}  // namespace

ResidueCycle canonical_cycle(std::uint64_t q, std::vector<std::uint64_t> pre,
                             std::vector<std::uint64_t> per) {
  // minimal period
  for (std::size_t d = 1; d <= per.size(); ++d) {
    if (per.size() % d) continue;
    bool ok = true;
    for (std::size_t i = d; i < per.size() && ok; ++i) ok = per[i] == per[i % d];
    if (ok) {
      per.resize(d);
      break;
    }
  }
  while (!pre.empty() && pre.back() == per.back()) {
    pre.pop_back();
    std::rotate(per.begin(), per.end() - 1, per.end());
  }
  ResidueCycle c;
  c.q = q;
  c.preperiod = std::move(pre);
  c.period = std::move(per);
  return c;
}

CacheConfig CacheConfig::from_environment() {
  CacheConfig c;
  if (const char* dir = std::getenv("IDEALTOP_CACHE_DIR")) {
    c.dir = dir;
    c.enabled = !c.dir.empty();
  }
  return c;
}

ResidueCycle residue_analysis(const SequenceSpec& u, std::uint64_t q, std::uint64_t horizon,
                              const CacheConfig& cache) {
  if (q < 2) throw Error("modulus must be >= 2");
  std::string key;
  if (cache.enabled) {
    key = u.cache_key() + "%" + std::to_string(q);
    if (auto hit = cache_load(cache, key, q)) return *hit;
  }
  ResidueCycle c = analyze(u, q, horizon);
  if (cache.enabled) cache_store(cache, key, c);
  return c;
}

}  // namespace idealtop
