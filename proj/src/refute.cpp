#include "idealtop/refute.hpp"

#include <algorithm>

#include <json.hpp>

#include "idealtop/errors.hpp"

namespace idealtop {

using nlohmann::json;

std::string RefutationCertificate::to_json() const {
  json w = json::array();
  for (const auto& wit : witnesses) {
    json terms = json::array();
    for (const auto& t : wit.terms) terms.push_back({{"index", t.index}, {"sign", t.sign}});
    w.push_back({{"m", wit.m}, {"terms", terms}});
  }
  json j{{"schema_version", 1},
         {"g", g.str()},
         {"k", k},
         {"M", M},
         {"witnesses", w}};
  return j.dump(2);
}

RefutationCertificate RefutationCertificate::from_json(const std::string& text) {
  json j = json::parse(text);
  RefutationCertificate cert;
  cert.g = BigInt(j.at("g").get<std::string>());
  cert.k = j.at("k").get<std::uint32_t>();
  cert.M = j.at("M").get<std::uint64_t>();
  for (const auto& wj : j.at("witnesses")) {
    WitnessAtTail wit;
    wit.m = wj.at("m").get<std::uint64_t>();
    for (const auto& tj : wj.at("terms"))
      wit.terms.push_back({tj.at("index").get<std::uint64_t>(), tj.at("sign").get<int>()});
    cert.witnesses.push_back(std::move(wit));
  }
  return cert;
}

std::optional<RefutationCertificate> t_refute(const SequenceSpec& u,
                                              const RefuteParams& params) {
  SumsetParams sp = params.sumset;
  if (sp.horizon < params.M) sp.horizon = params.M + 16;

  // The tail sets shrink with m, so k (.) u_M is the intersection over all
  // m <= M; its nonzero window elements are exactly the persistent candidates.
  std::vector<SumsetResult> by_k;
  for (std::uint32_t k = 1; k <= params.kmax; ++k)
    by_k.push_back(sumset(u, k, IndexSet::tail(params.M), sp));

  struct Candidate {
    BigInt g;
    std::uint32_t k;
  };
  std::vector<Candidate> candidates;
  for (const auto& e : by_k.back().entries) {
    if (e.value == 0) continue;
    std::uint32_t kmin = params.kmax;
    for (std::uint32_t k = 1; k < params.kmax; ++k)
      if (by_k[k - 1].contains(e.value)) {
        kmin = k;
        break;
      }
    candidates.push_back({e.value, kmin});
  }
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    BigInt ma = big_abs(a.g), mb = big_abs(b.g);
    if (ma != mb) return ma < mb;
    if ((a.g > 0) != (b.g > 0)) return a.g > 0;  // positive first
    return a.k < b.k;
  });
  if (candidates.empty()) return std::nullopt;

  const Candidate& best = candidates.front();
  RefutationCertificate cert;
  cert.g = best.g;
  cert.k = best.k;
  cert.M = params.M;
  for (std::uint64_t m = 0; m <= params.M; ++m) {
    SumsetResult sm = sumset(u, best.k, IndexSet::tail(m), sp);
    const SumsetEntry* e = sm.find(best.g);
    if (!e) return std::nullopt;  // cannot happen: tails only grow toward m=0
    cert.witnesses.push_back({m, e->terms});
  }
  return cert;
}

bool verify_refutation(const RefutationCertificate& cert, const SequenceSpec& u) {
  if (cert.g == 0) return false;
  if (cert.witnesses.size() != cert.M + 1) return false;
  for (std::uint64_t m = 0; m <= cert.M; ++m) {
    const auto& wit = cert.witnesses[m];
    if (wit.m != m) return false;
    if (wit.terms.size() > cert.k) return false;
    BigInt sum = 0;
    for (const auto& t : wit.terms) {
      if (t.index < m) return false;
      if (t.sign != 1 && t.sign != -1) return false;
      sum += t.sign * u.eval(t.index);
    }
    if (sum != cert.g) return false;
  }
  return true;
}

}  // namespace idealtop
