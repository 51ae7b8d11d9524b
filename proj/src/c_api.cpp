#include "idealtop.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include <json.hpp>

#include "idealtop/charsub.hpp"
#include "idealtop/convergence.hpp"
#include "idealtop/errors.hpp"
#include "idealtop/ideal.hpp"
#include "idealtop/refute.hpp"
#include "idealtop/sumset.hpp"

using json = nlohmann::json;
using namespace idealtop;

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

idealtop_status status_of(const std::exception& e) {
  g_last_error = e.what();
  if (dynamic_cast<const ParseError*>(&e)) return IDEALTOP_ERR_PARSE;
  if (dynamic_cast<const ZeroDenominator*>(&e)) return IDEALTOP_ERR_DOMAIN;
  if (dynamic_cast<const ShapeMismatch*>(&e)) return IDEALTOP_ERR_DOMAIN;
  if (dynamic_cast<const CycleNotDetected*>(&e)) return IDEALTOP_ERR_CYCLE;
  if (dynamic_cast<const WindowOverflow*>(&e)) return IDEALTOP_ERR_BUDGET;
  if (dynamic_cast<const ChainNotAscending*>(&e)) return IDEALTOP_ERR_CHAIN;
  if (dynamic_cast<const GroupTooLarge*>(&e)) return IDEALTOP_ERR_TOO_LARGE;
  if (dynamic_cast<const NoExtraction*>(&e)) return IDEALTOP_ERR_NO_EXTRACT;
  if (dynamic_cast<const HorizonLimit*>(&e)) return IDEALTOP_ERR_HORIZON;
  if (dynamic_cast<const DescriptorTooComplex*>(&e)) return IDEALTOP_ERR_BUDGET;
  if (dynamic_cast<const IoError*>(&e)) return IDEALTOP_ERR_IO;
  return IDEALTOP_ERR_INTERNAL;
}

template <typename F>
idealtop_status guarded(F&& f) {
  try {
    return f();
  } catch (const std::exception& e) {
    return status_of(e);
  } catch (...) {
    g_last_error = "unknown failure";
    return IDEALTOP_ERR_INTERNAL;
  }
}

IconvParams iconv_params(const idealtop_params* p) {
  IconvParams out;
  if (!p) return out;
  out.kmax = p->kmax;
  out.horizon = p->horizon;
  if (p->no_cache) {
    out.cache = CacheConfig::disabled();
  } else if (p->cache_dir && *p->cache_dir) {
    out.cache.dir = p->cache_dir;
    out.cache.enabled = true;
  } else {
    out.cache = CacheConfig::from_environment();
  }
  return out;
}

SumsetParams sumset_params(const idealtop_params* p) {
  SumsetParams out;
  if (!p) return out;
  out.horizon = p->horizon;
  out.window = BigInt(p->window);
  out.budget = p->budget;
  return out;
}

const char* outcome_name(VerdictOutcome o) {
  switch (o) {
    case VerdictOutcome::In: return "in";
    case VerdictOutcome::Out: return "out";
    default: return "undecided";
  }
}

const char* card_name(Cardinality c) {
  switch (c) {
    case Cardinality::Empty: return "empty";
    case Cardinality::Finite: return "finite";
    case Cardinality::Infinite: return "infinite";
    default: return "unknown";
  }
}

json verdict_json(const Verdict& v) {
  json j;
  j["outcome"] = outcome_name(v.outcome);
  j["sufficient_k"] = v.sufficient_k;
  j["note"] = v.note;
  switch (v.cert) {
    case Verdict::CertKind::ExceptionSets: {
      j["certificate"]["kind"] = "exception-sets";
      json sets = json::array();
      for (const auto& er : v.exception_sets)
        sets.push_back({{"k", er.k},
                        {"set", er.set.str()},
                        {"verdict", outcome_name(er.verdict.outcome)},
                        {"reason", er.verdict.reason}});
      j["certificate"]["sets"] = sets;
      break;
    }
    case Verdict::CertKind::OutWitness:
      j["certificate"]["kind"] = "out-witness";
      j["certificate"]["k"] = v.witness_k;
      if (v.witness_set) j["certificate"]["set"] = v.witness_set->str();
      j["certificate"]["upper_density"] = to_string(v.witness_upper_density);
      j["certificate"]["cardinality"] = card_name(v.witness_cardinality);
      break;
    default:
      j["certificate"]["kind"] = "horizon-limit";
  }
  return j;
}

json envelope(const char* op, json result) {
  return json{{"schema_version", 1}, {"tool", "idealtop"}, {"op", op},
              {"result", std::move(result)}};
}

}  // namespace

struct idealtop_seq {
  SequenceSpec spec;
};
struct idealtop_descriptor {
  SetDescriptor desc;
};
struct idealtop_ideal {
  IdealSpec spec;
};

extern "C" {

void idealtop_params_init(idealtop_params* p) {
  p->kmax = 8;
  p->m = 30;
  p->horizon = 64;
  p->window = 1000;
  p->qmax = 20;
  p->nmax = 10;
  p->budget = 10'000'000;
  p->no_cache = 0;
  p->cache_dir = nullptr;
}

const char* idealtop_version(void) { return "0.1.0"; }

const char* idealtop_last_error(void) { return g_last_error.c_str(); }

void idealtop_string_free(char* s) { std::free(s); }

idealtop_status idealtop_seq_parse(const char* text, idealtop_seq** out) {
  return guarded([&] {
    *out = new idealtop_seq{SequenceSpec::parse(text)};
    return IDEALTOP_OK;
  });
}

void idealtop_seq_free(idealtop_seq* s) { delete s; }

idealtop_status idealtop_seq_str(const idealtop_seq* s, char** out) {
  return guarded([&] {
    *out = dup_string(s->spec.str());
    return IDEALTOP_OK;
  });
}

idealtop_status idealtop_descriptor_parse(const char* text, idealtop_descriptor** out) {
  return guarded([&] {
    *out = new idealtop_descriptor{SetDescriptor::parse(text)};
    return IDEALTOP_OK;
  });
}

void idealtop_descriptor_free(idealtop_descriptor* d) { delete d; }

idealtop_status idealtop_descriptor_str(const idealtop_descriptor* d, char** out) {
  return guarded([&] {
    *out = dup_string(d->desc.str());
    return IDEALTOP_OK;
  });
}

idealtop_status idealtop_ideal_parse(const char* text, idealtop_ideal** out) {
  return guarded([&] {
    *out = new idealtop_ideal{IdealSpec::parse(text)};
    return IDEALTOP_OK;
  });
}

void idealtop_ideal_free(idealtop_ideal* i) { delete i; }

idealtop_status idealtop_member(const idealtop_seq* u, const char* point,
                                const idealtop_ideal* ideal, const idealtop_params* p,
                                idealtop_verdict* verdict, char** json_out) {
  return guarded([&] {
    Verdict v;
    std::string pt(point);
    std::size_t tilde = pt.find('~');
    if (tilde != std::string::npos) {
      double value = std::stod(pt.substr(0, tilde));
      double eps = std::stod(pt.substr(tilde + 1));
      v = iconverges_numeric(u->spec, ApproxCirclePoint(value, eps), ideal->spec);
    } else {
      v = member_circle(u->spec, CirclePoint::parse(pt), ideal->spec, iconv_params(p));
    }
    if (verdict) *verdict = static_cast<idealtop_verdict>(v.outcome);
    if (json_out) {
      json j = verdict_json(v);
      j["point"] = pt;
      j["seq"] = u->spec.str();
      j["ideal"] = ideal->spec.str();
      *json_out = dup_string(envelope("member", j).dump(2));
    }
    return IDEALTOP_OK;
  });
}

idealtop_status idealtop_member_finite(const idealtop_seq* const* coord_seqs, size_t ncoords,
                                       const char* element, const idealtop_ideal* ideal,
                                       const idealtop_params* p, idealtop_verdict* verdict,
                                       char** json_out) {
  return guarded([&] {
    GroupElement x = GroupElement::parse_finite_ab(element);
    FiniteAbSequence u;
    u.shape = x.as_finite_ab().shape;
    for (size_t i = 0; i < ncoords; ++i) u.coords.push_back(coord_seqs[i]->spec);
    Verdict v = member_finite(u, x.as_finite_ab(), ideal->spec, iconv_params(p));
    if (verdict) *verdict = static_cast<idealtop_verdict>(v.outcome);
    if (json_out) {
      json j = verdict_json(v);
      j["element"] = element;
      j["seq"] = u.str();
      j["ideal"] = ideal->spec.str();
      *json_out = dup_string(envelope("member-finite", j).dump(2));
    }
    return IDEALTOP_OK;
  });
}

idealtop_status idealtop_extract(const idealtop_seq* u, const char* point,
                                 const idealtop_params* p, char** json_out) {
  return guarded([&] {
    CirclePoint x = CirclePoint::parse(point);
    SetDescriptor j = extract_convergent_cofinite(u->spec, x, iconv_params(p));
    json r{{"descriptor", j.str()},
           {"upper_density", to_string(j.density().upper)},
           {"cardinality", card_name(j.cardinality().card)}};
    *json_out = dup_string(envelope("extract", r).dump(2));
    return IDEALTOP_OK;
  });
}

idealtop_status idealtop_density(const idealtop_descriptor* d, char** json_out) {
  return guarded([&] {
    DensityBounds b = d->desc.density();
    json r{{"descriptor", d->desc.str()},
           {"lower", to_string(b.lower)},
           {"upper", to_string(b.upper)},
           {"exact", b.exact}};
    *json_out = dup_string(envelope("density", r).dump(2));
    return IDEALTOP_OK;
  });
}

idealtop_status idealtop_exh(const char* submeasure, const idealtop_descriptor* d,
                             const idealtop_params* p, idealtop_verdict* verdict,
                             char** json_out) {
  return guarded([&] {
    Submeasure phi;
    std::string name(submeasure ? submeasure : "density");
    if (name == "density")
      phi = Submeasure::density();
    else if (name == "support")
      phi = Submeasure::support();
    else
      throw ParseError(0, "submeasure: density | support");
    IdealVerdict v = exh_member(phi, d->desc, p ? p->horizon : 4096);
    if (verdict) *verdict = static_cast<idealtop_verdict>(v.outcome);
    if (json_out) {
      json r{{"descriptor", d->desc.str()},
             {"submeasure", name},
             {"outcome", outcome_name(v.outcome)},
             {"reason", v.reason}};
      *json_out = dup_string(envelope("exh", r).dump(2));
    }
    return IDEALTOP_OK;
  });
}

idealtop_status idealtop_ideal_member(const idealtop_ideal* ideal, const idealtop_descriptor* d,
                                      idealtop_verdict* verdict, char** json_out) {
  return guarded([&] {
    IdealVerdict v = ideal_member(ideal->spec, d->desc);
    if (verdict) *verdict = static_cast<idealtop_verdict>(v.outcome);
    if (json_out) {
      json r{{"descriptor", d->desc.str()},
             {"ideal", ideal->spec.str()},
             {"outcome", outcome_name(v.outcome)},
             {"reason", v.reason}};
      *json_out = dup_string(envelope("ideal-member", r).dump(2));
    }
    return IDEALTOP_OK;
  });
}

idealtop_status idealtop_refute_t(const idealtop_seq* u, const idealtop_params* p, int* found,
                                  char** cert_json) {
  return guarded([&] {
    RefuteParams rp;
    if (p) {
      rp.kmax = p->kmax;
      rp.M = p->m;
      rp.sumset = sumset_params(p);
    }
    auto cert = t_refute(u->spec, rp);
    if (found) *found = cert ? 1 : 0;
    if (cert_json) {
      if (cert) {
        *cert_json = dup_string(cert->to_json());
      } else {
        json r{{"schema_version", 1},
               {"found", false},
               {"note", "no persistent element within the bounds; horizon-relative only"}};
        *cert_json = dup_string(r.dump(2));
      }
    }
    return IDEALTOP_OK;
  });
}

idealtop_status idealtop_verify_cert(const idealtop_seq* u, const char* cert_json, int* valid) {
  return guarded([&] {
    RefutationCertificate cert = RefutationCertificate::from_json(cert_json);
    *valid = verify_refutation(cert, u->spec) ? 1 : 0;
    return IDEALTOP_OK;
  });
}

idealtop_status idealtop_nbhd(const idealtop_seq* u, const char* const* chain, size_t nchain,
                              const idealtop_params* p, char** json_out) {
  return guarded([&] {
    std::vector<SetDescriptor> descs;
    for (size_t i = 0; i < nchain; ++i) descs.push_back(SetDescriptor::parse(chain[i]));
    std::vector<BigInt> stage = nbhd_stage(u->spec, descs, sumset_params(p));
    json elems = json::array();
    for (const auto& v : stage) elems.push_back(v.str());
    json r{{"seq", u->spec.str()}, {"stage_size", stage.size()}, {"elements", elems}};
    *json_out = dup_string(envelope("nbhd", r).dump(2));
    return IDEALTOP_OK;
  });
}

idealtop_status idealtop_cover(const idealtop_seq* u, const char* g,
                               const idealtop_descriptor* excluded, const idealtop_params* p,
                               int64_t* m_out, char** json_out) {
  return guarded([&] {
    BigInt target(g);
    IndexSet idx = excluded ? IndexSet::off_descriptor(excluded->desc) : IndexSet::tail(0);
    std::uint32_t max_m = p ? static_cast<std::uint32_t>(p->m) : 8;
    auto m = cover_index(target, u->spec, idx, max_m, sumset_params(p));
    if (m_out) *m_out = m ? static_cast<int64_t>(*m) : -1;
    if (json_out) {
      json r{{"g", g}, {"seq", u->spec.str()}, {"index_set", idx.str()}};
      if (m)
        r["m"] = *m;
      else
        r["not_covered"] = true;
      *json_out = dup_string(envelope("cover", r).dump(2));
    }
    return IDEALTOP_OK;
  });
}

idealtop_status idealtop_tb_scan(const idealtop_seq* u, const idealtop_ideal* ideal,
                                 const idealtop_params* p, int* evidence, char** json_out) {
  return guarded([&] {
    std::uint64_t qmax = p ? p->qmax : 20;
    TbEvidenceReport rep = tb_evidence(u->spec, ideal->spec, qmax, iconv_params(p));
    if (evidence) *evidence = rep.infinite_subgroup_evidence ? 1 : 0;
    if (json_out) {
      json members = json::array();
      for (const auto& m : rep.members.circle_members) members.push_back(m.str());
      json rows = json::array();
      for (const auto& row : rep.rows)
        rows.push_back({{"point", row.point.str()},
                        {"verdict", outcome_name(row.outcome)},
                        {"certificate_kind", row.certificate_kind},
                        {"witness_k", row.witness_k}});
      json r{{"seq", u->spec.str()},
             {"ideal", ideal->spec.str()},
             {"qmax", qmax},
             {"members", members},
             {"largest_order", rep.largest_order},
             {"infinite_subgroup_evidence", rep.infinite_subgroup_evidence},
             {"rows", rows}};
      *json_out = dup_string(envelope("tb-scan", r).dump(2));
    }
    return IDEALTOP_OK;
  });
}

idealtop_status idealtop_scan_finite(const char* orders, const idealtop_seq* const* coord_seqs,
                                     size_t ncoords, const idealtop_ideal* ideal,
                                     const idealtop_params* p, char** json_out) {
  return guarded([&] {
    FiniteAbSequence u;
    u.shape = FiniteAbShape::parse(orders);
    for (size_t i = 0; i < ncoords; ++i) u.coords.push_back(coord_seqs[i]->spec);
    std::uint64_t bound = 4096;
    FiniteScanReport rep = subgroup_scan_finite(u, ideal->spec, bound, iconv_params(p));
    const CharacterFamily& fam = rep.family;
    json members = json::array();
    for (const auto& e : fam.finite_members) members.push_back(GroupElement(e).str());
    json rows = json::array();
    for (const auto& row : rep.rows)
      rows.push_back({{"point", GroupElement(row.element).str()},
                      {"verdict", outcome_name(row.outcome)},
                      {"certificate_kind", row.certificate_kind},
                      {"witness_k", row.witness_k}});
    json r{{"shape", fam.group},
           {"members", members},
           {"provenance", {{"seq", fam.seq}, {"ideal", fam.ideal}, {"bounds", fam.bound}}},
           {"rows", rows}};
    *json_out = dup_string(envelope("scan-finite", r).dump(2));
    return IDEALTOP_OK;
  });
}

idealtop_status idealtop_fsd(const idealtop_seq* u, const char* point, const char* submeasure,
                             const idealtop_params* p, int* consistent,
                             idealtop_verdict* direct, char** json_out) {
  return guarded([&] {
    CirclePoint x = CirclePoint::parse(point);
    std::string name(submeasure ? submeasure : "density");
    Submeasure phi = name == "support" ? Submeasure::support() : Submeasure::density();
    FsdDepth depth;
    if (p) {
      depth.kmax = p->kmax;
      depth.mmax = static_cast<std::uint32_t>(p->m);
      depth.nmax = p->nmax;
      depth.jmax = p->horizon;
    }
    FsdReport rep = fsd_consistency(u->spec, x, phi, depth, iconv_params(p));
    if (consistent) *consistent = rep.consistent ? 1 : 0;
    if (direct) *direct = static_cast<idealtop_verdict>(rep.direct);
    if (json_out) {
      json r{{"seq", u->spec.str()},
             {"point", x.str()},
             {"submeasure", name},
             {"direct", outcome_name(rep.direct)},
             {"truncation_passes", rep.truncation_passes},
             {"consistent", rep.consistent}};
      if (rep.failing_cell)
        r["failing_cell"] = {{"k", rep.failing_cell->first}, {"m", rep.failing_cell->second}};
      *json_out = dup_string(envelope("fsd", r).dump(2));
    }
    return IDEALTOP_OK;
  });
}

}  // extern "C"
