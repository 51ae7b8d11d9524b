#include "idealtop/convergence.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <set>

#include "idealtop/errors.hpp"

namespace idealtop {

namespace {

SetDescriptor descriptor_from_bits(const std::vector<bool>& pre, const std::vector<bool>& per) {
  // collapse eventually-zero cycles into Finite descriptors
  bool tail_zero = std::none_of(per.begin(), per.end(), [](bool b) { return b; });
  if (tail_zero) {
    std::vector<std::uint64_t> elems;
    for (std::uint64_t n = 0; n < pre.size(); ++n)
      if (pre[n]) elems.push_back(n);
    return SetDescriptor::finite(std::move(elems));
  }
  return SetDescriptor::periodic(pre, per);
}

}  // namespace

std::uint32_t CircleValueCycle::sufficient_k() const {
  Rational min_norm = 1;
  bool any_nonzero = false;
  auto consider = [&](const CirclePoint& p) {
    if (!p.is_zero()) {
      any_nonzero = true;
      min_norm = std::min(min_norm, p.norm());
    }
  };
  for (const auto& p : preperiod) consider(p);
  for (const auto& p : period) consider(p);
  if (!any_nonzero) return 1;
  // least k with 1/(4k) < min_norm, i.e. every nonzero value violates T_k
  BigInt num = boost::multiprecision::numerator(min_norm);
  BigInt den = boost::multiprecision::denominator(min_norm);
  BigInt k = floor_div(den, 4 * num) + 1;
  if (k < 1) k = 1;
  return k.convert_to<std::uint32_t>();
}

SetDescriptor CircleValueCycle::exception_set(std::uint32_t k) const {
  std::vector<bool> pre, per;
  pre.reserve(preperiod.size());
  per.reserve(period.size());
  for (const auto& p : preperiod) pre.push_back(!p.in_Tk(k));
  for (const auto& p : period) per.push_back(!p.in_Tk(k));
  return descriptor_from_bits(pre, per);
}

SetDescriptor CircleValueCycle::nonzero_set() const {
  std::vector<bool> pre, per;
  for (const auto& p : preperiod) pre.push_back(!p.is_zero());
  for (const auto& p : period) per.push_back(!p.is_zero());
  return descriptor_from_bits(pre, per);
}

CircleValueCycle circle_values(const SequenceSpec& u, const CirclePoint& x,
                               const IconvParams& params) {
  CircleValueCycle out;
  if (x.is_zero()) {
    out.period = {CirclePoint()};
    return out;
  }
  std::uint64_t q = x.denominator().convert_to<std::uint64_t>();
  ResidueCycle cyc = residue_analysis(u, q, params.horizon, params.cache);
  BigInt p = x.numerator();
  auto value_of = [&](std::uint64_t r) {
    return CirclePoint::from_fraction(BigInt(r) * p, BigInt(q));
  };
  for (auto r : cyc.preperiod) out.preperiod.push_back(value_of(r));
  for (auto r : cyc.period) out.period.push_back(value_of(r));
  return out;
}

SetDescriptor exception_set(const SequenceSpec& u, const CirclePoint& x, std::uint32_t k,
                            const IconvParams& params) {
  if (is_sparse_plant(u)) {
    const SetDescriptor& where = u.as_plant().where;
    SetDescriptor es = exception_set(u.child(0), x, k, params);
    SetDescriptor et = exception_set(u.child(1), x, k, params);
    return SetDescriptor::combo(
        ComboOp::Union, SetDescriptor::combo(ComboOp::Inter, where, std::move(et)),
        SetDescriptor::combo(ComboOp::Diff, std::move(es), where));
  }
  return circle_values(u, x, params).exception_set(k);
}

ExceptionFamily ExceptionFamily::from_cycle(const CircleValueCycle& cyc) {
  ExceptionFamily out;
  out.sufficient_k = cyc.sufficient_k();
  out.at = [cyc](std::uint32_t k) { return cyc.exception_set(k); };
  out.nonzero = cyc.nonzero_set();
  return out;
}

ExceptionFamily ExceptionFamily::plant(const SetDescriptor& where, ExceptionFamily s,
                                       ExceptionFamily t) {
  ExceptionFamily out;
  out.sufficient_k = std::max(s.sufficient_k, t.sufficient_k);
  auto combine = [where](SetDescriptor a, SetDescriptor b) {
    return SetDescriptor::combo(
        ComboOp::Union, SetDescriptor::combo(ComboOp::Inter, where, std::move(b)),
        SetDescriptor::combo(ComboOp::Diff, std::move(a), where));
  };
  out.at = [s, t, combine](std::uint32_t k) { return combine(s.at(k), t.at(k)); };
  out.nonzero = combine(s.nonzero, t.nonzero);
  return out;
}

namespace {

ExceptionFamily exception_family(const SequenceSpec& u, const CirclePoint& x,
                                 const IconvParams& params) {
  if (is_sparse_plant(u)) {
    ExceptionFamily s = exception_family(u.child(0), x, params);
    ExceptionFamily t = exception_family(u.child(1), x, params);
    return ExceptionFamily::plant(u.as_plant().where, std::move(s), std::move(t));
  }
  return ExceptionFamily::from_cycle(circle_values(u, x, params));
}

}  // namespace

Verdict verdict_from_family(const ExceptionFamily& fam, const IdealSpec& ideal,
                            std::uint32_t kmax) {
  Verdict v;
  v.sufficient_k = fam.sufficient_k;

  // Every E_k is contained in the set of indices with nonzero value, and the
  // two coincide from the sufficient scale on. Membership of the limit set in
  // a (subset-closed) ideal therefore settles all scales at once.
  IdealVerdict limit = ideal_member(ideal, fam.nonzero);
  if (limit.outcome == VerdictOutcome::In) {
    v.outcome = VerdictOutcome::In;
    v.cert = Verdict::CertKind::ExceptionSets;
    std::uint32_t upto = std::min(fam.sufficient_k, kmax);
    for (std::uint32_t k = 1; k <= upto; ++k) {
      SetDescriptor ek = fam.at(k);
      v.exception_sets.push_back({k, ek, ideal_member(ideal, ek)});
    }
    v.note = "limit exception set in the ideal: " + limit.reason;
    return v;
  }
  if (limit.outcome == VerdictOutcome::Out) {
    for (std::uint32_t k = 1; k <= fam.sufficient_k; ++k) {
      SetDescriptor ek = fam.at(k);
      IdealVerdict w = ideal_member(ideal, ek);
      if (w.outcome == VerdictOutcome::Out) {
        v.outcome = VerdictOutcome::Out;
        v.cert = Verdict::CertKind::OutWitness;
        v.witness_k = k;
        v.witness_set = ek;
        v.witness_upper_density = ek.density().upper;
        v.witness_cardinality = ek.cardinality().card;
        v.note = w.reason;
        return v;
      }
      if (w.outcome == VerdictOutcome::Undecided) break;
    }
    v.outcome = VerdictOutcome::Out;
    v.cert = Verdict::CertKind::OutWitness;
    v.witness_k = fam.sufficient_k;
    v.witness_set = fam.nonzero;
    v.witness_upper_density = fam.nonzero.density().upper;
    v.witness_cardinality = fam.nonzero.cardinality().card;
    v.note = limit.reason;
    return v;
  }
  v.outcome = VerdictOutcome::Undecided;
  v.cert = Verdict::CertKind::HorizonLimit;
  v.note = "ideal membership undecided: " + limit.reason;
  return v;
}

Verdict verdict_from_cycle(const CircleValueCycle& cyc, const IdealSpec& ideal,
                           std::uint32_t kmax) {
  return verdict_from_family(ExceptionFamily::from_cycle(cyc), ideal, kmax);
}

Verdict iconverges(const SequenceSpec& u, const CirclePoint& x, const IdealSpec& ideal,
                   const IconvParams& params) {
  Verdict v;
  ExceptionFamily fam;
  try {
    fam = exception_family(u, x, params);
  } catch (const CycleNotDetected& e) {
    v.outcome = VerdictOutcome::Undecided;
    v.cert = Verdict::CertKind::HorizonLimit;
    v.note = e.what();
    return v;
  } catch (const HorizonLimit& e) {
    v.outcome = VerdictOutcome::Undecided;
    v.cert = Verdict::CertKind::HorizonLimit;
    v.note = e.what();
    return v;
  }
  return verdict_from_family(fam, ideal, params.kmax);
}

Verdict iconverges_numeric(const SequenceSpec& u, const ApproxCirclePoint& x,
                           const IdealSpec& ideal, std::uint64_t samples) {
  (void)ideal;
  Verdict v;
  v.outcome = VerdictOutcome::Undecided;
  v.cert = Verdict::CertKind::HorizonLimit;
  std::uint64_t undecided = 0, inside = 0, outside = 0;
  for (std::uint64_t n = 0; n < samples; ++n) {
    BigInt un;
    try {
      un = u.eval(n);
    } catch (const HorizonLimit&) {
      break;
    }
    // interval for u_n * x mod 1: the error bound scales with |u_n|
    double scaled_eps = x.eps * std::abs(un.convert_to<double>());
    if (!(scaled_eps < 0.5)) {
      ++undecided;
      continue;
    }
    double frac = boost::multiprecision::cpp_rational(un).convert_to<double>() * x.value;
    frac -= std::floor(frac);
    ApproxCirclePoint pt(frac, std::max(scaled_eps, x.eps));
    switch (pt.in_Tk(1)) {
      case TriBool::True: ++inside; break;
      case TriBool::False: ++outside; break;
      default: ++undecided;
    }
  }
  v.note = "numeric path is prefix-sampled only: inside=" + std::to_string(inside) +
           " outside=" + std::to_string(outside) + " undecided=" + std::to_string(undecided);
  return v;
}

SetDescriptor extract_convergent_cofinite(const SequenceSpec& u, const CirclePoint& x,
                                          const IconvParams& params) {
  Verdict v = iconverges(u, x, IdealSpec::density(), params);
  if (v.outcome == VerdictOutcome::Out) throw NoExtraction();
  if (v.outcome == VerdictOutcome::Undecided) throw HorizonLimit("verdict undecided");

  ExceptionFamily fam = exception_family(u, x, params);
  SetDescriptor limit = fam.nonzero;
  CardinalityReport rep = limit.cardinality();
  SetDescriptor j =
      (rep.card == Cardinality::Empty || rep.card == Cardinality::Finite)
          ? SetDescriptor::empty()  // already convergent in the classical sense
          : limit;

  // machine-check the contract before handing the descriptor out
  if (j.density().upper != 0) throw Error("extracted set must have density zero");
  for (std::uint32_t k = 1; k <= fam.sufficient_k; ++k) {
    SetDescriptor residue = SetDescriptor::combo(ComboOp::Diff, fam.at(k), j);
    CardinalityReport r = residue.cardinality();
    if (r.card == Cardinality::Infinite || r.card == Cardinality::Unknown)
      throw Error("extraction left an infinite exception set at scale " + std::to_string(k));
  }
  return j;
}

bool verify_verdict(const Verdict& v, const SequenceSpec& u, const CirclePoint& x,
                    const IdealSpec& ideal, std::uint64_t samples) {
  if (v.outcome == VerdictOutcome::Undecided) return true;  // nothing to certify
  std::mt19937_64 rng(0x1dea1709u);
  std::uniform_int_distribution<std::uint64_t> pick(0, 4096);
  auto check_one = [&](std::uint32_t k, const SetDescriptor& stored) {
    for (std::uint64_t i = 0; i < samples; ++i) {
      std::uint64_t n = pick(rng);
      CirclePoint value = CirclePoint::from_rational(Rational(u.eval(n)) * x.value());
      bool violates = !value.in_Tk(k);
      if (violates != stored.contains(n)) return false;
    }
    return true;
  };
  if (v.cert == Verdict::CertKind::ExceptionSets) {
    for (const auto& er : v.exception_sets) {
      if (!check_one(er.k, er.set)) return false;
      if (ideal_member(ideal, er.set).outcome != VerdictOutcome::In) return false;
    }
    return true;
  }
  if (v.cert == Verdict::CertKind::OutWitness) {
    if (!v.witness_set) return false;
    if (!check_one(v.witness_k, *v.witness_set)) return false;
    return ideal_member(ideal, *v.witness_set).outcome == VerdictOutcome::Out;
  }
  return false;
}

}  // namespace idealtop
