#include "idealtop/ideal.hpp"

#include <algorithm>
#include <random>

#include "idealtop/errors.hpp"

namespace idealtop {

Submeasure Submeasure::density() {
  Submeasure phi;
  phi.name = "density";
  phi.total_bound = 1;
  phi.eval = [](const std::vector<std::uint64_t>& f) -> Rational {
    Rational best = 0;
    for (std::size_t i = 0; i < f.size(); ++i) {
      // the maximum of |F cap [0,n]|/(n+1) is attained at elements of F
      Rational v(BigInt(i + 1), BigInt(f[i]) + 1);
      best = std::max(best, v);
    }
    return best;
  };
  phi.tail_vanishes = [](const SetDescriptor& a) -> std::optional<bool> {
    // tail values converge to the upper density of the set; evaluate it on an
    // actual tail so the decision exercises the tail construction
    DensityBounds d = a.tail_from(16).density();
    if (!d.exact) return std::nullopt;
    return d.upper == 0;
  };
  return phi;
}

Submeasure Submeasure::support() {
  Submeasure phi;
  phi.name = "support";
  phi.total_bound = 1;
  phi.eval = [](const std::vector<std::uint64_t>& f) -> Rational {
    return f.empty() ? Rational(0) : Rational(1);
  };
  phi.tail_vanishes = [](const SetDescriptor& a) -> std::optional<bool> {
    CardinalityReport rep = a.cardinality();
    switch (rep.card) {
      case Cardinality::Empty:
      case Cardinality::Finite:
        return true;
      case Cardinality::Infinite:
        return false;
      default:
        return std::nullopt;
    }
  };
  return phi;
}

Rational submeasure_eval(const Submeasure& phi, const std::vector<std::uint64_t>& finite_set) {
  std::vector<std::uint64_t> sorted = finite_set;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  return phi.eval(sorted);
}

bool check_submeasure_laws(const Submeasure& phi, std::uint64_t cases, std::uint64_t universe,
                           std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> point(0, universe - 1);
  std::uniform_int_distribution<int> size(0, 12);
  auto random_set = [&] {
    std::vector<std::uint64_t> s;
    int k = size(rng);
    for (int i = 0; i < k; ++i) s.push_back(point(rng));
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
  };
  if (phi.eval({}) != 0) return false;
  for (std::uint64_t i = 0; i < cases; ++i) {
    auto a = random_set();
    auto b = random_set();
    std::vector<std::uint64_t> uni, sub;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(uni));
    std::sample(a.begin(), a.end(), std::back_inserter(sub), a.size() / 2, rng);
    std::sort(sub.begin(), sub.end());
    Rational pa = phi.eval(a), pb = phi.eval(b);
    if (phi.eval(sub) > pa) return false;              // monotone under subsets
    if (phi.eval(uni) > pa + pb) return false;         // subadditive
    if (pa > phi.total_bound || pb < 0) return false;  // bounded and nonnegative
  }
  return true;
}

IdealSpec IdealSpec::fin() { return IdealSpec{Kind::Fin, nullptr, nullptr}; }
IdealSpec IdealSpec::density() { return IdealSpec{Kind::Density, nullptr, nullptr}; }
IdealSpec IdealSpec::summable_harmonic() {
  return IdealSpec{Kind::SummableHarmonic, nullptr, nullptr};
}
IdealSpec IdealSpec::exhaustive(Submeasure phi) {
  IdealSpec s;
  s.kind = Kind::Exhaustive;
  s.phi = std::make_shared<Submeasure>(std::move(phi));
  return s;
}
IdealSpec IdealSpec::powerset(SetDescriptor base) {
  IdealSpec s;
  s.kind = Kind::Powerset;
  s.base = std::make_shared<SetDescriptor>(std::move(base));
  // the powerset of a fixed set is not free and need not be proper
  s.declared_free = false;
  s.declared_p_ideal = true;
  return s;
}

std::string IdealSpec::str() const {
  switch (kind) {
    case Kind::Fin: return "fin";
    case Kind::Density: return "density";
    case Kind::SummableHarmonic: return "summable:harmonic";
    case Kind::Exhaustive: return "exh:" + (phi ? phi->name : "?");
    case Kind::Powerset: return "powerset(" + base->str() + ")";
  }
  return "?";
}

IdealSpec IdealSpec::parse(const std::string& text) {
  if (text == "fin") return fin();
  if (text == "density") return density();
  if (text == "summable:harmonic") return summable_harmonic();
  if (text == "exh:density") return exhaustive(Submeasure::density());
  if (text == "exh:support") return exhaustive(Submeasure::support());
  if (text.rfind("powerset(", 0) == 0 && text.back() == ')') {
    SetDescriptor d = SetDescriptor::parse(text.substr(9, text.size() - 10));
    return powerset(std::move(d));
  }
  throw ParseError(0, "ideal: fin | density | summable:harmonic | exh:density | powerset(...)");
}

namespace {

IdealVerdict from_cardinality(const CardinalityReport& rep) {
  IdealVerdict v;
  switch (rep.card) {
    case Cardinality::Empty:
    case Cardinality::Finite:
      v.outcome = VerdictOutcome::In;
      v.reason = "finite set";
      break;
    case Cardinality::Infinite:
      v.outcome = VerdictOutcome::Out;
      v.reason = "infinite set: " + rep.note;
      break;
    default:
      v.outcome = VerdictOutcome::Undecided;
      v.reason = rep.note;
  }
  return v;
}

}  // namespace

IdealVerdict ideal_member(const IdealSpec& ideal, const SetDescriptor& set) {
  IdealVerdict v;
  switch (ideal.kind) {
    case IdealSpec::Kind::Fin:
      return from_cardinality(set.cardinality());
    case IdealSpec::Kind::Density: {
      DensityBounds d = set.density();
      if (!d.exact) {
        v.outcome = VerdictOutcome::Undecided;
        v.reason = "density bounds not exact";
        return v;
      }
      v.outcome = d.upper == 0 ? VerdictOutcome::In : VerdictOutcome::Out;
      v.reason = "upper density " + to_string(d.upper);
      return v;
    }
    case IdealSpec::Kind::SummableHarmonic: {
      // sum over A of 1/(n+1): diverges exactly when the periodic skeleton is
      // nonempty (sparse corrections have convergent harmonic mass)
      DensityBounds d = set.density();
      if (d.upper > 0) {
        v.outcome = VerdictOutcome::Out;
        v.reason = "harmonic series over a positive-density set diverges";
        return v;
      }
      CardinalityReport rep = set.cardinality();
      if (rep.card == Cardinality::Unknown) {
        // finite-vs-infinite is open, but summability only needs the skeleton:
        // every sparse family has convergent harmonic mass
        v.outcome = VerdictOutcome::In;
        v.reason = "harmonic tail bounded by convergent sparse families";
        return v;
      }
      v.outcome = VerdictOutcome::In;
      v.reason = rep.card == Cardinality::Infinite
                     ? "harmonic series over sparse positions converges"
                     : "finite set";
      return v;
    }
    case IdealSpec::Kind::Exhaustive:
      return exh_member(*ideal.phi, set);
    case IdealSpec::Kind::Powerset: {
      switch (set.subset_of(*ideal.base)) {
        case SetDescriptor::Subset::Yes:
          v.outcome = VerdictOutcome::In;
          v.reason = "contained in the base set";
          break;
        case SetDescriptor::Subset::No:
          v.outcome = VerdictOutcome::Out;
          v.reason = "has a point outside the base set";
          break;
        default:
          v.outcome = VerdictOutcome::Undecided;
          v.reason = "subset question not decidable on this descriptor pair";
      }
      return v;
    }
  }
  return v;
}

IdealVerdict exh_member(const Submeasure& phi, const SetDescriptor& set, std::uint64_t horizon) {
  IdealVerdict v;
  if (phi.tail_vanishes) {
    if (auto ans = phi.tail_vanishes(set)) {
      v.outcome = *ans ? VerdictOutcome::In : VerdictOutcome::Out;
      v.reason = "closed-form tail limit for " + phi.name;
      return v;
    }
  }
  // Monotone tail evaluation: phi(A \ [0,n] cap [0,horizon]) is a lower bound
  // for the true tail value and nonincreasing in n. Finite evaluations cannot
  // certify the limit, so the verdict stays Undecided with the data attached.
  std::vector<std::uint64_t> window;
  for (std::uint64_t n = 0; n <= horizon; ++n)
    if (set.contains(n)) window.push_back(n);
  std::string data;
  for (std::uint64_t cut : {horizon / 4, horizon / 2, (3 * horizon) / 4}) {
    std::vector<std::uint64_t> tail;
    for (std::uint64_t p : window)
      if (p > cut) tail.push_back(p);
    data += " phi(tail>" + std::to_string(cut) + ")>=" + to_string(phi.eval(tail));
  }
  v.outcome = VerdictOutcome::Undecided;
  v.reason = "no closed-form tail for " + phi.name + "; lower bounds:" + data;
  return v;
}

}  // namespace idealtop
