#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "idealtop/descriptor.hpp"
#include "idealtop/rational.hpp"

namespace idealtop {

// Monotone subadditive set function vanishing at the empty set, evaluated on
// finite sets. A closed-form tail decision on descriptors may be attached:
// it answers "does phi(A \ [0,n]) tend to 0?" exactly, or declines.
struct Submeasure {
  std::string name;
  std::function<Rational(const std::vector<std::uint64_t>&)> eval;  // finite sorted sets
  Rational total_bound = 1;
  std::function<std::optional<bool>(const SetDescriptor&)> tail_vanishes;

  // phi_d(F) = max_n |F cap [0,n]| / (n+1); the density submeasure.
  static Submeasure density();
  // phi(F) = [F nonempty]; its exhaustive ideal is the ideal of finite sets.
  static Submeasure support();
};

Rational submeasure_eval(const Submeasure& phi, const std::vector<std::uint64_t>& finite_set);

// Laws phi(0)=0, monotonicity and subadditivity, property-checked on random
// finite sets drawn from [0, universe).
bool check_submeasure_laws(const Submeasure& phi, std::uint64_t cases, std::uint64_t universe,
                           std::uint64_t seed);

enum class VerdictOutcome { In = 0, Out = 1, Undecided = 2 };

struct IdealSpec {
  enum class Kind { Fin, Density, SummableHarmonic, Exhaustive, Powerset };
  Kind kind = Kind::Fin;
  std::shared_ptr<Submeasure> phi;              // Exhaustive
  std::shared_ptr<SetDescriptor> base;          // Powerset
  // Declared metadata; documentation only, never decided by the toolkit.
  bool declared_free = true;
  bool declared_proper = true;
  bool declared_p_ideal = true;

  static IdealSpec fin();
  static IdealSpec density();
  static IdealSpec summable_harmonic();
  static IdealSpec exhaustive(Submeasure phi);
  static IdealSpec powerset(SetDescriptor base);

  // Grammar: fin | density | summable:harmonic | exh:density | powerset(<descriptor>)
  std::string str() const;
  static IdealSpec parse(const std::string& text);
};

struct IdealVerdict {
  VerdictOutcome outcome = VerdictOutcome::Undecided;
  std::string reason;
};

IdealVerdict ideal_member(const IdealSpec& ideal, const SetDescriptor& set);

// Membership in Exh(phi): does phi(A \ [0,n]) -> 0? Exact when the submeasure
// carries a closed-form tail decision; otherwise monotone tail evaluation up
// to the horizon with an Undecided fallback.
IdealVerdict exh_member(const Submeasure& phi, const SetDescriptor& set,
                        std::uint64_t horizon = 4096);

}  // namespace idealtop
