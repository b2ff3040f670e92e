#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "opennet/composition.hpp"
#include "opennet/net.hpp"

namespace opennet {

// A transition firing, or an interaction with the environment that creates
// (Plus) or deletes (Minus) a token on an open place.
struct ExtendedEvent {
  enum class Kind { Trans, Plus, Minus };
  Kind kind;
  std::string id;

  static ExtendedEvent trans(std::string t) { return {Kind::Trans, std::move(t)}; }
  static ExtendedEvent plus(std::string s) { return {Kind::Plus, std::move(s)}; }
  static ExtendedEvent minus(std::string s) { return {Kind::Minus, std::move(s)}; }

  auto operator<=>(const ExtendedEvent&) const = default;
  bool operator==(const ExtendedEvent&) const = default;
};

using Events = Multiset<ExtendedEvent>;

std::string to_string(const ExtendedEvent& e);
std::string to_string(const Events& a);

struct Step {
  Events events;
  Marking from;
  Marking to;

  bool operator==(const Step&) const = default;
};

enum class Mode { Firing, Step };

// One observation: a transition label or a ± interaction.
struct Obs {
  enum class Kind { Label, Plus, Minus };
  Kind kind;
  std::string id;

  static Obs label(std::string l) { return {Kind::Label, std::move(l)}; }
  static Obs plus(std::string s) { return {Kind::Plus, std::move(s)}; }
  static Obs minus(std::string s) { return {Kind::Minus, std::move(s)}; }

  auto operator<=>(const Obs&) const = default;
  bool operator==(const Obs&) const = default;
};

// A step label. Firing labels have size one; the empty label is the silent one.
using ObsLabel = Multiset<Obs>;

std::string to_string(const Obs& o);
std::string to_string(const ObsLabel& l);

Marking pre_of(const OpenNet& z, const Events& a);
Marking post_of(const OpenNet& z, const Events& a);
bool is_legal(const OpenNet& z, const ExtendedEvent& e);
ObsLabel observe(const OpenNet& z, const Events& a);

// (u ⊖ pre(A)) ⊕ post(A). Throws IllegalEvent or NotEnabled.
Marking fire(const OpenNet& z, const Marking& u, const Events& a);

// All extended events of z in canonical order.
std::vector<ExtendedEvent> extended_events(const OpenNet& z);

// Steps enabled at u whose target stays within the cap, in canonical order.
std::vector<Step> enabled_steps(const OpenNet& z, const Marking& u, Mode mode, unsigned cap, unsigned maxStep = 6);

// Projection of an event of f's target back along the embedding f.
Events project_event(const OpenNetMorphism& f, const ExtendedEvent& e);
Events project_events(const OpenNetMorphism& f, const Events& a);
Step project_step(const OpenNetMorphism& f, const Step& st);
// Image of events along f (the monoidal extension).
Events image_events(const OpenNetMorphism& f, const Events& a);

struct StepSplit {
  Events a1Internal;
  Events a1External;
  Events a2Internal;
  Events a2External;

  bool operator==(const StepSplit&) const = default;
};

Step compose_steps(const PushoutResult& po, const Step& st1, const Step& st2, const StepSplit& split);

struct Decomposition {
  Step st1;
  Step st2;
  StepSplit split;
};

Decomposition decompose_step(const PushoutResult& po, const Step& st3);

struct LtsEdge {
  std::size_t from;
  ObsLabel label;
  std::size_t to;

  bool operator==(const LtsEdge&) const = default;
};

struct Lts {
  Mode mode = Mode::Firing;
  unsigned cap = 0;
  unsigned maxStep = 0;
  bool weak = false;
  std::vector<Marking> states;
  std::optional<std::size_t> overflow;
  std::size_t initial = 0;
  std::vector<LtsEdge> edges;

  bool is_overflow(std::size_t i) const { return overflow && *overflow == i; }
  std::string state_name(std::size_t i) const;
};

struct LtsOptions {
  Mode mode = Mode::Firing;
  unsigned cap = 4;
  unsigned maxStep = 6;
  std::size_t maxStates = 200000;
};

// Breadth-first exploration from the initial marking. Steps leaving the cap
// region lead to a single edge-free Overflow state. Throws InitialExceedsCap,
// or BudgetExceeded when more than maxStates states are reached.
Lts build_lts(const OpenNet& z, const LtsOptions& opt);
Lts build_lts(const OpenNet& z, Mode mode, unsigned cap, unsigned maxStep = 6);

// Weak transition system: silent edges are the reflexive-transitive closure of
// steps whose label is entirely in tau; visible edges are ⇒0 ∘ →ℓ ∘ ⇒0.
Lts weak_closure(const Lts& l, const std::set<Label>& tau);

std::string to_dot(const Lts& l);

}  // namespace opennet
