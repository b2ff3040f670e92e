#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "opennet/semantics.hpp"

namespace opennet {

// Generic finite labelled graph, used by the refinement engine.
struct LabelledGraph {
  std::size_t size = 0;
  std::vector<std::tuple<std::size_t, int, std::size_t>> edges;  // (from, label, to)
};

// Block numbering after each refinement round. levels[0] is the trivial
// partition; levels.back() is the coarsest bisimulation.
struct Refinement {
  std::vector<std::vector<std::size_t>> levels;

  const std::vector<std::size_t>& stable() const { return levels.back(); }
  // Round at which p and q were first separated, or nullopt if never.
  std::optional<std::size_t> split_level(std::size_t p, std::size_t q) const;
};

Refinement refine_partition(const LabelledGraph& g);

enum class Strength { Strong, Weak };

struct BisimKind {
  Strength strength = Strength::Strong;
  Mode mode = Mode::Firing;

  bool operator==(const BisimKind&) const = default;
};

std::string to_string(BisimKind k);

enum class Verdict { Bisimilar, NotBisimilar, Inconclusive };

std::string to_string(Verdict v);

// A marking, or nullopt for the Overflow state.
using StateRef = std::optional<Marking>;

std::string to_string(const StateRef& s);

struct PlayRound {
  int attacker = 1;          // 1 or 2
  StateRef attackerFrom;
  ObsLabel label;            // in the attacker's own vocabulary
  StateRef attackerTo;
  StateRef defenderFrom;
  bool defenderStuck = false;
  StateRef defenderTo;       // meaningful only when the defender could answer
};

struct BisimOptions {
  BisimKind kind;
  std::set<Label> tau;
  unsigned cap = 4;
  unsigned maxStep = 6;
  std::size_t maxStates = 200000;
};

struct BisimVerdict {
  BisimKind kind;
  Verdict result = Verdict::Inconclusive;
  unsigned bound = 0;
  std::vector<std::pair<StateRef, StateRef>> witness;
  std::vector<PlayRound> play;
  bool touchedOverflow = false;
  Correspondence eta;
  std::string note;
};

// Bisimilarity of z1 and z2 relative to the per-place cap. Without eta, every
// correspondence is tried (interfaces of at most five places per polarity).
BisimVerdict check_bisim(const OpenNet& z1, const OpenNet& z2, const std::optional<Correspondence>& eta,
                         const BisimOptions& opt);

struct UpToRelation {
  std::vector<std::pair<Marking, Marking>> pairs;
};

struct UpToFailure {
  Marking u1;
  Marking u2;
  int attacker = 1;
  ObsLabel label;
  Marking target;
};

struct UpToVerdict {
  bool accepted = false;
  unsigned bound = 0;
  std::optional<UpToFailure> failure;
};

// Checks that r is an up-to firing bisimulation. Step mode is rejected.
UpToVerdict check_upto(const OpenNet& z1, const OpenNet& z2, const Correspondence& eta, const UpToRelation& r,
                       const std::set<Label>& tau, unsigned cap, Mode mode = Mode::Firing);

Count out_degree(const OpenNet& z, const PlaceId& s);
bool subtractable(const OpenNet& z, const Marking& u, const Marking& v);

enum class Polarity { In, Out };

OpenNet close_place(const OpenNet& z, const PlaceId& s, Polarity p);
OpenNet open_place(const OpenNet& z, const PlaceId& s, Polarity p);

}  // namespace opennet
