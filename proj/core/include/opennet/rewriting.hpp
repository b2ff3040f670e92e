#pragma once

#include <string>
#include <vector>

#include "opennet/composition.hpp"
#include "opennet/equivalence.hpp"

namespace opennet {

// A span L <-l- K -r-> R of embeddings.
struct Rule {
  OpenNetMorphism l;
  OpenNetMorphism r;

  const OpenNet& lhs() const { return *l.target; }
  const OpenNet& interface() const { return *l.source; }
  const OpenNet& rhs() const { return *r.target; }
};

// Throws NotEmbedding or SourceMismatch.
void check_rule(const Rule& p);

struct Condition {
  std::string id;        // "1".."5" or "a".."c"
  char polarity = ' ';   // '+', '-' or ' '
  std::string item;
  std::string detail;
};

struct ConditionReport {
  std::vector<Condition> violations;

  bool ok() const { return violations.empty(); }
  bool violates(const std::string& id) const;
  std::vector<std::string> ids() const;  // sorted, unique
  std::string to_string() const;
};

// Every embedding L -> Z in canonical order.
std::vector<OpenNetMorphism> find_matches(const OpenNet& l, const OpenNet& z);
std::vector<OpenNetMorphism> find_matches(NetPtr l, NetPtr z);

ConditionReport check_po_complement(const Rule& p, const OpenNetMorphism& m);

struct Complement {
  NetPtr d;
  OpenNetMorphism n;     // K -> D
  OpenNetMorphism dEmb;  // D -> Z
};

// The minimal (maximally open) pushout complement. Throws ConditionsViolated.
Complement pushout_complement(const Rule& p, const OpenNetMorphism& m);

ConditionReport check_proper(const Rule& p, const OpenNetMorphism& m);

struct TransformResult {
  NetPtr d;
  OpenNetMorphism n;
  OpenNetMorphism dEmb;
  OpenNetMorphism h;  // R -> Z'
  OpenNetMorphism b;  // D -> Z'
  NetPtr zPrime;
};

// Throws NotProper, or NotComposableRight if the right square cannot be built.
TransformResult apply_rule(const Rule& p, const OpenNetMorphism& m, const OpenNet& z);

// η = (r ∘ l⁻¹) restricted to the open places of L. Throws EtaUndefined.
Correspondence rule_correspondence(const Rule& p);

BisimVerdict check_behaviour_preserving(const Rule& p, const BisimOptions& opt);

ConditionReport check_cor_proper(const Rule& p, const OpenNetMorphism& m);

// Correspondence between Z and Z' induced by a transformation: places coming
// from the context follow b, places coming from L follow h ∘ η.
Correspondence induced_correspondence(const Rule& p, const OpenNetMorphism& m, const TransformResult& t);

}  // namespace opennet
