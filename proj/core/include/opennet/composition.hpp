#pragma once

#include <string>
#include <vector>

#include "opennet/net.hpp"

namespace opennet {

// Throws NotEmbedding or SourceMismatch when the span is malformed.
bool check_composable(const OpenNetMorphism& f1, const OpenNetMorphism& f2);

// Human-readable reasons why a well-formed span is not composable; empty iff composable.
std::vector<std::string> composability_violations(const OpenNetMorphism& f1, const OpenNetMorphism& f2);

struct PushoutResult {
  OpenNetMorphism f1;
  OpenNetMorphism f2;
  NetPtr z3;
  OpenNetMorphism alpha1;
  OpenNetMorphism alpha2;
};

// Z1 +_{f1,f2} Z2. Interface items keep their Z0 names, items only in Z1 are
// prefixed "L:", items only in Z2 "R:".
PushoutResult pushout(const OpenNetMorphism& f1, const OpenNetMorphism& f2);

enum class Origin { Interface, Left, Right };

struct NameEntry {
  std::string id;        // name in Z3
  bool isPlace;
  Origin origin;
  std::string original;  // name in Z0, Z1 or Z2 according to origin
};

std::vector<NameEntry> glue_names(const PushoutResult& po);

}  // namespace opennet
