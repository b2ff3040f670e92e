#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "opennet/multiset.hpp"

namespace opennet {

using PlaceId = std::string;
using TransId = std::string;
using Label = std::string;
using Marking = Multiset<PlaceId>;

struct Transition {
  Label label;
  Marking pre;
  Marking post;

  bool operator==(const Transition&) const = default;
};

// A P/T net together with its input-open (openIn) and output-open (openOut)
// places and an initial marking.
struct OpenNet {
  std::string name;
  std::set<PlaceId> places;
  std::map<TransId, Transition> transitions;
  std::set<PlaceId> openIn;
  std::set<PlaceId> openOut;
  Marking initial;

  bool operator==(const OpenNet&) const = default;

  bool has_place(const PlaceId& s) const { return places.count(s) != 0; }
  bool has_transition(const TransId& t) const { return transitions.count(t) != 0; }
  bool is_open_in(const PlaceId& s) const { return openIn.count(s) != 0; }
  bool is_open_out(const PlaceId& s) const { return openOut.count(s) != 0; }
  const Transition& transition(const TransId& t) const;

  // •s and s•: transitions producing into, respectively consuming from, s.
  std::set<TransId> producers(const PlaceId& s) const;
  std::set<TransId> consumers(const PlaceId& s) const;

  OpenNet& add_place(const PlaceId& s, Count tokens = 0, bool in = false, bool out = false);
  OpenNet& add_transition(const TransId& t, const Label& label, Marking pre, Marking post);
};

// Equality ignoring the net name.
bool same_structure(const OpenNet& a, const OpenNet& b);

struct Issue {
  std::string code;
  std::string item;
  std::string detail;
};

struct ValidationReport {
  std::vector<Issue> issues;

  bool ok() const { return issues.empty(); }
  bool has(const std::string& code) const;
  std::string to_string() const;
};

ValidationReport validate_net(const OpenNet& z);

using NetPtr = std::shared_ptr<const OpenNet>;

struct OpenNetMorphism {
  NetPtr source;
  NetPtr target;
  std::map<PlaceId, PlaceId> places;
  std::map<TransId, TransId> transitions;

  PlaceId place(const PlaceId& s) const;
  TransId trans(const TransId& t) const;
};

OpenNetMorphism make_morphism(OpenNet source, OpenNet target, std::map<PlaceId, PlaceId> places,
                              std::map<TransId, TransId> transitions);
OpenNetMorphism make_morphism(NetPtr source, NetPtr target, std::map<PlaceId, PlaceId> places,
                              std::map<TransId, TransId> transitions);

ValidationReport validate_morphism(const OpenNetMorphism& f);
bool is_embedding(const OpenNetMorphism& f);

// g after f; requires target(f) = source(g).
OpenNetMorphism compose(const OpenNetMorphism& f, const OpenNetMorphism& g);
OpenNetMorphism identity(const OpenNet& z);
OpenNetMorphism identity(NetPtr z);

// in(f) = {s : •f(s) - f(•s) ≠ ∅} and out(f) = {s : f(s)• - f(s•) ≠ ∅}.
std::set<PlaceId> in_places(const OpenNetMorphism& f);
std::set<PlaceId> out_places(const OpenNetMorphism& f);

// Preimages along an injective map, restricted to items in the image.
std::map<PlaceId, PlaceId> place_inverse(const OpenNetMorphism& f);
std::map<TransId, TransId> transition_inverse(const OpenNetMorphism& f);

// Pair of bijections between the input-open and output-open places of two nets.
struct Correspondence {
  std::map<PlaceId, PlaceId> in;
  std::map<PlaceId, PlaceId> out;

  bool operator==(const Correspondence&) const = default;
};

void check_correspondence(const Correspondence& eta, const OpenNet& z1, const OpenNet& z2);
Correspondence inverse(const Correspondence& eta);
Correspondence identity_correspondence(const OpenNet& z);
// Every correspondence between z1 and z2, in canonical order.
std::vector<Correspondence> all_correspondences(const OpenNet& z1, const OpenNet& z2);

}  // namespace opennet
