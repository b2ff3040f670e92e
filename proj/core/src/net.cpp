#include "opennet/net.hpp"

#include <algorithm>
#include <sstream>

namespace opennet {

const Transition& OpenNet::transition(const TransId& t) const {
  auto it = transitions.find(t);
  if (it == transitions.end()) throw Error(ErrorCode::DomainMismatch, "unknown transition '" + t + "'");
  return it->second;
}

std::set<TransId> OpenNet::producers(const PlaceId& s) const {
  std::set<TransId> r;
  for (const auto& [t, tr] : transitions)
    if (tr.post.count(s) > 0) r.insert(t);
  return r;
}

std::set<TransId> OpenNet::consumers(const PlaceId& s) const {
  std::set<TransId> r;
  for (const auto& [t, tr] : transitions)
    if (tr.pre.count(s) > 0) r.insert(t);
  return r;
}

OpenNet& OpenNet::add_place(const PlaceId& s, Count tokens, bool in, bool out) {
  places.insert(s);
  if (tokens > 0) initial.add(s, tokens);
  if (in) openIn.insert(s);
  if (out) openOut.insert(s);
  return *this;
}

OpenNet& OpenNet::add_transition(const TransId& t, const Label& label, Marking pre, Marking post) {
  transitions[t] = Transition{label, std::move(pre), std::move(post)};
  return *this;
}

bool same_structure(const OpenNet& a, const OpenNet& b) {
  return a.places == b.places && a.transitions == b.transitions && a.openIn == b.openIn &&
         a.openOut == b.openOut && a.initial == b.initial;
}

bool ValidationReport::has(const std::string& code) const {
  return std::any_of(issues.begin(), issues.end(), [&](const Issue& i) { return i.code == code; });
}

std::string ValidationReport::to_string() const {
  std::ostringstream os;
  for (const auto& i : issues) os << i.code << " [" << i.item << "]: " << i.detail << '\n';
  return os.str();
}

ValidationReport validate_net(const OpenNet& z) {
  ValidationReport rep;
  for (const auto& [t, tr] : z.transitions) {
    if (z.places.count(t)) rep.issues.push_back({"IdClash", t, "identifier used for a place and a transition"});
    for (const auto* arcs : {&tr.pre, &tr.post})
      for (const auto& [s, n] : *arcs)
        if (!z.has_place(s))
          rep.issues.push_back({"UnknownPlace", s, "transition '" + t + "' refers to an undeclared place"});
  }
  for (const auto& s : z.openIn)
    if (!z.has_place(s)) rep.issues.push_back({"OpenPlaceNotDeclared", s, "input-open place is not declared"});
  for (const auto& s : z.openOut)
    if (!z.has_place(s)) rep.issues.push_back({"OpenPlaceNotDeclared", s, "output-open place is not declared"});
  for (const auto& [s, n] : z.initial)
    if (!z.has_place(s)) rep.issues.push_back({"MarkedPlaceNotDeclared", s, "marked place is not declared"});
  return rep;
}

PlaceId OpenNetMorphism::place(const PlaceId& s) const {
  auto it = places.find(s);
  if (it == places.end()) throw Error(ErrorCode::DomainMismatch, "morphism undefined on place '" + s + "'");
  return it->second;
}

TransId OpenNetMorphism::trans(const TransId& t) const {
  auto it = transitions.find(t);
  if (it == transitions.end()) throw Error(ErrorCode::DomainMismatch, "morphism undefined on transition '" + t + "'");
  return it->second;
}

OpenNetMorphism make_morphism(OpenNet source, OpenNet target, std::map<PlaceId, PlaceId> places,
                              std::map<TransId, TransId> transitions) {
  return make_morphism(std::make_shared<const OpenNet>(std::move(source)),
                       std::make_shared<const OpenNet>(std::move(target)), std::move(places),
                       std::move(transitions));
}

OpenNetMorphism make_morphism(NetPtr source, NetPtr target, std::map<PlaceId, PlaceId> places,
                              std::map<TransId, TransId> transitions) {
  return OpenNetMorphism{std::move(source), std::move(target), std::move(places), std::move(transitions)};
}

namespace {

// Image of a set of transitions; items outside the map are skipped.
std::set<TransId> image_set(const std::map<TransId, TransId>& f, const std::set<TransId>& ts) {
  std::set<TransId> r;
  for (const auto& t : ts) {
    auto it = f.find(t);
    if (it != f.end()) r.insert(it->second);
  }
  return r;
}

bool includes_all(const std::set<TransId>& big, const std::set<TransId>& small) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

}  // namespace

std::set<PlaceId> in_places(const OpenNetMorphism& f) {
  std::set<PlaceId> r;
  for (const auto& s : f.source->places) {
    auto img = f.places.find(s);
    if (img == f.places.end()) continue;
    if (!includes_all(image_set(f.transitions, f.source->producers(s)), f.target->producers(img->second)))
      r.insert(s);
  }
  return r;
}

std::set<PlaceId> out_places(const OpenNetMorphism& f) {
  std::set<PlaceId> r;
  for (const auto& s : f.source->places) {
    auto img = f.places.find(s);
    if (img == f.places.end()) continue;
    if (!includes_all(image_set(f.transitions, f.source->consumers(s)), f.target->consumers(img->second)))
      r.insert(s);
  }
  return r;
}

ValidationReport validate_morphism(const OpenNetMorphism& f) {
  ValidationReport rep;
  const OpenNet& a = *f.source;
  const OpenNet& b = *f.target;
  for (const auto& [s, s2] : f.places)
    if (!a.has_place(s)) rep.issues.push_back({"UnknownSourceItem", s, "mapped place is not in the source"});
  for (const auto& [t, t2] : f.transitions)
    if (!a.has_transition(t)) rep.issues.push_back({"UnknownSourceItem", t, "mapped transition is not in the source"});
  for (const auto& s : a.places) {
    auto it = f.places.find(s);
    if (it == f.places.end())
      rep.issues.push_back({"NotTotal", s, "place has no image"});
    else if (!b.has_place(it->second))
      rep.issues.push_back({"ImageNotInTarget", s, "image '" + it->second + "' is not a place of the target"});
  }
  for (const auto& [t, tr] : a.transitions) {
    auto it = f.transitions.find(t);
    if (it == f.transitions.end()) {
      rep.issues.push_back({"NotTotal", t, "transition has no image"});
    } else if (!b.has_transition(it->second)) {
      rep.issues.push_back({"ImageNotInTarget", t, "image '" + it->second + "' is not a transition of the target"});
    }
  }
  if (!rep.ok()) return rep;

  for (const auto& [t, tr] : a.transitions) {
    const Transition& img = b.transition(f.transitions.at(t));
    if (img.label != tr.label) rep.issues.push_back({"LabelNotPreserved", t, "label '" + tr.label + "' became '" + img.label + "'"});
    if (image(f.places, tr.pre) != img.pre) rep.issues.push_back({"PreNotPreserved", t, "pre-set not preserved"});
    if (image(f.places, tr.post) != img.post) rep.issues.push_back({"PostNotPreserved", t, "post-set not preserved"});
  }
  if (!rep.ok()) return rep;

  auto in = in_places(f);
  auto out = out_places(f);
  for (const auto& s : a.places) {
    const PlaceId& s2 = f.places.at(s);
    if ((b.is_open_in(s2) || in.count(s)) && !a.is_open_in(s))
      rep.issues.push_back({"OpennessReflectionViolated", s, "place must be input open in the source"});
    if ((b.is_open_out(s2) || out.count(s)) && !a.is_open_out(s))
      rep.issues.push_back({"OpennessReflectionViolated", s, "place must be output open in the source"});
    if (a.initial.count(s) != b.initial.count(s2))
      rep.issues.push_back({"MarkingReflectionViolated", s, "initial marking differs from its image"});
  }
  return rep;
}

bool is_embedding(const OpenNetMorphism& f) {
  std::set<PlaceId> ps;
  for (const auto& [s, s2] : f.places)
    if (!ps.insert(s2).second) return false;
  std::set<TransId> ts;
  for (const auto& [t, t2] : f.transitions)
    if (!ts.insert(t2).second) return false;
  return true;
}

OpenNetMorphism compose(const OpenNetMorphism& f, const OpenNetMorphism& g) {
  if (f.target != g.source && !(*f.target == *g.source))
    throw Error(ErrorCode::DomainMismatch, "target of the first morphism is not the source of the second");
  OpenNetMorphism r{f.source, g.target, {}, {}};
  for (const auto& [s, s2] : f.places) r.places[s] = g.place(s2);
  for (const auto& [t, t2] : f.transitions) r.transitions[t] = g.trans(t2);
  return r;
}

OpenNetMorphism identity(const OpenNet& z) { return identity(std::make_shared<const OpenNet>(z)); }

OpenNetMorphism identity(NetPtr z) {
  OpenNetMorphism r{z, z, {}, {}};
  for (const auto& s : z->places) r.places[s] = s;
  for (const auto& [t, tr] : z->transitions) r.transitions[t] = t;
  return r;
}

std::map<PlaceId, PlaceId> place_inverse(const OpenNetMorphism& f) {
  std::map<PlaceId, PlaceId> r;
  for (const auto& [s, s2] : f.places)
    if (!r.emplace(s2, s).second) throw Error(ErrorCode::NotEmbedding, "place map is not injective at '" + s2 + "'");
  return r;
}

std::map<TransId, TransId> transition_inverse(const OpenNetMorphism& f) {
  std::map<TransId, TransId> r;
  for (const auto& [t, t2] : f.transitions)
    if (!r.emplace(t2, t).second)
      throw Error(ErrorCode::NotEmbedding, "transition map is not injective at '" + t2 + "'");
  return r;
}

namespace {

void check_bijection(const std::map<PlaceId, PlaceId>& m, const std::set<PlaceId>& dom, const std::set<PlaceId>& cod,
                     const char* which) {
  std::set<PlaceId> keys, vals;
  for (const auto& [a, b] : m) {
    keys.insert(a);
    if (!vals.insert(b).second)
      throw Error(ErrorCode::NotACorrespondence, std::string(which) + " component is not injective at '" + b + "'");
  }
  if (keys != dom)
    throw Error(ErrorCode::NotACorrespondence, std::string(which) + " component is not defined exactly on the open places");
  if (vals != cod)
    throw Error(ErrorCode::NotACorrespondence, std::string(which) + " component is not onto the open places");
}

}  // namespace

void check_correspondence(const Correspondence& eta, const OpenNet& z1, const OpenNet& z2) {
  check_bijection(eta.in, z1.openIn, z2.openIn, "input");
  check_bijection(eta.out, z1.openOut, z2.openOut, "output");
}

Correspondence inverse(const Correspondence& eta) {
  Correspondence r;
  for (const auto& [a, b] : eta.in) r.in[b] = a;
  for (const auto& [a, b] : eta.out) r.out[b] = a;
  return r;
}

Correspondence identity_correspondence(const OpenNet& z) {
  Correspondence r;
  for (const auto& s : z.openIn) r.in[s] = s;
  for (const auto& s : z.openOut) r.out[s] = s;
  return r;
}

namespace {

std::vector<std::map<PlaceId, PlaceId>> bijections(const std::set<PlaceId>& a, const std::set<PlaceId>& b) {
  std::vector<std::map<PlaceId, PlaceId>> r;
  if (a.size() != b.size()) return r;
  std::vector<PlaceId> dom(a.begin(), a.end());
  std::vector<PlaceId> cod(b.begin(), b.end());
  do {
    std::map<PlaceId, PlaceId> m;
    for (std::size_t i = 0; i < dom.size(); ++i) m[dom[i]] = cod[i];
    r.push_back(std::move(m));
  } while (std::next_permutation(cod.begin(), cod.end()));
  return r;
}

}  // namespace

std::vector<Correspondence> all_correspondences(const OpenNet& z1, const OpenNet& z2) {
  std::vector<Correspondence> r;
  auto ins = bijections(z1.openIn, z2.openIn);
  auto outs = bijections(z1.openOut, z2.openOut);
  for (const auto& i : ins)
    for (const auto& o : outs) r.push_back(Correspondence{i, o});
  return r;
}

}  // namespace opennet
