#include "opennet/composition.hpp"

namespace opennet {

namespace {

void check_span(const OpenNetMorphism& f1, const OpenNetMorphism& f2) {
  if (!is_embedding(f1) || !is_embedding(f2)) throw Error(ErrorCode::NotEmbedding, "span legs must be embeddings");
  if (f1.source != f2.source && !(*f1.source == *f2.source))
    throw Error(ErrorCode::SourceMismatch, "span legs have different sources");
}

void require_open(const OpenNetMorphism& f, const OpenNetMorphism& other, bool input,
                  std::vector<std::string>& out, const char* side) {
  const OpenNet& z = *other.target;
  for (const auto& s : input ? in_places(f) : out_places(f)) {
    const PlaceId& img = other.place(s);
    bool open = input ? z.is_open_in(img) : z.is_open_out(img);
    if (!open)
      out.push_back("interface place '" + s + "' gains " + (input ? "producers" : "consumers") + " in the " +
                    (side[0] == 'l' ? "right" : "left") + " net, but its image '" + img + "' in the " + side +
                    " net is not " + (input ? "input" : "output") + " open");
  }
}

}  // namespace

std::vector<std::string> composability_violations(const OpenNetMorphism& f1, const OpenNetMorphism& f2) {
  check_span(f1, f2);
  std::vector<std::string> v;
  require_open(f2, f1, true, v, "left");
  require_open(f2, f1, false, v, "left");
  require_open(f1, f2, true, v, "right");
  require_open(f1, f2, false, v, "right");
  return v;
}

bool check_composable(const OpenNetMorphism& f1, const OpenNetMorphism& f2) {
  return composability_violations(f1, f2).empty();
}

PushoutResult pushout(const OpenNetMorphism& f1, const OpenNetMorphism& f2) {
  auto violations = composability_violations(f1, f2);
  if (!violations.empty()) throw Error(ErrorCode::NotComposable, violations.front());

  const OpenNet& z1 = *f1.target;
  const OpenNet& z2 = *f2.target;
  auto inv1p = place_inverse(f1);
  auto inv2p = place_inverse(f2);
  auto inv1t = transition_inverse(f1);
  auto inv2t = transition_inverse(f2);

  OpenNet z3;
  z3.name = z1.name + "+" + z2.name;
  std::map<PlaceId, PlaceId> a1p, a2p;
  std::map<TransId, TransId> a1t, a2t;
  std::set<std::string> used;
  auto fresh = [&](const std::string& id) {
    if (!used.insert(id).second) throw Error(ErrorCode::NameClash, "pushout item name '" + id + "' is ambiguous");
    return id;
  };

  for (const auto& s : f1.source->places) {
    std::string id = fresh(s);
    z3.places.insert(id);
    a1p[f1.place(s)] = id;
    a2p[f2.place(s)] = id;
  }
  for (const auto& s : z1.places)
    if (!inv1p.count(s)) z3.places.insert(a1p[s] = fresh("L:" + s));
  for (const auto& s : z2.places)
    if (!inv2p.count(s)) z3.places.insert(a2p[s] = fresh("R:" + s));

  for (const auto& [t, tr] : f1.source->transitions) {
    std::string id = fresh(t);
    a1t[f1.trans(t)] = id;
    a2t[f2.trans(t)] = id;
    z3.transitions[id] = Transition{tr.label, image(a1p, z1.transition(f1.trans(t)).pre),
                                    image(a1p, z1.transition(f1.trans(t)).post)};
  }
  for (const auto& [t, tr] : z1.transitions)
    if (!inv1t.count(t)) {
      std::string id = fresh("L:" + t);
      a1t[t] = id;
      z3.transitions[id] = Transition{tr.label, image(a1p, tr.pre), image(a1p, tr.post)};
    }
  for (const auto& [t, tr] : z2.transitions)
    if (!inv2t.count(t)) {
      std::string id = fresh("R:" + t);
      a2t[t] = id;
      z3.transitions[id] = Transition{tr.label, image(a2p, tr.pre), image(a2p, tr.post)};
    }

  // A place of Z3 is open iff all of its preimages are open.
  auto inv3_1 = std::map<PlaceId, PlaceId>{};
  auto inv3_2 = std::map<PlaceId, PlaceId>{};
  for (const auto& [s, s3] : a1p) inv3_1[s3] = s;
  for (const auto& [s, s3] : a2p) inv3_2[s3] = s;
  for (const auto& s3 : z3.places) {
    auto p1 = inv3_1.find(s3);
    auto p2 = inv3_2.find(s3);
    bool in = (p1 == inv3_1.end() || z1.is_open_in(p1->second)) && (p2 == inv3_2.end() || z2.is_open_in(p2->second));
    bool out =
        (p1 == inv3_1.end() || z1.is_open_out(p1->second)) && (p2 == inv3_2.end() || z2.is_open_out(p2->second));
    if (in) z3.openIn.insert(s3);
    if (out) z3.openOut.insert(s3);
  }

  SetPushout<PlaceId, PlaceId, PlaceId, PlaceId> d{f1.places, f2.places, a1p, a2p};
  z3.initial = join(z1.initial, z2.initial, d);

  auto z3p = std::make_shared<const OpenNet>(std::move(z3));
  return PushoutResult{f1, f2, z3p, OpenNetMorphism{f1.target, z3p, a1p, a1t},
                       OpenNetMorphism{f2.target, z3p, a2p, a2t}};
}

std::vector<NameEntry> glue_names(const PushoutResult& po) {
  std::vector<NameEntry> r;
  const OpenNet& z0 = *po.f1.source;
  for (const auto& s : z0.places) r.push_back({po.alpha1.place(po.f1.place(s)), true, Origin::Interface, s});
  for (const auto& [t, tr] : z0.transitions)
    r.push_back({po.alpha1.trans(po.f1.trans(t)), false, Origin::Interface, t});
  auto inv1p = place_inverse(po.f1);
  auto inv2p = place_inverse(po.f2);
  auto inv1t = transition_inverse(po.f1);
  auto inv2t = transition_inverse(po.f2);
  for (const auto& [s, s3] : po.alpha1.places)
    if (!inv1p.count(s)) r.push_back({s3, true, Origin::Left, s});
  for (const auto& [t, t3] : po.alpha1.transitions)
    if (!inv1t.count(t)) r.push_back({t3, false, Origin::Left, t});
  for (const auto& [s, s3] : po.alpha2.places)
    if (!inv2p.count(s)) r.push_back({s3, true, Origin::Right, s});
  for (const auto& [t, t3] : po.alpha2.transitions)
    if (!inv2t.count(t)) r.push_back({t3, false, Origin::Right, t});
  return r;
}

}  // namespace opennet
