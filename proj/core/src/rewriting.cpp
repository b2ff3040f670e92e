#include "opennet/rewriting.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace opennet {

void check_rule(const Rule& p) {
  if (!is_embedding(p.l) || !is_embedding(p.r)) throw Error(ErrorCode::NotEmbedding, "rule legs must be embeddings");
  if (p.l.source != p.r.source && !(*p.l.source == *p.r.source))
    throw Error(ErrorCode::SourceMismatch, "rule legs have different interfaces");
}

bool ConditionReport::violates(const std::string& id) const {
  return std::any_of(violations.begin(), violations.end(), [&](const Condition& c) { return c.id == id; });
}

std::vector<std::string> ConditionReport::ids() const {
  std::set<std::string> s;
  for (const auto& c : violations) s.insert(c.id);
  return {s.begin(), s.end()};
}

std::string ConditionReport::to_string() const {
  std::ostringstream os;
  for (const auto& c : violations) {
    os << "condition " << c.id;
    if (c.polarity != ' ') os << " (" << c.polarity << ")";
    os << " [" << c.item << "]: " << c.detail << '\n';
  }
  return os.str();
}

namespace {

struct MatchSearch {
  const OpenNet& l;
  const OpenNet& z;
  NetPtr lp, zp;
  std::vector<TransId> lTrans;
  std::vector<PlaceId> lPlaces;
  std::map<PlaceId, PlaceId> pmap;
  std::map<TransId, TransId> tmap;
  std::set<PlaceId> usedP;
  std::set<TransId> usedT;
  std::vector<OpenNetMorphism> found;

  MatchSearch(NetPtr a, NetPtr b) : l(*a), z(*b), lp(a), zp(b) {
    for (const auto& [t, tr] : l.transitions) lTrans.push_back(t);
    lPlaces.assign(l.places.begin(), l.places.end());
  }

  bool place_fits(const PlaceId& s, const PlaceId& s2) const {
    if (l.initial.count(s) != z.initial.count(s2)) return false;
    if (z.is_open_in(s2) && !l.is_open_in(s)) return false;
    if (z.is_open_out(s2) && !l.is_open_out(s)) return false;
    return true;
  }

  bool bind(const PlaceId& s, const PlaceId& s2) {
    if (usedP.count(s2) || !place_fits(s, s2)) return false;
    pmap[s] = s2;
    usedP.insert(s2);
    return true;
  }
  void unbind(const PlaceId& s) {
    usedP.erase(pmap.at(s));
    pmap.erase(s);
  }

  static std::vector<PlaceId> arc_places(const Transition& tr) {
    std::set<PlaceId> s = tr.pre.support();
    for (const auto& [p, n] : tr.post) s.insert(p);
    return {s.begin(), s.end()};
  }

  // Binds the still unmapped places around t so that t maps onto t2.
  void bind_arcs(const Transition& tr, const Transition& tr2, const std::vector<PlaceId>& open, std::size_t j,
                 const std::function<void()>& k) {
    if (j == open.size()) {
      if (image(pmap, tr.pre) == tr2.pre && image(pmap, tr.post) == tr2.post) k();
      return;
    }
    for (const auto& s2 : arc_places(tr2)) {
      if (!bind(open[j], s2)) continue;
      bind_arcs(tr, tr2, open, j + 1, k);
      unbind(open[j]);
    }
  }

  void transitions_from(std::size_t i) {
    if (i == lTrans.size()) {
      places_from(0);
      return;
    }
    const TransId& t = lTrans[i];
    const Transition& tr = l.transition(t);
    for (const auto& [t2, tr2] : z.transitions) {
      if (usedT.count(t2) || tr2.label != tr.label || tr2.pre.size() != tr.pre.size() ||
          tr2.post.size() != tr.post.size())
        continue;
      std::vector<PlaceId> open;
      for (const auto& s : arc_places(tr))
        if (!pmap.count(s)) open.push_back(s);
      tmap[t] = t2;
      usedT.insert(t2);
      bind_arcs(tr, tr2, open, 0, [&] { transitions_from(i + 1); });
      usedT.erase(t2);
      tmap.erase(t);
    }
  }

  void places_from(std::size_t j) {
    while (j < lPlaces.size() && pmap.count(lPlaces[j])) ++j;
    if (j == lPlaces.size()) {
      OpenNetMorphism m{lp, zp, pmap, tmap};
      if (validate_morphism(m).ok()) found.push_back(std::move(m));
      return;
    }
    for (const auto& s2 : z.places) {
      if (!bind(lPlaces[j], s2)) continue;
      places_from(j + 1);
      unbind(lPlaces[j]);
    }
  }
};

std::set<PlaceId> image_places(const OpenNetMorphism& f, const std::set<PlaceId>& xs) {
  std::set<PlaceId> r;
  for (const auto& x : xs) r.insert(f.place(x));
  return r;
}

std::set<PlaceId> deleted_places(const Rule& p) {
  std::set<PlaceId> kept = image_places(p.l, p.interface().places);
  std::set<PlaceId> r;
  for (const auto& s : p.lhs().places)
    if (!kept.count(s)) r.insert(s);
  return r;
}

std::set<TransId> deleted_transitions(const Rule& p) {
  std::set<TransId> kept;
  for (const auto& [k, t] : p.l.transitions) kept.insert(t);
  std::set<TransId> r;
  for (const auto& [t, tr] : p.lhs().transitions)
    if (!kept.count(t)) r.insert(t);
  return r;
}

void dangling(const Rule& p, const OpenNetMorphism& m, const std::string& id, ConditionReport& rep) {
  std::set<TransId> allowed;
  for (const auto& t : deleted_transitions(p)) allowed.insert(m.trans(t));
  for (const auto& s : deleted_places(p)) {
    const PlaceId& img = m.place(s);
    auto adj = m.target->producers(img);
    auto cons = m.target->consumers(img);
    adj.insert(cons.begin(), cons.end());
    for (const auto& t : adj)
      if (!allowed.count(t))
        rep.violations.push_back({id, ' ', s, "deleted place would leave transition '" + t + "' dangling"});
  }
}

// For k in in(l) (resp. out(l)) whose image in L is open, the host image must be open.
void deleted_arcs_open(const Rule& p, const OpenNetMorphism& m, const std::string& id, ConditionReport& rep) {
  const OpenNet& L = p.lhs();
  const OpenNet& Z = *m.target;
  for (const auto& k : in_places(p.l)) {
    PlaceId s = p.l.place(k);
    if (L.is_open_in(s) && !Z.is_open_in(m.place(s)))
      rep.violations.push_back({id, '+', s, "producers are deleted but the host place is not input open"});
  }
  for (const auto& k : out_places(p.l)) {
    PlaceId s = p.l.place(k);
    if (L.is_open_out(s) && !Z.is_open_out(m.place(s)))
      rep.violations.push_back({id, '-', s, "consumers are deleted but the host place is not output open"});
  }
}

void added_arcs_open(const Rule& p, const OpenNetMorphism& m, const std::string& id, ConditionReport& rep) {
  const OpenNet& Z = *m.target;
  auto inL = in_places(p.l);
  auto outL = out_places(p.l);
  for (const auto& k : in_places(p.r))
    if (!inL.count(k) && !Z.is_open_in(m.place(p.l.place(k))))
      rep.violations.push_back({id, '+', k, "rule adds producers but the host place is not input open"});
  for (const auto& k : out_places(p.r))
    if (!outL.count(k) && !Z.is_open_out(m.place(p.l.place(k))))
      rep.violations.push_back({id, '-', k, "rule adds consumers but the host place is not output open"});
}

}  // namespace

std::vector<OpenNetMorphism> find_matches(const OpenNet& l, const OpenNet& z) {
  return find_matches(std::make_shared<const OpenNet>(l), std::make_shared<const OpenNet>(z));
}

std::vector<OpenNetMorphism> find_matches(NetPtr l, NetPtr z) {
  MatchSearch s(std::move(l), std::move(z));
  s.transitions_from(0);
  return std::move(s.found);
}

ConditionReport check_po_complement(const Rule& p, const OpenNetMorphism& m) {
  ConditionReport rep;
  dangling(p, m, "1", rep);
  deleted_arcs_open(p, m, "2", rep);
  const OpenNet& L = p.lhs();
  const OpenNet& K = p.interface();
  const OpenNet& Z = *m.target;
  auto keptIn = image_places(p.l, K.openIn);
  auto keptOut = image_places(p.l, K.openOut);
  for (const auto& s : L.openIn)
    if (!keptIn.count(s) && !Z.is_open_in(m.place(s)))
      rep.violations.push_back({"3", '+', s, "input-open place loses its openness but the host place is closed"});
  for (const auto& s : L.openOut)
    if (!keptOut.count(s) && !Z.is_open_out(m.place(s)))
      rep.violations.push_back({"3", '-', s, "output-open place loses its openness but the host place is closed"});
  return rep;
}

Complement pushout_complement(const Rule& p, const OpenNetMorphism& m) {
  check_rule(p);
  auto rep = check_po_complement(p, m);
  if (!rep.ok()) throw Error(ErrorCode::ConditionsViolated, rep.to_string());
  const OpenNet& Z = *m.target;
  const OpenNet& K = p.interface();
  const OpenNet& L = p.lhs();
  std::set<PlaceId> goneP;
  for (const auto& s : deleted_places(p)) goneP.insert(m.place(s));
  std::set<TransId> goneT;
  for (const auto& t : deleted_transitions(p)) goneT.insert(m.trans(t));

  OpenNet d;
  d.name = Z.name + "-context";
  for (const auto& s : Z.places)
    if (!goneP.count(s)) d.add_place(s, Z.initial.count(s), Z.is_open_in(s), Z.is_open_out(s));
  for (const auto& [t, tr] : Z.transitions)
    if (!goneT.count(t)) d.transitions[t] = tr;
  OpenNetMorphism n{p.l.source, nullptr, {}, {}};
  for (const auto& k : K.places) n.places[k] = m.place(p.l.place(k));
  for (const auto& [k, tr] : K.transitions) n.transitions[k] = m.trans(p.l.trans(k));
  for (const auto& k : K.openIn)
    if (!L.is_open_in(p.l.place(k))) d.openIn.insert(n.places[k]);
  for (const auto& k : K.openOut)
    if (!L.is_open_out(p.l.place(k))) d.openOut.insert(n.places[k]);

  auto dp = std::make_shared<const OpenNet>(std::move(d));
  n.target = dp;
  OpenNetMorphism dEmb{dp, m.target, {}, {}};
  for (const auto& s : dp->places) dEmb.places[s] = s;
  for (const auto& [t, tr] : dp->transitions) dEmb.transitions[t] = t;

  auto bad = composability_violations(n, p.l);
  if (!bad.empty()) throw Error(ErrorCode::NotComposable, "minimal complement is not composable with the rule: " + bad.front());
  return Complement{dp, std::move(n), std::move(dEmb)};
}

ConditionReport check_proper(const Rule& p, const OpenNetMorphism& m) {
  check_rule(p);
  ConditionReport rep = check_po_complement(p, m);
  added_arcs_open(p, m, "4", rep);
  auto linv = place_inverse(p.l);
  const OpenNet& R = p.rhs();
  for (const auto& s : in_places(m)) {
    auto k = linv.find(s);
    if (k != linv.end() && !R.is_open_in(p.r.place(k->second)))
      rep.violations.push_back({"5", '+', s, "host adds producers but the right-hand side place is not input open"});
  }
  for (const auto& s : out_places(m)) {
    auto k = linv.find(s);
    if (k != linv.end() && !R.is_open_out(p.r.place(k->second)))
      rep.violations.push_back({"5", '-', s, "host adds consumers but the right-hand side place is not output open"});
  }
  return rep;
}

TransformResult apply_rule(const Rule& p, const OpenNetMorphism& m, const OpenNet& z) {
  check_rule(p);
  if (!same_structure(z, *m.target)) throw Error(ErrorCode::DomainMismatch, "match does not target the given net");
  auto rep = check_proper(p, m);
  if (!rep.ok()) throw Error(ErrorCode::NotProper, rep.to_string());
  Complement c = pushout_complement(p, m);
  auto bad = composability_violations(c.n, p.r);
  if (!bad.empty()) throw Error(ErrorCode::NotComposableRight, bad.front());
  PushoutResult po = pushout(c.n, p.r);
  OpenNet renamed = *po.z3;
  renamed.name = z.name + "-rewritten";
  auto zp = std::make_shared<const OpenNet>(std::move(renamed));
  po.alpha1.target = zp;
  po.alpha2.target = zp;
  return TransformResult{c.d, c.n, c.dEmb, po.alpha2, po.alpha1, zp};
}

Correspondence rule_correspondence(const Rule& p) {
  const OpenNet& L = p.lhs();
  const OpenNet& K = p.interface();
  auto linv = place_inverse(p.l);
  Correspondence eta;
  for (const auto& s : L.openIn) {
    auto k = linv.find(s);
    if (k == linv.end() || !K.is_open_in(k->second))
      throw Error(ErrorCode::EtaUndefined, "input-open place '" + s + "' of the left-hand side is not an open interface place");
    eta.in[s] = p.r.place(k->second);
  }
  for (const auto& s : L.openOut) {
    auto k = linv.find(s);
    if (k == linv.end() || !K.is_open_out(k->second))
      throw Error(ErrorCode::EtaUndefined, "output-open place '" + s + "' of the left-hand side is not an open interface place");
    eta.out[s] = p.r.place(k->second);
  }
  return eta;
}

BisimVerdict check_behaviour_preserving(const Rule& p, const BisimOptions& opt) {
  check_rule(p);
  return check_bisim(p.lhs(), p.rhs(), rule_correspondence(p), opt);
}

ConditionReport check_cor_proper(const Rule& p, const OpenNetMorphism& m) {
  check_rule(p);
  rule_correspondence(p);
  ConditionReport rep;
  dangling(p, m, "a", rep);
  deleted_arcs_open(p, m, "b", rep);
  added_arcs_open(p, m, "c", rep);
  return rep;
}

Correspondence induced_correspondence(const Rule& p, const OpenNetMorphism& m, const TransformResult& t) {
  Correspondence eta = rule_correspondence(p);
  auto minv = place_inverse(m);
  const OpenNet& Z = *m.target;
  Correspondence r;
  auto map_one = [&](const PlaceId& s, const std::map<PlaceId, PlaceId>& etaPart) {
    if (t.d->has_place(s)) return t.b.place(s);
    return t.h.place(etaPart.at(minv.at(s)));
  };
  for (const auto& s : Z.openIn) r.in[s] = map_one(s, eta.in);
  for (const auto& s : Z.openOut) r.out[s] = map_one(s, eta.out);
  return r;
}

}  // namespace opennet
