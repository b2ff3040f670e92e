#include "opennet/semantics.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <sstream>

namespace opennet {

std::string to_string(const ExtendedEvent& e) {
  switch (e.kind) {
    case ExtendedEvent::Kind::Trans: return e.id;
    case ExtendedEvent::Kind::Plus: return "+" + e.id;
    case ExtendedEvent::Kind::Minus: return "-" + e.id;
  }
  return e.id;
}

std::string to_string(const Events& a) {
  return to_string(a, [](const ExtendedEvent& e) { return to_string(e); });
}

std::string to_string(const Obs& o) {
  switch (o.kind) {
    case Obs::Kind::Label: return o.id;
    case Obs::Kind::Plus: return "+" + o.id;
    case Obs::Kind::Minus: return "-" + o.id;
  }
  return o.id;
}

std::string to_string(const ObsLabel& l) {
  return to_string(l, [](const Obs& o) { return to_string(o); });
}

bool is_legal(const OpenNet& z, const ExtendedEvent& e) {
  switch (e.kind) {
    case ExtendedEvent::Kind::Trans: return z.has_transition(e.id);
    case ExtendedEvent::Kind::Plus: return z.is_open_in(e.id);
    case ExtendedEvent::Kind::Minus: return z.is_open_out(e.id);
  }
  return false;
}

namespace {

void require_legal(const OpenNet& z, const Events& a) {
  for (const auto& [e, n] : a)
    if (!is_legal(z, e)) throw Error(ErrorCode::IllegalEvent, "event '" + to_string(e) + "' is not an event of the net");
}

}  // namespace

Marking pre_of(const OpenNet& z, const Events& a) {
  require_legal(z, a);
  Marking m;
  for (const auto& [e, n] : a) {
    if (e.kind == ExtendedEvent::Kind::Trans)
      m += z.transition(e.id).pre.scaled(n);
    else if (e.kind == ExtendedEvent::Kind::Minus)
      m.add(e.id, n);
  }
  return m;
}

Marking post_of(const OpenNet& z, const Events& a) {
  require_legal(z, a);
  Marking m;
  for (const auto& [e, n] : a) {
    if (e.kind == ExtendedEvent::Kind::Trans)
      m += z.transition(e.id).post.scaled(n);
    else if (e.kind == ExtendedEvent::Kind::Plus)
      m.add(e.id, n);
  }
  return m;
}

ObsLabel observe(const OpenNet& z, const Events& a) {
  ObsLabel l;
  for (const auto& [e, n] : a) {
    switch (e.kind) {
      case ExtendedEvent::Kind::Trans: l.add(Obs::label(z.transition(e.id).label), n); break;
      case ExtendedEvent::Kind::Plus: l.add(Obs::plus(e.id), n); break;
      case ExtendedEvent::Kind::Minus: l.add(Obs::minus(e.id), n); break;
    }
  }
  return l;
}

Marking fire(const OpenNet& z, const Marking& u, const Events& a) {
  Marking pre = pre_of(z, a);
  if (!leq(pre, u)) throw Error(ErrorCode::NotEnabled, "step " + to_string(a) + " is not enabled at " + to_string(u));
  return diff(u, pre) + post_of(z, a);
}

std::vector<ExtendedEvent> extended_events(const OpenNet& z) {
  std::vector<ExtendedEvent> r;
  for (const auto& [t, tr] : z.transitions) r.push_back(ExtendedEvent::trans(t));
  for (const auto& s : z.openIn) r.push_back(ExtendedEvent::plus(s));
  for (const auto& s : z.openOut) r.push_back(ExtendedEvent::minus(s));
  return r;
}

namespace {

using Vec = std::vector<Count>;
using Arcs = std::vector<std::pair<std::size_t, Count>>;

struct DenseEvent {
  ExtendedEvent event;
  Obs obs;
  Arcs pre;
  Arcs post;
};

struct DenseNet {
  std::vector<PlaceId> places;
  std::map<PlaceId, std::size_t> index;
  std::vector<DenseEvent> events;

  explicit DenseNet(const OpenNet& z) : places(z.places.begin(), z.places.end()) {
    for (std::size_t i = 0; i < places.size(); ++i) index[places[i]] = i;
    auto arcs = [&](const Marking& m) {
      Arcs a;
      for (const auto& [s, n] : m) a.emplace_back(index.at(s), n);
      return a;
    };
    for (const auto& e : extended_events(z)) {
      Events one = Events::singleton(e);
      events.push_back({e, observe(z, one).begin()->first, arcs(pre_of(z, one)), arcs(post_of(z, one))});
    }
  }

  Vec vec(const Marking& m) const {
    Vec v(places.size(), 0);
    for (const auto& [s, n] : m) {
      auto it = index.find(s);
      if (it == index.end()) throw Error(ErrorCode::UnknownPlace, "marking refers to unknown place '" + s + "'");
      v[it->second] = n;
    }
    return v;
  }

  Marking marking(const Vec& v) const {
    Marking m;
    for (std::size_t i = 0; i < v.size(); ++i) m.add(places[i], v[i]);
    return m;
  }
};

using Selection = std::vector<std::pair<std::size_t, Count>>;

// Enumerates every nonempty multiset of events with at most maxSize elements
// whose pre-set is covered by u; reports the selection and its target.
void enumerate_steps(const DenseNet& dn, const Vec& u, unsigned maxSize,
                     const std::function<void(const Selection&, const Vec&)>& report) {
  Vec avail = u;
  Vec produced(u.size(), 0);
  Selection sel;
  std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned remaining) {
    if (i == dn.events.size()) {
      if (sel.empty()) return;
      Vec target(u.size());
      for (std::size_t p = 0; p < u.size(); ++p) target[p] = detail::checked_add(avail[p], produced[p]);
      report(sel, target);
      return;
    }
    rec(i + 1, remaining);
    const DenseEvent& ev = dn.events[i];
    Count k = 0;
    while (k < remaining) {
      bool ok = true;
      for (const auto& [p, n] : ev.pre)
        if (avail[p] < n) ok = false;
      if (!ok) break;
      for (const auto& [p, n] : ev.pre) avail[p] -= n;
      for (const auto& [p, n] : ev.post) produced[p] += n;
      ++k;
      sel.emplace_back(i, k);
      rec(i + 1, remaining - static_cast<unsigned>(k));
      sel.pop_back();
    }
    for (const auto& [p, n] : ev.pre) avail[p] += n * k;
    for (const auto& [p, n] : ev.post) produced[p] -= n * k;
  };
  rec(0, maxSize);
}

bool within(const Vec& v, unsigned cap) {
  return std::all_of(v.begin(), v.end(), [&](Count n) { return n <= cap; });
}

}  // namespace

std::vector<Step> enabled_steps(const OpenNet& z, const Marking& u, Mode mode, unsigned cap, unsigned maxStep) {
  DenseNet dn(z);
  std::vector<Step> r;
  unsigned maxSize = mode == Mode::Firing ? 1 : maxStep;
  enumerate_steps(dn, dn.vec(u), maxSize, [&](const Selection& sel, const Vec& target) {
    if (!within(target, cap)) return;
    Events a;
    for (const auto& [i, k] : sel) a.add(dn.events[i].event, k);
    r.push_back(Step{std::move(a), u, dn.marking(target)});
  });
  std::sort(r.begin(), r.end(), [](const Step& a, const Step& b) { return a.events < b.events; });
  return r;
}

Events project_event(const OpenNetMorphism& f, const ExtendedEvent& e) {
  Events r;
  if (e.kind == ExtendedEvent::Kind::Trans) {
    for (const auto& [t, t2] : f.transitions)
      if (t2 == e.id) return Events::singleton(ExtendedEvent::trans(t));
    const Transition& tr = f.target->transition(e.id);
    for (const auto& [s, n] : project(f.places, tr.pre)) r.add(ExtendedEvent::minus(s), n);
    for (const auto& [s, n] : project(f.places, tr.post)) r.add(ExtendedEvent::plus(s), n);
    return r;
  }
  for (const auto& [s, s2] : f.places)
    if (s2 == e.id) r.add(ExtendedEvent{e.kind, s});
  return r;
}

Events project_events(const OpenNetMorphism& f, const Events& a) {
  Events r;
  for (const auto& [e, n] : a) r += project_event(f, e).scaled(n);
  return r;
}

Step project_step(const OpenNetMorphism& f, const Step& st) {
  return Step{project_events(f, st.events), project(f.places, st.from), project(f.places, st.to)};
}

Events image_events(const OpenNetMorphism& f, const Events& a) {
  Events r;
  for (const auto& [e, n] : a)
    r.add(ExtendedEvent{e.kind, e.kind == ExtendedEvent::Kind::Trans ? f.trans(e.id) : f.place(e.id)}, n);
  return r;
}

Step compose_steps(const PushoutResult& po, const Step& st1, const Step& st2, const StepSplit& split) {
  SetPushout<PlaceId, PlaceId, PlaceId, PlaceId> d{po.f1.places, po.f2.places, po.alpha1.places, po.alpha2.places};
  Marking from = join(st1.from, st2.from, d);
  if (split.a1Internal + split.a1External != st1.events || split.a2Internal + split.a2External != st2.events)
    throw Error(ErrorCode::NotCompatible, "split does not partition the component steps");
  if (image_events(po.f2, project_events(po.f1, split.a1Internal)) != split.a2External ||
      image_events(po.f1, project_events(po.f2, split.a2Internal)) != split.a1External)
    throw Error(ErrorCode::NotCompatible, "external parts do not mirror the internal parts");
  Marking to = join(st1.to, st2.to, d);
  Events a3 = image_events(po.alpha1, split.a1Internal) + image_events(po.alpha2, split.a2Internal);
  if (fire(*po.z3, from, a3) != to)
    throw Error(ErrorCode::NotCompatible, "component steps do not agree with their markings");
  return Step{std::move(a3), std::move(from), std::move(to)};
}

Decomposition decompose_step(const PushoutResult& po, const Step& st3) {
  auto inv1t = transition_inverse(po.alpha1);
  auto inv2t = transition_inverse(po.alpha2);
  auto inv2p = place_inverse(po.alpha2);
  Events left, right;
  for (const auto& [e, n] : st3.events) {
    bool toLeft = e.kind == ExtendedEvent::Kind::Trans ? (inv1t.count(e.id) && !inv2t.count(e.id))
                                                       : !inv2p.count(e.id);
    (toLeft ? left : right).add(e, n);
  }
  Decomposition r;
  r.st1 = project_step(po.alpha1, st3);
  r.st2 = project_step(po.alpha2, st3);
  r.split.a1Internal = project_events(po.alpha1, left);
  r.split.a2Internal = project_events(po.alpha2, right);
  r.split.a1External = diff(r.st1.events, r.split.a1Internal);
  r.split.a2External = diff(r.st2.events, r.split.a2Internal);
  return r;
}

std::string Lts::state_name(std::size_t i) const {
  if (is_overflow(i)) return "Overflow";
  return to_string(states.at(i));
}

Lts build_lts(const OpenNet& z, Mode mode, unsigned cap, unsigned maxStep) {
  LtsOptions opt;
  opt.mode = mode;
  opt.cap = cap;
  opt.maxStep = maxStep;
  return build_lts(z, opt);
}

Lts build_lts(const OpenNet& z, const LtsOptions& opt) {
  DenseNet dn(z);
  Vec init = dn.vec(z.initial);
  if (!within(init, opt.cap))
    throw Error(ErrorCode::InitialExceedsCap, "initial marking exceeds the cap of " + std::to_string(opt.cap));

  Lts l;
  l.mode = opt.mode;
  l.cap = opt.cap;
  l.maxStep = opt.maxStep;
  std::vector<Vec> vecs;
  std::map<Vec, std::size_t> index;
  auto intern = [&](const Vec& v, std::deque<std::size_t>& queue) {
    auto [it, fresh] = index.emplace(v, l.states.size());
    if (fresh) {
      if (l.states.size() >= opt.maxStates)
        throw Error(ErrorCode::BudgetExceeded, "state budget of " + std::to_string(opt.maxStates) + " exceeded");
      l.states.push_back(dn.marking(v));
      vecs.push_back(v);
      queue.push_back(it->second);
    }
    return it->second;
  };

  std::deque<std::size_t> queue;
  l.initial = intern(init, queue);
  unsigned maxSize = opt.mode == Mode::Firing ? 1 : opt.maxStep;
  // Successors keyed by (label, overflow?, target) so edge order is canonical.
  using Key = std::tuple<ObsLabel, bool, Vec>;
  while (!queue.empty()) {
    std::size_t cur = queue.front();
    queue.pop_front();
    std::set<Key> succ;
    enumerate_steps(dn, vecs[cur], maxSize, [&](const Selection& sel, const Vec& target) {
      ObsLabel lab;
      for (const auto& [i, k] : sel) lab.add(dn.events[i].obs, k);
      if (within(target, opt.cap))
        succ.emplace(std::move(lab), false, target);
      else
        succ.emplace(std::move(lab), true, Vec{});
    });
    for (const auto& [lab, over, target] : succ) {
      std::size_t to;
      if (over) {
        if (!l.overflow) {
          l.overflow = l.states.size();
          l.states.emplace_back();
          vecs.emplace_back();
        }
        to = *l.overflow;
      } else {
        to = intern(target, queue);
      }
      l.edges.push_back(LtsEdge{cur, lab, to});
    }
  }
  return l;
}

namespace {

ObsLabel visible_part(const ObsLabel& l, const std::set<Label>& tau) {
  ObsLabel r;
  for (const auto& [o, n] : l)
    if (!(o.kind == Obs::Kind::Label && tau.count(o.id))) r.add(o, n);
  return r;
}

}  // namespace

Lts weak_closure(const Lts& l, const std::set<Label>& tau) {
  const std::size_t n = l.states.size();
  std::vector<std::vector<std::size_t>> silent(n);
  std::vector<std::vector<std::pair<ObsLabel, std::size_t>>> visible(n);
  for (const auto& e : l.edges) {
    ObsLabel v = visible_part(e.label, tau);
    if (v.empty())
      silent[e.from].push_back(e.to);
    else if (l.mode == Mode::Firing || v == e.label)
      visible[e.from].emplace_back(std::move(v), e.to);
  }

  std::vector<std::vector<std::size_t>> closure(n);
  for (std::size_t u = 0; u < n; ++u) {
    std::vector<char> seen(n, 0);
    std::vector<std::size_t> stack{u};
    seen[u] = 1;
    while (!stack.empty()) {
      std::size_t x = stack.back();
      stack.pop_back();
      closure[u].push_back(x);
      for (std::size_t y : silent[x])
        if (!seen[y]) {
          seen[y] = 1;
          stack.push_back(y);
        }
    }
    std::sort(closure[u].begin(), closure[u].end());
  }

  // after[v]: every (ℓ, x) with v →ℓ w ⇒0 x.
  std::vector<std::set<std::pair<ObsLabel, std::size_t>>> after(n);
  for (std::size_t v = 0; v < n; ++v)
    for (const auto& [lab, w] : visible[v])
      for (std::size_t x : closure[w]) after[v].emplace(lab, x);

  Lts r = l;
  r.weak = true;
  r.edges.clear();
  for (std::size_t u = 0; u < n; ++u) {
    std::set<std::pair<ObsLabel, std::size_t>> out;
    for (std::size_t v : closure[u]) {
      out.emplace(ObsLabel{}, v);
      out.insert(after[v].begin(), after[v].end());
    }
    for (const auto& [lab, x] : out) r.edges.push_back(LtsEdge{u, lab, x});
  }
  return r;
}

namespace {

std::string dot_escape(const std::string& s) {
  std::string r;
  for (char c : s) {
    if (c == '"' || c == '\\') r += '\\';
    r += c;
  }
  return r;
}

}  // namespace

std::string to_dot(const Lts& l) {
  std::ostringstream os;
  os << "digraph lts {\n  rankdir=LR;\n";
  for (std::size_t i = 0; i < l.states.size(); ++i) {
    os << "  s" << i << " [label=\"" << dot_escape(l.state_name(i)) << '"';
    if (l.is_overflow(i)) os << ", shape=doubleoctagon";
    if (i == l.initial) os << ", penwidth=2";
    os << "];\n";
  }
  for (const auto& e : l.edges)
    os << "  s" << e.from << " -> s" << e.to << " [label=\"" << dot_escape(to_string(e.label)) << "\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace opennet
