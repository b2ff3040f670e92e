#include "opennet/equivalence.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>

namespace opennet {

std::optional<std::size_t> Refinement::split_level(std::size_t p, std::size_t q) const {
  for (std::size_t k = 0; k < levels.size(); ++k)
    if (levels[k][p] != levels[k][q]) return k;
  return std::nullopt;
}

Refinement refine_partition(const LabelledGraph& g) {
  std::vector<std::vector<std::pair<int, std::size_t>>> succ(g.size);
  for (const auto& [from, lab, to] : g.edges) succ.at(from).emplace_back(lab, to);

  Refinement r;
  r.levels.emplace_back(g.size, 0);
  std::size_t blocks = g.size == 0 ? 0 : 1;
  using Sig = std::pair<std::size_t, std::vector<std::pair<int, std::size_t>>>;
  while (true) {
    const auto& cur = r.levels.back();
    std::vector<Sig> sigs(g.size);
    for (std::size_t p = 0; p < g.size; ++p) {
      auto& moves = sigs[p].second;
      sigs[p].first = cur[p];
      for (const auto& [lab, to] : succ[p]) moves.emplace_back(lab, cur[to]);
      std::sort(moves.begin(), moves.end());
      moves.erase(std::unique(moves.begin(), moves.end()), moves.end());
    }
    std::map<Sig, std::size_t> ids;
    for (const auto& s : sigs) ids.emplace(s, 0);
    std::size_t next = 0;
    for (auto& [s, id] : ids) id = next++;
    if (ids.size() == blocks) break;
    blocks = ids.size();
    std::vector<std::size_t> level(g.size);
    for (std::size_t p = 0; p < g.size; ++p) level[p] = ids.at(sigs[p]);
    r.levels.push_back(std::move(level));
  }
  return r;
}

std::string to_string(BisimKind k) {
  std::string s = k.strength == Strength::Strong ? "strong" : "weak";
  return s + (k.mode == Mode::Firing ? " firing" : " step");
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Bisimilar: return "Bisimilar";
    case Verdict::NotBisimilar: return "NotBisimilar";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

std::string to_string(const StateRef& s) { return s ? to_string(*s) : std::string("Overflow"); }

namespace {

constexpr std::size_t kNever = std::numeric_limits<std::size_t>::max();
constexpr int kOverflowLoop = -1;

ObsLabel rename(const ObsLabel& l, const Correspondence& eta) {
  ObsLabel r;
  for (const auto& [o, n] : l) {
    switch (o.kind) {
      case Obs::Kind::Label: r.add(o, n); break;
      case Obs::Kind::Plus: r.add(Obs::plus(eta.in.at(o.id)), n); break;
      case Obs::Kind::Minus: r.add(Obs::minus(eta.out.at(o.id)), n); break;
    }
  }
  return r;
}

// Both transition systems side by side; states of the first come first.
struct Union {
  Lts l1, l2;
  std::vector<ObsLabel> labels;  // interned, in the second net's vocabulary
  std::map<ObsLabel, int> labelIds;
  std::vector<std::vector<std::pair<int, std::size_t>>> succ;

  std::size_t n1() const { return l1.states.size(); }
  std::size_t size() const { return l1.states.size() + l2.states.size(); }
  int side(std::size_t i) const { return i < n1() ? 1 : 2; }
  bool overflow(std::size_t i) const { return i < n1() ? l1.is_overflow(i) : l2.is_overflow(i - n1()); }
  StateRef state(std::size_t i) const {
    if (overflow(i)) return std::nullopt;
    return i < n1() ? l1.states[i] : l2.states[i - n1()];
  }
  std::optional<std::size_t> overflow1() const { return l1.overflow; }
  std::optional<std::size_t> overflow2() const {
    return l2.overflow ? std::optional<std::size_t>(*l2.overflow + n1()) : std::nullopt;
  }

  int intern(const ObsLabel& l) {
    auto [it, fresh] = labelIds.emplace(l, static_cast<int>(labels.size()));
    if (fresh) labels.push_back(l);
    return it->second;
  }

  Union(Lts a, Lts b, const Correspondence& eta) : l1(std::move(a)), l2(std::move(b)) {
    succ.resize(size());
    for (const auto& e : l1.edges) succ[e.from].emplace_back(intern(rename(e.label, eta)), e.to);
    for (const auto& e : l2.edges) succ[e.from + n1()].emplace_back(intern(e.label), e.to + n1());
    for (auto& s : succ) std::sort(s.begin(), s.end());
  }

  LabelledGraph graph(bool overflowLoops) const {
    LabelledGraph g;
    g.size = size();
    for (std::size_t p = 0; p < size(); ++p) {
      for (const auto& [lab, to] : succ[p]) g.edges.emplace_back(p, lab, to);
      if (overflowLoops && overflow(p)) g.edges.emplace_back(p, kOverflowLoop, p);
    }
    return g;
  }

  bool label_less(int a, int b) const { return labels[a] < labels[b]; }
};

struct RawRound {
  std::size_t attackerFrom, attackerTo, defenderFrom;
  int label;
  bool stuck;
  std::size_t defenderTo;
};

PlayRound finish_round(const Union& u, const RawRound& r, const Correspondence& eta) {
  PlayRound pr;
  pr.attacker = u.side(r.attackerFrom);
  pr.attackerFrom = u.state(r.attackerFrom);
  pr.attackerTo = u.state(r.attackerTo);
  pr.defenderFrom = u.state(r.defenderFrom);
  pr.label = pr.attacker == 1 ? rename(u.labels[r.label], inverse(eta)) : u.labels[r.label];
  pr.defenderStuck = r.stuck;
  if (!r.stuck) pr.defenderTo = u.state(r.defenderTo);
  return pr;
}

// Shortest distinguishing play read off the refinement history.
std::vector<RawRound> play_from_refinement(const Union& u, const Refinement& ref, std::size_t p, std::size_t q) {
  std::vector<RawRound> play;
  while (true) {
    auto k = ref.split_level(p, q);
    if (!k || *k == 0) break;
    const auto& prev = ref.levels[*k - 1];
    std::optional<RawRound> best;
    for (int side = 0; side < 2; ++side) {
      std::size_t a = side == 0 ? p : q;
      std::size_t d = side == 0 ? q : p;
      for (const auto& [lab, a2] : u.succ[a]) {
        std::vector<std::size_t> answers;
        bool escapes = false;
        for (const auto& [lab2, d2] : u.succ[d])
          if (lab2 == lab) {
            if (prev[d2] == prev[a2]) escapes = true;
            answers.push_back(d2);
          }
        if (escapes) continue;
        RawRound cand{a, a2, d, lab, answers.empty(), 0};
        if (!answers.empty()) {
          // Defender's most resilient answer, earliest state on ties.
          std::optional<std::size_t> bestLevel;
          for (std::size_t d2 : answers) {
            std::size_t lvl = ref.split_level(a2, d2).value_or(kNever);
            if (!bestLevel || lvl > *bestLevel) {
              cand.defenderTo = d2;
              bestLevel = lvl;
            }
          }
        }
        auto key = [&](const RawRound& r) { return std::make_tuple(u.labels[r.label], u.side(r.attackerFrom), r.attackerTo); };
        if (!best || key(cand) < key(*best)) best = cand;
      }
    }
    if (!best) break;
    play.push_back(*best);
    if (best->stuck) break;
    p = best->attackerTo;
    q = best->defenderTo;
    if (u.side(p) == 2) std::swap(p, q);
  }
  return play;
}

// Bisimulation game in which Overflow is related to every state. Used when
// truncation alone separates the two systems.
struct LenientGame {
  struct Move {
    std::size_t attackerTo;
    int attackerSide;
    int label;
    std::vector<std::size_t> responses;  // pair indices
  };
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> index;
  std::vector<std::vector<Move>> moves;
  std::vector<std::size_t> fail;
};

LenientGame solve_lenient(const Union& u, std::size_t start1, std::size_t start2) {
  LenientGame g;
  auto silentId = u.labelIds.find(ObsLabel{});
  auto escapes = [&](std::size_t d, std::optional<std::size_t> over) {
    if (!over || silentId == u.labelIds.end() || !u.l1.weak) return false;
    for (const auto& [lab, to] : u.succ[d])
      if (lab == silentId->second && to == *over) return true;
    return false;
  };
  std::deque<std::size_t> queue;
  auto intern = [&](std::size_t p, std::size_t q) {
    auto [it, fresh] = g.index.emplace(std::make_pair(p, q), g.pairs.size());
    if (fresh) {
      g.pairs.emplace_back(p, q);
      g.moves.emplace_back();
      queue.push_back(it->second);
    }
    return it->second;
  };
  intern(start1, start2);
  while (!queue.empty()) {
    std::size_t i = queue.front();
    queue.pop_front();
    auto [p, q] = g.pairs[i];
    if (u.overflow(p) || u.overflow(q)) continue;
    std::vector<LenientGame::Move> ms;
    for (const auto& [lab, p2] : u.succ[p]) {
      LenientGame::Move m{p2, 1, lab, {}};
      for (const auto& [lab2, q2] : u.succ[q])
        if (lab2 == lab) m.responses.push_back(intern(p2, q2));
      if (escapes(q, u.overflow2())) m.responses.push_back(intern(p2, *u.overflow2()));
      ms.push_back(std::move(m));
    }
    for (const auto& [lab, q2] : u.succ[q]) {
      LenientGame::Move m{q2, 2, lab, {}};
      for (const auto& [lab2, p2] : u.succ[p])
        if (lab2 == lab) m.responses.push_back(intern(p2, q2));
      if (escapes(p, u.overflow1())) m.responses.push_back(intern(*u.overflow1(), q2));
      ms.push_back(std::move(m));
    }
    g.moves[i] = std::move(ms);
  }

  g.fail.assign(g.pairs.size(), kNever);
  for (std::size_t k = 1;; ++k) {
    std::vector<std::size_t> now;
    for (std::size_t i = 0; i < g.pairs.size(); ++i) {
      if (g.fail[i] != kNever) continue;
      for (const auto& m : g.moves[i]) {
        bool wins = std::all_of(m.responses.begin(), m.responses.end(), [&](std::size_t r) { return g.fail[r] < k; });
        if (wins) {
          now.push_back(i);
          break;
        }
      }
    }
    if (now.empty()) break;
    for (std::size_t i : now) g.fail[i] = k;
  }
  return g;
}

std::vector<RawRound> play_from_game(const Union& u, const LenientGame& g) {
  std::vector<RawRound> play;
  std::size_t i = 0;
  while (g.fail[i] != kNever) {
    std::size_t k = g.fail[i];
    auto [p, q] = g.pairs[i];
    const LenientGame::Move* best = nullptr;
    for (const auto& m : g.moves[i]) {
      bool wins = std::all_of(m.responses.begin(), m.responses.end(), [&](std::size_t r) { return g.fail[r] < k; });
      if (!wins) continue;
      auto key = [&](const LenientGame::Move& x) { return std::make_tuple(u.labels[x.label], x.attackerSide, x.attackerTo); };
      if (!best || key(m) < key(*best)) best = &m;
    }
    if (!best) break;
    RawRound r{best->attackerSide == 1 ? p : q, best->attackerTo, best->attackerSide == 1 ? q : p, best->label,
               best->responses.empty(), 0};
    std::size_t nextPair = 0;
    if (!r.stuck) {
      std::size_t bestFail = 0;
      bool first = true;
      for (std::size_t resp : best->responses)
        if (first || g.fail[resp] > bestFail) {
          first = false;
          bestFail = g.fail[resp];
          nextPair = resp;
        }
      const auto& [np, nq] = g.pairs[nextPair];
      r.defenderTo = best->attackerSide == 1 ? nq : np;
    }
    play.push_back(r);
    if (r.stuck) break;
    i = nextPair;
  }
  return play;
}

BisimVerdict check_with(const OpenNet& z1, const OpenNet& z2, const Correspondence& eta, const BisimOptions& opt) {
  check_correspondence(eta, z1, z2);
  BisimVerdict v;
  v.kind = opt.kind;
  v.bound = opt.cap;
  v.eta = eta;

  LtsOptions lo;
  lo.mode = opt.kind.mode;
  lo.cap = opt.cap;
  lo.maxStep = opt.maxStep;
  lo.maxStates = opt.maxStates;
  Lts l1, l2;
  try {
    l1 = build_lts(z1, lo);
    l2 = build_lts(z2, lo);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::BudgetExceeded) throw;
    v.result = Verdict::Inconclusive;
    v.note = e.what();
    return v;
  }
  if (opt.kind.strength == Strength::Weak) {
    l1 = weak_closure(l1, opt.tau);
    l2 = weak_closure(l2, opt.tau);
  }
  Union u(std::move(l1), std::move(l2), eta);
  const std::size_t i1 = u.l1.initial;
  const std::size_t i2 = u.l2.initial + u.n1();
  const bool truncated = u.l1.overflow || u.l2.overflow;

  auto relation = [&](const Refinement& ref) {
    const auto& blk = ref.stable();
    for (std::size_t p = 0; p < u.n1(); ++p)
      for (std::size_t q = u.n1(); q < u.size(); ++q)
        if (blk[p] == blk[q]) v.witness.emplace_back(u.state(p), u.state(q));
  };

  Refinement ref = refine_partition(u.graph(truncated));
  if (ref.stable()[i1] == ref.stable()[i2]) {
    v.result = Verdict::Bisimilar;
    v.touchedOverflow = truncated;
    relation(ref);
    return v;
  }
  if (!truncated) {
    v.result = Verdict::NotBisimilar;
    for (const auto& r : play_from_refinement(u, ref, i1, i2)) v.play.push_back(finish_round(u, r, eta));
    return v;
  }

  LenientGame g = solve_lenient(u, i1, i2);
  if (g.fail[0] == kNever) {
    v.result = Verdict::Bisimilar;
    v.touchedOverflow = true;
    v.note = "related only when Overflow is treated as matching every state";
    for (std::size_t i = 0; i < g.pairs.size(); ++i)
      if (g.fail[i] == kNever) v.witness.emplace_back(u.state(g.pairs[i].first), u.state(g.pairs[i].second));
    return v;
  }
  v.result = Verdict::NotBisimilar;
  for (const auto& r : play_from_game(u, g)) {
    v.play.push_back(finish_round(u, r, eta));
    if (u.overflow(r.attackerTo) || (!r.stuck && u.overflow(r.defenderTo))) v.touchedOverflow = true;
  }
  return v;
}

}  // namespace

BisimVerdict check_bisim(const OpenNet& z1, const OpenNet& z2, const std::optional<Correspondence>& eta,
                         const BisimOptions& opt) {
  if (eta) return check_with(z1, z2, *eta, opt);
  if (z1.openIn.size() > 5 || z1.openOut.size() > 5 || z2.openIn.size() > 5 || z2.openOut.size() > 5)
    throw Error(ErrorCode::NotACorrespondence, "automatic correspondence search is limited to five open places");
  auto all = all_correspondences(z1, z2);
  if (all.empty()) {
    BisimVerdict v;
    v.kind = opt.kind;
    v.bound = opt.cap;
    v.result = Verdict::NotBisimilar;
    v.note = "no correspondence exists between the open places";
    return v;
  }
  std::optional<BisimVerdict> firstRefuted, firstInconclusive;
  for (const auto& c : all) {
    BisimVerdict v = check_with(z1, z2, c, opt);
    if (v.result == Verdict::Bisimilar) return v;
    if (v.result == Verdict::Inconclusive && !firstInconclusive) firstInconclusive = v;
    if (v.result == Verdict::NotBisimilar && !firstRefuted) firstRefuted = v;
  }
  return firstInconclusive ? *firstInconclusive : *firstRefuted;
}

Count out_degree(const OpenNet& z, const PlaceId& s) {
  if (!z.has_place(s)) throw Error(ErrorCode::UnknownPlace, "unknown place '" + s + "'");
  Count d = z.is_open_out(s) ? 1 : 0;
  for (const auto& [t, tr] : z.transitions) d = std::max(d, tr.pre.count(s));
  return d;
}

bool subtractable(const OpenNet& z, const Marking& u, const Marking& v) {
  for (const auto& [s, n] : v) {
    if (!z.is_open_in(s)) return false;
    Count d = out_degree(z, s);
    Count room = u.count(s) > d ? u.count(s) - d : 0;
    if (n > room) return false;
  }
  return true;
}

namespace {

// One direction of the up-to transfer condition.
struct UpToSide {
  const OpenNet& a;  // attacker
  const OpenNet& d;  // defender
  Correspondence eta;  // a -> d
  const std::set<Label>& tau;
  Count bound;

  ObsLabel visible(const OpenNet& z, const ExtendedEvent& e) const {
    ObsLabel r;
    for (const auto& [o, n] : observe(z, Events::singleton(e)))
      if (!(o.kind == Obs::Kind::Label && tau.count(o.id))) r.add(o, n);
    return r;
  }

  bool within(const Marking& m) const {
    return std::all_of(m.begin(), m.end(), [&](const auto& e) { return e.second <= bound; });
  }

  std::set<Marking> silent_closure(const Marking& from) const {
    std::set<Marking> seen{from};
    std::deque<Marking> queue{from};
    while (!queue.empty()) {
      Marking m = queue.front();
      queue.pop_front();
      for (const auto& e : extended_events(d)) {
        if (!visible(d, e).empty()) continue;
        Events one = Events::singleton(e);
        if (!leq(pre_of(d, one), m)) continue;
        Marking n = fire(d, m, one);
        if (within(n) && seen.insert(n).second) queue.push_back(n);
      }
    }
    return seen;
  }

  std::set<Marking> answers(const Marking& from, const ObsLabel& l) const {
    std::set<Marking> pre = silent_closure(from);
    if (l.empty()) return pre;
    std::set<Marking> r;
    for (const auto& m : pre)
      for (const auto& e : extended_events(d)) {
        if (visible(d, e) != l) continue;
        Events one = Events::singleton(e);
        if (!leq(pre_of(d, one), m)) continue;
        Marking n = fire(d, m, one);
        if (!within(n)) continue;
        auto post = silent_closure(n);
        r.insert(post.begin(), post.end());
      }
    return r;
  }

  std::vector<Marking> subtractables(const Marking& u) const {
    std::vector<Marking> r{Marking{}};
    for (const auto& s : a.openIn) {
      Count d0 = out_degree(a, s);
      Count room = u.count(s) > d0 ? u.count(s) - d0 : 0;
      std::vector<Marking> next;
      for (const auto& v : r)
        for (Count k = 0; k <= room; ++k) next.push_back(Marking(v).add(s, k));
      r = std::move(next);
    }
    return r;
  }
};

ObsLabel rename_to(const ObsLabel& l, const Correspondence& eta) { return rename(l, eta); }

}  // namespace

UpToVerdict check_upto(const OpenNet& z1, const OpenNet& z2, const Correspondence& eta, const UpToRelation& r,
                       const std::set<Label>& tau, unsigned cap, Mode mode) {
  if (mode != Mode::Firing)
    throw Error(ErrorCode::UnsupportedMode, "up-to checking is defined for firing bisimilarity only");
  check_correspondence(eta, z1, z2);
  std::set<std::pair<Marking, Marking>> rel;
  for (const auto& p : r.pairs) {
    for (const auto* m : {&p.first, &p.second})
      for (const auto& [s, n] : *m)
        if (n > cap)
          throw Error(ErrorCode::PairExceedsCap, "pair marking " + to_string(*m) + " exceeds the cap of " + std::to_string(cap));
    rel.insert(p);
  }

  Count maxPost = 1;
  for (const auto* z : {&z1, &z2})
    for (const auto& [t, tr] : z->transitions)
      for (const auto& [s, n] : tr.post) maxPost = std::max(maxPost, n);

  UpToVerdict verdict;
  verdict.bound = cap;
  const Count bound = cap + 2 * maxPost;
  UpToSide sides[2] = {UpToSide{z1, z2, eta, tau, bound}, UpToSide{z2, z1, inverse(eta), tau, bound}};
  for (const auto& [u1, u2] : rel) {
    for (int side = 0; side < 2; ++side) {
      const UpToSide& sd = sides[side];
      const Marking& ua = side == 0 ? u1 : u2;
      const Marking& ud = side == 0 ? u2 : u1;
      for (const auto& e : extended_events(sd.a)) {
        Events one = Events::singleton(e);
        if (!leq(pre_of(sd.a, one), ua)) continue;
        Marking ua2 = fire(sd.a, ua, one);
        ObsLabel lab = sd.visible(sd.a, e);
        bool matched = false;
        auto subs = sd.subtractables(ua2);
        for (const auto& ud2 : sd.answers(ud, rename_to(lab, sd.eta))) {
          for (const auto& v : subs) {
            Marking vd = image(sd.eta.in, v);
            if (!leq(vd, ud2)) continue;
            Marking ra = diff(ua2, v), rd = diff(ud2, vd);
            if (rel.count(side == 0 ? std::make_pair(ra, rd) : std::make_pair(rd, ra))) {
              matched = true;
              break;
            }
          }
          if (matched) break;
        }
        if (!matched) {
          verdict.failure = UpToFailure{u1, u2, side + 1, lab, ua2};
          return verdict;
        }
      }
    }
  }
  verdict.accepted = true;
  return verdict;
}

namespace {

OpenNet toggle(const OpenNet& z, const PlaceId& s, Polarity p, bool open) {
  if (!z.has_place(s)) throw Error(ErrorCode::UnknownPlace, "unknown place '" + s + "'");
  OpenNet r = z;
  auto& set = p == Polarity::In ? r.openIn : r.openOut;
  if (open) {
    set.insert(s);
  } else if (!set.erase(s)) {
    throw Error(ErrorCode::PlaceNotOpen, "place '" + s + "' is not " + (p == Polarity::In ? "input" : "output") + " open");
  }
  return r;
}

}  // namespace

OpenNet close_place(const OpenNet& z, const PlaceId& s, Polarity p) { return toggle(z, s, p, false); }
OpenNet open_place(const OpenNet& z, const PlaceId& s, Polarity p) { return toggle(z, s, p, true); }

}  // namespace opennet
