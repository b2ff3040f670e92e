// One line per criterion: [PASS] or [FAIL], followed by a short account.
#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

#include "oracles.hpp"

using namespace fixtures;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail.str("");
      detail << what;
    }
  }
};

BisimOptions opts(Strength s, Mode m, unsigned cap, std::set<Label> tau = {}) {
  BisimOptions o;
  o.kind = BisimKind{s, m};
  o.cap = cap;
  o.tau = std::move(tau);
  return o;
}

NetPtr share(OpenNet z) { return std::make_shared<const OpenNet>(std::move(z)); }

void agency(Outcome& out) {
  auto a = agency_a(), b = agency_b();
  auto f = check_bisim(a, b, Correspondence{}, opts(Strength::Strong, Mode::Firing, 2));
  auto s = check_bisim(a, b, Correspondence{}, opts(Strength::Strong, Mode::Step, 2));
  ObsLabel parallel{{Obs::label("bookFlight"), 1}, {Obs::label("bookHotel"), 1}};
  out.require(f.result == Verdict::Bisimilar, "firing verdict " + to_string(f.result));
  out.require(s.result == Verdict::NotBisimilar, "step verdict " + to_string(s.result));
  out.require(!s.play.empty() && s.play[0].label == parallel, "step play does not open on {bookFlight, bookHotel}");
  out.detail << "firing " << to_string(f.result) << ", step " << to_string(s.result) << " opening on "
             << (s.play.empty() ? "-" : to_string(s.play[0].label));
}

void ccs(Outcome& out) {
  Correspondence eta{{}, {{"s1", "s1'"}}};
  auto open = check_bisim(ccs_tau_a(), ccs_a(), eta, opts(Strength::Weak, Mode::Firing, 3, {"tau"}));
  auto closed =
      check_bisim(ccs_tau_a(false), ccs_a(false), Correspondence{}, opts(Strength::Weak, Mode::Firing, 3, {"tau"}));
  auto oracleOpen = oracle::weak_firing_bisimilar(ccs_tau_a(), ccs_a(), eta, {"tau"}, 3);
  auto oracleClosed = oracle::weak_firing_bisimilar(ccs_tau_a(false), ccs_a(false), {}, {"tau"}, 3);
  out.require(open.result == Verdict::NotBisimilar && !open.touchedOverflow, "open nets: " + to_string(open.result));
  out.require(closed.result == Verdict::Bisimilar, "closed nets: " + to_string(closed.result));
  out.require(oracleOpen == false && oracleClosed == true, "reference game disagrees");
  out.detail << "open " << to_string(open.result) << " (touchedOverflow=" << open.touchedOverflow << "), closed "
             << to_string(closed.result);
}

void upto(Outcome& out) {
  auto u = u_net();
  auto eta = identity_correspondence(u);
  UpToRelation r{{{{}, {}}, {mk({{"s", 1}}), mk({{"s", 1}})}}};
  UpToRelation r0{{{{}, {}}}};
  auto v = check_upto(u, u, eta, r, {}, 4);
  auto direct = check_bisim(u, u, eta, opts(Strength::Weak, Mode::Firing, 4));
  auto v0 = check_upto(u, u, eta, r0, {}, 4);
  out.require(v.accepted, "relation {(0,0),(s,s)} rejected");
  out.require(direct.result == Verdict::Bisimilar, "direct check " + to_string(direct.result));
  out.require(!v0.accepted, "relation without (s,s) accepted");
  out.detail << "{(0,0),(s,s)} " << (v.accepted ? "Accepted" : "Rejected") << ", direct " << to_string(direct.result)
             << ", {(0,0)} " << (v0.accepted ? "Accepted" : "Rejected");
}

std::map<PlaceId, std::vector<PlaceId>> preimages(const OpenNetMorphism& f) {
  std::map<PlaceId, std::vector<PlaceId>> r;
  for (const auto& [x, y] : f.places) r[y].push_back(x);
  return r;
}

void pushout_laws(Outcome& out) {
  oracle::Rng rng(2024);
  int universal = 0;
  for (int i = 0; i < 200; ++i) {
    Span sp = oracle::random_span(rng, 4, 4);
    std::string where = "span " + std::to_string(i) + ": ";
    out.require(check_composable(sp.left, sp.right), where + "generator produced a non-composable span");
    if (!out.pass) return;
    PushoutResult po = pushout(sp.left, sp.right);
    const OpenNet& z1 = *sp.left.target;
    const OpenNet& z2 = *sp.right.target;
    const OpenNet& z3 = *po.z3;
    out.require(project(po.alpha1.places, z3.initial) == z1.initial, where + "left marking projection");
    out.require(project(po.alpha2.places, z3.initial) == z2.initial, where + "right marking projection");
    out.require(validate_morphism(po.alpha1).ok() && validate_morphism(po.alpha2).ok(), where + "legs invalid");
    for (const auto& [s, s2] : sp.left.places)
      out.require(po.alpha1.place(s2) == po.alpha2.place(sp.right.place(s)), where + "square does not commute");

    auto pre1 = preimages(po.alpha1), pre2 = preimages(po.alpha2);
    for (const auto& s3 : z3.places) {
      bool in = true, outOpen = true;
      for (const auto& s : pre1[s3]) {
        in = in && z1.is_open_in(s);
        outOpen = outOpen && z1.is_open_out(s);
      }
      for (const auto& s : pre2[s3]) {
        in = in && z2.is_open_in(s);
        outOpen = outOpen && z2.is_open_out(s);
      }
      out.require(z3.is_open_in(s3) == in && z3.is_open_out(s3) == outOpen, where + "open-place formula at " + s3);
    }

    bool small = z1.places.size() <= 3 && z2.places.size() <= 3 && z1.transitions.size() <= 3 &&
                 z2.transitions.size() <= 3;
    if (!small) continue;
    for (int attempt = 0; attempt < 5; ++attempt) {
      auto gamma = oracle::random_cocone_leg(rng, po.z3);
      if (!gamma) continue;
      auto n = oracle::count_mediating(po, compose(po.alpha1, *gamma), compose(po.alpha2, *gamma));
      if (!n) break;
      out.require(*n == 1, where + "found " + std::to_string(*n) + " mediating morphisms");
      ++universal;
      break;
    }
  }
  out.require(universal >= 50, "too few universal-property checks: " + std::to_string(universal));
  if (out.pass) out.detail << "200 spans, " << universal << " mediating-morphism searches, 0 failures";
}

void step_calculus(Outcome& out) {
  auto sp = loop_span();
  auto po = pushout(sp.left, sp.right);
  std::size_t n = 0;
  for (Count k = 0; k <= 2; ++k)
    for (const auto& st3 : enabled_steps(*po.z3, mk({{"s", k}}), Mode::Step, 2, 4)) {
      ++n;
      auto d = decompose_step(po, st3);
      out.require(compose_steps(po, d.st1, d.st2, d.split) == st3, "round trip fails on " + to_string(st3.events));
      for (const auto* leg : {&po.alpha1, &po.alpha2}) {
        Step p = project_step(*leg, st3);
        bool valid = false;
        try {
          valid = fire(*leg->source, p.from, p.events) == p.to;
        } catch (const Error&) {
        }
        out.require(valid, "projection of " + to_string(st3.events) + " is not a step of " + leg->source->name);
      }
    }
  if (out.pass) out.detail << n << " steps, 0 failures";
}

bool overflows(const OpenNet& z, unsigned cap) { return build_lts(z, Mode::Firing, cap).overflow.has_value(); }

struct Quadruple {
  PushoutResult z3;
  PushoutResult w3;
  Correspondence eta;
};

// Draws cases until `want` overflow-free quadruples with Z2 ∼ W2 are found.
std::vector<Quadruple> quadruples(oracle::Rng& rng, bool weak, std::size_t want, std::size_t& drawn) {
  std::vector<Quadruple> r;
  auto o = opts(weak ? Strength::Weak : Strength::Strong, Mode::Firing, 2, weak ? std::set<Label>{"tau"} : std::set<Label>{});
  while (r.size() < want && drawn < 20 * want) {
    ++drawn;
    auto c = oracle::random_congruence_case(rng, weak);
    const OpenNet& z2 = *c.f2.target;
    const OpenNet& w2 = *c.g2.target;
    if (overflows(z2, 2) || overflows(w2, 2)) continue;
    auto v = check_bisim(z2, w2, c.eta, o);
    if (v.result != Verdict::Bisimilar || v.touchedOverflow) continue;
    auto z3 = pushout(c.f1, c.f2);
    auto w3 = pushout(c.f1, c.g2);
    if (overflows(*z3.z3, 2) || overflows(*w3.z3, 2)) continue;
    r.push_back({z3, w3, oracle::pushout_correspondence(z3, w3, c.eta)});
  }
  return r;
}

void congruence(Outcome& out) {
  oracle::Rng rng(77);
  for (bool weak : {false, true}) {
    std::size_t drawn = 0;
    auto qs = quadruples(rng, weak, 100, drawn);
    std::string kind = weak ? "weak" : "strong";
    out.require(qs.size() == 100, kind + ": only " + std::to_string(qs.size()) + " quadruples generated");
    std::set<Label> tau = weak ? std::set<Label>{"tau"} : std::set<Label>{};
    auto o = opts(weak ? Strength::Weak : Strength::Strong, Mode::Firing, 2, tau);
    std::size_t nontrivial = 0;
    for (std::size_t i = 0; i < qs.size(); ++i) {
      auto v = check_bisim(*qs[i].z3.z3, *qs[i].w3.z3, qs[i].eta, o);
      auto ref = oracle::weak_firing_bisimilar(*qs[i].z3.z3, *qs[i].w3.z3, qs[i].eta, tau, 2);
      out.require(v.result == Verdict::Bisimilar, kind + " quadruple " + std::to_string(i) + ": " + to_string(v.result));
      out.require(ref == true, kind + " quadruple " + std::to_string(i) + ": reference game disagrees");
      nontrivial += build_lts(*qs[i].z3.z3, Mode::Firing, 2).edges.size() > 1;
    }
    if (out.pass) out.detail << kind << " " << qs.size() << "/" << drawn << " drawn (" << nontrivial << " with >1 move); ";
  }
  if (out.pass) out.detail << "0 failures";
}

void closing(Outcome& out) {
  oracle::Rng rng(99);
  std::size_t drawn = 0, checked = 0;
  auto qs = quadruples(rng, false, 25, drawn);
  auto qw = quadruples(rng, true, 25, drawn);
  for (auto* group : {&qs, &qw}) {
    bool weak = group == &qw;
    auto o = opts(weak ? Strength::Weak : Strength::Strong, Mode::Firing, 2,
                  weak ? std::set<Label>{"tau"} : std::set<Label>{});
    for (const auto& q : *group) {
      const OpenNet& a = *q.z3.z3;
      const OpenNet& b = *q.w3.z3;
      if (a.openOut.empty()) continue;
      std::vector<PlaceId> outs(a.openOut.begin(), a.openOut.end());
      PlaceId s = outs[static_cast<std::size_t>(rng.uniform(0, static_cast<int>(outs.size()) - 1))];
      Correspondence eta = q.eta;
      PlaceId s2 = eta.out.at(s);
      eta.out.erase(s);
      auto v = check_bisim(close_place(a, s, Polarity::Out), close_place(b, s2, Polarity::Out), eta, o);
      out.require(v.result == Verdict::Bisimilar, "closing " + s + " gives " + to_string(v.result));
      ++checked;
    }
  }
  out.require(checked == 50, "only " + std::to_string(checked) + " pairs with an open place");
  if (out.pass) out.detail << checked << " pairs closed, 0 failures";
}

void dpo_conditions(Outcome& out) {
  auto a = closed_host_producer(), b = deleted_open_place(), c = added_producer(), d = closed_rhs_place(), e = two_complements();
  auto ia = check_po_complement(a.rule, a.match).ids();
  auto ib = check_po_complement(b.rule, b.match).ids();
  auto ic = check_proper(c.rule, c.match).ids();
  auto id = check_proper(d.rule, d.match).ids();
  out.require(ia == std::vector<std::string>{"2"}, "closed host place report: " + check_po_complement(a.rule, a.match).to_string());
  out.require(ib == std::vector<std::string>{"3"}, "7(b) report: " + check_po_complement(b.rule, b.match).to_string());
  out.require(ic == std::vector<std::string>{"4"}, "added producer report: " + check_proper(c.rule, c.match).to_string());
  out.require(id == std::vector<std::string>{"5"}, "closed rhs place report: " + check_proper(d.rule, d.match).to_string());
  auto all = oracle::complements_by_flag_flipping(e.rule, e.match);
  auto chosen = pushout_complement(e.rule, e.match);
  out.require(all.size() == 2, "two-complement instance has " + std::to_string(all.size()) + " complements");
  for (const auto& dd : all) {
    for (const auto& s : dd.openIn) out.require(chosen.d->is_open_in(s), "chosen complement is not minimal");
    for (const auto& s : dd.openOut) out.require(chosen.d->is_open_out(s), "chosen complement is not minimal");
  }
  if (out.pass)
    out.detail << "conditions 2, 3, 4, 5 triggered; two-complement instance has " << all.size() << " complements, minimal has s "
               << (chosen.d->is_open_in("s") ? "input open" : "closed");
}

void reconfiguration(Outcome& out) {
  auto p = service_rule();
  auto z = service_host();
  std::set<Label> all;
  for (const auto& net : {z, p.lhs(), p.rhs()})
    for (const auto& [t, tr] : net.transitions) all.insert(tr.label);
  for (auto m : {Mode::Firing, Mode::Step}) {
    auto v = check_behaviour_preserving(p, opts(Strength::Weak, m, 3, all));
    out.require(v.result == Verdict::Bisimilar, "rule check " + to_string(v.kind) + ": " + to_string(v.result));
  }
  out.require(z.places.size() == 6, "host does not have six places");
  auto matches = find_matches(p.l.target, share(z));
  std::size_t proper = 0;
  for (const auto& m : matches) {
    if (!check_proper(p, m).ok()) continue;
    ++proper;
    auto t = apply_rule(p, m, z);
    auto eta = induced_correspondence(p, m, t);
    for (auto mode : {Mode::Firing, Mode::Step}) {
      auto v = check_bisim(z, *t.zPrime, eta, opts(Strength::Weak, mode, 3, all));
      out.require(v.result == Verdict::Bisimilar, "Z vs Z' " + to_string(v.kind) + ": " + to_string(v.result));
    }
  }
  out.require(proper > 0, "no proper match on the host");
  if (out.pass) out.detail << "rule Bisimilar (weak firing, weak step); " << proper << " proper match(es), Z ≈ Z'";
}

void oracle_equivalence(Outcome& out) {
  oracle::Rng rng(31337);
  std::size_t pairs = 0, related = 0;
  for (int i = 0; i < 100; ++i) {
    auto g = oracle::random_graph(rng, 30, 5);
    auto r = refine_partition(g);
    auto naive = oracle::naive_bisimilarity(g);
    for (std::size_t p = 0; p < g.size; ++p)
      for (std::size_t q = 0; q < g.size; ++q) {
        ++pairs;
        related += naive[p][q];
        out.require((r.stable()[p] == r.stable()[q]) == naive[p][q],
                    "graph " + std::to_string(i) + " disagrees on " + std::to_string(p) + "," + std::to_string(q));
      }
  }
  if (out.pass) out.detail << "100 graphs, " << pairs << " pairs (" << related << " bisimilar), 0 discrepancies";
}

}  // namespace

int main() {
  const std::vector<std::tuple<std::string, std::string, std::function<void(Outcome&)>>> criteria = {
      {"AC1", "agency nets", agency},
      {"AC2", "tau.a versus a", ccs},
      {"AC3", "up-to relation", upto},
      {"AC4", "pushout laws", pushout_laws},
      {"AC5", "step calculus", step_calculus},
      {"AC6", "congruence", congruence},
      {"AC7", "closing", closing},
      {"AC8", "DPO conditions", dpo_conditions},
      {"AC9", "reconfiguration", reconfiguration},
      {"AC10", "refinement vs fixpoint", oracle_equivalence},
  };
  auto start = std::chrono::steady_clock::now();
  int failed = 0;
  for (const auto& [id, title, run] : criteria) {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    try {
      run(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
    failed += !o.pass;
    std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << id << " " << title << ": " << o.detail.str() << " (" << ms
              << " ms)\n";
  }
  auto total = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  std::cout << (10 - failed) << "/10 criteria passed in " << total << " ms\n";
  return failed == 0 ? 0 : 1;
}
