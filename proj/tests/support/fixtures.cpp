#include "fixtures.hpp"

namespace fixtures {

Marking mk(std::initializer_list<std::pair<const std::string, Count>> init) { return Marking(init); }

namespace {

NetPtr share(OpenNet z) { return std::make_shared<const OpenNet>(std::move(z)); }

OpenNetMorphism embed(NetPtr a, NetPtr b, std::map<PlaceId, PlaceId> ps, std::map<TransId, TransId> ts = {}) {
  return OpenNetMorphism{std::move(a), std::move(b), std::move(ps), std::move(ts)};
}

std::map<PlaceId, PlaceId> same(std::initializer_list<std::string> ids) {
  std::map<PlaceId, PlaceId> m;
  for (const auto& i : ids) m[i] = i;
  return m;
}

}  // namespace

OpenNet agency_a() {
  OpenNet z;
  z.name = "agencyA";
  z.add_place("p1", 1).add_place("p2", 1).add_place("q1").add_place("q2");
  z.add_transition("tF", "bookFlight", mk({{"p1", 1}}), mk({{"q1", 1}}));
  z.add_transition("tH", "bookHotel", mk({{"p2", 1}}), mk({{"q2", 1}}));
  return z;
}

OpenNet agency_b() {
  OpenNet z;
  z.name = "agencyB";
  z.add_place("p1", 1).add_place("p2", 1).add_place("q1").add_place("q2").add_place("r", 1);
  z.add_transition("tF", "bookFlight", mk({{"p1", 1}, {"r", 1}}), mk({{"q1", 1}, {"r", 1}}));
  z.add_transition("tH", "bookHotel", mk({{"p2", 1}, {"r", 1}}), mk({{"q2", 1}, {"r", 1}}));
  return z;
}

OpenNet ccs_tau_a(bool open) {
  OpenNet z;
  z.name = "tauA";
  z.add_place("s1", 1, false, open).add_place("p");
  z.add_transition("t1", "tau", mk({{"s1", 1}}), mk({{"p", 1}}));
  z.add_transition("t2", "a", mk({{"p", 1}}), {});
  return z;
}

OpenNet ccs_a(bool open) {
  OpenNet z;
  z.name = "a";
  z.add_place("s1'", 1, false, open);
  z.add_transition("t", "a", mk({{"s1'", 1}}), {});
  return z;
}

OpenNet u_net() {
  OpenNet z;
  z.name = "U";
  z.add_place("s", 0, true, false);
  z.add_transition("a", "a", mk({{"s", 1}}), {});
  return z;
}

Span loop_span() {
  OpenNet z0;
  z0.name = "Z0";
  z0.add_place("s", 1, true, true);
  OpenNet z1 = z0;
  z1.name = "Z1";
  z1.add_transition("t1", "a", mk({{"s", 1}}), mk({{"s", 1}}));
  OpenNet z2 = z0;
  z2.name = "Z2";
  z2.add_transition("t2", "b", mk({{"s", 1}}), mk({{"s", 1}}));
  auto p0 = share(z0);
  return Span{embed(p0, share(z1), same({"s"})), embed(p0, share(z2), same({"s"}))};
}

Span two_place_span() {
  OpenNet z0;
  z0.name = "Z0";
  z0.add_place("s", 0, true, true).add_place("sp", 0, true, true);
  z0.add_transition("t0", "a", mk({{"s", 1}}), {});

  OpenNet z1;
  z1.name = "Z1";
  z1.add_place("s", 0, true, true).add_place("sp", 0, false, true).add_place("x1").add_place("y1", 1);
  z1.transitions["t0"] = z0.transitions["t0"];
  z1.add_transition("c1", "c", mk({{"s", 1}}), mk({{"x1", 1}}));
  z1.add_transition("t1p", "c", mk({{"y1", 1}}), mk({{"sp", 1}}));

  OpenNet z2;
  z2.name = "Z2";
  z2.add_place("s", 0, false, true).add_place("sp", 0, true, false).add_place("z2").add_place("w2");
  z2.transitions["t0"] = z0.transitions["t0"];
  z2.add_transition("tb", "b", mk({{"sp", 1}}), mk({{"z2", 1}}));
  z2.add_transition("td", "d", mk({{"w2", 1}}), mk({{"s", 1}}));

  auto p0 = share(z0);
  return Span{embed(p0, share(z1), same({"s", "sp"}), {{"t0", "t0"}}),
              embed(p0, share(z2), same({"s", "sp"}), {{"t0", "t0"}})};
}

namespace {

Instance make(OpenNet k, OpenNet l, OpenNet r, OpenNet z, std::map<PlaceId, PlaceId> kl,
              std::map<PlaceId, PlaceId> kr, std::map<PlaceId, PlaceId> lz, std::map<TransId, TransId> ltz = {}) {
  auto kp = share(std::move(k));
  auto lp = share(std::move(l));
  Rule p{embed(kp, lp, std::move(kl)), embed(kp, share(std::move(r)), std::move(kr))};
  return Instance{p, embed(lp, share(std::move(z)), std::move(lz), std::move(ltz))};
}

}  // namespace

Instance closed_host_producer() {
  OpenNet k, l, z;
  k.add_place("s", 0, true, false);
  l.add_place("s", 0, true, false);
  l.add_transition("t", "a", {}, mk({{"s", 1}}));
  z.add_place("s");
  z.add_transition("t", "a", {}, mk({{"s", 1}}));
  z.add_transition("u", "b", {}, mk({{"s", 1}}));
  k.name = "K";
  l.name = "L";
  z.name = "Z";
  OpenNet r = k;
  r.name = "R";
  return make(k, l, r, z, same({"s"}), same({"s"}), same({"s"}), {{"t", "t"}});
}

Instance deleted_open_place() {
  OpenNet k, l, z;
  k.name = "K";
  l.name = "L";
  l.add_place("s", 0, true, false);
  z.name = "Z";
  z.add_place("s");
  OpenNet r = k;
  r.name = "R";
  return make(k, l, r, z, {}, {}, same({"s"}));
}

Instance added_producer() {
  OpenNet k, l, r, z;
  k.name = "K";
  k.add_place("s", 0, true, false);
  l = k;
  l.name = "L";
  r.name = "R";
  r.add_place("s");
  r.add_transition("t", "a", {}, mk({{"s", 1}}));
  z.name = "Z";
  z.add_place("s");
  return make(k, l, r, z, same({"s"}), same({"s"}), same({"s"}));
}

Instance closed_rhs_place() {
  OpenNet k, l, r, z;
  k.name = "K";
  k.add_place("s", 0, true, false);
  l = k;
  l.name = "L";
  r.name = "R";
  r.add_place("s");
  z.name = "Z";
  z.add_place("s");
  z.add_transition("u", "a", {}, mk({{"s", 1}}));
  return make(k, l, r, z, same({"s"}), same({"s"}), same({"s"}));
}

Instance two_complements() {
  OpenNet k, l, z;
  k.name = "K";
  k.add_place("s", 0, true, false);
  l.name = "L";
  l.add_place("s");
  z.name = "Z";
  z.add_place("s");
  OpenNet r = k;
  r.name = "R";
  return make(k, l, r, z, same({"s"}), same({"s"}), same({"s"}));
}

Rule service_rule() {
  OpenNet k;
  k.name = "K";
  k.add_place("inquiry", 0, true, true).add_place("itinerary", 0, true, true);
  OpenNet l;
  l.name = "L";
  l.add_place("inquiry", 0, true, false).add_place("itinerary", 0, false, true);
  l.add_transition("planJourney", "planJourney", mk({{"inquiry", 1}}), mk({{"itinerary", 1}}));
  OpenNet r;
  r.name = "R";
  r.add_place("inquiry", 0, true, false).add_place("mid").add_place("itinerary", 0, false, true);
  r.add_transition("searchConnections", "searchConnections", mk({{"inquiry", 1}}), mk({{"mid", 1}}));
  r.add_transition("composeItinerary", "composeItinerary", mk({{"mid", 1}}), mk({{"itinerary", 1}}));
  auto kp = share(k);
  return Rule{embed(kp, share(l), same({"inquiry", "itinerary"})), embed(kp, share(r), same({"inquiry", "itinerary"}))};
}

OpenNet service_host() {
  OpenNet z;
  z.name = "agency";
  z.add_place("start", 2).add_place("inquiry").add_place("itinerary");
  z.add_place("tickets", 0, false, true).add_place("cancelled", 0, false, true).add_place("clerk", 1);
  z.add_transition("enter", "enter", mk({{"start", 1}}), mk({{"inquiry", 1}}));
  z.add_transition("planJourney", "planJourney", mk({{"inquiry", 1}}), mk({{"itinerary", 1}}));
  z.add_transition("purchase", "purchase", mk({{"itinerary", 1}, {"clerk", 1}}), mk({{"tickets", 1}, {"clerk", 1}}));
  z.add_transition("cancel", "cancel", mk({{"itinerary", 1}}), mk({{"cancelled", 1}}));
  return z;
}

Rule identity_rule(const OpenNet& z) {
  auto p = share(z);
  return Rule{identity(p), identity(p)};
}

}  // namespace fixtures
