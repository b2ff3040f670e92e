#pragma once

#include <opennet/io.hpp>

namespace fixtures {

using namespace opennet;

Marking mk(std::initializer_list<std::pair<const std::string, Count>> init);

// Travel agency: A books flight and hotel independently, B shares a resource.
OpenNet agency_a();
OpenNet agency_b();

// s1 (output open, marked) --tau--> p --a--> ; and s1' --a--> .
OpenNet ccs_tau_a(bool open = true);
OpenNet ccs_a(bool open = true);

// Single input-open place s consumed by an a-transition.
OpenNet u_net();

// Z0 = place s open both ways, marked once; Z1 adds an a-loop, Z2 a b-loop.
Span loop_span();

// Span with two interface places s, s' and an a-transition between them.
Span two_place_span();

// Rules and hosts reproducing the DPO side-condition counterexamples.
struct Instance {
  Rule rule;
  OpenNetMorphism match;
};
Instance closed_host_producer();
Instance deleted_open_place();
Instance added_producer();
Instance closed_rhs_place();
Instance two_complements();

// Abstract planJourney transition refined into a two-step chain.
Rule service_rule();
OpenNet service_host();

Rule identity_rule(const OpenNet& z);

}  // namespace fixtures
