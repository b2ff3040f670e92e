#include "opennet/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace opennet {

using json = nlohmann::json;

namespace {

std::string position(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

[[noreturn]] void semantic(const std::string& what) { throw Error(ErrorCode::Semantic, what); }

json parse_text(std::string_view text) {
  std::vector<std::set<std::string>> keys;
  json::parser_callback_t cb = [&](int, json::parse_event_t ev, json& parsed) {
    if (ev == json::parse_event_t::object_start) {
      keys.emplace_back();
    } else if (ev == json::parse_event_t::object_end) {
      keys.pop_back();
    } else if (ev == json::parse_event_t::key) {
      const auto& k = parsed.get_ref<const std::string&>();
      if (!keys.back().insert(k).second) throw Error(ErrorCode::Syntax, "duplicate key '" + k + "'");
    }
    return true;
  };
  try {
    return json::parse(text.begin(), text.end(), cb);
  } catch (const json::parse_error& e) {
    std::string msg = e.what();
    auto colon = msg.find("parse error");
    throw Error(ErrorCode::Syntax, position(text, e.byte) + ": " + (colon == std::string::npos ? msg : msg.substr(colon)));
  }
}

const json& field(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) semantic(where + ": missing field '" + key + "'");
  return *it;
}

void only_fields(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!obj.is_object()) semantic(where + ": expected an object");
  for (const auto& [k, v] : obj.items()) {
    bool known = false;
    for (const char* a : allowed) known = known || k == a;
    if (!known) semantic(where + ": unknown field '" + k + "'");
  }
}

std::string str(const json& j, const std::string& where) {
  if (!j.is_string()) semantic(where + ": expected a string");
  return j.get<std::string>();
}

Count count(const json& j, const std::string& where) {
  if (!j.is_number_unsigned()) semantic(where + ": expected a non-negative integer");
  return j.get<Count>();
}

bool flag(const json& j, const std::string& where) {
  if (!j.is_boolean()) semantic(where + ": expected a boolean");
  return j.get<bool>();
}

void check_format(const json& doc, const char* expected) {
  if (!doc.is_object()) semantic("document must be an object");
  std::string f = str(field(doc, "format", "document"), "format");
  if (f != expected) semantic("expected format '" + std::string(expected) + "', found '" + f + "'");
}

bool reserved(const std::string& id) { return id.rfind("L:", 0) == 0 || id.rfind("R:", 0) == 0; }

Marking arcs_from_json(const json& j, const std::string& where) {
  if (!j.is_array()) semantic(where + ": expected a list of arcs");
  Marking m;
  std::set<PlaceId> seen;
  for (const auto& a : j) {
    only_fields(a, {"place", "count"}, where);
    PlaceId s = str(field(a, "place", where), where + ".place");
    if (!seen.insert(s).second) semantic(where + ": place '" + s + "' listed twice");
    Count n = a.contains("count") ? count(a["count"], where + ".count") : 1;
    if (n == 0) semantic(where + ": arc weight must be positive");
    m.add(s, n);
  }
  return m;
}

json arcs_to_json(const Marking& m) {
  json a = json::array();
  for (const auto& [s, n] : m) a.push_back({{"place", s}, {"count", n}});
  return a;
}

OpenNet net_from_json(const json& j, const ParseOptions& opt, const std::string& where) {
  check_format(j, "opennet/1");
  only_fields(j, {"format", "name", "places", "transitions"}, where);
  OpenNet z;
  z.name = j.contains("name") ? str(j["name"], where + ".name") : std::string();
  std::set<std::string> ids;
  auto declare = [&](const std::string& id, const char* what) {
    if (id.empty()) semantic(where + ": empty " + what + " id");
    if (!opt.allowReservedNames && reserved(id))
      semantic(where + ": " + what + " id '" + id + "' uses a reserved prefix");
    if (!ids.insert(id).second) semantic(where + ": duplicate " + what + " id '" + id + "'");
  };
  const json& places = field(j, "places", where);
  if (!places.is_array()) semantic(where + ".places: expected a list");
  for (const auto& p : places) {
    only_fields(p, {"id", "initial", "input", "output"}, where + ".places");
    std::string id = str(field(p, "id", where + ".places"), where + ".places.id");
    declare(id, "place");
    z.add_place(id, p.contains("initial") ? count(p["initial"], id + ".initial") : 0,
                p.contains("input") && flag(p["input"], id + ".input"),
                p.contains("output") && flag(p["output"], id + ".output"));
  }
  if (j.contains("transitions")) {
    const json& ts = j["transitions"];
    if (!ts.is_array()) semantic(where + ".transitions: expected a list");
    for (const auto& t : ts) {
      only_fields(t, {"id", "label", "pre", "post"}, where + ".transitions");
      std::string id = str(field(t, "id", where + ".transitions"), where + ".transitions.id");
      declare(id, "transition");
      z.add_transition(id, str(field(t, "label", id), id + ".label"),
                       t.contains("pre") ? arcs_from_json(t["pre"], id + ".pre") : Marking{},
                       t.contains("post") ? arcs_from_json(t["post"], id + ".post") : Marking{});
    }
  }
  auto rep = validate_net(z);
  if (!rep.ok()) semantic(where + ": invalid net\n" + rep.to_string());
  return z;
}

json net_to_json(const OpenNet& z) {
  json places = json::array();
  for (const auto& s : z.places)
    places.push_back({{"id", s}, {"initial", z.initial.count(s)}, {"input", z.is_open_in(s)}, {"output", z.is_open_out(s)}});
  json ts = json::array();
  for (const auto& [t, tr] : z.transitions)
    ts.push_back({{"id", t}, {"label", tr.label}, {"pre", arcs_to_json(tr.pre)}, {"post", arcs_to_json(tr.post)}});
  return {{"format", "opennet/1"}, {"name", z.name}, {"places", places}, {"transitions", ts}};
}

std::map<std::string, std::string> string_map(const json& j, const std::string& where) {
  if (!j.is_object()) semantic(where + ": expected an object");
  std::map<std::string, std::string> m;
  for (const auto& [k, v] : j.items()) m[k] = str(v, where + "." + k);
  return m;
}

OpenNetMorphism morphism_from_json(const json& j, NetPtr src, NetPtr tgt, const std::string& where) {
  only_fields(j, {"places", "transitions"}, where);
  OpenNetMorphism f{std::move(src), std::move(tgt), string_map(field(j, "places", where), where + ".places"),
                    j.contains("transitions") ? string_map(j["transitions"], where + ".transitions")
                                              : std::map<std::string, std::string>{}};
  auto rep = validate_morphism(f);
  if (!rep.ok()) semantic(where + ": not an open net morphism\n" + rep.to_string());
  if (!is_embedding(f)) semantic(where + ": not an embedding");
  return f;
}

json morphism_to_json(const OpenNetMorphism& f) {
  return {{"places", json(f.places)}, {"transitions", json(f.transitions)}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json marking_to_json(const Marking& m) {
  json o = json::object();
  for (const auto& [s, n] : m) o[s] = n;
  return o;
}

Marking marking_from_json(const json& j, const std::string& where) {
  if (!j.is_object()) semantic(where + ": expected a marking object");
  Marking m;
  for (const auto& [k, v] : j.items()) m.add(k, count(v, where + "." + k));
  return m;
}

json state_to_json(const StateRef& s) { return s ? marking_to_json(*s) : json("Overflow"); }

json label_to_json(const ObsLabel& l) {
  json a = json::array();
  for (const auto& [o, n] : l)
    for (Count i = 0; i < n; ++i) a.push_back(to_string(o));
  return a;
}

json eta_to_json(const Correspondence& eta) { return {{"in", json(eta.in)}, {"out", json(eta.out)}}; }

json report_to_json(const ConditionReport& rep) {
  json a = json::array();
  for (const auto& c : rep.violations)
    a.push_back({{"condition", c.id}, {"polarity", std::string(1, c.polarity == ' ' ? '0' : c.polarity)},
                 {"item", c.item}, {"detail", c.detail}});
  return a;
}

}  // namespace

OpenNet parse_net(std::string_view text, const ParseOptions& opt) { return net_from_json(parse_text(text), opt, "net"); }

std::string emit_net(const OpenNet& z) { return dump(net_to_json(z)); }

Span parse_span(std::string_view text, const ParseOptions& opt) {
  json j = parse_text(text);
  check_format(j, "opennet-span/1");
  only_fields(j, {"format", "interface", "left", "right", "leftMap", "rightMap"}, "span");
  auto z0 = std::make_shared<const OpenNet>(net_from_json(field(j, "interface", "span"), opt, "interface"));
  auto z1 = std::make_shared<const OpenNet>(net_from_json(field(j, "left", "span"), opt, "left"));
  auto z2 = std::make_shared<const OpenNet>(net_from_json(field(j, "right", "span"), opt, "right"));
  return Span{morphism_from_json(field(j, "leftMap", "span"), z0, z1, "leftMap"),
              morphism_from_json(field(j, "rightMap", "span"), z0, z2, "rightMap")};
}

std::string emit_span(const Span& s) {
  return dump({{"format", "opennet-span/1"},
               {"interface", net_to_json(*s.left.source)},
               {"left", net_to_json(*s.left.target)},
               {"right", net_to_json(*s.right.target)},
               {"leftMap", morphism_to_json(s.left)},
               {"rightMap", morphism_to_json(s.right)}});
}

RuleDocument parse_rule(std::string_view text, const ParseOptions& opt) {
  json j = parse_text(text);
  check_format(j, "opennet-rule/1");
  only_fields(j, {"format", "lhs", "interface", "rhs", "lhsMap", "rhsMap", "metadata"}, "rule");
  auto k = std::make_shared<const OpenNet>(net_from_json(field(j, "interface", "rule"), opt, "interface"));
  auto l = std::make_shared<const OpenNet>(net_from_json(field(j, "lhs", "rule"), opt, "lhs"));
  auto r = std::make_shared<const OpenNet>(net_from_json(field(j, "rhs", "rule"), opt, "rhs"));
  RuleDocument doc{Rule{morphism_from_json(field(j, "lhsMap", "rule"), k, l, "lhsMap"),
                        morphism_from_json(field(j, "rhsMap", "rule"), k, r, "rhsMap")},
                   std::nullopt};
  if (j.contains("metadata")) {
    const json& m = j["metadata"];
    only_fields(m, {"verdict", "kind", "cap"}, "metadata");
    doc.metadata = RuleMetadata{str(field(m, "verdict", "metadata"), "metadata.verdict"),
                                str(field(m, "kind", "metadata"), "metadata.kind"),
                                static_cast<unsigned>(count(field(m, "cap", "metadata"), "metadata.cap"))};
  }
  return doc;
}

std::string emit_rule(const RuleDocument& r) {
  json j = {{"format", "opennet-rule/1"},
            {"lhs", net_to_json(r.rule.lhs())},
            {"interface", net_to_json(r.rule.interface())},
            {"rhs", net_to_json(r.rule.rhs())},
            {"lhsMap", morphism_to_json(r.rule.l)},
            {"rhsMap", morphism_to_json(r.rule.r)}};
  if (r.metadata) j["metadata"] = {{"verdict", r.metadata->verdict}, {"kind", r.metadata->kind}, {"cap", r.metadata->cap}};
  return dump(j);
}

Correspondence parse_eta(std::string_view text) {
  json j = parse_text(text);
  check_format(j, "opennet-eta/1");
  only_fields(j, {"format", "in", "out"}, "eta");
  Correspondence c;
  if (j.contains("in")) c.in = string_map(j["in"], "eta.in");
  if (j.contains("out")) c.out = string_map(j["out"], "eta.out");
  return c;
}

std::string emit_eta(const Correspondence& eta) {
  json j = eta_to_json(eta);
  j["format"] = "opennet-eta/1";
  return dump(j);
}

UpToRelation parse_relation(std::string_view text) {
  json j = parse_text(text);
  check_format(j, "opennet-relation/1");
  only_fields(j, {"format", "pairs"}, "relation");
  const json& pairs = field(j, "pairs", "relation");
  if (!pairs.is_array()) semantic("relation.pairs: expected a list");
  UpToRelation r;
  for (const auto& p : pairs) {
    only_fields(p, {"left", "right"}, "relation.pairs");
    r.pairs.emplace_back(marking_from_json(field(p, "left", "pair"), "pair.left"),
                         marking_from_json(field(p, "right", "pair"), "pair.right"));
  }
  return r;
}

std::string emit_relation(const UpToRelation& r) {
  json pairs = json::array();
  for (const auto& [a, b] : r.pairs) pairs.push_back({{"left", marking_to_json(a)}, {"right", marking_to_json(b)}});
  return dump({{"format", "opennet-relation/1"}, {"pairs", pairs}});
}

std::string emit_pushout(const PushoutResult& po) {
  return dump({{"format", "opennet-pushout/1"},
               {"net", net_to_json(*po.z3)},
               {"alpha1", morphism_to_json(po.alpha1)},
               {"alpha2", morphism_to_json(po.alpha2)}});
}

std::string emit_verdict(const BisimVerdict& v) {
  json witness = json::array();
  for (const auto& [a, b] : v.witness) witness.push_back({{"left", state_to_json(a)}, {"right", state_to_json(b)}});
  json play = json::array();
  for (const auto& r : v.play) {
    json round = {{"attacker", r.attacker},
                  {"from", state_to_json(r.attackerFrom)},
                  {"label", label_to_json(r.label)},
                  {"to", state_to_json(r.attackerTo)},
                  {"defenderFrom", state_to_json(r.defenderFrom)},
                  {"defenderStuck", r.defenderStuck}};
    round["defenderTo"] = r.defenderStuck ? json(nullptr) : state_to_json(r.defenderTo);
    play.push_back(round);
  }
  json j = {{"format", "opennet-verdict/1"},
            {"kind", to_string(v.kind)},
            {"result", to_string(v.result)},
            {"bound", v.bound},
            {"touchedOverflow", v.touchedOverflow},
            {"eta", eta_to_json(v.eta)},
            {"witness", witness},
            {"play", play}};
  if (!v.note.empty()) j["note"] = v.note;
  return dump(j);
}

std::string emit_upto_verdict(const UpToVerdict& v) {
  json j = {{"format", "opennet-upto/1"}, {"result", v.accepted ? "Accepted" : "Rejected"}, {"bound", v.bound}};
  if (v.failure) {
    const auto& f = *v.failure;
    j["failure"] = {{"left", marking_to_json(f.u1)},
                    {"right", marking_to_json(f.u2)},
                    {"attacker", f.attacker},
                    {"label", label_to_json(f.label)},
                    {"target", marking_to_json(f.target)}};
  }
  return dump(j);
}

std::string emit_lts_summary(const Lts& l) {
  json states = json::array();
  for (std::size_t i = 0; i < l.states.size(); ++i)
    states.push_back(l.is_overflow(i) ? json("Overflow") : marking_to_json(l.states[i]));
  json edges = json::array();
  for (const auto& e : l.edges) edges.push_back({{"from", e.from}, {"label", label_to_json(e.label)}, {"to", e.to}});
  return dump({{"format", "opennet-lts/1"},
               {"mode", l.mode == Mode::Firing ? "firing" : "step"},
               {"weak", l.weak},
               {"cap", l.cap},
               {"initial", l.initial},
               {"states", states},
               {"edges", edges}});
}

std::string emit_matches(const Rule& p, const std::vector<OpenNetMorphism>& matches) {
  json a = json::array();
  for (std::size_t i = 0; i < matches.size(); ++i) {
    auto rep = check_proper(p, matches[i]);
    a.push_back({{"index", i}, {"map", morphism_to_json(matches[i])}, {"proper", rep.ok()}, {"violations", report_to_json(rep)}});
  }
  return dump({{"format", "opennet-matches/1"}, {"matches", a}});
}

std::string emit_transform(const TransformResult& t) {
  return dump({{"format", "opennet-transform/1"},
               {"context", net_to_json(*t.d)},
               {"result", net_to_json(*t.zPrime)},
               {"n", morphism_to_json(t.n)},
               {"d", morphism_to_json(t.dEmb)},
               {"b", morphism_to_json(t.b)},
               {"h", morphism_to_json(t.h)}});
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Semantic, "cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Semantic, "cannot write '" + path + "'");
  out << text;
}

}  // namespace opennet
