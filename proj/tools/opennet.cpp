// Command-line front end. Reports go to stdout, diagnostics to stderr.
// Exit codes: verdict commands use 0/1/2 (yes/no/inconclusive); 3 is a usage
// or input error.
#include <CLI11.hpp>

#include <opennet/io.hpp>

#include <iostream>
#include <sstream>

using namespace opennet;

namespace {

constexpr int kInputError = 3;

struct Analysis {
  std::string kind = "strong";
  std::string mode = "firing";
  unsigned cap = 4;
  unsigned maxStep = 6;
  std::string tau;
  std::size_t maxStates = 200000;

  void add_to(CLI::App* cmd, bool withKind) {
    if (withKind) cmd->add_option("--kind", kind, "strong or weak")->check(CLI::IsMember({"strong", "weak"}));
    cmd->add_option("--mode", mode, "firing or step")->check(CLI::IsMember({"firing", "step"}));
    cmd->add_option("--cap", cap, "per-place token bound");
    cmd->add_option("--max-step", maxStep, "largest step size explored in step mode");
    cmd->add_option("--tau", tau, "comma-separated silent labels");
    cmd->add_option("--max-states", maxStates, "state budget per transition system");
  }

  std::set<Label> tau_labels() const {
    std::set<Label> r;
    std::stringstream ss(tau);
    for (std::string l; std::getline(ss, l, ',');)
      if (!l.empty()) r.insert(l);
    return r;
  }

  Mode parsed_mode() const { return mode == "step" ? Mode::Step : Mode::Firing; }

  BisimOptions options() const {
    BisimOptions o;
    o.kind = BisimKind{kind == "weak" ? Strength::Weak : Strength::Strong, parsed_mode()};
    o.tau = tau_labels();
    o.cap = cap;
    o.maxStep = maxStep;
    o.maxStates = maxStates;
    return o;
  }
};

ParseOptions generated() {
  ParseOptions o;
  o.allowReservedNames = true;
  return o;
}

OpenNet load_net(const std::string& path) { return parse_net(read_file(path), generated()); }

void output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-")
    std::cout << text;
  else
    write_file(path, text);
}

int verdict_code(Verdict v) {
  switch (v) {
    case Verdict::Bisimilar: return 0;
    case Verdict::NotBisimilar: return 1;
    case Verdict::Inconclusive: return 2;
  }
  return kInputError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Open Petri nets: composition, bisimulation and rewriting"};
  app.require_subcommand(1);
  int code = 0;

  std::string netPath;
  auto* validate = app.add_subcommand("validate", "check that a net document is well formed");
  validate->add_option("net", netPath)->required();
  validate->callback([&] {
    try {
      OpenNet z = parse_net(read_file(netPath), generated());
      std::cout << "ok: " << z.places.size() << " places, " << z.transitions.size() << " transitions\n";
    } catch (const Error& e) {
      std::cerr << e.what() << '\n';
      code = 1;
    }
  });

  std::string spanPath, outPath;
  auto* composeCmd = app.add_subcommand("compose", "glue the two legs of a span");
  composeCmd->add_option("span", spanPath)->required();
  composeCmd->add_option("-o,--output", outPath, "write the pushout here instead of stdout");
  composeCmd->callback([&] {
    Span sp = parse_span(read_file(spanPath), generated());
    try {
      output(outPath, emit_pushout(pushout(sp.left, sp.right)));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NotComposable) throw;
      std::cerr << e.what() << '\n';
      for (const auto& why : composability_violations(sp.left, sp.right)) std::cerr << "  " << why << '\n';
      code = 1;
    }
  });

  Analysis ltsArgs;
  std::string dotPath;
  auto* lts = app.add_subcommand("lts", "build the bounded transition system of a net");
  lts->add_option("net", netPath)->required();
  ltsArgs.add_to(lts, false);
  lts->add_option("--dot", dotPath, "also write a Graphviz rendering");
  lts->add_option("-o,--output", outPath);
  lts->callback([&] {
    LtsOptions o;
    o.mode = ltsArgs.parsed_mode();
    o.cap = ltsArgs.cap;
    o.maxStep = ltsArgs.maxStep;
    o.maxStates = ltsArgs.maxStates;
    Lts l = build_lts(load_net(netPath), o);
    if (!ltsArgs.tau.empty()) l = weak_closure(l, ltsArgs.tau_labels());
    if (l.overflow) std::cerr << "warning: the cap was exceeded; Overflow stands for every larger marking\n";
    output(outPath, emit_lts_summary(l));
    if (!dotPath.empty()) write_file(dotPath, to_dot(l));
  });

  Analysis bisimArgs;
  std::string net2Path, etaArg = "auto";
  auto* bisim = app.add_subcommand("bisim", "decide bisimilarity of two nets up to the cap");
  bisim->add_option("net1", netPath)->required();
  bisim->add_option("net2", net2Path)->required();
  bisimArgs.add_to(bisim, true);
  bisim->add_option("--eta", etaArg, "correspondence file, or 'auto' to try all");
  bisim->add_option("-o,--output", outPath);
  bisim->callback([&] {
    std::optional<Correspondence> eta;
    if (etaArg != "auto") eta = parse_eta(read_file(etaArg));
    auto v = check_bisim(load_net(netPath), load_net(net2Path), eta, bisimArgs.options());
    output(outPath, emit_verdict(v));
    std::cerr << to_string(v.result) << (v.touchedOverflow ? " (Overflow reached)" : "") << '\n';
    code = verdict_code(v.result);
  });

  Analysis uptoArgs;
  std::string relationPath;
  auto* upto = app.add_subcommand("upto", "check an up-to firing bisimulation");
  upto->add_option("net1", netPath)->required();
  upto->add_option("net2", net2Path)->required();
  upto->add_option("--relation", relationPath)->required();
  upto->add_option("--eta", etaArg, "correspondence file, or 'auto' for the identity on shared names");
  uptoArgs.add_to(upto, false);
  upto->callback([&] {
    OpenNet z1 = load_net(netPath), z2 = load_net(net2Path);
    Correspondence eta;
    if (etaArg == "auto") {
      auto all = all_correspondences(z1, z2);
      if (all.empty()) throw Error(ErrorCode::NotACorrespondence, "the nets have no correspondence");
      eta = all.front();
      for (const auto& c : all)
        if (c == identity_correspondence(z1)) eta = c;
    } else {
      eta = parse_eta(read_file(etaArg));
    }
    auto v = check_upto(z1, z2, eta, parse_relation(read_file(relationPath)), uptoArgs.tau_labels(), uptoArgs.cap,
                        uptoArgs.parsed_mode());
    std::cout << emit_upto_verdict(v);
    code = v.accepted ? 0 : 1;
  });

  std::string rulePath;
  auto* match = app.add_subcommand("match", "list the matches of a rule in a net");
  match->add_option("rule", rulePath)->required();
  match->add_option("net", netPath)->required();
  match->callback([&] {
    RuleDocument doc = parse_rule(read_file(rulePath), generated());
    auto z = std::make_shared<const OpenNet>(load_net(netPath));
    std::cout << emit_matches(doc.rule, find_matches(doc.rule.l.target, z));
  });

  std::size_t matchIndex = 0;
  std::string contextPath;
  auto* apply = app.add_subcommand("apply", "rewrite a net at one match");
  apply->add_option("rule", rulePath)->required();
  apply->add_option("net", netPath)->required();
  apply->add_option("--match", matchIndex, "index as listed by 'match'");
  apply->add_option("-o,--output", outPath, "transformed net");
  apply->add_option("--context", contextPath, "pushout complement");
  apply->callback([&] {
    RuleDocument doc = parse_rule(read_file(rulePath), generated());
    if (doc.metadata && doc.metadata->verdict == "Inconclusive")
      std::cerr << "warning: behaviour preservation of this rule is Inconclusive at cap " << doc.metadata->cap << '\n';
    auto z = std::make_shared<const OpenNet>(load_net(netPath));
    auto matches = find_matches(doc.rule.l.target, z);
    if (matchIndex >= matches.size())
      throw Error(ErrorCode::DomainMismatch, "match " + std::to_string(matchIndex) + " does not exist (" +
                                                 std::to_string(matches.size()) + " found)");
    auto t = apply_rule(doc.rule, matches[matchIndex], *z);
    if (!contextPath.empty()) write_file(contextPath, emit_net(*t.d));
    output(outPath, outPath.empty() ? emit_transform(t) : emit_net(*t.zPrime));
  });

  Analysis ruleArgs;
  std::string writePath;
  auto* checkRule = app.add_subcommand("check-rule", "check that both sides of a rule are bisimilar");
  checkRule->add_option("rule", rulePath)->required();
  ruleArgs.add_to(checkRule, true);
  checkRule->add_option("--write", writePath, "store the verdict in a copy of the rule");
  checkRule->callback([&] {
    RuleDocument doc = parse_rule(read_file(rulePath), generated());
    auto o = ruleArgs.options();
    auto v = check_behaviour_preserving(doc.rule, o);
    std::cout << emit_verdict(v);
    if (!writePath.empty()) {
      doc.metadata = RuleMetadata{to_string(v.result), to_string(o.kind), o.cap};
      write_file(writePath, emit_rule(doc));
    }
    code = verdict_code(v.result);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kInputError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  return code;
}
