#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "opennet/composition.hpp"
#include "opennet/equivalence.hpp"
#include "opennet/rewriting.hpp"

namespace opennet {

struct ParseOptions {
  // Names beginning with "L:" or "R:" are reserved for generated nets.
  bool allowReservedNames = false;
};

struct Span {
  OpenNetMorphism left;   // interface -> left
  OpenNetMorphism right;  // interface -> right
};

struct RuleMetadata {
  std::string verdict;
  std::string kind;
  unsigned cap = 0;

  bool operator==(const RuleMetadata&) const = default;
};

struct RuleDocument {
  Rule rule;
  std::optional<RuleMetadata> metadata;
};

// All parsers throw Error(Syntax) with line and column for malformed text and
// Error(Semantic) for well-formed text describing an invalid value.
OpenNet parse_net(std::string_view text, const ParseOptions& opt = {});
std::string emit_net(const OpenNet& z);

Span parse_span(std::string_view text, const ParseOptions& opt = {});
std::string emit_span(const Span& s);

RuleDocument parse_rule(std::string_view text, const ParseOptions& opt = {});
std::string emit_rule(const RuleDocument& r);

Correspondence parse_eta(std::string_view text);
std::string emit_eta(const Correspondence& eta);

UpToRelation parse_relation(std::string_view text);
std::string emit_relation(const UpToRelation& r);

std::string emit_pushout(const PushoutResult& po);
std::string emit_verdict(const BisimVerdict& v);
std::string emit_upto_verdict(const UpToVerdict& v);
std::string emit_lts_summary(const Lts& l);
std::string emit_matches(const Rule& p, const std::vector<OpenNetMorphism>& matches);
std::string emit_transform(const TransformResult& t);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace opennet
