#pragma once

// ECWS (Extended Compact Workflow Specification) front end.
//
// An ECWS text describes a block-structured WF-net. Places and transitions
// alternate along a sequence; three bracket kinds introduce blocks:
//
//   ( Pnet ) ( Pnet ) ...   AND block, sits between a fork and a join transition
//   [ Tnet ] [ Tnet ] ...   XOR block, sits between two places
//   { Pnet } { Tnet }       loop block, sits between two transitions
//
// A Pnet is place-bordered, a Tnet is transition-bordered. Whether a label
// names a place or a transition follows from its position only.

#include <cstddef>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "migra/net.hpp"

namespace migra::ecws {

struct SourcePos {
  std::size_t line = 1;
  std::size_t column = 1;
};

class EcwsError : public std::runtime_error {
 public:
  EcwsError(const std::string& what, SourcePos pos);
  const SourcePos& pos() const { return pos_; }
  const std::string& message() const { return message_; }

 private:
  SourcePos pos_;
  std::string message_;
};

class LexError : public EcwsError {
  using EcwsError::EcwsError;
};
class ParseError : public EcwsError {
  using EcwsError::EcwsError;
};
class DuplicateLabelError : public EcwsError {
  using EcwsError::EcwsError;
};

struct Element;

/// Ordered run of alternating place-like and transition-like elements.
struct Sequence {
  std::vector<Element> items;

  bool operator==(const Sequence&) const;
};

struct Place {
  Label label;
  bool operator==(const Place&) const = default;
};

struct Transition {
  Label label;
  bool operator==(const Transition&) const = default;
};

struct AndBlock {
  std::vector<Sequence> branches;  // each place-bordered
  bool operator==(const AndBlock&) const = default;
};

struct XorBlock {
  std::vector<Sequence> branches;  // each transition-bordered
  bool operator==(const XorBlock&) const = default;
};

struct LoopBlock {
  Sequence forward;  // place-bordered
  Sequence back;     // transition-bordered
  bool operator==(const LoopBlock&) const = default;
};

struct Element {
  std::variant<Place, Transition, AndBlock, XorBlock, LoopBlock> node;

  bool is_place() const { return std::holds_alternative<Place>(node); }
  bool is_transition() const { return std::holds_alternative<Transition>(node); }
  bool operator==(const Element&) const = default;
};

inline bool Sequence::operator==(const Sequence& other) const { return items == other.items; }

/// Parse tree of one net; the root sequence starts at the source place and
/// ends at the sink place.
struct BlockTree {
  Sequence root;
  bool operator==(const BlockTree&) const = default;
};

/// Token kinds produced by the lexer.
enum class TokenKind { Ident, LParen, RParen, LBracket, RBracket, LBrace, RBrace, End };

struct Token {
  TokenKind kind;
  std::string text;
  SourcePos pos;
};

std::vector<Token> lex(std::string_view text);

BlockTree parse(std::string_view text);

/// Canonical text. Adjacent labels are separated by a comma only when plain
/// concatenation would lex differently.
std::string format(const BlockTree& tree);

/// Throws ParseError / DuplicateLabelError if the tree violates the grammar.
void validate(const BlockTree& tree);

/// Wires the net: sequence neighbours get one arc each, AND fork/join and
/// XOR split/merge connect to every branch end, loops add the back edges.
WfNet build_net(const BlockTree& tree);

std::vector<Label> place_labels(const BlockTree& tree);
std::vector<Label> transition_labels(const BlockTree& tree);

}  // namespace migra::ecws
