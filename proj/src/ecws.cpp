#include "migra/ecws.hpp"

#include <cctype>
#include <sstream>
#include <unordered_map>

namespace migra::ecws {

namespace {

std::string with_pos(const std::string& what, SourcePos pos) {
  std::ostringstream os;
  os << pos.line << ':' << pos.column << ": " << what;
  return os.str();
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }
bool is_letter(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }

const char* describe(TokenKind k) {
  switch (k) {
    case TokenKind::Ident: return "label";
    case TokenKind::LParen: return "'('";
    case TokenKind::RParen: return "')'";
    case TokenKind::LBracket: return "'['";
    case TokenKind::RBracket: return "']'";
    case TokenKind::LBrace: return "'{'";
    case TokenKind::RBrace: return "'}'";
    case TokenKind::End: return "end of input";
  }
  return "?";
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  BlockTree parse_net() {
    BlockTree tree;
    tree.root = parse_pnet();
    if (peek().kind != TokenKind::End) unexpected("end of input");
    return tree;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = std::min(pos_ + ahead, toks_.size() - 1);
    return toks_[i];
  }
  const Token& take() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  [[noreturn]] void unexpected(const std::string& wanted) const {
    const Token& t = peek();
    std::string got = t.kind == TokenKind::Ident ? "label '" + t.text + "'" : describe(t.kind);
    throw ParseError("expected " + wanted + ", found " + got, t.pos);
  }
  void expect(TokenKind k) {
    if (peek().kind != k) unexpected(describe(k));
    take();
  }

  void place(Sequence& seq) {
    if (peek().kind != TokenKind::Ident) unexpected("a place label");
    const Token& t = take();
    note(t, true);
    seq.items.push_back(Element{Place{t.text}});
  }
  void transition(Sequence& seq) {
    if (peek().kind != TokenKind::Ident) unexpected("a transition label");
    const Token& t = take();
    note(t, false);
    seq.items.push_back(Element{Transition{t.text}});
  }

  void note(const Token& t, bool is_place) {
    auto [it, fresh] = seen_.emplace(t.text, is_place);
    if (!fresh) {
      throw DuplicateLabelError("label '" + t.text + "' appears more than once", t.pos);
    }
  }

  // Pnet -> Place | Pnet Trans Place | Pnet Trans and Trans Pnet
  //       | Pnet Trans loop Trans Pnet | Pnet xor Pnet
  // Blocks that sit between transitions may also follow each other through a
  // single shared transition, as in "ta {..}{..} td (..)(..) tj".
  Sequence parse_pnet() {
    Sequence seq;
    place(seq);
    for (;;) {
      const Token& next = peek();
      if (next.kind == TokenKind::LBracket) {
        seq.items.push_back(Element{parse_xor()});
        place(seq);
        continue;
      }
      if (next.kind != TokenKind::Ident) break;
      // A transition continues this Pnet only if something place-like follows;
      // otherwise it is the closing transition of an enclosing Tnet.
      TokenKind after = peek(1).kind;
      if (after != TokenKind::Ident && after != TokenKind::LParen && after != TokenKind::LBrace) break;
      transition(seq);
      place_slot(seq);
    }
    return seq;
  }

  // Place, or a run of AND/loop blocks joined by transitions ending in a place.
  void place_slot(Sequence& seq) {
    for (;;) {
      if (peek().kind == TokenKind::LParen) {
        seq.items.push_back(Element{parse_and()});
      } else if (peek().kind == TokenKind::LBrace) {
        seq.items.push_back(Element{parse_loop()});
      } else {
        place(seq);
        return;
      }
      transition(seq);
    }
  }

  // Tnet -> Trans | Trans Pnet Trans
  Sequence parse_tnet() {
    Sequence seq;
    transition(seq);
    if (peek().kind == TokenKind::Ident) {
      Sequence inner = parse_pnet();
      for (auto& e : inner.items) seq.items.push_back(std::move(e));
      transition(seq);
    }
    return seq;
  }

  AndBlock parse_and() {
    AndBlock block;
    SourcePos start = peek().pos;
    while (peek().kind == TokenKind::LParen) {
      take();
      block.branches.push_back(parse_pnet());
      expect(TokenKind::RParen);
    }
    if (block.branches.size() < 2) throw ParseError("AND block requires at least 2 branches", start);
    return block;
  }

  XorBlock parse_xor() {
    XorBlock block;
    SourcePos start = peek().pos;
    while (peek().kind == TokenKind::LBracket) {
      take();
      block.branches.push_back(parse_tnet());
      expect(TokenKind::RBracket);
    }
    if (block.branches.size() < 2) throw ParseError("XOR block requires at least 2 branches", start);
    return block;
  }

  LoopBlock parse_loop() {
    LoopBlock block;
    expect(TokenKind::LBrace);
    block.forward = parse_pnet();
    expect(TokenKind::RBrace);
    if (peek().kind != TokenKind::LBrace) unexpected("'{' opening the loop back branch");
    take();
    block.back = parse_tnet();
    expect(TokenKind::RBrace);
    return block;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::unordered_map<std::string, bool> seen_;
};

// ---------------------------------------------------------------------------
// Formatting

class Formatter {
 public:
  std::string run(const Sequence& root) {
    seq(root);
    return std::move(out_);
  }

 private:
  void label(const Label& l) {
    // Concatenation only splits where a digit run meets a letter.
    if (last_was_label_ && !(is_digit(out_.back()) && is_letter(l.front()))) out_ += ',';
    out_ += l;
    last_was_label_ = true;
  }
  void punct(char c) {
    out_ += c;
    last_was_label_ = false;
  }
  void seq(const Sequence& s) {
    for (const auto& e : s.items) element(e);
  }
  void element(const Element& e) {
    std::visit(
        [this](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, Place> || std::is_same_v<T, Transition>) {
            label(n.label);
          } else if constexpr (std::is_same_v<T, AndBlock>) {
            for (const auto& b : n.branches) { punct('('); seq(b); punct(')'); }
          } else if constexpr (std::is_same_v<T, XorBlock>) {
            for (const auto& b : n.branches) { punct('['); seq(b); punct(']'); }
          } else {
            punct('{'); seq(n.forward); punct('}');
            punct('{'); seq(n.back); punct('}');
          }
        },
        e.node);
  }

  std::string out_;
  bool last_was_label_ = false;
};

// ---------------------------------------------------------------------------
// Validation of programmatically built trees

class Validator {
 public:
  void run(const BlockTree& t) {
    seq(t.root, true, "root sequence");
  }

 private:
  [[noreturn]] static void fail(const std::string& what) { throw ParseError(what, SourcePos{0, 0}); }

  static bool real_place(const Sequence& s, std::size_t i) { return i < s.items.size() && s.items[i].is_place(); }
  static bool real_trans(const Sequence& s, std::size_t i) {
    return i < s.items.size() && s.items[i].is_transition();
  }

  void seq(const Sequence& s, bool place_bordered, const char* where) {
    const auto n = s.items.size();
    if (n == 0) fail(std::string("empty ") + where);
    if (n % 2 == 0) fail(std::string(where) + " must alternate and have odd length");
    if (place_bordered ? !(real_place(s, 0) && real_place(s, n - 1))
                       : !(real_trans(s, 0) && real_trans(s, n - 1))) {
      fail(std::string(where) + (place_bordered ? " must begin and end with a place"
                                                : " must begin and end with a transition"));
    }
    for (std::size_t i = 0; i < n; ++i) {
      // Slots alternate: in a place-bordered run even indices are place-like.
      bool place_slot = (i % 2 == 0) == place_bordered;
      const Element& e = s.items[i];
      std::visit(
          [&](const auto& node) {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, Place>) {
              if (!place_slot) fail("place '" + node.label + "' in a transition position");
              label(node.label);
            } else if constexpr (std::is_same_v<T, Transition>) {
              if (place_slot) fail("transition '" + node.label + "' in a place position");
              label(node.label);
            } else if constexpr (std::is_same_v<T, AndBlock>) {
              if (!place_slot || i == 0 || !real_trans(s, i - 1) || !real_trans(s, i + 1))
                fail("AND block must sit between two transitions");
              if (node.branches.size() < 2) fail("AND block requires at least 2 branches");
              for (const auto& b : node.branches) seq(b, true, "AND branch");
            } else if constexpr (std::is_same_v<T, XorBlock>) {
              if (place_slot || i == 0 || !real_place(s, i - 1) || !real_place(s, i + 1))
                fail("XOR block must sit between two places");
              if (node.branches.size() < 2) fail("XOR block requires at least 2 branches");
              for (const auto& b : node.branches) seq(b, false, "XOR branch");
            } else {
              if (!place_slot || i == 0 || !real_trans(s, i - 1) || !real_trans(s, i + 1))
                fail("loop block must sit between two transitions");
              seq(node.forward, true, "loop forward branch");
              seq(node.back, false, "loop back branch");
            }
          },
          e.node);
    }
  }

  void label(const Label& l) {
    if (l.empty() || !ident_start(l.front())) fail("invalid label '" + l + "'");
    for (char c : l) {
      if (!ident_char(c)) fail("invalid label '" + l + "'");
    }
    if (!seen_.insert(l).second) throw DuplicateLabelError("label '" + l + "' appears more than once", {0, 0});
  }

  std::set<Label> seen_;
};

// ---------------------------------------------------------------------------
// Net construction

struct Ends {
  std::vector<Label> nodes;
  bool places;
};

class NetBuilder {
 public:
  WfNet run(const BlockTree& t) {
    wire(t.root);
    net_.init = std::get<Place>(t.root.items.front().node).label;
    net_.end = std::get<Place>(t.root.items.back().node).label;
    return std::move(net_);
  }

 private:
  static Ends entries(const Element& e) {
    return std::visit(
        [](const auto& n) -> Ends {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, Place>) return {{n.label}, true};
          else if constexpr (std::is_same_v<T, Transition>) return {{n.label}, false};
          else if constexpr (std::is_same_v<T, AndBlock> || std::is_same_v<T, XorBlock>) {
            Ends out{{}, std::is_same_v<T, AndBlock>};
            for (const auto& b : n.branches) {
              auto sub = entries(b.items.front());
              out.nodes.insert(out.nodes.end(), sub.nodes.begin(), sub.nodes.end());
            }
            return out;
          } else {
            return entries(n.forward.items.front());
          }
        },
        e.node);
  }

  static Ends exits(const Element& e) {
    return std::visit(
        [](const auto& n) -> Ends {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, Place>) return {{n.label}, true};
          else if constexpr (std::is_same_v<T, Transition>) return {{n.label}, false};
          else if constexpr (std::is_same_v<T, AndBlock> || std::is_same_v<T, XorBlock>) {
            Ends out{{}, std::is_same_v<T, AndBlock>};
            for (const auto& b : n.branches) {
              auto sub = exits(b.items.back());
              out.nodes.insert(out.nodes.end(), sub.nodes.begin(), sub.nodes.end());
            }
            return out;
          } else {
            return exits(n.forward.items.back());
          }
        },
        e.node);
  }

  void connect(const Ends& from, const Ends& to) {
    for (const auto& a : from.nodes)
      for (const auto& b : to.nodes) net_.add_arc(a, b, from.places);
  }

  void wire(const Sequence& s) {
    for (std::size_t i = 0; i < s.items.size(); ++i) {
      element(s.items[i]);
      if (i + 1 < s.items.size()) connect(exits(s.items[i]), entries(s.items[i + 1]));
    }
  }

  void element(const Element& e) {
    std::visit(
        [this](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, Place>) {
            net_.places.push_back(n.label);
          } else if constexpr (std::is_same_v<T, Transition>) {
            net_.transitions.push_back(n.label);
            net_.pre[n.label];
            net_.post[n.label];
          } else if constexpr (std::is_same_v<T, AndBlock> || std::is_same_v<T, XorBlock>) {
            for (const auto& b : n.branches) wire(b);
          } else {
            wire(n.forward);
            wire(n.back);
            connect(exits(n.forward.items.back()), entries(n.back.items.front()));
            connect(exits(n.back.items.back()), entries(n.forward.items.front()));
          }
        },
        e.node);
  }

  WfNet net_;
};

void collect(const Sequence& s, std::vector<Label>& places, std::vector<Label>& trans) {
  for (const auto& e : s.items) {
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, Place>) places.push_back(n.label);
          else if constexpr (std::is_same_v<T, Transition>) trans.push_back(n.label);
          else if constexpr (std::is_same_v<T, LoopBlock>) {
            collect(n.forward, places, trans);
            collect(n.back, places, trans);
          } else {
            for (const auto& b : n.branches) collect(b, places, trans);
          }
        },
        e.node);
  }
}

}  // namespace

EcwsError::EcwsError(const std::string& what, SourcePos pos)
    : std::runtime_error(with_pos(what, pos)), pos_(pos), message_(what) {}

std::vector<Token> lex(std::string_view text) {
  std::vector<Token> out;
  SourcePos pos;
  std::size_t i = 0;
  auto advance = [&](std::size_t n = 1) {
    for (std::size_t k = 0; k < n && i < text.size(); ++k, ++i) {
      if (text[i] == '\n') {
        ++pos.line;
        pos.column = 1;
      } else {
        ++pos.column;
      }
    }
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance();
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
      advance();
      continue;
    }
    TokenKind k = TokenKind::End;
    switch (c) {
      case '(': k = TokenKind::LParen; break;
      case ')': k = TokenKind::RParen; break;
      case '[': k = TokenKind::LBracket; break;
      case ']': k = TokenKind::RBracket; break;
      case '{': k = TokenKind::LBrace; break;
      case '}': k = TokenKind::RBrace; break;
      default: break;
    }
    if (k != TokenKind::End) {
      out.push_back({k, std::string(1, c), pos});
      advance();
      continue;
    }
    if (!ident_start(c)) {
      std::string shown = std::isprint(static_cast<unsigned char>(c)) ? std::string(1, c) : "\\x" + std::to_string(+static_cast<unsigned char>(c));
      throw LexError("illegal character '" + shown + "'", pos);
    }
    SourcePos start = pos;
    std::size_t j = i + 1;
    while (j < text.size() && ident_char(text[j]) && !(is_digit(text[j - 1]) && is_letter(text[j]))) ++j;
    out.push_back({TokenKind::Ident, std::string(text.substr(i, j - i)), start});
    advance(j - i);
  }
  if (out.empty()) throw LexError("empty input", pos);
  out.push_back({TokenKind::End, "", pos});
  return out;
}

BlockTree parse(std::string_view text) { return Parser(lex(text)).parse_net(); }

std::string format(const BlockTree& tree) { return Formatter{}.run(tree.root); }

void validate(const BlockTree& tree) { Validator{}.run(tree); }

WfNet build_net(const BlockTree& tree) {
  WfNet net = NetBuilder{}.run(tree);
  auto problems = structural_problems(net);
  if (!problems.empty()) throw std::logic_error("build_net produced an invalid WF-net: " + problems.front());
  return net;
}

std::vector<Label> place_labels(const BlockTree& tree) {
  std::vector<Label> p, t;
  collect(tree.root, p, t);
  return p;
}

std::vector<Label> transition_labels(const BlockTree& tree) {
  std::vector<Label> p, t;
  collect(tree.root, p, t);
  return t;
}

}  // namespace migra::ecws
