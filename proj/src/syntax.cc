// Copyright 2026 The ProbNetKAT authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "probnetkat/syntax.h"

#include <cctype>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "probnetkat/error.h"

namespace probnetkat {
namespace {

enum class Tok {
  kIdent,
  kNumber,
  kLParen,
  kRParen,
  kLBracket,
  kRBracket,
  kSemi,
  kAmp,
  kPlus,
  kOplus,  // '⊕' or the keyword 'oplus'
  kNot,
  kStar,
  kCaret,
  kEq,
  kAssign,
  kSlash,
  kEnd,
};

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> Run() {
    std::vector<Token> out;
    while (true) {
      SkipBlanks();
      int line = line_, col = col_;
      if (pos_ >= src_.size()) {
        out.push_back({Tok::kEnd, "", line, col});
        return out;
      }
      char c = src_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::string word;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                src_[pos_] == '_')) {
          word.push_back(src_[pos_]);
          Advance(1);
        }
        out.push_back({word == "oplus" ? Tok::kOplus : Tok::kIdent, word, line, col});
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
        std::string num;
        while (pos_ < src_.size() &&
               (std::isdigit(static_cast<unsigned char>(src_[pos_])) ||
                src_[pos_] == '.')) {
          num.push_back(src_[pos_]);
          Advance(1);
        }
        out.push_back({Tok::kNumber, num, line, col});
        continue;
      }
      if (Starts("⊕")) {
        Advance(std::string_view("⊕").size(), 1);
        out.push_back({Tok::kOplus, "⊕", line, col});
        continue;
      }
      if (Starts("¬")) {
        Advance(std::string_view("¬").size(), 1);
        out.push_back({Tok::kNot, "¬", line, col});
        continue;
      }
      if (Starts(":=")) {
        Advance(2);
        out.push_back({Tok::kAssign, ":=", line, col});
        continue;
      }
      Tok kind;
      switch (c) {
        case '(': kind = Tok::kLParen; break;
        case ')': kind = Tok::kRParen; break;
        case '[': kind = Tok::kLBracket; break;
        case ']': kind = Tok::kRBracket; break;
        case ';': kind = Tok::kSemi; break;
        case '&': kind = Tok::kAmp; break;
        case '+': kind = Tok::kPlus; break;
        case '~': kind = Tok::kNot; break;
        case '*': kind = Tok::kStar; break;
        case '^': kind = Tok::kCaret; break;
        case '=': kind = Tok::kEq; break;
        case '/': kind = Tok::kSlash; break;
        default:
          throw ParseError(line, col, "unexpected character '" + std::string(1, c) + "'");
      }
      Advance(1);
      out.push_back({kind, std::string(1, c), line, col});
    }
  }

 private:
  bool Starts(std::string_view s) const { return src_.substr(pos_).starts_with(s); }

  // Moves `bytes` forward, counting `columns` display columns (defaults to
  // one per byte).
  void Advance(std::size_t bytes, int columns = -1) {
    for (std::size_t i = 0; i < bytes; ++i) {
      if (src_[pos_ + i] == '\n') {
        ++line_;
        col_ = 1;
      } else if (columns < 0) {
        ++col_;
      }
    }
    if (columns > 0) col_ += columns;
    pos_ += bytes;
  }

  void SkipBlanks() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') Advance(1);
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        Advance(1);
      } else {
        return;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

bool IsKeyword(const std::string& w) {
  return w == "drop" || w == "skip" || w == "dup" || w == "if" || w == "then" ||
         w == "else" || w == "while" || w == "do";
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  Program ParseAll() {
    Program p = ParsePar();
    if (Peek().kind != Tok::kEnd) Fail(Peek(), "unexpected '" + Peek().text + "'");
    return p;
  }

 private:
  const Token& Peek() const { return toks_[pos_]; }
  const Token& Next() { return toks_[pos_++]; }
  bool PeekKeyword(std::string_view kw) const {
    return Peek().kind == Tok::kIdent && Peek().text == kw;
  }

  [[noreturn]] static void Fail(const Token& t, const std::string& message) {
    throw ParseError(t.line, t.column, message);
  }

  const Token& Expect(Tok kind, const char* what) {
    if (Peek().kind != kind) {
      Fail(Peek(), std::string("expected ") + what + ", found '" +
                       (Peek().kind == Tok::kEnd ? "end of input" : Peek().text) + "'");
    }
    return Next();
  }

  void ExpectKeyword(const char* kw) {
    if (!PeekKeyword(kw)) Fail(Peek(), std::string("expected '") + kw + "'");
    Next();
  }

  Program ParsePar() {
    Program acc = ParseChoice();
    while (Peek().kind == Tok::kAmp) {
      Next();
      acc = Program::Par(acc, ParseChoice());
    }
    return acc;
  }

  Program ParseChoice() {
    Program acc = ParseSeq();
    while (true) {
      if (Peek().kind == Tok::kPlus) {
        Next();
        if (Peek().kind != Tok::kLBracket) {
          Fail(Peek(), "'+' must be followed by a bracketed probability, e.g. +[1/2]");
        }
        Rational r = ParseBracketedProb();
        acc = Program::Choice(r, acc, ParseSeq());
      } else if (Peek().kind == Tok::kOplus) {
        Next();
        Rational r(1, 2);
        if (Peek().kind == Tok::kLBracket) r = ParseBracketedProb();
        acc = Program::Choice(r, acc, ParseSeq());
      } else {
        return acc;
      }
    }
  }

  Rational ParseBracketedProb() {
    Expect(Tok::kLBracket, "'['");
    const Token& start = Peek();
    std::string literal = Expect(Tok::kNumber, "probability").text;
    if (Peek().kind == Tok::kSlash) {
      Next();
      literal += "/" + Expect(Tok::kNumber, "denominator").text;
    }
    Expect(Tok::kRBracket, "']'");
    Rational r;
    try {
      r = ParseRational(literal);
    } catch (const Error& e) {
      Fail(start, e.what());
    }
    if (!InUnitInterval(r)) {
      Fail(start, "probability " + literal + " outside [0,1]");
    }
    return r;
  }

  Program ParseSeq() {
    Program acc = ParseUnary();
    while (Peek().kind == Tok::kSemi) {
      Next();
      acc = Program::Seq(acc, ParseUnary());
    }
    return acc;
  }

  Program ParseUnary() {
    if (Peek().kind == Tok::kNot) {
      Next();
      return Program::Neg(ParseUnary());
    }
    return ParsePostfix();
  }

  Program ParsePostfix() {
    Program p = ParsePrimary();
    while (true) {
      if (Peek().kind == Tok::kStar) {
        Next();
        p = Program::Star(p);
      } else if (Peek().kind == Tok::kCaret) {
        Next();
        p = Program::BoundedStar(ParseNatural(), p);
      } else {
        return p;
      }
    }
  }

  FieldValue ParseNatural() {
    const Token& t = Expect(Tok::kNumber, "natural number");
    if (t.text.find('.') != std::string::npos || t.text.size() > 10) {
      Fail(t, "expected natural number, found '" + t.text + "'");
    }
    std::uint64_t v = std::stoull(t.text);
    if (v > std::numeric_limits<FieldValue>::max()) Fail(t, "number too large");
    return static_cast<FieldValue>(v);
  }

  Program ParsePrimary() {
    const Token& t = Peek();
    switch (t.kind) {
      case Tok::kLParen: {
        Next();
        Program p = ParsePar();
        Expect(Tok::kRParen, "')'");
        return p;
      }
      case Tok::kIdent: {
        if (t.text == "drop") { Next(); return Program::Drop(); }
        if (t.text == "skip") { Next(); return Program::Skip(); }
        if (t.text == "dup") { Next(); return Program::Dup(); }
        if (t.text == "if") {
          Next();
          Program cond = ParsePar();
          ExpectKeyword("then");
          Program then_branch = ParsePar();
          ExpectKeyword("else");
          return Program::If(cond, then_branch, ParseUnary());
        }
        if (t.text == "while") {
          Next();
          Program cond = ParsePar();
          ExpectKeyword("do");
          return Program::While(cond, ParseUnary());
        }
        if (IsKeyword(t.text)) Fail(t, "unexpected keyword '" + t.text + "'");
        std::string field = Next().text;
        if (Peek().kind == Tok::kEq) {
          Next();
          return Program::Test(field, ParseNatural());
        }
        if (Peek().kind == Tok::kAssign) {
          Next();
          return Program::Mod(field, ParseNatural());
        }
        Fail(Peek(), "expected '=' or ':=' after field '" + field + "'");
      }
      case Tok::kEnd:
        Fail(t, "unexpected end of input");
      default:
        Fail(t, "unexpected '" + t.text + "'");
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

// Binding strength; higher binds tighter.
enum Level { kParLevel = 1, kChoiceLevel, kSeqLevel, kUnaryLevel, kPostfixLevel, kAtomLevel };

int LevelOf(const Program& p) {
  switch (p.kind()) {
    case NodeKind::kPar: return kParLevel;
    case NodeKind::kChoice: return kChoiceLevel;
    case NodeKind::kSeq: return kSeqLevel;
    case NodeKind::kNeg:
    case NodeKind::kIf:
    case NodeKind::kWhile: return kUnaryLevel;
    case NodeKind::kStar:
    case NodeKind::kBoundedStar: return kPostfixLevel;
    default: return kAtomLevel;
  }
}

void PrintAt(const Program& p, int min_level, std::string& out);

void PrintBody(const Program& p, std::string& out) {
  switch (p.kind()) {
    case NodeKind::kDrop: out += "drop"; return;
    case NodeKind::kSkip: out += "skip"; return;
    case NodeKind::kDup: out += "dup"; return;
    case NodeKind::kTest:
      out += p.field() + "=" + std::to_string(p.value());
      return;
    case NodeKind::kMod:
      out += p.field() + ":=" + std::to_string(p.value());
      return;
    case NodeKind::kNeg:
      out += "~";
      PrintAt(p.child(0), kUnaryLevel, out);
      return;
    case NodeKind::kPar:
      PrintAt(p.child(0), kParLevel, out);
      out += " & ";
      PrintAt(p.child(1), kParLevel + 1, out);
      return;
    case NodeKind::kChoice:
      PrintAt(p.child(0), kChoiceLevel, out);
      out += " +[" + FormatFraction(p.prob()) + "] ";
      PrintAt(p.child(1), kChoiceLevel + 1, out);
      return;
    case NodeKind::kSeq:
      PrintAt(p.child(0), kSeqLevel, out);
      out += "; ";
      PrintAt(p.child(1), kSeqLevel + 1, out);
      return;
    case NodeKind::kStar:
      PrintAt(p.child(0), kPostfixLevel, out);
      out += "*";
      return;
    case NodeKind::kBoundedStar:
      PrintAt(p.child(0), kPostfixLevel, out);
      out += "^" + std::to_string(p.bound());
      return;
    case NodeKind::kIf:
      out += "if ";
      PrintAt(p.child(0), kParLevel, out);
      out += " then ";
      PrintAt(p.child(1), kParLevel, out);
      out += " else ";
      PrintAt(p.child(2), kUnaryLevel, out);
      return;
    case NodeKind::kWhile:
      out += "while ";
      PrintAt(p.child(0), kParLevel, out);
      out += " do ";
      PrintAt(p.child(1), kUnaryLevel, out);
      return;
  }
}

void PrintAt(const Program& p, int min_level, std::string& out) {
  bool parens = LevelOf(p) < min_level;
  if (parens) out += "(";
  PrintBody(p, out);
  if (parens) out += ")";
}

}  // namespace

Program Parse(std::string_view text) {
  Parser parser(Lexer(text).Run());
  return parser.ParseAll();
}

std::string Print(const Program& p) {
  std::string out;
  PrintAt(p, kParLevel, out);
  return out;
}

}  // namespace probnetkat
