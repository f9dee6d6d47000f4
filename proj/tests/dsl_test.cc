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

#include <gtest/gtest.h>

#include <string>

#include "probnetkat/error.h"
#include "probnetkat/program.h"
#include "probnetkat/syntax.h"
#include "test_support.h"

namespace probnetkat {
namespace {

using testing::Gen;
using testing::Q;

Program T(const char* f, FieldValue v) { return Program::Test(f, v); }
Program M(const char* f, FieldValue v) { return Program::Mod(f, v); }

TEST(ParseTest, Atoms) {
  EXPECT_EQ(Parse("drop"), Program::Drop());
  EXPECT_EQ(Parse("skip"), Program::Skip());
  EXPECT_EQ(Parse("dup"), Program::Dup());
  EXPECT_EQ(Parse("sw=3"), T("sw", 3));
  EXPECT_EQ(Parse("pt := 2"), M("pt", 2));
}

TEST(ParseTest, SequenceBindsTighterThanChoiceAndUnion) {
  Program p = Parse("sw=1; pt:=2 & sw=2; pt:=1");
  EXPECT_EQ(p, Program::Par(Program::Seq(T("sw", 1), M("pt", 2)),
                            Program::Seq(T("sw", 2), M("pt", 1))));
  Program q = Parse("pt:=1 +[1/3] pt:=2; dup");
  EXPECT_EQ(q, Program::Choice(Q(1, 3), M("pt", 1), Program::Seq(M("pt", 2), Program::Dup())));
}

TEST(ParseTest, ChoiceBindsTighterThanUnion) {
  Program p = Parse("pt:=1 +[1/4] pt:=2 & dup");
  EXPECT_EQ(p, Program::Par(Program::Choice(Q(1, 4), M("pt", 1), M("pt", 2)), Program::Dup()));
}

TEST(ParseTest, ChoiceSpellings) {
  Program expected = Program::Choice(Q(1, 2), M("pt", 1), M("pt", 0));
  EXPECT_EQ(Parse("pt:=1 oplus pt:=0"), expected);
  EXPECT_EQ(Parse("pt:=1 \xE2\x8A\x95 pt:=0"), expected);
  EXPECT_EQ(Parse("pt:=1 oplus[0.5] pt:=0"), expected);
  EXPECT_EQ(Parse("pt:=1 +[1/2] pt:=0"), expected);
}

TEST(ParseTest, BinaryOperatorsAssociateLeft) {
  EXPECT_EQ(Parse("dup; pt:=1; sw:=0"),
            Program::Seq(Program::Seq(Program::Dup(), M("pt", 1)), M("sw", 0)));
  EXPECT_EQ(Parse("sw=0 & sw=1 & pt=1"),
            Program::Par(Program::Par(T("sw", 0), T("sw", 1)), T("pt", 1)));
}

TEST(ParseTest, PrefixAndPostfix) {
  EXPECT_EQ(Parse("~sw=1"), Program::Neg(T("sw", 1)));
  EXPECT_EQ(Parse("\xC2\xAC sw=1"), Program::Neg(T("sw", 1)));
  EXPECT_EQ(Parse("(dup; pt:=1)*"), Program::Star(Program::Seq(Program::Dup(), M("pt", 1))));
  EXPECT_EQ(Parse("dup^3"), Program::BoundedStar(3, Program::Dup()));
  EXPECT_EQ(Parse("dup; pt:=1*"), Program::Seq(Program::Dup(), Program::Star(M("pt", 1))));
}

TEST(ParseTest, IfAndWhile) {
  EXPECT_EQ(Parse("if sw=1 then pt:=2 else drop"),
            Program::If(T("sw", 1), M("pt", 2), Program::Drop()));
  EXPECT_EQ(Parse("while ~pt=1 do (pt:=1 +[1/2] skip)"),
            Program::While(Program::Neg(T("pt", 1)),
                           Program::Choice(Q(1, 2), M("pt", 1), Program::Skip())));
}

TEST(ParseTest, CommentsAndWhitespace) {
  EXPECT_EQ(Parse("# a comment\n  sw=1 ; # trailing\n pt:=0\n"),
            Program::Seq(T("sw", 1), M("pt", 0)));
}

TEST(ParseTest, ErrorsCarryLineAndColumn) {
  try {
    Parse("sw=1;\n  pt:=");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
    EXPECT_GE(e.column(), 6);
    EXPECT_EQ(e.kind(), ErrorKind::kSyntax);
  }
}

TEST(ParseTest, RejectsMalformedInput) {
  for (const char* text : {"", "sw", "sw=", "(dup", "dup)", "pt:=1 +[3/2] dup", "pt:=1 +[1/0] dup",
                           "sw=1 $ dup", "if sw=1 then dup", "sw=-1", "while do dup"}) {
    EXPECT_THROW(Parse(text), ParseError) << text;
  }
}

TEST(TypecheckTest, ClassifiesPredicatesAndCommands) {
  EXPECT_EQ(Typecheck(Parse("sw=1 & ~pt=0; skip")), Kind::kPredicate);
  EXPECT_EQ(Typecheck(Parse("drop")), Kind::kPredicate);
  EXPECT_EQ(Typecheck(Parse("sw=1; pt:=0")), Kind::kCommand);
  EXPECT_EQ(Typecheck(Parse("sw=1 +[1/2] sw=0")), Kind::kCommand);
  EXPECT_EQ(Typecheck(Parse("(sw=1)*")), Kind::kCommand);
}

TEST(TypecheckTest, NegatedStarIsAKindError) {
  Program p = Parse("~(dup*)");
  try {
    Typecheck(p);
    FAIL() << "expected a kind error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kKind);
    EXPECT_NE(std::string(e.what()).find("dup*"), std::string::npos);
  }
}

TEST(TypecheckTest, GuardsMustBePredicates) {
  EXPECT_THROW(Typecheck(Parse("if pt:=1 then dup else skip")), Error);
  EXPECT_THROW(Typecheck(Parse("while dup do skip")), Error);
}

TEST(DesugarTest, IfBecomesGuardedUnion) {
  Program d = Desugar(Parse("if sw=1 then pt:=1 else pt:=0"));
  EXPECT_EQ(d, Parse("sw=1; pt:=1 & ~sw=1; pt:=0"));
  EXPECT_FALSE(ContainsSugar(d));
}

TEST(DesugarTest, WhileBecomesGuardedStar) {
  Program d = Desugar(Parse("while sw=0 do sw:=1"));
  EXPECT_EQ(d, Parse("(sw=0; sw:=1)*; ~sw=0"));
  EXPECT_TRUE(ContainsStar(d));
}

TEST(ProgramTest, ChoiceAllWeightsAreExact) {
  Program p = Program::ChoiceAll({M("pt", 0), M("pt", 1), Program::Drop()},
                                 {Q(1, 2), Q(1, 4), Q(1, 4)});
  ASSERT_EQ(p.kind(), NodeKind::kChoice);
  EXPECT_EQ(p.prob(), Q(1, 2));
  EXPECT_EQ(p.child(1).prob(), Q(1, 2));
  EXPECT_THROW(Program::ChoiceAll({Program::Drop()}, {Q(1, 2)}), Error);
  EXPECT_THROW(Program::Choice(Q(3, 2), Program::Drop(), Program::Skip()), Error);
}

TEST(ProgramTest, EmptyCombinations) {
  EXPECT_EQ(Program::ParAll({}), Program::Drop());
  EXPECT_EQ(Program::SeqAll({}), Program::Skip());
}

TEST(PrintTest, MinimalParentheses) {
  EXPECT_EQ(Print(Parse("(sw=1; pt:=2) & dup")), "sw=1; pt:=2 & dup");
  EXPECT_EQ(Print(Parse("sw=1; (pt:=2 & dup)")), "sw=1; (pt:=2 & dup)");
  EXPECT_EQ(Print(Parse("(pt:=1 oplus pt:=0)*")), "(pt:=1 +[1/2] pt:=0)*");
  EXPECT_EQ(Print(Parse("dup; (pt:=1; sw:=0)")), "dup; (pt:=1; sw:=0)");
}

TEST(PrintTest, RoundTripsRandomPrograms) {
  Gen g(2026);
  for (int i = 0; i < 1000; ++i) {
    Program p = g.RandomProgram(5, true, true);
    std::string text = Print(p);
    Program back = Parse(text);
    ASSERT_EQ(back, p) << text;
    EXPECT_EQ(Print(back), text);
  }
}

}  // namespace
}  // namespace probnetkat
