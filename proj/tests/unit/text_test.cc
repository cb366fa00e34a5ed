// Copyright 2026 The bratscore Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "bratscore/text.h"

#include <gtest/gtest.h>

namespace bratscore {
namespace {

TEST(NoteTextTest, AsciiOffsetsAreByteOffsets) {
  NoteText text("Denies tobacco.");
  EXPECT_EQ(text.length(), 15);
  EXPECT_EQ(text.Slice(7, 14), "tobacco");
}

TEST(NoteTextTest, CountsScalarValuesNotBytes) {
  // "é" is two bytes, "→" three, the emoji four.
  NoteText text("café → 🍺 beer");
  EXPECT_EQ(text.length(), 13);
  EXPECT_EQ(text.Slice(3, 4), "é");
  EXPECT_EQ(text.Slice(5, 6), "→");
  EXPECT_EQ(text.Slice(7, 8), "🍺");
  EXPECT_EQ(text.Slice(9, 13), "beer");
}

TEST(NoteTextTest, InvalidBytesCountOneEach) {
  NoteText text(std::string("a\xff\xfe" "b"));
  EXPECT_EQ(text.length(), 4);
  EXPECT_EQ(text.Slice(3, 4), "b");
}

TEST(NoteTextTest, EmptySliceAtEnd) {
  NoteText text("abc");
  EXPECT_EQ(text.Slice(3, 3), "");
}

TEST(NoteTextTest, MovedFromTextIsEmpty) {
  NoteText a("héllo");
  NoteText b(std::move(a));
  EXPECT_EQ(b.length(), 5);
  EXPECT_EQ(a.length(), 0);  // NOLINT(bugprone-use-after-move)
}

}  // namespace
}  // namespace bratscore
