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

#ifndef BRATSCORE_TEXT_H_
#define BRATSCORE_TEXT_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bratscore {

// UTF-8 note text addressed by Unicode scalar value offsets, which is how
// BRAT counts characters. Invalid byte sequences count one character per
// byte so every input has a well-defined length.
class NoteText {
 public:
  NoteText() = default;
  explicit NoteText(std::string utf8);

  NoteText(const NoteText &) = default;
  NoteText &operator=(const NoteText &) = default;
  // A moved-from text is empty.
  NoteText(NoteText &&other) noexcept
      : utf8_(std::move(other.utf8_)),
        length_(std::exchange(other.length_, 0)),
        offsets_(std::move(other.offsets_)) {}
  NoteText &operator=(NoteText &&other) noexcept {
    utf8_ = std::move(other.utf8_);
    length_ = std::exchange(other.length_, 0);
    offsets_ = std::move(other.offsets_);
    return *this;
  }

  const std::string &utf8() const { return utf8_; }

  // Number of characters (scalar values).
  int64_t length() const { return length_; }

  // Characters [begin, end). Requires 0 <= begin <= end <= length().
  std::string_view Slice(int64_t begin, int64_t end) const;

  friend bool operator==(const NoteText &a, const NoteText &b) {
    return a.utf8_ == b.utf8_;
  }

 private:
  size_t ByteOffset(int64_t index) const;

  std::string utf8_;
  int64_t length_ = 0;
  // Byte offset of each character plus a trailing sentinel. Empty when the
  // text is pure ASCII and offsets are the identity.
  std::vector<uint32_t> offsets_;
};

}  // namespace bratscore

#endif  // BRATSCORE_TEXT_H_
