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

#include <cassert>
#include <utility>

namespace bratscore {
namespace {

// Length in bytes of the UTF-8 sequence starting at s[i], or 1 if the bytes
// there do not form a valid sequence.
size_t SequenceLength(const std::string &s, size_t i) {
  const auto b0 = static_cast<unsigned char>(s[i]);
  size_t len;
  if (b0 < 0x80) return 1;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
  } else {
    return 1;
  }
  if (i + len > s.size()) return 1;
  for (size_t k = 1; k < len; ++k) {
    if ((static_cast<unsigned char>(s[i + k]) & 0xC0) != 0x80) return 1;
  }
  return len;
}

}  // namespace

NoteText::NoteText(std::string utf8) : utf8_(std::move(utf8)) {
  bool ascii = true;
  for (char c : utf8_) {
    if (static_cast<unsigned char>(c) >= 0x80) {
      ascii = false;
      break;
    }
  }
  if (ascii) {
    length_ = static_cast<int64_t>(utf8_.size());
    return;
  }
  offsets_.reserve(utf8_.size() + 1);
  for (size_t i = 0; i < utf8_.size(); i += SequenceLength(utf8_, i)) {
    offsets_.push_back(static_cast<uint32_t>(i));
  }
  length_ = static_cast<int64_t>(offsets_.size());
  offsets_.push_back(static_cast<uint32_t>(utf8_.size()));
}

size_t NoteText::ByteOffset(int64_t index) const {
  if (offsets_.empty()) return static_cast<size_t>(index);
  return offsets_[static_cast<size_t>(index)];
}

std::string_view NoteText::Slice(int64_t begin, int64_t end) const {
  assert(0 <= begin && begin <= end && end <= length_);
  const size_t b = ByteOffset(begin);
  const size_t e = ByteOffset(end);
  return std::string_view(utf8_).substr(b, e - b);
}

}  // namespace bratscore
