// Copyright 2026 The Docforge Authors
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

#ifndef DOCFORGE_UNICODE_HPP_
#define DOCFORGE_UNICODE_HPP_

#include <string>
#include <string_view>

namespace docforge {

// Invalid sequences decode to U+FFFD, one per offending byte.
std::u32string DecodeUtf8(std::string_view text);
std::string EncodeUtf8(char32_t code_point);
std::string EncodeUtf8(std::u32string_view text);

size_t CodePointCount(std::string_view text);

// Ideographs, kana, hangul, CJK punctuation and full-width forms.
bool IsCjk(char32_t cp);
bool IsUnicodeSpace(char32_t cp);
inline bool IsAsciiDigit(char32_t cp) { return cp >= U'0' && cp <= U'9'; }

}  // namespace docforge

#endif  // DOCFORGE_UNICODE_HPP_
