//
// Copyright 2026 The nlunoise Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

// Small string helpers shared by the parsers and injectors.

#ifndef NLUNOISE_TEXT_H_
#define NLUNOISE_TEXT_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace nlunoise {

// Uppercases ASCII letters and the Latin-1 supplement letters (U+00E0 to
// U+00FE, except U+00F7). Other code points pass through unchanged.
std::string ToUpper(std::string_view s);

std::string ToLowerAscii(std::string_view s);

bool IsAsciiAlpha(std::string_view s);
bool HasAsciiWhitespace(std::string_view s);

// True when every character is ASCII punctuation.
bool IsPunctuationToken(std::string_view s);

std::vector<std::string> SplitWhitespace(std::string_view s);
std::vector<std::string_view> SplitLines(std::string_view s);
std::string_view Trim(std::string_view s);
std::string Join(std::span<const std::string> parts, std::string_view sep);

// Byte offsets of UTF-8 code point starts in `s`, plus s.size() at the end.
std::vector<std::size_t> CodePointBoundaries(std::string_view s);

// Copies the capitalization pattern of `model` (all caps or leading capital)
// onto `word`.
std::string MatchCase(std::string_view model, std::string_view word);

// Reads a whole file; throws ResourceError when it cannot be opened.
std::string ReadFile(const std::string& path);

}  // namespace nlunoise

#endif  // NLUNOISE_TEXT_H_
