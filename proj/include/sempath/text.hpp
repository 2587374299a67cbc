/*
 * Copyright 2026 The sempath authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace sempath::text {

// Unicode whitespace per UAX #44 White_Space (the set used for token splitting).
bool is_unicode_space(char32_t cp);

// Simple case folding: ASCII, Latin-1 supplement and the basic Cyrillic block.
// Code points outside these ranges pass through unchanged.
char32_t to_lower(char32_t cp);

// Decodes UTF-8, lowercases and splits on Unicode whitespace in one pass.
// Throws std::runtime_error naming the byte offset on malformed input.
std::vector<std::string> split_lower_tokens(std::string_view data);

}  // namespace sempath::text
