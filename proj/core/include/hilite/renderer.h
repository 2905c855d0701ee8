// Copyright 2026 The Authors.
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

// Standalone HTML view of a topic with the selected highlights marked.

#ifndef HILITE_RENDERER_H_
#define HILITE_RENDERER_H_

#include <filesystem>
#include <span>
#include <string>
#include <string_view>

#include "hilite/corpus.h"

namespace hilite {

inline constexpr const char* kHighlightClass = "hl";
inline constexpr const char* kSentenceClass = "sent";

// &, <, >, " and ' as character references.
std::string EscapeHtml(std::string_view text);

// Documents in reading order, one <p class="sent"> per sentence, each
// selected span wrapped in <mark class="hl">. Overlapping spans in a sentence
// share one mark. A sidebar lists the highlights in selection order with
// their word total. Throws hilite::Error naming any segment that does not
// resolve in the topic.
std::string RenderHtml(const Topic& topic, std::span<const SpanRef> selected);

void WriteHtml(const Topic& topic, std::span<const SpanRef> selected,
               const std::filesystem::path& path);

}  // namespace hilite

#endif  // HILITE_RENDERER_H_
