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

// Porter's 1980 suffix-stripping stemmer, in its original published form.
//
// Input is expected lowercase. Words of one or two letters, and words with
// characters outside a-z, are returned unchanged.

#ifndef HILITE_PORTER_STEMMER_H_
#define HILITE_PORTER_STEMMER_H_

#include <string>
#include <string_view>

namespace hilite {

std::string PorterStem(std::string_view word);

}  // namespace hilite

#endif  // HILITE_PORTER_STEMMER_H_
