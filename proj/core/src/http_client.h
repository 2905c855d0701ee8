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

// Minimal JSON-over-HTTP helpers shared by the score and pyramid clients.
// Internal to the library.

#ifndef HILITE_SRC_HTTP_CLIENT_H_
#define HILITE_SRC_HTTP_CLIENT_H_

#include <string>
#include <string_view>

namespace hilite::internal {

// POSTs `body` as application/json to endpoint + path and returns the
// response body. Throws TransportError (naming the URL) when the server is
// unreachable or answers with a non-2xx status.
std::string PostJson(const std::string& endpoint, std::string_view path,
                     const std::string& body, int timeout_seconds);

std::string GetJson(const std::string& endpoint, std::string_view path,
                    int timeout_seconds);

}  // namespace hilite::internal

#endif  // HILITE_SRC_HTTP_CLIENT_H_
