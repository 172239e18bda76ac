// Copyright 2026 The hovi Authors
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

#ifndef HOVI_FORMAT_HPP
#define HOVI_FORMAT_HPP

#include <string>

namespace hovi {

/// Shortest-safe text for a double: 17 significant digits, '.' decimal.
std::string format_double(double x);

}  // namespace hovi

#endif  // HOVI_FORMAT_HPP
