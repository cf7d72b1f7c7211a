// Copyright 2026 The icdkit Authors
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

#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace icd::cli {

/// Runs the icdkit command line on args (without the program name). The
/// JSON report goes to `out` or to the file named by --out; diagnostics go
/// to `err`. Returns 0 when a verdict was computed and 2 on input errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// 64-bit FNV-1a, as hex.
std::string fnv1a_hex(std::string_view data);

}  // namespace icd::cli
