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

#ifndef MHSP_UTIL_LOG_HPP_
#define MHSP_UTIL_LOG_HPP_

#include <cstdio>
#include <initializer_list>
#include <string>
#include <utility>

namespace mhsp::log {

// 0 = silent, 1 = progress, 2 = solver iteration traces.
int& verbosity();

// Machine-parsable diagnostics on stderr: "<tag> key=value key=value ...".
void kv(int level, const std::string& tag,
        std::initializer_list<std::pair<const char*, std::string>> fields);

std::string num(double v);
std::string num(long long v);

}  // namespace mhsp::log

#endif  // MHSP_UTIL_LOG_HPP_
