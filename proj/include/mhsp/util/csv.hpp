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

#ifndef MHSP_UTIL_CSV_HPP_
#define MHSP_UTIL_CSV_HPP_

#include <fstream>
#include <string>
#include <vector>

namespace mhsp::csv {

// Minimal CSV support for the toolkit's artifacts: no quoting, no embedded
// commas; numbers are written with round-trip precision.
class Writer {
 public:
  explicit Writer(const std::string& path);
  void row(const std::vector<std::string>& cells);
  static std::string num(double v);
  static std::string num(long long v);

 private:
  std::ofstream out_;
};

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  int column(const std::string& name) const;  // -1 when absent
};

Table read(const std::string& path);

}  // namespace mhsp::csv

#endif  // MHSP_UTIL_CSV_HPP_
