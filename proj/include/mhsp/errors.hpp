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

#ifndef MHSP_ERRORS_HPP_
#define MHSP_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace mhsp {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Wrong shapes, unknown ids, malformed model structure.
class StructuralError : public Error {
 public:
  using Error::Error;
};

// Data that violates a documented invariant (probabilities, bounds, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Inconsistent run configuration (schema mismatches, missing files, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Scenario generation failures (e.g. season shorter than the block length).
class GenerationError : public Error {
 public:
  using Error::Error;
};

// Training diverged or could not start.
class TrainingError : public Error {
 public:
  using Error::Error;
};

}  // namespace mhsp

#endif  // MHSP_ERRORS_HPP_
