// Copyright 2026 The kwlab Authors
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

#ifndef KWLAB_ERRORS_HPP_
#define KWLAB_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace kwlab {

// Base for numerical failures (CLI exit code 3). Precondition violations use
// std::invalid_argument / std::domain_error instead.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// kappa (or kappa_v) underflowed, so N is undefined.
class VanishingKappaError : public NumericalError {
 public:
  explicit VanishingKappaError(double r)
      : NumericalError("shell norm vanishes at r = " + std::to_string(r)), radius(r) {}
  double radius;
};

// A sign/normalization convention could not be made consistent.
class ConventionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace kwlab

#endif  // KWLAB_ERRORS_HPP_
