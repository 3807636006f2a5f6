// Copyright 2026 The zsact Authors.
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

#ifndef ZSACT_ERROR_HPP_
#define ZSACT_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace zsact {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed, missing or inconsistent input data. Maps to exit code 1.
class InputError : public Error {
 public:
  using Error::Error;
};

// A computation produced an undefined result (zero vectors, singular
// fits). Maps to exit code 2.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace zsact

#endif  // ZSACT_ERROR_HPP_
