// Copyright 2026 The capot Authors
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

#ifndef CAPOT_ERROR_HPP_
#define CAPOT_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace capot {

// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Array shapes of two arguments disagree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Data violates a documented invariant (negative density, eta <= 1, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Exhaustive oracles refuse instances beyond their enumeration budget.
class TooLargeError : public Error {
 public:
  using Error::Error;
};

// A pivoting loop hit its iteration cap.
class IterationLimitError : public Error {
 public:
  using Error::Error;
};

}  // namespace capot

#endif  // CAPOT_ERROR_HPP_
