/*
   Copyright 2026 The jdpp Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <stdexcept>
#include <string>

namespace jdpp {

// Base of everything the library throws on bad input or failed
// preconditions. Programming errors (violated internal invariants) use
// std::logic_error instead.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The kernel is well formed but is not the correlation kernel of any point
// process (fails J-Hermiticity or 0 <= K-hat <= 1).
class InvalidKernel : public Error {
 public:
  using Error::Error;
};

// A documented operation precondition does not hold (norm bounds, index
// ranges, enumeration caps, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// A matrix that has to be inverted is singular to working precision.
class SingularMatrix : public Error {
 public:
  using Error::Error;
};

}  // namespace jdpp
