// Copyright 2026 The povmsparse Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef POVMSPARSE_ERRORS_HPP
#define POVMSPARSE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace povmsparse {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
   public:
    using Error::Error;
};

class DimensionMismatch : public Error {
   public:
    using Error::Error;
};

class NotHermitian : public Error {
   public:
    using Error::Error;
};

class InvalidState : public Error {
   public:
    using Error::Error;
};

/// Raised by inv_sqrt_psd when an eigenvalue falls below the floor.
class SingularOperator : public Error {
   public:
    using Error::Error;
};

/// Element list violates the POVM or sub-POVM invariants.
class InvalidPovm : public Error {
   public:
    using Error::Error;
};

class BarycenterViolation : public Error {
   public:
    using Error::Error;
};

class DegenerateDirection : public Error {
   public:
    using Error::Error;
};

class SizeExceeded : public Error {
   public:
    using Error::Error;
};

class OffSymmetricSupport : public Error {
   public:
    using Error::Error;
};

class NotAOneDesign : public Error {
   public:
    using Error::Error;
};

/// random_povm could not produce an invertible frame after all retries.
class SingularGram : public Error {
   public:
    using Error::Error;
};

class DegenerateReference : public Error {
   public:
    using Error::Error;
};

class BudgetTooSmall : public Error {
   public:
    using Error::Error;
};

/// Malformed JSON input. The message names the offending field.
class ParseError : public Error {
   public:
    using Error::Error;
};

}  // namespace povmsparse

#endif  // POVMSPARSE_ERRORS_HPP
