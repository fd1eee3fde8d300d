// Copyright 2026 The nlgame Authors
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

#ifndef NLGAME_ERRORS_HPP
#define NLGAME_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace nlgame {

/// A size parameter (player count, qubit count, search range) is out of range.
class SizeError : public std::out_of_range {
   public:
    using std::out_of_range::out_of_range;
};

/// Malformed or inconsistent arguments.
class ArgumentError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// A closed-form value was requested outside its domain.
class DomainError : public std::domain_error {
   public:
    using std::domain_error::domain_error;
};

/// An amplitude or probability left the exactly representable set.
class ExactnessError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// A strategy broke the rules of the game model.
class ProtocolViolation : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

class NonTerminationError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

}  // namespace nlgame

#endif  // NLGAME_ERRORS_HPP
