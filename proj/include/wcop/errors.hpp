// Copyright 2026 The wcop Authors
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

#ifndef WCOP_ERRORS_HPP
#define WCOP_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace wcop {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A set operation whose result leaves the representable class
/// (e.g. the complement of a power image).
class UnsupportedSetForm : public Error {
 public:
  using Error::Error;
};

/// Exact evaluation was requested at a point where the value is irrational.
class IrrationalValue : public Error {
 public:
  using Error::Error;
};

/// f o phi (or a product) is not expressible as exceptions plus power-sum tail.
class UnrepresentableComposition : public Error {
 public:
  using Error::Error;
};

/// A natural-number computation exceeded 64 bits.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// Symbol data violating its structural invariants.
class InvalidSymbol : public Error {
 public:
  using Error::Error;
};

enum class Hypothesis {
  kSupportNotInvariant,
  kUnbounded,
  kCompositionUnbounded,
  kRangeNotClosed,
  kNotBoundedAwayFromZero,
};

std::string_view hypothesis_name(Hypothesis h);

/// A theorem was invoked outside its hypotheses.
class HypothesisViolated : public Error {
 public:
  explicit HypothesisViolated(Hypothesis which)
      : Error("hypothesis violated: " + std::string(hypothesis_name(which))),
        which_(which) {}

  Hypothesis which() const noexcept { return which_; }

 private:
  Hypothesis which_;
};

inline std::string_view hypothesis_name(Hypothesis h) {
  switch (h) {
    case Hypothesis::kSupportNotInvariant:
      return "support_not_invariant";
    case Hypothesis::kUnbounded:
      return "unbounded";
    case Hypothesis::kCompositionUnbounded:
      return "composition_unbounded";
    case Hypothesis::kRangeNotClosed:
      return "range_not_closed";
    case Hypothesis::kNotBoundedAwayFromZero:
      return "not_bounded_away_from_zero";
  }
  return "unknown";
}

}  // namespace wcop

#endif  // WCOP_ERRORS_HPP
