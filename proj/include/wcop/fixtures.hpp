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

// Operator descriptions shipped with the library. The texts are the
// fixtures/*.wco files, embedded at configure time.

#ifndef WCOP_FIXTURES_HPP
#define WCOP_FIXTURES_HPP

#include <string_view>
#include <vector>

#include "wcop/spec_file.hpp"

namespace wcop {

struct Fixture {
  std::string_view name;  // file stem
  std::string_view text;
};

const std::vector<Fixture>& fixtures();

/// Throws std::out_of_range for an unknown name.
const Fixture& fixture(std::string_view name);
SpecFile load_fixture(std::string_view name);

}  // namespace wcop

#endif  // WCOP_FIXTURES_HPP
