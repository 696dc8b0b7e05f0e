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

#include "wcop/fixtures.hpp"

#include <stdexcept>
#include <string>

namespace wcop {

const std::vector<Fixture>& fixtures() {
  static const std::vector<Fixture> table = {
#include "fixtures_data.inc"
  };
  return table;
}

const Fixture& fixture(std::string_view name) {
  for (const Fixture& f : fixtures()) {
    if (f.name == name) return f;
  }
  throw std::out_of_range("unknown fixture: " + std::string(name));
}

SpecFile load_fixture(std::string_view name) { return parse_spec(fixture(name).text); }

}  // namespace wcop
