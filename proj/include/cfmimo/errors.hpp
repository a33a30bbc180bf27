// SPDX-License-Identifier: Apache-2.0
//
// cfmimo: cell-free massive MIMO simulation and power-control library
// Copyright (C) 2026 cfmimo project contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <stdexcept>
#include <string>

namespace cfmimo {

/// A linear-algebra step could not complete, e.g. a Cholesky factorization
/// reported a non-positive pivot, or a channel degenerated to zero power.
class NumericalError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// An exhaustive search would exceed its configured evaluation budget.
class BudgetError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed configuration input: unreadable file, unknown key, bad value.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace cfmimo
