// SPDX-License-Identifier: Apache-2.0
//
// cellless: Monte Carlo simulator for converged cell-less radio access networks
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

namespace cellless {

// Root of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConfigError : public Error {
public:
    ConfigError(std::string key, const std::string& what)
        : Error(what), key_(std::move(key)) {}

    // Offending config key, empty when the error is not tied to one key.
    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

class PlacementFailure : public Error { using Error::Error; };
class DomainError : public Error { using Error::Error; };
class EmptyGroup : public Error { using Error::Error; };
class NoBsAvailable : public Error { using Error::Error; };
class MtMismatch : public Error { using Error::Error; };
class IllegalTransition : public Error { using Error::Error; };
class BusyBs : public Error { using Error::Error; };
class WrongDirection : public Error { using Error::Error; };
class InfeasibleConfig : public Error { using Error::Error; };
class IoFailure : public Error { using Error::Error; };

} // namespace cellless
