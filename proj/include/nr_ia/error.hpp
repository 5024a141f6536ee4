// SPDX-License-Identifier: Apache-2.0
//
// nr-ia-sim: initial-access analytics and Monte Carlo for NR at mmWave
// Copyright (C) 2026 The nr-ia-sim authors
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

namespace nr_ia {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An argument outside the domain of an operation (bad numerology, unsupported
// array size, non-positive distance, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// A scenario or recipe file that fails to parse or validate. `path()` is the
// dotted JSON path of the offending field, empty when the error is global.
class ConfigError : public Error {
public:
    ConfigError(std::string path, const std::string& message)
        : Error(path.empty() ? message : path + ": " + message), path_(std::move(path)) {}

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

} // namespace nr_ia
