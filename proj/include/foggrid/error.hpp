/*
 * Copyright 2026 The foggrid Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


#ifndef FOGGRID_ERROR_HPP
#define FOGGRID_ERROR_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace foggrid {

/// Failure categories raised by the simulator core. The C API maps each one
/// onto an fg_status value; the CLI maps the config family onto exit code 2.
enum class ErrorCode {
    SchemaError,
    DanglingReference,
    InvalidTopology,
    UnknownNode,
    UnknownKind,
    FogKeyholderForbidden,
    EmptyKeyholders,
    NotKeyholder,
    NoRoute,
    Unstable,
    NonpositiveTarget,
    NegativeDuration,
    NonpositiveN,
    OverCapacity,
    Underflow,
    UnknownOutlet,
    UnknownVehicle,
    InvalidState,
    NegativeEnergy,
    InvalidArgument,
    IoFailure,
};

const char* to_string(ErrorCode code) noexcept;

/// True for the categories that mean "the scenario is wrong" rather than
/// "the run failed".
bool is_config_error(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// One problem found while reading a scenario file. line is 1-based; 0 when
/// the problem has no single source location.
struct ConfigIssue {
    ErrorCode category;
    int line;
    std::string message;
};

/// Raised by parse_config with every issue it collected. code() is the
/// category of the first issue.
class ConfigError : public Error {
public:
    explicit ConfigError(std::vector<ConfigIssue> issues);

    const std::vector<ConfigIssue>& issues() const noexcept { return issues_; }

private:
    std::vector<ConfigIssue> issues_;
};

} // namespace foggrid

#endif // FOGGRID_ERROR_HPP
