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


#include "foggrid/error.hpp"

namespace foggrid {

const char* to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::DanglingReference: return "DanglingReference";
    case ErrorCode::InvalidTopology: return "InvalidTopology";
    case ErrorCode::UnknownNode: return "UnknownNode";
    case ErrorCode::UnknownKind: return "UnknownKind";
    case ErrorCode::FogKeyholderForbidden: return "FogKeyholderForbidden";
    case ErrorCode::EmptyKeyholders: return "EmptyKeyholders";
    case ErrorCode::NotKeyholder: return "NotKeyholder";
    case ErrorCode::NoRoute: return "NoRoute";
    case ErrorCode::Unstable: return "Unstable";
    case ErrorCode::NonpositiveTarget: return "NonpositiveTarget";
    case ErrorCode::NegativeDuration: return "NegativeDuration";
    case ErrorCode::NonpositiveN: return "NonpositiveN";
    case ErrorCode::OverCapacity: return "OverCapacity";
    case ErrorCode::Underflow: return "Underflow";
    case ErrorCode::UnknownOutlet: return "UnknownOutlet";
    case ErrorCode::UnknownVehicle: return "UnknownVehicle";
    case ErrorCode::InvalidState: return "InvalidState";
    case ErrorCode::NegativeEnergy: return "NegativeEnergy";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::IoFailure: return "IoFailure";
    }
    return "Unknown";
}

bool is_config_error(ErrorCode code) noexcept
{
    return code == ErrorCode::SchemaError || code == ErrorCode::DanglingReference
        || code == ErrorCode::InvalidTopology || code == ErrorCode::UnknownKind;
}

namespace {

std::string summarize(const std::vector<ConfigIssue>& issues)
{
    if (issues.empty())
        return "invalid scenario";
    std::string out;
    for (const auto& issue : issues) {
        if (!out.empty())
            out += "; ";
        out += to_string(issue.category);
        if (issue.line > 0)
            out += " (line " + std::to_string(issue.line) + ")";
        out += ": " + issue.message;
    }
    return out;
}

} // namespace

ConfigError::ConfigError(std::vector<ConfigIssue> issues)
    : Error(issues.empty() ? ErrorCode::SchemaError : issues.front().category,
            summarize(issues)),
      issues_(std::move(issues))
{
}

} // namespace foggrid
