// Copyright 2026 The RaQM Authors
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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace raqm {

enum class Errc {
    ParseError,
    DivisionByZero,
    NegativeInput,
    MixedRadicands,
    FactorizationBound,
    OutOfRange,
    LengthMismatch,
    BadL,
    DomainError,
    GridIncompatible,
    NoCompatibleSetting,
    BaseMismatch,
};

inline std::string_view errc_name(Errc code) {
    switch (code) {
        case Errc::ParseError: return "ParseError";
        case Errc::DivisionByZero: return "DivisionByZero";
        case Errc::NegativeInput: return "NegativeInput";
        case Errc::MixedRadicands: return "MixedRadicands";
        case Errc::FactorizationBound: return "FactorizationBound";
        case Errc::OutOfRange: return "OutOfRange";
        case Errc::LengthMismatch: return "LengthMismatch";
        case Errc::BadL: return "BadL";
        case Errc::DomainError: return "DomainError";
        case Errc::GridIncompatible: return "GridIncompatible";
        case Errc::NoCompatibleSetting: return "NoCompatibleSetting";
        case Errc::BaseMismatch: return "BaseMismatch";
    }
    return "Unknown";
}

/// Every precondition failure in the library is reported as an Error carrying one of the
/// codes above; callers that need to branch on the failure kind inspect code().
class Error : public std::runtime_error {
   public:
    Error(Errc code, const std::string &what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {
    }

    Errc code() const noexcept {
        return code_;
    }

   private:
    Errc code_;
};

}  // namespace raqm
