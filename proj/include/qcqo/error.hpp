// Copyright 2026 The QCQO Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace qcqo {

enum class ErrorCode {
    kInvalidArgument = 1,
    kDimension = 2,
    kSize = 3,
    kSingular = 4,
    kNotConvex = 5,
    kIo = 6,
    kParse = 7,
    kSolver = 8,
};

/// Base exception for every failure raised by the library. The C API maps
/// `code()` onto its status enum one-to-one.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

class InvalidArgument : public Error {
public:
    explicit InvalidArgument(const std::string& what) : Error(ErrorCode::kInvalidArgument, what) {}
};

class DimensionError : public Error {
public:
    explicit DimensionError(const std::string& what) : Error(ErrorCode::kDimension, what) {}
};

class SizeError : public Error {
public:
    explicit SizeError(const std::string& what) : Error(ErrorCode::kSize, what) {}
};

class SingularError : public Error {
public:
    explicit SingularError(const std::string& what) : Error(ErrorCode::kSingular, what) {}
};

class NotConvexError : public Error {
public:
    explicit NotConvexError(const std::string& what) : Error(ErrorCode::kNotConvex, what) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(ErrorCode::kIo, what) {}
};

class ParseError : public Error {
public:
    explicit ParseError(const std::string& what) : Error(ErrorCode::kParse, what) {}
};

}  // namespace qcqo
