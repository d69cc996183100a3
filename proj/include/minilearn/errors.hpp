// Copyright 2026 The Minilearn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ml {

enum class ErrorCode : int {
    Ok = 0,
    InvalidArgument = 1,
    ShapeMismatch = 2,
    UnsupportedParam = 3,
    NotConverged = 4,
    WrongCapability = 5,
    SingleClass = 6,
    KTooLarge = 7,
    BadK = 8,
    ClassTooSmall = 9,
    UnknownAxis = 10,
    NonTransformerStep = 11,
    DegenerateDesign = 12,
    ParseError = 13,
    RaggedRow = 14,
    NonAscendingIndex = 15,
    BadSpec = 16,
    Internal = 17,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

class ShapeMismatchError : public Error {
public:
    explicit ShapeMismatchError(const std::string& what)
        : Error(ErrorCode::ShapeMismatch, what) {}
};

class UnsupportedParamError : public Error {
public:
    explicit UnsupportedParamError(const std::string& what)
        : Error(ErrorCode::UnsupportedParam, what) {}
};

class WrongCapabilityError : public Error {
public:
    explicit WrongCapabilityError(const std::string& what)
        : Error(ErrorCode::WrongCapability, what) {}
};

// Iteration cap reached before the convergence criterion was met.
// Carries the state of the criterion at the point the solver gave up.
class NotConvergedError : public Error {
public:
    NotConvergedError(const std::string& what, std::size_t n_iter, double residual)
        : Error(ErrorCode::NotConverged, what), n_iter_(n_iter), residual_(residual) {}

    std::size_t n_iter() const noexcept { return n_iter_; }
    double residual() const noexcept { return residual_; }

private:
    std::size_t n_iter_;
    double residual_;
};

class ParseErrorAt : public Error {
public:
    ParseErrorAt(ErrorCode code, const std::string& what, std::size_t line)
        : Error(code, what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace ml
