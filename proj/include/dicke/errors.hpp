// Copyright 2026 The dicke-rvb Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace dicke {

/// Bad argument: out-of-range quantum number, parity mismatch, M > N, ...
class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Requested system does not fit the full-space or factorial-cost guards.
class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A full-space state has weight outside the doubly-symmetric sector.
class NotInSectorError : public std::runtime_error {
public:
    NotInSectorError(const std::string& what, double residual)
        : std::runtime_error(what), residual_(residual) {}
    [[nodiscard]] double residual() const noexcept { return residual_; }

private:
    double residual_;
};

/// Operation called on input that breaks its precondition contract.
class ContractError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Invalid cavity / trajectory configuration.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Integrator instability (norm growth during non-Hermitian drift).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace dicke
