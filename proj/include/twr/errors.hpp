// SPDX-License-Identifier: Apache-2.0
//
// twr: two-way amplify-and-forward relay beamforming toolkit
// Copyright (C) 2026 The twr Authors
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

namespace twr {

// Base of every error the library throws. The CLI maps each subclass to a
// distinct exit code.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid configuration: zero trials, unsorted grids and the like.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

// Vector or matrix sizes that are zero or do not agree.
class InvalidDimension : public Error {
public:
    using Error::Error;
};

// Inputs for which a statistic is undefined (e.g. zero-norm channels).
class DegenerateInput : public Error {
public:
    using Error::Error;
};

// Argument outside the mathematical domain of a special function.
class DomainError : public Error {
public:
    using Error::Error;
};

// Adaptive quadrature ran out of subdivisions. Carries the best estimate.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string &what, double estimate, double error_bound)
        : Error(what), estimate_(estimate), error_bound_(error_bound) {}

    double estimate() const noexcept { return estimate_; }
    double error_bound() const noexcept { return error_bound_; }

private:
    double estimate_;
    double error_bound_;
};

// Requested target is not bracketed by the data (e.g. an outage level
// never crossed on the simulated SNR grid).
class OutOfRange : public Error {
public:
    using Error::Error;
};

// Too few usable points for a fit.
class InsufficientData : public Error {
public:
    using Error::Error;
};

} // namespace twr
