// Copyright 2026 The cvx Authors
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

namespace cvx {

/// Base of every error raised by the library.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Shape or length mismatch between arguments.
struct dimension_error : error {
    using error::error;
};
// Mode or row index outside the valid range.
struct index_error : error {
    using error::error;
};
struct partition_error : error {
    using error::error;
};
// Input is not a physical covariance matrix / density operator.
struct validity_error : error {
    using error::error;
};
// Symplectic spectrum requested for a matrix that is not positive definite.
struct spectrum_error : error {
    using error::error;
};
struct symplecticity_error : error {
    using error::error;
};
struct degenerate_input_error : error {
    using error::error;
};
// Hilbert-space dimension would exceed the configured cap.
struct capacity_error : error {
    using error::error;
};
// Population on the top retained Fock level exceeds the leakage budget.
struct truncation_error : error {
    using error::error;
};
// Characteristic function requested outside the reliable phase-space radius.
struct reliability_error : error {
    using error::error;
};
struct domain_error : error {
    using error::error;
};
// Energy constraint violated or infeasible.
struct constraint_error : error {
    using error::error;
};
// Gaussian channel fails the complete-positivity certificate.
struct certificate_error : error {
    using error::error;
};
struct parse_error : error {
    using error::error;
};
struct io_error : error {
    using error::error;
};

}  // namespace cvx
