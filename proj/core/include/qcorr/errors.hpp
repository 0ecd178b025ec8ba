#pragma once

#include <stdexcept>
#include <string>

namespace qcorr {

/// Shapes or subsystem dimension lists that do not fit together.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Operand exceeds the configured total-dimension cap (QCORR_MAX_DIM).
class DimensionOverflow : public DimensionError {
public:
    using DimensionError::DimensionError;
};

/// Input is not Hermitian within tolerance.
class NotHermitianError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Operator fails the density-matrix or pure-state invariants.
class InvalidStateError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Partition labels or index sets do not match the state.
class PartitionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Operator list is not a POVM on the measured factor.
class PovmError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Requested case lies outside what the toolkit supports (e.g. measured dimension > 4).
class UnsupportedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace qcorr
