#pragma once

#include <stdexcept>
#include <string>

namespace k3tk {

/// Malformed input: dimension mismatch, bad JSON shape, violated precondition.
/// The CLI maps these to exit code 2.
class input_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An operation was called outside its mathematical domain
/// (non-primitive vector, rank <= 0, non-(-2) reflection vector, ...).
class precondition_error : public input_error {
public:
    using input_error::input_error;
};

/// A bounded search (e.g. for the auxiliary rank r1) found nothing.
class search_exhausted : public input_error {
public:
    using input_error::input_error;
};

/// A computed result violated an identity that must hold. Seeing one of
/// these means a bug, not bad input. Exit code 1.
class computation_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Request for a series coefficient at or past the truncation order.
class truncation_error : public input_error {
public:
    using input_error::input_error;
};

}  // namespace k3tk
