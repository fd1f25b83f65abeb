#ifndef NICG_ERROR_HPP
#define NICG_ERROR_HPP

#include <stdexcept>
#include <string>

namespace nicg {

/// Malformed arguments: wrong dimension, bad component, out-of-range index.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Request outside a documented guard (factorial enumeration cap, bound variant domain).
class Unsupported : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Row transform whose precondition does not hold, or whose result is not a set.
class InvalidTransform : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A search stopped on its budget before it could decide the question asked.
class Indeterminate : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace nicg

#endif
