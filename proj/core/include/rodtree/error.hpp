#pragma once

#include <stdexcept>
#include <string>

namespace rodtree {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input text: CSV cells, model documents. The message carries the
// location (line number or node path).
class ParseError : public Error {
public:
    using Error::Error;
};

// Column sets, feature vectors or model/data schemas that do not line up.
class SchemaError : public Error {
public:
    using Error::Error;
};

// An operation was called with inputs outside its contract (empty class,
// zero-sized dataset, bad fraction, ...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

// Synthetic-generator calibration problems: calibration required but not run,
// or bisection failed to converge.
class CalibrationError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

} // namespace rodtree
