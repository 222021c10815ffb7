#pragma once

#include <stdexcept>
#include <string>

namespace cmforge {

// Base of every domain error raised by the library. Precondition violations
// that indicate caller bugs use std::invalid_argument instead.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A numeric value was not within tolerance of an exact target; the usual
// cause is insufficient working precision upstream.
class RecognitionFailure : public Error {
public:
    using Error::Error;
};

// A q-series could not be written as a polynomial in j within the known
// truncation range.
class ReductionFailure : public Error {
public:
    using Error::Error;
};

class BudgetTooSmall : public Error {
public:
    using Error::Error;
};

class UnsupportedLevel : public Error {
public:
    using Error::Error;
};

class SquareLevel : public Error {
public:
    using Error::Error;
};

class PoleAtLatticePoint : public Error {
public:
    using Error::Error;
};

class NumericOverflow : public Error {
public:
    using Error::Error;
};

class InvalidDiscriminant : public Error {
public:
    using Error::Error;
};

class ConductorDivisor : public Error {
public:
    using Error::Error;
};

class NoSquareRoot : public Error {
public:
    using Error::Error;
};

class NonSquarefree : public Error {
public:
    using Error::Error;
};

class ClassNumberNotOne : public Error {
public:
    using Error::Error;
};

class CacheError : public Error {
public:
    using Error::Error;
};

} // namespace cmforge
