#pragma once

#include <stdexcept>
#include <string>

namespace mopr {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A polynomial division that was required to be exact left a remainder.
class NonzeroRemainder : public Error {
public:
    using Error::Error;
};

class NegativeMultiplicity : public Error {
public:
    using Error::Error;
};

class InvalidRootList : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

class MomentOutOfRange : public Error {
public:
    using Error::Error;
};

/// Number of free moments does not match the degree of the inverted polynomial.
class FreeMomentArity : public Error {
public:
    using Error::Error;
};

class NotNormal : public Error {
public:
    using Error::Error;
};

class ZeroIndex : public Error {
public:
    using Error::Error;
};

class BadStepMultiset : public Error {
public:
    using Error::Error;
};

class NotAdmissible : public Error {
public:
    using Error::Error;
};

class ArityMismatch : public Error {
public:
    using Error::Error;
};

/// A transform option was requested for a spec outside its scope.
class UnsupportedSpec : public Error {
public:
    using Error::Error;
};

}  // namespace mopr
