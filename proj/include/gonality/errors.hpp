#pragma once

#include <stdexcept>
#include <string>

namespace gonality {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

// Input does not satisfy an operation's documented precondition.
class PreconditionError : public Error {
public:
    using Error::Error;
};

// A constructed object failed its own re-verification.
class VerificationError : public Error {
public:
    using Error::Error;
};

}  // namespace gonality
