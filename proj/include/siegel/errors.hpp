#pragma once

#include <stdexcept>
#include <string>

namespace siegel {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DomainMismatch : public Error {
public:
    using Error::Error;
};

class NotDivisible : public Error {
public:
    using Error::Error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

class OrderTooSmall : public Error {
public:
    using Error::Error;
};

class UnknownName : public Error {
public:
    using Error::Error;
};

class NotUnimodular : public Error {
public:
    using Error::Error;
};

class OddCharacteristic : public Error {
public:
    using Error::Error;
};

class EvenCharacteristic : public Error {
public:
    using Error::Error;
};

class NormalizationFailure : public Error {
public:
    using Error::Error;
};

class WeightMismatch : public Error {
public:
    using Error::Error;
};

class SupportViolation : public Error {
public:
    using Error::Error;
};

class CharacterForm : public Error {
public:
    using Error::Error;
};

class OddOrder : public Error {
public:
    using Error::Error;
};

class OddWeight : public Error {
public:
    using Error::Error;
};

class OutOfTruncation : public Error {
public:
    using Error::Error;
};

class ZeroAfterReduction : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(std::size_t position, const std::string& message)
        : Error("parse error at position " + std::to_string(position) + ": " + message),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

} // namespace siegel
