#pragma once

#include <stdexcept>
#include <string>

namespace ideaforge {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SchemaViolation : public Error {
public:
    using Error::Error;
};

class UnknownNode : public Error {
public:
    using Error::Error;
};

class IoFailure : public Error {
public:
    using Error::Error;
};

class CorruptSnapshot : public Error {
public:
    using Error::Error;
};

class EmptyIdea : public Error {
public:
    using Error::Error;
};

class EmptyClaimSet : public Error {
public:
    using Error::Error;
};

class BrokenTrace : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class ZeroVector : public Error {
public:
    using Error::Error;
};

class ProviderUnavailable : public Error {
public:
    using Error::Error;
};

class UsageError : public Error {
public:
    using Error::Error;
};

}  // namespace ideaforge
