#pragma once

#include <stdexcept>
#include <string>

namespace cutwalk {

/// Malformed or non-canonical vertex key for the family it was used with.
class InvalidVertexError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Two operands belong to different graph families.
class FamilyMismatchError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An exact computation would exceed its memory/support budget. CLI exit 3.
class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Configuration file or experiment parameters are invalid. CLI exit 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The experiment is meaningless on the configured family. CLI exit 4.
class RefusalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Declared orbit classes fail validation against sampled representatives.
class OrbitDeclarationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace cutwalk
