#pragma once

#include <stdexcept>
#include <string>

namespace anrsteg {

// Exit-code mapping used by the CLI: usage 2, capacity 3, format 4, extraction 5.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct ConfigError : Error {
    using Error::Error;
};

struct RangeError : Error {
    using Error::Error;
};

struct CapacityError : Error {
    using Error::Error;
};

struct FormatError : Error {
    using Error::Error;
};

struct ExtractionError : Error {
    using Error::Error;
};

// Raised when internal consistency is violated (e.g. a corrupted class table).
struct IntegrityError : Error {
    using Error::Error;
};

}  // namespace anrsteg
