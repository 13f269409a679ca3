#pragma once

#include <stdexcept>
#include <string>

namespace pkb {

// Base for everything the engine can throw.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed tokens, bad pattern files, bad query text.
struct FormatError : Error {
    using Error::Error;
};

// A structural rule was broken (boundary nesting, sealed-store writes, ...).
struct ValidationError : Error {
    using Error::Error;
};

// Bad command-line usage.
struct UsageError : Error {
    using Error::Error;
};

}  // namespace pkb
