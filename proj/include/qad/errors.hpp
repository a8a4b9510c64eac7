#pragma once

#include <stdexcept>
#include <string>

namespace qad {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A real value fell outside the representable range of the active format.
struct OverflowError : Error {
    using Error::Error;
};

/// A primitive was evaluated outside its mathematical domain.
struct DomainError : Error {
    using Error::Error;
};

struct ParseError : Error {
    ParseError(std::string msg, std::size_t pos, std::string expected)
        : Error(std::move(msg)), position(pos), expected(std::move(expected)) {}
    std::size_t position;
    std::string expected;
};

/// Transfer target register was not in the all-zeros state.
struct ResetRequiredError : Error {
    using Error::Error;
};

/// Transfer target register is narrower than the source.
struct WidthError : Error {
    using Error::Error;
};

/// The ancilla pool cannot cover a swap-reset.
struct AncillaExhaustedError : Error {
    using Error::Error;
};

}  // namespace qad
