#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace panelur {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// evaluation outside the m.g.f. convergence region
struct DomainError : Error {
    using Error::Error;
};

struct QuadratureError : Error {
    using Error::Error;
};

struct InvalidArgument : Error {
    using Error::Error;
};

struct UnsupportedVariant : Error {
    using Error::Error;
};

struct EmptyRun : Error {
    using Error::Error;
};

struct DegenerateRegression : Error {
    std::ptrdiff_t unit = -1;
    DegenerateRegression(const std::string& what, std::ptrdiff_t unit_index = -1)
        : Error(unit_index >= 0 ? what + " (unit " + std::to_string(unit_index) + ")" : what),
          unit(unit_index) {}
};

struct ParseError : Error {
    std::size_t line = 0;
    ParseError(const std::string& what, std::size_t line_no)
        : Error("line " + std::to_string(line_no) + ": " + what), line(line_no) {}
};

struct RaggedPanel : Error {
    using Error::Error;
};

struct DuplicateCell : Error {
    using Error::Error;
};

}  // namespace panelur
