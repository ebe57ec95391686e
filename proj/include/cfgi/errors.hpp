#pragma once

#include <stdexcept>
#include <string>

namespace cfgi {

// Base for all library errors.
struct error : std::runtime_error {
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed grammar or group-spec input. Maps to exit code 3.
struct parse_error : error {
    explicit parse_error(const std::string& msg) : error(msg) {}
    parse_error(int line, const std::string& msg)
        : error("line " + std::to_string(line) + ": " + msg) {}
};

// A label-set cap or search budget was exceeded. Maps to exit code 4.
// Verdicts are withheld rather than guessed when this fires.
struct budget_error : error {
    explicit budget_error(const std::string& msg) : error(msg) {}
};

} // namespace cfgi
