#pragma once

#include <stdexcept>
#include <string>

namespace sparb {

// Invalid distribution or trade parameters (sigma <= 0, eta outside (0,1], ...).
class parameter_error : public std::invalid_argument {
public:
    explicit parameter_error(const std::string& what) : std::invalid_argument(what) {}
};

// Malformed input file; carries the 1-based line number.
class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& what, std::size_t line)
        : std::runtime_error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// Duplicate (date, hour_i, hour_j) rows in a forecast file.
class conflict_error : public std::runtime_error {
public:
    explicit conflict_error(const std::string& what) : std::runtime_error(what) {}
};

// Forecast dates and price dates do not line up.
class alignment_error : public std::runtime_error {
public:
    explicit alignment_error(const std::string& what) : std::runtime_error(what) {}
};

// A plan drives the state of charge outside [0, 1].
class soc_error : public std::runtime_error {
public:
    explicit soc_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace sparb
