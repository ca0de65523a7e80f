#pragma once

#include <stdexcept>
#include <string>

namespace orbindex {

// Malformed textual input: expressions, model files.
struct parse_error : std::runtime_error {
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

// Structurally valid input that violates a mathematical precondition
// (dimension mismatch, non-symplectic matrix, eigenvalue 1 in a normal block, ...).
struct domain_error : std::runtime_error {
    explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

// Request outside the supported (k, n, N) range. Never silently answered.
struct unsupported_error : std::runtime_error {
    explicit unsupported_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace orbindex
