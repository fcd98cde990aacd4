// Copyright 2026 The ksforms Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef KSFORMS_ERROR_HPP
#define KSFORMS_ERROR_HPP

#include <stdexcept>
#include <string>

namespace ksforms
{

// Raised for malformed input files; carries the 1-based line number.
class ParseError : public std::runtime_error
{
public:
  ParseError(const std::string &what, int line)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line)
  {
  }
  int line() const { return line_; }

private:
  int line_;
};

// Mesh invariants violated (orientation, topology, degenerate cells).
class ValidationError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

// Arguments outside the domain where a formula is defined.
class DomainError : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

// Factorization failures, non-convergence, size caps.
class SolverError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

// Files that cannot be opened, read or written.
class IoError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

}  // namespace ksforms

#endif  // KSFORMS_ERROR_HPP
