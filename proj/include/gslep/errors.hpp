#pragma once

#include <stdexcept>
#include <string>

namespace gslep {

/// Base type for every error thrown by this library.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string &msg) : std::runtime_error(msg) {}
};

/// Invalid inputs or violated mathematical preconditions.
class ValidationError : public Error {
public:
  explicit ValidationError(const std::string &msg) : Error(msg) {}
};

/// Missing, unreadable or unwritable files.
class IoError : public Error {
public:
  explicit IoError(const std::string &msg) : Error(msg) {}
};

} // namespace gslep
