#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace compdiag {

// Base of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A node id outside [0, node_count).
class InvalidNode : public Error {
 public:
  InvalidNode(std::uint64_t id, std::uint64_t node_count)
      : Error("node id " + std::to_string(id) + " out of range [0, " + std::to_string(node_count) + ")"),
        id_(id) {}
  std::uint64_t id() const noexcept { return id_; }

 private:
  std::uint64_t id_;
};

// A caller broke an operation's precondition (f1 == f2, empty input, ...).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

// An enumeration or materialization would exceed its configured limit.
class CapExceeded : public Error {
 public:
  CapExceeded(const std::string& what, std::uint64_t requested, std::uint64_t cap)
      : Error(what + ": requested " + std::to_string(requested) + " exceeds cap " + std::to_string(cap)),
        requested_(requested),
        cap_(cap) {}
  std::uint64_t requested() const noexcept { return requested_; }
  std::uint64_t cap() const noexcept { return cap_; }

 private:
  std::uint64_t requested_;
  std::uint64_t cap_;
};

// Input data that does not satisfy a structural definition.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Malformed text input. `position` is a 0-based character offset (specs) or
// a 1-based line number (files), as documented by the parser that throws.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t position)
      : Error(msg + " (at " + std::to_string(position) + ")"), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

// A mechanically checked claim did not hold on a concrete instance.
class MismatchError : public Error {
 public:
  using Error::Error;
};

}  // namespace compdiag
