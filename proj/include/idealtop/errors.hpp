#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace idealtop {

// Base class for all toolkit errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct ZeroDenominator : Error {
  ZeroDenominator() : Error("zero denominator") {}
};

struct ShapeMismatch : Error {
  explicit ShapeMismatch(const std::string& msg) : Error("shape mismatch: " + msg) {}
};

// Parse failure with a byte offset into the input and a hint of what was
// expected at that position.
struct ParseError : Error {
  std::size_t position;
  std::string expected;
  ParseError(std::size_t pos, const std::string& what)
      : Error("parse error at offset " + std::to_string(pos) + ": expected " + what),
        position(pos),
        expected(what) {}
};

struct CycleNotDetected : Error {
  std::uint64_t horizon;
  explicit CycleNotDetected(std::uint64_t h)
      : Error("residue cycle not detected within horizon " + std::to_string(h)), horizon(h) {}
};

struct WindowOverflow : Error {
  explicit WindowOverflow(std::uint64_t budget)
      : Error("enumeration exceeded element budget " + std::to_string(budget)) {}
};

struct ChainNotAscending : Error {
  ChainNotAscending() : Error("descriptor chain is not ascending") {}
};

struct GroupTooLarge : Error {
  explicit GroupTooLarge(std::uint64_t size, std::uint64_t bound)
      : Error("group of size " + std::to_string(size) + " exceeds scan bound " +
              std::to_string(bound)) {}
};

struct NoExtraction : Error {
  NoExtraction() : Error("sequence is not ideal-convergent; no cofinite extraction exists") {}
};

struct HorizonLimit : Error {
  explicit HorizonLimit(const std::string& what) : Error("horizon limit: " + what) {}
};

struct DescriptorTooComplex : Error {
  explicit DescriptorTooComplex(const std::string& what)
      : Error("descriptor too complex: " + what) {}
};

struct IoError : Error {
  explicit IoError(const std::string& what) : Error("i/o error: " + what) {}
};

}  // namespace idealtop
