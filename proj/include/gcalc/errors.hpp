#pragma once

#include <stdexcept>
#include <string>

namespace gcalc {

struct SyntaxError : std::runtime_error {
  int column;  // 1-based position in the input text
  SyntaxError(int col, const std::string& what)
      : std::runtime_error("syntax error at column " + std::to_string(col) +
                           ": " + what),
        column(col) {}
};

struct UnknownGenerator : std::runtime_error {
  explicit UnknownGenerator(const std::string& name)
      : std::runtime_error("unknown generator: " + name) {}
};

struct DegreeMismatch : std::runtime_error {
  explicit DegreeMismatch(const std::string& what)
      : std::runtime_error("degree mismatch: " + what) {}
};

struct MixedAlgebroid : std::runtime_error {
  MixedAlgebroid()
      : std::runtime_error("operands belong to different algebroids") {}
};

struct NotChainMap : std::runtime_error {
  explicit NotChainMap(const std::string& what)
      : std::runtime_error("[d,del] != 0: " + what) {}
};

struct InsufficientOrder : std::runtime_error {
  int required;
  int available;
  InsufficientOrder(int req, int avail, const std::string& where)
      : std::runtime_error("insufficient trust order in " + where +
                           ": need " + std::to_string(req) + ", have " +
                           std::to_string(avail)),
        required(req),
        available(avail) {}
};

struct SkewAdjointViolation : std::runtime_error {
  int row, col;  // offending entry, 1-based
  SkewAdjointViolation(int i, int j, const std::string& detail)
      : std::runtime_error("operator is not skew-adjoint at entry (" +
                           std::to_string(i) + "," + std::to_string(j) +
                           "): " + detail),
        row(i),
        col(j) {}
};

struct NonzeroBracket : std::runtime_error {
  NonzeroBracket()
      : std::runtime_error(
            "chain differential requires the zero lambda-bracket") {}
};

struct TorsionUnsupported : std::runtime_error {
  TorsionUnsupported()
      : std::runtime_error("torsion F[del]-modules are not supported") {}
};

struct InputError : std::runtime_error {
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace gcalc
