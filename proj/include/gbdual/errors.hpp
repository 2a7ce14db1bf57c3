#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace gbdual {

/// Root of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad tables, non-subgroups, wrong sizes, unparsable files.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class MissingFace : public ValidationError {
 public:
  MissingFace(std::vector<std::size_t> simplex, std::vector<std::size_t> face)
      : ValidationError(describe(simplex, face)), simplex_(std::move(simplex)), face_(std::move(face)) {}

  const std::vector<std::size_t>& simplex() const { return simplex_; }
  const std::vector<std::size_t>& face() const { return face_; }

 private:
  static std::string describe(const std::vector<std::size_t>& s, const std::vector<std::size_t>& f) {
    auto fmt = [](const std::vector<std::size_t>& v) {
      std::string out = "{";
      for (std::size_t k = 0; k < v.size(); ++k) out += (k ? "," : "") + std::to_string(v[k]);
      return out + "}";
    };
    return "simplex " + fmt(s) + " is missing its face " + fmt(f);
  }

  std::vector<std::size_t> simplex_;
  std::vector<std::size_t> face_;
};

/// The abelianized row of an extension is not exact, so the obstruction class
/// is undefined for it.
class ExactnessFailure : public Error {
 public:
  ExactnessFailure(std::string diagnosis, const std::string& detail)
      : Error("abelianized row is not exact (" + diagnosis + "): " + detail), diagnosis_(std::move(diagnosis)) {}

  /// One of "iab-noninjective", "pab-nonsurjective", "image-neq-kernel".
  const std::string& diagnosis() const { return diagnosis_; }

 private:
  std::string diagnosis_;
};

class NotNormalizing : public Error {
 public:
  using Error::Error;
};

/// Backtracking hit its node budget before finishing; the answer is unknown.
class SearchBudgetExceeded : public Error {
 public:
  SearchBudgetExceeded(std::size_t budget, std::size_t nodes)
      : Error("search budget of " + std::to_string(budget) + " nodes exhausted"), budget_(budget), nodes_(nodes) {}

  std::size_t budget() const { return budget_; }
  std::size_t nodes() const { return nodes_; }

 private:
  std::size_t budget_;
  std::size_t nodes_;
};

/// Two independent computations of the same quantity disagree.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class InvariantViolation : public Error {
 public:
  using Error::Error;
};

class NotOneDimensional : public Error {
 public:
  using Error::Error;
};

}  // namespace gbdual
