#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace h2curl {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class OrderTooLow : public Error {
 public:
  using Error::Error;
};

class UnisolvenceFailure : public Error {
 public:
  using Error::Error;
};

class SingularMap : public Error {
 public:
  using Error::Error;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

class SpaceMismatch : public Error {
 public:
  using Error::Error;
};

class SingularSystem : public Error {
 public:
  using Error::Error;
};

class UndefinedRate : public Error {
 public:
  using Error::Error;
};

class NonNestedMeshes : public Error {
 public:
  using Error::Error;
};

/// Raised when a candidate basis is not dual to the element's DOFs up to a
/// permutation. `rows()` lists the DOF rows that could not be matched.
class AppendixMismatch : public Error {
 public:
  AppendixMismatch(const std::string& what, std::vector<int> rows, double max_error)
      : Error(what), rows_(std::move(rows)), max_error_(max_error) {}

  const std::vector<int>& rows() const { return rows_; }
  double max_error() const { return max_error_; }

 private:
  std::vector<int> rows_;
  double max_error_;
};

}  // namespace h2curl
