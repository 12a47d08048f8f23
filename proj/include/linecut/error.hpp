#pragma once

#include <stdexcept>
#include <string>

namespace linecut {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class ParallelLines : public Error {
 public:
  ParallelLines(int first, int second)
      : Error("lines " + std::to_string(first) + " and " + std::to_string(second) +
              " are parallel"),
        first_(first),
        second_(second) {}
  int first() const { return first_; }
  int second() const { return second_; }

 private:
  int first_;
  int second_;
};

class BadId : public Error {
 public:
  explicit BadId(int id) : Error("line id " + std::to_string(id) + " out of range"), id_(id) {}
  int id() const { return id_; }

 private:
  int id_;
};

class BoundaryDegeneracy : public Error {
 public:
  using Error::Error;
};

class DegenerateWedge : public Error {
 public:
  using Error::Error;
};

class BadPartition : public Error {
 public:
  using Error::Error;
};

class LevelTooSmall : public Error {
 public:
  using Error::Error;
};

class NoSuchLevel : public Error {
 public:
  using Error::Error;
};

class OutOfStrip : public Error {
 public:
  using Error::Error;
};

class ThresholdUnreachable : public Error {
 public:
  using Error::Error;
};

// Raised by find_summands; summands exist for every sign table, so this is
// an internal consistency failure.
class SummandsNotFound : public Error {
 public:
  using Error::Error;
};

class SizeCap : public Error {
 public:
  using Error::Error;
};

class OracleCap : public Error {
 public:
  using Error::Error;
};

class NotGeneralPosition : public Error {
 public:
  using Error::Error;
};

class SearchBudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace linecut
