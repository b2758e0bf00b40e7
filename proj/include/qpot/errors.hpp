#pragma once

#include <stdexcept>
#include <string>

namespace qpot {

// All library failures derive from Error so callers can catch one type.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
  public:
    using Error::Error;
};

class QuiverMismatch : public Error {
  public:
    QuiverMismatch() : Error("operands live over different quivers") {}
};

class InvalidQuiver : public Error {
  public:
    using Error::Error;
};

class UnknownArrow : public Error {
  public:
    explicit UnknownArrow(const std::string& id) : Error("unknown arrow '" + id + "'") {}
};

class UnknownVertex : public Error {
  public:
    explicit UnknownVertex(const std::string& id) : Error("unknown vertex '" + id + "'") {}
};

class NotHomogeneous : public Error {
  public:
    using Error::Error;
};

class NotACycle : public Error {
  public:
    using Error::Error;
};

class InvalidRelation : public Error {
  public:
    using Error::Error;
};

class DegreeMismatch : public Error {
  public:
    using Error::Error;
};

class InvalidMap : public Error {
  public:
    using Error::Error;
};

// The length filtration is not compatible with the differential.
class StructuralError : public Error {
  public:
    using Error::Error;
};

class NotAdmissible : public Error {
  public:
    using Error::Error;
};

class Undecided : public Error {
  public:
    using Error::Error;
};

} // namespace qpot
