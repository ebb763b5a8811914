#pragma once

#include <stdexcept>
#include <string>

namespace confext {

// Exit-code classes used by the command-line front end.
enum class ErrorClass { Usage = 2, Arithmetic = 3 };

class Error : public std::runtime_error {
 public:
  Error(const std::string& what, ErrorClass cls) : std::runtime_error(what), cls_(cls) {}
  ErrorClass error_class() const { return cls_; }
  int exit_code() const { return static_cast<int>(cls_); }

 private:
  ErrorClass cls_;
};

#define CONFEXT_DEFINE_ERROR(Name, Cls)                                   \
  class Name : public Error {                                             \
   public:                                                                \
    explicit Name(const std::string& what)                                \
        : Error(std::string(#Name ": ") + what, ErrorClass::Cls) {}       \
  };

CONFEXT_DEFINE_ERROR(MixedExtension, Arithmetic)
CONFEXT_DEFINE_ERROR(DivisionByZero, Arithmetic)
CONFEXT_DEFINE_ERROR(ZeroPolynomial, Arithmetic)
CONFEXT_DEFINE_ERROR(NonlinearProduct, Arithmetic)
CONFEXT_DEFINE_ERROR(UnknownIndeterminate, Arithmetic)
CONFEXT_DEFINE_ERROR(NonhomogeneousSystem, Arithmetic)
CONFEXT_DEFINE_ERROR(DimensionMismatch, Usage)
CONFEXT_DEFINE_ERROR(DegenerateForm, Arithmetic)
CONFEXT_DEFINE_ERROR(OutOfRange, Usage)
CONFEXT_DEFINE_ERROR(NotACocycle, Arithmetic)
CONFEXT_DEFINE_ERROR(UnknownRealization, Usage)
CONFEXT_DEFINE_ERROR(ParseError, Usage)
CONFEXT_DEFINE_ERROR(InvalidInput, Usage)

#undef CONFEXT_DEFINE_ERROR

}  // namespace confext
