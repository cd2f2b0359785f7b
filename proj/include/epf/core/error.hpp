#pragma once

#include <stdexcept>
#include <string>

namespace epf {

// Base for every library error. The message is prefixed with the owning
// module so CLI diagnostics say where a failure came from.
class Error : public std::runtime_error {
 public:
  Error(const std::string& module, const std::string& what)
      : std::runtime_error(module + ": " + what), module_(module) {}

  const std::string& module() const noexcept { return module_; }

 private:
  std::string module_;
};

#define EPF_DEFINE_ERROR(Name)                                               \
  class Name : public Error {                                                \
   public:                                                                   \
    using Error::Error;                                                      \
  }

EPF_DEFINE_ERROR(ParseError);
EPF_DEFINE_ERROR(IntegrityError);
EPF_DEFINE_ERROR(CoverageError);
EPF_DEFINE_ERROR(DegenerateScaleError);
EPF_DEFINE_ERROR(UnsupportedDateError);
EPF_DEFINE_ERROR(LookupError);
EPF_DEFINE_ERROR(ShapeError);
EPF_DEFINE_ERROR(DivergenceError);
EPF_DEFINE_ERROR(InsufficientHistoryError);
EPF_DEFINE_ERROR(FeatureError);
EPF_DEFINE_ERROR(ArbitrageConflictError);
EPF_DEFINE_ERROR(UndefinedValueError);
EPF_DEFINE_ERROR(InvalidArgumentError);

#undef EPF_DEFINE_ERROR

}  // namespace epf
