#pragma once

#include <stdexcept>
#include <string>

namespace ropelab {

// Coarse failure classes. The CLI maps these onto process exit codes.
enum class ErrorClass {
  usage,        // bad parameters or arguments (exit 2)
  data,         // malformed input, consistency or placement failures (exit 3)
  numeric,      // divergence or overflow (exit 4)
};

class Error : public std::runtime_error {
 public:
  Error(ErrorClass cls, const std::string& what)
      : std::runtime_error(what), cls_(cls) {}
  ErrorClass error_class() const noexcept { return cls_; }

 private:
  ErrorClass cls_;
};

#define ROPELAB_DEFINE_ERROR(Name, Class)                                   \
  class Name : public Error {                                               \
   public:                                                                  \
    explicit Name(const std::string& what) : Error(ErrorClass::Class, what) {} \
  }

ROPELAB_DEFINE_ERROR(InvalidDimension, usage);
ROPELAB_DEFINE_ERROR(InvalidParameter, usage);
ROPELAB_DEFINE_ERROR(EmptySequence, usage);
ROPELAB_DEFINE_ERROR(ShapeError, usage);
ROPELAB_DEFINE_ERROR(CapacityError, usage);
ROPELAB_DEFINE_ERROR(InputError, data);
ROPELAB_DEFINE_ERROR(ConsistencyError, data);
ROPELAB_DEFINE_ERROR(PlacementError, data);
ROPELAB_DEFINE_ERROR(PairingError, data);
ROPELAB_DEFINE_ERROR(NumericOverflow, numeric);
ROPELAB_DEFINE_ERROR(Divergence, numeric);

#undef ROPELAB_DEFINE_ERROR

inline int exit_code(ErrorClass cls) {
  switch (cls) {
    case ErrorClass::usage: return 2;
    case ErrorClass::data: return 3;
    case ErrorClass::numeric: return 4;
  }
  return 1;
}

}  // namespace ropelab
