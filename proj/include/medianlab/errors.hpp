#pragma once

#include <stdexcept>
#include <string>

namespace medianlab {

// Base for every error raised by the library. Subclasses name the
// precondition or runtime condition that failed.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define MEDIANLAB_DEFINE_ERROR(Name)          \
  class Name : public Error {                 \
   public:                                    \
    using Error::Error;                       \
  }

MEDIANLAB_DEFINE_ERROR(PreconditionError);
MEDIANLAB_DEFINE_ERROR(DisconnectedGraph);
MEDIANLAB_DEFINE_ERROR(ParseError);
MEDIANLAB_DEFINE_ERROR(BadConstant);
MEDIANLAB_DEFINE_ERROR(NotRegular);
MEDIANLAB_DEFINE_ERROR(BudgetExhausted);
MEDIANLAB_DEFINE_ERROR(PadOverflow);
MEDIANLAB_DEFINE_ERROR(Infeasible);
MEDIANLAB_DEFINE_ERROR(BudgetExceeded);
MEDIANLAB_DEFINE_ERROR(ConsistencyFailure);
MEDIANLAB_DEFINE_ERROR(QueryOutOfRange);

#undef MEDIANLAB_DEFINE_ERROR

inline void require(bool cond, const std::string& what) {
  if (!cond) throw PreconditionError(what);
}

}  // namespace medianlab
