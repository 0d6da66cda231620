#pragma once

#include <stdexcept>
#include <string>

namespace brauerlift {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

#define BRAUERLIFT_ERROR(Name)                                  \
  struct Name : Error {                                         \
    explicit Name(const std::string& w = "") : Error(#Name, w) {} \
  }

BRAUERLIFT_ERROR(NotAUnit);
BRAUERLIFT_ERROR(PrecisionTooHigh);
BRAUERLIFT_ERROR(NotSplit);
BRAUERLIFT_ERROR(ParseError);
BRAUERLIFT_ERROR(OrderBound);
BRAUERLIFT_ERROR(TableMismatch);
BRAUERLIFT_ERROR(NoCorrespondent);
BRAUERLIFT_ERROR(NotCyclicDefect);
BRAUERLIFT_ERROR(TreeReconstructionAmbiguous);
BRAUERLIFT_ERROR(NonIntegral);
BRAUERLIFT_ERROR(SpanFailure);
BRAUERLIFT_ERROR(NotSurjective);
BRAUERLIFT_ERROR(NotConjugate);
BRAUERLIFT_ERROR(NotPrimitive);
BRAUERLIFT_ERROR(NonUniqueNonProjective);
BRAUERLIFT_ERROR(NoCandidateFound);
BRAUERLIFT_ERROR(FlagMissing);
BRAUERLIFT_ERROR(SplittingFailed);
BRAUERLIFT_ERROR(NotAnIdempotent);

#undef BRAUERLIFT_ERROR

}  // namespace brauerlift
