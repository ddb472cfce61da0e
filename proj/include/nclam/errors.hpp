#pragma once

#include <stdexcept>
#include <string>

namespace nclam {

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// clang-format off
struct InvalidPath            : Error { explicit InvalidPath(const std::string& w)            : Error("InvalidPath: " + w) {} };
struct IndexOutOfRange        : Error { explicit IndexOutOfRange(const std::string& w)        : Error("IndexOutOfRange: " + w) {} };
struct DomainError            : Error { explicit DomainError(const std::string& w)            : Error("DomainError: " + w) {} };
struct NoCriticalPoint        : Error { explicit NoCriticalPoint(const std::string& w)        : Error("NoCriticalPoint: " + w) {} };
struct DivergentWeights       : Error { explicit DivergentWeights(const std::string& w)       : Error("DivergentWeights: " + w) {} };
struct DivergentNormalizer    : Error { explicit DivergentNormalizer(const std::string& w)    : Error("DivergentNormalizer: " + w) {} };
struct Infeasible             : Error { explicit Infeasible(const std::string& w)             : Error("Infeasible: " + w) {} };
struct Timeout                : Error { explicit Timeout(const std::string& w)                : Error("Timeout: " + w) {} };
struct IncompatibleDecoration : Error { explicit IncompatibleDecoration(const std::string& w) : Error("IncompatibleDecoration: " + w) {} };
struct IncompatibleLabelling  : Error { explicit IncompatibleLabelling(const std::string& w)  : Error("IncompatibleLabelling: " + w) {} };
struct NotATree               : Error { explicit NotATree(const std::string& w)               : Error("NotATree: " + w) {} };
struct CrossingEdges          : Error { explicit CrossingEdges(const std::string& w)          : Error("CrossingEdges: " + w) {} };
struct TooLarge               : Error { explicit TooLarge(const std::string& w)               : Error("TooLarge: " + w) {} };
struct EmptySet               : Error { explicit EmptySet(const std::string& w)               : Error("EmptySet: " + w) {} };
struct EmptyBatch             : Error { explicit EmptyBatch(const std::string& w)             : Error("EmptyBatch: " + w) {} };
struct ResolutionTooFine      : Error { explicit ResolutionTooFine(const std::string& w)      : Error("ResolutionTooFine: " + w) {} };
struct ResolutionMismatch     : Error { explicit ResolutionMismatch(const std::string& w)     : Error("ResolutionMismatch: " + w) {} };
struct CrossingAfterMap       : Error { explicit CrossingAfterMap(const std::string& w)       : Error("CrossingAfterMap: " + w) {} };
struct DegenerateTree         : Error { explicit DegenerateTree(const std::string& w)         : Error("DegenerateTree: " + w) {} };
// clang-format on

}  // namespace nclam
