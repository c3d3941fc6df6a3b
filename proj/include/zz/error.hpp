#ifndef ZZ_ERROR_HPP
#define ZZ_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace zz {

enum class ErrorKind
{
    AmbientMismatch,
    DimensionMismatch,
    ShapeMismatch,
    NotUnipotent,
    NotNilpotent,
    NotExact,
    ZeroRank,
    SizeBound,
    RegimeMismatch,
    InvalidTotal,
    NotPointSupported,
    NotICType,
    DuplicateNode,
    NonRankOneQuotient,
    OpenLabelMismatch,
    SingularMatrix,
    WitnessSearchExhausted,
};

std::string_view to_string(ErrorKind kind);

/**
 * The single exception type thrown by the engine. Each precondition
 * violation carries a machine-readable kind alongside the message.
 */
class Error : public std::runtime_error
{
  public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind)
    {
    }

    ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

}   // namespace zz

#endif
