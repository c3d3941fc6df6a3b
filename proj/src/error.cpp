#include "zz/error.hpp"

namespace zz {

std::string_view to_string(ErrorKind kind)
{
    switch (kind)
    {
        case ErrorKind::AmbientMismatch: return "AmbientMismatch";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::ShapeMismatch: return "ShapeMismatch";
        case ErrorKind::NotUnipotent: return "NotUnipotent";
        case ErrorKind::NotNilpotent: return "NotNilpotent";
        case ErrorKind::NotExact: return "NotExact";
        case ErrorKind::ZeroRank: return "ZeroRank";
        case ErrorKind::SizeBound: return "SizeBound";
        case ErrorKind::RegimeMismatch: return "RegimeMismatch";
        case ErrorKind::InvalidTotal: return "InvalidTotal";
        case ErrorKind::NotPointSupported: return "NotPointSupported";
        case ErrorKind::NotICType: return "NotICType";
        case ErrorKind::DuplicateNode: return "DuplicateNode";
        case ErrorKind::NonRankOneQuotient: return "NonRankOneQuotient";
        case ErrorKind::OpenLabelMismatch: return "OpenLabelMismatch";
        case ErrorKind::SingularMatrix: return "SingularMatrix";
        case ErrorKind::WitnessSearchExhausted: return "WitnessSearchExhausted";
    }
    return "Unknown";
}

}   // namespace zz
