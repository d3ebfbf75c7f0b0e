#include "heckecells/error.hpp"

namespace heckecells {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MalformedCartan: return "MalformedCartan";
    case ErrorKind::InfiniteGroup: return "InfiniteGroup";
    case ErrorKind::UnknownElement: return "UnknownElement";
    case ErrorKind::NonUnitriangular: return "NonUnitriangular";
    case ErrorKind::MalformedDocument: return "MalformedDocument";
    case ErrorKind::ValidationFailed: return "ValidationFailed";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::SizeMismatch: return "SizeMismatch";
    case ErrorKind::NotComparable: return "NotComparable";
    case ErrorKind::NotPositive: return "NotPositive";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::NoMinimum: return "NoMinimum";
    case ErrorKind::UnsupportedType: return "UnsupportedType";
    case ErrorKind::AmbiguousProjection: return "AmbiguousProjection";
    case ErrorKind::NotAPartition: return "NotAPartition";
    case ErrorKind::CellMismatch: return "CellMismatch";
  }
  return "Unknown";
}

}  // namespace heckecells
