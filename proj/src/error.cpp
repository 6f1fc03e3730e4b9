#include "dsfa/error.hpp"

namespace dsfa {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidParameter:
      return "invalid-parameter";
    case ErrorKind::InsufficientData:
      return "insufficient-data";
    case ErrorKind::NumericalDomain:
      return "numerical-domain";
    case ErrorKind::RankDeficiency:
      return "rank-deficiency";
    case ErrorKind::DegenerateSignal:
      return "degenerate-signal";
    case ErrorKind::Io:
      return "io";
    case ErrorKind::Parse:
      return "parse";
  }
  return "unknown";
}

}  // namespace dsfa
