#ifndef QPROJ_INPUT_HPP
#define QPROJ_INPUT_HPP

#include <optional>
#include <string>

#include "qproj/jordan.hpp"

namespace qproj {

enum class InputMode { Matrix, Jordan };

/// A parsed element description. Matrix mode carries the entries verbatim;
/// jordan mode carries declared blocks (eigenvalues canonicalized to their
/// class representatives) plus an optional conjugator C, the element being
/// C^{-1} J C.
struct InputSpec {
  InputMode mode = InputMode::Matrix;
  int dim = 0;
  std::optional<QMatrix> matrix;
  std::vector<JordanBlock> blocks;
  std::optional<QMatrix> conjugator;
};

/// Parses the line-oriented element grammar:
///   mode matrix|jordan
///   dim N
///   row <q> ... <q>          (N lines of N quaternion literals, matrix mode)
///   block <eig> <size>       (jordan mode; sizes must sum to N)
///   conjugator               (optional section of N row lines, jordan mode)
/// '#' starts a comment. Eigenvalues are quaternion literals (canonicalized
/// to the class representative), e2pi(p/q) for an exact rational angle, or
/// e2pi(<decimal>) for an angle declared irrational.
/// Throws ParseError (with line/column) or DimensionMismatch.
InputSpec parse_input(const std::string& text);

/// Round-trips an InputSpec back to the grammar.
std::string print_input(const InputSpec& spec);

/// The group element the spec describes.
QMatrix assemble_element(const InputSpec& spec);

}  // namespace qproj

#endif
