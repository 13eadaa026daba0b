// Reading body documents and point lists, with located diagnostics.

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "knaster/bodies.hpp"

namespace knaster {

/// Malformed input. what() reads "source:line:column: message" when a
/// position is known.
class InputError : public std::runtime_error {
 public:
  InputError(const std::string& source, int line, int column, const std::string& message);
  explicit InputError(const std::string& message) : std::runtime_error(message) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_ = 0;
  int column_ = 0;
};

/// JSON body document:
///   {"type": "ellipsoid", "coeffs": [a11, a22, a33],
///    optional "center": [x, y, z], optional "quaternion": [w, x, y, z]}
///   {"type": "pointcloud", "points": [[x, y, z], ...], optional "symmetrize": bool}
///   {"type": "set", "points": [[x, y, z], ...]}
Body parse_body(const std::string& text, const std::string& source = "<input>");
Body load_body(const std::string& path);

/// One "x,y,z" triple per line; blank lines and lines starting with '#'
/// are skipped.
std::vector<Vec3> parse_points_csv(const std::string& text, const std::string& source = "<input>");
std::vector<Vec3> load_points_csv(const std::string& path);

std::string read_file(const std::string& path);

}  // namespace knaster
