#include "graspa/pose_io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <vector>

namespace graspa {

double parse_double(const std::string& token, const std::string& origin) {
  size_t consumed = 0;
  double value = 0.0;
  try {
    value = std::stod(token, &consumed);
  } catch (const std::exception&) {
    consumed = 0;
  }
  if (consumed != token.size() || !std::isfinite(value))
    throw Error(ErrorKind::Schema, origin + ": expected a finite number, got '" + token + "'");
  return value;
}

long parse_long(const std::string& token, const std::string& origin) {
  size_t consumed = 0;
  long value = 0;
  try {
    value = std::stol(token, &consumed);
  } catch (const std::exception&) {
    consumed = 0;
  }
  if (consumed != token.size())
    throw Error(ErrorKind::Schema, origin + ": expected an integer, got '" + token + "'");
  return value;
}

std::string format_double(double value) {
  if (value == 0.0) return "0";  // normalize -0
  char buf[32];
  for (int precision = 1; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, value);
    if (std::stod(buf) == value) break;
  }
  return buf;
}

Pose parse_pose_text(const std::string& text, const std::string& origin) {
  std::istringstream in(text);
  std::array<double, 16> m{};
  std::string tok;
  for (int i = 0; i < 16; ++i) {
    if (!(in >> tok))
      throw Error(ErrorKind::Schema, origin + ": pose needs 16 numbers, got " + std::to_string(i));
    m[static_cast<size_t>(i)] = parse_double(tok, origin);
  }
  if (in >> tok)
    throw Error(ErrorKind::Schema, origin + ": pose has more than 16 numbers");

  const double kBottomTol = 1e-9;
  if (std::abs(m[12]) > kBottomTol || std::abs(m[13]) > kBottomTol ||
      std::abs(m[14]) > kBottomTol || std::abs(m[15] - 1.0) > kBottomTol)
    throw Error(ErrorKind::Semantic, origin + ": bottom row of a pose matrix must be 0 0 0 1");

  Pose pose = from_matrix16(m);
  if (!is_rotation(pose.rotation))
    throw Error(ErrorKind::Semantic,
                origin + ": rotation block is not orthonormal with determinant 1");
  return pose;
}

std::string pose_to_text(const Pose& pose) {
  auto m = to_matrix16(pose);
  std::string out;
  for (int i = 0; i < 16; ++i) {
    if (i) out += ' ';
    out += format_double(m[static_cast<size_t>(i)]);
  }
  return out;
}

}  // namespace graspa
