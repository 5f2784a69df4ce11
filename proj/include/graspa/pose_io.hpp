#pragma once

#include <string>

#include "graspa/geometry.hpp"

namespace graspa {

/// Poses travel through every file format as 16 whitespace-separated numbers
/// (row-major 4x4 homogeneous matrix, meters). Parsing validates the bottom
/// row and the rotation block; serialization uses shortest round-trip
/// formatting so parse(write(p)) == p bit for bit.
Pose parse_pose_text(const std::string& text, const std::string& origin);

std::string pose_to_text(const Pose& pose);

/// Shortest decimal form that parses back to exactly the same double.
std::string format_double(double value);

/// Parses one floating-point number, rejecting trailing garbage.
double parse_double(const std::string& token, const std::string& origin);

long parse_long(const std::string& token, const std::string& origin);

}  // namespace graspa
