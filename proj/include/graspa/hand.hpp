#pragma once

#include <map>
#include <string>
#include <vector>

#include "graspa/mesh.hpp"

namespace graspa {

/// Revolute joint connecting a parent link to a child link. `origin` is the
/// joint frame relative to the parent link; the child link frame coincides
/// with the joint frame rotated by the joint angle about `axis`. Closure
/// drives every joint from its pregrasp value toward `upper_limit`.
struct HandJoint {
  std::string name;
  int parent_link = -1;
  int child_link = -1;
  Vector3d axis = Vector3d::UnitZ();  // unit, in joint frame
  Pose origin;
  double lower_limit = 0.0;  // radians
  double upper_limit = 0.0;
};

struct HandLink {
  std::string name;
  TriMesh mesh;          // may be empty (purely structural link)
  int parent_joint = -1; // -1 for the base link
};

/// End-effector description: kinematic tree of revolute joints, collision
/// meshes per link, and the two platform limits used by the graspability
/// test (arm payload, maximum finger aperture).
struct HandModel {
  std::string name;
  std::vector<HandLink> links;
  std::vector<HandJoint> joints;
  Pose base_frame;                       // hand reference frame -> base link
  Vector3d approach_axis = Vector3d::UnitZ();  // in the hand reference frame
  double aperture = 0.0;  // meters
  double payload = 0.0;   // kg
  int base_link = 0;

  int link_index(const std::string& link_name) const;
  int joint_index(const std::string& joint_name) const;
};

/// Loads and validates a hand description file; link meshes are resolved
/// relative to the file's directory. Throws CyclicKinematics when the
/// link/joint graph is not a tree rooted at the base link.
HandModel load_hand_model(const std::string& path);

HandModel parse_hand_model(const std::string& content, const std::string& origin,
                           const std::string& mesh_dir);

/// Board-frame pose of every link given the hand reference pose and joint
/// angles by name. Angles outside the limits are clamped; the names of
/// clamped joints are appended to `clamp_warnings` when it is non-null.
/// Joints absent from `joint_angles` sit at zero (clamped into range).
std::vector<Pose> forward_kinematics(const HandModel& hand, const Pose& base_pose,
                                     const std::map<std::string, double>& joint_angles,
                                     std::vector<std::string>* clamp_warnings = nullptr);

}  // namespace graspa
