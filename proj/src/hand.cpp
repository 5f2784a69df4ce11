#include "graspa/hand.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "graspa/pose_io.hpp"
#include "graspa/xml.hpp"

namespace graspa {

int HandModel::link_index(const std::string& link_name) const {
  for (size_t i = 0; i < links.size(); ++i)
    if (links[i].name == link_name) return static_cast<int>(i);
  return -1;
}

int HandModel::joint_index(const std::string& joint_name) const {
  for (size_t i = 0; i < joints.size(); ++i)
    if (joints[i].name == joint_name) return static_cast<int>(i);
  return -1;
}

namespace {

const std::string& require_attribute(const xml::Node& node, const std::string& key,
                                     const std::string& origin) {
  const std::string* value = node.find_attribute(key);
  if (!value)
    throw Error(ErrorKind::Schema, origin + ": <" + node.name + "> at line " +
                                       std::to_string(node.line) + " missing attribute '" +
                                       key + "'");
  return *value;
}

Vector3d parse_vector3(const std::string& text, const std::string& origin) {
  std::istringstream in(text);
  std::string tok;
  Vector3d v;
  for (int i = 0; i < 3; ++i) {
    if (!(in >> tok)) throw Error(ErrorKind::Schema, origin + ": expected 3 numbers");
    v(i) = parse_double(tok, origin);
  }
  if (in >> tok) throw Error(ErrorKind::Schema, origin + ": expected exactly 3 numbers");
  return v;
}

}  // namespace

HandModel parse_hand_model(const std::string& content, const std::string& origin,
                           const std::string& mesh_dir) {
  xml::Node root = xml::parse(content, origin);
  if (root.name != "hand")
    throw Error(ErrorKind::Schema, origin + ": root element must be <hand>");

  HandModel hand;
  hand.name = require_attribute(root, "name", origin);
  hand.aperture = parse_double(require_attribute(root, "aperture", origin), origin);
  hand.payload = parse_double(require_attribute(root, "payload", origin), origin);
  if (hand.aperture <= 0.0 || hand.payload <= 0.0)
    throw Error(ErrorKind::Semantic, origin + ": aperture and payload must be > 0");

  if (const xml::Node* axis = root.find_child("approach_axis")) {
    hand.approach_axis = parse_vector3(axis->text, origin);
    if (hand.approach_axis.norm() < 1e-9)
      throw Error(ErrorKind::Semantic, origin + ": approach axis must be nonzero");
    hand.approach_axis.normalize();
  }
  if (const xml::Node* base = root.find_child("base_frame"))
    hand.base_frame = parse_pose_text(base->text, origin + ": base_frame");

  // Links first so joints can reference them by name.
  for (const xml::Node* link_node : root.children_named("link")) {
    HandLink link;
    link.name = require_attribute(*link_node, "name", origin);
    if (hand.link_index(link.name) >= 0)
      throw Error(ErrorKind::Schema, origin + ": duplicate link '" + link.name + "'");
    if (const std::string* mesh_ref = link_node->find_attribute("mesh")) {
      std::filesystem::path p = std::filesystem::path(mesh_dir) / *mesh_ref;
      link.mesh = load_mesh(p.string());
    }
    hand.links.push_back(std::move(link));
  }
  if (hand.links.empty()) throw Error(ErrorKind::Schema, origin + ": no <link> elements");

  for (const xml::Node* joint_node : root.children_named("joint")) {
    HandJoint joint;
    joint.name = require_attribute(*joint_node, "name", origin);
    if (hand.joint_index(joint.name) >= 0)
      throw Error(ErrorKind::Schema, origin + ": duplicate joint '" + joint.name + "'");
    const std::string* type = joint_node->find_attribute("type");
    if (type && *type != "revolute")
      throw Error(ErrorKind::Schema, origin + ": joint '" + joint.name +
                                         "' has unsupported type '" + *type + "'");
    joint.parent_link = hand.link_index(require_attribute(*joint_node, "parent", origin));
    joint.child_link = hand.link_index(require_attribute(*joint_node, "child", origin));
    if (joint.parent_link < 0 || joint.child_link < 0)
      throw Error(ErrorKind::Schema,
                  origin + ": joint '" + joint.name + "' references an unknown link");
    joint.axis = parse_vector3(require_attribute(*joint_node, "axis", origin), origin);
    if (joint.axis.norm() < 1e-9)
      throw Error(ErrorKind::Semantic, origin + ": joint '" + joint.name + "' axis is zero");
    joint.axis.normalize();
    joint.lower_limit = parse_double(require_attribute(*joint_node, "lo", origin), origin);
    joint.upper_limit = parse_double(require_attribute(*joint_node, "hi", origin), origin);
    if (!(joint.lower_limit < joint.upper_limit))
      throw Error(ErrorKind::Semantic,
                  origin + ": joint '" + joint.name + "' limits must satisfy lo < hi");
    if (const xml::Node* origin_node = joint_node->find_child("origin"))
      joint.origin = parse_pose_text(origin_node->text, origin + ": joint origin");

    int child = joint.child_link;
    if (hand.links[static_cast<size_t>(child)].parent_joint >= 0)
      throw Error(ErrorKind::CyclicKinematics,
                  origin + ": link '" + hand.links[static_cast<size_t>(child)].name +
                      "' has more than one parent joint");
    hand.joints.push_back(joint);
    hand.links[static_cast<size_t>(child)].parent_joint =
        static_cast<int>(hand.joints.size()) - 1;
  }

  // Exactly one root, and every link must reach it (tree check).
  std::vector<int> roots;
  for (size_t i = 0; i < hand.links.size(); ++i)
    if (hand.links[i].parent_joint < 0) roots.push_back(static_cast<int>(i));
  if (roots.size() != 1)
    throw Error(ErrorKind::CyclicKinematics,
                origin + ": expected exactly one base link, found " +
                    std::to_string(roots.size()));
  hand.base_link = roots[0];
  for (size_t i = 0; i < hand.links.size(); ++i) {
    int current = static_cast<int>(i);
    size_t hops = 0;
    while (hand.links[static_cast<size_t>(current)].parent_joint >= 0) {
      current = hand.joints[static_cast<size_t>(
                                hand.links[static_cast<size_t>(current)].parent_joint)]
                    .parent_link;
      if (++hops > hand.links.size())
        throw Error(ErrorKind::CyclicKinematics,
                    origin + ": cycle detected through link '" + hand.links[i].name + "'");
    }
    if (current != hand.base_link)
      throw Error(ErrorKind::CyclicKinematics,
                  origin + ": link '" + hand.links[i].name + "' does not descend from the base");
  }
  return hand;
}

HandModel load_hand_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_hand_model(buffer.str(), path,
                          std::filesystem::path(path).parent_path().string());
}

std::vector<Pose> forward_kinematics(const HandModel& hand, const Pose& base_pose,
                                     const std::map<std::string, double>& joint_angles,
                                     std::vector<std::string>* clamp_warnings) {
  for (const auto& [name, angle] : joint_angles) {
    (void)angle;
    if (hand.joint_index(name) < 0)
      throw Error(ErrorKind::UnknownJoint, "unknown joint '" + name + "'");
  }

  std::vector<Pose> poses(hand.links.size());
  std::vector<bool> done(hand.links.size(), false);
  poses[static_cast<size_t>(hand.base_link)] = base_pose.compose(hand.base_frame);
  done[static_cast<size_t>(hand.base_link)] = true;

  // Tree is shallow; iterate until all links resolve.
  bool progressed = true;
  while (progressed) {
    progressed = false;
    for (size_t i = 0; i < hand.links.size(); ++i) {
      if (done[i]) continue;
      const HandJoint& joint =
          hand.joints[static_cast<size_t>(hand.links[i].parent_joint)];
      if (!done[static_cast<size_t>(joint.parent_link)]) continue;
      double angle = 0.0;
      if (auto it = joint_angles.find(joint.name); it != joint_angles.end())
        angle = it->second;
      double clamped = std::clamp(angle, joint.lower_limit, joint.upper_limit);
      if (clamped != angle && clamp_warnings)
        clamp_warnings->push_back(joint.name);
      Pose joint_rotation{Vector3d::Zero(), rot_about(joint.axis, clamped)};
      poses[i] = poses[static_cast<size_t>(joint.parent_link)]
                     .compose(joint.origin)
                     .compose(joint_rotation);
      done[i] = true;
      progressed = true;
    }
  }
  return poses;
}

}  // namespace graspa
