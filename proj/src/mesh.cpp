#include "graspa/mesh.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace graspa {
namespace {

constexpr double kAreaTol = 1e-14;  // m^2, below this a triangle is degenerate

std::vector<std::string> tokenize(const std::string& content) {
  std::vector<std::string> tokens;
  std::istringstream in(content);
  std::string line;
  while (std::getline(in, line)) {
    size_t comment = line.find('#');
    if (comment != std::string::npos) line.erase(comment);
    std::istringstream ls(line);
    std::string tok;
    std::vector<std::string> line_tokens;
    while (ls >> tok) line_tokens.push_back(tok);
    // PLY comments run to end of line.
    if (!line_tokens.empty() && line_tokens.front() == "comment") continue;
    tokens.insert(tokens.end(), line_tokens.begin(), line_tokens.end());
  }
  return tokens;
}

class TokenReader {
public:
  TokenReader(std::vector<std::string> tokens, const std::string& origin)
      : tokens_(std::move(tokens)), origin_(origin) {}

  const std::string& next(const char* what) {
    if (pos_ >= tokens_.size())
      throw Error(ErrorKind::Format, origin_ + ": unexpected end of file, expected " +
                                         std::string(what));
    return tokens_[pos_++];
  }

  double next_double(const char* what) {
    const std::string& tok = next(what);
    size_t consumed = 0;
    double value = 0.0;
    try {
      value = std::stod(tok, &consumed);
    } catch (const std::exception&) {
      consumed = 0;
    }
    if (consumed != tok.size())
      throw Error(ErrorKind::Format,
                  origin_ + ": expected " + std::string(what) + ", got '" + tok + "'");
    return value;
  }

  long next_int(const char* what) {
    const std::string& tok = next(what);
    size_t consumed = 0;
    long value = 0;
    try {
      value = std::stol(tok, &consumed);
    } catch (const std::exception&) {
      consumed = 0;
    }
    if (consumed != tok.size())
      throw Error(ErrorKind::Format,
                  origin_ + ": expected " + std::string(what) + ", got '" + tok + "'");
    return value;
  }

  bool done() const { return pos_ >= tokens_.size(); }

private:
  std::vector<std::string> tokens_;
  std::string origin_;
  size_t pos_ = 0;
};

TriMesh parse_off(TokenReader& reader, const std::string& origin) {
  TriMesh mesh;
  long nv = reader.next_int("vertex count");
  long nf = reader.next_int("face count");
  reader.next_int("edge count");
  if (nv < 0 || nf < 0) throw Error(ErrorKind::Format, origin + ": negative counts");
  mesh.vertices.reserve(static_cast<size_t>(nv));
  for (long i = 0; i < nv; ++i) {
    double x = reader.next_double("vertex coordinate");
    double y = reader.next_double("vertex coordinate");
    double z = reader.next_double("vertex coordinate");
    mesh.vertices.emplace_back(x, y, z);
  }
  for (long i = 0; i < nf; ++i) {
    long arity = reader.next_int("face vertex count");
    if (arity != 3)
      throw Error(ErrorKind::Format,
                  origin + ": face " + std::to_string(i) + " has " +
                      std::to_string(arity) + " vertices, only triangles supported");
    std::array<int, 3> tri{};
    for (int k = 0; k < 3; ++k) tri[static_cast<size_t>(k)] = static_cast<int>(reader.next_int("vertex index"));
    mesh.triangles.push_back(tri);
  }
  return mesh;
}

TriMesh parse_ply(TokenReader& reader, const std::string& origin) {
  long nv = -1, nf = -1;
  int coords_seen = 0;
  // Header: we only honor ascii format, vertex x/y/z properties and a face
  // vertex list.
  for (;;) {
    std::string tok = reader.next("header token");
    if (tok == "end_header") break;
    if (tok == "format") {
      if (reader.next("format name") != "ascii")
        throw Error(ErrorKind::Format, origin + ": only ascii PLY is supported");
      reader.next("format version");
    } else if (tok == "element") {
      std::string kind = reader.next("element kind");
      long count = reader.next_int("element count");
      if (kind == "vertex") nv = count;
      else if (kind == "face") nf = count;
      else throw Error(ErrorKind::Format, origin + ": unsupported element '" + kind + "'");
    } else if (tok == "property") {
      std::string type = reader.next("property type");
      if (type == "list") {
        reader.next("list count type");
        reader.next("list value type");
        reader.next("property name");
      } else {
        std::string name = reader.next("property name");
        if (name == "x" || name == "y" || name == "z") ++coords_seen;
        else
          throw Error(ErrorKind::Format,
                      origin + ": unsupported vertex property '" + name + "'");
      }
    } else if (tok != "ply") {
      throw Error(ErrorKind::Format, origin + ": unexpected header token '" + tok + "'");
    }
  }
  if (nv < 0 || nf < 0 || coords_seen < 3)
    throw Error(ErrorKind::Format, origin + ": incomplete PLY header");

  TriMesh mesh;
  mesh.vertices.reserve(static_cast<size_t>(nv));
  for (long i = 0; i < nv; ++i) {
    double x = reader.next_double("vertex coordinate");
    double y = reader.next_double("vertex coordinate");
    double z = reader.next_double("vertex coordinate");
    mesh.vertices.emplace_back(x, y, z);
  }
  for (long i = 0; i < nf; ++i) {
    long arity = reader.next_int("face vertex count");
    if (arity != 3)
      throw Error(ErrorKind::Format, origin + ": only triangle faces are supported");
    std::array<int, 3> tri{};
    for (int k = 0; k < 3; ++k) tri[static_cast<size_t>(k)] = static_cast<int>(reader.next_int("vertex index"));
    mesh.triangles.push_back(tri);
  }
  return mesh;
}

bool compute_watertight(const TriMesh& mesh) {
  // Closed orientable surface: every directed edge appears exactly once and
  // its reverse exactly once.
  std::map<std::pair<int, int>, int> directed;
  for (const auto& t : mesh.triangles) {
    for (int k = 0; k < 3; ++k) {
      int a = t[static_cast<size_t>(k)];
      int b = t[static_cast<size_t>((k + 1) % 3)];
      if (++directed[{a, b}] > 1) return false;
    }
  }
  for (const auto& [edge, count] : directed) {
    auto rev = directed.find({edge.second, edge.first});
    if (rev == directed.end() || rev->second != 1) return false;
  }
  return !mesh.triangles.empty();
}

}  // namespace

void finalize_mesh(TriMesh& mesh, const std::string& origin) {
  const int nv = static_cast<int>(mesh.vertices.size());
  for (size_t i = 0; i < mesh.triangles.size(); ++i) {
    for (int v : mesh.triangles[i]) {
      if (v < 0 || v >= nv)
        throw Error(ErrorKind::Format,
                    origin + ": triangle " + std::to_string(i) + " references vertex " +
                        std::to_string(v) + " of " + std::to_string(nv));
    }
  }
  for (const auto& v : mesh.vertices) {
    if (!v.allFinite())
      throw Error(ErrorKind::Format, origin + ": non-finite vertex coordinate");
  }

  std::vector<std::array<int, 3>> kept;
  kept.reserve(mesh.triangles.size());
  for (size_t i = 0; i < mesh.triangles.size(); ++i) {
    if (mesh.triangle_area(static_cast<int>(i)) > kAreaTol) kept.push_back(mesh.triangles[i]);
  }
  mesh.triangles = std::move(kept);

  if (mesh.vertices.size() < 4 || mesh.triangles.empty())
    throw Error(ErrorKind::DegenerateMesh, origin + ": fewer than 4 usable vertices");
  {
    // Need four non-coplanar vertices somewhere in the cloud.
    const Vector3d& a = mesh.vertices[0];
    bool noncoplanar = false;
    Vector3d e1 = Vector3d::Zero(), e2 = Vector3d::Zero();
    bool have_e1 = false, have_e2 = false;
    for (size_t i = 1; i < mesh.vertices.size() && !noncoplanar; ++i) {
      Vector3d d = mesh.vertices[i] - a;
      if (!have_e1) {
        if (d.norm() > 1e-12) { e1 = d; have_e1 = true; }
      } else if (!have_e2) {
        if (e1.cross(d).norm() > 1e-12) { e2 = d; have_e2 = true; }
      } else if (std::abs(e1.cross(e2).normalized().dot(d)) > 1e-9) {
        noncoplanar = true;
      }
    }
    if (!noncoplanar)
      throw Error(ErrorKind::DegenerateMesh, origin + ": vertices are coplanar");
  }

  mesh.watertight = compute_watertight(mesh);
  if (mesh.watertight) {
    // Uniform density: signed tetrahedra against the origin.
    double volume = 0.0;
    Vector3d weighted = Vector3d::Zero();
    for (const auto& t : mesh.triangles) {
      const Vector3d& v0 = mesh.vertices[static_cast<size_t>(t[0])];
      const Vector3d& v1 = mesh.vertices[static_cast<size_t>(t[1])];
      const Vector3d& v2 = mesh.vertices[static_cast<size_t>(t[2])];
      double v = v0.dot(v1.cross(v2)) / 6.0;
      volume += v;
      weighted += v * (v0 + v1 + v2) / 4.0;
    }
    if (std::abs(volume) > 1e-12) {
      mesh.center_of_mass = weighted / volume;
    } else {
      mesh.watertight = false;
    }
  }
  if (!mesh.watertight) {
    Vector3d centroid = Vector3d::Zero();
    for (const auto& v : mesh.vertices) centroid += v;
    mesh.center_of_mass = centroid / static_cast<double>(mesh.vertices.size());
  }

  mesh.max_surface_radius = 0.0;
  for (const auto& v : mesh.vertices)
    mesh.max_surface_radius = std::max(mesh.max_surface_radius, (v - mesh.center_of_mass).norm());
}

TriMesh parse_mesh(const std::string& content, const std::string& origin) {
  TokenReader reader(tokenize(content), origin);
  std::string magic = reader.next("format magic");
  TriMesh mesh;
  if (magic == "OFF") {
    mesh = parse_off(reader, origin);
  } else if (magic == "ply") {
    mesh = parse_ply(reader, origin);
  } else {
    throw Error(ErrorKind::Format, origin + ": unrecognized mesh format '" + magic + "'");
  }
  finalize_mesh(mesh, origin);
  return mesh;
}

TriMesh load_mesh(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_mesh(buffer.str(), path);
}

TriMesh TriMesh::transformed(const Pose& pose) const {
  TriMesh out = *this;
  for (auto& v : out.vertices) v = pose.apply(v);
  out.center_of_mass = pose.apply(center_of_mass);
  return out;
}

TriMesh make_box_mesh(const Vector3d& size, const Vector3d& center) {
  const Vector3d h = size / 2.0;
  TriMesh mesh;
  for (int i = 0; i < 8; ++i) {
    mesh.vertices.emplace_back(center.x() + ((i & 1) ? h.x() : -h.x()),
                               center.y() + ((i & 2) ? h.y() : -h.y()),
                               center.z() + ((i & 4) ? h.z() : -h.z()));
  }
  // Outward-facing winding per face.
  const int faces[6][4] = {
      {0, 2, 3, 1},  // -z
      {4, 5, 7, 6},  // +z
      {0, 1, 5, 4},  // -y
      {2, 6, 7, 3},  // +y
      {0, 4, 6, 2},  // -x
      {1, 3, 7, 5},  // +x
  };
  for (const auto& f : faces) {
    mesh.triangles.push_back({f[0], f[1], f[2]});
    mesh.triangles.push_back({f[0], f[2], f[3]});
  }
  finalize_mesh(mesh, "box");
  return mesh;
}

TriMesh make_sphere_mesh(double radius, int rings, int segments, const Vector3d& center) {
  TriMesh mesh;
  mesh.vertices.emplace_back(center + Vector3d(0, 0, radius));
  for (int r = 1; r < rings; ++r) {
    double phi = M_PI * r / rings;
    for (int s = 0; s < segments; ++s) {
      double theta = 2.0 * M_PI * s / segments;
      mesh.vertices.emplace_back(center + radius * Vector3d(std::sin(phi) * std::cos(theta),
                                                            std::sin(phi) * std::sin(theta),
                                                            std::cos(phi)));
    }
  }
  mesh.vertices.emplace_back(center + Vector3d(0, 0, -radius));
  const int top = 0;
  const int bottom = static_cast<int>(mesh.vertices.size()) - 1;
  auto ring_vertex = [&](int r, int s) { return 1 + (r - 1) * segments + (s % segments); };
  for (int s = 0; s < segments; ++s)
    mesh.triangles.push_back({top, ring_vertex(1, s), ring_vertex(1, s + 1)});
  for (int r = 1; r + 1 < rings; ++r) {
    for (int s = 0; s < segments; ++s) {
      int a = ring_vertex(r, s), b = ring_vertex(r, s + 1);
      int c = ring_vertex(r + 1, s), d = ring_vertex(r + 1, s + 1);
      mesh.triangles.push_back({a, c, d});
      mesh.triangles.push_back({a, d, b});
    }
  }
  for (int s = 0; s < segments; ++s)
    mesh.triangles.push_back({bottom, ring_vertex(rings - 1, s + 1), ring_vertex(rings - 1, s)});
  finalize_mesh(mesh, "sphere");
  return mesh;
}

}  // namespace graspa
