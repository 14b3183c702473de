#include "nilcat/mesh.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "nilcat/errors.hpp"

namespace nilcat {

namespace {

using Edge = std::pair<int, int>;

std::map<Edge, int> edge_counts(const Mesh& m) {
  std::map<Edge, int> e;
  for (const auto& f : m.faces) {
    for (int k = 0; k < 3; ++k) {
      int a = f[k], b = f[(k + 1) % 3];
      if (a > b) std::swap(a, b);
      ++e[{a, b}];
    }
  }
  return e;
}

std::filesystem::path temp_sibling(const std::filesystem::path& path) {
  auto tmp = path;
  tmp += ".tmp";
  return tmp;
}

void commit(const std::filesystem::path& tmp, const std::filesystem::path& path) {
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw std::runtime_error("cannot move output into place at " + path.string());
  }
}

std::ofstream open_out(const std::filesystem::path& p, std::ios::openmode mode) {
  std::ofstream os(p, mode);
  if (!os) throw std::runtime_error("cannot write " + p.string());
  return os;
}

}  // namespace

int euler_characteristic(const Mesh& m) {
  std::set<int> used;
  for (const auto& f : m.faces) used.insert(f.begin(), f.end());
  const auto edges = edge_counts(m);
  return static_cast<int>(used.size()) - static_cast<int>(edges.size()) +
         static_cast<int>(m.faces.size());
}

int max_edge_valence(const Mesh& m) {
  int best = 0;
  for (const auto& [e, n] : edge_counts(m)) best = std::max(best, n);
  return best;
}

int boundary_loop_count(const Mesh& m) {
  std::map<int, std::vector<int>> adj;
  for (const auto& [e, n] : edge_counts(m)) {
    if (n != 1) continue;
    adj[e.first].push_back(e.second);
    adj[e.second].push_back(e.first);
  }
  // Union-find over boundary vertices.
  std::map<int, int> parent;
  for (const auto& [v, _] : adj) parent[v] = v;
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const auto& [v, ns] : adj)
    for (int w : ns) parent[find(v)] = find(w);
  std::set<int> roots;
  for (const auto& [v, _] : adj) roots.insert(find(v));
  return static_cast<int>(roots.size());
}

Mesh cylinder_mesh(std::vector<Vec3> vertices, int nu, int nv) {
  if (static_cast<long>(vertices.size()) != static_cast<long>(nu) * nv) {
    throw std::invalid_argument("cylinder_mesh: vertex count does not match nu*nv");
  }
  Mesh m;
  m.vertices = std::move(vertices);
  auto id = [nv](int i, int j) { return i * nv + j; };
  for (int i = 0; i < nu; ++i) {
    const int i1 = (i + 1) % nu;
    for (int j = 0; j + 1 < nv; ++j) {
      m.faces.push_back({id(i, j), id(i1, j), id(i1, j + 1)});
      m.faces.push_back({id(i, j), id(i1, j + 1), id(i, j + 1)});
    }
  }
  return m;
}

Mesh grid_mesh(std::vector<Vec3> vertices, int nu, int nv) {
  if (static_cast<long>(vertices.size()) != static_cast<long>(nu) * nv) {
    throw std::invalid_argument("grid_mesh: vertex count does not match nu*nv");
  }
  Mesh m;
  m.vertices = std::move(vertices);
  auto id = [nv](int i, int j) { return i * nv + j; };
  for (int i = 0; i + 1 < nu; ++i)
    for (int j = 0; j + 1 < nv; ++j) {
      m.faces.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      m.faces.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  return m;
}

MeshFormat mesh_format_from_string(const std::string& s) {
  if (s == "obj") return MeshFormat::obj;
  if (s == "ply") return MeshFormat::ply;
  throw std::invalid_argument("unknown mesh format '" + s + "' (expected obj or ply)");
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  const auto tmp = temp_sibling(path);
  {
    auto os = open_out(tmp, std::ios::binary);
    os << contents;
    if (!os) throw std::runtime_error("write failed for " + tmp.string());
  }
  commit(tmp, path);
}

void write_obj(const Mesh& m, const std::filesystem::path& path) {
  if (m.vertices.empty()) throw std::invalid_argument("write_obj: empty mesh");
  std::string out;
  char buf[128];
  for (const auto& v : m.vertices) {
    std::snprintf(buf, sizeof buf, "v %.17g %.17g %.17g\n", v[0], v[1], v[2]);
    out += buf;
  }
  for (const auto& f : m.faces) {
    std::snprintf(buf, sizeof buf, "f %d %d %d\n", f[0] + 1, f[1] + 1, f[2] + 1);
    out += buf;
  }
  write_file_atomic(path, out);
}

void write_ply(const Mesh& m, const std::filesystem::path& path) {
  static_assert(std::endian::native == std::endian::little, "PLY writer assumes little-endian");
  if (m.vertices.empty()) throw std::invalid_argument("write_ply: empty mesh");
  std::ostringstream os(std::ios::binary);
  os << "ply\nformat binary_little_endian 1.0\n"
     << "element vertex " << m.vertices.size() << "\n"
     << "property double x\nproperty double y\nproperty double z\n"
     << "element face " << m.faces.size() << "\n"
     << "property list uchar int vertex_indices\nend_header\n";
  for (const auto& v : m.vertices) {
    const double xyz[3] = {v[0], v[1], v[2]};
    os.write(reinterpret_cast<const char*>(xyz), sizeof xyz);
  }
  for (const auto& f : m.faces) {
    const unsigned char n = 3;
    const std::int32_t idx[3] = {f[0], f[1], f[2]};
    os.write(reinterpret_cast<const char*>(&n), 1);
    os.write(reinterpret_cast<const char*>(idx), sizeof idx);
  }
  write_file_atomic(path, os.str());
}

void write_mesh(const Mesh& m, MeshFormat format, const std::filesystem::path& path) {
  format == MeshFormat::obj ? write_obj(m, path) : write_ply(m, path);
}

Mesh read_obj(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot read " + path.string());
  Mesh m;
  std::string line;
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "v") {
      Vec3 v;
      ls >> v[0] >> v[1] >> v[2];
      m.vertices.push_back(v);
    } else if (tag == "f") {
      std::array<int, 3> f;
      ls >> f[0] >> f[1] >> f[2];
      for (auto& i : f) --i;
      m.faces.push_back(f);
    }
  }
  return m;
}

Mesh read_ply(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot read " + path.string());
  std::string line;
  long nv = -1, nf = -1;
  bool binary_le = false;
  while (std::getline(is, line)) {
    if (line.rfind("format binary_little_endian", 0) == 0) binary_le = true;
    if (line.rfind("element vertex ", 0) == 0) nv = std::stol(line.substr(15));
    if (line.rfind("element face ", 0) == 0) nf = std::stol(line.substr(13));
    if (line == "end_header") break;
  }
  if (!binary_le || nv < 0 || nf < 0) throw std::runtime_error("unsupported PLY header");
  Mesh m;
  m.vertices.resize(nv);
  for (auto& v : m.vertices) {
    double xyz[3];
    is.read(reinterpret_cast<char*>(xyz), sizeof xyz);
    v = Vec3(xyz[0], xyz[1], xyz[2]);
  }
  m.faces.resize(nf);
  for (auto& f : m.faces) {
    unsigned char n = 0;
    is.read(reinterpret_cast<char*>(&n), 1);
    if (n != 3) throw std::runtime_error("PLY reader: only triangles are supported");
    std::int32_t idx[3];
    is.read(reinterpret_cast<char*>(idx), sizeof idx);
    f = {idx[0], idx[1], idx[2]};
  }
  if (!is) throw std::runtime_error("truncated PLY file " + path.string());
  return m;
}

}  // namespace nilcat
