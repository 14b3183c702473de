#include <doctest.h>

#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "nilcat/mesh.hpp"

using namespace nilcat;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "nilcat_mesh_tests";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

Mesh ring(int nu, int nv) {
  std::vector<Vec3> v;
  for (int i = 0; i < nu; ++i)
    for (int j = 0; j < nv; ++j) {
      const double a = 2 * M_PI * i / nu;
      v.emplace_back(std::cos(a) * (1 + 0.1 * j), std::sin(a) / 3.0, 0.1 * j + 1e-17 * i);
    }
  return cylinder_mesh(v, nu, nv);
}

}  // namespace

TEST_CASE("annulus topology") {
  const auto m = ring(16, 5);
  CHECK(euler_characteristic(m) == 0);
  CHECK(boundary_loop_count(m) == 2);
  CHECK(max_edge_valence(m) == 2);
}

TEST_CASE("one-quad OBJ") {
  Mesh m;
  m.vertices = {Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(1, 1, 0), Vec3(0, 1, 0)};
  m.faces = {{0, 1, 2}, {0, 2, 3}};
  const auto p = scratch("quad.obj");
  write_obj(m, p);
  const auto text = slurp(p);
  int nv = 0, nf = 0;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    nv += line.rfind("v ", 0) == 0;
    nf += line.rfind("f ", 0) == 0;
  }
  CHECK(nv == 4);
  CHECK(nf == 2);
  CHECK(text.find("f 1 2 3\n") != std::string::npos);
  CHECK(!fs::exists(p.string() + ".tmp"));
}

TEST_CASE("PLY round trip is bit exact and vertex counts agree across formats") {
  const auto m = ring(20, 4);
  const auto ply = scratch("ring.ply");
  const auto obj = scratch("ring.obj");
  write_mesh(m, MeshFormat::ply, ply);
  write_mesh(m, MeshFormat::obj, obj);
  const auto back = read_ply(ply);
  REQUIRE(back.vertices.size() == m.vertices.size());
  CHECK(std::memcmp(back.vertices.data(), m.vertices.data(),
                    m.vertices.size() * sizeof(Vec3)) == 0);
  CHECK(back.faces == m.faces);
  const auto back_obj = read_obj(obj);
  CHECK(back_obj.vertices.size() == m.vertices.size());
  CHECK(back_obj.faces == m.faces);
  for (std::size_t i = 0; i < m.vertices.size(); ++i) CHECK(back_obj.vertices[i] == m.vertices[i]);
}

TEST_CASE("writer errors") {
  CHECK_THROWS(write_obj(Mesh{}, scratch("empty.obj")));
  CHECK_THROWS(write_obj(ring(16, 2), fs::path("/nonexistent-dir/x.obj")));
  CHECK_THROWS(mesh_format_from_string("stl"));
}
