#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <vector>

#include "nilcat/nil3.hpp"

namespace nilcat {

struct Mesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> faces;  // 0-based, counter-clockwise
};

int euler_characteristic(const Mesh& m);
// Number of closed boundary loops (edges used by exactly one face).
int boundary_loop_count(const Mesh& m);
// Largest edge count of any undirected edge; 2 for a manifold-with-boundary mesh.
int max_edge_valence(const Mesh& m);

// Structured (nu x nv) grid of vertices, index i*nv + j. Columns i wrap around
// (i = nu-1 joins i = 0); rows j are left open.
Mesh cylinder_mesh(std::vector<Vec3> vertices, int nu, int nv);

// Structured (nu x nv) grid with all four sides open.
Mesh grid_mesh(std::vector<Vec3> vertices, int nu, int nv);

enum class MeshFormat { obj, ply };
MeshFormat mesh_format_from_string(const std::string& s);

// Both writers go through a temporary file in the target directory and a rename.
void write_obj(const Mesh& m, const std::filesystem::path& path);
void write_ply(const Mesh& m, const std::filesystem::path& path);
void write_mesh(const Mesh& m, MeshFormat format, const std::filesystem::path& path);

Mesh read_obj(const std::filesystem::path& path);
Mesh read_ply(const std::filesystem::path& path);

// Writes `contents` atomically (temporary + rename).
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace nilcat
