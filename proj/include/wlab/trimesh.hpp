#pragma once

// Oriented closed triangle meshes with the discrete curvature quantities the
// flow needs: cotan mean curvature, angle-defect Gauss curvature, mixed
// vertex areas, and the discrete Willmore energy.

#include <array>
#include <string>
#include <vector>

#include "wlab/surface.hpp"

namespace wlab {

struct TriMesh {
  std::vector<Vec3> V;
  std::vector<std::array<int, 3>> F;

  int euler_characteristic() const;
  /// every undirected edge shared by exactly two faces with opposite direction
  bool is_closed_manifold() const;
  double min_edge_length() const;
  double min_angle() const; ///< radians
  double diameter() const;
};

struct VertexGeometry {
  std::vector<double> area;     ///< mixed (Voronoi-safe) vertex areas
  std::vector<double> H;        ///< signed mean curvature, H = (k1+k2)/2
  std::vector<double> K;        ///< angle defect / mixed area
  std::vector<double> a_norm;   ///< |A| = sqrt(4H^2 - 2K)
  std::vector<Vec3> normal;     ///< angle-weighted vertex normals
  std::vector<Vec3> laplace_f;  ///< (1/A) L f (the mean curvature vector, doubled)
  double willmore = 0.0;        ///< sum H^2 A
  double total_defect = 0.0;    ///< sum K A (2 pi chi exactly)
  double max_a = 0.0;
  int argmax_a = 0;
};

VertexGeometry discrete_geometry(const TriMesh& mesh);

/// cotan Laplacian applied to a scalar vertex field: out_i = (1/A_i) sum_j w_ij (x_i - x_j)
std::vector<double> cotan_laplacian(const TriMesh& mesh, const std::vector<double>& area,
                                    const std::vector<double>& x);

// --- generators ---------------------------------------------------------------

TriMesh icosphere(int subdivisions, double radius = 1.0);
/// radial perturbation by a fixed low-order spherical polynomial, max |eps|
TriMesh perturbed_icosphere(int subdivisions, double eps);
/// closed surface of revolution from a profile rho(t), t in [0,1], rho(0)=rho(1)=0
TriMesh revolve_closed(const std::function<double(double)>& rho,
                       const std::function<double(double)>& height, int nt, int nphi);
/// two bulbs joined by a neck of relative radius `neck`
TriMesh dumbbell(double neck, int nt = 48, int nphi = 32);
/// open catenoid patch |v| <= vmax, scaled by `scale`
TriMesh catenoid_patch(double scale, double vmax, int nu, int nv);

void write_obj(const std::string& path, const TriMesh& mesh);
TriMesh read_obj(const std::string& path);

} // namespace wlab
