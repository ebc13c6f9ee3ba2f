#include "wlab/trimesh.hpp"

#include <Eigen/Geometry>

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "wlab/parallel.hpp"

namespace wlab {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

int TriMesh::euler_characteristic() const {
  std::map<std::pair<int, int>, int> edges;
  for (const auto& f : F)
    for (int k = 0; k < 3; ++k) {
      int a = f[k], b = f[(k + 1) % 3];
      if (a > b) std::swap(a, b);
      edges[{a, b}]++;
    }
  return static_cast<int>(V.size()) - static_cast<int>(edges.size()) + static_cast<int>(F.size());
}

bool TriMesh::is_closed_manifold() const {
  std::map<std::pair<int, int>, int> directed;
  for (const auto& f : F)
    for (int k = 0; k < 3; ++k) {
      const int a = f[k], b = f[(k + 1) % 3];
      if (a == b) return false;
      if (++directed[{a, b}] > 1) return false; // orientation consistency
    }
  for (const auto& [e, n] : directed)
    if (directed.find({e.second, e.first}) == directed.end()) return false;
  return true;
}

double TriMesh::min_edge_length() const {
  double m = 1e300;
  for (const auto& f : F)
    for (int k = 0; k < 3; ++k) m = std::min(m, (V[f[k]] - V[f[(k + 1) % 3]]).norm());
  return m;
}

double TriMesh::min_angle() const {
  double m = kPi;
  for (const auto& f : F)
    for (int k = 0; k < 3; ++k) {
      const Vec3 a = V[f[(k + 1) % 3]] - V[f[k]];
      const Vec3 b = V[f[(k + 2) % 3]] - V[f[k]];
      m = std::min(m, std::atan2(a.cross(b).norm(), a.dot(b)));
    }
  return m;
}

double TriMesh::diameter() const {
  Vec3 lo = V[0], hi = V[0];
  for (const auto& v : V) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
  return (hi - lo).norm();
}

VertexGeometry discrete_geometry(const TriMesh& mesh) {
  const std::size_t n = mesh.V.size();
  VertexGeometry g;
  g.area.assign(n, 0.0);
  g.H.assign(n, 0.0);
  g.K.assign(n, 0.0);
  g.a_norm.assign(n, 0.0);
  g.normal.assign(n, Vec3::Zero());
  g.laplace_f.assign(n, Vec3::Zero());
  std::vector<double> defect(n, 2.0 * kPi);
  std::vector<Vec3> lf(n, Vec3::Zero());

  for (const auto& f : mesh.F) {
    const Vec3& p0 = mesh.V[f[0]];
    const Vec3& p1 = mesh.V[f[1]];
    const Vec3& p2 = mesh.V[f[2]];
    const Vec3 e0 = p2 - p1, e1 = p0 - p2, e2 = p1 - p0;
    const Vec3 fn = e2.cross(-e1); // (p1-p0) x (p2-p0), outward for ccw
    const double fa2 = fn.norm();
    if (fa2 <= 0.0) fail(errc::degenerate_triangle, "zero-area face");

    // corner angles and cotangents
    double ang[3], cot[3];
    const Vec3* e[3] = {&e0, &e1, &e2};
    for (int k = 0; k < 3; ++k) {
      const Vec3 a = -*e[(k + 1) % 3], b = *e[(k + 2) % 3];
      ang[k] = std::atan2(a.cross(b).norm(), a.dot(b));
      cot[k] = a.dot(b) / a.cross(b).norm();
    }
    // mixed areas (Meyer et al.): Voronoi unless obtuse
    const double area = 0.5 * fa2;
    const bool obtuse = ang[0] > 0.5 * kPi || ang[1] > 0.5 * kPi || ang[2] > 0.5 * kPi;
    for (int k = 0; k < 3; ++k) {
      double am;
      if (!obtuse) {
        const double l1 = e[(k + 1) % 3]->squaredNorm();
        const double l2 = e[(k + 2) % 3]->squaredNorm();
        am = 0.125 * (l1 * cot[(k + 1) % 3] + l2 * cot[(k + 2) % 3]);
      } else {
        am = (ang[k] > 0.5 * kPi) ? 0.5 * area : 0.25 * area;
      }
      g.area[f[k]] += am;
      defect[f[k]] -= ang[k];
      g.normal[f[k]] += ang[k] * fn.normalized();
    }
    // cotan Laplacian of position
    for (int k = 0; k < 3; ++k) {
      const int i = f[(k + 1) % 3], j = f[(k + 2) % 3];
      const double w = 0.5 * cot[k];
      lf[i] += w * (mesh.V[i] - mesh.V[j]);
      lf[j] += w * (mesh.V[j] - mesh.V[i]);
    }
  }

  std::vector<double> h2a(n), ka(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(g.area[i] > 0.0)) fail(errc::degenerate_triangle, "vanishing vertex area");
    g.normal[i].normalize();
    g.laplace_f[i] = lf[i] / g.area[i];
    const double mag = 0.5 * g.laplace_f[i].norm();
    const double sign = g.laplace_f[i].dot(g.normal[i]) >= 0.0 ? 1.0 : -1.0;
    g.H[i] = sign * mag;
    g.K[i] = defect[i] / g.area[i];
    g.a_norm[i] = std::sqrt(std::max(0.0, 4.0 * g.H[i] * g.H[i] - 2.0 * g.K[i]));
    if (g.a_norm[i] > g.max_a) {
      g.max_a = g.a_norm[i];
      g.argmax_a = static_cast<int>(i);
    }
    h2a[i] = g.H[i] * g.H[i] * g.area[i];
    ka[i] = defect[i];
  }
  g.willmore = par::pairwise_sum(h2a);
  g.total_defect = par::pairwise_sum(ka);
  return g;
}

std::vector<double> cotan_laplacian(const TriMesh& mesh, const std::vector<double>& area,
                                    const std::vector<double>& x) {
  std::vector<double> out(mesh.V.size(), 0.0);
  for (const auto& f : mesh.F) {
    for (int k = 0; k < 3; ++k) {
      const int i = f[(k + 1) % 3], j = f[(k + 2) % 3];
      const Vec3 u = mesh.V[i] - mesh.V[f[k]];
      const Vec3 v = mesh.V[j] - mesh.V[f[k]];
      const double w = 0.5 * u.dot(v) / u.cross(v).norm();
      out[i] += w * (x[i] - x[j]);
      out[j] += w * (x[j] - x[i]);
    }
  }
  for (std::size_t i = 0; i < out.size(); ++i) out[i] /= area[i];
  return out;
}

// --- generators ---------------------------------------------------------------

TriMesh icosphere(int subdivisions, double radius) {
  const double t = (1.0 + std::sqrt(5.0)) / 2.0;
  TriMesh m;
  m.V = {{-1, t, 0}, {1, t, 0},  {-1, -t, 0}, {1, -t, 0}, {0, -1, t}, {0, 1, t},
         {0, -1, -t}, {0, 1, -t}, {t, 0, -1},  {t, 0, 1},  {-t, 0, -1}, {-t, 0, 1}};
  m.F = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11}, {1, 5, 9},
         {5, 11, 4}, {11, 10, 2}, {10, 7, 6},  {7, 1, 8},  {3, 9, 4},   {3, 4, 2},
         {3, 2, 6},  {3, 6, 8},  {3, 8, 9},   {4, 9, 5},  {2, 4, 11},  {6, 2, 10},
         {8, 6, 7},  {9, 8, 1}};
  for (auto& v : m.V) v.normalize();

  for (int s = 0; s < subdivisions; ++s) {
    std::map<std::pair<int, int>, int> mid;
    auto midpoint = [&](int a, int b) {
      const auto key = std::minmax(a, b);
      auto it = mid.find(key);
      if (it != mid.end()) return it->second;
      const int idx = static_cast<int>(m.V.size());
      m.V.push_back((m.V[a] + m.V[b]).normalized());
      mid[key] = idx;
      return idx;
    };
    std::vector<std::array<int, 3>> faces;
    faces.reserve(m.F.size() * 4);
    for (const auto& f : m.F) {
      const int a = midpoint(f[0], f[1]);
      const int b = midpoint(f[1], f[2]);
      const int c = midpoint(f[2], f[0]);
      faces.push_back({f[0], a, c});
      faces.push_back({f[1], b, a});
      faces.push_back({f[2], c, b});
      faces.push_back({a, b, c});
    }
    m.F = std::move(faces);
  }
  for (auto& v : m.V) v *= radius;
  return m;
}

TriMesh perturbed_icosphere(int subdivisions, double eps) {
  TriMesh m = icosphere(subdivisions, 1.0);
  // fixed low-order harmonic mix, normalized to max amplitude one
  auto bump = [](const Vec3& v) {
    return (v.x() * v.x() - v.y() * v.y()) + 0.7 * v.x() * v.z() + 0.4 * (3.0 * v.z() * v.z() - 1.0) / 2.0;
  };
  double peak = 0.0;
  for (const auto& v : m.V) peak = std::max(peak, std::abs(bump(v)));
  for (auto& v : m.V) v *= 1.0 + eps * bump(v) / peak;
  return m;
}

TriMesh revolve_closed(const std::function<double(double)>& rho,
                       const std::function<double(double)>& height, int nt, int nphi) {
  TriMesh m;
  // interior rings t = i/nt for i in 1..nt-1, plus two pole vertices
  for (int i = 1; i < nt; ++i) {
    const double t = static_cast<double>(i) / nt;
    for (int j = 0; j < nphi; ++j) {
      const double ph = 2.0 * kPi * j / nphi;
      m.V.emplace_back(rho(t) * std::cos(ph), rho(t) * std::sin(ph), height(t));
    }
  }
  const int south = static_cast<int>(m.V.size());
  m.V.emplace_back(0.0, 0.0, height(0.0));
  const int north = static_cast<int>(m.V.size());
  m.V.emplace_back(0.0, 0.0, height(1.0));

  auto ring = [&](int i, int j) { return (i - 1) * nphi + (j % nphi); };
  for (int j = 0; j < nphi; ++j) m.F.push_back({south, ring(1, j + 1), ring(1, j)});
  for (int i = 1; i < nt - 1; ++i)
    for (int j = 0; j < nphi; ++j) {
      m.F.push_back({ring(i, j), ring(i, j + 1), ring(i + 1, j)});
      m.F.push_back({ring(i + 1, j), ring(i, j + 1), ring(i + 1, j + 1)});
    }
  for (int j = 0; j < nphi; ++j) m.F.push_back({north, ring(nt - 1, j), ring(nt - 1, j + 1)});
  return m;
}

TriMesh dumbbell(double neck, int nt, int nphi) {
  return revolve_closed(
      [neck](double t) {
        const double base = std::sin(kPi * t);
        const double pinch = 1.0 - (1.0 - neck) * std::exp(-18.0 * (t - 0.5) * (t - 0.5));
        return base * pinch;
      },
      [](double t) { return 2.4 * (t - 0.5); }, nt, nphi);
}

TriMesh catenoid_patch(double scale, double vmax, int nu, int nv) {
  TriMesh m;
  for (int i = 0; i <= nv; ++i) {
    const double v = -vmax + 2.0 * vmax * i / nv;
    for (int j = 0; j < nu; ++j) {
      const double u = 2.0 * kPi * j / nu;
      m.V.emplace_back(scale * std::cosh(v) * std::cos(u), scale * std::cosh(v) * std::sin(u),
                       scale * v);
    }
  }
  auto idx = [&](int i, int j) { return i * nu + (j % nu); };
  for (int i = 0; i < nv; ++i)
    for (int j = 0; j < nu; ++j) {
      m.F.push_back({idx(i, j), idx(i, j + 1), idx(i + 1, j)});
      m.F.push_back({idx(i + 1, j), idx(i, j + 1), idx(i + 1, j + 1)});
    }
  return m;
}

void write_obj(const std::string& path, const TriMesh& mesh) {
  std::ofstream out(path);
  if (!out) fail(errc::io_error, "cannot open " + path + " for writing");
  out.precision(17);
  for (const auto& v : mesh.V) out << "v " << v.x() << " " << v.y() << " " << v.z() << "\n";
  for (const auto& f : mesh.F) out << "f " << f[0] + 1 << " " << f[1] + 1 << " " << f[2] + 1 << "\n";
}

TriMesh read_obj(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::io_error, "cannot open " + path);
  TriMesh m;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ss(line);
    std::string tag;
    ss >> tag;
    if (tag == "v") {
      double x, y, z;
      ss >> x >> y >> z;
      m.V.emplace_back(x, y, z);
    } else if (tag == "f") {
      std::array<int, 3> f{};
      for (int k = 0; k < 3; ++k) {
        std::string tok;
        ss >> tok;
        f[k] = std::stoi(tok.substr(0, tok.find('/'))) - 1;
      }
      m.F.push_back(f);
    }
  }
  return m;
}

} // namespace wlab
