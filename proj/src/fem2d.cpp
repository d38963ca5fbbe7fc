#include "quasihelm/fem2d.hpp"

#include <cmath>

namespace quasihelm {

PeriodicTriMesh PeriodicTriMesh::unit_cell(int m) {
  if (m < 2) throw ConfigError("unit-cell mesh needs m >= 2");
  return PeriodicTriMesh{m};
}

std::vector<std::pair<int, int>> PeriodicTriMesh::identification_pairs_y1() const {
  std::vector<std::pair<int, int>> pairs;
  for (int j = 0; j <= m; ++j)
    pairs.emplace_back(j * (m + 1) + 0, j * (m + 1) + m);
  return pairs;
}

std::vector<std::pair<int, int>> PeriodicTriMesh::identification_pairs_y2() const {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i <= m; ++i) pairs.emplace_back(i, m * (m + 1) + i);
  return pairs;
}

namespace {

// Degree-2 rule on the reference triangle (edge midpoints, weight 1/3).
constexpr double kTriPoints[3][2] = {{0.5, 0.0}, {0.5, 0.5}, {0.0, 0.5}};
constexpr double kTriWeight = 1.0 / 3.0;

struct TriangleRef {
  // Vertex grid offsets and P1 gradients in local (u, v) coordinates.
  int di[3], dj[3];
  double grad[3][2];
};

// Lower triangle (A, B, C) and upper triangle (A, C, D) of each square,
// A = (i, j), B = (i+1, j), C = (i+1, j+1), D = (i, j+1).
const TriangleRef kLower = {{0, 1, 1}, {0, 0, 1}, {{-1, 0}, {1, -1}, {0, 1}}};
const TriangleRef kUpper = {{0, 1, 0}, {0, 1, 1}, {{0, -1}, {1, 0}, {-1, 1}}};

}  // namespace

SparseCMatrix assemble_directional_helmholtz_2d(const PeriodicCoefficient2D& mu,
                                                const PeriodicCoefficient2D& rho,
                                                const CutVector& theta,
                                                const Frequency& omega,
                                                const PeriodicTriMesh& mesh) {
  const int m = mesh.m;
  const double h = mesh.h();
  const double area = 0.5 * h * h;
  const Complex w2 = omega.omega_sq();

  std::vector<Eigen::Triplet<Complex>> triplets;
  triplets.reserve(std::size_t(mesh.num_triangles()) * 9);

  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < m; ++i) {
      for (const TriangleRef* tri : {&kLower, &kUpper}) {
        int dofs[3];
        double vx[3], vy[3];
        double dtheta[3];
        for (int a = 0; a < 3; ++a) {
          int ia = i + tri->di[a], ja = j + tri->dj[a];
          dofs[a] = mesh.dof(ia, ja);
          vx[a] = double(ia) / m;
          vy[a] = double(ja) / m;
          // Physical gradient = m * local gradient.
          dtheta[a] = m * (theta.theta1 * tri->grad[a][0] +
                           theta.theta2 * tri->grad[a][1]);
        }
        Complex elem[3][3] = {};
        for (int g = 0; g < 3; ++g) {
          double u = kTriPoints[g][0], v = kTriPoints[g][1];
          double lam[3];
          if (tri == &kLower) {
            lam[0] = 1.0 - u;
            lam[1] = u - v;
            lam[2] = v;
          } else {
            lam[0] = 1.0 - v;
            lam[1] = u;
            lam[2] = v - u;
          }
          double y1 = lam[0] * vx[0] + lam[1] * vx[1] + lam[2] * vx[2];
          double y2 = lam[0] * vy[0] + lam[1] * vy[1] + lam[2] * vy[2];
          double mq = mu(y1, y2), rq = rho(y1, y2);
          if (!std::isfinite(mq) || !std::isfinite(rq))
            throw NumericalError("fem-core", "non-finite coefficient sample");
          double wq = kTriWeight * area;
          for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b)
              elem[a][b] += wq * (mq * (dtheta[b] * dtheta[a]) -
                                  rq * w2 * (lam[b] * lam[a]));
        }
        for (int a = 0; a < 3; ++a)
          for (int b = 0; b < 3; ++b)
            triplets.emplace_back(dofs[a], dofs[b], elem[a][b]);
      }
    }
  }

  SparseCMatrix A(mesh.num_identified_dofs(), mesh.num_identified_dofs());
  A.setFromTriplets(triplets.begin(), triplets.end());
  return A;
}

namespace {

struct Located {
  int dofs[3];
  double lam[3];
  double dtheta[3];  // theta . grad of each vertex function
};

Located locate_p1(const PeriodicTriMesh& mesh, const CutVector& theta, double y1,
                  double y2) {
  const int m = mesh.m;
  y1 = wrap01(y1);
  y2 = std::clamp(y2, 0.0, 1.0);
  int i = std::min(int(y1 * m), m - 1);
  int j = std::min(int(y2 * m), m - 1);
  double u = y1 * m - i, v = y2 * m - j;
  const TriangleRef& tri = (u >= v) ? kLower : kUpper;
  Located loc;
  if (u >= v) {
    loc.lam[0] = 1.0 - u;
    loc.lam[1] = u - v;
    loc.lam[2] = v;
  } else {
    loc.lam[0] = 1.0 - v;
    loc.lam[1] = u;
    loc.lam[2] = v - u;
  }
  for (int a = 0; a < 3; ++a) {
    loc.dofs[a] = mesh.dof(i + tri.di[a], j + tri.dj[a]);
    loc.dtheta[a] =
        m * (theta.theta1 * tri.grad[a][0] + theta.theta2 * tri.grad[a][1]);
  }
  return loc;
}

}  // namespace

Complex evaluate_p1(const PeriodicTriMesh& mesh, const CVector& coeffs, double y1,
                    double y2) {
  Located loc = locate_p1(mesh, CutVector(1.0, 1.0), y1, y2);
  Complex v = 0.0;
  for (int a = 0; a < 3; ++a) v += coeffs[loc.dofs[a]] * loc.lam[a];
  return v;
}

Complex evaluate_p1_dtheta(const PeriodicTriMesh& mesh, const CVector& coeffs,
                           const CutVector& theta, double y1, double y2) {
  Located loc = locate_p1(mesh, theta, y1, y2);
  Complex v = 0.0;
  for (int a = 0; a < 3; ++a) v += coeffs[loc.dofs[a]] * loc.dtheta[a];
  return v;
}

}  // namespace quasihelm
