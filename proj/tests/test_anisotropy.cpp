#include "sdcluster/anisotropy.hpp"
#include "sdcluster/assembly.hpp"
#include "sdcluster/geometry.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <cmath>
#include <random>

using namespace sdcluster;

namespace {

Anisotropy random_spd_family(std::mt19937& rng, int dim, int terms, double r) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Mat3> mats;
  for (int l = 0; l < terms; ++l) {
    Mat3 a = Mat3::Zero();
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) a(i, j) = u(rng);
    Mat3 g = Mat3::Identity();
    g.topLeftCorner(dim, dim) =
        (a.topLeftCorner(dim, dim).transpose() * a.topLeftCorner(dim, dim) +
         0.2 * Eigen::MatrixXd::Identity(dim, dim));
    mats.push_back(g);
  }
  return Anisotropy(dim, r, std::move(mats));
}

Vec3 random_dir(std::mt19937& rng, int dim) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Vec3 p = Vec3::Zero();
  do {
    for (int a = 0; a < dim; ++a) p[a] = u(rng);
  } while (p.norm() < 0.1);
  return p;
}

}  // namespace

TEST_CASE("isotropic reduction of the energy family") {
  const Anisotropy iso = make_isotropic_anisotropy(3);
  std::mt19937 rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    const Vec3 p = random_dir(rng, 3);
    CHECK(iso.gamma(p) == doctest::Approx(p.norm()).epsilon(1e-14));
    CHECK((iso.gamma_grad(p) - p / p.norm()).norm() < 1e-14);
  }
  CHECK_THROWS_AS(iso.gamma(Vec3::Zero()), std::domain_error);
}

TEST_CASE("cusp family values and derived matrices") {
  const Anisotropy cusp = make_cusp_anisotropy(3, 1.0, 0.1);
  CHECK(cusp.gamma(Vec3(1, 0, 0)) == doctest::Approx(1.2).epsilon(1e-14));
  const Mat3& g1 = cusp.g(0);
  CHECK(g1(0, 0) == doctest::Approx(1.0));
  CHECK(g1(1, 1) == doctest::Approx(0.01));
  CHECK(g1(2, 2) == doctest::Approx(0.01));
  const Mat3& gt1 = cusp.gtilde(0);
  CHECK(gt1(0, 0) == doctest::Approx(0.01).epsilon(1e-13));
  CHECK(gt1(1, 1) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(gt1(2, 2) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(std::abs(gt1(0, 1)) < 1e-15);
}

TEST_CASE("2d rotation family") {
  SUBCASE("L = 2 equals the d = 2, r = 1 cusp family") {
    const Anisotropy rot = make_rotation_anisotropy_2d(2, 0.3);
    const Anisotropy cusp = make_cusp_anisotropy(2, 1.0, 0.3);
    for (int l = 0; l < 2; ++l)
      CHECK((rot.g(l) - cusp.g(l)).cwiseAbs().maxCoeff() < 1e-15);
  }
  SUBCASE("rotated terms are symmetric with spectrum {1, eps^2}") {
    const double eps = 0.2;
    const Anisotropy rot = make_rotation_anisotropy_2d(3, eps);
    for (int l = 0; l < 3; ++l) {
      const Eigen::Matrix2d g = rot.g(l).topLeftCorner(2, 2);
      CHECK((g - g.transpose()).cwiseAbs().maxCoeff() < 1e-15);
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(g);
      CHECK(es.eigenvalues()(0) == doctest::Approx(eps * eps).epsilon(1e-12));
      CHECK(es.eigenvalues()(1) == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("one-homogeneity and the Euler identity") {
  std::mt19937 rng(5);
  std::vector<Anisotropy> families;
  families.push_back(make_cusp_anisotropy(3, 1.0, 0.1));
  families.push_back(make_cusp_anisotropy(3, 30.0, 0.1));
  families.push_back(make_rotation_anisotropy_2d(3, 0.01));
  families.push_back(random_spd_family(rng, 3, 4, 2.5));
  families.push_back(random_spd_family(rng, 2, 2, 100.0));
  for (const auto& a : families) {
    for (int trial = 0; trial < 100; ++trial) {
      const Vec3 p = random_dir(rng, a.dim());
      const double lambda = std::uniform_real_distribution<double>(0.1, 10.0)(rng);
      CHECK(a.gamma(lambda * p) == doctest::Approx(lambda * a.gamma(p)).epsilon(1e-13));
      CHECK((a.gamma_grad(lambda * p) - a.gamma_grad(p)).norm() < 1e-12);
      // Euler identity for 1-homogeneous gamma
      CHECK(a.gamma_grad(p).dot(p) == doctest::Approx(a.gamma(p)).epsilon(1e-12));
      // finite-difference oracle for the gradient
      const Vec3 e = random_dir(rng, a.dim()).normalized();
      const double h = 1e-6 * p.norm();
      const double fd = (a.gamma(p + h * e) - a.gamma(p - h * e)) / (2.0 * h);
      CHECK(a.gamma_grad(p).dot(e) == doctest::Approx(fd).epsilon(1e-5));
    }
  }
}

TEST_CASE("Gtilde tangent frames") {
  SUBCASE("identity metric in the xy plane") {
    const auto basis =
        gtilde_tangent_basis({Vec3(1, 0, 0), Vec3(0, 1, 0)}, Mat3::Identity(), 3);
    CHECK((basis[0] - Vec3(1, 0, 0)).norm() < 1e-15);
    CHECK((basis[1] - Vec3(0, 1, 0)).norm() < 1e-15);
  }
  SUBCASE("anisotropic normalization") {
    Mat3 gt = Mat3::Identity();
    gt(0, 0) = 4.0;
    const auto basis = gtilde_tangent_basis({Vec3(1, 0, 0)}, gt, 2);
    CHECK((basis[0] - Vec3(0.5, 0, 0)).norm() < 1e-15);
  }
  SUBCASE("Gram matrix equals the identity for random metrics") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
      const Anisotropy fam = random_spd_family(rng, 3, 1, 1.0);
      const Mat3& gt = fam.gtilde(0);
      Vec3 e1 = random_dir(rng, 3);
      Vec3 e2 = random_dir(rng, 3);
      if (e1.cross(e2).norm() < 0.05) continue;
      const auto basis = gtilde_tangent_basis({e1, e2}, gt, 3);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
          const double expected = i == j ? 1.0 : 0.0;
          CHECK(basis[i].dot(gt * basis[j]) == doctest::Approx(expected).epsilon(1e-12));
        }
      // frame spans the same plane as the edges
      const Vec3 n = e1.cross(e2).normalized();
      CHECK(std::abs(basis[0].dot(n)) < 1e-10);
      CHECK(std::abs(basis[1].dot(n)) < 1e-10);
    }
  }
}

TEST_CASE("anisotropic element stiffness") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  auto random_element = [&](int dim) {
    while (true) {
      Vec3 q[3] = {Vec3::Zero(), Vec3::Zero(), Vec3::Zero()};
      for (int a = 0; a < dim; ++a) {
        q[a] = Vec3(u(rng), u(rng), dim == 3 ? u(rng) : 0.0);
      }
      const ElementGeometry g = element_geometry(q, dim);
      if (!g.degenerate && g.measure > 0.05) return g;
    }
  };

  SUBCASE("isotropic reduction is exact") {
    const Anisotropy iso2 = make_isotropic_anisotropy(2);
    const Anisotropy iso3 = make_isotropic_anisotropy(3);
    for (int trial = 0; trial < 50; ++trial) {
      const int dim = trial % 2 == 0 ? 2 : 3;
      const ElementGeometry g = random_element(dim);
      const auto iso = isotropic_element_stiffness(g, 1.0);
      const auto ani =
          anisotropic_element_stiffness(g, g.normal, dim == 2 ? iso2 : iso3);
      for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b)
          CHECK((iso[a][b] - ani[a][b]).cwiseAbs().maxCoeff() <=
                1e-14 * std::max(1.0, iso[a][b].cwiseAbs().maxCoeff()));
    }
  }
  SUBCASE("r = 1 stiffness ignores the lagged normal") {
    const Anisotropy fam = make_cusp_anisotropy(3, 1.0, 0.2);
    for (int trial = 0; trial < 20; ++trial) {
      const ElementGeometry g = random_element(3);
      const Vec3 n1 = random_dir(rng, 3).normalized();
      const Vec3 n2 = random_dir(rng, 3).normalized();
      const auto b1 = anisotropic_element_stiffness(g, n1, fam);
      const auto b2 = anisotropic_element_stiffness(g, n2, fam);
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
          CHECK((b1[a][b] - b2[a][b]).cwiseAbs().maxCoeff() == 0.0);
    }
  }
  SUBCASE("invariant under even vertex relabeling") {
    const Anisotropy fam = make_cusp_anisotropy(3, 30.0, 0.1);
    for (int trial = 0; trial < 20; ++trial) {
      const ElementGeometry g = random_element(3);
      Vec3 rolled[3] = {g.coords[1], g.coords[2], g.coords[0]};
      const ElementGeometry g2 = element_geometry(rolled, 3);
      const Vec3 lag = random_dir(rng, 3).normalized();
      const auto b1 = anisotropic_element_stiffness(g, lag, fam);
      const auto b2 = anisotropic_element_stiffness(g2, lag, fam);
      const int perm[3] = {1, 2, 0};  // rolled[a] = coords[perm[a]]
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
          CHECK((b2[a][b] - b1[perm[a]][perm[b]]).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
  SUBCASE("assembled element matrix is symmetric positive semidefinite") {
    for (int trial = 0; trial < 30; ++trial) {
      const Anisotropy fam = random_spd_family(rng, 3, 3, 4.0);
      const ElementGeometry g = random_element(3);
      const Vec3 lag = random_dir(rng, 3).normalized();
      const auto blocks = anisotropic_element_stiffness(g, lag, fam);
      Eigen::MatrixXd full(9, 9);
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) full.block<3, 3>(3 * a, 3 * b) = blocks[a][b];
      CHECK((full - full.transpose()).cwiseAbs().maxCoeff() < 1e-12);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(full);
      CHECK(es.eigenvalues().minCoeff() > -1e-11);
    }
  }
}
