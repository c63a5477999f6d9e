#include "sdcluster/anisotropy.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sdcluster {

namespace {

// Pads a d x d block into a Mat3 whose unused diagonal entries are 1, so
// inverses and quadratic forms restricted to the d-block stay exact.
Mat3 pad_identity(const Mat3& m, int dim) {
  Mat3 out = Mat3::Identity();
  out.topLeftCorner(dim, dim) = m.topLeftCorner(dim, dim);
  return out;
}

}  // namespace

Anisotropy::Anisotropy(int dim, double r, std::vector<Mat3> matrices)
    : dim_(dim), r_(r), g_(std::move(matrices)) {
  if (dim_ != 2 && dim_ != 3) throw std::invalid_argument("anisotropy dimension must be 2 or 3");
  if (r_ < 1.0) throw std::invalid_argument("anisotropy exponent must satisfy r >= 1");
  if (g_.empty()) throw std::invalid_argument("anisotropy needs at least one matrix");
  gt_.reserve(g_.size());
  for (auto& g : g_) {
    g = pad_identity(g, dim_);
    const auto block = g.topLeftCorner(dim_, dim_);
    if ((block - block.transpose()).cwiseAbs().maxCoeff() > 1e-14)
      throw std::invalid_argument("anisotropy matrix is not symmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(block);
    if (es.eigenvalues().minCoeff() <= 0.0)
      throw std::invalid_argument("anisotropy matrix is not positive definite");
    const double det = block.determinant();
    Mat3 gt = Mat3::Identity();
    gt.topLeftCorner(dim_, dim_) =
        std::pow(det, 1.0 / (dim_ - 1)) * block.inverse();
    gt_.push_back(gt);
  }
}

double Anisotropy::gamma_l(int l, const Vec3& p) const {
  return std::sqrt(p.dot(g_[l] * p));
}

double Anisotropy::gamma(const Vec3& p) const {
  const double norm = p.norm();
  if (!(norm > 0.0)) throw std::domain_error("gamma evaluated at the zero vector");
  if (g_.size() == 1) return gamma_l(0, p);
  // Evaluate on the unit vector so large exponents stay in range.
  const Vec3 q = p / norm;
  double s = 0.0;
  for (int l = 0; l < num_terms(); ++l) s += std::pow(gamma_l(l, q), r_);
  return norm * std::pow(s, 1.0 / r_);
}

Vec3 Anisotropy::gamma_grad(const Vec3& p) const {
  if (!(p.norm() > 0.0)) throw std::domain_error("gamma' evaluated at the zero vector");
  // Zero-homogeneous; normalize first so large r stays in range.
  const Vec3 q = p / p.norm();
  const double gam = gamma(q);
  Vec3 grad = Vec3::Zero();
  for (int l = 0; l < num_terms(); ++l) {
    const double gl = gamma_l(l, q);
    const double ratio = std::max(gl / gam, 1e-300);
    grad += std::pow(ratio, r_ - 1.0) * (g_[l] * q) / gl;
  }
  return grad;
}

std::vector<double> Anisotropy::term_weights(const Vec3& p) const {
  if (!(p.norm() > 0.0)) throw std::domain_error("weights evaluated at the zero vector");
  std::vector<double> w(g_.size(), 1.0);
  if (r_ == 1.0) return w;
  const Vec3 q = p / p.norm();
  const double gam = gamma(q);
  for (int l = 0; l < num_terms(); ++l) {
    const double ratio = std::max(gamma_l(l, q) / gam, 1e-300);
    w[l] = std::pow(ratio, r_ - 1.0);
  }
  return w;
}

bool Anisotropy::is_isotropic() const {
  if (g_.size() != 1) return false;
  return (g_[0] - Mat3::Identity()).cwiseAbs().maxCoeff() == 0.0;
}

Anisotropy make_cusp_anisotropy(int dim, double r, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("cusp anisotropy needs 0 < eps < 1");
  std::vector<Mat3> mats;
  for (int l = 0; l < dim; ++l) {
    Mat3 g = Mat3::Identity() * (eps * eps);
    g(l, l) = 1.0;
    mats.push_back(g);
  }
  return Anisotropy(dim, r, std::move(mats));
}

Anisotropy make_rotation_anisotropy_2d(int num_terms, double eps) {
  if (num_terms < 1) throw std::invalid_argument("rotation anisotropy needs L >= 1");
  if (!(eps > 0.0 && eps < 1.0))
    throw std::invalid_argument("rotation anisotropy needs 0 < eps < 1");
  std::vector<Mat3> mats;
  for (int l = 0; l < num_terms; ++l) {
    const double theta = l * std::numbers::pi / num_terms;
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    // clockwise rotation R(theta) = [[c, s], [-s, c]]
    Eigen::Matrix2d rot;
    rot << c, s, -s, c;
    Eigen::Matrix2d diag = Eigen::Matrix2d::Zero();
    diag(0, 0) = 1.0;
    diag(1, 1) = eps * eps;
    const Eigen::Matrix2d g2 = rot.transpose() * diag * rot;
    Mat3 g = Mat3::Identity();
    g.topLeftCorner(2, 2) = g2;
    mats.push_back(g);
  }
  return Anisotropy(2, 1.0, std::move(mats));
}

Anisotropy make_isotropic_anisotropy(int dim) {
  return Anisotropy(dim, 1.0, {Mat3::Identity()});
}

std::vector<Vec3> gtilde_tangent_basis(const std::vector<Vec3>& edges, const Mat3& gtilde,
                                       int dim) {
  if (static_cast<int>(edges.size()) != dim - 1)
    throw std::invalid_argument("expected d-1 element edges");
  std::vector<Vec3> work = edges;
  // Pivot from the longest edge.
  if (dim == 3 && work[1].norm() > work[0].norm()) std::swap(work[0], work[1]);
  std::vector<Vec3> basis;
  for (const Vec3& e : work) {
    Vec3 t = e;
    for (const Vec3& b : basis) t -= b.dot(gtilde * t) * b;
    const double norm2 = t.dot(gtilde * t);
    if (!(norm2 > 0.0)) throw std::runtime_error("degenerate simplex");
    basis.push_back(t / std::sqrt(norm2));
  }
  return basis;
}

}  // namespace sdcluster
