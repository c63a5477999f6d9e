#pragma once

#include "sdcluster/types.hpp"

#include <vector>

namespace sdcluster {

/// Orientation-dependent surface energy density of the form
///   gamma(p) = (sum_l gamma_l(p)^r)^(1/r),  gamma_l(p) = sqrt(p . G_l p),
/// with symmetric positive definite matrices G_l. The derived matrices
/// Gt_l = det(G_l)^(1/(d-1)) G_l^{-1} are precomputed; they induce the
/// inner products used by the anisotropic surface gradient calculus.
class Anisotropy {
 public:
  Anisotropy() = default;
  Anisotropy(int dim, double r, std::vector<Mat3> matrices);

  int dim() const { return dim_; }
  double exponent() const { return r_; }
  int num_terms() const { return static_cast<int>(g_.size()); }
  const Mat3& g(int l) const { return g_[l]; }
  const Mat3& gtilde(int l) const { return gt_[l]; }

  /// gamma_l(p); p need not be unit length.
  double gamma_l(int l, const Vec3& p) const;
  /// gamma(p). Throws std::domain_error for p = 0.
  double gamma(const Vec3& p) const;
  /// gamma'(p) = sum_l (gamma_l/gamma)^(r-1) G_l p / gamma_l. Zero-homogeneous.
  Vec3 gamma_grad(const Vec3& p) const;
  /// The lagged weights [gamma_l(p)/gamma(p)]^(r-1), evaluated on p/|p|.
  std::vector<double> term_weights(const Vec3& p) const;

  bool is_isotropic() const;

 private:
  int dim_ = 0;
  double r_ = 1.0;
  std::vector<Mat3> g_;
  std::vector<Mat3> gt_;
};

/// gamma(p) = (sum_{l=1..d} [(1-eps^2) p_l^2 + eps^2 |p|^2]^(r/2))^(1/r),
/// i.e. G_l = (1-eps^2) e_l e_l^T + eps^2 Id. A smooth regularization of the
/// l^1 norm for r = 1; nearly octahedral for large r and small eps (d = 3).
Anisotropy make_cusp_anisotropy(int dim, double r, double eps);

/// 2d family G_l = R(-theta_l) diag(1, eps^2) R(theta_l), theta_l = (l-1)pi/L,
/// with r = 1 and R a clockwise rotation. L = 2 coincides with the d = 2,
/// r = 1 cusp family.
Anisotropy make_rotation_anisotropy_2d(int num_terms, double eps);

/// L = 1, r = 1, G = Id, so gamma(p) = |p|.
Anisotropy make_isotropic_anisotropy(int dim);

/// G-orthonormal tangent frame of a mesh element: d-1 vectors t_j spanning
/// the element's tangent plane with t_j . Gt t_k = delta_jk. Gram-Schmidt on
/// the element edges, starting from the longest one. `edges` are the d-1
/// edge vectors emanating from the element's first vertex.
/// Throws std::runtime_error for a degenerate element.
std::vector<Vec3> gtilde_tangent_basis(const std::vector<Vec3>& edges, const Mat3& gtilde,
                                       int dim);

}  // namespace sdcluster
