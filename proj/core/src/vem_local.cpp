#include "fhnvem/vem_local.hpp"

#include <stdexcept>

namespace fhnvem {

Eigen::MatrixXd build_energy_projector(const PolygonGeometry& poly,
                                       const ScaledMonomialBasis& basis) {
  const int n = static_cast<int>(poly.num_vertices());
  if (!(poly.area > 0.0) || !std::isfinite(poly.area))
    throw std::invalid_argument("build_energy_projector: degenerate element");

  // B(0,i): vertex average of the hat function. B(a,i) for a = 1,2: boundary
  // integral of phi_i against the (constant) normal derivative of m_a; the
  // hat trace integrates to |e|/2 on each of its two adjacent edges.
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(3, n);
  B.row(0).setConstant(1.0 / n);
  for (int e = 0; e < n; ++e) {
    const double le = poly.edge_lengths[e];
    const Vec2 ne = poly.edge_normals[e];
    for (int alpha = 1; alpha < 3; ++alpha) {
      const double flux = 0.5 * le * ne.dot(basis.gradient(alpha));
      B(alpha, e) += flux;
      B(alpha, (e + 1) % n) += flux;
    }
  }

  // G = [[vertex averages of m], [0 | (|K|/h^2) I2]]; solve G s = B directly
  // using the arrow structure.
  const double g = poly.area / (basis.h * basis.h);
  double avg1 = 0.0, avg2 = 0.0;
  for (const Vec2& v : poly.vertices) {
    avg1 += basis.eval(1, v);
    avg2 += basis.eval(2, v);
  }
  avg1 /= n;
  avg2 /= n;

  Eigen::MatrixXd s(3, n);
  s.row(1) = B.row(1) / g;
  s.row(2) = B.row(2) / g;
  s.row(0) = B.row(0) - avg1 * s.row(1) - avg2 * s.row(2);
  return s;
}

Eigen::MatrixXd build_l2_projector(const Eigen::MatrixXd& energy_coeffs) {
  return energy_coeffs;
}

Eigen::MatrixXd build_local_stiffness(const PolygonGeometry& poly,
                                      const ScaledMonomialBasis& basis,
                                      const Eigen::MatrixXd& energy_coeffs) {
  const int n = static_cast<int>(poly.num_vertices());
  const double g = poly.area / (basis.h * basis.h);
  // consistency: s^T diag(0, g, g) s
  Eigen::MatrixXd K = g * (energy_coeffs.row(1).transpose() * energy_coeffs.row(1) +
                           energy_coeffs.row(2).transpose() * energy_coeffs.row(2));
  // stabilization: plain euclidean dof product on the projection complement
  Eigen::MatrixXd dof_values(n, 3);
  for (int i = 0; i < n; ++i) dof_values.row(i) = basis.eval_all(poly.vertices[i]).transpose();
  const Eigen::MatrixXd complement =
      Eigen::MatrixXd::Identity(n, n) - dof_values * energy_coeffs;
  K += complement.transpose() * complement;
  return K;
}

Eigen::MatrixXd build_local_mass(const PolygonGeometry& poly, const ScaledMonomialBasis& basis,
                                 const Eigen::MatrixXd& l2_coeffs,
                                 const Eigen::Matrix3d& monomial_mass) {
  const int n = static_cast<int>(poly.num_vertices());
  Eigen::MatrixXd M = l2_coeffs.transpose() * monomial_mass * l2_coeffs;
  Eigen::MatrixXd dof_values(n, 3);
  for (int i = 0; i < n; ++i) dof_values.row(i) = basis.eval_all(poly.vertices[i]).transpose();
  const Eigen::MatrixXd complement = Eigen::MatrixXd::Identity(n, n) - dof_values * l2_coeffs;
  M += (basis.h * basis.h) * complement.transpose() * complement;
  return M;
}

ElementOperators build_element_operators(const PolygonGeometry& poly) {
  ElementOperators ops;
  ops.geometry = poly;
  ops.basis = ScaledMonomialBasis{poly.centroid, poly.diameter};

  const int n = static_cast<int>(poly.num_vertices());
  ops.quad = polygon_quadrature(poly);
  const std::size_t nq = ops.quad.size();
  ops.quad_monomials.resize(nq, 3);
  for (std::size_t q = 0; q < nq; ++q)
    ops.quad_monomials.row(q) = ops.basis.eval_all(ops.quad.points[q]).transpose();

  // monomial mass via the element rule (degree <= 2 integrands, exact)
  ops.monomial_mass.setZero();
  for (std::size_t q = 0; q < nq; ++q) {
    const Eigen::Vector3d m = ops.quad_monomials.row(q).transpose();
    ops.monomial_mass += ops.quad.weights[q] * (m * m.transpose());
  }
  ops.monomial_integrals = ops.monomial_mass.col(0);

  ops.dof_values.resize(n, 3);
  for (int i = 0; i < n; ++i)
    ops.dof_values.row(i) = ops.basis.eval_all(poly.vertices[i]).transpose();

  ops.energy_coeffs = build_energy_projector(poly, ops.basis);
  ops.l2_coeffs = build_l2_projector(ops.energy_coeffs);
  ops.projector = ops.dof_values * ops.energy_coeffs;
  ops.stiffness = build_local_stiffness(poly, ops.basis, ops.energy_coeffs);
  ops.mass = build_local_mass(poly, ops.basis, ops.l2_coeffs, ops.monomial_mass);
  ops.l2_row_weights = ops.l2_coeffs.transpose() * ops.monomial_integrals;
  ops.quad_l2_basis = ops.quad_monomials * ops.l2_coeffs;
  return ops;
}

}  // namespace fhnvem
