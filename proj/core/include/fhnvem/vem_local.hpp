#pragma once

#include <Eigen/Dense>

#include "fhnvem/geometry.hpp"
#include "fhnvem/quadrature.hpp"

namespace fhnvem {

// Scaled monomials on one element: m_0 = 1, m_1 = (x - x_c)/h_K,
// m_2 = (y - y_c)/h_K with x_c the centroid and h_K the diameter. The degree-1
// virtual space is spanned by vertex hat functions; all projections land in
// the span of these three monomials.
struct ScaledMonomialBasis {
  Vec2 center;
  double h = 1.0;

  double eval(int alpha, const Vec2& p) const {
    switch (alpha) {
      case 0: return 1.0;
      case 1: return (p.x - center.x) / h;
      default: return (p.y - center.y) / h;
    }
  }
  Eigen::Vector3d eval_all(const Vec2& p) const {
    return {1.0, (p.x - center.x) / h, (p.y - center.y) / h};
  }
  // gradients are constant at degree 1
  Vec2 gradient(int alpha) const {
    switch (alpha) {
      case 0: return {0.0, 0.0};
      case 1: return {1.0 / h, 0.0};
      default: return {0.0, 1.0 / h};
    }
  }
};

// Energy projection onto degree-1 polynomials, returned as the 3 x N matrix
// of monomial coefficients of the projected hat functions. Built purely from
// boundary data: the stiffness pairing of a monomial with a hat function is a
// boundary integral (monomials are harmonic), evaluated exactly because hat
// traces are piecewise linear. The projection is pinned by matching the
// vertex average. Throws on a degenerate (zero-area) element.
Eigen::MatrixXd build_energy_projector(const PolygonGeometry& poly,
                                       const ScaledMonomialBasis& basis);

// L2 projection onto degree-1 polynomials in the enhanced local space, where
// it coincides with the energy projection; returned as an independent copy.
Eigen::MatrixXd build_l2_projector(const Eigen::MatrixXd& energy_coeffs);

// Everything the global loops need from one element, built once per cell.
struct ElementOperators {
  PolygonGeometry geometry;
  ScaledMonomialBasis basis;

  Eigen::Matrix3d monomial_mass;       // integrals of m_a * m_b
  Eigen::Vector3d monomial_integrals;  // integrals of m_a (column 0 of the above)
  Eigen::MatrixXd dof_values;          // N x 3, monomials sampled at vertices
  Eigen::MatrixXd energy_coeffs;       // 3 x N
  Eigen::MatrixXd l2_coeffs;           // 3 x N
  Eigen::MatrixXd projector;           // N x N, dof form: dof_values * energy_coeffs
  Eigen::MatrixXd stiffness;           // consistency + dofwise stabilization
  Eigen::MatrixXd mass;                // consistency + h_K^2-scaled stabilization
  Eigen::VectorXd l2_row_weights;      // integral of projected hat functions

  QuadRule quad;                   // degree-4 rule over the element
  Eigen::MatrixXd quad_monomials;  // nq x 3, monomials at quadrature points
  Eigen::MatrixXd quad_l2_basis;   // nq x N, projected hat functions at points

  int num_dofs() const { return static_cast<int>(dof_values.rows()); }
};

// Consistency term s^T H s (H the monomial stiffness, rank 2) plus the
// dofwise stabilization (I - P)^T (I - P).
Eigen::MatrixXd build_local_stiffness(const PolygonGeometry& poly,
                                      const ScaledMonomialBasis& basis,
                                      const Eigen::MatrixXd& energy_coeffs);

// Consistency term s^T M s (M the monomial mass) plus h_K^2 (I - P)^T (I - P).
Eigen::MatrixXd build_local_mass(const PolygonGeometry& poly, const ScaledMonomialBasis& basis,
                                 const Eigen::MatrixXd& l2_coeffs,
                                 const Eigen::Matrix3d& monomial_mass);

ElementOperators build_element_operators(const PolygonGeometry& poly);

// Monomial coefficients of the projection of a local dof vector.
inline Eigen::Vector3d project_local(const ElementOperators& ops, const Eigen::VectorXd& dofs) {
  return ops.l2_coeffs * dofs;
}

// Local load vector of a pointwise source: entries int_K f(x) P0 phi_i dx,
// evaluated with the element quadrature (exact for polynomial f up to
// degree 3 against the linear projected hats).
template <class F>
Eigen::VectorXd local_source_vector(const ElementOperators& ops, F&& f) {
  const std::size_t nq = ops.quad.size();
  Eigen::VectorXd fw(nq);
  for (std::size_t q = 0; q < nq; ++q)
    fw[q] = ops.quad.weights[q] * f(ops.quad.points[q]);
  return ops.quad_l2_basis.transpose() * fw;
}

// Local vector of a reaction term: entries int_K f(P0 v, P0 w) P0 phi_i dx.
// With cubic f and linear projections the integrand has degree 4, so the
// element rule is exact.
template <class F>
Eigen::VectorXd local_reaction_vector(const ElementOperators& ops, const Eigen::VectorXd& v,
                                      const Eigen::VectorXd& w, F&& f) {
  const Eigen::VectorXd pv = ops.quad_monomials * (ops.l2_coeffs * v);
  const Eigen::VectorXd pw = ops.quad_monomials * (ops.l2_coeffs * w);
  const std::size_t nq = ops.quad.size();
  Eigen::VectorXd fw(nq);
  for (std::size_t q = 0; q < nq; ++q) fw[q] = ops.quad.weights[q] * f(pv[q], pw[q]);
  return ops.quad_l2_basis.transpose() * fw;
}

}  // namespace fhnvem
