#pragma once

#include <Eigen/Sparse>
#include <functional>
#include <vector>

#include "fhnvem/mesh.hpp"
#include "fhnvem/model.hpp"
#include "fhnvem/vem_local.hpp"

namespace fhnvem {

// Degree-1 virtual elements carry one degree of freedom per mesh vertex; the
// map stays a separate type so the global loops never assume that identity.
class DofMap {
 public:
  DofMap() = default;
  explicit DofMap(const PolygonalMesh& mesh) : mesh_(&mesh) {}

  int num_dofs() const { return mesh_->num_vertices(); }
  const std::vector<int>& cell_dofs(int cell) const { return mesh_->cells[cell].vertex_ids; }

 private:
  const PolygonalMesh* mesh_ = nullptr;
};

// Global operators and cached element data for one mesh. Holds a reference to
// the mesh it was assembled from; the mesh must outlive this object.
struct GlobalOperators {
  const PolygonalMesh* mesh = nullptr;
  DofMap dofs;
  std::vector<ElementOperators> elements;
  Eigen::SparseMatrix<double> stiffness;  // diffusion bilinear form, coefficient 1
  Eigen::SparseMatrix<double> mass;
  // weights u with u . v = sum_K int_K (projection of v_h); evaluates the
  // nonlocal total of a discrete field exactly
  Eigen::VectorXd l2_weights;

  int num_dofs() const { return dofs.num_dofs(); }
};

GlobalOperators assemble_global(const PolygonalMesh& mesh);

// Total amount of the field over the domain (the nonlocal coupling input).
inline double nonlocal_total(const GlobalOperators& ops, const Eigen::VectorXd& v) {
  return ops.l2_weights.dot(v);
}

// Global reaction vectors: entries int_Omega f(P0 v, P0 w) P0 phi_i summed
// over cells.
Eigen::VectorXd assemble_ionic_vector(const GlobalOperators& ops, const Eigen::VectorXd& v,
                                      const Eigen::VectorXd& w, const IonicKinetics& kinetics);
Eigen::VectorXd assemble_gating_vector(const GlobalOperators& ops, const Eigen::VectorXd& v,
                                       const Eigen::VectorXd& w, const IonicKinetics& kinetics);

// Applied-current load vector at time t (zero outside the stimulus window).
Eigen::VectorXd assemble_applied_current(const GlobalOperators& ops, const Stimulus& stimulus,
                                         double t);

// Vertex interpolation of a pointwise function (used for initial data).
Eigen::VectorXd interpolate_vertices(const PolygonalMesh& mesh,
                                     const std::function<double(const Vec2&)>& f);

}  // namespace fhnvem
