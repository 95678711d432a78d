#include "fhnvem/assembly.hpp"

namespace fhnvem {

GlobalOperators assemble_global(const PolygonalMesh& mesh) {
  GlobalOperators ops;
  ops.mesh = &mesh;
  ops.dofs = DofMap(mesh);
  const int n = ops.dofs.num_dofs();

  ops.elements.reserve(mesh.cells.size());
  for (int c = 0; c < mesh.num_cells(); ++c)
    ops.elements.push_back(build_element_operators(mesh.cell_geometry(c)));

  std::vector<Eigen::Triplet<double>> a_trip, m_trip;
  ops.l2_weights = Eigen::VectorXd::Zero(n);
  for (int c = 0; c < mesh.num_cells(); ++c) {
    const ElementOperators& el = ops.elements[c];
    const std::vector<int>& dofs = ops.dofs.cell_dofs(c);
    const int k = el.num_dofs();
    for (int i = 0; i < k; ++i) {
      ops.l2_weights[dofs[i]] += el.l2_row_weights[i];
      for (int j = 0; j < k; ++j) {
        a_trip.emplace_back(dofs[i], dofs[j], el.stiffness(i, j));
        m_trip.emplace_back(dofs[i], dofs[j], el.mass(i, j));
      }
    }
  }
  ops.stiffness.resize(n, n);
  ops.stiffness.setFromTriplets(a_trip.begin(), a_trip.end());
  ops.mass.resize(n, n);
  ops.mass.setFromTriplets(m_trip.begin(), m_trip.end());
  return ops;
}

namespace {

template <class LocalFn>
Eigen::VectorXd scatter_cells(const GlobalOperators& ops, LocalFn&& local) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(ops.num_dofs());
  for (std::size_t c = 0; c < ops.elements.size(); ++c) {
    const Eigen::VectorXd cell_vec = local(static_cast<int>(c));
    const std::vector<int>& dofs = ops.dofs.cell_dofs(static_cast<int>(c));
    for (std::size_t i = 0; i < dofs.size(); ++i) out[dofs[i]] += cell_vec[i];
  }
  return out;
}

Eigen::VectorXd gather(const Eigen::VectorXd& global, const std::vector<int>& dofs) {
  Eigen::VectorXd local(dofs.size());
  for (std::size_t i = 0; i < dofs.size(); ++i) local[i] = global[dofs[i]];
  return local;
}

}  // namespace

Eigen::VectorXd assemble_ionic_vector(const GlobalOperators& ops, const Eigen::VectorXd& v,
                                      const Eigen::VectorXd& w, const IonicKinetics& kinetics) {
  return scatter_cells(ops, [&](int c) {
    const std::vector<int>& dofs = ops.dofs.cell_dofs(c);
    return local_reaction_vector(ops.elements[c], gather(v, dofs), gather(w, dofs),
                                 [&](double pv, double pw) { return eval_ionic(kinetics, pv, pw); });
  });
}

Eigen::VectorXd assemble_gating_vector(const GlobalOperators& ops, const Eigen::VectorXd& v,
                                       const Eigen::VectorXd& w, const IonicKinetics& kinetics) {
  return scatter_cells(ops, [&](int c) {
    const std::vector<int>& dofs = ops.dofs.cell_dofs(c);
    return local_reaction_vector(ops.elements[c], gather(v, dofs), gather(w, dofs),
                                 [&](double pv, double pw) { return eval_gating(kinetics, pv, pw); });
  });
}

Eigen::VectorXd assemble_applied_current(const GlobalOperators& ops, const Stimulus& stimulus,
                                         double t) {
  if (!stimulus.enabled || t < stimulus.t_on || t >= stimulus.t_off)
    return Eigen::VectorXd::Zero(ops.num_dofs());
  return scatter_cells(ops, [&](int c) {
    return local_source_vector(ops.elements[c], [&](const Vec2& p) { return stimulus(p, t); });
  });
}

Eigen::VectorXd interpolate_vertices(const PolygonalMesh& mesh,
                                     const std::function<double(const Vec2&)>& f) {
  Eigen::VectorXd out(mesh.num_vertices());
  for (int i = 0; i < mesh.num_vertices(); ++i) out[i] = f(mesh.vertices[i]);
  return out;
}

}  // namespace fhnvem
