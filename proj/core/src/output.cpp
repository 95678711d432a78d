#include "fhnvem/output.hpp"

#include <fstream>

#include "fhnvem/format.hpp"

namespace fhnvem {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw OutputError("cannot open " + path + " for writing");
  return out;
}

void close_checked(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw OutputError("write failed for " + path);
}

}  // namespace

void write_vtk_snapshot(const PolygonalMesh& mesh, const FieldState& state,
                        const std::string& path) {
  if (state.v.size() != mesh.num_vertices() || state.w.size() != mesh.num_vertices())
    throw OutputError("write_vtk_snapshot: field size does not match mesh");
  std::ofstream out = open_out(path);
  out << "# vtk DataFile Version 3.0\n";
  out << "polygonal mesh snapshot at t = " << format_double(state.t) << "\n";
  out << "ASCII\nDATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << mesh.num_vertices() << " double\n";
  for (const Vec2& p : mesh.vertices)
    out << format_double(p.x) << ' ' << format_double(p.y) << " 0\n";

  std::size_t list_size = 0;
  for (const Cell& c : mesh.cells) list_size += 1 + c.vertex_ids.size();
  out << "CELLS " << mesh.num_cells() << ' ' << list_size << '\n';
  for (const Cell& c : mesh.cells) {
    out << c.vertex_ids.size();
    for (int id : c.vertex_ids) out << ' ' << id;
    out << '\n';
  }
  out << "CELL_TYPES " << mesh.num_cells() << '\n';
  for (int c = 0; c < mesh.num_cells(); ++c) out << "7\n";  // VTK_POLYGON

  out << "POINT_DATA " << mesh.num_vertices() << '\n';
  out << "SCALARS v double 1\nLOOKUP_TABLE default\n";
  for (int i = 0; i < mesh.num_vertices(); ++i) out << format_double(state.v[i]) << '\n';
  out << "SCALARS w double 1\nLOOKUP_TABLE default\n";
  for (int i = 0; i < mesh.num_vertices(); ++i) out << format_double(state.w[i]) << '\n';
  close_checked(out, path);
}

void write_energy_csv(const std::vector<EnergySample>& log, const std::string& path) {
  std::ofstream out = open_out(path);
  out << "step,t,v_mass_norm,w_mass_norm,energy_accumulated,nonlocal_total,diffusion_value,"
         "picard_iterations\n";
  for (const EnergySample& s : log) {
    out << s.step << ',' << format_double(s.t) << ',' << format_double(s.v_mass_norm) << ','
        << format_double(s.w_mass_norm) << ',' << format_double(s.energy_accumulated) << ','
        << format_double(s.nonlocal_total) << ',' << format_double(s.diffusion_value) << ','
        << s.picard_iterations << '\n';
  }
  close_checked(out, path);
}

namespace {

void write_error_matrix(const ConvergenceStudy& study, const Eigen::MatrixXd& err,
                        const std::string& path) {
  std::ofstream out = open_out(path);
  out << "h";
  for (int steps : study.time_steps) out << ",dt_1_" << steps;
  out << '\n';
  for (std::size_t si = 0; si < study.space_levels.size(); ++si) {
    out << "1/" << study.space_levels[si];
    for (std::size_t ti = 0; ti < study.time_steps.size(); ++ti)
      out << ',' << format_double(err(si, ti), 15);
    out << '\n';
  }
  close_checked(out, path);
}

}  // namespace

void write_error_tables(const ConvergenceStudy& study, const std::string& dir) {
  write_error_matrix(study, study.error_v, dir + "/errors_v.csv");
  write_error_matrix(study, study.error_w, dir + "/errors_w.csv");

  std::ofstream out = open_out(dir + "/rates.csv");
  // pairwise spatial rates log2(E(h) / E(h/2)) per time-step column
  out << "field,refinement";
  for (int steps : study.time_steps) out << ",dt_1_" << steps;
  out << '\n';
  for (const char* field : {"v", "w"}) {
    const Eigen::MatrixXd& err = (field[0] == 'v') ? study.error_v : study.error_w;
    for (std::size_t si = 0; si + 1 < study.space_levels.size(); ++si) {
      out << field << ",h_1_" << study.space_levels[si] << ":1_" << study.space_levels[si + 1];
      for (std::size_t ti = 0; ti < study.time_steps.size(); ++ti) {
        const double rate =
            std::log2(err(si, ti) / err(si + 1, ti)) /
            std::log2(study.mesh_h[si] / study.mesh_h[si + 1]);
        out << ',' << format_double(rate, 15);
      }
      out << '\n';
    }
  }
  // pairwise temporal rates per mesh row
  out << "field,refinement";
  for (int level : study.space_levels) out << ",h_1_" << level;
  out << '\n';
  for (const char* field : {"v", "w"}) {
    const Eigen::MatrixXd& err = (field[0] == 'v') ? study.error_v : study.error_w;
    for (std::size_t ti = 0; ti + 1 < study.time_steps.size(); ++ti) {
      out << field << ",dt_1_" << study.time_steps[ti] << ":1_" << study.time_steps[ti + 1];
      for (std::size_t si = 0; si < study.space_levels.size(); ++si) {
        const double rate = std::log2(err(si, ti) / err(si, ti + 1)) /
                            std::log2(static_cast<double>(study.time_steps[ti + 1]) /
                                      static_cast<double>(study.time_steps[ti]));
        out << ',' << format_double(rate, 15);
      }
      out << '\n';
    }
  }
  out << "field,observed_order,value\n";
  out << "v,spatial," << format_double(study.spatial_order_v, 15) << '\n';
  out << "w,spatial," << format_double(study.spatial_order_w, 15) << '\n';
  out << "v,temporal," << format_double(study.temporal_order_v, 15) << '\n';
  out << "w,temporal," << format_double(study.temporal_order_w, 15) << '\n';
  close_checked(out, dir + "/rates.csv");
}

void write_snapshot_stats_csv(const std::vector<SnapshotStats>& stats,
                              const std::string& path) {
  std::ofstream out = open_out(path);
  out << "step,t,min_v,max_v,mean_v,std_v\n";
  for (const SnapshotStats& s : stats) {
    out << s.step << ',' << format_double(s.t) << ',' << format_double(s.min_v) << ','
        << format_double(s.max_v) << ',' << format_double(s.mean_v) << ','
        << format_double(s.std_v) << '\n';
  }
  close_checked(out, path);
}

void write_manifest(const std::map<std::string, std::string>& entries,
                    const std::string& path) {
  std::ofstream out = open_out(path);
  for (const auto& [key, value] : entries) out << key << " = " << value << '\n';
  close_checked(out, path);
}

}  // namespace fhnvem
