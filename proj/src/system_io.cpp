#include "rpod/system_io.hpp"

#include "rpod/matrix_market.hpp"

namespace rpod {

namespace fs = std::filesystem;

std::filesystem::path save_system(const fs::path& directory, const std::string& stem,
                                  const StateSpaceSystem& sys) {
  fs::create_directories(directory);
  const std::string a_name = stem + "_A.mtx";
  const std::string b_name = stem + "_B.mtx";
  const std::string c_name = stem + "_C.mtx";
  save_matrix_market(directory / a_name, sys.A);
  save_matrix_market(directory / b_name, sys.B);
  save_matrix_market(directory / c_name, sys.C);
  Manifest m;
  m.set("format", "rpod-system/1");
  m.set("n", sys.state_dim());
  m.set("p", sys.input_dim());
  m.set("q", sys.output_dim());
  m.set("dt", sys.dt);
  m.set("description", sys.description);
  m.set("a", a_name);
  m.set("b", b_name);
  m.set("c", c_name);
  const fs::path manifest_file = directory / (stem + ".txt");
  m.save(manifest_file);
  return manifest_file;
}

StateSpaceSystem load_system(const fs::path& manifest_file) {
  const Manifest m = Manifest::load(manifest_file);
  if (m.get_string("format", "") != "rpod-system/1")
    throw ConfigError(manifest_file.string() + ": not a system manifest");
  const fs::path base = manifest_file.parent_path();
  StateSpaceSystem sys = make_system(load_sparse_matrix_market(base / m.get_string("a")),
                                     load_dense_matrix_market(base / m.get_string("b")),
                                     load_sparse_matrix_market(base / m.get_string("c")),
                                     m.get_double("dt", 1.0), m.get_string("description", ""));
  if (sys.state_dim() != m.get_index("n") || sys.input_dim() != m.get_index("p") ||
      sys.output_dim() != m.get_index("q"))
    throw ConfigError(manifest_file.string() + ": dimensions disagree with the matrix files");
  return sys;
}

std::filesystem::path save_rom(const fs::path& directory, const std::string& stem,
                               const ReducedOrderModel& rom) {
  fs::create_directories(directory);
  const std::string a_name = stem + "_A.mtx";
  const std::string b_name = stem + "_B.mtx";
  const std::string c_name = stem + "_C.mtx";
  if (rom.modal) {
    save_matrix_market(directory / a_name, rom.A_r);
    save_matrix_market(directory / b_name, rom.B_r);
    save_matrix_market(directory / c_name, rom.C_r);
  } else {
    save_matrix_market(directory / a_name, Matrix(rom.A_r.real()));
    save_matrix_market(directory / b_name, Matrix(rom.B_r.real()));
    save_matrix_market(directory / c_name, Matrix(rom.C_r.real()));
  }
  Manifest m;
  m.set("format", "rpod-rom/1");
  m.set("method", to_string(rom.method));
  m.set("modal", rom.modal);
  m.set("l", rom.order());
  m.set("a", a_name);
  m.set("b", b_name);
  m.set("c", c_name);
  const auto& p = rom.provenance;
  m.set("requested_l", p.requested);
  m.set("sigma_next", p.sigma_next);
  m.set("hankel_rows", p.hankel_rows);
  m.set("hankel_cols", p.hankel_cols);
  m.set("seed", p.seed);
  m.set("primal_snapshots", p.primal_snapshots);
  m.set("adjoint_snapshots", p.adjoint_snapshots);
  m.set("delta_t_primal", p.delta_t_primal);
  m.set("delta_t_adjoint", p.delta_t_adjoint);
  m.set("projection_rank", p.projection_rank);
  {
    std::vector<double> sv(p.hankel_singular_values.data(),
                           p.hankel_singular_values.data() + p.hankel_singular_values.size());
    m.set_double_list("sigma", sv);
  }
  for (size_t i = 0; i < p.warnings.size(); ++i)
    m.set("warning_" + std::to_string(i), p.warnings[i]);
  const fs::path manifest_file = directory / (stem + ".txt");
  m.save(manifest_file);
  return manifest_file;
}

ReducedOrderModel load_rom(const fs::path& manifest_file) {
  const Manifest m = Manifest::load(manifest_file);
  if (m.get_string("format", "") != "rpod-rom/1")
    throw ConfigError(manifest_file.string() + ": not a reduced-model manifest");
  const fs::path base = manifest_file.parent_path();
  ReducedOrderModel rom;
  rom.method = rom_method_from_string(m.get_string("method"));
  rom.modal = m.get_bool("modal");
  rom.A_r = load_complex_matrix_market(base / m.get_string("a"));
  rom.B_r = load_complex_matrix_market(base / m.get_string("b"));
  rom.C_r = load_complex_matrix_market(base / m.get_string("c"));
  auto& p = rom.provenance;
  p.truncation = m.get_index("l");
  p.requested = m.get_index("requested_l", 0);
  p.sigma_next = m.get_double("sigma_next", 0.0);
  p.hankel_rows = m.get_index("hankel_rows", 0);
  p.hankel_cols = m.get_index("hankel_cols", 0);
  p.seed = m.get_uint64("seed", 0);
  p.primal_snapshots = m.get_index("primal_snapshots", 0);
  p.adjoint_snapshots = m.get_index("adjoint_snapshots", 0);
  p.delta_t_primal = m.get_index("delta_t_primal", 0);
  p.delta_t_adjoint = m.get_index("delta_t_adjoint", 0);
  p.projection_rank = m.get_index("projection_rank", 0);
  if (m.contains("sigma")) {
    const auto sv = m.get_double_list("sigma");
    p.hankel_singular_values =
        Eigen::Map<const Vector>(sv.data(), static_cast<Index>(sv.size()));
  }
  for (size_t i = 0; m.contains("warning_" + std::to_string(i)); ++i)
    p.warnings.push_back(m.get_string("warning_" + std::to_string(i)));
  if (rom.A_r.rows() != rom.A_r.cols() || rom.B_r.rows() != rom.A_r.rows() ||
      rom.C_r.cols() != rom.A_r.rows())
    throw ConfigError(manifest_file.string() + ": inconsistent reduced-model dimensions");
  return rom;
}

std::filesystem::path save_ensemble(const fs::path& directory, const std::string& stem,
                                    const SnapshotEnsemble& ens) {
  fs::create_directories(directory);
  const std::string cols_name = stem + "_columns.mtx";
  save_matrix_market(directory / cols_name, ens.columns);
  Manifest m;
  m.set("format", "rpod-ensemble/1");
  m.set("columns", cols_name);
  m.set("kind", ens.kind == EnsembleKind::impulse ? "impulse" : "noise-forced");
  m.set("source", ens.source == SourceSystem::primal ? "primal" : "adjoint");
  m.set("seed", ens.seed);
  m.set("initial_conditions", ens.initial_conditions);
  m.set_index_list("times", ens.times);
  const fs::path manifest_file = directory / (stem + ".txt");
  m.save(manifest_file);
  return manifest_file;
}

SnapshotEnsemble load_ensemble(const fs::path& manifest_file) {
  const Manifest m = Manifest::load(manifest_file);
  if (m.get_string("format", "") != "rpod-ensemble/1")
    throw ConfigError(manifest_file.string() + ": not an ensemble manifest");
  const fs::path base = manifest_file.parent_path();
  SnapshotEnsemble ens;
  ens.columns = load_dense_matrix_market(base / m.get_string("columns"));
  const std::string kind = m.get_string("kind");
  if (kind == "impulse")
    ens.kind = EnsembleKind::impulse;
  else if (kind == "noise-forced")
    ens.kind = EnsembleKind::noise_forced;
  else
    throw ConfigError(manifest_file.string() + ": unknown ensemble kind '" + kind + "'");
  ens.source = m.get_string("source") == "adjoint" ? SourceSystem::adjoint : SourceSystem::primal;
  ens.seed = m.get_uint64("seed", 0);
  ens.initial_conditions = m.get_index("initial_conditions", 1);
  ens.times = m.get_index_list("times");
  return ens;
}

}  // namespace rpod
