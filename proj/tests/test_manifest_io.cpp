#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "rpod/manifest.hpp"
#include "rpod/matrix_market.hpp"
#include "rpod/synthetic.hpp"
#include "rpod/system_io.hpp"

using namespace rpod;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
  const fs::path dir = fs::temp_directory_path() / "rpod_io_test";
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("manifest round trip preserves order, values and sections") {
  Manifest m = Manifest::parse(
      "# comment\n"
      "format = demo/1\n"
      "[model]\n"
      "type = heat\n"
      "alpha = 4.2e-06\n"
      "[method]\n"
      "l = 70\n");
  CHECK(m.get_string("format") == "demo/1");
  CHECK(m.get_string("model.type") == "heat");
  CHECK(m.get_double("model.alpha") == doctest::Approx(4.2e-6));
  CHECK(m.get_index("method.l") == 70);
  CHECK(m.keys_in_section("model") == std::vector<std::string>{"type", "alpha"});

  const fs::path file = temp_dir() / "roundtrip.txt";
  m.save(file);
  Manifest back = Manifest::load(file);
  CHECK(back.keys() == m.keys());
  CHECK(back.get_string("model.type") == "heat");
}

TEST_CASE("doubles survive a write/parse cycle bit-exactly") {
  const double values[] = {1.0 / 3.0, 4.2e-6, -1.7976931348623157e308, 0.1052, M_PI};
  Manifest m;
  for (int i = 0; i < 5; ++i) m.set("v" + std::to_string(i), values[i]);
  Manifest back = Manifest::parse(m.to_string());
  for (int i = 0; i < 5; ++i) CHECK(back.get_double("v" + std::to_string(i)) == values[i]);
}

TEST_CASE("manifest rejects malformed input and wrong types") {
  CHECK_THROWS_AS(Manifest::parse("just a line without equals\n"), ConfigError);
  Manifest m = Manifest::parse("x = notanumber\n");
  CHECK_THROWS_AS(m.get_double("x"), ConfigError);
  CHECK_THROWS_AS(m.get_string("missing"), ConfigError);
  CHECK(m.get_double("missing", 2.5) == 2.5);
}

TEST_CASE("index lists") {
  Manifest m;
  m.set_index_list("times", {1, 2, 40});
  Manifest back = Manifest::parse(m.to_string());
  CHECK(back.get_index_list("times") == std::vector<Index>{1, 2, 40});
}

TEST_CASE("matrix market dense round trip") {
  Matrix m(3, 2);
  m << 1.0, -2.5, 4.2e-6, 0.0, 1.0 / 3.0, 7e120;
  const fs::path file = temp_dir() / "dense.mtx";
  save_matrix_market(file, m);
  const Matrix back = load_dense_matrix_market(file);
  CHECK(back.rows() == 3);
  CHECK(back.cols() == 2);
  CHECK((back - m).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("matrix market sparse round trip keeps the pattern") {
  SparseMatrix m(4, 4);
  std::vector<Eigen::Triplet<double>> t{{0, 0, 1.5}, {2, 1, -3.0}, {3, 3, 4.2e-6}};
  m.setFromTriplets(t.begin(), t.end());
  const fs::path file = temp_dir() / "sparse.mtx";
  save_matrix_market(file, m);
  const SparseMatrix back = load_sparse_matrix_market(file);
  CHECK(back.nonZeros() == 3);
  CHECK(Matrix(back - m).cwiseAbs().maxCoeff() == 0.0);
  // the same file is loadable densely
  const Matrix dense = load_dense_matrix_market(file);
  CHECK((dense - Matrix(m)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("matrix market complex round trip") {
  ComplexMatrix m(2, 2);
  m << Complex(1, -2), Complex(0, 0.5), Complex(-4.2e-6, 0), Complex(M_PI, -M_PI);
  const fs::path file = temp_dir() / "complex.mtx";
  save_matrix_market(file, m);
  const ComplexMatrix back = load_complex_matrix_market(file);
  CHECK((back - m).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("complex entries are rejected where a real matrix is expected") {
  ComplexMatrix m(1, 1);
  m << Complex(1, 2);
  const fs::path file = temp_dir() / "complex_reject.mtx";
  save_matrix_market(file, m);
  CHECK_THROWS_AS(load_dense_matrix_market(file), InputError);
}

TEST_CASE("system save/load round trip") {
  SyntheticConfig cfg;
  cfg.dimension = 8;
  cfg.coupled_modes = 2;
  cfg.seed = 11;
  const StateSpaceSystem sys = make_synthetic(cfg).system;
  const fs::path manifest = save_system(temp_dir() / "sys", "demo", sys);
  const StateSpaceSystem back = load_system(manifest);
  CHECK(back.state_dim() == sys.state_dim());
  CHECK(back.input_dim() == sys.input_dim());
  CHECK(back.output_dim() == sys.output_dim());
  CHECK(Matrix(back.A - sys.A).cwiseAbs().maxCoeff() == 0.0);
  CHECK((back.B - sys.B).cwiseAbs().maxCoeff() == 0.0);
  CHECK(Matrix(back.C - sys.C).cwiseAbs().maxCoeff() == 0.0);
  CHECK(back.dt == sys.dt);
}

TEST_CASE("ensemble save/load round trip") {
  SyntheticConfig cfg;
  cfg.dimension = 6;
  cfg.coupled_modes = 2;
  cfg.seed = 3;
  const StateSpaceSystem sys = make_synthetic(cfg).system;
  const SnapshotEnsemble ens = noise_ensemble(sys, 4, 3, 99);
  const fs::path manifest = save_ensemble(temp_dir() / "ens", "noise", ens);
  const SnapshotEnsemble back = load_ensemble(manifest);
  CHECK(back.kind == EnsembleKind::noise_forced);
  CHECK(back.seed == 99);
  CHECK(back.times == ens.times);
  CHECK((back.columns - ens.columns).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("reduced model save/load round trip, modal and real") {
  SyntheticConfig cfg;
  cfg.dimension = 10;
  cfg.coupled_modes = 3;
  cfg.seed = 5;
  const StateSpaceSystem sys = make_synthetic(cfg).system;
  const RomResult modal = rpod_star(sys, 6, 6, 25, 25, 3, 17);
  const fs::path manifest = save_rom(temp_dir() / "rom", "modal", modal.rom);
  const ReducedOrderModel back = load_rom(manifest);
  CHECK(back.modal);
  CHECK(back.method == RomMethod::rpod_star);
  CHECK(back.order() == modal.rom.order());
  CHECK((back.A_r - modal.rom.A_r).cwiseAbs().maxCoeff() == 0.0);
  CHECK((back.B_r - modal.rom.B_r).cwiseAbs().maxCoeff() == 0.0);
  CHECK((back.C_r - modal.rom.C_r).cwiseAbs().maxCoeff() == 0.0);
  CHECK(back.provenance.seed == 17);
  CHECK(back.provenance.hankel_rows == 6);
  CHECK(back.provenance.hankel_singular_values.size() == 6);

  std::vector<Index> times{1, 2, 3, 4, 5, 6};
  const RomResult plain = bpod(sys, times, times, 3);
  const fs::path manifest2 = save_rom(temp_dir() / "rom", "plain", plain.rom);
  const ReducedOrderModel back2 = load_rom(manifest2);
  CHECK_FALSE(back2.modal);
  CHECK((back2.A_r - plain.rom.A_r).cwiseAbs().maxCoeff() == 0.0);
}
