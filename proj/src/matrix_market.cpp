#include "rpod/matrix_market.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "rpod/manifest.hpp"

namespace rpod {

namespace {

struct Header {
  bool coordinate = false;
  bool complex_field = false;
  Index rows = 0, cols = 0;
  Index nnz = 0;  // coordinate only
};

Header read_header(std::istream& in, const std::string& name) {
  std::string line;
  if (!std::getline(in, line)) throw InputError("empty Matrix Market file: " + name);
  std::istringstream banner(line);
  std::string tag, object, format, field, symmetry;
  banner >> tag >> object >> format >> field >> symmetry;
  if (tag != "%%MatrixMarket" || object != "matrix")
    throw InputError("not a Matrix Market matrix file: " + name);
  Header h;
  if (format == "coordinate")
    h.coordinate = true;
  else if (format != "array")
    throw InputError(name + ": unsupported format '" + format + "'");
  if (field == "complex")
    h.complex_field = true;
  else if (field != "real" && field != "integer")
    throw InputError(name + ": unsupported field '" + field + "'");
  if (symmetry != "general")
    throw InputError(name + ": only 'general' symmetry is supported");
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] == '%') continue;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    break;
  }
  std::istringstream sizes(line);
  if (h.coordinate) {
    if (!(sizes >> h.rows >> h.cols >> h.nnz))
      throw InputError(name + ": bad coordinate size line");
  } else {
    if (!(sizes >> h.rows >> h.cols)) throw InputError(name + ": bad array size line");
  }
  if (h.rows < 0 || h.cols < 0) throw InputError(name + ": negative dimensions");
  return h;
}

ComplexMatrix load_any(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw InputError("cannot open matrix file: " + file.string());
  const Header h = read_header(in, file.string());
  ComplexMatrix m = ComplexMatrix::Zero(h.rows, h.cols);
  if (h.coordinate) {
    for (Index k = 0; k < h.nnz; ++k) {
      Index i, j;
      double re, im = 0.0;
      if (!(in >> i >> j >> re)) throw InputError(file.string() + ": truncated entries");
      if (h.complex_field && !(in >> im))
        throw InputError(file.string() + ": truncated complex entry");
      if (i < 1 || i > h.rows || j < 1 || j > h.cols)
        throw InputError(file.string() + ": entry index out of range");
      m(i - 1, j - 1) = Complex(re, im);
    }
  } else {
    // column-major per the format
    for (Index j = 0; j < h.cols; ++j) {
      for (Index i = 0; i < h.rows; ++i) {
        double re, im = 0.0;
        if (!(in >> re)) throw InputError(file.string() + ": truncated entries");
        if (h.complex_field && !(in >> im))
          throw InputError(file.string() + ": truncated complex entry");
        m(i, j) = Complex(re, im);
      }
    }
  }
  return m;
}

void write_value(std::ostream& out, double v) { out << format_double(v); }

}  // namespace

void save_matrix_market(const std::filesystem::path& file, const Matrix& m) {
  std::ofstream out(file);
  if (!out) throw InputError("cannot write matrix file: " + file.string());
  out << "%%MatrixMarket matrix array real general\n";
  out << m.rows() << " " << m.cols() << "\n";
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i) {
      write_value(out, m(i, j));
      out << "\n";
    }
}

void save_matrix_market(const std::filesystem::path& file, const SparseMatrix& m) {
  std::ofstream out(file);
  if (!out) throw InputError("cannot write matrix file: " + file.string());
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << m.rows() << " " << m.cols() << " " << m.nonZeros() << "\n";
  for (Index j = 0; j < m.outerSize(); ++j)
    for (SparseMatrix::InnerIterator it(m, j); it; ++it) {
      out << it.row() + 1 << " " << it.col() + 1 << " ";
      write_value(out, it.value());
      out << "\n";
    }
}

void save_matrix_market(const std::filesystem::path& file, const ComplexMatrix& m) {
  std::ofstream out(file);
  if (!out) throw InputError("cannot write matrix file: " + file.string());
  out << "%%MatrixMarket matrix array complex general\n";
  out << m.rows() << " " << m.cols() << "\n";
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i) {
      write_value(out, m(i, j).real());
      out << " ";
      write_value(out, m(i, j).imag());
      out << "\n";
    }
}

Matrix load_dense_matrix_market(const std::filesystem::path& file) {
  ComplexMatrix m = load_any(file);
  if (m.imag().cwiseAbs().maxCoeff() != 0.0)
    throw InputError(file.string() + ": complex entries where a real matrix was expected");
  return m.real();
}

SparseMatrix load_sparse_matrix_market(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw InputError("cannot open matrix file: " + file.string());
  const Header h = read_header(in, file.string());
  if (h.complex_field)
    throw InputError(file.string() + ": complex entries where a real matrix was expected");
  SparseMatrix m(h.rows, h.cols);
  if (h.coordinate) {
    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(static_cast<size_t>(h.nnz));
    for (Index k = 0; k < h.nnz; ++k) {
      Index i, j;
      double v;
      if (!(in >> i >> j >> v)) throw InputError(file.string() + ": truncated entries");
      if (i < 1 || i > h.rows || j < 1 || j > h.cols)
        throw InputError(file.string() + ": entry index out of range");
      triplets.emplace_back(static_cast<int>(i - 1), static_cast<int>(j - 1), v);
    }
    m.setFromTriplets(triplets.begin(), triplets.end());
  } else {
    std::vector<Eigen::Triplet<double>> triplets;
    for (Index j = 0; j < h.cols; ++j)
      for (Index i = 0; i < h.rows; ++i) {
        double v;
        if (!(in >> v)) throw InputError(file.string() + ": truncated entries");
        if (v != 0.0) triplets.emplace_back(static_cast<int>(i), static_cast<int>(j), v);
      }
    m.setFromTriplets(triplets.begin(), triplets.end());
  }
  m.makeCompressed();
  return m;
}

ComplexMatrix load_complex_matrix_market(const std::filesystem::path& file) {
  return load_any(file);
}

}  // namespace rpod
