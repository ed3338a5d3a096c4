#ifndef RPOD_MATRIX_MARKET_HPP
#define RPOD_MATRIX_MARKET_HPP

#include <filesystem>

#include "rpod/common.hpp"

namespace rpod {

// Matrix Market exchange format, "matrix array|coordinate real|complex general"
// flavors only. Values are written with 17 significant digits.
void save_matrix_market(const std::filesystem::path& file, const Matrix& m);
void save_matrix_market(const std::filesystem::path& file, const SparseMatrix& m);
void save_matrix_market(const std::filesystem::path& file, const ComplexMatrix& m);

// Loaders accept either storage flavor and convert. The complex loader also
// accepts real files (imaginary part zero).
Matrix load_dense_matrix_market(const std::filesystem::path& file);
SparseMatrix load_sparse_matrix_market(const std::filesystem::path& file);
ComplexMatrix load_complex_matrix_market(const std::filesystem::path& file);

}  // namespace rpod

#endif
