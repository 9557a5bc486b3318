#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"

#include "nneig/linalg.hpp"

namespace nneig {

enum class MatrixFormat { json, matrix_market };

/// Picks the format from the extension: .mtx / .mm are Matrix Market,
/// everything else is JSON.
MatrixFormat format_from_path(const std::filesystem::path& path);
MatrixFormat parse_format(const std::string& name);

// JSON layout: {"n": int, "entries": [[re, im], ...]} in row-major order.
nlohmann::json matrix_to_json(const ComplexMatrix& a);
ComplexMatrix matrix_from_json(const nlohmann::json& j);

ComplexMatrix parse_matrix(const std::string& text, MatrixFormat format);
std::string format_matrix(const ComplexMatrix& a, MatrixFormat format);

ComplexMatrix read_matrix(const std::filesystem::path& path, MatrixFormat format);
ComplexMatrix read_matrix(const std::filesystem::path& path);
void write_matrix(const ComplexMatrix& a, const std::filesystem::path& path, MatrixFormat format);
void write_matrix(const ComplexMatrix& a, const std::filesystem::path& path);

nlohmann::json complex_to_json(cplx z);
cplx complex_from_json(const nlohmann::json& j);

}  // namespace nneig
