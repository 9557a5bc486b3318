#include "nneig/matrix_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "nneig/error.hpp"

namespace nneig {

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

// Splits a line into whitespace-separated tokens, remembering 1-based columns.
struct Token {
    std::string text;
    std::size_t column;
};

std::vector<Token> tokenize(const std::string& line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i >= line.size()) break;
        const std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        out.push_back({line.substr(start, i - start), start + 1});
    }
    return out;
}

double parse_double(const Token& t, std::size_t line) {
    double v = 0.0;
    const char* first = t.text.data();
    const char* last = first + t.text.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || !std::isfinite(v))
        throw ParseError("invalid number '" + t.text + "'", line, t.column);
    return v;
}

long long parse_int(const Token& t, std::size_t line) {
    long long v = 0;
    const char* first = t.text.data();
    const char* last = first + t.text.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) throw ParseError("invalid integer '" + t.text + "'", line, t.column);
    return v;
}

ComplexMatrix parse_matrix_market(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;

    if (!std::getline(in, line)) throw ParseError("empty Matrix Market file", 1, 1);
    ++lineno;
    const auto header = tokenize(line);
    if (header.size() != 5 || header[0].text != "%%MatrixMarket")
        throw ParseError("expected '%%MatrixMarket matrix coordinate <field> general' header", lineno, 1);
    if (lower(header[1].text) != "matrix") throw ParseError("unsupported object", lineno, header[1].column);
    if (lower(header[2].text) != "coordinate")
        throw ParseError("only coordinate format is supported", lineno, header[2].column);
    const std::string field = lower(header[3].text);
    if (field != "complex" && field != "real")
        throw ParseError("unsupported field '" + header[3].text + "'", lineno, header[3].column);
    if (lower(header[4].text) != "general")
        throw ParseError("only general symmetry is supported", lineno, header[4].column);
    const bool is_complex = field == "complex";

    long long rows = -1, cols = -1, nnz = -1;
    while (std::getline(in, line)) {
        ++lineno;
        const auto toks = tokenize(line);
        if (toks.empty() || toks[0].text[0] == '%') continue;
        if (toks.size() != 3) throw ParseError("expected 'rows cols nnz'", lineno, toks[0].column);
        rows = parse_int(toks[0], lineno);
        cols = parse_int(toks[1], lineno);
        nnz = parse_int(toks[2], lineno);
        break;
    }
    if (rows < 0) throw ParseError("missing dimension line", lineno, 1);
    if (rows != cols)
        fail(ErrorKind::structural, "matrix must be square, got " + std::to_string(rows) + "x" +
                                        std::to_string(cols));
    if (rows == 0) fail(ErrorKind::structural, "matrix dimension must be at least 1");
    if (nnz < 0 || nnz > rows * cols) fail(ErrorKind::structural, "invalid entry count " + std::to_string(nnz));

    const auto n = static_cast<Eigen::Index>(rows);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    long long seen = 0;
    const std::size_t want = is_complex ? 4 : 3;
    while (std::getline(in, line)) {
        ++lineno;
        const auto toks = tokenize(line);
        if (toks.empty() || toks[0].text[0] == '%') continue;
        if (seen == nnz) throw ParseError("more entries than declared", lineno, toks[0].column);
        if (toks.size() != want)
            throw ParseError("expected " + std::to_string(want) + " fields", lineno, toks[0].column);
        const long long i = parse_int(toks[0], lineno);
        const long long j = parse_int(toks[1], lineno);
        if (i < 1 || i > rows) throw ParseError("row index out of range", lineno, toks[0].column);
        if (j < 1 || j > cols) throw ParseError("column index out of range", lineno, toks[1].column);
        const double re = parse_double(toks[2], lineno);
        const double im = is_complex ? parse_double(toks[3], lineno) : 0.0;
        m(i - 1, j - 1) = cplx(re, im);
        ++seen;
    }
    if (seen != nnz)
        fail(ErrorKind::structural, "declared " + std::to_string(nnz) + " entries, found " + std::to_string(seen));
    return ComplexMatrix(std::move(m));
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

MatrixFormat format_from_path(const std::filesystem::path& path) {
    const auto ext = lower(path.extension().string());
    return (ext == ".mtx" || ext == ".mm") ? MatrixFormat::matrix_market : MatrixFormat::json;
}

MatrixFormat parse_format(const std::string& name) {
    const auto n = lower(name);
    if (n == "json") return MatrixFormat::json;
    if (n == "matrix-market" || n == "mtx" || n == "mm") return MatrixFormat::matrix_market;
    fail(ErrorKind::input, "unknown matrix format '" + name + "'");
}

nlohmann::json complex_to_json(cplx z) { return nlohmann::json::array({z.real(), z.imag()}); }

cplx complex_from_json(const nlohmann::json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        fail(ErrorKind::parse, "complex number must be [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

nlohmann::json matrix_to_json(const ComplexMatrix& a) {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& z : a.row_major()) entries.push_back(complex_to_json(z));
    return {{"n", a.dim()}, {"entries", std::move(entries)}};
}

ComplexMatrix matrix_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("entries"))
        fail(ErrorKind::parse, "matrix JSON needs 'n' and 'entries'");
    if (!j["n"].is_number_integer()) fail(ErrorKind::parse, "'n' must be an integer");
    const auto n = j["n"].get<long long>();
    if (n < 1) fail(ErrorKind::structural, "matrix dimension must be at least 1");
    const auto& e = j["entries"];
    if (!e.is_array()) fail(ErrorKind::parse, "'entries' must be an array");
    std::vector<cplx> entries;
    entries.reserve(e.size());
    for (const auto& z : e) entries.push_back(complex_from_json(z));
    return ComplexMatrix::from_row_major(static_cast<std::size_t>(n), entries);
}

ComplexMatrix parse_matrix(const std::string& text, MatrixFormat format) {
    if (format == MatrixFormat::matrix_market) return parse_matrix_market(text);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        const auto [line, col] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
        throw ParseError("malformed JSON", line, col);
    }
    // Accept bundles produced by `gen`, which nest the matrix.
    if (j.is_object() && j.contains("matrix") && !j.contains("entries")) return matrix_from_json(j["matrix"]);
    return matrix_from_json(j);
}

std::string format_matrix(const ComplexMatrix& a, MatrixFormat format) {
    if (format == MatrixFormat::json) return matrix_to_json(a).dump() + "\n";
    std::ostringstream out;
    const auto entries = a.row_major();
    std::size_t nnz = 0;
    for (const auto& z : entries)
        if (z != cplx(0.0, 0.0)) ++nnz;
    out << "%%MatrixMarket matrix coordinate complex general\n";
    out << a.dim() << ' ' << a.dim() << ' ' << nnz << '\n';
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) {
            const cplx z = entries[i * a.dim() + j];
            if (z == cplx(0.0, 0.0)) continue;
            out << i + 1 << ' ' << j + 1 << ' ' << format_double(z.real()) << ' ' << format_double(z.imag())
                << '\n';
        }
    return out.str();
}

ComplexMatrix read_matrix(const std::filesystem::path& path, MatrixFormat format) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::input, "cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_matrix(ss.str(), format);
}

ComplexMatrix read_matrix(const std::filesystem::path& path) { return read_matrix(path, format_from_path(path)); }

void write_matrix(const ComplexMatrix& a, const std::filesystem::path& path, MatrixFormat format) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorKind::input, "cannot write '" + path.string() + "'");
    out << format_matrix(a, format);
    if (!out) fail(ErrorKind::input, "write to '" + path.string() + "' failed");
}

void write_matrix(const ComplexMatrix& a, const std::filesystem::path& path) {
    write_matrix(a, path, format_from_path(path));
}

}  // namespace nneig
