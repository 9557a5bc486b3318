#include "doctest.h"

#include <filesystem>
#include <fstream>

#include "nneig/error.hpp"
#include "nneig/matgen.hpp"
#include "nneig/matrix_io.hpp"

using namespace nneig;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "nneig_io_tests";
    fs::create_directories(dir);
    return dir / name;
}

}  // namespace

TEST_CASE("json round trip is bit exact") {
    const auto d = ComplexMatrix::diagonal({0.5, cplx(-0.25, 0.3)});
    const auto path = temp_file("diag.json");
    write_matrix(d, path);
    CHECK(read_matrix(path) == d);

    const auto r = random_matrix(9, 42, 0.9);
    CHECK(parse_matrix(format_matrix(r, MatrixFormat::json), MatrixFormat::json) == r);
}

TEST_CASE("matrix market round trip within 1e-15") {
    const auto r = random_matrix(6, 7, 0.7);
    const auto path = temp_file("rand.mtx");
    write_matrix(r, path);
    const auto back = read_matrix(path);
    CHECK((back.eigen() - r.eigen()).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("matrix market sparse entries fill a dense matrix") {
    const std::string text =
        "%%MatrixMarket matrix coordinate complex general\n"
        "% a comment\n"
        "2 2 1\n"
        "1 1 0.5 0\n";
    const auto a = parse_matrix(text, MatrixFormat::matrix_market);
    CHECK(a == ComplexMatrix::diagonal({0.5, 0.0}));

    const std::string real_field =
        "%%MatrixMarket matrix coordinate real general\n"
        "2 2 2\n"
        "1 2 1\n"
        "2 1 -0.25\n";
    CHECK(parse_matrix(real_field, MatrixFormat::matrix_market) ==
          ComplexMatrix::from_rows({{0.0, 1.0}, {-0.25, 0.0}}));
}

TEST_CASE("dimension errors are structural") {
    try {
        parse_matrix("%%MatrixMarket matrix coordinate complex general\n0 0 0\n", MatrixFormat::matrix_market);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::structural);
    }
    try {
        parse_matrix(R"({"n": 0, "entries": []})", MatrixFormat::json);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::structural);
    }
    try {
        parse_matrix(R"({"n": 2, "entries": [[1,0],[0,0],[0,0]]})", MatrixFormat::json);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::structural);
    }
}

TEST_CASE("malformed files report line and column") {
    try {
        parse_matrix("%%MatrixMarket matrix coordinate complex general\n2 2 1\n1 x 0.5 0\n",
                     MatrixFormat::matrix_market);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
        CHECK(e.column() == 3);
    }
    try {
        parse_matrix("{\n  \"n\": 2,\n  \"entries\": [[1, 0],, ]\n}", MatrixFormat::json);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
    }
    try {
        parse_matrix("%%MatrixMarket matrix array real general\n1 1\n1\n", MatrixFormat::matrix_market);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 1);
    }
    try {
        parse_matrix("%%MatrixMarket matrix coordinate complex general\n2 2 1\n3 1 0.5 0\n",
                     MatrixFormat::matrix_market);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
        CHECK(e.column() == 1);
    }
}

TEST_CASE("generator bundles are accepted as matrix input") {
    const auto a = ComplexMatrix::diagonal({0.2, 0.5});
    nlohmann::json bundle;
    bundle["matrix"] = matrix_to_json(a);
    bundle["scale"] = 1.0;
    CHECK(parse_matrix(bundle.dump(), MatrixFormat::json) == a);
}

TEST_CASE("format selection by extension") {
    CHECK(format_from_path("a.mtx") == MatrixFormat::matrix_market);
    CHECK(format_from_path("a.mm") == MatrixFormat::matrix_market);
    CHECK(format_from_path("a.json") == MatrixFormat::json);
    CHECK(parse_format("matrix-market") == MatrixFormat::matrix_market);
    CHECK_THROWS_AS(parse_format("csv"), Error);
}
