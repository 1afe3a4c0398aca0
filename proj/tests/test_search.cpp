#include "doctest.h"

#include "philab/check.hpp"
#include "philab/search.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

using namespace philab;

namespace {

void check_result_invariants(const BadPairResult& res) {
    for (std::size_t i = 0; i < res.pairs.size(); ++i) {
        const BadPair& p = res.pairs[i];
        CAPTURE(i);
        CHECK(p.certificate.mode == res.mode);
        CHECK(p.certificate.x == p.x);
        CHECK(p.certificate.y == p.y);
        CHECK(p.certificate.claimed_bound < res.z);
        CHECK(verify_certificate(p.certificate).satisfied);
        if (i > 0) {
            // Sorted by increasing y, and Pareto: x strictly decreases.
            CHECK(res.pairs[i - 1].y < p.y);
            CHECK(res.pairs[i - 1].x > p.x);
        }
    }
}

} // namespace

TEST_CASE("search at (psi, 1/2) with 3+3 sides finds exactly (1/3, 1/3)") {
    const BadPairResult res = search_bad_pairs(Mode::Psi, Rational(1, 2), 3, 3);
    check_result_invariants(res);
    REQUIRE(res.pairs.size() == 1);
    CHECK(res.pairs[0].x == Rational(1, 3));
    CHECK(res.pairs[0].y == Rational(1, 3));
    CHECK(res.pairs[0].certificate.claimed_bound == Rational(1, 3));
}

TEST_CASE("search at (phi, 1/2) with 3+3 sides finds exactly (1/3, 1/3)") {
    const BadPairResult res = search_bad_pairs(Mode::Phi, Rational(1, 2), 3, 3);
    check_result_invariants(res);
    REQUIRE(res.pairs.size() == 1);
    CHECK(res.pairs[0].x == Rational(1, 3));
    CHECK(res.pairs[0].y == Rational(1, 3));
}

TEST_CASE("search at (psi, 2/3) with 2+2 sides finds exactly (1/2, 1/2)") {
    const BadPairResult res = search_bad_pairs(Mode::Psi, Rational(2, 3), 2, 2);
    check_result_invariants(res);
    REQUIRE(res.pairs.size() == 1);
    CHECK(res.pairs[0].x == Rational(1, 2));
    CHECK(res.pairs[0].y == Rational(1, 2));
    CHECK(res.pairs[0].certificate.claimed_bound == Rational(1, 2));
}

TEST_CASE("search below the phi floor finds nothing") {
    // phi(x, y) >= max(x, y) always, and every topology's best value at
    // z = 1/3 would need max(x, y) < 1/3 with witness below 1/3; the 2+2
    // family has no strict point.
    const BadPairResult res = search_bad_pairs(Mode::Phi, Rational(1, 3), 2, 2);
    CHECK(res.pairs.empty());
}

TEST_CASE("search input validation") {
    CHECK_THROWS_AS(search_bad_pairs(Mode::Xi, Rational(1, 2), 3, 3), std::invalid_argument);
    CHECK_THROWS_AS(search_bad_pairs(Mode::Psi, Rational(1, 2), 0, 3), std::invalid_argument);
    CHECK_THROWS_AS(search_bad_pairs(Mode::Psi, Rational(1, 2), 3, 10), std::invalid_argument);
    CHECK_THROWS_AS(search_bad_pairs(Mode::Psi, Rational(0), 3, 3), std::invalid_argument);
    CHECK_THROWS_AS(search_bad_pairs(Mode::Psi, Rational(3, 2), 3, 3), std::invalid_argument);
}

TEST_CASE("write_bad_pair_files emits parseable certificates and an index") {
    const BadPairResult res = search_bad_pairs(Mode::Psi, Rational(1, 2), 3, 3);
    REQUIRE(res.pairs.size() == 1);

    const std::filesystem::path dir =
        std::filesystem::temp_directory_path() / "philab_search_test";
    std::filesystem::remove_all(dir);
    write_bad_pair_files(res, dir.string());

    const std::filesystem::path cert_path = dir / "badpair_1.phiwit";
    REQUIRE(std::filesystem::exists(cert_path));
    const WitnessCertificate cert = parse_phiwit_file(cert_path.string());
    CHECK(cert.mode == Mode::Psi);
    CHECK(cert.x == Rational(1, 3));
    CHECK(cert.y == Rational(1, 3));
    CHECK(verify_certificate(cert).satisfied);

    std::ifstream index(dir / "index.csv");
    REQUIRE(index.good());
    std::string header, row;
    REQUIRE(std::getline(index, header));
    CHECK(header == "x,y,z,mode,certificate_path");
    REQUIRE(std::getline(index, row));
    CHECK(row == "1/3,1/3,1/2,psi,badpair_1.phiwit");
    std::filesystem::remove_all(dir);
}
