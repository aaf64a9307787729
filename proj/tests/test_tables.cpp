#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "ampmux/tables.hpp"
#include "doctest.h"

using namespace ampmux;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE_MESSAGE(in.good(), "missing file: " << path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (!line.empty() && line.back() == ',') cells.push_back("");
        rows.push_back(cells);
    }
    return rows;
}

}  // namespace

TEST_SUITE("tables") {

TEST_CASE("reference tables match the golden renderings byte for byte") {
    const std::string golden_dir = AMPMUX_GOLDEN_DIR;
    CHECK(render_reference_table(1, std::nullopt, EmitFormat::Text) ==
          read_file(golden_dir + "/table1.txt"));
    CHECK(render_reference_table(2, std::nullopt, EmitFormat::Text) ==
          read_file(golden_dir + "/table2.txt"));
}

TEST_CASE("selected cells round to the reference values") {
    const std::string table1 = render_reference_table(1, std::nullopt, EmitFormat::Text);
    CHECK(table1.find("578.95") != std::string::npos);   // C, k=22
    CHECK(table1.find("1352.94") != std::string::npos);  // C, k=23
    CHECK(table1.find("1200.00") != std::string::npos);  // B, k=24

    const std::string table2 = render_reference_table(2, std::nullopt, EmitFormat::Text);
    CHECK(table2.find("807.51") != std::string::npos);   // C, k=8
    CHECK(table2.find("1533.68") != std::string::npos);  // B, k=9

    // C runs out at k=9 and k=10; the cells render as dashes.
    const auto rows = parse_csv(render_reference_table(2, std::nullopt, EmitFormat::Csv));
    REQUIRE(rows.size() == 12);  // header + k=0..10
    CHECK(rows[10][3].empty());  // k=9, column C
    CHECK(rows[11][2].empty());  // k=10, column B
    CHECK(rows[11][3].empty());  // k=10, column C
    CHECK(std::stod(rows[9][3]) == doctest::Approx(807.51).epsilon(1e-5));
}

TEST_CASE("single-scenario tables restrict the columns") {
    const auto rows = parse_csv(render_reference_table(1, std::string("C"), EmitFormat::Csv));
    REQUIRE(rows.size() == 26);  // header + k=0..24
    REQUIRE(rows[0].size() == 2);
    CHECK(rows[0][1] == "C");
    CHECK(std::stod(rows[23][1]) == doctest::Approx(578.95).epsilon(1e-5));   // k=22
    CHECK(std::stod(rows[24][1]) == doctest::Approx(1352.94).epsilon(1e-5));  // k=23
    CHECK(rows[25][1].empty());  // k=24 infeasible
    CHECK_THROWS_AS(render_reference_table(1, std::string("D"), EmitFormat::Text),
                    std::invalid_argument);
    CHECK_THROWS_AS(render_reference_table(4, std::nullopt, EmitFormat::Text),
                    std::invalid_argument);
}

TEST_CASE("summary table lists each task and leaves loaded full detection blank") {
    const std::string text = render_reference_table(3, std::nullopt, EmitFormat::Text);
    CHECK(text.find("counting (pnr)") != std::string::npos);
    CHECK(text.find("pixel array") != std::string::npos);
    CHECK(text.find("coincidence") != std::string::npos);
    CHECK(text.find("full identification") != std::string::npos);
    CHECK(text.find("r_k = 2^(k-1) dR") != std::string::npos);
    CHECK(text.rfind("-\n") == text.size() - 2);  // loaded full cell is the dash
}

TEST_CASE("growth sweep emits the expected ideal ladders") {
    SweepOptions options;
    options.modes = {"pixel", "coincidence", "full"};
    options.k_min = 1;
    options.k_max = 6;
    const auto rows = parse_csv(render_growth_sweep(options));
    REQUIRE(rows.size() == 7);
    REQUIRE(rows[0] == std::vector<std::string>{"k", "pixel_ideal", "pixel_nonideal",
                                                "coincidence2_ideal", "coincidence2_nonideal",
                                                "full_ideal"});
    const std::vector<double> pixel_ideal = {2, 4, 6, 8, 10, 12};
    const std::vector<double> pairs_ideal = {2, 4, 8, 14, 24, 40};
    const std::vector<double> full_ideal = {2, 4, 8, 16, 32, 64};
    for (int k = 1; k <= 6; ++k) {
        const auto& row = rows[static_cast<std::size_t>(k)];
        CHECK(std::stod(row[1]) == pixel_ideal[static_cast<std::size_t>(k - 1)]);
        CHECK(std::stod(row[3]) == pairs_ideal[static_cast<std::size_t>(k - 1)]);
        CHECK(std::stod(row[5]) == full_ideal[static_cast<std::size_t>(k - 1)]);
    }
}

TEST_CASE("growth sweep leaves infeasible cells empty") {
    SweepOptions options;
    options.modes = {"coincidence"};
    options.k_min = 9;
    options.k_max = 10;
    // Non-ideal condition C: feasible through element 9, infeasible at 10.
    const auto rows = parse_csv(render_growth_sweep(options));
    REQUIRE(rows.size() == 3);
    CHECK_FALSE(rows[1][2].empty());
    CHECK(rows[2][2].empty());
}

}  // TEST_SUITE
