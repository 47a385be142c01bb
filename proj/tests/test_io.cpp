#include <doctest.h>

#include <sstream>

#include "testutil.hpp"

using namespace cqdyn;

namespace {

TimeSeries small_series() {
    CircuitParams p;
    p.ej1 = 30.0;
    p.ej2 = 5.0;
    p.em = 6.0;
    return simulate_series(p, DensityMatrix::pure_basis(0), TimeGrid{0.0, 2.0, 41});
}

} // namespace

TEST_CASE("format_number") {
    CHECK(format_number(0.0) == "0");
    CHECK(format_number(1.0) == "1");
    CHECK(format_number(0.5) == "0.5");
    CHECK(format_number(1.0 / 3.0) == "0.333333333333");
    CHECK(format_number(-2.5e-7) == "-2.5e-07");
}

TEST_CASE("series CSV") {
    const TimeSeries s = small_series();
    std::ostringstream os;
    write_series_csv(os, s);
    const std::string text = os.str();

    SUBCASE("header and initial row") {
        std::istringstream is(text);
        std::string line;
        std::getline(is, line);
        CHECK(line == "t,p00,p01,p10,p11,zeta,concurrence,purity");
        std::getline(is, line);
        CHECK(line == "0,1,0,0,0,0,0,1");
    }

    SUBCASE("one data row per grid point, LF only") {
        CHECK(std::count(text.begin(), text.end(), '\n') == 42); // header + 41 rows
        CHECK(text.find('\r') == std::string::npos);
    }

    SUBCASE("byte-identical across repeated writes") {
        std::ostringstream again;
        write_series_csv(again, s);
        CHECK(again.str() == text);
    }

    SUBCASE("round-trips at 1e-11 relative") {
        std::istringstream is(text);
        const CsvTable table = read_csv(is);
        REQUIRE(table.rows.size() == s.records.size());
        for (std::size_t i = 0; i < table.rows.size(); ++i) {
            const SeriesRecord& r = s.records[i];
            const double expected[8] = {r.t,
                                        r.populations[0],
                                        r.populations[1],
                                        r.populations[2],
                                        r.populations[3],
                                        r.zeta,
                                        r.concurrence,
                                        r.purity};
            REQUIRE(table.rows[i].size() == 8);
            for (int c = 0; c < 8; ++c) {
                const double got = table.rows[i][static_cast<std::size_t>(c)];
                CHECK(std::abs(got - expected[c]) <=
                      1e-11 * std::max(1.0, std::abs(expected[c])));
            }
        }
    }
}

TEST_CASE("sweep CSV uses empty fields for absent events") {
    SweepSummary with{2.0, 0.9, 1.5, 0.0, MemsEvent{0.5, 0.2, 0.01}};
    SweepSummary without{5.0, 0.1, 0.2, 3.5, std::nullopt};
    std::ostringstream os;
    write_sweep_csv(os, {with, without});
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    CHECK(line ==
          "axis_value,peak_concurrence,t_first_peak,esd_total_length,first_mems_t,first_mems_zeta");
    std::getline(is, line);
    CHECK(line == "2,0.9,1.5,0,0.5,0.2");
    std::getline(is, line);
    CHECK(line == "5,0.1,0.2,3.5,,");
}

TEST_CASE("mems CSV carries note rows and empty detections") {
    MemsReport rep;
    rep.note = "prediction degenerate: needs ej1 > 0 and ej2 > 0";
    MemsReportRow detection_only;
    detection_only.detected = MemsEvent{1.25, 0.31, 0.02};
    rep.rows.push_back(detection_only);
    std::ostringstream os;
    write_mems_csv(os, rep);
    const std::string text = os.str();
    CHECK(text.find("n,predicted_t,detected_t,zeta,deviation\n") == 0);
    CHECK(text.find("# note: prediction degenerate") != std::string::npos);
    CHECK(text.find(",,1.25,0.31,0.02") != std::string::npos);
}

TEST_CASE("esd CSV") {
    std::ostringstream os;
    write_esd_csv(os, {EsdInterval{0.0, 20.0}});
    CHECK(os.str() == "t_start,t_end,length\n0,20,20\n");
}

TEST_CASE("series SVG") {
    const TimeSeries s = small_series();
    std::ostringstream os;
    write_series_svg(os, s);
    const std::string svg = os.str();
    CHECK(svg.find("<svg") == 0);
    CHECK(svg.find("viewBox=\"0 0 800 400\"") != std::string::npos);
    std::size_t polylines = 0, pos = 0;
    while ((pos = svg.find("<polyline", pos)) != std::string::npos) {
        ++polylines;
        pos += 9;
    }
    CHECK(polylines == 7);
    for (const char* name : {"p00", "p01", "p10", "p11", "zeta", "concurrence", "purity"})
        CHECK(svg.find(name) != std::string::npos);
    CHECK(svg.rfind("</svg>\n") == svg.size() - 7);
}
