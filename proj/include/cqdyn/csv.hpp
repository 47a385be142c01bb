#pragma once

#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "cqdyn/analysis.hpp"

namespace cqdyn {

// 12 significant digits, '.' decimal separator, no locale surprises.
inline std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return std::string(buf);
}

// All writers emit LF line endings and UTF-8 (plain ASCII, in fact).

inline const char* series_csv_header() { return "t,p00,p01,p10,p11,zeta,concurrence,purity"; }

inline void write_series_csv(std::ostream& os, const TimeSeries& series) {
    os << series_csv_header() << "\n";
    for (const SeriesRecord& r : series.records) {
        os << format_number(r.t);
        for (double p : r.populations) os << ',' << format_number(p);
        os << ',' << format_number(r.zeta) << ',' << format_number(r.concurrence) << ','
           << format_number(r.purity) << "\n";
    }
}

inline void write_sweep_csv(std::ostream& os, const std::vector<SweepSummary>& summaries) {
    os << "axis_value,peak_concurrence,t_first_peak,esd_total_length,first_mems_t,"
          "first_mems_zeta\n";
    for (const SweepSummary& s : summaries) {
        os << format_number(s.axis_value) << ',' << format_number(s.peak_concurrence) << ','
           << format_number(s.t_first_peak) << ',' << format_number(s.esd_total_length) << ',';
        if (s.first_mems) {
            os << format_number(s.first_mems->t) << ',' << format_number(s.first_mems->zeta);
        } else {
            os << ',';
        }
        os << "\n";
    }
}

inline void write_mems_csv(std::ostream& os, const MemsReport& report) {
    os << "n,predicted_t,detected_t,zeta,deviation\n";
    if (report.note) os << "# note: " << *report.note << "\n";
    for (const MemsReportRow& row : report.rows) {
        if (row.n > 0) os << row.n;
        os << ',';
        if (row.predicted_t) os << format_number(*row.predicted_t);
        os << ',';
        if (row.detected) {
            os << format_number(row.detected->t) << ',' << format_number(row.detected->zeta)
               << ',' << format_number(row.detected->deviation);
        } else {
            os << ",,";
        }
        os << "\n";
    }
}

inline void write_esd_csv(std::ostream& os, const std::vector<EsdInterval>& intervals) {
    os << "t_start,t_end,length\n";
    for (const EsdInterval& iv : intervals)
        os << format_number(iv.t_start) << ',' << format_number(iv.t_end) << ','
           << format_number(iv.length()) << "\n";
}

// Minimal reader for the series format; used by round-trip checks.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

inline CsvTable read_csv(std::istream& is) {
    CsvTable table;
    std::string line;
    bool first = true;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (!line.empty() && line.back() == ',') cells.push_back("");
        if (first) {
            table.header = cells;
            first = false;
            continue;
        }
        std::vector<double> row;
        row.reserve(cells.size());
        for (const std::string& c : cells) {
            if (c.empty()) {
                row.push_back(std::numeric_limits<double>::quiet_NaN());
                continue;
            }
            char* end = nullptr;
            const double v = std::strtod(c.c_str(), &end);
            if (end == c.c_str()) throw ParseError("read_csv: bad number '" + c + "'");
            row.push_back(v);
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

} // namespace cqdyn
