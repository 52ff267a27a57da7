// CSV and file helpers. All bulk numeric series go to CSV, configs and
// reports to JSON; writes are atomic (temp file + rename).

#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <system_error>

#include "sumax/phi_kernel.hpp"

namespace sumax {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline void atomic_write(const std::filesystem::path& path,
                         const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path tmp = path.parent_path() /
                         (path.filename().string() + ".tmp");
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open " + tmp.string());
        out << content;
        if (!out.flush()) throw IoError("write failed: " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) throw IoError("rename failed: " + path.string() + ": " + ec.message());
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// LtCurve CSV, header "s,value,stderr,label"; stderr empty for analytic
// curves.
inline std::string lt_curve_csv(const LtCurve& c) {
    std::ostringstream out;
    out << "s,value,stderr,label\n";
    for (std::size_t i = 0; i < c.s_grid.size(); ++i) {
        out << format_double(c.s_grid[i]) << ',' << format_double(c.values[i])
            << ',';
        if (c.has_stderr()) out << format_double(c.stderrs[i]);
        out << ',' << c.label << '\n';
    }
    return out.str();
}

inline LtCurve lt_curve_from_csv(const std::string& csv) {
    std::istringstream in(csv);
    std::string line;
    if (!std::getline(in, line) || line.rfind("s,value,stderr,label", 0) != 0)
        throw IoError("lt curve csv: bad header");
    LtCurve c;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string f0, f1, f2, f3;
        std::getline(row, f0, ',');
        std::getline(row, f1, ',');
        std::getline(row, f2, ',');
        std::getline(row, f3);
        c.s_grid.push_back(std::stod(f0));
        c.values.push_back(std::stod(f1));
        if (!f2.empty()) c.stderrs.push_back(std::stod(f2));
        c.label = f3;
    }
    if (!c.stderrs.empty() && c.stderrs.size() != c.s_grid.size())
        throw IoError("lt curve csv: ragged stderr column");
    return c;
}

}  // namespace sumax
