#include "wittenlab/report.hpp"

#include <charconv>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace wittenlab {

std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void ExperimentReport::add_row(std::initializer_list<std::string> cells) {
    rows.emplace_back(cells);
}

void ExperimentReport::add_check(const std::string& what, bool ok, const std::string& detail) {
    std::string line = "CHECK " + what + (ok ? " PASS" : " FAIL");
    if (!detail.empty())
        line += " " + detail;
    check_lines.push_back(line);
    passed = passed && ok;
}

std::string ExperimentReport::body() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < columns.size(); ++i)
        os << columns[i] << (i + 1 == columns.size() ? '\n' : ',');
    for (const auto& row : rows)
        for (std::size_t i = 0; i < row.size(); ++i)
            os << row[i] << (i + 1 == row.size() ? '\n' : ',');
    for (const auto& line : check_lines)
        os << "# " << line << "\n";
    return os.str();
}

void ExperimentReport::write_csv(const std::string& path) const {
    const std::filesystem::path p(path);
    if (p.has_parent_path())
        std::filesystem::create_directories(p.parent_path());
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("ExperimentReport: cannot open " + path);
    out << "# manifest: " << manifest << "\n" << body();
}

std::string make_manifest(const std::vector<std::pair<std::string, std::string>>& kv) {
    std::ostringstream os;
    const auto now = std::chrono::system_clock::now();
    os << "time=" << std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch()).count();
    for (const auto& [key, value] : kv)
        os << " " << key << "=" << value;
    return os.str();
}

} // namespace wittenlab
