#ifndef WITTENLAB_REPORT_HPP
#define WITTENLAB_REPORT_HPP

#include <string>
#include <vector>

namespace wittenlab {

// Shortest round-tripping decimal form of a double (deterministic CSV bodies).
std::string format_double(double v);

// Tabular result of one harness run. The manifest line is the only place a
// timestamp may appear; bodies are byte-stable for a fixed config and seed.
struct ExperimentReport {
    std::string name;
    std::string manifest; // key=value ... (grid, f, epsilon, D, seed, tool version, time)
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> check_lines; // "CHECK <what> PASS|FAIL ..." one per check
    bool passed = true;

    void add_row(std::initializer_list<std::string> cells);
    void add_check(const std::string& what, bool ok, const std::string& detail = {});
    void write_csv(const std::string& path) const;
    std::string body() const; // header + rows, no manifest (determinism tests)
};

std::string make_manifest(const std::vector<std::pair<std::string, std::string>>& kv);

} // namespace wittenlab

#endif
