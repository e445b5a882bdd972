#pragma once
#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "spinlab/cli/config.hpp"

namespace spinlab::cli {

using Cell = std::variant<double, long long, std::string>;

struct Column {
    std::string name;
    std::string unit;
};

struct PlotHint {
    enum Kind { Line, Heatmap, None } kind = None;
    int x = 0;
    int y = 1;                // value column for lines, second axis for heatmaps
    int value = 2;            // heatmaps only
    std::vector<int> series;  // columns whose values split lines into series
};

struct ScanResult {
    std::string title;
    std::vector<Column> columns;
    std::vector<std::vector<Cell>> rows;
    std::vector<std::pair<std::string, Cell>> summary;
    std::string version;
    std::string config_hash;
    double wall_seconds = 0.0;  // reported on stderr, never serialized
    PlotHint plot;
};

std::string format_number(double v);
std::string format_cell(const Cell& c);

std::string to_csv(const ScanResult& r);
std::string to_json(const ScanResult& r);
std::string to_svg(const ScanResult& r);
std::string render(const ScanResult& r, OutputFormat f);

// "-" writes to console.
void write_output(const std::string& path, const std::string& body, std::ostream& console);

}  // namespace spinlab::cli
