#pragma once
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace spinlab::cli {

// Bad flags, unknown config keys, malformed values.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Inclusive linear grid lo..hi with count points; count == 1 gives lo.
struct GridSpec {
    double lo = 0.0;
    double hi = 0.0;
    int count = 1;

    std::vector<double> values() const;
};

// "a:b:n" or a single number.
GridSpec parse_grid(const std::string& text);

enum class OutputFormat { Csv, Json, Svg };
OutputFormat parse_format(const std::string& text);
std::string to_string(OutputFormat f);

struct RunConfig {
    std::string command;
    std::map<std::string, std::string> model;
    std::map<std::string, GridSpec> grids;
    std::string out_path = "-";
    OutputFormat format = OutputFormat::Csv;
    bool check = false;
    uint64_t seed = 0;
    int jobs = 1;  // affects scheduling only, never the output

    bool has(const std::string& key) const { return model.count(key) != 0; }
    double number(const std::string& key, double fallback) const;
    int integer(const std::string& key, int fallback) const;
    std::string text(const std::string& key, const std::string& fallback) const;
    std::vector<double> list(const std::string& key) const;  // comma separated, empty when absent

    // grid[key] if set, else the single model value, else the fallback grid
    std::vector<double> axis(const std::string& key, const GridSpec& fallback) const;
};

const std::vector<std::string>& known_keys(const std::string& section);

// Sections [model], [grid], [output]; '#' and ';' start comments.
void apply_config_text(RunConfig& cfg, const std::string& text);
void load_config_file(RunConfig& cfg, const std::string& path);

// Canonical key=value listing used for hashing; excludes out_path and jobs.
std::string canonical_text(const RunConfig& cfg);
uint64_t fnv1a(std::string_view bytes);
std::string config_hash(const RunConfig& cfg);

// SPINLAB_JOBS when set and positive, else 1.
int default_jobs();

}  // namespace spinlab::cli
