#include "spinlab/cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <boost/algorithm/string.hpp>

namespace spinlab::cli {

namespace {

std::optional<double> to_double(std::string_view s) {
    double v = 0.0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
    return v;
}

double require_double(const std::string& s, const std::string& what) {
    const auto v = to_double(boost::algorithm::trim_copy(s));
    if (!v) throw UsageError(what + ": not a number: '" + s + "'");
    return *v;
}

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::vector<double> GridSpec::values() const {
    std::vector<double> out;
    if (count == 1) return {lo};
    for (int i = 0; i < count; ++i) out.push_back((lo * (count - 1 - i) + hi * i) / (count - 1));
    return out;
}

GridSpec parse_grid(const std::string& text) {
    std::vector<std::string> parts;
    boost::algorithm::split(parts, text, boost::algorithm::is_any_of(":"));
    if (parts.size() == 1) {
        const double v = require_double(parts[0], "grid");
        return {v, v, 1};
    }
    if (parts.size() != 3) throw UsageError("grid must be a:b:n, got '" + text + "'");
    GridSpec g{require_double(parts[0], "grid start"), require_double(parts[1], "grid end"), 0};
    const double n = require_double(parts[2], "grid count");
    if (n < 1 || n != static_cast<int>(n)) throw UsageError("grid count must be a positive integer: '" + text + "'");
    g.count = static_cast<int>(n);
    return g;
}

OutputFormat parse_format(const std::string& text) {
    if (text == "csv") return OutputFormat::Csv;
    if (text == "json") return OutputFormat::Json;
    if (text == "svg") return OutputFormat::Svg;
    throw UsageError("unknown format '" + text + "' (csv, json, svg)");
}

std::string to_string(OutputFormat f) {
    switch (f) {
        case OutputFormat::Csv: return "csv";
        case OutputFormat::Json: return "json";
        case OutputFormat::Svg: return "svg";
    }
    return "csv";
}

double RunConfig::number(const std::string& key, double fallback) const {
    auto it = model.find(key);
    return it == model.end() ? fallback : require_double(it->second, key);
}

int RunConfig::integer(const std::string& key, int fallback) const {
    auto it = model.find(key);
    if (it == model.end()) return fallback;
    const double v = require_double(it->second, key);
    if (v != static_cast<int>(v)) throw UsageError(key + ": expected an integer, got '" + it->second + "'");
    return static_cast<int>(v);
}

std::string RunConfig::text(const std::string& key, const std::string& fallback) const {
    auto it = model.find(key);
    return it == model.end() ? fallback : it->second;
}

std::vector<double> RunConfig::list(const std::string& key) const {
    std::vector<double> out;
    auto it = model.find(key);
    if (it == model.end()) return out;
    std::vector<std::string> parts;
    boost::algorithm::split(parts, it->second, boost::algorithm::is_any_of(","));
    for (const auto& p : parts)
        if (!boost::algorithm::trim_copy(p).empty()) out.push_back(require_double(p, key));
    return out;
}

std::vector<double> RunConfig::axis(const std::string& key, const GridSpec& fallback) const {
    if (auto it = grids.find(key); it != grids.end()) return it->second.values();
    if (has(key)) return {number(key, 0.0)};
    return fallback.values();
}

const std::vector<std::string>& known_keys(const std::string& section) {
    static const std::map<std::string, std::vector<std::string>> keys{
        {"model", {"gamma", "lambda", "h", "N", "L", "family", "state", "D", "theta", "alpha", "beta", "tensor",
                   "steps", "modes", "sizes", "path", "fits", "seed"}},
        {"grid", {"gamma", "lambda", "h", "L", "path"}},
        {"output", {"path", "format", "check"}},
    };
    static const std::vector<std::string> none;
    auto it = keys.find(section);
    return it == keys.end() ? none : it->second;
}

void apply_config_text(RunConfig& cfg, const std::string& text) {
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto cut = line.find_first_of("#;");
        if (cut != std::string::npos) line.erase(cut);
        boost::algorithm::trim(line);
        if (line.empty()) continue;
        const std::string where = "config line " + std::to_string(lineno);
        if (line.front() == '[') {
            if (line.back() != ']') throw UsageError(where + ": malformed section header");
            section = boost::algorithm::trim_copy(line.substr(1, line.size() - 2));
            if (known_keys(section).empty()) throw UsageError(where + ": unknown section [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw UsageError(where + ": expected key=value");
        if (section.empty()) throw UsageError(where + ": key outside of a section");
        const std::string key = boost::algorithm::trim_copy(line.substr(0, eq));
        const std::string value = boost::algorithm::trim_copy(line.substr(eq + 1));
        const auto& allowed = known_keys(section);
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            throw UsageError(where + ": unknown key '" + key + "' in [" + section + "]");
        if (section == "model") {
            if (key == "seed") cfg.seed = static_cast<uint64_t>(require_double(value, "seed"));
            else cfg.model[key] = value;
        } else if (section == "grid") {
            cfg.grids[key] = parse_grid(value);
        } else if (key == "path") {
            cfg.out_path = value;
        } else if (key == "format") {
            cfg.format = parse_format(value);
        } else {
            const std::string v = boost::algorithm::to_lower_copy(value);
            if (v == "true" || v == "1" || v == "yes") cfg.check = true;
            else if (v == "false" || v == "0" || v == "no") cfg.check = false;
            else throw UsageError(where + ": check expects true or false");
        }
    }
}

void load_config_file(RunConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config file " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    apply_config_text(cfg, buf.str());
}

std::string canonical_text(const RunConfig& cfg) {
    std::ostringstream out;
    out << "command=" << cfg.command << '\n';
    for (const auto& [k, v] : cfg.model) {
        const auto num = to_double(v);
        out << "model." << k << '=' << (num ? g17(*num) : v) << '\n';
    }
    for (const auto& [k, g] : cfg.grids) out << "grid." << k << '=' << g17(g.lo) << ':' << g17(g.hi) << ':' << g.count << '\n';
    out << "output.format=" << to_string(cfg.format) << '\n';
    out << "output.check=" << (cfg.check ? 1 : 0) << '\n';
    out << "seed=" << cfg.seed << '\n';
    return out.str();
}

uint64_t fnv1a(std::string_view bytes) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string config_hash(const RunConfig& cfg) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(canonical_text(cfg))));
    return buf;
}

int default_jobs() {
    const char* env = std::getenv("SPINLAB_JOBS");
    if (!env) return 1;
    const int n = std::atoi(env);
    return n > 0 ? n : 1;
}

}  // namespace spinlab::cli
