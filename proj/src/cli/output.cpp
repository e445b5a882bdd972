#include "spinlab/cli/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

namespace spinlab::cli {

namespace {

std::optional<double> numeric(const Cell& c) {
    if (const auto* d = std::get_if<double>(&c)) return std::isfinite(*d) ? std::optional<double>(*d) : std::nullopt;
    if (const auto* i = std::get_if<long long>(&c)) return static_cast<double>(*i);
    return std::nullopt;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + '"';
}

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string short_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

nlohmann::ordered_json json_cell(const Cell& c) {
    if (const auto* d = std::get_if<double>(&c)) {
        if (std::isfinite(*d)) return *d;
        return format_number(*d);
    }
    if (const auto* i = std::get_if<long long>(&c)) return *i;
    return std::get<std::string>(c);
}

std::string column_label(const Column& c) { return c.unit.empty() ? c.name : c.name + " [" + c.unit + "]"; }

// Interpolates a dark-blue to yellow ramp, t in [0, 1].
std::string ramp(double t) {
    static const double stops[3][3] = {{68, 1, 84}, {33, 145, 140}, {253, 231, 37}};
    t = std::clamp(t, 0.0, 1.0) * 2.0;
    const int k = std::min(1, static_cast<int>(t));
    const double f = t - k;
    char buf[16];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", static_cast<int>(stops[k][0] + f * (stops[k + 1][0] - stops[k][0])),
                  static_cast<int>(stops[k][1] + f * (stops[k + 1][1] - stops[k][1])),
                  static_cast<int>(stops[k][2] + f * (stops[k + 1][2] - stops[k][2])));
    return buf;
}

struct Frame {
    double x0 = 70, y0 = 30, w = 520, h = 320;
    double xmin = 0, xmax = 1, ymin = 0, ymax = 1;

    double px(double x) const { return x0 + (xmax > xmin ? (x - xmin) / (xmax - xmin) : 0.5) * w; }
    double py(double y) const { return y0 + h - (ymax > ymin ? (y - ymin) / (ymax - ymin) : 0.5) * h; }
};

void axes(std::ostringstream& out, const Frame& f, const std::string& xlabel, const std::string& ylabel) {
    out << "<rect x=\"" << f.x0 << "\" y=\"" << f.y0 << "\" width=\"" << f.w << "\" height=\"" << f.h
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    out << "<text x=\"" << f.x0 << "\" y=\"" << f.y0 + f.h + 16 << "\" font-size=\"11\">" << short_number(f.xmin) << "</text>\n";
    out << "<text x=\"" << f.x0 + f.w << "\" y=\"" << f.y0 + f.h + 16 << "\" font-size=\"11\" text-anchor=\"end\">"
        << short_number(f.xmax) << "</text>\n";
    out << "<text x=\"" << f.x0 - 6 << "\" y=\"" << f.y0 + f.h << "\" font-size=\"11\" text-anchor=\"end\">" << short_number(f.ymin)
        << "</text>\n";
    out << "<text x=\"" << f.x0 - 6 << "\" y=\"" << f.y0 + 10 << "\" font-size=\"11\" text-anchor=\"end\">" << short_number(f.ymax)
        << "</text>\n";
    out << "<text x=\"" << f.x0 + f.w / 2 << "\" y=\"" << f.y0 + f.h + 34 << "\" font-size=\"13\" text-anchor=\"middle\">"
        << xml_escape(xlabel) << "</text>\n";
    out << "<text x=\"18\" y=\"" << f.y0 + f.h / 2 << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
        << f.y0 + f.h / 2 << ")\">" << xml_escape(ylabel) << "</text>\n";
}

void line_chart(std::ostringstream& out, const ScanResult& r) {
    const auto& p = r.plot;
    std::map<std::string, std::vector<std::pair<double, double>>> series;
    std::vector<std::string> order;
    Frame f;
    bool first = true;
    for (const auto& row : r.rows) {
        const auto x = numeric(row[p.x]), y = numeric(row[p.y]);
        if (!x || !y) continue;
        std::string key;
        for (int c : p.series) key += (key.empty() ? "" : ", ") + r.columns[c].name + "=" + format_cell(row[c]);
        if (!series.count(key)) order.push_back(key);
        series[key].emplace_back(*x, *y);
        if (first) {
            f.xmin = f.xmax = *x;
            f.ymin = f.ymax = *y;
            first = false;
        }
        f.xmin = std::min(f.xmin, *x), f.xmax = std::max(f.xmax, *x);
        f.ymin = std::min(f.ymin, *y), f.ymax = std::max(f.ymax, *y);
    }
    axes(out, f, column_label(r.columns[p.x]), column_label(r.columns[p.y]));
    const int n = static_cast<int>(order.size());
    for (int s = 0; s < n; ++s) {
        const std::string color = ramp(n > 1 ? 0.85 * s / (n - 1) : 0.0);
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (const auto& [x, y] : series[order[s]]) out << short_number(f.px(x)) << ',' << short_number(f.py(y)) << ' ';
        out << "\"/>\n";
        if (!order[s].empty() && s < 12)
            out << "<text x=\"" << f.x0 + f.w + 4 << "\" y=\"" << f.y0 + 12 + 14 * s << "\" font-size=\"10\" fill=\"" << color
                << "\">" << xml_escape(order[s]) << "</text>\n";
    }
}

void heatmap(std::ostringstream& out, const ScanResult& r) {
    const auto& p = r.plot;
    std::set<double> xs, ys;
    double zmin = INFINITY, zmax = -INFINITY;
    for (const auto& row : r.rows) {
        const auto x = numeric(row[p.x]), y = numeric(row[p.y]), z = numeric(row[p.value]);
        if (!x || !y || !z) continue;
        xs.insert(*x), ys.insert(*y);
        zmin = std::min(zmin, *z), zmax = std::max(zmax, *z);
    }
    if (xs.empty()) return;
    Frame f;
    f.xmin = *xs.begin(), f.xmax = *xs.rbegin(), f.ymin = *ys.begin(), f.ymax = *ys.rbegin();
    const std::vector<double> xv(xs.begin(), xs.end()), yv(ys.begin(), ys.end());
    const double cw = f.w / xv.size(), ch = f.h / yv.size();
    for (const auto& row : r.rows) {
        const auto x = numeric(row[p.x]), y = numeric(row[p.y]), z = numeric(row[p.value]);
        if (!x || !y || !z) continue;
        const auto i = std::lower_bound(xv.begin(), xv.end(), *x) - xv.begin();
        const auto j = std::lower_bound(yv.begin(), yv.end(), *y) - yv.begin();
        out << "<rect x=\"" << short_number(f.x0 + i * cw) << "\" y=\"" << short_number(f.y0 + f.h - (j + 1) * ch) << "\" width=\""
            << short_number(cw) << "\" height=\"" << short_number(ch) << "\" fill=\""
            << ramp(zmax > zmin ? (*z - zmin) / (zmax - zmin) : 0.0) << "\"/>\n";
    }
    axes(out, f, column_label(r.columns[p.x]), column_label(r.columns[p.y]));
    out << "<text x=\"" << f.x0 + f.w + 4 << "\" y=\"" << f.y0 + 12 << "\" font-size=\"10\">" << xml_escape(r.columns[p.value].name)
        << "</text>\n";
    out << "<text x=\"" << f.x0 + f.w + 4 << "\" y=\"" << f.y0 + 26 << "\" font-size=\"10\">max " << short_number(zmax) << "</text>\n";
    out << "<text x=\"" << f.x0 + f.w + 4 << "\" y=\"" << f.y0 + 40 << "\" font-size=\"10\">min " << short_number(zmin) << "</text>\n";
}

}  // namespace

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_cell(const Cell& c) {
    if (const auto* d = std::get_if<double>(&c)) return format_number(*d);
    if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
    return std::get<std::string>(c);
}

std::string to_csv(const ScanResult& r) {
    std::ostringstream out;
    out << "# spinlab v" << r.version << " config=" << r.config_hash << '\n';
    for (size_t i = 0; i < r.columns.size(); ++i) out << (i ? "," : "") << csv_field(column_label(r.columns[i]));
    out << '\n';
    for (const auto& row : r.rows) {
        for (size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_field(format_cell(row[i]));
        out << '\n';
    }
    for (const auto& [k, v] : r.summary) out << "# " << k << '=' << format_cell(v) << '\n';
    return out.str();
}

std::string to_json(const ScanResult& r) {
    nlohmann::ordered_json j;
    j["tool"] = "spinlab";
    j["version"] = r.version;
    j["config"] = r.config_hash;
    j["title"] = r.title;
    auto& cols = j["columns"] = nlohmann::ordered_json::array();
    for (const auto& c : r.columns) cols.push_back({{"name", c.name}, {"unit", c.unit}});
    auto& rows = j["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : r.rows) {
        nlohmann::ordered_json rec;
        for (size_t i = 0; i < row.size(); ++i) rec[r.columns[i].name] = json_cell(row[i]);
        rows.push_back(std::move(rec));
    }
    auto& summary = j["summary"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.summary) summary[k] = json_cell(v);
    return j.dump(2) + "\n";
}

std::string to_svg(const ScanResult& r) {
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"760\" height=\"400\" font-family=\"sans-serif\">\n";
    out << "<!-- spinlab v" << r.version << " config=" << r.config_hash << " -->\n";
    out << "<rect width=\"760\" height=\"400\" fill=\"white\"/>\n";
    out << "<text x=\"330\" y=\"20\" font-size=\"14\" text-anchor=\"middle\">" << xml_escape(r.title) << "</text>\n";
    if (r.plot.kind == PlotHint::Line) line_chart(out, r);
    else if (r.plot.kind == PlotHint::Heatmap) heatmap(out, r);
    int y = 60;
    if (r.plot.kind == PlotHint::None)
        for (const auto& [k, v] : r.summary) {
            out << "<text x=\"40\" y=\"" << y << "\" font-size=\"12\">" << xml_escape(k + " = " + format_cell(v)) << "</text>\n";
            y += 16;
        }
    out << "</svg>\n";
    return out.str();
}

std::string render(const ScanResult& r, OutputFormat f) {
    switch (f) {
        case OutputFormat::Csv: return to_csv(r);
        case OutputFormat::Json: return to_json(r);
        case OutputFormat::Svg: return to_svg(r);
    }
    return to_csv(r);
}

void write_output(const std::string& path, const std::string& body, std::ostream& console) {
    if (path == "-") {
        console << body << std::flush;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open output file " + path);
    out << body;
    out.close();
    if (!out) throw IoError("write failed for " + path);
}

}  // namespace spinlab::cli
