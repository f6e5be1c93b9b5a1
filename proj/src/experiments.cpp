#include "vlcsec/experiments.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

#include "vlcsec/errors.hpp"

namespace vlcsec {

namespace {

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmtg(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

std::size_t grid_size(double start, double stop, double step) {
    if (!(step > 0.0)) throw ConfigError("key 'range': step must be > 0");
    if (!(stop >= start)) throw ConfigError("key 'range': stop must be >= start");
    return static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
}

std::vector<SelectionKind> canonical_schemes(const std::vector<SelectionKind>& requested) {
    if (requested.empty()) throw ConfigError("key 'schemes': at least one scheme required");
    std::vector<SelectionKind> order{SelectionKind::US, SelectionKind::CAS, SelectionKind::GS};
    std::vector<SelectionKind> result;
    for (SelectionKind kind : order) {
        for (SelectionKind r : requested) {
            if (r == kind) {
                result.push_back(kind);
                break;
            }
        }
    }
    return result;
}

std::vector<double> scheme_weights(SelectionKind kind, const LinkPair& link) {
    switch (kind) {
        case SelectionKind::US: return us_probs(link.led_count()).probs;
        case SelectionKind::CAS: return cas_probs(link).probs;
        case SelectionKind::GS: return gs_probs(link).probs;
    }
    throw DomainError("unknown selection scheme");
}

std::string branch_summary(const BoundResult& result) {
    bool low = false;
    bool sat = false;
    for (UpperBranch b : result.upper_branch) {
        low = low || b == UpperBranch::LowIntensity;
        sat = sat || b == UpperBranch::Saturated;
    }
    std::string s;
    if (low) s += 'A';
    if (sat) s += 'B';
    if (s.empty()) s = "-";
    return s;
}

// Index-addressed parallel map: results land by index, so the output is
// identical for any worker count. The lowest-index failure wins.
void run_indexed(std::size_t n, const std::function<void(std::size_t)>& eval) {
    const unsigned workers = std::min<std::size_t>(worker_count(), n);
    if (n == 0) return;
    if (workers < 2) {
        for (std::size_t i = 0; i < n; ++i) eval(i);
        return;
    }
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    auto body = [&]() {
        while (!failed.load(std::memory_order_relaxed)) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                eval(i);
            } catch (...) {
                errors[i] = std::current_exception();
                failed.store(true, std::memory_order_relaxed);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(body);
    body();
    for (std::thread& t : pool) t.join();
    for (std::size_t i = 0; i < n; ++i) {
        if (errors[i]) std::rethrow_exception(errors[i]);
    }
}

const char* variable_label(SweepVariable v) {
    switch (v) {
        case SweepVariable::PdB: return "p_db";
        case SweepVariable::Xi: return "xi";
        case SweepVariable::RatioDb: return "ratio_db";
        case SweepVariable::AdB: return "a_db";
    }
    return "x";
}

void validate_sweep_spec(const SweepSpec& spec) {
    grid_size(spec.start, spec.stop, spec.step);  // validates the range shape
    if (spec.variable == SweepVariable::Xi && (!(spec.start > 0.0) || !(spec.stop < 1.0))) {
        throw ConfigError("key 'range': dimming targets must lie in (0, 1)");
    }
    if (spec.variable == SweepVariable::AdB && spec.scenario == ScenarioKind::AvgOnly) {
        throw ConfigError("key 'sweep': peak sweeps need scenario = peak");
    }
    if (spec.variable != SweepVariable::Xi && (!(spec.xi > 0.0) || !(spec.xi < 1.0))) {
        throw ConfigError("key 'xi': must lie in (0, 1)");
    }
    if (spec.scenario == ScenarioKind::AvgOnly && spec.a_db.has_value()) {
        throw ConfigError("key 'a_db': only valid with scenario = peak");
    }
    if (spec.mode == SweepMode::Geometry) {
        if (!spec.layout.has_value()) throw ConfigError("key 'layout': required in geometry mode");
        if (!spec.layout->eve.has_value()) {
            throw ConfigError("key 'eve.pos': required in geometry mode");
        }
        if (spec.variable == SweepVariable::RatioDb) {
            throw ConfigError("key 'sweep': ratio_db sweeps require ratio mode");
        }
    } else if (spec.led_count == 0) {
        throw ConfigError("key 'm': LED count must be >= 1");
    }
    canonical_schemes(spec.schemes);
}

LinkPair sweep_link(const SweepSpec& spec, double x) {
    if (spec.mode == SweepMode::Geometry) {
        const RoomLayout& layout = *spec.layout;
        const double sigma = layout.noise_std();
        return geometry_link(layout.leds, layout.bob, *layout.eve, sigma, sigma);
    }
    const double ratio_db = spec.variable == SweepVariable::RatioDb ? x : spec.ratio_db;
    return make_ratio_link(db_to_linear(ratio_db), spec.led_count, default_noise_std());
}

Scenario sweep_scenario(const SweepSpec& spec, double x) {
    const double p_db = spec.variable == SweepVariable::PdB ? x : spec.p_db;
    const double nominal = db_to_linear(p_db);
    const double xi = spec.variable == SweepVariable::Xi ? x : spec.xi;
    if (spec.scenario == ScenarioKind::AvgOnly) return avg_scenario(nominal, xi);
    double peak = nominal;
    if (spec.variable == SweepVariable::AdB) {
        peak = db_to_linear(x);
    } else if (spec.a_db.has_value()) {
        peak = db_to_linear(*spec.a_db);
    }
    return peak_scenario(nominal, peak, xi);
}

}  // namespace

SweepTable run_sweep(const SweepSpec& spec) {
    validate_sweep_spec(spec);
    const std::vector<SelectionKind> schemes = canonical_schemes(spec.schemes);
    const std::size_t n = grid_size(spec.start, spec.stop, spec.step);

    std::vector<std::vector<SweepRow>> per_point(n);
    run_indexed(n, [&](std::size_t i) {
        const double x = spec.start + static_cast<double>(i) * spec.step;
        const LinkPair link = sweep_link(spec, x);
        const Scenario scenario = sweep_scenario(spec, x);
        std::vector<SweepRow>& rows = per_point[i];
        rows.reserve(schemes.size());
        for (SelectionKind kind : schemes) {
            const BoundResult bounds = weighted_bounds(link, scheme_weights(kind, link), scenario);
            SweepRow row;
            row.x = x;
            row.scheme = kind;
            row.lower_nats = bounds.lower;
            row.upper_nats = bounds.upper;
            row.clamped = bounds.clamped;
            row.branch = branch_summary(bounds);
            rows.push_back(std::move(row));
        }
    });

    SweepTable table;
    table.x_label = variable_label(spec.variable);
    table.rows.reserve(n * schemes.size());
    for (std::vector<SweepRow>& rows : per_point) {
        for (SweepRow& row : rows) table.rows.push_back(std::move(row));
    }
    return table;
}

GapTable gap_table(ScenarioKind scenario, const std::vector<double>& ratios,
                   const std::vector<double>& p_db, double xi) {
    if (ratios.empty()) throw ConfigError("key 'ratios': at least one ratio required");
    if (p_db.empty()) throw ConfigError("key 'p_db': at least one intensity required");
    if (!(xi > 0.0) || !(xi < 1.0)) throw ConfigError("key 'xi': must lie in (0, 1)");
    for (double r : ratios) {
        if (!(r > 0.0)) throw ConfigError("key 'ratios': ratios must be > 0");
    }

    GapTable table;
    table.scenario = scenario;
    table.xi = xi;
    table.ratios = ratios;
    table.p_db = p_db;
    table.gaps.assign(p_db.size(), std::vector<double>(ratios.size(), 0.0));
    const double sigma = default_noise_std();
    for (std::size_t ip = 0; ip < p_db.size(); ++ip) {
        const double nominal = db_to_linear(p_db[ip]);
        const Scenario sc = scenario == ScenarioKind::AvgOnly
                                ? avg_scenario(nominal, xi)
                                : peak_scenario(nominal, nominal, xi);
        for (std::size_t ir = 0; ir < ratios.size(); ++ir) {
            const LinkPair link = make_ratio_link(ratios[ir], 1, sigma);
            const BoundResult bounds = weighted_bounds(link, {1.0}, sc);
            table.gaps[ip][ir] = bounds.raw_upper - bounds.raw_lower;
        }
    }
    return table;
}

std::vector<PlaneAverage> plane_average(const PlaneSpec& spec) {
    if (spec.nx == 0 || spec.ny == 0) throw ConfigError("key 'grid': grid must be at least 1x1");
    if (!(spec.ratio > 0.0)) throw ConfigError("key 'ratio_db': ratio must be > 0");
    if (spec.layout.leds.empty()) throw ConfigError("key 'led[0].pos': layout has no LEDs");
    const std::vector<SelectionKind> schemes = canonical_schemes(spec.schemes);

    const double nominal = db_to_linear(spec.p_db);
    const Scenario scenario =
        spec.scenario == ScenarioKind::AvgOnly
            ? avg_scenario(nominal, spec.xi)
            : peak_scenario(nominal, spec.a_db ? db_to_linear(*spec.a_db) : nominal, spec.xi);
    const double sigma = spec.layout.noise_std();

    struct PointValue {
        double lower = 0.0;
        double upper = 0.0;
        bool clamped = false;
    };
    const std::size_t n = spec.nx * spec.ny;
    std::vector<std::vector<PointValue>> values(n, std::vector<PointValue>(schemes.size()));

    run_indexed(n, [&](std::size_t idx) {
        const std::size_t ix = idx % spec.nx;
        const std::size_t iy = idx / spec.nx;
        Vec3 pos;
        pos.x = (static_cast<double>(ix) + 0.5) * spec.layout.room.x / static_cast<double>(spec.nx);
        pos.y = (static_cast<double>(iy) + 0.5) * spec.layout.room.y / static_cast<double>(spec.ny);
        pos.z = spec.layout.bob.z;

        LinkPair link;
        link.sigma_b = sigma;
        link.sigma_e = sigma;
        link.h_b.reserve(spec.layout.leds.size());
        link.h_e.reserve(spec.layout.leds.size());
        for (const LedParams& led : spec.layout.leds) {
            const double h = lambertian_gain(led, pos);
            link.h_b.push_back(h);
            link.h_e.push_back(h / spec.ratio);
        }

        for (std::size_t s = 0; s < schemes.size(); ++s) {
            PointValue& v = values[idx][s];
            std::vector<double> weights;
            try {
                weights = scheme_weights(schemes[s], link);
            } catch (const NoSecureLedError&) {
                continue;  // fully dark point: zero secrecy contribution
            }
            const BoundResult bounds = weighted_bounds(link, weights, scenario);
            v.lower = bounds.lower;
            v.upper = bounds.upper;
            v.clamped = bounds.clamped;
        }
    });

    std::vector<PlaneAverage> averages(schemes.size());
    for (std::size_t s = 0; s < schemes.size(); ++s) {
        averages[s].scheme = schemes[s];
    }
    for (std::size_t idx = 0; idx < n; ++idx) {
        for (std::size_t s = 0; s < schemes.size(); ++s) {
            averages[s].lower += values[idx][s].lower;
            averages[s].upper += values[idx][s].upper;
            averages[s].any_clamped = averages[s].any_clamped || values[idx][s].clamped;
        }
    }
    for (PlaneAverage& avg : averages) {
        avg.lower /= static_cast<double>(n);
        avg.upper /= static_cast<double>(n);
    }
    return averages;
}

SweepTable run_plane_sweep(const PlaneSpec& spec, double start, double stop, double step) {
    const std::size_t n = grid_size(start, stop, step);
    if (!(start > 0.0) || !(stop < 1.0)) {
        throw ConfigError("key 'range': dimming targets must lie in (0, 1)");
    }
    SweepTable table;
    table.x_label = "xi";
    for (std::size_t i = 0; i < n; ++i) {
        const double xi = start + static_cast<double>(i) * step;
        PlaneSpec point = spec;
        point.xi = xi;
        for (const PlaneAverage& avg : plane_average(point)) {
            SweepRow row;
            row.x = xi;
            row.scheme = avg.scheme;
            row.lower_nats = avg.lower;
            row.upper_nats = avg.upper;
            row.clamped = avg.any_clamped;
            row.branch = "-";
            table.rows.push_back(std::move(row));
        }
    }
    return table;
}

std::string to_csv(const SweepTable& table) {
    std::string out = "x,scheme,lower_nats,upper_nats,clamped,branch\n";
    for (const SweepRow& row : table.rows) {
        out += fmt17(row.x);
        out += ',';
        out += selection_name(row.scheme);
        out += ',';
        out += fmt17(row.lower_nats);
        out += ',';
        out += fmt17(row.upper_nats);
        out += ',';
        out += row.clamped ? '1' : '0';
        out += ',';
        out += row.branch;
        out += '\n';
    }
    return out;
}

std::string to_csv(const GapTable& table) {
    std::string out = "p_db";
    for (double r : table.ratios) {
        out += ",gap_ratio_";
        out += fmtg(r);
    }
    out += '\n';
    for (std::size_t ip = 0; ip < table.p_db.size(); ++ip) {
        out += fmt17(table.p_db[ip]);
        for (double gap : table.gaps[ip]) {
            out += ',';
            out += fmt17(gap);
        }
        out += '\n';
    }
    return out;
}

namespace {

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw IoError("failed while writing '" + path + "'");
}

double parse_csv_double(const std::string& field, const std::string& where) {
    char* end = nullptr;
    const double v = std::strtod(field.c_str(), &end);
    if (end == field.c_str() || *end != '\0') {
        throw ConfigError(where + ": expected a number, got '" + field + "'");
    }
    return v;
}

}  // namespace

void emit_csv(const SweepTable& table, const std::string& path) { write_file(path, to_csv(table)); }
void emit_csv(const GapTable& table, const std::string& path) { write_file(path, to_csv(table)); }

SweepTable parse_csv_text(const std::string& text, const std::string& origin) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "x,scheme,lower_nats,upper_nats,clamped,branch") {
        throw ConfigError(origin + ": missing or unexpected CSV header");
    }
    SweepTable table;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::string::size_type pos = 0;
        while (true) {
            const std::string::size_type comma = line.find(',', pos);
            if (comma == std::string::npos) {
                fields.push_back(line.substr(pos));
                break;
            }
            fields.push_back(line.substr(pos, comma - pos));
            pos = comma + 1;
        }
        const std::string where = origin + ":" + std::to_string(lineno);
        if (fields.size() != 6) throw ConfigError(where + ": expected 6 fields");
        SweepRow row;
        row.x = parse_csv_double(fields[0], where);
        if (fields[1] == "us") {
            row.scheme = SelectionKind::US;
        } else if (fields[1] == "cas") {
            row.scheme = SelectionKind::CAS;
        } else if (fields[1] == "gs") {
            row.scheme = SelectionKind::GS;
        } else {
            throw ConfigError(where + ": unknown scheme '" + fields[1] + "'");
        }
        row.lower_nats = parse_csv_double(fields[2], where);
        row.upper_nats = parse_csv_double(fields[3], where);
        if (fields[4] == "0") {
            row.clamped = false;
        } else if (fields[4] == "1") {
            row.clamped = true;
        } else {
            throw ConfigError(where + ": clamped flag must be 0 or 1");
        }
        row.branch = fields[5];
        table.rows.push_back(std::move(row));
    }
    return table;
}

SweepTable parse_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_csv_text(buf.str(), path);
}

namespace {

struct PlotSeries {
    std::string label;
    std::string color;
    bool dashed = false;
    std::vector<std::pair<double, double>> points;
};

const char* scheme_color(SelectionKind kind) {
    switch (kind) {
        case SelectionKind::US: return "#1f77b4";
        case SelectionKind::CAS: return "#d62728";
        case SelectionKind::GS: return "#2ca02c";
    }
    return "#000000";
}

std::string fmt_px(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

}  // namespace

std::string to_svg(const SweepTable& table) {
    // Layout constants
    const double width = 880.0;
    const double height = 560.0;
    const double left = 80.0;
    const double top = 40.0;
    const double plot_w = 600.0;
    const double plot_h = 440.0;

    std::vector<PlotSeries> series;
    std::vector<SelectionKind> seen;
    for (const SweepRow& row : table.rows) {
        bool found = false;
        for (SelectionKind s : seen) found = found || s == row.scheme;
        if (!found) seen.push_back(row.scheme);
    }
    for (SelectionKind scheme : seen) {
        PlotSeries lower{std::string(selection_name(scheme)) + " lower", scheme_color(scheme), false, {}};
        PlotSeries upper{std::string(selection_name(scheme)) + " upper", scheme_color(scheme), true, {}};
        for (const SweepRow& row : table.rows) {
            if (row.scheme != scheme) continue;
            if (std::isfinite(row.x) && std::isfinite(row.lower_nats)) {
                lower.points.emplace_back(row.x, row.lower_nats);
            }
            if (std::isfinite(row.x) && std::isfinite(row.upper_nats)) {
                upper.points.emplace_back(row.x, row.upper_nats);
            }
        }
        series.push_back(std::move(lower));
        series.push_back(std::move(upper));
    }

    double xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 1.0;
    bool any = false;
    for (const PlotSeries& s : series) {
        for (const auto& [x, y] : s.points) {
            if (!any) {
                xmin = xmax = x;
                ymin = ymax = y;
                any = true;
            } else {
                xmin = std::min(xmin, x);
                xmax = std::max(xmax, x);
                ymin = std::min(ymin, y);
                ymax = std::max(ymax, y);
            }
        }
    }
    if (xmin == xmax) {
        xmin -= 0.5;
        xmax += 0.5;
    }
    if (ymin == ymax) {
        ymin -= 0.5;
        ymax += 0.5;
    }
    const double ypad = 0.05 * (ymax - ymin);
    ymin -= ypad;
    ymax += ypad;

    auto px = [&](double x) { return left + (x - xmin) / (xmax - xmin) * plot_w; };
    auto py = [&](double y) { return top + plot_h - (y - ymin) / (ymax - ymin) * plot_h; };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmtg(width) + "\" height=\"" +
           fmtg(height) + "\" viewBox=\"0 0 " + fmtg(width) + " " + fmtg(height) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += "<rect x=\"" + fmt_px(left) + "\" y=\"" + fmt_px(top) + "\" width=\"" + fmt_px(plot_w) +
           "\" height=\"" + fmt_px(plot_h) + "\" fill=\"none\" stroke=\"#333\"/>\n";

    for (int k = 0; k <= 5; ++k) {
        const double xv = xmin + (xmax - xmin) * k / 5.0;
        const double yv = ymin + (ymax - ymin) * k / 5.0;
        const double gx = px(xv);
        const double gy = py(yv);
        svg += "<line x1=\"" + fmt_px(gx) + "\" y1=\"" + fmt_px(top) + "\" x2=\"" + fmt_px(gx) +
               "\" y2=\"" + fmt_px(top + plot_h) + "\" stroke=\"#ddd\"/>\n";
        svg += "<line x1=\"" + fmt_px(left) + "\" y1=\"" + fmt_px(gy) + "\" x2=\"" +
               fmt_px(left + plot_w) + "\" y2=\"" + fmt_px(gy) + "\" stroke=\"#ddd\"/>\n";
        svg += "<text x=\"" + fmt_px(gx) + "\" y=\"" + fmt_px(top + plot_h + 20.0) +
               "\" font-size=\"12\" text-anchor=\"middle\">" + fmtg(xv) + "</text>\n";
        svg += "<text x=\"" + fmt_px(left - 8.0) + "\" y=\"" + fmt_px(gy + 4.0) +
               "\" font-size=\"12\" text-anchor=\"end\">" + fmtg(yv) + "</text>\n";
    }
    svg += "<text x=\"" + fmt_px(left + plot_w / 2.0) + "\" y=\"" + fmt_px(height - 12.0) +
           "\" font-size=\"14\" text-anchor=\"middle\">" + table.x_label + "</text>\n";
    svg += "<text x=\"20\" y=\"" + fmt_px(top + plot_h / 2.0) +
           "\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 20 " +
           fmt_px(top + plot_h / 2.0) + ")\">nats/transmission</text>\n";

    double legend_y = top + 10.0;
    for (const PlotSeries& s : series) {
        if (!s.points.empty()) {
            std::string points;
            for (const auto& [x, y] : s.points) {
                points += fmt_px(px(x)) + "," + fmt_px(py(y)) + " ";
            }
            svg += "<polyline fill=\"none\" stroke=\"" + s.color + "\" stroke-width=\"2\"";
            if (s.dashed) svg += " stroke-dasharray=\"6,4\"";
            svg += " points=\"" + points + "\"/>\n";
        }
        const double lx = left + plot_w + 20.0;
        svg += "<line x1=\"" + fmt_px(lx) + "\" y1=\"" + fmt_px(legend_y) + "\" x2=\"" +
               fmt_px(lx + 30.0) + "\" y2=\"" + fmt_px(legend_y) + "\" stroke=\"" + s.color +
               "\" stroke-width=\"2\"" + (s.dashed ? " stroke-dasharray=\"6,4\"" : "") + "/>\n";
        svg += "<text x=\"" + fmt_px(lx + 38.0) + "\" y=\"" + fmt_px(legend_y + 4.0) +
               "\" font-size=\"12\">" + s.label + "</text>\n";
        legend_y += 20.0;
    }
    svg += "</svg>\n";
    return svg;
}

void emit_plot(const SweepTable& table, const std::string& path) { write_file(path, to_svg(table)); }

namespace {

void check_known_keys(const KeyValueFile& kv, const std::vector<std::string>& allowed) {
    for (const auto& [key, value] : kv.entries()) {
        (void)value;
        bool ok = false;
        for (const std::string& a : allowed) ok = ok || key == a;
        if (!ok) throw ConfigError("unknown key '" + key + "' in " + kv.origin());
    }
}

void parse_range(const std::string& raw, double& start, double& stop, double& step) {
    const std::string::size_type c1 = raw.find(':');
    const std::string::size_type c2 = c1 == std::string::npos ? std::string::npos : raw.find(':', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos || raw.find(':', c2 + 1) != std::string::npos) {
        throw ConfigError("key 'range': expected start:stop:step, got '" + raw + "'");
    }
    const std::string parts[3] = {raw.substr(0, c1), raw.substr(c1 + 1, c2 - c1 - 1), raw.substr(c2 + 1)};
    double values[3];
    for (int i = 0; i < 3; ++i) {
        char* end = nullptr;
        values[i] = std::strtod(parts[i].c_str(), &end);
        if (end == parts[i].c_str() || *end != '\0' || !std::isfinite(values[i])) {
            throw ConfigError("key 'range': expected start:stop:step, got '" + raw + "'");
        }
    }
    start = values[0];
    stop = values[1];
    step = values[2];
}

std::vector<SelectionKind> parse_schemes(const std::string& raw) {
    std::vector<SelectionKind> schemes;
    std::string::size_type pos = 0;
    while (pos <= raw.size()) {
        std::string::size_type comma = raw.find(',', pos);
        if (comma == std::string::npos) comma = raw.size();
        std::string name = raw.substr(pos, comma - pos);
        // trim spaces
        while (!name.empty() && name.front() == ' ') name.erase(name.begin());
        while (!name.empty() && name.back() == ' ') name.pop_back();
        if (name == "us") {
            schemes.push_back(SelectionKind::US);
        } else if (name == "cas") {
            schemes.push_back(SelectionKind::CAS);
        } else if (name == "gs") {
            schemes.push_back(SelectionKind::GS);
        } else {
            throw ConfigError("key 'schemes': unknown scheme '" + name + "'");
        }
        pos = comma + 1;
        if (comma == raw.size()) break;
    }
    return schemes;
}

ScenarioKind parse_scenario(const std::string& raw) {
    if (raw == "avg") return ScenarioKind::AvgOnly;
    if (raw == "peak") return ScenarioKind::AvgAndPeak;
    throw ConfigError("key 'scenario': expected avg or peak, got '" + raw + "'");
}

}  // namespace

SweepSpec sweep_spec_from_kv(const KeyValueFile& kv) {
    check_known_keys(kv, {"scenario", "sweep", "range", "xi", "ratio_db", "p_db", "a_db", "schemes",
                          "mode", "m", "layout", "seed"});
    SweepSpec spec;
    spec.scenario = parse_scenario(kv.get_string("scenario"));

    const std::string sweep = kv.get_string("sweep");
    if (sweep == "p_db") {
        spec.variable = SweepVariable::PdB;
    } else if (sweep == "xi") {
        spec.variable = SweepVariable::Xi;
    } else if (sweep == "ratio_db") {
        spec.variable = SweepVariable::RatioDb;
    } else if (sweep == "a_db") {
        spec.variable = SweepVariable::AdB;
    } else {
        throw ConfigError("key 'sweep': expected p_db, xi, ratio_db or a_db, got '" + sweep + "'");
    }

    parse_range(kv.get_string("range"), spec.start, spec.stop, spec.step);

    const struct {
        SweepVariable variable;
        const char* key;
    } conflicts[] = {{SweepVariable::Xi, "xi"},
                     {SweepVariable::PdB, "p_db"},
                     {SweepVariable::RatioDb, "ratio_db"},
                     {SweepVariable::AdB, "a_db"}};
    for (const auto& c : conflicts) {
        if (spec.variable == c.variable && kv.has(c.key)) {
            throw ConfigError(std::string("key '") + c.key + "': conflicts with the sweep variable");
        }
    }

    spec.xi = kv.get_double_or("xi", 0.5);
    spec.ratio_db = kv.get_double_or("ratio_db", 30.0);
    spec.p_db = kv.get_double_or("p_db", 25.0);
    if (kv.has("a_db")) {
        const std::string a = kv.get_string("a_db");
        if (a == "follow") {
            spec.a_db.reset();
        } else {
            spec.a_db = kv.get_double("a_db");
        }
    }
    if (kv.has("schemes")) spec.schemes = parse_schemes(kv.get_string("schemes"));

    const std::string mode = kv.get_string_or("mode", "ratio");
    if (mode == "ratio") {
        spec.mode = SweepMode::Ratio;
        if (kv.has("layout")) throw ConfigError("key 'layout': only valid in geometry mode");
    } else if (mode == "geometry") {
        spec.mode = SweepMode::Geometry;
        if (!kv.has("layout")) throw ConfigError("key 'layout': required in geometry mode");
        spec.layout = load_layout(kv.get_string("layout"));
    } else {
        throw ConfigError("key 'mode': expected ratio or geometry, got '" + mode + "'");
    }

    const long long m = kv.get_int_or("m", 8);
    if (m < 1) throw ConfigError("key 'm': LED count must be >= 1");
    spec.led_count = static_cast<std::size_t>(m);

    const long long seed = kv.get_int_or("seed", static_cast<long long>(kDefaultSeed));
    if (seed < 0) throw ConfigError("key 'seed': must be >= 0");
    spec.seed = static_cast<std::uint64_t>(seed);

    validate_sweep_spec(spec);
    return spec;
}

PlaneRun plane_run_from_kv(const KeyValueFile& kv) {
    check_known_keys(kv, {"scenario", "range", "ratio_db", "p_db", "a_db", "grid", "schemes",
                          "layout", "seed"});
    PlaneRun run;
    run.spec.scenario = kv.has("scenario") ? parse_scenario(kv.get_string("scenario"))
                                           : ScenarioKind::AvgOnly;
    if (kv.has("range")) {
        parse_range(kv.get_string("range"), run.start, run.stop, run.step);
    }
    run.spec.ratio = db_to_linear(kv.get_double_or("ratio_db", 30.0));
    run.spec.p_db = kv.get_double_or("p_db", 25.0);
    if (kv.has("a_db")) {
        if (run.spec.scenario == ScenarioKind::AvgOnly) {
            throw ConfigError("key 'a_db': only valid with scenario = peak");
        }
        const std::string a = kv.get_string("a_db");
        if (a != "follow") run.spec.a_db = kv.get_double("a_db");
    }
    if (kv.has("grid")) {
        const std::string grid = kv.get_string("grid");
        const std::string::size_type x = grid.find('x');
        bool ok = x != std::string::npos;
        long nx = 0, ny = 0;
        if (ok) {
            char* end = nullptr;
            nx = std::strtol(grid.c_str(), &end, 10);
            ok = end == grid.c_str() + x;
            if (ok) {
                const char* rest = grid.c_str() + x + 1;
                ny = std::strtol(rest, &end, 10);
                ok = end != rest && *end == '\0';
            }
        }
        if (!ok || nx < 1 || ny < 1) {
            throw ConfigError("key 'grid': expected NXxNY (e.g. 50x40), got '" + grid + "'");
        }
        run.spec.nx = static_cast<std::size_t>(nx);
        run.spec.ny = static_cast<std::size_t>(ny);
    }
    if (kv.has("schemes")) run.spec.schemes = parse_schemes(kv.get_string("schemes"));
    if (kv.has("layout")) run.spec.layout = load_layout(kv.get_string("layout"));
    return run;
}

unsigned worker_count() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    const char* env = std::getenv("VLC_SECRECY_THREADS");
    if (env == nullptr || *env == '\0') return hw;
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || cap < 1) {
        throw ConfigError("env 'VLC_SECRECY_THREADS': expected a positive integer, got '" +
                          std::string(env) + "'");
    }
    return std::min<unsigned>(hw, static_cast<unsigned>(cap));
}

}  // namespace vlcsec
