// Command-line front end. Talks to the library exclusively through the C
// interface in vlcsec/vlcsec.h.
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "vlcsec/vlcsec.h"

namespace {

constexpr double kLn2 = 0.6931471805599453;

int exit_code_for(int status) {
    switch (status) {
        case VLCSEC_OK: return 0;
        case VLCSEC_ERR_CONFIG: return 1;
        case VLCSEC_ERR_IO: return 1;
        default: return 2;  // domain errors, including no-secure-LED
    }
}

int fail(int status) {
    std::cerr << "error: " << vlcsec_last_error() << "\n";
    return exit_code_for(status);
}

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// "a:b:c" -> inclusive range, otherwise a comma-separated list.
std::vector<double> parse_grid(const std::string& raw, bool* ok) {
    *ok = false;
    std::vector<double> values;
    if (raw.find(':') != std::string::npos) {
        double start = 0.0, stop = 0.0, step = 0.0;
        char tail = '\0';
        if (std::sscanf(raw.c_str(), "%lf:%lf:%lf%c", &start, &stop, &step, &tail) != 3 ||
            step <= 0.0 || stop < start) {
            return values;
        }
        const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
        for (std::size_t i = 0; i < n; ++i) values.push_back(start + static_cast<double>(i) * step);
        *ok = true;
        return values;
    }
    std::string::size_type pos = 0;
    while (pos <= raw.size()) {
        std::string::size_type comma = raw.find(',', pos);
        if (comma == std::string::npos) comma = raw.size();
        const std::string field = raw.substr(pos, comma - pos);
        char* end = nullptr;
        const double v = std::strtod(field.c_str(), &end);
        if (end == field.c_str() || *end != '\0') return values;
        values.push_back(v);
        pos = comma + 1;
        if (comma == raw.size()) break;
    }
    *ok = !values.empty();
    return values;
}

struct TableDeleter {
    void operator()(vlcsec_table* t) const { vlcsec_table_free(t); }
};
using TablePtr = std::unique_ptr<vlcsec_table, TableDeleter>;

struct LinkDeleter {
    void operator()(vlcsec_link* l) const { vlcsec_link_free(l); }
};
using LinkPtr = std::unique_ptr<vlcsec_link, LinkDeleter>;

std::string table_to_text(const vlcsec_table* table, bool bits) {
    if (!bits) {
        char* csv = nullptr;
        if (vlcsec_table_csv(table, &csv) != VLCSEC_OK) return {};
        std::string out(csv);
        vlcsec_string_free(csv);
        return out;
    }
    const std::size_t rows = vlcsec_table_rows(table);
    if (vlcsec_table_kind(table) == VLCSEC_TABLE_SWEEP) {
        std::string out = "x,scheme,lower_bits,upper_bits,clamped,branch\n";
        for (std::size_t r = 0; r < rows; ++r) {
            double x = 0.0, lower = 0.0, upper = 0.0;
            int scheme = 0, clamped = 0;
            char branch[16] = {0};
            vlcsec_table_sweep_row(table, r, &x, &scheme, &lower, &upper, &clamped, branch,
                                   sizeof(branch));
            const char* names[] = {"us", "cas", "gs"};
            out += fmt17(x) + "," + names[scheme] + "," + fmt17(lower / kLn2) + "," +
                   fmt17(upper / kLn2) + "," + (clamped ? "1" : "0") + "," + branch + "\n";
        }
        return out;
    }
    const std::size_t cols = vlcsec_table_cols(table);
    std::string out = "p_db";
    for (std::size_t c = 1; c < cols; ++c) out += ",gap_bits_" + std::to_string(c);
    out += "\n";
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            double v = 0.0;
            vlcsec_table_cell(table, r, c, &v);
            if (c > 0) {
                out += "," + fmt17(v / kLn2);
            } else {
                out += fmt17(v);
            }
        }
        out += "\n";
    }
    return out;
}

int write_text(const std::string& text, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return 0;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot open '" << path << "' for writing\n";
        return 1;
    }
    out << text;
    if (!out) {
        std::cerr << "error: failed while writing '" << path << "'\n";
        return 1;
    }
    return 0;
}

int emit_table(const vlcsec_table* table, const std::string& out_path,
               const std::string& plot_path, bool bits) {
    const int rc = write_text(table_to_text(table, bits), out_path);
    if (rc != 0) return rc;
    if (!plot_path.empty()) {
        const int status = vlcsec_table_write_svg(table, plot_path.c_str());
        if (status != VLCSEC_OK) return fail(status);
    }
    return 0;
}

struct LinkOptions {
    double ratio_db = 30.0;
    std::size_t led_count = 8;
    std::string layout;
};

void add_link_options(CLI::App* cmd, LinkOptions* opts) {
    cmd->add_option("--ratio-db", opts->ratio_db,
                    "Bob-to-Eve gain ratio in dB (abstract channel)");
    cmd->add_option("--m", opts->led_count, "LED count for the abstract channel");
    cmd->add_option("--layout", opts->layout,
                    "room layout file with bob.pos and eve.pos (overrides --ratio-db/--m)");
}

int make_link(const LinkOptions& opts, LinkPtr* out) {
    vlcsec_link* link = nullptr;
    int status;
    if (!opts.layout.empty()) {
        status = vlcsec_link_from_layout(opts.layout.c_str(), &link);
    } else {
        const double sigma = std::sqrt(std::pow(10.0, (-104.0 - 30.0) / 10.0));
        status = vlcsec_link_create_ratio(std::pow(10.0, opts.ratio_db / 10.0), opts.led_count,
                                          sigma, &link);
    }
    if (status != VLCSEC_OK) return fail(status);
    out->reset(link);
    return 0;
}

int scheme_id(const std::string& name) {
    if (name == "us") return VLCSEC_SCHEME_US;
    if (name == "cas") return VLCSEC_SCHEME_CAS;
    return VLCSEC_SCHEME_GS;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Secrecy-rate bounds for LED-indexed optical wireless links"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(vlcsec_version()));

    // ---- bounds ----
    auto* bounds_cmd = app.add_subcommand("bounds", "bounds at a single operating point");
    LinkOptions bounds_link;
    add_link_options(bounds_cmd, &bounds_link);
    std::string bounds_scenario = "avg";
    double bounds_p_db = 25.0, bounds_xi = 0.5;
    double bounds_a_db = std::numeric_limits<double>::quiet_NaN();
    std::vector<std::string> bounds_schemes{"us", "cas", "gs"};
    bool bounds_bits = false, bounds_per_led = false, bounds_asymptotic = false;
    bounds_cmd->add_option("--scenario", bounds_scenario, "avg or peak")
        ->check(CLI::IsMember({"avg", "peak"}));
    bounds_cmd->add_option("--p-db", bounds_p_db, "nominal intensity in dB");
    bounds_cmd->add_option("--a-db", bounds_a_db, "peak intensity in dB (default: equal to --p-db)");
    bounds_cmd->add_option("--xi", bounds_xi, "dimming target in (0, 1)");
    bounds_cmd->add_option("--scheme", bounds_schemes, "schemes to evaluate")
        ->check(CLI::IsMember({"us", "cas", "gs"}));
    bounds_cmd->add_flag("--bits", bounds_bits, "report bits instead of nats");
    bounds_cmd->add_flag("--per-led", bounds_per_led, "also print per-LED terms");
    bounds_cmd->add_flag("--asymptotic", bounds_asymptotic, "also print high-intensity limits");

    // ---- sweep ----
    auto* sweep_cmd = app.add_subcommand("sweep", "run a sweep described by a spec file");
    std::string sweep_spec, sweep_out, sweep_plot;
    bool sweep_bits = false;
    sweep_cmd->add_option("--spec", sweep_spec, "sweep spec file")->required();
    sweep_cmd->add_option("--out", sweep_out, "CSV output path (default: stdout)");
    sweep_cmd->add_option("--plot", sweep_plot, "SVG plot output path");
    sweep_cmd->add_flag("--bits", sweep_bits, "report bits instead of nats");

    // ---- gap-table ----
    auto* gap_cmd = app.add_subcommand("gap-table", "upper-minus-lower bound gap table");
    std::string gap_scenario = "avg", gap_ratios = "10,100,1000", gap_p = "10:80:10";
    std::string gap_out;
    double gap_xi = 0.5;
    bool gap_bits = false;
    gap_cmd->add_option("--scenario", gap_scenario, "avg or peak")
        ->check(CLI::IsMember({"avg", "peak"}));
    gap_cmd->add_option("--ratios", gap_ratios, "gain ratios, comma list or start:stop:step");
    gap_cmd->add_option("--p-db", gap_p, "nominal intensities in dB, comma list or range");
    gap_cmd->add_option("--xi", gap_xi, "dimming target in (0, 1)");
    gap_cmd->add_option("--out", gap_out, "CSV output path (default: stdout)");
    gap_cmd->add_flag("--bits", gap_bits, "report bits instead of nats");

    // ---- plane ----
    auto* plane_cmd = app.add_subcommand("plane", "receiver-plane averages over dimming targets");
    std::string plane_spec, plane_out, plane_plot;
    bool plane_bits = false;
    plane_cmd->add_option("--spec", plane_spec, "plane spec file (default: built-in room)");
    plane_cmd->add_option("--out", plane_out, "CSV output path (default: stdout)");
    plane_cmd->add_option("--plot", plane_plot, "SVG plot output path");
    plane_cmd->add_flag("--bits", plane_bits, "report bits instead of nats");

    // ---- sample ----
    auto* sample_cmd = app.add_subcommand("sample", "draw LED activations and report counts");
    LinkOptions sample_link;
    add_link_options(sample_cmd, &sample_link);
    std::string sample_scheme = "us", sample_out;
    std::uint64_t sample_seed = 1729;
    std::uint64_t sample_draws = 1000000;
    sample_cmd->add_option("--scheme", sample_scheme, "us, cas or gs")
        ->check(CLI::IsMember({"us", "cas", "gs"}));
    sample_cmd->add_option("--draws", sample_draws, "number of activation draws");
    sample_cmd->add_option("--seed", sample_seed, "random seed");
    sample_cmd->add_option("--out", sample_out, "CSV output path (default: stdout)");

    // ---- selfcheck ----
    auto* check_cmd = app.add_subcommand("selfcheck", "run the cross-validation suites");
    std::uint64_t check_seed = 1729;
    std::uint64_t check_draws = 100;
    check_cmd->add_option("--seed", check_seed, "random seed");
    check_cmd->add_option("--draws", check_draws, "randomized draws per suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    if (bounds_cmd->parsed()) {
        LinkPtr link;
        const int rc = make_link(bounds_link, &link);
        if (rc != 0) return rc;
        const int scenario = bounds_scenario == "avg" ? VLCSEC_SCENARIO_AVG : VLCSEC_SCENARIO_PEAK;
        const double nominal = std::pow(10.0, bounds_p_db / 10.0);
        const double peak =
            std::isnan(bounds_a_db) ? nominal : std::pow(10.0, bounds_a_db / 10.0);
        const double unit = bounds_bits ? kLn2 : 1.0;
        std::string out = bounds_bits
                              ? "scheme,lower_bits,upper_bits,raw_lower,raw_upper,clamped\n"
                              : "scheme,lower_nats,upper_nats,raw_lower,raw_upper,clamped\n";
        for (const std::string& name : bounds_schemes) {
            vlcsec_bounds b{};
            const int status = vlcsec_bounds_for_scheme(link.get(), scheme_id(name), scenario,
                                                        nominal, peak, bounds_xi, &b);
            if (status != VLCSEC_OK) return fail(status);
            out += name + "," + fmt17(b.lower / unit) + "," + fmt17(b.upper / unit) + "," +
                   fmt17(b.raw_lower / unit) + "," + fmt17(b.raw_upper / unit) + "," +
                   (b.clamped ? "1" : "0") + "\n";
        }
        if (bounds_per_led) {
            const std::size_t m = vlcsec_link_led_count(link.get());
            std::vector<double> lo(m), hi(m);
            std::vector<int> br(m);
            const int status = vlcsec_per_led_terms(link.get(), scenario, nominal, peak,
                                                    bounds_xi, lo.data(), hi.data(), br.data());
            if (status != VLCSEC_OK) return fail(status);
            out += "led,lower_term,upper_term,case\n";
            for (std::size_t i = 0; i < m; ++i) {
                out += std::to_string(i) + "," + fmt17(lo[i] / unit) + "," + fmt17(hi[i] / unit) +
                       "," + static_cast<char>(br[i]) + "\n";
            }
        }
        if (bounds_asymptotic) {
            out += "scheme,asym_lower,asym_upper\n";
            const double alpha = bounds_xi * nominal / peak;
            for (const std::string& name : bounds_schemes) {
                const std::size_t m = vlcsec_link_led_count(link.get());
                std::vector<double> probs(m);
                int status = vlcsec_selection_probs(link.get(), scheme_id(name), probs.data(),
                                                    nullptr);
                if (status != VLCSEC_OK) return fail(status);
                double lo = 0.0, hi = 0.0;
                status = vlcsec_asymptotic_bounds(link.get(), probs.data(), m, scenario,
                                                  bounds_xi, alpha, &lo, &hi);
                if (status != VLCSEC_OK) return fail(status);
                out += name + "," + fmt17(lo / unit) + "," + fmt17(hi / unit) + "\n";
            }
        }
        std::cout << out;
        return 0;
    }

    if (sweep_cmd->parsed()) {
        vlcsec_table* raw = nullptr;
        const int status = vlcsec_sweep_run_file(sweep_spec.c_str(), &raw);
        if (status != VLCSEC_OK) return fail(status);
        TablePtr table(raw);
        return emit_table(table.get(), sweep_out, sweep_plot, sweep_bits);
    }

    if (gap_cmd->parsed()) {
        bool ok_r = false, ok_p = false;
        const std::vector<double> ratios = parse_grid(gap_ratios, &ok_r);
        const std::vector<double> p_db = parse_grid(gap_p, &ok_p);
        if (!ok_r || !ok_p) {
            std::cerr << "error: --ratios and --p-db must be comma lists or start:stop:step\n";
            return 1;
        }
        vlcsec_table* raw = nullptr;
        const int scenario = gap_scenario == "avg" ? VLCSEC_SCENARIO_AVG : VLCSEC_SCENARIO_PEAK;
        const int status = vlcsec_gap_table(scenario, ratios.data(), ratios.size(), p_db.data(),
                                            p_db.size(), gap_xi, &raw);
        if (status != VLCSEC_OK) return fail(status);
        TablePtr table(raw);
        return emit_table(table.get(), gap_out, "", gap_bits);
    }

    if (plane_cmd->parsed()) {
        vlcsec_table* raw = nullptr;
        const int status = plane_spec.empty()
                               ? vlcsec_plane_run_text("", "<defaults>", &raw)
                               : vlcsec_plane_run_file(plane_spec.c_str(), &raw);
        if (status != VLCSEC_OK) return fail(status);
        TablePtr table(raw);
        return emit_table(table.get(), plane_out, plane_plot, plane_bits);
    }

    if (sample_cmd->parsed()) {
        LinkPtr link;
        const int rc = make_link(sample_link, &link);
        if (rc != 0) return rc;
        const std::size_t m = vlcsec_link_led_count(link.get());
        std::vector<double> probs(m);
        int status = vlcsec_selection_probs(link.get(), scheme_id(sample_scheme), probs.data(),
                                            nullptr);
        if (status != VLCSEC_OK) return fail(status);
        vlcsec_rng* rng_raw = nullptr;
        status = vlcsec_rng_create(sample_seed, &rng_raw);
        if (status != VLCSEC_OK) return fail(status);
        std::unique_ptr<vlcsec_rng, decltype(&vlcsec_rng_free)> rng(rng_raw, &vlcsec_rng_free);
        std::vector<std::uint64_t> counts(m, 0);
        for (std::uint64_t i = 0; i < sample_draws; ++i) {
            std::size_t index = 0;
            status = vlcsec_sample_led(link.get(), scheme_id(sample_scheme), rng.get(), &index);
            if (status != VLCSEC_OK) return fail(status);
            ++counts[index];
        }
        std::string out = "led,count,frequency,target\n";
        for (std::size_t i = 0; i < m; ++i) {
            const double freq =
                sample_draws == 0 ? 0.0
                                  : static_cast<double>(counts[i]) / static_cast<double>(sample_draws);
            out += std::to_string(i) + "," + std::to_string(counts[i]) + "," + fmt17(freq) + "," +
                   fmt17(probs[i]) + "\n";
        }
        return write_text(out, sample_out);
    }

    if (check_cmd->parsed()) {
        char* report = nullptr;
        int all_passed = 0;
        const int status = vlcsec_selfcheck(check_seed, check_draws, &report, &all_passed);
        if (status != VLCSEC_OK) return fail(status);
        std::cout << report;
        vlcsec_string_free(report);
        return all_passed ? 0 : 2;
    }

    return 1;
}
