#include "vlcsec/vlcsec.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <string>
#include <variant>

#include "vlcsec/bounds.hpp"
#include "vlcsec/channel.hpp"
#include "vlcsec/config.hpp"
#include "vlcsec/errors.hpp"
#include "vlcsec/experiments.hpp"
#include "vlcsec/selection.hpp"
#include "vlcsec/selfcheck.hpp"

struct vlcsec_link {
    vlcsec::LinkPair link;
};

struct vlcsec_rng {
    vlcsec::Rng rng;
};

struct vlcsec_table {
    std::variant<vlcsec::SweepTable, vlcsec::GapTable> table;
};

namespace {

thread_local std::string g_last_error;

template <typename F>
int wrap(F&& body) {
    try {
        body();
        g_last_error.clear();
        return VLCSEC_OK;
    } catch (const vlcsec::NoSecureLedError& e) {
        g_last_error = e.what();
        return VLCSEC_ERR_NO_SECURE_LED;
    } catch (const vlcsec::ConfigError& e) {
        g_last_error = e.what();
        return VLCSEC_ERR_CONFIG;
    } catch (const vlcsec::IoError& e) {
        g_last_error = e.what();
        return VLCSEC_ERR_IO;
    } catch (const vlcsec::DomainError& e) {
        g_last_error = e.what();
        return VLCSEC_ERR_DOMAIN;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return VLCSEC_ERR_DOMAIN;
    }
}

void require(bool ok, const char* what) {
    if (!ok) throw vlcsec::ConfigError(what);
}

vlcsec::SelectionKind to_scheme(int scheme) {
    switch (scheme) {
        case VLCSEC_SCHEME_US: return vlcsec::SelectionKind::US;
        case VLCSEC_SCHEME_CAS: return vlcsec::SelectionKind::CAS;
        case VLCSEC_SCHEME_GS: return vlcsec::SelectionKind::GS;
        default: throw vlcsec::ConfigError("scheme must be 0 (us), 1 (cas) or 2 (gs)");
    }
}

vlcsec::Scenario to_scenario(int scenario, double nominal, double peak, double xi) {
    switch (scenario) {
        case VLCSEC_SCENARIO_AVG: return vlcsec::avg_scenario(nominal, xi);
        case VLCSEC_SCENARIO_PEAK: return vlcsec::peak_scenario(nominal, peak, xi);
        default: throw vlcsec::ConfigError("scenario must be 0 (avg) or 1 (peak)");
    }
}

vlcsec::SelectionScheme scheme_for_link(const vlcsec::LinkPair& link, int scheme) {
    switch (to_scheme(scheme)) {
        case vlcsec::SelectionKind::US: return vlcsec::us_probs(link.led_count());
        case vlcsec::SelectionKind::CAS: return vlcsec::cas_probs(link);
        case vlcsec::SelectionKind::GS: return vlcsec::gs_probs(link);
    }
    throw vlcsec::ConfigError("unreachable scheme");
}

void fill_bounds(const vlcsec::BoundResult& result, vlcsec_bounds* out) {
    out->lower = result.lower;
    out->upper = result.upper;
    out->raw_lower = result.raw_lower;
    out->raw_upper = result.raw_upper;
    out->clamped = result.clamped ? 1 : 0;
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out == nullptr) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

}  // namespace

extern "C" {

const char* vlcsec_version(void) { return "1.0.0"; }

const char* vlcsec_last_error(void) { return g_last_error.c_str(); }

int vlcsec_link_create(const double* h_b, const double* h_e, size_t led_count, double sigma_b,
                       double sigma_e, vlcsec_link** out) {
    return wrap([&] {
        require(h_b != nullptr && h_e != nullptr && out != nullptr, "null pointer argument");
        require(led_count > 0, "led_count must be >= 1");
        vlcsec::LinkPair link;
        link.h_b.assign(h_b, h_b + led_count);
        link.h_e.assign(h_e, h_e + led_count);
        link.sigma_b = sigma_b;
        link.sigma_e = sigma_e;
        for (double h : link.h_b) {
            if (!(h >= 0.0)) throw vlcsec::DomainError("gains must be >= 0");
        }
        for (double h : link.h_e) {
            if (!(h >= 0.0)) throw vlcsec::DomainError("gains must be >= 0");
        }
        if (!(sigma_b > 0.0) || !(sigma_e > 0.0)) {
            throw vlcsec::DomainError("noise standard deviations must be > 0");
        }
        *out = new vlcsec_link{std::move(link)};
    });
}

int vlcsec_link_create_ratio(double ratio, size_t led_count, double sigma, vlcsec_link** out) {
    return wrap([&] {
        require(out != nullptr, "null pointer argument");
        *out = new vlcsec_link{vlcsec::make_ratio_link(ratio, led_count, sigma)};
    });
}

int vlcsec_link_from_layout(const char* path, vlcsec_link** out) {
    return wrap([&] {
        require(path != nullptr && out != nullptr, "null pointer argument");
        const vlcsec::RoomLayout layout = vlcsec::load_layout(path);
        if (!layout.eve.has_value()) {
            throw vlcsec::ConfigError("key 'eve.pos': required to build a link pair");
        }
        const double sigma = layout.noise_std();
        *out = new vlcsec_link{
            vlcsec::geometry_link(layout.leds, layout.bob, *layout.eve, sigma, sigma)};
    });
}

size_t vlcsec_link_led_count(const vlcsec_link* link) {
    return link == nullptr ? 0 : link->link.led_count();
}

void vlcsec_link_free(vlcsec_link* link) { delete link; }

int vlcsec_selection_probs(const vlcsec_link* link, int scheme, double* probs, int* clamped_any) {
    return wrap([&] {
        require(link != nullptr && probs != nullptr, "null pointer argument");
        const vlcsec::SelectionScheme s = scheme_for_link(link->link, scheme);
        for (size_t i = 0; i < s.probs.size(); ++i) probs[i] = s.probs[i];
        if (clamped_any != nullptr) *clamped_any = s.negative_margins_clamped ? 1 : 0;
    });
}

int vlcsec_rng_create(uint64_t seed, vlcsec_rng** out) {
    return wrap([&] {
        require(out != nullptr, "null pointer argument");
        *out = new vlcsec_rng{vlcsec::Rng(seed)};
    });
}

void vlcsec_rng_free(vlcsec_rng* rng) { delete rng; }

int vlcsec_sample_led(const vlcsec_link* link, int scheme, vlcsec_rng* rng, size_t* out_index) {
    return wrap([&] {
        require(link != nullptr && rng != nullptr && out_index != nullptr,
                "null pointer argument");
        const vlcsec::SelectionScheme s = scheme_for_link(link->link, scheme);
        *out_index = vlcsec::sample_active_led(s, rng->rng);
    });
}

int vlcsec_bounds_for_scheme(const vlcsec_link* link, int scheme, int scenario, double nominal,
                             double peak, double xi, vlcsec_bounds* out) {
    return wrap([&] {
        require(link != nullptr && out != nullptr, "null pointer argument");
        const vlcsec::SelectionScheme s = scheme_for_link(link->link, scheme);
        const vlcsec::BoundResult result =
            vlcsec::weighted_bounds(link->link, s.probs, to_scenario(scenario, nominal, peak, xi));
        fill_bounds(result, out);
    });
}

int vlcsec_bounds_weighted(const vlcsec_link* link, const double* weights, size_t led_count,
                           int scenario, double nominal, double peak, double xi,
                           vlcsec_bounds* out) {
    return wrap([&] {
        require(link != nullptr && weights != nullptr && out != nullptr,
                "null pointer argument");
        require(led_count == link->link.led_count(), "weight count must match the LED count");
        const std::vector<double> w(weights, weights + led_count);
        const vlcsec::BoundResult result =
            vlcsec::weighted_bounds(link->link, w, to_scenario(scenario, nominal, peak, xi));
        fill_bounds(result, out);
    });
}

int vlcsec_per_led_terms(const vlcsec_link* link, int scenario, double nominal, double peak,
                         double xi, double* lower_terms, double* upper_terms, int* branches) {
    return wrap([&] {
        require(link != nullptr, "null pointer argument");
        const std::vector<double> uniform(link->link.led_count(),
                                          1.0 / static_cast<double>(link->link.led_count()));
        const vlcsec::BoundResult result =
            vlcsec::weighted_bounds(link->link, uniform, to_scenario(scenario, nominal, peak, xi));
        for (size_t i = 0; i < result.per_led_lower.size(); ++i) {
            if (lower_terms != nullptr) lower_terms[i] = result.per_led_lower[i];
            if (upper_terms != nullptr) upper_terms[i] = result.per_led_upper[i];
            if (branches != nullptr) branches[i] = vlcsec::branch_char(result.upper_branch[i]);
        }
    });
}

int vlcsec_asymptotic_bounds(const vlcsec_link* link, const double* weights, size_t led_count,
                             int scenario, double xi, double alpha, double* lower, double* upper) {
    return wrap([&] {
        require(link != nullptr && weights != nullptr && lower != nullptr && upper != nullptr,
                "null pointer argument");
        require(led_count == link->link.led_count(), "weight count must match the LED count");
        const std::vector<double> w(weights, weights + led_count);
        // Any nominal works: the limit depends only on the mean-to-peak ratio.
        const vlcsec::Scenario sc = scenario == VLCSEC_SCENARIO_AVG
                                        ? vlcsec::avg_scenario(1.0, xi)
                                        : vlcsec::peak_scenario(1.0, xi / alpha, xi);
        const auto [lo, hi] = vlcsec::asymptotic_bounds(link->link, w, sc);
        *lower = lo;
        *upper = hi;
    });
}

int vlcsec_asymptotic_gap(int scenario, double alpha, double* out) {
    return wrap([&] {
        require(out != nullptr, "null pointer argument");
        const vlcsec::Scenario sc = scenario == VLCSEC_SCENARIO_AVG
                                        ? vlcsec::avg_scenario(1.0, 0.5)
                                        : vlcsec::peak_scenario(1.0, 1.0, alpha);
        if (scenario != VLCSEC_SCENARIO_AVG && scenario != VLCSEC_SCENARIO_PEAK) {
            throw vlcsec::ConfigError("scenario must be 0 (avg) or 1 (peak)");
        }
        *out = vlcsec::asymptotic_gap(sc);
    });
}

int vlcsec_solve_c(double alpha, double peak, double* out) {
    return wrap([&] {
        require(out != nullptr, "null pointer argument");
        *out = vlcsec::solve_c(alpha, peak);
    });
}

int vlcsec_sweep_run_file(const char* path, vlcsec_table** out) {
    return wrap([&] {
        require(path != nullptr && out != nullptr, "null pointer argument");
        const vlcsec::SweepSpec spec =
            vlcsec::sweep_spec_from_kv(vlcsec::KeyValueFile::parse_file(path));
        *out = new vlcsec_table{vlcsec::run_sweep(spec)};
    });
}

int vlcsec_sweep_run_text(const char* text, const char* origin, vlcsec_table** out) {
    return wrap([&] {
        require(text != nullptr && out != nullptr, "null pointer argument");
        const vlcsec::KeyValueFile kv =
            vlcsec::KeyValueFile::parse_text(text, origin == nullptr ? "<text>" : origin);
        *out = new vlcsec_table{vlcsec::run_sweep(vlcsec::sweep_spec_from_kv(kv))};
    });
}

int vlcsec_gap_table(int scenario, const double* ratios, size_t n_ratios, const double* p_db,
                     size_t n_p, double xi, vlcsec_table** out) {
    return wrap([&] {
        require(ratios != nullptr && p_db != nullptr && out != nullptr, "null pointer argument");
        const vlcsec::ScenarioKind kind = scenario == VLCSEC_SCENARIO_AVG
                                              ? vlcsec::ScenarioKind::AvgOnly
                                              : vlcsec::ScenarioKind::AvgAndPeak;
        if (scenario != VLCSEC_SCENARIO_AVG && scenario != VLCSEC_SCENARIO_PEAK) {
            throw vlcsec::ConfigError("scenario must be 0 (avg) or 1 (peak)");
        }
        const std::vector<double> r(ratios, ratios + n_ratios);
        const std::vector<double> p(p_db, p_db + n_p);
        *out = new vlcsec_table{vlcsec::gap_table(kind, r, p, xi)};
    });
}

int vlcsec_plane_run_file(const char* path, vlcsec_table** out) {
    return wrap([&] {
        require(path != nullptr && out != nullptr, "null pointer argument");
        const vlcsec::PlaneRun run =
            vlcsec::plane_run_from_kv(vlcsec::KeyValueFile::parse_file(path));
        *out = new vlcsec_table{
            vlcsec::run_plane_sweep(run.spec, run.start, run.stop, run.step)};
    });
}

int vlcsec_plane_run_text(const char* text, const char* origin, vlcsec_table** out) {
    return wrap([&] {
        require(text != nullptr && out != nullptr, "null pointer argument");
        const vlcsec::KeyValueFile kv =
            vlcsec::KeyValueFile::parse_text(text, origin == nullptr ? "<text>" : origin);
        const vlcsec::PlaneRun run = vlcsec::plane_run_from_kv(kv);
        *out = new vlcsec_table{
            vlcsec::run_plane_sweep(run.spec, run.start, run.stop, run.step)};
    });
}

int vlcsec_table_kind(const vlcsec_table* table) {
    if (table == nullptr) return -1;
    return std::holds_alternative<vlcsec::SweepTable>(table->table) ? VLCSEC_TABLE_SWEEP
                                                                    : VLCSEC_TABLE_GAP;
}

size_t vlcsec_table_rows(const vlcsec_table* table) {
    if (table == nullptr) return 0;
    if (const auto* sweep = std::get_if<vlcsec::SweepTable>(&table->table)) {
        return sweep->rows.size();
    }
    return std::get<vlcsec::GapTable>(table->table).p_db.size();
}

size_t vlcsec_table_cols(const vlcsec_table* table) {
    if (table == nullptr) return 0;
    if (std::holds_alternative<vlcsec::SweepTable>(table->table)) return 4;
    return 1 + std::get<vlcsec::GapTable>(table->table).ratios.size();
}

int vlcsec_table_cell(const vlcsec_table* table, size_t row, size_t col, double* out) {
    return wrap([&] {
        require(table != nullptr && out != nullptr, "null pointer argument");
        require(row < vlcsec_table_rows(table) && col < vlcsec_table_cols(table),
                "cell index out of range");
        if (const auto* sweep = std::get_if<vlcsec::SweepTable>(&table->table)) {
            const vlcsec::SweepRow& r = sweep->rows[row];
            switch (col) {
                case 0: *out = r.x; break;
                case 1: *out = r.lower_nats; break;
                case 2: *out = r.upper_nats; break;
                default: *out = r.clamped ? 1.0 : 0.0; break;
            }
            return;
        }
        const vlcsec::GapTable& gap = std::get<vlcsec::GapTable>(table->table);
        *out = col == 0 ? gap.p_db[row] : gap.gaps[row][col - 1];
    });
}

int vlcsec_table_sweep_row(const vlcsec_table* table, size_t row, double* x, int* scheme,
                           double* lower, double* upper, int* clamped, char* branch_buf,
                           size_t buflen) {
    return wrap([&] {
        require(table != nullptr, "null pointer argument");
        const auto* sweep = std::get_if<vlcsec::SweepTable>(&table->table);
        require(sweep != nullptr, "not a sweep table");
        require(row < sweep->rows.size(), "row index out of range");
        const vlcsec::SweepRow& r = sweep->rows[row];
        if (x != nullptr) *x = r.x;
        if (scheme != nullptr) {
            switch (r.scheme) {
                case vlcsec::SelectionKind::US: *scheme = VLCSEC_SCHEME_US; break;
                case vlcsec::SelectionKind::CAS: *scheme = VLCSEC_SCHEME_CAS; break;
                case vlcsec::SelectionKind::GS: *scheme = VLCSEC_SCHEME_GS; break;
            }
        }
        if (lower != nullptr) *lower = r.lower_nats;
        if (upper != nullptr) *upper = r.upper_nats;
        if (clamped != nullptr) *clamped = r.clamped ? 1 : 0;
        if (branch_buf != nullptr && buflen > 0) {
            const size_t n = std::min(buflen - 1, r.branch.size());
            std::memcpy(branch_buf, r.branch.data(), n);
            branch_buf[n] = '\0';
        }
    });
}

int vlcsec_table_csv(const vlcsec_table* table, char** out) {
    return wrap([&] {
        require(table != nullptr && out != nullptr, "null pointer argument");
        if (const auto* sweep = std::get_if<vlcsec::SweepTable>(&table->table)) {
            *out = dup_string(vlcsec::to_csv(*sweep));
        } else {
            *out = dup_string(vlcsec::to_csv(std::get<vlcsec::GapTable>(table->table)));
        }
    });
}

int vlcsec_table_write_csv(const vlcsec_table* table, const char* path) {
    return wrap([&] {
        require(table != nullptr && path != nullptr, "null pointer argument");
        if (const auto* sweep = std::get_if<vlcsec::SweepTable>(&table->table)) {
            vlcsec::emit_csv(*sweep, path);
        } else {
            vlcsec::emit_csv(std::get<vlcsec::GapTable>(table->table), path);
        }
    });
}

int vlcsec_table_write_svg(const vlcsec_table* table, const char* path) {
    return wrap([&] {
        require(table != nullptr && path != nullptr, "null pointer argument");
        const auto* sweep = std::get_if<vlcsec::SweepTable>(&table->table);
        require(sweep != nullptr, "plots need a sweep table");
        vlcsec::emit_plot(*sweep, path);
    });
}

void vlcsec_table_free(vlcsec_table* table) { delete table; }

void vlcsec_string_free(char* s) { std::free(s); }

int vlcsec_selfcheck(uint64_t seed, size_t draws, char** report_out, int* all_passed) {
    return wrap([&] {
        const vlcsec::SelfcheckReport report = vlcsec::run_selfcheck(seed, draws);
        if (report_out != nullptr) *report_out = dup_string(vlcsec::format_report(report));
        if (all_passed != nullptr) *all_passed = report.all_passed() ? 1 : 0;
    });
}

}  // extern "C"
