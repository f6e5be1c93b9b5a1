#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vlcsec/bounds.hpp"
#include "vlcsec/config.hpp"
#include "vlcsec/selection.hpp"

namespace vlcsec {

inline constexpr std::uint64_t kDefaultSeed = 1729;

enum class SweepVariable { PdB, Xi, RatioDb, AdB };
enum class SweepMode { Ratio, Geometry };

// One figure-style experiment: bounds for the listed schemes while one
// variable runs over an inclusive start/stop/step grid.
struct SweepSpec {
    ScenarioKind scenario = ScenarioKind::AvgOnly;
    SweepVariable variable = SweepVariable::PdB;
    double start = 0.0;
    double stop = 0.0;
    double step = 1.0;
    double xi = 0.5;
    double ratio_db = 30.0;     // h_b/h_e = 10^(ratio_db/10)
    double p_db = 25.0;
    std::optional<double> a_db;  // peak intensity; empty means A = P
    std::size_t led_count = 8;   // ratio mode
    SweepMode mode = SweepMode::Ratio;
    std::optional<RoomLayout> layout;  // geometry mode
    std::vector<SelectionKind> schemes{SelectionKind::US, SelectionKind::CAS, SelectionKind::GS};
    std::uint64_t seed = kDefaultSeed;
};

struct SweepRow {
    double x = 0.0;
    SelectionKind scheme = SelectionKind::US;
    double lower_nats = 0.0;
    double upper_nats = 0.0;
    bool clamped = false;
    std::string branch;  // distinct per-LED case letters, "-" if none
};

struct SweepTable {
    std::string x_label = "x";
    std::vector<SweepRow> rows;
};

// Rows ordered by grid point, then by scheme in us/cas/gs order. Evaluation
// may run on several workers; results are merged in deterministic order.
SweepTable run_sweep(const SweepSpec& spec);

// Raw (pre-clamp) upper minus lower per (nominal intensity, gain ratio) cell
// in the single-LED ratio configuration; peak scenarios tie the peak to the
// nominal intensity.
struct GapTable {
    ScenarioKind scenario = ScenarioKind::AvgOnly;
    double xi = 0.5;
    std::vector<double> ratios;
    std::vector<double> p_db;
    std::vector<std::vector<double>> gaps;  // gaps[p_index][ratio_index]
};

GapTable gap_table(ScenarioKind scenario, const std::vector<double>& ratios,
                   const std::vector<double>& p_db, double xi);

// Receiver-plane average: the legitimate receiver traverses a grid of cell
// centers at its own height; the eavesdropper's per-LED gains are the
// receiver's divided by `ratio`.
struct PlaneSpec {
    RoomLayout layout = default_room();
    std::size_t nx = 50;
    std::size_t ny = 40;
    double ratio = 1000.0;
    ScenarioKind scenario = ScenarioKind::AvgOnly;
    double p_db = 25.0;
    std::optional<double> a_db;  // peak scenario; empty means A = P
    double xi = 0.5;
    std::vector<SelectionKind> schemes{SelectionKind::US, SelectionKind::CAS, SelectionKind::GS};
};

struct PlaneAverage {
    SelectionKind scheme = SelectionKind::US;
    double lower = 0.0;
    double upper = 0.0;
    bool any_clamped = false;
};

std::vector<PlaneAverage> plane_average(const PlaneSpec& spec);

// Plane averages per dimming target over an inclusive grid; x column is xi.
SweepTable run_plane_sweep(const PlaneSpec& spec, double start, double stop, double step);

// CSV: header `x,scheme,lower_nats,upper_nats,clamped,branch`, 17 significant
// digits, LF newlines. Gap tables emit one row per nominal intensity and one
// column per ratio.
std::string to_csv(const SweepTable& table);
std::string to_csv(const GapTable& table);
void emit_csv(const SweepTable& table, const std::string& path);
void emit_csv(const GapTable& table, const std::string& path);

SweepTable parse_csv_text(const std::string& text, const std::string& origin);
SweepTable parse_csv(const std::string& path);

// Standalone SVG with one polyline per (scheme, bound) pair.
std::string to_svg(const SweepTable& table);
void emit_plot(const SweepTable& table, const std::string& path);

// Experiment spec files (same key-value format as room layouts).
SweepSpec sweep_spec_from_kv(const KeyValueFile& kv);
struct PlaneRun {
    PlaneSpec spec;
    double start = 0.05;
    double stop = 0.95;
    double step = 0.01;
};
PlaneRun plane_run_from_kv(const KeyValueFile& kv);

// Worker cap: min(hardware, VLC_SECRECY_THREADS), at least 1.
unsigned worker_count();

}  // namespace vlcsec
