#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spanlab/online.hpp"

namespace spanlab {

enum class Generator { uniform, file, adversary_1d };

Generator parse_generator(std::string_view name);
std::string_view generator_name(Generator g);

/// Experiment description; every field has a `key = value` spelling (see parse_config).
struct RunConfig {
    AlgorithmKind algorithm = AlgorithmKind::quadtree;
    Generator generator = Generator::uniform;
    std::vector<double> eps{0.25};
    std::vector<std::size_t> n{100};
    std::vector<std::uint64_t> seeds{1};
    std::size_t dim = 2;
    Metric metric = Metric::l2;
    OnlineOptions options;        // c1, c2, slt, backbone
    std::string input;            // point file for the file generator
    std::size_t stages = 2;       // adversary_1d generator
    bool checkpoints = true;      // certify at sizes 2, 4, 8, ... as well as at the end
    std::size_t greedy_limit = 2000;
    bool record_runtime = false;  // false keeps the CSV byte-identical across runs
    std::string out = "out";
};

/// Parses `key = value` lines; `#` starts a comment; lists are comma-separated.
RunConfig parse_config(std::istream& in, RunConfig base = {});
RunConfig parse_config_file(const std::string& path, RunConfig base = {});
/// Applies one `key = value` setting.
void apply_setting(RunConfig& c, const std::string& key, const std::string& value);

struct RunRecord {
    std::string run_id;
    std::string algorithm;
    double eps = 0.0;
    std::size_t dim = 0;
    std::string metric;
    std::size_t n = 0;
    std::uint64_t seed = 0;
    double alg_weight = 0.0;
    double mst_weight = 0.0;
    std::optional<double> greedy_weight;  // skipped above the greedy limit
    std::optional<double> opt1d_weight;   // 1D only
    double max_stretch = 1.0;
    double runtime_ms = 0.0;
    bool failed = false;
};

struct RunOutcome {
    std::vector<RunRecord> records;
    /// Witness lines for failed certifications.
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

/// Streams the points of each (eps, n, seed) into the algorithm, certifies stretch at the
/// checkpoints, and computes the oracle baselines.
RunOutcome run_experiment(const RunConfig& config);

/// The points a configuration feeds for one (n, seed).
std::vector<Point> generate_points(const RunConfig& config, double eps, std::size_t n, std::uint64_t seed);

/// Column order of the records CSV.
const std::vector<std::string>& record_columns();
void write_records_csv(std::ostream& out, const std::vector<RunRecord>& records);
void write_records_json(std::ostream& out, const std::vector<RunRecord>& records);
std::vector<RunRecord> read_records_csv(std::istream& in);

struct ReportRow {
    std::string algorithm;
    double eps = 0.0;
    std::size_t dim = 0;
    std::size_t runs = 0;
    double mean_ratio_mst = 0.0;
    double max_ratio_mst = 0.0;
    std::optional<double> mean_ratio_greedy;
    std::optional<double> mean_ratio_opt1d;
    /// Least-squares slope of alg / mst against log2 n (0 with fewer than two sizes).
    double slope_log_n = 0.0;
};

std::vector<ReportRow> report(const std::vector<RunRecord>& records);
void write_report_csv(std::ostream& out, const std::vector<ReportRow>& rows);
/// Matplotlib script plotting alg / mst against n from `records_csv`.
std::string plot_script(const std::string& records_csv);

/// SPANLAB_OUT when set, otherwise `fallback`.
std::string output_directory(const std::string& fallback);

}  // namespace spanlab
