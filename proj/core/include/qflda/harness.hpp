#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "qflda/dataset.hpp"
#include "qflda/flda.hpp"
#include "qflda/labeling.hpp"
#include "qflda/measure.hpp"
#include "qflda/states.hpp"

namespace qflda {

enum class Overlap { High, Medium, Low };

std::string_view overlap_name(Overlap o);
Overlap parse_overlap(std::string_view name);

/// Operational meaning of an overlap level: parameter margin around the class
/// boundary, default shot count, and minimum concurrence of entangled draws.
struct OverlapPreset {
    double margin;
    std::int64_t shots;
    double min_concurrence;
};

OverlapPreset overlap_preset(Overlap o);

struct ExperimentConfig {
    Family family = Family::Werner2;
    Overlap overlap = Overlap::Low;
    std::int64_t n_samples = 4000;
    double balance = 0.5; ///< fraction of entangled (-1) rows
    std::optional<std::int64_t> shots; ///< unset: preset; 0: exact expectations
    double split = 0.8;                ///< train fraction
    double epsilon = 1e-6;
    LabelConvention label_convention = LabelConvention::Paper;
    std::uint64_t master_seed = 0;
    StandardizerMode standardizer = StandardizerMode::ZScore;
    ThresholdPolicy threshold_policy = ThresholdPolicy::Midpoint;
    std::string observables = "full";
    PaperThresholds thresholds{};
    /// Separable class drawn as mixtures of up to 4 product states instead of single products.
    bool mixed_separable = false;
    /// Bloch radius cap for separable-class product factors.
    double purity_cap = 1.0;
    /// Worker threads for sample generation; 0 = hardware concurrency. Never affects output.
    unsigned threads = 0;

    /// Throws ValidationError on inconsistent settings.
    void validate() const;
    std::int64_t effective_shots() const;
    int num_qubits() const;
    /// Rows per class, [0] entangled, [1] separable.
    std::array<std::int64_t, 2> class_sizes() const;
};

nlohmann::json config_to_json(const ExperimentConfig& config);
/// Missing keys keep their defaults; unknown keys are rejected.
ExperimentConfig config_from_json(const nlohmann::json& doc);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Half-open sampling interval for a Werner-family mixing parameter.
struct ParamInterval {
    double lo;
    double hi;
    bool lo_open; ///< (lo, hi] when true, [lo, hi) otherwise
};

/// Entangled: (p* + m, min(1, p* + m + 0.4)]. Separable: [max(lo, p* - m - 0.4), p* - m)
/// where lo is the family's smallest valid p. The separable margin is reduced
/// to (p* - lo) / 2 when the full margin would leave no room below p*.
ParamInterval werner_interval(const ExperimentConfig& config, ClassLabel label);

/// Draws parameters for one sample of the requested class.
FamilyParams sample_family_params(const ExperimentConfig& config, ClassLabel label, RngStream& rng);

/// Rows [0, n_entangled) are class -1, the rest +1. Row i uses stream
/// derive_stream(master_seed, i) regardless of thread count.
Dataset generate_dataset(const ExperimentConfig& config);

struct SplitIndices {
    std::vector<Eigen::Index> train;
    std::vector<Eigen::Index> test;
};

/// Per-class seeded shuffle, floor(split * count) rows of each class to train
/// (at least one row each side). Index lists are returned sorted.
SplitIndices stratified_split(const Dataset& data, double train_fraction, std::uint64_t seed);

struct ExperimentReport {
    ExperimentConfig config;
    double fld_threshold = 0.0;
    double train_accuracy = 0.0;
    double test_accuracy = 0.0;
    double fisher_criterion = 0.0;
    ConfusionCounts train_confusion;
    ConfusionCounts test_confusion;
    double wall_seconds = 0.0; ///< informational; excluded from serialized reports
    FldaModel model;
    SplitIndices split;
};

ExperimentReport run_experiment(const ExperimentConfig& config);
ExperimentReport run_experiment(const ExperimentConfig& config, const Dataset& data);

/// Histogram of projected values y per class over `bins` equal-width bins.
/// CSV columns: bin_lo,bin_hi,entangled,separable.
std::string projection_histogram_csv(const FldaModel& model, const Dataset& data, int bins);

// --- table reproduction ---------------------------------------------------------

enum class Profile { Ci, Full };

std::string_view profile_name(Profile p);
Profile parse_profile(std::string_view name);

struct TableSpec {
    int id;
    Family family;
    std::vector<Overlap> overlaps;
};

/// Tables 1-7: werner2, concurrence, werner3, pptes-acin, ppt-alt (three overlap
/// levels each), biseparable and werner4 (high only).
TableSpec table_spec(int id);

/// Config used for one table row under a profile.
ExperimentConfig table_row_config(int id, Overlap overlap, std::uint64_t seed, Profile profile,
                                  unsigned threads = 0);

struct TableRow {
    int table = 0;
    Family family = Family::Werner2;
    Overlap overlap = Overlap::High;
    double fld_threshold = 0.0;
    double train_accuracy = 0.0;
    double test_accuracy = 0.0;
    double fisher_criterion = 0.0;
    std::uint64_t seed = 0;
};

std::vector<TableRow> reproduce_tables(std::span<const int> ids, std::uint64_t seed,
                                       Profile profile, unsigned threads = 0);

enum class ReportFormat { Csv, Json };
ReportFormat parse_format(std::string_view name);

/// Columns: table,family,overlap,fld_threshold,train_acc,test_acc,fisher_j,seed
std::string table_rows_to_csv(std::span<const TableRow> rows);
std::string table_rows_to_json(std::span<const TableRow> rows);
void write_table_rows(std::span<const TableRow> rows, const std::filesystem::path& path,
                      ReportFormat format);

/// Published values for one table row, plus the accuracy gate used when comparing.
struct ReferenceRow {
    int table;
    Overlap overlap;
    double fld_threshold;
    double train_accuracy;
    double test_accuracy;
    double fisher_criterion;
    double min_test_accuracy;
};

std::span<const ReferenceRow> reference_rows();
std::optional<ReferenceRow> find_reference(int table, Overlap overlap);

} // namespace qflda
