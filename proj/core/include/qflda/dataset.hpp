#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qflda/labeling.hpp"
#include "qflda/qcore.hpp"

namespace qflda {

/// Labeled feature rows. `sources` and `metadata` carry provenance in memory;
/// the CSV form keeps only feature columns and the label.
struct Dataset {
    std::vector<std::string> feature_names; ///< Pauli words, qubit 0 first
    RealMatrix features;                    ///< one row per sample
    std::vector<ClassLabel> labels;
    std::vector<std::string> sources;
    std::map<std::string, std::string> metadata;

    Eigen::Index rows() const { return features.rows(); }
    /// [0] = entangled (-1), [1] = separable (+1)
    std::array<std::int64_t, 2> class_counts() const;
    Dataset subset(std::span<const Eigen::Index> rows) const;
};

/// Shortest decimal that parses back to the same double.
std::string format_double(double v);

/// Header: feature names then "label"; labels written as -1 / 1.
std::string dataset_to_csv(const Dataset& data);
/// Throws IoError on malformed content, ValidationError on an empty document.
Dataset parse_dataset_csv(std::string_view text);

void write_dataset_csv(const Dataset& data, const std::filesystem::path& path);
Dataset read_dataset_csv(const std::filesystem::path& path);

/// Writes to a sibling temporary then renames over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);
std::string read_file(const std::filesystem::path& path);

} // namespace qflda
