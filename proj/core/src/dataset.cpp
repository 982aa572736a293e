#include "qflda/dataset.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include <unistd.h>

namespace qflda {

std::array<std::int64_t, 2> Dataset::class_counts() const {
    std::array<std::int64_t, 2> counts{0, 0};
    for (ClassLabel l : labels) ++counts[l == ClassLabel::Entangled ? 0 : 1];
    return counts;
}

Dataset Dataset::subset(std::span<const Eigen::Index> rows) const {
    Dataset out;
    out.feature_names = feature_names;
    out.metadata = metadata;
    out.features.resize(static_cast<Eigen::Index>(rows.size()), features.cols());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        out.features.row(static_cast<Eigen::Index>(i)) = features.row(rows[i]);
        out.labels.push_back(labels[static_cast<std::size_t>(rows[i])]);
        if (!sources.empty()) out.sources.push_back(sources[static_cast<std::size_t>(rows[i])]);
    }
    return out;
}

std::string format_double(double v) {
    std::array<char, 64> buf{};
    const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    if (ec != std::errc{}) throw ValidationError("cannot format number");
    return {buf.data(), end};
}

std::string dataset_to_csv(const Dataset& data) {
    std::string out;
    for (const auto& name : data.feature_names) {
        out += name;
        out += ',';
    }
    out += "label\n";
    for (Eigen::Index r = 0; r < data.rows(); ++r) {
        for (Eigen::Index c = 0; c < data.features.cols(); ++c) {
            out += format_double(data.features(r, c));
            out += ',';
        }
        out += std::to_string(to_int(data.labels[static_cast<std::size_t>(r)]));
        out += '\n';
    }
    return out;
}

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(',', start);
        fields.push_back(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return fields;
}

double parse_number(std::string_view field, std::size_t line_no) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc{} || ptr != field.data() + field.size() || !std::isfinite(v))
        throw IoError("line " + std::to_string(line_no) + ": bad number '" + std::string(field) + "'");
    return v;
}

} // namespace

Dataset parse_dataset_csv(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start < text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        auto line = text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (!line.empty()) lines.push_back(line);
        start = end + 1;
    }
    if (lines.empty()) throw ValidationError("dataset is empty");

    Dataset data;
    const auto header = split_fields(lines.front());
    if (header.size() < 2 || header.back() != "label")
        throw IoError("dataset header must list features followed by 'label'");
    for (std::size_t i = 0; i + 1 < header.size(); ++i) {
        try {
            PauliString::parse(header[i]);
        } catch (const ValidationError&) {
            throw IoError("dataset header: '" + std::string(header[i]) + "' is not a Pauli word");
        }
        data.feature_names.emplace_back(header[i]);
    }

    const auto cols = static_cast<Eigen::Index>(data.feature_names.size());
    data.features.resize(static_cast<Eigen::Index>(lines.size() - 1), cols);
    for (std::size_t r = 1; r < lines.size(); ++r) {
        const auto fields = split_fields(lines[r]);
        if (fields.size() != header.size())
            throw IoError("line " + std::to_string(r + 1) + ": expected " +
                          std::to_string(header.size()) + " fields");
        for (Eigen::Index c = 0; c < cols; ++c)
            data.features(static_cast<Eigen::Index>(r - 1), c) =
                parse_number(fields[static_cast<std::size_t>(c)], r + 1);
        const double label = parse_number(fields.back(), r + 1);
        if (label != -1.0 && label != 1.0)
            throw IoError("line " + std::to_string(r + 1) + ": label must be -1 or 1");
        data.labels.push_back(label < 0 ? ClassLabel::Entangled : ClassLabel::Separable);
    }
    return data;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
    auto tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) {
            std::error_code ignored;
            std::filesystem::remove(tmp, ignored);
            throw IoError("failed writing '" + tmp.string() + "'");
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::error_code ignored;
        std::filesystem::remove(tmp, ignored);
        throw IoError("cannot rename onto '" + path.string() + "': " + ec.message());
    }
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("failed reading '" + path.string() + "'");
    return buf.str();
}

void write_dataset_csv(const Dataset& data, const std::filesystem::path& path) {
    write_file_atomic(path, dataset_to_csv(data));
}

Dataset read_dataset_csv(const std::filesystem::path& path) {
    return parse_dataset_csv(read_file(path));
}

} // namespace qflda
