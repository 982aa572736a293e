#include <gtest/gtest.h>

#include <filesystem>
#include <limits>

#include "qflda/dataset.hpp"
#include "qflda/error.hpp"

using namespace qflda;

namespace {

Dataset small_dataset() {
    Dataset d;
    d.feature_names = {"XX", "ZZ"};
    d.features.resize(3, 2);
    d.features << 0.1, -0.3, 1.0 / 3.0, 2.5e-17, -1, 1;
    d.labels = {ClassLabel::Entangled, ClassLabel::Separable, ClassLabel::Entangled};
    return d;
}

} // namespace

TEST(FormatDouble, ShortestRoundTrip) {
    EXPECT_EQ(format_double(0.5), "0.5");
    EXPECT_EQ(format_double(-1.0), "-1");
    for (double v : {1.0 / 3.0, 2.5e-17, -0.7071067811865476, 1e300})
        EXPECT_EQ(std::stod(format_double(v)), v);
}

TEST(DatasetCsv, RoundTripIsExact) {
    const auto d = small_dataset();
    const std::string text = dataset_to_csv(d);
    EXPECT_EQ(text.substr(0, text.find('\n')), "XX,ZZ,label");
    const auto back = parse_dataset_csv(text);
    EXPECT_EQ(back.feature_names, d.feature_names);
    EXPECT_EQ(back.features, d.features);
    EXPECT_EQ(back.labels, d.labels);
    EXPECT_EQ(dataset_to_csv(back), text);
    EXPECT_EQ(back.class_counts()[0], 2);
}

TEST(DatasetCsv, Errors) {
    EXPECT_THROW(parse_dataset_csv(""), ValidationError);
    EXPECT_THROW(parse_dataset_csv("XX,label\n0.1\n"), IoError);
    EXPECT_THROW(parse_dataset_csv("XX,label\nabc,1\n"), IoError);
    EXPECT_THROW(parse_dataset_csv("XX,label\n0.1,0\n"), IoError);
    EXPECT_THROW(parse_dataset_csv("foo,label\n0.1,1\n"), IoError);
    EXPECT_THROW(parse_dataset_csv("XX,ZZ\n0.1,1\n"), IoError);
    EXPECT_EQ(parse_dataset_csv("XX,label\n").rows(), 0);
}

TEST(DatasetFiles, AtomicWriteAndMissingFile) {
    const auto dir = std::filesystem::temp_directory_path() / "qflda_dataset_test";
    std::filesystem::create_directories(dir);
    const auto path = dir / "d.csv";
    write_dataset_csv(small_dataset(), path);
    EXPECT_EQ(read_dataset_csv(path).features, small_dataset().features);
    for (const auto& entry : std::filesystem::directory_iterator(dir))
        EXPECT_EQ(entry.path().filename(), "d.csv");
    EXPECT_THROW(read_dataset_csv(dir / "missing.csv"), IoError);
    EXPECT_THROW(write_file_atomic(dir / "no_such_dir" / "x.csv", "x"), IoError);
    std::filesystem::remove_all(dir);
}

TEST(DatasetSubset, SelectsRows) {
    const auto d = small_dataset();
    const std::vector<Eigen::Index> rows{2, 0};
    const auto s = d.subset(rows);
    EXPECT_EQ(s.rows(), 2);
    EXPECT_EQ(s.features.row(0), d.features.row(2));
    EXPECT_EQ(s.labels[1], d.labels[0]);
}
