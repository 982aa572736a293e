#include "qflda/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <numbers>
#include <thread>

#include <nlohmann/json.hpp>

namespace qflda {

namespace {

constexpr std::uint64_t kSplitDomain = 0x53504C4954ULL; // "SPLIT"
constexpr double kWernerWindow = 0.4;

void require(bool ok, const std::string& what) {
    if (!ok) throw ValidationError(what);
}

double draw(const ParamInterval& in, RngStream& rng) {
    const double u = uniform01(rng); // [0, 1)
    return in.lo_open ? in.hi - (in.hi - in.lo) * u : in.lo + (in.hi - in.lo) * u;
}

std::vector<double> dirichlet_weights(std::size_t k, RngStream& rng) {
    std::vector<double> w(k);
    double total = 0.0;
    for (auto& x : w) {
        x = -std::log1p(-uniform01(rng)); // Exp(1)
        total += x;
    }
    for (auto& x : w) x /= total;
    return w;
}

std::size_t uniform_index(RngStream& rng, std::size_t n) {
    return static_cast<std::size_t>(uniform01(rng) * static_cast<double>(n));
}

ProductSepParams sample_product(const ExperimentConfig& config, int num_qubits, RngStream& rng) {
    const std::size_t k = config.mixed_separable ? 1 + uniform_index(rng, 4) : 1;
    ProductSepParams ps;
    ps.weights = k == 1 ? std::vector<double>{1.0} : dirichlet_weights(k, rng);
    ps.bloch.resize(k);
    for (auto& comp : ps.bloch)
        for (int q = 0; q < num_qubits; ++q)
            comp.push_back(random_bloch_vector(rng, config.purity_cap));
    return ps;
}

unsigned worker_count(unsigned requested, std::int64_t work) {
    unsigned n = requested == 0 ? std::max(1U, std::thread::hardware_concurrency()) : requested;
    return static_cast<unsigned>(std::min<std::int64_t>(n, std::max<std::int64_t>(work, 1)));
}

} // namespace

std::string_view overlap_name(Overlap o) {
    switch (o) {
    case Overlap::High: return "high";
    case Overlap::Medium: return "medium";
    case Overlap::Low: return "low";
    }
    return "?";
}

Overlap parse_overlap(std::string_view name) {
    if (name == "high") return Overlap::High;
    if (name == "medium") return Overlap::Medium;
    if (name == "low") return Overlap::Low;
    throw ValidationError("unknown overlap level '" + std::string(name) + "'");
}

OverlapPreset overlap_preset(Overlap o) {
    switch (o) {
    case Overlap::High: return {0.0, 512, 0.1};
    case Overlap::Medium: return {0.1, 2048, 0.4};
    case Overlap::Low: return {0.25, 0, 0.8};
    }
    return {0.0, 0, 0.0};
}

// --- config ------------------------------------------------------------------------

int ExperimentConfig::num_qubits() const {
    require(family != Family::ProductSep,
            "product-sep is the separable reference class, not an experiment family");
    return family_qubits(family);
}

std::int64_t ExperimentConfig::effective_shots() const {
    return shots.value_or(overlap_preset(overlap).shots);
}

std::array<std::int64_t, 2> ExperimentConfig::class_sizes() const {
    const auto entangled = static_cast<std::int64_t>(std::llround(static_cast<double>(n_samples) * balance));
    return {entangled, n_samples - entangled};
}

void ExperimentConfig::validate() const {
    const int nq = num_qubits();
    require(n_samples >= 20, "n_samples must be at least 20");
    require(split > 0.0 && split < 1.0, "split must lie in (0, 1)");
    require(balance > 0.0 && balance < 1.0, "balance must lie in (0, 1)");
    const auto sizes = class_sizes();
    require(sizes[0] >= 10 && sizes[1] >= 10, "balance must leave at least 10 samples per class");
    require(epsilon >= 0.0 && std::isfinite(epsilon), "epsilon must be a nonnegative number");
    require(effective_shots() >= 0, "shots must be nonnegative");
    require(purity_cap > 0.0 && purity_cap <= 1.0, "purity_cap must lie in (0, 1]");
    ObservableSet::named(observables, nq);
    if (family == Family::Werner2 || family == Family::Werner3 || family == Family::Werner4) {
        werner_interval(*this, ClassLabel::Entangled);
        werner_interval(*this, ClassLabel::Separable);
    }
}

nlohmann::json config_to_json(const ExperimentConfig& c) {
    nlohmann::json doc;
    doc["family"] = family_name(c.family);
    doc["overlap"] = overlap_name(c.overlap);
    doc["n_samples"] = c.n_samples;
    doc["balance"] = c.balance;
    doc["shots"] = c.shots ? nlohmann::json(*c.shots) : nlohmann::json(nullptr);
    doc["split"] = c.split;
    doc["epsilon"] = c.epsilon;
    doc["label_convention"] = convention_name(c.label_convention);
    doc["master_seed"] = c.master_seed;
    doc["standardizer"] = standardizer_name(c.standardizer);
    doc["threshold_policy"] =
        c.threshold_policy == ThresholdPolicy::Midpoint ? "midpoint" : "prior-weighted";
    doc["observables"] = c.observables;
    doc["thresholds"] = {{"werner2", c.thresholds.werner2},
                         {"werner3", c.thresholds.werner3},
                         {"werner4", c.thresholds.werner4}};
    doc["mixed_separable"] = c.mixed_separable;
    doc["purity_cap"] = c.purity_cap;
    return doc;
}

ExperimentConfig config_from_json(const nlohmann::json& doc) {
    if (!doc.is_object()) throw ValidationError("config must be a JSON object");
    ExperimentConfig c;
    try {
        for (const auto& [key, value] : doc.items()) {
            if (key == "family") c.family = parse_family(value.get<std::string>());
            else if (key == "overlap") c.overlap = parse_overlap(value.get<std::string>());
            else if (key == "n_samples") c.n_samples = value.get<std::int64_t>();
            else if (key == "balance") c.balance = value.get<double>();
            else if (key == "shots") {
                if (value.is_null()) c.shots.reset();
                else c.shots = value.get<std::int64_t>();
            } else if (key == "split") c.split = value.get<double>();
            else if (key == "epsilon") c.epsilon = value.get<double>();
            else if (key == "label_convention") c.label_convention = parse_convention(value.get<std::string>());
            else if (key == "master_seed") c.master_seed = value.get<std::uint64_t>();
            else if (key == "standardizer") c.standardizer = parse_standardizer(value.get<std::string>());
            else if (key == "threshold_policy") {
                const auto p = value.get<std::string>();
                if (p == "midpoint") c.threshold_policy = ThresholdPolicy::Midpoint;
                else if (p == "prior-weighted") c.threshold_policy = ThresholdPolicy::PriorWeighted;
                else throw ValidationError("unknown threshold_policy '" + p + "'");
            } else if (key == "observables") c.observables = value.get<std::string>();
            else if (key == "thresholds") {
                c.thresholds.werner2 = value.value("werner2", c.thresholds.werner2);
                c.thresholds.werner3 = value.value("werner3", c.thresholds.werner3);
                c.thresholds.werner4 = value.value("werner4", c.thresholds.werner4);
            } else if (key == "mixed_separable") c.mixed_separable = value.get<bool>();
            else if (key == "purity_cap") c.purity_cap = value.get<double>();
            else if (key == "threads") c.threads = value.get<unsigned>();
            else throw ValidationError("unknown config key '" + key + "'");
        }
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("config: ") + e.what());
    }
    c.validate();
    return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(read_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw IoError("config '" + path.string() + "' is not valid JSON: " + e.what());
    }
    return config_from_json(doc);
}

// --- sampling ------------------------------------------------------------------------

ParamInterval werner_interval(const ExperimentConfig& config, ClassLabel label) {
    const Family f = config.family;
    const double boundary = werner_threshold(f, config.label_convention, config.thresholds);
    const double valid_lo = f == Family::Werner2 ? -1.0 / 3.0 : 0.0;
    const double margin = overlap_preset(config.overlap).margin;
    ParamInterval in{};
    if (label == ClassLabel::Entangled) {
        in = {boundary + margin, std::min(1.0, boundary + margin + kWernerWindow), true};
    } else {
        require(boundary > valid_lo, "separable interval is empty: boundary at or below the valid range");
        const double m = std::min(margin, 0.5 * (boundary - valid_lo));
        in = {std::max(valid_lo, boundary - m - kWernerWindow), boundary - m, false};
    }
    if (!(in.lo < in.hi))
        throw ValidationError(std::string("overlap preset leaves an empty ") +
                              (label == ClassLabel::Entangled ? "entangled" : "separable") +
                              " interval for " + std::string(family_name(f)));
    return in;
}

FamilyParams sample_family_params(const ExperimentConfig& config, ClassLabel label, RngStream& rng) {
    const Family f = config.family;
    const int nq = config.num_qubits();
    switch (f) {
    case Family::Werner2:
    case Family::Werner3:
    case Family::Werner4:
        return WernerParams{draw(werner_interval(config, label), rng), nq, BellSigns::singlet()};
    default: break;
    }
    if (label == ClassLabel::Separable) return sample_product(config, nq, rng);

    switch (f) {
    case Family::Concurrence: {
        const double c_min = overlap_preset(config.overlap).min_concurrence;
        for (int attempt = 0; attempt < 1'000'000; ++attempt) {
            ConcurrenceParams p{std::numbers::pi * uniform01(rng), std::numbers::pi * uniform01(rng)};
            if (concurrence_analytic(p) >= c_min) return p;
        }
        throw ValidationError("concurrence rejection sampling did not terminate");
    }
    case Family::PptesAcin: {
        const auto log_uniform = [&] { return std::exp(uniform(rng, std::log(0.5), std::log(2.0))); };
        AcinParams p;
        p.a = log_uniform();
        p.b = log_uniform();
        p.c = log_uniform();
        return p;
    }
    case Family::PptAlt: return PptAltParams{};
    case Family::Biseparable: {
        ExperimentConfig bc = config;
        bc.family = Family::Werner2;
        bc.label_convention = LabelConvention::PptOracle; // physical 1/3 boundary for the BC block
        const ParamInterval in = werner_interval(bc, ClassLabel::Entangled);
        const std::size_t k = 1 + uniform_index(rng, 3);
        BiseparableParams b;
        b.weights = k == 1 ? std::vector<double>{1.0} : dirichlet_weights(k, rng);
        for (std::size_t i = 0; i < k; ++i) {
            b.bloch_a.push_back(random_bloch_vector(rng));
            b.p_bc.push_back(draw(in, rng));
        }
        return b;
    }
    default: break;
    }
    throw ValidationError("family " + std::string(family_name(f)) + " has no entangled sampler");
}

Dataset generate_dataset(const ExperimentConfig& config) {
    config.validate();
    const int nq = config.num_qubits();
    const ObservableSet obs = ObservableSet::named(config.observables, nq);
    const std::int64_t shots = config.effective_shots();
    const auto sizes = config.class_sizes();
    const std::int64_t n = config.n_samples;

    Dataset data;
    data.feature_names = obs.names();
    data.features.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(obs.size()));
    data.labels.assign(static_cast<std::size_t>(n), ClassLabel::Separable);
    data.sources.assign(static_cast<std::size_t>(n), {});

    const auto make_row = [&](std::int64_t i) {
        RngStream rng = derive_stream(config.master_seed, static_cast<std::uint64_t>(i));
        const ClassLabel requested = i < sizes[0] ? ClassLabel::Entangled : ClassLabel::Separable;
        const FamilyParams params = sample_family_params(config, requested, rng);
        const DensityOperator rho = build_state(params);
        const auto row = static_cast<Eigen::Index>(i);
        data.features.row(row) =
            (shots > 0 ? sampled_features(rho, obs, shots, rng) : exact_features(rho, obs)).transpose();
        data.labels[static_cast<std::size_t>(i)] =
            assign_label(params, config.label_convention, config.thresholds);
        data.sources[static_cast<std::size_t>(i)] = describe(params);
    };

    const unsigned workers = worker_count(config.threads, n);
    std::vector<std::exception_ptr> errors(workers);
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < workers; ++t) {
            pool.emplace_back([&, t] {
                try {
                    for (std::int64_t i = t; i < n; i += workers) make_row(i);
                } catch (...) {
                    errors[t] = std::current_exception();
                }
            });
        }
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);

    data.metadata = {
        {"family", std::string(family_name(config.family))},
        {"overlap", std::string(overlap_name(config.overlap))},
        {"label_convention", std::string(convention_name(config.label_convention))},
        {"master_seed", std::to_string(config.master_seed)},
        {"shots", std::to_string(shots)},
    };
    return data;
}

SplitIndices stratified_split(const Dataset& data, double train_fraction, std::uint64_t seed) {
    require(train_fraction > 0.0 && train_fraction < 1.0, "split must lie in (0, 1)");
    RngStream rng = derive_stream(seed, 0, kSplitDomain);
    SplitIndices out;
    for (ClassLabel cls : {ClassLabel::Entangled, ClassLabel::Separable}) {
        std::vector<Eigen::Index> idx;
        for (std::size_t r = 0; r < data.labels.size(); ++r)
            if (data.labels[r] == cls) idx.push_back(static_cast<Eigen::Index>(r));
        for (std::size_t i = idx.size(); i > 1; --i) std::swap(idx[i - 1], idx[uniform_index(rng, i)]);
        auto n_train = static_cast<std::size_t>(std::floor(train_fraction * static_cast<double>(idx.size())));
        if (idx.size() >= 2) n_train = std::clamp<std::size_t>(n_train, 1, idx.size() - 1);
        else n_train = idx.size();
        out.train.insert(out.train.end(), idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(n_train));
        out.test.insert(out.test.end(), idx.begin() + static_cast<std::ptrdiff_t>(n_train), idx.end());
    }
    std::sort(out.train.begin(), out.train.end());
    std::sort(out.test.begin(), out.test.end());
    return out;
}

ExperimentReport run_experiment(const ExperimentConfig& config, const Dataset& data) {
    const auto start = std::chrono::steady_clock::now();
    ExperimentReport report;
    report.config = config;
    report.split = stratified_split(data, config.split, config.master_seed);
    require(!report.split.test.empty(), "test split is empty");
    const Dataset train = data.subset(report.split.train);
    const Dataset test = data.subset(report.split.test);

    FitOptions options;
    options.epsilon = config.epsilon;
    options.standardizer = config.standardizer;
    options.threshold_policy = config.threshold_policy;
    report.model = fit(train.features, train.labels, options);
    report.model.feature_names = data.feature_names;
    report.model.label_convention = std::string(convention_name(config.label_convention));

    const Metrics tr = evaluate(report.model, train.features, train.labels);
    const Metrics te = evaluate(report.model, test.features, test.labels);
    report.fld_threshold = report.model.threshold;
    report.train_accuracy = tr.accuracy;
    report.test_accuracy = te.accuracy;
    report.fisher_criterion = report.model.fisher_j;
    report.train_confusion = tr.confusion;
    report.test_confusion = te.confusion;
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
    const auto start = std::chrono::steady_clock::now();
    ExperimentReport report = run_experiment(config, generate_dataset(config));
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

std::string projection_histogram_csv(const FldaModel& model, const Dataset& data, int bins) {
    require(bins >= 1, "histogram needs at least one bin");
    require(data.rows() > 0, "histogram of an empty dataset");
    const RealVector y = project_rows(model, data.features);
    const double lo = y.minCoeff();
    double hi = y.maxCoeff();
    if (!(hi > lo)) hi = lo + 1.0;
    const double width = (hi - lo) / bins;
    std::vector<std::array<std::int64_t, 2>> counts(static_cast<std::size_t>(bins), {0, 0});
    for (Eigen::Index r = 0; r < y.size(); ++r) {
        auto b = static_cast<int>((y(r) - lo) / width);
        b = std::clamp(b, 0, bins - 1);
        ++counts[static_cast<std::size_t>(b)][data.labels[static_cast<std::size_t>(r)] == ClassLabel::Entangled ? 0 : 1];
    }
    std::string out = "bin_lo,bin_hi,entangled,separable\n";
    for (int b = 0; b < bins; ++b) {
        out += format_double(lo + b * width) + "," + format_double(lo + (b + 1) * width) + "," +
               std::to_string(counts[static_cast<std::size_t>(b)][0]) + "," +
               std::to_string(counts[static_cast<std::size_t>(b)][1]) + "\n";
    }
    return out;
}

// --- tables ---------------------------------------------------------------------------

std::string_view profile_name(Profile p) { return p == Profile::Ci ? "ci" : "full"; }

Profile parse_profile(std::string_view name) {
    if (name == "ci") return Profile::Ci;
    if (name == "full") return Profile::Full;
    throw ValidationError("unknown profile '" + std::string(name) + "'");
}

TableSpec table_spec(int id) {
    const std::vector<Overlap> all = {Overlap::High, Overlap::Medium, Overlap::Low};
    switch (id) {
    case 1: return {1, Family::Werner2, all};
    case 2: return {2, Family::Concurrence, all};
    case 3: return {3, Family::Werner3, all};
    case 4: return {4, Family::PptesAcin, all};
    case 5: return {5, Family::PptAlt, all};
    case 6: return {6, Family::Biseparable, {Overlap::High}};
    case 7: return {7, Family::Werner4, {Overlap::High}};
    default: throw ValidationError("table id must be in 1..7, got " + std::to_string(id));
    }
}

ExperimentConfig table_row_config(int id, Overlap overlap, std::uint64_t seed, Profile profile,
                                  unsigned threads) {
    ExperimentConfig c;
    c.family = table_spec(id).family;
    c.overlap = overlap;
    c.master_seed = seed;
    c.threads = threads;
    if (profile == Profile::Ci) {
        c.n_samples = c.family == Family::Werner4 ? 2000 : 4000;
    } else {
        c.n_samples = 10000;
        c.shots = 2 * overlap_preset(overlap).shots;
    }
    return c;
}

std::vector<TableRow> reproduce_tables(std::span<const int> ids, std::uint64_t seed,
                                       Profile profile, unsigned threads) {
    for (int id : ids) table_spec(id); // validate all before running any
    std::vector<TableRow> rows;
    for (int id : ids) {
        const TableSpec spec = table_spec(id);
        for (Overlap o : spec.overlaps) {
            const ExperimentReport r = run_experiment(table_row_config(id, o, seed, profile, threads));
            rows.push_back({id, spec.family, o, r.fld_threshold, r.train_accuracy, r.test_accuracy,
                            r.fisher_criterion, seed});
        }
    }
    return rows;
}

ReportFormat parse_format(std::string_view name) {
    if (name == "csv") return ReportFormat::Csv;
    if (name == "json") return ReportFormat::Json;
    throw ValidationError("unknown format '" + std::string(name) + "'");
}

std::string table_rows_to_csv(std::span<const TableRow> rows) {
    std::string out = "table,family,overlap,fld_threshold,train_acc,test_acc,fisher_j,seed\n";
    for (const auto& r : rows) {
        out += std::to_string(r.table) + "," + std::string(family_name(r.family)) + "," +
               std::string(overlap_name(r.overlap)) + "," + format_double(r.fld_threshold) + "," +
               format_double(r.train_accuracy) + "," + format_double(r.test_accuracy) + "," +
               format_double(r.fisher_criterion) + "," + std::to_string(r.seed) + "\n";
    }
    return out;
}

std::string table_rows_to_json(std::span<const TableRow> rows) {
    nlohmann::json doc;
    doc["note"] = "overlap levels are operational presets (parameter margin, shot count, "
                  "minimum concurrence); they are an interpretation, not published definitions";
    nlohmann::json presets;
    for (Overlap o : {Overlap::High, Overlap::Medium, Overlap::Low}) {
        const auto p = overlap_preset(o);
        presets[std::string(overlap_name(o))] = {
            {"margin", p.margin}, {"shots", p.shots}, {"min_concurrence", p.min_concurrence}};
    }
    doc["overlap_presets"] = presets;
    doc["rows"] = nlohmann::json::array();
    for (const auto& r : rows) {
        doc["rows"].push_back({{"table", r.table},
                               {"family", family_name(r.family)},
                               {"overlap", overlap_name(r.overlap)},
                               {"fld_threshold", r.fld_threshold},
                               {"train_acc", r.train_accuracy},
                               {"test_acc", r.test_accuracy},
                               {"fisher_j", r.fisher_criterion},
                               {"seed", r.seed}});
    }
    return doc.dump(2) + "\n";
}

void write_table_rows(std::span<const TableRow> rows, const std::filesystem::path& path,
                      ReportFormat format) {
    write_file_atomic(path, format == ReportFormat::Csv ? table_rows_to_csv(rows)
                                                        : table_rows_to_json(rows));
}

} // namespace qflda
