#include "cli/commands.hpp"

#include <charconv>
#include <cstdlib>
#include <iomanip>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qflda/dataset.hpp"
#include "qflda/flda.hpp"
#include "qflda/harness.hpp"
#include "qflda/labeling.hpp"
#include "qflda/measure.hpp"
#include "qflda/states.hpp"

namespace qflda::cli {

namespace {

std::uint64_t default_seed() {
    const char* env = std::getenv(kSeedEnv);
    if (env == nullptr || *env == '\0') return 0;
    std::uint64_t seed = 0;
    const std::string_view s(env);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), seed);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw ValidationError(std::string(kSeedEnv) + " is not an unsigned integer");
    return seed;
}

std::vector<int> parse_table_ids(const std::string& text) {
    std::vector<int> ids;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        const auto dots = item.find("..");
        int lo = 0, hi = 0;
        try {
            if (dots != std::string::npos) {
                lo = std::stoi(item.substr(0, dots));
                hi = std::stoi(item.substr(dots + 2));
            } else {
                lo = hi = std::stoi(item);
            }
        } catch (const std::exception&) {
            throw ValidationError("bad table list '" + text + "'");
        }
        if (lo > hi) throw ValidationError("bad table range '" + item + "'");
        for (int id = lo; id <= hi; ++id) {
            table_spec(id);
            ids.push_back(id);
        }
    }
    if (ids.empty()) throw ValidationError("no tables selected");
    return ids;
}

void print_metrics_line(std::ostream& out, const std::string& prefix, double threshold,
                        double accuracy, double fisher_j) {
    out << prefix << "threshold=" << format_double(threshold)
        << " accuracy=" << format_double(accuracy) << " fisher_j=" << format_double(fisher_j)
        << "\n";
}

// --- gen ---------------------------------------------------------------------------

struct GenArgs {
    std::string config_path;
    std::string family;
    std::string overlap = "low";
    std::int64_t n = 4000;
    std::int64_t shots = -1;
    std::optional<std::uint64_t> seed;
    std::string convention = "paper";
    std::string observables = "full";
    bool mixed_separable = false;
    unsigned threads = 0;
    std::string out;
};

int cmd_gen(const GenArgs& a, const CLI::App& sub, std::ostream& out) {
    ExperimentConfig c = a.config_path.empty() ? ExperimentConfig{} : load_config(a.config_path);
    if (a.config_path.empty() || sub.count("--family")) c.family = parse_family(a.family);
    if (a.config_path.empty() || sub.count("--overlap")) c.overlap = parse_overlap(a.overlap);
    if (a.config_path.empty() || sub.count("--n")) c.n_samples = a.n;
    if (sub.count("--shots")) c.shots = a.shots;
    if (a.config_path.empty() || sub.count("--label-convention"))
        c.label_convention = parse_convention(a.convention);
    if (a.config_path.empty() || sub.count("--observables")) c.observables = a.observables;
    if (sub.count("--mixed-separable")) c.mixed_separable = a.mixed_separable;
    if (a.seed) c.master_seed = *a.seed;
    else if (a.config_path.empty()) c.master_seed = default_seed();
    c.threads = a.threads;

    const Dataset data = generate_dataset(c);
    write_dataset_csv(data, a.out);
    const auto counts = data.class_counts();
    out << "rows=" << data.rows() << " features=" << data.features.cols()
        << " entangled=" << counts[0] << " separable=" << counts[1] << " -> " << a.out << "\n";
    return kExitOk;
}

// --- fit -----------------------------------------------------------------------------

struct FitArgs {
    std::string train;
    double epsilon = 1e-6;
    std::string standardizer = "zscore";
    std::string threshold_policy = "midpoint";
    std::string convention = "paper";
    std::string model_out;
    std::string hist_out;
    int bins = 40;
};

int cmd_fit(const FitArgs& a, std::ostream& out) {
    const Dataset data = read_dataset_csv(a.train);
    if (data.rows() == 0) throw ValidationError("training file has no rows");
    FitOptions options;
    options.epsilon = a.epsilon;
    options.standardizer = parse_standardizer(a.standardizer);
    if (a.threshold_policy == "prior-weighted") options.threshold_policy = ThresholdPolicy::PriorWeighted;
    else if (a.threshold_policy != "midpoint")
        throw ValidationError("unknown threshold policy '" + a.threshold_policy + "'");
    const LabelConvention conv = parse_convention(a.convention);

    FldaModel model = fit(data.features, data.labels, options);
    model.feature_names = data.feature_names;
    model.label_convention = std::string(convention_name(conv));
    write_file_atomic(a.model_out, serialize_model(model));
    if (!a.hist_out.empty()) write_file_atomic(a.hist_out, projection_histogram_csv(model, data, a.bins));

    const Metrics m = evaluate(model, data.features, data.labels);
    print_metrics_line(out, "train: ", m.threshold, m.accuracy, m.fisher_j);
    out << "model -> " << a.model_out << "\n";
    return kExitOk;
}

// --- eval ----------------------------------------------------------------------------

struct EvalArgs {
    std::string model;
    std::string test;
    std::string report_out;
    std::string format = "csv";
    std::string hist_out;
    int bins = 40;
};

int cmd_eval(const EvalArgs& a, std::ostream& out) {
    const ReportFormat format = parse_format(a.format);
    const FldaModel model = deserialize_model(read_file(a.model));
    const Dataset data = read_dataset_csv(a.test);
    if (data.rows() == 0) throw ValidationError("evaluation file has no rows");
    if (data.feature_names != model.feature_names)
        throw ValidationError("feature names of the evaluation file do not match the model");

    const Metrics m = evaluate(model, data.features, data.labels);
    const auto& cc = m.confusion.counts;
    if (!a.report_out.empty()) {
        std::string text;
        if (format == ReportFormat::Csv) {
            text = "fld_threshold,accuracy,fisher_j,entangled_as_entangled,entangled_as_separable,"
                   "separable_as_entangled,separable_as_separable,rows\n";
            text += format_double(m.threshold) + "," + format_double(m.accuracy) + "," +
                    format_double(m.fisher_j) + "," + std::to_string(cc[0][0]) + "," +
                    std::to_string(cc[0][1]) + "," + std::to_string(cc[1][0]) + "," +
                    std::to_string(cc[1][1]) + "," + std::to_string(m.confusion.total()) + "\n";
        } else {
            nlohmann::json doc = {{"fld_threshold", m.threshold},
                                  {"accuracy", m.accuracy},
                                  {"fisher_j", m.fisher_j},
                                  {"rows", m.confusion.total()},
                                  {"confusion",
                                   {{"entangled_as_entangled", cc[0][0]},
                                    {"entangled_as_separable", cc[0][1]},
                                    {"separable_as_entangled", cc[1][0]},
                                    {"separable_as_separable", cc[1][1]}}}};
            text = doc.dump(2) + "\n";
        }
        write_file_atomic(a.report_out, text);
    }
    if (!a.hist_out.empty()) write_file_atomic(a.hist_out, projection_histogram_csv(model, data, a.bins));

    print_metrics_line(out, "eval: ", m.threshold, m.accuracy, m.fisher_j);
    out << "confusion (actual -> predicted): entangled->entangled=" << cc[0][0]
        << " entangled->separable=" << cc[0][1] << " separable->entangled=" << cc[1][0]
        << " separable->separable=" << cc[1][1] << "\n";
    return kExitOk;
}

// --- inspect -------------------------------------------------------------------------

struct InspectArgs {
    std::string family;
    std::optional<double> p;
    std::optional<double> theta0;
    std::optional<double> theta1;
    double a = 1.0;
    double b = 1.0;
    double c = 1.0;
    int qubits = 3;
    std::optional<std::uint64_t> seed;
};

FamilyParams inspect_params(const InspectArgs& a) {
    const Family f = parse_family(a.family);
    switch (f) {
    case Family::Werner2:
    case Family::Werner3:
    case Family::Werner4:
        if (!a.p) throw ValidationError(a.family + " requires --p");
        return WernerParams{*a.p, family_qubits(f), BellSigns::singlet()};
    case Family::Concurrence:
        if (!a.theta0 || !a.theta1) throw ValidationError("concurrence requires --theta0 and --theta1");
        return ConcurrenceParams{*a.theta0, *a.theta1};
    case Family::PptesAcin: return AcinParams{a.a, a.b, a.c};
    case Family::PptAlt: return PptAltParams{};
    case Family::Biseparable:
    case Family::ProductSep: {
        ExperimentConfig cfg;
        cfg.family = f == Family::Biseparable ? Family::Biseparable : Family::PptesAcin;
        if (f == Family::ProductSep && (a.qubits < 1 || a.qubits > 4))
            throw ValidationError("--qubits must be in 1..4");
        RngStream rng = derive_stream(a.seed.value_or(default_seed()), 0);
        if (f == Family::Biseparable) return sample_family_params(cfg, ClassLabel::Entangled, rng);
        ProductSepParams ps{{1.0}, {{}}};
        for (int q = 0; q < a.qubits; ++q) ps.bloch[0].push_back(random_bloch_vector(rng));
        return ps;
    }
    }
    throw ValidationError("unsupported family");
}

int cmd_inspect(const InspectArgs& a, std::ostream& out) {
    const FamilyParams params = inspect_params(a);
    const DensityOperator rho = build_state(params);
    out << std::setprecision(12);
    out << "state: " << describe(params) << "\n";
    out << "qubits: " << rho.num_qubits() << "\n";
    out << "trace: " << trace(rho.matrix()).real() << "\n";
    out << "purity: " << rho.purity() << "\n";
    const RealVector ev = hermitian_eigenvalues(rho.matrix());
    out << "eigenvalues:";
    for (Eigen::Index k = 0; k < ev.size(); ++k) out << " " << ev(k);
    out << "\n";
    if (rho.num_qubits() <= 3) {
        out << "matrix (real, imag):\n";
        for (Eigen::Index r = 0; r < rho.dim(); ++r) {
            out << " ";
            for (Eigen::Index c = 0; c < rho.dim(); ++c) {
                const Complex v = rho.matrix()(r, c);
                out << " (" << v.real() << "," << v.imag() << ")";
            }
            out << "\n";
        }
    }
    const PptReport ppt = ppt_report(rho);
    out << "partial transpose minimum eigenvalues:\n";
    for (const auto& [cut, value] : ppt.min_eigenvalue) out << "  " << cut << ": " << value << "\n";
    out << "ppt under all cuts: " << (ppt.is_ppt_all ? "yes" : "no") << "\n";
    out << "label (paper): " << to_int(assign_label(params, LabelConvention::Paper)) << "\n";
    out << "label (ppt-oracle): " << to_int(assign_label(params, LabelConvention::PptOracle)) << "\n";
    if (rho.num_qubits() == 2) {
        out << "concurrence (wootters): " << concurrence_wootters(rho) << "\n";
        if (const auto* cp = std::get_if<ConcurrenceParams>(&params))
            out << "concurrence (analytic): " << concurrence_analytic(*cp) << "\n";
    }
    return kExitOk;
}

// --- reproduce -----------------------------------------------------------------------

struct ReproduceArgs {
    std::string tables = "1..7";
    std::string out;
    std::optional<std::uint64_t> seed;
    std::string profile = "ci";
    std::string format = "csv";
    unsigned threads = 0;
};

int cmd_reproduce(const ReproduceArgs& a, std::ostream& out) {
    const std::vector<int> ids = parse_table_ids(a.tables);
    const Profile profile = parse_profile(a.profile);
    const ReportFormat format = parse_format(a.format);
    const std::uint64_t seed = a.seed.value_or(default_seed());

    const auto rows = reproduce_tables(ids, seed, profile, a.threads);
    write_table_rows(rows, a.out, format);

    out << std::fixed << std::setprecision(3);
    out << "table family       overlap | threshold  train  test   fisher_j   | paper: threshold train "
           "test  fisher_j | gate\n";
    int failed = 0;
    for (const auto& r : rows) {
        out << std::setw(5) << r.table << " " << std::left << std::setw(12) << family_name(r.family)
            << " " << std::setw(7) << overlap_name(r.overlap) << std::right << " | " << std::setw(9)
            << r.fld_threshold << " " << std::setw(6) << r.train_accuracy << " " << std::setw(6)
            << r.test_accuracy << " " << std::setw(10) << r.fisher_criterion << " | ";
        if (const auto ref = find_reference(r.table, r.overlap)) {
            const bool pass = r.test_accuracy >= ref->min_test_accuracy;
            failed += pass ? 0 : 1;
            out << std::setw(9) << ref->fld_threshold << " " << std::setw(5) << ref->train_accuracy
                << " " << std::setw(5) << ref->test_accuracy << " " << std::setw(9)
                << ref->fisher_criterion << " | test>=" << ref->min_test_accuracy << " "
                << (pass ? "PASS" : "FAIL") << "\n";
        } else {
            out << "(no reference)\n";
        }
    }
    out << rows.size() << " rows, " << failed << " below gate -> " << a.out << "\n";
    out << "note: thresholds and Fisher values are reported, not gated; overlap levels are "
           "operational presets\n";
    return kExitOk;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"qflda: Fisher discriminant entanglement classification toolkit"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for every subcommand");

    GenArgs gen;
    auto* gen_cmd = app.add_subcommand("gen", "Generate a labeled feature dataset");
    gen_cmd->add_option("--config", gen.config_path, "JSON experiment config (flags override it)");
    gen_cmd->add_option("--family", gen.family, "State family (werner2, werner3, werner4, concurrence, pptes-acin, ppt-alt, biseparable)");
    gen_cmd->add_option("--overlap", gen.overlap, "Overlap preset: high, medium, low")->capture_default_str();
    gen_cmd->add_option("--n", gen.n, "Number of samples")->capture_default_str();
    gen_cmd->add_option("--shots", gen.shots, "Shots per observable (0 = exact; default: preset)");
    gen_cmd->add_option("--seed", gen.seed, std::string("Master seed (default: $") + kSeedEnv + " or 0)");
    gen_cmd->add_option("--label-convention", gen.convention, "paper or ppt-oracle")->capture_default_str();
    gen_cmd->add_option("--observables", gen.observables, "full or weight<=K")->capture_default_str();
    gen_cmd->add_flag("--mixed-separable", gen.mixed_separable, "Separable class as mixtures of product states");
    gen_cmd->add_option("--threads", gen.threads, "Worker threads (0 = all cores)");
    gen_cmd->add_option("--out", gen.out, "Output CSV path")->required();

    FitArgs fitargs;
    auto* fit_cmd = app.add_subcommand("fit", "Fit a Fisher discriminant model to a dataset");
    fit_cmd->add_option("--train", fitargs.train, "Training CSV")->required();
    fit_cmd->add_option("--epsilon", fitargs.epsilon, "Regularizer, relative to mean diag(S_W)")->capture_default_str();
    fit_cmd->add_option("--standardizer", fitargs.standardizer, "zscore, minmax or none")->capture_default_str();
    fit_cmd->add_option("--threshold-policy", fitargs.threshold_policy, "midpoint or prior-weighted")->capture_default_str();
    fit_cmd->add_option("--label-convention", fitargs.convention, "Recorded in the model")->capture_default_str();
    fit_cmd->add_option("--model-out", fitargs.model_out, "Output model JSON")->required();
    fit_cmd->add_option("--hist-out", fitargs.hist_out, "Optional projection histogram CSV");
    fit_cmd->add_option("--bins", fitargs.bins, "Histogram bins")->capture_default_str();

    EvalArgs evalargs;
    auto* eval_cmd = app.add_subcommand("eval", "Evaluate a model on a labeled dataset");
    eval_cmd->add_option("--model", evalargs.model, "Model JSON")->required();
    eval_cmd->add_option("--test", evalargs.test, "Evaluation CSV")->required();
    eval_cmd->add_option("--report-out", evalargs.report_out, "Optional metrics report path");
    eval_cmd->add_option("--format", evalargs.format, "Report format: csv or json")->capture_default_str();
    eval_cmd->add_option("--hist-out", evalargs.hist_out, "Optional projection histogram CSV");
    eval_cmd->add_option("--bins", evalargs.bins, "Histogram bins")->capture_default_str();

    InspectArgs ins;
    auto* inspect_cmd = app.add_subcommand("inspect", "Print spectra, PPT cuts and labels of one state");
    inspect_cmd->add_option("--family", ins.family, "State family")->required();
    inspect_cmd->add_option("--p", ins.p, "Werner mixing parameter");
    inspect_cmd->add_option("--theta0", ins.theta0, "Concurrence circuit angle theta0 (radians)");
    inspect_cmd->add_option("--theta1", ins.theta1, "Concurrence circuit angle theta1 (radians)");
    inspect_cmd->add_option("--a", ins.a, "Acin parameter a")->capture_default_str();
    inspect_cmd->add_option("--b", ins.b, "Acin parameter b")->capture_default_str();
    inspect_cmd->add_option("--c", ins.c, "Acin parameter c")->capture_default_str();
    inspect_cmd->add_option("--qubits", ins.qubits, "Qubits for product-sep")->capture_default_str();
    inspect_cmd->add_option("--seed", ins.seed, "Seed for randomly drawn families");

    ReproduceArgs rep;
    auto* rep_cmd = app.add_subcommand("reproduce", "Re-run the table experiments");
    rep_cmd->add_option("--tables", rep.tables, "Table ids, e.g. 1,3 or 1..7")->capture_default_str();
    rep_cmd->add_option("--out", rep.out, "Results file")->required();
    rep_cmd->add_option("--seed", rep.seed, std::string("Master seed (default: $") + kSeedEnv + " or 0)");
    rep_cmd->add_option("--profile", rep.profile, "ci or full")->capture_default_str();
    rep_cmd->add_option("--format", rep.format, "csv or json")->capture_default_str();
    rep_cmd->add_option("--threads", rep.threads, "Worker threads (0 = all cores)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitValidation;
    }

    try {
        if (*gen_cmd) return cmd_gen(gen, *gen_cmd, out);
        if (*fit_cmd) return cmd_fit(fitargs, out);
        if (*eval_cmd) return cmd_eval(evalargs, out);
        if (*inspect_cmd) return cmd_inspect(ins, out);
        if (*rep_cmd) return cmd_reproduce(rep, out);
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitValidation;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv{"qflda"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

} // namespace qflda::cli
