// Command-line front end: jnorm, fuzz, build, verify, plotdata.
// Exit codes: 0 pass, 1 property violation, 2 usage/data error.

#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "james/build.hpp"
#include "james/config.hpp"
#include "james/counterexample.hpp"
#include "james/embedding.hpp"
#include "james/fuzz.hpp"
#include "james/serialization.hpp"

namespace {

using nlohmann::json;

struct Flags {
    std::string config_path;
    std::optional<int> n;
    std::optional<std::string> mode;
    std::optional<double> delta;
    std::optional<int> trials;
    std::optional<std::uint64_t> seed;
    std::optional<int> grid;
    std::optional<std::string> out;
};

void add_common_flags(CLI::App* cmd, Flags& f) {
    cmd->add_option("--config", f.config_path, "JSON config file; flags override its values");
    cmd->add_option("--n", f.n, "basis length N");
    cmd->add_option("--mode", f.mode, "embedding mode: probe_exact | net");
    cmd->add_option("--delta", f.delta, "net covering parameter in (0,1)");
    cmd->add_option("--trials", f.trials, "fuzz trial count");
    cmd->add_option("--seed", f.seed, "base seed for all randomness");
    cmd->add_option("--grid", f.grid, "grid resolution for cross-checks / plot data");
    cmd->add_option("--out", f.out, "output directory");
}

james::RunConfig resolve_config(const Flags& f) {
    james::RunConfig c;
    if (!f.config_path.empty()) {
        try {
            c = json::parse(james::read_text_file(f.config_path)).get<james::RunConfig>();
        } catch (const json::exception& e) {
            throw james::DataError("invalid config file " + f.config_path + ": " + e.what());
        }
    }
    if (f.n) c.n = *f.n;
    if (f.mode) c.mode = james::mode_from_string(*f.mode);
    if (f.delta) c.delta = *f.delta;
    if (f.trials) c.fuzz_trials = *f.trials;
    if (f.seed) c.seed = *f.seed;
    if (f.grid) c.grid_resolution = *f.grid;
    if (f.out) c.output_dir = *f.out;
    c.validate();
    return c;
}

std::string out_path(const james::RunConfig& c, const std::string& name) {
    std::filesystem::create_directories(c.output_dir);
    return (std::filesystem::path(c.output_dir) / name).string();
}

// Configs embedded in artifacts and reports carry output_dir "." so that
// file content does not depend on where it was written.
james::RunConfig embedded_config(james::RunConfig c) {
    c.output_dir = ".";
    return c;
}

// ---- jnorm ----

int cmd_jnorm(const std::string& vector_arg, const std::string& variant_arg) {
    json parsed;
    try {
        parsed = json::parse(vector_arg);
    } catch (const json::exception&) {
        try {
            parsed = json::parse(james::read_text_file(vector_arg));
        } catch (const json::exception& e) {
            throw james::DataError(std::string("cannot parse vector argument: ") + e.what());
        }
    }
    const auto x = parsed.get<james::FiniteSequence>();
    const auto variant = james::variant_from_string(variant_arg);
    json out = james::james_norm(x, variant);
    std::printf("%s\n", out.dump(2).c_str());
    return 0;
}

// ---- fuzz ----

int cmd_fuzz(const james::RunConfig& config) {
    const auto report = james::run_fuzz(config.seed, config.fuzz_trials);
    json doc{{"command", "fuzz"},
             {"config", embedded_config(config)},
             {"seed", config.seed},
             {"artifact_hash", ""},
             {"report", report},
             {"pass", report.pass}};
    const auto path = out_path(config, "fuzz_report.json");
    james::write_text_file(path, james::canonical_dump(doc));
    std::printf("fuzz: %s (report: %s)\n", report.pass ? "pass" : "FAIL", path.c_str());
    for (const auto& s : report.suites) {
        std::printf("  %-28s trials=%d failures=%d %s\n", s.suite.c_str(), s.trials, s.failures,
                    s.pass ? "pass" : "FAIL");
    }
    return report.pass ? 0 : 1;
}

// ---- build ----

int cmd_build(const james::RunConfig& config) {
    const auto art = james::standard_build(config);
    const auto artifact_path = out_path(config, "artifact.json");
    james::save_artifact(artifact_path, art, embedded_config(config));
    const std::string hash = james::content_hash(json(art));

    const auto m = james::effective_m(art);
    json descriptor{{"format", james::descriptor_format},
                    {"artifact_hash", hash},
                    {"N", art.N},
                    {"m_eff", m.value},
                    {"m_source", m.source}};
    const auto descriptor_path = out_path(config, "counterexample.json");
    james::write_text_file(descriptor_path, james::canonical_dump(descriptor));

    std::printf("build: N=%d mode=%s functionals=%zu M=%.17g (%s)\n", art.N, james::to_string(art.mode),
                art.functionals.size(), m.value, m.source.c_str());
    std::printf("  artifact: %s\n  descriptor: %s\n  hash: %s\n", artifact_path.c_str(),
                descriptor_path.c_str(), hash.c_str());
    return 0;
}

// ---- verify ----

int cmd_verify(const std::string& artifact_path, const Flags& flags) {
    const auto file = james::load_artifact(artifact_path);
    james::RunConfig config = file.config;
    if (flags.grid) config.grid_resolution = *flags.grid;
    if (flags.out) config.output_dir = *flags.out;
    config.validate();
    if (config.n != file.artifact.N) {
        throw james::DataError("artifact/config mismatch: config.n != artifact.N");
    }
    const james::CounterexampleSystem sys(file.artifact);
    const int N = sys.N();
    const std::uint64_t seed = config.seed;
    json checks = json::array();
    bool all_pass = true;

    // 1. sandwich over probes + the seeded lambda population
    {
        std::vector<james::FiniteSequence> lambdas;
        for (const auto& entry : file.artifact.audit) {
            if (entry.probe) lambdas.push_back(entry.vector);
        }
        james::Rng rng(james::derive_seed(seed, james::streams::sandwich_lambdas));
        for (int i = 0; i < james::sandwich_trial_count; ++i) {
            lambdas.push_back(james::random_nonzero_sequence(rng, N));
        }
        int failures = 0;
        double worst_low = std::numeric_limits<double>::infinity();
        double worst_high = 0.0;
        json first_failure;
        for (const auto& lambda : lambdas) {
            const auto rep = james::verify_sandwich(sys, lambda);
            if (rep.norm_j > 0.0) {
                worst_low = std::min(worst_low, rep.sup / rep.norm_j);
                worst_high = std::max(worst_high, rep.sup / rep.norm_j);
            }
            if (!rep.pass) {
                ++failures;
                if (first_failure.is_null()) first_failure = rep;
            }
        }
        const bool pass = failures == 0;
        all_pass = all_pass && pass;
        json values{{"vectors", lambdas.size()},
                    {"failures", failures},
                    {"min_sup_over_norm", worst_low},
                    {"max_sup_over_norm", worst_high},
                    {"m_eff", james::effective_m(file.artifact).value},
                    {"m_source", james::effective_m(file.artifact).source}};
        if (!first_failure.is_null()) values["first_failure"] = first_failure;
        checks.push_back(james::report_envelope("sandwich", pass, values, seed, file.hash));
    }

    // 2. partial sums (uniform bound, stabilization, non-Cauchy, weak proxy)
    {
        const auto rep = james::verify_partial_sums(sys, james::derive_seed(seed, james::streams::partial_sums), 64);
        all_pass = all_pass && rep.pass;
        checks.push_back(james::report_envelope("partial_sums", rep.pass, rep, seed, file.hash));
    }

    // 3. mid-line identity
    if (N >= 2) {
        james::Rng rng(james::derive_seed(seed, james::streams::midline_checks));
        double worst = 0.0;
        for (int k = 2; k <= N; ++k) {
            for (int rep = 0; rep < 10; ++rep) {
                const auto lambda = james::random_sequence(rng, N);
                const auto mc = james::midline_coefficients(sys, k, lambda);
                const double b = std::ldexp(1.0, -k);
                for (int i = 0; i < 100; ++i) {
                    const double a = rng.next_unit();
                    double direct = 0.0;
                    for (int idx = 1; idx <= mc.support_length(); ++idx) {
                        direct += mc.at(idx) * james::eval_f(file.artifact, idx, a);
                    }
                    worst = std::max(worst, std::abs(james::eval_combination(sys, lambda, {a, b}) - direct));
                }
            }
        }
        const bool pass = worst <= 1e-12;
        all_pass = all_pass && pass;
        checks.push_back(james::report_envelope("midline_identity", pass, json{{"max_deviation", worst}},
                                                seed, file.hash));
    }

    // 4. stabilization at random points of U
    {
        james::Rng rng(james::derive_seed(seed, james::streams::stabilization_points));
        int failures = 0;
        for (int i = 0; i < 1000; ++i) {
            james::SquarePoint u{rng.next_unit(), 0.0};
            do {
                u.b = rng.next_unit();
            } while (u.b == 0.0);
            if (!james::check_stabilization(sys, u).pass) ++failures;
        }
        const bool pass = failures == 0;
        all_pass = all_pass && pass;
        checks.push_back(james::report_envelope("stabilization", pass,
                                                json{{"points", 1000}, {"failures", failures}}, seed,
                                                file.hash));
    }

    // 5. grid cross-checks
    {
        james::Rng rng(james::derive_seed(seed, james::streams::grid_checks));
        std::vector<james::FiniteSequence> lambdas{james::FiniteSequence::ones(N)};
        for (int i = 0; i < 5; ++i) lambdas.push_back(james::random_nonzero_sequence(rng, N));
        int failures = 0;
        json details = json::array();
        for (const auto& lambda : lambdas) {
            const auto rep = james::grid_cross_check(sys, lambda, config.grid_resolution);
            if (!rep.pass) ++failures;
            details.push_back(rep);
        }
        const bool pass = failures == 0;
        all_pass = all_pass && pass;
        checks.push_back(james::report_envelope(
            "grid_cross_check", pass,
            json{{"resolution", config.grid_resolution}, {"failures", failures}, {"cases", details}},
            seed, file.hash));
    }

    json doc{{"command", "verify"}, {"config", embedded_config(config)}, {"seed", seed},
             {"artifact_hash", file.hash}, {"checks", checks}, {"pass", all_pass}};
    const auto path = out_path(config, "verify_report.json");
    james::write_text_file(path, james::canonical_dump(doc));
    std::printf("verify: %s (report: %s)\n", all_pass ? "pass" : "FAIL", path.c_str());
    for (const auto& c : checks) {
        std::printf("  %-18s %s\n", c.at("check").get<std::string>().c_str(),
                    c.at("pass").get<bool>() ? "pass" : "FAIL");
    }
    return all_pass ? 0 : 1;
}

// ---- plotdata ----

int cmd_plotdata(const std::string& artifact_path, int n, const Flags& flags) {
    const auto file = james::load_artifact(artifact_path);
    james::RunConfig config = file.config;
    if (flags.grid) config.grid_resolution = *flags.grid;
    if (flags.out) config.output_dir = *flags.out;
    config.validate();
    if (n < 1 || n > file.artifact.N) {
        throw james::DataError("plotdata: n must lie in [1, N]");
    }
    const james::CounterexampleSystem sys(file.artifact);
    const auto lambda = james::FiniteSequence::ones(n);
    const int res = config.grid_resolution;

    std::string csv = "kind,label,a,b,value\n";
    char line[160];
    auto emit = [&](const char* kind, const std::string& label, double a, double b, double v) {
        std::snprintf(line, sizeof line, "%s,%s,%.17g,%.17g,%.17g\n", kind, label.c_str(), a, b, v);
        csv += line;
    };
    for (int j = 0; j < res; ++j) {
        const double b = static_cast<double>(j) / static_cast<double>(res - 1);
        for (int i = 0; i < res; ++i) {
            const double a = static_cast<double>(i) / static_cast<double>(res - 1);
            emit("grid", "K", a, b, james::eval_combination(sys, lambda, {a, b}));
        }
    }
    const auto breakpoints = james::line_breakpoints(file.artifact);
    for (double a : breakpoints) {
        emit("line", "L", a, 0.0, james::eval_combination(sys, lambda, {a, 0.0}));
    }
    for (int k = 1; k <= file.artifact.N; ++k) {
        const double b = std::ldexp(1.0, -k);
        const std::string label = "L_" + std::to_string(k);
        for (double a : breakpoints) {
            emit("line", label, a, b, james::eval_combination(sys, lambda, {a, b}));
        }
    }

    const auto path = out_path(config, "plot_s" + std::to_string(n) + ".csv");
    james::write_text_file(path, csv);
    std::printf("plotdata: wrote %s (%d x %d grid + line values)\n", path.c_str(), res, res);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact James-norm computations, tent-function embeddings, and the square counterexample system"};
    app.require_subcommand(1);

    std::string jnorm_vector;
    std::string jnorm_variant = "differences_only";
    auto* jnorm = app.add_subcommand("jnorm", "exact James norm of a vector (JSON array or file)");
    jnorm->add_option("vector", jnorm_vector, "JSON array, e.g. \"[1,0.5,0.25]\", or a file containing one")
        ->required();
    jnorm->add_option("variant", jnorm_variant, "differences_only | leading_term (aliases: diff, lead)");

    Flags fuzz_flags;
    auto* fuzz = app.add_subcommand("fuzz", "run the property-fuzzing suites");
    add_common_flags(fuzz, fuzz_flags);

    Flags build_flags;
    auto* build = app.add_subcommand("build", "build and save an embedding artifact");
    add_common_flags(build, build_flags);

    Flags verify_flags;
    std::string verify_artifact;
    auto* verify = app.add_subcommand("verify", "verify every estimate against a saved artifact");
    verify->add_option("artifact", verify_artifact, "artifact JSON file")->required();
    add_common_flags(verify, verify_flags);

    Flags plot_flags;
    std::string plot_artifact;
    int plot_n = 1;
    auto* plot = app.add_subcommand("plotdata", "emit CSV samples of the partial sum S_n");
    plot->add_option("artifact", plot_artifact, "artifact JSON file")->required();
    plot->add_option("--n", plot_n, "partial-sum index")->required();
    plot->add_option("--config", plot_flags.config_path, "JSON config file (unused fields ignored)");
    plot->add_option("--grid", plot_flags.grid, "plot grid resolution");
    plot->add_option("--out", plot_flags.out, "output directory");

    try {
        app.parse(argc, argv);
        if (jnorm->parsed()) return cmd_jnorm(jnorm_vector, jnorm_variant);
        if (fuzz->parsed()) return cmd_fuzz(resolve_config(fuzz_flags));
        if (build->parsed()) return cmd_build(resolve_config(build_flags));
        if (verify->parsed()) return cmd_verify(verify_artifact, verify_flags);
        if (plot->parsed()) return cmd_plotdata(plot_artifact, plot_n, plot_flags);
        return 2;
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    } catch (const james::DataError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
