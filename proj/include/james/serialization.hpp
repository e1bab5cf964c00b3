#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "james/config.hpp"
#include "james/counterexample.hpp"
#include "james/embedding.hpp"
#include "james/functional.hpp"
#include "james/fuzz.hpp"
#include "james/hash.hpp"
#include "james/norm.hpp"
#include "james/sequence.hpp"

namespace james {

/// Unusable input data (missing file, malformed JSON, hash mismatch);
/// maps to CLI exit code 2.
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---- core types ----

inline void to_json(nlohmann::json& j, const FiniteSequence& x) { j = x.coeffs(); }

inline void from_json(const nlohmann::json& j, FiniteSequence& x) {
    x = FiniteSequence(j.get<std::vector<double>>());
}

inline void to_json(nlohmann::json& j, const IndexPattern& p) { j = p.indices(); }

inline void from_json(const nlohmann::json& j, IndexPattern& p) {
    p = IndexPattern(j.get<std::vector<int>>());
}

inline void to_json(nlohmann::json& j, const JamesNormResult& r) {
    j = nlohmann::json{{"value", r.value}, {"pattern", r.optimal_pattern}, {"variant", to_string(r.variant)}};
}

inline void to_json(nlohmann::json& j, const PatternFunctional& phi) {
    j = nlohmann::json{{"pattern", phi.pattern}, {"coefficients", phi.coefficients}};
}

inline void from_json(const nlohmann::json& j, PatternFunctional& phi) {
    phi.pattern = j.at("pattern").get<IndexPattern>();
    phi.coefficients = j.at("coefficients").get<std::vector<double>>();
    validate(phi);
}

// ---- embedding ----

inline void to_json(nlohmann::json& j, const PeakInterval& iv) {
    j = nlohmann::json{{"center", iv.center}, {"radius", iv.radius}};
}

inline void from_json(const nlohmann::json& j, PeakInterval& iv) {
    iv.center = j.at("center").get<double>();
    iv.radius = j.at("radius").get<double>();
}

inline void to_json(nlohmann::json& j, const AuditEntry& e) {
    j = nlohmann::json{{"vector", e.vector}, {"probe", e.probe}, {"ratio", e.ratio}};
}

inline void from_json(const nlohmann::json& j, AuditEntry& e) {
    e.vector = j.at("vector").get<FiniteSequence>();
    e.probe = j.at("probe").get<bool>();
    e.ratio = j.at("ratio").get<double>();
}

inline void to_json(nlohmann::json& j, const EmbeddingArtifact& art) {
    j = nlohmann::json{{"N", art.N},
                       {"mode", to_string(art.mode)},
                       {"M", art.M},
                       {"functionals", art.functionals},
                       {"intervals", art.intervals},
                       {"audit", art.audit}};
    if (art.mode == EmbeddingMode::net) j["delta"] = art.delta;
}

inline void from_json(const nlohmann::json& j, EmbeddingArtifact& art) {
    art = EmbeddingArtifact{};
    art.N = j.at("N").get<int>();
    art.mode = mode_from_string(j.at("mode").get<std::string>());
    art.M = j.at("M").get<double>();
    art.delta = j.value("delta", 0.0);
    art.functionals = j.at("functionals").get<std::vector<PatternFunctional>>();
    art.intervals = j.at("intervals").get<std::vector<PeakInterval>>();
    art.audit = j.value("audit", std::vector<AuditEntry>{});
    art.finalize();
}

// ---- counterexample reports ----

inline void to_json(nlohmann::json& j, const Region& r) {
    j = nlohmann::json{{"tag", to_string(r.tag)}};
    if (r.n > 0) j["n"] = r.n;
}

inline void from_json(const nlohmann::json& j, Region& r) {
    r = Region(region_tag_from_string(j.at("tag").get<std::string>()), j.value("n", 0));
}

inline void to_json(nlohmann::json& j, const SquarePoint& pt) {
    j = nlohmann::json{{"a", pt.a}, {"b", pt.b}};
}

inline void from_json(const nlohmann::json& j, SquarePoint& pt) {
    pt.a = j.at("a").get<double>();
    pt.b = j.at("b").get<double>();
}

inline void to_json(nlohmann::json& j, const SandwichReport& r) {
    j = nlohmann::json{{"lambda", r.lambda}, {"norm_j", r.norm_j}, {"lower", r.lower},
                       {"sup", r.sup},       {"upper", r.upper},   {"m_eff", r.m_eff},
                       {"m_source", r.m_source}, {"pass", r.pass}};
}

inline void to_json(nlohmann::json& j, const StabilizationCheck& r) {
    j = nlohmann::json{{"u", r.u},
                       {"index", r.index},
                       {"constant_after", r.constant_after},
                       {"nonzero_increments", r.nonzero_increments},
                       {"pass", r.pass}};
}

inline void to_json(nlohmann::json& j, const PartialSumsReport& r) {
    j = nlohmann::json{{"n_max", r.n_max},
                       {"m_eff", r.m_eff},
                       {"m_source", r.m_source},
                       {"partial_sup_norms", r.partial_sup_norms},
                       {"uniform_bound", r.uniform_bound},
                       {"pass_uniform", r.pass_uniform},
                       {"seed", r.seed},
                       {"sample_count", r.sample_count},
                       {"pass_stabilization", r.pass_stabilization},
                       {"min_noncauchy", r.min_noncauchy},
                       {"noncauchy_bound", r.noncauchy_bound},
                       {"pass_noncauchy", r.pass_noncauchy},
                       {"pass_weak_cauchy", r.pass_weak_cauchy},
                       {"pass", r.pass}};
}

inline void to_json(nlohmann::json& j, const GridCrossCheck& r) {
    j = nlohmann::json{{"grid_max", r.grid_max}, {"exact", r.exact}, {"slack", r.slack}, {"pass", r.pass}};
}

inline void to_json(nlohmann::json& j, const FuzzSuiteResult& r) {
    j = nlohmann::json{{"suite", r.suite},
                       {"trials", r.trials},
                       {"failures", r.failures},
                       {"pass", r.pass},
                       {"metrics", r.metrics},
                       {"counterexamples", r.counterexamples}};
}

inline void to_json(nlohmann::json& j, const FuzzReport& r) {
    j = nlohmann::json{{"seed", r.seed}, {"trials", r.trials}, {"suites", r.suites}, {"pass", r.pass}};
}

// ---- config ----

inline void to_json(nlohmann::json& j, const RunConfig& c) {
    j = nlohmann::json{{"n", c.n},
                       {"mode", to_string(c.mode)},
                       {"delta", c.delta},
                       {"probe_count", c.probe_count},
                       {"fuzz_trials", c.fuzz_trials},
                       {"seed", c.seed},
                       {"grid_resolution", c.grid_resolution},
                       {"output_dir", c.output_dir}};
}

inline void from_json(const nlohmann::json& j, RunConfig& c) {
    c = RunConfig{};
    c.n = j.value("n", c.n);
    if (j.contains("mode")) c.mode = mode_from_string(j.at("mode").get<std::string>());
    c.delta = j.value("delta", c.delta);
    c.probe_count = j.value("probe_count", c.probe_count);
    c.fuzz_trials = j.value("fuzz_trials", c.fuzz_trials);
    c.seed = j.value("seed", c.seed);
    c.grid_resolution = j.value("grid_resolution", c.grid_resolution);
    c.output_dir = j.value("output_dir", c.output_dir);
}

// ---- artifact files ----

inline std::string canonical_dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

/// Content hash of a JSON value in its canonical dump.
inline std::string content_hash(const nlohmann::json& j) { return hash_hex(canonical_dump(j)); }

inline constexpr const char* artifact_format = "james-embedding/1";
inline constexpr const char* descriptor_format = "james-counterexample/1";

/// On-disk artifact: the embedding plus the config that produced it, guarded
/// by a content hash over the embedding object.
struct ArtifactFile {
    EmbeddingArtifact artifact;
    RunConfig config;
    std::string hash;
};

inline nlohmann::json artifact_file_json(const EmbeddingArtifact& art, const RunConfig& config) {
    nlohmann::json inner = art;
    return nlohmann::json{{"format", artifact_format},
                          {"hash", content_hash(inner)},
                          {"config", config},
                          {"artifact", inner}};
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot open for writing: " + path);
    out << text;
    if (!out) throw DataError("write failed: " + path);
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return std::move(ss).str();
}

inline void save_artifact(const std::string& path, const EmbeddingArtifact& art, const RunConfig& config) {
    write_text_file(path, canonical_dump(artifact_file_json(art, config)));
}

/// Loads and validates an artifact file; throws DataError on parse failure
/// or when the stored hash does not match the embedded artifact object.
inline ArtifactFile load_artifact(const std::string& path) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_text_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw DataError("invalid artifact JSON in " + path + ": " + e.what());
    }
    ArtifactFile file;
    try {
        if (j.value("format", "") != artifact_format) {
            throw DataError("unexpected artifact format in " + path);
        }
        file.hash = j.at("hash").get<std::string>();
        file.config = j.at("config").get<RunConfig>();
        if (content_hash(j.at("artifact")) != file.hash) {
            throw DataError("artifact hash mismatch in " + path);
        }
        file.artifact = j.at("artifact").get<EmbeddingArtifact>();
    } catch (const nlohmann::json::exception& e) {
        throw DataError("malformed artifact file " + path + ": " + e.what());
    } catch (const std::invalid_argument& e) {
        throw DataError("inconsistent artifact data in " + path + ": " + e.what());
    }
    return file;
}

/// Verification-report envelope per the external contract:
/// {"check", "pass", "values", "seed", "artifact_hash"}.
inline nlohmann::json report_envelope(const std::string& check, bool pass, nlohmann::json values,
                                      std::uint64_t seed, const std::string& artifact_hash) {
    return nlohmann::json{{"check", check},
                          {"pass", pass},
                          {"values", std::move(values)},
                          {"seed", seed},
                          {"artifact_hash", artifact_hash}};
}

}  // namespace james
