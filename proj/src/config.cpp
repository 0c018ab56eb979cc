#include "polclone/config.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

namespace polclone {

namespace {

using nlohmann::json;

/// Collects schema violations as "field.path: message" lines.
class FieldErrors {
public:
    void add(const std::string& path, const std::string& message) {
        errors_.push_back(path + ": " + message);
    }
    bool empty() const { return errors_.empty(); }
    [[noreturn]] void raise() const {
        std::ostringstream msg;
        msg << "config schema violations:";
        for (const auto& e : errors_) msg << "\n  " << e;
        throw std::invalid_argument(msg.str());
    }

private:
    std::vector<std::string> errors_;
};

double require_number(const json& j, const std::string& path, FieldErrors& errors,
                      double fallback = 0.0) {
    if (!j.is_number()) {
        errors.add(path, "expected a number");
        return fallback;
    }
    return j.get<double>();
}

int require_int(const json& j, const std::string& path, FieldErrors& errors, int fallback = 0) {
    if (!j.is_number_integer()) {
        errors.add(path, "expected an integer");
        return fallback;
    }
    return j.get<int>();
}

cplx require_complex(const json& j, const std::string& path, FieldErrors& errors) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        errors.add(path, "expected [re, im]");
        return {0.0, 0.0};
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

ExperimentConfig parse_experiment_config(const json& j, const CliOverrides& overrides) {
    FieldErrors errors;
    ExperimentConfig config;

    if (!j.is_object()) {
        errors.add("(root)", "expected a JSON object");
        errors.raise();
    }
    if (!j.contains("schema_version")) {
        errors.add("schema_version", "missing");
    } else if (!j["schema_version"].is_number_integer() ||
               j["schema_version"].get<int>() != kConfigSchemaVersion) {
        errors.add("schema_version",
                   "unsupported (expected " + std::to_string(kConfigSchemaVersion) + ")");
    }

    if (j.contains("reflectivity")) {
        config.reflectivity = require_number(j["reflectivity"], "reflectivity", errors, 0.5);
    } else {
        errors.add("reflectivity", "missing");
    }

    if (j.contains("qubit")) {
        const json& q = j["qubit"];
        if (!q.is_object() || !q.contains("c_h") || !q.contains("c_v")) {
            errors.add("qubit", "expected object with c_h and c_v");
        } else {
            cplx ch = require_complex(q["c_h"], "qubit.c_h", errors);
            cplx cv = require_complex(q["c_v"], "qubit.c_v", errors);
            if (errors.empty()) {
                if (std::abs(std::norm(ch) + std::norm(cv) - 1.0) > 1e-12) {
                    errors.add("qubit", "amplitudes must be normalized (|c_h|^2 + |c_v|^2 = 1)");
                } else {
                    config.qubit = PolarizationQubit(ch, cv);
                }
            }
        }
    }

    if (j.contains("cutoff")) {
        config.cutoff = require_int(j["cutoff"], "cutoff", errors, 12);
    }
    if (j.contains("report_n_max")) {
        config.report_n_max = require_int(j["report_n_max"], "report_n_max", errors, 5);
    }

    if (j.contains("gain")) {
        const json& g = j["gain"];
        if (g.is_string() && g.get<std::string>() == "optimal") {
            config.optimal_gain = true;
        } else if (g.is_object() && g.contains("f")) {
            config.optimal_gain = false;
            config.feedback = require_number(g["f"], "gain.f", errors);
        } else {
            errors.add("gain", "expected \"optimal\" or {\"f\": value}");
        }
    }

    if (j.contains("integrator")) {
        const json& it = j["integrator"];
        if (!it.is_object() || !it.contains("kind") || !it["kind"].is_string()) {
            errors.add("integrator.kind", "expected \"monte-carlo\" or \"gauss-hermite\"");
        } else {
            const std::string kind = it["kind"].get<std::string>();
            if (kind == "monte-carlo") {
                config.integrator.kind = IntegratorSpec::Kind::MonteCarlo;
                if (it.contains("samples") && it["samples"].is_number_unsigned()) {
                    config.integrator.samples = it["samples"].get<std::uint64_t>();
                } else {
                    errors.add("integrator.samples", "expected a nonnegative integer");
                }
                if (it.contains("seed")) {
                    if (it["seed"].is_number_unsigned()) {
                        config.integrator.seed = it["seed"].get<std::uint64_t>();
                    } else {
                        errors.add("integrator.seed", "expected a nonnegative integer");
                    }
                }
                if (it.contains("batches")) {
                    config.integrator.batches =
                        require_int(it["batches"], "integrator.batches", errors, 20);
                }
            } else if (kind == "gauss-hermite") {
                config.integrator.kind = IntegratorSpec::Kind::GaussHermite;
                if (it.contains("points")) {
                    config.integrator.points =
                        require_int(it["points"], "integrator.points", errors, 0);
                }
            } else {
                errors.add("integrator.kind", "unknown kind \"" + kind + "\"");
            }
            if (it.contains("workers")) {
                config.integrator.workers =
                    require_int(it["workers"], "integrator.workers", errors, 1);
            }
        }
    } else {
        errors.add("integrator", "missing");
    }

    if (j.contains("sweep")) {
        const json& sw = j["sweep"];
        if (!sw.is_object() || (sw.contains("gains") == sw.contains("reflectivities"))) {
            errors.add("sweep", "expected exactly one of gains or reflectivities");
        } else {
            const bool gains = sw.contains("gains");
            const json& list = gains ? sw["gains"] : sw["reflectivities"];
            const std::string path = gains ? "sweep.gains" : "sweep.reflectivities";
            if (!list.is_array() || list.empty()) {
                errors.add(path, "expected a nonempty array of numbers");
            } else {
                std::vector<double> values;
                for (size_t i = 0; i < list.size(); ++i) {
                    values.push_back(
                        require_number(list[i], path + "[" + std::to_string(i) + "]", errors));
                }
                if (gains) {
                    config.sweep_gains = std::move(values);
                } else {
                    config.sweep_reflectivities = std::move(values);
                }
            }
        }
    }

    if (overrides.seed) config.integrator.seed = *overrides.seed;
    if (overrides.workers) config.integrator.workers = *overrides.workers;

    if (!errors.empty()) errors.raise();
    config.validate();
    return config;
}

json experiment_config_to_json(const ExperimentConfig& config) {
    json j;
    j["schema_version"] = kConfigSchemaVersion;
    j["reflectivity"] = config.reflectivity;
    j["qubit"] = {{"c_h", {config.qubit.c_h.real(), config.qubit.c_h.imag()}},
                  {"c_v", {config.qubit.c_v.real(), config.qubit.c_v.imag()}}};
    j["cutoff"] = config.cutoff;
    j["report_n_max"] = config.report_n_max;
    if (config.optimal_gain) {
        j["gain"] = "optimal";
    } else {
        j["gain"] = {{"f", config.feedback}};
    }
    json it;
    if (config.integrator.kind == IntegratorSpec::Kind::MonteCarlo) {
        it["kind"] = "monte-carlo";
        it["samples"] = config.integrator.samples;
        it["seed"] = config.integrator.seed;
        it["batches"] = config.integrator.batches;
    } else {
        it["kind"] = "gauss-hermite";
        it["points"] = config.integrator.points;
    }
    it["workers"] = config.integrator.workers;
    j["integrator"] = std::move(it);
    if (!config.sweep_gains.empty()) {
        j["sweep"] = {{"gains", config.sweep_gains}};
    } else if (!config.sweep_reflectivities.empty()) {
        j["sweep"] = {{"reflectivities", config.sweep_reflectivities}};
    }
    return j;
}

ExperimentConfig load_experiment_config(const std::string& path, const CliOverrides& overrides) {
    json j = json::parse(read_text_file(path));
    if (j.is_object() && j.contains("config") && j.contains("tool")) {
        // run manifest: replay the embedded resolved config
        j = j["config"];
    }
    return parse_experiment_config(j, overrides);
}

json make_manifest(const std::string& command, const json& resolved_config,
                   const std::vector<std::string>& output_files) {
    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    char stamp[32];
    std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&tt));

    json m;
    m["schema_version"] = kConfigSchemaVersion;
    m["tool"] = kToolName;
    m["tool_version"] = kToolVersion;
    m["created_utc"] = stamp;
    m["command"] = command;
    m["config"] = resolved_config;
    m["outputs"] = output_files;
    return m;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open for writing: " + path);
    }
    out << content;
    if (!out) {
        throw std::runtime_error("write failed: " + path);
    }
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open for reading: " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace polclone
