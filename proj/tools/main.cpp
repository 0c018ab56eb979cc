#include <filesystem>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "polclone/config.hpp"
#include "polclone/experiment.hpp"
#include "polclone/report.hpp"

namespace {

using nlohmann::json;
using namespace polclone;

PolarizationQubit parse_qubit_flag(const std::string& text) {
    std::vector<double> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) parts.push_back(std::stod(item));
    if (parts.size() != 4) {
        throw std::invalid_argument("qubit: expected four comma-separated numbers "
                                    "(c_h real, c_h imag, c_v real, c_v imag)");
    }
    return PolarizationQubit(cplx(parts[0], parts[1]), cplx(parts[2], parts[3]));
}

std::string join_path(const std::string& dir, const std::string& name) {
    return (std::filesystem::path(dir) / name).string();
}

void emit(const std::string& out_dir, const std::string& command, const json& resolved_config,
          const std::vector<std::pair<std::string, std::string>>& files) {
    std::filesystem::create_directories(out_dir);
    std::vector<std::string> names;
    for (const auto& [name, content] : files) {
        write_text_file(join_path(out_dir, name), content);
        names.push_back(name);
    }
    json manifest = make_manifest(command, resolved_config, names);
    write_text_file(join_path(out_dir, "manifest.json"), manifest.dump(2) + "\n");
}

struct AnalyticArgs {
    double reflectivity = 0.0;
    std::string qubit_text = "1,0,0,0";
    int n_max = 5;
    int cutoff = 12;
};

json analytic_config_json(double reflectivity, const PolarizationQubit& q, int n_max,
                          int cutoff) {
    json j;
    j["schema_version"] = kConfigSchemaVersion;
    j["command"] = "analytic";
    j["reflectivity"] = reflectivity;
    j["qubit"] = {{"c_h", {q.c_h.real(), q.c_h.imag()}},
                  {"c_v", {q.c_v.real(), q.c_v.imag()}}};
    j["report_n_max"] = n_max;
    j["cutoff"] = cutoff;
    return j;
}

int run_analytic(const AnalyticArgs& args, const std::string& config_path,
                 const std::string& out_dir) {
    double reflectivity = args.reflectivity;
    int n_max = args.n_max;
    int cutoff = args.cutoff;
    PolarizationQubit qubit = PolarizationQubit::horizontal();
    if (!config_path.empty()) {
        json j = json::parse(read_text_file(config_path));
        if (j.contains("config") && j.contains("tool")) j = j["config"];
        reflectivity = j.at("reflectivity").get<double>();
        n_max = j.at("report_n_max").get<int>();
        cutoff = j.at("cutoff").get<int>();
        qubit = PolarizationQubit(cplx(j.at("qubit").at("c_h")[0].get<double>(),
                                       j.at("qubit").at("c_h")[1].get<double>()),
                                  cplx(j.at("qubit").at("c_v")[0].get<double>(),
                                       j.at("qubit").at("c_v")[1].get<double>()));
    } else {
        qubit = parse_qubit_flag(args.qubit_text);
    }
    if (n_max < 1) throw std::invalid_argument("n-max: empty N range");
    if (cutoff < n_max + 2) throw std::invalid_argument("cutoff: must be >= n-max + 2");

    CloneReport report = analytic_clone_report(reflectivity, qubit, n_max);
    emit(out_dir, "analytic", analytic_config_json(reflectivity, qubit, n_max, cutoff),
         {{"report.txt", report_to_text(report)}, {"table.tsv", report_to_table(report)}});
    return 0;
}

int run_simulate(const std::string& config_path, const std::string& out_dir,
                 const CliOverrides& overrides) {
    ExperimentConfig config = load_experiment_config(config_path, overrides);
    if (!config.sweep_gains.empty() || !config.sweep_reflectivities.empty()) {
        throw std::invalid_argument("sweep: present in config; use the sweep command");
    }
    AccumulatedOutput out = accumulate_output(config);
    emit(out_dir, "simulate", experiment_config_to_json(config),
         {{"report.txt", report_to_text(out.report)},
          {"table.tsv", report_to_table(out.report)}});
    return 0;
}

int run_sweep(const std::string& config_path, const std::string& out_dir,
              const CliOverrides& overrides) {
    ExperimentConfig config = load_experiment_config(config_path, overrides);
    const bool mc = config.integrator.kind == IntegratorSpec::Kind::MonteCarlo;
    std::ostringstream table;
    std::ostringstream summary;
    summary << "schema_version = 1\n";

    if (!config.sweep_gains.empty()) {
        SweepResult result = gain_sweep(config);
        table << "g\tN\tfidelity";
        if (mc) table << "\tfidelity_stderr";
        table << "\n";
        for (size_t gi = 0; gi < result.gains.size(); ++gi) {
            for (int n = 1; n <= result.n_max; ++n) {
                table << format_double(result.gains[gi]) << "\t" << n << "\t"
                      << format_double(result.fidelities[gi][n - 1]);
                if (mc) table << "\t" << format_double(result.fidelity_stderrs[gi][n - 1]);
                table << "\n";
            }
        }
        summary << "sweep = gains\n";
        summary << "reflectivity = " << format_double(config.reflectivity) << "\n";
        for (int n = 1; n <= result.n_max; ++n) {
            summary << "argmax_gain.N" << n << " = " << format_double(result.argmax_gain[n - 1])
                    << "\n";
        }
    } else if (!config.sweep_reflectivities.empty()) {
        std::vector<CloneReport> reports = reproduce_paper_tables(config);
        table << "R\tN\tfidelity";
        if (mc) table << "\tfidelity_stderr";
        table << "\n";
        for (const CloneReport& r : reports) {
            for (const SectorStats& s : r.sectors) {
                table << format_double(r.reflectivity) << "\t" << s.n_photons << "\t"
                      << format_double(s.fidelity);
                if (mc) table << "\t" << format_double(s.fidelity_stderr);
                table << "\n";
            }
        }
        summary << "sweep = reflectivities\n";
        summary << "points = " << reports.size() << "\n";
    } else {
        throw std::invalid_argument("sweep: config must contain a sweep section");
    }

    emit(out_dir, "sweep", experiment_config_to_json(config),
         {{"report.txt", summary.str()}, {"sweep.tsv", table.str()}});
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simulator and analytics for measurement-plus-feedback cloning of "
                 "single-photon polarization"};
    app.require_subcommand(1);

    AnalyticArgs analytic_args;
    std::string config_path;
    std::string out_dir = ".";
    CliOverrides overrides;
    std::uint64_t seed_flag = 0;
    int workers_flag = 0;

    CLI::App* analytic = app.add_subcommand("analytic", "Closed-form clone statistics table");
    analytic->add_option("--reflectivity,-R", analytic_args.reflectivity,
                         "Beam-splitter reflectivity in [0, 1)");
    analytic->add_option("--qubit", analytic_args.qubit_text,
                         "Input qubit as c_h_re,c_h_im,c_v_re,c_v_im");
    analytic->add_option("--n-max", analytic_args.n_max, "Largest reported photon number");
    analytic->add_option("--cutoff", analytic_args.cutoff, "Fock-space cutoff");
    std::string analytic_config;
    analytic->add_option("--config", analytic_config, "Config or manifest file (replay)");
    analytic->add_option("--out", out_dir, "Output directory")->required();

    CLI::App* simulate = app.add_subcommand("simulate", "Integrate the measurement-feedback "
                                                        "pipeline and report clone statistics");
    simulate->add_option("--config", config_path, "Config or manifest file")->required();
    simulate->add_option("--out", out_dir, "Output directory")->required();
    CLI::Option* sim_seed = simulate->add_option("--seed", seed_flag, "Override the RNG seed");
    CLI::Option* sim_workers =
        simulate->add_option("--workers", workers_flag, "Override the worker count");

    CLI::App* sweep = app.add_subcommand("sweep", "Fidelity across a gain or reflectivity list");
    sweep->add_option("--config", config_path, "Config or manifest file")->required();
    sweep->add_option("--out", out_dir, "Output directory")->required();
    CLI::Option* sw_seed = sweep->add_option("--seed", seed_flag, "Override the RNG seed");
    CLI::Option* sw_workers =
        sweep->add_option("--workers", workers_flag, "Override the worker count");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(analytic)) {
            return run_analytic(analytic_args, analytic_config, out_dir);
        }
        if (app.got_subcommand(simulate)) {
            if (sim_seed->count() > 0) overrides.seed = seed_flag;
            if (sim_workers->count() > 0) overrides.workers = workers_flag;
            return run_simulate(config_path, out_dir, overrides);
        }
        if (app.got_subcommand(sweep)) {
            if (sw_seed->count() > 0) overrides.seed = seed_flag;
            if (sw_workers->count() > 0) overrides.workers = workers_flag;
            return run_sweep(config_path, out_dir, overrides);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
