#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include <json.hpp>

#include "polclone/config.hpp"

using namespace polclone;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag) {
        path = fs::temp_directory_path() / ("polclone_cli_" + tag);
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string str(const std::string& name = "") const {
        return name.empty() ? path.string() : (path / name).string();
    }
};

int run_cli(const std::string& args) {
    std::string cmd = std::string(POLCLONE_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

struct TableRow {
    int n = 0;
    double p_n = 0.0;
    int n_correct = 0;
    double p_n_given = 0.0;
    double fidelity = 0.0;
};

std::vector<TableRow> parse_table(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::string header;
    std::getline(in, header);
    std::vector<TableRow> rows;
    TableRow row;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ss(line);
        ss >> row.n >> row.p_n >> row.n_correct >> row.p_n_given >> row.fidelity;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace

TEST_CASE("analytic command emits the closed-form table") {
    TempDir dir("analytic");
    int rc = run_cli("analytic --reflectivity 0.5 --n-max 3 --out " + dir.str());
    REQUIRE(rc == 0);

    auto rows = parse_table(dir.str("table.tsv"));
    REQUIRE(rows.size() == 6);  // 1 + 2 + 3 rows
    bool found = false;
    for (const TableRow& row : rows) {
        if (row.n == 2 && row.n_correct == 2) {
            found = true;
            CHECK(row.p_n == doctest::Approx(0.1875).epsilon(1e-15));
            CHECK(row.fidelity == doctest::Approx(5.0 / 6.0).epsilon(1e-12));
        }
    }
    CHECK(found);
    CHECK(fs::exists(dir.str("manifest.json")));
    CHECK(fs::exists(dir.str("report.txt")));
}

TEST_CASE("analytic at R = 0 emits the single trivial row") {
    TempDir dir("analytic_r0");
    REQUIRE(run_cli("analytic --reflectivity 0 --n-max 3 --out " + dir.str()) == 0);
    auto rows = parse_table(dir.str("table.tsv"));
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].n == 1);
    CHECK(rows[0].fidelity == 1.0);
}

TEST_CASE("malformed qubit exits with the validation code") {
    TempDir dir("badqubit");
    CHECK(run_cli("analytic --reflectivity 0.5 --qubit 1,0,1,0 --out " + dir.str()) == 2);
}

TEST_CASE("simulate command runs quadrature configs and replays manifests") {
    TempDir dir("simulate");
    nlohmann::json config = {
        {"schema_version", 1},
        {"reflectivity", 0.5},
        {"qubit", {{"c_h", {1.0, 0.0}}, {"c_v", {0.0, 0.0}}}},
        {"cutoff", 8},
        {"report_n_max", 2},
        {"gain", "optimal"},
        {"integrator", {{"kind", "gauss-hermite"}, {"points", 12}}}};
    write_text_file(dir.str("config.json"), config.dump(2));

    std::string out1 = dir.str("run1");
    REQUIRE(run_cli("simulate --config " + dir.str("config.json") + " --out " + out1) == 0);

    auto rows = parse_table(out1 + "/table.tsv");
    bool found = false;
    for (const TableRow& row : rows) {
        if (row.n == 2) {
            found = true;
            CHECK(row.fidelity == doctest::Approx(5.0 / 6.0).epsilon(1e-6));
        }
    }
    CHECK(found);

    // byte-identical repeat
    std::string out2 = dir.str("run2");
    REQUIRE(run_cli("simulate --config " + dir.str("config.json") + " --out " + out2) == 0);
    CHECK(read_text_file(out1 + "/report.txt") == read_text_file(out2 + "/report.txt"));
    CHECK(read_text_file(out1 + "/table.tsv") == read_text_file(out2 + "/table.tsv"));

    // byte-identical replay from the manifest
    std::string out3 = dir.str("run3");
    REQUIRE(run_cli("simulate --config " + out1 + "/manifest.json --out " + out3) == 0);
    CHECK(read_text_file(out1 + "/report.txt") == read_text_file(out3 + "/report.txt"));
    CHECK(read_text_file(out1 + "/table.tsv") == read_text_file(out3 + "/table.tsv"));
}

TEST_CASE("simulate rejects a cutoff without headroom") {
    TempDir dir("headroom");
    nlohmann::json config = {
        {"schema_version", 1},
        {"reflectivity", 0.5},
        {"cutoff", 5},
        {"report_n_max", 4},
        {"integrator", {{"kind", "gauss-hermite"}, {"points", 8}}}};
    write_text_file(dir.str("config.json"), config.dump(2));
    CHECK(run_cli("simulate --config " + dir.str("config.json") + " --out " + dir.str("out")) ==
          2);
}

TEST_CASE("sweep command emits rows and the argmax summary") {
    TempDir dir("sweep");
    nlohmann::json config = {
        {"schema_version", 1},
        {"reflectivity", 0.5},
        {"cutoff", 6},
        {"report_n_max", 2},
        {"integrator", {{"kind", "gauss-hermite"}, {"points", 10}}},
        {"sweep", {{"gains", {1.2, std::sqrt(2.0), 1.6}}}}};
    write_text_file(dir.str("config.json"), config.dump(2));
    std::string out = dir.str("out");
    REQUIRE(run_cli("sweep --config " + dir.str("config.json") + " --out " + out) == 0);

    std::string report = read_text_file(out + "/report.txt");
    CHECK(report.find("argmax_gain.N2 = " + format_double(std::sqrt(2.0))) !=
          std::string::npos);
    std::string table = read_text_file(out + "/sweep.tsv");
    CHECK(table.rfind("g\tN\tfidelity\n", 0) == 0);
    // header + 3 gains x 2 sectors
    CHECK(std::count(table.begin(), table.end(), '\n') == 7);
}

TEST_CASE("single-element sweep emits one row per sector") {
    TempDir dir("sweep1");
    nlohmann::json config = {
        {"schema_version", 1},
        {"reflectivity", 0.5},
        {"cutoff", 5},
        {"report_n_max", 1},
        {"integrator", {{"kind", "gauss-hermite"}, {"points", 8}}},
        {"sweep", {{"gains", {1.5}}}}};
    write_text_file(dir.str("config.json"), config.dump(2));
    std::string out = dir.str("out");
    REQUIRE(run_cli("sweep --config " + dir.str("config.json") + " --out " + out) == 0);
    std::string table = read_text_file(out + "/sweep.tsv");
    CHECK(std::count(table.begin(), table.end(), '\n') == 2);
}
