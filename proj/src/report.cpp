#include "polclone/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace polclone {

std::string format_double(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

std::string Provenance::label() const {
    switch (kind) {
        case Kind::Analytic:
            return "analytic";
        case Kind::MonteCarlo:
            return "monte-carlo(samples=" + std::to_string(samples) +
                   ",seed=" + std::to_string(seed) + ",workers=" + std::to_string(workers) +
                   ",batches=" + std::to_string(batches) + ")";
        case Kind::Quadrature:
            return "quadrature(points=" + std::to_string(points) + ")";
    }
    return "unknown";
}

std::string report_to_text(const CloneReport& report) {
    std::ostringstream out;
    const bool mc = report.provenance.kind == Provenance::Kind::MonteCarlo;
    out << "schema_version = 1\n";
    out << "provenance = " << report.provenance.label() << "\n";
    out << "reflectivity = " << format_double(report.reflectivity) << "\n";
    out << "feedback_factor = " << format_double(report.feedback) << "\n";
    out << "gain = " << format_double(report.gain) << "\n";
    out << "qubit.c_h = " << format_double(report.qubit_c_h.real()) << " "
        << format_double(report.qubit_c_h.imag()) << "\n";
    out << "qubit.c_v = " << format_double(report.qubit_c_v.real()) << " "
        << format_double(report.qubit_c_v.imag()) << "\n";
    out << "truncation_leakage = " << format_double(report.truncation_leakage) << "\n";
    for (const SectorStats& s : report.sectors) {
        const std::string key = "sector." + std::to_string(s.n_photons);
        out << key << ".p = " << format_double(s.probability) << "\n";
        if (mc) out << key << ".p_stderr = " << format_double(s.probability_stderr) << "\n";
        out << key << ".fidelity = " << format_double(s.fidelity) << "\n";
        if (mc) out << key << ".fidelity_stderr = " << format_double(s.fidelity_stderr) << "\n";
        for (size_t k = 0; k < s.p_n_given_n.size(); ++k) {
            out << key << ".p_n." << (k + 1) << " = " << format_double(s.p_n_given_n[k]) << "\n";
        }
    }
    for (const std::string& w : report.warnings) {
        out << "warning = " << w << "\n";
    }
    return out.str();
}

std::string report_to_table(const CloneReport& report, char delimiter) {
    std::ostringstream out;
    const bool mc = report.provenance.kind == Provenance::Kind::MonteCarlo;
    out << "N" << delimiter << "p_N" << delimiter << "n" << delimiter << "p_n_given_N"
        << delimiter << "fidelity";
    if (mc) out << delimiter << "p_N_stderr" << delimiter << "fidelity_stderr";
    out << "\n";
    for (const SectorStats& s : report.sectors) {
        if (s.probability == 0.0) continue;
        for (size_t k = 0; k < s.p_n_given_n.size(); ++k) {
            out << s.n_photons << delimiter << format_double(s.probability) << delimiter
                << (k + 1) << delimiter << format_double(s.p_n_given_n[k]) << delimiter
                << format_double(s.fidelity);
            if (mc) {
                out << delimiter << format_double(s.probability_stderr) << delimiter
                    << format_double(s.fidelity_stderr);
            }
            out << "\n";
        }
    }
    return out.str();
}

}  // namespace polclone
