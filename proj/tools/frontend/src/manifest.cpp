#include "slalom/frontend/manifest.hpp"

#include <fstream>

#include "slalom/error.hpp"

namespace slalom::frontend {

const char* tool_version() noexcept { return SLALOM_VERSION; }

json field_summary(const FieldParams& fp) {
    json j = to_json(fp);
    j["lab"] = {{"Ip_eV", units::hartree_to_ev(fp.ip())},
                {"intensity_W_cm2", units::field_to_intensity(fp.field())},
                {"wavelength_um", units::omega_to_wavelength(fp.omega())},
                {"Up_eV", units::hartree_to_ev(fp.ponderomotive())}};
    j["conversions"] = {{"hartree_eV", units::hartree_ev},
                        {"atomic_intensity_W_cm2", units::atomic_intensity_w_cm2},
                        {"omega_times_um", units::omega_times_um}};
    return j;
}

json to_json(const RunManifest& m) {
    json lab = {{"target", m.lab.target},
                {"intensity_W_cm2", m.lab.intensity_w_cm2},
                {"wavelength_um", m.lab.wavelength_um}};
    if (m.lab.ip_ev) lab["ip_eV"] = *m.lab.ip_ev;
    if (m.lab.gamma) lab["gamma"] = *m.lab.gamma;
    if (m.lab.field_au) lab["F"] = *m.lab.field_au;
    if (m.lab.omega_au) lab["omega"] = *m.lab.omega_au;
    if (m.lab.charge) lab["Z"] = *m.lab.charge;
    return {{"tool", "slalom"},
            {"version", tool_version()},
            {"command", m.command},
            {"arguments", m.arguments},
            {"requested", lab},
            {"field", field_summary(m.field)},
            {"settings", m.settings},
            {"output", m.output},
            {"wall_seconds", m.wall_seconds},
            {"failures", {{"count", m.masked}, {"nodes", m.failures}}}};
}

std::string manifest_path_for(const std::string& output) { return output + ".manifest.json"; }

void write_text_file(const std::string& path, const std::string& contents) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw DomainError("cannot open '" + path + "' for writing");
    os << contents;
    if (!os) throw DomainError("failed writing '" + path + "'");
}

}  // namespace slalom::frontend
