#include "cellident/params.hpp"

#include "cellident/errors.hpp"

#include <cmath>
#include <fstream>
#include <json.hpp>

namespace cellident {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw DomainError("cell parameters: " + what);
}

bool close_rel(double a, double b, double tol) {
    double scale = std::max(std::abs(a), std::abs(b));
    if (scale == 0.0) return true;
    return std::abs(a - b) <= tol * scale;
}

} // namespace

void CellParameters::validate() const {
    const auto& g = geometry;
    require(g.area_neg > 0 && g.area_pos > 0 && g.area_sep > 0, "areas must be positive");
    require(g.thick_neg > 0 && g.thick_pos > 0 && g.thick_sep > 0, "thicknesses must be positive");

    const auto& m = materials;
    require(m.molar_mass_neg > 0 && m.molar_mass_pos > 0, "molar masses must be positive");
    require(m.density_neg > 0 && m.density_pos > 0, "densities must be positive");
    require(m.particle_radius_neg > 0 && m.particle_radius_pos > 0, "radii must be positive");
    require(m.reaction_rate_neg > 0 && m.reaction_rate_pos > 0, "reaction rates must be positive");
    require(close_rel(m.cs_max_neg, m.density_neg / m.molar_mass_neg, 1e-9),
            "cs_max_neg != density_neg/molar_mass_neg");
    require(close_rel(m.cs_max_pos, m.density_pos / m.molar_mass_pos, 1e-9),
            "cs_max_pos != density_pos/molar_mass_pos");
    require(m.film_conductivity_neg > 0 && m.film_conductivity_pos > 0,
            "film conductivities must be positive");
    require(m.base_solid_diffusivity_neg > 0 && m.base_solid_diffusivity_pos > 0,
            "solid diffusivities must be positive");
    require(m.transference_nominal > 0 && m.transference_nominal < 1,
            "transference number must be in (0,1)");
    require(m.temperature > 0, "temperature must be positive");
    require(m.elyte_conc_nominal > 0, "electrolyte concentration must be positive");
    require(m.ocp_neg.size() >= 20 && m.ocp_pos.size() >= 20, "ocp curves missing");
    for (double c : {200.0, m.elyte_conc_nominal, 3.0 * m.elyte_conc_nominal}) {
        require(m.base_ionic_conductivity(c) > 0, "ionic conductivity fit non-positive");
        require(m.base_electrolyte_diffusivity(c) > 0, "electrolyte diffusivity fit non-positive");
    }

    const auto& c = composition;
    for (double v : {c.eps_s_neg, c.eps_s_pos, c.eps_e_neg, c.eps_e_sep, c.eps_e_pos})
        require(v >= 0 && v <= 1, "volume fractions must lie in [0,1]");
    require(c.eps_s_neg + c.eps_e_neg <= 1.0, "negative electrode fractions exceed 1");
    require(c.eps_s_pos + c.eps_e_pos <= 1.0, "positive electrode fractions exceed 1");
    require(c.film_thickness_neg >= 0 && c.film_thickness_pos >= 0, "film thickness negative");
    if (c.film_thickness_neg > 0 || c.film_resistance_neg > 0)
        require(close_rel(c.film_resistance_neg,
                          c.film_thickness_neg / materials.film_conductivity_neg, 1e-9),
                "R_f^- != delta_f^-/sigma_f^-");
    if (c.film_thickness_pos > 0 || c.film_resistance_pos > 0)
        require(close_rel(c.film_resistance_pos,
                          c.film_thickness_pos / materials.film_conductivity_pos, 1e-9),
                "R_f^+ != delta_f^+/sigma_f^+");

    const auto& t = transport;
    require(t.contact_resistance >= 0, "contact resistance negative");
    require(t.solid_conductivity_neg >= 0 && t.solid_conductivity_pos >= 0,
            "solid conductivity negative");
    require(t.ds_factor_neg >= 0 && t.ds_factor_pos >= 0 && t.de_factor >= 0 &&
                t.kappa_factor >= 0,
            "accommodation factors must be non-negative");
    require(t.transference > 0 && t.transference < 1, "transference must be in (0,1)");

    require(ref_stoich_neg > 0 && ref_stoich_neg < 1 && ref_stoich_pos > 0 && ref_stoich_pos < 1,
            "reference stoichiometries must be in (0,1)");
    require(v_min > 0 && v_max > v_min, "voltage window invalid");
}

CellParameters default_cell() {
    CellParameters p;

    p.geometry.area_neg = 0.066;
    p.geometry.area_pos = 0.066;
    p.geometry.area_sep = 0.066;
    p.geometry.thick_neg = 80.0e-6;
    p.geometry.thick_pos = 70.64e-6;
    p.geometry.thick_sep = 25.0e-6;

    auto& m = p.materials;
    m.molar_mass_neg = 0.07206;   // C6
    m.molar_mass_pos = 0.097281;  // LiNi0.8Co0.1Mn0.1O2
    m.density_neg = 2260.0;
    m.density_pos = 4870.0;
    m.cs_max_neg = m.density_neg / m.molar_mass_neg;
    m.cs_max_pos = m.density_pos / m.molar_mass_pos;
    m.particle_radius_neg = 5.5e-6;
    m.particle_radius_pos = 3.8e-6;
    m.reaction_rate_neg = 4.05e-6;
    m.reaction_rate_pos = 3.47e-6;
    m.film_conductivity_neg = 1.54e-5;
    m.film_conductivity_pos = 1.52e-5;
    m.base_solid_diffusivity_neg = 3.0e-13;
    m.base_solid_diffusivity_pos = 2.5e-13;
    m.base_electrolyte_diffusivity = {3.0e-10, 1.406, 2.9e-4, 0.03};
    m.base_ionic_conductivity = {0.0184235, -2.193274e-6};
    m.transference_nominal = 0.38;
    m.temperature = 298.15;
    m.elyte_conc_nominal = 1400.0;
    m.ocp_neg = default_ocp_graphite();
    m.ocp_pos = default_ocp_ncm811();

    auto& c = p.composition;
    c.eps_s_neg = 0.665;
    c.eps_s_pos = 0.519;
    c.eps_e_neg = 0.2827;
    c.eps_e_sep = 0.40;
    c.eps_e_pos = 0.38;
    c.film_resistance_neg = 3.34e-4;
    c.film_resistance_pos = 1.46e-4;
    c.film_thickness_neg = c.film_resistance_neg * m.film_conductivity_neg;
    c.film_thickness_pos = c.film_resistance_pos * m.film_conductivity_pos;

    auto& t = p.transport;
    t.contact_resistance = 6.4e-3;
    t.solid_conductivity_neg = 66.5;
    t.solid_conductivity_pos = 1.97;
    t.ds_factor_neg = 1.0;
    t.ds_factor_pos = 1.0;
    t.de_factor = 1.0;
    t.kappa_factor = 1.0;
    t.transference = m.transference_nominal;

    p.ref_stoich_neg = 0.486;
    p.ref_stoich_pos = 0.536;
    p.v_min = 3.10;
    p.v_max = 4.20;

    p.validate();
    return p;
}

namespace {

using nlohmann::json;

json curve_to_json(const OcpCurve& c) {
    return json{{"stoichiometry", c.stoichiometries()}, {"potential_V", c.potentials()}};
}

OcpCurve curve_from_json(const json& j) {
    return OcpCurve(j.at("stoichiometry").get<std::vector<double>>(),
                    j.at("potential_V").get<std::vector<double>>());
}

} // namespace

std::string params_to_json(const CellParameters& p) {
    json j;
    j["geometry"] = {{"area_neg", p.geometry.area_neg},   {"area_pos", p.geometry.area_pos},
                     {"area_sep", p.geometry.area_sep},   {"thick_neg", p.geometry.thick_neg},
                     {"thick_pos", p.geometry.thick_pos}, {"thick_sep", p.geometry.thick_sep}};
    const auto& m = p.materials;
    j["materials"] = {
        {"molar_mass_neg", m.molar_mass_neg},
        {"molar_mass_pos", m.molar_mass_pos},
        {"density_neg", m.density_neg},
        {"density_pos", m.density_pos},
        {"particle_radius_neg", m.particle_radius_neg},
        {"particle_radius_pos", m.particle_radius_pos},
        {"reaction_rate_neg", m.reaction_rate_neg},
        {"reaction_rate_pos", m.reaction_rate_pos},
        {"cs_max_neg", m.cs_max_neg},
        {"cs_max_pos", m.cs_max_pos},
        {"film_conductivity_neg", m.film_conductivity_neg},
        {"film_conductivity_pos", m.film_conductivity_pos},
        {"base_solid_diffusivity_neg", m.base_solid_diffusivity_neg},
        {"base_solid_diffusivity_pos", m.base_solid_diffusivity_pos},
        {"base_electrolyte_diffusivity",
         {{"d0", m.base_electrolyte_diffusivity.d0},
          {"d1", m.base_electrolyte_diffusivity.d1},
          {"d2", m.base_electrolyte_diffusivity.d2},
          {"floor_frac", m.base_electrolyte_diffusivity.floor_frac}}},
        {"base_ionic_conductivity",
         {{"q0", m.base_ionic_conductivity.q0}, {"q1", m.base_ionic_conductivity.q1}}},
        {"transference_nominal", m.transference_nominal},
        {"temperature", m.temperature},
        {"elyte_conc_nominal", m.elyte_conc_nominal},
        {"ocp_neg", curve_to_json(m.ocp_neg)},
        {"ocp_pos", curve_to_json(m.ocp_pos)}};
    const auto& c = p.composition;
    j["composition"] = {{"eps_s_neg", c.eps_s_neg},
                        {"eps_s_pos", c.eps_s_pos},
                        {"eps_e_neg", c.eps_e_neg},
                        {"eps_e_sep", c.eps_e_sep},
                        {"eps_e_pos", c.eps_e_pos},
                        {"film_thickness_neg", c.film_thickness_neg},
                        {"film_thickness_pos", c.film_thickness_pos},
                        {"film_resistance_neg", c.film_resistance_neg},
                        {"film_resistance_pos", c.film_resistance_pos}};
    const auto& t = p.transport;
    j["transport"] = {{"contact_resistance", t.contact_resistance},
                      {"solid_conductivity_neg", t.solid_conductivity_neg},
                      {"solid_conductivity_pos", t.solid_conductivity_pos},
                      {"ds_factor_neg", t.ds_factor_neg},
                      {"ds_factor_pos", t.ds_factor_pos},
                      {"de_factor", t.de_factor},
                      {"kappa_factor", t.kappa_factor},
                      {"transference", t.transference}};
    j["ref_stoich_neg"] = p.ref_stoich_neg;
    j["ref_stoich_pos"] = p.ref_stoich_pos;
    j["v_min"] = p.v_min;
    j["v_max"] = p.v_max;
    return j.dump(2);
}

CellParameters params_from_json(const std::string& text) {
    json j = json::parse(text);
    CellParameters p;
    const auto& jg = j.at("geometry");
    p.geometry = {jg.at("area_neg"),  jg.at("area_pos"),  jg.at("area_sep"),
                  jg.at("thick_neg"), jg.at("thick_pos"), jg.at("thick_sep")};
    const auto& jm = j.at("materials");
    auto& m = p.materials;
    m.molar_mass_neg = jm.at("molar_mass_neg");
    m.molar_mass_pos = jm.at("molar_mass_pos");
    m.density_neg = jm.at("density_neg");
    m.density_pos = jm.at("density_pos");
    m.particle_radius_neg = jm.at("particle_radius_neg");
    m.particle_radius_pos = jm.at("particle_radius_pos");
    m.reaction_rate_neg = jm.at("reaction_rate_neg");
    m.reaction_rate_pos = jm.at("reaction_rate_pos");
    m.cs_max_neg = jm.at("cs_max_neg");
    m.cs_max_pos = jm.at("cs_max_pos");
    m.film_conductivity_neg = jm.at("film_conductivity_neg");
    m.film_conductivity_pos = jm.at("film_conductivity_pos");
    m.base_solid_diffusivity_neg = jm.at("base_solid_diffusivity_neg");
    m.base_solid_diffusivity_pos = jm.at("base_solid_diffusivity_pos");
    const auto& jd = jm.at("base_electrolyte_diffusivity");
    m.base_electrolyte_diffusivity = {jd.at("d0"), jd.at("d1"), jd.at("d2"),
                                      jd.at("floor_frac")};
    const auto& jk = jm.at("base_ionic_conductivity");
    m.base_ionic_conductivity = {jk.at("q0"), jk.at("q1")};
    m.transference_nominal = jm.at("transference_nominal");
    m.temperature = jm.at("temperature");
    m.elyte_conc_nominal = jm.at("elyte_conc_nominal");
    m.ocp_neg = curve_from_json(jm.at("ocp_neg"));
    m.ocp_pos = curve_from_json(jm.at("ocp_pos"));
    const auto& jc = j.at("composition");
    p.composition = {jc.at("eps_s_neg"),           jc.at("eps_s_pos"),
                     jc.at("eps_e_neg"),           jc.at("eps_e_sep"),
                     jc.at("eps_e_pos"),           jc.at("film_thickness_neg"),
                     jc.at("film_thickness_pos"),  jc.at("film_resistance_neg"),
                     jc.at("film_resistance_pos")};
    const auto& jt = j.at("transport");
    p.transport = {jt.at("contact_resistance"),     jt.at("solid_conductivity_neg"),
                   jt.at("solid_conductivity_pos"), jt.at("ds_factor_neg"),
                   jt.at("ds_factor_pos"),          jt.at("de_factor"),
                   jt.at("kappa_factor"),           jt.at("transference")};
    p.ref_stoich_neg = j.at("ref_stoich_neg");
    p.ref_stoich_pos = j.at("ref_stoich_pos");
    p.v_min = j.at("v_min");
    p.v_max = j.at("v_max");
    p.validate();
    return p;
}

void save_params(const CellParameters& p, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError(path, 0, "cannot open file for writing");
    out << params_to_json(p) << "\n";
}

CellParameters load_params(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path, 0, "cannot open file");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return params_from_json(text);
}

} // namespace cellident
