#include "irsplan/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "irsplan/errors.hpp"

namespace irsplan {

using nlohmann::json;

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

namespace {

Position read_position(const json& j, const std::string& field)
{
    if (!j.is_array() || j.size() != 3)
        throw parse_error(field + ": expected [x, y, z]");
    for (const auto& v : j)
        if (!v.is_number())
            throw parse_error(field + ": expected numeric coordinates");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

template <typename T>
void read_field(const json& obj, const std::string& section, const char* key, T& out)
{
    if (!obj.contains(key))
        return; // defaults apply
    const json& v = obj.at(key);
    try {
        out = v.get<T>();
    } catch (const json::exception& e) {
        throw parse_error(section + "." + key + ": " + e.what());
    }
}

void read_position_field(const json& obj, const std::string& section, const char* key,
                         Position& out)
{
    if (!obj.contains(key))
        return;
    out = read_position(obj.at(key), section + "." + key);
}

json position_json(const Position& p) { return json::array({p.x, p.y, p.z}); }

} // namespace

Scenario parse_scenario_text(const std::string& text)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw parse_error(std::string("scenario: ") + e.what());
    }
    if (!doc.is_object())
        throw parse_error("scenario: top level must be a JSON object");

    Scenario sc;
    if (doc.contains("geometry")) {
        const json& g = doc.at("geometry");
        read_position_field(g, "geometry", "irs", sc.geometry.irs);
        read_position_field(g, "geometry", "irs_axis", sc.geometry.irs_axis);
        read_field(g, "geometry", "ap_circle_radius", sc.geometry.ap_circle_radius);
        read_field(g, "geometry", "num_aps", sc.geometry.num_aps);
        read_field(g, "geometry", "phi_r1", sc.geometry.phi_r1);
        read_position_field(g, "geometry", "area_center", sc.geometry.area_center);
        read_field(g, "geometry", "area_length_x", sc.geometry.area_length_x);
        read_field(g, "geometry", "area_width_y", sc.geometry.area_width_y);
        read_field(g, "geometry", "grid_step", sc.geometry.grid_step);
    }
    if (doc.contains("channel")) {
        const json& c = doc.at("channel");
        read_field(c, "channel", "epsilon", sc.channel.epsilon);
        read_field(c, "channel", "delta", sc.channel.delta);
        read_field(c, "channel", "alpha1", sc.channel.alpha1);
        read_field(c, "channel", "alpha2", sc.channel.alpha2);
        read_field(c, "channel", "c0_db", sc.channel.c0_db);
        read_field(c, "channel", "dbar", sc.channel.dbar);
        read_field(c, "channel", "n", sc.channel.n);
        read_field(c, "channel", "m", sc.channel.m);
    }
    if (doc.contains("system")) {
        const json& s = doc.at("system");
        read_field(s, "system", "p_max_dbm", sc.system.p_max_dbm);
        read_field(s, "system", "noise_dbm", sc.system.noise_dbm);
    }
    if (doc.contains("solver")) {
        const json& s = doc.at("solver");
        read_field(s, "solver", "method", sc.solver.method);
        read_field(s, "solver", "grid_points", sc.solver.grid_points);
        read_field(s, "solver", "max_iters", sc.solver.max_iters);
        read_field(s, "solver", "tol", sc.solver.tol);
        read_field(s, "solver", "phase_bits", sc.solver.phase_bits);
        read_field(s, "solver", "seed", sc.solver.seed);
    }
    if (doc.contains("experiment")) {
        const json& e = doc.at("experiment");
        read_field(e, "experiment", "j_values", sc.experiment.j_values);
        read_field(e, "experiment", "n_values", sc.experiment.n_values);
        read_field(e, "experiment", "rician_db_values", sc.experiment.rician_db_values);
        read_field(e, "experiment", "validate_n_values", sc.experiment.validate_n_values);
        read_field(e, "experiment", "validate_m_values", sc.experiment.validate_m_values);
        read_field(e, "experiment", "validate_rician_values", sc.experiment.validate_rician_values);
        read_field(e, "experiment", "trials", sc.experiment.trials);
    }
    return sc;
}

Scenario parse_scenario(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw parse_error("scenario: cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_scenario_text(ss.str());
}

std::string serialize_scenario(const Scenario& sc)
{
    json doc;
    doc["geometry"] = {{"irs", position_json(sc.geometry.irs)},
                       {"irs_axis", position_json(sc.geometry.irs_axis)},
                       {"ap_circle_radius", sc.geometry.ap_circle_radius},
                       {"num_aps", sc.geometry.num_aps},
                       {"phi_r1", sc.geometry.phi_r1},
                       {"area_center", position_json(sc.geometry.area_center)},
                       {"area_length_x", sc.geometry.area_length_x},
                       {"area_width_y", sc.geometry.area_width_y},
                       {"grid_step", sc.geometry.grid_step}};
    doc["channel"] = {{"epsilon", sc.channel.epsilon}, {"delta", sc.channel.delta},
                      {"alpha1", sc.channel.alpha1},   {"alpha2", sc.channel.alpha2},
                      {"c0_db", sc.channel.c0_db},     {"dbar", sc.channel.dbar},
                      {"n", sc.channel.n},             {"m", sc.channel.m}};
    doc["system"] = {{"p_max_dbm", sc.system.p_max_dbm}, {"noise_dbm", sc.system.noise_dbm}};
    doc["solver"] = {{"method", sc.solver.method},
                     {"grid_points", sc.solver.grid_points},
                     {"max_iters", sc.solver.max_iters},
                     {"tol", sc.solver.tol},
                     {"phase_bits", sc.solver.phase_bits},
                     {"seed", sc.solver.seed}};
    doc["experiment"] = {{"j_values", sc.experiment.j_values},
                         {"n_values", sc.experiment.n_values},
                         {"rician_db_values", sc.experiment.rician_db_values},
                         {"validate_n_values", sc.experiment.validate_n_values},
                         {"validate_m_values", sc.experiment.validate_m_values},
                         {"validate_rician_values", sc.experiment.validate_rician_values},
                         {"trials", sc.experiment.trials}};
    return doc.dump(2);
}

namespace {

template <typename T>
void check(std::vector<Diagnostic>& out, bool ok, const std::string& field,
           const std::string& constraint, const T& actual)
{
    if (!ok) {
        std::ostringstream ss;
        ss << actual;
        out.push_back({field, constraint, ss.str()});
    }
}

} // namespace

std::vector<Diagnostic> validate_scenario(const Scenario& sc)
{
    std::vector<Diagnostic> d;
    const auto& g = sc.geometry;
    check(d, std::isfinite(g.irs.x) && std::isfinite(g.irs.y) && std::isfinite(g.irs.z),
          "geometry.irs", "finite coordinates", g.irs.x);
    check(d, g.irs.z >= 0.0, "geometry.irs", "z >= 0", g.irs.z);
    check(d, norm(g.irs_axis) > 0.0, "geometry.irs_axis", "nonzero axis", norm(g.irs_axis));
    check(d, g.ap_circle_radius > 0.0, "geometry.ap_circle_radius", "> 0", g.ap_circle_radius);
    check(d, g.num_aps >= 1, "geometry.num_aps", ">= 1", g.num_aps);
    check(d, std::abs(g.phi_r1) <= 1.0, "geometry.phi_r1", "in [-1, 1]", g.phi_r1);
    check(d, g.area_length_x > 0.0, "geometry.area_length_x", "> 0", g.area_length_x);
    check(d, g.area_width_y > 0.0, "geometry.area_width_y", "> 0", g.area_width_y);
    check(d, g.grid_step > 0.0, "geometry.grid_step", "> 0", g.grid_step);
    if (g.grid_step > 0.0 && g.area_length_x > 0.0 && g.area_width_y > 0.0)
        check(d, g.grid_step <= std::min(g.area_length_x, g.area_width_y) / 4.0,
              "geometry.grid_step", "<= min(length, width)/4", g.grid_step);
    if (g.irs.z == 0.0) {
        // with the IRS in the area plane, the area must keep positive distance
        const bool inside = std::abs(g.irs.x - g.area_center.x) <= g.area_length_x / 2.0 &&
                            std::abs(g.irs.y - g.area_center.y) <= g.area_width_y / 2.0;
        check(d, !inside, "geometry.area_center", "area must not contain the IRS", g.irs.z);
    }

    const auto& c = sc.channel;
    check(d, c.epsilon >= 0.0, "channel.epsilon", ">= 0", c.epsilon);
    check(d, c.delta >= 0.0, "channel.delta", ">= 0", c.delta);
    check(d, std::isfinite(c.alpha1), "channel.alpha1", "finite", c.alpha1);
    check(d, std::isfinite(c.alpha2), "channel.alpha2", "finite", c.alpha2);
    check(d, c.c0_db <= 0.0, "channel.c0_db", "c0 in (0, 1] i.e. c0_db <= 0", c.c0_db);
    check(d, c.dbar > 0.0, "channel.dbar", "> 0", c.dbar);
    check(d, c.n >= 1, "channel.n", ">= 1", c.n);
    check(d, c.m >= 1, "channel.m", ">= 1", c.m);

    check(d, std::isfinite(sc.system.p_max_dbm), "system.p_max_dbm", "finite",
          sc.system.p_max_dbm);
    check(d, std::isfinite(sc.system.noise_dbm), "system.noise_dbm", "finite",
          sc.system.noise_dbm);

    const auto& s = sc.solver;
    check(d,
          s.method == "linear" || s.method == "flat" || s.method == "oracle",
          "solver.method", "one of linear|flat|oracle", s.method);
    check(d, s.grid_points >= 0, "solver.grid_points", ">= 0 (0 = auto)", s.grid_points);
    check(d, s.max_iters >= 1, "solver.max_iters", ">= 1", s.max_iters);
    check(d, s.tol > 0.0, "solver.tol", "> 0", s.tol);
    check(d, s.phase_bits >= 1 && s.phase_bits <= 3, "solver.phase_bits", "in [1, 3]",
          s.phase_bits);

    const auto& e = sc.experiment;
    check(d, e.trials >= 100, "experiment.trials", ">= 100", e.trials);
    for (int j : e.j_values)
        check(d, j >= 1, "experiment.j_values", "all >= 1", j);
    for (int n : e.n_values)
        check(d, n >= 1, "experiment.n_values", "all >= 1", n);
    for (int n : e.validate_n_values)
        check(d, n >= 1, "experiment.validate_n_values", "all >= 1", n);
    for (int m : e.validate_m_values)
        check(d, m >= 1, "experiment.validate_m_values", "all >= 1", m);
    for (double r : e.validate_rician_values)
        check(d, r >= 0.0, "experiment.validate_rician_values", "all >= 0", r);
    return d;
}

std::uint64_t scenario_hash(const Scenario& scenario)
{
    const std::string text = serialize_scenario(scenario);
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 0x100000001B3ULL;
    }
    return h;
}

SystemConfig to_system_config(const Scenario& sc)
{
    SystemConfig cfg;
    cfg.p_max_w = dbm_to_watts(sc.system.p_max_dbm);
    cfg.noise_w = dbm_to_watts(sc.system.noise_dbm);

    cfg.channel.epsilon = sc.channel.epsilon;
    cfg.channel.delta = sc.channel.delta;
    cfg.channel.alpha1 = sc.channel.alpha1;
    cfg.channel.alpha2 = sc.channel.alpha2;
    cfg.channel.c0 = db_to_linear(sc.channel.c0_db);
    cfg.channel.dbar = sc.channel.dbar;
    cfg.channel.num_elements = sc.channel.n;
    cfg.channel.num_antennas = sc.channel.m;

    cfg.geometry.irs = sc.geometry.irs;
    cfg.geometry.irs_axis = normalized(sc.geometry.irs_axis);
    cfg.geometry.area.center = sc.geometry.area_center;
    cfg.geometry.area.length_x = sc.geometry.area_length_x;
    cfg.geometry.area.width_y = sc.geometry.area_width_y;
    cfg.geometry.grid_step = sc.geometry.grid_step;

    const auto [phi_min, phi_max] = spatial_freq_bounds(cfg.geometry.area, cfg.geometry.irs,
                                                        cfg.geometry.irs_axis,
                                                        cfg.geometry.grid_step);
    cfg.geometry.aps = place_aps_uniform(sc.geometry.num_aps, sc.geometry.phi_r1,
                                         phi_max - phi_min, sc.geometry.ap_circle_radius,
                                         cfg.geometry.irs, cfg.geometry.irs_axis);
    return cfg;
}

SynthConfig to_synth_config(const Scenario::Solver& solver)
{
    SynthConfig cfg;
    if (solver.method == "linear")
        cfg.method = SynthMethod::linear;
    else if (solver.method == "oracle")
        cfg.method = SynthMethod::oracle;
    else
        cfg.method = SynthMethod::flat;
    cfg.grid_points = solver.grid_points;
    cfg.max_iters = solver.max_iters;
    cfg.tol = solver.tol;
    return cfg;
}

void ResultTable::add_row(std::vector<std::string> cells)
{
    if (cells.size() != columns.size())
        throw contract_error("ResultTable: row width != column count");
    rows.push_back(std::move(cells));
}

std::string format_double(double v)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

std::string format_int(long long v)
{
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string to_csv(const ResultTable& table)
{
    std::string out;
    for (const auto& [key, value] : table.metadata)
        out += "# " + key + "=" + value + "\n";
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (i > 0)
            out += ",";
        out += table.columns[i];
    }
    out += "\n";
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i > 0)
                out += ",";
            out += row[i];
        }
        out += "\n";
    }
    return out;
}

void write_csv_file(const ResultTable& table, const std::string& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw evaluation_error("cannot open output file '" + path + "'");
    out << to_csv(table);
}

} // namespace irsplan
