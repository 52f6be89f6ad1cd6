#include "tdho_cli/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

namespace tdho::cli {

using nlohmann::json;

namespace {

ProfileKind kind_from_string(const std::string& s) {
    if (s == "constant") return ProfileKind::Constant;
    if (s == "tanh_step") return ProfileKind::TanhStep;
    if (s == "sech_bump") return ProfileKind::SechBump;
    if (s == "tabulated") return ProfileKind::Tabulated;
    throw UsageError("profile.kind: unknown kind '" + s + "'");
}

void reject_unknown(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
    const std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [key, _] : obj.items())
        if (!ok.count(key)) throw UsageError(where + (where.empty() ? "" : ".") + key + ": unknown key");
}

template <class T>
T get(const json& obj, const char* key, const std::string& where) {
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception& e) {
        throw UsageError(where + "." + key + ": " + e.what());
    }
}

const json& section(const json& j, const char* key) {
    const json& s = j.at(key);
    if (!s.is_object()) throw UsageError(std::string(key) + ": expected an object");
    return s;
}

}  // namespace

RunConfig preset(const std::string& name) {
    RunConfig c;
    if (name == "example1") {
        c.profile = {ProfileKind::TanhStep, 10.0, 100.0, 5.0, {}};
        c.N = {0, 1, 8};
        c.t_min = -2.0;
        c.t_max = 2.0;
    } else if (name == "example2") {
        c.profile = {ProfileKind::SechBump, 2.0, std::sqrt(102.0), 7.0, {}};
        c.N = {0, 1, 8};
        c.t_min = -3.0;
        c.t_max = 3.0;
    } else {
        throw UsageError("unknown preset '" + name + "' (expected example1 or example2)");
    }
    c.n_out = 1201;
    c.reference = ReferenceMode::InRegion;
    c.output_dir = "out/" + name;
    return c;
}

RunConfig config_from_json(const json& j, RunConfig c) {
    if (!j.is_object()) throw UsageError("config: top level must be an object");
    reject_unknown(j, "", {"preset", "profile", "N", "grid", "reference", "representations", "transitions", "ode",
                           "temperatures", "density", "oracle", "output"});
    if (j.contains("preset")) c = preset(get<std::string>(j, "preset", "config"));
    if (j.contains("profile")) {
        const json& p = section(j, "profile");
        reject_unknown(p, "profile", {"kind", "omega0", "omega_target", "kappa", "samples"});
        if (p.contains("kind")) c.profile.kind = kind_from_string(get<std::string>(p, "kind", "profile"));
        if (p.contains("omega0")) c.profile.omega0 = get<double>(p, "omega0", "profile");
        if (p.contains("omega_target")) c.profile.omega_target = get<double>(p, "omega_target", "profile");
        if (p.contains("kappa")) c.profile.kappa = get<double>(p, "kappa", "profile");
        if (p.contains("samples")) c.profile.samples = get<std::string>(p, "samples", "profile");
    }
    if (j.contains("N")) {
        const json& n = j.at("N");
        try {
            c.N = n.is_array() ? n.get<std::vector<int>>() : std::vector<int>{n.get<int>()};
        } catch (const json::exception& e) {
            throw UsageError(std::string("N: ") + e.what());
        }
    }
    if (j.contains("grid")) {
        const json& g = section(j, "grid");
        reject_unknown(g, "grid", {"t_min", "t_max", "n_out"});
        if (g.contains("t_min")) c.t_min = get<double>(g, "t_min", "grid");
        if (g.contains("t_max")) c.t_max = get<double>(g, "t_max", "grid");
        if (g.contains("n_out")) c.n_out = get<std::size_t>(g, "n_out", "grid");
    }
    if (j.contains("reference")) {
        const json& r = section(j, "reference");
        reject_unknown(r, "reference", {"mode", "time", "frequency"});
        if (r.contains("mode")) {
            const auto m = get<std::string>(r, "mode", "reference");
            if (m == "profile") c.reference = ReferenceMode::Profile;
            else if (m == "in_region") c.reference = ReferenceMode::InRegion;
            else throw UsageError("reference.mode: expected 'profile' or 'in_region'");
        }
        if (r.contains("time")) c.reference_time = get<double>(r, "time", "reference");
        if (r.contains("frequency")) c.reference_frequency = get<double>(r, "frequency", "reference");
    }
    if (j.contains("representations")) {
        c.representations.clear();
        try {
            for (const auto& s : j.at("representations").get<std::vector<std::string>>())
                c.representations.push_back(representation_from_string(s));
        } catch (const std::exception& e) {
            throw UsageError(std::string("representations: ") + e.what());
        }
    }
    if (j.contains("transitions")) {
        const json& t = section(j, "transitions");
        reject_unknown(t, "transitions", {"tail_tol", "max_mode"});
        if (t.contains("tail_tol")) c.tail_tol = get<double>(t, "tail_tol", "transitions");
        if (t.contains("max_mode")) c.max_mode = get<int>(t, "max_mode", "transitions");
    }
    if (j.contains("ode")) {
        const json& o = section(j, "ode");
        reject_unknown(o, "ode", {"rel_tol", "abs_tol"});
        if (o.contains("rel_tol")) c.rel_tol = get<double>(o, "rel_tol", "ode");
        if (o.contains("abs_tol")) c.abs_tol = get<double>(o, "abs_tol", "ode");
    }
    if (j.contains("temperatures")) {
        const json& t = section(j, "temperatures");
        reject_unknown(t, "temperatures", {"max_mode"});
        if (t.contains("max_mode")) c.temps_max_mode = get<int>(t, "max_mode", "temperatures");
    }
    if (j.contains("density")) {
        const json& d = section(j, "density");
        reject_unknown(d, "density", {"time", "max_mode"});
        if (d.contains("time")) c.density_time = get<double>(d, "time", "density");
        if (d.contains("max_mode")) c.density_max_mode = get<int>(d, "max_mode", "density");
    }
    if (j.contains("oracle")) {
        const json& o = section(j, "oracle");
        reject_unknown(o, "oracle", {"dimension", "samples", "max_mode"});
        if (o.contains("dimension")) c.oracle_dimension = get<int>(o, "dimension", "oracle");
        if (o.contains("samples")) c.oracle_samples = get<int>(o, "samples", "oracle");
        if (o.contains("max_mode")) c.oracle_max_mode = get<int>(o, "max_mode", "oracle");
    }
    if (j.contains("output")) {
        const json& o = section(j, "output");
        reject_unknown(o, "output", {"directory", "emit"});
        if (o.contains("directory")) c.output_dir = get<std::string>(o, "directory", "output");
        if (o.contains("emit")) {
            const json& e = o.at("emit");
            reject_unknown(e, "output.emit",
                           {"sigma", "bogoliubov", "transitions", "thermo", "entropy", "temps", "oracle"});
            auto flag = [&](const char* k, bool& dst) {
                if (e.contains(k)) dst = get<bool>(e, k, "output.emit");
            };
            flag("sigma", c.emit.sigma);
            flag("bogoliubov", c.emit.bogoliubov);
            flag("transitions", c.emit.transitions);
            flag("thermo", c.emit.thermo);
            flag("entropy", c.emit.entropy);
            flag("temps", c.emit.temps);
            flag("oracle", c.emit.oracle);
        }
    }
    return c;
}

RunConfig load_config(const std::filesystem::path& path, RunConfig base) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file " + path.string());
    json j;
    try {
        j = json::parse(in, nullptr, true, true);
    } catch (const json::parse_error& e) {
        throw UsageError(path.string() + ": " + e.what());
    }
    return config_from_json(j, std::move(base));
}

json config_to_json(const RunConfig& c) {
    json j;
    j["profile"] = {{"kind", to_string(c.profile.kind)},
                    {"omega0", c.profile.omega0},
                    {"omega_target", c.profile.omega_target},
                    {"kappa", c.profile.kappa}};
    if (!c.profile.samples.empty()) j["profile"]["samples"] = c.profile.samples;
    j["N"] = c.N;
    j["grid"] = {{"t_min", c.t_min}, {"t_max", c.t_max}, {"n_out", c.n_out}};
    j["reference"] = {{"mode", c.reference == ReferenceMode::InRegion ? "in_region" : "profile"}};
    if (c.reference_time) j["reference"]["time"] = *c.reference_time;
    if (c.reference_frequency) j["reference"]["frequency"] = *c.reference_frequency;
    j["representations"] = json::array();
    for (auto r : c.representations) j["representations"].push_back(to_string(r));
    j["transitions"] = {{"tail_tol", c.tail_tol}, {"max_mode", c.max_mode}};
    j["ode"] = {{"rel_tol", c.rel_tol}, {"abs_tol", c.abs_tol}};
    j["temperatures"] = {{"max_mode", c.temps_max_mode}};
    j["density"] = {{"max_mode", c.density_max_mode}};
    if (c.density_time) j["density"]["time"] = *c.density_time;
    j["oracle"] = {{"dimension", c.oracle_dimension}, {"samples", c.oracle_samples}, {"max_mode", c.oracle_max_mode}};
    j["output"] = {{"directory", c.output_dir.generic_string()},
                   {"emit",
                    {{"sigma", c.emit.sigma},
                     {"bogoliubov", c.emit.bogoliubov},
                     {"transitions", c.emit.transitions},
                     {"thermo", c.emit.thermo},
                     {"entropy", c.emit.entropy},
                     {"temps", c.emit.temps},
                     {"oracle", c.emit.oracle}}}};
    return j;
}

void validate(const RunConfig& c) {
    if (!(c.t_min < 0.0 && c.t_max > 0.0)) throw UsageError("grid: need t_min < 0 < t_max");
    if (c.n_out < 2) throw UsageError("grid.n_out: need at least 2 points");
    if (c.N.empty()) throw UsageError("N: need at least one initial mode");
    for (int n : c.N)
        if (n < 0) throw UsageError("N: modes must be nonnegative");
    if (c.representations.empty()) throw UsageError("representations: need at least one");
    if (!(c.tail_tol >= 1e-12 && c.tail_tol <= 1e-3)) throw UsageError("transitions.tail_tol: must lie in [1e-12, 1e-3]");
    if (c.max_mode < 1) throw UsageError("transitions.max_mode: must be positive");
    if (!(c.rel_tol >= 1e-13 && c.rel_tol <= 1e-4)) throw UsageError("ode.rel_tol: must lie in [1e-13, 1e-4]");
    if (!(c.abs_tol > 0.0)) throw UsageError("ode.abs_tol: must be positive");
    if (c.temps_max_mode < 1) throw UsageError("temperatures.max_mode: must be positive");
    if (c.density_max_mode < 0) throw UsageError("density.max_mode: must be nonnegative");
    if (c.density_time && !(*c.density_time >= c.t_min && *c.density_time <= c.t_max))
        throw UsageError("density.time: must lie inside the grid");
    if (c.oracle_samples < 1) throw UsageError("oracle.samples: must be positive");
    if (c.reference_time && !(*c.reference_time >= c.t_min && *c.reference_time <= c.t_max))
        throw UsageError("reference.time: must lie inside the grid");
    if (c.reference_frequency && !(*c.reference_frequency > 0.0))
        throw UsageError("reference.frequency: must be positive");
    if (c.profile.kind == ProfileKind::Tabulated && c.profile.samples.empty())
        throw UsageError("profile.samples: required for tabulated profiles");
    if (c.profile.kind != ProfileKind::Tabulated) {
        if (!(c.profile.omega0 > 0.0)) throw UsageError("profile.omega0: must be positive");
        if (c.profile.kind != ProfileKind::Constant) {
            if (!(c.profile.omega_target > 0.0)) throw UsageError("profile.omega_target: must be positive");
            if (!(c.profile.kappa > 0.0)) throw UsageError("profile.kappa: must be positive");
        }
    }
}

FrequencyProfile make_profile(const ProfileSpec& s) {
    switch (s.kind) {
        case ProfileKind::Constant: return FrequencyProfile::constant(s.omega0);
        case ProfileKind::TanhStep: return FrequencyProfile::tanh_step(s.omega0, s.omega_target, s.kappa);
        case ProfileKind::SechBump: return FrequencyProfile::sech_bump(s.omega0, s.omega_target, s.kappa);
        case ProfileKind::Tabulated: return FrequencyProfile::from_csv(s.samples);
    }
    throw UsageError("profile.kind: unsupported");
}

std::pair<double, double> resolve_reference(const RunConfig& c, const FrequencyProfile& profile) {
    double t_ref = c.reference == ReferenceMode::InRegion ? c.t_min : 0.0;
    if (c.reference_time) t_ref = *c.reference_time;
    if (!(t_ref >= c.t_min && t_ref <= c.t_max)) throw UsageError("reference.time: must lie inside the grid");
    double big_omega = c.reference == ReferenceMode::InRegion ? profile.omega(t_ref) : profile.omega0();
    if (c.reference_frequency) big_omega = *c.reference_frequency;
    return {t_ref, big_omega};
}

}  // namespace tdho::cli
