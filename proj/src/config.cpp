#include "refsa/config.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

namespace refsa {

using nlohmann::json;

namespace {

// Case-folding helper for enum-ish strings.
std::string require_string(const json& j, const char* key) {
    if (!j.is_string())
        throw ConfigError(std::string(key) + " must be a string");
    return j.get<std::string>();
}

StateId state_from_json(const json& j, const char* key) {
    if (j.is_string())
        return StateId::parse(j.get<std::string>());
    if (j.is_number_integer())
        return StateId::from_level(j.get<int>());
    throw ConfigError(std::string(key) + " must be a state name like \"S3\"");
}

void parse_state_table(const json& j, StateTable& table) {
    if (auto it = j.find("voltages"); it != j.end()) {
        table.set_voltages(it->value("set_v", table.set_voltage_v()),
                           it->value("reset_v", table.reset_voltage_v()),
                           it->value("read_v", table.read_voltage_v()));
    }
    if (auto it = j.find("frame_period_ns"); it != j.end())
        table.set_frame_period_ns(it->get<double>());
    if (auto it = j.find("states"); it != j.end()) {
        for (const auto& [name, entry] : it->items()) {
            const StateId s = StateId::parse(name);
            StateRow row = table.row(s);
            row.pulse_width_ns = entry.value("width_ns", row.pulse_width_ns);
            row.current_ua = entry.value("current_uA", row.current_ua);
            row.resistance_kohm = entry.value("resistance_kOhm", row.resistance_kohm);
            table.set_row(s, row);
        }
    }
    table.validate();
}

json state_table_to_json(const StateTable& table) {
    json states;
    for (int level = 0; level < StateId::kCount; ++level) {
        const StateId s = StateId::from_level(level);
        states[s.name()] = {{"width_ns", table.width_ns(s)},
                            {"current_uA", table.current_ua(s)},
                            {"resistance_kOhm", table.resistance_kohm(s)}};
    }
    return {{"voltages",
             {{"set_v", table.set_voltage_v()},
              {"reset_v", table.reset_voltage_v()},
              {"read_v", table.read_voltage_v()}}},
            {"frame_period_ns", table.frame_period_ns()},
            {"states", states}};
}

void parse_variation(const json& j, VariationProfile& p) {
    p.low_state_bound = j.value("low_state_bound", p.low_state_bound);
    p.high_state_bound = j.value("high_state_bound", p.high_state_bound);
    p.sigma_divisor = j.value("sigma_divisor", p.sigma_divisor);
    p.d2d_enabled = j.value("d2d_enabled", p.d2d_enabled);
    p.c2c_enabled = j.value("c2c_enabled", p.c2c_enabled);
    p.uniform_at_bound = j.value("uniform_at_bound", p.uniform_at_bound);
    p.validate();
}

json variation_to_json(const VariationProfile& p) {
    return {{"low_state_bound", p.low_state_bound},
            {"high_state_bound", p.high_state_bound},
            {"sigma_divisor", p.sigma_divisor},
            {"d2d_enabled", p.d2d_enabled},
            {"c2c_enabled", p.c2c_enabled},
            {"uniform_at_bound", p.uniform_at_bound}};
}

void parse_physical(const json& j, PhysicalModelParams& p) {
    p.cell_length_nm = j.value("cell_length_nm", p.cell_length_nm);
    p.disc_length_nm = j.value("disc_length_nm", p.disc_length_nm);
    p.disc_radius_nm = j.value("disc_radius_nm", p.disc_radius_nm);
    p.plug_vacancy_per_m3 = j.value("plug_vacancy_per_m3", p.plug_vacancy_per_m3);
    p.lattice_constant_nm = j.value("lattice_constant_nm", p.lattice_constant_nm);
    p.electron_mobility_m2_per_vs =
        j.value("electron_mobility_m2_per_vs", p.electron_mobility_m2_per_vs);
    p.permittivity_rel = j.value("permittivity_rel", p.permittivity_rel);
    p.disc_vacancy_min_per_m3 =
        j.value("disc_vacancy_min_per_m3", p.disc_vacancy_min_per_m3);
    p.barrier_permittivity_rel =
        j.value("barrier_permittivity_rel", p.barrier_permittivity_rel);
    p.disc_vacancy_max_per_m3 =
        j.value("disc_vacancy_max_per_m3", p.disc_vacancy_max_per_m3);
    p.barrier_height_zero_bias_ev =
        j.value("barrier_height_zero_bias_ev", p.barrier_height_zero_bias_ev);
    p.barrier_height_ev = j.value("barrier_height_ev", p.barrier_height_ev);
    p.activation_energy_ev = j.value("activation_energy_ev", p.activation_energy_ev);
    p.area_factor_per_ohm = j.value("area_factor_per_ohm", p.area_factor_per_ohm);
    p.series_resistance_ohm = j.value("series_resistance_ohm", p.series_resistance_ohm);
    p.disc_resistance_ohm = j.value("disc_resistance_ohm", p.disc_resistance_ohm);
    p.thermal_line_resistance_kohm =
        j.value("thermal_line_resistance_kohm", p.thermal_line_resistance_kohm);
    p.thermal_resistance_ohm =
        j.value("thermal_resistance_ohm", p.thermal_resistance_ohm);
}

json physical_to_json(const PhysicalModelParams& p) {
    return {{"cell_length_nm", p.cell_length_nm},
            {"disc_length_nm", p.disc_length_nm},
            {"disc_radius_nm", p.disc_radius_nm},
            {"plug_vacancy_per_m3", p.plug_vacancy_per_m3},
            {"lattice_constant_nm", p.lattice_constant_nm},
            {"electron_mobility_m2_per_vs", p.electron_mobility_m2_per_vs},
            {"permittivity_rel", p.permittivity_rel},
            {"disc_vacancy_min_per_m3", p.disc_vacancy_min_per_m3},
            {"barrier_permittivity_rel", p.barrier_permittivity_rel},
            {"disc_vacancy_max_per_m3", p.disc_vacancy_max_per_m3},
            {"barrier_height_zero_bias_ev", p.barrier_height_zero_bias_ev},
            {"barrier_height_ev", p.barrier_height_ev},
            {"activation_energy_ev", p.activation_energy_ev},
            {"area_factor_per_ohm", p.area_factor_per_ohm},
            {"series_resistance_ohm", p.series_resistance_ohm},
            {"disc_resistance_ohm", p.disc_resistance_ohm},
            {"thermal_line_resistance_kohm", p.thermal_line_resistance_kohm},
            {"thermal_resistance_ohm", p.thermal_resistance_ohm}};
}

void parse_energy(const json& j, EnergyLedger& ledger) {
    if (auto it = j.find("via_intermediate_pJ"); it != j.end()) {
        for (const auto& [name, value] : it->items())
            ledger.set_via_intermediate(StateId::parse(name), value.get<double>());
    }
    if (auto it = j.find("direct_pJ"); it != j.end()) {
        for (const auto& [name, value] : it->items())
            ledger.set_direct(StateId::parse(name), value.get<double>());
    }
}

json energy_to_json(const EnergyLedger& ledger) {
    json via, direct;
    for (StateId s : resting_states()) {
        if (auto v = ledger.via_entry(s))
            via[s.name()] = *v;
        if (auto d = ledger.direct_entry(s))
            direct[s.name()] = *d;
    }
    return {{"via_intermediate_pJ", via}, {"direct_pJ", direct}};
}

WorkloadSpec parse_workload(const json& j) {
    WorkloadSpec w;
    int kinds = 0;
    if (j.contains("transitions"))
        ++kinds;
    if (j.contains("fsa"))
        ++kinds;
    if (j.contains("krinsky"))
        ++kinds;
    if (kinds != 1)
        throw ConfigError(
            "workload must contain exactly one of: transitions, fsa, krinsky");

    if (auto it = j.find("transitions"); it != j.end()) {
        w.kind = WorkloadSpec::Kind::Transitions;
        if (!it->is_array())
            throw ConfigError("workload.transitions must be an array of [from, to] pairs");
        for (const auto& pair : *it) {
            if (!pair.is_array() || pair.size() != 2)
                throw ConfigError("each transition must be a [from, to] pair");
            w.transitions.emplace_back(state_from_json(pair[0], "transition source"),
                                       state_from_json(pair[1], "transition target"));
        }
    } else if (auto fs = j.find("fsa"); fs != j.end()) {
        w.kind = WorkloadSpec::Kind::Fsa;
        if (fs->is_string()) {
            w.fsa_file = fs->get<std::string>();
        } else {
            FsaSpec spec;
            spec.state_count = fs->value("states", 0);
            spec.alphabet_size = fs->value("symbols", 0);
            spec.initial_state = fs->value("initial", 0);
            if (auto tr = fs->find("transitions"); tr != fs->end()) {
                spec.table.assign(
                    static_cast<std::size_t>(spec.state_count) * spec.alphabet_size, -1);
                for (const auto& triple : *tr) {
                    if (!triple.is_array() || triple.size() != 3)
                        throw ConfigError("fsa transitions must be [state, symbol, next]");
                    const int state = triple[0].get<int>();
                    const int symbol = triple[1].get<int>();
                    if (state < 0 || state >= spec.state_count || symbol < 0 ||
                        symbol >= spec.alphabet_size)
                        throw ConfigError("fsa transition indices out of range");
                    spec.table[static_cast<std::size_t>(state) * spec.alphabet_size +
                               symbol] = triple[2].get<int>();
                }
            }
            spec.validate();
            w.fsa = std::move(spec);
        }
        if (auto in = j.find("inputs"); in != j.end())
            w.inputs = in->get<std::vector<int>>();
    } else if (auto kr = j.find("krinsky"); kr != j.end()) {
        w.kind = WorkloadSpec::Kind::Krinsky;
        if (!kr->contains("p_reward_a") || !kr->contains("p_reward_b"))
            throw ConfigError("krinsky workload needs p_reward_a and p_reward_b");
        KrinskyEnvironment env;
        env.p_reward_a = kr->at("p_reward_a").get<double>();
        env.p_reward_b = kr->at("p_reward_b").get<double>();
        env.validate();
        w.krinsky_env = env;
        w.krinsky_steps = kr->value("steps", w.krinsky_steps);
        if (auto init = kr->find("initial"); init != kr->end())
            w.krinsky_initial = state_from_json(*init, "krinsky initial state");
        if (!w.krinsky_initial.is_resting())
            throw ConfigError("krinsky initial state must be a resting state");
    }
    return w;
}

json workload_to_json(const WorkloadSpec& w) {
    json j;
    switch (w.kind) {
    case WorkloadSpec::Kind::Transitions: {
        json list = json::array();
        for (const auto& [from, to] : w.transitions)
            list.push_back(json::array({from.name(), to.name()}));
        j["transitions"] = list;
        break;
    }
    case WorkloadSpec::Kind::Fsa: {
        // Dump a loaded table inline so the effective config is
        // self-contained and reloads identically from anywhere.
        if (w.fsa) {
            json transitions = json::array();
            for (int state = 0; state < w.fsa->state_count; ++state)
                for (int symbol = 0; symbol < w.fsa->alphabet_size; ++symbol)
                    transitions.push_back({state, symbol, w.fsa->next(state, symbol)});
            j["fsa"] = {{"states", w.fsa->state_count},
                        {"symbols", w.fsa->alphabet_size},
                        {"initial", w.fsa->initial_state},
                        {"transitions", transitions}};
        } else if (w.fsa_file) {
            j["fsa"] = *w.fsa_file;
        }
        j["inputs"] = w.inputs;
        break;
    }
    case WorkloadSpec::Kind::Krinsky:
        j["krinsky"] = {{"p_reward_a", w.krinsky_env->p_reward_a},
                        {"p_reward_b", w.krinsky_env->p_reward_b},
                        {"steps", w.krinsky_steps},
                        {"initial", w.krinsky_initial.name()}};
        break;
    }
    return j;
}

} // namespace

AdcConfig ScenarioConfig::effective_adc() const {
    return adc ? *adc : AdcConfig::from_table(table);
}

MonteCarloConfig ScenarioConfig::monte_carlo() const {
    MonteCarloConfig mc;
    mc.trials = mc_trials;
    mc.seed = seed;
    mc.profile = profile;
    mc.states = mc_states;
    mc.table = table;
    mc.adc = effective_adc();
    mc.params = params;
    return mc;
}

ScenarioConfig ScenarioConfig::from_json(const json& j) {
    if (!j.is_object())
        throw ConfigError("scenario config must be a JSON object");
    ScenarioConfig cfg;
    if (auto it = j.find("crossbar"); it != j.end()) {
        cfg.crossbar.rows = it->value("rows", cfg.crossbar.rows);
        cfg.crossbar.cols = it->value("cols", cfg.crossbar.cols);
        cfg.crossbar.validate();
    }
    if (auto it = j.find("state_table"); it != j.end())
        parse_state_table(*it, cfg.table);
    if (auto it = j.find("variation"); it != j.end())
        parse_variation(*it, cfg.profile);
    if (auto it = j.find("physical_params"); it != j.end())
        parse_physical(*it, cfg.params);
    if (auto it = j.find("energy"); it != j.end())
        parse_energy(*it, cfg.energy);
    if (auto it = j.find("latency"); it != j.end()) {
        cfg.latency.frame_ns = it->value("frame_ns", cfg.latency.frame_ns);
        cfg.latency.frames_per_pulse =
            it->value("frames_per_pulse", cfg.latency.frames_per_pulse);
        cfg.latency.frames_per_read =
            it->value("frames_per_read", cfg.latency.frames_per_read);
        if (cfg.latency.frame_ns <= 0 || cfg.latency.frames_per_pulse < 1 ||
            cfg.latency.frames_per_read < 0)
            throw ConfigError("invalid latency settings");
    }
    if (auto it = j.find("adc"); it != j.end()) {
        AdcConfig adc;
        adc.state_count = it->value("state_count", adc.state_count);
        adc.bits = it->value("bits", adc_bits(adc.state_count));
        if (auto th = it->find("thresholds_uA"); th != it->end())
            adc.thresholds_ua = th->get<std::vector<double>>();
        else
            adc.thresholds_ua = default_thresholds(cfg.table);
        adc.validate();
        cfg.adc = adc;
    }
    if (auto it = j.find("seed"); it != j.end())
        cfg.seed = it->get<std::uint64_t>();
    if (auto it = j.find("out_dir"); it != j.end())
        cfg.out_dir = require_string(*it, "out_dir");
    if (auto it = j.find("workload"); it != j.end())
        cfg.workload = parse_workload(*it);
    if (auto it = j.find("montecarlo"); it != j.end()) {
        cfg.mc_trials = it->value("trials", cfg.mc_trials);
        if (cfg.mc_trials < 1)
            throw ConfigError("montecarlo.trials must be positive");
        if (auto st = it->find("states"); st != it->end()) {
            cfg.mc_states.clear();
            for (const auto& s : *st)
                cfg.mc_states.push_back(state_from_json(s, "montecarlo state"));
        }
    }
    if (auto it = j.find("encoding"); it != j.end()) {
        const std::string enc = require_string(*it, "encoding");
        if (enc == "base6")
            cfg.encoding = StateEncoding::Base6;
        else if (enc == "binary")
            cfg.encoding = StateEncoding::Binary;
        else
            throw ConfigError("encoding must be \"base6\" or \"binary\"");
    }
    if (auto it = j.find("rewrite"); it != j.end()) {
        const std::string rw = require_string(*it, "rewrite");
        if (rw == "changed")
            cfg.rewrite = RewritePolicy::ChangedDigitsOnly;
        else if (rw == "full")
            cfg.rewrite = RewritePolicy::AllDigits;
        else
            throw ConfigError("rewrite must be \"changed\" or \"full\"");
    }
    return cfg;
}

ScenarioConfig ScenarioConfig::load(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in)
        throw ConfigError("cannot open config file: " + file.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError("config file " + file.string() + " is not valid JSON: " +
                          e.what());
    }
    ScenarioConfig cfg = from_json(j);
    // Resolve a transition-table file relative to the config location.
    if (cfg.workload && cfg.workload->fsa_file) {
        std::filesystem::path p(*cfg.workload->fsa_file);
        if (p.is_relative())
            p = file.parent_path() / p;
        cfg.workload->fsa = FsaSpec::load(p);
    }
    return cfg;
}

json ScenarioConfig::to_json() const {
    json j;
    j["crossbar"] = {{"rows", crossbar.rows}, {"cols", crossbar.cols}};
    j["state_table"] = state_table_to_json(table);
    j["variation"] = variation_to_json(profile);
    j["physical_params"] = physical_to_json(params);
    j["energy"] = energy_to_json(energy);
    j["latency"] = {{"frame_ns", latency.frame_ns},
                    {"frames_per_pulse", latency.frames_per_pulse},
                    {"frames_per_read", latency.frames_per_read}};
    const AdcConfig eff = effective_adc();
    j["adc"] = {{"state_count", eff.state_count},
                {"bits", eff.bits},
                {"thresholds_uA", eff.thresholds_ua}};
    j["seed"] = seed;
    j["out_dir"] = out_dir;
    if (workload)
        j["workload"] = workload_to_json(*workload);
    json mc_states_json = json::array();
    for (StateId s : mc_states)
        mc_states_json.push_back(s.name());
    j["montecarlo"] = {{"trials", mc_trials}, {"states", mc_states_json}};
    j["encoding"] = encoding == StateEncoding::Base6 ? "base6" : "binary";
    j["rewrite"] = rewrite == RewritePolicy::ChangedDigitsOnly ? "changed" : "full";
    return j;
}

void ScenarioConfig::save(const std::filesystem::path& file) const {
    std::ofstream out(file);
    if (!out)
        throw ConfigError("cannot write config file: " + file.string());
    out << to_json().dump(2) << '\n';
}

} // namespace refsa
