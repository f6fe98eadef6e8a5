#include "refsa/commands.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace refsa {

namespace {

std::string fmt(double value) {
    std::ostringstream out;
    out << std::setprecision(12) << value;
    return out.str();
}

std::ofstream open_output(const std::filesystem::path& dir, const std::string& name) {
    std::filesystem::create_directories(dir);
    std::ofstream out(dir / name);
    if (!out)
        throw SimError("cannot write output file: " + (dir / name).string());
    return out;
}

void dump_effective_config(const ScenarioConfig& config,
                           const std::filesystem::path& dir) {
    config.save(dir / "effective_config.json");
}

} // namespace

void write_cycle_traces_csv(std::ostream& out, const std::vector<CycleTrace>& traces) {
    out << "cycle,kind,event,polarity,event_index\n";
    for (std::size_t i = 0; i < traces.size(); ++i) {
        const CycleTrace& trace = traces[i];
        for (const SignalEvent& e : trace.events) {
            out << i << ',' << (trace.kind == CycleKind::Read ? "read" : "write") << ','
                << signal_name(e.signal) << ',' << polarity_char(e.polarity) << ','
                << e.timestamp << '\n';
        }
    }
}

void write_transition_ledger_csv(std::ostream& out,
                                 const std::vector<TransitionRecord>& records) {
    out << "transition,energy_pJ,latency_ns\n";
    double energy = 0.0, latency = 0.0;
    for (const TransitionRecord& r : records) {
        out << r.source.name() << "->" << r.target.name() << ',' << fmt(r.energy_pj)
            << ',' << fmt(r.latency_ns) << '\n';
        energy += r.energy_pj;
        latency += r.latency_ns;
    }
    out << "total," << fmt(energy) << ',' << fmt(latency) << '\n';
}

void write_readouts_csv(std::ostream& out, const std::vector<ReadoutRecord>& readouts) {
    out << "cycle,row,col,raw_current_uA,quantized_state\n";
    for (const ReadoutRecord& r : readouts) {
        out << r.cycle_index << ',' << r.row << ',' << r.col << ','
            << fmt(r.raw_current_ua) << ',' << r.quantized.name() << '\n';
    }
}

void write_margin_csv(std::ostream& out, const std::vector<MarginEntry>& margins) {
    out << "pair,current_ratio,threshold_uA,upper_worst_low_uA,lower_worst_high_uA,"
           "worst_case_overlap\n";
    for (const MarginEntry& e : margins) {
        out << e.upper.name() << '/' << e.lower.name() << ',' << fmt(e.current_ratio)
            << ',' << fmt(e.threshold_ua) << ',' << fmt(e.upper_worst_low_ua) << ','
            << fmt(e.lower_worst_high_ua) << ',' << (e.overlap ? "yes" : "no") << '\n';
    }
}

void write_krinsky_csv(std::ostream& out, const KrinskyTrajectory& trajectory) {
    out << "step,state,action,beta,next_state\n";
    for (std::size_t i = 0; i < trajectory.steps.size(); ++i) {
        const KrinskyStep& s = trajectory.steps[i];
        out << i << ',' << s.before.name() << ',' << action_char(s.action) << ','
            << s.beta << ',' << s.after.name() << '\n';
    }
}

namespace {

int run_simulate(const ScenarioConfig& config, std::ostream& diagnostics) {
    if (!config.workload) {
        diagnostics << "error: empty workload\n";
        return kExitConfigError;
    }
    const WorkloadSpec& workload = *config.workload;

    // Validate the workload before touching the array.
    if (workload.kind == WorkloadSpec::Kind::Transitions) {
        if (workload.transitions.empty()) {
            diagnostics << "error: empty workload\n";
            return kExitConfigError;
        }
        for (const auto& [from, to] : workload.transitions) {
            (void)from;
            if (!to.is_resting()) {
                diagnostics << "error: S0 is not a resting state\n";
                return kExitConfigError;
            }
        }
    } else if (workload.kind == WorkloadSpec::Kind::Fsa) {
        if (!workload.fsa) {
            diagnostics << "error: fsa workload has no transition table\n";
            return kExitConfigError;
        }
        if (workload.inputs.empty()) {
            diagnostics << "error: empty workload\n";
            return kExitConfigError;
        }
    } else {
        diagnostics << "error: use the krinsky command for learning workloads\n";
        return kExitConfigError;
    }

    Crossbar crossbar(config.crossbar, config.table, config.profile, config.seed,
                      config.params);
    Controller controller(crossbar, config.effective_adc(), config.energy,
                          config.latency);

    const std::filesystem::path out_dir(config.out_dir);
    auto states_csv = open_output(out_dir, "states.csv");

    if (workload.kind == WorkloadSpec::Kind::Transitions) {
        states_csv << "step,source,target,device_state\n";
        int step = 0;
        for (const auto& [from, to] : workload.transitions) {
            const StateId actual = crossbar.cell(0, 0).state();
            if (actual != from) {
                diagnostics << "error: workload step " << step << " expects the cell in "
                            << from.name() << " but it is in " << actual.name() << '\n';
                return kExitExecutionError;
            }
            controller.execute_transition(0, 0, from, to);
            states_csv << step << ',' << from.name() << ',' << to.name() << ','
                       << crossbar.cell(0, 0).state().name() << '\n';
            ++step;
        }
    } else {
        states_csv << "step,input,state_index\n";
        MappedFsa fsa = MappedFsa::map(*workload.fsa, controller, config.encoding,
                                       config.rewrite);
        int step = 0;
        for (int symbol : workload.inputs) {
            const int state = fsa.step(symbol);
            states_csv << step << ',' << symbol << ',' << state << '\n';
            ++step;
        }
    }

    // Close the run with one read-back of the cell under test.
    const StateId readback = controller.read_state(0, 0);

    auto cycles_csv = open_output(out_dir, "cycles.csv");
    write_cycle_traces_csv(cycles_csv, controller.trace_log());
    auto ledger_csv = open_output(out_dir, "ledger.csv");
    write_transition_ledger_csv(ledger_csv, controller.transitions());
    auto readouts_csv = open_output(out_dir, "readouts.csv");
    write_readouts_csv(readouts_csv, controller.readouts());

    const WorkloadStats stats = workload_report(controller);
    auto summary = open_output(out_dir, "summary.txt");
    summary << stats.summary_text();
    summary << "final read-back of cell (0, 0): " << readback.name() << '\n';
    dump_effective_config(config, out_dir);
    return kExitOk;
}

int run_montecarlo(const ScenarioConfig& config, std::ostream& diagnostics) {
    (void)diagnostics;
    const DetectionReport report = run_detection_mc(config.monte_carlo());
    const std::filesystem::path out_dir(config.out_dir);
    auto report_csv = open_output(out_dir, "detection_report.csv");
    report.write_csv(report_csv);
    auto margins_csv = open_output(out_dir, "margin_report.csv");
    write_margin_csv(margins_csv, report.margins);
    auto summary = open_output(out_dir, "summary.txt");
    summary << report.summary_text();
    dump_effective_config(config, out_dir);
    return kExitOk;
}

int run_krinsky_cmd(const ScenarioConfig& config, std::ostream& diagnostics) {
    if (!config.workload || config.workload->kind != WorkloadSpec::Kind::Krinsky ||
        !config.workload->krinsky_env) {
        diagnostics << "error: missing krinsky environment probabilities\n";
        return kExitConfigError;
    }
    const WorkloadSpec& workload = *config.workload;

    Crossbar crossbar(config.crossbar, config.table, config.profile, config.seed,
                      config.params);
    Controller controller(crossbar, config.effective_adc(), config.energy,
                          config.latency);
    const KrinskyTrajectory trajectory =
        run_krinsky(controller, 0, 0, *workload.krinsky_env, workload.krinsky_steps,
                    config.seed, workload.krinsky_initial);

    const std::filesystem::path out_dir(config.out_dir);
    auto trajectory_csv = open_output(out_dir, "trajectory.csv");
    write_krinsky_csv(trajectory_csv, trajectory);
    auto summary = open_output(out_dir, "summary.txt");
    summary << "krinsky run: " << trajectory.steps.size() << " steps\n"
            << "  fraction selecting action A: " << fmt(trajectory.fraction_action_a())
            << '\n'
            << "  final state: " << trajectory.steps.back().after.name() << '\n'
            << workload_report(controller).summary_text();
    dump_effective_config(config, out_dir);
    return kExitOk;
}

int run_report(const ScenarioConfig& config, std::ostream& diagnostics) {
    (void)diagnostics;
    const std::filesystem::path out_dir(config.out_dir);
    auto margins_csv = open_output(out_dir, "margin_report.csv");
    const std::vector<MarginEntry> margins = margin_report(config.table, config.profile);
    write_margin_csv(margins_csv, margins);

    auto energy_csv = open_output(out_dir, "energy_table.csv");
    energy_csv << "transition,route,energy_pJ,latency_ns\n";
    for (StateId target : resting_states()) {
        if (auto direct = config.energy.direct_entry(target)) {
            energy_csv << "S0->" << target.name() << ",direct," << fmt(*direct) << ','
                       << fmt(config.latency.write_latency_ns(1)) << '\n';
        }
        if (auto via = config.energy.via_entry(target)) {
            energy_csv << "any->" << target.name() << ",via_S0," << fmt(*via) << ','
                       << fmt(config.latency.write_latency_ns(2)) << '\n';
        }
    }

    auto summary = open_output(out_dir, "summary.txt");
    summary << "calibration margins:\n";
    for (const MarginEntry& e : margins) {
        summary << "  " << e.upper.name() << '/' << e.lower.name() << ": ratio "
                << fmt(e.current_ratio) << ", threshold " << fmt(e.threshold_ua)
                << " uA" << (e.overlap ? "  ** worst-case overlap **" : "") << '\n';
    }
    dump_effective_config(config, out_dir);
    return kExitOk;
}

template <typename Fn>
int guarded(Fn&& fn, const ScenarioConfig& config, std::ostream& diagnostics) {
    try {
        return fn(config, diagnostics);
    } catch (const ConfigError& e) {
        diagnostics << "error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const std::exception& e) {
        diagnostics << "error: " << e.what() << '\n';
        return kExitExecutionError;
    }
}

} // namespace

int cmd_simulate(const ScenarioConfig& config, std::ostream& diagnostics) {
    return guarded(run_simulate, config, diagnostics);
}

int cmd_montecarlo(const ScenarioConfig& config, std::ostream& diagnostics) {
    return guarded(run_montecarlo, config, diagnostics);
}

int cmd_krinsky(const ScenarioConfig& config, std::ostream& diagnostics) {
    return guarded(run_krinsky_cmd, config, diagnostics);
}

int cmd_report(const ScenarioConfig& config, std::ostream& diagnostics) {
    return guarded(run_report, config, diagnostics);
}

} // namespace refsa
