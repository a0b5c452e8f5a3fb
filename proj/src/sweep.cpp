#include "qtt/sweep.hpp"

#include "qtt/rng.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#ifndef QTT_VERSION
#define QTT_VERSION "unknown"
#endif

namespace qtt {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

const char* policy_name(ZeroFrequencyPolicy p) {
    return p == ZeroFrequencyPolicy::kDrop ? "drop" : "ohmic-limit";
}

std::string pad_index(std::uint64_t i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04llu", static_cast<unsigned long long>(i));
    return buf;
}

std::vector<SweepRecord> evaluate_item(const SweepConfig& cfg, const ModelSpec& spec,
                                       const InitialStateEntry& state, double t_b, std::string& error) {
    const StencilConfig stencil{cfg.h};
    std::vector<SweepRecord> rows;
    auto base_row = [&](std::optional<double> t) {
        SweepRecord r;
        r.scenario = cfg.scenario;
        r.state_id = state.id;
        r.cls = state.cls;
        r.seed = state.seed;
        r.t_b = t_b;
        r.t = t;
        return r;
    };
    try {
        const Protocol protocol =
            cfg.steady ? Protocol::steady() : Protocol::transient(density_of(state.psi), IntegratorConfig{cfg.dt});
        for (const auto& point : evaluate_stencil(spec, protocol, t_b, cfg.times, stencil)) {
            const auto amp = amplification_from(point, t_b, stencil);
            SweepRecord r = base_row(point.time);
            const auto& j = point.currents[2];
            r.j_a = j.a;
            r.j_b = j.b;
            r.j_c = j.c;
            r.alpha_a = amp.alpha_a;
            r.alpha_c = amp.alpha_c;
            r.djb_dtb = amp.djb_dtb;
            r.diverged = amp.diverged;
            r.alpha_gap = amp.diverged ? kNaN : alpha_gap(amp);
            if (cfg.identity_columns) {
                const auto id = identity_residual_from(point, stencil);
                r.identity = IdentityColumns{id.lhs, id.rhs, id.residual};
            }
            rows.push_back(std::move(r));
        }
    } catch (const std::exception& e) {
        error = e.what();
        rows.clear();
        std::vector<std::optional<double>> ts;
        if (cfg.steady) {
            ts.emplace_back();
        } else {
            for (double t : cfg.times) ts.emplace_back(t);
        }
        for (const auto& t : ts) {
            SweepRecord r = base_row(t);
            r.j_a = r.j_b = r.j_c = r.alpha_a = r.alpha_c = r.djb_dtb = r.alpha_gap = kNaN;
            if (cfg.identity_columns) r.identity = IdentityColumns{kNaN, kNaN, kNaN};
            rows.push_back(std::move(r));
        }
    }
    return rows;
}

bool record_less(const SweepRecord& a, const SweepRecord& b) {
    if (a.state_id != b.state_id) return a.state_id < b.state_id;
    const double ta = a.t.value_or(std::numeric_limits<double>::infinity());
    const double tb = b.t.value_or(std::numeric_limits<double>::infinity());
    if (ta != tb) return ta < tb;
    return a.t_b < b.t_b;
}

std::string join(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += format_double(v[i]);
    }
    return s;
}

}  // namespace

ModelSpec SweepConfig::model_spec() const {
    ModelSpec s;
    s.coupling = coupling;
    s.t_a = t_a;
    s.t_c = t_c;
    s.t_b = tb_grid.empty() ? 0.08 : tb_grid.front();
    s.kappa = kappa;
    s.zero_frequency = zero_frequency;
    return s;
}

void SweepConfig::validate() const {
    if (scenario.empty()) throw std::invalid_argument("config: scenario name is empty");
    if (!(t_a > 0.0) || !(t_c > 0.0)) throw std::invalid_argument("config: temperatures must be positive");
    if (!(h > 0.0)) throw std::invalid_argument("config: stencil h must be positive");
    if (!(dt > 0.0)) throw std::invalid_argument("config: dt must be positive");
    if (!(kappa >= 0.0)) throw std::invalid_argument("config: kappa must be non-negative");
    if (tb_grid.empty()) throw std::invalid_argument("config: T_B grid is empty");
    for (double tb : tb_grid) {
        if (!(tb - 2.0 * h > 0.0) || !std::isfinite(tb)) {
            throw std::invalid_argument("config: every T_B must exceed 2h (got " + format_double(tb) + ")");
        }
    }
    if (!steady) {
        if (times.empty()) throw std::invalid_argument("config: time list is empty");
        for (std::size_t i = 0; i < times.size(); ++i) {
            if (!(times[i] >= 0.0) || !std::isfinite(times[i])) throw std::invalid_argument("config: times must be >= 0");
            if (i > 0 && !(times[i] > times[i - 1])) throw std::invalid_argument("config: times must increase");
        }
        if (states.empty()) throw std::invalid_argument("config: no initial states");
        if (dt > max_stable_dt(TransistorModel(model_spec()))) {
            throw std::invalid_argument("config: dt exceeds the integrator stability bound");
        }
    }
    if (jobs < 0) throw std::invalid_argument("config: jobs must be >= 0");
}

std::vector<InitialStateEntry> expand_states(const std::vector<std::string>& tokens, std::uint64_t master_seed) {
    std::vector<InitialStateEntry> out;
    for (const auto& tok : tokens) {
        if (tok.rfind("random:", 0) == 0) {
            const auto second = tok.find(':', 7);
            if (second == std::string::npos) throw std::invalid_argument("bad random state token: " + tok);
            const std::string cls_name = tok.substr(7, second - 7);
            const std::string count_text = tok.substr(second + 1);
            std::size_t used = 0;
            long long count = -1;
            try {
                count = std::stoll(count_text, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != count_text.size() || count <= 0) throw std::invalid_argument("bad random state count: " + tok);
            std::vector<StateClass> classes;
            if (cls_name == "all") {
                classes.assign(kScanClasses.begin(), kScanClasses.end());
            } else {
                classes.push_back(parse_state_class(cls_name));
            }
            for (auto cls : classes) {
                for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(count); ++i) {
                    const auto seed = scan_seed(master_seed, cls, i);
                    out.push_back({to_string(cls) + "-" + pad_index(i), to_string(cls), seed, sample_random(cls, seed)});
                }
            }
            continue;
        }
        if (!tok.empty() && tok.back() == '\'') {
            const auto ex = parse_example(tok);
            out.push_back({to_string(ex), "example", 0, example_state(ex)});
            continue;
        }
        const auto p = parse_paradigm(tok);
        out.push_back({to_string(p), "paradigm", 0, paradigm_state(p)});
    }
    return out;
}

SweepResult run_sweep(const SweepConfig& cfg, Execution exec) {
    cfg.validate();
    const auto start = std::chrono::steady_clock::now();
    std::vector<InitialStateEntry> states;
    if (cfg.steady) {
        states.push_back({"steady", "steady", 0, PureState{}});
    } else {
        states = expand_states(cfg.states, cfg.master_seed);
    }
    const ModelSpec spec = cfg.model_spec();
    const std::size_t n_tb = cfg.tb_grid.size();
    const auto n_items = static_cast<long long>(states.size() * n_tb);

    std::vector<std::vector<SweepRecord>> rows(static_cast<std::size_t>(n_items));
    std::vector<std::string> errors(static_cast<std::size_t>(n_items));

    int threads = 1;
    if (exec == Execution::kParallel) {
#ifdef _OPENMP
        threads = cfg.jobs > 0 ? cfg.jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
#endif
        for (long long i = 0; i < n_items; ++i) {
            const auto k = static_cast<std::size_t>(i);
            rows[k] = evaluate_item(cfg, spec, states[k / n_tb], cfg.tb_grid[k % n_tb], errors[k]);
        }
    } else {
        for (long long i = 0; i < n_items; ++i) {
            const auto k = static_cast<std::size_t>(i);
            rows[k] = evaluate_item(cfg, spec, states[k / n_tb], cfg.tb_grid[k % n_tb], errors[k]);
        }
    }

    SweepResult result;
    result.threads = threads;
    for (std::size_t k = 0; k < rows.size(); ++k) {
        for (auto& r : rows[k]) result.records.push_back(std::move(r));
        if (!errors[k].empty()) result.failures.push_back({states[k / n_tb].id, cfg.tb_grid[k % n_tb], errors[k]});
    }
    std::sort(result.records.begin(), result.records.end(), record_less);
    result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<std::string> csv_columns(bool identity_columns) {
    std::vector<std::string> cols{"scenario", "state_id", "class",   "seed",    "T_B",      "t",       "J_A",
                                  "J_B",      "J_C",      "alpha_A", "alpha_C", "dJB_dTB", "diverged", "alpha_gap"};
    if (identity_columns) {
        cols.insert(cols.end(), {"identity_lhs", "identity_rhs", "identity_residual"});
    }
    return cols;
}

void write_csv(std::ostream& os, const std::vector<SweepRecord>& records, bool identity_columns) {
    os << "# qtt " << kCsvSchema << (identity_columns ? "+identity" : "") << '\n';
    const auto cols = csv_columns(identity_columns);
    for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
    os << '\n';
    for (const auto& r : records) {
        os << r.scenario << ',' << r.state_id << ',' << r.cls << ',' << r.seed << ',' << format_double(r.t_b) << ','
           << (r.t ? format_double(*r.t) : std::string("steady")) << ',' << format_double(r.j_a) << ','
           << format_double(r.j_b) << ',' << format_double(r.j_c) << ',' << format_double(r.alpha_a) << ','
           << format_double(r.alpha_c) << ',' << format_double(r.djb_dtb) << ',' << (r.diverged ? 1 : 0) << ','
           << format_double(r.alpha_gap);
        if (identity_columns) {
            const auto id = r.identity.value_or(IdentityColumns{kNaN, kNaN, kNaN});
            os << ',' << format_double(id.lhs) << ',' << format_double(id.rhs) << ',' << format_double(id.residual);
        }
        os << '\n';
    }
}

std::vector<double> grid_sign_changes(const std::vector<SweepRecord>& records) {
    std::vector<double> roots;
    const SweepRecord* prev = nullptr;
    for (const auto& r : records) {
        if (r.t.has_value() || std::isnan(r.djb_dtb)) {
            prev = nullptr;
            continue;
        }
        if (prev != nullptr && prev->state_id == r.state_id && (prev->djb_dtb < 0.0) != (r.djb_dtb < 0.0)) {
            const double w = prev->djb_dtb / (prev->djb_dtb - r.djb_dtb);
            roots.push_back(prev->t_b + w * (r.t_b - prev->t_b));
        }
        prev = &r;
    }
    return roots;
}

void write_manifest(std::ostream& os, const SweepConfig& cfg, const SweepResult& result, Execution exec) {
    const std::time_t now = std::time(nullptr);
    char stamp[64];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    const auto spec = cfg.model_spec();
    const auto h_eq = build_hamiltonian(spec.coupling);
    // Spectrum of the alternate reading: only the C-A coupling, at strength 2.
    const auto h_alt = build_hamiltonian(CouplingConfig{0.0, 0.0, 2.0});
    auto diag = [](const Hamiltonian& h) {
        std::vector<double> v(h.diag.data(), h.diag.data() + kDim);
        return v;
    };

    os << "[run]\n"
       << "scenario = " << cfg.scenario << '\n'
       << "timestamp = " << stamp << '\n'
       << "code_version = " << QTT_VERSION << '\n'
       << "execution = " << (exec == Execution::kParallel ? "parallel" : "serial") << '\n'
       << "threads = " << result.threads << '\n'
       << "rows = " << result.records.size() << '\n'
       << "failures = " << result.failures.size() << '\n'
       << "seconds = " << result.seconds << '\n'
       << "csv_schema = " << kCsvSchema << (cfg.identity_columns ? "+identity" : "") << '\n';
    os << "\n[model]\n"
       << "omega_ab = " << format_double(spec.coupling.omega_ab) << '\n'
       << "omega_bc = " << format_double(spec.coupling.omega_bc) << '\n'
       << "omega_ca = " << format_double(spec.coupling.omega_ca) << '\n'
       << "t_a = " << format_double(cfg.t_a) << '\n'
       << "t_c = " << format_double(cfg.t_c) << '\n'
       << "kappa = " << format_double(cfg.kappa) << '\n'
       << "spectral_density = ohmic\n"
       << "zero_frequency = " << policy_name(cfg.zero_frequency) << '\n'
       << "energies = " << join(diag(h_eq)) << '\n'
       << "energies_alternate_ca2 = " << join(diag(h_alt)) << '\n';
    os << "\n[numerics]\n"
       << "integrator = rk4-fixed-step\n"
       << "dt = " << format_double(cfg.dt) << '\n'
       << "stencil = five-point-midpoint\n"
       << "h = " << format_double(cfg.h) << '\n'
       << "divergence_threshold = " << format_double(kDivergenceThreshold) << '\n';
    os << "\n[rng]\n"
       << "generator = " << kRngIdentity << '\n'
       << "master_seed = " << cfg.master_seed << '\n';
    os << "\n[grid]\n"
       << "mode = " << (cfg.steady ? "steady" : "transient") << '\n'
       << "t_b_points = " << cfg.tb_grid.size() << '\n'
       << "t_b_min = " << format_double(cfg.tb_grid.front()) << '\n'
       << "t_b_max = " << format_double(cfg.tb_grid.back()) << '\n';
    if (!cfg.steady) {
        os << "times = " << join(cfg.times) << '\n';
        os << "states = ";
        for (std::size_t i = 0; i < cfg.states.size(); ++i) os << (i ? ", " : "") << cfg.states[i];
        os << '\n';
    }
    if (cfg.steady) {
        const auto roots = grid_sign_changes(result.records);
        os << "\n[divergence]\n"
           << "sign_changes = " << join(roots) << '\n'
           << "target = 0.12\n"
           << "target_tolerance = 0.03\n";
        if (roots.size() == 1) {
            os << "deviation_from_target = " << format_double(roots.front() - 0.12) << '\n';
        }
    }
    os << "\n[failures]\n";
    for (std::size_t i = 0; i < result.failures.size(); ++i) {
        const auto& f = result.failures[i];
        os << "failure_" << i << " = " << f.state_id << " @ T_B=" << format_double(f.t_b) << ": " << f.message << '\n';
    }
}

RunOutput run_scenario(const SweepConfig& cfg, Execution exec) {
    cfg.validate();
    std::filesystem::create_directories(cfg.out_dir);
    RunOutput out;
    out.csv = cfg.out_dir / (cfg.scenario + ".csv");
    out.manifest = cfg.out_dir / (cfg.scenario + ".manifest");
    out.result = run_sweep(cfg, exec);
    {
        std::ofstream f(out.csv);
        if (!f) throw std::runtime_error("cannot write " + out.csv.string());
        write_csv(f, out.result.records, cfg.identity_columns);
    }
    {
        std::ofstream f(out.manifest);
        if (!f) throw std::runtime_error("cannot write " + out.manifest.string());
        write_manifest(f, cfg, out.result, exec);
    }
    return out;
}

}  // namespace qtt
