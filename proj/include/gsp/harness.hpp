#pragma once

// Experiment orchestration: probe preparation -> evolution -> tomography ->
// cumulant inversion -> (integral | differential) coefficient extraction ->
// Shannon reconstruction -> comparison report, plus the published-figure
// replication driver.

#include <cstdint>
#include <cstring>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gsp/core.hpp"
#include "gsp/csv.hpp"
#include "gsp/differential_recon.hpp"
#include "gsp/dynamics.hpp"
#include "gsp/errors.hpp"
#include "gsp/integral_recon.hpp"
#include "gsp/qbm_ohmic.hpp"
#include "gsp/quadrature.hpp"
#include "gsp/sampling.hpp"
#include "gsp/tomography.hpp"

namespace gsp::harness {

constexpr const char* kVersion = "1.0.0";

enum class Approach { integral, differential };
enum class CaseMode { case1, case2 };
enum class BwCriterion { peak, integral };

struct ExperimentConfig {
    std::string preset = "markovian"; ///< markovian | non-markovian | custom
    double alpha = 0.1;
    double omega_c = 10.0;
    double temperature = 10.0;

    Approach approach = Approach::integral;
    CaseMode case_mode = CaseMode::case1;
    double bw_threshold = 1e-3;
    BwCriterion bw_criterion = BwCriterion::peak;

    double tbar = -1.0;        ///< default 12/omega_c
    double xi = -1.0;          ///< default 2/omega_c
    double dt = -1.0;          ///< finite-difference step, default 1e-3/omega_c
    double noise_sigma = 0.0;
    std::uint64_t seed = 12345;
    bool oracle_cumulants = false;
    double verdict_bound = 0.05;
    std::string out_dir;

    /// When set, the simulated system uses this cut-off while the assumed
    /// theory keeps omega_c (consistency-test mode).
    std::optional<double> actual_omega_c;

    std::size_t pilot_n = 4096; ///< Case-II pilot grid size

    /// When set (exponential | gamma | delta), Case II emits an
    /// additive-random sampling plan plus the alias-free verdict instead of
    /// a Shannon reconstruction.
    std::string random_dist;
    double random_shape_k = 2.0;

    void finalize() {
        if (preset == "markovian") {
            alpha = 0.1; omega_c = 10.0; temperature = 10.0;
        } else if (preset == "non-markovian") {
            alpha = 0.1; omega_c = 0.1; temperature = 10.0;
        } else if (preset != "custom") {
            throw ConfigError("unknown preset: " + preset);
        }
        if (tbar <= 0.0) tbar = 12.0 / omega_c;
        if (xi < 0.0) xi = 2.0 / omega_c;
        if (dt <= 0.0) dt = 1e-3 / omega_c;
        if (!(tbar > xi)) throw ConfigError("config: need tbar > xi");
        if (!(dt < tbar / 100.0)) throw ConfigError("config: need dt < tbar/100");
        if (!(dt <= 0.1 / omega_c))
            throw ConfigError("config: dt must not exceed 0.1/omega_c (transient resolution)");
        if (!(bw_threshold > 0.0 && bw_threshold < 1.0))
            throw ConfigError("config: bw_threshold must be in (0, 1)");
        if (noise_sigma < 0.0) throw ConfigError("config: noise_sigma must be >= 0");
    }

    qbm::OhmicParams assumed() const { return {alpha, omega_c, temperature}; }
    qbm::OhmicParams actual() const {
        auto p = assumed();
        if (actual_omega_c) p.omega_c = *actual_omega_c;
        return p;
    }

    std::string canonical() const {
        std::ostringstream os;
        os << preset << '|' << csv::fmt(alpha, 17) << '|' << csv::fmt(omega_c, 17) << '|'
           << csv::fmt(temperature, 17) << '|' << int(approach) << '|' << int(case_mode) << '|'
           << csv::fmt(bw_threshold, 17) << '|' << int(bw_criterion) << '|' << csv::fmt(tbar, 17)
           << '|' << csv::fmt(xi, 17) << '|' << csv::fmt(dt, 17) << '|'
           << csv::fmt(noise_sigma, 17) << '|' << seed << '|' << oracle_cumulants << '|'
           << csv::fmt(verdict_bound, 17) << '|'
           << (actual_omega_c ? csv::fmt(*actual_omega_c, 17) : std::string("-")) << '|'
           << pilot_n;
        return os.str();
    }
};

inline std::string fnv1a_hex(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

struct CoefficientCurve {
    std::string name; ///< capital_lambda | lambda | delta | dqq | dpp | dqp
    std::vector<double> plan_times;
    std::vector<double> plan_values;
    std::vector<double> grid_times;   ///< dense grid on the trusted window
    std::vector<double> recon_values;
    std::vector<double> theory_values; ///< empty when no theory is assumed
    double bandwidth_w = 0.0;
    std::size_t n_points = 0;
    double rms_rel = 0.0; ///< ||recon - theory||_2 / ||theory||_2 on trusted window
    double max_rel = 0.0; ///< max |recon - theory| / max |theory|
};

/// Raw per-grid-point record of the integral route (for CSV export).
struct IntegralSeriesTable {
    std::vector<double> times;
    std::vector<double> lambda_capital;
    std::vector<Vec3> rhs;
    std::vector<Vec3> dtilde;
};

/// Raw pointwise estimates of the differential route (for CSV export).
struct DifferentialSeriesTable {
    differential::DifferentialSeries series;
};

struct SpectrumTable {
    std::string name;
    std::vector<double> s;
    std::vector<double> magnitude;
};

struct ReconReport {
    std::string schema = "gsp-recon-report/1";
    std::string version = kVersion;
    ExperimentConfig config;
    std::string config_hash;
    std::vector<CoefficientCurve> curves;
    std::string verdict = "N/A"; ///< PASS | FAIL | N/A (no theory)
    double worst_rms_rel = 0.0;

    // raw series and spectra, exported as CSV but not carried in the JSON
    std::optional<IntegralSeriesTable> integral_series;
    std::optional<DifferentialSeriesTable> differential_series;
    std::vector<SpectrumTable> spectra;
};

// ---------------------------------------------------------------------------
// cumulant sources

/// Default probe: displaced (coherent-like) state with both dimensionless
/// first-moment components nonzero, so either component can drive the
/// integral route and the two-component cross-check is active. The
/// displacement sets the signal-to-noise of the friction extraction
/// (dLambda ~ d|S| / |S|), so it is kept a few vacuum widths out.
inline GaussianState default_probe() { return GaussianState{2.0, 2.0, 0.5, 0.5, 0.0}; }

inline HamiltonianParams benchmark_hamiltonian() { return HamiltonianParams{1.0, 1.0, 0.0}; }

/// Exact cumulants of the simulated system at time t.
inline GaussianState oracle_state(const qbm::OhmicParams& sys, const HamiltonianParams& hp,
                                  const GaussianState& probe, double t) {
    if (t == 0.0) return probe;
    const auto mec = qbm::mecs(sys);
    const auto traj = evolve_exact(probe, mec,
                                   [sys](double u) { return qbm::capital_lambda_theor(sys, u); },
                                   hp, {t});
    return traj.states.front();
}

/// Measurement chain on top of the oracle truth; deterministic per (seed, t).
class StateSourceImpl {
public:
    StateSourceImpl(qbm::OhmicParams sys, HamiltonianParams hp, GaussianState probe,
                    bool oracle, double noise_sigma, std::uint64_t seed)
        : sys_(sys), hp_(hp), probe_(probe), oracle_(oracle), sigma_(noise_sigma), seed_(seed) {}

    GaussianState operator()(double t) const {
        auto it = cache_.find(t);
        if (it != cache_.end()) return it->second;
        GaussianState truth = oracle_state(sys_, hp_, probe_, t);
        GaussianState result = truth;
        if (!oracle_ && t > 0.0) {
            // the t = 0 state is known by preparation, not measured
            std::uint64_t s = seed_;
            std::uint64_t tb;
            static_assert(sizeof(double) == sizeof(std::uint64_t));
            std::memcpy(&tb, &t, sizeof(tb));
            s ^= tb + 0x9e3779b97f4a7c15ull + (s << 6) + (s >> 2);
            // pilot tomograms centered on the free-rotation prediction of
            // the prepared probe (known Hamiltonian, unknown dissipation)
            const Vec2 pred = expM(hp_, t) * CumulantVectors::from_state(probe_, hp_).s;
            const auto c = CumulantVectors{pred, {0, 0, 0}}.to_state(hp_);
            result = tomo::measure_state(truth, sigma_, s, nullptr, c.mean_q, c.mean_p);
        }
        cache_.emplace(t, result);
        return result;
    }

private:
    qbm::OhmicParams sys_;
    HamiltonianParams hp_;
    GaussianState probe_;
    bool oracle_;
    double sigma_;
    std::uint64_t seed_;
    mutable std::map<double, GaussianState> cache_;
};

// ---------------------------------------------------------------------------
// bandwidth helpers

/// Outward-growing scan for the effective bandwidth of a closed-form
/// spectrum magnitude; doubles the range until the crossing is interior.
/// The integral criterion needs a definite band to normalize against (the
/// restricted coefficients have 1/s spectral tails whose area diverges
/// logarithmically), so its quantile is taken over four times the
/// peak-criterion band.
inline double bandwidth_of(const std::function<double(double)>& mag, double threshold,
                           BwCriterion crit, double s_seed) {
    double s_hi = s_seed;
    double w_peak = 0.0;
    for (int k = 0; k < 14; ++k) {
        w_peak = sampling::effective_bandwidth_scan(mag, s_hi, threshold);
        if (2.0 * M_PI * w_peak < 0.95 * s_hi) break;
        s_hi *= 4.0;
        if (k == 13) throw Error("bandwidth_of: threshold crossing not found within the scan cap");
    }
    if (crit == BwCriterion::peak) return w_peak;
    return sampling::effective_bandwidth_integral(mag, 4.0 * 2.0 * M_PI * w_peak, threshold);
}

/// Assemble a sampled function from plan measurements plus the known t = 0
/// ordinate, with support/trusted metadata.
inline sampling::SampledFunction make_sampled(double t0_value, const std::vector<double>& plan,
                                              const std::vector<double>& values, double w,
                                              double tbar, double xi) {
    sampling::SampledFunction f;
    f.times.reserve(plan.size() + 1);
    f.values.reserve(plan.size() + 1);
    f.times.push_back(0.0);
    f.values.push_back(t0_value);
    f.times.insert(f.times.end(), plan.begin(), plan.end());
    f.values.insert(f.values.end(), values.begin(), values.end());
    f.bandwidth_w = w;
    sampling::restrict_and_window(f, tbar, xi);
    f.validate();
    return f;
}

inline void finish_curve(CoefficientCurve& c, const sampling::SampledFunction& f,
                         const std::function<double(double)>& theory, bool has_theory,
                         std::size_t grid_n = 1201) {
    c.grid_times.resize(grid_n);
    c.recon_values.resize(grid_n);
    if (has_theory) c.theory_values.resize(grid_n);
    const double hi = f.trusted_hi;
    double s_rr = 0.0, s_tt = 0.0, mx_d = 0.0, mx_t = 0.0;
    for (std::size_t i = 0; i < grid_n; ++i) {
        const double t = hi * double(i) / double(grid_n - 1);
        c.grid_times[i] = t;
        c.recon_values[i] = sampling::shannon_reconstruct(f, t);
        if (has_theory) {
            const double th = theory(t);
            c.theory_values[i] = th;
            const double d = c.recon_values[i] - th;
            s_rr += d * d;
            s_tt += th * th;
            mx_d = std::max(mx_d, std::abs(d));
            mx_t = std::max(mx_t, std::abs(th));
        }
    }
    if (has_theory && s_tt > 0.0) {
        c.rms_rel = std::sqrt(s_rr / s_tt);
        c.max_rel = mx_d / mx_t;
    }
}

// ---------------------------------------------------------------------------
// Case I

/// Case I: assumed theory supplies the spectra; the reconstruction is
/// compared back against it and the verdict states whether the assumed
/// model is consistent with the (simulated) measurements.
inline ReconReport run_case1(const ExperimentConfig& cfg_in) {
    ExperimentConfig cfg = cfg_in;
    cfg.finalize();

    const auto assumed = cfg.assumed();
    const auto actual = cfg.actual();
    const auto hp = benchmark_hamiltonian();
    const auto probe = default_probe();
    const StateSourceImpl source(actual, hp, probe, cfg.oracle_cumulants || cfg.noise_sigma == 0.0,
                                 cfg.noise_sigma, cfg.seed);

    ReconReport rep;
    rep.config = cfg;
    rep.config_hash = fnv1a_hex(cfg.canonical());

    const double s_seed = 64.0 * std::max(1.0, cfg.omega_c);
    const double L = cfg.tbar;

    auto run_coeff = [&](const std::string& name, const std::function<double(double)>& spec_mag,
                         const std::function<double(double)>& theory,
                         const std::function<std::vector<double>(const std::vector<double>&)>&
                             measure_at) {
        CoefficientCurve c;
        c.name = name;
        c.bandwidth_w = bandwidth_of(spec_mag, cfg.bw_threshold, cfg.bw_criterion, s_seed);
        c.plan_times = sampling::uniform_plan(c.bandwidth_w, L);
        if (c.plan_times.size() > 200000)
            throw ConfigError("run_case1: measurement plan exceeds 200000 points; "
                              "raise bw_threshold");
        c.n_points = c.plan_times.size();
        c.plan_values = measure_at(c.plan_times);
        const auto f = make_sampled(0.0, c.plan_times, c.plan_values, c.bandwidth_w, L, cfg.xi);
        finish_curve(c, f, theory, true);

        SpectrumTable st;
        st.name = name;
        const double s_hi = 1.2 * 2.0 * M_PI * c.bandwidth_w;
        for (int i = 0; i <= 1200; ++i) {
            st.s.push_back(s_hi * i / 1200.0);
            st.magnitude.push_back(spec_mag(st.s.back()));
        }
        rep.spectra.push_back(std::move(st));
        rep.curves.push_back(std::move(c));
    };

    if (cfg.approach == Approach::integral) {
        run_coeff(
            "capital_lambda",
            [&](double s) { return std::abs(qbm::fourier_capital_lambda(assumed, L, s)); },
            [&](double t) { return qbm::capital_lambda_theor(assumed, t); },
            [&](const std::vector<double>& plan) {
                std::vector<double> times{0.0};
                times.insert(times.end(), plan.begin(), plan.end());
                std::vector<GaussianState> states;
                states.reserve(times.size());
                for (double t : times) states.push_back(source(t));
                integral::LambdaExptOptions opt;
                opt.cross_tol = std::max(1e-6, 50.0 * cfg.noise_sigma);
                const auto series = integral::lambda_capital_expt(times, states, hp, opt);

                // the same measurements feed the diffusion integral record
                const auto record = integral::diffusion_rhs(times, states, series, hp);
                IntegralSeriesTable tab;
                tab.times = times;
                tab.lambda_capital = series.values;
                tab.rhs = record.rhs;
                tab.dtilde = record.dtilde;
                rep.integral_series = std::move(tab);

                return std::vector<double>(series.values.begin() + 1, series.values.end());
            });
    } else {
        differential::FiniteDiffConfig fd{cfg.dt, differential::Scheme::forward};
        auto src = [&](double t) { return source(t); };
        run_coeff(
            "lambda", [&](double s) { return std::abs(qbm::fourier_lambda_small(assumed, L, s)); },
            [&](double t) { return qbm::lambda_theor(assumed, t); },
            [&](const std::vector<double>& plan) {
                const auto series = differential::reconstruct_differential(src, fd, plan, hp);
                return series.lambda;
            });
        run_coeff(
            "delta", [&](double s) { return std::abs(qbm::fourier_delta(assumed, L, s)); },
            [&](double t) { return qbm::delta_theor(assumed, t); },
            [&](const std::vector<double>& plan) {
                const auto series = differential::reconstruct_differential(src, fd, plan, hp);
                rep.differential_series = DifferentialSeriesTable{series};
                return series.delta;
            });
    }

    rep.worst_rms_rel = 0.0;
    for (const auto& c : rep.curves) rep.worst_rms_rel = std::max(rep.worst_rms_rel, c.rms_rel);
    rep.verdict = rep.worst_rms_rel <= cfg.verdict_bound ? "PASS" : "FAIL";
    return rep;
}

// ---------------------------------------------------------------------------
// Case II

/// Case II: no assumed theory. A dense differential pilot supplies discrete
/// spectra, bandwidths come from those, and the report carries no theory
/// columns unless `validate_against_benchmark` is set (hidden ground truth).
inline ReconReport run_case2(const ExperimentConfig& cfg_in, bool validate_against_benchmark = false) {
    ExperimentConfig cfg = cfg_in;
    cfg.finalize();

    const auto actual = cfg.actual();
    const auto hp = benchmark_hamiltonian();
    const auto probe = default_probe();
    const StateSourceImpl source(actual, hp, probe, cfg.oracle_cumulants || cfg.noise_sigma == 0.0,
                                 cfg.noise_sigma, cfg.seed);

    ReconReport rep;
    rep.config = cfg;
    rep.config_hash = fnv1a_hex(cfg.canonical());

    // pilot pass on a dense uniform grid
    const std::size_t pn = std::max<std::size_t>(cfg.pilot_n, 4096);
    std::vector<double> pilot_times(pn);
    const double hpilot = cfg.tbar / double(pn - 1);
    for (std::size_t i = 0; i < pn; ++i) pilot_times[i] = double(i) * hpilot;

    differential::FiniteDiffConfig fd{cfg.dt, differential::Scheme::forward};
    auto src = [&](double t) { return source(t); };
    const auto pilot = differential::reconstruct_differential(src, fd, pilot_times, hp);

    const double nyquist = M_PI / hpilot;

    auto run_coeff = [&](const std::string& name, const std::vector<double>& pilot_vals,
                         const std::function<double(double)>& theory, bool has_theory,
                         const std::function<std::vector<double>(const std::vector<double>&)>&
                             measure_at) {
        // an identically-zero pilot series has no spectrum at all:
        // constant-zero coefficient, minimal plan
        double w = 0.0;
        try {
            const auto spec = sampling::discrete_spectrum(pilot_vals, cfg.tbar, 64.0 * cfg.tbar);
            w = sampling::effective_bandwidth(spec, cfg.bw_threshold);
        } catch (const EmptySpectrum&) {
        }
        if (2.0 * M_PI * w > 0.5 * nyquist)
            throw PilotTooSparse("run_case2: detected bandwidth exceeds half the pilot Nyquist rate");
        CoefficientCurve c;
        c.name = name;
        // at least a 2-point plan even for (near-)constant coefficients
        const double w_plan = std::max(w, 1.0 / cfg.tbar);
        c.bandwidth_w = w_plan;
        c.plan_times = sampling::uniform_plan(w_plan, cfg.tbar);
        c.n_points = c.plan_times.size();
        c.plan_values = measure_at(c.plan_times);
        const auto f =
            make_sampled(pilot_vals.front(), c.plan_times, c.plan_values, w_plan, cfg.tbar, cfg.xi);
        finish_curve(c, f, theory, has_theory);
        rep.curves.push_back(std::move(c));
    };

    if (!cfg.random_dist.empty()) {
        // random-sampling mode: plan + Theorem-2 verdict, no sinc series
        sampling::SpacingDist dist;
        if (cfg.random_dist == "exponential") dist.family = sampling::SpacingDist::Family::exponential;
        else if (cfg.random_dist == "gamma") dist.family = sampling::SpacingDist::Family::gamma;
        else if (cfg.random_dist == "delta") dist.family = sampling::SpacingDist::Family::delta;
        else throw ConfigError("run_case2: unknown spacing distribution " + cfg.random_dist);
        dist.shape_k = cfg.random_shape_k;

        for (const auto& [name, vals] : {std::pair{std::string("lambda"), &pilot.lambda},
                                         {std::string("delta"), &pilot.delta}}) {
            double w = 1.0 / cfg.tbar;
            try {
                const auto spec = sampling::discrete_spectrum(*vals, cfg.tbar, 64.0 * cfg.tbar);
                w = std::max(w, sampling::effective_bandwidth(spec, cfg.bw_threshold));
            } catch (const EmptySpectrum&) {
            }
            dist.mean_h = 1.0 / (2.0 * w);
            const auto n = std::size_t(std::ceil(2.0 * w * cfg.tbar));
            const auto plan = sampling::random_plan(dist, n, cfg.seed);
            const auto series = differential::reconstruct_differential(src, fd, plan.times, hp);
            CoefficientCurve c;
            c.name = name;
            c.bandwidth_w = w;
            c.plan_times = plan.times;
            c.n_points = plan.times.size();
            c.plan_values = (name == "delta") ? series.delta : series.lambda;
            rep.curves.push_back(std::move(c));
        }
        const auto verdict = sampling::alias_free_check(dist);
        rep.verdict = verdict.alias_free ? "ALIAS-FREE" : "ALIASED";
        return rep;
    }

    const bool ht = validate_against_benchmark;
    run_coeff("lambda", pilot.lambda,
              [&](double t) { return qbm::lambda_theor(actual, t); }, ht,
              [&](const std::vector<double>& plan) {
                  return differential::reconstruct_differential(src, fd, plan, hp).lambda;
              });
    run_coeff("delta", pilot.delta,
              [&](double t) { return qbm::delta_theor(actual, t); }, ht,
              [&](const std::vector<double>& plan) {
                  return differential::reconstruct_differential(src, fd, plan, hp).delta;
              });
    run_coeff("dqp", pilot.dqp, [](double) { return 0.0; }, false,
              [&](const std::vector<double>& plan) {
                  return differential::reconstruct_differential(src, fd, plan, hp).dqp;
              });

    if (ht) {
        rep.worst_rms_rel = 0.0;
        for (const auto& c : rep.curves)
            if (!c.theory_values.empty())
                rep.worst_rms_rel = std::max(rep.worst_rms_rel, c.rms_rel);
        rep.verdict = rep.worst_rms_rel <= cfg.verdict_bound ? "PASS" : "FAIL";
    }
    return rep;
}

// ---------------------------------------------------------------------------
// export

inline nlohmann::json report_to_json(const ReconReport& rep) {
    nlohmann::json j;
    j["schema"] = rep.schema;
    j["version"] = rep.version;
    j["verdict"] = rep.verdict;
    j["worst_rms_rel"] = rep.worst_rms_rel;
    j["provenance"] = {{"config_hash", rep.config_hash}, {"seed", rep.config.seed},
                       {"version", rep.version}};
    const auto& c = rep.config;
    j["config"] = {{"preset", c.preset},
                   {"alpha", c.alpha},
                   {"omega_c", c.omega_c},
                   {"temperature", c.temperature},
                   {"approach", c.approach == Approach::integral ? "integral" : "differential"},
                   {"case", c.case_mode == CaseMode::case1 ? 1 : 2},
                   {"bw_threshold", c.bw_threshold},
                   {"bw_criterion", c.bw_criterion == BwCriterion::peak ? "peak" : "integral"},
                   {"tbar", c.tbar},
                   {"xi", c.xi},
                   {"dt", c.dt},
                   {"noise_sigma", c.noise_sigma},
                   {"seed", c.seed},
                   {"oracle_cumulants", c.oracle_cumulants},
                   {"verdict_bound", c.verdict_bound}};
    j["curves"] = nlohmann::json::array();
    for (const auto& cv : rep.curves) {
        nlohmann::json jc;
        jc["name"] = cv.name;
        jc["bandwidth_w"] = cv.bandwidth_w;
        jc["n_points"] = cv.n_points;
        jc["rms_rel"] = cv.rms_rel;
        jc["max_rel"] = cv.max_rel;
        jc["plan_times"] = cv.plan_times;
        jc["plan_values"] = cv.plan_values;
        j["curves"].push_back(jc);
    }
    return j;
}

/// Parse a report back; throws on schema mismatch. Round-trips the summary
/// fields and plan data written by report_to_json.
inline ReconReport report_from_json(const nlohmann::json& j) {
    ReconReport rep;
    if (j.at("schema").get<std::string>() != rep.schema)
        throw IoError("report schema mismatch: " + j.at("schema").get<std::string>());
    rep.version = j.at("version").get<std::string>();
    rep.verdict = j.at("verdict").get<std::string>();
    rep.worst_rms_rel = j.at("worst_rms_rel").get<double>();
    rep.config_hash = j.at("provenance").at("config_hash").get<std::string>();
    const auto& jc = j.at("config");
    rep.config.preset = jc.at("preset").get<std::string>();
    rep.config.alpha = jc.at("alpha").get<double>();
    rep.config.omega_c = jc.at("omega_c").get<double>();
    rep.config.temperature = jc.at("temperature").get<double>();
    rep.config.approach = jc.at("approach").get<std::string>() == "differential"
                              ? Approach::differential
                              : Approach::integral;
    rep.config.case_mode = jc.at("case").get<int>() == 2 ? CaseMode::case2 : CaseMode::case1;
    rep.config.bw_criterion = jc.at("bw_criterion").get<std::string>() == "integral"
                                  ? BwCriterion::integral
                                  : BwCriterion::peak;
    rep.config.bw_threshold = jc.at("bw_threshold").get<double>();
    rep.config.tbar = jc.at("tbar").get<double>();
    rep.config.xi = jc.at("xi").get<double>();
    rep.config.dt = jc.at("dt").get<double>();
    rep.config.noise_sigma = jc.at("noise_sigma").get<double>();
    rep.config.seed = jc.at("seed").get<std::uint64_t>();
    rep.config.oracle_cumulants = jc.at("oracle_cumulants").get<bool>();
    rep.config.verdict_bound = jc.at("verdict_bound").get<double>();
    for (const auto& cj : j.at("curves")) {
        CoefficientCurve cv;
        cv.name = cj.at("name").get<std::string>();
        cv.bandwidth_w = cj.at("bandwidth_w").get<double>();
        cv.n_points = cj.at("n_points").get<std::size_t>();
        cv.rms_rel = cj.at("rms_rel").get<double>();
        cv.max_rel = cj.at("max_rel").get<double>();
        cv.plan_times = cj.at("plan_times").get<std::vector<double>>();
        cv.plan_values = cj.at("plan_values").get<std::vector<double>>();
        rep.curves.push_back(std::move(cv));
    }
    return rep;
}

/// CSV per curve, one JSON report, and a gnuplot-compatible .dat per curve.
inline void export_report(const ReconReport& rep, const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);

    for (const auto& c : rep.curves) {
        {
            csv::Writer w(out_dir + "/curve_" + c.name + "_points.csv");
            w.header({"t", "value", "in_trusted"});
            const double hi = rep.config.tbar - rep.config.xi;
            for (std::size_t i = 0; i < c.plan_times.size(); ++i)
                w.row({c.plan_times[i], c.plan_values[i], c.plan_times[i] <= hi ? 1.0 : 0.0}, 17);
        }
        {
            csv::Writer w(out_dir + "/curve_" + c.name + "_recon.csv");
            if (c.theory_values.empty()) {
                w.header({"t", "recon"});
                for (std::size_t i = 0; i < c.grid_times.size(); ++i)
                    w.row({c.grid_times[i], c.recon_values[i]}, 17);
            } else {
                w.header({"t", "recon", "theory"});
                for (std::size_t i = 0; i < c.grid_times.size(); ++i)
                    w.row({c.grid_times[i], c.recon_values[i], c.theory_values[i]}, 17);
            }
        }
        {
            csv::Writer w(out_dir + "/plot_" + c.name + ".dat");
            w.raw("# t recon theory");
            for (std::size_t i = 0; i < c.grid_times.size(); ++i) {
                std::string line = csv::fmt(c.grid_times[i], 17) + " " +
                                   csv::fmt(c.recon_values[i], 17) + " " +
                                   (c.theory_values.empty() ? "nan"
                                                            : csv::fmt(c.theory_values[i], 17));
                w.raw(line);
            }
        }
    }
    if (rep.integral_series) {
        const auto& t = *rep.integral_series;
        csv::Writer w(out_dir + "/series_integral.csv");
        w.header({"t", "lambda_capital", "rhs_1", "rhs_2", "rhs_3", "dtilde_1", "dtilde_2",
                  "dtilde_3"});
        for (std::size_t i = 0; i < t.times.size(); ++i)
            w.row({t.times[i], t.lambda_capital[i], t.rhs[i][0], t.rhs[i][1], t.rhs[i][2],
                   t.dtilde[i][0], t.dtilde[i][1], t.dtilde[i][2]},
                  17);
    }
    if (rep.differential_series) {
        const auto& s = rep.differential_series->series;
        csv::Writer w(out_dir + "/series_differential.csv");
        w.header({"t", "lambda_q", "lambda_p", "lambda_combined", "dqq", "dpp", "dqp",
                  "delta_qform", "delta_pform"});
        for (std::size_t i = 0; i < s.times.size(); ++i)
            w.row({s.times[i], s.lambda_q[i], s.lambda_p[i], s.lambda[i], s.dqq[i], s.dpp[i],
                   s.dqp[i], s.delta_qform[i], s.delta_pform[i]},
                  17);
    }
    for (const auto& st : rep.spectra) {
        csv::Writer w(out_dir + "/spectrum_" + st.name + ".csv");
        w.header({"s", "magnitude"});
        for (std::size_t i = 0; i < st.s.size(); ++i) w.row({st.s[i], st.magnitude[i]}, 17);
    }
    std::ofstream js(out_dir + "/report.json");
    if (!js) throw IoError("cannot write report.json in " + out_dir);
    js << report_to_json(rep).dump(2) << "\n";
}

// ---------------------------------------------------------------------------
// published-figure replication

struct FigureResult {
    std::string figure;      ///< e.g. "fig1a"
    std::string coefficient; ///< capital_lambda | delta
    std::string regime;      ///< markovian | non-markovian
    double threshold = 0.0;  ///< nominal threshold label
    double w_angular = 0.0;  ///< 2 pi W from our spectra
    std::size_t n_points = 0;
    double target_w_angular = 0.0;
    int target_n = 0;
    bool n_exempt = false;
    bool w_match = false; ///< within +-2%
    bool n_match = false; ///< within +-1
};

/// The published figure configurations. The printed threshold labels
/// {1e-3, 1e-4} reproduce the printed bandwidths only as relative spectral
/// levels {0.1, 0.01}: the figure values behave as percentages applied as
/// fractions. That mapping (x100) is applied here and documented; the
/// effective_bandwidth API itself keeps the plain relative-threshold
/// semantics.
constexpr double kCaptionLevelScale = 100.0;

inline std::vector<FigureResult> replicate_paper(const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);

    struct Cfg {
        const char* fig;
        const char* coeff;
        const char* regime;
        double thr;
        double target_w; // angular (2 pi W)
        int target_n;
        bool n_exempt;
    };
    const std::vector<Cfg> cfgs = {
        {"fig1a", "capital_lambda", "markovian", 1e-3, 19.4, 7, false},
        {"fig1b", "capital_lambda", "markovian", 1e-4, 196.0, 74, false},
        {"fig2a", "capital_lambda", "non-markovian", 1e-3, 0.16, 6, false},
        {"fig2b", "capital_lambda", "non-markovian", 1e-4, 1.66, 64, false},
        {"fig3a", "delta", "markovian", 1e-3, 19.5, 7, false},
        {"fig3b", "delta", "markovian", 1e-4, 73.0, 34, true},
        {"fig4a", "delta", "non-markovian", 1e-3, 1.32, 50, false},
        {"fig4b", "delta", "non-markovian", 1e-4, 3.0, 114, false},
    };

    std::vector<FigureResult> results;
    std::map<std::string, std::vector<std::string>> fig_blocks;

    for (const auto& fc : cfgs) {
        const auto prm = std::string(fc.regime) == "markovian" ? qbm::markovian_preset()
                                                               : qbm::non_markovian_preset();
        const double tbar = 12.0 / prm.omega_c;
        const bool is_lambda = std::string(fc.coeff) == "capital_lambda";
        auto mag = [&](double s) {
            return is_lambda ? std::abs(qbm::fourier_capital_lambda(prm, tbar, s))
                             : std::abs(qbm::fourier_delta(prm, tbar, s));
        };
        const double level = std::min(0.5, fc.thr * kCaptionLevelScale);
        const double w = bandwidth_of(mag, level, BwCriterion::peak, 64.0 * std::max(1.0, prm.omega_c));
        const auto plan = sampling::uniform_plan(w, tbar);

        FigureResult r;
        r.figure = fc.fig;
        r.coefficient = fc.coeff;
        r.regime = fc.regime;
        r.threshold = fc.thr;
        r.w_angular = 2.0 * M_PI * w;
        r.n_points = plan.size();
        r.target_w_angular = fc.target_w;
        r.target_n = fc.target_n;
        r.n_exempt = fc.n_exempt;
        r.w_match = std::abs(r.w_angular - r.target_w_angular) <= 0.02 * r.target_w_angular;
        r.n_match = fc.n_exempt || std::abs(int(r.n_points) - r.target_n) <= 1;
        results.push_back(r);

        // ideal (noiseless, oracle) reconstruction at the figure's plan
        auto theory = [&](double t) {
            return is_lambda ? qbm::capital_lambda_theor(prm, t) : qbm::delta_theor(prm, t);
        };
        std::vector<double> vals(plan.size());
        for (std::size_t i = 0; i < plan.size(); ++i) vals[i] = theory(plan[i]);
        const auto f = make_sampled(0.0, plan, vals, w, tbar, 2.0 / prm.omega_c);

        std::vector<std::string> block;
        block.push_back("# " + std::string(fc.fig) + "  " + fc.coeff + "  " + fc.regime +
                        "  threshold=" + csv::fmt(fc.thr, 6) + "  W=" + csv::fmt(r.w_angular, 6) +
                        "/2pi  N=" + std::to_string(r.n_points));
        block.push_back("# t  theory  reconstruction");
        const std::size_t gn = 601;
        for (std::size_t i = 0; i < gn; ++i) {
            const double t = f.trusted_hi * double(i) / double(gn - 1);
            block.push_back(csv::fmt(t, 17) + " " + csv::fmt(theory(t), 17) + " " +
                            csv::fmt(sampling::shannon_reconstruct(f, t), 17));
        }
        const std::string figfile = std::string(fc.fig).substr(0, 4); // fig1..fig4
        auto& blocks = fig_blocks[figfile];
        blocks.insert(blocks.end(), block.begin(), block.end());
        blocks.push_back(""); // gnuplot index separator
        blocks.push_back("");
    }

    for (const auto& [fig, lines] : fig_blocks) {
        csv::Writer w(out_dir + "/" + fig + ".dat");
        for (const auto& l : lines) w.raw(l);
    }
    return results;
}

} // namespace gsp::harness
