#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "snls/dynamics.hpp"

namespace snls {

// ---- Ito budgets

struct ItoBudget {
    std::string functional;
    std::size_t steps = 0;
    double increment = 0.0;     // F(T) - F(0)
    double drift = 0.0;         // deterministic drift integral (trapezoid)
    double correction = 0.0;    // Ito correction with dt:  sum c_k g_k^2 dt
    double correction_qv = 0.0; // same with the realized dB_k^2 in place of dt
    double martingale = 0.0;    // sum m_k g_k dB_k
    double residual = 0.0;      // increment - drift - correction - martingale
    double residual_qv = 0.0;   // increment - drift - correction_qv - martingale
};

ItoBudget ito_mass_budget(const Trajectory& tr);
ItoBudget ito_energy_budget(const Trajectory& tr);

// ---- regime classification

enum class RegimeClass { long_range, short_range_L2, sigma_scattering, h1_scattering, energy_critical_excluded };
enum class MassCriticality { sub, critical, super };

std::string to_string(RegimeClass c);
std::string to_string(MassCriticality c);

struct HypothesisWindow {
    std::string id;        // global_wellposedness, l2_scattering, sigma_scattering, h1_scattering
    std::string window;    // inequality text
    std::string decay;     // noise decay hypothesis text
    bool applies = false;  // exponent window contains 2 sigma
    double required_alpha = 0.0; // strict lower bound on the power-law alpha
    bool noise_ok = false; // alpha > required_alpha
    bool small_data = false;
};

struct RegimeReport {
    int n = 1;
    double sigma = 1.0;
    double alpha = 0.0;
    double two_sigma = 2.0;
    double strauss = 0.0;
    double long_range_bound = 0.0;   // 2/n
    double mass_critical = 0.0;      // 4/n
    double energy_critical = 0.0;    // 4/(n-2), infinite for n <= 2
    RegimeClass regime = RegimeClass::long_range;
    MassCriticality mass_criticality = MassCriticality::sub;
    double required_alpha = 0.0;     // noise decay needed by the primary regime
    bool small_data_flag = false;
    std::vector<HypothesisWindow> windows;
    std::vector<std::string> warnings;

    const HypothesisWindow* window(const std::string& id) const;
};

double strauss_exponent(int n);
RegimeReport classify_regime(int n, double sigma, double alpha);
bool is_admissible(double p, double q, int n);

// ---- scattering

enum class NormKind { L2, H1, Sigma };
std::string to_string(NormKind k);
NormKind norm_kind_from(const std::string& s);
double norm_of(const Field& f, NormKind kind);

struct CauchyResult {
    NormKind norm = NormKind::Sigma;
    std::vector<double> times;
    std::vector<std::vector<double>> differences; // pairwise ||w_i - w_j||
    std::vector<double> successive;               // ||w_{k+1} - w_k||
    std::vector<double> ratios;                   // successive[k+1] / successive[k]
    Field limit;                                  // w at the last checkpoint
    bool contracting = false;                     // every ratio < 0.8
    bool monotone = false;                        // successive differences decrease
    bool above_floor = false;                     // min successive >= 0.5 * first
};

// w_k = S(-t_k) u(t_k) from snapshots at the checkpoint times.
CauchyResult scattering_cauchy(const Trajectory& tr, NormKind kind, std::span<const double> checkpoints);

// ---- Strichartz monitor

struct PairSpec {
    double p = 2.0;
    double q = kInf;
    bool morawetz = false; // exempt from the admissibility check
    std::string label;
};

// Representative pair set for dimension n, including the Morawetz pair when n >= 2.
std::vector<PairSpec> default_pairs(int n);

struct PairMonitor {
    PairSpec pair;
    std::vector<double> horizons;
    std::vector<double> cumulative; // L^q_t W^{1,p}_x (or L^q_t L^p_x for Morawetz) on [0, horizon]
    bool plateau = false;
    double last_window_increase = 0.0;
};

struct StrichartzReport {
    std::vector<PairMonitor> pairs;
    double s1_lower_bound = 0.0; // max over the configured admissible pairs at the final horizon
};

StrichartzReport strichartz_monitor(const Trajectory& tr, std::span<const PairSpec> pairs);

// Plateau: (N(T) - N(T/2)) / N(T/2) < 2% on a nondecreasing cumulative curve.
bool plateau_detected(std::span<const double> horizons, std::span<const double> cumulative, double* increase = nullptr);

// ---- growth fit

struct GrowthFit {
    double slope = 0.0;
    double intercept = 0.0;
    std::vector<double> taus;
    std::vector<double> values;
};

// Least-squares slope of log(values) against log(1 + tau).
GrowthFit growth_fit(std::span<const double> taus, std::span<const double> values);

} // namespace snls
