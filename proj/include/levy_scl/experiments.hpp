#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "levy_scl/estimators.hpp"
#include "levy_scl/experiment_config.hpp"
#include "levy_scl/solvers.hpp"

namespace levy_scl {

/// One line of report.csv: an ensemble statistic at a parameter value and time.
struct ReportRow {
    std::string stat_name;
    std::string param_name;
    double param_value = 0.0;
    double time = 0.0;
    EnsembleStat stat;
};

struct Verdict {
    std::string name;
    bool passed = false;
    double measured = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    std::string detail;
};

struct ExperimentReport {
    ExperimentKind kind = ExperimentKind::error_rate;
    std::vector<ReportRow> rows;
    std::vector<Verdict> verdicts;
    std::vector<std::string> notes;
    /// Path 0 of the primary arm, written as snapshots.csv.
    std::optional<Trajectory> sample;

    bool passed() const;
};

ExperimentReport run_error_rate(const ExperimentConfig& cfg);
ExperimentReport run_continuous_dependence(const ExperimentConfig& cfg);
ExperimentReport run_bv_monotone(const ExperimentConfig& cfg);
ExperimentReport run_fractional_bv(const ExperimentConfig& cfg);
ExperimentReport run_entropy_check(const ExperimentConfig& cfg);

/// Validates cfg and dispatches on cfg.kind.
ExperimentReport run_experiment(const ExperimentConfig& cfg);

/// stat_name,param_name,param_value,time,value,std_error,n_samples
void write_report_csv(std::ostream& os, const ExperimentReport& report);
/// name,passed,measured,lower,upper,detail
void write_verdicts_csv(std::ostream& os, const ExperimentReport& report);
void write_summary(std::ostream& os, const ExperimentReport& report);

/// Writes report.csv, verdicts.csv, summary.txt and (when present) snapshots.csv.
void emit_report(const ExperimentReport& report, const std::filesystem::path& out_dir);

}  // namespace levy_scl
