#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "helmholtz_dd/analysis.hpp"
#include "helmholtz_dd/coefficients.hpp"

namespace helmdd {

/// A full experiment description, mirroring the CLI flags. Rule strings:
///   eps:     "zero" | "pow:G"  (eps = k^G) | "value:V"
///   H:       "pow:A"  (M = floor(k^A), H = 1/M) | "fixed:M"
///   overlap: "Hfrac:C" (delta = H/C) | "wavelengths:C" (delta = C/k) |
///            "cells:C" (delta = C*h); used by strategy 2 only
struct RunConfig {
    double k = 40.0;
    int p = 1;
    std::string eps_rule = "pow:1.5";
    std::string eta_mode = "experiment_k";
    int strategy = 1;
    std::string H_rule = "pow:0.3";
    std::string overlap_rule = "Hfrac:4";
    std::string precond = "soras";
    std::string inner_product = "euclidean";
    std::string A_profile = "constant";
    std::string n_profile = "constant";
    double cmin_A = 1.0, cmax_A = 1.0;
    double cmin_n = 1.0, cmax_n = 1.0;
    double tol = 1e-6;
    int maxit = 500;
    std::uint64_t seed = 0;
    bool fov = false;
    bool bounds = false;
    int angles = 256;
    std::string out;

    std::string to_json() const;                      // stable field order
    static RunConfig from_json(const std::string&);   // byte-identical round trip
};

struct PhaseTimings {
    double assembly = 0.0;
    double factorization = 0.0;
    double solve = 0.0;
};

struct RunRecord {
    RunConfig config;
    int dofs = 0;
    int subdomains = 0;
    int iterations = 0;
    bool converged = false;
    std::vector<double> residual_history;
    std::optional<double> e0, e1;                  // homogeneous runs only
    std::optional<double> fov_lower_bound, dk_norm;
    std::vector<FovPoint> fov;
    PhaseTimings timings;

    std::string to_json() const;
};

/// Thrown when a run would exceed the dof cap (HELMHOLTZ_DD_MAX_DOFS,
/// default 4,000,000).
class SizeCapError : public std::runtime_error {
  public:
    SizeCapError(std::size_t dofs, std::size_t cap)
        : std::runtime_error("problem size " + std::to_string(dofs) +
                             " dofs exceeds the cap of " + std::to_string(cap)),
          dofs_(dofs), cap_(cap) {}
    std::size_t dofs() const { return dofs_; }
    std::size_t cap() const { return cap_; }

  private:
    std::size_t dofs_, cap_;
};

std::size_t dof_cap();                          // env override honored
std::size_t estimated_dofs(const RunConfig& config);

/// Executes one experiment. Throws std::invalid_argument on a bad config and
/// SizeCapError past the cap.
RunRecord run(const RunConfig& config);

/// Writes the record as a single JSON object to `path`; when the config asked
/// for the FoV boundary, also writes "theta,re,im" rows to `path` + ".fov.csv".
void write_record(const RunRecord& record, const std::string& path);

struct SweepCell {
    std::string row;         // usually the k value
    std::string column;      // p, profile, or overlap label
    RunConfig config;
    std::string reported;       // value reported in the source table
};

std::vector<std::string> sweep_table_ids();
std::vector<SweepCell> sweep_table(const std::string& table_id);  // throws on unknown id

/// Runs every cell of the named table (cells beyond the dof cap are recorded
/// as skipped:size), writes one record JSON per cell plus summary.csv into
/// output_dir, and returns the summary rows.
std::vector<std::string> sweep(const std::string& table_id, const std::string& output_dir);

}  // namespace helmdd
