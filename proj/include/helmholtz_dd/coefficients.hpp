#pragma once

#include <complex>
#include <string>

namespace helmdd {

/// The coefficient profiles of the heterogeneous experiments: a penetrable
/// obstacle (disk of radius 1/4 or square of side 1/2, centred at (1/2,1/2))
/// inside which the coefficient varies between cmin and cmax; background 1.
enum class ProfileKind {
    constant,
    disk_linear_decrease,
    disk_linear_increase,
    disk_oscillating7,
    square_linear_decrease,
    square_linear_increase,
    square_oscillating7,
};

ProfileKind profile_from_name(const std::string& name);
std::string profile_name(ProfileKind kind);

struct CoefficientField {
    ProfileKind kind = ProfileKind::constant;
    double cmin = 1.0;
    double cmax = 1.0;

    double eval(double x, double y) const;

    bool is_constant_one() const { return kind == ProfileKind::constant; }
    double min_value() const;
    double max_value() const;
};

enum class EtaMode { experiment_k, sign_eps_k, sqrt_branch };

EtaMode eta_mode_from_name(const std::string& name);
std::string eta_mode_name(EtaMode mode);

/// Impedance parameter: eta = k in the experiments; the two alternatives are
/// sign(eps)*k and sqrt(k^2 + i*eps) with the branch cut on the positive real
/// axis (both reduce to k when eps = 0).
std::complex<double> eta_default(double k, double eps, EtaMode mode);

struct ProblemParameters {
    double k = 1.0;
    double eps = 0.0;                       // |eps| <= k^2
    std::complex<double> eta{1.0, 0.0};
    CoefficientField A;
    CoefficientField n;

    bool homogeneous() const { return A.is_constant_one() && n.is_constant_one(); }
    void validate() const;                  // throws std::invalid_argument
};

}  // namespace helmdd
