#include "helmholtz_dd/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace helmdd {

namespace {
constexpr double kObstacleRadius = 0.25;   // disk radius; also L-inf "radius" of the square
}

ProfileKind profile_from_name(const std::string& name) {
    if (name == "constant") return ProfileKind::constant;
    if (name == "disk_linear_decrease") return ProfileKind::disk_linear_decrease;
    if (name == "disk_linear_increase") return ProfileKind::disk_linear_increase;
    if (name == "disk_oscillating7") return ProfileKind::disk_oscillating7;
    if (name == "square_linear_decrease") return ProfileKind::square_linear_decrease;
    if (name == "square_linear_increase") return ProfileKind::square_linear_increase;
    if (name == "square_oscillating7") return ProfileKind::square_oscillating7;
    throw std::invalid_argument("unknown coefficient profile: " + name);
}

std::string profile_name(ProfileKind kind) {
    switch (kind) {
        case ProfileKind::constant: return "constant";
        case ProfileKind::disk_linear_decrease: return "disk_linear_decrease";
        case ProfileKind::disk_linear_increase: return "disk_linear_increase";
        case ProfileKind::disk_oscillating7: return "disk_oscillating7";
        case ProfileKind::square_linear_decrease: return "square_linear_decrease";
        case ProfileKind::square_linear_increase: return "square_linear_increase";
        case ProfileKind::square_oscillating7: return "square_oscillating7";
    }
    return "constant";
}

double CoefficientField::eval(double x, double y) const {
    if (kind == ProfileKind::constant) return 1.0;
    double dx = x - 0.5, dy = y - 0.5;
    bool disk = kind == ProfileKind::disk_linear_decrease ||
                kind == ProfileKind::disk_linear_increase ||
                kind == ProfileKind::disk_oscillating7;
    double rho = disk ? std::hypot(dx, dy) : std::max(std::abs(dx), std::abs(dy));
    if (rho >= kObstacleRadius) return 1.0;
    double s = rho / kObstacleRadius;   // in [0,1)
    switch (kind) {
        case ProfileKind::disk_linear_decrease:
        case ProfileKind::square_linear_decrease:
            return cmax + s * (cmin - cmax);
        case ProfileKind::disk_linear_increase:
        case ProfileKind::square_linear_increase:
            return cmin + s * (cmax - cmin);
        case ProfileKind::disk_oscillating7:
        case ProfileKind::square_oscillating7: {
            // 7 layers of uniform thickness, innermost layer at cmax,
            // alternating outward (so the outermost is cmax as well).
            int layer = std::min(6, int(std::floor(7.0 * s)));
            return layer % 2 == 0 ? cmax : cmin;
        }
        default: return 1.0;
    }
}

double CoefficientField::min_value() const {
    return kind == ProfileKind::constant ? 1.0 : std::min(cmin, 1.0);
}

double CoefficientField::max_value() const {
    return kind == ProfileKind::constant ? 1.0 : std::max(cmax, 1.0);
}

EtaMode eta_mode_from_name(const std::string& name) {
    if (name == "experiment_k") return EtaMode::experiment_k;
    if (name == "sign_eps_k") return EtaMode::sign_eps_k;
    if (name == "sqrt_branch") return EtaMode::sqrt_branch;
    throw std::invalid_argument("unknown eta mode: " + name);
}

std::string eta_mode_name(EtaMode mode) {
    switch (mode) {
        case EtaMode::experiment_k: return "experiment_k";
        case EtaMode::sign_eps_k: return "sign_eps_k";
        case EtaMode::sqrt_branch: return "sqrt_branch";
    }
    return "experiment_k";
}

std::complex<double> eta_default(double k, double eps, EtaMode mode) {
    switch (mode) {
        case EtaMode::experiment_k:
            return {k, 0.0};
        case EtaMode::sign_eps_k:
            return {eps < 0.0 ? -k : k, 0.0};
        case EtaMode::sqrt_branch: {
            if (eps == 0.0) return {k, 0.0};
            // sqrt with branch cut on the positive real axis: arg in (0, 2*pi).
            double re = k * k, im = eps;
            double arg = std::atan2(im, re);
            if (arg < 0.0) arg += 2.0 * std::numbers::pi;
            double mod = std::sqrt(std::hypot(re, im));
            return std::polar(mod, arg / 2.0);
        }
    }
    return {k, 0.0};
}

void ProblemParameters::validate() const {
    if (k < 1.0) throw std::invalid_argument("parameters: k must be >= 1");
    if (std::abs(eps) > k * k)
        throw std::invalid_argument("parameters: |eps| must be <= k^2");
    for (const auto* f : {&A, &n}) {
        if (f->kind != ProfileKind::constant && !(f->cmin > 0.0 && f->cmin <= f->cmax))
            throw std::invalid_argument("parameters: need 0 < cmin <= cmax");
    }
}

}  // namespace helmdd
