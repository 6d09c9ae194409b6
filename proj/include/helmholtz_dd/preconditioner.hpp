#pragma once

#include <span>
#include <vector>

#include "helmholtz_dd/coefficients.hpp"
#include "helmholtz_dd/decomposition.hpp"
#include "helmholtz_dd/fespace.hpp"
#include "helmholtz_dd/linalg.hpp"

namespace helmdd {

enum class PrecondKind { soras, oras, none };

PrecondKind precond_from_name(const std::string& name);
std::string precond_name(PrecondKind kind);

// One-level additive Schwarz preconditioner:
//   SORAS: B^{-1} = sum_l Rt_l^T A_l^{-1} Rt_l   (Rt = chi-weighted restriction)
//   ORAS:  B^{-1} = sum_l Rt_l^T A_l^{-1} R_l    (R = plain restriction)
// Each A_l is the impedance problem assembled on subdomain l. For spatially
// constant coefficients, subdomains with equal rectangle shape share one
// factorization.
class SchwarzPreconditioner {
  public:
    SchwarzPreconditioner() = default;
    SchwarzPreconditioner(const FESpace& space, const ProblemParameters& params,
                          const Decomposition& dec, PrecondKind kind,
                          const AssemblyOptions& options = {});

    std::vector<Complex> apply(std::span<const Complex> v) const;          // B^{-1} v
    std::vector<Complex> apply_adjoint(std::span<const Complex> v) const;  // B^{-*} v
    DenseComplexMatrix densify() const;
    int size() const { return n_; }
    PrecondKind kind() const { return kind_; }
    std::size_t num_factorizations() const;  // distinct local factorizations held

  private:
    PrecondKind kind_ = PrecondKind::none;
    int n_ = 0;
    const Decomposition* dec_ = nullptr;
    std::vector<SparseFactorization> factors_;  // parallel to dec_->subdomains
};

}  // namespace helmdd
