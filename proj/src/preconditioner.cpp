#include "helmholtz_dd/preconditioner.hpp"

#include <map>
#include <stdexcept>
#include <utility>

namespace helmdd {

PrecondKind precond_from_name(const std::string& name) {
    if (name == "soras") return PrecondKind::soras;
    if (name == "oras") return PrecondKind::oras;
    if (name == "none") return PrecondKind::none;
    throw std::invalid_argument("unknown preconditioner: " + name);
}

std::string precond_name(PrecondKind kind) {
    switch (kind) {
        case PrecondKind::soras: return "soras";
        case PrecondKind::oras: return "oras";
        case PrecondKind::none: return "none";
    }
    return "none";
}

SchwarzPreconditioner::SchwarzPreconditioner(const FESpace& space,
                                             const ProblemParameters& params,
                                             const Decomposition& dec, PrecondKind kind,
                                             const AssemblyOptions& options)
    : kind_(kind), n_(space.num_dofs), dec_(&dec) {
    if (kind == PrecondKind::none) return;
    factors_.resize(dec.subdomains.size());
    bool shareable = params.A.is_constant_one() && params.n.is_constant_one();
    std::map<std::pair<int, int>, SparseFactorization> cache;
    for (std::size_t l = 0; l < dec.subdomains.size(); ++l) {
        const Subdomain& sub = dec.subdomains[l];
        std::pair<int, int> shape{sub.sq_x1 - sub.sq_x0, sub.sq_y1 - sub.sq_y0};
        if (shareable) {
            if (auto it = cache.find(shape); it != cache.end()) {
                factors_[l] = it->second;
                continue;
            }
        }
        ComplexSparseMatrix A_l = assemble_local_a_eps(space, params, sub.triangles,
                                                       sub.impedance_edges, sub.dofs, options);
        factors_[l] = factorize(A_l);
        if (shareable) cache.emplace(shape, factors_[l]);
    }
}

std::vector<Complex> SchwarzPreconditioner::apply(std::span<const Complex> v) const {
    if (int(v.size()) != n_) throw std::invalid_argument("preconditioner apply: size mismatch");
    if (kind_ == PrecondKind::none) return std::vector<Complex>(v.begin(), v.end());
    std::vector<Complex> out(std::size_t(n_), Complex(0.0));
    for (std::size_t l = 0; l < dec_->subdomains.size(); ++l) {
        const Subdomain& sub = dec_->subdomains[l];
        std::vector<Complex> rhs = (kind_ == PrecondKind::soras) ? restrict_weighted(sub, v)
                                                                 : restrict_plain(sub, v);
        std::vector<Complex> sol = factors_[l].solve(rhs);
        add_weighted(sub, sol, out);
    }
    return out;
}

std::vector<Complex> SchwarzPreconditioner::apply_adjoint(std::span<const Complex> v) const {
    if (int(v.size()) != n_) throw std::invalid_argument("preconditioner adjoint: size mismatch");
    if (kind_ == PrecondKind::none) return std::vector<Complex>(v.begin(), v.end());
    std::vector<Complex> out(std::size_t(n_), Complex(0.0));
    for (std::size_t l = 0; l < dec_->subdomains.size(); ++l) {
        const Subdomain& sub = dec_->subdomains[l];
        std::vector<Complex> rhs = restrict_weighted(sub, v);
        std::vector<Complex> sol = factors_[l].solve_adjoint(rhs);
        if (kind_ == PrecondKind::soras) {
            add_weighted(sub, sol, out);
        } else {
            for (std::size_t i = 0; i < sub.dofs.size(); ++i)
                out[std::size_t(sub.dofs[i])] += sol[i];
        }
    }
    return out;
}

DenseComplexMatrix SchwarzPreconditioner::densify() const {
    DenseComplexMatrix B(n_, n_);
    std::vector<Complex> e(std::size_t(n_), Complex(0.0));
    for (int j = 0; j < n_; ++j) {
        e[std::size_t(j)] = Complex(1.0);
        std::vector<Complex> col = apply(e);
        e[std::size_t(j)] = Complex(0.0);
        for (int i = 0; i < n_; ++i) B(i, j) = col[std::size_t(i)];
    }
    return B;
}

std::size_t SchwarzPreconditioner::num_factorizations() const {
    std::size_t count = 0;
    std::vector<const void*> seen;
    for (const auto& f : factors_) {
        const void* id = f.impl_id();
        bool found = false;
        for (const void* s : seen)
            if (s == id) { found = true; break; }
        if (!found) { seen.push_back(id); ++count; }
    }
    return count;
}

}  // namespace helmdd
