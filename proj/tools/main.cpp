#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "helmholtz_dd/mesh.hpp"
#include "helmholtz_dd/runner.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNoConvergence = 2;
constexpr int kExitConfigError = 3;
constexpr int kExitSizeCap = 4;

void add_run_flags(CLI::App* cmd, helmdd::RunConfig& cfg) {
    cmd->add_option("--k", cfg.k, "wavenumber")->required();
    cmd->add_option("--p", cfg.p, "polynomial degree (1-4)")->required();
    cmd->add_option("--eps", cfg.eps_rule, "absorption: zero | pow:G | value:V");
    cmd->add_option("--eta", cfg.eta_mode,
                    "impedance parameter mode: experiment_k | sign_eps_k | sqrt_branch");
    cmd->add_option("--strategy", cfg.strategy, "partition strategy 1 or 2");
    cmd->add_option("--H", cfg.H_rule, "coarse size: pow:A (H=k^-A) | fixed:M");
    cmd->add_option("--overlap", cfg.overlap_rule,
                    "strategy-2 overlap: Hfrac:C | wavelengths:C | cells:C");
    cmd->add_option("--precond", cfg.precond, "soras | oras | none");
    cmd->add_option("--ip", cfg.inner_product, "euclidean | weighted");
    cmd->add_option("--profile-A", cfg.A_profile, "A coefficient profile");
    cmd->add_option("--profile-n", cfg.n_profile, "n coefficient profile");
    cmd->add_option("--cmin-A", cfg.cmin_A, "A minimum inside the obstacle");
    cmd->add_option("--cmax-A", cfg.cmax_A, "A maximum inside the obstacle");
    cmd->add_option("--cmin-n", cfg.cmin_n, "n minimum inside the obstacle");
    cmd->add_option("--cmax-n", cfg.cmax_n, "n maximum inside the obstacle");
    cmd->add_option("--tol", cfg.tol, "GMRES relative residual tolerance");
    cmd->add_option("--maxit", cfg.maxit, "GMRES iteration cap");
    cmd->add_option("--seed", cfg.seed, "initial-guess RNG seed");
    cmd->add_flag("--fov", cfg.fov, "emit the field-of-values boundary (dense, small runs)");
    cmd->add_flag("--bounds", cfg.bounds, "compute fov lower bound and D_k norm");
    cmd->add_option("--angles", cfg.angles, "angle count for --fov");
    cmd->add_option("--out", cfg.out, "output path for the run record (default stdout)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"One-level Schwarz preconditioners for high-frequency Helmholtz FEM"};
    app.require_subcommand(1);

    helmdd::RunConfig cfg;
    CLI::App* run_cmd = app.add_subcommand("run", "execute one experiment");
    add_run_flags(run_cmd, cfg);

    std::string table_id, output_dir = ".";
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "run a whole experiment table");
    sweep_cmd->add_option("table", table_id, "table id (table1..table16)")->required();
    sweep_cmd->add_option("output", output_dir, "output directory");

    double mesh_k = 40.0;
    int mesh_p = 1;
    std::string mesh_H = "pow:0.3", mesh_out;
    CLI::App* mesh_cmd = app.add_subcommand("mesh", "dump the fine mesh as plain text");
    mesh_cmd->add_option("--k", mesh_k, "wavenumber")->required();
    mesh_cmd->add_option("--p", mesh_p, "polynomial degree (sets the mesh size rule)");
    mesh_cmd->add_option("--H", mesh_H, "coarse size: pow:A | fixed:M");
    mesh_cmd->add_option("--out", mesh_out, "output path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) {
            helmdd::RunRecord record = helmdd::run(cfg);
            if (cfg.out.empty()) {
                std::cout << record.to_json() << '\n';
                if (cfg.fov) {
                    std::cout << "theta,re,im\n";
                    for (const auto& pt : record.fov)
                        std::cout << pt.theta << ',' << pt.z.real() << ',' << pt.z.imag()
                                  << '\n';
                }
            } else {
                helmdd::write_record(record, cfg.out);
            }
            if (!record.converged) {
                std::cerr << "GMRES did not reach tolerance within " << cfg.maxit
                          << " iterations\n";
                return kExitNoConvergence;
            }
        } else if (sweep_cmd->parsed()) {
            for (const auto& row : helmdd::sweep(table_id, output_dir))
                std::cout << row << '\n';
        } else if (mesh_cmd->parsed()) {
            helmdd::RunConfig probe;
            probe.k = mesh_k;
            probe.p = mesh_p;
            probe.H_rule = mesh_H;
            if (helmdd::estimated_dofs(probe) > helmdd::dof_cap())
                throw helmdd::SizeCapError(helmdd::estimated_dofs(probe), helmdd::dof_cap());
            helmdd::CoarseMesh coarse =
                mesh_H.rfind("fixed:", 0) == 0
                    ? helmdd::coarse_from_squares(std::stoi(mesh_H.substr(6)))
                    : helmdd::build_coarse(mesh_k, std::stod(mesh_H.substr(mesh_H.find(':') + 1)));
            helmdd::FineMesh mesh = helmdd::refine(coarse, mesh_k, mesh_p);
            if (mesh_out.empty()) {
                helmdd::dump_mesh(mesh, std::cout);
            } else {
                std::ofstream out(mesh_out);
                if (!out) throw std::runtime_error("cannot write " + mesh_out);
                helmdd::dump_mesh(mesh, out);
            }
        }
    } catch (const helmdd::SizeCapError& e) {
        std::cerr << "skipped:size " << e.what() << '\n';
        return kExitSizeCap;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return kExitOk;
}
