#include "ddsense/fim.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

namespace ddsense {

namespace {

void check_pilots(const SystemConfig& cfg, const PilotGrid& pilots) {
    if (pilots.m != cfg.m || pilots.n != cfg.n)
        throw std::invalid_argument("pilot grid does not match the configured M x N grid");
}

} // namespace

Eigen::VectorXcd received_signal(Scheme scheme, const SystemConfig& cfg, const PathSet& paths,
                                 const PilotGrid& pilots) {
    check_pilots(cfg, pilots);
    Eigen::VectorXcd y = Eigen::VectorXcd::Zero(cfg.grid_size());
    for (const PathParams& path : paths.paths)
        y += build_channel(scheme, cfg, path).entries * pilots.x;
    return y;
}

double snr_db(Scheme scheme, const SystemConfig& cfg, const PathSet& paths,
              const PilotGrid& pilots, const NoiseModel& noise) {
    if (!(noise.sigma2 > 0.0)) throw std::invalid_argument("sigma2 > 0 required");
    const double power = received_signal(scheme, cfg, paths, pilots).squaredNorm();
    if (power <= 0.0) throw std::domain_error("snr_db: zero received power");
    return 10.0 * std::log10(power / (cfg.grid_size() * noise.sigma2));
}

double sigma2_for_snr(Scheme scheme, const SystemConfig& cfg, const PathSet& paths,
                      const PilotGrid& pilots, double target_snr_db) {
    const double power = received_signal(scheme, cfg, paths, pilots).squaredNorm();
    if (power <= 0.0) throw std::domain_error("sigma2_for_snr: zero received power");
    return power / (cfg.grid_size() * std::pow(10.0, target_snr_db / 10.0));
}

FisherMatrix assemble_fim(Scheme scheme, const SystemConfig& cfg, const PathSet& paths,
                          const PilotGrid& pilots, const NoiseModel& noise) {
    check_pilots(cfg, pilots);
    if (!(noise.sigma2 > 0.0)) throw std::invalid_argument("sigma2 > 0 required");

    const int p_count = paths.count();
    const int dim = 4 * p_count;

    // u_i = (dPsi^{p(i)}/dtheta_i) x, one vector per parameter
    std::vector<Eigen::VectorXcd> u(dim);
    for (int p = 0; p < p_count; ++p)
        for (Param which : all_params)
            u[param_index(p, which)] =
                build_derivative(scheme, cfg, paths.paths[p], which).entries * pilots.x;

    FisherMatrix fim{Eigen::MatrixXd(dim, dim)};
    const double scale = 2.0 / noise.sigma2;
    for (int i = 0; i < dim; ++i) {
        for (int j = i; j < dim; ++j) {
            const double v = scale * u[j].dot(u[i]).real(); // dot() conjugates u[j]
            fim.entries(i, j) = v;
            fim.entries(j, i) = v;
        }
    }
    return fim;
}

CrlbValues crlb(const FisherMatrix& fim, const CrlbOptions& options) {
    const Eigen::MatrixXd& J = fim.entries;
    const int dim = static_cast<int>(J.rows());
    if (dim == 0 || dim % 4 != 0 || J.cols() != dim)
        throw std::invalid_argument("crlb: FIM must be a nonempty 4P x 4P matrix");

    std::ostringstream err;
    for (int i = 0; i < dim; ++i) {
        if (!(J(i, i) > 0.0)) {
            err << "FIM diagonal entry " << i << " is not positive (" << J(i, i) << ")";
            throw SingularFimError(err.str(), std::numeric_limits<double>::infinity(), J(i, i));
        }
    }

    Eigen::VectorXd d = Eigen::VectorXd::Ones(dim);
    if (options.precondition) d = J.diagonal().cwiseSqrt().cwiseInverse();
    const Eigen::MatrixXd scaled = d.asDiagonal() * J * d.asDiagonal();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(scaled);
    if (eig.info() != Eigen::Success) throw std::runtime_error("crlb: eigensolver failed");
    const double lambda_min = eig.eigenvalues().minCoeff();
    const double lambda_max = eig.eigenvalues().maxCoeff();
    const double trace = scaled.trace();

    if (lambda_min < -1e-9 * trace) {
        err << "FIM is indefinite: eigenvalue " << lambda_min << " < -1e-9 * trace";
        throw SingularFimError(err.str(), std::abs(lambda_max / lambda_min), lambda_min);
    }
    if (lambda_min <= 1e-13 * lambda_max) {
        err << "FIM is numerically singular (unidentifiable parameters): eigenvalue ratio "
            << lambda_min / lambda_max;
        throw SingularFimError(err.str(),
                               lambda_min > 0.0 ? lambda_max / lambda_min
                                                : std::numeric_limits<double>::infinity(),
                               lambda_min);
    }

    const double condition = lambda_max / lambda_min;

    Eigen::LLT<Eigen::MatrixXd> llt(scaled);
    if (llt.info() != Eigen::Success) {
        err << "Cholesky factorization of the scaled FIM failed";
        throw SingularFimError(err.str(), condition, lambda_min);
    }
    const Eigen::MatrixXd inv = llt.solve(Eigen::MatrixXd::Identity(dim, dim));

    CrlbValues out;
    out.fim_condition = condition;
    out.paths.resize(dim / 4);
    for (int p = 0; p < dim / 4; ++p) {
        auto bound = [&](Param which) {
            const int i = param_index(p, which);
            return inv(i, i) * d[i] * d[i];
        };
        out.paths[p].amp = bound(Param::Amp);
        out.paths[p].phase_rad2 = bound(Param::Phase);
        out.paths[p].tau_s2 = bound(Param::Tau);
        out.paths[p].nu_hz2 = bound(Param::Nu);
    }
    return out;
}

} // namespace ddsense
