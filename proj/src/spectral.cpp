#include "sqenergy/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sqenergy/error.hpp"

namespace sqenergy {

Eigen::MatrixXd adjacency_matrix(const Graph& g) {
    const auto n = static_cast<Eigen::Index>(g.order());
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (const Edge& e : g.edges()) {
        a(static_cast<Eigen::Index>(e.u), static_cast<Eigen::Index>(e.v)) = 1.0;
        a(static_cast<Eigen::Index>(e.v), static_cast<Eigen::Index>(e.u)) = 1.0;
    }
    return a;
}

Spectrum eigen_decompose(const Graph& g, const Tolerances& tol) {
    Spectrum spec;
    const auto n = static_cast<Eigen::Index>(g.order());
    if (n == 0) return spec;

    const Eigen::MatrixXd a = adjacency_matrix(g);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) {
        throw ConvergenceError("symmetric eigensolver did not converge (n = " + std::to_string(n) + ")",
                               std::numeric_limits<double>::infinity());
    }

    // Eigen returns ascending order; flip to descending.
    const Eigen::VectorXd& values = solver.eigenvalues();
    const Eigen::MatrixXd& vectors = solver.eigenvectors();
    spec.eigenvalues.resize(static_cast<std::size_t>(n));
    spec.eigenvectors.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        spec.eigenvalues[static_cast<std::size_t>(i)] = values(n - 1 - i);
        spec.eigenvectors.col(i) = vectors.col(n - 1 - i);
    }

    double residual = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double lambda = spec.eigenvalues[static_cast<std::size_t>(i)];
        residual = std::max(residual, (a * spec.eigenvectors.col(i) - lambda * spec.eigenvectors.col(i)).norm());
    }
    spec.residual_bound = residual;

    const double scale = std::max(1.0, std::abs(spec.eigenvalues.front()));
    if (residual > tol.eig * scale) {
        throw ConvergenceError("eigen residual " + std::to_string(residual) + " exceeds bound " +
                                   std::to_string(tol.eig * scale),
                               residual);
    }
    return spec;
}

std::vector<double> eigenvalues(const Graph& g) {
    const auto n = static_cast<Eigen::Index>(g.order());
    if (n == 0) return {};
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(adjacency_matrix(g), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw ConvergenceError("symmetric eigensolver did not converge (n = " + std::to_string(n) + ")",
                               std::numeric_limits<double>::infinity());
    }
    std::vector<double> out(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = solver.eigenvalues()(n - 1 - i);
    return out;
}

double zero_threshold(std::span<const double> descending, const Tolerances& tol) {
    const double top = descending.empty() ? 0.0 : descending.front();
    return tol.zero_rel * std::max(1.0, top);
}

EnergyReport square_energies(std::span<const double> descending, std::size_t m, const Tolerances& tol) {
    EnergyReport r;
    r.n = descending.size();
    r.m = m;
    r.zero_threshold = zero_threshold(descending, tol);
    r.eigenvalues.assign(descending.begin(), descending.end());
    for (double lambda : descending) {
        r.energy += std::abs(lambda);
        if (lambda > r.zero_threshold) {
            r.s_plus += lambda * lambda;
        } else if (lambda < -r.zero_threshold) {
            r.s_minus += lambda * lambda;
        }
    }
    r.s = std::min(r.s_plus, r.s_minus);
    return r;
}

EnergyReport square_energies(const Spectrum& spec, std::size_t m, const Tolerances& tol) {
    return square_energies(spec.eigenvalues, m, tol);
}

EnergyReport energy_report(const Graph& g, const Tolerances& tol) {
    return square_energies(eigen_decompose(g, tol), g.size(), tol);
}

double graph_energy(const Spectrum& spec) {
    double e = 0.0;
    for (double lambda : spec.eigenvalues) e += std::abs(lambda);
    return e;
}

SpectralSplit spectral_split(const Spectrum& spec, const Tolerances& tol) {
    if (!spec.has_eigenvectors()) throw PreconditionError("spectral split needs eigenvectors");
    const auto n = static_cast<Eigen::Index>(spec.order());
    SpectralSplit out{Eigen::MatrixXd::Zero(n, n), Eigen::MatrixXd::Zero(n, n)};
    const double eps = zero_threshold(spec.eigenvalues, tol);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double lambda = spec.eigenvalues[static_cast<std::size_t>(i)];
        const auto x = spec.eigenvectors.col(i);
        if (lambda > eps) {
            out.a_plus.noalias() += lambda * x * x.transpose();
        } else if (lambda < -eps) {
            out.a_minus.noalias() -= lambda * x * x.transpose();
        }
    }
    return out;
}

InterlacingResult interlacing_check(std::span<const double> outer, std::span<const double> inner,
                                    double tolerance) {
    if (inner.size() + 1 != outer.size()) {
        throw PreconditionError("interlacing needs |inner| = |outer| - 1, got " + std::to_string(inner.size()) +
                                " and " + std::to_string(outer.size()));
    }
    InterlacingResult r;
    for (std::size_t i = 0; i < inner.size(); ++i) {
        r.max_violation = std::max({r.max_violation, inner[i] - outer[i], outer[i + 1] - inner[i]});
    }
    r.holds = r.max_violation <= tolerance;
    return r;
}

InterlacingResult interlacing_check(const Spectrum& outer, const Spectrum& inner, const Tolerances& tol) {
    return interlacing_check(outer.eigenvalues, inner.eigenvalues, tol.interlace);
}

}  // namespace sqenergy
