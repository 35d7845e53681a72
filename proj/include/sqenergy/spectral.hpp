#pragma once

#include <Eigen/Dense>

#include <span>
#include <vector>

#include "sqenergy/graph.hpp"

namespace sqenergy {

// Numerical thresholds used across the library. Every report records the
// values it was produced with.
struct Tolerances {
    double eig = 1e-10;       // eigen-residual bound, scaled by max(1, |lambda_1|)
    double zero_rel = 1e-8;   // eigenvalues with |lambda| <= zero_rel * max(1, lambda_1) count as zero
    double trace = 1e-8;      // |sum lambda| <= trace * n, |sum lambda^2 - 2m| <= trace * max(1, 2m)
    double split = 1e-7;      // A = A+ - A-, A+ A- = 0, PSD checks
    double cert = 1e-6;       // certificate slack
    double interlace = 1e-8;  // interlacing chains
};

Eigen::MatrixXd adjacency_matrix(const Graph& g);

struct Spectrum {
    std::vector<double> eigenvalues;  // descending
    Eigen::MatrixXd eigenvectors;     // column i pairs with eigenvalues[i]; may be empty
    double residual_bound = 0.0;      // max_i ||A x_i - lambda_i x_i||_2

    std::size_t order() const noexcept { return eigenvalues.size(); }
    bool has_eigenvectors() const noexcept {
        return eigenvectors.cols() == static_cast<Eigen::Index>(eigenvalues.size());
    }
};

// Full symmetric eigendecomposition. Throws ConvergenceError if the solver
// fails or the achieved residual exceeds tol.eig * max(1, |lambda_1|).
Spectrum eigen_decompose(const Graph& g, const Tolerances& tol = {});

// Eigenvalues only, descending; for sweeps that never need eigenvectors.
std::vector<double> eigenvalues(const Graph& g);

struct EnergyReport {
    std::size_t n = 0;
    std::size_t m = 0;
    double s_plus = 0.0;
    double s_minus = 0.0;
    double s = 0.0;
    double energy = 0.0;
    double zero_threshold = 0.0;
    std::vector<double> eigenvalues;
};

double zero_threshold(std::span<const double> descending, const Tolerances& tol = {});

EnergyReport square_energies(std::span<const double> descending, std::size_t m, const Tolerances& tol = {});
EnergyReport square_energies(const Spectrum& spec, std::size_t m, const Tolerances& tol = {});

// Convenience: decompose g and report.
EnergyReport energy_report(const Graph& g, const Tolerances& tol = {});

double graph_energy(const Spectrum& spec);

struct SpectralSplit {
    Eigen::MatrixXd a_plus;
    Eigen::MatrixXd a_minus;
};

// A+ = sum over positive lambda of lambda x x^T, A- = -sum over negative lambda.
// Requires eigenvectors. Zero-classified eigenvalues are dropped.
SpectralSplit spectral_split(const Spectrum& spec, const Tolerances& tol = {});

struct InterlacingResult {
    bool holds = true;
    double max_violation = 0.0;  // largest amount by which an inequality fails (0 if none)
};

// outer has order k, inner order k-1; checks outer_i >= inner_i >= outer_{i+1}.
InterlacingResult interlacing_check(std::span<const double> outer, std::span<const double> inner,
                                    double tolerance);
InterlacingResult interlacing_check(const Spectrum& outer, const Spectrum& inner, const Tolerances& tol = {});

}  // namespace sqenergy
