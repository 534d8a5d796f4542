#pragma once

#include <span>
#include <string>
#include <vector>

#include "cqed/hilbert.hpp"
#include "cqed/sparse.hpp"

namespace cqed {

// Normalized pure state. `space` may be null for vectors living on a reduced
// or ad-hoc basis.
struct StateVector {
    SpacePtr space;
    std::vector<Complex> amp;

    std::size_t dim() const { return amp.size(); }
    double norm() const;

    static StateVector basis_state(SpacePtr space, std::size_t index);
    // Validates ||psi|| = 1 within 1e-9.
    static StateVector from_amplitudes(SpacePtr space, std::vector<Complex> amp);
};

// Dense Hermitian density matrix, row-major.
struct DensityMatrix {
    SpacePtr space;
    std::size_t dim = 0;
    std::vector<Complex> m;

    Complex trace() const;
    static DensityMatrix pure(const StateVector& psi);
    static DensityMatrix maximally_mixed(SpacePtr space, std::size_t dim);
    // Validates hermiticity and unit trace within 1e-9.
    static DensityMatrix from_matrix(SpacePtr space, std::size_t dim, std::vector<Complex> m);
};

// Collapse operator A with rate gamma >= 0.
struct LindbladChannel {
    SparseOperator a;
    double gamma = 0.0;
    std::string label;
};

struct Observable {
    SparseOperator op;
    std::string label;
};

// Full spectrum of a Hermitian operator. `vectors` is row-major with
// eigenvector j in column j; energies ascend.
struct EigenSystem {
    std::size_t dim = 0;
    std::vector<double> energies;
    std::vector<Complex> vectors;
};

EigenSystem eigendecompose(const SparseOperator& h);

struct ClosedRun {
    std::vector<double> times;
    std::vector<StateVector> states;
};

// psi(t) = sum_j exp(-i E_j t / hbar) <psi_j|psi0> |psi_j>. Pass a
// precomputed EigenSystem to amortize the decomposition across runs.
ClosedRun evolve_closed(const SparseOperator& h, const StateVector& psi0,
                        std::span<const double> times, double hbar = 1.0,
                        const EigenSystem* eigensystem = nullptr);

struct OpenRun {
    std::vector<double> times;
    std::vector<DensityMatrix> states;
    double max_trace_drift = 0.0;
    std::size_t steps = 0;
};

// Fixed-step RK4 integration of the Lindblad master equation with post-step
// re-symmetrization. Throws SimError(instability) when the trace drifts by
// more than 1e-4.
OpenRun evolve_lindblad(const SparseOperator& h, std::span<const LindbladChannel> channels,
                        const DensityMatrix& rho0, std::span<const double> times,
                        double dt, double hbar = 1.0);

double expectation(const Observable& obs, const StateVector& psi);
double expectation(const Observable& obs, const DensityMatrix& rho);

struct TimeSeries {
    std::vector<double> times;
    std::vector<std::string> labels;
    std::vector<std::vector<double>> columns;  // one per label
};

TimeSeries sample_observables(const ClosedRun& run, std::span<const Observable> obs);
TimeSeries sample_observables(const OpenRun& run, std::span<const Observable> obs);

// Uniform grid of `samples` points over [0, horizon].
std::vector<double> sample_times(double horizon, std::size_t samples);

double min_eigenvalue(const DensityMatrix& rho);

// True when every observable changes by less than tol over the trailing
// window of the series.
bool steady_state_reached(const TimeSeries& series, double window, double tol);

}  // namespace cqed
