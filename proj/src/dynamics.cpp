#include "cqed/dynamics.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>

#include "cqed/kernels.hpp"

namespace cqed {

double StateVector::norm() const { return kernels::norm2(amp.data(), amp.size()); }

StateVector StateVector::basis_state(SpacePtr space, std::size_t index) {
    require(space && index < space->dim(), ErrorCode::logic, "basis_state: bad index");
    StateVector s{std::move(space), {}};
    s.amp.assign(s.space->dim(), Complex(0.0, 0.0));
    s.amp[index] = 1.0;
    return s;
}

StateVector StateVector::from_amplitudes(SpacePtr space, std::vector<Complex> amp) {
    StateVector s{std::move(space), std::move(amp)};
    require(!s.space || s.space->dim() == s.amp.size(), ErrorCode::logic,
            "state vector length does not match the space");
    require(std::abs(s.norm() - 1.0) <= 1e-9, ErrorCode::logic,
            "state vector is not normalized (||psi|| = " + std::to_string(s.norm()) + ")");
    return s;
}

Complex DensityMatrix::trace() const { return kernels::trace(m.data(), dim); }

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
    DensityMatrix rho{psi.space, psi.dim(), {}};
    rho.m.assign(rho.dim * rho.dim, Complex(0.0, 0.0));
    for (std::size_t i = 0; i < rho.dim; ++i)
        for (std::size_t j = 0; j < rho.dim; ++j)
            rho.m[i * rho.dim + j] = psi.amp[i] * std::conj(psi.amp[j]);
    return rho;
}

DensityMatrix DensityMatrix::maximally_mixed(SpacePtr space, std::size_t dim) {
    DensityMatrix rho{std::move(space), dim, {}};
    rho.m.assign(dim * dim, Complex(0.0, 0.0));
    for (std::size_t i = 0; i < dim; ++i) rho.m[i * dim + i] = 1.0 / double(dim);
    return rho;
}

DensityMatrix DensityMatrix::from_matrix(SpacePtr space, std::size_t dim,
                                         std::vector<Complex> m) {
    require(m.size() == dim * dim, ErrorCode::logic, "density matrix size mismatch");
    DensityMatrix rho{std::move(space), dim, std::move(m)};
    require(!rho.space || rho.space->dim() == dim, ErrorCode::logic,
            "density matrix does not match the space");
    double asym = 0.0;
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = i; j < dim; ++j)
            asym = std::max(asym,
                            std::abs(rho.m[i * dim + j] - std::conj(rho.m[j * dim + i])));
    require(asym <= 1e-9, ErrorCode::logic, "density matrix is not Hermitian");
    require(std::abs(rho.trace() - Complex(1.0, 0.0)) <= 1e-9, ErrorCode::logic,
            "density matrix trace is not 1");
    return rho;
}

namespace {

std::vector<double> dense_hermitian_eigen(std::vector<Complex>& a, std::size_t dim,
                                          char jobz) {
    std::vector<double> w(dim);
    const lapack_int n = static_cast<lapack_int>(dim);
    const lapack_int info = LAPACKE_zheevd(
        LAPACK_ROW_MAJOR, jobz, 'U', n,
        reinterpret_cast<lapack_complex_double*>(a.data()), n, w.data());
    require(info == 0, ErrorCode::logic,
            "zheevd failed with info = " + std::to_string(info));
    return w;
}

}  // namespace

EigenSystem eigendecompose(const SparseOperator& h) {
    require(h.hermitian(), ErrorCode::logic, "eigendecompose: operator is not Hermitian");
    EigenSystem es;
    es.dim = h.dim();
    es.vectors = h.to_dense();
    es.energies = dense_hermitian_eigen(es.vectors, es.dim, 'V');

    // Spot-check a few eigenpairs; full residual checks live in the tests.
    const double scale = std::max(
        1.0, std::max(std::abs(es.energies.front()), std::abs(es.energies.back())));
    const Csr hc(h);
    std::vector<Complex> v(es.dim), hv(es.dim);
    for (std::size_t j : {std::size_t{0}, es.dim / 2, es.dim - 1}) {
        for (std::size_t i = 0; i < es.dim; ++i) v[i] = es.vectors[i * es.dim + j];
        kernels::spmv(hc, v.data(), hv.data());
        double res = 0.0;
        for (std::size_t i = 0; i < es.dim; ++i)
            res += std::norm(hv[i] - es.energies[j] * v[i]);
        require(std::sqrt(res) <= 1e-8 * scale, ErrorCode::logic,
                "eigendecompose: residual check failed");
    }
    return es;
}

std::vector<double> sample_times(double horizon, std::size_t samples) {
    require(horizon > 0.0 && samples >= 2, ErrorCode::config,
            "sampling needs horizon > 0 and at least 2 samples");
    std::vector<double> t(samples);
    for (std::size_t i = 0; i < samples; ++i)
        t[i] = horizon * double(i) / double(samples - 1);
    return t;
}

ClosedRun evolve_closed(const SparseOperator& h, const StateVector& psi0,
                        std::span<const double> times, double hbar,
                        const EigenSystem* eigensystem) {
    require(h.dim() == psi0.dim(), ErrorCode::logic, "evolve_closed: dimension mismatch");
    require(hbar > 0.0, ErrorCode::config, "evolve_closed: hbar must be > 0");

    EigenSystem local;
    if (!eigensystem) {
        local = eigendecompose(h);
        eigensystem = &local;
    }
    require(eigensystem->dim == h.dim(), ErrorCode::logic,
            "evolve_closed: eigensystem dimension mismatch");

    const std::size_t dim = h.dim();
    std::vector<Complex> lambda(dim), phased(dim);
    kernels::matvec_adjoint(eigensystem->vectors.data(), psi0.amp.data(), lambda.data(), dim);

    ClosedRun run;
    run.times.assign(times.begin(), times.end());
    run.states.reserve(times.size());
    for (double t : times) {
        kernels::phase_coeffs(eigensystem->energies.data(), lambda.data(), phased.data(),
                              dim, t, hbar);
        StateVector psi{psi0.space, std::vector<Complex>(dim)};
        kernels::matvec(eigensystem->vectors.data(), phased.data(), psi.amp.data(), dim);
        require(std::abs(psi.norm() - 1.0) <= 1e-8, ErrorCode::logic,
                "evolve_closed: norm drifted beyond 1e-8 at t = " + std::to_string(t));
        run.states.push_back(std::move(psi));
    }
    return run;
}

namespace {

// Right-hand side of the master equation in working buffers.
struct LindbladRhs {
    Csr h;
    std::vector<Csr> a, adag, adaga;
    std::vector<double> gamma;
    double hbar;
    std::size_t dim;
    std::vector<Complex> tmp;

    LindbladRhs(const SparseOperator& hs, std::span<const LindbladChannel> channels,
                double hb)
        : h(hs), hbar(hb), dim(hs.dim()), tmp(hs.dim() * hs.dim()) {
        for (const auto& ch : channels) {
            require(ch.gamma >= 0.0, ErrorCode::config, "channel rate must be >= 0");
            require(ch.a.dim() == dim, ErrorCode::logic, "channel dimension mismatch");
            const SparseOperator ad = ch.a.adjoint();
            a.emplace_back(ch.a);
            adag.emplace_back(ad);
            adaga.emplace_back(mul(ad, ch.a));
            gamma.push_back(ch.gamma);
        }
    }

    // k = -(i/hbar)[H, rho] + sum_i gamma_i (A rho A+ - 1/2 {A+A, rho})
    void operator()(const Complex* rho, Complex* k) {
        const std::size_t n = dim * dim;
        std::fill(k, k + n, Complex(0.0, 0.0));
        const Complex mi(0.0, -1.0 / hbar), pi(0.0, 1.0 / hbar);
        kernels::spmm_left_acc(h, rho, k, dim, mi);
        kernels::spmm_right_acc(h, rho, k, dim, pi);
        for (std::size_t c = 0; c < a.size(); ++c) {
            if (gamma[c] == 0.0) continue;
            std::fill(tmp.begin(), tmp.end(), Complex(0.0, 0.0));
            kernels::spmm_left_acc(a[c], rho, tmp.data(), dim, 1.0);
            kernels::spmm_right_acc(adag[c], tmp.data(), k, dim, gamma[c]);
            kernels::spmm_left_acc(adaga[c], rho, k, dim, -0.5 * gamma[c]);
            kernels::spmm_right_acc(adaga[c], rho, k, dim, -0.5 * gamma[c]);
        }
    }
};

}  // namespace

OpenRun evolve_lindblad(const SparseOperator& h, std::span<const LindbladChannel> channels,
                        const DensityMatrix& rho0, std::span<const double> times,
                        double dt, double hbar) {
    require(h.dim() == rho0.dim, ErrorCode::logic, "evolve_lindblad: dimension mismatch");
    require(h.hermitian(), ErrorCode::logic, "evolve_lindblad: H is not Hermitian");
    require(dt > 0.0, ErrorCode::config, "evolve_lindblad: dt must be > 0");
    require(!times.empty(), ErrorCode::config, "evolve_lindblad: no sample times");

    const std::size_t dim = rho0.dim;
    const std::size_t n = dim * dim;
    LindbladRhs rhs(h, channels, hbar);

    std::vector<Complex> rho(rho0.m), k1(n), k2(n), k3(n), k4(n), stage(n);
    OpenRun run;
    run.times.assign(times.begin(), times.end());
    run.states.reserve(times.size());

    double t = 0.0;
    for (double ts : times) {
        require(ts >= t - 1e-12, ErrorCode::config, "sample times must ascend from 0");
        while (ts - t > 1e-12) {
            const double step = std::min(dt, ts - t);
            rhs(rho.data(), k1.data());
            kernels::copy_add_scaled(stage.data(), rho.data(), k1.data(), n, 0.5 * step);
            rhs(stage.data(), k2.data());
            kernels::copy_add_scaled(stage.data(), rho.data(), k2.data(), n, 0.5 * step);
            rhs(stage.data(), k3.data());
            kernels::copy_add_scaled(stage.data(), rho.data(), k3.data(), n, step);
            rhs(stage.data(), k4.data());
            kernels::rk4_combine(rho.data(), k1.data(), k2.data(), k3.data(), k4.data(), n,
                                 step);
            kernels::hermitize(rho.data(), dim);
            ++run.steps;
            t += step;

            const double drift = std::abs(kernels::trace(rho.data(), dim) - Complex(1.0, 0.0));
            run.max_trace_drift = std::max(run.max_trace_drift, drift);
            require(drift <= 1e-4, ErrorCode::instability,
                    "evolve_lindblad: trace drift " + std::to_string(drift) +
                        " at t = " + std::to_string(t) + "; use a smaller dt");
        }
        run.states.push_back(DensityMatrix{rho0.space, dim, rho});
    }
    return run;
}

namespace {

double checked_real(Complex v, const std::string& label) {
    require(std::abs(v.imag()) <= 1e-9, ErrorCode::logic,
            "expectation of '" + label + "' has imaginary residue " +
                std::to_string(v.imag()) + "; observable is not Hermitian");
    return v.real();
}

}  // namespace

double expectation(const Observable& obs, const StateVector& psi) {
    require(obs.op.dim() == psi.dim(), ErrorCode::logic, "expectation: dimension mismatch");
    return checked_real(kernels::expectation_vec(obs.op, psi.amp.data()), obs.label);
}

double expectation(const Observable& obs, const DensityMatrix& rho) {
    require(obs.op.dim() == rho.dim, ErrorCode::logic, "expectation: dimension mismatch");
    return checked_real(kernels::expectation_rho(obs.op, rho.m.data()), obs.label);
}

template <typename Run>
static TimeSeries sample_impl(const Run& run, std::span<const Observable> obs) {
    TimeSeries s;
    s.times = run.times;
    for (const auto& o : obs) {
        s.labels.push_back(o.label);
        std::vector<double> col;
        col.reserve(run.states.size());
        for (const auto& st : run.states) col.push_back(expectation(o, st));
        s.columns.push_back(std::move(col));
    }
    return s;
}

TimeSeries sample_observables(const ClosedRun& run, std::span<const Observable> obs) {
    return sample_impl(run, obs);
}

TimeSeries sample_observables(const OpenRun& run, std::span<const Observable> obs) {
    return sample_impl(run, obs);
}

double min_eigenvalue(const DensityMatrix& rho) {
    std::vector<Complex> a(rho.m);
    const auto w = dense_hermitian_eigen(a, rho.dim, 'N');
    return w.front();
}

bool steady_state_reached(const TimeSeries& series, double window, double tol) {
    if (series.times.size() < 2) return false;
    const double t_end = series.times.back();
    std::size_t first = 0;
    while (first < series.times.size() && series.times[first] < t_end - window) ++first;
    if (first + 2 > series.times.size()) return false;
    for (const auto& col : series.columns) {
        double lo = col[first], hi = col[first];
        for (std::size_t i = first; i < col.size(); ++i) {
            lo = std::min(lo, col[i]);
            hi = std::max(hi, col[i]);
        }
        if (hi - lo >= tol) return false;
    }
    return true;
}

}  // namespace cqed
