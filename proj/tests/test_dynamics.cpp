#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cqed/dynamics.hpp"
#include "cqed/kernels.hpp"
#include "cqed/operators.hpp"
#include "oracles.hpp"

using namespace cqed;

namespace {

SpacePtr jc_space(int cutoff = 1) {
    return enumerate_space({{ModeKind::photon, cutoff, "ph"}},
                           {{RegisterKind::orbital, 2, "orb"}});
}

std::size_t idx(const HilbertSpace& space, std::initializer_list<int> fields) {
    BasisState s;
    for (int f : fields) s.fields.push_back(static_cast<std::uint8_t>(f));
    return space.index_of(s);
}

}  // namespace

TEST_CASE("eigendecompose") {
    SUBCASE("ascending diagonal input returns E = diagonal, V = I") {
        std::vector<Triplet> t{{0, 0, 1.0}, {1, 1, 2.0}, {2, 2, 5.0}};
        const SparseOperator h(3, std::move(t));
        const auto es = eigendecompose(h);
        CHECK(es.energies == std::vector<double>{1.0, 2.0, 5.0});
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j)
                CHECK(std::abs(es.vectors[i * 3 + j] - (i == j ? 1.0 : 0.0)) < 1e-12);
    }
    SUBCASE("2x2 resonant block gives 0.99 and 1.01") {
        std::vector<Triplet> t{{0, 0, 1.0}, {1, 1, 1.0}, {0, 1, 0.01}, {1, 0, 0.01}};
        const SparseOperator h(2, std::move(t));
        const auto es = eigendecompose(h);
        CHECK(es.energies[0] == doctest::Approx(0.99).epsilon(1e-12));
        CHECK(es.energies[1] == doctest::Approx(1.01).epsilon(1e-12));
    }
    SUBCASE("degenerate input: only H V = V E and V+V = I are required") {
        const auto h = SparseOperator::identity(4);
        const auto es = eigendecompose(h);
        const auto d = h.to_dense();
        for (std::size_t j = 0; j < 4; ++j) {
            for (std::size_t i = 0; i < 4; ++i) {
                Complex hv(0.0, 0.0);
                for (std::size_t k = 0; k < 4; ++k) hv += d[i * 4 + k] * es.vectors[k * 4 + j];
                CHECK(std::abs(hv - es.energies[j] * es.vectors[i * 4 + j]) < 1e-9);
            }
        }
        for (std::size_t a = 0; a < 4; ++a)
            for (std::size_t b = 0; b < 4; ++b) {
                Complex dot(0.0, 0.0);
                for (std::size_t k = 0; k < 4; ++k)
                    dot += std::conj(es.vectors[k * 4 + a]) * es.vectors[k * 4 + b];
                CHECK(std::abs(dot - (a == b ? 1.0 : 0.0)) < 1e-9);
            }
    }
    SUBCASE("full residual and unitarity checks on a random Hermitian matrix") {
        std::mt19937 rng(4242);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        const std::size_t dim = 40;
        std::vector<Triplet> t;
        for (std::size_t i = 0; i < dim; ++i) {
            t.push_back({i, i, u(rng)});
            for (std::size_t j = i + 1; j < dim; ++j) {
                const Complex v(u(rng), u(rng));
                t.push_back({i, j, v});
                t.push_back({j, i, std::conj(v)});
            }
        }
        const SparseOperator h(dim, std::move(t));
        const auto es = eigendecompose(h);
        CHECK(std::is_sorted(es.energies.begin(), es.energies.end()));

        const double scale = std::max(std::abs(es.energies.front()),
                                      std::abs(es.energies.back()));
        const auto d = h.to_dense();
        for (std::size_t j = 0; j < dim; ++j) {
            double res = 0.0;
            for (std::size_t i = 0; i < dim; ++i) {
                Complex hv(0.0, 0.0);
                for (std::size_t k = 0; k < dim; ++k)
                    hv += d[i * dim + k] * es.vectors[k * dim + j];
                res += std::norm(hv - es.energies[j] * es.vectors[i * dim + j]);
            }
            CHECK(std::sqrt(res) <= 1e-8 * scale);
        }
    }
    SUBCASE("non-Hermitian input is rejected") {
        std::vector<Triplet> t{{0, 1, 1.0}};
        const SparseOperator h(2, std::move(t));
        CHECK_THROWS_AS(eigendecompose(h), SimError);
    }
}

TEST_CASE("evolve_closed") {
    CouplingSpec c;  // omega = 1, g = 0.01
    auto space = jc_space(1);
    const auto h = build_jc_rwa(*space, c);

    SUBCASE("t = 0 returns the start state exactly") {
        const auto psi0 = StateVector::basis_state(space, idx(*space, {0, 1}));
        const double times[] = {0.0};
        const auto run = evolve_closed(h, psi0, times);
        for (std::size_t i = 0; i < psi0.dim(); ++i)
            CHECK(std::abs(run.states[0].amp[i] - psi0.amp[i]) < 1e-12);
    }

    SUBCASE("resonant Rabi flop: P(excited) = cos^2(gt) within 1e-8") {
        const auto psi0 = StateVector::basis_state(space, idx(*space, {0, 1}));
        const auto times = sample_times(3.0 * M_PI / c.g_mol, 200);
        const auto run = evolve_closed(h, psi0, times);
        const Observable p_exc{number_op(*space, "orb"), "P_excited"};
        for (std::size_t i = 0; i < times.size(); ++i) {
            const double expected = oracles::rabi_excited_probability(c.g_mol, times[i]);
            CHECK(std::abs(expectation(p_exc, run.states[i]) - expected) < 1e-8);
        }
    }

    SUBCASE("site-basis amplitudes match the closed-form four-amplitude solution") {
        // start |0>|O> = alpha |0,Psi0> - beta |0,Psi1>
        std::vector<Complex> amp(space->dim(), Complex(0.0, 0.0));
        amp[idx(*space, {0, 0})] = c.alpha;
        amp[idx(*space, {0, 1})] = -c.beta;
        const auto psi0 = StateVector::from_amplitudes(space, std::move(amp));
        const auto times = sample_times(1000.0, 100);
        const auto run = evolve_closed(h, psi0, times);
        for (std::size_t i = 0; i < times.size(); ++i) {
            const auto& psi = run.states[i].amp;
            // rotate the orbital register back to the site basis
            const Complex c0O = c.alpha * psi[idx(*space, {0, 0})] -
                                c.beta * psi[idx(*space, {0, 1})];
            const Complex c0H = c.beta * psi[idx(*space, {0, 0})] +
                                c.alpha * psi[idx(*space, {0, 1})];
            const Complex c1O = c.alpha * psi[idx(*space, {1, 0})] -
                                c.beta * psi[idx(*space, {1, 1})];
            const Complex c1H = c.beta * psi[idx(*space, {1, 0})] +
                                c.alpha * psi[idx(*space, {1, 1})];
            const auto ref = oracles::jc_four_amplitudes(c.alpha, c.beta, c.omega,
                                                         c.g_mol, times[i]);
            CHECK(std::abs(c0O - ref.c0O) < 1e-8);
            CHECK(std::abs(c0H - ref.c0H) < 1e-8);
            CHECK(std::abs(c1O - ref.c1O) < 1e-8);
            CHECK(std::abs(c1H - ref.c1H) < 1e-8);
        }
    }

    SUBCASE("norm and energy are conserved") {
        std::vector<Complex> amp(space->dim(), Complex(0.0, 0.0));
        amp[idx(*space, {0, 0})] = c.alpha;
        amp[idx(*space, {0, 1})] = -c.beta;
        const auto psi0 = StateVector::from_amplitudes(space, std::move(amp));
        const auto times = sample_times(2000.0, 64);
        const auto run = evolve_closed(h, psi0, times);
        const Observable energy{h, "H"};
        const double e0 = expectation(energy, run.states[0]);
        for (const auto& psi : run.states) {
            CHECK(std::abs(psi.norm() - 1.0) <= 1e-8);
            CHECK(std::abs(expectation(energy, psi) - e0) <= 1e-8);
        }
    }
}

TEST_CASE("evolve_lindblad") {
    auto space = jc_space(1);
    CouplingSpec c;
    const auto h = build_jc_rwa(*space, c);

    SUBCASE("no channels matches the closed solver within 1e-6") {
        std::vector<Complex> amp(space->dim(), Complex(0.0, 0.0));
        amp[idx(*space, {0, 0})] = c.alpha;
        amp[idx(*space, {0, 1})] = -c.beta;
        const auto psi0 = StateVector::from_amplitudes(space, std::move(amp));
        const auto times = sample_times(50.0, 26);

        const auto closed = evolve_closed(h, psi0, times);
        const auto open = evolve_lindblad(h, {}, DensityMatrix::pure(psi0), times, 0.01);

        auto [po, ph] = site_projectors(*space, c, "orb");
        const Observable obs{po, "P_O"};
        for (std::size_t i = 0; i < times.size(); ++i)
            CHECK(std::abs(expectation(obs, closed.states[i]) -
                           expectation(obs, open.states[i])) < 1e-6);
    }

    SUBCASE("lossy cavity: P(n=1) decays as exp(-gamma t) within 1e-5") {
        auto cavity = enumerate_space({{ModeKind::photon, 1, "ph"}},
                                      {{RegisterKind::orbital, 2, "orb"}});
        const auto h0 = SparseOperator::zero(cavity->dim());
        const double gamma = 1.0;
        const LindbladChannel ch{ladder(*cavity, "ph", LadderDirection::annihilate), gamma,
                                 "escape"};
        const auto rho0 =
            DensityMatrix::pure(StateVector::basis_state(cavity, idx(*cavity, {1, 0})));
        const auto times = sample_times(5.0, 26);
        const auto run = evolve_lindblad(h0, {&ch, 1}, rho0, times, 0.001);
        const Observable n{number_op(*cavity, "ph"), "n"};
        for (std::size_t i = 0; i < times.size(); ++i)
            CHECK(std::abs(expectation(n, run.states[i]) -
                           oracles::lossy_cavity_p1(gamma, times[i])) < 1e-5);
    }

    SUBCASE("maximally mixed state keeps trace 1 within 1e-6") {
        const LindbladChannel ch{ladder(*space, "ph", LadderDirection::annihilate), 0.05,
                                 "escape"};
        const auto rho0 = DensityMatrix::maximally_mixed(space, space->dim());
        const auto times = sample_times(100.0, 11);
        const auto run = evolve_lindblad(h, {&ch, 1}, rho0, times, 0.01);
        CHECK(run.max_trace_drift <= 1e-6);
        for (const auto& rho : run.states)
            CHECK(std::abs(rho.trace() - Complex(1.0, 0.0)) <= 1e-6);
    }

    SUBCASE("positivity stays above -1e-6") {
        const LindbladChannel ch{ladder(*space, "ph", LadderDirection::annihilate), 0.05,
                                 "escape"};
        std::vector<Complex> amp(space->dim(), Complex(0.0, 0.0));
        amp[idx(*space, {0, 0})] = c.alpha;
        amp[idx(*space, {0, 1})] = -c.beta;
        const auto psi0 = StateVector::from_amplitudes(space, std::move(amp));
        const auto times = sample_times(200.0, 21);
        const auto run = evolve_lindblad(h, {&ch, 1}, DensityMatrix::pure(psi0), times, 0.01);
        for (const auto& rho : run.states) CHECK(min_eigenvalue(rho) >= -1e-6);
    }

    SUBCASE("halving dt changes final observables by less than 1e-6") {
        const LindbladChannel ch{ladder(*space, "ph", LadderDirection::annihilate), 0.02,
                                 "escape"};
        std::vector<Complex> amp(space->dim(), Complex(0.0, 0.0));
        amp[idx(*space, {0, 0})] = c.alpha;
        amp[idx(*space, {0, 1})] = -c.beta;
        const auto psi0 = StateVector::from_amplitudes(space, std::move(amp));
        const auto times = sample_times(50.0, 6);
        const auto rho0 = DensityMatrix::pure(psi0);
        const auto coarse = evolve_lindblad(h, {&ch, 1}, rho0, times, 0.02);
        const auto fine = evolve_lindblad(h, {&ch, 1}, rho0, times, 0.01);
        auto [po, ph] = site_projectors(*space, c, "orb");
        const Observable obs{po, "P_O"};
        CHECK(std::abs(expectation(obs, coarse.states.back()) -
                       expectation(obs, fine.states.back())) < 1e-6);
    }

    SUBCASE("an unstable step size is reported with advice") {
        const LindbladChannel ch{ladder(*space, "ph", LadderDirection::annihilate), 1.0,
                                 "escape"};
        const auto rho0 =
            DensityMatrix::pure(StateVector::basis_state(space, idx(*space, {1, 1})));
        const auto times = sample_times(100.0, 3);
        CHECK_THROWS_WITH_AS(evolve_lindblad(h, {&ch, 1}, rho0, times, 3.0),
                             doctest::Contains("smaller dt"), SimError);
    }
}

TEST_CASE("expectation") {
    auto space = jc_space(1);
    const auto psi = StateVector::basis_state(space, 2);

    SUBCASE("projector onto the state itself gives 1, orthogonal gives 0") {
        std::vector<Triplet> t{{2, 2, 1.0}};
        const Observable self{SparseOperator(space->dim(), std::move(t)), "P_self"};
        CHECK(expectation(self, psi) == doctest::Approx(1.0));
        std::vector<Triplet> o{{1, 1, 1.0}};
        const Observable other{SparseOperator(space->dim(), std::move(o)), "P_other"};
        CHECK(expectation(other, psi) == doctest::Approx(0.0));
    }
    SUBCASE("non-Hermitian observable triggers the imaginary-residue error") {
        std::vector<Triplet> t{{0, 2, Complex(0.0, 0.7)}};
        const Observable bad{SparseOperator(space->dim(), std::move(t)), "bad"};
        std::vector<Complex> amp(space->dim(), Complex(0.0, 0.0));
        amp[0] = amp[2] = std::sqrt(0.5);
        const auto sup = StateVector::from_amplitudes(space, std::move(amp));
        CHECK_THROWS_WITH_AS(expectation(bad, sup), doctest::Contains("imaginary"),
                             SimError);
    }
}

TEST_CASE("state and density-matrix validation") {
    auto space = jc_space(1);
    SUBCASE("non-normalized amplitudes are rejected") {
        std::vector<Complex> amp(space->dim(), Complex(0.5, 0.0));
        CHECK_THROWS_AS(StateVector::from_amplitudes(space, std::move(amp)), SimError);
    }
    SUBCASE("pure density has unit trace and is Hermitian") {
        std::vector<Complex> amp(space->dim(), Complex(0.0, 0.0));
        amp[0] = Complex(0.6, 0.0);
        amp[3] = Complex(0.0, 0.8);
        const auto rho = DensityMatrix::pure(StateVector::from_amplitudes(space, std::move(amp)));
        CHECK(std::abs(rho.trace() - Complex(1.0, 0.0)) < 1e-12);
        const auto validated = DensityMatrix::from_matrix(space, rho.dim, rho.m);
        CHECK(validated.dim == rho.dim);
    }
    SUBCASE("trace-violating matrices are rejected") {
        std::vector<Complex> m(space->dim() * space->dim(), Complex(0.0, 0.0));
        m[0] = 2.0;
        CHECK_THROWS_AS(DensityMatrix::from_matrix(space, space->dim(), std::move(m)),
                        SimError);
    }
}

TEST_CASE("steady state detection") {
    TimeSeries s;
    s.times = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
    s.labels = {"x"};
    s.columns = {{1.0, 0.5, 0.3, 0.2, 0.15, 0.12, 0.1200005, 0.12, 0.1200001, 0.12}};
    CHECK(steady_state_reached(s, 3.0, 1e-4));
    CHECK(!steady_state_reached(s, 9.0, 1e-4));
}
