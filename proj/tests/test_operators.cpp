#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cqed/kernels.hpp"
#include "cqed/operators.hpp"
#include "oracles.hpp"

using namespace cqed;

namespace {

SpacePtr jc_space(int cutoff = 2) {
    return enumerate_space({{ModeKind::photon, cutoff, "ph"}},
                           {{RegisterKind::orbital, 2, "orb"}});
}

std::vector<Complex> apply(const SparseOperator& op, const std::vector<Complex>& x) {
    std::vector<Complex> y(op.dim());
    kernels::spmv(Csr(op), x.data(), y.data());
    return y;
}

std::vector<Complex> unit(std::size_t dim, std::size_t at) {
    std::vector<Complex> v(dim, Complex(0.0, 0.0));
    v[at] = 1.0;
    return v;
}

}  // namespace

TEST_CASE("ladder operators on the truncated Fock space") {
    auto space = jc_space(2);
    const auto a = ladder(*space, "ph", LadderDirection::annihilate);
    const auto adag = ladder(*space, "ph", LadderDirection::create);

    auto idx = [&](int n, int l) {
        BasisState s;
        s.fields = {static_cast<std::uint8_t>(n), static_cast<std::uint8_t>(l)};
        return space->index_of(s);
    };

    SUBCASE("annihilate |1> -> 1 |0>") {
        const auto y = apply(a, unit(space->dim(), idx(1, 0)));
        CHECK(std::abs(y[idx(0, 0)] - 1.0) < 1e-15);
        CHECK(kernels::norm2(y.data(), y.size()) == doctest::Approx(1.0));
    }
    SUBCASE("annihilate |0> -> 0") {
        const auto y = apply(a, unit(space->dim(), idx(0, 0)));
        CHECK(kernels::norm2(y.data(), y.size()) == 0.0);
    }
    SUBCASE("create |1> -> sqrt(2) |2>") {
        const auto y = apply(adag, unit(space->dim(), idx(1, 1)));
        CHECK(std::abs(y[idx(2, 1)] - std::sqrt(2.0)) < 1e-15);
    }
    SUBCASE("create on the cutoff state -> 0") {
        const auto y = apply(adag, unit(space->dim(), idx(2, 0)));
        CHECK(kernels::norm2(y.data(), y.size()) == 0.0);
    }
    SUBCASE("create is the exact adjoint of annihilate") {
        const auto diff = add(adag, a.adjoint(), 1.0, -1.0);
        CHECK(diff.nnz() == 0);
    }
    SUBCASE("unknown mode label") {
        CHECK_THROWS_AS(ladder(*space, "nope", LadderDirection::annihilate), SimError);
    }
}

TEST_CASE("two-level raising and lowering") {
    auto space = jc_space(1);
    const auto lower = two_level(*space, "orb", TwoLevelDirection::lower);
    const auto raise = two_level(*space, "orb", TwoLevelDirection::raise);
    auto idx = [&](int n, int l) {
        BasisState s;
        s.fields = {static_cast<std::uint8_t>(n), static_cast<std::uint8_t>(l)};
        return space->index_of(s);
    };

    SUBCASE("lower maps excited to ground") {
        const auto y = apply(lower, unit(space->dim(), idx(0, 1)));
        CHECK(std::abs(y[idx(0, 0)] - 1.0) < 1e-15);
    }
    SUBCASE("raise on excited gives zero") {
        const auto y = apply(raise, unit(space->dim(), idx(0, 1)));
        CHECK(kernels::norm2(y.data(), y.size()) == 0.0);
    }
    SUBCASE("(raise)+ = lower as matrices") {
        CHECK(add(raise.adjoint(), lower, 1.0, -1.0).nnz() == 0);
    }
    SUBCASE("registers with other arities are rejected") {
        auto wide = enumerate_space({{ModeKind::photon, 1, "ph"}},
                                    {{RegisterKind::bond, 4, "cov"}});
        CHECK_THROWS_AS(two_level(*wide, "cov", TwoLevelDirection::raise), SimError);
    }
}

TEST_CASE("hybrid basis change") {
    SUBCASE("alpha = 1 gives the identity") {
        CouplingSpec c;
        c.alpha = 1.0;
        c.beta = 0.0;
        const auto u = hybrid_basis_change(c);
        CHECK(u[0] == 1.0);
        CHECK(u[1] == 0.0);
        CHECK(u[2] == -0.0);
        CHECK(u[3] == 1.0);
    }
    SUBCASE("alpha = beta = 1/sqrt(2) is the balanced rotation") {
        CouplingSpec c;
        c.alpha = c.beta = std::sqrt(0.5);
        const auto u = hybrid_basis_change(c);
        CHECK(u[0] == doctest::Approx(u[1]));
        CHECK(u[3] == doctest::Approx(-u[2]));
    }
    SUBCASE("rows stay orthonormal for admissible weights") {
        std::mt19937 rng(99);
        std::uniform_real_distribution<double> u01(0.05, 0.95);
        for (int trial = 0; trial < 50; ++trial) {
            CouplingSpec c;
            c.alpha = std::sqrt(u01(rng));
            c.beta = std::sqrt(1.0 - c.alpha * c.alpha);
            const auto u = hybrid_basis_change(c);
            CHECK(std::abs(u[0] * u[2] + u[1] * u[3]) < 1e-15);  // <Psi0|Psi1> = 0
            CHECK(u[0] * u[0] + u[1] * u[1] == doctest::Approx(1.0));
            CHECK(u[2] * u[2] + u[3] * u[3] == doctest::Approx(1.0));
        }
    }
    SUBCASE("non-normalized weights are rejected") {
        CouplingSpec c;
        c.alpha = 0.9;
        c.beta = 0.9;
        CHECK_THROWS_AS(hybrid_basis_change(c), SimError);
    }
}

TEST_CASE("site projectors complete to the identity") {
    auto space = jc_space(1);
    CouplingSpec c;
    auto [po, ph] = site_projectors(*space, c, "orb");
    const auto sum = add(po, ph);
    const auto diff = add(sum, SparseOperator::identity(space->dim()), 1.0, -1.0);
    CHECK(diff.max_abs() < 1e-15);
    CHECK(po.hermitian());
    CHECK(add(mul(po, po), po, 1.0, -1.0).max_abs() < 1e-10);  // idempotent
}

TEST_CASE("build_jc_rwa") {
    CouplingSpec c;  // hbar = omega = 1, g = 0.01
    auto space = jc_space(1);
    const auto h = build_jc_rwa(*space, c);
    auto idx = [&](int n, int l) {
        BasisState s;
        s.fields = {static_cast<std::uint8_t>(n), static_cast<std::uint8_t>(l)};
        return space->index_of(s);
    };

    SUBCASE("single-excitation block has diagonal (1,1) and off-diagonal g") {
        CHECK(h.at(idx(0, 1), idx(0, 1)) == Complex(1.0, 0.0));
        CHECK(h.at(idx(1, 0), idx(1, 0)) == Complex(1.0, 0.0));
        CHECK(h.at(idx(0, 1), idx(1, 0)) == Complex(0.01, 0.0));
        CHECK(h.at(idx(1, 0), idx(0, 1)) == Complex(0.01, 0.0));
    }
    SUBCASE("g = 0 leaves the number operator sum") {
        CouplingSpec c0 = c;
        c0.g_mol = 0.0;
        const auto h0 = build_jc_rwa(*space, c0);
        for (const auto& e : h0.entries()) CHECK(e.row == e.col);
        CHECK(h0.at(idx(1, 1), idx(1, 1)) == Complex(2.0, 0.0));
    }
    SUBCASE("hand-diagonalized 2x2 block eigenvalues are 1 +- g") {
        const double g = 0.01;
        const double tr = 2.0, det = 1.0 - g * g;
        const double disc = std::sqrt(tr * tr / 4.0 - det);
        CHECK(tr / 2.0 - disc == doctest::Approx(0.99));
        CHECK(tr / 2.0 + disc == doctest::Approx(1.01));
    }
    SUBCASE("hermitian within 1e-12") {
        CHECK(h.hermitian());
        CHECK(oracles::hermitian_defect(h) <= 1e-12);
    }
    SUBCASE("no leakage out of the single-excitation block") {
        const auto y = apply(h, unit(space->dim(), idx(0, 1)));
        for (std::size_t i = 0; i < y.size(); ++i) {
            const auto& s = space->state_at(i);
            const int excitation = s.fields[0] + s.fields[1];
            if (excitation != 1) CHECK(std::abs(y[i]) == 0.0);
        }
    }
    SUBCASE("exchange term conserves the excitation number") {
        const auto n = add(number_op(*space, "ph"), number_op(*space, "orb"));
        CHECK(commutator(h, n).max_abs() <= 1e-12);
    }
    SUBCASE("wrong space shape is rejected") {
        auto wide = enumerate_space({{ModeKind::photon, 1, "a"}, {ModeKind::photon, 1, "b"}},
                                    {{RegisterKind::orbital, 2, "orb"}});
        CHECK_THROWS_AS(build_jc_rwa(*wide, c), SimError);
    }
}

namespace {

SpacePtr two_electron_space(int cutoff = 2) {
    return enumerate_space(
        {{ModeKind::photon, cutoff, "ph_up"}, {ModeKind::photon, cutoff, "ph_dn"}},
        {{RegisterKind::orbital, 2, "orb_up"},
         {RegisterKind::orbital, 2, "orb_dn"},
         {RegisterKind::spin, 2, "spin_up"},
         {RegisterKind::spin, 2, "spin_dn"}},
        [](const BasisState& s) { return s.fields[4] == 0 && s.fields[5] == 1; });
}

}  // namespace

TEST_CASE("build_two_electron_H") {
    CouplingSpec c;
    auto space = two_electron_space();
    const auto h = build_two_electron_H(*space, c);

    SUBCASE("hermitian") { CHECK(h.hermitian()); }
    SUBCASE("g_mol = 0 gives a diagonal number operator") {
        CouplingSpec c0 = c;
        c0.g_mol = 0.0;
        const auto h0 = build_two_electron_H(*space, c0);
        for (const auto& e : h0.entries()) CHECK(e.row == e.col);
    }
    SUBCASE("the global ground state is annihilated") {
        BasisState g0;
        g0.fields = {0, 0, 0, 0, 0, 1};
        const auto y = apply(h, unit(space->dim(), space->index_of(g0)));
        CHECK(kernels::norm2(y.data(), y.size()) == 0.0);
    }
    SUBCASE("couplings connect states by one photon + one flip in the same spin sector") {
        BasisState start;
        start.fields = {0, 0, 0, 1, 0, 1};
        const std::size_t col = space->index_of(start);
        for (const auto& e : h.entries()) {
            if (e.col != col || e.row == col) continue;
            const auto& t = space->state_at(e.row);
            const int dpu = int(t.fields[0]) - int(start.fields[0]);
            const int dpd = int(t.fields[1]) - int(start.fields[1]);
            const int dou = int(t.fields[2]) - int(start.fields[2]);
            const int dod = int(t.fields[3]) - int(start.fields[3]);
            const bool up_exchange = dpu == -dou && dpu != 0 && dpd == 0 && dod == 0;
            const bool dn_exchange = dpd == -dod && dpd != 0 && dpu == 0 && dou == 0;
            CHECK((up_exchange || dn_exchange));
        }
    }
    SUBCASE("per-sector excitation numbers commute with H") {
        const auto n_up = add(number_op(*space, "ph_up"), number_op(*space, "orb_up"));
        const auto n_dn = add(number_op(*space, "ph_dn"), number_op(*space, "orb_dn"));
        CHECK(commutator(h, n_up).max_abs() <= 1e-12);
        CHECK(commutator(h, n_dn).max_abs() <= 1e-12);
    }
}

TEST_CASE("build_grid_H") {
    CouplingSpec c;
    c.g_tun = 1.0;
    c.g_cov = 0.25;

    SUBCASE("single atom in the center of a 3x3 grid tunnels in 4 directions") {
        const GridGeometry g{3, 1};
        auto [modes, regs] = grid_space_spec(g, 1);
        auto space = enumerate_space(modes, regs, grid_exclusion(g));
        const auto h = build_grid_H(*space, g, c);

        BasisState s;
        s.fields = {0, 4};  // no phonons, atom on the center cell
        const std::size_t col = space->index_of(s);
        int offdiag = 0;
        for (const auto& e : h.entries())
            if (e.col == col && e.row != col) {
                CHECK(e.value == Complex(1.0, 0.0));
                ++offdiag;
            }
        CHECK(offdiag == 4);

        BasisState corner;
        corner.fields = {0, 0};
        const std::size_t ccol = space->index_of(corner);
        int n = 0;
        for (const auto& e : h.entries())
            if (e.col == ccol && e.row != ccol) ++n;
        CHECK(n == 2);

        // no partner to bond with: every off-diagonal entry is a tunneling move
        for (const auto& e : h.entries())
            if (e.row != e.col) CHECK(e.value == Complex(1.0, 0.0));
    }

    SUBCASE("H_cov conserves b+b + sum of bond flags") {
        const GridGeometry g{2, 2};
        auto [modes, regs] = grid_space_spec(g, 2);
        auto space = enumerate_space(modes, regs, grid_exclusion(g));
        const auto h = build_grid_H(*space, g, c);
        CHECK(h.hermitian());

        const auto n = add(number_op(*space, "b"), number_op(*space, "cov0_1"));
        CHECK(commutator(h, n).max_abs() <= 1e-12);
    }

    SUBCASE("a bonded atom does not tunnel") {
        const GridGeometry g{2, 2};
        auto [modes, regs] = grid_space_spec(g, 1);
        auto space = enumerate_space(modes, regs, grid_exclusion(g));
        const auto h = build_grid_H(*space, g, c);
        BasisState s;
        s.fields = {0, 0, 1, 1};  // adjacent atoms, bond formed
        const std::size_t col = space->index_of(s);
        for (const auto& e : h.entries()) {
            if (e.col != col || e.row == col) continue;
            const auto& t = space->state_at(e.row);
            CHECK(t.fields[1] == s.fields[1]);
            CHECK(t.fields[2] == s.fields[2]);
            CHECK(t.fields[3] == 0);
        }
    }

    SUBCASE("monovalent atoms refuse a second bond") {
        const GridGeometry g{2, 3};
        auto [modes, regs] = grid_space_spec(g, 2);
        auto space = enumerate_space(modes, regs, grid_exclusion(g));
        const auto h = build_grid_H(*space, g, c);
        // atoms 0-1 bonded; atom 2 adjacent to atom 1 must not bond with it
        BasisState s;
        s.fields = {1, 0, 1, 3, 1, 0, 0};  // b=1, cells (0,1,3), cov01=1
        const std::size_t col = space->index_of(s);
        const std::size_t f12 = space->field_of("cov1_2");
        for (const auto& e : h.entries()) {
            if (e.col != col || e.row == col) continue;
            CHECK(space->state_at(e.row).fields[f12] == 0);
        }
    }
}

TEST_CASE("build_hbond_H") {
    CouplingSpec c;
    c.g_tun = 0.05;
    c.g_cov = 0.1;
    auto space = enumerate_space({{ModeKind::photon, 2, "a_mol"},
                                  {ModeKind::photon, 2, "a_spin"},
                                  {ModeKind::phonon, 2, "b"}},
                                 {{RegisterKind::orbital, 2, "orb_O1"},
                                  {RegisterKind::orbital, 2, "orb_H"},
                                  {RegisterKind::orbital, 2, "orb_O2"},
                                  {RegisterKind::bond, 4, "cov_1"},
                                  {RegisterKind::bond, 4, "cov_2"}});
    const auto h = build_hbond_H(*space, c);

    SUBCASE("hermitian") { CHECK(h.hermitian()); }

    SUBCASE("all couplings zero gives a diagonal matrix") {
        CouplingSpec c0;
        c0.g_mol = c0.g_tun = c0.g_cov = 0.0;
        const auto h0 = build_hbond_H(*space, c0);
        for (const auto& e : h0.entries()) CHECK(e.row == e.col);
    }

    SUBCASE("each exchange family conserves its quanta") {
        SparseOperator n_mol = add(number_op(*space, "a_mol"), number_op(*space, "a_spin"));
        for (const char* orb : {"orb_O1", "orb_H", "orb_O2"})
            n_mol = add(n_mol, number_op(*space, orb));
        const LocalOp exists{4, {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1}};
        SparseOperator n_cov = number_op(*space, "b");
        n_cov = add(n_cov, embed_on(*space, "cov_1", exists));
        n_cov = add(n_cov, embed_on(*space, "cov_2", exists));

        CHECK(commutator(h, n_mol).max_abs() <= 1e-12);
        CHECK(commutator(h, n_cov).max_abs() <= 1e-12);
    }

    SUBCASE("the start state is admissible with a unique index") {
        BasisState s;
        s.fields = {2, 1, 1, 0, 1, 0,
                    static_cast<std::uint8_t>(bond_value(false, false)),
                    static_cast<std::uint8_t>(bond_value(true, false))};
        const std::size_t idx = space->index_of(s);
        CHECK(space->state_at(idx) == s);
        std::size_t hits = 0;
        for (std::size_t i = 0; i < space->dim(); ++i)
            if (space->state_at(i) == s) ++hits;
        CHECK(hits == 1);
    }

    SUBCASE("a formed bond freezes its distance flag") {
        BasisState s;
        s.fields = {0, 0, 0, 0, 0, 0,
                    static_cast<std::uint8_t>(bond_value(true, false)),
                    static_cast<std::uint8_t>(bond_value(false, false))};
        const std::size_t col = space->index_of(s);
        const std::size_t f1 = space->field_of("cov_1");
        for (const auto& e : h.entries()) {
            if (e.col != col || e.row == col) continue;
            const auto& t = space->state_at(e.row);
            if (t.fields[f1] != s.fields[f1])
                CHECK(t.fields[f1] == bond_value(false, false));
        }
    }

    SUBCASE("bonds only form at close distance") {
        BasisState s;  // cov_1 absent and far; one phonon available
        s.fields = {0, 0, 1, 0, 0, 0,
                    static_cast<std::uint8_t>(bond_value(false, true)),
                    static_cast<std::uint8_t>(bond_value(false, false))};
        const std::size_t col = space->index_of(s);
        const std::size_t f1 = space->field_of("cov_1");
        for (const auto& e : h.entries()) {
            if (e.col != col || e.row == col) continue;
            const auto& t = space->state_at(e.row);
            if (t.fields[f1] != s.fields[f1])
                CHECK(!bond_exists(t.fields[f1]));  // distance toggle, not formation
        }
    }
}
