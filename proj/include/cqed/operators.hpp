#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "cqed/hilbert.hpp"
#include "cqed/sparse.hpp"

namespace cqed {

// Couplings and hybridization weights shared by every scenario. hbar = 1
// working units; omega is common to all modes of a scenario (full resonance).
struct CouplingSpec {
    double hbar = 1.0;
    double omega = 1.0;
    double g_mol = 0.01;
    double g_tun = 0.0;
    double g_cov = 0.0;
    double alpha = 0.8;
    double beta = 0.6;

    void validate() const;          // throws SimError(config) naming the field
    double rwa_ratio() const;       // max |g| / omega
};

// Dense local operator on one field; m[to * extent + from].
struct LocalOp {
    int extent = 0;
    std::vector<Complex> m;
    Complex at(int to, int from) const { return m[static_cast<std::size_t>(to) * extent + from]; }
};

LocalOp local_annihilate(int cutoff);
LocalOp local_create(int cutoff);        // annihilates the cutoff state (truncated boson)
LocalOp local_raise();                   // |1><0| on a two-valued register
LocalOp local_lower();
LocalOp local_number(int extent);        // diag(0..extent-1)
LocalOp local_projector(int extent, int value);

// Tensor-embeds a product of local operators acting on distinct fields.
// Transitions whose target state is not admissible in the space are dropped,
// which restricts the operator to the enumerated subspace.
SparseOperator embed(const HilbertSpace& space,
                     const std::vector<std::pair<std::size_t, LocalOp>>& factors);
SparseOperator embed_on(const HilbertSpace& space, const std::string& label, const LocalOp& op);

enum class LadderDirection { create, annihilate };
SparseOperator ladder(const HilbertSpace& space, const std::string& mode_label,
                      LadderDirection dir);

enum class TwoLevelDirection { raise, lower };
SparseOperator two_level(const HilbertSpace& space, const std::string& register_label,
                         TwoLevelDirection dir);

// Occupation of a mode, or value of a two-valued register.
SparseOperator number_op(const HilbertSpace& space, const std::string& label);

// Orthogonal site->energy basis change [[alpha, beta], [-beta, alpha]],
// row-major: row 0 = <Psi0|, row 1 = <Psi1| in the site basis {|O>,|H>}.
std::array<double, 4> hybrid_basis_change(const CouplingSpec& c);

// Site projectors expressed in the energy basis. site 0 is the deep well (O),
// site 1 the shallow well (H).
LocalOp site_projector_local(const CouplingSpec& c, int site);

// Per-register site projectors lifted to the full space: {P_O, P_H}.
std::pair<SparseOperator, SparseOperator> site_projectors(
    const HilbertSpace& space, const CouplingSpec& c, const std::string& register_label);

// H = hw a+a + hw s+s + g_mol (s+ a + s a+) on one photon mode and one
// two-valued register, both in the energy basis.
SparseOperator build_jc_rwa(const HilbertSpace& space, const CouplingSpec& c);

// Two electrons of fixed opposite spin, one photon mode per spin sector.
// Expects modes ph_up, ph_dn and registers orb_up, orb_dn (+ frozen spin
// registers spin_up, spin_dn carried by the space constraint).
SparseOperator build_two_electron_H(const HilbertSpace& space, const CouplingSpec& c);

// k x k grid of monovalent atoms with hard-core exclusion.
struct GridGeometry {
    int k = 3;
    int atoms = 2;

    int cells() const { return k * k; }
    bool adjacent(int c1, int c2) const;
    std::vector<int> neighbor_cells(int cell) const;  // up, down, left, right
    int pair_count() const { return atoms * (atoms - 1) / 2; }
    int pair_index(int i, int j) const;               // i < j, lexicographic
};

// Mode "b" plus position registers pos<i> and bond registers cov<i>_<j>.
std::pair<std::vector<ModeSpec>, std::vector<RegisterSpec>> grid_space_spec(
    const GridGeometry& g, int phonon_cutoff);
HilbertSpace::Constraint grid_exclusion(const GridGeometry& g);

// H_tun moves unbonded atoms to free adjacent cells; H_cov exchanges one
// phonon with one bond excitation for adjacent, unbonded pairs; diagonal
// hw (b+b + sum of bond flags).
SparseOperator build_grid_H(const HilbertSpace& space, const GridGeometry& g,
                            const CouplingSpec& c);

// Hydrogen-bond model: modes a_mol, a_spin, b; orbital registers orb_O1,
// orb_H, orb_O2; bond registers cov_1, cov_2 with (existence, distance)
// values.
inline bool bond_exists(int v) { return (v & 2) != 0; }
inline bool bond_far(int v) { return (v & 1) != 0; }
inline int bond_value(bool exist, bool far) { return (exist ? 2 : 0) | (far ? 1 : 0); }

SparseOperator build_hbond_H(const HilbertSpace& space, const CouplingSpec& c);

}  // namespace cqed
