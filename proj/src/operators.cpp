#include "cqed/operators.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace cqed {

void CouplingSpec::validate() const {
    require(hbar > 0.0, ErrorCode::config, "coupling.hbar: must be > 0");
    require(omega > 0.0, ErrorCode::config, "coupling.omega: must be > 0");
    const double n = alpha * alpha + beta * beta;
    require(std::abs(n - 1.0) <= 1e-12, ErrorCode::config,
            "coupling.alpha/beta: alpha^2 + beta^2 = " + std::to_string(n) +
                ", must equal 1");
}

double CouplingSpec::rwa_ratio() const {
    return std::max({std::abs(g_mol), std::abs(g_tun), std::abs(g_cov)}) / omega;
}

LocalOp local_annihilate(int cutoff) {
    const int n = cutoff + 1;
    LocalOp op{n, std::vector<Complex>(static_cast<std::size_t>(n) * n, 0.0)};
    for (int m = 1; m <= cutoff; ++m) op.m[static_cast<std::size_t>(m - 1) * n + m] = std::sqrt(double(m));
    return op;
}

LocalOp local_create(int cutoff) {
    const int n = cutoff + 1;
    LocalOp op{n, std::vector<Complex>(static_cast<std::size_t>(n) * n, 0.0)};
    for (int m = 0; m < cutoff; ++m) op.m[static_cast<std::size_t>(m + 1) * n + m] = std::sqrt(double(m + 1));
    return op;
}

LocalOp local_raise() { return LocalOp{2, {0.0, 0.0, 1.0, 0.0}}; }
LocalOp local_lower() { return LocalOp{2, {0.0, 1.0, 0.0, 0.0}}; }

LocalOp local_number(int extent) {
    LocalOp op{extent, std::vector<Complex>(static_cast<std::size_t>(extent) * extent, 0.0)};
    for (int v = 0; v < extent; ++v) op.m[static_cast<std::size_t>(v) * extent + v] = double(v);
    return op;
}

LocalOp local_projector(int extent, int value) {
    LocalOp op{extent, std::vector<Complex>(static_cast<std::size_t>(extent) * extent, 0.0)};
    op.m[static_cast<std::size_t>(value) * extent + value] = 1.0;
    return op;
}

SparseOperator embed(const HilbertSpace& space,
                     const std::vector<std::pair<std::size_t, LocalOp>>& factors) {
    std::set<std::size_t> seen;
    for (const auto& [field, op] : factors) {
        require(seen.insert(field).second, ErrorCode::logic, "embed: repeated field");
        require(op.extent == space.field_extent(field), ErrorCode::logic,
                "embed: local operator extent mismatch");
    }

    std::vector<Triplet> triplets;
    // Per factor, the nonzero (to, coeff) column of the local operator.
    std::vector<std::vector<std::pair<int, Complex>>> cols(factors.size());
    for (std::size_t cs = 0; cs < space.dim(); ++cs) {
        const BasisState& s = space.state_at(cs);
        bool any_empty = false;
        for (std::size_t f = 0; f < factors.size(); ++f) {
            cols[f].clear();
            const auto& [field, op] = factors[f];
            const int from = s.fields[field];
            for (int to = 0; to < op.extent; ++to) {
                const Complex v = op.at(to, from);
                if (v != Complex(0.0, 0.0)) cols[f].push_back({to, v});
            }
            if (cols[f].empty()) { any_empty = true; break; }
        }
        if (any_empty) continue;

        std::vector<std::size_t> pick(factors.size(), 0);
        while (true) {
            BasisState t = s;
            Complex coeff = 1.0;
            for (std::size_t f = 0; f < factors.size(); ++f) {
                t.fields[factors[f].first] = static_cast<std::uint8_t>(cols[f][pick[f]].first);
                coeff *= cols[f][pick[f]].second;
            }
            if (auto ti = space.find(t)) triplets.push_back({*ti, cs, coeff});

            std::size_t f = 0;
            while (f < pick.size() && ++pick[f] == cols[f].size()) pick[f++] = 0;
            if (f == pick.size()) break;
        }
    }
    return SparseOperator(space.dim(), std::move(triplets));
}

SparseOperator embed_on(const HilbertSpace& space, const std::string& label, const LocalOp& op) {
    return embed(space, {{space.field_of(label), op}});
}

SparseOperator ladder(const HilbertSpace& space, const std::string& mode_label,
                      LadderDirection dir) {
    const std::size_t field = space.field_of(mode_label);
    require(space.is_mode_field(field), ErrorCode::logic,
            "'" + mode_label + "' is not a mode");
    const int cutoff = space.mode_at_field(field).cutoff;
    return embed(space, {{field, dir == LadderDirection::annihilate
                                     ? local_annihilate(cutoff)
                                     : local_create(cutoff)}});
}

SparseOperator two_level(const HilbertSpace& space, const std::string& register_label,
                         TwoLevelDirection dir) {
    const std::size_t field = space.field_of(register_label);
    require(!space.is_mode_field(field), ErrorCode::logic,
            "'" + register_label + "' is not a register");
    require(space.field_extent(field) == 2, ErrorCode::logic,
            "register '" + register_label + "' is not two-valued");
    return embed(space, {{field, dir == TwoLevelDirection::raise ? local_raise()
                                                                 : local_lower()}});
}

SparseOperator number_op(const HilbertSpace& space, const std::string& label) {
    const std::size_t field = space.field_of(label);
    if (!space.is_mode_field(field))
        require(space.field_extent(field) == 2, ErrorCode::logic,
                "number_op on register '" + label + "': register is not two-valued");
    return embed(space, {{field, local_number(space.field_extent(field))}});
}

std::array<double, 4> hybrid_basis_change(const CouplingSpec& c) {
    c.validate();
    return {c.alpha, c.beta, -c.beta, c.alpha};
}

LocalOp site_projector_local(const CouplingSpec& c, int site) {
    c.validate();
    // energy-basis coordinates of the site kets: |O> = (alpha, -beta),
    // |H> = (beta, alpha)
    const double u0 = site == 0 ? c.alpha : c.beta;
    const double u1 = site == 0 ? -c.beta : c.alpha;
    return LocalOp{2, {u0 * u0, u0 * u1, u1 * u0, u1 * u1}};
}

std::pair<SparseOperator, SparseOperator> site_projectors(
    const HilbertSpace& space, const CouplingSpec& c, const std::string& register_label) {
    return {embed_on(space, register_label, site_projector_local(c, 0)),
            embed_on(space, register_label, site_projector_local(c, 1))};
}

SparseOperator build_jc_rwa(const HilbertSpace& space, const CouplingSpec& c) {
    c.validate();
    require(space.modes().size() == 1 && space.registers().size() == 1 &&
                space.registers()[0].arity == 2,
            ErrorCode::logic, "build_jc_rwa: expected one mode and one two-valued register");
    const std::string& a = space.modes()[0].label;
    const std::string& s = space.registers()[0].label;
    const double hw = c.hbar * c.omega;

    SparseOperator h = add(number_op(space, a).scaled(hw), number_op(space, s).scaled(hw));
    const std::size_t fa = space.field_of(a), fs = space.field_of(s);
    const int cutoff = space.modes()[0].cutoff;
    // g (s+ a + s a+)
    h = add(h, embed(space, {{fa, local_annihilate(cutoff)}, {fs, local_raise()}}),
            1.0, c.g_mol);
    h = add(h, embed(space, {{fa, local_create(cutoff)}, {fs, local_lower()}}),
            1.0, c.g_mol);
    require(h.hermitian(), ErrorCode::logic, "build_jc_rwa: result is not Hermitian");
    return h;
}

SparseOperator build_two_electron_H(const HilbertSpace& space, const CouplingSpec& c) {
    c.validate();
    for (const char* label : {"ph_up", "ph_dn", "orb_up", "orb_dn", "spin_up", "spin_dn"})
        require(space.find_field(label).has_value(), ErrorCode::logic,
                std::string("build_two_electron_H: space lacks field '") + label + "'");
    const double hw = c.hbar * c.omega;

    SparseOperator h = SparseOperator::zero(space.dim());
    for (const char* label : {"ph_up", "ph_dn", "orb_up", "orb_dn"})
        h = add(h, number_op(space, label), 1.0, hw);

    // Photon exchange acts within one spin sector; the spin-mismatched
    // relaxation operators of the general form annihilate the admissible
    // space (spin directions are frozen) and contribute nothing here.
    for (const auto& [mode, orb] :
         {std::pair<const char*, const char*>{"ph_up", "orb_up"}, {"ph_dn", "orb_dn"}}) {
        const std::size_t fa = space.field_of(mode);
        const std::size_t fo = space.field_of(orb);
        const int cutoff = space.mode_at_field(fa).cutoff;
        h = add(h, embed(space, {{fa, local_annihilate(cutoff)}, {fo, local_raise()}}),
                1.0, c.g_mol);
        h = add(h, embed(space, {{fa, local_create(cutoff)}, {fo, local_lower()}}),
                1.0, c.g_mol);
    }
    require(h.hermitian(), ErrorCode::logic, "build_two_electron_H: result is not Hermitian");
    return h;
}

bool GridGeometry::adjacent(int c1, int c2) const {
    const int r1 = c1 / k, r2 = c2 / k, x1 = c1 % k, x2 = c2 % k;
    return std::abs(r1 - r2) + std::abs(x1 - x2) == 1;
}

std::vector<int> GridGeometry::neighbor_cells(int cell) const {
    std::vector<int> out;
    const int r = cell / k, x = cell % k;
    if (r > 0) out.push_back(cell - k);
    if (r + 1 < k) out.push_back(cell + k);
    if (x > 0) out.push_back(cell - 1);
    if (x + 1 < k) out.push_back(cell + 1);
    return out;
}

int GridGeometry::pair_index(int i, int j) const {
    // pairs (0,1), (0,2), ..., (0,n-1), (1,2), ... for i < j
    int idx = 0;
    for (int a = 0; a < i; ++a) idx += atoms - 1 - a;
    return idx + (j - i - 1);
}

std::pair<std::vector<ModeSpec>, std::vector<RegisterSpec>> grid_space_spec(
    const GridGeometry& g, int phonon_cutoff) {
    require(g.k >= 1 && g.atoms >= 1, ErrorCode::config, "grid: k and atoms must be >= 1");
    require(g.atoms <= g.cells(), ErrorCode::config,
            "grid: atom count " + std::to_string(g.atoms) + " exceeds " +
                std::to_string(g.cells()) + " cells");
    std::vector<ModeSpec> modes{{ModeKind::phonon, phonon_cutoff, "b"}};
    std::vector<RegisterSpec> regs;
    for (int i = 0; i < g.atoms; ++i)
        regs.push_back({RegisterKind::position, g.cells(), "pos" + std::to_string(i)});
    for (int i = 0; i < g.atoms; ++i)
        for (int j = i + 1; j < g.atoms; ++j)
            regs.push_back({RegisterKind::bond, 2,
                            "cov" + std::to_string(i) + "_" + std::to_string(j)});
    return {std::move(modes), std::move(regs)};
}

HilbertSpace::Constraint grid_exclusion(const GridGeometry& g) {
    const int atoms = g.atoms;
    return [atoms](const BasisState& s) {
        // fields: [0] phonon, [1..atoms] positions, then bond flags
        for (int i = 0; i < atoms; ++i)
            for (int j = i + 1; j < atoms; ++j)
                if (s.fields[1 + i] == s.fields[1 + j]) return false;
        return true;
    };
}

SparseOperator build_grid_H(const HilbertSpace& space, const GridGeometry& g,
                            const CouplingSpec& c) {
    c.validate();
    const std::size_t fb = space.field_of("b");
    require(space.is_mode_field(fb), ErrorCode::logic, "build_grid_H: 'b' must be a mode");
    const int b_cutoff = space.mode_at_field(fb).cutoff;
    std::vector<std::size_t> fpos(g.atoms);
    for (int i = 0; i < g.atoms; ++i) {
        fpos[i] = space.field_of("pos" + std::to_string(i));
        require(space.field_extent(fpos[i]) == g.cells(), ErrorCode::logic,
                "build_grid_H: position register extent does not match the grid");
    }
    std::vector<std::size_t> fcov(g.pair_count());
    for (int i = 0; i < g.atoms; ++i)
        for (int j = i + 1; j < g.atoms; ++j)
            fcov[g.pair_index(i, j)] =
                space.field_of("cov" + std::to_string(i) + "_" + std::to_string(j));

    auto atom_bonded = [&](const BasisState& s, int atom) {
        for (int other = 0; other < g.atoms; ++other) {
            if (other == atom) continue;
            const int i = std::min(atom, other), j = std::max(atom, other);
            if (s.fields[fcov[g.pair_index(i, j)]] != 0) return true;
        }
        return false;
    };

    const double hw = c.hbar * c.omega;
    std::vector<Triplet> triplets;
    for (std::size_t cs = 0; cs < space.dim(); ++cs) {
        const BasisState& s = space.state_at(cs);

        // hw (b+b + sum_p cov_p)
        double diag = hw * s.fields[fb];
        for (std::size_t f : fcov) diag += hw * s.fields[f];
        if (diag != 0.0) triplets.push_back({cs, cs, diag});

        // H_tun: an atom in a formed bond does not tunnel
        for (int atom = 0; atom < g.atoms; ++atom) {
            if (atom_bonded(s, atom)) continue;
            const int cell = s.fields[fpos[atom]];
            for (int target : g.neighbor_cells(cell)) {
                bool occupied = false;
                for (int other = 0; other < g.atoms; ++other)
                    if (other != atom && s.fields[fpos[other]] == target) occupied = true;
                if (occupied) continue;
                if (auto ti = space.find(with_field(s, fpos[atom], target)))
                    triplets.push_back({*ti, cs, c.g_tun});
            }
        }

        // H_cov: phonon <-> bond exchange for adjacent pairs; monovalent atoms
        const int b = s.fields[fb];
        for (int i = 0; i < g.atoms; ++i) {
            for (int j = i + 1; j < g.atoms; ++j) {
                if (!g.adjacent(s.fields[fpos[i]], s.fields[fpos[j]])) continue;
                const std::size_t fc = fcov[g.pair_index(i, j)];
                if (s.fields[fc] == 0) {
                    if (b >= 1 && !atom_bonded(s, i) && !atom_bonded(s, j)) {
                        BasisState t = with_field(with_field(s, fc, 1), fb, b - 1);
                        if (auto ti = space.find(t))
                            triplets.push_back({*ti, cs, c.g_cov * std::sqrt(double(b))});
                    }
                } else if (b + 1 <= b_cutoff) {
                    BasisState t = with_field(with_field(s, fc, 0), fb, b + 1);
                    if (auto ti = space.find(t))
                        triplets.push_back({*ti, cs, c.g_cov * std::sqrt(double(b + 1))});
                }
            }
        }
    }
    SparseOperator h(space.dim(), std::move(triplets));
    require(h.hermitian(), ErrorCode::logic, "build_grid_H: result is not Hermitian");
    return h;
}

SparseOperator build_hbond_H(const HilbertSpace& space, const CouplingSpec& c) {
    c.validate();
    for (const char* label :
         {"a_mol", "a_spin", "b", "orb_O1", "orb_H", "orb_O2", "cov_1", "cov_2"})
        require(space.find_field(label).has_value(), ErrorCode::logic,
                std::string("build_hbond_H: space lacks field '") + label + "'");
    const std::size_t fb = space.field_of("b");
    const int b_cutoff = space.mode_at_field(fb).cutoff;
    const std::size_t fcov[2] = {space.field_of("cov_1"), space.field_of("cov_2")};
    for (std::size_t f : fcov)
        require(space.field_extent(f) == 4, ErrorCode::logic,
                "build_hbond_H: bond registers must hold (existence, distance) pairs");

    const double hw = c.hbar * c.omega;
    SparseOperator h = SparseOperator::zero(space.dim());
    for (const char* mode : {"a_mol", "a_spin", "b"})
        h = add(h, number_op(space, mode), 1.0, hw);

    // H_mol: a_mol photon <-> hybrid level flip, one term per electron.
    const std::size_t fmol = space.field_of("a_mol");
    const int mol_cutoff = space.mode_at_field(fmol).cutoff;
    for (const char* orb : {"orb_O1", "orb_H", "orb_O2"}) {
        const std::size_t fo = space.field_of(orb);
        h = add(h, embed(space, {{fmol, local_annihilate(mol_cutoff)}, {fo, local_raise()}}),
                1.0, c.g_mol);
        h = add(h, embed(space, {{fmol, local_create(mol_cutoff)}, {fo, local_lower()}}),
                1.0, c.g_mol);
    }

    // H_spin: a_spin quanta exchange with flips of the shared hydrogen
    // electron, whose pairing the spin bosons track.
    const std::size_t fspin_mode = space.field_of("a_spin");
    const int spin_cutoff = space.mode_at_field(fspin_mode).cutoff;
    const std::size_t fh = space.field_of("orb_H");
    h = add(h, embed(space, {{fspin_mode, local_annihilate(spin_cutoff)}, {fh, local_raise()}}),
            1.0, c.g_mol);
    h = add(h, embed(space, {{fspin_mode, local_create(spin_cutoff)}, {fh, local_lower()}}),
            1.0, c.g_mol);

    // Gated bond terms, built state by state.
    std::vector<Triplet> triplets;
    for (std::size_t cs = 0; cs < space.dim(); ++cs) {
        const BasisState& s = space.state_at(cs);
        const int b = s.fields[fb];

        double diag = 0.0;
        for (std::size_t f : fcov) diag += hw * (bond_exists(s.fields[f]) ? 1.0 : 0.0);
        if (diag != 0.0) triplets.push_back({cs, cs, diag});

        for (std::size_t f : fcov) {
            const int v = s.fields[f];
            // H_tun: the pair distance toggles only while no bond holds it.
            if (!bond_exists(v)) {
                BasisState t = with_field(s, f, bond_value(false, !bond_far(v)));
                if (auto ti = space.find(t)) triplets.push_back({*ti, cs, c.g_tun});
            }
            // H_cov: bonds form and break only at close distance.
            if (bond_far(v)) continue;
            if (!bond_exists(v)) {
                if (b >= 1) {
                    BasisState t = with_field(with_field(s, f, bond_value(true, false)), fb, b - 1);
                    if (auto ti = space.find(t))
                        triplets.push_back({*ti, cs, c.g_cov * std::sqrt(double(b))});
                }
            } else if (b + 1 <= b_cutoff) {
                BasisState t = with_field(with_field(s, f, bond_value(false, false)), fb, b + 1);
                if (auto ti = space.find(t))
                    triplets.push_back({*ti, cs, c.g_cov * std::sqrt(double(b + 1))});
            }
        }
    }
    h = add(h, SparseOperator(space.dim(), std::move(triplets)));
    require(h.hermitian(), ErrorCode::logic, "build_hbond_H: result is not Hermitian");
    return h;
}

}  // namespace cqed
