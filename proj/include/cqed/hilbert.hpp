#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cqed/errors.hpp"

namespace cqed {

enum class ModeKind { photon, phonon };

// Bosonic mode truncated at `cutoff` quanta (occupations 0..cutoff).
struct ModeSpec {
    ModeKind kind = ModeKind::photon;
    int cutoff = 1;
    std::string label;
};

enum class RegisterKind { orbital, spin, position, bond };

// Discrete register with values 0..arity-1.
struct RegisterSpec {
    RegisterKind kind = RegisterKind::orbital;
    int arity = 2;
    std::string label;
};

// Composite occupation label: one small integer per mode, then one per
// register, in declaration order. That order is also the lexicographic sort
// key for enumeration.
struct BasisState {
    std::vector<std::uint8_t> fields;
    auto operator<=>(const BasisState&) const = default;
};

BasisState with_field(BasisState s, std::size_t field, int value);

// Default dimension cap; the SIM_MAX_DIM environment variable overrides it.
std::size_t dimension_cap();

// Ordered enumeration of every admissible BasisState with a bidirectional
// index. Immutable after construction and safe to share across threads.
class HilbertSpace {
public:
    using Constraint = std::function<bool(const BasisState&)>;

    HilbertSpace(std::vector<ModeSpec> modes, std::vector<RegisterSpec> registers,
                 Constraint constraint = {}, std::size_t cap = dimension_cap());

    std::size_t dim() const { return states_.size(); }
    const BasisState& state_at(std::size_t i) const;
    std::size_t index_of(const BasisState& s) const;  // throws when absent
    std::optional<std::size_t> find(const BasisState& s) const;

    const std::vector<ModeSpec>& modes() const { return modes_; }
    const std::vector<RegisterSpec>& registers() const { return registers_; }

    std::size_t field_count() const { return extents_.size(); }
    // Modes occupy fields [0, modes.size()), registers follow in order.
    std::size_t field_of(const std::string& label) const;
    std::optional<std::size_t> find_field(const std::string& label) const;
    int field_extent(std::size_t field) const { return extents_[field]; }
    bool is_mode_field(std::size_t field) const { return field < modes_.size(); }
    const ModeSpec& mode_at_field(std::size_t field) const;
    const RegisterSpec& register_at_field(std::size_t field) const;

    std::string state_string(const BasisState& s) const;  // |n0,n1;r0,r1,...>

private:
    std::vector<ModeSpec> modes_;
    std::vector<RegisterSpec> registers_;
    std::vector<int> extents_;
    std::vector<BasisState> states_;  // lexicographically sorted
};

using SpacePtr = std::shared_ptr<const HilbertSpace>;

SpacePtr enumerate_space(std::vector<ModeSpec> modes, std::vector<RegisterSpec> registers,
                         HilbertSpace::Constraint constraint = {},
                         std::size_t cap = dimension_cap());

}  // namespace cqed
