#include "cqed/hilbert.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <sstream>

namespace cqed {

BasisState with_field(BasisState s, std::size_t field, int value) {
    s.fields[field] = static_cast<std::uint8_t>(value);
    return s;
}

std::size_t dimension_cap() {
    if (const char* env = std::getenv("SIM_MAX_DIM")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
        fail(ErrorCode::config, std::string("SIM_MAX_DIM is not a positive integer: ") + env);
    }
    return std::size_t{1} << 20;
}

HilbertSpace::HilbertSpace(std::vector<ModeSpec> modes, std::vector<RegisterSpec> registers,
                           Constraint constraint, std::size_t cap)
    : modes_(std::move(modes)), registers_(std::move(registers)) {
    require(!modes_.empty() || !registers_.empty(), ErrorCode::config,
            "a Hilbert space needs at least one mode or register");

    std::set<std::string> labels;
    for (const auto& m : modes_) {
        require(m.cutoff >= 1, ErrorCode::config, "mode '" + m.label + "': cutoff must be >= 1");
        require(m.cutoff <= 254, ErrorCode::config, "mode '" + m.label + "': cutoff too large");
        require(labels.insert(m.label).second, ErrorCode::config,
                "duplicate label '" + m.label + "'");
        extents_.push_back(m.cutoff + 1);
    }
    for (const auto& r : registers_) {
        const int min_arity = r.kind == RegisterKind::position ? 1 : 2;
        require(r.arity >= min_arity, ErrorCode::config,
                "register '" + r.label + "': arity must be >= " + std::to_string(min_arity));
        require(r.arity <= 255, ErrorCode::config, "register '" + r.label + "': arity too large");
        require(labels.insert(r.label).second, ErrorCode::config,
                "duplicate label '" + r.label + "'");
        extents_.push_back(r.arity);
    }

    // Guard the raw odometer sweep as well as the admissible count.
    unsigned long long raw = 1;
    const unsigned long long raw_cap = 1ull << 26;
    for (int e : extents_) {
        raw *= static_cast<unsigned long long>(e);
        require(raw <= raw_cap, ErrorCode::dimension,
                "space too large: raw field product exceeds the enumeration cap " +
                    std::to_string(raw_cap));
    }

    BasisState s;
    s.fields.assign(extents_.size(), 0);
    while (true) {
        if (!constraint || constraint(s)) {
            require(states_.size() < cap, ErrorCode::dimension,
                    "space too large: dimension exceeds the cap " + std::to_string(cap) +
                        " (set SIM_MAX_DIM to raise it)");
            states_.push_back(s);
        }
        // Odometer increment, last field fastest: keeps states lexicographic
        // in (modes, registers) declaration order.
        std::size_t f = extents_.size();
        while (f > 0) {
            --f;
            if (static_cast<int>(s.fields[f]) + 1 < extents_[f]) {
                ++s.fields[f];
                std::fill(s.fields.begin() + static_cast<std::ptrdiff_t>(f) + 1,
                          s.fields.end(), 0);
                break;
            }
            if (f == 0) {
                require(!states_.empty(), ErrorCode::config,
                        "empty space: the constraint excludes every state");
                return;
            }
        }
    }
}

const BasisState& HilbertSpace::state_at(std::size_t i) const {
    require(i < states_.size(), ErrorCode::logic, "state index out of range");
    return states_[i];
}

std::optional<std::size_t> HilbertSpace::find(const BasisState& s) const {
    auto it = std::lower_bound(states_.begin(), states_.end(), s);
    if (it == states_.end() || *it != s) return std::nullopt;
    return static_cast<std::size_t>(it - states_.begin());
}

std::size_t HilbertSpace::index_of(const BasisState& s) const {
    auto i = find(s);
    require(i.has_value(), ErrorCode::logic, "basis state not found: " + state_string(s));
    return *i;
}

std::optional<std::size_t> HilbertSpace::find_field(const std::string& label) const {
    for (std::size_t i = 0; i < modes_.size(); ++i)
        if (modes_[i].label == label) return i;
    for (std::size_t i = 0; i < registers_.size(); ++i)
        if (registers_[i].label == label) return modes_.size() + i;
    return std::nullopt;
}

std::size_t HilbertSpace::field_of(const std::string& label) const {
    auto f = find_field(label);
    require(f.has_value(), ErrorCode::logic, "unknown mode/register label '" + label + "'");
    return *f;
}

const ModeSpec& HilbertSpace::mode_at_field(std::size_t field) const {
    require(field < modes_.size(), ErrorCode::logic, "field is not a mode");
    return modes_[field];
}

const RegisterSpec& HilbertSpace::register_at_field(std::size_t field) const {
    require(field >= modes_.size() && field < extents_.size(), ErrorCode::logic,
            "field is not a register");
    return registers_[field - modes_.size()];
}

std::string HilbertSpace::state_string(const BasisState& s) const {
    std::ostringstream os;
    os << '|';
    for (std::size_t f = 0; f < s.fields.size(); ++f) {
        if (f == modes_.size() && f > 0) os << ';';
        else if (f > 0) os << ',';
        os << static_cast<int>(s.fields[f]);
    }
    os << '>';
    return os.str();
}

SpacePtr enumerate_space(std::vector<ModeSpec> modes, std::vector<RegisterSpec> registers,
                         HilbertSpace::Constraint constraint, std::size_t cap) {
    return std::make_shared<const HilbertSpace>(std::move(modes), std::move(registers),
                                                std::move(constraint), cap);
}

}  // namespace cqed
