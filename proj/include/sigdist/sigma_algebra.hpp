#pragma once

#include <cstddef>
#include <vector>

#include "sigdist/ground_set.hpp"
#include "sigdist/partition.hpp"
#include "sigdist/subset_mask.hpp"

namespace sigdist {

/// A σ-algebra on a finite ground set, held as its atom partition. Its
/// members are exactly the unions of atoms, so it has 2^atom_count() members.
class SigmaAlgebra {
public:
    explicit SigmaAlgebra(Partition atoms) : atoms_(std::move(atoms)) {}

    static SigmaAlgebra discrete(std::size_t n) { return SigmaAlgebra(Partition::discrete(n)); }
    static SigmaAlgebra trivial(std::size_t n) { return SigmaAlgebra(Partition::trivial(n)); }
    static SigmaAlgebra from_blocks(std::size_t n, const std::vector<std::vector<std::size_t>>& blocks) {
        return SigmaAlgebra(Partition::from_blocks(n, blocks));
    }

    GroundSet ground() const { return GroundSet(atoms_.size()); }
    std::size_t size() const noexcept { return atoms_.size(); }
    const Partition& atoms() const noexcept { return atoms_; }
    std::size_t atom_count() const noexcept { return atoms_.block_count(); }

    bool is_discrete() const noexcept { return atoms_.block_count() == atoms_.size(); }
    bool is_trivial() const noexcept { return atoms_.block_count() == 1; }

    // True iff `s` splits no atom. Throws GroundSetMismatch on a size mismatch.
    bool contains(const SubsetMask& s) const;

    friend bool operator==(const SigmaAlgebra&, const SigmaAlgebra&) = default;

private:
    Partition atoms_;
};

inline bool contains(const SigmaAlgebra& c, const SubsetMask& s) { return c.contains(s); }

} // namespace sigdist
