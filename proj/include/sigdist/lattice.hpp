#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sigdist/ground_set.hpp"
#include "sigdist/sigma_algebra.hpp"
#include "sigdist/subset_mask.hpp"

namespace sigdist {

/// An ordered list of subsets of one ground set, used as a generating family
/// or as a candidate separator. Duplicates and empty members are allowed.
class SetFamily {
public:
    explicit SetFamily(GroundSet ground, std::vector<SubsetMask> members = {});

    static SetFamily singletons(std::size_t n);

    GroundSet ground() const noexcept { return ground_; }
    std::span<const SubsetMask> members() const noexcept { return members_; }
    std::size_t size() const noexcept { return members_.size(); }

private:
    GroundSet ground_;
    std::vector<SubsetMask> members_;
};

// Smallest σ-algebra containing every member. Atoms are the classes of points
// that no member tells apart.
SigmaAlgebra generate(const SetFamily& family);

// C ∩ D. Atoms are the connected components of "shares a C-atom or a D-atom".
SigmaAlgebra meet(const SigmaAlgebra& c, const SigmaAlgebra& d);

// C ∨ D. Atoms are the nonempty intersections of a C-atom with a D-atom.
SigmaAlgebra join(const SigmaAlgebra& c, const SigmaAlgebra& d);

// C ⊆ D, i.e. D refines C.
bool is_sub(const SigmaAlgebra& c, const SigmaAlgebra& d);

std::vector<SubsetMask> atoms_of(const SigmaAlgebra& c);

// Separation of points collapses to discreteness on a finite set.
bool is_separated(const SigmaAlgebra& c);

// ⋂{A : x ∈ A} ∩ ⋂{Aᶜ : x ∉ A} over the family, with the empty intersection
// taken as the full set.
SubsetMask singleton_from_separator(const SetFamily& family, std::size_t x);

// True iff every pair of distinct points is split by some member. Checked
// pair by pair, independently of generate().
bool generators_separate(const SetFamily& family);

/// Yields every σ-algebra on n points exactly once, in lexicographic order of
/// the restricted-growth strings of their atom partitions.
class SigmaAlgebraStream {
public:
    explicit SigmaAlgebraStream(std::size_t n);

    std::optional<SigmaAlgebra> next();

    // Number of σ-algebras yielded so far.
    std::uint64_t position() const noexcept { return position_; }

private:
    std::size_t n_;
    std::vector<Partition::Label> labels_;
    std::vector<Partition::Label> prefix_max_;
    bool started_ = false;
    bool done_ = false;
    std::uint64_t position_ = 0;
};

std::vector<SigmaAlgebra> enumerate_sigma_algebras(std::size_t n);

// B(n), the number of set partitions of n points. Throws CapacityExceeded on
// 64-bit overflow (n > 25).
std::uint64_t bell_number(std::size_t n);

} // namespace sigdist
