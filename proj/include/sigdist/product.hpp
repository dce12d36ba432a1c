#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "sigdist/ground_set.hpp"
#include "sigdist/lattice.hpp"
#include "sigdist/sigma_algebra.hpp"
#include "sigdist/subset_mask.hpp"

namespace sigdist {

/// X × U with the row-major point map (x, u) ↦ x·|U| + u.
class ProductSpace {
public:
    ProductSpace(GroundSet left, GroundSet right);

    static ProductSpace of(const SigmaAlgebra& left, const SigmaAlgebra& right) {
        return {left.ground(), right.ground()};
    }

    GroundSet left() const noexcept { return left_; }
    GroundSet right() const noexcept { return right_; }
    std::size_t size() const noexcept { return left_.size() * right_.size(); }

    std::size_t index(std::size_t x, std::size_t u) const noexcept { return x * right_.size() + u; }
    std::pair<std::size_t, std::size_t> point(std::size_t i) const noexcept {
        return {i / right_.size(), i % right_.size()};
    }

    SubsetMask rectangle(const SubsetMask& xs, const SubsetMask& us) const;

    friend bool operator==(const ProductSpace&, const ProductSpace&) = default;

private:
    GroundSet left_;
    GroundSet right_;
};

// A ⊗ F, built directly from products of atoms.
SigmaAlgebra product_sigma(const SigmaAlgebra& a, const SigmaAlgebra& f);

// B_x = {u : (x, u) ∈ B}.
SubsetMask section(const SubsetMask& b, const ProductSpace& space, std::size_t x);

// B ∈ A ⊗ F: sections agree across each A-atom and each one lies in F.
bool in_product(const SubsetMask& b, const SigmaAlgebra& a, const SigmaAlgebra& f);

/// The unique way of writing a member of A ⊗ F as ⋃ (atomᵢ × fiberᵢ), one
/// entry per A-atom in atom order. Fibers may be empty.
struct RectangleDecomposition {
    struct Entry {
        std::size_t atom_index;
        SubsetMask fiber;

        friend bool operator==(const Entry&, const Entry&) = default;
    };

    std::vector<Entry> entries;

    SubsetMask reconstruct(const SigmaAlgebra& a) const;

    friend bool operator==(const RectangleDecomposition&, const RectangleDecomposition&) = default;
};

// Throws NotInProduct unless in_product(b, a, f).
RectangleDecomposition rectangle_decomposition(const SubsetMask& b, const SigmaAlgebra& a, const SigmaAlgebra& f);

/// One piece Aᵢ × Hᵢ of a set rewritten over the atoms Hᵢ of F ∩ G.
struct MeetRectangle {
    SubsetMask left;  // Aᵢ = {x : B_x ⊇ Hᵢ}
    SubsetMask right; // Hᵢ

    friend bool operator==(const MeetRectangle&, const MeetRectangle&) = default;
};

// For B in both A ⊗ F and A ⊗ G, returns one pair per atom of F ∩ G, in atom
// order. Throws NotInProduct when B misses either product.
std::vector<MeetRectangle> decompose_over_meet(const SubsetMask& b, const SigmaAlgebra& a, const SigmaAlgebra& f,
                                               const SigmaAlgebra& g);

SubsetMask union_of_rectangles(const ProductSpace& space, std::span<const MeetRectangle> pieces);

// Δ = {(x, x)} in the n × n product.
SubsetMask diagonal(std::size_t n);

// ⋂ᵢ (Aᵢ × Aᵢ) ∪ (Aᵢᶜ × Aᵢᶜ) over the family, evaluated term by term.
SubsetMask diagonal_identity(const SetFamily& family);

} // namespace sigdist
