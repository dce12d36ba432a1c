#include "sigdist/product.hpp"

#include <optional>
#include <string>

#include "sigdist/error.hpp"

namespace sigdist {

namespace {

using Label = Partition::Label;

void require_product_size(const SubsetMask& b, std::size_t expected) {
    if (b.size() != expected) {
        throw Error(ErrorCode::GroundSetMismatch, "set has " + std::to_string(b.size()) +
                                                      " points, product space has " + std::to_string(expected));
    }
}

} // namespace

ProductSpace::ProductSpace(GroundSet left, GroundSet right) : left_(left), right_(right) {
    require_capacity(left.size() * right.size(), "product space");
}

SubsetMask ProductSpace::rectangle(const SubsetMask& xs, const SubsetMask& us) const {
    if (xs.size() != left_.size() || us.size() != right_.size()) {
        throw Error(ErrorCode::GroundSetMismatch, "rectangle factors do not match the product space");
    }
    SubsetMask out(size());
    xs.for_each([&](std::size_t x) { us.for_each([&](std::size_t u) { out.set(index(x, u)); }); });
    return out;
}

SigmaAlgebra product_sigma(const SigmaAlgebra& a, const SigmaAlgebra& f) {
    const ProductSpace space = ProductSpace::of(a, f);
    const auto kf = static_cast<Label>(f.atom_count());
    std::vector<Label> labels(space.size());
    for (std::size_t x = 0; x < a.size(); ++x) {
        const Label row = a.atoms().label(x) * kf;
        for (std::size_t u = 0; u < f.size(); ++u) labels[space.index(x, u)] = row + f.atoms().label(u);
    }
    return SigmaAlgebra(Partition::from_dense(labels, static_cast<Label>(a.atom_count()) * kf));
}

SubsetMask section(const SubsetMask& b, const ProductSpace& space, std::size_t x) {
    require_product_size(b, space.size());
    if (!space.left().contains(x)) {
        throw Error(ErrorCode::PointOutOfRange, "x = " + std::to_string(x) + " outside left factor of size " +
                                                    std::to_string(space.left().size()));
    }
    const std::size_t nu = space.right().size();
    SubsetMask out(nu);
    for (std::size_t u = 0; u < nu; ++u) {
        if (b.test(space.index(x, u))) out.set(u);
    }
    return out;
}

namespace {

// Empty when some atom carries two different sections.
std::optional<std::vector<SubsetMask>> common_sections(const SubsetMask& b, const SigmaAlgebra& a,
                                                       const ProductSpace& space) {
    std::vector<std::optional<SubsetMask>> per_atom(a.atom_count());
    for (std::size_t x = 0; x < a.size(); ++x) {
        SubsetMask s = section(b, space, x);
        auto& slot = per_atom[a.atoms().label(x)];
        if (!slot) {
            slot = std::move(s);
        } else if (*slot != s) {
            return std::nullopt;
        }
    }
    std::vector<SubsetMask> out;
    out.reserve(per_atom.size());
    for (auto& s : per_atom) out.push_back(std::move(*s));
    return out;
}

} // namespace

bool in_product(const SubsetMask& b, const SigmaAlgebra& a, const SigmaAlgebra& f) {
    const ProductSpace space = ProductSpace::of(a, f);
    require_product_size(b, space.size());
    const auto sections = common_sections(b, a, space);
    if (!sections) return false;
    for (const SubsetMask& s : *sections) {
        if (!f.contains(s)) return false;
    }
    return true;
}

SubsetMask RectangleDecomposition::reconstruct(const SigmaAlgebra& a) const {
    if (entries.empty()) throw Error(ErrorCode::GroundSetMismatch, "decomposition has no entries");
    const ProductSpace space(a.ground(), GroundSet(entries.front().fiber.size()));
    const std::vector<SubsetMask> atoms = atoms_of(a);
    SubsetMask out(space.size());
    for (const Entry& e : entries) {
        if (e.atom_index >= atoms.size()) {
            throw Error(ErrorCode::PointOutOfRange, "atom index " + std::to_string(e.atom_index) + " out of range");
        }
        out |= space.rectangle(atoms[e.atom_index], e.fiber);
    }
    return out;
}

RectangleDecomposition rectangle_decomposition(const SubsetMask& b, const SigmaAlgebra& a, const SigmaAlgebra& f) {
    const ProductSpace space = ProductSpace::of(a, f);
    require_product_size(b, space.size());
    auto sections = common_sections(b, a, space);
    if (!sections) throw Error(ErrorCode::NotInProduct, "sections differ within an atom of the left factor");
    RectangleDecomposition out;
    out.entries.reserve(sections->size());
    for (std::size_t i = 0; i < sections->size(); ++i) {
        if (!f.contains((*sections)[i])) {
            throw Error(ErrorCode::NotInProduct,
                        "section over atom " + std::to_string(i) + " is not a member of the right factor");
        }
        out.entries.push_back({i, std::move((*sections)[i])});
    }
    return out;
}

std::vector<MeetRectangle> decompose_over_meet(const SubsetMask& b, const SigmaAlgebra& a, const SigmaAlgebra& f,
                                               const SigmaAlgebra& g) {
    if (f.size() != g.size()) {
        throw Error(ErrorCode::GroundSetMismatch, "right factors have different ground sets");
    }
    if (!in_product(b, a, f)) throw Error(ErrorCode::NotInProduct, "set is not in A ⊗ F");
    if (!in_product(b, a, g)) throw Error(ErrorCode::NotInProduct, "set is not in A ⊗ G");

    const ProductSpace space = ProductSpace::of(a, f);
    std::vector<SubsetMask> sections;
    sections.reserve(a.size());
    for (std::size_t x = 0; x < a.size(); ++x) sections.push_back(section(b, space, x));

    std::vector<MeetRectangle> out;
    for (SubsetMask& h : atoms_of(meet(f, g))) {
        SubsetMask xs(a.size());
        for (std::size_t x = 0; x < a.size(); ++x) {
            if (h.is_subset_of(sections[x])) xs.set(x);
        }
        out.push_back({std::move(xs), std::move(h)});
    }
    return out;
}

SubsetMask union_of_rectangles(const ProductSpace& space, std::span<const MeetRectangle> pieces) {
    SubsetMask out(space.size());
    for (const MeetRectangle& r : pieces) out |= space.rectangle(r.left, r.right);
    return out;
}

SubsetMask diagonal(std::size_t n) {
    const ProductSpace space{GroundSet(n), GroundSet(n)};
    SubsetMask out(space.size());
    for (std::size_t x = 0; x < n; ++x) out.set(space.index(x, x));
    return out;
}

SubsetMask diagonal_identity(const SetFamily& family) {
    const ProductSpace space(family.ground(), family.ground());
    SubsetMask out = SubsetMask::full(space.size());
    for (const SubsetMask& a : family.members()) {
        const SubsetMask ac = complement(a);
        out &= space.rectangle(a, a) | space.rectangle(ac, ac);
    }
    return out;
}

} // namespace sigdist
