#include "sigdist/lattice.hpp"

#include <algorithm>
#include <string>

#include "sigdist/error.hpp"
#include "sigdist/union_find.hpp"

namespace sigdist {

namespace {

using Label = Partition::Label;

void require_same_ground(std::size_t a, std::size_t b) {
    if (a != b) {
        throw Error(ErrorCode::GroundSetMismatch,
                    "σ-algebras on " + std::to_string(a) + " and " + std::to_string(b) + " points");
    }
}

void require_point(const SetFamily& family, std::size_t x) {
    if (!family.ground().contains(x)) {
        throw Error(ErrorCode::PointOutOfRange, "point " + std::to_string(x) + " outside ground set of size " +
                                                    std::to_string(family.ground().size()));
    }
}

} // namespace

SetFamily::SetFamily(GroundSet ground, std::vector<SubsetMask> members)
    : ground_(ground), members_(std::move(members)) {
    for (std::size_t i = 0; i < members_.size(); ++i) {
        if (members_[i].size() != ground_.size()) {
            throw Error(ErrorCode::GroundSetMismatch, "family member " + std::to_string(i) + " has size " +
                                                          std::to_string(members_[i].size()) + ", expected " +
                                                          std::to_string(ground_.size()));
        }
    }
}

SetFamily SetFamily::singletons(std::size_t n) {
    std::vector<SubsetMask> members;
    members.reserve(n);
    for (std::size_t x = 0; x < n; ++x) members.emplace_back(n, std::initializer_list<std::size_t>{x});
    return SetFamily(GroundSet(n), std::move(members));
}

SigmaAlgebra generate(const SetFamily& family) {
    const std::size_t n = family.ground().size();
    Partition current = Partition::trivial(n);
    std::vector<Label> split(n);
    for (const SubsetMask& member : family.members()) {
        for (std::size_t p = 0; p < n; ++p) split[p] = 2 * current.label(p) + (member.test(p) ? 1 : 0);
        current = Partition::from_dense(split, static_cast<Label>(2 * current.block_count()));
    }
    return SigmaAlgebra(std::move(current));
}

SigmaAlgebra meet(const SigmaAlgebra& c, const SigmaAlgebra& d) {
    require_same_ground(c.size(), d.size());
    const std::size_t n = c.size();
    UnionFind uf(n);
    constexpr UnionFind::index kUnset = ~UnionFind::index{0};
    std::vector<UnionFind::index> first;
    for (const Partition* p : {&c.atoms(), &d.atoms()}) {
        first.assign(p->block_count(), kUnset);
        for (std::size_t i = 0; i < n; ++i) {
            auto& head = first[p->label(i)];
            if (head == kUnset) {
                head = static_cast<UnionFind::index>(i);
            } else {
                uf.merge(head, static_cast<UnionFind::index>(i));
            }
        }
    }
    std::vector<Label> roots(n);
    for (std::size_t i = 0; i < n; ++i) roots[i] = uf.find(static_cast<UnionFind::index>(i));
    return SigmaAlgebra(Partition::from_dense(roots, static_cast<Label>(n)));
}

SigmaAlgebra join(const SigmaAlgebra& c, const SigmaAlgebra& d) {
    require_same_ground(c.size(), d.size());
    const std::size_t n = c.size();
    const auto kd = static_cast<Label>(d.atom_count());
    std::vector<Label> pairs(n);
    for (std::size_t i = 0; i < n; ++i) pairs[i] = c.atoms().label(i) * kd + d.atoms().label(i);
    return SigmaAlgebra(Partition::from_dense(pairs, static_cast<Label>(c.atom_count()) * kd));
}

bool is_sub(const SigmaAlgebra& c, const SigmaAlgebra& d) {
    require_same_ground(c.size(), d.size());
    constexpr Label kUnset = ~Label{0};
    std::vector<Label> owner(d.atom_count(), kUnset);
    for (std::size_t i = 0; i < c.size(); ++i) {
        Label& o = owner[d.atoms().label(i)];
        const Label here = c.atoms().label(i);
        if (o == kUnset) {
            o = here;
        } else if (o != here) {
            return false;
        }
    }
    return true;
}

std::vector<SubsetMask> atoms_of(const SigmaAlgebra& c) { return c.atoms().blocks(); }

bool is_separated(const SigmaAlgebra& c) { return c.is_discrete(); }

SubsetMask singleton_from_separator(const SetFamily& family, std::size_t x) {
    require_point(family, x);
    SubsetMask out = SubsetMask::full(family.ground().size());
    for (const SubsetMask& a : family.members()) {
        if (a.test(x)) {
            out &= a;
        } else {
            out -= a;
        }
    }
    return out;
}

bool generators_separate(const SetFamily& family) {
    const std::size_t n = family.ground().size();
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = x + 1; y < n; ++y) {
            const bool split = std::any_of(family.members().begin(), family.members().end(),
                                           [&](const SubsetMask& a) { return a.test(x) != a.test(y); });
            if (!split) return false;
        }
    }
    return true;
}

SigmaAlgebraStream::SigmaAlgebraStream(std::size_t n) : n_(n) {
    if (n == 0) throw Error(ErrorCode::EmptyGroundSet, "cannot enumerate σ-algebras on zero points");
    require_capacity(n, "enumeration");
}

std::optional<SigmaAlgebra> SigmaAlgebraStream::next() {
    if (done_) return std::nullopt;
    if (!started_) {
        started_ = true;
        labels_.assign(n_, 0);
        prefix_max_.assign(n_, 0);
    } else {
        std::size_t i = n_;
        while (--i > 0) {
            if (labels_[i] <= prefix_max_[i - 1]) break;
        }
        if (i == 0) {
            done_ = true;
            return std::nullopt;
        }
        ++labels_[i];
        prefix_max_[i] = std::max(prefix_max_[i - 1], labels_[i]);
        for (std::size_t j = i + 1; j < n_; ++j) {
            labels_[j] = 0;
            prefix_max_[j] = prefix_max_[i];
        }
    }
    ++position_;
    return SigmaAlgebra(Partition::from_restricted_growth(labels_));
}

std::vector<SigmaAlgebra> enumerate_sigma_algebras(std::size_t n) {
    SigmaAlgebraStream stream(n);
    std::vector<SigmaAlgebra> out;
    while (auto c = stream.next()) out.push_back(std::move(*c));
    return out;
}

std::uint64_t bell_number(std::size_t n) {
    if (n == 0) return 1;
    // Bell triangle: row k starts with B(k) and ends with B(k+1).
    std::vector<std::uint64_t> row{1};
    for (std::size_t k = 1; k < n; ++k) {
        std::vector<std::uint64_t> next;
        next.reserve(row.size() + 1);
        next.push_back(row.back());
        for (std::uint64_t v : row) {
            std::uint64_t sum = 0;
            if (__builtin_add_overflow(next.back(), v, &sum)) {
                throw Error(ErrorCode::CapacityExceeded, "B(" + std::to_string(n) + ") overflows 64 bits");
            }
            next.push_back(sum);
        }
        row = std::move(next);
    }
    return row.back();
}

} // namespace sigdist
