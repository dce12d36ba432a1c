#include <doctest.h>

#include <algorithm>
#include <bit>
#include <random>
#include <set>

#include "oracles.hpp"
#include "sigdist/error.hpp"
#include "sigdist/product.hpp"

using namespace sigdist;

namespace {

std::vector<std::size_t> sizes_of_atoms(const SigmaAlgebra& c) {
    std::vector<std::size_t> out;
    for (const SubsetMask& a : atoms_of(c)) out.push_back(a.count());
    std::sort(out.begin(), out.end());
    return out;
}

// A random member of C: a random union of its atoms.
SubsetMask random_member(const SigmaAlgebra& c, std::mt19937_64& rng) {
    SubsetMask s(c.size());
    for (const SubsetMask& a : atoms_of(c)) {
        if (rng() & 1U) s |= a;
    }
    return s;
}

} // namespace

TEST_CASE("product space index map is row-major and invertible") {
    const ProductSpace space(GroundSet(3), GroundSet(4));
    CHECK(space.size() == 12);
    CHECK(space.index(2, 1) == 9);
    for (std::size_t i = 0; i < space.size(); ++i) {
        const auto [x, u] = space.point(i);
        CHECK(space.index(x, u) == i);
    }
    CHECK_THROWS_AS(ProductSpace(GroundSet(100), GroundSet(41)), Error);
}

TEST_CASE("product_sigma") {
    CHECK(product_sigma(SigmaAlgebra::trivial(2), SigmaAlgebra::discrete(2)) ==
          SigmaAlgebra::from_blocks(4, {{0, 2}, {1, 3}}));
    CHECK(product_sigma(SigmaAlgebra::discrete(2), SigmaAlgebra::discrete(2)) == SigmaAlgebra::discrete(4));

    const SigmaAlgebra a = SigmaAlgebra::trivial(2);
    const SigmaAlgebra f = SigmaAlgebra::from_blocks(3, {{0}, {1, 2}});
    std::vector<std::size_t> oracle_sizes;
    for (oracle::Bits cls : oracle::product_classes(a, f)) oracle_sizes.push_back(std::popcount(cls));
    std::sort(oracle_sizes.begin(), oracle_sizes.end());
    REQUIRE(oracle_sizes == std::vector<std::size_t>{2, 4});
    CHECK(sizes_of_atoms(product_sigma(a, f)) == oracle_sizes);
}

TEST_CASE("product_sigma respects capacity") {
    set_capacity_limit(10);
    CHECK_THROWS_AS(product_sigma(SigmaAlgebra::trivial(3), SigmaAlgebra::trivial(4)), Error);
    set_capacity_limit(kDefaultCapacity);
}

TEST_CASE("product atoms are products of atoms") {
    for (std::size_t nx = 1; nx <= 4; ++nx) {
        for (std::size_t nu = 1; nu <= 4; ++nu) {
            const ProductSpace space{GroundSet(nx), GroundSet(nu)};
            for (const SigmaAlgebra& a : enumerate_sigma_algebras(nx)) {
                for (const SigmaAlgebra& f : enumerate_sigma_algebras(nu)) {
                    const SigmaAlgebra p = product_sigma(a, f);
                    CHECK(p.atom_count() == a.atom_count() * f.atom_count());
                    std::set<oracle::Bits> expected;
                    for (const SubsetMask& xa : atoms_of(a)) {
                        for (const SubsetMask& ua : atoms_of(f)) expected.insert(oracle::to_bits(space.rectangle(xa, ua)));
                    }
                    std::set<oracle::Bits> got;
                    for (const SubsetMask& atom : atoms_of(p)) got.insert(oracle::to_bits(atom));
                    CHECK(got == expected);
                    CHECK(got == oracle::product_classes(a, f));
                }
            }
        }
    }
}

TEST_CASE("section") {
    const ProductSpace two(GroundSet(2), GroundSet(2));
    const SubsetMask b = two.rectangle(SubsetMask(2, {0, 1}), SubsetMask(2, {1}));
    CHECK(section(b, two, 0) == SubsetMask(2, {1}));
    CHECK(section(SubsetMask(4), two, 1) == SubsetMask(2));
    const ProductSpace three(GroundSet(3), GroundSet(3));
    CHECK(section(diagonal(3), three, 2) == SubsetMask(3, {2}));
    CHECK_THROWS_AS(section(b, two, 2), Error);
    CHECK_THROWS_AS(section(SubsetMask(5), two, 0), Error);
}

TEST_CASE("in_product") {
    const SigmaAlgebra a = SigmaAlgebra::from_blocks(3, {{0, 1}, {2}});
    const SigmaAlgebra f = SigmaAlgebra::from_blocks(2, {{0}, {1}});
    const ProductSpace space = ProductSpace::of(a, f);
    CHECK(in_product(space.rectangle(SubsetMask(3, {0, 1}), SubsetMask(2, {1})), a, f));
    CHECK(in_product(SubsetMask::full(6), a, f));
    CHECK_FALSE(in_product(diagonal(2), SigmaAlgebra::trivial(2), SigmaAlgebra::discrete(2)));
    CHECK_THROWS_AS(in_product(SubsetMask(5), a, f), Error);
}

TEST_CASE("in_product matches rectangle-generated membership") {
    std::mt19937_64 rng(3);
    for (std::size_t nx = 1; nx <= 4; ++nx) {
        for (std::size_t nu = 1; nu <= 4; ++nu) {
            const std::size_t n = nx * nu;
            for (const SigmaAlgebra& a : enumerate_sigma_algebras(nx)) {
                for (const SigmaAlgebra& f : enumerate_sigma_algebras(nu)) {
                    const SigmaAlgebra p = product_sigma(a, f);
                    const auto classes = oracle::product_classes(a, f);
                    auto one = [&](oracle::Bits bits) {
                        const SubsetMask b = oracle::from_bits(n, bits);
                        const bool expected = oracle::is_union_of(bits, classes);
                        CHECK(in_product(b, a, f) == expected);
                        CHECK(p.contains(b) == expected);
                    };
                    if (n <= 12) {
                        for (oracle::Bits bits = 0; bits <= oracle::full(n); ++bits) one(bits);
                    } else {
                        // 16-point products: sample arbitrary sets and members.
                        for (int i = 0; i < 200; ++i) {
                            one(rng() & oracle::full(n));
                            one(oracle::to_bits(random_member(p, rng)));
                        }
                    }
                }
            }
        }
    }
}

TEST_CASE("rectangle_decomposition") {
    const SigmaAlgebra a = SigmaAlgebra::from_blocks(3, {{0, 1}, {2}});
    const SigmaAlgebra f = SigmaAlgebra::discrete(2);
    const SubsetMask b(6, {1, 3, 4, 5});
    const RectangleDecomposition d = rectangle_decomposition(b, a, f);
    REQUIRE(d.entries.size() == 2);
    CHECK(d.entries[0] == RectangleDecomposition::Entry{0, SubsetMask(2, {1})});
    CHECK(d.entries[1] == RectangleDecomposition::Entry{1, SubsetMask(2, {0, 1})});
    CHECK(d.reconstruct(a) == b);

    const RectangleDecomposition empty = rectangle_decomposition(SubsetMask(6), a, f);
    CHECK(empty.entries.size() == 2);
    for (const auto& e : empty.entries) CHECK(e.fiber.empty());

    try {
        rectangle_decomposition(diagonal(3), SigmaAlgebra::trivial(3), SigmaAlgebra::discrete(3));
        FAIL("expected NotInProduct");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotInProduct);
    }
    try {
        rectangle_decomposition(SubsetMask(6, {0, 2}), a, SigmaAlgebra::trivial(2));
        FAIL("expected NotInProduct");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotInProduct);
    }
}

TEST_CASE("rectangle decomposition reconstructs and is unique") {
    std::mt19937_64 rng(5);
    for (std::size_t nx = 1; nx <= 4; ++nx) {
        for (std::size_t nu = 1; nu <= 4; ++nu) {
            const ProductSpace space{GroundSet(nx), GroundSet(nu)};
            for (const SigmaAlgebra& a : enumerate_sigma_algebras(nx)) {
                for (const SigmaAlgebra& f : enumerate_sigma_algebras(nu)) {
                    const auto a_atoms = atoms_of(a);
                    for (int trial = 0; trial < 4; ++trial) {
                        // Choose one F-member per A-atom, then read them back.
                        RectangleDecomposition chosen;
                        SubsetMask b(space.size());
                        for (std::size_t i = 0; i < a_atoms.size(); ++i) {
                            SubsetMask fiber = random_member(f, rng);
                            b |= space.rectangle(a_atoms[i], fiber);
                            chosen.entries.push_back({i, std::move(fiber)});
                        }
                        const RectangleDecomposition d = rectangle_decomposition(b, a, f);
                        CHECK(d == chosen);
                        CHECK(d.reconstruct(a) == b);
                    }
                }
            }
        }
    }
}

TEST_CASE("decompose_over_meet") {
    const SigmaAlgebra a = SigmaAlgebra::discrete(2);
    const SigmaAlgebra f = SigmaAlgebra::from_blocks(4, {{0, 1}, {2, 3}});
    const ProductSpace space = ProductSpace::of(a, f);

    const auto full = decompose_over_meet(SubsetMask::full(8), a, f, f);
    for (const MeetRectangle& r : full) CHECK(r.left.is_full());

    const auto none = decompose_over_meet(SubsetMask(8), a, f, f);
    for (const MeetRectangle& r : none) CHECK(r.left.empty());

    const SubsetMask b = space.rectangle(SubsetMask(2, {0}), SubsetMask(4, {0, 1})) |
                         space.rectangle(SubsetMask(2, {1}), SubsetMask(4, {2, 3}));
    const auto pieces = decompose_over_meet(b, a, f, f);
    REQUIRE(pieces.size() == 2);
    CHECK(pieces[0] == MeetRectangle{SubsetMask(2, {0}), SubsetMask(4, {0, 1})});
    CHECK(pieces[1] == MeetRectangle{SubsetMask(2, {1}), SubsetMask(4, {2, 3})});
    CHECK(union_of_rectangles(space, pieces) == b);

    CHECK_THROWS_AS(decompose_over_meet(diagonal(2), SigmaAlgebra::trivial(2), SigmaAlgebra::discrete(2),
                                        SigmaAlgebra::discrete(2)),
                    Error);
}

TEST_CASE("decomposition over the meet certifies membership in A ⊗ (F ∩ G)") {
    for (std::size_t nx = 1; nx <= 3; ++nx) {
        for (std::size_t nu = 1; nu <= 3; ++nu) {
            const ProductSpace space{GroundSet(nx), GroundSet(nu)};
            const auto lefts = enumerate_sigma_algebras(nx);
            const auto rights = enumerate_sigma_algebras(nu);
            for (const SigmaAlgebra& a : lefts) {
                for (const SigmaAlgebra& f : rights) {
                    for (const SigmaAlgebra& g : rights) {
                        const SigmaAlgebra both = meet(product_sigma(a, f), product_sigma(a, g));
                        const SigmaAlgebra target = product_sigma(a, meet(f, g));
                        // Every member of the left-hand side, via all unions of its atoms.
                        const auto atoms = atoms_of(both);
                        for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << atoms.size()); ++pick) {
                            SubsetMask b(space.size());
                            for (std::size_t i = 0; i < atoms.size(); ++i) {
                                if ((pick >> i) & 1U) b |= atoms[i];
                            }
                            const auto pieces = decompose_over_meet(b, a, f, g);
                            CHECK(pieces.size() == meet(f, g).atom_count());
                            for (const MeetRectangle& r : pieces) CHECK(a.contains(r.left));
                            CHECK(union_of_rectangles(space, pieces) == b);
                            CHECK(target.contains(b));
                        }
                    }
                }
            }
        }
    }
}

TEST_CASE("diagonal") {
    CHECK(diagonal(1) == SubsetMask::full(1));
    CHECK(diagonal(2) == SubsetMask(4, {0, 3}));
    CHECK(diagonal(3) == SubsetMask(9, {0, 4, 8}));
    CHECK_THROWS_AS(diagonal(65), Error);
}

TEST_CASE("diagonal_identity") {
    CHECK(diagonal_identity(SetFamily::singletons(2)) == diagonal(2));
    CHECK(diagonal_identity(SetFamily(GroundSet(2))) == SubsetMask::full(4));
    CHECK(diagonal_identity(SetFamily(GroundSet(3), {SubsetMask(3, {0, 1})})) == SubsetMask(9, {0, 1, 3, 4, 8}));
}

TEST_CASE("the diagonal lies in H ⊗ I only for discrete factors") {
    for (std::size_t n = 1; n <= 5; ++n) {
        const auto all = enumerate_sigma_algebras(n);
        const SubsetMask delta = diagonal(n);
        std::size_t positives = 0;
        for (const SigmaAlgebra& h : all) {
            for (const SigmaAlgebra& i : all) {
                const bool in = product_sigma(h, i).contains(delta);
                CHECK(in == (h.is_discrete() && i.is_discrete()));
                CHECK(in == in_product(delta, h, i));
                positives += in;
            }
        }
        CHECK(positives == 1);
    }
}
