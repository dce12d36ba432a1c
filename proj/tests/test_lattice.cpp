#include <doctest.h>

#include <functional>
#include <set>

#include "oracles.hpp"
#include "sigdist/error.hpp"
#include "sigdist/lattice.hpp"

using namespace sigdist;

namespace {

SetFamily family(std::size_t n, std::vector<std::vector<std::size_t>> sets) {
    std::vector<SubsetMask> members;
    for (const auto& s : sets) members.emplace_back(n, s);
    return SetFamily(GroundSet(n), std::move(members));
}

// Every list of at most `max_len` subsets of an n-point set, in order.
void for_each_small_family(std::size_t n, std::size_t max_len, const std::function<void(const SetFamily&)>& fn) {
    std::vector<oracle::Bits> current;
    std::function<void()> rec = [&] {
        std::vector<SubsetMask> members;
        for (oracle::Bits b : current) members.push_back(oracle::from_bits(n, b));
        fn(SetFamily(GroundSet(n), std::move(members)));
        if (current.size() == max_len) return;
        for (oracle::Bits b = 0; b <= oracle::full(n); ++b) {
            current.push_back(b);
            rec();
            current.pop_back();
        }
    };
    rec();
}

std::vector<oracle::Bits> bits_of(const SetFamily& fam) {
    std::vector<oracle::Bits> out;
    for (const SubsetMask& s : fam.members()) out.push_back(oracle::to_bits(s));
    return out;
}

} // namespace

TEST_CASE("generate") {
    // Closure of {{0,1},{1,2}} under complement and union is all 8 subsets.
    REQUIRE(oracle::closure(3, {0b011, 0b110}).size() == 8);
    CHECK(generate(family(3, {{0, 1}, {1, 2}})) == SigmaAlgebra::discrete(3));
    CHECK(generate(SetFamily(GroundSet(3))) == SigmaAlgebra::trivial(3));
    CHECK(generate(family(4, {{0, 1}})) == SigmaAlgebra::from_blocks(4, {{0, 1}, {2, 3}}));
    // The empty set generates nothing.
    CHECK(generate(family(4, {{}, {0, 1}, {}})) == SigmaAlgebra::from_blocks(4, {{0, 1}, {2, 3}}));
}

TEST_CASE("generate rejects mixed ground sets") {
    CHECK_THROWS_AS(SetFamily(GroundSet(3), {SubsetMask(3), SubsetMask(4)}), Error);
}

TEST_CASE("generate agrees with fixpoint closure for families of up to 3 sets") {
    for (std::size_t n = 1; n <= 3; ++n) {
        for_each_small_family(n, 3, [&](const SetFamily& fam) {
            CHECK(oracle::members(generate(fam)) == oracle::closure(n, bits_of(fam)));
        });
    }
}

TEST_CASE("generate round-trips the atom blocks") {
    for (std::size_t n = 1; n <= 5; ++n) {
        for (const SigmaAlgebra& c : enumerate_sigma_algebras(n)) {
            CHECK(generate(SetFamily(GroundSet(n), blocks(c.atoms()))) == c);
        }
    }
}

TEST_CASE("meet") {
    const SigmaAlgebra c = SigmaAlgebra::from_blocks(4, {{0, 1}, {2, 3}});
    const SigmaAlgebra d = SigmaAlgebra::from_blocks(4, {{0}, {1, 2}, {3}});
    const oracle::Family common = oracle::intersect(oracle::members(c), oracle::members(d));
    REQUIRE(common == oracle::Family{0, 0b1111});
    CHECK(meet(c, d) == SigmaAlgebra::trivial(4));
    CHECK(meet(c, c) == c);
    CHECK(meet(c, SigmaAlgebra::trivial(4)) == SigmaAlgebra::trivial(4));
    CHECK_THROWS_AS(meet(c, SigmaAlgebra::trivial(3)), Error);
}

TEST_CASE("join") {
    const SigmaAlgebra c = SigmaAlgebra::from_blocks(4, {{0, 1}, {2, 3}});
    const SigmaAlgebra d = SigmaAlgebra::from_blocks(4, {{0, 2}, {1, 3}});
    CHECK(join(c, d) == SigmaAlgebra::discrete(4));
    CHECK(join(c, SigmaAlgebra::trivial(4)) == c);
    CHECK(join(c, c) == c);
    CHECK_THROWS_AS(join(c, SigmaAlgebra::trivial(5)), Error);
}

TEST_CASE("is_sub") {
    const SigmaAlgebra c = SigmaAlgebra::from_blocks(3, {{0, 1}, {2}});
    CHECK(is_sub(SigmaAlgebra::trivial(3), c));
    CHECK(is_sub(c, SigmaAlgebra::discrete(3)));
    CHECK_FALSE(is_sub(c, SigmaAlgebra::from_blocks(3, {{0}, {1, 2}})));
    CHECK_THROWS_AS(is_sub(c, SigmaAlgebra::trivial(2)), Error);
}

TEST_CASE("lattice laws hold exhaustively on up to 4 points") {
    for (std::size_t n = 1; n <= 4; ++n) {
        const auto all = enumerate_sigma_algebras(n);
        for (const SigmaAlgebra& c : all) {
            CHECK(meet(c, c) == c);
            CHECK(join(c, c) == c);
            for (const SigmaAlgebra& d : all) {
                const SigmaAlgebra m = meet(c, d);
                const SigmaAlgebra j = join(c, d);
                CHECK(m == meet(d, c));
                CHECK(j == join(d, c));
                CHECK(join(c, m) == c);
                CHECK(meet(c, j) == c);
                CHECK(is_sub(m, c));
                CHECK(is_sub(c, j));
                CHECK(is_sub(c, d) == (oracle::intersect(oracle::members(c), oracle::members(d)) == oracle::members(c)));
                for (const SigmaAlgebra& e : all) {
                    CHECK(meet(meet(c, d), e) == meet(c, meet(d, e)));
                    CHECK(join(join(c, d), e) == join(c, join(d, e)));
                }
            }
        }
    }
}

TEST_CASE("meet membership is the intersection of memberships") {
    for (std::size_t n = 1; n <= 4; ++n) {
        const auto all = enumerate_sigma_algebras(n);
        for (const SigmaAlgebra& c : all) {
            for (const SigmaAlgebra& d : all) {
                const SigmaAlgebra m = meet(c, d);
                const oracle::Family common = oracle::intersect(oracle::members(c), oracle::members(d));
                for (oracle::Bits b = 0; b <= oracle::full(n); ++b) {
                    const SubsetMask s = oracle::from_bits(n, b);
                    CHECK(m.contains(s) == (c.contains(s) && d.contains(s)));
                    CHECK(m.contains(s) == (common.count(b) == 1));
                }
                CHECK(oracle::members(join(c, d)) ==
                      oracle::closure(n, [&] {
                          auto gens = oracle::label_blocks(c);
                          auto more = oracle::label_blocks(d);
                          gens.insert(gens.end(), more.begin(), more.end());
                          return gens;
                      }()));
            }
        }
    }
}

TEST_CASE("atoms_of") {
    CHECK(atoms_of(SigmaAlgebra::discrete(3)) ==
          std::vector<SubsetMask>{SubsetMask(3, {0}), SubsetMask(3, {1}), SubsetMask(3, {2})});
    CHECK(atoms_of(SigmaAlgebra::trivial(3)) == std::vector<SubsetMask>{SubsetMask(3, {0, 1, 2})});
    CHECK(atoms_of(SigmaAlgebra::from_blocks(3, {{0, 2}, {1}})) ==
          std::vector<SubsetMask>{SubsetMask(3, {0, 2}), SubsetMask(3, {1})});
}

TEST_CASE("atoms are the minimal nonempty members and cover the ground set") {
    for (std::size_t n = 1; n <= 4; ++n) {
        for (const SigmaAlgebra& c : enumerate_sigma_algebras(n)) {
            std::set<oracle::Bits> got;
            oracle::Bits cover = 0;
            for (const SubsetMask& a : atoms_of(c)) {
                got.insert(oracle::to_bits(a));
                cover |= oracle::to_bits(a);
            }
            const auto minimal = oracle::minimal_members(oracle::members(c));
            CHECK(got == std::set<oracle::Bits>(minimal.begin(), minimal.end()));
            CHECK(cover == oracle::full(n));
        }
    }
}

TEST_CASE("is_separated") {
    CHECK(is_separated(SigmaAlgebra::discrete(4)));
    CHECK_FALSE(is_separated(SigmaAlgebra::trivial(2)));
    CHECK_FALSE(is_separated(SigmaAlgebra::from_blocks(3, {{0, 1}, {2}})));
}

TEST_CASE("singleton_from_separator") {
    CHECK(singleton_from_separator(family(3, {{0, 1}, {1, 2}}), 1) == SubsetMask(3, {1}));
    CHECK(singleton_from_separator(SetFamily(GroundSet(3)), 0) == SubsetMask::full(3));
    CHECK(singleton_from_separator(family(3, {{0, 1}}), 0) == SubsetMask(3, {0, 1}));
    CHECK_THROWS_AS(singleton_from_separator(family(3, {{0, 1}}), 3), Error);
}

TEST_CASE("generators_separate") {
    CHECK(generators_separate(family(3, {{0}, {1}})));
    CHECK_FALSE(generators_separate(family(3, {{0, 1}})));
    for (std::size_t n = 1; n <= 6; ++n) CHECK(generators_separate(SetFamily::singletons(n)));
    CHECK(generators_separate(SetFamily(GroundSet(1))));
}

TEST_CASE("separator statements agree for every family of up to 3 sets on up to 4 points") {
    for (std::size_t n = 1; n <= 4; ++n) {
        for_each_small_family(n, 3, [&](const SetFamily& fam) {
            const bool separates = generators_separate(fam);
            CHECK(separates == is_separated(generate(fam)));
            bool all_singletons = true;
            for (std::size_t x = 0; x < n; ++x) {
                const SubsetMask s = singleton_from_separator(fam, x);
                CHECK(s.test(x));
                all_singletons &= s == SubsetMask(n, {x});
            }
            CHECK(all_singletons == separates);
        });
    }
}

TEST_CASE("enumeration yields each σ-algebra once in lexicographic order") {
    const std::vector<std::uint64_t> bell{1, 2, 5, 15, 52, 203, 877};
    for (std::size_t n = 1; n <= 7; ++n) {
        const auto all = enumerate_sigma_algebras(n);
        CHECK(all.size() == bell[n - 1]);
        CHECK(bell_number(n) == bell[n - 1]);
        if (n <= 6) CHECK(all.size() == oracle::count_partitions_brute_force(n));
        for (std::size_t i = 1; i < all.size(); ++i) {
            const auto a = all[i - 1].atoms().labels();
            const auto b = all[i].atoms().labels();
            CHECK(std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end()));
        }
        CHECK(all.front() == SigmaAlgebra::trivial(n));
        CHECK(all.back() == SigmaAlgebra::discrete(n));
    }
    CHECK(bell_number(0) == 1);
    CHECK(bell_number(25) == 4638590332229999353ULL);
    CHECK_THROWS_AS(bell_number(26), Error);
}

TEST_CASE("enumeration stream") {
    SigmaAlgebraStream stream(3);
    int seen = 0;
    while (stream.next()) ++seen;
    CHECK(seen == 5);
    CHECK(stream.position() == 5);
    CHECK_FALSE(stream.next());
    CHECK_THROWS_AS(SigmaAlgebraStream(0), Error);
    CHECK_THROWS_AS(SigmaAlgebraStream(capacity_limit() + 1), Error);
}
