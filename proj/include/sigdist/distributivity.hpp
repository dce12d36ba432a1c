#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>

#include "sigdist/lattice.hpp"
#include "sigdist/product.hpp"
#include "sigdist/sigma_algebra.hpp"
#include "sigdist/subset_mask.hpp"

namespace sigdist {

using MeetFn = SigmaAlgebra (*)(const SigmaAlgebra&, const SigmaAlgebra&);

// The meets behind each side of the distributivity equation: `lhs` intersects
// the two product σ-algebras, `rhs` intersects F and G. Swappable so that a
// deliberately broken kernel can exercise the failure path.
struct MeetKernel {
    MeetFn lhs = &meet;
    MeetFn rhs = &meet;
};

// (A ⊗ F) ∩ (A ⊗ G)
SigmaAlgebra lhs_sigma(const SigmaAlgebra& a, const SigmaAlgebra& f, const SigmaAlgebra& g, MeetFn meet_fn = &meet);

// A ⊗ (F ∩ G)
SigmaAlgebra rhs_sigma(const SigmaAlgebra& a, const SigmaAlgebra& f, const SigmaAlgebra& g, MeetFn meet_fn = &meet);

struct DistributivityReport {
    SigmaAlgebra lhs;
    SigmaAlgebra rhs;
    bool equal = false;
    bool same_atoms = false;
    bool lhs_atoms_are_rectangles = false;
    // rhs ⊆ lhs; only a faulty meet can break it.
    bool rhs_within_lhs = false;
    // First lhs atom (by smallest product index) that rhs does not contain.
    std::optional<SubsetMask> witness;
};

DistributivityReport check(const SigmaAlgebra& a, const SigmaAlgebra& f, const SigmaAlgebra& g,
                           const MeetKernel& kernel = {});

// (A ⊗ F) ∨ (A ⊗ G) = A ⊗ (F ∨ G)
bool check_join(const SigmaAlgebra& a, const SigmaAlgebra& f, const SigmaAlgebra& g);

// Positions of A, F and G in enumerate_sigma_algebras order.
struct TripleRank {
    std::uint64_t a = 0;
    std::uint64_t f = 0;
    std::uint64_t g = 0;

    friend auto operator<=>(const TripleRank&, const TripleRank&) = default;
};

struct TripleFailure {
    std::size_t x_size = 0;
    std::size_t u_size = 0;
    TripleRank rank;
    SigmaAlgebra a;
    SigmaAlgebra f;
    SigmaAlgebra g;
    DistributivityReport report;
    bool join_holds = false;
};

struct VerificationSummary {
    std::size_t max_x = 0;
    std::size_t max_u = 0;
    std::uint64_t triples_checked = 0;
    // Triples with any defect below.
    std::uint64_t failures = 0;
    std::uint64_t distributivity_failures = 0;
    std::uint64_t join_failures = 0;
    // equal, same_atoms and lhs_atoms_are_rectangles disagree.
    std::uint64_t chain_violations = 0;
    std::uint64_t inclusion_failures = 0;
    // Failures whose report carries a witness in lhs but not in rhs.
    std::uint64_t witnessed_failures = 0;
    std::optional<TripleFailure> first_failure;
    std::optional<TripleFailure> first_witnessed_failure;
    std::chrono::nanoseconds elapsed{0};
};

struct VerifyOptions {
    unsigned jobs = 1;
    MeetKernel kernel;
};

// Σ B(nX)·B(nU)² over 1 ≤ nX ≤ max_x, 1 ≤ nU ≤ max_u.
std::uint64_t expected_triple_count(std::size_t max_x, std::size_t max_u);

// Runs check and check_join on every triple of σ-algebras on sizes up to the
// bounds. Everything except `elapsed` is independent of the job count.
VerificationSummary verify_all(std::size_t max_x, std::size_t max_u, const VerifyOptions& options = {});

// First triple in (A, F, G) enumeration order on which check() reports
// inequality, or nothing.
std::optional<TripleFailure> search_counterexample(std::size_t x_size, std::size_t u_size,
                                                   const VerifyOptions& options = {});

} // namespace sigdist
