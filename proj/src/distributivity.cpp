#include "sigdist/distributivity.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <limits>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "sigdist/error.hpp"

namespace sigdist {

namespace {

void require_same_right(const SigmaAlgebra& f, const SigmaAlgebra& g) {
    if (f.size() != g.size()) {
        throw Error(ErrorCode::GroundSetMismatch, "F has " + std::to_string(f.size()) + " points, G has " +
                                                      std::to_string(g.size()));
    }
}

bool is_rectangle(const SubsetMask& s, const ProductSpace& space) {
    SubsetMask xs(space.left().size());
    SubsetMask us(space.right().size());
    s.for_each([&](std::size_t i) {
        const auto [x, u] = space.point(i);
        xs.set(x);
        us.set(u);
    });
    return space.rectangle(xs, us) == s;
}

DistributivityReport assemble_report(SigmaAlgebra lhs, SigmaAlgebra rhs, const ProductSpace& space) {
    DistributivityReport r{std::move(lhs), std::move(rhs), false, false, false, false, std::nullopt};
    r.equal = r.lhs == r.rhs;
    const std::vector<SubsetMask> lhs_atoms = atoms_of(r.lhs);
    r.same_atoms = lhs_atoms == atoms_of(r.rhs);
    r.lhs_atoms_are_rectangles =
        std::all_of(lhs_atoms.begin(), lhs_atoms.end(), [&](const SubsetMask& s) { return is_rectangle(s, space); });
    r.rhs_within_lhs = is_sub(r.rhs, r.lhs);
    for (const SubsetMask& atom : lhs_atoms) {
        if (!r.rhs.contains(atom)) {
            r.witness = atom;
            break;
        }
    }
    return r;
}

// Runs fn(0..count-1) on up to `jobs` threads; rethrows the first exception.
template <class Fn>
void for_each_unit(std::size_t count, unsigned jobs, Fn&& fn) {
    const std::size_t workers = std::min<std::size_t>(std::max(jobs, 1U), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                try {
                    for (std::size_t i; (i = next.fetch_add(1)) < count;) fn(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                    next.store(count);
                }
            });
        }
    }
    if (error) std::rethrow_exception(error);
}

void require_sizes(std::size_t x_size, std::size_t u_size) {
    if (x_size == 0 || u_size == 0) throw Error(ErrorCode::EmptyGroundSet, "factor sizes must be at least 1");
    require_capacity(x_size * u_size, "product space");
}

// Everything derived from a fixed A on a fixed pair of sizes.
struct Stratum {
    const std::vector<SigmaAlgebra>& lefts;
    const std::vector<SigmaAlgebra>& rights;
    // Indexed [f * rights.size() + g].
    const std::vector<SigmaAlgebra>& meets;
    const std::vector<SigmaAlgebra>& joins;
    ProductSpace space;
};

struct UnitResult {
    std::uint64_t checked = 0;
    std::uint64_t failures = 0;
    std::uint64_t distributivity_failures = 0;
    std::uint64_t join_failures = 0;
    std::uint64_t chain_violations = 0;
    std::uint64_t inclusion_failures = 0;
    std::uint64_t witnessed_failures = 0;
    std::optional<TripleFailure> first_failure;
    std::optional<TripleFailure> first_witnessed_failure;
};

template <class OnTriple>
void scan_left(const Stratum& s, std::size_t a_rank, MeetFn lhs_meet, OnTriple&& on_triple) {
    const SigmaAlgebra& a = s.lefts[a_rank];
    std::vector<SigmaAlgebra> products;
    products.reserve(s.rights.size());
    for (const SigmaAlgebra& f : s.rights) products.push_back(product_sigma(a, f));
    const std::size_t k = s.rights.size();
    for (std::size_t fi = 0; fi < k; ++fi) {
        for (std::size_t gi = 0; gi < k; ++gi) {
            DistributivityReport report = assemble_report(lhs_meet(products[fi], products[gi]),
                                                          product_sigma(a, s.meets[fi * k + gi]), s.space);
            const bool join_holds = join(products[fi], products[gi]) == product_sigma(a, s.joins[fi * k + gi]);
            const TripleRank rank{a_rank, fi, gi};
            if (!on_triple(rank, std::move(report), join_holds)) return;
        }
    }
}

TripleFailure make_failure(const Stratum& s, const TripleRank& rank, DistributivityReport report, bool join_holds) {
    return {s.space.left().size(),
            s.space.right().size(),
            rank,
            s.lefts[rank.a],
            s.rights[rank.f],
            s.rights[rank.g],
            std::move(report),
            join_holds};
}

struct PairTables {
    std::vector<SigmaAlgebra> meets;
    std::vector<SigmaAlgebra> joins;
};

PairTables pair_tables(const std::vector<SigmaAlgebra>& rights, MeetFn meet_fn) {
    PairTables t;
    t.meets.reserve(rights.size() * rights.size());
    t.joins.reserve(rights.size() * rights.size());
    for (const SigmaAlgebra& f : rights) {
        for (const SigmaAlgebra& g : rights) {
            t.meets.push_back(meet_fn(f, g));
            t.joins.push_back(join(f, g));
        }
    }
    return t;
}

} // namespace

SigmaAlgebra lhs_sigma(const SigmaAlgebra& a, const SigmaAlgebra& f, const SigmaAlgebra& g, MeetFn meet_fn) {
    require_same_right(f, g);
    return meet_fn(product_sigma(a, f), product_sigma(a, g));
}

SigmaAlgebra rhs_sigma(const SigmaAlgebra& a, const SigmaAlgebra& f, const SigmaAlgebra& g, MeetFn meet_fn) {
    require_same_right(f, g);
    return product_sigma(a, meet_fn(f, g));
}

DistributivityReport check(const SigmaAlgebra& a, const SigmaAlgebra& f, const SigmaAlgebra& g,
                           const MeetKernel& kernel) {
    return assemble_report(lhs_sigma(a, f, g, kernel.lhs), rhs_sigma(a, f, g, kernel.rhs), ProductSpace::of(a, f));
}

bool check_join(const SigmaAlgebra& a, const SigmaAlgebra& f, const SigmaAlgebra& g) {
    require_same_right(f, g);
    return join(product_sigma(a, f), product_sigma(a, g)) == product_sigma(a, join(f, g));
}

std::uint64_t expected_triple_count(std::size_t max_x, std::size_t max_u) {
    std::uint64_t left = 0;
    std::uint64_t right = 0;
    bool overflow = false;
    for (std::size_t n = 1; n <= max_x; ++n) overflow |= __builtin_add_overflow(left, bell_number(n), &left);
    for (std::size_t n = 1; n <= max_u; ++n) {
        const std::uint64_t b = bell_number(n);
        std::uint64_t sq = 0;
        overflow |= __builtin_mul_overflow(b, b, &sq);
        overflow |= __builtin_add_overflow(right, sq, &right);
    }
    std::uint64_t total = 0;
    overflow |= __builtin_mul_overflow(left, right, &total);
    if (overflow) throw Error(ErrorCode::CapacityExceeded, "triple count overflows 64 bits");
    return total;
}

VerificationSummary verify_all(std::size_t max_x, std::size_t max_u, const VerifyOptions& options) {
    require_sizes(max_x, max_u);
    expected_triple_count(max_x, max_u);
    const auto start = std::chrono::steady_clock::now();

    std::vector<std::vector<SigmaAlgebra>> by_size(std::max(max_x, max_u) + 1);
    for (std::size_t n = 1; n < by_size.size(); ++n) by_size[n] = enumerate_sigma_algebras(n);
    std::vector<PairTables> tables(max_u + 1);
    for (std::size_t n = 1; n <= max_u; ++n) tables[n] = pair_tables(by_size[n], options.kernel.rhs);

    struct Unit {
        std::size_t nx, nu, a_rank;
    };
    std::vector<Unit> units;
    for (std::size_t nx = 1; nx <= max_x; ++nx) {
        for (std::size_t nu = 1; nu <= max_u; ++nu) {
            for (std::size_t a = 0; a < by_size[nx].size(); ++a) units.push_back({nx, nu, a});
        }
    }

    std::vector<UnitResult> results(units.size());
    for_each_unit(units.size(), options.jobs, [&](std::size_t i) {
        const Unit& u = units[i];
        const Stratum s{by_size[u.nx], by_size[u.nu], tables[u.nu].meets, tables[u.nu].joins,
                        ProductSpace(GroundSet(u.nx), GroundSet(u.nu))};
        UnitResult& r = results[i];
        scan_left(s, u.a_rank, options.kernel.lhs, [&](const TripleRank& rank, DistributivityReport report, bool join_holds) {
            ++r.checked;
            const bool chain_ok = report.equal == report.same_atoms && report.same_atoms == report.lhs_atoms_are_rectangles;
            const bool failed = !report.equal || !join_holds || !chain_ok || !report.rhs_within_lhs;
            r.distributivity_failures += !report.equal;
            r.join_failures += !join_holds;
            r.chain_violations += !chain_ok;
            r.inclusion_failures += !report.rhs_within_lhs;
            if (failed) {
                ++r.failures;
                const bool witnessed = report.witness.has_value();
                r.witnessed_failures += witnessed;
                if (witnessed && !r.first_witnessed_failure) {
                    r.first_witnessed_failure = make_failure(s, rank, report, join_holds);
                }
                if (!r.first_failure) r.first_failure = make_failure(s, rank, std::move(report), join_holds);
            }
            return true;
        });
    });

    VerificationSummary summary;
    summary.max_x = max_x;
    summary.max_u = max_u;
    for (UnitResult& r : results) {
        summary.triples_checked += r.checked;
        summary.failures += r.failures;
        summary.distributivity_failures += r.distributivity_failures;
        summary.join_failures += r.join_failures;
        summary.chain_violations += r.chain_violations;
        summary.inclusion_failures += r.inclusion_failures;
        summary.witnessed_failures += r.witnessed_failures;
        if (!summary.first_failure && r.first_failure) summary.first_failure = std::move(r.first_failure);
        if (!summary.first_witnessed_failure && r.first_witnessed_failure) {
            summary.first_witnessed_failure = std::move(r.first_witnessed_failure);
        }
    }
    summary.elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - start);
    return summary;
}

std::optional<TripleFailure> search_counterexample(std::size_t x_size, std::size_t u_size,
                                                   const VerifyOptions& options) {
    require_sizes(x_size, u_size);
    const std::vector<SigmaAlgebra> lefts = enumerate_sigma_algebras(x_size);
    const std::vector<SigmaAlgebra> rights = enumerate_sigma_algebras(u_size);
    const PairTables tables = pair_tables(rights, options.kernel.rhs);
    const Stratum s{lefts, rights, tables.meets, tables.joins, ProductSpace(GroundSet(x_size), GroundSet(u_size))};

    constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
    std::atomic<std::size_t> best{kNone};
    std::vector<std::optional<TripleFailure>> found(lefts.size());
    for_each_unit(lefts.size(), options.jobs, [&](std::size_t a_rank) {
        if (a_rank > best.load()) return;
        scan_left(s, a_rank, options.kernel.lhs, [&](const TripleRank& rank, DistributivityReport report, bool join_holds) {
            if (report.equal) return true;
            found[a_rank] = make_failure(s, rank, std::move(report), join_holds);
            std::size_t current = best.load();
            while (a_rank < current && !best.compare_exchange_weak(current, a_rank)) {
            }
            return false;
        });
    });
    for (auto& f : found) {
        if (f) return std::move(f);
    }
    return std::nullopt;
}

} // namespace sigdist
