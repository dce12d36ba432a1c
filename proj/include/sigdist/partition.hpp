#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sigdist/subset_mask.hpp"

namespace sigdist {

/// A set partition of {0, ..., n-1} in restricted-growth form: point 0 has
/// label 0 and every other point carries either an earlier label or the next
/// unused one. Two partitions have the same blocks iff their labels match.
class Partition {
public:
    using Label = std::uint32_t;

    static Partition discrete(std::size_t n);
    static Partition trivial(std::size_t n);

    // Validates that `labels` already is a restricted-growth string.
    static Partition from_restricted_growth(std::vector<Label> labels);

    // Relabels an arbitrary label vector whose values all lie in [0, bound).
    static Partition from_dense(std::span<const Label> labels, Label bound);

    // Blocks must be nonempty, pairwise disjoint and cover {0, ..., n-1}.
    static Partition from_blocks(std::size_t n, const std::vector<std::vector<std::size_t>>& blocks);

    std::size_t size() const noexcept { return labels_.size(); }
    std::size_t block_count() const noexcept { return block_count_; }
    Label label(std::size_t point) const noexcept { return labels_[point]; }
    std::span<const Label> labels() const noexcept { return labels_; }

    // Ordered by minimum element, which is also label order.
    std::vector<SubsetMask> blocks() const;

    friend bool operator==(const Partition&, const Partition&) = default;

private:
    Partition(std::vector<Label> labels, std::size_t block_count)
        : labels_(std::move(labels)), block_count_(block_count) {}

    std::vector<Label> labels_;
    std::size_t block_count_ = 0;
};

// First-occurrence relabeling of arbitrary integers. Throws EmptyGroundSet on empty input.
Partition canonicalize(std::span<const long long> raw);

inline std::vector<SubsetMask> blocks(const Partition& p) { return p.blocks(); }

} // namespace sigdist
