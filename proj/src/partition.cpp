#include "sigdist/partition.hpp"

#include <string>
#include <unordered_map>

#include "sigdist/error.hpp"
#include "sigdist/ground_set.hpp"

namespace sigdist {

namespace {

void require_nonempty(std::size_t n) {
    if (n == 0) throw Error(ErrorCode::EmptyGroundSet, "partition of an empty ground set");
}

} // namespace

Partition Partition::discrete(std::size_t n) {
    require_nonempty(n);
    require_capacity(n, "partition");
    std::vector<Label> labels(n);
    for (std::size_t i = 0; i < n; ++i) labels[i] = static_cast<Label>(i);
    return Partition(std::move(labels), n);
}

Partition Partition::trivial(std::size_t n) {
    require_nonempty(n);
    require_capacity(n, "partition");
    return Partition(std::vector<Label>(n, 0), 1);
}

Partition Partition::from_restricted_growth(std::vector<Label> labels) {
    require_nonempty(labels.size());
    require_capacity(labels.size(), "partition");
    Label next = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] > next) {
            throw Error(ErrorCode::InvalidPartition,
                        "label " + std::to_string(labels[i]) + " at position " + std::to_string(i) +
                            " breaks restricted growth");
        }
        if (labels[i] == next) ++next;
    }
    return Partition(std::move(labels), next);
}

Partition Partition::from_dense(std::span<const Label> labels, Label bound) {
    require_nonempty(labels.size());
    require_capacity(labels.size(), "partition");
    constexpr Label kUnset = ~Label{0};
    std::vector<Label> remap(bound, kUnset);
    std::vector<Label> out(labels.size());
    Label next = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        Label& slot = remap[labels[i]];
        if (slot == kUnset) slot = next++;
        out[i] = slot;
    }
    return Partition(std::move(out), next);
}

Partition Partition::from_blocks(std::size_t n, const std::vector<std::vector<std::size_t>>& blocks) {
    require_nonempty(n);
    require_capacity(n, "partition");
    constexpr Label kUnset = ~Label{0};
    std::vector<Label> labels(n, kUnset);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        if (blocks[b].empty()) {
            throw Error(ErrorCode::InvalidPartition, "block " + std::to_string(b) + " is empty");
        }
        for (std::size_t p : blocks[b]) {
            if (p >= n) {
                throw Error(ErrorCode::PointOutOfRange,
                            "block " + std::to_string(b) + " names point " + std::to_string(p) +
                                " outside ground set of size " + std::to_string(n));
            }
            if (labels[p] != kUnset) {
                throw Error(ErrorCode::InvalidPartition,
                            "point " + std::to_string(p) + " appears in more than one block");
            }
            labels[p] = static_cast<Label>(b);
        }
    }
    for (std::size_t p = 0; p < n; ++p) {
        if (labels[p] == kUnset) {
            throw Error(ErrorCode::InvalidPartition, "point " + std::to_string(p) + " is not covered by any block");
        }
    }
    return from_dense(labels, static_cast<Label>(blocks.size()));
}

std::vector<SubsetMask> Partition::blocks() const {
    std::vector<SubsetMask> out(block_count_, SubsetMask(size()));
    for (std::size_t i = 0; i < labels_.size(); ++i) out[labels_[i]].set(i);
    return out;
}

Partition canonicalize(std::span<const long long> raw) {
    if (raw.empty()) throw Error(ErrorCode::EmptyGroundSet, "cannot canonicalize an empty label sequence");
    require_capacity(raw.size(), "partition");
    std::unordered_map<long long, Partition::Label> seen;
    std::vector<Partition::Label> dense(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        auto [it, inserted] = seen.try_emplace(raw[i], static_cast<Partition::Label>(seen.size()));
        dense[i] = it->second;
    }
    return Partition::from_restricted_growth(std::move(dense));
}

} // namespace sigdist
