#include "sigdist/ground_set.hpp"

#include <atomic>
#include <string>

#include "sigdist/error.hpp"

namespace sigdist {

namespace {
std::atomic<std::size_t> g_capacity{kDefaultCapacity};
}

std::size_t capacity_limit() noexcept { return g_capacity.load(std::memory_order_relaxed); }

void set_capacity_limit(std::size_t limit) noexcept { g_capacity.store(limit, std::memory_order_relaxed); }

void require_capacity(std::size_t n, const char* what) {
    if (n > capacity_limit()) {
        throw Error(ErrorCode::CapacityExceeded, std::string(what) + " needs " + std::to_string(n) +
                                                     " points, capacity is " + std::to_string(capacity_limit()));
    }
}

GroundSet::GroundSet(std::size_t size) : size_(size) {
    if (size == 0) throw Error(ErrorCode::EmptyGroundSet, "ground set must have at least one point");
    require_capacity(size, "ground set");
}

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::EmptyGroundSet: return "EmptyGroundSet";
    case ErrorCode::GroundSetMismatch: return "GroundSetMismatch";
    case ErrorCode::PointOutOfRange: return "PointOutOfRange";
    case ErrorCode::CapacityExceeded: return "CapacityExceeded";
    case ErrorCode::InvalidPartition: return "InvalidPartition";
    case ErrorCode::NotInProduct: return "NotInProduct";
    }
    return "Unknown";
}

} // namespace sigdist
