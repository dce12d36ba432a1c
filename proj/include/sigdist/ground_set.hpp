#pragma once

#include <cstddef>

namespace sigdist {

inline constexpr std::size_t kDefaultCapacity = 4096;

// Upper bound on the number of points in any ground set, product spaces included.
std::size_t capacity_limit() noexcept;
void set_capacity_limit(std::size_t limit) noexcept;

// Throws CapacityExceeded when `n` points would not fit.
void require_capacity(std::size_t n, const char* what);

class GroundSet {
public:
    explicit GroundSet(std::size_t size);

    std::size_t size() const noexcept { return size_; }
    bool contains(std::size_t point) const noexcept { return point < size_; }

    friend bool operator==(GroundSet, GroundSet) = default;

private:
    std::size_t size_;
};

} // namespace sigdist
