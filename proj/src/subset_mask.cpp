#include "sigdist/subset_mask.hpp"

#include <algorithm>
#include <bit>

#include "sigdist/error.hpp"

namespace sigdist {

SubsetMask::SubsetMask(std::size_t size)
    : size_(size), words_((size + kWordBits - 1) / kWordBits, Word{0}) {}

SubsetMask::SubsetMask(std::size_t size, std::initializer_list<std::size_t> points)
    : SubsetMask(size, std::span<const std::size_t>(points.begin(), points.size())) {}

SubsetMask::SubsetMask(std::size_t size, std::span<const std::size_t> points) : SubsetMask(size) {
    for (std::size_t p : points) {
        if (p >= size) {
            throw Error(ErrorCode::PointOutOfRange,
                        "point " + std::to_string(p) + " outside ground set of size " + std::to_string(size));
        }
        set(p);
    }
}

SubsetMask SubsetMask::full(std::size_t size) {
    SubsetMask s(size);
    std::fill(s.words_.begin(), s.words_.end(), ~Word{0});
    s.clear_tail();
    return s;
}

std::size_t SubsetMask::count() const noexcept {
    std::size_t n = 0;
    for (Word w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
}

bool SubsetMask::empty() const noexcept {
    return std::all_of(words_.begin(), words_.end(), [](Word w) { return w == 0; });
}

bool SubsetMask::is_full() const noexcept { return count() == size_; }

std::size_t SubsetMask::first() const noexcept {
    for (std::size_t w = 0; w < words_.size(); ++w) {
        if (words_[w] != 0) return w * kWordBits + static_cast<std::size_t>(std::countr_zero(words_[w]));
    }
    return size_;
}

bool SubsetMask::is_subset_of(const SubsetMask& other) const {
    require_same_size(other);
    for (std::size_t w = 0; w < words_.size(); ++w) {
        if ((words_[w] & ~other.words_[w]) != 0) return false;
    }
    return true;
}

bool SubsetMask::intersects(const SubsetMask& other) const {
    require_same_size(other);
    for (std::size_t w = 0; w < words_.size(); ++w) {
        if ((words_[w] & other.words_[w]) != 0) return true;
    }
    return false;
}

SubsetMask& SubsetMask::operator|=(const SubsetMask& other) {
    require_same_size(other);
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= other.words_[w];
    return *this;
}

SubsetMask& SubsetMask::operator&=(const SubsetMask& other) {
    require_same_size(other);
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= other.words_[w];
    return *this;
}

SubsetMask& SubsetMask::operator-=(const SubsetMask& other) {
    require_same_size(other);
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= ~other.words_[w];
    return *this;
}

std::vector<std::size_t> SubsetMask::indices() const {
    std::vector<std::size_t> out;
    out.reserve(count());
    for_each([&](std::size_t p) { out.push_back(p); });
    return out;
}

bool operator<(const SubsetMask& a, const SubsetMask& b) {
    if (a.size_ != b.size_) return a.size_ < b.size_;
    for (std::size_t w = 0; w < a.words_.size(); ++w) {
        const SubsetMask::Word diff = a.words_[w] ^ b.words_[w];
        if (diff != 0) {
            const SubsetMask::Word low = diff & (~diff + 1);
            return (a.words_[w] & low) != 0;
        }
    }
    return false;
}

void SubsetMask::require_same_size(const SubsetMask& other) const {
    if (size_ != other.size_) {
        throw Error(ErrorCode::GroundSetMismatch,
                    "subset sizes " + std::to_string(size_) + " and " + std::to_string(other.size_));
    }
}

void SubsetMask::clear_tail() noexcept {
    const std::size_t rem = size_ % kWordBits;
    if (rem != 0 && !words_.empty()) words_.back() &= (Word{1} << rem) - 1;
}

SubsetMask complement(const SubsetMask& s) { return SubsetMask::full(s.size()) - s; }

} // namespace sigdist
