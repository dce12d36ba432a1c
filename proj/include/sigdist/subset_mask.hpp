#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include <boost/container/small_vector.hpp>

namespace sigdist {

/// A subset of the points {0, ..., size-1}, stored as packed 64-bit words.
///
/// Bits at positions >= size are always clear, so word-wise equality is set
/// equality. Sets on different ground sizes never compare equal.
class SubsetMask {
public:
    using Word = std::uint64_t;
    static constexpr std::size_t kWordBits = 64;

    SubsetMask() = default;
    explicit SubsetMask(std::size_t size);
    SubsetMask(std::size_t size, std::initializer_list<std::size_t> points);
    SubsetMask(std::size_t size, std::span<const std::size_t> points);

    static SubsetMask full(std::size_t size);

    std::size_t size() const noexcept { return size_; }

    bool test(std::size_t point) const noexcept {
        return (words_[point / kWordBits] >> (point % kWordBits)) & 1U;
    }
    void set(std::size_t point) noexcept { words_[point / kWordBits] |= Word{1} << (point % kWordBits); }
    void reset(std::size_t point) noexcept { words_[point / kWordBits] &= ~(Word{1} << (point % kWordBits)); }

    std::size_t count() const noexcept;
    bool empty() const noexcept;
    bool is_full() const noexcept;

    // Smallest member, or size() when empty.
    std::size_t first() const noexcept;

    bool is_subset_of(const SubsetMask& other) const;
    bool intersects(const SubsetMask& other) const;

    SubsetMask& operator|=(const SubsetMask& other);
    SubsetMask& operator&=(const SubsetMask& other);
    SubsetMask& operator-=(const SubsetMask& other);

    friend SubsetMask operator|(SubsetMask a, const SubsetMask& b) { return a |= b; }
    friend SubsetMask operator&(SubsetMask a, const SubsetMask& b) { return a &= b; }
    friend SubsetMask operator-(SubsetMask a, const SubsetMask& b) { return a -= b; }

    std::vector<std::size_t> indices() const;

    template <class Fn>
    void for_each(Fn&& fn) const {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            Word bits = words_[w];
            while (bits != 0) {
                fn(w * kWordBits + static_cast<std::size_t>(__builtin_ctzll(bits)));
                bits &= bits - 1;
            }
        }
    }

    std::span<const Word> words() const noexcept { return {words_.data(), words_.size()}; }

    friend bool operator==(const SubsetMask& a, const SubsetMask& b) {
        return a.size_ == b.size_ && a.words_ == b.words_;
    }
    // Orders by size, then by the smallest differing point: the set holding it sorts first.
    // Disjoint blocks therefore sort by their minimum element.
    friend bool operator<(const SubsetMask& a, const SubsetMask& b);

private:
    void require_same_size(const SubsetMask& other) const;
    void clear_tail() noexcept;

    std::size_t size_ = 0;
    boost::container::small_vector<Word, 1> words_;
};

SubsetMask complement(const SubsetMask& s);

} // namespace sigdist
