#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bakerlab/map_core.hpp"

namespace bakerlab {

/// Region sequence packed two bits per symbol, 32 symbols per word.
/// Ordering is lexicographic in A < B < C < D, shorter prefixes first.
class Itinerary {
public:
    Itinerary() = default;
    explicit Itinerary(const std::string& symbols);

    std::size_t size() const noexcept { return length_; }
    bool empty() const noexcept { return length_ == 0; }

    Region operator[](std::size_t i) const noexcept {
        return static_cast<Region>((words_[i / kPerWord] >> shift(i)) & 3u);
    }

    void push_back(Region r) {
        if (length_ % kPerWord == 0) words_.push_back(0);
        words_.back() |= static_cast<std::uint64_t>(r) << shift(length_);
        ++length_;
        net_count_ += net_increment(r);
    }

    Itinerary extended(Region r) const {
        Itinerary copy = *this;
        copy.push_back(r);
        return copy;
    }

    /// #D - #A.
    int net_count() const noexcept { return net_count_; }

    std::string to_string() const;

    friend bool operator==(const Itinerary& a, const Itinerary& b) noexcept {
        return a.length_ == b.length_ && a.words_ == b.words_;
    }
    friend std::strong_ordering operator<=>(const Itinerary& a, const Itinerary& b) noexcept {
        if (auto c = a.words_ <=> b.words_; c != 0) return c;
        return a.length_ <=> b.length_;
    }

private:
    static constexpr std::size_t kPerWord = 32;
    static constexpr unsigned shift(std::size_t i) noexcept {
        return static_cast<unsigned>(2 * (kPerWord - 1 - i % kPerWord));
    }

    std::vector<std::uint64_t> words_;
    std::size_t length_ = 0;
    int net_count_ = 0;
};

} // namespace bakerlab
