#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace triquad {

// Fixed-size bit table over [0, size).
class Bits {
public:
    using word_type = std::uint64_t;
    static constexpr std::size_t word_bits = 64;

    Bits() = default;
    explicit Bits(std::size_t size) : size_(size), words_((size + word_bits - 1) / word_bits, 0) {}

    std::size_t size() const { return size_; }
    std::size_t word_count() const { return words_.size(); }

    bool test(std::size_t i) const { return (words_[i / word_bits] >> (i % word_bits)) & 1u; }
    void set(std::size_t i) { words_[i / word_bits] |= word_type{1} << (i % word_bits); }
    void reset(std::size_t i) { words_[i / word_bits] &= ~(word_type{1} << (i % word_bits)); }

    word_type* data() { return words_.data(); }
    const word_type* data() const { return words_.data(); }

    std::size_t count() const;
    // Clears any bits at positions >= size() in the last word.
    void trim();
    // Indices in [0, size) whose bit is clear, ascending.
    std::vector<std::int64_t> zeros() const;
    std::vector<std::int64_t> ones() const;

    bool operator==(const Bits&) const = default;

private:
    std::size_t size_ = 0;
    std::vector<word_type> words_;
};

}  // namespace triquad
