#include "triquad/bitset.hpp"

#include <bit>

namespace triquad {

std::size_t Bits::count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
}

void Bits::trim() {
    const std::size_t tail = size_ % word_bits;
    if (tail != 0 && !words_.empty()) words_.back() &= (word_type{1} << tail) - 1;
}

std::vector<std::int64_t> Bits::zeros() const {
    std::vector<std::int64_t> out;
    for (std::size_t w = 0; w < words_.size(); ++w) {
        word_type inv = ~words_[w];
        while (inv) {
            const std::size_t i = w * word_bits + static_cast<std::size_t>(std::countr_zero(inv));
            if (i >= size_) break;
            out.push_back(static_cast<std::int64_t>(i));
            inv &= inv - 1;
        }
    }
    return out;
}

std::vector<std::int64_t> Bits::ones() const {
    std::vector<std::int64_t> out;
    for (std::size_t w = 0; w < words_.size(); ++w) {
        word_type x = words_[w];
        while (x) {
            const std::size_t i = w * word_bits + static_cast<std::size_t>(std::countr_zero(x));
            if (i >= size_) break;
            out.push_back(static_cast<std::int64_t>(i));
            x &= x - 1;
        }
    }
    return out;
}

}  // namespace triquad
