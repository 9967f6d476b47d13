#pragma once
// 2-bit packed DNA words of length 1..64 held in one 128-bit integer.
// The first base occupies the most significant used bits, so comparing
// packed values compares the strings lexicographically.

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace bk {

using u128 = unsigned __int128;

inline constexpr int kMaxK = 64;

// A=0 C=1 G=2 T=3, anything else -1.
int base_code(char c) noexcept;
char code_base(int code) noexcept;

inline u128 kmer_mask(int k) noexcept {
    return k >= 64 ? ~u128{0} : ((u128{1} << (2 * k)) - 1);
}

u128 revcomp_packed(u128 x, int k) noexcept;

class Kmer {
public:
    Kmer() = default;
    Kmer(u128 packed, int k) noexcept : bits_(packed & kmer_mask(k)), k_(static_cast<uint8_t>(k)) {}

    // Throws InvalidBase for characters outside ACGT (N included) and
    // LengthMismatch when seq.size() != k.
    static Kmer encode(std::string_view seq, int k);
    static Kmer encode(std::string_view seq) { return encode(seq, static_cast<int>(seq.size())); }

    std::string decode() const;
    Kmer reverse_complement() const noexcept { return {revcomp_packed(bits_, k_), k_}; }
    Kmer canonical() const noexcept;
    bool is_palindrome() const noexcept { return revcomp_packed(bits_, k_) == bits_; }

    // Drop the first base and append `code` at the end.
    Kmer append(int code) const noexcept {
        return {((bits_ << 2) | static_cast<u128>(code)) & kmer_mask(k_), k_};
    }
    // Drop the last base and put `code` in front.
    Kmer prepend(int code) const noexcept {
        return {(bits_ >> 2) | (static_cast<u128>(code) << (2 * (k_ - 1))), k_};
    }
    int base_at(int i) const noexcept { return static_cast<int>((bits_ >> (2 * (k_ - 1 - i))) & 3); }

    u128 packed() const noexcept { return bits_; }
    int k() const noexcept { return k_; }

    friend bool operator==(const Kmer&, const Kmer&) = default;
    friend std::strong_ordering operator<=>(const Kmer& a, const Kmer& b) noexcept {
        if (a.k_ != b.k_) return a.k_ <=> b.k_;
        return a.bits_ == b.bits_ ? std::strong_ordering::equal
               : a.bits_ < b.bits_ ? std::strong_ordering::less
                                   : std::strong_ordering::greater;
    }

private:
    u128 bits_ = 0;
    uint8_t k_ = 0;
};

inline u128 canonical_packed(u128 x, int k) noexcept {
    u128 r = revcomp_packed(x, k);
    return r < x ? r : x;
}

std::string reverse_complement(std::string_view seq);
std::string decode_packed(u128 x, int k);

// All 8 one-base extensions of x (4 successors then 4 predecessors), canonicalized.
void canonical_extensions(u128 x, int k, u128 out[8]) noexcept;

// Calls f(canonical_packed) for each window of seq that contains only ACGT.
template <class F>
void for_each_canonical_kmer(std::string_view seq, int k, F&& f) {
    const u128 mask = kmer_mask(k);
    const int shift = 2 * (k - 1);
    u128 fwd = 0, rev = 0;
    int valid = 0;
    for (char c : seq) {
        int b = base_code(c);
        if (b < 0) {
            valid = 0;
            fwd = rev = 0;
            continue;
        }
        fwd = ((fwd << 2) | static_cast<u128>(b)) & mask;
        rev = (rev >> 2) | (static_cast<u128>(3 - b) << shift);
        if (++valid >= k) f(fwd < rev ? fwd : rev);
    }
}

std::string u128_to_hex(u128 x);

}  // namespace bk
