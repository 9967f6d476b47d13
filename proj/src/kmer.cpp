#include "bubblekit/kmer.hpp"

#include <array>

#include "bubblekit/errors.hpp"

namespace bk {

namespace {

constexpr std::array<int8_t, 256> make_code_table() {
    std::array<int8_t, 256> t{};
    for (auto& v : t) v = -1;
    t['A'] = t['a'] = 0;
    t['C'] = t['c'] = 1;
    t['G'] = t['g'] = 2;
    t['T'] = t['t'] = 3;
    return t;
}
constexpr auto kCodeTable = make_code_table();

// Reverse the order of the 32 two-bit groups of a 64-bit word.
inline uint64_t reverse_pairs64(uint64_t x) noexcept {
    x = ((x >> 2) & 0x3333333333333333ULL) | ((x & 0x3333333333333333ULL) << 2);
    x = ((x >> 4) & 0x0F0F0F0F0F0F0F0FULL) | ((x & 0x0F0F0F0F0F0F0F0FULL) << 4);
    return __builtin_bswap64(x);
}

}  // namespace

int base_code(char c) noexcept { return kCodeTable[static_cast<unsigned char>(c)]; }

char code_base(int code) noexcept { return "ACGT"[code & 3]; }

u128 revcomp_packed(u128 x, int k) noexcept {
    u128 c = ~x;
    uint64_t lo = static_cast<uint64_t>(c);
    uint64_t hi = static_cast<uint64_t>(c >> 64);
    u128 r = (static_cast<u128>(reverse_pairs64(lo)) << 64) | reverse_pairs64(hi);
    return r >> (128 - 2 * k);
}

Kmer Kmer::encode(std::string_view seq, int k) {
    if (k < 1 || k > kMaxK) throw LengthMismatch("k must be in [1,64], got " + std::to_string(k));
    if (static_cast<int>(seq.size()) != k)
        throw LengthMismatch("sequence length " + std::to_string(seq.size()) +
                             " does not match k=" + std::to_string(k));
    u128 v = 0;
    for (char c : seq) {
        int b = base_code(c);
        if (b < 0) throw InvalidBase(std::string("invalid base '") + c + "'");
        v = (v << 2) | static_cast<u128>(b);
    }
    return {v, k};
}

std::string decode_packed(u128 x, int k) {
    std::string s(static_cast<size_t>(k), 'A');
    for (int i = k - 1; i >= 0; --i) {
        s[static_cast<size_t>(i)] = code_base(static_cast<int>(x & 3));
        x >>= 2;
    }
    return s;
}

std::string Kmer::decode() const { return decode_packed(bits_, k_); }

Kmer Kmer::canonical() const noexcept { return {canonical_packed(bits_, k_), k_}; }

std::string reverse_complement(std::string_view seq) {
    std::string out(seq.size(), 'N');
    for (size_t i = 0; i < seq.size(); ++i) {
        char c = seq[seq.size() - 1 - i];
        int b = base_code(c);
        out[i] = b < 0 ? 'N' : code_base(3 - b);
    }
    return out;
}

void canonical_extensions(u128 x, int k, u128 out[8]) noexcept {
    const u128 mask = kmer_mask(k);
    for (int b = 0; b < 4; ++b) {
        out[b] = canonical_packed(((x << 2) | static_cast<u128>(b)) & mask, k);
        out[4 + b] = canonical_packed((x >> 2) | (static_cast<u128>(b) << (2 * (k - 1))), k);
    }
}

std::string u128_to_hex(u128 x) {
    static const char* digits = "0123456789abcdef";
    std::string s(32, '0');
    for (int i = 31; i >= 0; --i) {
        s[static_cast<size_t>(i)] = digits[static_cast<int>(x & 15)];
        x >>= 4;
    }
    return s;
}

}  // namespace bk
