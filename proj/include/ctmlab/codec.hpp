#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ctmlab {

struct DecodeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Self-delimiting bit string with hex serialization for CLI output.
struct Codeword {
    std::vector<bool> bits;

    size_t length() const { return bits.size(); }

    std::string to_hex() const {
        static const char* digits = "0123456789abcdef";
        std::string out = std::to_string(bits.size()) + ":";
        unsigned nibble = 0;
        for (size_t i = 0; i < bits.size(); ++i) {
            nibble = (nibble << 1) | (bits[i] ? 1u : 0u);
            if (i % 4 == 3) {
                out.push_back(digits[nibble]);
                nibble = 0;
            }
        }
        if (bits.size() % 4 != 0)
            out.push_back(digits[nibble << (4 - bits.size() % 4)]);
        return out;
    }

    static Codeword from_hex(const std::string& text) {
        const size_t colon = text.find(':');
        if (colon == std::string::npos)
            throw DecodeError("hex codeword missing length prefix");
        const size_t n = std::stoull(text.substr(0, colon));
        Codeword cw;
        cw.bits.reserve(n);
        for (size_t i = colon + 1; i < text.size() && cw.bits.size() < n; ++i) {
            const char c = text[i];
            unsigned v;
            if (c >= '0' && c <= '9') v = c - '0';
            else if (c >= 'a' && c <= 'f') v = 10 + (c - 'a');
            else throw DecodeError("bad hex digit in codeword");
            for (int b = 3; b >= 0 && cw.bits.size() < n; --b)
                cw.bits.push_back((v >> b) & 1);
        }
        if (cw.bits.size() != n) throw DecodeError("hex codeword shorter than its length prefix");
        return cw;
    }
};

namespace detail {

struct BitWriter {
    std::vector<bool> bits;
    void put(bool b) { bits.push_back(b); }
    // Elias gamma: floor(log2 v) zeros, then v's binary digits. v >= 1.
    void gamma(uint64_t v) {
        int width = 0;
        for (uint64_t t = v; t > 1; t >>= 1) ++width;
        for (int i = 0; i < width; ++i) put(false);
        for (int i = width; i >= 0; --i) put((v >> i) & 1);
    }
};

struct BitReader {
    const std::vector<bool>& bits;
    size_t pos = 0;

    bool get() {
        if (pos >= bits.size()) throw DecodeError("truncated codeword");
        return bits[pos++];
    }
    uint64_t gamma() {
        int zeros = 0;
        while (!get()) {
            if (++zeros > 63) throw DecodeError("gamma length overflow");
        }
        uint64_t v = 1;
        for (int i = 0; i < zeros; ++i) v = (v << 1) | (get() ? 1 : 0);
        return v;
    }
    void expect_end() const {
        if (pos != bits.size()) throw DecodeError("trailing bits in codeword");
    }
};

inline size_t gamma_length(uint64_t v) {
    int width = 0;
    for (uint64_t t = v; t > 1; t >>= 1) ++width;
    return 2 * static_cast<size_t>(width) + 1;
}

inline void check_bits(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("bit string must be non-empty");
    for (char c : s)
        if (c != '0' && c != '1')
            throw std::invalid_argument("bit string may contain only 0 and 1");
}

// Smallest period p of s with |s| divisible by p.
inline size_t smallest_period(const std::string& s) {
    for (size_t p = 1; p <= s.size() / 2; ++p) {
        if (s.size() % p != 0) continue;
        bool ok = true;
        for (size_t i = p; i < s.size() && ok; ++i) ok = s[i] == s[i - p];
        if (ok) return p;
    }
    return s.size();
}

} // namespace detail

// Mode tags (2 bits). Literal: gamma(|s|) + raw bits. RunLength: first
// bit + gamma(#runs) + gamma of each run length. Repeat: gamma(count) +
// gamma(unit length) + unit bits, for strings with a proper period.
enum class CodecMode : uint8_t { Literal = 0, RunLength = 1, Repeat = 2 };

namespace detail {

inline Codeword encode_literal(const std::string& s) {
    BitWriter w;
    w.put(false); w.put(false);
    w.gamma(s.size());
    for (char c : s) w.put(c == '1');
    return {std::move(w.bits)};
}

inline Codeword encode_runs(const std::string& s) {
    std::vector<uint64_t> runs;
    uint64_t len = 1;
    for (size_t i = 1; i < s.size(); ++i) {
        if (s[i] == s[i - 1]) ++len;
        else { runs.push_back(len); len = 1; }
    }
    runs.push_back(len);
    BitWriter w;
    w.put(false); w.put(true);
    w.put(s[0] == '1');
    w.gamma(runs.size());
    for (uint64_t r : runs) w.gamma(r);
    return {std::move(w.bits)};
}

inline Codeword encode_repeat(const std::string& s, size_t period) {
    BitWriter w;
    w.put(true); w.put(false);
    w.gamma(s.size() / period);
    w.gamma(period);
    for (size_t i = 0; i < period; ++i) w.put(s[i] == '1');
    return {std::move(w.bits)};
}

} // namespace detail

// Injective baseline code: the shortest of the three modes, ties broken
// literal < run-length < repeat.
inline Codeword encode(const std::string& s) {
    detail::check_bits(s);
    Codeword best = detail::encode_literal(s);
    const Codeword runs = detail::encode_runs(s);
    if (runs.length() < best.length()) best = runs;
    const size_t period = detail::smallest_period(s);
    if (period < s.size()) {
        const Codeword rep = detail::encode_repeat(s, period);
        if (rep.length() < best.length()) best = rep;
    }
    return best;
}

inline std::string decode(const Codeword& cw) {
    detail::BitReader r{cw.bits};
    const bool hi = r.get(), lo = r.get();
    std::string out;
    if (!hi && !lo) { // literal
        const uint64_t n = r.gamma();
        out.reserve(n);
        for (uint64_t i = 0; i < n; ++i) out.push_back(r.get() ? '1' : '0');
    } else if (!hi && lo) { // run-length
        char bit = r.get() ? '1' : '0';
        const uint64_t nruns = r.gamma();
        for (uint64_t i = 0; i < nruns; ++i) {
            out.append(r.gamma(), bit);
            bit = (bit == '0') ? '1' : '0';
        }
    } else if (hi && !lo) { // repeat
        const uint64_t count = r.gamma();
        const uint64_t unit_len = r.gamma();
        std::string unit;
        unit.reserve(unit_len);
        for (uint64_t i = 0; i < unit_len; ++i) unit.push_back(r.get() ? '1' : '0');
        for (uint64_t i = 0; i < count; ++i) out += unit;
    } else {
        throw DecodeError("unknown codec mode tag");
    }
    r.expect_end();
    if (out.empty()) throw DecodeError("codeword decodes to an empty string");
    return out;
}

// Compression-style upper bound on K(s), up to the fixed decoder constant.
inline size_t k_upper_bound(const std::string& s) { return encode(s).length(); }

} // namespace ctmlab
