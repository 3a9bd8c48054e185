#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "chromadec/errors.hpp"

namespace chromadec {

/// Dense activation storage is capped at 2^8 codes.
inline constexpr std::size_t kMaxChannels = 8;

/// Three channel responses in the library's canonical (B, G, R) order.
struct Bgr {
    double b = 0.0;
    double g = 0.0;
    double r = 0.0;
};

/// An ordered tuple of n channel responses, each in [0, 1].
///
/// Construction validates; out-of-range values are rejected, never clamped.
/// For n = 3 the channel order is (B, G, R).
class ChannelVector {
public:
    explicit ChannelVector(std::vector<double> values)
        : values_(std::move(values)) {
        if (values_.empty())
            throw DimensionError("ChannelVector: need at least one channel");
        for (std::size_t i = 0; i < values_.size(); ++i) {
            const double v = values_[i];
            if (!(v >= 0.0 && v <= 1.0))
                throw DomainError("ChannelVector: channel " + std::to_string(i) +
                                  " = " + std::to_string(v) + " outside [0, 1]");
        }
    }

    static ChannelVector bgr(double b, double g, double r) {
        return ChannelVector({b, g, r});
    }

    static ChannelVector bgr(const Bgr& c) { return bgr(c.b, c.g, c.r); }

    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }
    const std::vector<double>& values() const { return values_; }

    /// (B, G, R) view; requires n = 3.
    Bgr as_bgr() const {
        require_size(3);
        return Bgr{values_[0], values_[1], values_[2]};
    }

    void require_size(std::size_t n) const {
        if (values_.size() != n)
            throw DimensionError("expected " + std::to_string(n) +
                                 " channels, got " + std::to_string(values_.size()));
    }

    friend bool operator==(const ChannelVector&, const ChannelVector&) = default;

private:
    std::vector<double> values_;
};

/// A length-n binary mask naming one decoder output code.
///
/// Bit i corresponds to channel i, so for n = 3 the string form "011" reads
/// (B=0, G=1, R=1): the yellow code.
class CodeWord {
public:
    CodeWord(unsigned mask, std::size_t n) : mask_(mask), n_(n) {
        if (n < 1 || n > kMaxChannels)
            throw DimensionError("CodeWord: n must be in [1, 8]");
        if (mask >> n)
            throw DomainError("CodeWord: mask has bits beyond channel count");
    }

    static CodeWord from_string(std::string_view bits) {
        if (bits.empty() || bits.size() > kMaxChannels)
            throw DimensionError("CodeWord: bit string length must be in [1, 8]");
        unsigned mask = 0;
        for (std::size_t i = 0; i < bits.size(); ++i) {
            if (bits[i] == '1')
                mask |= 1u << i;
            else if (bits[i] != '0')
                throw ParseError("CodeWord: bit string may contain only 0/1");
        }
        return CodeWord(mask, bits.size());
    }

    unsigned mask() const { return mask_; }
    std::size_t size() const { return n_; }
    bool bit(std::size_t channel) const { return (mask_ >> channel) & 1u; }
    bool all_zeros() const { return mask_ == 0; }
    bool all_ones() const { return mask_ == (1u << n_) - 1u; }

    std::string to_string() const {
        std::string s(n_, '0');
        for (std::size_t i = 0; i < n_; ++i)
            if (bit(i)) s[i] = '1';
        return s;
    }

    /// 0/1 unit vector with one component per channel.
    std::vector<double> unit_vector() const {
        std::vector<double> u(n_, 0.0);
        for (std::size_t i = 0; i < n_; ++i)
            if (bit(i)) u[i] = 1.0;
        return u;
    }

    friend bool operator==(const CodeWord&, const CodeWord&) = default;

private:
    unsigned mask_;
    std::size_t n_;
};

namespace detail {

inline double sum_activations(const std::vector<double>& a) {
    double s = 0.0;
    for (double v : a) s += v;
    return s;
}

} // namespace detail

/// The full map from all 2^n code words to their activations.
///
/// Invariants enforced on construction: every activation in [0, 1], the
/// activations sum to 1 within 1e-12, and at most n + 1 of them are nonzero.
class DecoderOutput {
public:
    DecoderOutput(std::size_t n, std::vector<double> activations)
        : n_(n), activations_(std::move(activations)) {
        if (n < 1 || n > kMaxChannels)
            throw DimensionError("DecoderOutput: n must be in [1, 8]");
        if (activations_.size() != (std::size_t{1} << n))
            throw DimensionError("DecoderOutput: need 2^n activations");
        std::size_t nonzero = 0;
        for (double a : activations_) {
            if (!(a >= 0.0 && a <= 1.0))
                throw DomainError("DecoderOutput: activation outside [0, 1]");
            if (a != 0.0) ++nonzero;
        }
        if (nonzero > n + 1)
            throw InconsistencyError("DecoderOutput: more than n + 1 nonzero activations");
        const double s = detail::sum_activations(activations_);
        if (!(s > 1.0 - 1e-12 && s < 1.0 + 1e-12))
            throw InconsistencyError("DecoderOutput: activations do not sum to 1");
    }

    std::size_t channels() const { return n_; }
    std::size_t size() const { return activations_.size(); }
    const std::vector<double>& activations() const { return activations_; }

    double activation(unsigned mask) const {
        if (mask >= activations_.size())
            throw DomainError("DecoderOutput: mask out of range");
        return activations_[mask];
    }

    double activation(const CodeWord& w) const {
        if (w.size() != n_)
            throw DimensionError("DecoderOutput: code word has wrong channel count");
        return activations_[w.mask()];
    }

    double sum() const { return detail::sum_activations(activations_); }

    std::size_t nonzero_count() const {
        return static_cast<std::size_t>(
            std::count_if(activations_.begin(), activations_.end(),
                          [](double a) { return a != 0.0; }));
    }

    // Named accessors for the n = 3 codes of the (B, G, R) decoder.
    double blackness() const   { return named(0); }
    double blueness() const    { return named(1); }
    double greenness() const   { return named(2); }
    double cyanness() const    { return named(3); }
    double redness() const     { return named(4); }
    double magentaness() const { return named(5); }
    double yellowness() const  { return named(6); }
    double whiteness() const   { return named(7); }

private:
    double named(unsigned mask) const {
        if (n_ != 3)
            throw DimensionError("named code accessors require n = 3");
        return activations_[mask];
    }

    std::size_t n_;
    std::vector<double> activations_;
};

/// Median of three: max of the pairwise minima, the second-largest value.
/// Total on all reals.
inline double med(double a, double b, double c) {
    return std::max({std::min(a, b), std::min(a, c), std::min(b, c)});
}

/// Label of an n = 3 code, Table-style: mask bit 0 = B, 1 = G, 2 = R.
inline std::string_view code_label3(unsigned mask) {
    static constexpr std::array<std::string_view, 8> names{
        "blackness", "blueness",    "greenness",  "cyanness",
        "redness",   "magentaness", "yellowness", "whiteness"};
    if (mask > 7)
        throw DomainError("code_label3: mask out of range");
    return names[mask];
}

/// n = 3 masks in canonical display order:
/// black, red, yellow, green, cyan, blue, magenta, white.
inline constexpr std::array<unsigned, 8> kCanonicalOrder3{0, 4, 6, 2, 3, 1, 5, 7};

/// Allocation-free n = 3 decode kernel. Result indexed by code mask.
inline std::array<double, 8> decode3_activations(double b, double g, double r) {
    std::array<double, 8> a;
    a[0] = 1.0 - std::max({b, g, r});           // blackness
    a[1] = std::max(0.0, b - std::max(g, r));   // blueness
    a[2] = std::max(0.0, g - std::max(b, r));   // greenness
    a[3] = std::max(0.0, std::min(b, g) - r);   // cyanness
    a[4] = std::max(0.0, r - std::max(b, g));   // redness
    a[5] = std::max(0.0, std::min(b, r) - g);   // magentaness
    a[6] = std::max(0.0, std::min(g, r) - b);   // yellowness
    a[7] = std::min({b, g, r});                 // whiteness
    return a;
}

/// 3-to-8 fuzzy decode. The eight activations partition unity: the input
/// splits into blackness, whiteness, and at most two adjacent chromatic codes.
inline DecoderOutput decode3(const ChannelVector& c) {
    c.require_size(3);
    const auto a = decode3_activations(c[0], c[1], c[2]);
    return DecoderOutput(3, std::vector<double>(a.begin(), a.end()));
}

/// General n-to-2^n fuzzy decode for n in [1, 8].
///
/// activation(w) = max(0, min of channels where w has 1 − max of channels
/// where w has 0), with empty min = 1 and empty max = 0. For n = 3 this
/// reproduces decode3 bit for bit.
inline DecoderOutput decode_n(const ChannelVector& c) {
    const std::size_t n = c.size();
    if (n > kMaxChannels)
        throw DimensionError("decode_n: at most 8 channels supported");
    const std::size_t codes = std::size_t{1} << n;
    std::vector<double> acts(codes);
    for (std::size_t mask = 0; mask < codes; ++mask) {
        double ones = 1.0;   // empty min; channels never exceed 1
        double zeros = 0.0;  // empty max; channels never fall below 0
        for (std::size_t i = 0; i < n; ++i) {
            if ((mask >> i) & 1u)
                ones = std::min(ones, c[i]);
            else
                zeros = std::max(zeros, c[i]);
        }
        acts[mask] = std::max(0.0, ones - zeros);
    }
    return DecoderOutput(n, std::move(acts));
}

/// All code words that are neither all-zeros (black) nor all-ones (white):
/// 2^n − 2 of them, in ascending mask order.
inline std::vector<CodeWord> enumerate_unique_colors(std::size_t n) {
    if (n < 1 || n > kMaxChannels)
        throw DimensionError("enumerate_unique_colors: n must be in [1, 8]");
    std::vector<CodeWord> out;
    const unsigned top = (1u << n) - 1u;
    for (unsigned mask = 1; mask < top; ++mask)
        out.emplace_back(mask, n);
    return out;
}

} // namespace chromadec
