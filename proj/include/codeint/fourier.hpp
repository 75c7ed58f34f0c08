#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "codeint/mult_code.hpp"
#include "codeint/statevector.hpp"

namespace codeint {

// Fourier transform of f: Sigma^n -> C, indexed densely by word_index:
//   fhat(z) = |Sigma^n|^{-1/2} sum_x f(x) w^{x.z},  w = exp(2*pi*i/q).
// Matches the QFT convention, so QFT(sum f(x)|x>) = sum fhat(z)|z>.
inline std::vector<Amp> fourier_transform(std::vector<Amp> f, std::uint32_t q, std::uint32_t slots,
                                          bool inverse = false) {
    std::uint64_t dim = 1;
    for (std::uint32_t t = 0; t < slots; ++t) dim *= q;
    if (f.size() != dim) throw std::invalid_argument("fourier_transform: size is not q^slots");
    detail::qft_block(f.data(), dim, 1, q, slots, inverse);
    return f;
}

namespace detail {

inline std::uint64_t index_add(std::uint64_t a, std::uint64_t b, std::uint32_t q, std::uint32_t slots) {
    std::uint64_t out = 0, mult = 1;
    for (std::uint32_t t = 0; t < slots; ++t) {
        const std::uint64_t d = (a % q + b % q) % q;
        out += d * mult;
        mult *= q;
        a /= q;
        b /= q;
    }
    return out;
}

inline std::uint64_t index_sub(std::uint64_t a, std::uint64_t b, std::uint32_t q, std::uint32_t slots) {
    std::uint64_t out = 0, mult = 1;
    for (std::uint32_t t = 0; t < slots; ++t) {
        const std::uint64_t d = (a % q + q - b % q) % q;
        out += d * mult;
        mult *= q;
        a /= q;
        b /= q;
    }
    return out;
}

}  // namespace detail

// Brute-force convolution (f * g)(x) = sum_y f(y) g(x - y); the independent
// side of the convolution-theorem checks.
inline std::vector<Amp> convolve_brute(const std::vector<Amp>& f, const std::vector<Amp>& g,
                                       std::uint32_t q, std::uint32_t slots) {
    if (f.size() != g.size()) throw std::invalid_argument("convolve_brute: size mismatch");
    std::vector<Amp> out(f.size(), Amp(0.0, 0.0));
    for (std::uint64_t x = 0; x < f.size(); ++x)
        for (std::uint64_t y = 0; y < f.size(); ++y)
            out[x] += f[y] * g[detail::index_sub(x, y, q, slots)];
    return out;
}

struct FourierCheckReport {
    double parseval_err_f = 0.0;
    double parseval_err_g = 0.0;
    double conv_product_err = 0.0;   // (f.g)^ vs |Sigma|^{-n/2} (fhat * ghat)
    double conv_convolve_err = 0.0;  // (f*g)^ vs |Sigma|^{n/2} (fhat . ghat)
    double conv_mixed_err = 0.0;     // (f.(g*f))^ vs fhat * (ghat . fhat)
    double max_err() const {
        double m = parseval_err_f;
        for (double v : {parseval_err_g, conv_product_err, conv_convolve_err, conv_mixed_err})
            m = std::max(m, v);
        return m;
    }
};

inline double max_abs_diff(const std::vector<Amp>& a, const std::vector<Amp>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

// Evaluates both sides of Parseval and of the convolution-theorem identities
// for a pair of functions on Sigma^n (dense vectors of length q^slots).
inline FourierCheckReport fourier_checks(const std::vector<Amp>& f, const std::vector<Amp>& g,
                                         std::uint32_t q, std::uint32_t slots) {
    FourierCheckReport rep;
    const double root_dim = std::sqrt(static_cast<double>(f.size()));
    const auto fhat = fourier_transform(f, q, slots);
    const auto ghat = fourier_transform(g, q, slots);

    double sf = 0.0, sfh = 0.0, sg = 0.0, sgh = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        sf += std::norm(f[i]);
        sfh += std::norm(fhat[i]);
        sg += std::norm(g[i]);
        sgh += std::norm(ghat[i]);
    }
    rep.parseval_err_f = std::abs(sf - sfh);
    rep.parseval_err_g = std::abs(sg - sgh);

    // (f.g)^ = |Sigma|^{-n/2} (fhat * ghat)
    std::vector<Amp> fg(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) fg[i] = f[i] * g[i];
    auto lhs1 = fourier_transform(fg, q, slots);
    auto rhs1 = convolve_brute(fhat, ghat, q, slots);
    for (auto& v : rhs1) v /= root_dim;
    rep.conv_product_err = max_abs_diff(lhs1, rhs1);

    // (f*g)^ = |Sigma|^{n/2} (fhat . ghat)
    auto lhs2 = fourier_transform(convolve_brute(f, g, q, slots), q, slots);
    std::vector<Amp> rhs2(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) rhs2[i] = root_dim * fhat[i] * ghat[i];
    rep.conv_convolve_err = max_abs_diff(lhs2, rhs2);

    // (f.(g*f))^ = fhat * (ghat . fhat)
    auto gf = convolve_brute(g, f, q, slots);
    std::vector<Amp> fgf(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) fgf[i] = f[i] * gf[i];
    auto lhs3 = fourier_transform(fgf, q, slots);
    std::vector<Amp> gh_fh(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) gh_fh[i] = ghat[i] * fhat[i];
    auto rhs3 = convolve_brute(fhat, gh_fh, q, slots);
    rep.conv_mixed_err = max_abs_diff(lhs3, rhs3);
    return rep;
}

// Pointwise-transform property: for f(x) = prod_i f_i(x_i) over Sigma^n,
// fhat(z) = prod_i fhat_i(z_i). Factors are per-coordinate functions on
// Sigma (length q^s each). Returns the max abs deviation.
inline double pointwise_transform_err(const std::vector<std::vector<Amp>>& factors, std::uint32_t q,
                                      std::uint32_t s) {
    std::uint64_t sigma = 1;
    for (std::uint32_t t = 0; t < s; ++t) sigma *= q;
    std::vector<Amp> f{Amp(1.0, 0.0)};
    for (const auto& fac : factors) {
        if (fac.size() != sigma) throw std::invalid_argument("pointwise_transform_err: factor size");
        std::vector<Amp> next(f.size() * sigma);
        for (std::uint64_t hi = 0; hi < sigma; ++hi)
            for (std::uint64_t lo = 0; lo < f.size(); ++lo)
                next[hi * f.size() + lo] = fac[hi] * f[lo];
        f = std::move(next);
    }
    const std::uint32_t n = static_cast<std::uint32_t>(factors.size());
    auto fhat = fourier_transform(f, q, s * n);
    std::vector<std::vector<Amp>> fachat;
    fachat.reserve(n);
    for (const auto& fac : factors) fachat.push_back(fourier_transform(fac, q, s));
    double err = 0.0;
    for (std::uint64_t z = 0; z < fhat.size(); ++z) {
        Amp prod(1.0, 0.0);
        std::uint64_t rest = z;
        for (std::uint32_t i = 0; i < n; ++i) {
            prod *= fachat[i][rest % sigma];
            rest /= sigma;
        }
        err = std::max(err, std::abs(fhat[z] - prod));
    }
    return err;
}

// Uniform superposition over the code as a dense function.
inline std::vector<Amp> uniform_code_function(const CodeParams& params, std::uint64_t cap) {
    const std::uint64_t count = params.codeword_count_capped(cap);
    if (count > cap) throw CapExceeded("uniform_code_function: enumeration exceeds cap");
    const std::uint64_t dim = params.word_count_capped(amplitude_cap());
    if (dim > amplitude_cap()) throw CapExceeded("uniform_code_function: dimension exceeds cap");
    std::vector<Amp> f(dim, Amp(0.0, 0.0));
    const double amp = 1.0 / std::sqrt(static_cast<double>(count));
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        const Word w = encode(message_from_index(params.field(), params.k(), idx), params);
        f[word_index(params.q(), w)] = Amp(amp, 0.0);
    }
    return f;
}

// Squared amplitude mass the transform of the uniform-code state leaves
// outside the dual code.
inline double off_dual_support_mass(const CodeParams& params, const DualData& dual,
                                    std::uint64_t cap = kDefaultEnumerationCap) {
    auto fhat = fourier_transform(uniform_code_function(params, cap), static_cast<std::uint32_t>(params.q()),
                                  params.s() * params.n());
    const auto& dp = dual.dual_params;
    const std::uint64_t dual_count = dp.codeword_count_capped(cap);
    if (dual_count > cap) throw CapExceeded("off_dual_support_mass: dual enumeration exceeds cap");
    std::vector<std::uint8_t> on_dual(fhat.size(), 0);
    for (std::uint64_t idx = 0; idx < dual_count; ++idx)
        on_dual[word_index(params.q(), gm_encode(message_from_index(dp.field(), dp.k(), idx), dual))] = 1;
    double off = 0.0;
    for (std::uint64_t z = 0; z < fhat.size(); ++z)
        if (!on_dual[z]) off += std::norm(fhat[z]);
    return off;
}

// Exact enumeration of the expected Fourier weights of biased preimage
// states: all 2^|Sigma| hash columns weighted by Bias_p, with the
// empty-preimage convention W == 0. Expected weight at frequency 0 is p
// (b = 1) or 1-p (b = 0), and is coordinate-uniform over nonzero
// frequencies.
struct BiasClaimReport {
    double expected_zero[2] = {0.0, 0.0};        // measured E|What(0)|^2 for b = 0, 1
    double zero_dev[2] = {0.0, 0.0};             // |measured - (1-p resp. p)|
    double nonzero_pairwise_dev[2] = {0.0, 0.0};  // max |E|What(s)|^2 - E|What(s')|^2|
};

inline BiasClaimReport bias_claim_enumeration(std::uint32_t q, std::uint32_t s, double p) {
    std::uint64_t sigma = 1;
    for (std::uint32_t t = 0; t < s; ++t) sigma *= q;
    if (sigma > 20) throw CapExceeded("bias_claim_enumeration: 2^|Sigma| columns exceed cap");
    BiasClaimReport rep;
    for (int b = 0; b < 2; ++b) {
        std::vector<double> expected(sigma, 0.0);
        for (std::uint64_t col = 0; col < (1ull << sigma); ++col) {
            const std::uint32_t ones = static_cast<std::uint32_t>(__builtin_popcountll(col));
            const double weight = std::pow(p, ones) * std::pow(1.0 - p, double(sigma - ones));
            if (weight == 0.0) continue;
            std::vector<Amp> w(sigma, Amp(0.0, 0.0));
            std::uint32_t count = 0;
            for (std::uint64_t e = 0; e < sigma; ++e)
                if (static_cast<int>((col >> e) & 1) == b) ++count;
            if (count > 0) {
                const double amp = 1.0 / std::sqrt(static_cast<double>(count));
                for (std::uint64_t e = 0; e < sigma; ++e)
                    if (static_cast<int>((col >> e) & 1) == b) w[e] = Amp(amp, 0.0);
            }
            auto what = fourier_transform(std::move(w), q, s);
            for (std::uint64_t z = 0; z < sigma; ++z) expected[z] += weight * std::norm(what[z]);
        }
        rep.expected_zero[b] = expected[0];
        rep.zero_dev[b] = std::abs(expected[0] - (b == 1 ? p : 1.0 - p));
        double lo = expected[1], hi = expected[1];
        for (std::uint64_t z = 1; z < sigma; ++z) {
            lo = std::min(lo, expected[z]);
            hi = std::max(hi, expected[z]);
        }
        rep.nonzero_pairwise_dev[b] = hi - lo;
    }
    return rep;
}

}  // namespace codeint
