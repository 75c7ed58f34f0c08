#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "codeint/field_poly.hpp"
#include "codeint/linalg.hpp"

namespace codeint {

constexpr std::uint64_t kDefaultEnumerationCap = 1ull << 22;

struct CapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using Symbol = std::vector<FieldElem>;  // length s

// Word over Sigma^n with Sigma = F_q^s, stored flat: slot j of symbol i at
// flat[i*s + j].
struct Word {
    std::uint32_t n = 0, s = 0;
    std::vector<FieldElem> flat;

    Word() = default;
    Word(std::uint32_t n_, std::uint32_t s_) : n(n_), s(s_), flat(std::size_t(n_) * s_, 0) {}

    FieldElem& at(std::uint32_t i, std::uint32_t j) { return flat[std::size_t(i) * s + j]; }
    FieldElem at(std::uint32_t i, std::uint32_t j) const { return flat[std::size_t(i) * s + j]; }

    Symbol symbol(std::uint32_t i) const {
        return Symbol(flat.begin() + std::size_t(i) * s, flat.begin() + std::size_t(i + 1) * s);
    }
    void set_symbol(std::uint32_t i, const Symbol& sym) {
        if (sym.size() != s) throw std::invalid_argument("Word: symbol length mismatch");
        std::copy(sym.begin(), sym.end(), flat.begin() + std::size_t(i) * s);
    }

    bool symbol_is_zero(std::uint32_t i) const {
        for (std::uint32_t j = 0; j < s; ++j)
            if (at(i, j) != 0) return false;
        return true;
    }
    std::uint32_t hamming_weight() const {
        std::uint32_t w = 0;
        for (std::uint32_t i = 0; i < n; ++i) w += !symbol_is_zero(i);
        return w;
    }
    bool is_zero() const {
        for (FieldElem v : flat)
            if (v != 0) return false;
        return true;
    }
    bool operator==(const Word& o) const { return n == o.n && s == o.s && flat == o.flat; }
    bool operator!=(const Word& o) const { return !(*this == o); }
};

inline void check_same_shape(const Word& a, const Word& b) {
    if (a.n != b.n || a.s != b.s) throw std::invalid_argument("Word: shape mismatch");
}

inline std::uint32_t hamming_distance(const Word& a, const Word& b) {
    check_same_shape(a, b);
    std::uint32_t d = 0;
    for (std::uint32_t i = 0; i < a.n; ++i) {
        bool diff = false;
        for (std::uint32_t j = 0; j < a.s; ++j) diff |= a.at(i, j) != b.at(i, j);
        d += diff;
    }
    return d;
}

inline Word word_add(const PrimeField& field, const Word& a, const Word& b) {
    check_same_shape(a, b);
    Word out(a.n, a.s);
    for (std::size_t t = 0; t < a.flat.size(); ++t) out.flat[t] = field.add(a.flat[t], b.flat[t]);
    return out;
}

inline Word word_sub(const PrimeField& field, const Word& a, const Word& b) {
    check_same_shape(a, b);
    Word out(a.n, a.s);
    for (std::size_t t = 0; t < a.flat.size(); ++t) out.flat[t] = field.sub(a.flat[t], b.flat[t]);
    return out;
}

// --- dense indexing (little-endian mixed radix, slot (i=0, j=0) least
// significant); shared convention with the state-vector simulator ---

inline std::uint64_t symbol_index(std::uint64_t q, const Symbol& sym) {
    std::uint64_t idx = 0;
    for (std::size_t j = sym.size(); j-- > 0;) idx = idx * q + sym[j];
    return idx;
}

inline Symbol symbol_from_index(std::uint64_t q, std::uint32_t s, std::uint64_t idx) {
    Symbol sym(s, 0);
    for (std::uint32_t j = 0; j < s; ++j) {
        sym[j] = static_cast<FieldElem>(idx % q);
        idx /= q;
    }
    return sym;
}

inline std::uint64_t word_index(std::uint64_t q, const Word& w) {
    std::uint64_t idx = 0;
    for (std::size_t t = w.flat.size(); t-- > 0;) idx = idx * q + w.flat[t];
    return idx;
}

inline Word word_from_index(std::uint64_t q, std::uint32_t n, std::uint32_t s, std::uint64_t idx) {
    Word w(n, s);
    for (std::size_t t = 0; t < w.flat.size(); ++t) {
        w.flat[t] = static_cast<FieldElem>(idx % q);
        idx /= q;
    }
    return w;
}

// A multiplicity code instance Mult_{s,F_q}(alpha_1..alpha_n; k).
class CodeParams {
  public:
    CodeParams(PrimeField field, std::uint32_t s, std::uint32_t k, std::vector<FieldElem> alphas)
        : field_(field), s_(s), k_(k), alphas_(std::move(alphas)) {
        if (s_ < 1) throw std::invalid_argument("CodeParams: s must be >= 1");
        if (alphas_.empty()) throw std::invalid_argument("CodeParams: no evaluation points");
        for (FieldElem a : alphas_)
            if (a >= field_.modulus()) throw std::invalid_argument("CodeParams: evaluation point out of range");
        for (std::size_t i = 0; i < alphas_.size(); ++i)
            for (std::size_t j = i + 1; j < alphas_.size(); ++j)
                if (alphas_[i] == alphas_[j])
                    throw std::invalid_argument("CodeParams: evaluation points must be distinct");
        if (k_ < 1 || k_ >= s_ * n()) throw std::invalid_argument("CodeParams: need 1 <= k < s*n");
    }

    const PrimeField& field() const { return field_; }
    std::uint32_t s() const { return s_; }
    std::uint32_t k() const { return k_; }
    std::uint32_t n() const { return static_cast<std::uint32_t>(alphas_.size()); }
    const std::vector<FieldElem>& alphas() const { return alphas_; }
    std::uint64_t q() const { return field_.modulus(); }

    // s < char(F_q) makes Hasse and formal derivatives interchangeable up to
    // nonzero factorials; decoding and duality do not need it.
    bool hasse_formal_interchangeable() const { return s_ < field_.modulus(); }

    std::uint64_t sigma_size() const {
        std::uint64_t v = 1;
        for (std::uint32_t j = 0; j < s_; ++j) v *= q();
        return v;
    }

    // q^k, saturating above cap+1 so callers can compare safely.
    std::uint64_t codeword_count_capped(std::uint64_t cap = UINT64_MAX) const {
        return pow_capped(q(), k_, cap);
    }
    std::uint64_t word_count_capped(std::uint64_t cap = UINT64_MAX) const {
        return pow_capped(q(), std::uint64_t(s_) * n(), cap);
    }

    // Design distance n - floor((k-1)/s), met by the multiplicity
    // Schwartz-Zippel bound.
    std::uint32_t design_distance() const { return n() - (k_ - 1) / s_; }
    std::uint32_t unique_decoding_radius() const { return (design_distance() - 1) / 2; }

    static std::uint64_t pow_capped(std::uint64_t base, std::uint64_t exp, std::uint64_t cap) {
        std::uint64_t v = 1;
        for (std::uint64_t i = 0; i < exp; ++i) {
            if (v > cap / base + 1) return cap + 1;
            v *= base;
            if (v > cap) return cap + 1;
        }
        return v;
    }

  private:
    PrimeField field_;
    std::uint32_t s_, k_;
    std::vector<FieldElem> alphas_;
};

// Message (coefficient vector) enumeration: digit a_j at radix position j.
inline Polynomial message_from_index(const PrimeField& field, std::uint32_t k, std::uint64_t idx) {
    std::vector<FieldElem> coeffs(k, 0);
    const std::uint64_t q = field.modulus();
    for (std::uint32_t j = 0; j < k; ++j) {
        coeffs[j] = static_cast<FieldElem>(idx % q);
        idx /= q;
    }
    return Polynomial(field, std::move(coeffs));
}

inline bool message_lex_less(const Polynomial& a, const Polynomial& b, std::uint32_t k) {
    for (std::uint32_t j = 0; j < k; ++j) {
        if (a.coeff(j) != b.coeff(j)) return a.coeff(j) < b.coeff(j);
    }
    return false;
}

// Encode f as the word of its first s Hasse derivatives at each point.
inline Word encode(const Polynomial& f, const CodeParams& params) {
    if (f.degree() >= static_cast<int>(params.k()))
        throw std::invalid_argument("encode: message degree too high");
    Word w(params.n(), params.s());
    for (std::uint32_t j = 0; j < params.s(); ++j) {
        const Polynomial d = hasse_derivative(f, j);
        for (std::uint32_t i = 0; i < params.n(); ++i) w.at(i, j) = d.eval(params.alphas()[i]);
    }
    return w;
}

// Hermite interpolation basis: A_{i,j}(X) with A_{i,j}^{(j')}(alpha_{i'}) = 1
// exactly when (i,j) = (i',j'), plus the top coefficients a_{i,j} of X^{sn-1}.
struct HermiteSystem {
    std::vector<std::vector<Polynomial>> basis;    // [n][s]
    std::vector<std::vector<FieldElem>> top_coeffs;  // [n][s]
};

inline HermiteSystem hermite_coefficients(const CodeParams& params) {
    const auto& field = params.field();
    const std::uint32_t n = params.n(), s = params.s();
    const std::uint32_t sn = s * n;
    HermiteSystem sys;
    sys.basis.reserve(n);
    sys.top_coeffs.assign(n, std::vector<FieldElem>(s, 0));
    for (std::uint32_t i = 0; i < n; ++i) {
        const FieldElem alpha = params.alphas()[i];
        // mu_i = prod_{i' != i} (X - alpha_{i'})^s
        Polynomial mu = Polynomial::constant(field, 1);
        for (std::uint32_t ip = 0; ip < n; ++ip) {
            if (ip == i) continue;
            const Polynomial lin = Polynomial::x_minus(field, params.alphas()[ip]);
            for (std::uint32_t t = 0; t < s; ++t) mu = mu * lin;
        }
        // (X - alpha_i)^s and eta_i = mu_i^{-1} mod (X - alpha_i)^s
        Polynomial shifted_pow = Polynomial::constant(field, 1);
        const Polynomial lin_i = Polynomial::x_minus(field, alpha);
        for (std::uint32_t t = 0; t < s; ++t) shifted_pow = shifted_pow * lin_i;
        const Polynomial eta = poly_inverse_mod(mu, shifted_pow);

        std::vector<FieldElem> eta_derivs(s, 0);
        for (std::uint32_t t = 0; t < s; ++t) eta_derivs[t] = hasse_derivative(eta, t).eval(alpha);

        std::vector<Polynomial> row;
        row.reserve(s);
        Polynomial x_pow = Polynomial::constant(field, 1);  // (X - alpha_i)^j
        for (std::uint32_t j = 0; j < s; ++j) {
            Polynomial tail = Polynomial::zero(field);
            Polynomial term = Polynomial::constant(field, 1);  // (X - alpha_i)^t
            for (std::uint32_t t = 0; t + j <= s - 1; ++t) {
                tail = tail + term.scale(eta_derivs[t]);
                term = term * lin_i;
            }
            Polynomial a_ij = mu * x_pow * tail;
            if (a_ij.degree() >= static_cast<int>(sn))
                throw std::logic_error("hermite_coefficients: basis degree exceeds sn-1");
            sys.top_coeffs[i][j] = a_ij.coeff(sn - 1);
            row.push_back(std::move(a_ij));
            x_pow = x_pow * lin_i;
        }
        sys.basis.push_back(std::move(row));
    }
    return sys;
}

// Unique degree < sn polynomial whose Hasse derivative data matches the word.
inline Polynomial interpolate_word(const HermiteSystem& sys, const Word& w, const CodeParams& params) {
    Polynomial f = Polynomial::zero(params.field());
    for (std::uint32_t i = 0; i < params.n(); ++i)
        for (std::uint32_t j = 0; j < params.s(); ++j)
            if (w.at(i, j) != 0) f = f + sys.basis[i][j].scale(w.at(i, j));
    return f;
}

// Explicit dual description of a multiplicity code: anti-triangular U_i per
// coordinate built from Hermite top coefficients, plus the dual degree bound.
struct DualData {
    CodeParams params;       // primal code
    CodeParams dual_params;  // same points, degree bound sn - k
    HermiteSystem hermite;
    std::vector<MatFp> matrices;      // U_i
    std::vector<MatFp> matrices_inv;  // U_i^{-1}
};

inline DualData dual_matrices(const CodeParams& params) {
    const auto& field = params.field();
    const std::uint32_t n = params.n(), s = params.s();
    HermiteSystem sys = hermite_coefficients(params);
    std::vector<MatFp> mats, invs;
    mats.reserve(n);
    invs.reserve(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        MatFp u(field, s, s);
        for (std::uint32_t r = 0; r < s; ++r)
            for (std::uint32_t c = 0; c + r < s; ++c) u.at(r, c) = sys.top_coeffs[i][r + c];
        auto inv = u.inverse();
        if (!inv) throw std::logic_error("dual_matrices: singular U_i, construction bug");
        mats.push_back(std::move(u));
        invs.push_back(std::move(*inv));
    }
    CodeParams dual_params(field, s, s * n - params.k(), params.alphas());
    return DualData{params, std::move(dual_params), std::move(sys), std::move(mats), std::move(invs)};
}

// Dual encoding: symbol i = U_i * (g^{(0)}(alpha_i), ..., g^{(s-1)}(alpha_i)).
inline Word gm_encode(const Polynomial& g, const DualData& dual) {
    if (g.degree() >= static_cast<int>(dual.dual_params.k()))
        throw std::invalid_argument("gm_encode: message degree too high");
    Word base = encode(g, dual.dual_params);
    Word out(base.n, base.s);
    for (std::uint32_t i = 0; i < base.n; ++i)
        out.set_symbol(i, dual.matrices[i].mul_vec(base.symbol(i)));
    return out;
}

inline FieldElem sigma_inner_product(const PrimeField& field, const Word& a, const Word& b) {
    check_same_shape(a, b);
    FieldElem acc = 0;
    for (std::size_t t = 0; t < a.flat.size(); ++t)
        acc = field.add(acc, field.mul(a.flat[t], b.flat[t]));
    return acc;
}

// Membership via Hermite interpolation: the interpolant always reproduces the
// word's derivative data, so membership is just a degree check (re-encoding
// kept as a consistency guard).
inline bool is_codeword(const Word& w, const CodeParams& params, const HermiteSystem& sys) {
    if (w.n != params.n() || w.s != params.s())
        throw std::invalid_argument("is_codeword: word shape mismatch");
    const Polynomial f = interpolate_word(sys, w, params);
    if (f.degree() >= static_cast<int>(params.k())) return false;
    return encode(f, params) == w;
}

inline bool is_codeword(const Word& w, const CodeParams& params) {
    return is_codeword(w, params, hermite_coefficients(params));
}

// k x (n*s) generator matrix, rows = encodings of the monomial basis.
inline MatFp generator_matrix(const CodeParams& params) {
    MatFp g(params.field(), params.k(), std::size_t(params.n()) * params.s());
    for (std::uint32_t j = 0; j < params.k(); ++j) {
        std::vector<FieldElem> coeffs(j + 1, 0);
        coeffs[j] = 1;
        const Word w = encode(Polynomial(params.field(), coeffs), params);
        for (std::size_t t = 0; t < w.flat.size(); ++t) g.at(j, t) = w.flat[t];
    }
    return g;
}

inline MatFp dual_generator_matrix(const DualData& dual) {
    const auto& dp = dual.dual_params;
    MatFp g(dp.field(), dp.k(), std::size_t(dp.n()) * dp.s());
    for (std::uint32_t j = 0; j < dp.k(); ++j) {
        std::vector<FieldElem> coeffs(j + 1, 0);
        coeffs[j] = 1;
        const Word w = gm_encode(Polynomial(dp.field(), coeffs), dual);
        for (std::size_t t = 0; t < w.flat.size(); ++t) g.at(j, t) = w.flat[t];
    }
    return g;
}

// --- decoding ---

enum class DecodeStatus { ok, no_codeword_in_radius, cap_exceeded };

struct DecodeResult {
    DecodeStatus status;
    std::optional<Polynomial> message;

    bool ok() const { return status == DecodeStatus::ok; }
};

namespace detail {
// Pascal triangle rows 0..nmax, reduced mod p.
inline std::vector<std::vector<FieldElem>> pascal_rows(const PrimeField& field, std::uint32_t nmax) {
    std::vector<std::vector<FieldElem>> rows(nmax + 1);
    for (std::uint32_t m = 0; m <= nmax; ++m) {
        rows[m].assign(m + 1, 1);
        for (std::uint32_t l = 1; l < m; ++l)
            rows[m][l] = field.add(rows[m - 1][l - 1], rows[m - 1][l]);
    }
    return rows;
}
}  // namespace detail

// Berlekamp-Welch extended to multiplicity codes. For an error budget of t
// symbols, the locator E vanishes to order s at each error position, so
// deg E <= s*t, deg Q <= s*t + k - 1, and the n*s linear conditions
//   Q^{(j)}(alpha_i) = sum_{l<=j} E^{(l)}(alpha_i) y_{i,j-l}
// hold for the true pair (E, E*f). Any nonzero solution within the unique
// decoding radius yields Q/E = f with exact division.
inline DecodeResult decode_unique_bw(const Word& received, const CodeParams& params) {
    if (received.n != params.n() || received.s != params.s())
        throw std::invalid_argument("decode_unique_bw: word shape mismatch");
    const auto& field = params.field();
    const std::uint32_t n = params.n(), s = params.s(), k = params.k();
    const std::uint32_t radius = params.unique_decoding_radius();

    for (std::uint32_t t = 0; t <= radius; ++t) {
        const std::uint32_t degE = s * t;
        const std::uint32_t degQ = s * t + k - 1;
        const std::size_t nE = degE + 1, nQ = degQ + 1;
        const auto pascal = detail::pascal_rows(field, std::max(degE, degQ));

        MatFp sys(field, std::size_t(n) * s, nE + nQ);
        std::size_t row = 0;
        for (std::uint32_t i = 0; i < n; ++i) {
            const FieldElem alpha = params.alphas()[i];
            std::vector<FieldElem> apow(std::max(nE, nQ), 1);
            for (std::size_t m = 1; m < apow.size(); ++m) apow[m] = field.mul(apow[m - 1], alpha);
            for (std::uint32_t j = 0; j < s; ++j, ++row) {
                // E_m coefficient: sum_{l <= min(j, m)} C(m, l) alpha^{m-l} y_{i, j-l}
                for (std::size_t m = 0; m < nE; ++m) {
                    FieldElem acc = 0;
                    for (std::uint32_t l = 0; l <= j && l <= m; ++l)
                        acc = field.add(acc, field.mul(field.mul(pascal[m][l], apow[m - l]),
                                                       received.at(i, j - l)));
                    sys.at(row, m) = acc;
                }
                // Q_m coefficient: -C(m, j) alpha^{m-j}
                for (std::size_t m = j; m < nQ; ++m)
                    sys.at(row, nE + m) = field.neg(field.mul(pascal[m][j], apow[m - j]));
            }
        }

        auto kernel = sys.null_vector();
        if (!kernel) continue;
        std::vector<FieldElem> e_coeffs(kernel->begin(), kernel->begin() + nE);
        std::vector<FieldElem> q_coeffs(kernel->begin() + nE, kernel->end());
        const Polynomial E(field, std::move(e_coeffs));
        const Polynomial Q(field, std::move(q_coeffs));
        if (E.is_zero()) continue;
        auto [f, rem] = Q.divmod(E);
        if (!rem.is_zero()) continue;
        if (f.degree() >= static_cast<int>(k)) continue;
        if (hamming_distance(encode(f, params), received) <= t)
            return DecodeResult{DecodeStatus::ok, f};
    }
    return DecodeResult{DecodeStatus::no_codeword_in_radius, std::nullopt};
}

struct BruteDecodeOptions {
    bool strict_radius = false;
    std::uint64_t cap = kDefaultEnumerationCap;
};

// Ground-truth nearest-codeword decoder; ties broken by lexicographically
// smallest message coefficient vector (a_0 first).
inline DecodeResult decode_brute_force(const Word& received, const CodeParams& params,
                                       const BruteDecodeOptions& opts = {}) {
    if (received.n != params.n() || received.s != params.s())
        throw std::invalid_argument("decode_brute_force: word shape mismatch");
    const std::uint64_t count = params.codeword_count_capped(opts.cap);
    if (count > opts.cap)
        return DecodeResult{DecodeStatus::cap_exceeded, std::nullopt};

    std::optional<Polynomial> best;
    std::uint32_t best_dist = 0;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        Polynomial msg = message_from_index(params.field(), params.k(), idx);
        const std::uint32_t dist = hamming_distance(encode(msg, params), received);
        if (!best || dist < best_dist ||
            (dist == best_dist && message_lex_less(msg, *best, params.k()))) {
            best = std::move(msg);
            best_dist = dist;
        }
    }
    if (opts.strict_radius && best_dist > params.unique_decoding_radius())
        return DecodeResult{DecodeStatus::no_codeword_in_radius, std::nullopt};
    return DecodeResult{DecodeStatus::ok, best};
}

// Exact minimum symbol weight over nonzero codewords of a generic linear
// encoder message-index -> Word.
template <typename EncodeFn>
inline std::uint32_t min_weight_enumerated(const PrimeField& field, std::uint32_t dim,
                                           std::uint64_t cap, EncodeFn&& enc) {
    const std::uint64_t count = CodeParams::pow_capped(field.modulus(), dim, cap);
    if (count > cap) throw CapExceeded("min_weight: enumeration exceeds cap");
    std::uint32_t best = UINT32_MAX;
    for (std::uint64_t idx = 1; idx < count; ++idx)
        best = std::min(best, enc(idx).hamming_weight());
    return best;
}

inline std::uint32_t min_weight_brute(const CodeParams& params,
                                      std::uint64_t cap = kDefaultEnumerationCap) {
    return min_weight_enumerated(params.field(), params.k(), cap, [&](std::uint64_t idx) {
        return encode(message_from_index(params.field(), params.k(), idx), params);
    });
}

inline std::uint32_t min_weight_brute_dual(const DualData& dual,
                                           std::uint64_t cap = kDefaultEnumerationCap) {
    const auto& dp = dual.dual_params;
    return min_weight_enumerated(dp.field(), dp.k(), cap, [&](std::uint64_t idx) {
        return gm_encode(message_from_index(dp.field(), dp.k(), idx), dual);
    });
}

// Dual design distance n - floor((sn-k-1)/s) = ceil((k+1)/s).
inline std::uint32_t dual_design_distance(const CodeParams& params) {
    return (params.k() + 1 + params.s() - 1) / params.s();
}
inline std::uint32_t dual_unique_decoding_radius(const CodeParams& params) {
    return (dual_design_distance(params) - 1) / 2;
}

enum class DualDecodeMode { bw, brute };

// Total decoder Sigma^n -> Sigma^n for the dual code: strip U_i, uniquely
// decode Mult_{s,F_q}(alphas; sn-k) within its radius, re-apply U_i. Outside
// the radius the canonical fallback is the zero word, keeping the map total.
inline Word decode_dual(const Word& received, const DualData& dual,
                        DualDecodeMode mode = DualDecodeMode::bw,
                        std::uint64_t brute_cap = kDefaultEnumerationCap) {
    if (received.n != dual.params.n() || received.s != dual.params.s())
        throw std::invalid_argument("decode_dual: word shape mismatch");
    Word stripped(received.n, received.s);
    for (std::uint32_t i = 0; i < received.n; ++i)
        stripped.set_symbol(i, dual.matrices_inv[i].mul_vec(received.symbol(i)));

    DecodeResult res{DecodeStatus::no_codeword_in_radius, std::nullopt};
    if (mode == DualDecodeMode::bw) {
        res = decode_unique_bw(stripped, dual.dual_params);
    } else {
        BruteDecodeOptions opts;
        opts.strict_radius = true;
        opts.cap = brute_cap;
        res = decode_brute_force(stripped, dual.dual_params, opts);
        if (res.status == DecodeStatus::cap_exceeded)
            throw CapExceeded("decode_dual: brute enumeration exceeds cap");
    }
    if (!res.ok()) return Word(received.n, received.s);
    return gm_encode(*res.message, dual);
}

}  // namespace codeint
