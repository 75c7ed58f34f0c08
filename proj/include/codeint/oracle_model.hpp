#pragma once

#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "codeint/mult_code.hpp"
#include "codeint/rng.hpp"

namespace codeint {

// Bitstring of length <= 63, coordinate i at bit i.
struct BitString {
    std::uint32_t len = 0;
    std::uint64_t bits = 0;

    BitString() = default;
    BitString(std::uint32_t len_, std::uint64_t bits_) : len(len_), bits(bits_) {
        if (len_ > 63) throw std::invalid_argument("BitString: length > 63 unsupported");
        if (len_ < 64 && (bits_ >> len_) != 0) throw std::invalid_argument("BitString: stray high bits");
    }
    static BitString zeros(std::uint32_t len) { return BitString(len, 0); }

    bool get(std::uint32_t i) const { return (bits >> i) & 1; }
    void set(std::uint32_t i, bool v) {
        bits = v ? (bits | (1ull << i)) : (bits & ~(1ull << i));
    }
    std::uint32_t weight() const { return static_cast<std::uint32_t>(__builtin_popcountll(bits)); }

    // Append zero coordinates: x || 0^(n - len).
    BitString padded(std::uint32_t n) const {
        if (n < len) throw std::invalid_argument("BitString: pad target shorter than value");
        return BitString(n, bits);
    }

    std::string to_string() const {
        std::string s(len, '0');
        for (std::uint32_t i = 0; i < len; ++i)
            if (get(i)) s[i] = '1';
        return s;
    }
    static BitString parse(const std::string& s) {
        BitString b(static_cast<std::uint32_t>(s.size()), 0);
        for (std::uint32_t i = 0; i < b.len; ++i) {
            if (s[i] != '0' && s[i] != '1') throw std::invalid_argument("BitString: bad character");
            b.set(i, s[i] == '1');
        }
        return b;
    }
    bool operator==(const BitString& o) const { return len == o.len && bits == o.bits; }
};

// Biased hash table H: [n] x Sigma -> {0,1}. Bits come from a splittable
// counter-mode expansion of the seed:
//   bit(i, sym) = [ u(i, sym) < p ],  u = (splitmix64(seed + (c+1)*GOLDEN) >> 11) * 2^-53
// with counter c = i * |Sigma| + sym. Tables are stored explicitly when
// n*|Sigma| <= 2^20 and derived lazily from the seed otherwise; both paths
// evaluate the same expansion, so they are bit-identical.
class HashFunction {
  public:
    static constexpr std::uint64_t kExplicitLimit = 1ull << 20;

    static bool expand_bit(std::uint64_t seed, std::uint64_t counter, double p) {
        const double u = static_cast<double>(SplitMix64::at(seed, counter) >> 11) * 0x1.0p-53;
        return u < p;
    }

    static HashFunction sample_bias(std::uint32_t n, double p, std::uint64_t sigma_size,
                                    std::uint64_t seed) {
        if (p < 0.0 || p > 1.0) throw std::invalid_argument("sample_bias: p outside [0,1]");
        HashFunction h;
        h.n_ = n;
        h.sigma_size_ = sigma_size;
        h.p_ = p;
        h.seed_ = seed;
        if (static_cast<std::uint64_t>(n) * sigma_size <= kExplicitLimit) {
            h.table_.resize(static_cast<std::size_t>(n) * sigma_size);
            for (std::size_t c = 0; c < h.table_.size(); ++c)
                h.table_[c] = expand_bit(seed, c, p) ? 1 : 0;
            h.explicit_ = true;
        }
        return h;
    }

    static HashFunction from_table(std::uint32_t n, std::uint64_t sigma_size,
                                   std::vector<std::uint8_t> table) {
        if (table.size() != static_cast<std::size_t>(n) * sigma_size)
            throw std::invalid_argument("from_table: size mismatch");
        HashFunction h;
        h.n_ = n;
        h.sigma_size_ = sigma_size;
        h.table_ = std::move(table);
        h.explicit_ = true;
        return h;
    }

    bool bit(std::uint32_t i, std::uint64_t sym_index) const {
        if (i >= n_ || sym_index >= sigma_size_) throw std::out_of_range("HashFunction: index out of range");
        const std::uint64_t c = static_cast<std::uint64_t>(i) * sigma_size_ + sym_index;
        if (explicit_) return table_[static_cast<std::size_t>(c)] != 0;
        return expand_bit(seed_, c, p_);
    }

    std::uint32_t n() const { return n_; }
    std::uint64_t sigma_size() const { return sigma_size_; }
    bool is_explicit() const { return explicit_; }

    // CSV rows (i, symbol-index, bit).
    std::string to_csv() const {
        std::string out = "i,symbol_index,bit\n";
        for (std::uint32_t i = 0; i < n_; ++i)
            for (std::uint64_t sym = 0; sym < sigma_size_; ++sym)
                out += std::to_string(i) + "," + std::to_string(sym) + "," +
                       (bit(i, sym) ? "1\n" : "0\n");
        return out;
    }

  private:
    std::uint32_t n_ = 0;
    std::uint64_t sigma_size_ = 0;
    double p_ = 0.0;
    std::uint64_t seed_ = 0;
    bool explicit_ = false;
    std::vector<std::uint8_t> table_;
};

// Per-column requirements for rejection sampling: force the column to have a
// preimage of 0 and/or of 1. Used by experiments that run the sampler for a
// fixed target string b, where the selected preimage sets must be nonempty.
struct ColumnNeeds {
    bool need_zero = false;
    bool need_one = false;
};

inline HashFunction sample_bias_conditioned(std::uint32_t n, double p, std::uint64_t sigma_size,
                                            std::uint64_t seed, const std::vector<ColumnNeeds>& needs,
                                            std::uint64_t max_tries_per_column = 1ull << 22) {
    if (needs.size() != n) throw std::invalid_argument("sample_bias_conditioned: needs size mismatch");
    std::vector<std::uint8_t> table(static_cast<std::size_t>(n) * sigma_size, 0);
    for (std::uint32_t i = 0; i < n; ++i) {
        SplitMix64 rng(derive_seed(seed, "hash-column", i));
        bool accepted = false;
        for (std::uint64_t attempt = 0; attempt < max_tries_per_column && !accepted; ++attempt) {
            bool any_zero = false, any_one = false;
            for (std::uint64_t sym = 0; sym < sigma_size; ++sym) {
                const bool b = rng.next_bernoulli(p);
                table[static_cast<std::size_t>(i) * sigma_size + sym] = b ? 1 : 0;
                any_zero |= !b;
                any_one |= b;
            }
            accepted = (!needs[i].need_zero || any_zero) && (!needs[i].need_one || any_one);
        }
        if (!accepted) throw std::runtime_error("sample_bias_conditioned: rejection budget exhausted");
    }
    return HashFunction::from_table(n, sigma_size, std::move(table));
}

// v in C and H(i, v_i) = x_i for all i.
inline bool relation_member(const BitString& x, const Word& v, const CodeParams& params,
                            const HashFunction& H, const HermiteSystem& sys) {
    if (x.len != params.n() || v.n != params.n() || v.s != params.s())
        throw std::invalid_argument("relation_member: shape mismatch");
    for (std::uint32_t i = 0; i < params.n(); ++i)
        if (H.bit(i, symbol_index(params.q(), v.symbol(i))) != x.get(i)) return false;
    return is_codeword(v, params, sys);
}

inline bool relation_member(const BitString& x, const Word& v, const CodeParams& params,
                            const HashFunction& H) {
    return relation_member(x, v, params, H, hermite_coefficients(params));
}

// Restriction set E of the oracle O[H, E]. Explicit sets store (x, v) pairs
// with x of length lambda; kind=full accepts every pair.
struct OracleSet {
    enum class Kind { full, explicit_pairs };

    Kind kind = Kind::full;
    std::uint32_t lambda = 0;
    std::set<std::pair<std::uint64_t, std::vector<FieldElem>>> pairs;

    static OracleSet full(std::uint32_t lambda) {
        OracleSet e;
        e.kind = Kind::full;
        e.lambda = lambda;
        return e;
    }
    static OracleSet explicit_set(std::uint32_t lambda) {
        OracleSet e;
        e.kind = Kind::explicit_pairs;
        e.lambda = lambda;
        return e;
    }

    void insert(const BitString& x, const Word& v) {
        if (x.len != lambda) throw std::invalid_argument("OracleSet: x length mismatch");
        pairs.insert({x.bits, v.flat});
    }
    bool contains(const BitString& x, const Word& v) const {
        if (kind == Kind::full) return true;
        return pairs.count({x.bits, v.flat}) > 0;
    }
    // |F| = number of distinct first coordinates.
    std::size_t projection_size() const {
        std::set<std::uint64_t> xs;
        for (const auto& pr : pairs) xs.insert(pr.first);
        return xs.size();
    }
};

// O[H, E](x, v) with x of length lambda <= n, padded by forced zeros.
inline bool oracle_query(const HashFunction& H, const OracleSet& E, const BitString& x,
                         const Word& v, const CodeParams& params, const HermiteSystem& sys) {
    if (x.len > params.n()) throw std::invalid_argument("oracle_query: lambda > n");
    if (!relation_member(x.padded(params.n()), v, params, H, sys)) return false;
    return E.contains(x, v);
}

inline bool oracle_query(const HashFunction& H, const OracleSet& E, const BitString& x,
                         const Word& v, const CodeParams& params) {
    return oracle_query(H, E, x, v, params, hermite_coefficients(params));
}

// One draw from D_{p,b}: coordinate i is 0 with probability 1-p (b_i = 0) or
// p (b_i = 1), otherwise uniform over Sigma \ {0}.
inline Word sample_error(const CodeParams& params, double p, const BitString& b, SplitMix64& rng) {
    if (b.len != params.n()) throw std::invalid_argument("sample_error: b length mismatch");
    const std::uint64_t sigma = params.sigma_size();
    Word e(params.n(), params.s());
    for (std::uint32_t i = 0; i < params.n(); ++i) {
        const double p_zero = b.get(i) ? p : 1.0 - p;
        if (rng.next_bernoulli(p_zero)) continue;
        const std::uint64_t idx = 1 + rng.next_below(sigma - 1);
        e.set_symbol(i, symbol_from_index(params.q(), params.s(), idx));
    }
    return e;
}

inline Word sample_error(const CodeParams& params, double p, const BitString& b, std::uint64_t seed) {
    SplitMix64 rng(seed);
    return sample_error(params, p, b, rng);
}

// P[W > radius] for W a sum of independent Bernoulli(probs[i]), evaluated as
// an exact dynamic program in extended precision.
inline long double poisson_binomial_tail(const std::vector<long double>& probs, std::uint32_t radius) {
    std::vector<long double> dp(probs.size() + 1, 0.0L);
    dp[0] = 1.0L;
    for (std::size_t i = 0; i < probs.size(); ++i)
        for (std::size_t w = i + 1; w-- > 0;) {
            dp[w + 1] += dp[w] * probs[i];
            dp[w] *= 1.0L - probs[i];
        }
    long double head = 0.0L;
    for (std::uint32_t w = 0; w <= radius && w < dp.size(); ++w) head += dp[w];
    return 1.0L - head;
}

enum class MuMode { exact_weight_enumeration, monte_carlo };

struct MuOptions {
    DualDecodeMode decoder = DualDecodeMode::brute;
    std::uint64_t trials = 10000;
    std::uint64_t seed = 0;
};

// mu = Pr_{e <- D_{p,b}}[e not in G], G = {e : forall u in C-perp,
// Dec(u+e) = u}. Both provided decoders are radius-characterized (they
// return the unique codeword within the dual radius and the zero word
// otherwise), so e in G iff hw(e) <= radius and the exact mode reduces to a
// Poisson-binomial tail over coordinate error probabilities. Monte-Carlo
// mode samples errors and decides membership in G exactly, decoding u+e for
// every dual codeword u; a single sampled u would miss the case where the
// zero-word fallback coincides with u = 0.
inline double mu_compute(const CodeParams& params, const DualData& dual, double p,
                         const BitString& b, MuMode mode, const MuOptions& opts = {}) {
    if (b.len != params.n()) throw std::invalid_argument("mu_compute: b length mismatch");
    if (mode == MuMode::exact_weight_enumeration) {
        const std::uint32_t radius = dual_unique_decoding_radius(params);
        std::vector<long double> probs(params.n());
        for (std::uint32_t i = 0; i < params.n(); ++i)
            probs[i] = b.get(i) ? (1.0L - static_cast<long double>(p)) : static_cast<long double>(p);
        return static_cast<double>(poisson_binomial_tail(probs, radius));
    }
    SplitMix64 rng(opts.seed);
    const auto& dp = dual.dual_params;
    const std::uint64_t dual_count = dp.codeword_count_capped(kDefaultEnumerationCap);
    if (dual_count > kDefaultEnumerationCap)
        throw CapExceeded("mu_compute: dual codeword enumeration exceeds cap");
    std::vector<Word> dual_words;
    dual_words.reserve(dual_count);
    for (std::uint64_t idx = 0; idx < dual_count; ++idx)
        dual_words.push_back(gm_encode(message_from_index(dp.field(), dp.k(), idx), dual));
    std::uint64_t failures = 0;
    for (std::uint64_t t = 0; t < opts.trials; ++t) {
        const Word e = sample_error(params, p, b, rng);
        bool good = true;
        for (const Word& u : dual_words) {
            if (decode_dual(word_add(params.field(), u, e), dual, opts.decoder) != u) {
                good = false;
                break;
            }
        }
        failures += !good;
    }
    return static_cast<double>(failures) / static_cast<double>(opts.trials);
}

}  // namespace codeint
