#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "codeint/mult_code.hpp"
#include "codeint/oracle_model.hpp"
#include "codeint/rng.hpp"

namespace codeint {

// Coordinate-wise symbol lists S_1..S_n, symbols as dense indices into Sigma.
struct ListFamily {
    std::vector<std::vector<std::uint64_t>> lists;

    std::uint64_t total_size() const {
        std::uint64_t t = 0;
        for (const auto& l : lists) t += l.size();
        return t;
    }
    double average_size() const {
        return lists.empty() ? 0.0 : static_cast<double>(total_size()) / lists.size();
    }
};

// Exact |{c in C : c_i in S_i for all i}| by message enumeration.
inline std::uint64_t list_recovery_count(const CodeParams& params, const ListFamily& family,
                                         std::uint64_t cap = kDefaultEnumerationCap) {
    if (family.lists.size() != params.n())
        throw std::invalid_argument("list_recovery_count: family size mismatch");
    const std::uint64_t count = params.codeword_count_capped(cap);
    if (count > cap) throw CapExceeded("list_recovery_count: enumeration exceeds cap");
    const std::uint64_t sigma = params.sigma_size();
    std::vector<std::vector<std::uint8_t>> member(params.n(), std::vector<std::uint8_t>(sigma, 0));
    for (std::uint32_t i = 0; i < params.n(); ++i)
        for (std::uint64_t sym : family.lists[i]) {
            if (sym >= sigma) throw std::invalid_argument("list_recovery_count: symbol out of range");
            member[i][sym] = 1;
        }
    std::uint64_t hits = 0;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        const Word w = encode(message_from_index(params.field(), params.k(), idx), params);
        bool ok = true;
        for (std::uint32_t i = 0; i < params.n() && ok; ++i)
            ok = member[i][symbol_index(params.q(), w.symbol(i))];
        hits += ok;
    }
    return hits;
}

struct FootprintResult {
    std::uint64_t value = 0;
    bool exact = false;
    // the achieving lists (exact mode only)
    ListFamily family;
};

namespace detail {

struct FootprintSearch {
    const std::vector<std::vector<std::uint64_t>>& words;  // symbol indices per codeword
    std::uint32_t n;
    std::uint32_t ell;
    std::uint64_t budget;
    std::uint64_t nodes = 0;
    std::uint64_t best = UINT64_MAX;
    std::vector<std::uint64_t> best_set;
    std::vector<std::vector<std::uint32_t>> counts;  // per coordinate, per symbol
    std::vector<std::uint64_t> chosen;
    std::uint64_t footprint = 0;

    void run(std::size_t start, std::uint32_t depth) {
        if (++nodes > budget) throw CapExceeded("min_symbol_footprint: search budget exceeded");
        if (depth == ell) {
            if (footprint < best) {
                best = footprint;
                best_set = chosen;
            }
            return;
        }
        if (footprint >= best) return;  // additions are monotone
        const std::size_t remaining = ell - depth;
        for (std::size_t c = start; c + remaining <= words.size(); ++c) {
            std::uint32_t added = 0;
            for (std::uint32_t i = 0; i < n; ++i)
                added += counts[i][words[c][i]]++ == 0;
            footprint += added;
            chosen.push_back(c);
            run(c + 1, depth + 1);
            chosen.pop_back();
            footprint -= added;
            for (std::uint32_t i = 0; i < n; ++i) --counts[i][words[c][i]];
        }
    }
};

}  // namespace detail

// Exact s(ell): the minimum, over ell distinct codewords, of the total size
// of the coordinate-wise symbol lists they span. Exhaustive branch-and-bound
// over codeword subsets, restricted to desk sizes.
inline FootprintResult min_symbol_footprint(const CodeParams& params, std::uint32_t ell,
                                            std::uint64_t codeword_cap = 1ull << 12,
                                            std::uint64_t node_budget = 1ull << 26) {
    const std::uint64_t count = params.codeword_count_capped(codeword_cap);
    if (count > codeword_cap) throw CapExceeded("min_symbol_footprint: code too large for exact mode");
    if (ell > count) throw std::invalid_argument("min_symbol_footprint: ell exceeds |C|");
    FootprintResult res;
    res.exact = true;
    if (ell == 0) return res;

    const std::uint64_t sigma = params.sigma_size();
    std::vector<std::vector<std::uint64_t>> words(count, std::vector<std::uint64_t>(params.n()));
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        const Word w = encode(message_from_index(params.field(), params.k(), idx), params);
        for (std::uint32_t i = 0; i < params.n(); ++i)
            words[idx][i] = symbol_index(params.q(), w.symbol(i));
    }
    detail::FootprintSearch search{words, params.n(), ell, node_budget, 0, UINT64_MAX,
                                   {},    {},          {},  0};
    search.counts.assign(params.n(), std::vector<std::uint32_t>(sigma, 0));
    search.run(0, 0);
    res.value = search.best;
    res.family.lists.assign(params.n(), {});
    for (std::uint32_t i = 0; i < params.n(); ++i) {
        std::vector<std::uint8_t> seen(sigma, 0);
        for (std::uint64_t c : search.best_set) {
            const std::uint64_t sym = words[c][i];
            if (!seen[sym]) {
                seen[sym] = 1;
                res.family.lists[i].push_back(sym);
            }
        }
    }
    return res;
}

// Certified lower bound on s(ell): any ceil(k/s) coordinates determine a
// codeword (a nonzero degree < k polynomial cannot vanish to order s at that
// many points), so the product of the m smallest list sizes is at least ell.
// Minimizing the total size under that counting constraint bounds s(ell)
// from below.
inline std::uint64_t min_symbol_footprint_lower_bound(const CodeParams& params, std::uint32_t ell) {
    if (ell == 0) return 0;
    const std::uint32_t n = params.n();
    const std::uint32_t m = (params.k() + params.s() - 1) / params.s();
    // search ascending size tuples t_1 <= ... <= t_m with product >= ell
    std::uint64_t best = UINT64_MAX;
    std::vector<std::uint64_t> t(m, 1);
    const std::uint64_t max_size = std::min<std::uint64_t>(ell, params.sigma_size());
    auto rec = [&](auto&& self, std::uint32_t pos, std::uint64_t prod, std::uint64_t sum,
                   std::uint64_t lo) -> void {
        if (pos == m) {
            if (prod >= ell) {
                const std::uint64_t total = sum + std::uint64_t(n - m) * t[m - 1];
                best = std::min(best, total);
            }
            return;
        }
        for (std::uint64_t v = lo; v <= max_size; ++v) {
            t[pos] = v;
            self(self, pos + 1, prod * v, sum + v, v);
        }
    };
    rec(rec, 0, 1, 0, 1);
    return best == UINT64_MAX ? std::uint64_t(n) : best;
}

// Derivative graph Gamma: F_q^k x F_q -> F_q^{s+1},
// Gamma(f, y) = (y, f^{[0]}(y), ..., f^{[s-1]}(y)) with formal derivatives.
struct ExpanderSpec {
    PrimeField field;
    std::uint32_t k;
    std::uint32_t s;
    bool relaxed;  // expansion-bound preconditions 15 <= s+1 <= k <= char violated

    ExpanderSpec(PrimeField field_, std::uint32_t k_, std::uint32_t s_, bool allow_relaxed = true)
        : field(field_), k(k_), s(s_), relaxed(false) {
        if (k < 1 || s < 1) throw std::invalid_argument("ExpanderSpec: need k, s >= 1");
        relaxed = !preconditions_hold();
        if (relaxed && !allow_relaxed)
            throw std::invalid_argument("ExpanderSpec: expansion-bound preconditions violated");
    }

    bool preconditions_hold() const {
        return 15 <= s + 1 && s + 1 <= k && k <= field.modulus();
    }
    std::uint64_t right_vertex_count() const {
        std::uint64_t v = 1;
        for (std::uint32_t t = 0; t < s + 1; ++t) v *= field.modulus();
        return v;
    }
    std::uint64_t right_vertex_index(const std::vector<FieldElem>& tuple) const {
        std::uint64_t idx = 0;
        for (std::size_t j = tuple.size(); j-- > 0;) idx = idx * field.modulus() + tuple[j];
        return idx;
    }
};

inline std::vector<FieldElem> gamma_map(const ExpanderSpec& spec, const Polynomial& f, FieldElem y) {
    if (f.degree() >= static_cast<int>(spec.k))
        throw std::invalid_argument("gamma_map: degree too high");
    std::vector<FieldElem> out(spec.s + 1, 0);
    out[0] = y;
    for (std::uint32_t j = 0; j < spec.s; ++j) out[j + 1] = formal_derivative(f, j).eval(y);
    return out;
}

// Exact LIST_Gamma(T) = {f : Gamma(f) subseteq T} by enumeration.
inline std::vector<Polynomial> list_gamma(const ExpanderSpec& spec,
                                          const std::vector<std::uint8_t>& right_mask,
                                          std::uint64_t cap = kDefaultEnumerationCap) {
    if (right_mask.size() != spec.right_vertex_count())
        throw std::invalid_argument("list_gamma: mask size mismatch");
    const std::uint64_t count = CodeParams::pow_capped(spec.field.modulus(), spec.k, cap);
    if (count > cap) throw CapExceeded("list_gamma: enumeration exceeds cap");
    const std::uint64_t q = spec.field.modulus();
    std::vector<Polynomial> out;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        Polynomial f = message_from_index(spec.field, spec.k, idx);
        bool inside = true;
        for (std::uint64_t y = 0; y < q && inside; ++y)
            inside = right_mask[spec.right_vertex_index(gamma_map(spec, f, static_cast<FieldElem>(y)))];
        if (inside) out.push_back(std::move(f));
    }
    return out;
}

struct ExpansionResult {
    double min_ratio = 0.0;      // min |Gamma(X)| / |X| over measured sets
    long double formula_a = 0.0;  // q - (k(s+1)/2) (qK)^{1/(s+1)}
    bool preconditions_hold = false;
    bool vacuous = false;  // formula <= 0 or preconditions violated
    bool exhaustive = false;
};

// Measures the worst expansion ratio over left-sets of size <= K, either
// exhaustively (tiny instances) or by seeded sampling, and evaluates the
// expansion formula in extended precision.
inline ExpansionResult expansion_measure(const ExpanderSpec& spec, std::uint32_t K,
                                         std::uint64_t trials, std::uint64_t seed,
                                         std::uint64_t exhaustive_budget = 1ull << 20) {
    const std::uint64_t q = spec.field.modulus();
    const std::uint64_t left = CodeParams::pow_capped(q, spec.k, 1ull << 40);
    if (K == 0) throw std::invalid_argument("expansion_measure: K must be positive");

    ExpansionResult res;
    res.preconditions_hold = spec.preconditions_hold();
    res.formula_a = static_cast<long double>(q) -
                    (static_cast<long double>(spec.k) * (spec.s + 1) / 2.0L) *
                        std::pow(static_cast<long double>(q) * K, 1.0L / (spec.s + 1));
    res.vacuous = !res.preconditions_hold || res.formula_a <= 0.0L;

    const std::uint64_t right = spec.right_vertex_count();
    std::vector<std::uint64_t> neighbor_scratch;
    std::vector<std::uint8_t> mark(right, 0);
    auto ratio_of = [&](const std::vector<std::uint64_t>& xs) {
        neighbor_scratch.clear();
        for (std::uint64_t fidx : xs) {
            Polynomial f = message_from_index(spec.field, spec.k, fidx);
            for (std::uint64_t y = 0; y < q; ++y) {
                const std::uint64_t r =
                    spec.right_vertex_index(gamma_map(spec, f, static_cast<FieldElem>(y)));
                if (!mark[r]) {
                    mark[r] = 1;
                    neighbor_scratch.push_back(r);
                }
            }
        }
        const double ratio = static_cast<double>(neighbor_scratch.size()) / xs.size();
        for (std::uint64_t r : neighbor_scratch) mark[r] = 0;
        return ratio;
    };

    double best = static_cast<double>(right);
    // number of subsets of size <= K
    long double subsets = 0.0L, choose = 1.0L;
    for (std::uint32_t j = 1; j <= K && j <= left; ++j) {
        choose = choose * static_cast<long double>(left - j + 1) / j;
        subsets += choose;
    }
    if (subsets <= static_cast<long double>(exhaustive_budget)) {
        res.exhaustive = true;
        std::vector<std::uint64_t> xs;
        auto rec = [&](auto&& self, std::uint64_t start, std::uint32_t remaining) -> void {
            if (!xs.empty()) best = std::min(best, ratio_of(xs));
            if (remaining == 0) return;
            for (std::uint64_t c = start; c < left; ++c) {
                xs.push_back(c);
                self(self, c + 1, remaining - 1);
                xs.pop_back();
            }
        };
        rec(rec, 0, K);
    } else {
        SplitMix64 rng(seed);
        for (std::uint64_t t = 0; t < trials; ++t) {
            const std::uint32_t size = 1 + static_cast<std::uint32_t>(rng.next_below(K));
            std::vector<std::uint64_t> xs;
            while (xs.size() < size) {
                const std::uint64_t c = rng.next_below(left);
                if (std::find(xs.begin(), xs.end(), c) == xs.end()) xs.push_back(c);
            }
            best = std::min(best, ratio_of(xs));
        }
    }
    res.min_ratio = best;
    return res;
}

// (1 - 1/lambda^4)^{lambda^5 ell / 2} in extended precision.
inline long double guesser_upper_bound(std::uint32_t lambda, std::uint64_t ell) {
    if (lambda == 0) throw std::invalid_argument("guesser_upper_bound: lambda must be positive");
    if (ell == 0) return 1.0L;
    const long double l = static_cast<long double>(lambda);
    const long double base = 1.0L - 1.0L / (l * l * l * l);
    const long double exponent = l * l * l * l * l * static_cast<long double>(ell) / 2.0L;
    return std::pow(base, exponent);
}

enum class GuessStrategy { lexicographic, random_codeword };

struct GuessRateResult {
    double frequency = 0.0;
    double bound = 0.0;  // (1-p)^{distinct symbols}, the symbol-counting bound
    std::uint64_t distinct_symbols = 0;
    std::uint64_t trials = 0;
};

// Monte-Carlo frequency with which a fixed no-query strategy emits ell
// distinct relation members for x = 0^lambda when H <- Bias_p. Success
// requires every symbol the emitted codewords expose to hash to 0, so the
// exact per-run probability is (1-p)^{sum_i |S_i|}.
inline GuessRateResult empirical_guess_rate(const CodeParams& params, double p, std::uint32_t ell,
                                            GuessStrategy strategy, std::uint64_t trials,
                                            std::uint64_t seed,
                                            std::uint64_t cap = kDefaultEnumerationCap) {
    const std::uint64_t count = params.codeword_count_capped(cap);
    if (count > cap) throw CapExceeded("empirical_guess_rate: enumeration exceeds cap");
    if (ell > count) throw std::invalid_argument("empirical_guess_rate: ell exceeds |C|");

    SplitMix64 pick_rng(derive_seed(seed, "guess-pick"));
    std::vector<std::uint64_t> chosen;
    if (strategy == GuessStrategy::lexicographic) {
        for (std::uint64_t idx = 0; idx < ell; ++idx) chosen.push_back(idx);
    } else {
        while (chosen.size() < ell) {
            const std::uint64_t c = pick_rng.next_below(count);
            if (std::find(chosen.begin(), chosen.end(), c) == chosen.end()) chosen.push_back(c);
        }
    }

    // distinct (coordinate, symbol) pairs the emitted codewords expose
    std::vector<std::vector<std::uint8_t>> seen(params.n(),
                                                std::vector<std::uint8_t>(params.sigma_size(), 0));
    std::uint64_t distinct = 0;
    for (std::uint64_t idx : chosen) {
        const Word w = encode(message_from_index(params.field(), params.k(), idx), params);
        for (std::uint32_t i = 0; i < params.n(); ++i) {
            const std::uint64_t sym = symbol_index(params.q(), w.symbol(i));
            if (!seen[i][sym]) {
                seen[i][sym] = 1;
                ++distinct;
            }
        }
    }

    GuessRateResult res;
    res.distinct_symbols = distinct;
    res.trials = trials;
    res.bound = static_cast<double>(
        std::pow(1.0L - static_cast<long double>(p), static_cast<long double>(distinct)));
    SplitMix64 rng(derive_seed(seed, "guess-trials"));
    std::uint64_t hits = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        bool ok = true;
        for (std::uint64_t d = 0; d < distinct; ++d) ok &= !rng.next_bernoulli(p);
        hits += ok;
    }
    res.frequency = trials == 0 ? (ell == 0 ? 1.0 : 0.0)
                                : static_cast<double>(hits) / static_cast<double>(trials);
    if (ell == 0) res.frequency = 1.0;
    return res;
}

}  // namespace codeint
