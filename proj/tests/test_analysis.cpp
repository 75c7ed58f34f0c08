#include <catch2/catch_amalgamated.hpp>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "codeint/analysis.hpp"
#include "codeint/rng.hpp"

using namespace codeint;
using BigFloat = boost::multiprecision::cpp_bin_float_50;

namespace {
CodeParams make_params(std::uint64_t q, std::uint32_t s, std::uint32_t k, std::uint32_t n) {
    std::vector<FieldElem> alphas(n);
    for (std::uint32_t i = 0; i < n; ++i) alphas[i] = i;
    return CodeParams(PrimeField(q), s, k, std::move(alphas));
}
}  // namespace

TEST_CASE("list recovery count: degenerate families") {
    CodeParams params = make_params(5, 1, 2, 5);
    const std::uint64_t sigma = params.sigma_size();
    // all lists = Sigma: the whole code
    ListFamily full;
    full.lists.assign(5, {});
    for (auto& l : full.lists)
        for (std::uint64_t sym = 0; sym < sigma; ++sym) l.push_back(sym);
    CHECK(list_recovery_count(params, full) == 25);
    // one empty list: nothing
    ListFamily holed = full;
    holed.lists[2].clear();
    CHECK(list_recovery_count(params, holed) == 0);
    // singletons from one codeword: at least that codeword
    Word c = encode(message_from_index(params.field(), 2, 9), params);
    ListFamily single;
    single.lists.assign(5, {});
    for (std::uint32_t i = 0; i < 5; ++i)
        single.lists[i].push_back(symbol_index(5, c.symbol(i)));
    CHECK(list_recovery_count(params, single) >= 1);
}

TEST_CASE("footprint: base cases, exhaustive value and monotonicity") {
    // constants code over F_3: q^1 = 3 codewords differing in every coordinate
    CodeParams consts = make_params(3, 1, 1, 3);
    CHECK(min_symbol_footprint(consts, 1).value == 3);  // one symbol per coordinate
    CHECK(min_symbol_footprint(consts, 3).value == 9);
    std::uint64_t prev = 0;
    for (std::uint32_t ell = 1; ell <= 3; ++ell) {
        const auto r = min_symbol_footprint(consts, ell);
        CHECK(r.exact);
        CHECK(r.value >= prev);
        prev = r.value;
        // consistency: the achieving family recovers at least ell codewords
        CHECK(list_recovery_count(consts, r.family) >= ell);
    }
    // a richer code
    CodeParams params = make_params(5, 1, 2, 5);
    prev = 0;
    for (std::uint32_t ell = 1; ell <= 4; ++ell) {
        const auto r = min_symbol_footprint(params, ell);
        CHECK(r.value >= prev);
        CHECK(list_recovery_count(params, r.family) >= ell);
        CHECK(r.value >= min_symbol_footprint_lower_bound(params, ell));
        prev = r.value;
    }
    CHECK(min_symbol_footprint_lower_bound(params, 1) == 5);
}

TEST_CASE("gamma map basics") {
    PrimeField f5(5);
    ExpanderSpec spec(f5, 2, 2);
    CHECK(spec.relaxed);  // desk parameters violate 15 <= s+1
    Polynomial zero = Polynomial::zero(f5);
    for (FieldElem y = 0; y < 5; ++y) {
        const auto t = gamma_map(spec, zero, y);
        CHECK(t[0] == y);
        CHECK(t[1] == 0);
        CHECK(t[2] == 0);
    }
    Polynomial f(f5, {1, 2});  // 2X + 1
    const auto t = gamma_map(spec, f, 3);
    CHECK(t[0] == 3);
    CHECK(t[1] == f.eval(3));
    CHECK(t[2] == 2);  // first formal derivative
    CHECK_THROWS_AS(gamma_map(spec, Polynomial(f5, {0, 0, 1}), 0), std::invalid_argument);
}

TEST_CASE("list_gamma: full and empty right sets") {
    PrimeField f3(3);
    ExpanderSpec spec(f3, 2, 1);
    std::vector<std::uint8_t> all(spec.right_vertex_count(), 1);
    CHECK(list_gamma(spec, all).size() == 9);  // q^k
    std::vector<std::uint8_t> none(spec.right_vertex_count(), 0);
    CHECK(list_gamma(spec, none).empty());
}

TEST_CASE("list_gamma counting agrees with list recovery on random families") {
    // n = q so the graph's neighbor set ranges over exactly the evaluation
    // points; Hasse slots convert to formal slots by factorials
    CodeParams params = make_params(5, 2, 2, 5);
    ExpanderSpec spec(params.field(), params.k(), params.s());
    const auto& field = params.field();
    std::vector<FieldElem> fact(params.s(), 1);
    for (std::uint32_t j = 1; j < params.s(); ++j)
        fact[j] = field.mul(fact[j - 1], static_cast<FieldElem>(j));
    SplitMix64 rng(31);
    const std::uint64_t sigma = params.sigma_size();
    for (int t = 0; t < 100; ++t) {
        ListFamily fam;
        fam.lists.assign(5, {});
        for (auto& l : fam.lists) {
            const std::uint64_t size = rng.next_below(6);
            while (l.size() < size) {
                const std::uint64_t sym = rng.next_below(sigma);
                if (std::find(l.begin(), l.end(), sym) == l.end()) l.push_back(sym);
            }
        }
        std::vector<std::uint8_t> mask(spec.right_vertex_count(), 0);
        for (std::uint32_t i = 0; i < 5; ++i)
            for (std::uint64_t sym : fam.lists[i]) {
                const Symbol hasse = symbol_from_index(5, 2, sym);
                std::vector<FieldElem> tuple(3);
                tuple[0] = params.alphas()[i];
                for (std::uint32_t j = 0; j < 2; ++j) tuple[j + 1] = field.mul(fact[j], hasse[j]);
                mask[spec.right_vertex_index(tuple)] = 1;
            }
        REQUIRE(list_recovery_count(params, fam) == list_gamma(spec, mask).size());
    }
}

TEST_CASE("expansion: singletons expand by exactly q") {
    PrimeField f5(5);
    ExpanderSpec spec(f5, 2, 1);
    const auto r = expansion_measure(spec, 1, 0, 0);
    CHECK(r.exhaustive);
    CHECK(r.min_ratio == 5.0);
    CHECK(r.vacuous);  // desk parameters: formula bound does not apply
}

TEST_CASE("expansion formula evaluates in extended precision") {
    PrimeField f5(5);
    ExpanderSpec spec(f5, 3, 1);
    const auto r = expansion_measure(spec, 2, 0, 0);
    // A = q - (k(s+1)/2) (qK)^{1/(s+1)}
    const BigFloat want = BigFloat(5) - (BigFloat(3) * 2 / 2) * sqrt(BigFloat(10));
    CHECK(std::abs(static_cast<double>(r.formula_a) - static_cast<double>(want)) < 1e-15);
    CHECK(!r.preconditions_hold);
    CHECK(r.vacuous);
    // measured ratio is still informative in relaxed mode
    CHECK(r.min_ratio >= 1.0);
}

TEST_CASE("guessing upper bound: frozen value, endpoints, monotonicity") {
    // (15/16)^16 computed from the exact rational 15^16 / 2^64
    const BigFloat ref = BigFloat("6568408355712890625") / BigFloat("18446744073709551616");
    CHECK(std::abs(static_cast<double>(guesser_upper_bound(2, 1)) - static_cast<double>(ref)) <=
          1e-12);
    CHECK(guesser_upper_bound(2, 0) == 1.0L);
    CHECK(guesser_upper_bound(7, 0) == 1.0L);
    long double prev = 2.0L;
    for (std::uint64_t ell = 0; ell <= 8; ++ell) {
        const long double v = guesser_upper_bound(2, ell);
        CHECK(v <= prev);
        if (ell > 0) CHECK(v < prev);
        prev = v;
    }
}

TEST_CASE("empirical guess rate: endpoints and the symbol-counting bound") {
    CodeParams params = make_params(5, 1, 2, 5);
    // p = 0: every strategy succeeds
    const auto r0 = empirical_guess_rate(params, 0.0, 2, GuessStrategy::lexicographic, 500, 1);
    CHECK(r0.frequency == 1.0);
    CHECK(r0.bound == 1.0);
    // ell = 0: success by convention
    CHECK(empirical_guess_rate(params, 0.3, 0, GuessStrategy::lexicographic, 100, 1).frequency ==
          1.0);
    // measured <= bound + 4 sigma, and the bound counts distinct symbols
    for (GuessStrategy strat : {GuessStrategy::lexicographic, GuessStrategy::random_codeword}) {
        const auto r = empirical_guess_rate(params, 0.1, 2, strat, 10000, 77);
        CHECK(r.distinct_symbols >= 5);  // two codewords cover at least n symbols
        const double sigma = std::sqrt(r.bound * (1 - r.bound) / r.trials);
        CHECK(r.frequency <= r.bound + 4 * sigma);
        CHECK(r.frequency >= r.bound - 4 * sigma);  // it is the exact mean
    }
}
