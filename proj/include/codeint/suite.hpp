#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <string>
#include <vector>

#include "codeint/analysis.hpp"
#include "codeint/experiment.hpp"
#include "codeint/fourier.hpp"
#include "codeint/oracle_model.hpp"
#include "codeint/sampler.hpp"
#include "codeint/verifier.hpp"

namespace codeint {
namespace suite {

// High-precision reference for (15/16)^16, the guessing bound at
// lambda = 2, ell = 1 (exact rational 15^16 / 2^64).
inline constexpr double kGuessBoundLambda2Ell1 = 0.3560741304517928;

struct SuiteState {
    ResolvedConfig rc;
    std::vector<std::pair<std::string, std::uint64_t>> seeds;

    std::uint64_t master_seed() const { return rc.cfg.seed.value_or(0); }
    std::uint64_t trials_or(std::uint64_t def) const { return rc.cfg.trials.value_or(def); }
    std::string preset_name() const { return rc.cfg.preset.empty() ? "explicit" : rc.cfg.preset; }

    std::uint64_t sub_seed(const std::string& tag, std::uint64_t index = 0) {
        const std::uint64_t s = derive_seed(master_seed(), tag, index);
        seeds.emplace_back(tag + "[" + std::to_string(index) + "]", s);
        return s;
    }

    CheckResult check(const std::string& id, bool pass) const {
        CheckResult c;
        c.check_id = id;
        c.preset = preset_name();
        c.pass = pass;
        c.seed = master_seed();
        return c;
    }
};

inline Polynomial random_polynomial(const PrimeField& field, std::uint32_t deg_bound,
                                    SplitMix64& rng) {
    std::vector<FieldElem> coeffs(deg_bound, 0);
    for (auto& c : coeffs) c = static_cast<FieldElem>(rng.next_below(field.modulus()));
    return Polynomial(field, std::move(coeffs));
}

inline Word random_symbol_corruption(const Word& w, std::uint32_t weight, const CodeParams& params,
                                     SplitMix64& rng) {
    Word out = w;
    std::vector<std::uint32_t> positions;
    while (positions.size() < weight) {
        const std::uint32_t i = static_cast<std::uint32_t>(rng.next_below(params.n()));
        if (std::find(positions.begin(), positions.end(), i) == positions.end())
            positions.push_back(i);
    }
    const std::uint64_t sigma = params.sigma_size();
    for (std::uint32_t i : positions) {
        const std::uint64_t old_idx = symbol_index(params.q(), out.symbol(i));
        const std::uint64_t delta = 1 + rng.next_below(sigma - 1);
        out.set_symbol(i, symbol_from_index(params.q(), params.s(),
                                            detail::index_add(old_idx, delta, static_cast<std::uint32_t>(params.q()),
                                                              params.s())));
    }
    return out;
}

// --- duality ---

inline void run_duality(SuiteState& st, std::vector<CheckResult>& out) {
    const CodeParams& params = st.rc.params;
    const auto& field = params.field();
    const std::uint32_t sn = params.s() * params.n();
    DualData dual = dual_matrices(params);

    MatFp gen = generator_matrix(params);
    MatFp dual_gen = dual_generator_matrix(dual);
    MatFp complement = gen.null_space();
    {
        CheckResult c = st.check("duality-span-equals-complement",
                                 gen.rank() == params.k() && dual_gen.rank() == sn - params.k() &&
                                     MatFp::same_row_space(complement, dual_gen));
        c.measured = static_cast<double>(dual_gen.rank());
        c.bound = static_cast<double>(sn - params.k());
        c.tolerance = 0.0;
        out.push_back(std::move(c));
    }
    {
        CheckResult c = st.check("duality-dimension-product",
                                 gen.rank() + dual_gen.rank() == sn);
        c.measured = static_cast<double>(gen.rank() + dual_gen.rank());
        c.bound = static_cast<double>(sn);
        c.tolerance = 0.0;
        out.push_back(std::move(c));
    }
    {
        // det(U_i) = a_{i,s-1}^s * (-1)^{s(s-1)/2}, and a_{i,s-1} != 0
        std::uint32_t mismatches = 0;
        const std::uint32_t s = params.s();
        for (std::uint32_t i = 0; i < params.n(); ++i) {
            const FieldElem top = dual.hermite.top_coeffs[i][s - 1];
            if (top == 0) {
                ++mismatches;
                continue;
            }
            FieldElem expected = field.pow(top, s);
            if ((static_cast<std::uint64_t>(s) * (s - 1) / 2) % 2 == 1)
                expected = field.neg(expected);
            mismatches += dual.matrices[i].determinant() != expected;
        }
        CheckResult c = st.check("duality-det-identity", mismatches == 0);
        c.measured = static_cast<double>(mismatches);
        c.bound = 0.0;
        c.tolerance = 0.0;
        out.push_back(std::move(c));
    }
    const std::uint64_t trials = st.trials_or(500);
    if (trials > 0) {
        SplitMix64 rng(st.sub_seed("duality-pairs"));
        std::uint64_t nonzero = 0;
        for (std::uint64_t t = 0; t < trials; ++t) {
            const Polynomial f = random_polynomial(field, params.k(), rng);
            const Polynomial g = random_polynomial(field, sn - params.k(), rng);
            nonzero += sigma_inner_product(field, encode(f, params), gm_encode(g, dual)) != 0;
        }
        CheckResult c = st.check("duality-random-inner-products", nonzero == 0);
        c.measured = static_cast<double>(nonzero);
        c.bound = 0.0;
        c.tolerance = 0.0;
        c.trials = trials;
        out.push_back(std::move(c));
    }
}

// --- distance ---

inline void run_distance(SuiteState& st, std::vector<CheckResult>& out) {
    const CodeParams& params = st.rc.params;
    const std::uint64_t cap = st.rc.cfg.enumeration_cap;
    {
        CheckResult c = st.check("distance-dual-lower-bound", true);
        c.bound = static_cast<double>(dual_design_distance(params));
        c.tolerance = 0.0;
        try {
            DualData dual = dual_matrices(params);
            const std::uint32_t w = min_weight_brute_dual(dual, cap);
            c.measured = static_cast<double>(w);
            c.pass = w >= dual_design_distance(params);
        } catch (const CapExceeded&) {
            c.details["skipped"] = "dual enumeration exceeds cap";
        }
        out.push_back(std::move(c));
    }
    {
        CheckResult c = st.check("distance-primal-lower-bound", true);
        c.bound = static_cast<double>(params.design_distance());
        c.tolerance = 0.0;
        try {
            const std::uint32_t w = min_weight_brute(params, cap);
            c.measured = static_cast<double>(w);
            c.pass = w >= params.design_distance();
        } catch (const CapExceeded&) {
            c.details["skipped"] = "primal enumeration exceeds cap";
        }
        out.push_back(std::move(c));
    }
}

// --- decoder agreement ---

inline void run_decoder_agreement(SuiteState& st, std::vector<CheckResult>& out) {
    const CodeParams& params = st.rc.params;
    const std::uint32_t radius = params.unique_decoding_radius();
    {
        // zero-error structural case over the monomial basis
        std::uint32_t bad = 0;
        for (std::uint32_t j = 0; j < params.k(); ++j) {
            std::vector<FieldElem> coeffs(j + 1, 0);
            coeffs[j] = 1;
            const Polynomial f(params.field(), coeffs);
            auto res = decode_unique_bw(encode(f, params), params);
            bad += !(res.ok() && *res.message == f);
        }
        CheckResult c = st.check("decoder-exact-roundtrip", bad == 0);
        c.measured = static_cast<double>(bad);
        c.bound = 0.0;
        c.tolerance = 0.0;
        out.push_back(std::move(c));
    }
    const std::uint64_t trials = st.trials_or(200);
    if (trials == 0) return;
    SplitMix64 rng(st.sub_seed("decoder-agreement"));
    constexpr std::uint32_t kPatternsPerWeight = 5;
    std::uint64_t total = 0, agree = 0;
    BruteDecodeOptions brute_opts;
    brute_opts.cap = st.rc.cfg.enumeration_cap;
    for (std::uint64_t t = 0; t < trials; ++t) {
        const Polynomial msg = random_polynomial(params.field(), params.k(), rng);
        const Word c = encode(msg, params);
        for (std::uint32_t w = 0; w <= radius; ++w) {
            for (std::uint32_t pat = 0; pat < kPatternsPerWeight; ++pat) {
                const Word noisy = random_symbol_corruption(c, w, params, rng);
                const auto bw = decode_unique_bw(noisy, params);
                const auto bf = decode_brute_force(noisy, params, brute_opts);
                ++total;
                agree += bw.ok() && bf.ok() && *bw.message == *bf.message && *bw.message == msg;
            }
        }
    }
    CheckResult c = st.check("decoder-agreement", agree == total);
    c.measured = static_cast<double>(agree);
    c.bound = static_cast<double>(total);
    c.tolerance = 0.0;
    c.trials = trials;
    out.push_back(std::move(c));
}

// --- fourier ---

inline void run_fourier(SuiteState& st, std::vector<CheckResult>& out) {
    const CodeParams& params = st.rc.params;
    const std::uint32_t q = static_cast<std::uint32_t>(params.q());
    const std::uint32_t slots = params.s() * params.n();
    const std::uint64_t dim = params.word_count_capped(amplitude_cap());
    if (dim > amplitude_cap()) throw CapExceeded("fourier: |Sigma|^n exceeds amplitude cap");

    {
        // delta function transforms to the constant 1/|Sigma|^{n/2}
        std::vector<Amp> delta(dim, Amp(0.0, 0.0));
        delta[0] = Amp(1.0, 0.0);
        auto dhat = fourier_transform(delta, q, slots);
        const double want = 1.0 / std::sqrt(static_cast<double>(dim));
        double err = 0.0;
        for (const Amp& a : dhat) err = std::max(err, std::abs(a - Amp(want, 0.0)));
        CheckResult c = st.check("fourier-delta-flat", err <= 1e-12);
        c.measured = err;
        c.bound = 0.0;
        c.tolerance = 1e-12;
        out.push_back(std::move(c));
    }
    {
        DualData dual = dual_matrices(params);
        const double off = off_dual_support_mass(params, dual, st.rc.cfg.enumeration_cap);
        CheckResult c = st.check("fourier-dual-support", off <= 1e-18);
        c.measured = off;
        c.bound = 0.0;
        c.tolerance = 1e-18;
        out.push_back(std::move(c));
    }
    {
        // exact bias claim over all hash columns, p in {0, 1/4, 1/2, 1}
        double worst = 0.0;
        bool feasible = true;
        try {
            for (double p : {0.0, 0.25, 0.5, 1.0}) {
                const auto rep = bias_claim_enumeration(q, params.s(), p);
                worst = std::max({worst, rep.zero_dev[0], rep.zero_dev[1],
                                  rep.nonzero_pairwise_dev[0], rep.nonzero_pairwise_dev[1]});
            }
        } catch (const CapExceeded&) {
            feasible = false;
        }
        CheckResult c = st.check("fourier-bias-claim", !feasible || worst <= 1e-12);
        if (feasible) c.measured = worst;
        else c.details["skipped"] = "2^|Sigma| column enumeration exceeds cap";
        c.bound = 0.0;
        c.tolerance = 1e-12;
        out.push_back(std::move(c));
    }
    const std::uint64_t trials = st.trials_or(50);
    if (trials == 0) return;
    SplitMix64 rng(st.sub_seed("fourier-pairs"));
    double worst_identity = 0.0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        std::vector<Amp> f(dim), g(dim);
        for (auto& v : f) v = Amp(rng.next_double() - 0.5, rng.next_double() - 0.5);
        for (auto& v : g) v = Amp(rng.next_double() - 0.5, rng.next_double() - 0.5);
        worst_identity = std::max(worst_identity, fourier_checks(f, g, q, slots).max_err());
    }
    {
        CheckResult c = st.check("fourier-identities", worst_identity <= 1e-9);
        c.measured = worst_identity;
        c.bound = 0.0;
        c.tolerance = 1e-9;
        c.trials = trials;
        out.push_back(std::move(c));
    }
    {
        SplitMix64 prng(st.sub_seed("fourier-pointwise"));
        const std::uint64_t sigma = params.sigma_size();
        double worst = 0.0;
        for (std::uint64_t t = 0; t < std::min<std::uint64_t>(trials, 10); ++t) {
            std::vector<std::vector<Amp>> factors(params.n(), std::vector<Amp>(sigma));
            for (auto& fac : factors)
                for (auto& v : fac) v = Amp(prng.next_double() - 0.5, prng.next_double() - 0.5);
            worst = std::max(worst, pointwise_transform_err(factors, q, params.s()));
        }
        CheckResult c = st.check("fourier-pointwise", worst <= 1e-9);
        c.measured = worst;
        c.bound = 0.0;
        c.tolerance = 1e-9;
        c.trials = std::min<std::uint64_t>(trials, 10);
        out.push_back(std::move(c));
    }
}

// --- mu ---

inline void run_mu(SuiteState& st, std::vector<CheckResult>& out) {
    const CodeParams& params = st.rc.params;
    const double p = st.rc.bias;
    DualData dual = dual_matrices(params);
    {
        // expected error weight under D_{p,b}: hw(b)(1-p) + (n-hw)p, within
        // lambda + (n-lambda)p for hw(b) <= lambda and p <= 1/2
        const std::uint32_t lambda = std::min(st.rc.lambda, params.n());
        const double expect = lambda * (1.0 - p) + (params.n() - lambda) * p;
        const double bound = lambda + (params.n() - lambda) * p;
        CheckResult c = st.check("mu-expected-weight", p > 0.5 || expect <= bound + 1e-12);
        c.measured = expect;
        c.bound = bound;
        c.tolerance = 1e-12;
        out.push_back(std::move(c));
    }
    const std::uint64_t trials = st.trials_or(10000);
    if (trials == 0) return;
    std::vector<BitString> targets = {BitString::zeros(params.n())};
    BitString one = BitString::zeros(params.n());
    one.set(0, true);
    targets.push_back(one);
    std::uint32_t idx = 0;
    for (const BitString& b : targets) {
        const double exact = mu_compute(params, dual, p, b, MuMode::exact_weight_enumeration);
        MuOptions opts;
        opts.decoder = DualDecodeMode::bw;
        opts.trials = trials;
        opts.seed = st.sub_seed("mu-mc", idx);
        const double mc = mu_compute(params, dual, p, b, MuMode::monte_carlo, opts);
        const double sigma = std::sqrt(std::max(exact * (1.0 - exact), 0.0) / trials);
        CheckResult c = st.check("mu-exact-vs-mc-hw" + std::to_string(b.weight()),
                                 std::abs(mc - exact) <= 4.0 * sigma + 1e-15);
        c.measured = mc;
        c.bound = exact;
        c.tolerance = 4.0 * sigma;
        c.trials = trials;
        out.push_back(std::move(c));
        ++idx;
    }
}

// --- end-to-end sampler runs (pipeline bound, success bound, mean success) ---

inline std::vector<ColumnNeeds> needs_for_target(const BitString& b) {
    std::vector<ColumnNeeds> needs(b.len);
    for (std::uint32_t i = 0; i < b.len; ++i)
        needs[i] = b.get(i) ? ColumnNeeds{false, true} : ColumnNeeds{true, false};
    return needs;
}

inline void run_end_to_end(SuiteState& st, std::vector<CheckResult>& out) {
    const CodeParams& params = st.rc.params;
    const double p = st.rc.bias;
    PipelineContext ctx(params, DualDecodeMode::bw, st.rc.cfg.enumeration_cap);

    {
        // deterministic zero-bias case: every codeword hashes to 0^n
        HashFunction h0 = HashFunction::sample_bias(params.n(), 0.0, ctx.sigma, 0);
        AdviceState adv = prepare_advice(h0, ctx);
        PipelineReport rep;
        const double succ = success_probability(adv, BitString::zeros(params.n()), h0, ctx, &rep);
        CheckResult c = st.check("yz-zero-bias-exact",
                                 rep.euclid_gap <= 1e-9 && std::abs(succ - 1.0) <= 1e-9);
        c.measured = succ;
        c.bound = 1.0;
        c.tolerance = 1e-9;
        out.push_back(std::move(c));
    }

    const std::uint64_t runs = st.trials_or(20);
    if (runs == 0) return;

    std::vector<BitString> b_list = {BitString::zeros(params.n())};
    for (std::uint32_t i = 0; i < params.n(); ++i) {
        BitString b = BitString::zeros(params.n());
        b.set(i, true);
        b_list.push_back(b);
    }

    double worst_gap_excess = -1.0;
    double worst_success_margin = 1.0;
    double mean_success = 0.0;
    Json run_details = Json::array();
    for (std::uint64_t r = 0; r < runs; ++r) {
        const BitString b = b_list[r % b_list.size()];
        HashFunction H = sample_bias_conditioned(params.n(), p, ctx.sigma,
                                                 st.sub_seed("yz-hash", r), needs_for_target(b));
        AdviceState adv = prepare_advice(H, ctx);
        PipelineReport rep;
        const double succ = success_probability(adv, b, H, ctx, &rep);
        const double mu = mu_compute(params, ctx.dual, p, b, MuMode::exact_weight_enumeration);
        const double succ_bound = 1.0 - 8.0 * std::pow(mu, 0.25);
        worst_gap_excess = std::max(worst_gap_excess, rep.euclid_gap - rep.gap_bound());
        worst_success_margin = std::min(worst_success_margin, succ - succ_bound);
        mean_success += succ;
        Json d;
        d["b"] = b.to_string();
        d["epsilon"] = rep.epsilon;
        d["delta"] = rep.delta;
        d["euclid_gap"] = rep.euclid_gap;
        d["gap_bound"] = rep.gap_bound();
        d["success"] = succ;
        d["mu"] = mu;
        d["success_bound"] = succ_bound;
        run_details.push_back(std::move(d));
    }
    mean_success /= static_cast<double>(runs);
    {
        CheckResult c = st.check("yz-gap-bound", worst_gap_excess <= 1e-9);
        c.measured = worst_gap_excess;
        c.bound = 0.0;
        c.tolerance = 1e-9;
        c.trials = runs;
        c.details["runs"] = run_details;
        out.push_back(std::move(c));
    }
    {
        CheckResult c = st.check("yz-success-bound", worst_success_margin >= -1e-12);
        c.measured = worst_success_margin;
        c.bound = 0.0;
        c.tolerance = 1e-12;
        c.trials = runs;
        out.push_back(std::move(c));
    }
    {
        CheckResult c = st.check("yz-mean-success", mean_success >= 0.9);
        c.measured = mean_success;
        c.bound = 0.9;
        c.tolerance = 0.0;
        c.trials = runs;
        out.push_back(std::move(c));
    }
}

// --- verifier & hybrid ---

inline OracleSet random_no_instance(const PipelineContext& ctx, std::uint32_t lambda,
                                    std::uint64_t f_size, SplitMix64& rng) {
    OracleSet e = OracleSet::explicit_set(lambda);
    std::vector<std::uint64_t> xs;
    while (xs.size() < f_size) {
        const std::uint64_t x = rng.next_below(1ull << lambda);
        if (std::find(xs.begin(), xs.end(), x) == xs.end()) xs.push_back(x);
    }
    for (std::uint64_t x : xs) {
        // coin-flip relation candidates (codewords) plus a few non-codewords
        for (std::uint64_t wi : ctx.code_words)
            if (rng.next_bernoulli(0.5))
                e.insert(BitString(lambda, x), word_from_index(ctx.params.q(), ctx.n, ctx.s, wi));
        for (int extra = 0; extra < 5; ++extra)
            e.insert(BitString(lambda, x),
                     word_from_index(ctx.params.q(), ctx.n, ctx.s, rng.next_below(ctx.dim)));
    }
    return e;
}

inline void run_verifier(SuiteState& st, std::vector<CheckResult>& out) {
    const CodeParams& params = st.rc.params;
    const double p = st.rc.bias;
    const std::uint32_t lambda = st.rc.lambda;
    if (lambda > params.n()) throw std::invalid_argument("verifier: lambda > n");
    PipelineContext ctx(params, DualDecodeMode::bw, st.rc.cfg.enumeration_cap);

    std::vector<ColumnNeeds> needs(params.n());
    for (std::uint32_t i = 0; i < params.n(); ++i)
        needs[i] = i < lambda ? ColumnNeeds{true, true} : ColumnNeeds{true, false};
    HashFunction H =
        sample_bias_conditioned(params.n(), p, ctx.sigma, st.sub_seed("verifier-hash"), needs);
    AdviceState adv = prepare_advice(H, ctx);
    VerifierRun run(adv, H, ctx, lambda);

    const VerifierDecision yes_decision = verifier_decision(run, OracleSet::full(lambda));
    const double yes = yes_decision.accept_probability;
    {
        CheckResult c = st.check("verifier-yes-accept", yes >= 0.9);
        c.measured = yes;
        c.bound = 0.9;
        c.tolerance = 0.0;
        c.details["relation_mass_per_x"] = yes_decision.relation_mass_per_x;
        out.push_back(std::move(c));
    }
    {
        const double none = run.accept_probability(OracleSet::explicit_set(lambda));
        CheckResult c = st.check("verifier-no-empty-accept", none == 0.0);
        c.measured = none;
        c.bound = 0.0;
        c.tolerance = 0.0;
        out.push_back(std::move(c));
    }
    const std::uint64_t trials = st.trials_or(50);
    if (trials == 0) return;
    SplitMix64 rng(st.sub_seed("verifier-sets"));
    // desk threshold: the asymptotic 2^lambda/3 floor is empty at tiny
    // lambda, so allow at least one x
    const std::uint64_t threshold = std::max<std::uint64_t>(1, (1ull << lambda) / 3);
    double worst_no_excess = -1.0;
    double worst_hybrid_slack = 1e9;
    for (std::uint64_t t = 0; t < trials; ++t) {
        const std::uint64_t f_size = 1 + rng.next_below(threshold);
        const OracleSet e = random_no_instance(ctx, lambda, f_size, rng);
        const double acc = run.accept_probability(e);
        const double no_bound =
            static_cast<double>(e.projection_size()) / static_cast<double>(1ull << lambda);
        worst_no_excess = std::max(worst_no_excess, acc - no_bound);
        const double mass = run.difference_mass(e);
        const double hybrid = 4.0 * std::sqrt(1.0 * mass);  // Q = 1
        worst_hybrid_slack = std::min(worst_hybrid_slack, hybrid - std::abs(yes - acc));
    }
    {
        CheckResult c = st.check("verifier-no-bound", worst_no_excess <= 1e-12);
        c.measured = worst_no_excess;
        c.bound = 0.0;
        c.tolerance = 1e-12;
        c.trials = trials;
        out.push_back(std::move(c));
    }
    {
        CheckResult c = st.check("verifier-hybrid", worst_hybrid_slack >= -1e-9);
        c.measured = worst_hybrid_slack;
        c.bound = 0.0;
        c.tolerance = 1e-9;
        c.trials = trials;
        out.push_back(std::move(c));
    }
}

// --- guesser ---

inline void run_guesser(SuiteState& st, std::vector<CheckResult>& out) {
    const CodeParams& params = st.rc.params;
    const double p = st.rc.bias;
    const std::uint32_t lambda = st.rc.lambda;
    PipelineContext ctx(params, DualDecodeMode::bw, st.rc.cfg.enumeration_cap);

    std::vector<ColumnNeeds> needs(params.n());
    for (std::uint32_t i = 0; i < params.n(); ++i)
        needs[i] = i < lambda ? ColumnNeeds{true, true} : ColumnNeeds{true, false};
    HashFunction H =
        sample_bias_conditioned(params.n(), p, ctx.sigma, st.sub_seed("guesser-hash"), needs);
    AdviceState adv = prepare_advice(H, ctx);
    VerifierRun run(adv, H, ctx, lambda);

    {
        const GuesserResult res = guesser_harness(run, 0, 0, st.sub_seed("guesser-empty"));
        CheckResult c = st.check("guesser-empty", res.delta.empty() && res.rounds.empty());
        c.measured = static_cast<double>(res.delta.size());
        c.bound = 0.0;
        c.tolerance = 0.0;
        out.push_back(std::move(c));
    }
    const std::uint64_t trials = st.trials_or(200);
    if (trials == 0) return;
    const std::uint32_t ell = 4;
    std::uint64_t fresh_valid = 0, rounds = 0;
    bool size_ok = true;
    for (std::uint64_t t = 0; t < trials; ++t) {
        const GuesserResult res = guesser_harness(run, ell, 0, st.sub_seed("guesser-run", t));
        fresh_valid += res.fresh_relation_rounds();
        rounds += res.rounds.size();
        size_ok &= res.delta.size() <= ell;
    }
    {
        const double freq = static_cast<double>(fresh_valid) / static_cast<double>(rounds);
        CheckResult c = st.check("guesser-fresh-rate", freq >= 1.0 / 144.0);
        c.measured = freq;
        c.bound = 1.0 / 144.0;
        c.tolerance = 0.0;
        c.trials = trials;
        out.push_back(std::move(c));
    }
    {
        CheckResult c = st.check("guesser-delta-size", size_ok);
        c.measured = size_ok ? 1.0 : 0.0;
        c.bound = 1.0;
        c.tolerance = 0.0;
        c.trials = trials;
        out.push_back(std::move(c));
    }
}

// --- list recovery & the derivative-graph cross-check ---

inline void run_list_recovery(SuiteState& st, std::vector<CheckResult>& out) {
    const CodeParams& params = st.rc.params;
    const auto& field = params.field();
    if (params.n() != params.q())
        throw std::invalid_argument(
            "list-recovery: cross-check needs evaluation points covering F_q (n = q)");
    if (!params.hasse_formal_interchangeable())
        throw std::invalid_argument("list-recovery: needs s < char(F_q)");
    const std::uint64_t sigma = params.sigma_size();
    ExpanderSpec spec(field, params.k(), params.s());

    // factorials convert Hasse slots to formal-derivative slots
    std::vector<FieldElem> fact(params.s(), 1);
    for (std::uint32_t j = 1; j < params.s(); ++j)
        fact[j] = field.mul(fact[j - 1], static_cast<FieldElem>(j % field.modulus()));

    auto family_mask = [&](const ListFamily& fam) {
        std::vector<std::uint8_t> mask(spec.right_vertex_count(), 0);
        for (std::uint32_t i = 0; i < params.n(); ++i) {
            for (std::uint64_t sym : fam.lists[i]) {
                const Symbol hasse = symbol_from_index(params.q(), params.s(), sym);
                std::vector<FieldElem> tuple(params.s() + 1, 0);
                tuple[0] = params.alphas()[i];
                for (std::uint32_t j = 0; j < params.s(); ++j)
                    tuple[j + 1] = field.mul(fact[j], hasse[j]);
                mask[spec.right_vertex_index(tuple)] = 1;
            }
        }
        return mask;
    };

    {
        // structural: all-Sigma lists recover the whole code, empty lists none
        ListFamily full;
        full.lists.assign(params.n(), {});
        for (auto& l : full.lists)
            for (std::uint64_t sym = 0; sym < sigma; ++sym) l.push_back(sym);
        const std::uint64_t all = list_recovery_count(params, full, st.rc.cfg.enumeration_cap);
        ListFamily holed = full;
        holed.lists[0].clear();
        const std::uint64_t none = list_recovery_count(params, holed, st.rc.cfg.enumeration_cap);
        CheckResult c = st.check("list-recovery-structural",
                                 all == params.codeword_count_capped() && none == 0);
        c.measured = static_cast<double>(all);
        c.bound = static_cast<double>(params.codeword_count_capped());
        c.tolerance = 0.0;
        out.push_back(std::move(c));
    }
    const std::uint64_t trials = st.trials_or(100);
    if (trials == 0) return;
    SplitMix64 rng(st.sub_seed("list-families"));
    std::uint64_t mismatches = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        ListFamily fam;
        fam.lists.assign(params.n(), {});
        for (auto& l : fam.lists) {
            const std::uint64_t size = rng.next_below(sigma + 1);
            while (l.size() < size) {
                const std::uint64_t sym = rng.next_below(sigma);
                if (std::find(l.begin(), l.end(), sym) == l.end()) l.push_back(sym);
            }
        }
        const std::uint64_t direct = list_recovery_count(params, fam, st.rc.cfg.enumeration_cap);
        const std::uint64_t via_graph =
            list_gamma(spec, family_mask(fam), st.rc.cfg.enumeration_cap).size();
        mismatches += direct != via_graph;
    }
    CheckResult c = st.check("list-recovery-graph-crosscheck", mismatches == 0);
    c.measured = static_cast<double>(mismatches);
    c.bound = 0.0;
    c.tolerance = 0.0;
    c.trials = trials;
    out.push_back(std::move(c));
}

// --- expansion ---

inline void run_expansion(SuiteState& st, std::vector<CheckResult>& out) {
    const CodeParams& params = st.rc.params;
    ExpanderSpec spec(params.field(), params.k(), params.s());
    const std::uint64_t trials = st.trials_or(100);
    {
        const ExpansionResult r = expansion_measure(spec, 1, trials, st.sub_seed("expansion-1"));
        CheckResult c = st.check("expansion-singleton-ratio",
                                 r.min_ratio == static_cast<double>(params.q()));
        c.measured = r.min_ratio;
        c.bound = static_cast<double>(params.q());
        c.tolerance = 0.0;
        out.push_back(std::move(c));
    }
    {
        const ExpansionResult r = expansion_measure(spec, 2, trials, st.sub_seed("expansion-2"));
        const bool pass = r.vacuous || r.min_ratio >= static_cast<double>(r.formula_a);
        CheckResult c = st.check("expansion-formula-bound", pass);
        c.measured = r.min_ratio;
        c.bound = static_cast<double>(r.formula_a);
        c.tolerance = 0.0;
        c.trials = r.exhaustive ? 0 : trials;
        c.details["preconditions_hold"] = r.preconditions_hold;
        c.details["vacuous"] = r.vacuous;
        c.details["exhaustive"] = r.exhaustive;
        out.push_back(std::move(c));
    }
}

// --- guessing bound ---

inline void run_guess_bound(SuiteState& st, std::vector<CheckResult>& out) {
    const CodeParams& params = st.rc.params;
    {
        const double v = static_cast<double>(guesser_upper_bound(2, 1));
        CheckResult c =
            st.check("guess-bound-closed-form", std::abs(v - kGuessBoundLambda2Ell1) <= 1e-12);
        c.measured = v;
        c.bound = kGuessBoundLambda2Ell1;
        c.tolerance = 1e-12;
        out.push_back(std::move(c));
    }
    {
        bool monotone = true;
        for (std::uint32_t lam = 2; lam <= 3; ++lam) {
            long double prev = 2.0L;
            for (std::uint64_t ell = 0; ell <= 6; ++ell) {
                const long double v = guesser_upper_bound(lam, ell);
                monotone &= v < prev || (ell == 0 && v == 1.0L);
                prev = v;
            }
        }
        CheckResult c = st.check("guess-bound-monotone", monotone);
        c.measured = monotone ? 1.0 : 0.0;
        c.bound = 1.0;
        c.tolerance = 0.0;
        out.push_back(std::move(c));
    }
    const std::uint64_t trials = st.trials_or(10000);
    if (trials == 0) return;
    std::uint32_t idx = 0;
    for (GuessStrategy strat : {GuessStrategy::lexicographic, GuessStrategy::random_codeword}) {
        const GuessRateResult r = empirical_guess_rate(params, st.rc.bias, 2, strat, trials,
                                                       st.sub_seed("guess-rate", idx),
                                                       st.rc.cfg.enumeration_cap);
        const double sigma = std::sqrt(std::max(r.bound * (1.0 - r.bound), 0.0) / trials);
        CheckResult c = st.check(idx == 0 ? "guess-rate-lexicographic" : "guess-rate-random",
                                 r.frequency <= r.bound + 4.0 * sigma + 1e-15);
        c.measured = r.frequency;
        c.bound = r.bound;
        c.tolerance = 4.0 * sigma;
        c.trials = trials;
        c.details["distinct_symbols"] = r.distinct_symbols;
        out.push_back(std::move(c));
        ++idx;
    }
}

}  // namespace suite

// Dispatch a validated config into the experiment implementations.
inline Report run_suite(const ExperimentConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    suite::SuiteState st{resolve_config(cfg), {}};
    Report rep;
    rep.config_echo = cfg.echo.is_null() ? Json::object() : cfg.echo;

    if (cfg.experiment == "duality") suite::run_duality(st, rep.checks);
    else if (cfg.experiment == "distance") suite::run_distance(st, rep.checks);
    else if (cfg.experiment == "decoder-agreement") suite::run_decoder_agreement(st, rep.checks);
    else if (cfg.experiment == "fourier") suite::run_fourier(st, rep.checks);
    else if (cfg.experiment == "mu") suite::run_mu(st, rep.checks);
    else if (cfg.experiment == "yz-end-to-end") suite::run_end_to_end(st, rep.checks);
    else if (cfg.experiment == "verifier") suite::run_verifier(st, rep.checks);
    else if (cfg.experiment == "guesser") suite::run_guesser(st, rep.checks);
    else if (cfg.experiment == "list-recovery") suite::run_list_recovery(st, rep.checks);
    else if (cfg.experiment == "expansion") suite::run_expansion(st, rep.checks);
    else if (cfg.experiment == "guess-bound") suite::run_guess_bound(st, rep.checks);
    else throw std::invalid_argument("run_suite: unknown experiment '" + cfg.experiment + "'");

    rep.seeds_consumed = std::move(st.seeds);
    rep.wall_clock_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    if (!cfg.out_path.empty()) {
        std::ofstream out(cfg.out_path);
        if (!out) throw std::runtime_error("run_suite: cannot open " + cfg.out_path);
        out << emit_report(rep, cfg.format);
    }
    return rep;
}

}  // namespace codeint
