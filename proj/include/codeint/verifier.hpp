#pragma once

#include <cstdint>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "codeint/oracle_model.hpp"
#include "codeint/rng.hpp"
#include "codeint/sampler.hpp"

namespace codeint {

// The one-query verifier, fully tabulated: for every x in {0,1}^lambda the
// exact sampler outcome distribution and the relation mask for x || 0^(n-?).
// Acceptance probabilities and query masses are then exact sums; no
// sampling enters except where the guesser measures a query.
class VerifierRun {
  public:
    VerifierRun(const AdviceState& adv, const HashFunction& H, const PipelineContext& ctx,
                std::uint32_t lambda)
        : ctx_(&ctx), hash_(&H), lambda_(lambda) {
        if (lambda > ctx.n) throw std::invalid_argument("VerifierRun: lambda > n");
        const std::uint64_t xs = 1ull << lambda;
        outcome_.reserve(xs);
        rel_.reserve(xs);
        reports_.reserve(xs);
        for (std::uint64_t x = 0; x < xs; ++x) {
            const BitString b = BitString(lambda_, x).padded(ctx.n);
            SamplerResult run = run_sampler(adv, b, ctx);
            rel_.push_back(relation_mask(H, b, ctx));
            outcome_.push_back(std::move(run.outcome));
            reports_.push_back(run.report);
        }
    }

    std::uint32_t lambda() const { return lambda_; }
    std::uint64_t num_inputs() const { return 1ull << lambda_; }
    const std::vector<double>& outcome_for(std::uint64_t x) const { return outcome_[x]; }
    const std::vector<std::uint8_t>& relation_for(std::uint64_t x) const { return rel_[x]; }
    const std::vector<PipelineReport>& pipeline_reports() const { return reports_; }

    // Exact Pr[V^{O[H,E]} accepts], averaging over x exhaustively.
    double accept_probability(const OracleSet& E) const {
        double acc = 0.0;
        for (std::uint64_t x = 0; x < num_inputs(); ++x) {
            for (std::uint64_t wi : ctx_->code_words) {
                if (!rel_[x][wi]) continue;
                if (E.kind == OracleSet::Kind::full ||
                    E.contains(BitString(lambda_, x), word_from_index(ctx_->params.q(), ctx_->n, ctx_->s, wi)))
                    acc += outcome_[x][wi];
            }
        }
        return acc / static_cast<double>(num_inputs());
    }

    // Query mass on the inputs where O[H, E] differs from O[H, full], i.e.
    // relation members outside E.
    double difference_mass(const OracleSet& E) const {
        double acc = 0.0;
        for (std::uint64_t x = 0; x < num_inputs(); ++x) {
            for (std::uint64_t wi : ctx_->code_words) {
                if (!rel_[x][wi]) continue;
                if (E.kind == OracleSet::Kind::full ||
                    E.contains(BitString(lambda_, x), word_from_index(ctx_->params.q(), ctx_->n, ctx_->s, wi)))
                    continue;
                acc += outcome_[x][wi];
            }
        }
        return acc / static_cast<double>(num_inputs());
    }

    // Total query mass on pairs satisfying an arbitrary predicate.
    template <typename Pred>
    double query_mass(Pred&& pred) const {
        double acc = 0.0;
        for (std::uint64_t x = 0; x < num_inputs(); ++x)
            for (std::uint64_t v = 0; v < ctx_->dim; ++v)
                if (pred(x, v)) acc += outcome_[x][v];
        return acc / static_cast<double>(num_inputs());
    }

    // Measure the verifier's single query: x uniform, then v from the exact
    // outcome distribution for x.
    std::pair<std::uint64_t, std::uint64_t> sample_query(SplitMix64& rng) const {
        const std::uint64_t x = rng.next_below(num_inputs());
        const auto& dist = outcome_[x];
        double r = rng.next_double();
        std::uint64_t v = 0;
        for (; v + 1 < dist.size(); ++v) {
            if (r < dist[v]) break;
            r -= dist[v];
        }
        return {x, v};
    }

    const PipelineContext& context() const { return *ctx_; }
    const HashFunction& hash() const { return *hash_; }

  private:
    const PipelineContext* ctx_;
    const HashFunction* hash_;
    std::uint32_t lambda_;
    std::vector<std::vector<double>> outcome_;
    std::vector<std::vector<std::uint8_t>> rel_;
    std::vector<PipelineReport> reports_;
};

struct VerifierDecision {
    double accept_probability = 0.0;
    // per-x mass the verifier places on relation members (the query trace)
    std::vector<double> relation_mass_per_x;
};

// Runs the verifier against O[H, E] and reports the exact accept
// probability plus its query-mass trace.
inline VerifierDecision verifier_decision(const VerifierRun& run, const OracleSet& E) {
    VerifierDecision d;
    d.accept_probability = run.accept_probability(E);
    d.relation_mass_per_x.resize(run.num_inputs(), 0.0);
    for (std::uint64_t x = 0; x < run.num_inputs(); ++x) {
        double acc = 0.0;
        const auto& rel = run.relation_for(x);
        const auto& out = run.outcome_for(x);
        for (std::uint64_t wi : run.context().code_words)
            if (rel[wi]) acc += out[wi];
        d.relation_mass_per_x[x] = acc;
    }
    return d;
}

struct GuesserRound {
    std::uint64_t x = 0;
    std::uint64_t v = 0;  // word index
    bool fresh = false;
    bool in_relation = false;
};

struct GuesserResult {
    std::vector<std::pair<BitString, Word>> delta;
    std::vector<GuesserRound> rounds;

    std::uint64_t fresh_relation_rounds() const {
        std::uint64_t c = 0;
        for (const auto& r : rounds) c += r.fresh && r.in_relation;
        return c;
    }
};

// The hash-value guesser: Delta_0 = {}, and each round measures a uniformly
// random query of the verifier simulated against O_Delta, then adds the
// outcome. This verifier makes its one query after an oracle-independent
// computation, so simulating it against any O_Delta produces the same query
// distribution; the round reduces to sampling from the tabulated one.
// The witness argument mirrors the harness contract for witness-guessing
// algorithms; this verifier takes no classical witness and ignores it.
inline GuesserResult guesser_harness(const VerifierRun& run, std::uint32_t ell,
                                     std::uint64_t witness, std::uint64_t seed) {
    (void)witness;
    SplitMix64 rng(seed);
    GuesserResult res;
    std::set<std::pair<std::uint64_t, std::uint64_t>> delta;
    constexpr std::uint32_t kQueries = 1;
    for (std::uint32_t round = 0; round < ell; ++round) {
        (void)rng.next_below(kQueries);  // Fig. 2 picks a random query index
        const auto [x, v] = run.sample_query(rng);
        GuesserRound r;
        r.x = x;
        r.v = v;
        r.fresh = delta.find({x, v}) == delta.end();
        r.in_relation = run.relation_for(x)[v] != 0;
        delta.insert({x, v});
        res.rounds.push_back(r);
    }
    const auto& ctx = run.context();
    for (const auto& [x, v] : delta)
        res.delta.emplace_back(BitString(run.lambda(), x),
                               word_from_index(ctx.params.q(), ctx.n, ctx.s, v));
    return res;
}

}  // namespace codeint
