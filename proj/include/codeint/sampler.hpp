#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "codeint/fourier.hpp"
#include "codeint/mult_code.hpp"
#include "codeint/oracle_model.hpp"
#include "codeint/statevector.hpp"

namespace codeint {

struct BottomAdvice : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Dense tables shared by every pipeline run over the same code and decoder:
// the total dual-decode map F, membership masks for C and C-perp, and the
// good-error set G = {e : forall u in C-perp, F(u+e) = u}.
class PipelineContext {
  public:
    PipelineContext(CodeParams params_, DualDecodeMode dec_mode,
                    std::uint64_t enum_cap = kDefaultEnumerationCap)
        : params(std::move(params_)),
          dual(dual_matrices(params)),
          mode(dec_mode),
          q(static_cast<std::uint32_t>(params.q())),
          n(params.n()),
          s(params.s()),
          sn(params.s() * params.n()),
          sigma(params.sigma_size()) {
        const std::uint64_t cap = amplitude_cap();
        dim = params.word_count_capped(cap);
        if (dim > cap) throw CapExceeded("PipelineContext: |Sigma|^n exceeds amplitude cap");

        code_count = params.codeword_count_capped(enum_cap);
        if (code_count > enum_cap) throw CapExceeded("PipelineContext: code enumeration exceeds cap");
        dual_count = dual.dual_params.codeword_count_capped(enum_cap);
        if (dual_count > enum_cap) throw CapExceeded("PipelineContext: dual enumeration exceeds cap");

        if (sigma > 2048) throw CapExceeded("PipelineContext: symbol addition table exceeds cap");
        sym_add.assign(static_cast<std::size_t>(sigma) * sigma, 0);
        sym_sub.assign(static_cast<std::size_t>(sigma) * sigma, 0);
        for (std::uint64_t a = 0; a < sigma; ++a)
            for (std::uint64_t b = 0; b < sigma; ++b) {
                sym_add[a * sigma + b] = static_cast<std::uint32_t>(
                    detail::index_add(a, b, q, s));
                sym_sub[a * sigma + b] = static_cast<std::uint32_t>(
                    detail::index_sub(a, b, q, s));
            }

        code_mask.assign(dim, 0);
        code_words.reserve(code_count);
        for (std::uint64_t idx = 0; idx < code_count; ++idx) {
            const Word w = encode(message_from_index(params.field(), params.k(), idx), params);
            const std::uint64_t wi = word_index(params.q(), w);
            code_mask[wi] = 1;
            code_words.push_back(wi);
        }
        dual_mask.assign(dim, 0);
        dual_words.reserve(dual_count);
        for (std::uint64_t idx = 0; idx < dual_count; ++idx) {
            const auto& dp = dual.dual_params;
            const Word w = gm_encode(message_from_index(dp.field(), dp.k(), idx), dual);
            const std::uint64_t wi = word_index(params.q(), w);
            dual_mask[wi] = 1;
            dual_words.push_back(wi);
        }

        f_table.assign(dim, 0);
        for (std::uint64_t wi = 0; wi < dim; ++wi) {
            const Word w = word_from_index(params.q(), n, s, wi);
            f_table[wi] = static_cast<std::uint32_t>(word_index(params.q(), decode_dual(w, dual, mode)));
        }

        // cnt[e] = #{w : w - F(w) = e} = #{u in C-perp : F(u+e) = u}, because
        // F maps into C-perp; e is good iff every translate decodes back.
        std::vector<std::uint32_t> cnt(dim, 0);
        for (std::uint64_t wi = 0; wi < dim; ++wi) ++cnt[word_index_sub(wi, f_table[wi])];
        good_mask.assign(dim, 0);
        for (std::uint64_t e = 0; e < dim; ++e) good_mask[e] = cnt[e] == dual_count;
    }

    std::uint64_t word_index_add(std::uint64_t a, std::uint64_t b) const {
        std::uint64_t out = 0, mult = 1;
        for (std::uint32_t i = 0; i < n; ++i) {
            out += std::uint64_t(sym_add[(a % sigma) * sigma + b % sigma]) * mult;
            mult *= sigma;
            a /= sigma;
            b /= sigma;
        }
        return out;
    }
    std::uint64_t word_index_sub(std::uint64_t a, std::uint64_t b) const {
        std::uint64_t out = 0, mult = 1;
        for (std::uint32_t i = 0; i < n; ++i) {
            out += std::uint64_t(sym_sub[(a % sigma) * sigma + b % sigma]) * mult;
            mult *= sigma;
            a /= sigma;
            b /= sigma;
        }
        return out;
    }

    CodeParams params;
    DualData dual;
    DualDecodeMode mode;
    std::uint32_t q, n, s, sn;
    std::uint64_t sigma = 0, dim = 0;
    std::uint64_t code_count = 0, dual_count = 0;
    std::vector<std::uint32_t> f_table;
    std::vector<std::uint8_t> code_mask, dual_mask, good_mask;
    std::vector<std::uint64_t> code_words, dual_words;
    std::vector<std::uint32_t> sym_add, sym_sub;
};

// Preimage-block advice: 2n per-coordinate preimage superpositions plus the
// uniform code superposition. Blocks with empty preimage sets are stored
// empty; the state as a whole is the bottom sentinel iff any block is empty.
struct AdviceState {
    std::uint32_t n = 0;
    std::uint64_t sigma = 0;
    std::vector<std::vector<Amp>> blocks;  // [2n], entry 2*i+b
    std::vector<Amp> code_state;           // |Sigma|^n

    bool block_empty(std::uint32_t i, bool b) const { return blocks[2 * i + (b ? 1 : 0)].empty(); }
    bool is_bottom() const {
        for (const auto& blk : blocks)
            if (blk.empty()) return true;
        return false;
    }
    const std::vector<Amp>& block(std::uint32_t i, bool b) const { return blocks[2 * i + (b ? 1 : 0)]; }
};

inline AdviceState prepare_advice(const HashFunction& H, const PipelineContext& ctx) {
    AdviceState adv;
    adv.n = ctx.n;
    adv.sigma = ctx.sigma;
    adv.blocks.assign(2 * ctx.n, {});
    for (std::uint32_t i = 0; i < ctx.n; ++i) {
        for (int b = 0; b < 2; ++b) {
            std::vector<std::uint64_t> preimages;
            for (std::uint64_t sym = 0; sym < ctx.sigma; ++sym)
                if (H.bit(i, sym) == static_cast<bool>(b)) preimages.push_back(sym);
            if (preimages.empty()) continue;
            std::vector<Amp> blk(ctx.sigma, Amp(0.0, 0.0));
            const double amp = 1.0 / std::sqrt(static_cast<double>(preimages.size()));
            for (std::uint64_t sym : preimages) blk[sym] = Amp(amp, 0.0);
            adv.blocks[2 * i + b] = std::move(blk);
        }
    }
    adv.code_state.assign(ctx.dim, Amp(0.0, 0.0));
    const double amp = 1.0 / std::sqrt(static_cast<double>(ctx.code_count));
    for (std::uint64_t wi : ctx.code_words) adv.code_state[wi] = Amp(amp, 0.0);
    return adv;
}

// Full tensor of the advice state (2n blocks then the code register); only
// for instances tiny enough to materialize.
inline StateVector materialize_advice(const AdviceState& adv, const PipelineContext& ctx) {
    if (adv.is_bottom()) throw BottomAdvice("materialize_advice: bottom advice state");
    std::vector<RegisterInfo> regs;
    for (std::uint32_t i = 0; i < ctx.n; ++i)
        for (int b = 0; b < 2; ++b)
            regs.push_back(RegisterInfo{"phi_" + std::to_string(i) + "_" + std::to_string(b), ctx.q,
                                        ctx.s, 0});
    regs.push_back(RegisterInfo{"code", ctx.q, ctx.sn, 0});
    RegisterLayout layout(std::move(regs));
    StateVector st(layout);
    // last register least significant: index = ((...block amps...) * dim) + code index
    std::vector<Amp> acc{Amp(1.0, 0.0)};
    for (std::uint32_t i = 0; i < ctx.n; ++i)
        for (int b = 0; b < 2; ++b) {
            const auto& blk = adv.block(i, b);
            std::vector<Amp> next(acc.size() * ctx.sigma);
            for (std::uint64_t lo = 0; lo < ctx.sigma; ++lo)
                for (std::uint64_t hi = 0; hi < acc.size(); ++hi)
                    next[hi * ctx.sigma + lo] = acc[hi] * blk[lo];
            acc = std::move(next);
        }
    auto& amps = st.amps();
    for (std::uint64_t hi = 0; hi < acc.size(); ++hi)
        for (std::uint64_t lo = 0; lo < ctx.dim; ++lo)
            amps[hi * ctx.dim + lo] = acc[hi] * adv.code_state[lo];
    st.assert_norm();
    return st;
}

struct PipelineReport {
    double epsilon = 0.0;
    double delta = 0.0;
    double euclid_gap = 0.0;
    std::optional<double> success_prob;

    double gap_bound() const { return std::sqrt(epsilon) + std::sqrt(delta); }
    bool gap_within_bound(double tol = 1e-9) const { return euclid_gap <= gap_bound() + tol; }
};

struct PipelineOutput {
    StateVector joint;  // registers A (first) and B, each over Sigma^n
    PipelineReport report;
};

// The convolution pipeline applied to |phi>|psi>:
//   (QFT^-1 (x) id) . U_F . U_add . (QFT (x) QFT),
// U_add = sum |u+e, u><e, u| and U_F = sum |w, u - F(w)><w, u|. Register A
// carries e/phi, register B carries u/psi. The report's epsilon and delta
// are the amplitude masses over BAD = (Sigma^n x Sigma^n) \ (C-perp x G),
// and euclid_gap the distance to |Sigma|^{n/2} sum_z V(z)W(z)|z>|0>.
inline PipelineOutput convolution_pipeline(const std::vector<Amp>& phi, const std::vector<Amp>& psi,
                                           const PipelineContext& ctx) {
    const std::uint64_t dim = ctx.dim;
    if (phi.size() != dim || psi.size() != dim)
        throw std::invalid_argument("convolution_pipeline: state dimension mismatch");

    RegisterLayout layout({RegisterLayout::word_register("A", ctx.q, ctx.n, ctx.s),
                           RegisterLayout::word_register("B", ctx.q, ctx.n, ctx.s)});
    StateVector joint(layout);

    const auto what = fourier_transform(phi, ctx.q, ctx.sn);
    const auto vhat = fourier_transform(psi, ctx.q, ctx.sn);

    // QFT (x) QFT then U_add, written directly: amp(w, u) = What(w-u) Vhat(u).
    // Rows are filled sequentially; the scattered reads stay inside the
    // small per-register arrays.
    auto& amps = joint.amps();
    std::vector<std::uint64_t> pw(ctx.n, 1);
    for (std::uint32_t i = 1; i < ctx.n; ++i) pw[i] = pw[i - 1] * ctx.sigma;
    std::vector<std::uint32_t> wdig(ctx.n, 0), udig(ctx.n, 0);
    auto advance = [&](std::vector<std::uint32_t>& dig) {
        for (std::uint32_t i = 0; i < ctx.n; ++i) {
            if (++dig[i] < ctx.sigma) break;
            dig[i] = 0;
        }
    };
    for (std::uint64_t w = 0; w < dim; ++w, advance(wdig)) {
        Amp* row = amps.data() + w * dim;
        std::fill(udig.begin(), udig.end(), 0);
        for (std::uint64_t u = 0; u < dim; ++u, advance(udig)) {
            std::uint64_t e = 0;
            for (std::uint32_t i = 0; i < ctx.n; ++i)
                e += std::uint64_t(ctx.sym_sub[std::uint64_t(wdig[i]) * ctx.sigma + udig[i]]) * pw[i];
            row[u] = what[e] * vhat[u];
        }
    }
    joint.assert_norm();

    // U_F: within each A-slice, u -> u - F(w).
    {
        std::vector<Amp> tmp(dim);
        std::vector<std::uint32_t> fdig(ctx.n, 0);
        for (std::uint64_t w = 0; w < dim; ++w) {
            const std::uint64_t fw = ctx.f_table[w];
            if (fw == 0) continue;
            std::uint64_t rest = fw;
            for (std::uint32_t i = 0; i < ctx.n; ++i) {
                fdig[i] = static_cast<std::uint32_t>(rest % ctx.sigma);
                rest /= ctx.sigma;
            }
            Amp* row = amps.data() + w * dim;
            std::copy(row, row + dim, tmp.begin());
            std::fill(udig.begin(), udig.end(), 0);
            for (std::uint64_t u = 0; u < dim; ++u, advance(udig)) {
                std::uint64_t target = 0;
                for (std::uint32_t i = 0; i < ctx.n; ++i)
                    target += std::uint64_t(ctx.sym_sub[std::uint64_t(udig[i]) * ctx.sigma + fdig[i]]) * pw[i];
                row[target] = tmp[u];
            }
        }
    }
    joint.assert_norm();

    joint.apply_qft("A", /*inverse=*/true);

    PipelineReport rep;
    // epsilon = sum over BAD pairs of |Vhat(u) What(e)|^2, grouped by u.
    {
        double tot_w = 0.0, bad_w = 0.0;
        for (std::uint64_t e = 0; e < dim; ++e) {
            const double m = std::norm(what[e]);
            tot_w += m;
            if (!ctx.good_mask[e]) bad_w += m;
        }
        double eps = 0.0;
        for (std::uint64_t u = 0; u < dim; ++u)
            eps += std::norm(vhat[u]) * (ctx.dual_mask[u] ? bad_w : tot_w);
        rep.epsilon = eps;
    }
    // delta = sum_z |sum_{BAD pairs with u+e=z} Vhat(u) What(e)|^2.
    {
        double delta = 0.0;
        std::vector<std::uint32_t> zdig(ctx.n, 0);
        for (std::uint64_t z = 0; z < dim; ++z, advance(zdig)) {
            Amp acc(0.0, 0.0);
            std::fill(udig.begin(), udig.end(), 0);
            for (std::uint64_t u = 0; u < dim; ++u, advance(udig)) {
                std::uint64_t e = 0;
                for (std::uint32_t i = 0; i < ctx.n; ++i)
                    e += std::uint64_t(ctx.sym_sub[std::uint64_t(zdig[i]) * ctx.sigma + udig[i]]) * pw[i];
                if (ctx.dual_mask[u] && ctx.good_mask[e]) continue;
                acc += vhat[u] * what[e];
            }
            delta += std::norm(acc);
        }
        rep.delta = delta;
    }
    // Euclidean distance to the ideal pointwise-product target.
    {
        const double root_dim = std::sqrt(static_cast<double>(dim));
        double gap2 = 0.0;
        for (std::uint64_t w = 0; w < dim; ++w) {
            const Amp* row = amps.data() + w * dim;
            const Amp target = root_dim * psi[w] * phi[w];
            gap2 += std::norm(row[0] - target);
            for (std::uint64_t u = 1; u < dim; ++u) gap2 += std::norm(row[u]);
        }
        rep.euclid_gap = std::sqrt(gap2);
    }
    if (!rep.gap_within_bound())
        throw std::logic_error("convolution_pipeline: euclid_gap exceeds sqrt(eps)+sqrt(delta)");
    return PipelineOutput{std::move(joint), rep};
}

struct SamplerResult {
    PipelineReport report;
    std::vector<double> outcome;  // exact measurement distribution of register A
};

// Steps 1-5 of the biased intersection sampler: select the b-indexed
// preimage blocks, run the convolution pipeline against the code register,
// and return the exact outcome distribution of measuring register A.
inline SamplerResult run_sampler(const AdviceState& adv, const BitString& b,
                                 const PipelineContext& ctx) {
    if (b.len != ctx.n) throw std::invalid_argument("run_sampler: target string length mismatch");
    for (std::uint32_t i = 0; i < ctx.n; ++i)
        if (adv.block_empty(i, b.get(i)))
            throw BottomAdvice("run_sampler: selected preimage block is empty");

    // phi = tensor of the selected blocks, symbol 0 least significant.
    std::vector<Amp> phi{Amp(1.0, 0.0)};
    for (std::uint32_t i = 0; i < ctx.n; ++i) {
        const auto& blk = adv.block(i, b.get(i));
        std::vector<Amp> next(phi.size() * ctx.sigma);
        for (std::uint64_t sym = 0; sym < ctx.sigma; ++sym)
            for (std::uint64_t lo = 0; lo < phi.size(); ++lo)
                next[sym * phi.size() + lo] = blk[sym] * phi[lo];
        phi = std::move(next);
    }

    PipelineOutput out = convolution_pipeline(phi, adv.code_state, ctx);
    SamplerResult res;
    res.report = out.report;
    res.outcome.assign(ctx.dim, 0.0);
    const auto& amps = out.joint.amps();
    for (std::uint64_t w = 0; w < ctx.dim; ++w) {
        double acc = 0.0;
        const Amp* row = amps.data() + w * ctx.dim;
        for (std::uint64_t u = 0; u < ctx.dim; ++u) acc += std::norm(row[u]);
        res.outcome[w] = acc;
    }
    return res;
}

// Dense mask of {v : (b, v) in R_{C,H}} over word indices.
inline std::vector<std::uint8_t> relation_mask(const HashFunction& H, const BitString& b,
                                               const PipelineContext& ctx) {
    if (b.len != ctx.n) throw std::invalid_argument("relation_mask: length mismatch");
    std::vector<std::uint8_t> mask(ctx.dim, 0);
    for (std::uint64_t wi : ctx.code_words) {
        std::uint64_t rest = wi;
        bool ok = true;
        for (std::uint32_t i = 0; i < ctx.n && ok; ++i) {
            ok = H.bit(i, rest % ctx.sigma) == b.get(i);
            rest /= ctx.sigma;
        }
        mask[wi] = ok;
    }
    return mask;
}

// Exact probability that the sampler's measurement lands in the relation.
inline double success_probability(const AdviceState& adv, const BitString& b,
                                  const HashFunction& H, const PipelineContext& ctx,
                                  PipelineReport* report_out = nullptr) {
    SamplerResult run = run_sampler(adv, b, ctx);
    const auto mask = relation_mask(H, b, ctx);
    double acc = 0.0;
    for (std::uint64_t wi : ctx.code_words)
        if (mask[wi]) acc += run.outcome[wi];
    run.report.success_prob = acc;
    if (report_out) *report_out = run.report;
    return acc;
}

}  // namespace codeint
