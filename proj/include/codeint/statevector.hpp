#pragma once

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "codeint/mult_code.hpp"

namespace codeint {

using Amp = std::complex<double>;

inline std::uint64_t amplitude_cap() {
    if (const char* env = std::getenv("CODEINT_AMP_CAP")) {
        const std::uint64_t v = std::strtoull(env, nullptr, 10);
        if (v > 0) return v;
    }
    return 1ull << 24;
}

// One register: `slots` qudits of dimension q, total dimension q^slots.
struct RegisterInfo {
    std::string name;
    std::uint64_t q = 0;
    std::uint32_t slots = 0;
    std::uint64_t dim = 0;
};

class RegisterLayout {
  public:
    RegisterLayout() = default;
    RegisterLayout(std::vector<RegisterInfo> regs, std::uint64_t cap = amplitude_cap())
        : regs_(std::move(regs)) {
        total_dim_ = 1;
        for (auto& r : regs_) {
            std::uint64_t d = 1;
            for (std::uint32_t t = 0; t < r.slots; ++t) {
                d *= r.q;
                if (d > cap) throw CapExceeded("RegisterLayout: register dimension exceeds amplitude cap");
            }
            r.dim = d;
            if (total_dim_ > cap / d)
                throw CapExceeded("RegisterLayout: total dimension exceeds amplitude cap");
            total_dim_ *= d;
        }
        strides_.assign(regs_.size(), 1);
        for (std::size_t r = regs_.size(); r-- > 0;)
            strides_[r] = (r + 1 < regs_.size()) ? strides_[r + 1] * regs_[r + 1].dim : 1;
    }

    static RegisterInfo word_register(std::string name, std::uint64_t q, std::uint32_t n,
                                      std::uint32_t s) {
        return RegisterInfo{std::move(name), q, n * s, 0};
    }

    const std::vector<RegisterInfo>& registers() const { return regs_; }
    std::uint64_t total_dim() const { return total_dim_; }

    std::size_t index_of(const std::string& name) const {
        for (std::size_t r = 0; r < regs_.size(); ++r)
            if (regs_[r].name == name) return r;
        throw std::invalid_argument("RegisterLayout: no register named " + name);
    }
    // First register is most significant.
    std::uint64_t stride(std::size_t r) const { return strides_[r]; }
    std::uint64_t value_of(std::uint64_t idx, std::size_t r) const {
        return (idx / strides_[r]) % regs_[r].dim;
    }

  private:
    std::vector<RegisterInfo> regs_;
    std::vector<std::uint64_t> strides_;
    std::uint64_t total_dim_ = 1;
};

namespace detail {

// In-place DFT along one base-q axis of a dense tensor, streamed with the
// low index contiguous. M is row-major q x q.
inline void dft_axis(Amp* a, std::uint64_t total, std::uint64_t stride, std::uint32_t q,
                     const std::vector<double>& mre, const std::vector<double>& mim) {
    const std::uint64_t group = stride * static_cast<std::uint64_t>(q);
    std::vector<double> tre(q), tim(q);
    for (std::uint64_t base = 0; base < total; base += group) {
        for (std::uint64_t lo = 0; lo < stride; ++lo) {
            Amp* p0 = a + base + lo;
            for (std::uint32_t x = 0; x < q; ++x) {
                const Amp v = p0[std::uint64_t(x) * stride];
                tre[x] = v.real();
                tim[x] = v.imag();
            }
            for (std::uint32_t z = 0; z < q; ++z) {
                const double* mr = mre.data() + std::size_t(z) * q;
                const double* mi = mim.data() + std::size_t(z) * q;
                double sr = 0.0, si = 0.0;
                for (std::uint32_t x = 0; x < q; ++x) {
                    sr += mr[x] * tre[x] - mi[x] * tim[x];
                    si += mr[x] * tim[x] + mi[x] * tre[x];
                }
                p0[std::uint64_t(z) * stride] = Amp(sr, si);
            }
        }
    }
}

// DFT matrix with kernel w^{xz}/sqrt(q), w = exp(+-2*pi*i/q), from exact
// precomputed roots of unity (prime q, trace = identity).
inline void dft_matrix(std::uint32_t q, bool inverse, std::vector<double>& mre,
                       std::vector<double>& mim) {
    std::vector<Amp> roots(q);
    for (std::uint32_t t = 0; t < q; ++t)
        roots[t] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(t) / q);
    const double scale = 1.0 / std::sqrt(static_cast<double>(q));
    mre.assign(std::size_t(q) * q, 0.0);
    mim.assign(std::size_t(q) * q, 0.0);
    for (std::uint32_t z = 0; z < q; ++z)
        for (std::uint32_t x = 0; x < q; ++x) {
            Amp w = roots[(std::uint64_t(z) * x) % q];
            if (inverse) w = std::conj(w);
            mre[std::size_t(z) * q + x] = w.real() * scale;
            mim[std::size_t(z) * q + x] = w.imag() * scale;
        }
}

// Per-slot DFT over every base-q digit of a range [a, a+total) where digit t
// of the transformed block has stride `base_stride * q^t`.
inline void qft_block(Amp* a, std::uint64_t total, std::uint64_t base_stride, std::uint32_t q,
                      std::uint32_t slots, bool inverse) {
    std::vector<double> mre, mim;
    dft_matrix(q, inverse, mre, mim);
    std::uint64_t stride = base_stride;
    for (std::uint32_t t = 0; t < slots; ++t) {
        dft_axis(a, total, stride, q, mre, mim);
        stride *= q;
    }
}

}  // namespace detail

// Dense complex state over a register layout. Operations mutate in place;
// every unitary step asserts the norm stays within 1e-9 of 1.
class StateVector {
  public:
    explicit StateVector(RegisterLayout layout)
        : layout_(std::move(layout)), amps_(layout_.total_dim(), Amp(0.0, 0.0)) {}

    static StateVector basis(RegisterLayout layout, const std::vector<std::uint64_t>& values) {
        StateVector st(std::move(layout));
        if (values.size() != st.layout_.registers().size())
            throw std::invalid_argument("StateVector: one value per register required");
        std::uint64_t idx = 0;
        for (std::size_t r = 0; r < values.size(); ++r) {
            if (values[r] >= st.layout_.registers()[r].dim)
                throw std::invalid_argument("StateVector: basis value out of range");
            idx += values[r] * st.layout_.stride(r);
        }
        st.amps_[idx] = Amp(1.0, 0.0);
        return st;
    }

    const RegisterLayout& layout() const { return layout_; }
    std::vector<Amp>& amps() { return amps_; }
    const std::vector<Amp>& amps() const { return amps_; }

    double norm() const {
        double acc = 0.0;
        for (const Amp& a : amps_) acc += std::norm(a);
        return std::sqrt(acc);
    }
    void assert_norm(double tol = 1e-9) const {
        if (std::abs(norm() - 1.0) > tol)
            throw std::logic_error("StateVector: norm drifted beyond tolerance");
    }

    // QFT (or its inverse) applied slot-wise to one named register.
    void apply_qft(const std::string& reg_name, bool inverse = false) {
        const std::size_t r = layout_.index_of(reg_name);
        const auto& reg = layout_.registers()[r];
        detail::qft_block(amps_.data(), layout_.total_dim(), layout_.stride(r),
                          static_cast<std::uint32_t>(reg.q), reg.slots, inverse);
        assert_norm();
    }

    // Probability mass of each basis value of one register.
    std::vector<double> marginal(const std::string& reg_name) const {
        const std::size_t r = layout_.index_of(reg_name);
        std::vector<double> out(layout_.registers()[r].dim, 0.0);
        const std::uint64_t stride = layout_.stride(r);
        const std::uint64_t dim = layout_.registers()[r].dim;
        for (std::uint64_t idx = 0; idx < amps_.size(); ++idx)
            out[(idx / stride) % dim] += std::norm(amps_[idx]);
        return out;
    }

    // Total squared amplitude on basis states whose register value satisfies
    // the predicate (the query mass of that input set).
    double query_mass(const std::string& reg_name,
                      const std::function<bool(std::uint64_t)>& target) const {
        const std::vector<double> marg = marginal(reg_name);
        double acc = 0.0;
        for (std::uint64_t v = 0; v < marg.size(); ++v)
            if (target(v)) acc += marg[v];
        return acc;
    }

    // Debug dump: 8-byte little-endian dimension header, then float64
    // (re, im) pairs.
    void dump_amplitudes(const std::string& path) const {
        static_assert(std::endian::native == std::endian::little,
                      "amplitude dump assumes a little-endian host");
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("dump_amplitudes: cannot open " + path);
        const std::uint64_t dim = amps_.size();
        out.write(reinterpret_cast<const char*>(&dim), sizeof(dim));
        for (const Amp& a : amps_) {
            const double re = a.real(), im = a.imag();
            out.write(reinterpret_cast<const char*>(&re), sizeof(re));
            out.write(reinterpret_cast<const char*>(&im), sizeof(im));
        }
    }

  private:
    RegisterLayout layout_;
    std::vector<Amp> amps_;
};

}  // namespace codeint
