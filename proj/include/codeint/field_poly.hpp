#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace codeint {

using FieldElem = std::uint32_t;

// Prime field F_p with all element values canonicalized to [0, p).
// Primality is checked by trial division; moduli here are desk-scale.
class PrimeField {
  public:
    explicit PrimeField(std::uint64_t p) : p_(p) {
        if (!is_prime(p)) throw std::invalid_argument("PrimeField: modulus " + std::to_string(p) + " is not prime");
    }

    std::uint64_t modulus() const { return p_; }

    FieldElem reduce(std::int64_t v) const {
        std::int64_t r = v % static_cast<std::int64_t>(p_);
        if (r < 0) r += static_cast<std::int64_t>(p_);
        return static_cast<FieldElem>(r);
    }

    FieldElem add(FieldElem a, FieldElem b) const {
        std::uint64_t s = std::uint64_t(a) + b;
        if (s >= p_) s -= p_;
        return static_cast<FieldElem>(s);
    }
    FieldElem sub(FieldElem a, FieldElem b) const {
        return a >= b ? a - b : static_cast<FieldElem>(a + p_ - b);
    }
    FieldElem neg(FieldElem a) const { return a == 0 ? 0 : static_cast<FieldElem>(p_ - a); }
    FieldElem mul(FieldElem a, FieldElem b) const {
        return static_cast<FieldElem>((std::uint64_t(a) * b) % p_);
    }

    FieldElem inv(FieldElem a) const {
        if (a == 0) throw std::domain_error("PrimeField: inverse of zero");
        // extended Euclid on (a, p)
        std::int64_t t = 0, new_t = 1;
        std::int64_t r = static_cast<std::int64_t>(p_), new_r = static_cast<std::int64_t>(a);
        while (new_r != 0) {
            std::int64_t q = r / new_r;
            std::int64_t tmp = t - q * new_t;
            t = new_t; new_t = tmp;
            tmp = r - q * new_r;
            r = new_r; new_r = tmp;
        }
        return reduce(t);
    }

    FieldElem pow(FieldElem a, std::uint64_t e) const {
        FieldElem base = a, acc = 1;
        while (e) {
            if (e & 1) acc = mul(acc, base);
            base = mul(base, base);
            e >>= 1;
        }
        return acc;
    }

    // Binomial coefficient C(n, k) mod p via Pascal's triangle with
    // per-step reduction, so no factorial overflow in characteristic p.
    FieldElem binomial(std::uint32_t n, std::uint32_t k) const {
        if (k > n) return 0;
        std::vector<FieldElem> row(n + 1, 0);
        row[0] = 1;
        for (std::uint32_t i = 1; i <= n; ++i)
            for (std::uint32_t j = std::min(i, k); j >= 1; --j)
                row[j] = add(row[j], row[j - 1]);
        return row[k];
    }

    bool operator==(const PrimeField& o) const { return p_ == o.p_; }
    bool operator!=(const PrimeField& o) const { return p_ != o.p_; }

    static bool is_prime(std::uint64_t p) {
        if (p < 2) return false;
        for (std::uint64_t d = 2; d * d <= p; ++d)
            if (p % d == 0) return false;
        return true;
    }

  private:
    std::uint64_t p_;
};

// Univariate polynomial over a prime field, coefficients low-degree first,
// trailing coefficient nonzero unless the polynomial is zero.
class Polynomial {
  public:
    // Sentinel degree of the zero polynomial; never a valid degree.
    static constexpr int kZeroDegree = std::numeric_limits<int>::min();

    Polynomial(PrimeField field, std::vector<FieldElem> coeffs)
        : field_(field), coeffs_(std::move(coeffs)) {
        for (FieldElem c : coeffs_)
            if (c >= field_.modulus()) throw std::invalid_argument("Polynomial: coefficient out of range");
        trim();
    }

    static Polynomial zero(PrimeField field) { return Polynomial(field, {}); }
    static Polynomial constant(PrimeField field, FieldElem c) {
        return Polynomial(field, {field.reduce(static_cast<std::int64_t>(c))});
    }
    // X - a
    static Polynomial x_minus(PrimeField field, FieldElem a) {
        return Polynomial(field, {field.neg(a), 1});
    }

    const PrimeField& field() const { return field_; }
    const std::vector<FieldElem>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return coeffs_.empty() ? kZeroDegree : static_cast<int>(coeffs_.size()) - 1; }
    FieldElem coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : 0; }
    FieldElem leading() const { return coeffs_.empty() ? 0 : coeffs_.back(); }

    Polynomial operator+(const Polynomial& o) const {
        check_field(o);
        std::vector<FieldElem> c(std::max(coeffs_.size(), o.coeffs_.size()), 0);
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = field_.add(coeff(i), o.coeff(i));
        return Polynomial(field_, std::move(c));
    }
    Polynomial operator-(const Polynomial& o) const {
        check_field(o);
        std::vector<FieldElem> c(std::max(coeffs_.size(), o.coeffs_.size()), 0);
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = field_.sub(coeff(i), o.coeff(i));
        return Polynomial(field_, std::move(c));
    }
    Polynomial operator*(const Polynomial& o) const {
        check_field(o);
        if (is_zero() || o.is_zero()) return zero(field_);
        std::vector<FieldElem> c(coeffs_.size() + o.coeffs_.size() - 1, 0);
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            if (coeffs_[i] == 0) continue;
            for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
                c[i + j] = field_.add(c[i + j], field_.mul(coeffs_[i], o.coeffs_[j]));
        }
        return Polynomial(field_, std::move(c));
    }
    Polynomial scale(FieldElem a) const {
        std::vector<FieldElem> c(coeffs_);
        for (auto& x : c) x = field_.mul(x, a);
        return Polynomial(field_, std::move(c));
    }

    // Euclidean division: returns (quotient, remainder) with deg r < deg d.
    std::pair<Polynomial, Polynomial> divmod(const Polynomial& d) const {
        check_field(d);
        if (d.is_zero()) throw std::domain_error("Polynomial: division by zero polynomial");
        if (degree() < d.degree()) return {zero(field_), *this};
        std::vector<FieldElem> rem(coeffs_);
        std::vector<FieldElem> quot(coeffs_.size() - d.coeffs_.size() + 1, 0);
        const FieldElem lead_inv = field_.inv(d.leading());
        for (int i = static_cast<int>(rem.size()) - 1; i >= static_cast<int>(d.coeffs_.size()) - 1; --i) {
            if (rem[i] == 0) continue;
            const FieldElem q = field_.mul(rem[i], lead_inv);
            const std::size_t shift = i - (d.coeffs_.size() - 1);
            quot[shift] = q;
            for (std::size_t j = 0; j < d.coeffs_.size(); ++j)
                rem[shift + j] = field_.sub(rem[shift + j], field_.mul(q, d.coeffs_[j]));
        }
        return {Polynomial(field_, std::move(quot)), Polynomial(field_, std::move(rem))};
    }
    Polynomial operator%(const Polynomial& d) const { return divmod(d).second; }
    Polynomial operator/(const Polynomial& d) const { return divmod(d).first; }

    FieldElem eval(FieldElem x) const {
        FieldElem acc = 0;
        for (std::size_t i = coeffs_.size(); i-- > 0;)
            acc = field_.add(field_.mul(acc, x), coeffs_[i]);
        return acc;
    }

    bool operator==(const Polynomial& o) const {
        return field_ == o.field_ && coeffs_ == o.coeffs_;
    }
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

  private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }
    void check_field(const Polynomial& o) const {
        if (field_ != o.field_) throw std::invalid_argument("Polynomial: operands over different fields");
    }

    PrimeField field_;
    std::vector<FieldElem> coeffs_;
};

// i'th Hasse derivative: f^{(i)}(X) = sum_{j >= i} C(j, i) a_j X^{j-i}.
inline Polynomial hasse_derivative(const Polynomial& f, std::uint32_t i) {
    if (i == 0) return f;
    const auto& field = f.field();
    if (f.is_zero() || f.degree() < static_cast<int>(i)) return Polynomial::zero(field);
    const auto& a = f.coeffs();
    std::vector<FieldElem> c(a.size() - i, 0);
    // Pascal column C(j, i) for j = i .. deg, built incrementally mod p:
    // C(j+1, i) = C(j, i) * (j+1) / (j+1-i) would divide, so walk the
    // triangle rows instead.
    std::vector<FieldElem> row(a.size(), 0);  // row[j] = C(j, i)
    {
        std::vector<FieldElem> prev(a.size(), 0), cur(a.size(), 0);
        for (std::size_t j = 0; j < a.size(); ++j) prev[j] = 1;  // C(j, 0)
        for (std::uint32_t lvl = 1; lvl <= i; ++lvl) {
            for (std::size_t j = 0; j < a.size(); ++j) {
                if (j < lvl) { cur[j] = 0; continue; }
                // C(j, lvl) = C(j-1, lvl) + C(j-1, lvl-1)
                cur[j] = field.add(j >= 1 ? cur[j - 1] : 0, prev[j - 1]);
            }
            std::swap(prev, cur);
        }
        row = prev;
    }
    for (std::size_t j = i; j < a.size(); ++j)
        c[j - i] = field.mul(row[j], a[j]);
    return Polynomial(field, std::move(c));
}

// i'th formal (iterated) derivative: f^{[i]} = sum_{j >= i} j!/(j-i)! a_j X^{j-i}.
// Satisfies f^{[i]} = (i! mod p) * f^{(i)}.
inline Polynomial formal_derivative(const Polynomial& f, std::uint32_t i) {
    if (i == 0) return f;
    const auto& field = f.field();
    if (f.is_zero() || f.degree() < static_cast<int>(i)) return Polynomial::zero(field);
    const auto& a = f.coeffs();
    std::vector<FieldElem> c(a.size() - i, 0);
    for (std::size_t j = i; j < a.size(); ++j) {
        FieldElem fall = 1;  // j * (j-1) * ... * (j-i+1) mod p
        for (std::uint32_t t = 0; t < i; ++t)
            fall = field.mul(fall, field.reduce(static_cast<std::int64_t>(j - t)));
        c[j - i] = field.mul(fall, a[j]);
    }
    return Polynomial(field, std::move(c));
}

// Evaluations (f^{(0)}(x), ..., f^{(count-1)}(x)).
inline std::vector<FieldElem> hasse_evals(const Polynomial& f, FieldElem x, std::uint32_t count) {
    std::vector<FieldElem> out(count, 0);
    for (std::uint32_t i = 0; i < count; ++i)
        out[i] = hasse_derivative(f, i).eval(x);
    return out;
}

// Inverse of g modulo m via extended Euclid; requires gcd(g, m) constant.
inline Polynomial poly_inverse_mod(const Polynomial& g, const Polynomial& m) {
    if (m.degree() < 1) throw std::invalid_argument("poly_inverse_mod: modulus must have degree >= 1");
    const auto& field = g.field();
    Polynomial r0 = m, r1 = g % m;
    Polynomial t0 = Polynomial::zero(field), t1 = Polynomial::constant(field, 1);
    while (!r1.is_zero()) {
        auto [q, r2] = r0.divmod(r1);
        Polynomial t2 = t0 - q * t1;
        r0 = r1; r1 = r2;
        t0 = t1; t1 = t2;
    }
    if (r0.degree() != 0) throw std::domain_error("poly_inverse_mod: operand not invertible modulo m");
    return (t0.scale(field.inv(r0.coeff(0)))) % m;
}

// Largest i such that all Hasse derivatives of order < i vanish at alpha.
inline std::uint32_t multiplicity_at(const Polynomial& f, FieldElem alpha) {
    if (f.is_zero()) throw std::invalid_argument("multiplicity_at: zero polynomial");
    std::uint32_t m = 0;
    while (static_cast<int>(m) <= f.degree() && hasse_derivative(f, m).eval(alpha) == 0) ++m;
    return m;
}

}  // namespace codeint
