#include <catch2/catch_amalgamated.hpp>

#include "codeint/field_poly.hpp"
#include "codeint/rng.hpp"

using namespace codeint;

namespace {
Polynomial random_poly(const PrimeField& field, int max_deg, SplitMix64& rng) {
    std::vector<FieldElem> coeffs(max_deg + 1);
    for (auto& c : coeffs) c = static_cast<FieldElem>(rng.next_below(field.modulus()));
    return Polynomial(field, std::move(coeffs));
}
}  // namespace

TEST_CASE("prime field construction rejects composites") {
    CHECK_NOTHROW(PrimeField(2));
    CHECK_NOTHROW(PrimeField(13));
    CHECK_THROWS_AS(PrimeField(1), std::invalid_argument);
    CHECK_THROWS_AS(PrimeField(4), std::invalid_argument);
    CHECK_THROWS_AS(PrimeField(91), std::invalid_argument);  // 7*13
}

TEST_CASE("field arithmetic canonicalizes to [0, p)") {
    PrimeField f7(7);
    CHECK(f7.reduce(-1) == 6);
    CHECK(f7.add(5, 4) == 2);
    CHECK(f7.sub(2, 5) == 4);
    CHECK(f7.mul(3, 5) == 1);
    for (FieldElem a = 1; a < 7; ++a) CHECK(f7.mul(a, f7.inv(a)) == 1);
    CHECK_THROWS_AS(f7.inv(0), std::domain_error);
}

TEST_CASE("polynomial ops match hand results") {
    PrimeField f2(2), f5(5);
    // (X+1)(X+1) over F_2 = X^2 + 1
    Polynomial xp1(f2, {1, 1});
    CHECK((xp1 * xp1).coeffs() == std::vector<FieldElem>{1, 0, 1});
    // eval(X^2+3, 2) over F_5 = 2
    Polynomial g(f5, {3, 0, 1});
    CHECK(g.eval(2) == 2);
    // a mod a = 0
    Polynomial a(f5, {1, 2, 3});
    CHECK((a % a).is_zero());
    CHECK_THROWS_AS(a.divmod(Polynomial::zero(f5)), std::domain_error);
    // field mismatch
    CHECK_THROWS_AS(xp1 + g, std::invalid_argument);
}

TEST_CASE("zero polynomial degree is a sentinel") {
    PrimeField f5(5);
    CHECK(Polynomial::zero(f5).degree() == Polynomial::kZeroDegree);
    CHECK(Polynomial::zero(f5).degree() < 0);
    CHECK(Polynomial(f5, {0, 0, 0}).is_zero());
    CHECK(Polynomial::constant(f5, 3).degree() == 0);
}

TEST_CASE("hasse derivative examples") {
    PrimeField f7(7);
    Polynomial f(f7, {0, 2, 0, 1});  // X^3 + 2X
    CHECK(hasse_derivative(f, 1).coeffs() == std::vector<FieldElem>{2, 0, 3});
    Polynomial x3(f7, {0, 0, 0, 1});
    CHECK(hasse_derivative(x3, 2).coeffs() == std::vector<FieldElem>{0, 3});
    CHECK(hasse_derivative(f, 0) == f);
    CHECK(hasse_derivative(f, 9).is_zero());
}

TEST_CASE("formal derivative examples and factorial relation") {
    PrimeField f2(2), f7(7);
    CHECK(formal_derivative(Polynomial(f2, {0, 0, 1}), 1).is_zero());  // 2X = 0 in char 2
    CHECK(formal_derivative(Polynomial(f7, {0, 0, 0, 1}), 2).coeffs() ==
          std::vector<FieldElem>{0, 6});
    SplitMix64 rng(11);
    for (int t = 0; t < 50; ++t) {
        Polynomial f = random_poly(f7, 6, rng);
        for (std::uint32_t i = 0; i <= 4; ++i) {
            // f^{[i]} = (i! mod p) f^{(i)}
            FieldElem fact = 1;
            for (std::uint32_t j = 2; j <= i; ++j) fact = f7.mul(fact, j);
            CHECK(formal_derivative(f, i) == hasse_derivative(f, i).scale(fact));
        }
        CHECK(formal_derivative(f, 0) == f);
    }
}

TEST_CASE("hasse product rule holds exactly") {
    for (std::uint64_t p : {2ull, 5ull, 7ull}) {
        PrimeField field(p);
        SplitMix64 rng(p);
        for (int t = 0; t < 40; ++t) {
            Polynomial f = random_poly(field, 5, rng);
            Polynomial g = random_poly(field, 5, rng);
            for (std::uint32_t i = 0; i <= 4; ++i) {
                Polynomial lhs = hasse_derivative(f * g, i);
                Polynomial rhs = Polynomial::zero(field);
                for (std::uint32_t k = 0; k <= i; ++k)
                    rhs = rhs + hasse_derivative(f, k) * hasse_derivative(g, i - k);
                CHECK(lhs == rhs);
            }
        }
    }
}

TEST_CASE("hasse shift property: f^{(i)}(a) is the X^i coefficient of f(X+a)") {
    PrimeField f11(11);
    SplitMix64 rng(3);
    for (int t = 0; t < 40; ++t) {
        Polynomial f = random_poly(f11, 6, rng);
        const FieldElem a = static_cast<FieldElem>(rng.next_below(11));
        // f(X + a) via composition with (X + a)
        Polynomial shifted = Polynomial::zero(f11);
        Polynomial xpa(f11, {a, 1});
        Polynomial pow = Polynomial::constant(f11, 1);
        for (std::size_t j = 0; j < f.coeffs().size(); ++j) {
            shifted = shifted + pow.scale(f.coeffs()[j]);
            pow = pow * xpa;
        }
        for (int i = 0; i <= f.degree(); ++i)
            CHECK(hasse_derivative(f, static_cast<std::uint32_t>(i)).eval(a) ==
                  shifted.coeff(static_cast<std::size_t>(i)));
    }
}

TEST_CASE("multiplicity Schwartz-Zippel: total multiplicity at most the degree") {
    for (std::uint64_t p : {3ull, 5ull, 7ull}) {
        PrimeField field(p);
        SplitMix64 rng(p + 100);
        for (int t = 0; t < 60; ++t) {
            Polynomial f = random_poly(field, 5, rng);
            if (f.is_zero()) continue;
            std::uint32_t total = 0;
            for (FieldElem a = 0; a < field.modulus(); ++a) total += multiplicity_at(f, a);
            CHECK(total <= static_cast<std::uint32_t>(f.degree()));
        }
    }
}

TEST_CASE("poly_inverse_mod examples and random coprime pairs") {
    PrimeField f5(5);
    // g = 1, m = X^2
    Polynomial m(f5, {0, 0, 1});
    CHECK(poly_inverse_mod(Polynomial::constant(f5, 1), m) == Polynomial::constant(f5, 1));
    // g = X+1, m = X: inverse is 1
    CHECK(poly_inverse_mod(Polynomial(f5, {1, 1}), Polynomial(f5, {0, 1})) ==
          Polynomial::constant(f5, 1));
    // mu_1 for alphas {0,1,2}, m = X: ((0-1)(0-2))^{-1} = 3; oracle: direct
    // multiplication check
    Polynomial mu1 = Polynomial::x_minus(f5, 1) * Polynomial::x_minus(f5, 2);
    Polynomial inv = poly_inverse_mod(mu1, Polynomial(f5, {0, 1}));
    CHECK(inv == Polynomial::constant(f5, 3));
    CHECK(((mu1 * inv) % Polynomial(f5, {0, 1})) == Polynomial::constant(f5, 1));

    SplitMix64 rng(17);
    PrimeField f7(7);
    int tested = 0;
    while (tested < 40) {
        Polynomial g = random_poly(f7, 4, rng);
        Polynomial mm = random_poly(f7, 3, rng);
        if (mm.degree() < 1 || g.is_zero()) continue;
        try {
            Polynomial h = poly_inverse_mod(g, mm);
            CHECK(((g * h) % mm) == Polynomial::constant(f7, 1));
            CHECK(h.degree() < mm.degree());
            ++tested;
        } catch (const std::domain_error&) {
            // shared factor; skip
        }
    }
    // non-invertible: g = X mod m = X^2
    CHECK_THROWS_AS(poly_inverse_mod(Polynomial(f5, {0, 1}), m), std::domain_error);
}

TEST_CASE("binomial coefficients reduce mod p") {
    PrimeField f7(7);
    CHECK(f7.binomial(3, 1) == 3);
    CHECK(f7.binomial(3, 2) == 3);
    CHECK(f7.binomial(7, 3) == 0);  // 35 = 0 mod 7
    CHECK(f7.binomial(4, 5) == 0);
    PrimeField f2(2);
    CHECK(f2.binomial(4, 2) == 0);  // 6 mod 2
}
