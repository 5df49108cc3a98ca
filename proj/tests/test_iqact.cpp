#include "iqsym/iqact.hpp"

#include "doctest.h"

#include <random>

using namespace iqsym;

namespace {

// coefficients of a one-variable B_i-polynomial in plain powers of B
std::map<long, Scalar> poly_of_b(const FormalElement& fe, const SatakeDatum& s, size_t i) {
    std::map<long, Scalar> out;
    for (const auto& w : fe.words()) {
        long deg = 0;
        Scalar denom(1);
        for (const auto& l : w.letters) {
            REQUIRE(l.kind == Letter::GenDP);
            REQUIRE(l.gen == UGen::B);
            REQUIRE(l.i == i);
            deg += l.n;
            denom *= qfun::q_factorial(l.n, s.d(i));
        }
        Scalar c = w.coef / denom;  // coefficient of plain B^deg
        auto [it, inserted] = out.emplace(deg, c);
        if (!inserted) it->second += c;
    }
    for (auto it = out.begin(); it != out.end();)
        it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

FormalElement random_iq_element(std::mt19937& gen, const SatakeDatum& s) {
    auto pick = [&](long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(gen); };
    FormalElement fe;
    long terms = pick(1, 3);
    for (long t = 0; t < terms; ++t) {
        FormalElement w = FormalElement::scalar(Scalar(pick(-3, 3)) * Scalar::v_pow(static_cast<int>(pick(-2, 2))));
        if (w.is_zero()) w = FormalElement::one();
        long len = pick(0, 3);
        for (long k = 0; k < len; ++k) {
            size_t i = static_cast<size_t>(pick(0, static_cast<long>(s.rank()) - 1));
            switch (pick(0, 2)) {
                case 0: w = w * FormalElement::B(i, pick(1, 2)); break;
                case 1: w = w * FormalElement::k(i, pick(-2, 2)); break;
                default:
                    if (s.tau[i] == i) w = w * FormalElement::idp(i, static_cast<int>(pick(0, 1)), pick(1, 2));
                    else w = w * FormalElement::B(i, 1);
            }
        }
        fe = fe + w;
    }
    return fe;
}

}  // namespace

TEST_CASE("B_i and k_i basics") {
    SatakeDatum a1 = build_satake(cartan_A(1), tau_identity(1));
    ParameterPack star = ParameterPack::star(a1);
    for (long n = 1; n <= 4; ++n) {
        ModuleSpace m = build_simple(a1, {n});
        Operator b = bi_operator(m, star, 0);
        // B eta = F eta
        CHECK(b.apply(sv::unit(0)) == m.f_op(0).apply(sv::unit(0)));
    }
    SatakeDatum a3 = build_satake(cartan_A(3), tau_flip(3));
    ModuleSpace m = build_simple(a3, {1, 0, 0});
    ParameterPack p = ParameterPack::diamond(a3);
    // k_i acts by q^{<h_i - h_{tau i}, wt>}
    Operator k0 = ki_operator(m, 0);
    for (size_t v = 0; v < m.dim(); ++v) {
        SparseVec img = k0.apply(sv::unit(v));
        REQUIRE(img.size() == 1);
        CHECK(img[0].second == Scalar::q_pow(static_cast<int>(m.weight(v)[0] - m.weight(v)[2])));
    }
    // B_i shifts iweight classes by -alpha_i
    Operator b0 = bi_operator(m, p, 0);
    for (size_t v = 0; v < m.dim(); ++v)
        for (const auto& [r, c] : b0.apply(sv::unit(v))) {
            (void)c;
            XVec shifted = m.weight(v);
            XVec a = a3.alpha(0);
            for (size_t k = 0; k < 3; ++k) shifted[k] -= a[k];
            CHECK(iweight_normalize(a3, m.weight(r)) == iweight_normalize(a3, shifted));
        }
}

TEST_CASE("idivided power expansions") {
    SatakeDatum a1 = build_satake(cartan_A(1), tau_identity(1));
    ParameterPack star = ParameterPack::star(a1);  // vs = q^{-1}
    Scalar q = Scalar::q_pow(1);
    // n = 0, 1
    CHECK(idivided_power_expanded(a1, star, 0, 0, 0) == FormalElement::one());
    CHECK(idivided_power_expanded(a1, star, 0, 0, 1) == FormalElement::B(0));
    CHECK(idivided_power_expanded(a1, star, 0, 1, 1) == FormalElement::B(0));
    // parity 0, n = 2: B^2/[2] = B^{(2)}
    CHECK(idivided_power_expanded(a1, star, 0, 0, 2) == FormalElement::B(0, 2));
    // parity 1, n = 2: (B^2 - q vs)/[2]
    Scalar qvs = q * star.sigma(0);
    CHECK(idivided_power_expanded(a1, star, 0, 1, 2) ==
          FormalElement::B(0, 2) - (qvs / qfun::q_integer(2)) * FormalElement::one());
}

TEST_CASE("idivided power recursion (2.24)-pattern at several parameters") {
    SatakeDatum a1 = build_satake(cartan_A(1), tau_identity(1));
    std::vector<ParameterPack> packs = {
        ParameterPack::diamond(a1), ParameterPack::star(a1),
        ParameterPack::constant(a1, SqrtScalar(Scalar(1))),                   // vs = 1
        ParameterPack::constant(a1, SqrtScalar(Scalar(1), 6)),                // vs = q^3
    };
    for (const auto& pack : packs) {
        Scalar qvs = Scalar::q_pow(1) * pack.sigma(0);
        for (int parity = 0; parity <= 1; ++parity) {
            for (long mth = 0; mth <= 10; ++mth) {
                FormalElement lhs = FormalElement::B(0) * idivided_power_expanded(a1, pack, 0, parity, mth);
                FormalElement rhs =
                    qfun::q_integer(mth + 1) * idivided_power_expanded(a1, pack, 0, parity, mth + 1);
                if ((mth % 2) == parity)
                    rhs = rhs + (qvs * qfun::q_integer(mth)) * idivided_power_expanded(a1, pack, 0, parity, mth - 1);
                CHECK(poly_of_b(lhs, a1, 0) == poly_of_b(rhs, a1, 0));
            }
        }
    }
}

TEST_CASE("matrix and formal idivided powers agree") {
    SatakeDatum a1 = build_satake(cartan_A(1), tau_identity(1));
    ParameterPack star = ParameterPack::star(a1);
    ModuleSpace m = build_simple(a1, {4});
    EvalContext ctx(m, star);
    for (int parity = 0; parity <= 1; ++parity)
        for (long n = 0; n <= 6; ++n)
            CHECK(formal_eval(idivided_power_expanded(a1, star, 0, parity, n), ctx) ==
                  ctx.idp_op(0, parity, n));
}

TEST_CASE("iweight decomposition and integrability") {
    SatakeDatum a1 = build_satake(cartan_A(1), tau_identity(1));
    ParameterPack star1 = ParameterPack::star(a1);
    ModuleSpace l2 = build_simple(a1, {2});
    auto classes = iweight_decompose(l2);
    REQUIRE(classes.size() == 1);
    CHECK(classes[0].indices.size() == 3);
    EvalContext ctx(l2, star1);
    CHECK(integrability_bound(ctx, classes[0], 0) <= 3);

    SatakeDatum a3 = build_satake(cartan_A(3), tau_flip(3));
    ParameterPack star3 = ParameterPack::star(a3);
    ModuleSpace m = build_simple(a3, {1, 0, 0});
    auto cls3 = iweight_decompose(m);
    size_t total = 0;
    for (auto& c : cls3) {
        total += c.indices.size();
        // lambda_{i,tau} constant on each class
        for (size_t v : c.indices)
            CHECK(m.weight(v)[0] - m.weight(v)[2] == iweight_itau(a3, c.iweight, 0));
    }
    CHECK(total == m.dim());
    EvalContext ctx3(m, star3);
    for (auto& c : cls3)
        for (size_t i = 0; i < 3; ++i) CHECK_NOTHROW(integrability_bound(ctx3, c, i));
}

TEST_CASE("formal evaluation is a homomorphism") {
    SatakeDatum a3 = build_satake(cartan_A(3), tau_flip(3));
    ParameterPack p = ParameterPack::star(a3);
    ModuleSpace m = build_simple(a3, {0, 1, 0});
    EvalContext ctx(m, p);
    CHECK(formal_eval(FormalElement::B(0), ctx) == bi_operator(m, p, 0));
    CHECK(formal_eval(FormalElement::k(0, -1), ctx) == ki_operator(m, 0, -1));
    std::mt19937 gen(99u);
    for (int t = 0; t < 60; ++t) {
        FormalElement x = random_iq_element(gen, a3);
        FormalElement y = random_iq_element(gen, a3);
        CHECK(formal_eval(x * y, ctx) == formal_eval(x, ctx).compose(formal_eval(y, ctx)));
        CHECK(formal_eval(x + y, ctx) == formal_eval(x, ctx) + formal_eval(y, ctx));
    }
}

TEST_CASE("q-Serre combination evaluates to zero") {
    SatakeDatum a2 = build_satake(cartan_A(2), tau_identity(2));
    ParameterPack p = ParameterPack::star(a2);
    ModuleSpace m = build_simple(a2, {1, 1});
    EvalContext ctx(m, p);
    for (size_t i : {0u, 1u}) {
        size_t j = 1 - i;
        long bound = 1 - a2.c(i, j);
        FormalElement serre;
        for (long r = 0; r <= bound; ++r) {
            Scalar sgn(r % 2 ? -1 : 1);
            serre = serre + sgn * (FormalElement::E(i, r) * FormalElement::E(j) * FormalElement::E(i, bound - r));
        }
        CHECK(formal_eval(serre, ctx).is_zero());
    }
}

TEST_CASE("involution letter rules") {
    SatakeDatum a3 = build_satake(cartan_A(3), tau_flip(3));
    ParameterPack star = ParameterPack::star(a3);
    // sigma_tau: B_i -> B_{tau i}, k_i -> k_i
    CHECK(involution_apply(FormalElement::B(0), InvolutionKind::sigma_tau, a3, star) == FormalElement::B(2));
    CHECK(involution_apply(FormalElement::k(0), InvolutionKind::sigma_tau, a3, star) == FormalElement::k(0));
    // sigma: E_i -> E_i, K_mu -> K_{-mu}
    CHECK(involution_apply(FormalElement::E(1), InvolutionKind::sigma, a3, star) == FormalElement::E(1));
    CHECK(involution_apply(FormalElement::K({1, 0, -1}), InvolutionKind::sigma, a3, star) ==
          FormalElement::K({-1, 0, 1}));
    CHECK_THROWS_AS(involution_apply(FormalElement::B(0), InvolutionKind::sigma, a3, star), IqactError);
    // anti-involutions reverse words
    FormalElement w = FormalElement::B(0) * FormalElement::B(1);
    CHECK(involution_apply(w, InvolutionKind::sigma_tau, a3, star) ==
          FormalElement::B(1) * FormalElement::B(2));
    // psi_iota fixes matched idivided powers at vs_star (split index 1)
    FormalElement idp = idivided_power_expanded(a3, star, 1, 0, 4);
    CHECK(involution_apply(idp, InvolutionKind::psi_iota, a3, star) == idp);
    // sigma_tau = sigma_iota . tau_hat at balanced parameters
    std::mt19937 gen(7u);
    for (int t = 0; t < 100; ++t) {
        FormalElement x = random_iq_element(gen, a3);
        CHECK(involution_apply(x, InvolutionKind::sigma_tau, a3, star) ==
              involution_apply(involution_apply(x, InvolutionKind::tau_hat, a3, star),
                               InvolutionKind::sigma_iota, a3, star));
    }
    // involutivity
    for (int t = 0; t < 50; ++t) {
        FormalElement x = random_iq_element(gen, a3);
        for (auto kind : {InvolutionKind::sigma_tau, InvolutionKind::sigma_iota, InvolutionKind::tau_hat,
                          InvolutionKind::psi_iota})
            CHECK(involution_apply(involution_apply(x, kind, a3, star), kind, a3, star) == x);
    }
}

TEST_CASE("phi rescaling") {
    SatakeDatum a1 = build_satake(cartan_A(1), tau_identity(1));
    ParameterPack diamond = ParameterPack::diamond(a1);
    ParameterPack star = ParameterPack::star(a1);
    ParameterPack one = ParameterPack::constant(a1, SqrtScalar(Scalar(1)));
    std::mt19937 gen(13u);
    for (int t = 0; t < 50; ++t) {
        FormalElement x = random_iq_element(gen, a1);
        CHECK(phi_rescale(x, star, star, a1) == x);
        // composition law
        CHECK(phi_rescale(phi_rescale(x, diamond, star, a1), star, one, a1) ==
              phi_rescale(x, diamond, one, a1));
    }
    // B from diamond to star in split type: the stored-root ratio is the
    // kernel-coherent square root of -q^{-1}
    FormalElement img = phi_rescale(FormalElement::B(0), diamond, star, a1);
    CHECK(img == (-Scalar::unit_i() * Scalar::v_pow(-1)) * FormalElement::B(0));
    Scalar ratio_sq = (diamond.sqrt_sigma(0) / star.sqrt_sigma(0)).square();
    CHECK(ratio_sq == -Scalar::q_pow(-1));
    // Lemma-2.14 pattern: phi(idp at from) = ratio^n idp at to
    SqrtScalar ratio = diamond.sqrt_sigma(0) / star.sqrt_sigma(0);
    for (long n = 0; n <= 5; ++n)
        for (int parity = 0; parity <= 1; ++parity) {
            FormalElement lhs = phi_rescale(idivided_power_expanded(a1, diamond, 0, parity, n), diamond, star, a1);
            FormalElement rhs = ratio.pow(static_cast<int>(n)).to_scalar() *
                                idivided_power_expanded(a1, star, 0, parity, n);
            CHECK(poly_of_b(lhs, a1, 0) == poly_of_b(rhs, a1, 0));
        }
}

TEST_CASE("formal element serialization round-trips") {
    SatakeDatum a3 = build_satake(cartan_A(3), tau_flip(3));
    std::mt19937 gen(21u);
    for (int t = 0; t < 60; ++t) {
        FormalElement x = random_iq_element(gen, a3);
        CHECK(FormalElement::parse(x.to_string()) == x);
    }
    FormalElement mixed = Scalar::unit_i() * (FormalElement::K({1, 0, -1}) * FormalElement::idp(1, 0, 3) *
                                              FormalElement::xjn(0, 2) * FormalElement::k(0, -1));
    CHECK(FormalElement::parse(mixed.to_string()) == mixed);
    CHECK(FormalElement::parse("0").is_zero());
}
