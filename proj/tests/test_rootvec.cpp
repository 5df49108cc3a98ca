#include "iqsym/checks.hpp"

#include "doctest.h"

using namespace iqsym;

namespace {

void require_clean(const CheckResult& r) {
    for (const auto& f : r) FAIL_CHECK(f.detail);
    CHECK(r.empty());
}

}  // namespace

TEST_CASE("base cases of the root vector families") {
    SatakeDatum a2 = build_satake(cartan_A(2), tau_identity(2));
    for (long n = 1; n <= 2; ++n) {
        RootVectorElement b0 = split_root_vector(a2, 0, 1, n, 0);
        CHECK(b0.by_parity[0] == FormalElement::xjn(1, n));
        CHECK(b0.by_parity[1] == FormalElement::xjn(1, n));
    }
    SatakeDatum a3 = build_satake(cartan_A(3), tau_flip(3));
    CHECK(diagonal_root_vector(a3, 0, 1, 2, 0, 0) == FormalElement::xjn(1, 2));
    SatakeDatum a4 = build_satake(cartan_A(4), tau_flip(4));
    CHECK(qs_root_vector(a4, 1, 0, 1, 0, 0, 0) == FormalElement::xjn(0, 1));
    // negative indices give zero
    CHECK(split_root_vector(a2, 0, 1, 1, -1).by_parity[0].is_zero());
    CHECK(diagonal_root_vector(a3, 0, 1, 1, -1, 0).is_zero());
    CHECK(qs_root_vector(a4, 1, 0, 1, 0, -1, 2).is_zero());
}

TEST_CASE("split braid images match the conjugation oracle") {
    // A2 split (alpha = 1)
    SatakeDatum a2 = build_satake(cartan_A(2), tau_identity(2));
    for (XVec lam : {XVec{1, 0}, XVec{1, 1}, XVec{0, 2}}) {
        ModuleSpace m = build_simple(a2, lam);
        require_clean(checks::check_divided_power_images(m, 0, 1, 2, "A2 split"));
    }
    // B2 (alpha = 2 with i the short node acting on the long one)
    SatakeDatum b2 = build_satake(cartan_B2(), tau_identity(2));
    for (XVec lam : {XVec{1, 0}, XVec{0, 1}}) {
        ModuleSpace m = build_simple(b2, lam);
        require_clean(checks::check_divided_power_images(m, 1, 0, 2, "B2 alpha=2"));
        require_clean(checks::check_divided_power_images(m, 0, 1, 2, "B2 alpha=1"));
    }
    // G2 (alpha = 3)
    SatakeDatum g2 = build_satake(cartan_G2(), tau_identity(2));
    ModuleSpace mg = build_simple(g2, {0, 1});
    require_clean(checks::check_divided_power_images(mg, 1, 0, 1, "G2 alpha=3"));
    require_clean(checks::check_divided_power_images(mg, 0, 1, 1, "G2 alpha=1 long"));
}

TEST_CASE("split simplified top-degree form agrees with the general one") {
    SatakeDatum a2 = build_satake(cartan_A(2), tau_identity(2));
    ParameterPack diamond = ParameterPack::diamond(a2);
    for (XVec lam : {XVec{1, 1}, XVec{2, 0}}) {
        ModuleSpace m = build_simple(a2, lam);
        EvalContext ctx(m, diamond);
        for (long n = 1; n <= 2; ++n) {
            Operator gen = eval_root_vector(split_root_vector(a2, 0, 1, n, n), ctx, 0, -n);
            Operator simp = eval_root_vector(split_braid_image_simplified(a2, 0, 1, n), ctx, 0, -n);
            CHECK(gen == simp);
        }
    }
    // alpha = 3 in G2 (the general and simplified forms anchor differently)
    SatakeDatum g2 = build_satake(cartan_G2(), tau_identity(2));
    ParameterPack dg = ParameterPack::diamond(g2);
    ModuleSpace mg = build_simple(g2, {0, 1});
    EvalContext ctxg(mg, dg);
    for (int tbar : {0, 1}) {
        Operator gen = eval_root_vector(fix_xjn_parity(split_root_vector(g2, 1, 0, 1, 3), g2, 0, tbar),
                                        ctxg, 1, -3);
        Operator simp = eval_root_vector(
            fix_xjn_parity(split_braid_image_simplified(g2, 1, 0, 1), g2, 0, tbar), ctxg, 1, 0);
        CHECK(gen == simp);
    }
}

TEST_CASE("diagonal and quasi-split braid images match the conjugation oracle") {
    SatakeDatum a3 = build_satake(cartan_A(3), tau_flip(3));
    for (XVec lam : {XVec{1, 0, 0}, XVec{0, 1, 0}}) {
        ModuleSpace m = build_simple(a3, lam);
        require_clean(checks::check_divided_power_images(m, 0, 1, 2, "A3 diagonal"));
    }
    SatakeDatum a4 = build_satake(cartan_A(4), tau_flip(4));
    ModuleSpace m4 = build_simple(a4, {1, 0, 0, 0});
    require_clean(checks::check_divided_power_images(m4, 1, 0, 2, "A4 quasi-split"));
    ModuleSpace m42 = build_simple(a4, {0, 1, 0, 0});
    require_clean(checks::check_divided_power_images(m42, 1, 0, 1, "A4 quasi-split w2"));
}

TEST_CASE("closed forms against recursions") {
    SatakeDatum a2 = build_satake(cartan_A(2), tau_identity(2));
    require_clean(checks::check_rootvec_dual(build_simple(a2, {1, 1}), 0, 1, 2, "A2 split"));
    SatakeDatum b2 = build_satake(cartan_B2(), tau_identity(2));
    require_clean(checks::check_rootvec_dual(build_simple(b2, {1, 0}), 1, 0, 2, "B2 split"));
    SatakeDatum g2 = build_satake(cartan_G2(), tau_identity(2));
    require_clean(checks::check_rootvec_dual(build_simple(g2, {0, 1}), 1, 0, 1, "G2 split"));
    SatakeDatum a3 = build_satake(cartan_A(3), tau_flip(3));
    require_clean(checks::check_rootvec_dual(build_simple(a3, {1, 0, 0}), 0, 1, 2, "A3 diagonal"));
    require_clean(checks::check_rootvec_dual(build_simple(a3, {0, 1, 0}), 0, 1, 1, "A3 diagonal w2"));
    SatakeDatum a4 = build_satake(cartan_A(4), tau_flip(4));
    require_clean(checks::check_rootvec_dual(build_simple(a4, {1, 0, 0, 0}), 1, 0, 1, "A4 quasi-split"));
}

TEST_CASE("vanishing laws just past the bounds") {
    SatakeDatum a2 = build_satake(cartan_A(2), tau_identity(2));
    require_clean(checks::check_rootvec_vanishing(build_simple(a2, {1, 1}), 0, 1, 2, "A2 split"));
    SatakeDatum b2 = build_satake(cartan_B2(), tau_identity(2));
    require_clean(checks::check_rootvec_vanishing(build_simple(b2, {1, 0}), 1, 0, 1, "B2 split"));
    SatakeDatum a3 = build_satake(cartan_A(3), tau_flip(3));
    require_clean(checks::check_rootvec_vanishing(build_simple(a3, {1, 0, 0}), 0, 1, 2, "A3 diagonal"));
    require_clean(checks::check_rootvec_vanishing(build_simple(a3, {0, 1, 0}), 0, 1, 1, "A3 diag w2"));
    SatakeDatum a4 = build_satake(cartan_A(4), tau_flip(4));
    require_clean(checks::check_rootvec_vanishing(build_simple(a4, {1, 0, 0, 0}), 1, 0, 1, "A4 qs"));
    require_clean(checks::check_rootvec_vanishing(build_simple(a4, {0, 1, 0, 0}), 1, 0, 1, "A4 qs w2"));
}

TEST_CASE("split commutation identities with idivided powers") {
    SatakeDatum a2 = build_satake(cartan_A(2), tau_identity(2));
    require_clean(checks::check_appendix_A(build_simple(a2, {1, 1}), 0, 1, 1, 4, "A2 n=1"));
    require_clean(checks::check_appendix_A(build_simple(a2, {2, 0}), 0, 1, 2, 3, "A2 n=2"));
    SatakeDatum b2 = build_satake(cartan_B2(), tau_identity(2));
    require_clean(checks::check_appendix_A(build_simple(b2, {1, 0}), 1, 0, 1, 4, "B2 n=1"));
    SatakeDatum g2 = build_satake(cartan_G2(), tau_identity(2));
    require_clean(checks::check_appendix_A(build_simple(g2, {0, 1}), 1, 0, 1, 3, "G2 n=1"));
}

TEST_CASE("kernel shift identity b_top f = f b_0") {
    SatakeDatum a2 = build_satake(cartan_A(2), tau_identity(2));
    for (long n = 1; n <= 2; ++n)
        require_clean(checks::check_split_kernel_shift(build_simple(a2, {1, 1}), 0, 1, n, "A2"));
    SatakeDatum b2 = build_satake(cartan_B2(), tau_identity(2));
    require_clean(checks::check_split_kernel_shift(build_simple(b2, {1, 0}), 1, 0, 1, "B2"));
}

TEST_CASE("diagonal kernel shift and commutation lemmas") {
    // b_{n,na,nb} z_m v = z_{m+na-nb} b_{n,0,0} v on diagonal modules
    SatakeDatum a3 = build_satake(cartan_A(3), tau_flip(3));
    ParameterPack diamond = ParameterPack::diamond(a3);
    size_t i = 0, j = 1, ti = a3.tau[0];
    long alpha = -a3.c(i, j), beta = -a3.c(ti, j);
    for (XVec lam : {XVec{1, 0, 0}, XVec{0, 1, 0}, XVec{1, 1, 0}}) {
        ModuleSpace m = build_simple(a3, lam);
        EvalContext ctx(m, diamond);
        for (long n = 1; n <= 2; ++n)
            for (int tbar : xjn_parities(a3, j)) {
                Operator btop = formal_eval(
                    fix_xjn_parity(diagonal_root_vector(a3, i, j, n, n * alpha, n * beta), a3, j, tbar), ctx);
                Operator b0 =
                    formal_eval(fix_xjn_parity(diagonal_root_vector(a3, i, j, n, 0, 0), a3, j, tbar), ctx);
                Operator z = rank1_T(ctx, i, BraidDir::Tprime_minus);
                CHECK(btop.compose(z) == z.compose(b0));
            }
        // Lemma-4.6 pattern: b_{n,na,nb} B_i^{(l)} = sum_x q^{(l-x)(na-x)-x^2} B_i^{(l-x)} b_{n,na,nb-x} k_i^x
        for (long n = 1; n <= 1; ++n) {
            long na = n * alpha, nb = n * beta;
            Operator lhs_base = formal_eval(diagonal_root_vector(a3, i, j, n, na, nb), ctx);
            for (long l = 0; l <= 4; ++l) {
                Operator lhs = lhs_base.compose(ctx.gen_dp(UGen::B, i, l));
                Operator rhs(m.dim());
                for (long x = 0; x <= std::min(l, nb); ++x) {
                    FormalElement fe = Scalar::q_pow(static_cast<int>((l - x) * (na - x) - x * x)) *
                                       (FormalElement::B(i, l - x) *
                                        diagonal_root_vector(a3, i, j, n, na, nb - x) *
                                        FormalElement::k(i, x));
                    rhs = rhs + formal_eval(fe, ctx);
                }
                CHECK(lhs == rhs);
            }
            // Lemma-4.7 pattern at x within 0..nb, small l
            for (long x = 0; x <= nb; ++x)
                for (long l = 0; l <= 3; ++l) {
                    Operator lhs =
                        formal_eval(diagonal_root_vector(a3, i, j, n, na, nb - x), ctx)
                            .compose(ctx.gen_dp(UGen::B, ti, l));
                    Operator rhs(m.dim());
                    for (long y = 0; y <= x; ++y)
                        for (long r = 0; r <= na; ++r) {
                            if (l - r - y < 0) continue;
                            Scalar c = Scalar::q_pow(static_cast<int>((l - r) * (nb - 2 * x + y) - l * r - y)) *
                                       qfun::q_binomial(nb - x + y, y);
                            if (y % 2) c = -c;
                            FormalElement fe = c * (FormalElement::B(ti, l - r - y) *
                                                    diagonal_root_vector(a3, i, j, n, na - r, nb - x + y) *
                                                    FormalElement::k(i, -r));
                            rhs = rhs + formal_eval(fe, ctx);
                        }
                    CHECK(lhs == rhs);
                }
        }
    }
}

TEST_CASE("quasi-split kernel shift g b_0 = b_top g and the H-sum identities") {
    SatakeDatum a4 = build_satake(cartan_A(4), tau_flip(4));
    ParameterPack diamond = ParameterPack::diamond(a4);
    size_t i = 1, j = 0, ti = a4.tau[1];
    long alpha = -a4.c(i, j), beta = -a4.c(ti, j);
    for (XVec lam : {XVec{1, 0, 0, 0}, XVec{0, 1, 0, 0}}) {
        ModuleSpace m = build_simple(a4, lam);
        EvalContext ctx(m, diamond);
        for (long n = 1; n <= 1; ++n) {
            Operator btop =
                formal_eval(qs_root_vector(a4, i, j, n, n * beta, n * alpha + n * beta, n * alpha), ctx);
            Operator b0 = formal_eval(qs_root_vector(a4, i, j, n, 0, 0, 0), ctx);
            Operator g = rank1_T(ctx, i, BraidDir::Tprime_minus);
            CHECK(btop.compose(g) == g.compose(b0));
        }
        // H(a,d) = [a-d-1] H(a,d+1) as truncated operator sums, on the range
        // where the printed display is consistent (a >= 2; the a = 1 instance
        // of the display contradicts the directly verified shift identity)
        long nil = ctx.b_nilpotency(i) + ctx.b_nilpotency(ti) + 2;
        auto H = [&](long a, long dd) {
            Operator acc(m.dim());
            for (long t = 0; t <= nil; ++t)
                for (long l = 0; l <= nil; ++l) {
                    // 1/([l+1]...[l+a]) factor
                    Scalar denom(1);
                    for (long s = 1; s <= a; ++s) denom *= qfun::q_integer(l + s);
                    // B_{tau i}^{(l, l+t+d, t)} B_{tau i}^{a-d}: middle letter tau i
                    FormalElement word = FormalElement::B(i, l) * FormalElement::B(ti, l + t + dd) *
                                         FormalElement::B(i, t);
                    FormalElement pow_b(FormalElement::one());
                    for (long s = 0; s < a - dd; ++s) pow_b = pow_b * FormalElement::B(ti, 1);
                    FormalElement fe = (Scalar::v_pow(static_cast<int>(
                                            a4.d(i) * (-(t - l) * (t - l) + 2 * (l - dd) * a + 2 * (l - 2 * t) * dd))) /
                                        denom) *
                                       (FormalElement::k(i, t - l + 2 * dd) * word * pow_b);
                    acc = acc + formal_eval(fe, ctx);
                }
            return acc;
        };
        for (long a = 2; a <= 3; ++a) {
            for (long dd = 0; dd < a; ++dd) {
                Operator lhs = H(a, dd);
                Operator rhs = H(a, dd + 1).scaled(qfun::q_integer(a - dd - 1));
                CHECK(lhs == rhs);
            }
            CHECK(H(a, 0).is_zero());
        }
    }
}

TEST_CASE("quasi-split commutation identities for the top root vectors") {
    SatakeDatum a4 = build_satake(cartan_A(4), tau_flip(4));
    ParameterPack diamond = ParameterPack::diamond(a4);
    size_t i = 1, j = 0, ti = a4.tau[1];
    long alpha = -a4.c(i, j), beta = -a4.c(ti, j);
    long n = 1, na = n * alpha, nb = n * beta;
    for (XVec lam : {XVec{1, 0, 0, 0}, XVec{0, 1, 0, 0}}) {
        ModuleSpace m = build_simple(a4, lam);
        EvalContext ctx(m, diamond);
        auto b = [&](long a, long bb, long c) {
            return formal_eval(qs_root_vector(a4, i, j, n, a, bb, c), ctx);
        };
        // b_{n, nb-x, na+nb, na} B_i^{(k)} expansion
        for (long x = 0; x <= nb; ++x)
            for (long k = 0; k <= 3; ++k) {
                Operator lhs = b(nb - x, na + nb, na).compose(ctx.gen_dp(UGen::B, i, k));
                Operator rhs(m.dim());
                for (long y = 0; y <= x; ++y)
                    for (long u = 0; u <= na + nb; ++u) {
                        if (k - y - u < 0) continue;
                        long twice = 2 * (k - u) * (nb - 2 * x + y) - u * (u + 2 * k) - 2 * y;
                        Scalar c = qi_half_pow(a4, i, twice) * qfun::q_binomial(nb - x + y, y, a4.d(i));
                        if (y % 2) c = -c;
                        rhs = rhs + ctx.gen_dp(UGen::B, i, k - y - u)
                                        .compose(b(nb - x + y, na + nb - u, na))
                                        .compose(ctx.gen_dp(UGen::B, i, 0))
                                        .scaled(c)
                                        .compose(ki_operator(m, i, u));
                    }
                CHECK(lhs == rhs);
            }
        // b_{n, nb, na+nb, na} B_{tau i}^{(k)} expansion
        for (long k = 0; k <= 3; ++k) {
            Operator lhs = b(nb, na + nb, na).compose(ctx.gen_dp(UGen::B, ti, k));
            Operator rhs(m.dim());
            for (long r = 0; r <= k; ++r) {
                long twice = 2 * (k - r) * na - 2 * k * r - r * r;
                Scalar c = qi_half_pow(a4, i, twice);
                rhs = rhs + ctx.gen_dp(UGen::B, ti, k - r)
                                .compose(b(nb - r, na + nb, na))
                                .scaled(c)
                                .compose(ki_operator(m, i, -r));
            }
            CHECK(lhs == rhs);
        }
        // b_{n, 0, na+nb-u, na} B_{tau i}^{(k)} expansion
        for (long u = 0; u <= na + nb; ++u)
            for (long k = 0; k <= 2; ++k) {
                Operator lhs = b(0, na + nb - u, na).compose(ctx.gen_dp(UGen::B, ti, k));
                Operator rhs(m.dim());
                for (long vv = 0; vv <= u; ++vv)
                    for (long r = 0; r <= na; ++r) {
                        if (k - vv - r < 0) continue;
                        long twice = 2 * (k - r) * (na + nb - 2 * u + vv) - r * (r + 2 * k) - 2 * vv;
                        Scalar c = qi_half_pow(a4, i, twice) *
                                   qfun::q_binomial(na + nb - u + vv, vv, a4.d(i));
                        if (vv % 2) c = -c;
                        rhs = rhs + ctx.gen_dp(UGen::B, ti, k - vv - r)
                                        .compose(b(0, na + nb - u + vv, na - r))
                                        .scaled(c)
                                        .compose(ki_operator(m, i, -r));
                    }
                CHECK(lhs == rhs);
            }
    }
}
