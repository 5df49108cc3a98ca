#pragma once

// Parameter packs (varsigma_i) with stored square roots.  The distinguished
// parameter in quasi-split type is -q_i^{-1/2}, whose square root needs
// v^{1/2} when d_i is odd, so roots are stored Z/2-graded: value = part * v^{h/2}.

#include "iqsym/rootdata.hpp"
#include "iqsym/scalar.hpp"

#include <vector>

namespace iqsym {

struct SqrtScalar {
    Scalar part;
    int half = 0;  // 0 or 1

    SqrtScalar() : part(0) {}
    explicit SqrtScalar(Scalar p, int h = 0) : part(std::move(p)), half(0) { shift_half(h); }

    // multiply by v^{k/2}
    void shift_half(int k) {
        int tot = half + k;
        int rem = ((tot % 2) + 2) % 2;
        part *= Scalar::v_pow((tot - rem) / 2);
        half = rem;
    }

    bool is_zero() const { return part.is_zero(); }

    friend SqrtScalar operator*(const SqrtScalar& a, const SqrtScalar& b) {
        SqrtScalar r(a.part * b.part);
        r.shift_half(a.half + b.half);
        return r;
    }
    friend SqrtScalar operator/(const SqrtScalar& a, const SqrtScalar& b) {
        SqrtScalar r(a.part / b.part);
        r.shift_half(a.half - b.half);
        return r;
    }
    SqrtScalar pow(int e) const {
        SqrtScalar base = *this;
        if (e < 0) base = SqrtScalar(Scalar(1)) / base;
        int n = std::abs(e);
        SqrtScalar r(Scalar(1));
        for (int k = 0; k < n; ++k) r = r * base;
        return r;
    }
    Scalar square() const {
        Scalar s = part * part;
        if (half) s *= Scalar::v_pow(1);
        return s;
    }
    Scalar to_scalar() const {
        if (half && !part.is_zero())
            throw ScalarError("SqrtScalar: residual half power of v, value not in K(v)");
        return part;
    }

    friend bool operator==(const SqrtScalar& a, const SqrtScalar& b) {
        return a.half == b.half && a.part == b.part;
    }
};

// Canonical square root of a monomial value c * v^k: sqrt(c) v^{k/2}, with
// the fixed branch sqrt(-x) = i sqrt(x) for x > 0.  All combined bases the
// braid formulas raise to half-integer powers go through here; this matches
// the paper's own parameter specializations (e.g. (-q^2 vs)^{-k/2} = 1 at
// the distinguished parameter).
inline SqrtScalar sqrt_branch(const Scalar& s) {
    if (s.is_zero() || !s.is_laurent() || s.num().lo() != s.num().hi())
        throw ScalarError("sqrt_branch: not a nonzero monomial: " + s.to_string());
    GaussQ c = s.num().leading();
    if (c.im != 0) throw ScalarError("sqrt_branch: imaginary coefficient: " + s.to_string());
    bool neg = c.re < 0;
    mpq_class abs = neg ? mpq_class(-c.re) : c.re;
    mpz_class num = abs.get_num(), den = abs.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
        throw ScalarError("sqrt_branch: coefficient is not a rational square: " + s.to_string());
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    Scalar root{mpq_class(rn, rd)};
    if (neg) root = root * Scalar::unit_i();
    return SqrtScalar(std::move(root), s.num().lo());
}

class ParameterPack {
  public:
    ParameterPack() = default;
    ParameterPack(const SatakeDatum& datum, std::vector<SqrtScalar> roots) : roots_(std::move(roots)) {
        if (roots_.size() != datum.rank()) throw RootDataError("ParameterPack: size mismatch");
        for (size_t i = 0; i < roots_.size(); ++i) {
            if (roots_[i].is_zero()) throw RootDataError("ParameterPack: zero parameter");
            // constraint (i . tau i = 0 forces equal parameters, same stored root)
            size_t ti = datum.tau[i];
            if (ti != i && datum.c(i, ti) == 0 && !(roots_[i] == roots_[ti]))
                throw RootDataError("ParameterPack: varsigma_i != varsigma_{tau i} with i.tau i = 0");
        }
    }

    const SqrtScalar& sqrt_sigma(size_t i) const { return roots_[i]; }
    Scalar sigma(size_t i) const { return roots_[i].square(); }
    size_t size() const { return roots_.size(); }

    bool balanced(const SatakeDatum& datum) const {
        for (size_t i = 0; i < roots_.size(); ++i)
            if (sigma(i) != sigma(datum.tau[i])) return false;
        return true;
    }

    // condition for the ibar involution: varsigma_{tau i} = q_i^{-c_{i,tau i}} bar(varsigma_i)
    bool ibar_compatible(const SatakeDatum& datum) const {
        for (size_t i = 0; i < roots_.size(); ++i) {
            Scalar rhs = Scalar::v_pow(static_cast<int>(-2 * datum.d(i) * datum.c(i, datum.tau[i]))) *
                         sigma(i).bar();
            if (sigma(datum.tau[i]) != rhs) return false;
        }
        return true;
    }

    // icanonical-basis constraints: varsigma_i in q_i^Z and varsigma_i varsigma_{tau i} = q_i^{-c_{i,tau i}}
    bool icb_compatible(const SatakeDatum& datum) const {
        for (size_t i = 0; i < roots_.size(); ++i) {
            Scalar prod = sigma(i) * sigma(datum.tau[i]);
            if (prod != Scalar::v_pow(static_cast<int>(-2 * datum.d(i) * datum.c(i, datum.tau[i])))) return false;
            Scalar s = sigma(i);
            if (!s.is_laurent()) return false;
            bool power_of_q = !s.is_zero() && s.num().lo() == s.num().hi() &&
                              s.num().leading() == GaussQ(1) && s.num().lo() % (2 * datum.d(i)) == 0;
            if (!power_of_q) return false;
        }
        return true;
    }

    // sqrt(-q_i^{k/2}) with the fixed branch i * v^{d_i k / 2}
    static SqrtScalar sqrt_of_minus_q_half_power(const SatakeDatum& datum, size_t i, int k) {
        return SqrtScalar(Scalar::unit_i(), datum.d(i) * k);
    }

    // The stored root of varsigma_i, chosen coherently with the value-based
    // branch of the rank-one kernel coefficients, so that the parameter-change
    // transport of the kernels reproduces them exactly:
    //   split:    sqrt(vs) := sqrt_branch(-q_i^2 vs) / (i q_i)
    //   diagonal: sqrt(vs) := sqrt_branch(-q_i^{-1}) / sqrt_branch(-q_i^{-1} vs^{-1})
    //   else:     sqrt_branch(vs)
    static SqrtScalar coherent_sqrt(const SatakeDatum& datum, size_t i, const Scalar& sigma) {
        int d = datum.d(i);
        switch (datum.classify(i)) {
            case RankOneType::split: {
                SqrtScalar num = sqrt_branch(Scalar(-1) * Scalar::v_pow(4 * d) * sigma);
                return num * SqrtScalar(Scalar(-1) * Scalar::unit_i() * Scalar::v_pow(-2 * d));
            }
            case RankOneType::diagonal: {
                SqrtScalar num(Scalar::unit_i() * Scalar::v_pow(-d));
                return num / sqrt_branch(Scalar(-1) * Scalar::v_pow(-2 * d) / sigma);
            }
            default:
                return sqrt_branch(sigma);
        }
    }

    // distinguished parameter: varsigma_i = -q_i^{-1 - c_{i,tau i}/2}
    static ParameterPack diamond(const SatakeDatum& datum) {
        std::vector<SqrtScalar> roots;
        for (size_t i = 0; i < datum.rank(); ++i) {
            int cc = static_cast<int>(datum.c(i, datum.tau[i]));
            Scalar value = Scalar(-1) * Scalar::v_pow(-datum.d(i) * (2 + cc));
            roots.push_back(coherent_sqrt(datum, i, value));
        }
        return ParameterPack(datum, std::move(roots));
    }

    // balanced bar-compatible parameter: varsigma_i = q_i^{-c_{i,tau i}/2}
    static ParameterPack star(const SatakeDatum& datum) {
        std::vector<SqrtScalar> roots;
        for (size_t i = 0; i < datum.rank(); ++i) {
            int cc = static_cast<int>(datum.c(i, datum.tau[i]));
            roots.emplace_back(Scalar(1), -datum.d(i) * cc);
        }
        return ParameterPack(datum, std::move(roots));
    }

    // an icanonical-basis pack: split varsigma_i = q_i^{-1}; diagonal 1;
    // quasi-split orbit {i, tau i} gets (q_i^a, q_i^{1-a})
    static ParameterPack icb(const SatakeDatum& datum, int a = 0) {
        std::vector<SqrtScalar> roots;
        for (size_t i = 0; i < datum.rank(); ++i) {
            switch (datum.classify(i)) {
                case RankOneType::split:
                    roots.emplace_back(Scalar(1), -2 * datum.d(i));
                    break;
                case RankOneType::diagonal:
                    roots.emplace_back(Scalar(1), 0);
                    break;
                case RankOneType::quasi_split: {
                    int e = (i < datum.tau[i]) ? a : 1 - a;
                    roots.emplace_back(Scalar(1), 2 * datum.d(i) * e);
                    break;
                }
                default:
                    roots.push_back(sqrt_of_minus_q_half_power(datum, i, -2 - static_cast<int>(datum.c(i, datum.tau[i]))));
            }
        }
        return ParameterPack(datum, std::move(roots));
    }

    // all parameters equal to a given square root (balanced when tau-stable)
    static ParameterPack constant(const SatakeDatum& datum, const SqrtScalar& root) {
        return ParameterPack(datum, std::vector<SqrtScalar>(datum.rank(), root));
    }

  private:
    std::vector<SqrtScalar> roots_;
};

}  // namespace iqsym
