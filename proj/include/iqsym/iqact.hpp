#pragma once

// iQuantum-group structure on modules and formal elements: B_i and k_i,
// idivided powers, iweight decompositions, parameter change, (anti-)involutions,
// and evaluation of formal words as operators.

#include "iqsym/module.hpp"
#include "iqsym/params.hpp"

#include <array>
#include <functional>
#include <set>

namespace iqsym {

struct IqactError : std::runtime_error {
    explicit IqactError(const std::string& msg) : std::runtime_error(msg) {}
};

// ---------------------------------------------------------------------------
// FormalElement: linear combinations of words over
//   E_i^(n), F_i^(n), B_i^(n), K_mu, k_i^e, IDP(i, parity, n), X(j, n)
// X(j,n) is the idivided power X_{j,n}: B_j^(n) for tau j != j, else the
// parity-matched idivided power of the class it acts on.
// ---------------------------------------------------------------------------

enum class UGen { E, F, B };

struct Letter {
    enum Kind { KMu, SmallK, GenDP, IDP, XJN } kind;
    size_t i = 0;    // generator index (GenDP, SmallK, IDP, XJN)
    long n = 1;      // order (GenDP, IDP, XJN) or exponent (SmallK)
    int parity = 0;  // IDP only
    UGen gen = UGen::B;
    YVec mu;  // KMu only

    friend bool operator==(const Letter& a, const Letter& b) {
        return a.kind == b.kind && a.i == b.i && a.n == b.n && a.parity == b.parity && a.gen == b.gen &&
               a.mu == b.mu;
    }
    friend bool operator<(const Letter& a, const Letter& b) {
        return std::tie(a.kind, a.i, a.n, a.parity, a.gen, a.mu) <
               std::tie(b.kind, b.i, b.n, b.parity, b.gen, b.mu);
    }
};

struct FWord {
    Scalar coef;
    std::vector<Letter> letters;
};

class FormalElement {
  public:
    FormalElement() = default;

    static FormalElement zero() { return FormalElement(); }
    static FormalElement one() { return scalar(Scalar(1)); }
    static FormalElement scalar(Scalar c) {
        FormalElement fe;
        if (!c.is_zero()) fe.words_.push_back({std::move(c), {}});
        return fe;
    }
    static FormalElement letter(Letter l, Scalar c = Scalar(1)) {
        FormalElement fe;
        if (!c.is_zero()) fe.words_.push_back({std::move(c), {std::move(l)}});
        return fe;
    }
    static FormalElement B(size_t i, long n = 1) {
        return n == 0 ? one() : letter({Letter::GenDP, i, n, 0, UGen::B, {}});
    }
    static FormalElement E(size_t i, long n = 1) {
        return n == 0 ? one() : letter({Letter::GenDP, i, n, 0, UGen::E, {}});
    }
    static FormalElement F(size_t i, long n = 1) {
        return n == 0 ? one() : letter({Letter::GenDP, i, n, 0, UGen::F, {}});
    }
    static FormalElement k(size_t i, long e = 1) {
        return e == 0 ? one() : letter({Letter::SmallK, i, e, 0, UGen::B, {}});
    }
    static FormalElement K(YVec mu) {
        bool zero = true;
        for (long x : mu)
            if (x) zero = false;
        if (zero) return one();
        Letter l{Letter::KMu, 0, 1, 0, UGen::B, std::move(mu)};
        return letter(std::move(l));
    }
    static FormalElement idp(size_t i, int parity, long n) {
        if (n == 0) return one();
        return letter({Letter::IDP, i, n, parity & 1, UGen::B, {}});
    }
    static FormalElement xjn(size_t j, long n) {
        if (n == 0) return one();
        return letter({Letter::XJN, j, n, 0, UGen::B, {}});
    }

    const std::vector<FWord>& words() const { return words_; }
    bool is_zero() const { return words_.empty(); }

    FormalElement operator-() const {
        FormalElement r = *this;
        for (auto& w : r.words_) w.coef = -w.coef;
        return r;
    }
    friend FormalElement operator+(const FormalElement& a, const FormalElement& b) {
        FormalElement r = a;
        r.words_.insert(r.words_.end(), b.words_.begin(), b.words_.end());
        r.normalize();
        return r;
    }
    friend FormalElement operator-(const FormalElement& a, const FormalElement& b) { return a + (-b); }
    friend FormalElement operator*(const FormalElement& a, const FormalElement& b) {
        FormalElement r;
        for (const auto& wa : a.words_)
            for (const auto& wb : b.words_) {
                FWord w;
                w.coef = wa.coef * wb.coef;
                w.letters = wa.letters;
                w.letters.insert(w.letters.end(), wb.letters.begin(), wb.letters.end());
                r.words_.push_back(std::move(w));
            }
        r.normalize();
        return r;
    }
    friend FormalElement operator*(const Scalar& c, const FormalElement& a) {
        FormalElement r = a;
        for (auto& w : r.words_) w.coef = c * w.coef;
        r.normalize();
        return r;
    }

    FormalElement reversed() const {
        FormalElement r = *this;
        for (auto& w : r.words_) std::reverse(w.letters.begin(), w.letters.end());
        r.normalize();
        return r;
    }

    // letter-wise map; optionally bars the coefficients
    FormalElement mapped(const std::function<Letter(const Letter&)>& f, bool bar_coefs = false) const {
        FormalElement r;
        for (const auto& w : words_) {
            FWord nw;
            nw.coef = bar_coefs ? w.coef.bar() : w.coef;
            for (const auto& l : w.letters) nw.letters.push_back(f(l));
            r.words_.push_back(std::move(nw));
        }
        r.normalize();
        return r;
    }

    std::string to_string() const;
    static FormalElement parse(const std::string& text);

    friend bool operator==(const FormalElement& a, const FormalElement& b) {
        FormalElement d = a - b;
        return d.is_zero();
    }

  private:
    void normalize() {
        std::sort(words_.begin(), words_.end(), [](const FWord& a, const FWord& b) {
            return a.letters < b.letters;
        });
        std::vector<FWord> merged;
        for (auto& w : words_) {
            if (!merged.empty() && merged.back().letters == w.letters) {
                merged.back().coef += w.coef;
                if (merged.back().coef.is_zero()) merged.pop_back();
            } else if (!w.coef.is_zero()) {
                merged.push_back(std::move(w));
            }
        }
        words_ = std::move(merged);
    }

    std::vector<FWord> words_;
};

// ---------------------------------------------------------------------------
// operators for the iquantum generators and idivided powers
// ---------------------------------------------------------------------------

// B_i = F_i + vs_i E_{tau i} K_i^{-1}
inline Operator bi_operator(const ModuleSpace& m, const ParameterPack& pack, size_t i) {
    const SatakeDatum& s = m.datum();
    Operator out(m.dim());
    for (size_t v = 0; v < m.dim(); ++v) {
        SparseVec col = m.f_op(i).column(v);
        Scalar c = pack.sigma(i) * Scalar::v_pow(-2 * s.d(i) * static_cast<int>(m.weight(v)[i]));
        col = sv::add(col, sv::scale(m.e_op(s.tau[i]).column(v), c));
        out.set_column(v, std::move(col));
    }
    return out;
}

// k_i = K_i K_{tau i}^{-1}: diagonal q_i^{lambda_{i,tau}}
inline Operator ki_operator(const ModuleSpace& m, size_t i, long exp = 1) {
    const SatakeDatum& s = m.datum();
    std::vector<Scalar> diag(m.dim());
    for (size_t v = 0; v < m.dim(); ++v) {
        long itau = m.weight(v)[i] - m.weight(v)[s.tau[i]];
        diag[v] = Scalar::v_pow(static_cast<int>(2 * s.d(i) * exp * itau));
    }
    return Operator::diagonal(std::move(diag));
}

// evaluation context: caches the pack-dependent operators on one module
class EvalContext {
  public:
    EvalContext(const ModuleSpace& m, const ParameterPack& pack) : m_(m), pack_(pack) {}

    const ModuleSpace& module() const { return m_; }
    const SatakeDatum& datum() const { return m_.datum(); }
    const ParameterPack& pack() const { return pack_; }

    const Operator& b_op(size_t i) {
        auto it = b_.find(i);
        if (it != b_.end()) return it->second;
        return b_.emplace(i, bi_operator(m_, pack_, i)).first->second;
    }

    const Operator& gen_dp(UGen g, size_t i, long n) {
        auto key = std::make_tuple(static_cast<int>(g), i, n);
        auto it = dp_.find(key);
        if (it != dp_.end()) return it->second;
        Operator op = Operator::identity(m_.dim());
        if (g == UGen::B) {
            for (long k = 0; k < n; ++k) op = b_op(i).compose(op);
            if (n > 0) op = op.scaled(Scalar(1) / qfun::q_factorial(n, datum().d(i)));
        } else {
            op = m_.divided_power(g == UGen::E ? GenKind::E : GenKind::F, i, n);
        }
        return dp_.emplace(key, std::move(op)).first->second;
    }

    // idivided power B^{(n)}_{i, parity} as a matrix, via the closed product
    const Operator& idp_op(size_t i, int parity, long n) {
        if (datum().tau[i] != i) throw IqactError("idp_op: i is not split");
        parity &= 1;
        auto key = std::make_tuple(i, parity, n);
        auto it = idp_.find(key);
        if (it != idp_.end()) return it->second;
        const Operator& b = b_op(i);
        Operator b2 = b.compose(b);
        int d = datum().d(i);
        Scalar qs = Scalar::v_pow(2 * d) * pack_.sigma(i);
        Operator op = Operator::identity(m_.dim());
        long nfactors;
        if (parity == 0) {
            // B^{1 + [n even]} prod_{r=1}^{ceil(n/2)-1} (B^2 - q vs [2r]^2)
            nfactors = (n + 1) / 2 - 1;
            for (long r = 1; r <= nfactors; ++r) {
                Scalar c = qs * qfun::q_integer(2 * r, d) * qfun::q_integer(2 * r, d);
                op = (b2 - Operator::identity(m_.dim()).scaled(c)).compose(op);
            }
            if (n > 0) op = b.compose(op);
            if (n > 0 && n % 2 == 0) op = b.compose(op);
        } else {
            // B^{[n odd]} prod_{r=1}^{floor(n/2)} (B^2 - q vs [2r-1]^2)
            nfactors = n / 2;
            for (long r = 1; r <= nfactors; ++r) {
                Scalar c = qs * qfun::q_integer(2 * r - 1, d) * qfun::q_integer(2 * r - 1, d);
                op = (b2 - Operator::identity(m_.dim()).scaled(c)).compose(op);
            }
            if (n % 2 == 1) op = b.compose(op);
        }
        if (n > 0) op = op.scaled(Scalar(1) / qfun::q_factorial(n, d));
        return idp_.emplace(key, std::move(op)).first->second;
    }

    // X_{j,n} on a vector whose iweight class has lift wt: parity-dispatching
    SparseVec apply_xjn(size_t j, long n, const XVec& wt, const SparseVec& v) {
        if (datum().tau[j] != j) return gen_dp(UGen::B, j, n).apply(v);
        int parity = static_cast<int>(((wt[j] % 2) + 2) % 2);
        return idp_op(j, parity, n).apply(v);
    }

    // nilpotency index of B_i (diagonal/quasi-split types only)
    long b_nilpotency(size_t i) {
        auto it = bnil_.find(i);
        if (it != bnil_.end()) return it->second;
        Operator p = Operator::identity(m_.dim());
        for (long n = 0; n <= static_cast<long>(m_.dim()) + 1; ++n) {
            if (p.is_zero()) {
                bnil_[i] = n;
                return n;
            }
            p = b_op(i).compose(p);
        }
        throw IqactError("b_nilpotency: B_i is not nilpotent on this module");
    }

  private:
    const ModuleSpace& m_;
    ParameterPack pack_;
    std::map<size_t, Operator> b_;
    std::map<std::tuple<int, size_t, long>, Operator> dp_;
    std::map<std::tuple<size_t, int, long>, Operator> idp_;
    std::map<size_t, long> bnil_;
};

// iweight shift of one letter, as a vector in X
inline XVec letter_weight_shift(const SatakeDatum& s, const Letter& l) {
    XVec shift(s.rank(), 0);
    auto add_alpha = [&](size_t idx, long mult) {
        XVec a = s.alpha(idx);
        for (size_t k = 0; k < s.rank(); ++k) shift[k] += mult * a[k];
    };
    switch (l.kind) {
        case Letter::GenDP:
            add_alpha(l.i, l.gen == UGen::E ? l.n : -l.n);
            break;
        case Letter::IDP:
        case Letter::XJN:
            add_alpha(l.i, -l.n);
            break;
        default:
            break;
    }
    return shift;
}

inline Operator formal_eval(const FormalElement& fe, EvalContext& ctx) {
    const ModuleSpace& m = ctx.module();
    const SatakeDatum& s = ctx.datum();
    Operator out(m.dim());
    for (const auto& w : fe.words()) {
        for (size_t v = 0; v < m.dim(); ++v) {
            SparseVec cur = sv::unit(v);
            XVec wt = m.weight(v);
            for (auto it = w.letters.rbegin(); it != w.letters.rend() && !cur.empty(); ++it) {
                const Letter& l = *it;
                switch (l.kind) {
                    case Letter::KMu: {
                        // all components of cur share the class of wt, but K_mu
                        // may pair differently with distinct lifts only for
                        // mu outside Y^i; act entrywise by the true weights
                        SparseVec next;
                        for (auto& [idx, c] : cur)
                            sv::add_term(next, idx,
                                         c * Scalar::q_pow(static_cast<int>(s.pair(l.mu, m.weight(idx)))));
                        cur = std::move(next);
                        break;
                    }
                    case Letter::SmallK: {
                        SparseVec next;
                        for (auto& [idx, c] : cur) {
                            long itau = m.weight(idx)[l.i] - m.weight(idx)[s.tau[l.i]];
                            sv::add_term(next, idx,
                                         c * Scalar::v_pow(static_cast<int>(2 * s.d(l.i) * l.n * itau)));
                        }
                        cur = std::move(next);
                        break;
                    }
                    case Letter::GenDP:
                        cur = ctx.gen_dp(l.gen, l.i, l.n).apply(cur);
                        break;
                    case Letter::IDP:
                        cur = ctx.idp_op(l.i, l.parity, l.n).apply(cur);
                        break;
                    case Letter::XJN:
                        cur = ctx.apply_xjn(l.i, l.n, wt, cur);
                        break;
                }
                XVec shift = letter_weight_shift(s, l);
                for (size_t k = 0; k < s.rank(); ++k) wt[k] += shift[k];
            }
            for (auto& [idx, c] : cur) out.add_entry(idx, v, w.coef * c);
        }
    }
    return out;
}

inline Operator formal_eval(const FormalElement& fe, const ModuleSpace& m, const ParameterPack& pack) {
    EvalContext ctx(m, pack);
    return formal_eval(fe, ctx);
}

// ---------------------------------------------------------------------------
// idivided powers as formal polynomials in B_i (eager expansion)
// ---------------------------------------------------------------------------

inline FormalElement idivided_power_expanded(const SatakeDatum& s, const ParameterPack& pack, size_t i,
                                             int parity, long n) {
    if (s.tau[i] != i) return FormalElement::B(i, n);
    if (n == 0) return FormalElement::one();
    parity &= 1;
    int d = s.d(i);
    Scalar qs = Scalar::v_pow(2 * d) * pack.sigma(i);
    // polynomial in B as coefficient vector: poly[k] * B^k
    std::vector<Scalar> poly = {Scalar(1)};
    auto mul_b2_minus = [&](const Scalar& c) {
        std::vector<Scalar> next(poly.size() + 2, Scalar(0));
        for (size_t k = 0; k < poly.size(); ++k) {
            next[k + 2] += poly[k];
            next[k] -= c * poly[k];
        }
        poly = std::move(next);
    };
    long extra_b = 0;
    if (parity == 0) {
        long nf = (n + 1) / 2 - 1;
        for (long r = 1; r <= nf; ++r)
            mul_b2_minus(qs * qfun::q_integer(2 * r, d) * qfun::q_integer(2 * r, d));
        extra_b = 1 + (n % 2 == 0 ? 1 : 0);
    } else {
        long nf = n / 2;
        for (long r = 1; r <= nf; ++r)
            mul_b2_minus(qs * qfun::q_integer(2 * r - 1, d) * qfun::q_integer(2 * r - 1, d));
        extra_b = (n % 2 == 1) ? 1 : 0;
    }
    Scalar fact = qfun::q_factorial(n, d);
    FormalElement out;
    for (size_t k = 0; k < poly.size(); ++k) {
        if (poly[k].is_zero()) continue;
        long deg = static_cast<long>(k) + extra_b;
        // B^deg = [deg]! B^{(deg)}
        Scalar coef = poly[k] * qfun::q_factorial(deg, d) / fact;
        out = out + coef * FormalElement::B(i, deg);
    }
    return out;
}

// ---------------------------------------------------------------------------
// iweight decomposition and integrability
// ---------------------------------------------------------------------------

struct IWeightClass {
    IWeight iweight;
    std::vector<size_t> indices;
};

inline std::vector<IWeightClass> iweight_decompose(const ModuleSpace& m) {
    const SatakeDatum& s = m.datum();
    std::map<IWeight, std::vector<size_t>> by_class;
    for (size_t v = 0; v < m.dim(); ++v) by_class[iweight_normalize(s, m.weight(v))].push_back(v);
    std::vector<IWeightClass> out;
    for (auto& [w, idx] : by_class) out.push_back({w, std::move(idx)});
    return out;
}

// smallest N such that the class is annihilated by the matched idivided
// powers of order >= N (Definition 2.10 pattern); throws if none is found
inline long integrability_bound(EvalContext& ctx, const IWeightClass& cls, size_t i) {
    const SatakeDatum& s = ctx.datum();
    auto vanishes = [&](const Operator& op) {
        for (size_t v : cls.indices)
            if (!op.apply(sv::unit(v)).empty()) return false;
        return true;
    };
    long cap = 2 * static_cast<long>(ctx.module().dim()) + 4;
    if (s.tau[i] != i) {
        for (long n = 0; n <= cap; ++n)
            if (vanishes(ctx.gen_dp(UGen::B, i, n))) return n;
        throw IqactError("integrability_bound: B_j^{(n)} does not vanish");
    }
    int parity = iweight_parity(s, cls.iweight, i);
    for (long n = 0; n + 1 <= cap; ++n)
        if (vanishes(ctx.idp_op(i, parity, n)) && vanishes(ctx.idp_op(i, parity, n + 1))) return n;
    throw IqactError("integrability_bound: idivided powers do not vanish on the class");
}

// ---------------------------------------------------------------------------
// involutions and parameter change
// ---------------------------------------------------------------------------

enum class InvolutionKind { sigma, sigma_tau, sigma_iota, tau_hat, psi, psi_iota };

inline FormalElement involution_apply(const FormalElement& fe, InvolutionKind which, const SatakeDatum& s,
                                      const ParameterPack& pack) {
    auto require_u_letter = [](const Letter& l, const char* name) {
        if (l.kind != Letter::KMu && !(l.kind == Letter::GenDP && l.gen != UGen::B))
            throw IqactError(std::string(name) + ": defined on E/F/K words only");
    };
    auto require_iq_letter = [](const Letter& l, const char* name) {
        if (l.kind == Letter::GenDP && l.gen != UGen::B)
            throw IqactError(std::string(name) + ": defined on B/k/K words only");
    };
    auto neg = [](const YVec& mu) {
        YVec r = mu;
        for (auto& x : r) x = -x;
        return r;
    };
    switch (which) {
        case InvolutionKind::sigma:
            return fe.mapped([&](const Letter& l) {
                          require_u_letter(l, "sigma");
                          Letter r = l;
                          if (l.kind == Letter::KMu) r.mu = neg(l.mu);
                          return r;
                      })
                .reversed();
        case InvolutionKind::psi:
            return fe.mapped(
                [&](const Letter& l) {
                    require_u_letter(l, "psi");
                    Letter r = l;
                    if (l.kind == Letter::KMu) r.mu = neg(l.mu);
                    return r;
                },
                /*bar_coefs=*/true);
        case InvolutionKind::sigma_tau:
            return fe.mapped([&](const Letter& l) {
                          require_iq_letter(l, "sigma_tau");
                          Letter r = l;
                          if (l.kind == Letter::KMu) r.mu = neg(s.tau_y(l.mu));
                          if (l.kind == Letter::GenDP || l.kind == Letter::XJN) r.i = s.tau[l.i];
                          return r;  // IDP: tau i = i, fixed; k_i fixed
                      })
                .reversed();
        case InvolutionKind::tau_hat:
            if (!pack.balanced(s)) throw IqactError("tau_hat: balanced parameter required");
            return fe.mapped([&](const Letter& l) {
                require_iq_letter(l, "tau_hat");
                Letter r = l;
                if (l.kind == Letter::KMu) r.mu = s.tau_y(l.mu);
                if (l.kind == Letter::GenDP || l.kind == Letter::XJN) r.i = s.tau[l.i];
                if (l.kind == Letter::SmallK) r.n = -l.n;
                return r;
            });
        case InvolutionKind::sigma_iota:
            if (!pack.balanced(s)) throw IqactError("sigma_iota: balanced parameter required");
            return fe.mapped([&](const Letter& l) {
                          require_iq_letter(l, "sigma_iota");
                          Letter r = l;
                          if (l.kind == Letter::KMu) r.mu = neg(l.mu);
                          if (l.kind == Letter::SmallK) r.n = -l.n;
                          return r;
                      })
                .reversed();
        case InvolutionKind::psi_iota:
            if (!pack.ibar_compatible(s)) throw IqactError("psi_iota: parameter condition violated");
            return fe.mapped(
                [&](const Letter& l) {
                    require_iq_letter(l, "psi_iota");
                    Letter r = l;
                    if (l.kind == Letter::KMu) r.mu = neg(l.mu);
                    if (l.kind == Letter::SmallK) r.n = -l.n;
                    return r;
                },
                /*bar_coefs=*/true);
    }
    throw IqactError("involution_apply: bad kind");
}

// phi_{from,to}: B_i -> sqrt(vs_i / vs'_i) B_i etc. (Lemma-2.3 pattern);
// idivided powers rescale by the same ratio to the n-th power.  The optional
// prefactor multiplies every word before the half-powers are resolved, so a
// half-graded prefactor may combine with half-graded letter factors.
inline FormalElement phi_rescale(const FormalElement& fe, const ParameterPack& from, const ParameterPack& to,
                                 const SatakeDatum& s, const SqrtScalar& prefactor = SqrtScalar(Scalar(1))) {
    FormalElement out;
    for (const auto& w : fe.words()) {
        SqrtScalar factor = prefactor;
        for (const auto& l : w.letters) {
            switch (l.kind) {
                case Letter::GenDP:
                    if (l.gen != UGen::B) throw IqactError("phi_rescale: E/F letter");
                    factor = factor * (from.sqrt_sigma(l.i) / to.sqrt_sigma(l.i)).pow(static_cast<int>(l.n));
                    break;
                case Letter::IDP:
                case Letter::XJN:
                    factor = factor * (from.sqrt_sigma(l.i) / to.sqrt_sigma(l.i)).pow(static_cast<int>(l.n));
                    break;
                case Letter::SmallK: {
                    size_t ti = s.tau[l.i];
                    SqrtScalar kf = (from.sqrt_sigma(l.i) * to.sqrt_sigma(ti)) /
                                    (to.sqrt_sigma(l.i) * from.sqrt_sigma(ti));
                    factor = factor * kf.pow(static_cast<int>(l.n));
                    break;
                }
                case Letter::KMu:
                    break;
            }
        }
        FormalElement tmp = FormalElement::scalar(w.coef * factor.to_scalar());
        for (const auto& l : w.letters) tmp = tmp * FormalElement::letter(l);
        out = out + tmp;
    }
    return out;
}

// ---------------------------------------------------------------------------
// serialization: `coef * [B1^(2), k1^-1, IDP(1,0,3), X(2,1), K[0,1,-1]] + ...`
// ---------------------------------------------------------------------------

inline std::string FormalElement::to_string() const {
    if (words_.empty()) return "0";
    std::string out;
    for (const auto& w : words_) {
        if (!out.empty()) out += " + ";
        out += "(" + w.coef.to_string() + ") * [";
        bool first = true;
        for (const auto& l : w.letters) {
            if (!first) out += ", ";
            first = false;
            switch (l.kind) {
                case Letter::KMu: {
                    out += "K[";
                    for (size_t k = 0; k < l.mu.size(); ++k) {
                        if (k) out += ",";
                        out += std::to_string(l.mu[k]);
                    }
                    out += "]";
                    break;
                }
                case Letter::SmallK:
                    out += "k" + std::to_string(l.i + 1) + "^" + std::to_string(l.n);
                    break;
                case Letter::GenDP: {
                    const char* g = l.gen == UGen::E ? "E" : (l.gen == UGen::F ? "F" : "B");
                    out += std::string(g) + std::to_string(l.i + 1);
                    if (l.n != 1) out += "^(" + std::to_string(l.n) + ")";
                    break;
                }
                case Letter::IDP:
                    out += "IDP(" + std::to_string(l.i + 1) + "," + std::to_string(l.parity) + "," +
                           std::to_string(l.n) + ")";
                    break;
                case Letter::XJN:
                    out += "X(" + std::to_string(l.i + 1) + "," + std::to_string(l.n) + ")";
                    break;
            }
        }
        out += "]";
    }
    return out;
}

inline FormalElement FormalElement::parse(const std::string& text) {
    FormalElement out;
    size_t pos = 0;
    auto skip_ws = [&] { while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos; };
    auto expect = [&](char c) {
        skip_ws();
        if (pos >= text.size() || text[pos] != c)
            throw IqactError("FormalElement::parse: expected '" + std::string(1, c) + "' at " +
                             std::to_string(pos));
        ++pos;
    };
    auto parse_int = [&]() {
        skip_ws();
        size_t start = pos;
        if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        return std::atol(text.substr(start, pos - start).c_str());
    };
    skip_ws();
    if (text.substr(pos) == "0") return out;
    while (pos < text.size()) {
        expect('(');
        size_t depth = 1, start = pos;
        while (pos < text.size() && depth) {
            if (text[pos] == '(') ++depth;
            if (text[pos] == ')') --depth;
            ++pos;
        }
        Scalar coef = Scalar::parse(text.substr(start, pos - 1 - start));
        skip_ws();
        expect('*');
        expect('[');
        FormalElement word = FormalElement::scalar(coef);
        skip_ws();
        while (pos < text.size() && text[pos] != ']') {
            skip_ws();
            char c = text[pos];
            if (c == ',') { ++pos; continue; }
            if (c == 'K' && pos + 1 < text.size() && text[pos + 1] == '[') {
                pos += 2;
                YVec mu;
                while (text[pos] != ']') {
                    if (text[pos] == ',') ++pos;
                    mu.push_back(parse_int());
                    skip_ws();
                }
                ++pos;
                word = word * FormalElement::K(std::move(mu));
            } else if (c == 'k') {
                ++pos;
                size_t i = static_cast<size_t>(parse_int() - 1);
                expect('^');
                word = word * FormalElement::k(i, parse_int());
            } else if (c == 'I') {
                pos += 3;  // IDP
                expect('(');
                size_t i = static_cast<size_t>(parse_int() - 1);
                expect(',');
                int par = static_cast<int>(parse_int());
                expect(',');
                long n = parse_int();
                expect(')');
                word = word * FormalElement::idp(i, par, n);
            } else if (c == 'X') {
                ++pos;
                expect('(');
                size_t i = static_cast<size_t>(parse_int() - 1);
                expect(',');
                long n = parse_int();
                expect(')');
                word = word * FormalElement::xjn(i, n);
            } else if (c == 'E' || c == 'F' || c == 'B') {
                ++pos;
                UGen g = c == 'E' ? UGen::E : (c == 'F' ? UGen::F : UGen::B);
                size_t i = static_cast<size_t>(parse_int() - 1);
                long n = 1;
                skip_ws();
                if (pos < text.size() && text[pos] == '^') {
                    ++pos;
                    expect('(');
                    n = parse_int();
                    expect(')');
                }
                switch (g) {
                    case UGen::E: word = word * FormalElement::E(i, n); break;
                    case UGen::F: word = word * FormalElement::F(i, n); break;
                    case UGen::B: word = word * FormalElement::B(i, n); break;
                }
            } else {
                throw IqactError("FormalElement::parse: bad letter at " + std::to_string(pos));
            }
            skip_ws();
        }
        expect(']');
        out = out + word;
        skip_ws();
        if (pos < text.size()) expect('+');
        skip_ws();
    }
    return out;
}

}  // namespace iqsym
