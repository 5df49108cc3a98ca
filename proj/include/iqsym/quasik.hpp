#pragma once

// Truncated rank-one quasi K-matrices, solved weight by weight from the
// defining intertwining property on a probe module, and the comparison of
// the rank-one braid operators with the normalized Lusztig symmetries.

#include "iqsym/ibraid.hpp"

namespace iqsym {

struct QuasiKError : std::runtime_error {
    explicit QuasiKError(const std::string& msg) : std::runtime_error(msg) {}
};

struct TruncatedUpsilon {
    RankOneType type = RankOneType::split;
    size_t i = 0, ti = 0;
    long cutoff = 0;  // height cutoff

    // monomial family on tau-invariant weights:
    //   split:       E_i^{(a)}                      (height a)
    //   diagonal:    E_i^{(a)} E_{ti}^{(a)}         (height 2a)
    //   quasi-split: E_i^{(a)} E_{ti}^{(a+c)} E_i^{(c)}  (height 2(a+c))
    struct Mono {
        long a = 0, c = 0;
        long height(RankOneType t) const {
            return t == RankOneType::split ? a : (t == RankOneType::diagonal ? 2 * a : 2 * (a + c));
        }
        std::string label(RankOneType t, size_t i1, size_t i2) const {
            auto e = [](size_t node, long n) {
                return "E" + std::to_string(node + 1) + "^(" + std::to_string(n) + ")";
            };
            switch (t) {
                case RankOneType::split: return e(i1, a);
                case RankOneType::diagonal: return e(i1, a) + e(i2, a);
                default: return e(i1, a) + e(i2, a + c) + e(i1, c);
            }
        }
    };
    std::vector<Mono> monomials;
    std::vector<Scalar> coefs;

    Operator monomial_op(const ModuleSpace& m, const Mono& mo) const {
        Operator op = m.divided_power(GenKind::E, i, mo.a);
        if (type == RankOneType::diagonal)
            op = op.compose(m.divided_power(GenKind::E, ti, mo.a));
        if (type == RankOneType::quasi_split)
            op = op.compose(m.divided_power(GenKind::E, ti, mo.a + mo.c))
                     .compose(m.divided_power(GenKind::E, i, mo.c));
        return op;
    }

    Operator op_on(const ModuleSpace& m) const {
        Operator out(m.dim());
        for (size_t k = 0; k < monomials.size(); ++k) {
            if (coefs[k].is_zero()) continue;
            out = out + monomial_op(m, monomials[k]).scaled(coefs[k]);
        }
        return out;
    }

    // Upsilon = 1 + N with N strictly raising weights: Neumann inverse
    Operator inv_op_on(const ModuleSpace& m) const {
        Operator n = op_on(m) - Operator::identity(m.dim());
        Operator out = Operator::identity(m.dim());
        Operator pw = Operator::identity(m.dim());
        for (size_t k = 1; k <= m.dim() + 1; ++k) {
            pw = n.compose(pw);
            if (pw.is_zero()) return out;
            out = out + pw.scaled(Scalar(k % 2 ? -1 : 1));
        }
        throw QuasiKError("inv_op_on: raising part is not nilpotent");
    }

    std::string coefficient_table() const {
        std::ostringstream os;
        for (size_t k = 0; k < monomials.size(); ++k)
            os << monomials[k].label(type, i, ti) << " = " << coefs[k].to_string() << "\n";
        return os.str();
    }
};

// sigma tau (B_g) = F_{tau g} + vs_g K_{tau g} E_g as an operator
inline Operator sigma_tau_b_op(const ModuleSpace& m, const ParameterPack& pack, size_t g) {
    const SatakeDatum& s = m.datum();
    size_t tg = s.tau[g];
    Operator out(m.dim());
    for (size_t v = 0; v < m.dim(); ++v) {
        SparseVec col = m.f_op(tg).column(v);
        // K_{tau g} applied after E_g: eigenvalue on wt(v) + alpha_g
        long pairing = m.weight(v)[tg] + s.c(tg, g);
        Scalar c = pack.sigma(g) * Scalar::v_pow(static_cast<int>(2 * s.d(tg) * pairing));
        col = sv::add(col, sv::scale(m.e_op(g).column(v), c));
        out.set_column(v, std::move(col));
    }
    return out;
}

// psi(B_g) = F_g + bar(vs_g) E_{tau g} K_g as an operator (K_g acts first)
inline Operator psi_b_op(const ModuleSpace& m, const ParameterPack& pack, size_t g) {
    const SatakeDatum& s = m.datum();
    Operator out(m.dim());
    for (size_t v = 0; v < m.dim(); ++v) {
        SparseVec col = m.f_op(g).column(v);
        Scalar c = pack.sigma(g).bar() *
                   Scalar::v_pow(static_cast<int>(2 * s.d(g) * m.weight(v)[g]));
        col = sv::add(col, sv::scale(m.e_op(s.tau[g]).column(v), c));
        out.set_column(v, std::move(col));
    }
    return out;
}

// level of each basis vector: simple-root steps from the highest weight down
inline std::vector<long> module_levels(const ModuleSpace& m) {
    const SatakeDatum& s = m.datum();
    std::vector<long> out(m.dim(), 0);
    size_t n = s.rank();
    for (size_t v = 0; v < m.dim(); ++v) {
        // solve C x = wt(eta) - wt(v) over the rationals
        std::vector<std::vector<mpq_class>> a(n, std::vector<mpq_class>(n + 1));
        for (size_t r = 0; r < n; ++r) {
            for (size_t c = 0; c < n; ++c) a[r][c] = s.c(r, c);
            a[r][n] = m.weight(0)[r] - m.weight(v)[r];
        }
        for (size_t col = 0, prow = 0; col < n && prow < n; ++col) {
            size_t sel = SIZE_MAX;
            for (size_t r = prow; r < n; ++r)
                if (a[r][col] != 0) { sel = r; break; }
            if (sel == SIZE_MAX) continue;
            std::swap(a[sel], a[prow]);
            mpq_class inv = 1 / a[prow][col];
            for (size_t c = 0; c <= n; ++c) a[prow][c] *= inv;
            for (size_t r = 0; r < n; ++r) {
                if (r == prow || a[r][col] == 0) continue;
                mpq_class f = a[r][col];
                for (size_t c = 0; c <= n; ++c) a[r][c] -= f * a[prow][c];
            }
            ++prow;
        }
        long h = 0;
        for (size_t r = 0; r < n; ++r) h += static_cast<long>(a[r][n].get_num().get_si());
        out[v] = h;
    }
    return out;
}

inline long module_height(const ModuleSpace& m) {
    long best = 0;
    for (long h : module_levels(m)) best = std::max(best, h);
    return best;
}

inline TruncatedUpsilon solve_upsilon(const SatakeDatum& s, const ParameterPack& pack, size_t i,
                                      long cutoff, const ModuleSpace& probe) {
    if (!pack.balanced(s)) throw QuasiKError("solve_upsilon: balanced parameter required");
    TruncatedUpsilon ups;
    ups.type = s.classify(i);
    if (ups.type == RankOneType::non_finite) throw QuasiKError("solve_upsilon: i not in I^fin");
    ups.i = i;
    ups.ti = s.tau[i];
    ups.cutoff = cutoff;
    // monomial family up to the height cutoff
    switch (ups.type) {
        case RankOneType::split:
            for (long a = 0; a <= cutoff; ++a) ups.monomials.push_back({a, 0});
            break;
        case RankOneType::diagonal:
            for (long a = 0; 2 * a <= cutoff; ++a) ups.monomials.push_back({a, 0});
            break;
        default:
            for (long h = 0; 2 * h <= cutoff; ++h)
                for (long a = 0; a <= h; ++a) ups.monomials.push_back({a, h - a});
    }
    size_t nmono = ups.monomials.size();

    // linear system: for g in {i, ti}: B_{tau g} . M_k - M_k . sigma_tau(B_g),
    // row per (g, column, row); unknown 0 is pinned to 1.  Rows whose weight
    // gap reaches the cutoff couple to untruncated components and are skipped.
    std::vector<Operator> mono_ops;
    for (const auto& mo : ups.monomials) mono_ops.push_back(ups.monomial_op(probe, mo));
    std::vector<long> levels = module_levels(probe);
    std::vector<std::vector<Scalar>> rows;    // reduced rows, coefficients over unknowns
    std::vector<Scalar> rhs;                  // right-hand sides
    std::vector<size_t> lead;                 // leading column of each reduced row
    std::vector<size_t> gens = {i};
    if (s.tau[i] != i) gens.push_back(s.tau[i]);
    for (size_t g : gens) {
        EvalContext ctx(probe, pack);
        const Operator& bleft = bi_operator(probe, pack, s.tau[g]);
        Operator bright = sigma_tau_b_op(probe, pack, g);
        std::vector<Operator> lhs;
        for (size_t k = 0; k < nmono; ++k)
            lhs.push_back(bleft.compose(mono_ops[k]) - mono_ops[k].compose(bright));
        for (size_t v = 0; v < probe.dim(); ++v) {
            std::map<size_t, std::vector<Scalar>> sys;  // row index w -> coefficients
            for (size_t k = 0; k < nmono; ++k)
                for (const auto& [w, c] : lhs[k].column(v)) {
                    auto& row = sys[w];
                    row.resize(nmono, Scalar(0));
                    row[k] = c;
                }
            for (auto& [w, row] : sys) {
                if (levels[v] - levels[w] + 1 > cutoff) continue;
                row.resize(nmono, Scalar(0));
                // pinned unknown 0: move to the right-hand side
                Scalar r = -row[0];
                row[0] = Scalar(0);
                // reduce against existing rows
                for (size_t p = 0; p < rows.size(); ++p) {
                    size_t lc = lead[p];
                    if (row[lc].is_zero()) continue;
                    Scalar f = row[lc];
                    for (size_t cc = 0; cc < nmono; ++cc) row[cc] -= f * rows[p][cc];
                    r -= f * rhs[p];
                }
                size_t lc = nmono;
                for (size_t cc = 1; cc < nmono; ++cc)
                    if (!row[cc].is_zero()) { lc = cc; break; }
                if (lc == nmono) {
                    if (!r.is_zero()) throw QuasiKError("solve_upsilon: inconsistent system");
                    continue;
                }
                Scalar inv = row[lc].inverse();
                for (size_t cc = 0; cc < nmono; ++cc) row[cc] *= inv;
                r *= inv;
                rows.push_back(std::move(row));
                rhs.push_back(std::move(r));
                lead.push_back(lc);
            }
        }
    }
    // every non-unit unknown needs a pivot
    std::vector<long> pivot_of(nmono, -1);
    for (size_t p = 0; p < rows.size(); ++p) pivot_of[lead[p]] = static_cast<long>(p);
    for (size_t k = 1; k < nmono; ++k)
        if (pivot_of[k] < 0)
            throw QuasiKError("solve_upsilon: underdetermined system (probe too small) at monomial " +
                              ups.monomials[k].label(ups.type, ups.i, ups.ti));
    // back substitution
    ups.coefs.assign(nmono, Scalar(0));
    ups.coefs[0] = Scalar(1);
    for (size_t kk = nmono; kk-- > 1;) {
        size_t p = static_cast<size_t>(pivot_of[kk]);
        Scalar val = rhs[p];
        for (size_t cc = kk + 1; cc < nmono; ++cc) val -= rows[p][cc] * ups.coefs[cc];
        ups.coefs[kk] = std::move(val);
    }
    return ups;
}


}  // namespace iqsym
