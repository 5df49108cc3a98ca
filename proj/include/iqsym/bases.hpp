#pragma once

// Canonical, icanonical, and quasi icanonical bases of the rank-one and
// rank-two simple modules, with exact transition matrices and the closed
// transition formulas they are checked against.

#include "iqsym/iqact.hpp"

namespace iqsym {

enum class BasisFamilyTag { CB_sl2, iCB_sl2, CB_sl3, qiCB_sl3 };

struct BasisFamily {
    BasisFamilyTag tag;
    std::vector<std::string> labels;
    std::vector<SparseVec> vectors;
};

struct BasesError : std::runtime_error {
    explicit BasesError(const std::string& msg) : std::runtime_error(msg) {}
};

using Matrix = std::vector<std::vector<Scalar>>;  // row-major

// express each target vector over the given basis: targets[j] = sum_k M[k][j] basis[k]
inline Matrix express_in_basis(const std::vector<SparseVec>& basis, const std::vector<SparseVec>& targets,
                               size_t ambient_dim) {
    size_t n = basis.size();
    std::vector<std::vector<Scalar>> a(ambient_dim, std::vector<Scalar>(n, Scalar(0)));
    std::vector<std::vector<Scalar>> b(ambient_dim, std::vector<Scalar>(targets.size(), Scalar(0)));
    for (size_t k = 0; k < n; ++k)
        for (const auto& [r, c] : basis[k]) a[r][k] = c;
    for (size_t j = 0; j < targets.size(); ++j)
        for (const auto& [r, c] : targets[j]) b[r][j] = c;
    std::vector<size_t> pivot_row(n, SIZE_MAX);
    size_t prow = 0;
    for (size_t col = 0; col < n && prow < ambient_dim; ++col) {
        size_t sel = SIZE_MAX;
        for (size_t r = prow; r < ambient_dim; ++r)
            if (!a[r][col].is_zero()) { sel = r; break; }
        if (sel == SIZE_MAX) throw BasesError("express_in_basis: singular family");
        std::swap(a[sel], a[prow]);
        std::swap(b[sel], b[prow]);
        Scalar inv = a[prow][col].inverse();
        for (size_t c = 0; c < n; ++c) a[prow][c] *= inv;
        for (size_t c = 0; c < targets.size(); ++c) b[prow][c] *= inv;
        for (size_t r = 0; r < ambient_dim; ++r) {
            if (r == prow || a[r][col].is_zero()) continue;
            Scalar f = a[r][col];
            for (size_t c = 0; c < n; ++c) a[r][c] -= f * a[prow][c];
            for (size_t c = 0; c < targets.size(); ++c) b[r][c] -= f * b[prow][c];
        }
        pivot_row[col] = prow;
        ++prow;
    }
    Matrix out(n, std::vector<Scalar>(targets.size(), Scalar(0)));
    for (size_t k = 0; k < n; ++k)
        for (size_t j = 0; j < targets.size(); ++j) out[k][j] = b[pivot_row[k]][j];
    // residual check: rows without pivots must have vanished
    for (size_t r = 0; r < ambient_dim; ++r) {
        bool is_pivot = false;
        for (size_t k = 0; k < n; ++k)
            if (pivot_row[k] == r) is_pivot = true;
        if (is_pivot) continue;
        for (size_t j = 0; j < targets.size(); ++j)
            if (!b[r][j].is_zero()) throw BasesError("express_in_basis: target outside the span");
    }
    return out;
}

// index set of the canonical basis of L(m,n): straight words (a,b,c) with
// b >= a+c, c <= m, a <= b-c <= n, plus the mirrored strict words
struct Sl3Index {
    long a, b, c;
    bool mirrored;  // mirrored: second-node-leading word

    long depth() const { return a + b + c; }
    std::string label(const char* gen) const {
        auto part = [&](int node, long e) {
            return std::string(gen) + std::to_string(node) + "^(" + std::to_string(e) + ")";
        };
        // mirrored words read F_2^{(c)} F_1^{(b)} F_2^{(a)} with a applied first
        if (!mirrored) return part(1, a) + part(2, b) + part(1, c);
        return part(2, c) + part(1, b) + part(2, a);
    }
};

inline std::vector<Sl3Index> sl3_basis_indices(long m, long n) {
    std::vector<Sl3Index> out;
    for (long b = 0; b <= m + n; ++b)
        for (long a = 0; a <= b; ++a)
            for (long c = 0; a + c <= b; ++c) {
                if (c <= m && a <= b - c && b - c <= n) out.push_back({a, b, c, false});
                if (b > a + c && a <= n && c <= b - a && b - a <= m) out.push_back({a, b, c, true});
            }
    std::sort(out.begin(), out.end(), [](const Sl3Index& x, const Sl3Index& y) {
        return std::tie(x.a, x.b, x.c, x.mirrored) < std::tie(y.a, y.b, y.c, y.mirrored);
    });
    return out;
}

inline BasisFamily basis_build(const ModuleSpace& m, BasisFamilyTag tag, const ParameterPack& pack) {
    const SatakeDatum& s = m.datum();
    BasisFamily out;
    out.tag = tag;
    SparseVec eta = sv::unit(0);
    switch (tag) {
        case BasisFamilyTag::CB_sl2: {
            if (s.rank() != 1) throw BasesError("CB_sl2: rank-one module required");
            long n = m.highest_weight()[0];
            for (long k = 0; k <= n; ++k) {
                out.labels.push_back("F^(" + std::to_string(k) + ")");
                out.vectors.push_back(m.divided_power(GenKind::F, 0, k).apply(eta));
            }
            break;
        }
        case BasisFamilyTag::iCB_sl2: {
            if (s.rank() != 1 || s.tau[0] != 0) throw BasesError("iCB_sl2: split rank-one module required");
            long n = m.highest_weight()[0];
            EvalContext ctx(m, pack);
            for (long k = 0; k <= n; ++k) {
                out.labels.push_back("B^(" + std::to_string(k) + ")");
                out.vectors.push_back(ctx.idp_op(0, static_cast<int>(n % 2), k).apply(eta));
            }
            break;
        }
        case BasisFamilyTag::CB_sl3: {
            if (s.rank() != 2 || s.c(0, 1) != -1) throw BasesError("CB_sl3: A2 module required");
            long mm = m.highest_weight()[0], nn = m.highest_weight()[1];
            for (const Sl3Index& ix : sl3_basis_indices(mm, nn)) {
                out.labels.push_back(ix.label("F"));
                size_t lead = ix.mirrored ? 1 : 0;
                long first = ix.mirrored ? ix.a : ix.c, last = ix.mirrored ? ix.c : ix.a;
                SparseVec v = m.divided_power(GenKind::F, lead, first).apply(eta);
                v = m.divided_power(GenKind::F, 1 - lead, ix.b).apply(v);
                v = m.divided_power(GenKind::F, lead, last).apply(v);
                out.vectors.push_back(std::move(v));
            }
            break;
        }
        case BasisFamilyTag::qiCB_sl3: {
            if (s.rank() != 2 || s.c(0, 1) != -1 || s.tau[0] != 1)
                throw BasesError("qiCB_sl3: AIII module required");
            long mm = m.highest_weight()[0], nn = m.highest_weight()[1];
            EvalContext ctx(m, pack);
            for (const Sl3Index& ix : sl3_basis_indices(mm, nn)) {
                out.labels.push_back(ix.label("B"));
                size_t lead = ix.mirrored ? 1 : 0;
                long first = ix.mirrored ? ix.a : ix.c, last = ix.mirrored ? ix.c : ix.a;
                SparseVec v = ctx.gen_dp(UGen::B, lead, first).apply(eta);
                v = ctx.gen_dp(UGen::B, 1 - lead, ix.b).apply(v);
                v = ctx.gen_dp(UGen::B, lead, last).apply(v);
                out.vectors.push_back(std::move(v));
            }
            break;
        }
    }
    if (out.vectors.size() != m.dim()) throw BasesError("basis_build: wrong cardinality");
    // invertibility
    std::vector<SparseVec> units;
    for (size_t k = 0; k < m.dim(); ++k) units.push_back(sv::unit(k));
    express_in_basis(out.vectors, units, m.dim());
    return out;
}

// transition matrix: to_j = sum_k M[k][j] from_k
inline Matrix transition(const BasisFamily& from, const BasisFamily& to, size_t ambient_dim) {
    return express_in_basis(from.vectors, to.vectors, ambient_dim);
}

inline Matrix matrix_product(const Matrix& a, const Matrix& b) {
    size_t n = a.size(), k = b.size(), mcols = b.empty() ? 0 : b[0].size();
    Matrix out(n, std::vector<Scalar>(mcols, Scalar(0)));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < mcols; ++j)
            for (size_t t = 0; t < k; ++t) out[i][j] += a[i][t] * b[t][j];
    return out;
}

inline bool is_identity(const Matrix& m) {
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < m[i].size(); ++j)
            if (!(m[i][j] == Scalar(i == j ? 1 : 0))) return false;
    return true;
}

inline std::string matrix_to_csv(const Matrix& m, const std::vector<std::string>& row_labels,
                                 const std::vector<std::string>& col_labels) {
    std::ostringstream os;
    os << "basis";
    for (const auto& c : col_labels) os << "," << c;
    os << "\n";
    for (size_t i = 0; i < m.size(); ++i) {
        os << row_labels[i];
        for (size_t j = 0; j < m[i].size(); ++j) os << ",\"" << m[i][j].to_string() << "\"";
        os << "\n";
    }
    return os.str();
}

}  // namespace iqsym
