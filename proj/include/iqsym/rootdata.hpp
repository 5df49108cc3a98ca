#pragma once

// Cartan data, root data with diagram involution, the iweight lattice
// X_i = X / {lambda + tau(lambda)}, and relative Weyl group combinatorics.
//
// X and Y are both Z^rank; X carries fundamental-weight coordinates, so
// <h_i, omega_j> = delta_ij and alpha_j is the j-th column of the Cartan
// matrix.  tau permutes coordinates on both sides.

#include "iqsym/scalar.hpp"

#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace iqsym {

using XVec = std::vector<long>;  // weight, fundamental-weight coordinates
using YVec = std::vector<long>;  // coweight, coordinates in the h_i

struct RootDataError : std::runtime_error {
    explicit RootDataError(const std::string& msg) : std::runtime_error(msg) {}
};

enum class RankOneType { split, diagonal, quasi_split, non_finite };

inline const char* to_string(RankOneType t) {
    switch (t) {
        case RankOneType::split: return "split";
        case RankOneType::diagonal: return "diagonal";
        case RankOneType::quasi_split: return "quasi_split";
        case RankOneType::non_finite: return "non_finite";
    }
    return "?";
}

struct CartanDatum {
    std::vector<std::vector<long>> c;  // Cartan matrix c_{ij}
    std::vector<int> d;                // symmetrizers d_i = (i.i)/2

    size_t rank() const { return c.size(); }

    void validate() const {
        size_t n = rank();
        if (d.size() != n) throw RootDataError("CartanDatum: rank mismatch between C and d");
        for (size_t i = 0; i < n; ++i) {
            if (c[i].size() != n) throw RootDataError("CartanDatum: C not square");
            if (c[i][i] != 2) throw RootDataError("CartanDatum: c_ii != 2");
            if (d[i] < 1) throw RootDataError("CartanDatum: d_i < 1");
            for (size_t j = 0; j < n; ++j) {
                if (i != j && c[i][j] > 0) throw RootDataError("CartanDatum: off-diagonal c_ij > 0");
                if (d[i] * c[i][j] != d[j] * c[j][i])
                    throw RootDataError("CartanDatum: d_i c_ij != d_j c_ji (not symmetrizable)");
            }
        }
    }
};

namespace detail {

// Smith normal form of an integer matrix: returns (U, diag) with U unimodular
// such that the column span of U*A is the diagonal lattice given by diag
// (diag[k] == 0 marks a free direction).  Only U and the diagonal are needed
// to test membership of vectors in the column span of A.
struct SmithData {
    std::vector<std::vector<long>> u;  // rows x rows, unimodular
    std::vector<long> diag;            // nonneg entries, zero-padded to row count
};

inline SmithData smith_normal_form(std::vector<std::vector<long>> a, size_t rows, size_t cols) {
    SmithData out;
    out.u.assign(rows, std::vector<long>(rows, 0));
    for (size_t i = 0; i < rows; ++i) out.u[i][i] = 1;

    auto row_op = [&](size_t r1, size_t r2, long f) {  // row r1 += f * row r2
        for (size_t j = 0; j < cols; ++j) a[r1][j] += f * a[r2][j];
        for (size_t j = 0; j < rows; ++j) out.u[r1][j] += f * out.u[r2][j];
    };
    auto row_swap = [&](size_t r1, size_t r2) {
        std::swap(a[r1], a[r2]);
        std::swap(out.u[r1], out.u[r2]);
    };
    auto col_op = [&](size_t c1, size_t c2, long f) {
        for (size_t i = 0; i < rows; ++i) a[i][c1] += f * a[i][c2];
    };
    auto col_swap = [&](size_t c1, size_t c2) {
        for (size_t i = 0; i < rows; ++i) std::swap(a[i][c1], a[i][c2]);
    };

    size_t t = 0;
    while (t < rows && t < cols) {
        // find a pivot of minimal absolute value
        size_t pi = t, pj = t;
        long best = 0;
        for (size_t i = t; i < rows; ++i)
            for (size_t j = t; j < cols; ++j)
                if (a[i][j] != 0 && (best == 0 || std::abs(a[i][j]) < best)) {
                    best = std::abs(a[i][j]);
                    pi = i;
                    pj = j;
                }
        if (best == 0) break;
        row_swap(t, pi);
        col_swap(t, pj);
        bool clean = true;
        for (size_t i = t + 1; i < rows; ++i)
            if (a[i][t] != 0) {
                row_op(i, t, -(a[i][t] / a[t][t]));
                if (a[i][t] != 0) clean = false;
            }
        for (size_t j = t + 1; j < cols; ++j)
            if (a[t][j] != 0) {
                col_op(j, t, -(a[t][j] / a[t][t]));
                if (a[t][j] != 0) clean = false;
            }
        if (!clean) continue;  // smaller remainders appeared; repeat with new pivot
        ++t;
    }
    out.diag.assign(rows, 0);
    for (size_t k = 0; k < t; ++k) out.diag[k] = std::abs(a[k][k]);
    return out;
}

}  // namespace detail

struct SatakeDatum {
    CartanDatum cartan;
    std::vector<size_t> tau;  // involution on indices, 0-based

    detail::SmithData snf;  // for the sublattice {lambda + tau(lambda)}

    size_t rank() const { return cartan.rank(); }
    long c(size_t i, size_t j) const { return cartan.c[i][j]; }
    int d(size_t i) const { return cartan.d[i]; }

    long pair(const YVec& mu, const XVec& lam) const {
        long s = 0;
        for (size_t k = 0; k < rank(); ++k) s += mu[k] * lam[k];
        return s;
    }

    XVec alpha(size_t j) const {
        XVec a(rank());
        for (size_t i = 0; i < rank(); ++i) a[i] = cartan.c[i][j];
        return a;
    }
    YVec coroot(size_t i) const {
        YVec h(rank(), 0);
        h[i] = 1;
        return h;
    }

    // <mu, alpha_i> for mu in Y
    long pair_alpha(const YVec& mu, size_t i) const {
        long s = 0;
        for (size_t k = 0; k < rank(); ++k) s += mu[k] * cartan.c[k][i];
        return s;
    }

    XVec tau_x(const XVec& lam) const {
        XVec r(rank());
        for (size_t k = 0; k < rank(); ++k) r[tau[k]] = lam[k];
        return r;
    }
    YVec tau_y(const YVec& mu) const {
        YVec r(rank());
        for (size_t k = 0; k < rank(); ++k) r[tau[k]] = mu[k];
        return r;
    }

    XVec simple_reflect_x(size_t i, const XVec& lam) const {
        XVec r = lam;
        long li = lam[i];
        for (size_t k = 0; k < rank(); ++k) r[k] -= li * cartan.c[k][i];
        return r;
    }
    YVec simple_reflect_y(size_t i, const YVec& mu) const {
        YVec r = mu;
        r[i] -= pair_alpha(mu, i);
        return r;
    }

    // the relative reflection varsigma_i = longest element of W_{i, tau i}
    XVec rel_reflect_x(size_t i, const XVec& lam) const {
        switch (classify(i)) {
            case RankOneType::split: return simple_reflect_x(i, lam);
            case RankOneType::diagonal: return simple_reflect_x(i, simple_reflect_x(tau[i], lam));
            case RankOneType::quasi_split:
                return simple_reflect_x(i, simple_reflect_x(tau[i], simple_reflect_x(i, lam)));
            default: throw RootDataError("rel_reflect_x: non-finite rank-one type");
        }
    }
    YVec rel_reflect_y(size_t i, const YVec& mu) const {
        switch (classify(i)) {
            case RankOneType::split: return simple_reflect_y(i, mu);
            case RankOneType::diagonal: return simple_reflect_y(i, simple_reflect_y(tau[i], mu));
            case RankOneType::quasi_split:
                return simple_reflect_y(i, simple_reflect_y(tau[i], simple_reflect_y(i, mu)));
            default: throw RootDataError("rel_reflect_y: non-finite rank-one type");
        }
    }

    // reduced word of varsigma_i in the s_j
    std::vector<size_t> rel_reflection_word(size_t i) const {
        switch (classify(i)) {
            case RankOneType::split: return {i};
            case RankOneType::diagonal: return {i, tau[i]};
            case RankOneType::quasi_split: return {i, tau[i], i};
            default: throw RootDataError("rel_reflection_word: non-finite rank-one type");
        }
    }

    RankOneType classify(size_t i) const {
        if (tau[i] == i) return RankOneType::split;
        long cc = cartan.c[i][tau[i]];
        if (cc == 0) return RankOneType::diagonal;
        if (cc == -1) return RankOneType::quasi_split;
        return RankOneType::non_finite;
    }

    bool is_ifinite(size_t i) const { return classify(i) != RankOneType::non_finite; }
};

inline SatakeDatum build_satake(CartanDatum cartan, std::vector<size_t> tau) {
    cartan.validate();
    size_t n = cartan.rank();
    if (tau.size() != n) throw RootDataError("build_satake: tau size mismatch");
    for (size_t i = 0; i < n; ++i) {
        if (tau[i] >= n || tau[tau[i]] != i) throw RootDataError("build_satake: tau is not an involution");
        if (cartan.d[tau[i]] != cartan.d[i]) throw RootDataError("build_satake: tau does not preserve d");
        for (size_t j = 0; j < n; ++j)
            if (cartan.c[tau[i]][tau[j]] != cartan.c[i][j])
                throw RootDataError("build_satake: tau does not preserve the Cartan matrix");
    }
    SatakeDatum s;
    s.cartan = std::move(cartan);
    s.tau = std::move(tau);
    // sublattice generated by e_k + tau(e_k); columns of the generator matrix
    std::vector<std::vector<long>> gen(n, std::vector<long>(n, 0));
    for (size_t k = 0; k < n; ++k) {
        gen[k][k] += 1;
        gen[s.tau[k]][k] += 1;
    }
    s.snf = detail::smith_normal_form(std::move(gen), n, n);
    return s;
}

// canonical representative of lambda in X_i = X / {beta + tau(beta)}
struct IWeight {
    XVec lift;
    std::vector<long> normal;  // U*lift reduced mod the SNF diagonal

    friend bool operator==(const IWeight& a, const IWeight& b) { return a.normal == b.normal; }
    friend bool operator!=(const IWeight& a, const IWeight& b) { return !(a == b); }
    friend bool operator<(const IWeight& a, const IWeight& b) { return a.normal < b.normal; }
};

inline IWeight iweight_normalize(const SatakeDatum& s, XVec lam) {
    size_t n = s.rank();
    IWeight w;
    w.normal.assign(n, 0);
    for (size_t i = 0; i < n; ++i) {
        long acc = 0;
        for (size_t j = 0; j < n; ++j) acc += s.snf.u[i][j] * lam[j];
        long m = s.snf.diag[i];
        if (m > 0) {
            acc %= m;
            if (acc < 0) acc += m;
        }
        w.normal[i] = acc;
    }
    w.lift = std::move(lam);
    return w;
}

// parity of <h_i, lambda> for split i; class invariant
inline int iweight_parity(const SatakeDatum& s, const IWeight& w, size_t i) {
    if (s.tau[i] != i) throw RootDataError("iweight_parity: i is not split");
    long p = w.lift[i] % 2;
    return static_cast<int>(p < 0 ? p + 2 : p);
}

// lambda_{i,tau} = <h_i - h_{tau i}, lambda>; class invariant for any i
inline long iweight_itau(const SatakeDatum& s, const IWeight& w, size_t i) {
    return w.lift[i] - w.lift[s.tau[i]];
}

inline long relative_cartan(const SatakeDatum& s, size_t i, size_t j) {
    if (!s.is_ifinite(i)) throw RootDataError("relative_cartan: i not in I^fin");
    if (j == i || j == s.tau[i]) throw RootDataError("relative_cartan: j in {i, tau i}");
    long num = 2 * (s.c(i, j) + s.c(s.tau[i], j));
    long den = 2 + s.c(i, s.tau[i]);
    if (num % den != 0) throw RootDataError("relative_cartan: non-integral value");
    return num / den;
}

// order of varsigma_i varsigma_j in the relative Weyl group; 0 encodes infinity
inline int braid_order(const SatakeDatum& s, size_t i, size_t j) {
    long prod = relative_cartan(s, i, j) * relative_cartan(s, j, i);
    switch (prod) {
        case 0: return 2;
        case 1: return 3;
        case 2: return 4;
        case 3: return 6;
        default: return 0;
    }
}

// ---------------------------------------------------------------------------
// plain config format:  cartan = [[2,-1],[-1,2]]   d = [1,1]   tau = [2,1]
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<long> parse_long_list(const std::string& text, size_t& pos) {
    std::vector<long> out;
    while (pos < text.size() && text[pos] != '[') ++pos;
    if (pos >= text.size()) throw RootDataError("config: expected '['");
    ++pos;
    while (pos < text.size() && text[pos] != ']') {
        while (pos < text.size() && (text[pos] == ',' || std::isspace(static_cast<unsigned char>(text[pos])))) ++pos;
        if (pos < text.size() && text[pos] == ']') break;
        size_t start = pos;
        if (text[pos] == '-' || text[pos] == '+') ++pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) throw RootDataError("config: expected integer");
        out.push_back(std::atol(text.substr(start, pos - start).c_str()));
    }
    if (pos >= text.size()) throw RootDataError("config: expected ']'");
    ++pos;
    return out;
}

}  // namespace detail

// parses the three keys from `key = value` lines; other lines are ignored
inline SatakeDatum parse_satake_config(const std::string& text) {
    std::optional<std::vector<std::vector<long>>> cmat;
    std::optional<std::vector<long>> dvec, tauvec;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        std::string key = line.substr(0, eq);
        key.erase(std::remove_if(key.begin(), key.end(), [](unsigned char ch) { return std::isspace(ch); }),
                  key.end());
        std::string val = line.substr(eq + 1);
        size_t pos = 0;
        if (key == "cartan") {
            std::vector<std::vector<long>> rows;
            while (pos < val.size() && val[pos] != '[') ++pos;
            if (pos >= val.size()) throw RootDataError("config: cartan expects [[..],..]");
            ++pos;
            while (pos < val.size() && val[pos] != ']') {
                while (pos < val.size() && (val[pos] == ',' || std::isspace(static_cast<unsigned char>(val[pos])))) ++pos;
                if (pos < val.size() && val[pos] == ']') break;
                rows.push_back(detail::parse_long_list(val, pos));
            }
            cmat = std::move(rows);
        } else if (key == "d") {
            dvec = detail::parse_long_list(val, pos);
        } else if (key == "tau") {
            tauvec = detail::parse_long_list(val, pos);
        }
    }
    if (!cmat) throw RootDataError("config: missing cartan");
    CartanDatum cd;
    cd.c = *cmat;
    if (dvec) {
        for (long x : *dvec) cd.d.push_back(static_cast<int>(x));
    } else {
        cd.d.assign(cd.c.size(), 1);
    }
    std::vector<size_t> tau;
    if (tauvec) {
        for (long x : *tauvec) {
            if (x < 1) throw RootDataError("config: tau entries are 1-based");
            tau.push_back(static_cast<size_t>(x - 1));
        }
    } else {
        tau.resize(cd.c.size());
        std::iota(tau.begin(), tau.end(), size_t{0});
    }
    return build_satake(std::move(cd), std::move(tau));
}

// ---------------------------------------------------------------------------
// stock data used across the test zoo
// ---------------------------------------------------------------------------

inline CartanDatum cartan_A(size_t n) {
    CartanDatum cd;
    cd.c.assign(n, std::vector<long>(n, 0));
    cd.d.assign(n, 1);
    for (size_t i = 0; i < n; ++i) {
        cd.c[i][i] = 2;
        if (i + 1 < n) {
            cd.c[i][i + 1] = -1;
            cd.c[i + 1][i] = -1;
        }
    }
    return cd;
}

// c_{21} = -2; node 1 long (d=2), node 2 short
inline CartanDatum cartan_B2() {
    CartanDatum cd;
    cd.c = {{2, -1}, {-2, 2}};
    cd.d = {2, 1};
    return cd;
}

// c_{21} = -3; node 1 long (d=3), node 2 short
inline CartanDatum cartan_G2() {
    CartanDatum cd;
    cd.c = {{2, -1}, {-3, 2}};
    cd.d = {3, 1};
    return cd;
}

inline CartanDatum cartan_A1xA1() {
    CartanDatum cd;
    cd.c = {{2, 0}, {0, 2}};
    cd.d = {1, 1};
    return cd;
}

inline std::vector<size_t> tau_identity(size_t n) {
    std::vector<size_t> t(n);
    std::iota(t.begin(), t.end(), size_t{0});
    return t;
}

inline std::vector<size_t> tau_flip(size_t n) {  // i <-> n-1-i
    std::vector<size_t> t(n);
    for (size_t i = 0; i < n; ++i) t[i] = n - 1 - i;
    return t;
}

}  // namespace iqsym
