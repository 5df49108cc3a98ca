#pragma once

// Exact arithmetic in K(v), K = Q(i), with v*v = q.  Every scalar of the
// theory lives here: Laurent polynomials in v over the Gaussian rationals,
// fractions thereof in a canonical reduced form, and the q-combinatorics
// ([n]_{q^d}, q-factorials, q- and q^2-binomials) built on top.

#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace iqsym {

struct ScalarError : std::runtime_error {
    explicit ScalarError(const std::string& msg) : std::runtime_error(msg) {}
};

// ---------------------------------------------------------------------------
// Gaussian rationals Q(i)
// ---------------------------------------------------------------------------

struct GaussQ {
    mpq_class re, im;

    GaussQ() : re(0), im(0) {}
    GaussQ(long r) : re(r), im(0) {}
    GaussQ(mpq_class r) : re(std::move(r)), im(0) { re.canonicalize(); }
    GaussQ(mpq_class r, mpq_class i) : re(std::move(r)), im(std::move(i)) {
        re.canonicalize();
        im.canonicalize();
    }

    static GaussQ unit_i() { return GaussQ(mpq_class(0), mpq_class(1)); }

    bool is_zero() const { return re == 0 && im == 0; }

    GaussQ operator-() const { return GaussQ(-re, -im); }
    GaussQ& operator+=(const GaussQ& o) { re += o.re; im += o.im; return *this; }
    GaussQ& operator-=(const GaussQ& o) { re -= o.re; im -= o.im; return *this; }

    friend GaussQ operator+(GaussQ a, const GaussQ& b) { a += b; return a; }
    friend GaussQ operator-(GaussQ a, const GaussQ& b) { a -= b; return a; }
    friend GaussQ operator*(const GaussQ& a, const GaussQ& b) {
        return GaussQ(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
    }
    GaussQ inverse() const {
        mpq_class n = re * re + im * im;
        if (n == 0) throw ScalarError("GaussQ: inverse of zero");
        return GaussQ(re / n, -im / n);
    }
    friend GaussQ operator/(const GaussQ& a, const GaussQ& b) { return a * b.inverse(); }
    friend bool operator==(const GaussQ& a, const GaussQ& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const GaussQ& a, const GaussQ& b) { return !(a == b); }
};

// ---------------------------------------------------------------------------
// Laurent polynomials in v over Q(i).  Coefficient c[k] sits at v^(lo+k);
// the zero polynomial is the empty coefficient vector with lo = 0.
// ---------------------------------------------------------------------------

class VPoly {
  public:
    VPoly() = default;
    VPoly(GaussQ c, int exp = 0) {
        if (!c.is_zero()) { lo_ = exp; c_.push_back(std::move(c)); }
    }
    static VPoly from_coeffs(int lo, std::vector<GaussQ> c) {
        VPoly p;
        p.lo_ = lo;
        p.c_ = std::move(c);
        p.trim();
        return p;
    }

    bool is_zero() const { return c_.empty(); }
    int lo() const { return lo_; }
    int hi() const { return lo_ + static_cast<int>(c_.size()) - 1; }  // only if nonzero
    const std::vector<GaussQ>& coeffs() const { return c_; }

    GaussQ coeff(int exp) const {
        if (is_zero() || exp < lo_ || exp > hi()) return GaussQ();
        return c_[static_cast<size_t>(exp - lo_)];
    }

    VPoly operator-() const {
        VPoly r(*this);
        for (auto& x : r.c_) x = -x;
        return r;
    }

    friend VPoly operator+(const VPoly& a, const VPoly& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        int lo = std::min(a.lo_, b.lo_);
        int hi = std::max(a.hi(), b.hi());
        std::vector<GaussQ> c(static_cast<size_t>(hi - lo + 1));
        for (size_t k = 0; k < a.c_.size(); ++k) c[static_cast<size_t>(a.lo_ - lo) + k] += a.c_[k];
        for (size_t k = 0; k < b.c_.size(); ++k) c[static_cast<size_t>(b.lo_ - lo) + k] += b.c_[k];
        return from_coeffs(lo, std::move(c));
    }
    friend VPoly operator-(const VPoly& a, const VPoly& b) { return a + (-b); }
    friend VPoly operator*(const VPoly& a, const VPoly& b) {
        if (a.is_zero() || b.is_zero()) return VPoly();
        std::vector<GaussQ> c(a.c_.size() + b.c_.size() - 1);
        for (size_t j = 0; j < a.c_.size(); ++j) {
            if (a.c_[j].is_zero()) continue;
            for (size_t k = 0; k < b.c_.size(); ++k) {
                if (b.c_[k].is_zero()) continue;
                c[j + k] += a.c_[j] * b.c_[k];
            }
        }
        return from_coeffs(a.lo_ + b.lo_, std::move(c));
    }
    friend bool operator==(const VPoly& a, const VPoly& b) {
        return a.lo_ == b.lo_ && a.c_ == b.c_;
    }

    // v -> v^{-1}; coefficients untouched.
    VPoly bar() const {
        if (is_zero()) return VPoly();
        std::vector<GaussQ> c(c_.rbegin(), c_.rend());
        return from_coeffs(-hi(), std::move(c));
    }

    // v -> v^k, k >= 1 (used to reach base q^2 combinatorics)
    VPoly stretch(int k) const {
        if (is_zero()) return VPoly();
        std::vector<GaussQ> c(c_.size() * static_cast<size_t>(k) - static_cast<size_t>(k - 1));
        for (size_t j = 0; j < c_.size(); ++j) c[j * static_cast<size_t>(k)] = c_[j];
        return from_coeffs(lo_ * k, std::move(c));
    }

    VPoly shifted(int dexp) const {
        VPoly r(*this);
        if (!r.is_zero()) r.lo_ += dexp;
        return r;
    }

    GaussQ leading() const { return c_.empty() ? GaussQ() : c_.back(); }
    int degree() const { return hi(); }  // nonzero only

  private:
    void trim() {
        size_t b = 0, e = c_.size();
        while (e > b && c_[e - 1].is_zero()) --e;
        while (b < e && c_[b].is_zero()) ++b;
        if (b == e) { c_.clear(); lo_ = 0; return; }
        if (b > 0 || e < c_.size()) {
            c_ = std::vector<GaussQ>(c_.begin() + static_cast<long>(b), c_.begin() + static_cast<long>(e));
            lo_ += static_cast<int>(b);
        }
    }

    int lo_ = 0;
    std::vector<GaussQ> c_;
};

namespace detail {

// Ordinary-polynomial division (inputs with lo >= 0 viewed as polynomials);
// field coefficients, so this is exact Euclidean division.
inline void poly_divmod(const VPoly& a, const VPoly& b, VPoly& quo, VPoly& rem) {
    if (b.is_zero()) throw ScalarError("poly_divmod: zero divisor");
    quo = VPoly();
    rem = a;
    GaussQ blead_inv = b.leading().inverse();
    while (!rem.is_zero() && rem.degree() >= b.degree()) {
        GaussQ c = rem.leading() * blead_inv;
        int e = rem.degree() - b.degree();
        VPoly t(c, e);
        quo = quo + t;
        rem = rem - t * b;
    }
}

inline VPoly poly_gcd(VPoly a, VPoly b) {
    auto make_monic = [](VPoly& p) {
        if (p.is_zero()) return;
        GaussQ inv = p.leading().inverse();
        p = p * VPoly(inv, 0);
    };
    while (!b.is_zero()) {
        VPoly q, r;
        poly_divmod(a, b, q, r);
        a = std::move(b);
        b = std::move(r);
        make_monic(b);
    }
    make_monic(a);
    return a;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Scalar: canonical fraction num/den with num a Laurent polynomial and den an
// ordinary monic polynomial with nonzero constant term, gcd(num_core, den) = 1.
// Equality is structural.
// ---------------------------------------------------------------------------

class Scalar {
  public:
    Scalar() : num_(), den_(GaussQ(1), 0) {}
    Scalar(long n) : num_(GaussQ(n), 0), den_(GaussQ(1), 0) {}
    Scalar(GaussQ c) : num_(std::move(c), 0), den_(GaussQ(1), 0) {}
    Scalar(mpq_class r) : num_(GaussQ(std::move(r)), 0), den_(GaussQ(1), 0) {}

    static Scalar v_pow(int e) { Scalar s; s.num_ = VPoly(GaussQ(1), e); return s; }
    static Scalar q_pow(int e) { return v_pow(2 * e); }
    static Scalar unit_i() { return Scalar(GaussQ::unit_i()); }
    static Scalar from_parts(VPoly num, VPoly den) {
        Scalar s;
        s.num_ = std::move(num);
        s.den_ = std::move(den);
        s.reduce();
        return s;
    }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return *this == Scalar(1); }
    bool is_laurent() const { return den_ == VPoly(GaussQ(1), 0); }
    const VPoly& num() const { return num_; }
    const VPoly& den() const { return den_; }

    // entries in Z[q^{\pm 1}]: integer coefficients, no imaginary part,
    // even powers of v only, trivial denominator
    bool is_integral_q_laurent() const {
        if (!is_laurent()) return false;
        if (num_.is_zero()) return true;
        for (int e = num_.lo(); e <= num_.hi(); ++e) {
            GaussQ c = num_.coeff(e);
            if (c.is_zero()) continue;
            if (e % 2 != 0) return false;
            if (c.im != 0) return false;
            if (c.re.get_den() != 1) return false;
        }
        return true;
    }

    Scalar operator-() const { Scalar s(*this); s.num_ = -s.num_; return s; }

    friend Scalar operator+(const Scalar& a, const Scalar& b) {
        return from_parts(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }
    friend Scalar operator*(const Scalar& a, const Scalar& b) {
        return from_parts(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend Scalar operator/(const Scalar& a, const Scalar& b) {
        if (b.is_zero())
            throw ScalarError("Scalar: division by zero: (" + a.to_string() + ") / (" + b.to_string() + ")");
        // b = v^shift * core / den with core(0) != 0: invert exactly
        int shift = b.num_.lo();
        VPoly core = b.num_.shifted(-shift);
        return from_parts(a.num_ * b.den_, (a.den_ * core).shifted(shift));
    }
    Scalar& operator+=(const Scalar& o) { *this = *this + o; return *this; }
    Scalar& operator-=(const Scalar& o) { *this = *this - o; return *this; }
    Scalar& operator*=(const Scalar& o) { *this = *this * o; return *this; }
    Scalar& operator/=(const Scalar& o) { *this = *this / o; return *this; }

    friend bool operator==(const Scalar& a, const Scalar& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    Scalar inverse() const { return Scalar(1) / *this; }

    Scalar pow(int e) const {
        if (e == 0) return Scalar(1);
        Scalar base = e > 0 ? *this : inverse();
        int n = std::abs(e);
        Scalar r(1);
        while (n) {
            if (n & 1) r *= base;
            base = (n >>= 1) ? base * base : base;
        }
        return r;
    }

    // the bar map v -> v^{-1} (coefficients, including i, untouched)
    Scalar bar() const {
        // den has den(0) != 0, so bar(den) = v^{-deg} * reverse: fold v-shift into num
        VPoly bn = num_.bar();
        VPoly bd = den_.bar();
        int shift = bd.lo();
        return from_parts(bn.shifted(-shift), bd.shifted(-shift));
    }

    std::string to_string() const;
    static Scalar parse(const std::string& text);

    friend std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

  private:
    void reduce() {
        if (den_.is_zero()) throw ScalarError("Scalar: zero denominator");
        if (num_.is_zero()) { num_ = VPoly(); den_ = VPoly(GaussQ(1), 0); return; }
        // strip v-units so both cores have nonzero constant term
        int nlo = num_.lo(), dlo = den_.lo();
        VPoly ncore = num_.shifted(-nlo), dcore = den_.shifted(-dlo);
        if (dcore.degree() == 0) {
            GaussQ inv = dcore.leading().inverse();
            num_ = (ncore * VPoly(inv, 0)).shifted(nlo - dlo);
            den_ = VPoly(GaussQ(1), 0);
            return;
        }
        {
            VPoly q, r;
            detail::poly_divmod(ncore, dcore, q, r);
            if (r.is_zero()) {
                num_ = q.shifted(nlo - dlo);
                den_ = VPoly(GaussQ(1), 0);
                return;
            }
        }
        VPoly g = detail::poly_gcd(ncore, dcore);
        if (g.degree() > 0) {
            VPoly q, r;
            detail::poly_divmod(ncore, g, q, r);
            ncore = q;
            detail::poly_divmod(dcore, g, q, r);
            dcore = q;
        }
        GaussQ lead_inv = dcore.leading().inverse();
        ncore = ncore * VPoly(lead_inv, 0);
        dcore = dcore * VPoly(lead_inv, 0);
        num_ = ncore.shifted(nlo - dlo);
        den_ = dcore;
    }

    VPoly num_;  // Laurent
    VPoly den_;  // ordinary poly, monic, den(0) != 0
};

// ---------------------------------------------------------------------------
// serialization: sparse `c*v^e + ...`, with `(..)/(..)` for true fractions
// ---------------------------------------------------------------------------

namespace detail {

inline std::string gaussq_to_string(const GaussQ& c) {
    std::ostringstream os;
    if (c.im == 0) {
        os << c.re;
    } else if (c.re == 0) {
        os << c.im << "i";
    } else {
        os << "(" << c.re;
        if (c.im > 0) os << "+";
        os << c.im << "i)";
    }
    return os.str();
}

inline std::string vpoly_to_string(const VPoly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (int e = p.hi(); e >= p.lo(); --e) {
        GaussQ c = p.coeff(e);
        if (c.is_zero()) continue;
        if (!out.empty()) out += " + ";
        out += gaussq_to_string(c);
        if (e != 0) out += "*v^" + std::to_string(e);
    }
    return out;
}

struct ScalarParser {
    const std::string& s;
    size_t pos = 0;

    explicit ScalarParser(const std::string& text) : s(text) {}

    void skip_ws() { while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos; }
    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) { ++pos; return true; }
        return false;
    }
    [[noreturn]] void fail(const std::string& what) {
        throw ScalarError("Scalar::parse: " + what + " at position " + std::to_string(pos) + " in \"" + s + "\"");
    }

    mpq_class parse_rational() {
        skip_ws();
        bool neg = false;
        if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) neg = (s[pos++] == '-');
        size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos < s.size() && s[pos] == '/' && pos + 1 < s.size() &&
            std::isdigit(static_cast<unsigned char>(s[pos + 1]))) {
            ++pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        }
        if (pos == start) fail("expected rational");
        mpq_class r;
        try {
            r = mpq_class(s.substr(start, pos - start));
        } catch (const std::invalid_argument&) {
            fail("bad rational literal");
        }
        r.canonicalize();
        return neg ? mpq_class(-r) : r;
    }

    // rational, rational i, or (a+bi)
    GaussQ parse_coeff() {
        skip_ws();
        if (eat('(')) {
            mpq_class re = parse_rational();
            skip_ws();
            if (pos < s.size() && s[pos] == 'i') { ++pos; if (!eat(')')) fail("expected ')'"); return GaussQ(0, re); }
            mpq_class im = parse_rational();
            skip_ws();
            if (pos >= s.size() || s[pos] != 'i') fail("expected 'i'");
            ++pos;
            if (!eat(')')) fail("expected ')'");
            return GaussQ(re, im);
        }
        mpq_class r = parse_rational();
        skip_ws();
        if (pos < s.size() && s[pos] == 'i') { ++pos; return GaussQ(0, r); }
        return GaussQ(r);
    }

    int parse_int() {
        skip_ws();
        size_t start = pos;
        if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) ++pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) fail("expected integer");
        return std::atoi(s.substr(start, pos - start).c_str());
    }

    VPoly parse_poly_body() {
        VPoly acc;
        bool first = true;
        while (true) {
            skip_ws();
            int sign = 1;
            if (!first) {
                if (eat('+')) sign = 1;
                else if (eat('-')) sign = -1;
                else break;
            } else if (pos < s.size() && s[pos] == '-') {
                ++pos;
                sign = -1;
            }
            first = false;
            GaussQ c;
            int e = 0;
            skip_ws();
            if (pos < s.size() && s[pos] == 'v') {
                c = GaussQ(1);
            } else {
                c = parse_coeff();
                skip_ws();
                if (pos < s.size() && s[pos] == '*') ++pos;
            }
            skip_ws();
            if (pos < s.size() && s[pos] == 'v') {
                ++pos;
                if (eat('^')) e = parse_int();
                else e = 1;
            }
            if (sign < 0) c = -c;
            acc = acc + VPoly(c, e);
            skip_ws();
            if (pos >= s.size() || (s[pos] != '+' && s[pos] != '-')) break;
        }
        return acc;
    }
};

}  // namespace detail

inline std::string Scalar::to_string() const {
    if (is_laurent()) return detail::vpoly_to_string(num_);
    return "(" + detail::vpoly_to_string(num_) + ") / (" + detail::vpoly_to_string(den_) + ")";
}

inline Scalar Scalar::parse(const std::string& text) {
    // a leading '(' is ambiguous: fraction numerator or Gaussian coefficient.
    // Try the fraction reading first; it must consume the whole string.
    {
        detail::ScalarParser p(text);
        p.skip_ws();
        if (p.eat('(')) {
            try {
                VPoly num = p.parse_poly_body();
                if (p.eat(')') && p.eat('/')) {
                    if (!p.eat('(')) p.fail("expected '('");
                    VPoly den = p.parse_poly_body();
                    if (!p.eat(')')) p.fail("expected ')'");
                    p.skip_ws();
                    if (p.pos == p.s.size()) return from_parts(num, den);
                }
            } catch (const ScalarError&) {
            }
        }
    }
    detail::ScalarParser p(text);
    VPoly num = p.parse_poly_body();
    p.skip_ws();
    if (p.pos != p.s.size()) p.fail("trailing input");
    return from_parts(num, VPoly(GaussQ(1), 0));
}

// ---------------------------------------------------------------------------
// q-combinatorics.  Exponent bookkeeping is in units of v = q^{1/2}:
// [n] to base q^d uses v-exponent unit u = 2d, base (q^d)^2 uses u = 4d.
// ---------------------------------------------------------------------------

enum class QBase { q, q_squared };

namespace qfun {

// [n] with q^d replaced by v^u: (v^{un} - v^{-un}) / (v^u - v^{-u})
inline Scalar q_integer_unit(long n, int u) {
    if (n == 0) return Scalar(0);
    long m = n < 0 ? -n : n;
    VPoly acc;
    for (long j = 0; j < m; ++j) acc = acc + VPoly(GaussQ(1), static_cast<int>(u * (m - 1 - 2 * j)));
    Scalar s = Scalar::from_parts(acc, VPoly(GaussQ(1), 0));
    return n < 0 ? -s : s;
}

inline Scalar q_integer(long n, int d = 1) { return q_integer_unit(n, 2 * d); }

inline Scalar q_factorial(long n, int d = 1) {
    Scalar r(1);
    for (long s = 1; s <= n; ++s) r *= q_integer(s, d);
    return r;
}

namespace detail {

// memo tables; all entries are immutable once inserted
inline std::map<std::pair<long, int>, Scalar>& qint_cache() {
    static std::map<std::pair<long, int>, Scalar> c;
    return c;
}
inline std::map<std::tuple<long, long, int>, Scalar>& qbinom_cache() {
    static std::map<std::tuple<long, long, int>, Scalar> c;
    return c;
}
inline std::mutex& qcache_mutex() {
    static std::mutex m;
    return m;
}

// Pascal recursion keeps everything division-free:
// binom(m,r) = q_u^r binom(m-1,r) + q_u^{r-m} binom(m-1,r-1), q_u = v^u.
// Negative upper index via binom(m,r) = (-1)^r binom(r-m-1,r).
inline Scalar q_binomial_unit(long m, long r, int u) {
    if (r < 0) return Scalar(0);
    if (r == 0) return Scalar(1);
    if (m < 0) {
        Scalar b = q_binomial_unit(r - m - 1, r, u);
        return r % 2 ? -b : b;
    }
    if (r > m) return Scalar(0);
    {
        std::lock_guard<std::mutex> lock(qcache_mutex());
        auto it = qbinom_cache().find({m, r, u});
        if (it != qbinom_cache().end()) return it->second;
    }
    Scalar b = Scalar::v_pow(static_cast<int>(u * r)) * q_binomial_unit(m - 1, r, u) +
               Scalar::v_pow(static_cast<int>(u * (r - m))) * q_binomial_unit(m - 1, r - 1, u);
    std::lock_guard<std::mutex> lock(qcache_mutex());
    qbinom_cache().emplace(std::make_tuple(m, r, u), b);
    return b;
}

}  // namespace detail

// Gaussian binomial for arbitrary integer m, r >= 0, in base q^d or (q^d)^2
inline Scalar q_binomial(long m, long r, int d = 1, QBase base = QBase::q) {
    int u = (base == QBase::q) ? 2 * d : 4 * d;
    return detail::q_binomial_unit(m, r, u);
}

// [K_i;c choose s] evaluated on a weight vector with K_i-eigenvalue q_i^m
inline Scalar k_binomial_at(long m, long c, long s, int d = 1) {
    return q_binomial(m + c, s, d);
}

}  // namespace qfun

// enum kinds used by qscalar's arith entry point
enum class ArithKind { add, sub, mul, div };

inline Scalar arith(const Scalar& a, const Scalar& b, ArithKind kind) {
    switch (kind) {
        case ArithKind::add: return a + b;
        case ArithKind::sub: return a - b;
        case ArithKind::mul: return a * b;
        case ArithKind::div: return a / b;
    }
    throw ScalarError("arith: bad kind");
}

}  // namespace iqsym
