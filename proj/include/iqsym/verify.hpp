#pragma once

// Suite registry: each suite bundles a family of exact operator-identity
// checks over configurable data, modules, and parameters, and produces a
// machine-readable report.  Reports are deterministic for a fixed config.

#include "iqsym/checks.hpp"

#include "json.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <thread>

namespace iqsym {

struct VerifyError : std::runtime_error {
    explicit VerifyError(const std::string& msg) : std::runtime_error(msg) {}
};

enum class ParamChoice { diamond, star, icb, custom };

struct SuiteConfig {
    ParamChoice param = ParamChoice::star;
    std::string custom_param;                // scalar text for a constant custom root
    long max_weight = -1;                    // -1: suite default
    bool stress = false;
    std::optional<SatakeDatum> datum;        // config-file datum for the data-driven suites
    unsigned threads = 1;
};

struct CheckRecord {
    std::string name;
    std::string anchor;
    bool pass = true;
    std::string witness;
    long millis = 0;
};

struct Report {
    std::string suite;
    bool pass = true;
    std::vector<CheckRecord> checks;
};

namespace verify_detail {

struct NamedCheck {
    std::string name;
    std::string anchor;
    std::function<CheckResult()> fn;
};

inline ParameterPack pick_pack(const SatakeDatum& s, const SuiteConfig& cfg) {
    switch (cfg.param) {
        case ParamChoice::diamond: return ParameterPack::diamond(s);
        case ParamChoice::star: return ParameterPack::star(s);
        case ParamChoice::icb: return ParameterPack::icb(s, 1);
        case ParamChoice::custom: {
            Scalar root = Scalar::parse(cfg.custom_param);
            return ParameterPack::constant(s, SqrtScalar(std::move(root)));
        }
    }
    throw VerifyError("pick_pack: bad parameter choice");
}

inline Report run_checks(const std::string& suite, std::vector<NamedCheck> checks, unsigned threads) {
    Report rep;
    rep.suite = suite;
    rep.checks.resize(checks.size());
    std::atomic<size_t> next{0};
    auto worker = [&] {
        while (true) {
            size_t k = next.fetch_add(1);
            if (k >= checks.size()) return;
            CheckRecord rec;
            rec.name = checks[k].name;
            rec.anchor = checks[k].anchor;
            auto t0 = std::chrono::steady_clock::now();
            try {
                CheckResult r = checks[k].fn();
                rec.pass = r.empty();
                if (!r.empty()) rec.witness = r.front().detail;
            } catch (const std::exception& e) {
                rec.pass = false;
                rec.witness = std::string("exception: ") + e.what();
            }
            rec.millis = std::chrono::duration_cast<std::chrono::milliseconds>(
                             std::chrono::steady_clock::now() - t0)
                             .count();
            rep.checks[k] = std::move(rec);
        }
    };
    unsigned n = std::max(1u, threads);
    if (n == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    std::sort(rep.checks.begin(), rep.checks.end(),
              [](const CheckRecord& a, const CheckRecord& b) { return a.name < b.name; });
    for (const auto& c : rep.checks) rep.pass = rep.pass && c.pass;
    return rep;
}

// the standard test data
inline SatakeDatum datum_a1() { return build_satake(cartan_A(1), tau_identity(1)); }
inline SatakeDatum datum_a2_split() { return build_satake(cartan_A(2), tau_identity(2)); }
inline SatakeDatum datum_a2_flip() { return build_satake(cartan_A(2), tau_flip(2)); }
inline SatakeDatum datum_a3_flip() { return build_satake(cartan_A(3), tau_flip(3)); }
inline SatakeDatum datum_a4_flip() { return build_satake(cartan_A(4), tau_flip(4)); }
inline SatakeDatum datum_a1a1_flip() { return build_satake(cartan_A1xA1(), tau_flip(2)); }
inline SatakeDatum datum_a1a1() { return build_satake(cartan_A1xA1(), tau_identity(2)); }
inline SatakeDatum datum_b2() { return build_satake(cartan_B2(), tau_identity(2)); }
inline SatakeDatum datum_g2() { return build_satake(cartan_G2(), tau_identity(2)); }

inline std::vector<XVec> a2_weights_up_to(long total) {
    std::vector<XVec> out;
    for (long a = 0; a <= total; ++a)
        for (long b = 0; a + b <= total; ++b)
            if (a + b > 0) out.push_back({a, b});
    return out;
}

inline std::string wt_label(const XVec& w) {
    std::string s = "L(";
    for (size_t k = 0; k < w.size(); ++k) s += (k ? "," : "") + std::to_string(w[k]);
    return s + ")";
}

}  // namespace verify_detail

// the registry; ids are stable strings
inline std::vector<std::pair<std::string, std::string>> suite_catalog();
inline Report run_suite(const std::string& id, const SuiteConfig& cfg);

namespace verify_detail {

using Builder = std::function<std::vector<NamedCheck>(const SuiteConfig&)>;

struct SuiteDef {
    std::string id;
    std::string anchor;
    std::string default_bounds;
    Builder build;
};

inline const std::vector<SuiteDef>& suite_defs() {
    static const std::vector<SuiteDef> defs = [] {
        std::vector<SuiteDef> v;

        v.push_back({"thm-A-split",
                     "split rank-one symmetry intertwines the coideal generator action",
                     "A1 L(n), n <= 6; A2 split L(lambda), |lambda| <= 3; three parameter packs",
                     [](const SuiteConfig& cfg) {
                         std::vector<NamedCheck> cs;
                         long nmax = cfg.max_weight > 0 ? cfg.max_weight : 6;
                         SatakeDatum a1 = datum_a1();
                         std::vector<std::pair<std::string, ParameterPack>> packs = {
                             {"diamond", ParameterPack::diamond(a1)},
                             {"star", ParameterPack::star(a1)},
                             {"icb", ParameterPack::icb(a1)}};
                         for (long n = 1; n <= nmax; ++n)
                             for (auto& [pname, pack] : packs)
                                 cs.push_back({"A1 L(" + std::to_string(n) + ") " + pname,
                                               "split rank-one intertwining",
                                               [n, pack, a1] {
                                                   return checks::check_theorem_A(
                                                       build_simple(a1, {n}), pack, 0, "A1");
                                               }});
                         SatakeDatum a2 = datum_a2_split();
                         for (const XVec& lam : a2_weights_up_to(3))
                             for (auto pc : {ParamChoice::diamond, ParamChoice::star}) {
                                 std::string pname = pc == ParamChoice::diamond ? "diamond" : "star";
                                 cs.push_back(
                                     {"A2 split " + wt_label(lam) + " " + pname,
                                      "split rank-two intertwining",
                                      [lam, pc, a2] {
                                          SuiteConfig c2;
                                          c2.param = pc;
                                          ParameterPack pack = pick_pack(a2, c2);
                                          ModuleSpace m = build_simple(a2, lam);
                                          CheckResult r = checks::check_theorem_A(m, pack, 0, "A2 i=1");
                                          CheckResult r2 = checks::check_theorem_A(m, pack, 1, "A2 i=2");
                                          r.insert(r.end(), r2.begin(), r2.end());
                                          return r;
                                      }});
                             }
                         return cs;
                     }});

        v.push_back({"thm-A-diagonal",
                     "diagonal rank-one symmetry intertwines the coideal generator action",
                     "A3 with the flip, L(w1), L(w2), L(w1+w2); three parameter packs",
                     [](const SuiteConfig& cfg) {
                         (void)cfg;
                         std::vector<NamedCheck> cs;
                         SatakeDatum a3 = datum_a3_flip();
                         std::vector<XVec> lams = {{1, 0, 0}, {0, 1, 0}, {1, 1, 0}};
                         std::vector<std::pair<std::string, ParameterPack>> packs = {
                             {"diamond", ParameterPack::diamond(a3)},
                             {"star", ParameterPack::star(a3)},
                             {"icb", ParameterPack::icb(a3)}};
                         for (const XVec& lam : lams)
                             for (auto& [pname, pack] : packs)
                                 cs.push_back({"A3 flip " + wt_label(lam) + " " + pname,
                                               "diagonal rank-one intertwining",
                                               [lam, pack, a3] {
                                                   return checks::check_theorem_A(
                                                       build_simple(a3, lam), pack, 0, "A3 i=1");
                                               }});
                         return cs;
                     }});

        v.push_back({"thm-A-quasisplit",
                     "quasi-split rank-one symmetry intertwines the coideal generator action",
                     "A2 flip L(m,n), m,n <= 3; A4 flip L(w1), L(w2); three parameter packs",
                     [](const SuiteConfig& cfg) {
                         std::vector<NamedCheck> cs;
                         long bound = cfg.max_weight > 0 ? cfg.max_weight : 3;
                         SatakeDatum a2 = datum_a2_flip();
                         std::vector<std::pair<std::string, ParameterPack>> packs = {
                             {"diamond", ParameterPack::diamond(a2)},
                             {"star", ParameterPack::star(a2)},
                             {"icb2", ParameterPack::icb(a2, 2)}};
                         for (long mm = 0; mm <= bound; ++mm)
                             for (long nn = 0; nn <= bound; ++nn) {
                                 if (mm + nn == 0) continue;
                                 for (auto& [pname, pack] : packs)
                                     cs.push_back({"A2 flip L(" + std::to_string(mm) + "," +
                                                       std::to_string(nn) + ") " + pname,
                                                   "quasi-split rank-one intertwining",
                                                   [mm, nn, pack, a2] {
                                                       return checks::check_theorem_A(
                                                           build_simple(a2, {mm, nn}), pack, 0, "A2 flip");
                                                   }});
                             }
                         SatakeDatum a4 = datum_a4_flip();
                         for (XVec lam : {XVec{1, 0, 0, 0}, XVec{0, 1, 0, 0}})
                             for (auto& [pname, pack0] : std::vector<std::pair<std::string, ParameterPack>>{
                                      {"diamond", ParameterPack::diamond(a4)},
                                      {"star", ParameterPack::star(a4)}})
                                 cs.push_back({"A4 flip " + wt_label(lam) + " " + pname,
                                               "quasi-split rank-two intertwining",
                                               [lam, pack0, a4] {
                                                   return checks::check_theorem_A(
                                                       build_simple(a4, lam), pack0, 1, "A4 i=2");
                                               }});
                         return cs;
                     }});

        v.push_back({"thm-B-split", "split symmetry factors through the solved quasi K-matrix",
                     "A1 L(n), n <= 6, balanced bar-compatible parameter",
                     [](const SuiteConfig& cfg) {
                         std::vector<NamedCheck> cs;
                         long nmax = cfg.max_weight > 0 ? cfg.max_weight : 6;
                         cs.push_back({"A1 zoo", "rank-one quasi K-matrix factorization", [nmax] {
                                           SatakeDatum a1 = datum_a1();
                                           ParameterPack star = ParameterPack::star(a1);
                                           ModuleSpace probe = build_simple(a1, {nmax});
                                           TruncatedUpsilon ups =
                                               solve_upsilon(a1, star, 0, nmax, probe);
                                           CheckResult out;
                                           for (long n = 1; n <= nmax; ++n) {
                                               ModuleSpace m = build_simple(a1, {n});
                                               auto r = checks::check_theorem_B(
                                                   m, star, 0, ups, "A1 L(" + std::to_string(n) + ")");
                                               out.insert(out.end(), r.begin(), r.end());
                                               auto r2 = checks::check_upsilon_fixes_icb(
                                                   m, star, ups, "A1 L(" + std::to_string(n) + ")");
                                               out.insert(out.end(), r2.begin(), r2.end());
                                               auto r3 = checks::check_upsilon_ibar(
                                                   m, star, ups, "A1 L(" + std::to_string(n) + ")");
                                               out.insert(out.end(), r3.begin(), r3.end());
                                           }
                                           ModuleSpace probe2 = build_simple(a1, {nmax + 1});
                                           TruncatedUpsilon ups2 =
                                               solve_upsilon(a1, star, 0, nmax, probe2);
                                           auto r4 = checks::check_upsilon_cross_probe(ups, ups2, "A1");
                                           out.insert(out.end(), r4.begin(), r4.end());
                                           return out;
                                       }});
                         return cs;
                     }});

        v.push_back({"thm-B-diagonal", "diagonal symmetry factors through the solved quasi K-matrix",
                     "A1xA1 flip L(m,n), m,n <= 3; A3 flip fundamentals",
                     [](const SuiteConfig& cfg) {
                         (void)cfg;
                         std::vector<NamedCheck> cs;
                         cs.push_back({"A1xA1 zoo", "diagonal quasi K-matrix factorization", [] {
                                           SatakeDatum d2 = datum_a1a1_flip();
                                           ParameterPack star = ParameterPack::star(d2);
                                           ModuleSpace probe = build_simple(d2, {3, 3});
                                           TruncatedUpsilon ups = solve_upsilon(d2, star, 0, 6, probe);
                                           CheckResult out;
                                           for (XVec lam : {XVec{1, 1}, XVec{2, 1}, XVec{2, 2},
                                                            XVec{3, 2}, XVec{3, 3}}) {
                                               ModuleSpace m = build_simple(d2, lam);
                                               auto r = checks::check_theorem_B(m, star, 0, ups,
                                                                                wt_label(lam));
                                               out.insert(out.end(), r.begin(), r.end());
                                               auto r2 = checks::check_upsilon_ibar(m, star, ups,
                                                                                    wt_label(lam));
                                               out.insert(out.end(), r2.begin(), r2.end());
                                           }
                                           return out;
                                       }});
                         cs.push_back({"A3 flip fundamentals", "diagonal quasi K-matrix factorization",
                                       [] {
                                           SatakeDatum a3 = datum_a3_flip();
                                           ParameterPack star = ParameterPack::star(a3);
                                           ModuleSpace probe = build_simple(a3, {1, 0, 1});
                                           TruncatedUpsilon ups = solve_upsilon(a3, star, 0, 2, probe);
                                           CheckResult out;
                                           for (XVec lam : {XVec{1, 0, 0}, XVec{0, 1, 0}}) {
                                               auto r = checks::check_theorem_B(
                                                   build_simple(a3, lam), star, 0, ups, wt_label(lam));
                                               out.insert(out.end(), r.begin(), r.end());
                                           }
                                           return out;
                                       }});
                         return cs;
                     }});

        v.push_back({"thm-B-quasisplit", "quasi-split symmetry factors through the solved quasi K-matrix",
                     "A2 flip L(m,n), m,n <= 3; A4 flip fundamentals",
                     [](const SuiteConfig& cfg) {
                         long bound = cfg.max_weight > 0 ? cfg.max_weight : 3;
                         std::vector<NamedCheck> cs;
                         cs.push_back({"A2 flip zoo", "quasi-split quasi K-matrix factorization", [bound] {
                                           SatakeDatum a2 = datum_a2_flip();
                                           ParameterPack star = ParameterPack::star(a2);
                                           ModuleSpace probe = build_simple(a2, {bound + 1, bound + 1});
                                           TruncatedUpsilon ups =
                                               solve_upsilon(a2, star, 0, 2 * 2 * bound, probe);
                                           CheckResult out;
                                           for (long mm = 0; mm <= bound; ++mm)
                                               for (long nn = 0; nn <= bound; ++nn) {
                                                   if (mm + nn == 0) continue;
                                                   ModuleSpace m = build_simple(a2, {mm, nn});
                                                   auto r = checks::check_theorem_B(
                                                       m, star, 0, ups,
                                                       "L(" + std::to_string(mm) + "," +
                                                           std::to_string(nn) + ")");
                                                   out.insert(out.end(), r.begin(), r.end());
                                               }
                                           auto r2 = checks::check_upsilon_ibar(
                                               build_simple(a2, {1, 1}), star, ups, "A2 flip");
                                           out.insert(out.end(), r2.begin(), r2.end());
                                           return out;
                                       }});
                         cs.push_back({"A4 flip fundamentals", "quasi-split quasi K-matrix factorization",
                                       [] {
                                           SatakeDatum a4 = datum_a4_flip();
                                           ParameterPack star = ParameterPack::star(a4);
                                           ModuleSpace probe = build_simple(a4, {1, 0, 0, 1});
                                           TruncatedUpsilon ups = solve_upsilon(a4, star, 1, 2, probe);
                                           CheckResult out;
                                           for (XVec lam : {XVec{1, 0, 0, 0}, XVec{0, 1, 0, 0}}) {
                                               auto r = checks::check_theorem_B(
                                                   build_simple(a4, lam), star, 1, ups, wt_label(lam));
                                               out.insert(out.end(), r.begin(), r.end());
                                           }
                                           return out;
                                       }});
                         return cs;
                     }});

        v.push_back({"mutual-inverse", "the two rank-one symmetries are mutual inverses",
                     "full zoo, three parameter packs; dotted variants included",
                     [](const SuiteConfig& cfg) {
                         (void)cfg;
                         std::vector<NamedCheck> cs;
                         struct Case {
                             std::string name;
                             SatakeDatum s;
                             XVec lam;
                             size_t i;
                         };
                         std::vector<Case> cases = {
                             {"A1 L(4)", datum_a1(), {4}, 0},
                             {"A1 L(5)", datum_a1(), {5}, 0},
                             {"A2 split L(1,1)", datum_a2_split(), {1, 1}, 0},
                             {"A3 flip L(w1) diag", datum_a3_flip(), {1, 0, 0}, 0},
                             {"A3 flip L(w2) split", datum_a3_flip(), {0, 1, 0}, 1},
                             {"A3 flip L(w1+w2)", datum_a3_flip(), {1, 1, 0}, 0},
                             {"A2 flip L(2,1)", datum_a2_flip(), {2, 1}, 0},
                             {"A2 flip L(2,2)", datum_a2_flip(), {2, 2}, 0},
                             {"A4 flip L(w1)", datum_a4_flip(), {1, 0, 0, 0}, 1},
                             {"A4 flip L(w2)", datum_a4_flip(), {0, 1, 0, 0}, 1},
                             {"A1xA1 flip L(2,2)", datum_a1a1_flip(), {2, 2}, 0},
                         };
                         for (auto& c : cases) {
                             cs.push_back({c.name + " undotted", "mutual inverse", [c] {
                                               ModuleSpace m = build_simple(c.s, c.lam);
                                               CheckResult out;
                                               for (auto pc : {ParamChoice::diamond, ParamChoice::star,
                                                               ParamChoice::icb}) {
                                                   SuiteConfig c2;
                                                   c2.param = pc;
                                                   auto r = checks::check_mutual_inverse(
                                                       m, pick_pack(c.s, c2), c.i, c.name);
                                                   out.insert(out.end(), r.begin(), r.end());
                                               }
                                               return out;
                                           }});
                             cs.push_back({c.name + " dotted", "integral operators are mutual inverses",
                                           [c] {
                                               ModuleSpace m = build_simple(c.s, c.lam);
                                               return checks::check_dot_inverse(
                                                   m, ParameterPack::icb(c.s, 1), c.i, c.name);
                                           }});
                         }
                         return cs;
                     }});

        v.push_back({"appendix-A", "split commutation of top root vectors with idivided powers",
                     "alpha <= 2, k <= 4 at defaults; alpha <= 3, n <= 2, k <= 6 at stress",
                     [](const SuiteConfig& cfg) {
                         std::vector<NamedCheck> cs;
                         long kmax = cfg.stress ? 6 : (cfg.max_weight > 0 ? cfg.max_weight : 4);
                         cs.push_back({"A2 alpha=1 n=1", "commutation family", [kmax] {
                                           return checks::check_appendix_A(
                                               build_simple(datum_a2_split(), {1, 1}), 0, 1, 1, kmax,
                                               "A2 n=1");
                                       }});
                         cs.push_back({"A2 alpha=1 n=2", "commutation family", [kmax] {
                                           return checks::check_appendix_A(
                                               build_simple(datum_a2_split(), {2, 1}), 0, 1, 2, kmax,
                                               "A2 n=2");
                                       }});
                         cs.push_back({"B2 alpha=2 n=1", "commutation family", [kmax] {
                                           return checks::check_appendix_A(
                                               build_simple(datum_b2(), {1, 1}), 1, 0, 1, kmax, "B2 n=1");
                                       }});
                         if (cfg.stress) {
                             cs.push_back({"B2 alpha=2 n=2", "commutation family", [kmax] {
                                               return checks::check_appendix_A(
                                                   build_simple(datum_b2(), {1, 1}), 1, 0, 2, kmax,
                                                   "B2 n=2");
                                           }});
                             cs.push_back({"G2 alpha=3 n=1", "commutation family", [kmax] {
                                               return checks::check_appendix_A(
                                                   build_simple(datum_g2(), {0, 1}), 1, 0, 1, kmax,
                                                   "G2 n=1");
                                           }});
                             cs.push_back({"G2 alpha=3 n=2", "commutation family", [kmax] {
                                               return checks::check_appendix_A(
                                                   build_simple(datum_g2(), {0, 1}), 1, 0, 2, kmax,
                                                   "G2 n=2");
                                           }});
                         } else {
                             cs.push_back({"G2 alpha=3 n=1", "commutation family", [] {
                                               return checks::check_appendix_A(
                                                   build_simple(datum_g2(), {0, 1}), 1, 0, 1, 3, "G2 n=1");
                                           }});
                         }
                         cs.push_back({"kernel shift", "top root vector shifts the kernel", [] {
                                           CheckResult out;
                                           for (long n = 1; n <= 2; ++n) {
                                               auto r = checks::check_split_kernel_shift(
                                                   build_simple(datum_a2_split(), {1, 1}), 0, 1, n, "A2");
                                               out.insert(out.end(), r.begin(), r.end());
                                           }
                                           auto r2 = checks::check_split_kernel_shift(
                                               build_simple(datum_b2(), {1, 0}), 1, 0, 1, "B2");
                                           out.insert(out.end(), r2.begin(), r2.end());
                                           return out;
                                       }});
                         return cs;
                     }});

        v.push_back({"thm-C-divided-powers",
                     "braid images of idivided powers equal the conjugation closed forms",
                     "n <= 2 on the zoo; dotted variants included",
                     [](const SuiteConfig& cfg) {
                         long nmax = cfg.max_weight > 0 ? cfg.max_weight : 2;
                         std::vector<NamedCheck> cs;
                         struct Case {
                             std::string name;
                             SatakeDatum s;
                             XVec lam;
                             size_t i, j;
                             long n;
                         };
                         std::vector<Case> cases = {
                             {"A2 split L(1,1)", datum_a2_split(), {1, 1}, 0, 1, nmax},
                             {"A2 split L(2,0)", datum_a2_split(), {2, 0}, 0, 1, nmax},
                             {"B2 L(1,0)", datum_b2(), {1, 0}, 1, 0, nmax},
                             {"B2 L(0,1)", datum_b2(), {0, 1}, 1, 0, nmax},
                             {"G2 L(0,1)", datum_g2(), {0, 1}, 1, 0, 1},
                             {"A3 flip L(w1)", datum_a3_flip(), {1, 0, 0}, 0, 1, nmax},
                             {"A3 flip L(w2)", datum_a3_flip(), {0, 1, 0}, 0, 1, nmax},
                             {"A4 flip L(w1)", datum_a4_flip(), {1, 0, 0, 0}, 1, 0, nmax},
                             {"A4 flip L(w2)", datum_a4_flip(), {0, 1, 0, 0}, 1, 0, 1},
                         };
                         for (auto& c : cases)
                             cs.push_back({c.name, "divided-power image family", [c] {
                                               return checks::check_divided_power_images(
                                                   build_simple(c.s, c.lam), c.i, c.j, c.n, c.name);
                                           }});
                         cs.push_back({"dot images A1/A3/A4", "integral divided-power images", [] {
                                           CheckResult out;
                                           auto r1 = checks::check_dot_divided_power_images(
                                               build_simple(datum_a2_split(), {1, 1}),
                                               ParameterPack::icb(datum_a2_split()), 0, 1, 2, "A2 split");
                                           out.insert(out.end(), r1.begin(), r1.end());
                                           auto r2 = checks::check_dot_divided_power_images(
                                               build_simple(datum_a3_flip(), {1, 0, 0}),
                                               ParameterPack::icb(datum_a3_flip()), 0, 1, 2, "A3 flip");
                                           out.insert(out.end(), r2.begin(), r2.end());
                                           auto r3 = checks::check_dot_divided_power_images(
                                               build_simple(datum_a4_flip(), {1, 0, 0, 0}),
                                               ParameterPack::icb(datum_a4_flip()), 1, 0, 2, "A4 flip");
                                           out.insert(out.end(), r3.begin(), r3.end());
                                           return out;
                                       }});
                         return cs;
                     }});

        v.push_back({"transitions-sl2", "rank-one basis transition matrices and closed forms",
                     "n <= 12",
                     [](const SuiteConfig& cfg) {
                         long nmax = cfg.max_weight > 0 ? cfg.max_weight : 12;
                         std::vector<NamedCheck> cs;
                         cs.push_back({"closed forms and inverses", "rank-one transition family",
                                       [nmax] { return checks::check_sl2_transitions(nmax, "sl2"); }});
                         return cs;
                     }});

        v.push_back({"transitions-sl3", "rank-two basis transitions, both printed variants",
                     "L(m,n), m,n <= 4 at stress, m+n <= 5 at defaults",
                     [](const SuiteConfig& cfg) {
                         std::vector<NamedCheck> cs;
                         long bound = cfg.stress ? 4 : 3;
                         if (cfg.max_weight > 0) bound = cfg.max_weight;
                         SatakeDatum s = datum_a2_flip();
                         for (long mm = 0; mm <= bound; ++mm)
                             for (long nn = mm; nn <= bound; ++nn) {
                                 if (mm + nn == 0) continue;
                                 if (!cfg.stress && mm + nn > 5) continue;
                                 bool elementwise = mm + nn <= 5;
                                 cs.push_back({"L(" + std::to_string(mm) + "," + std::to_string(nn) + ")",
                                               "rank-two transition family", [mm, nn, s, elementwise] {
                                                   ModuleSpace m = build_simple(s, {mm, nn});
                                                   return checks::check_sl3_transitions(
                                                       m, ParameterPack::icb(s, 1),
                                                       "L(" + std::to_string(mm) + "," +
                                                           std::to_string(nn) + ")",
                                                       elementwise);
                                               }});
                             }
                         return cs;
                     }});

        v.push_back({"qicb-basis", "quasi icanonical basis, vanishing and triangularity",
                     "L(m,n), m,n <= 4 at stress, m+n <= 5 at defaults",
                     [](const SuiteConfig& cfg) {
                         std::vector<NamedCheck> cs;
                         long bound = cfg.stress ? 4 : 3;
                         if (cfg.max_weight > 0) bound = cfg.max_weight;
                         SatakeDatum s = datum_a2_flip();
                         for (long mm = 0; mm <= bound; ++mm)
                             for (long nn = 0; nn <= bound; ++nn) {
                                 if (mm + nn == 0) continue;
                                 if (!cfg.stress && mm + nn > 5) continue;
                                 cs.push_back({"L(" + std::to_string(mm) + "," + std::to_string(nn) + ")",
                                               "quasi icanonical basis family", [mm, nn, s] {
                                                   ModuleSpace m = build_simple(s, {mm, nn});
                                                   return checks::check_qicb_basis(
                                                       m, ParameterPack::star(s),
                                                       "L(" + std::to_string(mm) + "," +
                                                           std::to_string(nn) + ")");
                                               }});
                             }
                         return cs;
                     }});

        v.push_back({"sl3-mult", "multiplicative identities of the rank-two coideal",
                     "L(m,n), m,n <= 3",
                     [](const SuiteConfig& cfg) {
                         std::vector<NamedCheck> cs;
                         long bound = cfg.max_weight > 0 ? cfg.max_weight : 3;
                         SatakeDatum s = datum_a2_flip();
                         for (long mm = 0; mm <= bound; ++mm)
                             for (long nn = mm; nn <= bound; ++nn) {
                                 if (mm + nn == 0) continue;
                                 cs.push_back({"L(" + std::to_string(mm) + "," + std::to_string(nn) + ")",
                                               "multiplicative identity family", [mm, nn, s] {
                                                   ModuleSpace m = build_simple(s, {mm, nn});
                                                   return checks::check_sl3_mult_suite(
                                                       m, "L(" + std::to_string(mm) + "," +
                                                              std::to_string(nn) + ")");
                                               }});
                             }
                         cs.push_back({"B-power expansions", "divided power expansion of the generators",
                                       [s] {
                                           CheckResult out;
                                           ModuleSpace m = build_simple(s, {2, 2});
                                           auto r = checks::check_b_power_expansion(
                                               m, ParameterPack::star(s), 4, "L(2,2)");
                                           out.insert(out.end(), r.begin(), r.end());
                                           auto r2 = checks::check_b2b1_highest(
                                               m, ParameterPack::star(s), "L(2,2)");
                                           out.insert(out.end(), r2.begin(), r2.end());
                                           return out;
                                       }});
                         return cs;
                     }});

        v.push_back({"integrality", "integral operators preserve the A-form bases",
                     "divided-power and icanonical bases on the zoo; table images",
                     [](const SuiteConfig& cfg) {
                         (void)cfg;
                         std::vector<NamedCheck> cs;
                         cs.push_back({"A1 canonical bases", "A-form integrality", [] {
                                           SatakeDatum a1 = datum_a1();
                                           ParameterPack icb = ParameterPack::icb(a1);
                                           CheckResult out;
                                           for (long n = 1; n <= 6; ++n) {
                                               ModuleSpace m = build_simple(a1, {n});
                                               std::vector<SparseVec> cb, icbv;
                                               EvalContext ctx(m, icb);
                                               for (long k = 0; k <= n; ++k) {
                                                   cb.push_back(m.divided_power(GenKind::F, 0, k)
                                                                    .apply(sv::unit(0)));
                                                   icbv.push_back(ctx.idp_op(0, static_cast<int>(n % 2), k)
                                                                      .apply(sv::unit(0)));
                                               }
                                               auto r = checks::check_dot_integrality(
                                                   m, icb, 0, cb, "A1 L(" + std::to_string(n) + ") CB");
                                               out.insert(out.end(), r.begin(), r.end());
                                               auto r2 = checks::check_dot_integrality(
                                                   m, icb, 0, icbv, "A1 L(" + std::to_string(n) + ") iCB");
                                               out.insert(out.end(), r2.begin(), r2.end());
                                           }
                                           return out;
                                       }});
                         cs.push_back({"sl3 bases", "A-form integrality", [] {
                                           SatakeDatum s = datum_a2_flip();
                                           ParameterPack icb = ParameterPack::icb(s, 1);
                                           CheckResult out;
                                           for (XVec lam : {XVec{1, 1}, XVec{2, 1}, XVec{2, 2}}) {
                                               ModuleSpace m = build_simple(s, lam);
                                               BasisFamily cb =
                                                   basis_build(m, BasisFamilyTag::CB_sl3, icb);
                                               BasisFamily qicb =
                                                   basis_build(m, BasisFamilyTag::qiCB_sl3, icb);
                                               auto r = checks::check_dot_integrality(
                                                   m, icb, 0, cb.vectors, wt_label(lam) + " CB");
                                               out.insert(out.end(), r.begin(), r.end());
                                               auto r2 = checks::check_dot_integrality(
                                                   m, icb, 0, qicb.vectors, wt_label(lam) + " qiCB");
                                               out.insert(out.end(), r2.begin(), r2.end());
                                           }
                                           return out;
                                       }});
                         cs.push_back({"minuscule and word bases", "A-form integrality", [] {
                                           CheckResult out;
                                           SatakeDatum a3 = datum_a3_flip();
                                           ParameterPack icb3 = ParameterPack::icb(a3);
                                           for (XVec lam : {XVec{1, 0, 0}, XVec{0, 1, 0}}) {
                                               ModuleSpace m = build_simple(a3, lam);
                                               std::vector<SparseVec> basis;
                                               for (size_t k = 0; k < m.dim(); ++k)
                                                   basis.push_back(sv::unit(k));
                                               for (size_t i : {0u, 1u}) {
                                                   auto r = checks::check_dot_integrality(
                                                       m, icb3, i, basis, "A3 " + wt_label(lam));
                                                   out.insert(out.end(), r.begin(), r.end());
                                               }
                                           }
                                           SatakeDatum a4 = datum_a4_flip();
                                           ParameterPack icb4 = ParameterPack::icb(a4);
                                           for (XVec lam : {XVec{1, 0, 0, 0}, XVec{0, 1, 0, 0}}) {
                                               ModuleSpace m = build_simple(a4, lam);
                                               std::vector<SparseVec> basis;
                                               for (size_t k = 0; k < m.dim(); ++k)
                                                   basis.push_back(sv::unit(k));
                                               auto r = checks::check_dot_integrality(m, icb4, 1, basis,
                                                                                      "A4 " + wt_label(lam));
                                               out.insert(out.end(), r.begin(), r.end());
                                           }
                                           return out;
                                       }});
                         cs.push_back({"table images", "table generator images intertwine the integral operators",
                                       [] {
                                           CheckResult out;
                                           auto add = [&](CheckResult r) {
                                               out.insert(out.end(), r.begin(), r.end());
                                           };
                                           add(checks::check_dot_tables(build_simple(datum_a1(), {3}),
                                                                        ParameterPack::icb(datum_a1()), 0,
                                                                        "A1"));
                                           add(checks::check_dot_tables(
                                               build_simple(datum_a2_split(), {1, 1}),
                                               ParameterPack::icb(datum_a2_split()), 0, "A2 split"));
                                           add(checks::check_dot_tables(
                                               build_simple(datum_a3_flip(), {1, 0, 0}),
                                               ParameterPack::icb(datum_a3_flip()), 0, "A3 flip"));
                                           add(checks::check_dot_tables(
                                               build_simple(datum_a4_flip(), {1, 0, 0, 0}),
                                               ParameterPack::icb(datum_a4_flip()), 1, "A4 flip"));
                                           add(checks::check_dot_tables(build_simple(datum_b2(), {0, 1}),
                                                                        ParameterPack::icb(datum_b2()), 1,
                                                                        "B2"));
                                           add(checks::check_dot_tables(build_simple(datum_g2(), {0, 1}),
                                                                        ParameterPack::icb(datum_g2()), 1,
                                                                        "G2"));
                                           return out;
                                       }});
                         return cs;
                     }});

        v.push_back({"braid-m2", "commuting pair braid relation", "disconnected rank-one pairs",
                     [](const SuiteConfig& cfg) {
                         (void)cfg;
                         std::vector<NamedCheck> cs;
                         for (XVec lam : {XVec{1, 2}, XVec{2, 2}})
                             cs.push_back({"A1xA1 " + wt_label(lam), "braid relation of order two", [lam] {
                                               SatakeDatum s = datum_a1a1();
                                               ModuleSpace m = build_simple(s, lam);
                                               CheckResult out;
                                               auto r = checks::check_braid_relation(
                                                   m, ParameterPack::star(s), 0, 1, false, "A1xA1");
                                               out.insert(out.end(), r.begin(), r.end());
                                               auto r2 = checks::check_braid_relation(
                                                   m, ParameterPack::icb(s), 0, 1, true, "A1xA1 dot");
                                               out.insert(out.end(), r2.begin(), r2.end());
                                               return out;
                                           }});
                         return cs;
                     }});

        v.push_back({"braid-m3", "split pair braid relation of order three", "A2 split modules",
                     [](const SuiteConfig& cfg) {
                         (void)cfg;
                         std::vector<NamedCheck> cs;
                         for (XVec lam : {XVec{1, 0}, XVec{1, 1}, XVec{2, 1}})
                             cs.push_back({"A2 " + wt_label(lam), "braid relation of order three", [lam] {
                                               SatakeDatum s = datum_a2_split();
                                               ModuleSpace m = build_simple(s, lam);
                                               CheckResult out;
                                               auto r = checks::check_braid_relation(
                                                   m, ParameterPack::star(s), 0, 1, false, "A2");
                                               out.insert(out.end(), r.begin(), r.end());
                                               auto r2 = checks::check_braid_relation(
                                                   m, ParameterPack::icb(s), 0, 1, true, "A2 dot");
                                               out.insert(out.end(), r2.begin(), r2.end());
                                               return out;
                                           }});
                         return cs;
                     }});

        v.push_back({"braid-m4", "split-diagonal pair braid relation of order four",
                     "A3 with the flip, i = 2, j = 1",
                     [](const SuiteConfig& cfg) {
                         (void)cfg;
                         std::vector<NamedCheck> cs;
                         for (XVec lam : {XVec{1, 0, 0}, XVec{0, 1, 0}, XVec{1, 1, 0}})
                             cs.push_back({"A3 flip " + wt_label(lam), "braid relation of order four",
                                           [lam] {
                                               SatakeDatum s = datum_a3_flip();
                                               ModuleSpace m = build_simple(s, lam);
                                               CheckResult out;
                                               auto r = checks::check_braid_relation(
                                                   m, ParameterPack::star(s), 1, 0, false, "A3");
                                               out.insert(out.end(), r.begin(), r.end());
                                               auto r2 = checks::check_braid_relation(
                                                   m, ParameterPack::icb(s), 1, 0, true, "A3 dot");
                                               out.insert(out.end(), r2.begin(), r2.end());
                                               return out;
                                           }});
                         return cs;
                     }});

        v.push_back({"rootvec-dual", "closed root-vector forms against their recursions",
                     "split, diagonal, quasi-split families, n <= 2",
                     [](const SuiteConfig& cfg) {
                         (void)cfg;
                         std::vector<NamedCheck> cs;
                         cs.push_back({"A2 split", "dual construction", [] {
                                           return checks::check_rootvec_dual(
                                               build_simple(datum_a2_split(), {1, 1}), 0, 1, 2, "A2");
                                       }});
                         cs.push_back({"B2 split", "dual construction", [] {
                                           return checks::check_rootvec_dual(
                                               build_simple(datum_b2(), {1, 0}), 1, 0, 2, "B2");
                                       }});
                         cs.push_back({"G2 split", "dual construction", [] {
                                           return checks::check_rootvec_dual(
                                               build_simple(datum_g2(), {0, 1}), 1, 0, 1, "G2");
                                       }});
                         cs.push_back({"A3 diagonal", "dual construction", [] {
                                           CheckResult out;
                                           auto r = checks::check_rootvec_dual(
                                               build_simple(datum_a3_flip(), {1, 0, 0}), 0, 1, 2, "A3 w1");
                                           out.insert(out.end(), r.begin(), r.end());
                                           auto r2 = checks::check_rootvec_dual(
                                               build_simple(datum_a3_flip(), {0, 1, 0}), 0, 1, 1, "A3 w2");
                                           out.insert(out.end(), r2.begin(), r2.end());
                                           return out;
                                       }});
                         cs.push_back({"A4 quasi-split", "recursion identities", [] {
                                           return checks::check_rootvec_dual(
                                               build_simple(datum_a4_flip(), {1, 0, 0, 0}), 1, 0, 1, "A4");
                                       }});
                         return cs;
                     }});

        v.push_back({"rootvec-vanishing", "root vectors vanish just past the degree bounds",
                     "all three families, n <= 2",
                     [](const SuiteConfig& cfg) {
                         (void)cfg;
                         std::vector<NamedCheck> cs;
                         cs.push_back({"A2 split", "vanishing law", [] {
                                           return checks::check_rootvec_vanishing(
                                               build_simple(datum_a2_split(), {1, 1}), 0, 1, 2, "A2");
                                       }});
                         cs.push_back({"B2 split", "vanishing law", [] {
                                           return checks::check_rootvec_vanishing(
                                               build_simple(datum_b2(), {1, 0}), 1, 0, 1, "B2");
                                       }});
                         cs.push_back({"A3 diagonal", "vanishing law", [] {
                                           CheckResult out;
                                           auto r = checks::check_rootvec_vanishing(
                                               build_simple(datum_a3_flip(), {1, 0, 0}), 0, 1, 2, "A3 w1");
                                           out.insert(out.end(), r.begin(), r.end());
                                           auto r2 = checks::check_rootvec_vanishing(
                                               build_simple(datum_a3_flip(), {0, 1, 0}), 0, 1, 1, "A3 w2");
                                           out.insert(out.end(), r2.begin(), r2.end());
                                           return out;
                                       }});
                         cs.push_back({"A4 quasi-split", "vanishing law", [] {
                                           CheckResult out;
                                           for (XVec lam : {XVec{1, 0, 0, 0}, XVec{0, 1, 0, 0}}) {
                                               auto r = checks::check_rootvec_vanishing(
                                                   build_simple(datum_a4_flip(), lam), 1, 0, 1, "A4");
                                               out.insert(out.end(), r.begin(), r.end());
                                           }
                                           return out;
                                       }});
                         return cs;
                     }});

        v.push_back({"module-relations", "defining relations and dimensions of the module builder",
                     "configurable datum; defaults cover A/B/G data of rank <= 4",
                     [](const SuiteConfig& cfg) {
                         std::vector<NamedCheck> cs;
                         std::vector<std::pair<std::string, SatakeDatum>> data;
                         if (cfg.datum) {
                             data.push_back({"config datum", *cfg.datum});
                         } else {
                             data = {{"A2", datum_a2_split()},
                                     {"A3 flip", datum_a3_flip()},
                                     {"B2", datum_b2()},
                                     {"G2", datum_g2()}};
                         }
                         for (auto& [name, s] : data)
                             cs.push_back({name, "module construction", [s = s] {
                                               CheckResult out;
                                               XVec lam(s.rank(), 0);
                                               lam[0] = 1;
                                               if (s.rank() > 1) lam[1] = 1;
                                               ModuleSpace m = build_simple(s, lam);
                                               if (static_cast<long>(m.dim()) != weyl_dimension(s, lam))
                                                   out.push_back({"dimension disagrees with the closed formula"});
                                               // a round of relation spot checks
                                               for (size_t i = 0; i < s.rank(); ++i)
                                                   for (size_t j = 0; j < s.rank(); ++j) {
                                                       Operator comm = m.e_op(i).compose(m.f_op(j)) -
                                                                       m.f_op(j).compose(m.e_op(i));
                                                       if (i != j && !comm.is_zero())
                                                           out.push_back({"off-diagonal commutator is nonzero"});
                                                   }
                                               // snapshot round-trip
                                               if (!load_module_snapshot(dump_module(m)).matches(m))
                                                   out.push_back({"snapshot round-trip failed"});
                                               return out;
                                           }});
                         return cs;
                     }});

        v.push_back({"idp-recursion", "idivided power recursion across parameters",
                     "orders <= 10, both parities, four parameter packs",
                     [](const SuiteConfig& cfg) {
                         (void)cfg;
                         std::vector<NamedCheck> cs;
                         cs.push_back({"A1 recursion", "idivided power recursion", [] {
                                           CheckResult out;
                                           SatakeDatum a1 = datum_a1();
                                           ModuleSpace m = build_simple(a1, {6});
                                           std::vector<ParameterPack> packs = {
                                               ParameterPack::diamond(a1), ParameterPack::star(a1),
                                               ParameterPack::constant(a1, SqrtScalar(Scalar(1))),
                                               ParameterPack::constant(a1, SqrtScalar(Scalar(1), 6))};
                                           for (const auto& pack : packs) {
                                               EvalContext ctx(m, pack);
                                               Scalar qvs = Scalar::q_pow(1) * pack.sigma(0);
                                               for (int p = 0; p <= 1; ++p)
                                                   for (long mm = 0; mm <= 10; ++mm) {
                                                       Operator lhs =
                                                           ctx.b_op(0).compose(ctx.idp_op(0, p, mm));
                                                       Operator rhs = ctx.idp_op(0, p, mm + 1)
                                                                          .scaled(qfun::q_integer(mm + 1));
                                                       if (mm % 2 == p && mm >= 1)
                                                           rhs = rhs + ctx.idp_op(0, p, mm - 1)
                                                                           .scaled(qvs *
                                                                                   qfun::q_integer(mm));
                                                       checks::expect_equal(out, lhs, rhs, m,
                                                                            "order " + std::to_string(mm));
                                                   }
                                           }
                                           return out;
                                       }});
                         return cs;
                     }});
        std::sort(v.begin(), v.end(), [](const SuiteDef& a, const SuiteDef& b) { return a.id < b.id; });
        return v;
    }();
    return defs;
}

}  // namespace verify_detail

inline std::vector<std::pair<std::string, std::string>> suite_catalog() {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& d : verify_detail::suite_defs()) out.push_back({d.id, d.anchor});
    return out;
}

inline const verify_detail::SuiteDef* find_suite(const std::string& id) {
    for (const auto& d : verify_detail::suite_defs())
        if (d.id == id) return &d;
    return nullptr;
}

inline Report run_suite(const std::string& id, const SuiteConfig& cfg) {
    const verify_detail::SuiteDef* def = find_suite(id);
    if (!def) throw VerifyError("unknown suite id: " + id);
    return verify_detail::run_checks(id, def->build(cfg), cfg.threads);
}

inline std::string report_emit(const Report& r, const std::string& format) {
    if (format == "json") {
        nlohmann::json j;
        j["suite"] = r.suite;
        j["status"] = r.pass ? "pass" : "fail";
        j["checks"] = nlohmann::json::array();
        for (const auto& c : r.checks) {
            nlohmann::json jc;
            jc["name"] = c.name;
            jc["anchor"] = c.anchor;
            jc["status"] = c.pass ? "pass" : "fail";
            if (!c.pass) jc["witness"] = c.witness;
            jc["millis"] = c.millis;
            j["checks"].push_back(jc);
        }
        return j.dump(2) + "\n";
    }
    if (format != "text") throw VerifyError("unknown report format: " + format);
    std::ostringstream os;
    os << "suite " << r.suite << ": " << (r.pass ? "PASS" : "FAIL") << "\n";
    for (const auto& c : r.checks) {
        os << "  [" << (c.pass ? "pass" : "FAIL") << "] " << c.name << " (" << c.millis << " ms)";
        if (!c.pass) os << "  witness: " << c.witness;
        os << "\n";
    }
    return os.str();
}

}  // namespace iqsym
