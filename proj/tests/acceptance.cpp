// One PASS/FAIL line per acceptance criterion; exits nonzero if any criterion fails.
#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "lielab/derivations.hpp"
#include "lielab/fuzz.hpp"
#include "lielab/script/parser.hpp"
#include "support.hpp"

using namespace lielab;
using namespace lielab::testing;

namespace {

using A5 = Algebra<PrimeField>;
using V5 = Vec<PrimeField>;
using S5 = Subspace<PrimeField>;

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

A5 with_transpose(const A5& a) { return attach_involution(a, InvolutionSpec<PrimeField>{TransposeInvolution{}}); }

std::int64_t int_fact(const TheoremInstance<PrimeField>& t, const std::string& key) {
    const auto* f = t.find_fact(key);
    if (!f) throw std::runtime_error("missing fact " + key);
    return std::get<std::int64_t>(*f);
}

bool is_zero_map(const Matrix<PrimeField>& m) { return m == Matrix<PrimeField>(m.field(), m.rows(), m.cols()); }

/// Elements x of `a` with [x,[x,y]] = 0 for every basis y, by brute force.
std::vector<V5> quadratic_annihilator_brute(const A5& a) {
    std::vector<V5> out;
    for_each_vector(F5, a.dim(), Budget{}, [&](const V5& x) {
        auto adx = a.ad(x);
        if (is_zero_map(adx * adx)) out.push_back(x);
        return true;
    });
    return out;
}

// ---------------------------------------------------------------------------

void criterion1(Outcome& o) {
    auto l = minus(upper_triangular(F5, 3));
    auto full = S5::full(F5, 6);
    auto set = qann_enumerate(l, full, full);
    std::set<V5> found(set.begin(), set.end());
    // coordinates e11 e12 e13 e22 e23 e33
    std::size_t fam1 = 0, fam2 = 0, both = 0, total = 0, mismatches = 0;
    for_each_vector(F5, 6, Budget{}, [&](const V5& v) {
        bool scalar_diag = v[0] == v[3] && v[3] == v[5];
        bool a = scalar_diag && v[1] == 0;  // aE + b e13 + c e23
        bool b = scalar_diag && v[4] == 0;  // aE + b e12 + c e13
        ++total;
        fam1 += a;
        fam2 += b;
        both += a && b;
        mismatches += (found.count(v) == 1) != (a || b);
        return true;
    });
    o.detail << "checked " << total << " elements, families " << fam1 << " and " << fam2 << ", intersection " << both
             << ", union " << found.size() << ", mismatches " << mismatches;
    o.require(total == 15625, "element count");
    o.require(fam1 == 125 && fam2 == 125 && both == 25, "family sizes");
    o.require(found.size() == 225 && fam1 + fam2 - both == 225, "union size");
    o.require(mismatches == 0, "pointwise agreement");
}

void criterion2(Outcome& o) {
    auto l = minus(upper_triangular(F5, 3));
    auto full = S5::full(F5, 6);
    auto e = [](std::size_t i) { return unit_vector(F5, 6, i); };
    const V5 e12 = e(1), e13 = e(2), e22 = e(3), e23 = e(4);
    auto x = vec_add(F5, e12, e23);
    auto probe = l.bracket(x, l.bracket(x, e22));
    bool in_l = in_qann(l, e12, full) && in_qann(l, e23, full) && !in_qann(l, x, full);
    bool probe_ok = vec_equal(F5, probe, vec_scale(F5, F5.from_int(-2), e13));
    o.detail << "L: e12, e23 in QAnn, sum not; [x,[x,e22]] = " << l.format(probe);
    o.require(in_l, "membership in L");
    o.require(probe_ok, "probe value in L");

    auto q = quotient(l, center(l));
    const auto& lb = q.algebra;
    auto qfull = S5::full(F5, lb.dim());
    auto xb = q.project(x);
    auto probe_b = lb.bracket(xb, lb.bracket(xb, q.project(e22)));
    bool in_q = in_qann(lb, q.project(e12), qfull) && in_qann(lb, q.project(e23), qfull) && !in_qann(lb, xb, qfull);
    bool probe_b_ok = vec_equal(F5, probe_b, q.project(vec_scale(F5, F5.from_int(-2), e13))) && !is_zero<PrimeField>(F5, probe_b);
    // closed form of QAnn(L/Z): classes of b e13 + c e23 and of b e12 + c e13
    std::set<V5> expected;
    for (std::int64_t b = 0; b < 5; ++b)
        for (std::int64_t c = 0; c < 5; ++c) {
            auto sb = F5.from_int(b), sc = F5.from_int(c);
            expected.insert(q.project(vec_add(F5, vec_scale(F5, sb, e13), vec_scale(F5, sc, e23))));
            expected.insert(q.project(vec_add(F5, vec_scale(F5, sb, e12), vec_scale(F5, sc, e13))));
        }
    auto enumerated = qann_enumerate(lb, qfull, qfull);
    std::set<V5> got(enumerated.begin(), enumerated.end());
    o.detail << "; L/Z: same pair, probe class nonzero, QAnn has " << got.size() << " elements";
    o.require(in_q, "membership in L/Z");
    o.require(probe_b_ok, "probe value in L/Z");
    o.require(got == expected && got.size() == 45, "closed form of QAnn(L/Z)");
    o.require(find_sum_nonclosure(F5, enumerated).has_value(), "non-closure in L/Z");
}

void criterion3(Outcome& o) {
    auto m2 = matrix_algebra(F5, 2);
    // Leibniz system on the 16 entries of D, where D e_k = sum_s D(s,k) e_s
    Matrix<PrimeField> sys(F5, 64, 16);
    std::size_t row = 0;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            auto x = m2.basis_vector(i), y = m2.basis_vector(j), xy = m2.product(x, y);
            for (std::size_t r = 0; r < 4; ++r, ++row)
                for (std::size_t s = 0; s < 4; ++s) {
                    auto es = m2.basis_vector(s);
                    auto es_y = m2.product(es, y), x_es = m2.product(x, es);
                    for (std::size_t k = 0; k < 4; ++k) {
                        // r-th coordinate of D(xy) - D(x)y - xD(y) contributed by D(s,k)
                        auto c = F5.mul(xy[k], es[r]);
                        c = F5.sub(c, F5.mul(x[k], es_y[r]));
                        c = F5.sub(c, F5.mul(y[k], x_es[r]));
                        sys(row, s * 4 + k) = c;
                    }
                }
        }
    auto leibniz_dim = kernel(sys).dim();
    auto d = der_algebra(m2);
    auto inn = inner_derivations(d);
    auto iz = restriction_ideal(d, RestrictionKind::iz);
    auto azd = quadratic_annihilator_brute(d.lie);
    auto scalars = S5::span(F5, 4, {vec(F5, {1, 0, 0, 1})});
    o.detail << "dim Der = " << d.dim() << " (Leibniz system " << leibniz_dim << "), dim Inn = " << inn.image.dim()
             << ", ker ad = scalars: " << (inn.kernel == scalars ? "yes" : "no") << ", dim I_Z = " << iz.dim()
             << ", absolute zero divisors in Der: " << azd.size() - 1;
    o.require(d.dim() == 3 && leibniz_dim == 3, "dim Der");
    o.require(inn.image.is_full(), "Der = Inn");
    o.require(inn.kernel == scalars, "kernel of ad");
    o.require(iz.is_zero(), "I_Z = 0");
    o.require(azd.size() == 1 && check_snd(d.lie).ok(), "snd(Der)");
    o.require(verify_nodeg(m2).status == TheoremStatus::holds, "verify(nodeg)");
}

void criterion4(Outcome& o) {
    std::size_t instances = 0, traces = 0, failures = 0;
    bool sl2_in_gl2 = false;
    auto sl2 = S5::span(F5, 4, {vec(F5, {0, 1, 0, 0}), vec(F5, {0, 0, 1, 0}), vec(F5, {1, 0, 0, -1})});
    std::set<std::string> distinct;
    for (std::uint32_t p : {5u, 7u}) {
        auto r = fuzz_qadann({p, 6, 0, Budget{}});
        instances += r.instances.size();
        failures += r.failures();
        for (const auto& i : r.instances) {
            traces += i.summary.traces;
            distinct.insert(std::to_string(p) + ":" + i.outer + "/" + i.inner);
            if (p == 5 && i.outer == "gl2" && i.ext.inner == sl2) sl2_in_gl2 = true;
            if (i.summary.first_failure)
                o.detail << " first failure in " << i.outer << "/" << i.inner << " at "
                         << i.summary.first_failure->first_failure()->label << ";";
        }
    }
    o.detail << instances << " extensions over F5 and F7 with dim Q <= 6, " << traces << " traces, " << failures
             << " failures";
    o.require(distinct.size() >= 3, "at least three instances");
    o.require(sl2_in_gl2, "sl2 in gl2 present");
    o.require(failures == 0, "zero failures");
}

void criterion5(Outcome& o) {
    auto sl2 = lielab::detail::sl2(F5);
    for (const auto& q : {sl2, direct_sum(sl2, sl2)}) {
        Extension<PrimeField> ext{q, S5::full(F5, q.dim())};
        auto t = verify_coruno(ext);
        auto brute = quadratic_annihilator_brute(q);
        bool hyps = check_snd(q).ok() && check_weak_quotient(ext).ok();
        o.detail << "Q = L of dim " << q.dim() << ": " << to_string(t.status) << ", Ann dim " << int_fact(t, "ann_dim")
                 << ", QAnn size " << int_fact(t, "qann_count") << " (brute force " << brute.size() << ")" << (q.dim() == 3 ? "; " : "");
        o.require(hyps, "hypotheses");
        o.require(t.status == TheoremStatus::holds, "verify(coruno)");
        o.require(int_fact(t, "ann_dim") == 0 && annihilator(q, S5::full(F5, q.dim()), S5::full(F5, q.dim())).is_zero(),
                  "Ann = 0");
        o.require(int_fact(t, "qann_count") == 1 && brute.size() == 1, "QAnn = {0}");
    }
}

void criterion6(Outcome& o) {
    // (dagger): elements a of M2 with [[a,x],y] = 0 for all x, y are central
    auto m2 = matrix_algebra(F5, 2);
    std::size_t total = 0, satisfying = 0, noncentral = 0;
    auto z = center(m2);
    for_each_vector(F5, 4, Budget{}, [&](const V5& a) {
        ++total;
        bool kills = true;
        for (std::size_t i = 0; i < 4 && kills; ++i)
            for (std::size_t j = 0; j < 4 && kills; ++j)
                kills = is_zero<PrimeField>(F5, m2.bracket(m2.bracket(a, m2.basis_vector(i)), m2.basis_vector(j)));
        if (kills) {
            ++satisfying;
            noncentral += !z.member(a);
        }
        return true;
    });
    auto dagger = verify_dagger(m2);
    o.detail << "dagger on M2: " << total << " elements, " << satisfying << " satisfy, " << noncentral
             << " non-central; ";
    o.require(total == 625 && noncentral == 0, "dagger");
    o.require(dagger.status == TheoremStatus::holds && int_fact(dagger, "satisfying") == std::int64_t(satisfying),
              "verify(dagger)");

    // (ddagger) as literally stated: (ad k)^3|_K = 0 implies (ad k)^2|_K = 0 on K of M3 with transpose
    auto m3 = with_transpose(matrix_algebra(F5, 3));
    auto k = skew_part(m3).skew;
    std::size_t cube_only = 0;
    std::optional<V5> example;
    for_each_vector(F5, k.dim(), Budget{}, [&](const V5& c) {
        auto x = k.combine(c);
        auto adx = m3.ad(x);
        auto sq = adx * adx, cube = sq * adx;
        bool cube_zero = true, sq_zero = true;
        for (const auto& b : k.vectors()) {
            cube_zero = cube_zero && is_zero<PrimeField>(F5, cube.apply(b));
            sq_zero = sq_zero && is_zero<PrimeField>(F5, sq.apply(b));
        }
        if (cube_zero && !sq_zero) {
            ++cube_only;
            if (!example) example = x;
        }
        return true;
    });
    auto literal = cube_implies_square(m3);
    o.detail << "ddagger on K of M3 with transpose: " << cube_only << " of 125 elements have cube zero but square nonzero";
    if (example) o.detail << ", e.g. k = " << m3.format(*example);
    o.require(literal.ok() == (cube_only == 0), "library agrees with brute force");
    o.require(cube_only == 0, "ddagger");
}

void criterion7(Outcome& o) {
    auto m3 = with_transpose(matrix_algebra(F5, 3));
    auto sp = skew_part(m3);
    auto sd = sder(m3);
    auto inn = skew_inner_derivations(sd);
    auto ikz = restriction_ideal(sd, RestrictionKind::ikz);
    auto deg = degree(m3);
    auto snd_prop = verify_snd_prop(m3);
    auto nodegk = verify_nodegK(m3);
    o.detail << "M3: dim K = " << sp.skew.dim() << ", dim Z_K = " << sp.center.dim() << ", dim SDer = " << sd.dim()
             << ", dim Inn(K) = " << inn.image.dim() << ", dim I_KZ = " << ikz.dim() << ", degree = " << deg.value
             << ", snd_prop " << to_string(snd_prop.status) << ", nodegK " << to_string(nodegk.status);
    o.require(sp.skew.dim() == 3 && sp.center.is_zero(), "K and Z_K");
    o.require(sd.dim() == 3 && inn.image.is_full(), "SDer = Inn(K)");
    o.require(ikz.is_zero(), "I_KZ = 0");
    o.require(deg.value == 3 && deg.exact, "degree 3");
    o.require(snd_prop.status == TheoremStatus::holds, "verify(snd_prop)");
    o.require(nodegk.status == TheoremStatus::holds, "verify(nodegK)");

    auto control = verify_snd_prop(with_transpose(matrix_algebra(F5, 2)));
    o.detail << "; M2: snd_prop " << to_string(control.status) << " with degree " << int_fact(control, "degree");
    o.require(control.status == TheoremStatus::hypothesis_failed &&
                  control.hypothesis_failures == std::vector<std::string>{"degree"} && int_fact(control, "degree") == 2,
              "M2 control");
}

template <ExactField F>
std::size_t linear_properties(const F& f, std::mt19937_64& rng) {
    std::size_t bad = 0;
    std::uniform_int_distribution<std::size_t> dim(1, 6);
    for (int trial = 0; trial < 100; ++trial) {
        auto m = random_matrix(f, dim(rng), dim(rng), rng);
        auto r = rref(m);
        bad += r.rank + kernel(m).dim() != m.cols();
        bad += !(rref(r.reduced).reduced == r.reduced);
        std::size_t n = dim(rng);
        auto s = Subspace<F>::span(f, n, {random_vector(f, n, rng), random_vector(f, n, rng)});
        auto t = Subspace<F>::span(f, n, {random_vector(f, n, rng)});
        bad += sum(s, t).dim() + intersect(s, t).dim() != s.dim() + t.dim();
    }
    return bad;
}

void criterion8(Outcome& o) {
    std::mt19937_64 rng(2024);
    std::size_t linear_bad = linear_properties(F5, rng) + linear_properties(F7, rng) + linear_properties(QQ, rng);

    std::size_t tables = 0, lie_bad = 0;
    for (int trial = 0; trial < 60; ++trial)
        for (const auto& a : {random_associative(F5, rng), random_associative(F7, rng)}) {
            auto l = minus(a);
            lie_bad += bool(detail::find_anticommutativity_violation(l.table())) +
                       bool(detail::find_jacobi_violation(l.table()));
            ++tables;
        }

    std::vector<DerAlgebra<PrimeField>> ders{
        der_algebra(matrix_algebra(F5, 2)),        der_algebra(upper_triangular(F5, 3)),
        der_algebra(direct_sum(matrix_algebra(F5, 2), matrix_algebra(F5, 2))),
        der_algebra(minus(strictly_upper_triangular(F5, 3))), der_algebra(lielab::detail::sl2(F7)),
        sder(with_transpose(matrix_algebra(F5, 3))),
    };
    std::size_t der_bad = 0;
    for (const auto& d : ders)
        for (std::size_t i = 0; i < d.dim(); ++i)
            for (std::size_t j = 0; j < d.base.dim(); ++j) {
                auto y = d.base.basis_vector(j);
                der_bad += !(commutator(d.op(i), d.base.ad(y)) == d.base.ad(d.op(i).apply(y)));
            }

    std::size_t ann_bad = 0;
    for (int trial = 0; trial < 40; ++trial) {
        auto l = minus(random_associative(F5, rng));
        auto full = S5::full(F5, l.dim());
        for (const auto& v : annihilator(l, full, full).vectors()) ann_bad += !in_qann(l, v, full);
    }

    std::size_t snd_instances = 0, snd_bad = 0;
    for (auto p : {5u, 7u})
        for (auto& n : lielab::detail::lie_presets(PrimeField{p}, 6)) {
            std::vector<A5> cases{n.algebra};
            auto z = center(n.algebra);
            if (!z.is_zero() && !z.is_full()) cases.push_back(quotient(n.algebra, z).algebra);
            for (const auto& l : cases) {
                if (!check_snd(l).ok()) continue;
                ++snd_instances;
                snd_bad += !check_semiprime(l).ok();
            }
        }

    o.detail << "linear " << linear_bad << ", Lie identities on " << tables << " tables " << lie_bad
             << ", derivation formula on " << ders.size() << " algebras " << der_bad << ", Ann in QAnn " << ann_bad
             << ", snd => semiprime on " << snd_instances << " instances " << snd_bad << " (failure counts)";
    o.require(linear_bad == 0, "linear algebra");
    o.require(tables >= 100 && lie_bad == 0, "minus is Lie");
    o.require(der_bad == 0, "derivation formula");
    o.require(ann_bad == 0, "Ann in QAnn");
    o.require(snd_bad == 0, "snd implies semiprime");
}

void criterion9(Outcome& o) {
    auto throws_torsion = [](auto&& fn) {
        try {
            fn();
        } catch (const TorsionError&) {
            return true;
        } catch (...) {
        }
        return false;
    };
    bool f2 = throws_torsion([] { PrimeField{2}; });
    bool f3 = throws_torsion([] { PrimeField{3}; });
    bool parse = throws_torsion([] { script::parse_script("field F Fp 3\nalgebra A over F = matrix 2\n"); });
    bool f5_ok = !throws_torsion([] { PrimeField{5}; });
    o.detail << "F2 " << (f2 ? "rejected" : "accepted") << ", F3 " << (f3 ? "rejected" : "accepted")
             << ", parse-time " << (parse ? "rejected" : "accepted");
    o.require(f2 && f3 && f5_ok, "construction");
    o.require(parse, "parse time");
}

struct Run {
    int code = -1;
    std::string out;
};

Run cli(const std::string& args) {
    std::string cmd = std::string("'") + LIELAB_BIN + "' " + args + " 2>/dev/null";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return r;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string scratch(const std::string& name, const std::string& text) {
    std::string path = std::string(LIELAB_BINARY_DIR) + "/acceptance_" + name;
    std::ofstream(path) << text;
    return "'" + path + "'";
}

void criterion10(Outcome& o) {
    std::string src = LIELAB_SOURCE_DIR;
    auto t3 = cli("run '" + src + "/scripts/t3_analysis.lie'");
    auto report = nlohmann::ordered_json::parse(t3.out);
    for (auto& r : report["results"]) r["elapsed_ms"] = 0;
    std::ifstream in(src + "/tests/golden/t3_analysis.json");
    std::stringstream golden;
    golden << in.rdbuf();
    bool match = report.dump(2) + "\n" == golden.str();
    o.detail << "golden " << (match ? "matches" : "differs") << ", exit codes:";
    o.require(match, "golden report");

    std::string hyp = "field F Fp 5\nalgebra N over F = matrix 2\ninvolution on N = transpose\ncheck thm snd_prop N\n";
    std::vector<std::pair<std::string, int>> cases{
        {"run " + scratch("empty.lie", ""), 0},
        {"run " + scratch("holds.lie", "field F Fp 5\nalgebra M over F = matrix 2\nalgebra D over F = der M\ncheck snd D\n"), 0},
        {"run " + scratch("hyp.lie", hyp), 0},
        {"run --strict " + scratch("hyp.lie", hyp), 1},
        {"run " + scratch("torsion.lie", "field F Fp 3\n"), 2},
        {"run " + scratch("undeclared.lie", "check snd L\n"), 2},
        {"run /nonexistent.lie", 2},
        {"", 2},
    };
    o.require(t3.code == 1, "t3 script exit 1");
    o.detail << " t3=" << t3.code;
    for (const auto& [args, want] : cases) {
        int got = cli(args).code;
        o.detail << " " << want << (got == want ? "" : "!=" + std::to_string(got));
        o.require(got == want, "exit code of '" + args + "'");
    }
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
        {"t(3,F5) quadratic annihilator", criterion1},
        {"QAnn not closed under sums", criterion2},
        {"derivations of M2(F5)", criterion3},
        {"qadann identity suite", criterion4},
        {"coruno instance", criterion5},
        {"dagger and ddagger exhaustive", criterion6},
        {"involutive chain on M3(F5)", criterion7},
        {"structural invariants", criterion8},
        {"torsion guard", criterion9},
        {"CLI contract", criterion10},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        auto start = std::chrono::steady_clock::now();
        try {
            criteria[i].second(o);
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << " [exception: " << e.what() << "]";
        }
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
        failed += !o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << " (" << criteria[i].first << ", " << ms
                  << " ms): " << o.detail.str() << std::endl;
    }
    std::cout << criteria.size() - failed << "/" << criteria.size() << " criteria pass" << std::endl;
    return failed == 0 ? 0 : 1;
}
