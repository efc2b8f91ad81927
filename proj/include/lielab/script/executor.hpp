#ifndef LIELAB_SCRIPT_EXECUTOR_HPP
#define LIELAB_SCRIPT_EXECUTOR_HPP

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "../theorems.hpp"
#include "ast.hpp"
#include "printer.hpp"

namespace lielab::script {

using json = nlohmann::ordered_json;

inline constexpr const char* tool_version = "1.0.0";
inline constexpr int report_version = 1;

struct RunOptions {
    std::uint64_t budget = Budget{}.max_elements;
    std::uint64_t seed = 0;
    bool strict = false;
};

struct Result {
    std::size_t statement_index = 0;
    std::size_t line = 0;
    std::string statement_text;
    std::string verdict;  ///< holds, fails, undecided, hypothesis_failed, computed, error
    json witness = json::array();
    json witness_text = json::array();
    std::vector<std::string> hypothesis_failures;
    std::string note;
    json data = json::object();
    double elapsed_ms = 0;
};

struct Report {
    std::string script_hash;
    std::uint64_t budget = 0;
    std::uint64_t seed = 0;
    std::vector<Result> results;

    /// 0 when nothing failed; hypothesis failures and undecided results count only when strict.
    int exit_code(bool strict) const {
        for (const auto& r : results) {
            if (r.verdict == "fails" || r.verdict == "error") return 1;
            if (strict && (r.verdict == "hypothesis_failed" || r.verdict == "undecided")) return 1;
        }
        return 0;
    }

    json to_json() const {
        json j;
        j["tool"] = "lielab";
        j["tool_version"] = tool_version;
        j["version"] = report_version;
        j["script_hash"] = script_hash;
        j["budget"] = budget;
        j["seed"] = seed;
        j["results"] = json::array();
        for (const auto& r : results) {
            json e;
            e["statement_index"] = r.statement_index;
            e["line"] = r.line;
            e["statement_text"] = r.statement_text;
            e["verdict"] = r.verdict;
            e["witness"] = r.witness;
            e["witness_text"] = r.witness_text;
            e["hypothesis_failures"] = r.hypothesis_failures;
            e["note"] = r.note;
            e["data"] = r.data;
            e["elapsed_ms"] = r.elapsed_ms;
            j["results"].push_back(std::move(e));
        }
        return j;
    }
};

// ---------------------------------------------------------------------------
// JSON encoding of exact values

inline json scalar_json(const PrimeField&, PrimeField::element x) { return x; }
inline json scalar_json(const RationalField& f, const RationalField::element& x) { return f.to_string(x); }

template <ExactField F>
json vector_json(const F& f, const Vec<F>& v) {
    json out = json::array();
    for (const auto& x : v) out.push_back(scalar_json(f, x));
    return out;
}

template <ExactField F>
json vectors_json(const F& f, const std::vector<Vec<F>>& vs) {
    json out = json::array();
    for (const auto& v : vs) out.push_back(vector_json(f, v));
    return out;
}

template <ExactField F>
json subspace_json(const Subspace<F>& s) {
    return vectors_json(s.field(), s.vectors());
}

inline json fact_json(const Fact& f) {
    return std::visit([](const auto& v) { return json(v); }, f);
}

template <ExactField F>
json verdict_json(const Algebra<F>& a, const std::string& name, const Verdict<F>& v) {
    json j;
    j["name"] = name;
    j["verdict"] = to_string(v.status);
    j["note"] = v.note;
    j["witness"] = vectors_json(a.field(), v.witness);
    return j;
}

template <ExactField F>
json trace_json(const Algebra<F>& q, const IdentityTrace<F>& t) {
    json j;
    j["a"] = q.format(t.a);
    j["u"] = q.format(t.u);
    j["v"] = q.format(t.v);
    j["x"] = q.format(t.x);
    j["z"] = q.format(t.z);
    j["z_in_qann"] = t.z_in_qann;
    j["identities"] = json::array();
    for (const auto& c : t.checks) {
        json e;
        e["label"] = c.label;
        e["statement"] = c.statement;
        e["holds"] = c.holds;
        if (c.defect) e["defect"] = q.format(*c.defect);
        j["identities"].push_back(std::move(e));
    }
    return j;
}

// ---------------------------------------------------------------------------
// Execution

class Executor {
   public:
    explicit Executor(RunOptions opt) : opt_(opt) {}

    Report run(const Script& s) {
        Report rep;
        rep.script_hash = s.source_hash;
        rep.budget = opt_.budget;
        rep.seed = opt_.seed;
        for (std::size_t i = 0; i < s.statements.size(); ++i) {
            auto start = std::chrono::steady_clock::now();
            Result r;
            r.statement_index = i;
            r.line = i < s.lines.size() ? s.lines[i] : 0;
            r.statement_text = print_statement(s.statements[i]);
            bool is_check = std::holds_alternative<CheckStmt>(s.statements[i]);
            bool emit = is_check;
            try {
                std::visit([&](const auto& st) { exec(st, r); }, s.statements[i]);
            } catch (const Undecided& e) {
                r.verdict = "undecided";
                r.note = e.what();
                emit = true;
            } catch (const Error& e) {
                r.verdict = "error";
                r.note = e.kind() + ": " + e.what();
                emit = true;
                mark_broken(s.statements[i]);
            } catch (const std::exception& e) {
                r.verdict = "error";
                r.note = e.what();
                emit = true;
                mark_broken(s.statements[i]);
            }
            r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
            if (emit) rep.results.push_back(std::move(r));
        }
        return rep;
    }

   private:
    using AnyField = std::variant<PrimeField, RationalField>;
    using AnyAlgebra = std::variant<Algebra<PrimeField>, Algebra<RationalField>>;
    using AnyExtension = std::variant<Extension<PrimeField>, Extension<RationalField>>;

    RunOptions opt_;
    std::map<std::string, AnyField> fields_;
    std::map<std::string, AnyAlgebra> algebras_;
    std::map<std::string, AnyExtension> extensions_;
    std::set<std::string> broken_;

    void mark_broken(const Statement& st) {
        if (auto* a = std::get_if<AlgebraStmt>(&st)) broken_.insert(a->name);
        if (auto* e = std::get_if<ExtensionStmt>(&st)) broken_.insert(e->name);
        if (auto* i = std::get_if<InvolutionStmt>(&st)) broken_.insert(i->algebra);
    }
    void require_intact(const std::string& name) const {
        if (broken_.count(name)) throw Error("Unavailable", "'" + name + "' failed to build earlier in the script");
    }

    Budget budget_for(const std::optional<std::uint64_t>& b) const { return Budget{b ? *b : opt_.budget}; }

    template <ExactField F>
    Vec<F> to_vec(const F& f, const Row& r, std::size_t dim) const {
        if (r.size() != dim)
            throw AmbientMismatch("vector has " + std::to_string(r.size()) + " entries, expected " + std::to_string(dim));
        Vec<F> v;
        for (const auto& s : r) v.push_back(f.from_rational(parse_rational(s)));
        return v;
    }

    template <ExactField F>
    const Algebra<F>& algebra(const std::string& name) const {
        require_intact(name);
        return std::get<Algebra<F>>(algebras_.at(name));
    }
    template <ExactField F>
    const Extension<F>& extension(const std::string& name) const {
        require_intact(name);
        return std::get<Extension<F>>(extensions_.at(name));
    }

    /// An algebra name stands for the whole algebra, an extension name for its inner subspace.
    template <ExactField F>
    std::pair<const Algebra<F>*, Subspace<F>> space(const std::string& name) const {
        require_intact(name);
        if (auto it = algebras_.find(name); it != algebras_.end()) {
            const auto& a = std::get<Algebra<F>>(it->second);
            return {&a, Subspace<F>::full(a.field(), a.dim())};
        }
        const auto& e = std::get<Extension<F>>(extensions_.at(name));
        return {&e.outer, e.inner};
    }

    // declarations ---------------------------------------------------------

    void exec(const FieldStmt& s, Result&) {
        if (s.rational)
            fields_.emplace(s.name, RationalField{});
        else
            fields_.emplace(s.name, PrimeField(s.p));
    }

    void exec(const AlgebraStmt& s, Result&) {
        std::visit([&](const auto& f) { algebras_.insert_or_assign(s.name, AnyAlgebra(build(f, s.expr))); },
                   fields_.at(s.field));
    }

    template <ExactField F>
    Algebra<F> build(const F& f, const AlgebraExpr& e) const {
        switch (e.op) {
            case ExprOp::matrix: return matrix_algebra(f, e.n);
            case ExprOp::ut: return upper_triangular(f, e.n);
            case ExprOp::sut: return strictly_upper_triangular(f, e.n);
            case ExprOp::abelian: return abelian(f, e.n);
            case ExprOp::minus: return minus(algebra<F>(e.args[0]));
            case ExprOp::dsum: return direct_sum(algebra<F>(e.args[0]), algebra<F>(e.args[1]));
            case ExprOp::op: return opposite(algebra<F>(e.args[0]));
            case ExprOp::der: return der_algebra(algebra<F>(e.args[0])).lie;
            case ExprOp::sder: return sder(algebra<F>(e.args[0])).lie;
            case ExprOp::quotient: {
                const auto& a = algebra<F>(e.args[0]);
                auto ideal = e.args[1] == "center" ? center(a) : extension<F>(e.args[1]).inner;
                return quotient(a, ideal).algebra;
            }
            case ExprOp::table: return build_table(f, e);
        }
        throw std::logic_error("unknown expression");
    }

    template <ExactField F>
    Algebra<F> build_table(const F& f, const AlgebraExpr& e) const {
        const std::size_t n = e.n;
        std::vector<typename F::element> t(n * n * n, f.zero());
        for (const auto& p : e.products)
            for (const auto& term : p.terms) {
                auto& slot = t[((p.left - 1) * n + (p.right - 1)) * n + (term.index - 1)];
                slot = f.add(slot, f.from_rational(parse_rational(term.coeff)));
            }
        AlgebraKind kind = AlgebraKind::associative;
        if (e.kind == TableKind::lie) kind = AlgebraKind::lie;
        if (e.kind == TableKind::infer) {
            lielab::detail::Table<F> tb{f, n, t};
            if (!lielab::detail::find_anticommutativity_violation(tb) && !lielab::detail::find_jacobi_violation(tb)) kind = AlgebraKind::lie;
        }
        return Algebra<F>::create(f, n, kind, std::move(t));
    }

    void exec(const InvolutionStmt& s, Result&) {
        require_intact(s.algebra);
        std::visit(
            [&](const auto& a) {
                using F = std::decay_t<decltype(a.field())>;
                InvolutionSpec<F> spec = TransposeInvolution{};
                if (s.kind == InvolutionKind::exchange) spec = ExchangeInvolution{};
                if (s.kind == InvolutionKind::matrix) {
                    if (s.rows.size() != a.dim())
                        throw AmbientMismatch("involution matrix needs " + std::to_string(a.dim()) + " rows");
                    std::vector<Vec<F>> rows;
                    for (const auto& r : s.rows) rows.push_back(to_vec(a.field(), r, a.dim()));
                    spec = MatrixInvolution<F>{Matrix<F>::from_rows(a.field(), a.dim(), rows)};
                }
                auto updated = attach_involution(a, spec);
                algebras_.insert_or_assign(s.algebra, AnyAlgebra(std::move(updated)));
            },
            algebras_.at(s.algebra));
    }

    void exec(const ExtensionStmt& s, Result&) {
        require_intact(s.outer);
        std::visit(
            [&](const auto& q) {
                using F = std::decay_t<decltype(q.field())>;
                std::vector<Vec<F>> vs;
                for (const auto& r : s.vectors) vs.push_back(to_vec(q.field(), r, q.dim()));
                auto ext = extension_from_subspace(q, Subspace<F>::span(q.field(), q.dim(), vs));
                extensions_.insert_or_assign(s.name, AnyExtension(std::move(ext)));
            },
            algebras_.at(s.outer));
    }

    // checks ---------------------------------------------------------------

    /// Field of the first argument, which determines the instantiation.
    template <class Fn>
    void with_field(const std::string& name, Fn&& fn) {
        require_intact(name);
        if (auto it = algebras_.find(name); it != algebras_.end())
            std::visit([&](const auto& a) { fn(a.field()); }, it->second);
        else
            std::visit([&](const auto& e) { fn(e.outer.field()); }, extensions_.at(name));
    }

    void exec(const CheckStmt& c, Result& r) {
        with_field(c.args.at(0), [&](const auto& f) { check(f, c, r); });
    }

    template <ExactField F>
    static void set_verdict(Result& r, const Algebra<F>& a, const Verdict<F>& v) {
        r.verdict = to_string(v.status);
        r.note = v.note;
        r.witness = vectors_json(a.field(), v.witness);
        for (const auto& w : v.witness) r.witness_text.push_back(w.size() == a.dim() ? a.format(w) : format_vector(a.field(), w));
    }

    template <ExactField F>
    void check(const F&, const CheckStmt& c, Result& r) {
        const Budget budget = budget_for(c.budget);
        const auto& k = c.kind;
        if (k == "semiprime" || k == "prime" || k == "snd" || k == "starprime" || k == "starsemiprime") {
            const auto& a = algebra<F>(c.args[0]);
            Verdict<F> v = k == "semiprime" ? check_semiprime(a, budget)
                           : k == "prime"   ? check_prime(a, budget)
                           : k == "snd"     ? check_snd(a, budget)
                           : k == "starprime" ? check_star_prime(a, budget)
                                              : check_star_semiprime(a, budget);
            set_verdict(r, a, v);
        } else if (k == "center") {
            const auto& a = algebra<F>(c.args[0]);
            auto z = center(a);
            r.verdict = "computed";
            r.note = "Z = " + z.to_string();
            r.data["dim"] = z.dim();
            r.data["basis"] = subspace_json(z);
            json text = json::array();
            for (const auto& v : z.vectors()) text.push_back(a.format(v));
            r.data["basis_text"] = text;
        } else if (k == "deg") {
            const auto& a = algebra<F>(c.args[0]);
            auto d = degree(a, budget, opt_.seed);
            r.verdict = "computed";
            r.note = d.note;
            r.data["degree"] = d.value;
            r.data["exact"] = d.exact;
            if (d.witness) {
                r.data["witness"] = vector_json(a.field(), *d.witness);
                r.data["witness_text"] = a.format(*d.witness);
            }
        } else if (k == "iz") {
            const auto& a = algebra<F>(c.args[0]);
            auto d = der_algebra(a);
            auto inn = inner_derivations(d);
            auto iz = restriction_ideal(d, RestrictionKind::iz);
            r.verdict = "computed";
            r.data["der_dim"] = d.dim();
            r.data["inn_dim"] = inn.image.dim();
            r.data["ad_kernel_dim"] = inn.kernel.dim();
            r.data["center_dim"] = center(a).dim();
            r.data["iz_dim"] = iz.dim();
            r.data["iz_basis"] = subspace_json(iz);
            r.note = "dim Der = " + std::to_string(d.dim()) + ", dim Inn = " + std::to_string(inn.image.dim()) +
                     ", dim I_Z = " + std::to_string(iz.dim());
        } else if (k == "ikz") {
            const auto& a = algebra<F>(c.args[0]);
            auto d = sder(a);
            auto sk = skew_part(a);
            auto inn = inner_derivations(d, sk.skew);
            auto ikz = restriction_ideal(d, RestrictionKind::ikz);
            r.verdict = "computed";
            r.data["sder_dim"] = d.dim();
            r.data["skew_dim"] = sk.skew.dim();
            r.data["skew_center_dim"] = sk.center.dim();
            r.data["inn_skew_dim"] = inn.image.dim();
            r.data["ikz_dim"] = ikz.dim();
            r.data["ikz_basis"] = subspace_json(ikz);
            r.data["first_kind"] = involution_is_first_kind(a);
            r.note = "dim SDer = " + std::to_string(d.dim()) + ", dim Inn(K) = " + std::to_string(inn.image.dim()) +
                     ", dim I_{K,Z} = " + std::to_string(ikz.dim());
        } else if (k == "essential") {
            const auto& e = extension<F>(c.args[0]);
            set_verdict(r, e.outer, check_essential(e.outer, e.inner, budget));
        } else if (k == "weakq") {
            const auto& e = extension<F>(c.args[0]);
            set_verdict(r, e.outer, check_weak_quotient(e));
        } else if (k == "qann") {
            qann<F>(c, r, budget);
        } else {
            theorem<F>(c, r, budget);
        }
    }

    template <ExactField F>
    void qann(const CheckStmt& c, Result& r, const Budget& budget) {
        auto [la, x] = space<F>(c.args[0]);
        auto [lb, y] = space<F>(c.args[1]);
        const auto& l = *la;
        const F& f = l.field();
        if (c.mode == QAnnMode::member) {
            auto v = to_vec(f, c.vector, l.dim());
            if (!x.member(v)) throw AmbientMismatch(l.format(v) + " is not in " + c.args[0]);
            auto m = qann_member(l, v, y);
            if (m.member) {
                r.verdict = "holds";
                r.note = l.format(v) + " is in QAnn";
            } else {
                auto yk = y.basis_vector(*m.failing_index);
                r.verdict = "fails";
                r.note = "[x,[x," + l.format(yk) + "]] = " + l.format(m.defect) + " != 0";
                r.witness = vectors_json(f, std::vector<Vec<F>>{yk, m.defect});
                r.witness_text = json::array({l.format(yk), l.format(m.defect)});
            }
            return;
        }
        auto elems = qann_enumerate(l, x, y, budget);
        r.verdict = "computed";
        r.data["count"] = elems.size();
        r.data["ann_dim"] = annihilator(l, x, y).dim();
        auto pair = find_sum_nonclosure(f, elems);
        r.data["closed_under_sums"] = !pair.has_value();
        if (pair) {
            auto sum = vec_add(f, pair->first, pair->second);
            auto m = qann_member(l, sum, y);
            auto yk = y.basis_vector(*m.failing_index);
            json nc;
            nc["x"] = l.format(pair->first);
            nc["y"] = l.format(pair->second);
            nc["sum"] = l.format(sum);
            nc["probe"] = l.format(yk);
            nc["defect"] = vector_json(f, m.defect);
            nc["defect_text"] = l.format(m.defect);
            json probes = json::array();
            auto ads = l.ad(sum);
            for (std::size_t i = 0; i < y.dim(); ++i) {
                auto d = ads.apply(ads.apply(y.basis_vector(i)));
                if (is_zero<F>(f, d)) continue;
                probes.push_back({{"probe", l.format(y.basis_vector(i))}, {"defect", vector_json(f, d)}, {"defect_text", l.format(d)}});
            }
            nc["all_probes"] = probes;
            r.data["sum_nonclosure"] = nc;
            r.witness = vectors_json(f, std::vector<Vec<F>>{pair->first, pair->second});
            r.witness_text = json::array({l.format(pair->first), l.format(pair->second)});
            r.note = std::to_string(elems.size()) + " elements; " + l.format(pair->first) + " + " + l.format(pair->second) +
                     " is not a member: [s,[s," + l.format(yk) + "]] = " + l.format(m.defect);
        } else {
            r.note = std::to_string(elems.size()) + " elements; closed under sums";
        }
        json text = json::array();
        for (const auto& v : elems) text.push_back(l.format(v));
        r.data["elements"] = text;
    }

    template <ExactField F>
    void theorem(const CheckStmt& c, Result& r, const Budget& budget) {
        auto name = *parse_theorem_name(c.theorem);
        TheoremInput<F> input = takes_extension(name) ? TheoremInput<F>(extension<F>(c.args[0]))
                                                      : TheoremInput<F>(algebra<F>(c.args[0]));
        const Algebra<F>& a = takes_extension(name) ? extension<F>(c.args[0]).outer : algebra<F>(c.args[0]);
        auto t = verify(name, input, budget);
        r.verdict = to_string(t.status);
        r.note = t.note;
        r.hypothesis_failures = t.hypothesis_failures;
        r.witness = vectors_json(a.field(), t.witness);
        for (const auto& w : t.witness) r.witness_text.push_back(w.size() == a.dim() ? a.format(w) : format_vector(a.field(), w));
        json hyps = json::array(), checks = json::array(), facts = json::object();
        for (const auto& h : t.hypotheses) hyps.push_back(verdict_json(a, h.name, h.verdict));
        for (const auto& ch : t.checks) checks.push_back(verdict_json(a, ch.name, ch.verdict));
        for (const auto& [key, value] : t.facts) facts[key] = fact_json(value);
        r.data["theorem"] = c.theorem;
        r.data["hypotheses"] = hyps;
        r.data["checks"] = checks;
        r.data["facts"] = facts;
        if (t.trace) r.data["trace"] = trace_json(a, *t.trace);
    }
};

inline Report execute(const Script& s, const RunOptions& opt = {}) { return Executor(opt).run(s); }

}  // namespace lielab::script

#endif
