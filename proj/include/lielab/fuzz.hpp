#ifndef LIELAB_FUZZ_HPP
#define LIELAB_FUZZ_HPP

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "theorems.hpp"

namespace lielab {

struct FuzzOptions {
    std::uint32_t p = 5;
    std::size_t dim_max = 6;
    std::uint64_t seed = 0;  ///< 0 keeps the natural order; anything else shuffles it
    Budget budget{};
};

struct FuzzInstance {
    std::string outer;  ///< preset name of Q
    std::string inner;  ///< how L was produced
    Extension<PrimeField> ext;
    std::size_t qann_count = 0;
    TraceSummary<PrimeField> summary;
};

struct FuzzReport {
    std::uint32_t p = 0;
    std::size_t dim_max = 0;
    std::uint64_t seed = 0;
    std::size_t candidates = 0;
    std::size_t rejected = 0;  ///< Ann_L(Q) != 0
    std::vector<FuzzInstance> instances;

    std::size_t failures() const {
        std::size_t n = 0;
        for (const auto& i : instances) n += i.summary.failures;
        return n;
    }
};

namespace detail {

struct NamedAlgebra {
    std::string name;
    Algebra<PrimeField> algebra;
};

inline Algebra<PrimeField> sl2(const PrimeField& f) {
    auto gl = minus(matrix_algebra(f, 2));
    auto traceless = Subspace<PrimeField>::span(f, 4, {{1, 0, 0, f.neg(1)}, {0, 1, 0, 0}, {0, 0, 1, 0}});
    return subalgebra(gl, traceless, "s").with_labels({"h", "e", "f"});
}

/// Lie presets of dimension at most dim_max.
inline std::vector<NamedAlgebra> lie_presets(const PrimeField& f, std::size_t dim_max) {
    std::vector<NamedAlgebra> all{
        {"gl2", minus(matrix_algebra(f, 2))},
        {"sl2", sl2(f)},
        {"t2", minus(upper_triangular(f, 2))},
        {"t3", minus(upper_triangular(f, 3))},
        {"sut3", minus(strictly_upper_triangular(f, 3))},
        {"sut4", minus(strictly_upper_triangular(f, 4))},
    };
    std::vector<NamedAlgebra> sums{
        {"sl2+sl2", direct_sum(sl2(f), sl2(f))},
        {"sl2+t2", direct_sum(sl2(f), all[2].algebra)},
        {"t2+t2", direct_sum(all[2].algebra, all[2].algebra)},
        {"sut3+sl2", direct_sum(all[4].algebra, sl2(f))},
    };
    all.insert(all.end(), sums.begin(), sums.end());
    std::vector<NamedAlgebra> out;
    for (auto& a : all)
        if (a.algebra.dim() <= dim_max) out.push_back(std::move(a));
    return out;
}

struct Candidate {
    std::string description;
    Subspace<PrimeField> inner;
};

/// Q, [Q,Q], ideals generated by one basis vector, subalgebras generated by one or two basis vectors.
inline std::vector<Candidate> inner_candidates(const Algebra<PrimeField>& q) {
    const auto& f = q.field();
    std::vector<Candidate> out;
    out.push_back({"Q", Subspace<PrimeField>::full(f, q.dim())});
    std::vector<Vec<PrimeField>> brackets;
    for (std::size_t i = 0; i < q.dim(); ++i)
        for (std::size_t j = i + 1; j < q.dim(); ++j) brackets.push_back(q.bracket(q.basis_vector(i), q.basis_vector(j)));
    out.push_back({"[Q,Q]", Subspace<PrimeField>::span(f, q.dim(), brackets)});
    for (std::size_t i = 0; i < q.dim(); ++i)
        out.push_back({"ideal(" + q.label(i) + ")", ideal_generated(q, {q.basis_vector(i)})});
    for (std::size_t i = 0; i < q.dim(); ++i)
        for (std::size_t j = i + 1; j < q.dim(); ++j)
            out.push_back({"alg(" + q.label(i) + "," + q.label(j) + ")",
                           generated_subalgebra(q, {q.basis_vector(i), q.basis_vector(j)})});
    return out;
}

}  // namespace detail

/// Extensions L ⊆ Q from the presets that satisfy Ann_L(Q) = 0, deduplicated.
inline std::vector<FuzzInstance> fuzz_extensions(const FuzzOptions& opt, std::size_t* candidates = nullptr,
                                                 std::size_t* rejected = nullptr) {
    PrimeField f(opt.p);
    std::vector<FuzzInstance> out;
    std::size_t seen_candidates = 0, seen_rejected = 0;
    for (const auto& preset : detail::lie_presets(f, opt.dim_max)) {
        std::set<std::vector<PrimeField::element>> keys;
        for (auto& c : detail::inner_candidates(preset.algebra)) {
            if (c.inner.is_zero() || !keys.insert(detail::ideal_key(c.inner)).second) continue;
            ++seen_candidates;
            Extension<PrimeField> ext{preset.algebra, c.inner};
            if (!check_monomorphism(ext).ok()) {
                ++seen_rejected;
                continue;
            }
            out.push_back({preset.name, c.description, std::move(ext), 0, {}});
        }
    }
    if (opt.seed != 0) {
        std::mt19937_64 rng(opt.seed);
        std::shuffle(out.begin(), out.end(), rng);
    }
    if (candidates) *candidates = seen_candidates;
    if (rejected) *rejected = seen_rejected;
    return out;
}

/// Enumerates QAnn_Q(L) for every extension and runs the identity chain on all (a, u, v).
inline FuzzReport fuzz_qadann(const FuzzOptions& opt) {
    FuzzReport r;
    r.p = opt.p;
    r.dim_max = opt.dim_max;
    r.seed = opt.seed;
    r.instances = fuzz_extensions(opt, &r.candidates, &r.rejected);
    for (auto& inst : r.instances) {
        const auto& q = inst.ext.outer;
        auto qa = qann_enumerate(q, Subspace<PrimeField>::full(q.field(), q.dim()), inst.ext.inner, opt.budget);
        inst.qann_count = qa.size();
        inst.summary = trace_all(inst.ext, qa);
    }
    return r;
}

}  // namespace lielab

#endif
