#include "ustc/constellation.hpp"

#include <cmath>
#include <utility>

#include "ustc/svd.hpp"

namespace ustc {

namespace {

// Nearest frame repair for small defects: Newton-Schulz polar iteration,
// quadratic and inverse-free. Only valid near the Stiefel manifold, which is
// all the repair policy allows anyway.
CMatrix repair_frame(const CMatrix& phi) {
    CMatrix x = phi;
    const CMatrix id = CMatrix::identity(phi.cols());
    for (int it = 0; it < 30; ++it) {
        const double defect = unitarity_defect(x);
        if (defect <= 1e-15) break;
        x = x * ((id * cplx(3.0) - x.adjoint() * x) * cplx(0.5));
    }
    return x;
}

CMatrix checked_element(CMatrix m, int index, int want_rows, int want_cols) {
    if (m.rows() != want_rows || m.cols() != want_cols)
        throw ValidationError("constellation element " + std::to_string(index) +
                              ": wrong shape");
    if (!m.all_finite())
        throw ValidationError("constellation element " + std::to_string(index) +
                              ": non-finite entries");
    const double defect = unitarity_defect(m);
    if (defect > kUnitaryRepairTol)
        throw ValidationError("constellation element " + std::to_string(index) +
                              ": unitarity defect above 1e-6");
    if (defect > kUnitaryTol) m = repair_frame(m);
    return m;
}

} // namespace

Constellation Constellation::special(int M, std::vector<CMatrix> psis) {
    if (M < 1) throw ValidationError("constellation: M must be >= 1");
    if (psis.empty()) throw ValidationError("constellation: empty element list");
    Constellation c;
    c.form = Form::Special;
    c.M = M;
    c.T = 2 * M;
    c.elements.reserve(psis.size());
    for (std::size_t i = 0; i < psis.size(); ++i)
        c.elements.push_back(checked_element(std::move(psis[i]), static_cast<int>(i), M, M));
    return c;
}

Constellation Constellation::general(int T, int M, std::vector<CMatrix> frames) {
    if (M < 1 || T < M) throw ValidationError("constellation: need T >= M >= 1");
    if (frames.empty()) throw ValidationError("constellation: empty element list");
    Constellation c;
    c.form = Form::General;
    c.M = M;
    c.T = T;
    c.elements.reserve(frames.size());
    for (std::size_t i = 0; i < frames.size(); ++i)
        c.elements.push_back(checked_element(std::move(frames[i]), static_cast<int>(i), T, M));
    return c;
}

Constellation Constellation::to_general() const {
    if (form == Form::General) return *this;
    Constellation g;
    g.form = Form::General;
    g.T = T;
    g.M = M;
    g.elements.reserve(elements.size());
    const double s = std::sqrt(0.5);
    for (const auto& psi : elements) {
        CMatrix phi(T, M);
        for (int j = 0; j < M; ++j) phi.at(j, j) = s;
        for (int i = 0; i < M; ++i)
            for (int j = 0; j < M; ++j)
                phi.at(M + i, j) = s * psi.at(i, j);
        g.elements.push_back(std::move(phi));
    }
    return g;
}

int GeneratorStructure::generator_count() const {
    switch (kind) {
        case StructureKind::PowersAB: return q > 0 ? 2 : 1;
        case StructureKind::PowersABC: return r > 0 ? 3 : (q > 0 ? 2 : 1);
        case StructureKind::WordChainAB: return 2;
        case StructureKind::WordChainABC: return 3;
        case StructureKind::DiagonalPowersAB: return 2;
        case StructureKind::DiagonalPowersABC: return 3;
        case StructureKind::ProductS1S2: return 0;
        case StructureKind::GeneralAkB: return 1;
    }
    return 0;
}

int GeneratorStructure::generator_dim() const {
    return kind == StructureKind::GeneralAkB ? 2 * dim : dim;
}

long GeneratorStructure::expansion_size() const {
    switch (kind) {
        case StructureKind::PowersAB: return static_cast<long>(p + 1) * (q + 1);
        case StructureKind::PowersABC:
            return static_cast<long>(p + 1) * (q + 1) * (r + 1);
        case StructureKind::WordChainAB:
        case StructureKind::WordChainABC:
        case StructureKind::DiagonalPowersAB:
        case StructureKind::DiagonalPowersABC:
            return p;
        case StructureKind::ProductS1S2:
            return children.at(0).expansion_size() * children.at(1).expansion_size();
        case StructureKind::GeneralAkB: return p + 1;
    }
    return 0;
}

namespace {

void validate_structure(const GeneratorStructure& g) {
    if (g.kind == StructureKind::ProductS1S2) {
        if (g.children.size() != 2)
            throw ValidationError("ProductS1S2 needs exactly two sub-structures");
        for (const auto& ch : g.children) {
            if (ch.kind == StructureKind::ProductS1S2 || ch.kind == StructureKind::GeneralAkB)
                throw ValidationError("ProductS1S2 sub-structures must be special-form word kinds");
            if (ch.dim != g.dim)
                throw ValidationError("ProductS1S2 sub-structures must share the dimension");
            validate_structure(ch);
        }
        return;
    }
    if (g.dim < 1) throw ValidationError("generator structure: dim must be >= 1");
    if (g.p < 0 || g.q < 0 || g.r < 0)
        throw ValidationError("generator structure: exponent bounds must be >= 0");
    switch (g.kind) {
        case StructureKind::WordChainAB:
        case StructureKind::WordChainABC:
        case StructureKind::DiagonalPowersAB:
        case StructureKind::DiagonalPowersABC:
            if (g.p < 1)
                throw ValidationError("chain structures need an element count p >= 1");
            break;
        default: break;
    }
    const int need = g.generator_count();
    if (static_cast<int>(g.generators.size()) < need)
        throw ValidationError("generator structure: expected " + std::to_string(need) +
                              " generators");
    const int gd = g.generator_dim();
    for (int i = 0; i < need; ++i) {
        const auto& u = g.generators[static_cast<std::size_t>(i)];
        if (u.rows() != gd || u.cols() != gd)
            throw ValidationError("generator " + std::to_string(i) + ": wrong shape");
        if (unitarity_defect(u) > kUnitaryRepairTol)
            throw ValidationError("generator " + std::to_string(i) + ": not unitary");
    }
}

// Powers accumulated in extended precision so that A^i applied to A^j agrees
// with A^{i+j} to double roundoff; the reduced-target evaluation and the
// all-pairs evaluation then see consistent matrices.
std::vector<CMatrix> power_table(const CMatrix& a, int pmax) {
    const int n = a.rows();
    std::vector<CMatrix> pw;
    pw.reserve(static_cast<std::size_t>(pmax) + 1);
    pw.push_back(CMatrix::identity(n));
    std::vector<std::complex<long double>> acc(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i) acc[static_cast<std::size_t>(i) * n + i] = 1.0L;
    for (int k = 1; k <= pmax; ++k) {
        std::vector<std::complex<long double>> next(static_cast<std::size_t>(n) * n);
        for (int i = 0; i < n; ++i)
            for (int kk = 0; kk < n; ++kk) {
                const std::complex<long double> v = acc[static_cast<std::size_t>(i) * n + kk];
                for (int j = 0; j < n; ++j)
                    next[static_cast<std::size_t>(i) * n + j] +=
                        v * static_cast<std::complex<long double>>(a.at(kk, j));
            }
        acc = std::move(next);
        CMatrix rounded(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                rounded.at(i, j) = static_cast<cplx>(acc[static_cast<std::size_t>(i) * n + j]);
        pw.push_back(std::move(rounded));
    }
    return pw;
}

// Alternating word g_start g_other g_start ... of the given length.
CMatrix alternating_word(const CMatrix& start, const CMatrix& other, int len) {
    CMatrix w = CMatrix::identity(start.rows());
    for (int k = 0; k < len; ++k) w = w * (k % 2 == 0 ? start : other);
    return w;
}

// Cyclic word starting at offset c into {A, B, C}, of the given length.
CMatrix cyclic_word(const std::vector<CMatrix>& gens, int c, int len) {
    CMatrix w = CMatrix::identity(gens[0].rows());
    for (int k = 0; k < len; ++k) w = w * gens[static_cast<std::size_t>((c + k) % 3)];
    return w;
}

// Printed structure-8 word list I, C, CD, DCD, CDCD, ...: from the fourth
// word on, prepend D and C alternately.
std::vector<CMatrix> literal_cd_chain(const CMatrix& c, const CMatrix& d, int count) {
    std::vector<CMatrix> words;
    words.reserve(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
        if (k == 0) words.push_back(CMatrix::identity(c.rows()));
        else if (k == 1) words.push_back(c);
        else if (k == 2) words.push_back(c * d);
        else words.push_back((k % 2 == 1 ? d : c) * words.back());
    }
    return words;
}

std::vector<CMatrix> expand_elements(const GeneratorStructure& g);

std::vector<CMatrix> expand_product_factor(const GeneratorStructure& parent, int which) {
    const GeneratorStructure& ch = parent.children.at(static_cast<std::size_t>(which));
    if (which == 1 && parent.s2_literal && ch.kind == StructureKind::WordChainAB)
        return literal_cd_chain(ch.generators.at(0), ch.generators.at(1), ch.p);
    return expand_elements(ch);
}

std::vector<CMatrix> expand_elements(const GeneratorStructure& g) {
    std::vector<CMatrix> out;
    switch (g.kind) {
        case StructureKind::PowersAB: {
            const auto pa = power_table(g.generators[0], g.p);
            const auto pb = g.q > 0 ? power_table(g.generators[1], g.q)
                                    : power_table(CMatrix::identity(g.dim), 0);
            out.reserve(static_cast<std::size_t>(g.expansion_size()));
            for (int k = 0; k <= g.p; ++k)
                for (int l = 0; l <= g.q; ++l)
                    out.push_back(pa[k] * pb[l]);
            break;
        }
        case StructureKind::PowersABC: {
            const auto pa = power_table(g.generators[0], g.p);
            const auto pb = g.q > 0 ? power_table(g.generators[1], g.q)
                                    : power_table(CMatrix::identity(g.dim), 0);
            const auto pc = g.r > 0 ? power_table(g.generators[2], g.r)
                                    : power_table(CMatrix::identity(g.dim), 0);
            out.reserve(static_cast<std::size_t>(g.expansion_size()));
            for (int k = 0; k <= g.p; ++k)
                for (int l = 0; l <= g.q; ++l)
                    for (int m = 0; m <= g.r; ++m)
                        out.push_back(pa[k] * pb[l] * pc[m]);
            break;
        }
        case StructureKind::WordChainAB: {
            CMatrix w = CMatrix::identity(g.dim);
            out.push_back(w);
            for (int k = 1; k < g.p; ++k) {
                w = w * g.generators[static_cast<std::size_t>((k - 1) % 2)];
                out.push_back(w);
            }
            break;
        }
        case StructureKind::WordChainABC: {
            CMatrix w = CMatrix::identity(g.dim);
            out.push_back(w);
            for (int k = 1; k < g.p; ++k) {
                w = w * g.generators[static_cast<std::size_t>((k - 1) % 3)];
                out.push_back(w);
            }
            break;
        }
        case StructureKind::DiagonalPowersAB: {
            CMatrix ak = CMatrix::identity(g.dim);
            CMatrix bk = CMatrix::identity(g.dim);
            for (int k = 0; k < g.p; ++k) {
                if (k > 0) {
                    ak = ak * g.generators[0];
                    bk = bk * g.generators[1];
                }
                out.push_back(ak * bk);
            }
            break;
        }
        case StructureKind::DiagonalPowersABC: {
            CMatrix ak = CMatrix::identity(g.dim);
            CMatrix bk = CMatrix::identity(g.dim);
            CMatrix ck = CMatrix::identity(g.dim);
            for (int k = 0; k < g.p; ++k) {
                if (k > 0) {
                    ak = ak * g.generators[0];
                    bk = bk * g.generators[1];
                    ck = ck * g.generators[2];
                }
                out.push_back(ak * (bk * ck));
            }
            break;
        }
        case StructureKind::ProductS1S2: {
            const auto s1 = expand_product_factor(g, 0);
            const auto s2 = expand_product_factor(g, 1);
            out.reserve(s1.size() * s2.size());
            for (const auto& a : s1)
                for (const auto& b : s2)
                    out.push_back(a * b);
            break;
        }
        case StructureKind::GeneralAkB: {
            const auto pa = power_table(g.generators[0], g.p);
            const int M = g.dim;
            out.reserve(static_cast<std::size_t>(g.p) + 1);
            for (int k = 0; k <= g.p; ++k) {
                CMatrix phi(2 * M, M);
                for (int i = 0; i < 2 * M; ++i)
                    for (int j = 0; j < M; ++j)
                        phi.at(i, j) = pa[static_cast<std::size_t>(k)].at(i, j);
                out.push_back(std::move(phi));
            }
            break;
        }
    }
    return out;
}

} // namespace

Constellation expand(const GeneratorStructure& g) {
    validate_structure(g);
    auto elems = expand_elements(g);
    if (g.kind == StructureKind::GeneralAkB)
        return Constellation::general(2 * g.dim, g.dim, std::move(elems));
    return Constellation::special(g.dim, std::move(elems));
}

namespace {

bool product_s1_supported(const GeneratorStructure& s1) {
    if (s1.kind == StructureKind::PowersAB && s1.q == 0) return true;
    if (s1.kind == StructureKind::WordChainAB) return true;
    return false;
}

// Forward quotient words s1(i)^{-1} s1(j), i < j, enumerated structurally.
std::vector<CMatrix> quotient_words(const GeneratorStructure& s1) {
    std::vector<CMatrix> out;
    if (s1.kind == StructureKind::PowersAB && s1.q == 0) {
        auto pw = power_table(s1.generators[0], s1.p);
        for (int d = 1; d <= s1.p; ++d) out.push_back(std::move(pw[static_cast<std::size_t>(d)]));
        return out;
    }
    if (s1.kind == StructureKind::WordChainAB) {
        const CMatrix& a = s1.generators[0];
        const CMatrix& b = s1.generators[1];
        for (int len = 1; len <= s1.p - 1; ++len)
            out.push_back(alternating_word(a, b, len));
        for (int len = 1; len <= s1.p - 2; ++len)
            out.push_back(alternating_word(b, a, len));
        return out;
    }
    throw ReductionUnavailable("ProductS1S2: left factor kind has no structural quotient set");
}

} // namespace

bool supports_reduction(const GeneratorStructure& g) {
    if (g.kind == StructureKind::ProductS1S2)
        return product_s1_supported(g.children.at(0));
    return true;
}

void visit_reduced_targets(const GeneratorStructure& g, const TargetSink& sink) {
    validate_structure(g);
    const CMatrix id = CMatrix::identity(g.dim);
    CMatrix work(g.dim, g.dim);
    CMatrix prod(g.dim, g.dim);
    auto diff = [&](const CMatrix& a, const CMatrix& b) {
        difference_into(work, a, b);
        sink(ReducedTarget::Type::Difference, work);
    };
    auto id_minus = [&](const CMatrix& a) {
        identity_minus_into(work, a);
        sink(ReducedTarget::Type::Difference, work);
    };
    switch (g.kind) {
        case StructureKind::PowersAB: {
            const auto pa = power_table(g.generators[0], g.p);
            const auto pb = g.q > 0 ? power_table(g.generators[1], g.q)
                                    : power_table(id, 0);
            for (int i = 1; i <= g.p; ++i) id_minus(pa[static_cast<std::size_t>(i)]);
            for (int j = 1; j <= g.q; ++j) id_minus(pb[static_cast<std::size_t>(j)]);
            for (int i = 1; i <= g.p; ++i) {
                for (int j = 1; j <= g.q; ++j) {
                    multiply_into(prod, pa[static_cast<std::size_t>(i)],
                                  pb[static_cast<std::size_t>(j)]);
                    id_minus(prod);
                    diff(pa[static_cast<std::size_t>(i)], pb[static_cast<std::size_t>(j)]);
                }
            }
            break;
        }
        case StructureKind::PowersABC: {
            const auto pa = power_table(g.generators[0], g.p);
            const auto pb = g.q > 0 ? power_table(g.generators[1], g.q) : power_table(id, 0);
            const auto pc = g.r > 0 ? power_table(g.generators[2], g.r) : power_table(id, 0);
            // C^e for e in -r..r; negative powers via adjoint.
            std::vector<CMatrix> cpow;
            for (int e = -g.r; e <= g.r; ++e)
                cpow.push_back(e >= 0 ? pc[static_cast<std::size_t>(e)]
                                      : pc[static_cast<std::size_t>(-e)].adjoint());
            auto cp = [&](int e) -> const CMatrix& {
                return cpow[static_cast<std::size_t>(e + g.r)];
            };
            CMatrix tmp(g.dim, g.dim);
            for (int e = 1; e <= g.r; ++e) id_minus(cp(e));
            for (int d = 1; d <= g.q; ++d)
                for (int e = -g.r; e <= g.r; ++e) {
                    multiply_into(prod, pb[static_cast<std::size_t>(d)], cp(e));
                    id_minus(prod);
                }
            for (int d = 1; d <= g.p; ++d)
                for (int l2 = 0; l2 <= g.q; ++l2)
                    for (int e = -g.r; e <= g.r; ++e) {
                        multiply_into(tmp, pa[static_cast<std::size_t>(d)],
                                      pb[static_cast<std::size_t>(l2)]);
                        multiply_into(prod, tmp, cp(e));
                        for (int l1 = 0; l1 <= g.q; ++l1)
                            diff(pb[static_cast<std::size_t>(l1)], prod);
                    }
            break;
        }
        case StructureKind::WordChainAB: {
            const CMatrix& a = g.generators[0];
            const CMatrix& b = g.generators[1];
            for (int len = 1; len <= g.p - 1; ++len)
                id_minus(alternating_word(a, b, len));
            for (int len = 1; len <= g.p - 2; ++len)
                id_minus(alternating_word(b, a, len));
            break;
        }
        case StructureKind::WordChainABC: {
            std::vector<CMatrix> gens(g.generators.begin(), g.generators.begin() + 3);
            for (int c = 0; c < 3; ++c)
                for (int len = 1; len <= g.p - 1 - c; ++len)
                    id_minus(cyclic_word(gens, c, len));
            break;
        }
        case StructureKind::DiagonalPowersAB: {
            CMatrix ad = id, bd = id;
            for (int d = 1; d <= g.p - 1; ++d) {
                ad = ad * g.generators[0];
                bd = bd * g.generators[1];
                multiply_into(prod, ad, bd);
                id_minus(prod);
            }
            break;
        }
        case StructureKind::DiagonalPowersABC: {
            // A^k B^k C^k - A^{k+d} B^{k+d} C^{k+d} reduces to
            // B^k - A^d B^{k+d} C^d; the middle powers do not cancel, so the
            // target stays k-dependent.
            const auto pa = power_table(g.generators[0], g.p - 1);
            const auto pb = power_table(g.generators[1], g.p - 1);
            const auto pc = power_table(g.generators[2], g.p - 1);
            CMatrix tmp(g.dim, g.dim);
            for (int d = 1; d <= g.p - 1; ++d)
                for (int k = 0; k + d <= g.p - 1; ++k) {
                    multiply_into(tmp, pa[static_cast<std::size_t>(d)],
                                  pb[static_cast<std::size_t>(k + d)]);
                    multiply_into(prod, tmp, pc[static_cast<std::size_t>(d)]);
                    diff(pb[static_cast<std::size_t>(k)], prod);
                }
            break;
        }
        case StructureKind::ProductS1S2: {
            if (!product_s1_supported(g.children[0]))
                throw ReductionUnavailable(
                    "ProductS1S2: left factor must be pure powers or an AB word chain");
            const auto s2 = expand_product_factor(g, 1);
            // Same left factor: differences inside S2.
            if (!g.s2_literal || g.children[1].kind != StructureKind::WordChainAB) {
                visit_reduced_targets(g.children[1], sink);
            } else {
                for (std::size_t i = 0; i < s2.size(); ++i)
                    for (std::size_t j = i + 1; j < s2.size(); ++j)
                        diff(s2[i], s2[j]);
            }
            // Distinct left factors: s2 - u s2' over the structural quotients.
            for (const auto& u : quotient_words(g.children[0]))
                for (const auto& y : s2) {
                    multiply_into(prod, u, y);
                    for (const auto& x : s2) diff(x, prod);
                }
            break;
        }
        case StructureKind::GeneralAkB: {
            const auto pa = power_table(g.generators[0], g.p);
            const int M = g.dim;
            CMatrix block(M, M);
            for (int k = -g.p; k <= g.p; ++k) {
                if (k == 0) continue;
                const CMatrix& w = pa[static_cast<std::size_t>(std::abs(k))];
                for (int i = 0; i < M; ++i)
                    for (int j = 0; j < M; ++j)
                        block.at(i, j) = k > 0 ? w.at(i, j) : std::conj(w.at(j, i));
                sink(ReducedTarget::Type::CrossGram, block);
            }
            break;
        }
    }
}

std::vector<ReducedTarget> reduced_targets(const GeneratorStructure& g) {
    std::vector<ReducedTarget> out;
    visit_reduced_targets(g, [&](ReducedTarget::Type type, const CMatrix& m) {
        out.push_back(ReducedTarget{type, m});
    });
    return out;
}

long reduced_target_count(const GeneratorStructure& g) {
    auto chain_targets = [](int p, int starts) {
        long n = 0;
        for (int c = 0; c < starts; ++c) n += std::max(0, p - 1 - c);
        return n;
    };
    switch (g.kind) {
        case StructureKind::PowersAB:
            return 2L * g.p * g.q + g.p + g.q;
        case StructureKind::PowersABC:
            return static_cast<long>(g.p) * (g.q + 1) * (g.q + 1) * (2 * g.r + 1) +
                   static_cast<long>(g.q) * (2 * g.r + 1) + g.r;
        case StructureKind::WordChainAB: return chain_targets(g.p, 2);
        case StructureKind::WordChainABC: return chain_targets(g.p, 3);
        case StructureKind::DiagonalPowersAB:
            return g.p - 1;
        case StructureKind::DiagonalPowersABC:
            return static_cast<long>(g.p) * (g.p - 1) / 2;
        case StructureKind::ProductS1S2: {
            const auto& s1 = g.children.at(0);
            const auto& s2 = g.children.at(1);
            long quotients = 0;
            if (s1.kind == StructureKind::PowersAB && s1.q == 0) quotients = s1.p;
            else if (s1.kind == StructureKind::WordChainAB) quotients = chain_targets(s1.p, 2);
            else throw ReductionUnavailable("ProductS1S2: unsupported left factor");
            const long l2 = s2.expansion_size();
            const long inner = (!g.s2_literal || s2.kind != StructureKind::WordChainAB)
                                   ? reduced_target_count(s2)
                                   : l2 * (l2 - 1) / 2;
            return quotients * l2 * l2 + inner;
        }
        case StructureKind::GeneralAkB: return 2L * g.p;
    }
    return 0;
}

RateReport rate(const Constellation& c) {
    RateReport r;
    r.L = c.size();
    r.T = c.T;
    const double bits = std::log2(static_cast<double>(r.L));
    r.rate = c.form == Form::Special ? bits / c.M : bits / c.T;
    return r;
}

long stiefel_parameter_count(Form form, int T, int M, long L) {
    if (form == Form::Special) return L * static_cast<long>(M) * M;
    return L * (2L * T * M - static_cast<long>(M) * M);
}

long stiefel_parameter_count(const Constellation& c) {
    return stiefel_parameter_count(c.form, c.T, c.M, c.size());
}

// ---------------------------------------------------------------------------
// Published constellations
// ---------------------------------------------------------------------------

namespace {

cplx unit_phase(double angle) { return {std::cos(angle), std::sin(angle)}; }

CMatrix mat2(cplx a, cplx b, cplx c, cplx d) {
    CMatrix m(2, 2);
    m.at(0, 0) = a; m.at(0, 1) = b;
    m.at(1, 0) = c; m.at(1, 1) = d;
    return m;
}

Constellation build_orthogonal121() {
    std::vector<CMatrix> psis;
    psis.reserve(121);
    const double s = std::sqrt(0.5);
    for (int m = 0; m <= 10; ++m) {
        for (int n = 0; n <= 10; ++n) {
            const double am = 2.0 * M_PI * m / 11.0;
            const double an = 2.0 * M_PI * n / 11.0;
            psis.push_back(mat2(s * unit_phase(am), s * unit_phase(an),
                                -s * unit_phase(-an), s * unit_phase(-am)));
        }
    }
    return Constellation::special(2, std::move(psis));
}

Constellation build_sl2f5() {
    auto eta = [](int k) { return unit_phase(2.0 * M_PI * k / 5.0); };
    const double s = 1.0 / std::sqrt(5.0);
    const CMatrix P = mat2(s * (eta(2) - eta(3)), s * (eta(1) - eta(4)),
                           s * (eta(1) - eta(4)), s * (eta(3) - eta(2)));
    const CMatrix Q = mat2(s * (eta(1) - eta(2)), s * (eta(2) - eta(0)),
                           s * (eta(0) - eta(3)), s * (eta(4) - eta(3)));
    const CMatrix I = CMatrix::identity(2);
    const CMatrix QP = Q * P;
    const CMatrix QPQ = QP * Q;
    const CMatrix QPQP = QPQ * P;
    const CMatrix QPQ2 = QPQ * Q;
    const CMatrix QPQPQ = QPQP * Q;
    const CMatrix QPQPQ2 = QPQPQ * Q;
    const CMatrix QPQPQ2P = QPQPQ2 * P;
    const CMatrix QPQPQ2PQ = QPQPQ2P * Q;
    const CMatrix QPQPQ2PQP = QPQPQ2PQ * P;
    const std::vector<CMatrix> words = {I, P, Q, QP, QPQ, QPQP, QPQ2, QPQPQ,
                                        QPQPQ2, QPQPQ2P, QPQPQ2PQ, QPQPQ2PQP};
    std::vector<CMatrix> psis;
    psis.reserve(120);
    CMatrix pq_j = I;
    const CMatrix PQ = P * Q;
    for (int j = 0; j < 10; ++j) {
        if (j > 0) pq_j = pq_j * PQ;
        for (const auto& x : words) psis.push_back(pq_j * x);
    }
    return Constellation::special(2, std::move(psis));
}

GeneratorStructure numderived_structure() {
    const CMatrix A = mat2({-0.9049, 0.3265}, {0.1635, 0.2188},
                           {0.0364, 0.2707}, {-0.8748, 0.4002});
    const CMatrix B = mat2({-0.1596, 0.9767}, {-0.1038, 0.0994},
                           {0.0833, -0.1171}, {-0.9432, 0.2995});
    GeneratorStructure g;
    g.kind = StructureKind::PowersAB;
    g.dim = 2;
    g.p = 10;
    g.q = 10;
    // Printed to four decimals; re-project onto the unitary group.
    g.generators = {project_to_unitary(A), project_to_unitary(B)};
    return g;
}

GeneratorStructure g214_structure() {
    auto eta = [](int k) { return unit_phase(2.0 * M_PI * k / 21.0); };
    CMatrix A(3, 3);
    A.at(0, 0) = eta(1);
    A.at(1, 1) = eta(4);
    A.at(2, 2) = eta(16);
    CMatrix B(3, 3);
    B.at(0, 1) = 1.0;
    B.at(1, 2) = 1.0;
    B.at(2, 0) = eta(7);
    GeneratorStructure g;
    g.kind = StructureKind::PowersAB;
    g.dim = 3;
    g.p = 20;
    g.q = 2;
    g.generators = {A, B};
    return g;
}

Constellation build_optimal3dim2() {
    const cplx w1 = unit_phase(2.0 * M_PI / 3.0);
    const cplx w2 = unit_phase(4.0 * M_PI / 3.0);
    std::vector<CMatrix> psis = {
        CMatrix::identity(2),
        mat2(w1, 0.0, 0.0, std::conj(w1)),
        mat2(w2, 0.0, 0.0, std::conj(w2)),
    };
    return Constellation::special(2, std::move(psis));
}

} // namespace

std::vector<std::string> builtin_names() {
    return {"orthogonal121", "sl2f5", "numderived121", "g214", "optimal3dim2"};
}

Constellation builtin(const std::string& name) {
    if (name == "orthogonal121") return build_orthogonal121();
    if (name == "sl2f5") return build_sl2f5();
    if (name == "numderived121") return expand(numderived_structure());
    if (name == "g214") return expand(g214_structure());
    if (name == "optimal3dim2") return build_optimal3dim2();
    throw ValidationError("unknown builtin constellation: " + name);
}

GeneratorStructure builtin_structure(const std::string& name) {
    if (name == "numderived121") return numderived_structure();
    if (name == "g214") return g214_structure();
    throw ValidationError("no generator structure for builtin: " + name);
}

} // namespace ustc
