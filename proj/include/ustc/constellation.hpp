#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ustc/cmatrix.hpp"
#include "ustc/unitary.hpp"

namespace ustc {

enum class Form { Special, General };

// A family of codewords. Special form holds the M x M unitaries Psi_k of the
// T = 2M representation Phi_k = (sqrt(2)/2) [I; Psi_k]; general form holds
// T x M frames with orthonormal columns.
struct Constellation {
    Form form = Form::Special;
    int T = 0;
    int M = 0;
    std::vector<CMatrix> elements;

    int size() const { return static_cast<int>(elements.size()); }

    static Constellation special(int M, std::vector<CMatrix> psis);
    static Constellation general(int T, int M, std::vector<CMatrix> frames);

    // Special -> general embedding Phi_k = (sqrt(2)/2) [I; Psi_k]; identity on
    // general-form inputs.
    Constellation to_general() const;
};

enum class StructureKind {
    PowersAB,          // A^k B^l,       k=0..p, l=0..q
    PowersABC,         // A^k B^l C^m,   k=0..p, l=0..q, m=0..r
    WordChainAB,       // I, A, AB, ABA, ABAB, ...        (p elements)
    WordChainABC,      // I, A, AB, ABC, ABCA, ...        (p elements)
    DiagonalPowersAB,  // I, AB, A^2B^2, ...              (p elements)
    DiagonalPowersABC, // I, ABC, A^2B^2C^2, ...          (p elements)
    ProductS1S2,       // {s1 s2 | s1 in S1, s2 in S2} for two sub-structures
    GeneralAkB,        // general form {A^k [I;0] | k=0..p}, A in U(2M)
};

// Generator-structured constellation template. `generators` holds the square
// unitaries the kind consumes (A, B, C in order; for GeneralAkB a single
// T x T = 2M x 2M matrix). p/q/r are exponent bounds for the Powers kinds and
// the element count for the chain kinds. ProductS1S2 ignores the local fields
// and uses `children` (exactly two).
struct GeneratorStructure {
    StructureKind kind = StructureKind::PowersAB;
    int dim = 0; // codeword matrix dimension M (for GeneralAkB: M, with A of size 2M)
    std::vector<CMatrix> generators;
    int p = 0;
    int q = 0;
    int r = 0;
    std::vector<GeneratorStructure> children;
    // Structure-8 sub-chain reading: true follows the printed word list
    // I, C, CD, DCD, CDCD, ...; false uses the prefix chain I, C, CD, CDC, ...
    bool s2_literal = true;

    int generator_count() const;
    int generator_dim() const; // size of the square generator matrices
    long expansion_size() const;
};

// Explicit listing of every word, duplicates kept, lexicographic exponent /
// word-length order. Powers/chain kinds produce special form, GeneralAkB
// produces general form.
Constellation expand(const GeneratorStructure& g);

// Reduced distance-target set: a list of matrices whose metric evaluations
// reproduce the all-pairs minimum (or maximum) exactly. Difference targets
// stand for Psi_l - Psi_l'; cross-Gram targets stand for Phi_l^* Phi_l'.
struct ReducedTarget {
    enum class Type { Difference, CrossGram };
    Type type;
    CMatrix m;
};

bool supports_reduction(const GeneratorStructure& g);
std::vector<ReducedTarget> reduced_targets(const GeneratorStructure& g);

// Streams the same target set through `sink` with a reused workspace matrix,
// for optimizer inner loops that evaluate targets by the thousand.
using TargetSink = std::function<void(ReducedTarget::Type, const CMatrix&)>;
void visit_reduced_targets(const GeneratorStructure& g, const TargetSink& sink);

// Closed-form target count per kind (PowersAB: 2pq + p + q, etc).
long reduced_target_count(const GeneratorStructure& g);

// Published constellations: orthogonal121, sl2f5, numderived121, g214,
// optimal3dim2. Throws ValidationError for unknown names.
Constellation builtin(const std::string& name);
std::vector<std::string> builtin_names();

// Generator structure behind a builtin, for structured refinement. Available
// for numderived121 (A^k B^l) and g214 (A^k B^l).
GeneratorStructure builtin_structure(const std::string& name);

struct RateReport {
    long L = 0;
    int T = 0;
    double rate = 0.0; // bits per channel use
};

// General form: log2(L)/T. Special form: log2(L)/M, the differential
// modulation rate 2 log2(L)/T.
RateReport rate(const Constellation& c);

// Free real parameter count of the ambient search manifold: L*M^2 for special
// form, L*(2TM - M^2) for general form. Used for optimizer sizing.
long stiefel_parameter_count(const Constellation& c);
long stiefel_parameter_count(Form form, int T, int M, long L);

} // namespace ustc
