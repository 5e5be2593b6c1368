#pragma once

#include <optional>
#include <string>
#include <vector>

#include "serialhom/algebra.hpp"
#include "serialhom/linalg.hpp"

namespace serialhom {

/// One entry of a differential matrix: a scalar multiple of the path that
/// starts at the row summand's vertex and ends at the column summand's
/// vertex. Rows index the target term, columns the source term.
struct DiffEntry {
    int row = 0;
    int col = 0;
    int len = 0;
    Rational coeff = 1;
};

/// Bounded complex of projectives with path-valued differentials. Entries
/// are validated on construction: every nonzero entry must be a nonzero
/// path with matching endpoints. d*d = 0 is a separate check because the
/// certificate checker wants to report it rather than refuse the data.
class ProjComplex {
public:
    ProjComplex(SerialAlgebra algebra, int lo, std::vector<std::vector<Vertex>> terms,
                std::vector<std::vector<DiffEntry>> diffs);

    const SerialAlgebra& algebra() const { return algebra_; }
    int lo() const { return lo_; }
    int hi() const { return lo_ + static_cast<int>(terms_.size()) - 1; }

    const std::vector<Vertex>& term(int d) const;
    static const std::vector<Vertex>& empty_term();
    /// Differential arriving at degree d-1 from degree d, for lo < d <= hi.
    const std::vector<DiffEntry>& diff(int d) const;

    /// Largest degree carrying a nonzero term, or empty for the zero complex.
    std::optional<int> sup() const;
    std::optional<int> inf() const;
    long long total_dim() const;

    bool d_squared_zero() const;
    ProjComplex shifted(int s) const;
    std::string brief() const;

private:
    SerialAlgebra algebra_;
    int lo_ = 0;
    std::vector<std::vector<Vertex>> terms_;
    std::vector<std::vector<DiffEntry>> diffs_;  // diffs_[k] lands in degree lo_+k
};

/// Chain map data for building mapping cones: components g_d : X_d -> Y_d
/// given per degree in the same row/column convention as DiffEntry.
struct ChainMapComponents {
    int lo = 0;  // degree of components_[0]
    std::vector<std::vector<DiffEntry>> components;

    const std::vector<DiffEntry>& at(int d) const;
    static const std::vector<DiffEntry>& empty();
};

/// Cone of g : X -> Y with Con_d = X_{d-1} + Y_d and differential
/// (x, y) |-> (-dX x, g x + dY y).
ProjComplex mapping_cone(const ProjComplex& x, const ProjComplex& y, const ChainMapComponents& g);

/// One uniserial summand split off a homology module, with a generating
/// cycle in the coordinates of the ambient term.
struct HomologySummand {
    Uniserial shape;
    QVec generator;
};

struct HomologyReport {
    int lo = 0, hi = 0;
    std::vector<ModuleSum> homology;                        // per degree lo..hi
    std::vector<std::vector<HomologySummand>> witnesses;    // generators per degree
    std::optional<int> hsup, hinf;
    bool decomposed = true;    // false when some homology is not a sum of uniserials
    int failed_degree = 0;     // valid when !decomposed
    std::vector<int> dims;     // dim H_d per degree, always filled
};

/// Homology of the complex with each degree decomposed into uniserials.
/// Throws std::invalid_argument when d*d != 0.
HomologyReport homology_decompose(const ProjComplex& c);

struct QuasiResolutionCheck {
    bool ok = false;
    std::vector<long long> multiplicities;  // n_d per degree lo..hi
    long long score = 0;                    // sup - hsup
    int failed_degree = 0;
    std::string reason;
};

/// Succeeds when every nonzero homology of c is a direct power of m with the
/// exponents not all zero; the score is sup - hsup.
QuasiResolutionCheck check_quasi_resolution(const ProjComplex& c, const ModuleSum& m);

/// Truncated minimal resolution of a periodic module; a score-0 certificate.
ProjComplex periodic_certificate(const SerialAlgebra& a, const Uniserial& m, int r);

/// Given the projective cover sequence 0 -> N -> E -> M -> 0 with E the
/// injective projective cover of M and a validated certificate for N = of
/// syzygy of M, lifts N^a -> E^a degreewise and returns the mapping cone,
/// a certificate for M whose score grows by at most one.
ProjComplex cone_from_pi_cover(const SerialAlgebra& a, const Uniserial& m, const ProjComplex& cert_n);

/// Builds the chain-map ladder of shift n over the minimal resolution of an
/// eventually periodic module and returns the cone of its truncation, a
/// certificate of score exactly m. Empty when no ladder with nonnegative
/// path lengths and matching endpoints exists.
std::optional<ProjComplex> cone_from_ladder(const SerialAlgebra& a, const Uniserial& mod, int m, int n);

/// Combinatorial preflight of cone_from_ladder: verifies the ladder
/// hypotheses (periodicity, component lengths, endpoints) without building
/// the cone. When it returns true the score-m bound is available.
bool ladder_exists(const SerialAlgebra& a, const Uniserial& mod, int m, int n);

struct SearchCaps {
    int max_width = 2;
    int max_length = 4;
    long long max_total_dim = 64;
    long long budget = 100000;  // candidate complexes examined before giving up
};

/// Deterministic enumeration of small complexes with {0,1} coefficients,
/// first checker-validated certificate of score <= target wins. An empty
/// result is a search-budget answer, not a nonexistence proof.
std::optional<ProjComplex> bounded_search(const SerialAlgebra& a, const Uniserial& m,
                                          const SearchCaps& caps, long long target_score);

}  // namespace serialhom
