#pragma once

#include <optional>
#include <string>
#include <vector>

#include "serialhom/algebra.hpp"

namespace serialhom {

/// dim Hom(U, V) for uniserials. A nonzero hom lands in a radical power of V
/// whose top matches U, giving one basis map per valid shift.
int hom_dim(const SerialAlgebra& a, const Uniserial& u, const Uniserial& v);

/// Minimal projective resolution of a uniserial, stored as the vertices of
/// its terms and the path lengths of its differentials. Terms beyond the
/// stored window repeat with the orbit period, so the data is finite.
struct MinimalResolution {
    Uniserial module;
    std::vector<Vertex> terms;       // vertex of the t-th term, t = 0..T
    std::vector<int> diff_lengths;   // length of d_t : P(t) -> P(t-1), t = 1..T
    int preperiod = 0;
    std::optional<int> period;

    bool finite() const { return !period.has_value(); }
    /// Vertex of the t-th term for any t >= 0; empty once a finite
    /// resolution has ended.
    std::optional<Vertex> term(long long t) const;
    /// Length of d_t for any t >= 1; empty once a finite resolution ended.
    std::optional<int> diff_length(long long t) const;
};

MinimalResolution minimal_resolution(const SerialAlgebra& a, const Uniserial& m);

/// dim Ext^s(M, N) computed from the Hom complex of the minimal resolution
/// by exact rank arithmetic. Ext^0 agrees with hom_dim.
int ext_dim(const SerialAlgebra& a, const Uniserial& m, const Uniserial& n, int s);

/// Decides Ext^s(M,N) = 0 for all s >= from. The Hom complex repeats with
/// the resolution period from degree preperiod+1 on, so checking the window
/// from..max(from, preperiod+2+period) is exhaustive.
bool ext_eventually_vanishes(const SerialAlgebra& a, const Uniserial& m, const Uniserial& n, int from);

/// True exactly when pd(M) is infinite while Ext^s(M,M) vanishes for all
/// s >= 2; this certifies that M has no finite quasi-projective resolution.
bool infinite_qpd_witness(const SerialAlgebra& a, const Uniserial& m);

struct ExtTableEntry {
    Uniserial m, n;
    std::vector<int> ext;  // ext[s] = dim Ext^s, s = 0..valid_through
    std::string tail;      // "zero@d", "periodic(rho)@d" or "unknown@d"
};

struct ExtTable {
    std::vector<ExtTableEntry> pairs;
};

ExtTable ext_table(const SerialAlgebra& a, const std::vector<std::pair<Uniserial, Uniserial>>& pairs,
                   int through);

}  // namespace serialhom
