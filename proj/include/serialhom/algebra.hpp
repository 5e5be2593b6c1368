#pragma once

#include <optional>
#include <string>
#include <vector>

#include "serialhom/extnat.hpp"

namespace serialhom {

using Vertex = int;  // 1-based throughout

/// Finite-dimensional serial algebra presented by a successor map and the
/// Loewy lengths of the indecomposable projectives. A cyclic presentation
/// remembers the defining vertex subset delta; in that case the Loewy
/// lengths are derived, not free data.
class SerialAlgebra {
public:
    /// Cycle quiver on n vertices with the relations attached to delta.
    static SerialAlgebra cyclic(int n, std::vector<Vertex> delta);

    /// Arbitrary successor/Loewy data, validated against the Kupisch
    /// condition c_{sigma(i)} >= c_i - 1. When c_i = 1 the successor entry
    /// of i is never consulted.
    static SerialAlgebra kupisch(std::vector<Vertex> successor, std::vector<int> loewy);

    int vertices() const { return n_; }
    Vertex next(Vertex v) const { return succ_[check(v) - 1]; }
    Vertex step(Vertex v, long long t) const;
    int loewy(Vertex v) const { return loewy_[check(v) - 1]; }
    const std::vector<int>& loewy_vector() const { return loewy_; }
    const std::vector<Vertex>& successor_vector() const { return succ_; }
    long long total_loewy() const;

    bool cyclic_presentation() const { return cyclic_; }
    const std::vector<Vertex>& delta() const;
    bool in_delta(Vertex v) const;

    /// Vertices j with sigma(j) = i and an actual arrow out of j.
    const std::vector<Vertex>& predecessors(Vertex i) const { return preds_[check(i) - 1]; }

    /// Whether the indecomposable projective at i is also injective.
    bool projective_injective(Vertex i) const { return inj_[check(i) - 1]; }
    bool self_injective() const;

    /// True when the quiver has at most one arrow into each vertex; then the
    /// algebra is serial on both sides and every indecomposable module is
    /// uniserial. Cyclic presentations always qualify.
    bool nakayama() const;

    /// Partition of the vertex set into connected components of the quiver.
    std::vector<std::vector<Vertex>> components() const;

    friend bool operator==(const SerialAlgebra& a, const SerialAlgebra& b) {
        return a.succ_ == b.succ_ && a.loewy_ == b.loewy_;
    }

private:
    SerialAlgebra() = default;
    void finalize();
    Vertex check(Vertex v) const;

    int n_ = 0;
    std::vector<Vertex> succ_;
    std::vector<int> loewy_;
    bool cyclic_ = false;
    std::vector<Vertex> delta_;
    std::vector<std::vector<Vertex>> preds_;
    std::vector<bool> inj_;
};

/// Indecomposable module with top at a vertex and the given Loewy length,
/// valid when 1 <= len <= loewy(top).
struct Uniserial {
    Vertex top = 0;
    int len = 0;
    friend auto operator<=>(const Uniserial&, const Uniserial&) = default;
};

std::string to_string(const Uniserial& m);

/// Finite multiset of uniserials; the empty multiset is the zero module.
struct ModuleSum {
    std::vector<Uniserial> summands;  // kept sorted

    ModuleSum() = default;
    explicit ModuleSum(std::vector<Uniserial> s);
    ModuleSum(std::initializer_list<Uniserial> s);

    bool zero() const { return summands.empty(); }
    int total_dim() const;
    friend bool operator==(const ModuleSum&, const ModuleSum&) = default;
};

std::string to_string(const ModuleSum& m);

/// Path of the quiver identified by its start vertex and length; the unique
/// such path is nonzero in the algebra exactly when length < loewy(source).
struct Path {
    Vertex source = 0;
    int length = 0;
};

bool path_nonzero(const SerialAlgebra& a, const Path& p);
Vertex path_target(const SerialAlgebra& a, const Path& p);

void validate(const SerialAlgebra& a, const Uniserial& m);
void validate(const SerialAlgebra& a, const ModuleSum& m);

int module_dim(const SerialAlgebra& a, const Uniserial& m);
std::vector<int> dimension_vector(const SerialAlgebra& a, const Uniserial& m);

/// Kernel of the projective cover; empty for projectives.
std::optional<Uniserial> syzygy(const SerialAlgebra& a, const Uniserial& m);
ModuleSum syzygy(const SerialAlgebra& a, const ModuleSum& m);

/// Syzygy sequence of a uniserial until it terminates or repeats.
/// When the sequence reaches zero: period is empty, preperiod equals the
/// projective dimension and modules lists the nonzero syzygies 0..pd.
/// Otherwise preperiod/period are the minimal mu, rho with
/// Omega^{mu+rho} = Omega^{mu} and modules lists syzygies 0..mu+rho-1.
struct SyzygyOrbit {
    std::vector<Uniserial> modules;
    int preperiod = 0;
    std::optional<int> period;

    bool finite() const { return !period.has_value(); }
    /// Omega^t folded into the stored window; empty when it is zero.
    std::optional<Uniserial> term(long long t) const;
};

SyzygyOrbit syzygy_orbit(const SerialAlgebra& a, const Uniserial& m);

ExtNat proj_dimension(const SerialAlgebra& a, const Uniserial& m);
ExtNat proj_dimension(const SerialAlgebra& a, const ModuleSum& m);

/// The simple socle of a nonzero uniserial.
Uniserial socle(const SerialAlgebra& a, const Uniserial& m);

/// Whether u is (isomorphic to) a submodule of v. Submodules of a uniserial
/// are its radical powers, so this is a vertex/length comparison.
bool embeds_into(const SerialAlgebra& a, const Uniserial& u, const Uniserial& v);

bool is_injective_projective(const SerialAlgebra& a, Vertex i);

/// All indecomposables L(i,k), ordered by (i, k).
std::vector<Uniserial> all_indecomposables(const SerialAlgebra& a);

}  // namespace serialhom
