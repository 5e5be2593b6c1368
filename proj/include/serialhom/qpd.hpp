#pragma once

#include <map>
#include <memory>
#include <optional>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <variant>
#include <vector>

#include "serialhom/algebra.hpp"
#include "serialhom/complex.hpp"
#include "serialhom/extnat.hpp"
#include "serialhom/hom_ext.hpp"

namespace serialhom {

// Certificate payloads. Complex-bearing variants carry checker-validated
// complexes together with the claimed score.
struct FinitePdCert {
    long long pd = 0;
    std::optional<ProjComplex> resolution;  // present in full-certificate mode
};
struct PeriodicTruncationCert {
    int period = 0;
    std::optional<ProjComplex> complex;
};
struct PiCoverConeCert {
    Vertex cover = 0;
    Uniserial kernel;
    std::optional<ProjComplex> complex;
    long long score = 0;
};
struct LadderConeCert {
    int m = 0, n = 0;
    std::optional<ProjComplex> complex;
};
struct SocleEmbeddingCert {
    ExtNat bound;
    std::vector<std::pair<Uniserial, long long>> witnesses;  // finite-pd overmodules and their pd
};
struct ExtVanishingCert {
    int from = 0, through = 0;  // checked window of vanishing self-extensions
};
struct CaseAnalysisCert {
    std::string case_id;
    int bound = 0;
};

using Certificate = std::variant<FinitePdCert, PeriodicTruncationCert, PiCoverConeCert, LadderConeCert,
                                 SocleEmbeddingCert, ExtVanishingCert, CaseAnalysisCert>;

std::string certificate_tag(const Certificate& c);
const std::optional<ProjComplex>* certificate_complex(const Certificate& c);
long long certificate_score(const Certificate& c);

struct QpdResult {
    ExtNat lower, upper;
    std::vector<std::string> rules;
    std::vector<Certificate> certificates;

    bool exact() const { return lower == upper; }
};

/// Upper bound from the cyclic case split on the length and the membership
/// of top and socle-successor in delta; exact when the length reaches the
/// vertex count or the module is periodic.
struct CaseBound {
    int upper = 0;
    std::string case_id;
    bool exact = false;
};
CaseBound cyclic_case_upper_bound(const SerialAlgebra& a, const Uniserial& m);

struct DimInterval {
    ExtNat lower, upper;
    bool exact() const { return lower == upper; }
    std::string method;
};

DimInterval product_quasi_global_dimension(const std::vector<DimInterval>& parts);

/// Per-algebra quasi-projective-dimension engine. Computes a fixpoint of the
/// bound rules over all indecomposables:
///   finite_pd          qpd = pd when pd is finite
///   periodic           periodic modules have qpd 0
///   sum                qpd of a direct sum is at most the max of the parts
///   syzygy             qpd of the syzygy never exceeds qpd of the module
///   pi_cover           qpd(M) <= qpd(syzygy) + 1 over an injective cover
///   pi_cover_reverse   the contrapositive, pushing lower bounds down
///   ladder             chain-map ladder of shift n gives qpd <= m
///   socle_embedding    finite qpd forces an embedding into finite pd
///   ext_vanishing      pd infinite + vanishing self-extensions: qpd infinite
///   frobenius          over self-injective algebras qpd is 0 or infinite
class QpdEngine {
public:
    struct Options {
        bool build_certificates = true;  // construct and validate certificate complexes
        bool parallel = false;           // fan the per-module stage out across threads
        unsigned sweep_seed = 0;         // nonzero: shuffle the fixpoint sweep order
    };

    explicit QpdEngine(SerialAlgebra a);
    QpdEngine(SerialAlgebra a, Options opt);

    const SerialAlgebra& algebra() const { return algebra_; }
    const std::vector<Uniserial>& indecomposables() const { return indecs_; }

    ExtNat pd(const Uniserial& m) const;
    const SyzygyOrbit& orbit(const Uniserial& m) const;
    QpdResult bounds(const Uniserial& m) const;
    QpdResult bounds(const ModuleSum& m) const;

    ExtNat socle_lower_bound(const Uniserial& m) const;
    std::vector<std::pair<Uniserial, long long>> socle_witnesses(const Uniserial& m) const;

    DimInterval quasi_global_dimension() const;
    /// (findim, gldim) over the indecomposables.
    std::pair<ExtNat, ExtNat> finitistic_global_dimension() const;

    /// Shared resolution cache: concurrent readers, single writer,
    /// idempotent fill.
    const MinimalResolution& resolution(const Uniserial& m) const;

private:
    struct State {
        Uniserial mod;
        SyzygyOrbit orbit;
        ExtNat pd;
        ExtNat lower, upper;
        ExtNat lower_embedding;  // lower bound justified by embedding or infinitude only
        std::vector<std::string> rules;
        std::vector<Certificate> certs;
    };

    int index(const Uniserial& m) const;
    void add_rule(State& s, const std::string& r);
    const ProjComplex* best_complex_cert(const State& s, long long max_score) const;
    void analyze();

    SerialAlgebra algebra_;
    Options opt_;
    std::vector<Uniserial> indecs_;
    std::map<Uniserial, int> index_;
    std::vector<State> states_;
    bool self_injective_ = false;

    mutable std::shared_mutex cache_mutex_;
    mutable std::map<Uniserial, std::shared_ptr<MinimalResolution>> resolution_cache_;
};

}  // namespace serialhom
