#include "serialhom/hom_ext.hpp"

#include <algorithm>
#include <stdexcept>

#include "serialhom/linalg.hpp"

namespace serialhom {

int hom_dim(const SerialAlgebra& a, const Uniserial& u, const Uniserial& v) {
    validate(a, u);
    validate(a, v);
    int count = 0;
    for (int t = std::max(0, v.len - u.len); t <= v.len - 1; ++t) {
        if (a.step(v.top, t) == u.top) ++count;
    }
    return count;
}

std::optional<Vertex> MinimalResolution::term(long long t) const {
    if (t < 0) throw std::invalid_argument("MinimalResolution::term: negative degree");
    if (t < static_cast<long long>(terms.size())) return terms[static_cast<size_t>(t)];
    if (!period) return std::nullopt;
    long long folded = preperiod + (t - preperiod) % *period;
    return terms[static_cast<size_t>(folded)];
}

std::optional<int> MinimalResolution::diff_length(long long t) const {
    if (t < 1) throw std::invalid_argument("MinimalResolution::diff_length: degree must be >= 1");
    if (t <= static_cast<long long>(diff_lengths.size()))
        return diff_lengths[static_cast<size_t>(t - 1)];
    if (!period) return std::nullopt;
    // diff_length(t) is the length of the (t-1)-st syzygy, which repeats
    // with the period from the preperiod on.
    long long s = t - 1;
    long long folded = preperiod + (s - preperiod) % *period;
    return diff_lengths[static_cast<size_t>(folded)];
}

MinimalResolution minimal_resolution(const SerialAlgebra& a, const Uniserial& m) {
    validate(a, m);
    SyzygyOrbit orbit = syzygy_orbit(a, m);
    MinimalResolution res;
    res.module = m;
    res.preperiod = orbit.preperiod;
    res.period = orbit.period;
    for (const Uniserial& u : orbit.modules) res.terms.push_back(u.top);
    for (size_t t = 1; t < orbit.modules.size(); ++t)
        res.diff_lengths.push_back(orbit.modules[t - 1].len);
    if (orbit.period) {
        // One more stored differential so that diff_length(t) for t inside
        // the cycle can fold cleanly: d_{mu+rho} has the length of the last
        // stored module.
        res.diff_lengths.push_back(orbit.modules.back().len);
    }
    return res;
}

namespace {

// Positions of the composition factors of N at a given vertex; these index
// the path basis of Hom(P_vertex, N).
std::vector<int> hom_positions(const SerialAlgebra& a, const Uniserial& n, Vertex vertex) {
    std::vector<int> out;
    Vertex w = n.top;
    for (int p = 0; p < n.len; ++p) {
        if (w == vertex) out.push_back(p);
        if (p + 1 < n.len) w = a.next(w);
    }
    return out;
}

// Matrix of the Hom-complex differential C^t -> C^{t+1}: precomposition with
// d_{t+1} acts on e_v N by the path of length diff_length(t+1).
QMatrix hom_differential(const std::vector<int>& dom, const std::vector<int>& cod, int shift, int nlen) {
    QMatrix mat(static_cast<int>(cod.size()), static_cast<int>(dom.size()));
    for (size_t c = 0; c < dom.size(); ++c) {
        int target = dom[c] + shift;
        if (target >= nlen) continue;
        for (size_t r = 0; r < cod.size(); ++r) {
            if (cod[r] == target) mat.at(static_cast<int>(r), static_cast<int>(c)) = 1;
        }
    }
    return mat;
}

}  // namespace

int ext_dim(const SerialAlgebra& a, const Uniserial& m, const Uniserial& n, int s) {
    if (s < 0) throw std::invalid_argument("ext_dim: negative degree");
    validate(a, m);
    validate(a, n);
    MinimalResolution res = minimal_resolution(a, m);

    auto positions = [&](long long t) -> std::vector<int> {
        auto v = res.term(t);
        if (!v) return {};
        return hom_positions(a, n, *v);
    };

    std::vector<int> cur = positions(s);
    if (cur.empty()) return 0;

    int rank_out = 0;
    if (auto len = res.diff_length(s + 1)) {
        std::vector<int> nxt = positions(s + 1);
        if (!nxt.empty()) rank_out = rank(hom_differential(cur, nxt, *len, n.len));
    }
    int rank_in = 0;
    if (s >= 1) {
        if (auto len = res.diff_length(s)) {
            std::vector<int> prv = positions(s - 1);
            if (!prv.empty()) rank_in = rank(hom_differential(prv, cur, *len, n.len));
        }
    }
    return static_cast<int>(cur.size()) - rank_out - rank_in;
}

bool ext_eventually_vanishes(const SerialAlgebra& a, const Uniserial& m, const Uniserial& n, int from) {
    if (from < 1) throw std::invalid_argument("ext_eventually_vanishes: from must be >= 1");
    MinimalResolution res = minimal_resolution(a, m);
    long long through;
    if (res.finite()) {
        through = res.preperiod;  // Ext vanishes beyond the projective dimension
        if (from > through) return true;
    } else {
        through = std::max<long long>(from, res.preperiod + 2 + *res.period);
    }
    for (long long s = from; s <= through; ++s) {
        if (ext_dim(a, m, n, static_cast<int>(s)) != 0) return false;
    }
    return true;
}

bool infinite_qpd_witness(const SerialAlgebra& a, const Uniserial& m) {
    if (!proj_dimension(a, m).is_infinite()) return false;
    return ext_eventually_vanishes(a, m, m, 2);
}

ExtTable ext_table(const SerialAlgebra& a, const std::vector<std::pair<Uniserial, Uniserial>>& pairs,
                   int through) {
    ExtTable table;
    for (const auto& [m, n] : pairs) {
        ExtTableEntry e;
        e.m = m;
        e.n = n;
        for (int s = 0; s <= through; ++s) e.ext.push_back(ext_dim(a, m, n, s));
        MinimalResolution res = minimal_resolution(a, m);
        if (res.finite()) {
            e.tail = "zero@" + std::to_string(res.preperiod + 1);
        } else {
            e.tail = "periodic(" + std::to_string(*res.period) + ")@" +
                     std::to_string(res.preperiod + 2);
        }
        table.pairs.push_back(std::move(e));
    }
    return table;
}

}  // namespace serialhom
