#include "serialhom/algebra.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace serialhom {

Vertex SerialAlgebra::check(Vertex v) const {
    if (v < 1 || v > n_) throw std::invalid_argument("vertex out of range: " + std::to_string(v));
    return v;
}

Vertex SerialAlgebra::step(Vertex v, long long t) const {
    check(v);
    if (t < 0) throw std::invalid_argument("step: negative exponent");
    if (cyclic_) return static_cast<Vertex>((v - 1 + t) % n_ + 1);
    for (long long i = 0; i < t; ++i) v = succ_[v - 1];
    return v;
}

long long SerialAlgebra::total_loewy() const {
    return std::accumulate(loewy_.begin(), loewy_.end(), 0LL);
}

const std::vector<Vertex>& SerialAlgebra::delta() const {
    if (!cyclic_) throw std::logic_error("delta(): not a cyclic presentation");
    return delta_;
}

bool SerialAlgebra::in_delta(Vertex v) const {
    check(v);
    if (!cyclic_) throw std::logic_error("in_delta(): not a cyclic presentation");
    return std::binary_search(delta_.begin(), delta_.end(), v);
}

bool SerialAlgebra::self_injective() const {
    for (Vertex i = 1; i <= n_; ++i)
        if (!inj_[i - 1]) return false;
    return true;
}

bool SerialAlgebra::nakayama() const {
    for (const auto& preds : preds_)
        if (preds.size() > 1) return false;
    return true;
}

std::vector<std::vector<Vertex>> SerialAlgebra::components() const {
    std::vector<int> parent(n_);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (Vertex i = 1; i <= n_; ++i) {
        if (loewy_[i - 1] >= 2) parent[find(i - 1)] = find(succ_[i - 1] - 1);
    }
    std::map<int, std::vector<Vertex>> groups;
    for (Vertex i = 1; i <= n_; ++i) groups[find(i - 1)].push_back(i);
    std::vector<std::vector<Vertex>> out;
    for (auto& [root, verts] : groups) out.push_back(std::move(verts));
    return out;
}

void SerialAlgebra::finalize() {
    preds_.assign(n_, {});
    for (Vertex j = 1; j <= n_; ++j) {
        if (loewy_[j - 1] >= 2) preds_[succ_[j - 1] - 1].push_back(j);
    }
    // P_i is injective exactly when it fills the injective envelope of its
    // socle, so its dimension must equal the number of composition-factor
    // slots at the socle vertex across all projectives.
    inj_.assign(n_, false);
    for (Vertex i = 1; i <= n_; ++i) {
        Vertex soc = step(i, loewy_[i - 1] - 1);
        long long slots = 0;
        for (Vertex j = 1; j <= n_; ++j) {
            Vertex w = j;
            for (int t = 0; t < loewy_[j - 1]; ++t) {
                if (w == soc) ++slots;
                w = succ_[w - 1];
            }
        }
        inj_[i - 1] = (slots == loewy_[i - 1]);
    }
}

SerialAlgebra SerialAlgebra::cyclic(int n, std::vector<Vertex> delta) {
    if (n < 2) throw std::invalid_argument("cyclic: need at least 2 vertices");
    if (delta.empty()) throw std::invalid_argument("cyclic: delta must be nonempty");
    std::sort(delta.begin(), delta.end());
    delta.erase(std::unique(delta.begin(), delta.end()), delta.end());
    for (Vertex v : delta) {
        if (v < 1 || v > n)
            throw std::invalid_argument("cyclic: delta entry out of range: " + std::to_string(v));
    }
    SerialAlgebra a;
    a.n_ = n;
    a.cyclic_ = true;
    a.delta_ = delta;
    a.succ_.resize(n);
    for (Vertex i = 1; i <= n; ++i) a.succ_[i - 1] = (i < n) ? i + 1 : 1;
    a.loewy_.resize(n);
    for (Vertex i = 1; i <= n; ++i) {
        int r = 0;
        Vertex w = i;
        while (!std::binary_search(delta.begin(), delta.end(), w)) {
            w = a.succ_[w - 1];
            ++r;
        }
        a.loewy_[i - 1] = n + r;
        if (!(n <= a.loewy_[i - 1] && a.loewy_[i - 1] < 2 * n))
            throw std::logic_error("cyclic: Loewy length out of range");
    }
    a.finalize();
    return a;
}

SerialAlgebra SerialAlgebra::kupisch(std::vector<Vertex> successor, std::vector<int> loewy) {
    const int n = static_cast<int>(successor.size());
    if (n < 1) throw std::invalid_argument("kupisch: need at least one vertex");
    if (static_cast<int>(loewy.size()) != n)
        throw std::invalid_argument("kupisch: successor and loewy sizes differ");
    for (Vertex v : successor) {
        if (v < 1 || v > n)
            throw std::invalid_argument("kupisch: successor entry out of range: " + std::to_string(v));
    }
    for (int c : loewy) {
        if (c < 1) throw std::invalid_argument("kupisch: Loewy lengths must be positive");
    }
    for (Vertex i = 1; i <= n; ++i) {
        int c = loewy[i - 1];
        if (c >= 2 && loewy[successor[i - 1] - 1] < c - 1)
            throw std::invalid_argument("kupisch: condition fails at vertex " + std::to_string(i));
    }
    SerialAlgebra a;
    a.n_ = n;
    a.succ_ = std::move(successor);
    a.loewy_ = std::move(loewy);

    // Recognize the cyclic family: successor is the standard n-cycle and the
    // Loewy lengths are the ones generated by delta = {i : c_i = n}.
    if (n >= 2) {
        bool cycle_shape = true;
        for (Vertex i = 1; i <= n; ++i)
            if (a.succ_[i - 1] != ((i < n) ? i + 1 : 1)) cycle_shape = false;
        if (cycle_shape) {
            std::vector<Vertex> delta;
            for (Vertex i = 1; i <= n; ++i)
                if (a.loewy_[i - 1] == n) delta.push_back(i);
            if (!delta.empty()) {
                bool match = true;
                for (Vertex i = 1; i <= n && match; ++i) {
                    int r = 0;
                    Vertex w = i;
                    while (a.loewy_[w - 1] != n) {
                        w = a.succ_[w - 1];
                        ++r;
                        if (r > n) break;
                    }
                    if (a.loewy_[i - 1] != n + r) match = false;
                }
                if (match) {
                    a.cyclic_ = true;
                    a.delta_ = std::move(delta);
                }
            }
        }
    }
    a.finalize();
    return a;
}

std::string to_string(const Uniserial& m) {
    return "L(" + std::to_string(m.top) + "," + std::to_string(m.len) + ")";
}

ModuleSum::ModuleSum(std::vector<Uniserial> s) : summands(std::move(s)) {
    std::sort(summands.begin(), summands.end());
}

ModuleSum::ModuleSum(std::initializer_list<Uniserial> s) : summands(s) {
    std::sort(summands.begin(), summands.end());
}

int ModuleSum::total_dim() const {
    int d = 0;
    for (const Uniserial& u : summands) d += u.len;
    return d;
}

std::string to_string(const ModuleSum& m) {
    if (m.zero()) return "0";
    std::string out;
    for (size_t i = 0; i < m.summands.size(); ++i) {
        if (i) out += " + ";
        out += to_string(m.summands[i]);
    }
    return out;
}

bool path_nonzero(const SerialAlgebra& a, const Path& p) {
    if (p.length < 0) return false;
    return p.length <= a.loewy(p.source) - 1;
}

Vertex path_target(const SerialAlgebra& a, const Path& p) { return a.step(p.source, p.length); }

void validate(const SerialAlgebra& a, const Uniserial& m) {
    if (m.len < 1 || m.len > a.loewy(m.top))
        throw std::invalid_argument("invalid uniserial " + to_string(m));
}

void validate(const SerialAlgebra& a, const ModuleSum& m) {
    for (const Uniserial& u : m.summands) validate(a, u);
}

int module_dim(const SerialAlgebra& a, const Uniserial& m) {
    validate(a, m);
    return m.len;
}

std::vector<int> dimension_vector(const SerialAlgebra& a, const Uniserial& m) {
    validate(a, m);
    std::vector<int> dv(a.vertices(), 0);
    Vertex w = m.top;
    for (int t = 0; t < m.len; ++t) {
        ++dv[w - 1];
        if (t + 1 < m.len) w = a.next(w);
    }
    return dv;
}

std::optional<Uniserial> syzygy(const SerialAlgebra& a, const Uniserial& m) {
    validate(a, m);
    const int c = a.loewy(m.top);
    if (m.len == c) return std::nullopt;
    Uniserial s{a.step(m.top, m.len), c - m.len};
    if (s.len > a.loewy(s.top)) throw std::logic_error("syzygy: Kupisch consistency violated");
    return s;
}

ModuleSum syzygy(const SerialAlgebra& a, const ModuleSum& m) {
    std::vector<Uniserial> out;
    for (const Uniserial& u : m.summands) {
        if (auto s = syzygy(a, u)) out.push_back(*s);
    }
    return ModuleSum(std::move(out));
}

SyzygyOrbit syzygy_orbit(const SerialAlgebra& a, const Uniserial& m) {
    validate(a, m);
    SyzygyOrbit orbit;
    std::map<Uniserial, int> seen;
    std::optional<Uniserial> cur = m;
    const long long bound = a.total_loewy() + 1;
    long long steps = 0;
    while (cur) {
        auto [it, fresh] = seen.emplace(*cur, static_cast<int>(orbit.modules.size()));
        if (!fresh) {
            orbit.preperiod = it->second;
            orbit.period = static_cast<int>(orbit.modules.size()) - it->second;
            return orbit;
        }
        orbit.modules.push_back(*cur);
        cur = syzygy(a, *cur);
        if (++steps > bound) throw std::logic_error("syzygy_orbit: termination bound exceeded");
    }
    orbit.preperiod = static_cast<int>(orbit.modules.size()) - 1;  // = pd
    orbit.period = std::nullopt;
    return orbit;
}

std::optional<Uniserial> SyzygyOrbit::term(long long t) const {
    if (t < 0) throw std::invalid_argument("SyzygyOrbit::term: negative index");
    if (t < static_cast<long long>(modules.size())) return modules[static_cast<size_t>(t)];
    if (!period) return std::nullopt;
    long long folded = preperiod + (t - preperiod) % *period;
    return modules[static_cast<size_t>(folded)];
}

ExtNat proj_dimension(const SerialAlgebra& a, const Uniserial& m) {
    SyzygyOrbit orbit = syzygy_orbit(a, m);
    if (orbit.finite()) return ExtNat(orbit.preperiod);
    return ExtNat::infinity();
}

ExtNat proj_dimension(const SerialAlgebra& a, const ModuleSum& m) {
    ExtNat pd(0);
    for (const Uniserial& u : m.summands) pd = max(pd, proj_dimension(a, u));
    return pd;
}

Uniserial socle(const SerialAlgebra& a, const Uniserial& m) {
    validate(a, m);
    return Uniserial{a.step(m.top, m.len - 1), 1};
}

bool embeds_into(const SerialAlgebra& a, const Uniserial& u, const Uniserial& v) {
    validate(a, u);
    validate(a, v);
    if (u.len > v.len) return false;
    return a.step(v.top, v.len - u.len) == u.top;
}

bool is_injective_projective(const SerialAlgebra& a, Vertex i) { return a.projective_injective(i); }

std::vector<Uniserial> all_indecomposables(const SerialAlgebra& a) {
    std::vector<Uniserial> out;
    for (Vertex i = 1; i <= a.vertices(); ++i)
        for (int k = 1; k <= a.loewy(i); ++k) out.push_back(Uniserial{i, k});
    return out;
}

}  // namespace serialhom
