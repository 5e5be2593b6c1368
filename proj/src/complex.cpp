#include "serialhom/complex.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "serialhom/hom_ext.hpp"

namespace serialhom {

namespace {

const std::vector<Vertex> kEmptyTerm;
const std::vector<DiffEntry> kEmptyEntries;

}  // namespace

ProjComplex::ProjComplex(SerialAlgebra algebra, int lo, std::vector<std::vector<Vertex>> terms,
                         std::vector<std::vector<DiffEntry>> diffs)
    : algebra_(std::move(algebra)), lo_(lo), terms_(std::move(terms)), diffs_(std::move(diffs)) {
    if (terms_.empty()) throw std::invalid_argument("ProjComplex: need at least one degree");
    if (diffs_.size() + 1 != terms_.size())
        throw std::invalid_argument("ProjComplex: differential count must be degree count - 1");
    for (const auto& term : terms_)
        for (Vertex v : term)
            if (v < 1 || v > algebra_.vertices())
                throw std::invalid_argument("ProjComplex: vertex out of range");
    for (size_t k = 0; k < diffs_.size(); ++k) {
        const auto& lower = terms_[k];
        const auto& upper = terms_[k + 1];
        for (const DiffEntry& e : diffs_[k]) {
            if (e.row < 0 || e.row >= static_cast<int>(lower.size()) || e.col < 0 ||
                e.col >= static_cast<int>(upper.size()))
                throw std::invalid_argument("ProjComplex: entry indices out of range at degree " +
                                            std::to_string(lo_ + static_cast<int>(k) + 1));
            if (e.coeff == 0)
                throw std::invalid_argument("ProjComplex: zero coefficient entry at degree " +
                                            std::to_string(lo_ + static_cast<int>(k) + 1));
            Path p{lower[e.row], e.len};
            if (!path_nonzero(algebra_, p))
                throw std::invalid_argument("ProjComplex: entry is a zero path at degree " +
                                            std::to_string(lo_ + static_cast<int>(k) + 1));
            if (path_target(algebra_, p) != upper[e.col])
                throw std::invalid_argument("ProjComplex: path endpoints mismatch at degree " +
                                            std::to_string(lo_ + static_cast<int>(k) + 1));
        }
    }
}

const std::vector<Vertex>& ProjComplex::term(int d) const {
    if (d < lo_ || d > hi()) return kEmptyTerm;
    return terms_[static_cast<size_t>(d - lo_)];
}

const std::vector<Vertex>& ProjComplex::empty_term() { return kEmptyTerm; }

const std::vector<DiffEntry>& ProjComplex::diff(int d) const {
    if (d <= lo_ || d > hi()) return kEmptyEntries;
    return diffs_[static_cast<size_t>(d - lo_ - 1)];
}

std::optional<int> ProjComplex::sup() const {
    for (int d = hi(); d >= lo_; --d)
        if (!term(d).empty()) return d;
    return std::nullopt;
}

std::optional<int> ProjComplex::inf() const {
    for (int d = lo_; d <= hi(); ++d)
        if (!term(d).empty()) return d;
    return std::nullopt;
}

long long ProjComplex::total_dim() const {
    long long total = 0;
    for (const auto& term : terms_)
        for (Vertex v : term) total += algebra_.loewy(v);
    return total;
}

bool ProjComplex::d_squared_zero() const {
    for (int d = lo_ + 2; d <= hi(); ++d) {
        // Composite entries are formal sums of paths; equal-length paths from
        // the same source coincide, so coefficients accumulate per (row, col,
        // length) and must all cancel.
        std::map<std::tuple<int, int, int>, Rational> acc;
        for (const DiffEntry& e2 : diff(d)) {
            for (const DiffEntry& e1 : diff(d - 1)) {
                if (e1.col != e2.row) continue;
                Path p{term(d - 2)[e1.row], e1.len + e2.len};
                if (!path_nonzero(algebra_, p)) continue;
                acc[{e1.row, e2.col, p.length}] += e1.coeff * e2.coeff;
            }
        }
        for (const auto& [key, coeff] : acc)
            if (coeff != 0) return false;
    }
    return true;
}

ProjComplex ProjComplex::shifted(int s) const { return ProjComplex(algebra_, lo_ + s, terms_, diffs_); }

std::string ProjComplex::brief() const {
    std::ostringstream os;
    for (int d = hi(); d >= lo_; --d) {
        os << "[" << d << ":";
        const auto& t = term(d);
        for (size_t i = 0; i < t.size(); ++i) os << (i ? "+" : " ") << "P" << t[i];
        if (t.empty()) os << " 0";
        os << "]";
        if (d > lo_) os << " -> ";
    }
    return os.str();
}

const std::vector<DiffEntry>& ChainMapComponents::at(int d) const {
    int idx = d - lo;
    if (idx < 0 || idx >= static_cast<int>(components.size())) return kEmptyEntries;
    return components[static_cast<size_t>(idx)];
}

const std::vector<DiffEntry>& ChainMapComponents::empty() { return kEmptyEntries; }

ProjComplex mapping_cone(const ProjComplex& x, const ProjComplex& y, const ChainMapComponents& g) {
    if (!(x.algebra() == y.algebra())) throw std::invalid_argument("mapping_cone: algebra mismatch");
    const int lo = std::min(x.lo() + 1, y.lo());
    const int hi = std::max(x.hi() + 1, y.hi());
    std::vector<std::vector<Vertex>> terms;
    std::vector<std::vector<DiffEntry>> diffs;
    for (int d = lo; d <= hi; ++d) {
        std::vector<Vertex> t = x.term(d - 1);
        const auto& yt = y.term(d);
        t.insert(t.end(), yt.begin(), yt.end());
        terms.push_back(std::move(t));
    }
    for (int d = lo + 1; d <= hi; ++d) {
        std::vector<DiffEntry> entries;
        const int xprev = static_cast<int>(x.term(d - 2).size());
        const int xcur = static_cast<int>(x.term(d - 1).size());
        for (const DiffEntry& e : x.diff(d - 1))
            entries.push_back({e.row, e.col, e.len, -e.coeff});
        for (const DiffEntry& e : g.at(d - 1))
            entries.push_back({xprev + e.row, e.col, e.len, e.coeff});
        for (const DiffEntry& e : y.diff(d))
            entries.push_back({xprev + e.row, xcur + e.col, e.len, e.coeff});
        diffs.push_back(std::move(entries));
    }
    return ProjComplex(x.algebra(), lo, std::move(terms), std::move(diffs));
}

namespace {

// Vector-space realization of one degree: the path basis of each projective
// summand, with vertex labels and the arrow shift map.
struct DegreeBasis {
    std::vector<int> offset;       // per summand
    int dim = 0;
    std::vector<Vertex> vertex;    // per basis index
    std::vector<int> arrow;        // basis index after one arrow, or -1
};

DegreeBasis realize_degree(const SerialAlgebra& a, const std::vector<Vertex>& term) {
    DegreeBasis b;
    for (Vertex u : term) {
        b.offset.push_back(b.dim);
        const int c = a.loewy(u);
        Vertex w = u;
        for (int t = 0; t < c; ++t) {
            b.vertex.push_back(w);
            b.arrow.push_back(t + 1 < c ? b.dim + t + 1 : -1);
            if (t + 1 < c) w = a.next(w);
        }
        b.dim += c;
    }
    return b;
}

QMatrix boundary_matrix(const SerialAlgebra& a, const std::vector<DiffEntry>& entries,
                        const DegreeBasis& target, const DegreeBasis& source,
                        const std::vector<Vertex>& target_term) {
    QMatrix mat(target.dim, source.dim);
    for (const DiffEntry& e : entries) {
        const int c_target = a.loewy(target_term[e.row]);
        const int src_off = source.offset[e.col];
        const int src_len = (e.col + 1 < static_cast<int>(source.offset.size())
                                 ? source.offset[e.col + 1]
                                 : source.dim) -
                            src_off;
        for (int t = 0; t < src_len; ++t) {
            if (t + e.len < c_target)
                mat.at(target.offset[e.row] + t + e.len, src_off + t) += e.coeff;
        }
    }
    return mat;
}

QVec arrow_apply(const DegreeBasis& b, const QVec& v) {
    QVec out(b.dim);
    for (int i = 0; i < b.dim; ++i) {
        if (v[i] != 0 && b.arrow[i] >= 0) out[b.arrow[i]] += v[i];
    }
    return out;
}

// Graded quotient module Q = cycles/boundaries in small coordinates: chosen
// cycle representatives per vertex plus induced arrow matrices.
struct QuotientModule {
    std::vector<std::vector<QVec>> reps;  // per vertex (0-based): ambient representatives
    std::vector<QMatrix> arrow;           // per vertex v: Q_v -> Q_{next(v)}
    int total_dim = 0;
};

// Coordinates of w inside span(I-rows | reps at vertex v); returns only the
// reps part. The combined family is linearly independent by construction.
QVec quotient_coords(const Subspace& image, const std::vector<QVec>& reps, const QVec& w, int ambient) {
    QVec red = image.reduce(w);
    if (reps.empty()) {
        if (!is_zero(red)) throw std::logic_error("quotient_coords: vector outside span");
        return {};
    }
    QMatrix mat(ambient, static_cast<int>(reps.size()));
    for (size_t j = 0; j < reps.size(); ++j) {
        QVec rr = image.reduce(reps[j]);
        for (int i = 0; i < ambient; ++i) mat.at(i, static_cast<int>(j)) = rr[i];
    }
    auto sol = solve(mat, red);
    if (!sol) throw std::logic_error("quotient_coords: vector outside span");
    return *sol;
}

// Builds the quotient module from graded cycle bases and the boundary span.
QuotientModule build_quotient(const SerialAlgebra& a, const DegreeBasis& basis,
                              const std::vector<std::vector<QVec>>& graded_cycles,
                              const Subspace& image_only) {
    const int nverts = a.vertices();
    QuotientModule q;
    q.reps.assign(nverts, {});
    Subspace accum = image_only;
    for (int v = 1; v <= nverts; ++v) {
        for (const QVec& b : graded_cycles[v - 1]) {
            QVec copy = b;
            if (accum.add(std::move(copy))) q.reps[v - 1].push_back(b);
        }
        q.total_dim += static_cast<int>(q.reps[v - 1].size());
    }
    q.arrow.assign(nverts, QMatrix());
    for (int v = 1; v <= nverts; ++v) {
        const Vertex w = a.loewy(v) >= 2 ? a.next(v) : v;
        const auto& dom = q.reps[v - 1];
        const auto& cod = q.reps[w - 1];
        QMatrix m(static_cast<int>(cod.size()), static_cast<int>(dom.size()));
        for (size_t j = 0; j < dom.size(); ++j) {
            QVec img = arrow_apply(basis, dom[j]);
            if (is_zero(img)) continue;
            QVec coords = quotient_coords(image_only, cod, img, basis.dim);
            for (size_t i = 0; i < cod.size(); ++i) m.at(static_cast<int>(i), static_cast<int>(j)) = coords[i];
        }
        q.arrow[v - 1] = std::move(m);
    }
    return q;
}

}  // namespace

HomologyReport homology_decompose(const ProjComplex& c) {
    if (!c.d_squared_zero())
        throw std::invalid_argument("homology_decompose: differentials do not compose to zero");
    const SerialAlgebra& a = c.algebra();
    const int lo = c.lo(), hi = c.hi();
    const int nverts = a.vertices();

    std::vector<DegreeBasis> bases;
    for (int d = lo; d <= hi; ++d) bases.push_back(realize_degree(a, c.term(d)));

    HomologyReport report;
    report.lo = lo;
    report.hi = hi;

    long long euler_terms = 0, euler_homology = 0;
    for (int d = lo; d <= hi; ++d) {
        const DegreeBasis& basis = bases[static_cast<size_t>(d - lo)];
        const int sign = ((d % 2) + 2) % 2 == 0 ? 1 : -1;
        euler_terms += sign * basis.dim;

        // Graded cycle bases per vertex.
        std::vector<std::vector<int>> cols(nverts);
        for (int i = 0; i < basis.dim; ++i) cols[basis.vertex[i] - 1].push_back(i);

        std::vector<std::vector<QVec>> graded(nverts);
        if (d == lo) {
            for (int v = 0; v < nverts; ++v) {
                for (int i : cols[v]) {
                    QVec e(basis.dim);
                    e[i] = 1;
                    graded[v].push_back(std::move(e));
                }
            }
        } else {
            const DegreeBasis& below = bases[static_cast<size_t>(d - lo - 1)];
            QMatrix full = boundary_matrix(a, c.diff(d), below, basis, c.term(d - 1));
            for (int v = 0; v < nverts; ++v) {
                if (cols[v].empty()) continue;
                QMatrix restricted(below.dim, static_cast<int>(cols[v].size()));
                for (size_t j = 0; j < cols[v].size(); ++j)
                    for (int i = 0; i < below.dim; ++i)
                        restricted.at(i, static_cast<int>(j)) = full.at(i, cols[v][j]);
                for (const QVec& k : kernel_basis(restricted)) {
                    QVec e(basis.dim);
                    for (size_t j = 0; j < cols[v].size(); ++j) e[cols[v][j]] = k[j];
                    graded[v].push_back(std::move(e));
                }
            }
        }

        Subspace image(basis.dim);
        if (d < hi) {
            const DegreeBasis& above = bases[static_cast<size_t>(d - lo + 1)];
            QMatrix down = boundary_matrix(a, c.diff(d + 1), basis, above, c.term(d));
            for (int j = 0; j < above.dim; ++j) {
                QVec col(basis.dim);
                for (int i = 0; i < basis.dim; ++i) col[i] = down.at(i, j);
                image.add(std::move(col));
            }
        }

        QuotientModule q = build_quotient(a, basis, graded, image);
        report.dims.push_back(q.total_dim);
        euler_homology += sign * q.total_dim;

        // Greedy split: a maximal-length local submodule of a direct sum of
        // uniserials is always a summand, so repeatedly peel one off.
        std::vector<HomologySummand> summands;
        std::vector<int> qoffset(nverts + 1, 0);
        for (int v = 0; v < nverts; ++v)
            qoffset[v + 1] = qoffset[v] + static_cast<int>(q.reps[v].size());
        const int qdim = q.total_dim;

        auto q_embed = [&](int v, const QVec& local) {
            QVec full(qdim);
            for (size_t i = 0; i < local.size(); ++i) full[qoffset[v] + static_cast<int>(i)] = local[i];
            return full;
        };
        auto q_arrow = [&](int v, QVec local) -> std::pair<int, QVec> {
            const Vertex w = (a.loewy(v + 1) >= 2 ? a.next(v + 1) : v + 1) - 1;
            return {static_cast<int>(w), q.arrow[v].apply(local)};
        };

        Subspace peeled(qdim);
        bool ok = true;
        while (peeled.dim() < qdim) {
            int best_v = -1, best_idx = -1, best_len = 0;
            for (int v = 0; v < nverts; ++v) {
                for (size_t idx = 0; idx < q.reps[v].size(); ++idx) {
                    QVec local(q.reps[v].size());
                    local[idx] = 1;
                    int cur_v = v;
                    QVec cur = local;
                    int len = 0;
                    while (true) {
                        if (peeled.contains(q_embed(cur_v, cur))) break;
                        ++len;
                        if (len > a.loewy(v + 1)) {
                            len = -1;  // orbit longer than any uniserial: not a module of this shape
                            break;
                        }
                        auto [nv, nvec] = q_arrow(cur_v, cur);
                        if (is_zero(nvec)) break;
                        cur_v = nv;
                        cur = std::move(nvec);
                    }
                    if (len > best_len) {
                        best_v = v;
                        best_idx = static_cast<int>(idx);
                        best_len = len;
                    }
                }
            }
            if (best_len <= 0) {
                ok = false;
                break;
            }
            QVec local(q.reps[best_v].size());
            local[best_idx] = 1;
            int cur_v = best_v;
            QVec cur = local;
            QVec ambient_gen = q.reps[best_v][static_cast<size_t>(best_idx)];
            for (int t = 0; t < best_len; ++t) {
                if (!peeled.add(q_embed(cur_v, cur))) {
                    ok = false;  // orbit collapsed early: not a clean direct summand
                    break;
                }
                auto [nv, nvec] = q_arrow(cur_v, cur);
                cur_v = nv;
                cur = std::move(nvec);
            }
            if (!ok) break;
            summands.push_back({Uniserial{best_v + 1, best_len}, std::move(ambient_gen)});
        }

        if (ok) {
            // Cross-check the claimed multiset against the Hom profile of the
            // quotient: dim Hom(L(v,t), Q) is the nullity of the arrow power
            // on Q_v, which the closed form must reproduce.
            for (int v = 1; v <= nverts && ok; ++v) {
                const int dv = static_cast<int>(q.reps[v - 1].size());
                QMatrix power = QMatrix(dv, dv);
                for (int i = 0; i < dv; ++i) power.at(i, i) = 1;
                int cur_v = v;
                for (int t = 1; t <= a.loewy(v) && ok; ++t) {
                    QMatrix step_m = q.arrow[cur_v - 1];
                    QMatrix next(step_m.rows(), power.cols());
                    for (int i = 0; i < next.rows(); ++i)
                        for (int j = 0; j < next.cols(); ++j) {
                            Rational s = 0;
                            for (int k = 0; k < step_m.cols(); ++k)
                                if (step_m.at(i, k) != 0 && power.at(k, j) != 0)
                                    s += step_m.at(i, k) * power.at(k, j);
                            next.at(i, j) = s;
                        }
                    power = std::move(next);
                    cur_v = a.loewy(cur_v) >= 2 ? a.next(cur_v) : cur_v;
                    const int lhs = dv - rank(power);
                    int rhs = 0;
                    for (const auto& s : summands) rhs += hom_dim(a, Uniserial{v, t}, s.shape);
                    if (lhs != rhs) ok = false;
                }
            }
        }

        if (!ok) {
            if (report.decomposed) {
                report.decomposed = false;
                report.failed_degree = d;
            }
            report.homology.emplace_back();
            report.witnesses.emplace_back();
            continue;
        }

        std::vector<Uniserial> shapes;
        for (const auto& s : summands) shapes.push_back(s.shape);
        report.homology.push_back(ModuleSum(std::move(shapes)));
        report.witnesses.push_back(std::move(summands));
    }

    for (int d = lo; d <= hi; ++d) {
        if (report.dims[static_cast<size_t>(d - lo)] > 0) {
            if (!report.hinf) report.hinf = d;
            report.hsup = d;
        }
    }
    if (euler_terms != euler_homology)
        throw std::logic_error("homology_decompose: Euler characteristic mismatch");
    return report;
}

QuasiResolutionCheck check_quasi_resolution(const ProjComplex& c, const ModuleSum& m) {
    if (m.zero()) throw std::invalid_argument("check_quasi_resolution: target module is zero");
    validate(c.algebra(), m);
    QuasiResolutionCheck out;
    HomologyReport h;
    try {
        h = homology_decompose(c);
    } catch (const std::invalid_argument& e) {
        out.ok = false;
        out.failed_degree = c.lo();
        out.reason = e.what();
        return out;
    }
    if (!h.decomposed) {
        out.ok = false;
        out.failed_degree = h.failed_degree;
        out.reason = "homology is not a direct sum of uniserials at degree " +
                     std::to_string(h.failed_degree);
        return out;
    }
    const int mdim = m.total_dim();
    bool any_nonzero = false;
    for (int d = c.lo(); d <= c.hi(); ++d) {
        const ModuleSum& hd = h.homology[static_cast<size_t>(d - c.lo())];
        if (hd.zero()) {
            out.multiplicities.push_back(0);
            continue;
        }
        if (hd.total_dim() % mdim != 0) {
            out.ok = false;
            out.failed_degree = d;
            out.reason = "homology at degree " + std::to_string(d) + " is not a power of the module";
            return out;
        }
        const long long n = hd.total_dim() / mdim;
        std::vector<Uniserial> expect;
        for (long long i = 0; i < n; ++i)
            expect.insert(expect.end(), m.summands.begin(), m.summands.end());
        std::sort(expect.begin(), expect.end());
        if (expect != hd.summands) {
            out.ok = false;
            out.failed_degree = d;
            out.reason = "homology at degree " + std::to_string(d) + " is not a power of the module";
            return out;
        }
        out.multiplicities.push_back(n);
        any_nonzero = true;
    }
    if (!any_nonzero) {
        out.ok = false;
        out.failed_degree = c.lo();
        out.reason = "all homology vanishes; multiplicities must not all be zero";
        return out;
    }
    out.ok = true;
    out.score = static_cast<long long>(*c.sup()) - static_cast<long long>(*h.hsup);
    return out;
}

namespace {

// Truncation [0, s] of a minimal resolution as a complex.
ProjComplex resolution_complex(const SerialAlgebra& a, const MinimalResolution& res, int s) {
    std::vector<std::vector<Vertex>> terms;
    std::vector<std::vector<DiffEntry>> diffs;
    for (int t = 0; t <= s; ++t) {
        auto v = res.term(t);
        if (!v) throw std::logic_error("resolution_complex: truncation exceeds finite resolution");
        terms.push_back({*v});
        if (t >= 1) diffs.push_back({{0, 0, *res.diff_length(t), 1}});
    }
    return ProjComplex(a, 0, std::move(terms), std::move(diffs));
}

}  // namespace

ProjComplex periodic_certificate(const SerialAlgebra& a, const Uniserial& m, int r) {
    if (r < 1) throw std::invalid_argument("periodic_certificate: period must be >= 1");
    SyzygyOrbit orbit = syzygy_orbit(a, m);
    auto back = orbit.term(r);
    if (orbit.finite() || !back || !(*back == m))
        throw std::invalid_argument("periodic_certificate: module is not periodic with period " +
                                    std::to_string(r));
    MinimalResolution res = minimal_resolution(a, m);
    for (int s : {r - 1, 2 * r - 1}) {
        if (s < 0) continue;
        ProjComplex cand = resolution_complex(a, res, s);
        QuasiResolutionCheck chk = check_quasi_resolution(cand, ModuleSum{{m}});
        if (chk.ok && chk.score == 0) return cand;
    }
    throw std::logic_error("periodic_certificate: truncations failed validation");
}

ProjComplex cone_from_pi_cover(const SerialAlgebra& a, const Uniserial& m, const ProjComplex& cert_n) {
    validate(a, m);
    const Vertex cover = m.top;
    if (!a.projective_injective(cover))
        throw std::invalid_argument("cone_from_pi_cover: projective cover at vertex " +
                                    std::to_string(cover) + " is not injective");
    auto n = syzygy(a, m);
    if (!n) throw std::invalid_argument("cone_from_pi_cover: module is projective");
    QuasiResolutionCheck chk = check_quasi_resolution(cert_n, ModuleSum{{*n}});
    if (!chk.ok)
        throw std::invalid_argument("cone_from_pi_cover: kernel certificate fails validation: " +
                                    chk.reason);

    HomologyReport h0 = homology_decompose(cert_n);
    ProjComplex c = cert_n.shifted(-*h0.hsup);
    HomologyReport h = homology_decompose(c);

    const int cj = a.loewy(cover);
    const int embed_pos = cj - n->len;  // generator of the copy of N inside E
    if (a.step(cover, embed_pos) != n->top)
        throw std::logic_error("cone_from_pi_cover: embedding position mismatch");

    // Stalk complex of E copies matching the homology multiplicities.
    const int ylo = *h.hinf;
    std::vector<std::vector<Vertex>> yterms;
    std::vector<std::vector<DiffEntry>> ydiffs;
    std::vector<int> acount;
    for (int d = ylo; d <= 0; ++d) {
        const int dim_h = h.dims[static_cast<size_t>(d - c.lo())];
        const int count = dim_h / n->len;
        acount.push_back(count);
        yterms.push_back(std::vector<Vertex>(static_cast<size_t>(count), cover));
        if (d > ylo) ydiffs.push_back({});
    }
    ProjComplex y(a, ylo, std::move(yterms), std::move(ydiffs));

    // Lift each degree: h_d must kill the boundaries and send the s-th
    // homology generator to the embedded generator of the s-th copy of E.
    ChainMapComponents g;
    g.lo = c.lo();
    for (int d = c.lo(); d <= c.hi(); ++d) {
        const auto& xterm = c.term(d);
        const auto& yterm = y.term(d);
        if (xterm.empty() || yterm.empty()) {
            g.components.push_back({});
            continue;
        }
        DegreeBasis xb = realize_degree(a, xterm);
        DegreeBasis yb = realize_degree(a, yterm);

        // Unknowns: coefficients of the allowed paths per (source summand,
        // target copy).
        struct Unknown {
            int col, row, len;
        };
        std::vector<Unknown> unknowns;
        for (int colv = 0; colv < static_cast<int>(xterm.size()); ++colv) {
            for (int rowv = 0; rowv < static_cast<int>(yterm.size()); ++rowv) {
                for (int len = 0; len < cj; ++len) {
                    if (a.step(cover, len) == xterm[static_cast<size_t>(colv)])
                        unknowns.push_back({colv, rowv, len});
                }
            }
        }

        // Constraint vectors: all boundary images map to zero, homology
        // generators map to the embedded copies.
        std::vector<std::pair<QVec, QVec>> constraints;  // (x-vector, target)
        if (d < c.hi()) {
            DegreeBasis above = realize_degree(a, c.term(d + 1));
            QMatrix down = boundary_matrix(a, c.diff(d + 1), xb, above, c.term(d));
            for (int j = 0; j < above.dim; ++j) {
                QVec col(xb.dim);
                for (int i = 0; i < xb.dim; ++i) col[i] = down.at(i, j);
                if (!is_zero(col)) constraints.push_back({std::move(col), QVec(yb.dim)});
            }
        }
        const auto& wits = h.witnesses[static_cast<size_t>(d - c.lo())];
        for (size_t s = 0; s < wits.size(); ++s) {
            QVec target(yb.dim);
            target[yb.offset[s] + embed_pos] = 1;
            constraints.push_back({wits[s].generator, std::move(target)});
        }

        // Assemble the linear system over the path coefficients.
        const int eqs = static_cast<int>(constraints.size()) * yb.dim;
        QMatrix sys(eqs, static_cast<int>(unknowns.size()));
        QVec rhs(eqs);
        for (size_t ci = 0; ci < constraints.size(); ++ci) {
            const auto& [xv, tv] = constraints[ci];
            for (int yi = 0; yi < yb.dim; ++yi) rhs[static_cast<size_t>(ci) * yb.dim + yi] = tv[yi];
            for (size_t ui = 0; ui < unknowns.size(); ++ui) {
                const Unknown& u = unknowns[ui];
                const int off = xb.offset[u.col];
                const int clen = a.loewy(xterm[static_cast<size_t>(u.col)]);
                for (int t = 0; t < clen; ++t) {
                    if (xv[off + t] == 0) continue;
                    if (u.len + t >= cj) continue;
                    sys.at(static_cast<int>(ci) * yb.dim + yb.offset[u.row] + u.len + t,
                           static_cast<int>(ui)) += xv[off + t];
                }
            }
        }
        auto sol = solve(sys, rhs);
        if (!sol) throw std::logic_error("cone_from_pi_cover: lifting against the injective failed");

        std::vector<DiffEntry> comp;
        std::map<std::pair<int, int>, std::map<int, Rational>> by_cell;
        for (size_t ui = 0; ui < unknowns.size(); ++ui) {
            if ((*sol)[ui] == 0) continue;
            by_cell[{unknowns[ui].row, unknowns[ui].col}][unknowns[ui].len] += (*sol)[ui];
        }
        for (const auto& [cell, lens] : by_cell) {
            for (const auto& [len, coeff] : lens) {
                if (coeff != 0) comp.push_back({cell.first, cell.second, len, coeff});
            }
        }
        g.components.push_back(std::move(comp));
    }

    ProjComplex cone = mapping_cone(c, y, g);
    QuasiResolutionCheck final = check_quasi_resolution(cone, ModuleSum{{m}});
    if (!final.ok || final.score > chk.score + 1)
        throw std::logic_error("cone_from_pi_cover: cone failed validation: " + final.reason);
    return cone;
}

namespace {

struct LadderPlan {
    std::vector<int> lengths;  // component length at degrees n..n+m-1
    bool ok = false;
};

LadderPlan plan_ladder(const SerialAlgebra& a, const MinimalResolution& res, int m, int n) {
    LadderPlan plan;
    plan.lengths.assign(static_cast<size_t>(m), 0);
    long long ell = 0;  // seed: identity components throughout the periodic zone
    for (int t = n + m - 1; t >= n; --t) {
        auto len_above = res.diff_length(t + 1);
        auto len_shifted = res.diff_length(t + 1 - n);
        if (!len_above || !len_shifted) return plan;
        ell = ell + *len_shifted - *len_above;
        if (ell < 0) return plan;
        auto src = res.term(t - n);
        auto dst = res.term(t);
        if (!src || !dst) return plan;
        if (ell > a.loewy(*src) - 1) return plan;  // component would be a zero path
        if (a.step(*src, ell) != *dst) return plan;
        plan.lengths[static_cast<size_t>(t - n)] = static_cast<int>(ell);
    }
    plan.ok = true;
    return plan;
}

bool ladder_pattern_ok(const ProjComplex& cone, const Uniserial& mod, int m, int n) {
    QuasiResolutionCheck chk = check_quasi_resolution(cone, ModuleSum{{mod}});
    if (!chk.ok || chk.score != m) return false;
    for (int d = cone.lo(); d <= cone.hi(); ++d) {
        const long long mult = chk.multiplicities[static_cast<size_t>(d - cone.lo())];
        const long long expect = (d == 1 || d == n) ? 1 : 0;
        if (mult != expect) return false;
    }
    return true;
}

}  // namespace

bool ladder_exists(const SerialAlgebra& a, const Uniserial& mod, int m, int n) {
    if (n < 2 || m < 0) return false;
    validate(a, mod);
    SyzygyOrbit orbit = syzygy_orbit(a, mod);
    auto low = orbit.term(m);
    auto high = orbit.term(n + m);
    if (!low || !high || !(*low == *high)) return false;
    if (m == 0) return true;
    MinimalResolution res = minimal_resolution(a, mod);
    return plan_ladder(a, res, m, n).ok;
}

std::optional<ProjComplex> cone_from_ladder(const SerialAlgebra& a, const Uniserial& mod, int m, int n) {
    if (n < 2) throw std::invalid_argument("cone_from_ladder: shift must be >= 2");
    if (m < 0) throw std::invalid_argument("cone_from_ladder: m must be >= 0");
    validate(a, mod);
    SyzygyOrbit orbit = syzygy_orbit(a, mod);
    auto low = orbit.term(m);
    auto high = orbit.term(n + m);
    if (!low || !high || !(*low == *high))
        throw std::invalid_argument("cone_from_ladder: syzygies at degrees m and n+m differ");

    MinimalResolution res = minimal_resolution(a, mod);

    if (m == 0) {
        ProjComplex cone = resolution_complex(a, res, n - 1).shifted(1);
        if (!ladder_pattern_ok(cone, mod, m, n)) return std::nullopt;
        return cone;
    }

    LadderPlan plan = plan_ladder(a, res, m, n);
    if (!plan.ok) return std::nullopt;

    ProjComplex x = resolution_complex(a, res, n + m - 1);

    std::vector<std::vector<Vertex>> yterms;
    std::vector<std::vector<DiffEntry>> ydiffs;
    for (int d = n; d <= n + m - 1; ++d) {
        yterms.push_back({*res.term(d - n)});
        if (d > n) ydiffs.push_back({{0, 0, *res.diff_length(d - n), 1}});
    }
    ProjComplex y(a, n, std::move(yterms), std::move(ydiffs));

    ChainMapComponents g;
    g.lo = n;
    for (int t = n; t <= n + m - 1; ++t)
        g.components.push_back({{0, 0, plan.lengths[static_cast<size_t>(t - n)], 1}});

    ProjComplex cone = mapping_cone(x, y, g);
    if (!ladder_pattern_ok(cone, mod, m, n)) return std::nullopt;
    return cone;
}

namespace {

// Vertex multisets of size 1..max_width as nondecreasing sequences.
std::vector<std::vector<Vertex>> term_choices(int nverts, int max_width) {
    std::vector<std::vector<Vertex>> out;
    std::vector<Vertex> cur;
    auto rec = [&](auto&& self, Vertex from) -> void {
        if (!cur.empty()) out.push_back(cur);
        if (static_cast<int>(cur.size()) == max_width) return;
        for (Vertex v = from; v <= nverts; ++v) {
            cur.push_back(v);
            self(self, v);
            cur.pop_back();
        }
    };
    rec(rec, 1);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return out;
}

}  // namespace

std::optional<ProjComplex> bounded_search(const SerialAlgebra& a, const Uniserial& m,
                                          const SearchCaps& caps, long long target_score) {
    validate(a, m);
    const auto choices = term_choices(a.vertices(), caps.max_width);
    long long budget = caps.budget;

    // All candidate entries per ordered pair of vertices: proper path lengths.
    auto entry_lens = [&](Vertex src, Vertex dst) {
        std::vector<int> lens;
        for (int len = 1; len < a.loewy(src); ++len)
            if (a.step(src, len) == dst) lens.push_back(len);
        return lens;
    };

    for (int top = 0; top <= caps.max_length && budget > 0; ++top) {
        // shape = vector of term choices for degrees 0..top
        std::vector<size_t> shape(static_cast<size_t>(top) + 1, 0);
        while (budget > 0) {
            long long dim = 0;
            for (size_t d = 0; d < shape.size(); ++d)
                for (Vertex v : choices[shape[d]]) dim += a.loewy(v);
            if (dim <= caps.max_total_dim) {
                // assemble terms; enumerate differentials degree by degree
                std::vector<std::vector<Vertex>> terms;
                for (size_t d = 0; d < shape.size(); ++d) terms.push_back(choices[shape[d]]);

                std::vector<std::vector<DiffEntry>> diffs(static_cast<size_t>(top));
                std::optional<ProjComplex> found;
                auto fill = [&](auto&& self, int d) -> bool {  // d: differential into degree d-1
                    if (budget-- <= 0) return false;
                    if (d > top) {
                        ProjComplex cand(a, 0, terms, diffs);
                        if (!cand.d_squared_zero()) return false;
                        QuasiResolutionCheck chk = check_quasi_resolution(cand, ModuleSum{{m}});
                        if (chk.ok && chk.score <= target_score) {
                            found = std::move(cand);
                            return true;
                        }
                        return false;
                    }
                    // cells in row-major order; each cell empty or one allowed length
                    const auto& below = terms[static_cast<size_t>(d - 1)];
                    const auto& here = terms[static_cast<size_t>(d)];
                    std::vector<std::pair<int, int>> cells;
                    for (int r = 0; r < static_cast<int>(below.size()); ++r)
                        for (int c = 0; c < static_cast<int>(here.size()); ++c) cells.push_back({r, c});
                    auto cellrec = [&](auto&& cself, size_t ci) -> bool {
                        if (ci == cells.size()) {
                            // early d*d prune on the last two differentials
                            if (d >= 2) {
                                std::map<std::tuple<int, int, int>, Rational> acc;
                                const auto& lowterm = terms[static_cast<size_t>(d - 2)];
                                for (const DiffEntry& e2 : diffs[static_cast<size_t>(d - 1)])
                                    for (const DiffEntry& e1 : diffs[static_cast<size_t>(d - 2)]) {
                                        if (e1.col != e2.row) continue;
                                        Path p{lowterm[e1.row], e1.len + e2.len};
                                        if (!path_nonzero(a, p)) continue;
                                        acc[{e1.row, e2.col, p.length}] += e1.coeff * e2.coeff;
                                    }
                                for (const auto& [k, v] : acc)
                                    if (v != 0) return false;
                            }
                            return self(self, d + 1);
                        }
                        auto [r, c] = cells[ci];
                        if (cself(cself, ci + 1)) return true;  // empty cell
                        for (int len : entry_lens(below[r], here[c])) {
                            diffs[static_cast<size_t>(d - 1)].push_back({r, c, len, 1});
                            if (cself(cself, ci + 1)) return true;
                            diffs[static_cast<size_t>(d - 1)].pop_back();
                        }
                        return false;
                    };
                    if (budget <= 0) return false;
                    return cellrec(cellrec, 0);
                };
                if (fill(fill, 1)) return found;
            }
            // advance shape lexicographically
            size_t pos = shape.size();
            while (pos > 0) {
                --pos;
                if (shape[pos] + 1 < choices.size()) {
                    ++shape[pos];
                    for (size_t j = pos + 1; j < shape.size(); ++j) shape[j] = 0;
                    break;
                }
                if (pos == 0) {
                    pos = shape.size() + 1;  // exhausted
                    break;
                }
            }
            if (pos > shape.size()) break;
        }
    }
    return std::nullopt;
}

}  // namespace serialhom
