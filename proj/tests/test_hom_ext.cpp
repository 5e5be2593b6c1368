#include <catch2/catch_amalgamated.hpp>

#include "serialhom/algebra.hpp"
#include "serialhom/hom_ext.hpp"
#include "serialhom/linalg.hpp"

using namespace serialhom;

namespace {

std::vector<SerialAlgebra> oracle_pool(int max_n) {
    std::vector<SerialAlgebra> pool;
    for (int n = 2; n <= max_n; ++n)
        for (unsigned mask = 1; mask < (1u << n); ++mask) {
            std::vector<int> delta;
            for (int b = 0; b < n; ++b)
                if (mask & (1u << b)) delta.push_back(b + 1);
            pool.push_back(SerialAlgebra::cyclic(n, delta));
        }
    pool.push_back(SerialAlgebra::kupisch({2, 2}, {2, 2}));
    pool.push_back(SerialAlgebra::kupisch({2, 2, 2}, {2, 3, 2}));
    return pool;
}

// Brute-force Hom dimension: modules as graded vector spaces with arrow
// actions, homs as solutions of the intertwiner equations.
int hom_oracle(const SerialAlgebra& a, const Uniserial& u, const Uniserial& v) {
    const int k = u.len, l = v.len;
    std::vector<Vertex> uv(k), vv(l);
    for (int t = 0; t < k; ++t) uv[t] = a.step(u.top, t);
    for (int s = 0; s < l; ++s) vv[s] = a.step(v.top, s);

    std::vector<std::vector<int>> unknown(k, std::vector<int>(l, -1));
    int count = 0;
    for (int t = 0; t < k; ++t)
        for (int s = 0; s < l; ++s)
            if (uv[t] == vv[s]) unknown[t][s] = count++;
    if (count == 0) return 0;

    // naturality at each basis vector of U and each target coordinate of V
    std::vector<QVec> rows;
    for (int t = 0; t < k; ++t) {
        for (int sp = 0; sp < l; ++sp) {
            QVec row(count);
            bool nonzero = false;
            if (t + 1 < k && unknown[t + 1][sp] >= 0) {
                row[unknown[t + 1][sp]] += 1;
                nonzero = true;
            }
            if (sp >= 1 && unknown[t][sp - 1] >= 0) {
                row[unknown[t][sp - 1]] -= 1;
                nonzero = true;
            }
            if (nonzero) rows.push_back(std::move(row));
        }
    }
    QMatrix mat(static_cast<int>(rows.size()), count);
    for (size_t i = 0; i < rows.size(); ++i)
        for (int j = 0; j < count; ++j) mat.at(static_cast<int>(i), j) = rows[i][j];
    return count - rank(mat);
}

// Euler route to dim Ext^1 through the cover sequence, built entirely on the
// hom oracle.
int ext1_oracle(const SerialAlgebra& a, const Uniserial& m, const Uniserial& n) {
    auto omega = syzygy(a, m);
    if (!omega) return 0;
    Uniserial cover{m.top, a.loewy(m.top)};
    return hom_oracle(a, *omega, n) - hom_oracle(a, cover, n) + hom_oracle(a, m, n);
}

struct Realized {
    std::vector<Vertex> vertex;  // per basis index
    std::vector<int> arrow;      // image index or -1
};

Realized realize(const SerialAlgebra& a, const std::vector<Uniserial>& summands) {
    Realized r;
    for (const Uniserial& u : summands) {
        int base = static_cast<int>(r.vertex.size());
        for (int t = 0; t < u.len; ++t) {
            r.vertex.push_back(a.step(u.top, t));
            r.arrow.push_back(t + 1 < u.len ? base + t + 1 : -1);
        }
    }
    return r;
}

// All A-linear maps N -> X as matrices, one generator per intertwiner basis
// vector.
std::vector<QMatrix> hom_space(const SerialAlgebra& a, const Uniserial& n,
                               const std::vector<Uniserial>& x) {
    Realized rn = realize(a, {n});
    Realized rx = realize(a, x);
    const int dn = static_cast<int>(rn.vertex.size());
    const int dx = static_cast<int>(rx.vertex.size());
    std::vector<std::pair<int, int>> unknowns;  // (source basis, target basis)
    for (int t = 0; t < dn; ++t)
        for (int s = 0; s < dx; ++s)
            if (rn.vertex[t] == rx.vertex[s]) unknowns.push_back({t, s});
    if (unknowns.empty()) return {};
    QMatrix mat(dn * dx, static_cast<int>(unknowns.size()));
    int rows = 0;
    for (int t = 0; t < dn; ++t) {
        for (int sp = 0; sp < dx; ++sp) {
            bool nonzero = false;
            for (size_t ui = 0; ui < unknowns.size(); ++ui) {
                Rational c = 0;
                if (rn.arrow[t] >= 0 && unknowns[ui] == std::make_pair(rn.arrow[t], sp)) c += 1;
                if (unknowns[ui].first == t && rx.arrow[unknowns[ui].second] == sp) c -= 1;
                if (c != 0) {
                    mat.at(rows, static_cast<int>(ui)) = c;
                    nonzero = true;
                }
            }
            if (nonzero) ++rows;
        }
    }
    QMatrix sys(rows, static_cast<int>(unknowns.size()));
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < static_cast<int>(unknowns.size()); ++j) sys.at(i, j) = mat.at(i, j);
    std::vector<QMatrix> basis;
    for (const QVec& kv : kernel_basis(sys)) {
        QMatrix f(dx, dn);
        for (size_t ui = 0; ui < unknowns.size(); ++ui)
            f.at(unknowns[ui].second, unknowns[ui].first) = kv[ui];
        basis.push_back(std::move(f));
    }
    return basis;
}

// Does some sampled injection N -> X have cokernel isomorphic to M? The
// cokernel is matched through its graded radical filtration, which pins the
// uniserial isomorphism class exactly.
bool middle_realizes_extension(const SerialAlgebra& a, const Uniserial& m, const Uniserial& n,
                               const std::vector<Uniserial>& x) {
    Realized rx = realize(a, x);
    const int dx = static_cast<int>(rx.vertex.size());
    const int dn = n.len;
    auto homs = hom_space(a, n, x);
    if (homs.empty()) return false;

    std::vector<int> coeffs = {-1, 0, 1, 2};
    std::vector<size_t> idx(homs.size(), 0);
    while (true) {
        QMatrix phi(dx, dn);
        for (size_t h = 0; h < homs.size(); ++h) {
            if (coeffs[idx[h]] == 0) continue;
            for (int i = 0; i < dx; ++i)
                for (int j = 0; j < dn; ++j) phi.at(i, j) += coeffs[idx[h]] * homs[h].at(i, j);
        }
        if (rank(phi) == dn) {
            // radical filtration of the cokernel
            std::vector<QVec> image;
            for (int j = 0; j < dn; ++j) {
                QVec col(dx);
                for (int i = 0; i < dx; ++i) col[i] = phi.at(i, j);
                image.push_back(std::move(col));
            }
            bool good = true;
            for (int t = 0; t <= m.len && good; ++t) {
                // span of image + t-fold arrow shifts of X
                std::vector<QVec> span = image;
                for (int b = 0; b < dx; ++b) {
                    int cur = b;
                    bool alive = true;
                    for (int step = 0; step < t; ++step) {
                        cur = rx.arrow[cur];
                        if (cur < 0) {
                            alive = false;
                            break;
                        }
                    }
                    if (alive) {
                        QVec v(dx);
                        v[cur] = 1;
                        span.push_back(std::move(v));
                    }
                }
                // graded dims of the span minus graded dims of the image
                for (int vtx = 1; vtx <= a.vertices() && good; ++vtx) {
                    auto graded_dim = [&](const std::vector<QVec>& vecs) {
                        std::vector<int> cols;
                        for (int i = 0; i < dx; ++i)
                            if (rx.vertex[i] == vtx) cols.push_back(i);
                        QMatrix mm(static_cast<int>(vecs.size()), static_cast<int>(cols.size()));
                        for (size_t r = 0; r < vecs.size(); ++r)
                            for (size_t c = 0; c < cols.size(); ++c)
                                mm.at(static_cast<int>(r), static_cast<int>(c)) = vecs[r][cols[c]];
                        return rank(mm);
                    };
                    int got = graded_dim(span) - graded_dim(image);
                    int expect = 0;
                    if (t < m.len) {
                        Uniserial jt{a.step(m.top, t), m.len - t};
                        expect = dimension_vector(a, jt)[vtx - 1];
                    }
                    if (got != expect) good = false;
                }
            }
            if (good) return true;
        }
        size_t pos = 0;
        while (pos < idx.size() && ++idx[pos] == coeffs.size()) idx[pos++] = 0;
        if (pos == idx.size()) break;
    }
    return false;
}

int count_nonsplit_middles(const SerialAlgebra& a, const Uniserial& m, const Uniserial& n) {
    std::vector<int> target(a.vertices());
    {
        auto dm = dimension_vector(a, m);
        auto dn = dimension_vector(a, n);
        for (int i = 0; i < a.vertices(); ++i) target[i] = dm[i] + dn[i];
    }
    auto indecs = all_indecomposables(a);
    std::vector<std::vector<Uniserial>> candidates;
    for (const Uniserial& u : indecs) {
        if (dimension_vector(a, u) == target) candidates.push_back({u});
    }
    for (size_t i = 0; i < indecs.size(); ++i) {
        for (size_t j = i; j < indecs.size(); ++j) {
            auto di = dimension_vector(a, indecs[i]);
            auto dj = dimension_vector(a, indecs[j]);
            bool match = true;
            for (int v = 0; v < a.vertices(); ++v)
                if (di[v] + dj[v] != target[v]) match = false;
            if (match) candidates.push_back({indecs[i], indecs[j]});
        }
    }
    int count = 0;
    ModuleSum split{{m, n}};
    for (const auto& x : candidates) {
        if (ModuleSum(std::vector<Uniserial>(x)) == split) continue;
        if (middle_realizes_extension(a, m, n, x)) ++count;
    }
    return count;
}

}  // namespace

TEST_CASE("hom dimension") {
    SerialAlgebra a = SerialAlgebra::cyclic(4, {1, 3});
    for (int i = 1; i <= 4; ++i) CHECK(hom_dim(a, {i, 1}, {i, 1}) == 1);
    CHECK(hom_dim(a, {2, 3}, {1, 4}) == 1);
    CHECK(hom_dim(a, {2, 5}, {2, 5}) == 2);

    SECTION("matrix oracle, exhaustive over the pool") {
        for (const SerialAlgebra& alg : oracle_pool(4)) {
            auto indecs = all_indecomposables(alg);
            for (const Uniserial& u : indecs)
                for (const Uniserial& v : indecs) CHECK(hom_dim(alg, u, v) == hom_oracle(alg, u, v));
        }
    }
}

TEST_CASE("minimal resolution") {
    SerialAlgebra a = SerialAlgebra::cyclic(4, {1, 3});
    MinimalResolution r = minimal_resolution(a, {1, 1});
    CHECK(r.terms == std::vector<Vertex>{1, 2, 1, 3});
    CHECK(r.preperiod == 2);
    CHECK(r.period == 2);
    CHECK(*r.term(4) == 1);
    CHECK(*r.term(5) == 3);
    CHECK(r.diff_lengths[0] == 1);
    CHECK(*r.diff_length(5) == 2);

    MinimalResolution s2 = minimal_resolution(a, {2, 1});
    CHECK(s2.finite());
    CHECK(s2.terms == std::vector<Vertex>{2, 3});

    SerialAlgebra e = SerialAlgebra::kupisch({2, 2}, {2, 2});
    MinimalResolution rs1 = minimal_resolution(e, {1, 1});
    CHECK(rs1.terms == std::vector<Vertex>{1, 2});
    CHECK(rs1.preperiod == 1);
    CHECK(rs1.period == 1);
    CHECK(*rs1.term(7) == 2);
}

TEST_CASE("ext dimensions") {
    SerialAlgebra e = SerialAlgebra::kupisch({2, 2}, {2, 2});
    for (int s = 1; s <= 10; ++s) CHECK(ext_dim(e, {1, 1}, {1, 1}, s) == 0);
    CHECK(ext_dim(e, {1, 1}, {2, 1}, 1) == 1);

    SerialAlgebra a = SerialAlgebra::cyclic(4, {1, 3});
    for (int i = 1; i <= 4; ++i) {
        Uniserial p{i, a.loewy(i)};
        for (int s = 1; s <= 5; ++s) CHECK(ext_dim(a, p, {1, 2}, s) == 0);
    }

    SECTION("degree zero is hom_dim") {
        for (const SerialAlgebra& alg : oracle_pool(3)) {
            auto indecs = all_indecomposables(alg);
            for (const Uniserial& u : indecs)
                for (const Uniserial& v : indecs) CHECK(ext_dim(alg, u, v, 0) == hom_dim(alg, u, v));
        }
    }

    SECTION("vanishing against projective injectives") {
        for (const SerialAlgebra& alg : oracle_pool(4)) {
            for (int i = 1; i <= alg.vertices(); ++i) {
                if (!is_injective_projective(alg, i)) continue;
                Uniserial p{i, alg.loewy(i)};
                for (const Uniserial& u : all_indecomposables(alg))
                    for (int s = 1; s <= 3; ++s) CHECK(ext_dim(alg, u, p, s) == 0);
            }
        }
    }

    SECTION("degree one against the extension oracles") {
        for (const SerialAlgebra& alg : oracle_pool(3)) {
            auto indecs = all_indecomposables(alg);
            for (const Uniserial& m : indecs) {
                for (const Uniserial& n : indecs) {
                    const int dim = ext_dim(alg, m, n, 1);
                    CHECK(dim == ext1_oracle(alg, m, n));
                    // Middles of extensions decompose into uniserials only over
                    // cyclic presentations; the loop algebras have a
                    // non-uniserial indecomposable that can appear as a middle.
                    if (alg.cyclic_presentation() && alg.total_loewy() <= 9) {
                        const int middles = count_nonsplit_middles(alg, m, n);
                        CHECK((dim > 0) == (middles > 0));
                        if (dim == 1) CHECK(middles == 1);
                    }
                }
            }
        }
    }
}

TEST_CASE("eventual vanishing of ext") {
    SerialAlgebra e = SerialAlgebra::kupisch({2, 2}, {2, 2});
    CHECK(ext_eventually_vanishes(e, {1, 1}, {1, 1}, 1));

    SerialAlgebra a = SerialAlgebra::cyclic(4, {1, 3});
    CHECK_FALSE(ext_eventually_vanishes(a, {1, 2}, {1, 2}, 2));
    for (int i = 1; i <= 4; ++i) {
        Uniserial p{i, a.loewy(i)};
        CHECK(ext_eventually_vanishes(a, p, {2, 3}, 1));
    }

    SECTION("window rule soundness on small algebras") {
        for (const SerialAlgebra& alg : oracle_pool(3)) {
            if (alg.total_loewy() > 12) continue;
            auto indecs = all_indecomposables(alg);
            for (const Uniserial& m : indecs) {
                MinimalResolution res = minimal_resolution(alg, m);
                if (res.finite()) continue;
                const int mu = res.preperiod, rho = *res.period;
                for (const Uniserial& n : indecs) {
                    for (int s = mu + 2; s + rho <= mu + 2 + 3 * rho; ++s)
                        CHECK(ext_dim(alg, m, n, s) == ext_dim(alg, m, n, s + rho));
                }
            }
        }
    }
}

TEST_CASE("infinite qpd witness") {
    SerialAlgebra e = SerialAlgebra::kupisch({2, 2}, {2, 2});
    CHECK(infinite_qpd_witness(e, {1, 1}));
    CHECK_FALSE(infinite_qpd_witness(e, {2, 1}));
    SerialAlgebra a = SerialAlgebra::cyclic(4, {1, 3});
    CHECK_FALSE(infinite_qpd_witness(a, {1, 1}));
}

TEST_CASE("ext table rendering data") {
    SerialAlgebra a = SerialAlgebra::cyclic(4, {1, 3});
    ExtTable t = ext_table(a, {{{1, 1}, {1, 1}}, {{2, 1}, {2, 1}}}, 4);
    REQUIRE(t.pairs.size() == 2);
    CHECK(t.pairs[0].tail == "periodic(2)@4");
    CHECK(t.pairs[0].ext.size() == 5);
    CHECK(t.pairs[0].ext[0] == 1);
    CHECK(t.pairs[1].tail == "zero@2");
}
