#include "serialhom/commands.hpp"

#include <CLI11.hpp>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <thread>

#include "serialhom/io.hpp"
#include "serialhom/qpd.hpp"

namespace serialhom {

namespace {

namespace fs = std::filesystem;

struct AlgebraOpts {
    int cyclic_n = 0;
    std::vector<int> delta;
    std::string spec_file;

    void attach(CLI::App* cmd) {
        cmd->add_option("--cyclic", cyclic_n, "cycle quiver with this many vertices");
        cmd->add_option("--delta", delta, "relation vertices for --cyclic")->delimiter(',');
        cmd->add_option("--spec", spec_file, "algebra spec JSON file");
    }

    SerialAlgebra resolve() const {
        const bool inline_given = cyclic_n != 0 || !delta.empty();
        if (inline_given == !spec_file.empty())
            throw CLI::ValidationError("algebra", "need exactly one of --cyclic/--delta or --spec");
        if (!spec_file.empty()) {
            std::ifstream in(spec_file);
            if (!in) throw ParseError("spec", "cannot open " + spec_file);
            json j;
            try {
                j = json::parse(in);
            } catch (const json::parse_error& e) {
                throw ParseError("spec", e.what());
            }
            return algebra_from_json(j);
        }
        return SerialAlgebra::cyclic(cyclic_n, delta);
    }
};

struct ModuleOpts {
    std::vector<int> tops, lens;

    void attach(CLI::App* cmd, bool required) {
        auto* t = cmd->add_option("--top", tops, "top vertex of a selected module (repeatable)");
        auto* l = cmd->add_option("--len", lens, "length of a selected module (repeatable)");
        if (required) {
            t->required();
            l->required();
        }
    }

    std::vector<Uniserial> resolve(const SerialAlgebra& a) const {
        if (tops.size() != lens.size())
            throw CLI::ValidationError("module", "--top and --len counts differ");
        std::vector<Uniserial> out;
        for (size_t i = 0; i < tops.size(); ++i) {
            Uniserial u{tops[i], lens[i]};
            validate(a, u);
            out.push_back(u);
        }
        return out;
    }
};

struct OutputOpts {
    std::string format = "text";
    std::string out_file;
    std::string cert_dir;

    void attach(CLI::App* cmd) {
        cmd->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"text", "json", "csv"}));
        cmd->add_option("--out", out_file, "write output to this file");
        cmd->add_option("--emit-certificates", cert_dir,
                        "directory for certificate files (default: SERIALHOM_CERT_DIR)");
    }

    std::string certificate_dir() const {
        if (!cert_dir.empty()) return cert_dir;
        if (const char* env = std::getenv("SERIALHOM_CERT_DIR")) return env;
        return {};
    }

    void deliver(const std::string& text, std::ostream& fallback) const {
        if (out_file.empty()) {
            fallback << text;
            return;
        }
        std::ofstream f(out_file, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + out_file);
        f << text;
    }
};

std::string module_slug(const Uniserial& m) {
    return "L" + std::to_string(m.top) + "-" + std::to_string(m.len);
}

std::string algebra_brief(const SerialAlgebra& a) {
    std::ostringstream os;
    if (a.cyclic_presentation()) {
        os << "cyclic n=" << a.vertices() << " delta=";
        for (size_t i = 0; i < a.delta().size(); ++i) os << (i ? "," : "") << a.delta()[i];
    } else {
        os << "kupisch n=" << a.vertices();
    }
    return os.str();
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

/// Writes the complex-bearing certificates of a result to dir, returning the
/// file names in certificate order ("" for non-complex certificates).
std::vector<std::string> write_certificates(const SerialAlgebra& a, const Uniserial& m,
                                            const QpdResult& r, const std::string& dir) {
    std::vector<std::string> files(r.certificates.size());
    if (dir.empty()) return files;
    fs::create_directories(dir);
    std::map<std::string, int> used;
    for (size_t i = 0; i < r.certificates.size(); ++i) {
        const Certificate& c = r.certificates[i];
        const auto* complex = certificate_complex(c);
        if (!complex || !complex->has_value()) continue;
        std::string base = module_slug(m) + "." + certificate_tag(c);
        int n = ++used[base];
        std::string name = base + (n > 1 ? "-" + std::to_string(n) : "") + ".json";
        CertificateFile file{a, ModuleSum{{m}}, certificate_score(c), **complex};
        std::ofstream f(fs::path(dir) / name, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write certificate " + name);
        f << certificate_to_json(file).dump(2) << "\n";
        files[i] = name;
    }
    return files;
}

struct TableRow {
    Uniserial mod;
    int dim = 0;
    Vertex socle_vertex = 0;
    ExtNat pd;
    std::optional<std::pair<int, int>> periodic;
    QpdResult result;
    std::vector<std::string> cert_files;
};

std::vector<TableRow> build_table(const QpdEngine& eng, const std::string& cert_dir) {
    std::vector<TableRow> rows;
    for (const Uniserial& m : eng.indecomposables()) {
        TableRow row;
        row.mod = m;
        row.dim = m.len;
        row.socle_vertex = socle(eng.algebra(), m).top;
        row.pd = eng.pd(m);
        const SyzygyOrbit& orbit = eng.orbit(m);
        if (orbit.period) row.periodic = {orbit.preperiod, *orbit.period};
        row.result = eng.bounds(m);
        row.cert_files = write_certificates(eng.algebra(), m, row.result, cert_dir);
        rows.push_back(std::move(row));
    }
    return rows;
}

json certificate_meta(const Certificate& c) {
    json j;
    j["tag"] = certificate_tag(c);
    if (certificate_complex(c)) {
        j["score"] = certificate_score(c);
    } else if (const auto* s = std::get_if<SocleEmbeddingCert>(&c)) {
        j["bound"] = extnat_to_json(s->bound);
        json w = json::array();
        for (const auto& [u, pd] : s->witnesses) {
            json e;
            e["module"] = to_string(u);
            e["pd"] = pd;
            w.push_back(std::move(e));
        }
        j["witnesses"] = std::move(w);
    } else if (const auto* e = std::get_if<ExtVanishingCert>(&c)) {
        j["window"] = json::array({e->from, e->through});
    } else if (const auto* a = std::get_if<CaseAnalysisCert>(&c)) {
        j["case"] = a->case_id;
        j["bound"] = a->bound;
    }
    return j;
}

std::string certificate_brief(const Certificate& c) {
    std::string out = certificate_tag(c);
    if (certificate_complex(c)) {
        out += " score " + std::to_string(certificate_score(c));
    } else if (const auto* s = std::get_if<SocleEmbeddingCert>(&c)) {
        out += " bound " + s->bound.str() + " (" + std::to_string(s->witnesses.size()) + " witnesses)";
    } else if (const auto* e = std::get_if<ExtVanishingCert>(&c)) {
        out += " window " + std::to_string(e->from) + ".." + std::to_string(e->through);
    } else if (const auto* a = std::get_if<CaseAnalysisCert>(&c)) {
        out += " case " + a->case_id + " bound " + std::to_string(a->bound);
    }
    return out;
}

json row_to_json(const TableRow& r) {
    json j;
    j["top"] = r.mod.top;
    j["len"] = r.mod.len;
    j["dim"] = r.dim;
    j["socle"] = r.socle_vertex;
    j["pd"] = extnat_to_json(r.pd);
    if (r.periodic) {
        json p;
        p["preperiod"] = r.periodic->first;
        p["period"] = r.periodic->second;
        j["periodic"] = std::move(p);
    } else {
        j["periodic"] = nullptr;
    }
    j["qpd_lower"] = extnat_to_json(r.result.lower);
    j["qpd_upper"] = extnat_to_json(r.result.upper);
    j["exact"] = r.result.exact();
    j["rules"] = r.result.rules;
    json certs = json::array();
    for (size_t i = 0; i < r.result.certificates.size(); ++i) {
        json c = certificate_meta(r.result.certificates[i]);
        if (!r.cert_files[i].empty()) c["file"] = r.cert_files[i];
        certs.push_back(std::move(c));
    }
    j["certificates"] = std::move(certs);
    return j;
}

std::string periodic_str(const std::optional<std::pair<int, int>>& p) {
    if (!p) return "-";
    return "(" + std::to_string(p->first) + "," + std::to_string(p->second) + ")";
}

std::string render_table(const std::vector<TableRow>& rows, const std::string& format) {
    if (format == "json") {
        json arr = json::array();
        for (const TableRow& r : rows) arr.push_back(row_to_json(r));
        return arr.dump(2) + "\n";
    }
    std::ostringstream os;
    if (format == "csv") {
        os << "top,len,dim,socle,pd,periodic,qpd_lower,qpd_upper,exact,rules,certificates\n";
        for (const TableRow& r : rows) {
            std::vector<std::string> files;
            for (const std::string& f : r.cert_files)
                if (!f.empty()) files.push_back(f);
            os << r.mod.top << "," << r.mod.len << "," << r.dim << "," << r.socle_vertex << ","
               << r.pd.str() << "," << periodic_str(r.periodic) << "," << r.result.lower.str() << ","
               << r.result.upper.str() << "," << (r.result.exact() ? "yes" : "no") << ","
               << join(r.result.rules, "|") << "," << join(files, "|") << "\n";
        }
        return os.str();
    }
    os << std::left << std::setw(8) << "module" << std::setw(5) << "dim" << std::setw(7) << "socle"
       << std::setw(5) << "pd" << std::setw(10) << "periodic" << std::setw(10) << "qpd_lower"
       << std::setw(10) << "qpd_upper" << std::setw(7) << "exact" << "rules\n";
    for (const TableRow& r : rows) {
        os << std::left << std::setw(8) << to_string(r.mod) << std::setw(5) << r.dim << std::setw(7)
           << r.socle_vertex << std::setw(5) << r.pd.str() << std::setw(10) << periodic_str(r.periodic)
           << std::setw(10) << r.result.lower.str() << std::setw(10) << r.result.upper.str()
           << std::setw(7) << (r.result.exact() ? "yes" : "no") << join(r.result.rules, ",") << "\n";
    }
    return os.str();
}

int cmd_info(const SerialAlgebra& a, const OutputOpts& output, std::ostream& out) {
    std::vector<Vertex> injective;
    for (Vertex i = 1; i <= a.vertices(); ++i)
        if (a.projective_injective(i)) injective.push_back(i);
    if (output.format == "json") {
        json j = algebra_to_json(a);
        j["loewy"] = a.loewy_vector();
        j["projective_injective"] = injective;
        j["self_injective"] = a.self_injective();
        j["indecomposables"] = a.total_loewy();
        j["components"] = a.components();
        output.deliver(j.dump(2) + "\n", out);
        return 0;
    }
    std::ostringstream os;
    os << "algebra: " << algebra_brief(a) << "\n";
    os << "loewy:";
    for (int c : a.loewy_vector()) os << " " << c;
    os << "\nprojective_injective:";
    for (Vertex v : injective) os << " " << v;
    os << "\nself_injective: " << (a.self_injective() ? "yes" : "no") << "\n";
    os << "indecomposables: " << a.total_loewy() << "\n";
    os << "components: " << a.components().size() << "\n";
    output.deliver(os.str(), out);
    return 0;
}

int cmd_resolve(const SerialAlgebra& a, const std::vector<Uniserial>& mods, const OutputOpts& output,
                std::ostream& out) {
    json jmods = json::array();
    std::ostringstream os;
    for (const Uniserial& m : mods) {
        SyzygyOrbit orbit = syzygy_orbit(a, m);
        MinimalResolution res = minimal_resolution(a, m);
        if (output.format == "json") {
            json j;
            j["module"] = to_string(m);
            j["pd"] = extnat_to_json(proj_dimension(a, m));
            json jorbit = json::array();
            for (const Uniserial& u : orbit.modules) jorbit.push_back(to_string(u));
            j["orbit"] = std::move(jorbit);
            j["preperiod"] = orbit.preperiod;
            j["period"] = orbit.period ? json(*orbit.period) : json(nullptr);
            j["resolution_terms"] = res.terms;
            j["differential_lengths"] = res.diff_lengths;
            jmods.push_back(std::move(j));
        } else {
            os << "module: " << to_string(m) << "\n";
            os << "pd: " << proj_dimension(a, m).str() << "\n";
            os << "orbit:";
            for (size_t i = 0; i < orbit.modules.size(); ++i)
                os << (i ? " -> " : " ") << to_string(orbit.modules[i]);
            os << "\npreperiod: " << orbit.preperiod << "\n";
            os << "period: " << (orbit.period ? std::to_string(*orbit.period) : "-") << "\n";
            os << "resolution:";
            for (size_t t = 0; t < res.terms.size(); ++t) {
                os << " P" << res.terms[t];
                if (t + 1 < res.terms.size()) os << " <-" << res.diff_lengths[t] << "-";
            }
            if (res.period) os << " ... (repeats with period " << *res.period << ")";
            os << "\n";
        }
    }
    if (output.format == "json")
        output.deliver(jmods.dump(2) + "\n", out);
    else
        output.deliver(os.str(), out);
    return 0;
}

json result_to_json(const QpdResult& r, const std::vector<std::string>& files) {
    json j;
    j["qpd_lower"] = extnat_to_json(r.lower);
    j["qpd_upper"] = extnat_to_json(r.upper);
    j["exact"] = r.exact();
    j["rules"] = r.rules;
    json certs = json::array();
    for (size_t i = 0; i < r.certificates.size(); ++i) {
        json c = certificate_meta(r.certificates[i]);
        if (i < files.size() && !files[i].empty()) c["file"] = files[i];
        certs.push_back(std::move(c));
    }
    j["certificates"] = std::move(certs);
    return j;
}

int cmd_qpd(const SerialAlgebra& a, const std::vector<Uniserial>& mods, const OutputOpts& output,
            std::ostream& out) {
    QpdEngine eng(a);
    const std::string dir = output.certificate_dir();
    json jout;
    std::ostringstream os;
    json per = json::array();
    for (const Uniserial& m : mods) {
        QpdResult r = eng.bounds(m);
        auto files = write_certificates(a, m, r, dir);
        if (output.format == "json") {
            json j;
            j["module"] = to_string(m);
            j["pd"] = extnat_to_json(eng.pd(m));
            j["result"] = result_to_json(r, files);
            per.push_back(std::move(j));
        } else {
            os << "module: " << to_string(m) << "\n";
            os << "pd: " << eng.pd(m).str() << "\n";
            os << "qpd: [" << r.lower.str() << ", " << r.upper.str() << "]"
               << (r.exact() ? " exact" : "") << "\n";
            os << "rules: " << join(r.rules, ",") << "\n";
            for (size_t i = 0; i < r.certificates.size(); ++i) {
                os << "certificate: " << certificate_brief(r.certificates[i]);
                if (!files[i].empty()) os << " file " << files[i];
                os << "\n";
            }
        }
    }
    if (mods.size() > 1) {
        ModuleSum sum{std::vector<Uniserial>(mods.begin(), mods.end())};
        QpdResult r = eng.bounds(sum);
        if (output.format == "json") {
            json j;
            j["module"] = to_string(sum);
            j["result"] = result_to_json(r, {});
            per.push_back(std::move(j));
        } else {
            os << "sum: " << to_string(sum) << "\n";
            os << "qpd: [" << r.lower.str() << ", " << r.upper.str() << "]"
               << (r.exact() ? " exact" : "") << "\n";
        }
    }
    if (output.format == "json") {
        jout["algebra"] = algebra_to_json(a);
        jout["modules"] = std::move(per);
        output.deliver(jout.dump(2) + "\n", out);
    } else {
        output.deliver(os.str(), out);
    }
    return 0;
}

int cmd_qgldim(const SerialAlgebra& a, const OutputOpts& output, bool parallel, std::ostream& out) {
    QpdEngine eng(a, QpdEngine::Options{.build_certificates = false, .parallel = parallel});
    DimInterval qg = eng.quasi_global_dimension();
    auto [findim, gldim] = eng.finitistic_global_dimension();
    if (output.format == "json") {
        json j;
        j["algebra"] = algebra_to_json(a);
        j["qgldim_lower"] = extnat_to_json(qg.lower);
        j["qgldim_upper"] = extnat_to_json(qg.upper);
        j["exact"] = qg.exact();
        j["method"] = qg.method;
        j["findim"] = extnat_to_json(findim);
        j["gldim"] = extnat_to_json(gldim);
        output.deliver(j.dump(2) + "\n", out);
        return 0;
    }
    std::ostringstream os;
    os << "algebra: " << algebra_brief(a) << "\n";
    os << "qgldim: [" << qg.lower.str() << ", " << qg.upper.str() << "]"
       << (qg.exact() ? " exact" : "") << " (" << qg.method << ")\n";
    os << "findim: " << findim.str() << "\n";
    os << "gldim: " << gldim.str() << "\n";
    output.deliver(os.str(), out);
    return 0;
}

int cmd_grid(int min_n, int max_n, const OutputOpts& output, bool parallel, std::ostream& out) {
    struct GridRow {
        int n;
        std::vector<int> delta;
        DimInterval qg;
        ExtNat findim, gldim;
    };
    std::vector<std::pair<int, unsigned>> cases;
    for (int n = min_n; n <= max_n; ++n)
        for (unsigned mask = 1; mask < (1u << n); ++mask) cases.push_back({n, mask});

    std::vector<GridRow> rows(cases.size());
    auto work = [&](size_t i) {
        auto [n, mask] = cases[i];
        std::vector<int> delta;
        for (int b = 0; b < n; ++b)
            if (mask & (1u << b)) delta.push_back(b + 1);
        SerialAlgebra a = SerialAlgebra::cyclic(n, delta);
        QpdEngine eng(a, QpdEngine::Options{.build_certificates = false});
        GridRow row;
        row.n = n;
        row.delta = delta;
        row.qg = eng.quasi_global_dimension();
        std::tie(row.findim, row.gldim) = eng.finitistic_global_dimension();
        rows[i] = std::move(row);
    };
    if (parallel) {
        std::vector<std::thread> pool;
        std::atomic<size_t> next{0};
        const unsigned width = std::max(1u, std::thread::hardware_concurrency());
        for (unsigned t = 0; t < width; ++t)
            pool.emplace_back([&] {
                for (size_t i = next.fetch_add(1); i < cases.size(); i = next.fetch_add(1)) work(i);
            });
        for (auto& th : pool) th.join();
    } else {
        for (size_t i = 0; i < cases.size(); ++i) work(i);
    }

    if (output.format == "json") {
        json arr = json::array();
        for (const GridRow& r : rows) {
            json j;
            j["n"] = r.n;
            j["delta"] = r.delta;
            j["qgldim_lower"] = extnat_to_json(r.qg.lower);
            j["qgldim_upper"] = extnat_to_json(r.qg.upper);
            j["exact"] = r.qg.exact();
            j["findim"] = extnat_to_json(r.findim);
            j["gldim"] = extnat_to_json(r.gldim);
            arr.push_back(std::move(j));
        }
        output.deliver(arr.dump(2) + "\n", out);
        return 0;
    }
    std::ostringstream os;
    const bool csv = output.format == "csv";
    if (csv) os << "n,delta,qgldim_lower,qgldim_upper,exact,findim,gldim\n";
    for (const GridRow& r : rows) {
        std::string delta;
        for (size_t i = 0; i < r.delta.size(); ++i) delta += (i ? "|" : "") + std::to_string(r.delta[i]);
        if (csv) {
            os << r.n << "," << delta << "," << r.qg.lower.str() << "," << r.qg.upper.str() << ","
               << (r.qg.exact() ? "yes" : "no") << "," << r.findim.str() << "," << r.gldim.str() << "\n";
        } else {
            os << "n=" << r.n << " delta=" << delta << " qgldim=[" << r.qg.lower.str() << ","
               << r.qg.upper.str() << "]" << (r.qg.exact() ? " exact" : "") << " findim="
               << r.findim.str() << " gldim=" << r.gldim.str() << "\n";
        }
    }
    output.deliver(os.str(), out);
    return 0;
}

int cmd_check(const std::string& file, std::ostream& out, std::ostream& err) {
    std::ifstream in(file);
    if (!in) {
        err << "cannot open " << file << "\n";
        return 2;
    }
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        err << "malformed JSON: " << e.what() << "\n";
        return 2;
    }
    CertificateFile cert = [&]() -> CertificateFile { return certificate_from_json(j); }();
    QuasiResolutionCheck chk = check_quasi_resolution(cert.complex, cert.module);
    if (!chk.ok) {
        out << "invalid: " << chk.reason << "\n";
        return 1;
    }
    if (chk.score != cert.claimed_score) {
        out << "invalid: score " << chk.score << " does not match claimed " << cert.claimed_score
            << "\n";
        return 1;
    }
    out << "valid: score " << chk.score << " for " << to_string(cert.module) << "\n";
    return 0;
}

int cmd_search(const SerialAlgebra& a, const std::vector<Uniserial>& mods, const SearchCaps& caps,
               long long target, const OutputOpts& output, std::ostream& out) {
    const Uniserial m = mods.front();
    auto found = bounded_search(a, m, caps, target);
    if (output.format == "json") {
        json j;
        j["module"] = to_string(m);
        j["target_score"] = target;
        if (found) {
            QuasiResolutionCheck chk = check_quasi_resolution(*found, ModuleSum{{m}});
            j["found"] = true;
            j["score"] = chk.score;
            j["certificate"] = certificate_to_json(CertificateFile{a, ModuleSum{{m}}, chk.score, *found});
        } else {
            j["found"] = false;
        }
        output.deliver(j.dump(2) + "\n", out);
        return 0;
    }
    std::ostringstream os;
    if (found) {
        QuasiResolutionCheck chk = check_quasi_resolution(*found, ModuleSum{{m}});
        os << "found: " << found->brief() << " score " << chk.score << "\n";
        const std::string dir = output.certificate_dir();
        if (!dir.empty()) {
            fs::create_directories(dir);
            std::string name = "search-" + module_slug(m) + ".json";
            std::ofstream f(fs::path(dir) / name, std::ios::binary);
            f << certificate_to_json(CertificateFile{a, ModuleSum{{m}}, chk.score, *found}).dump(2)
              << "\n";
            os << "certificate: " << name << "\n";
        }
    } else {
        os << "none within caps (search budget answer, not a nonexistence proof)\n";
    }
    output.deliver(os.str(), out);
    return 0;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"homological invariants of finite-dimensional serial algebras"};
    app.require_subcommand(1);

    AlgebraOpts alg_info, alg_table, alg_resolve, alg_qpd, alg_qgldim, alg_search;
    ModuleOpts mod_resolve, mod_qpd, mod_search;
    OutputOpts out_info, out_table, out_resolve, out_qpd, out_qgldim, out_grid, out_search;
    bool par_table = false, par_qgldim = false, par_grid = false;

    auto* info = app.add_subcommand("info", "algebra data: Loewy lengths, injectives, counts");
    alg_info.attach(info);
    out_info.attach(info);

    auto* table = app.add_subcommand("table", "per-indecomposable invariant table");
    alg_table.attach(table);
    out_table.attach(table);
    table->add_flag("--parallel", par_table, "deterministic concurrent fan-out");

    auto* resolve = app.add_subcommand("resolve", "syzygy orbit and minimal resolution");
    alg_resolve.attach(resolve);
    mod_resolve.attach(resolve, true);
    out_resolve.attach(resolve);

    auto* qpd = app.add_subcommand("qpd", "quasi-projective dimension bounds with certificates");
    alg_qpd.attach(qpd);
    mod_qpd.attach(qpd, true);
    out_qpd.attach(qpd);

    auto* qgldim = app.add_subcommand("qgldim", "quasi-global, finitistic and global dimension");
    alg_qgldim.attach(qgldim);
    out_qgldim.attach(qgldim);
    qgldim->add_flag("--parallel", par_qgldim, "deterministic concurrent fan-out");

    auto* grid = app.add_subcommand("grid", "dimensions across all cyclic algebras in a range");
    int min_n = 2, max_n = 8;
    grid->add_option("--min-n", min_n, "smallest vertex count")->check(CLI::Range(2, 16));
    grid->add_option("--max-n", max_n, "largest vertex count")->check(CLI::Range(2, 16));
    out_grid.attach(grid);
    grid->add_flag("--parallel", par_grid, "deterministic concurrent fan-out");

    auto* check = app.add_subcommand("check", "validate a certificate file");
    std::string check_file;
    check->add_option("file", check_file, "certificate JSON file")->required();

    auto* search = app.add_subcommand("search", "bounded enumeration for a certificate");
    alg_search.attach(search);
    mod_search.attach(search, true);
    out_search.attach(search);
    SearchCaps caps;
    long long target = 0;
    search->add_option("--target", target, "largest acceptable score");
    search->add_option("--max-width", caps.max_width, "summands per degree");
    search->add_option("--max-length", caps.max_length, "largest top degree");
    search->add_option("--max-total-dim", caps.max_total_dim, "total dimension cap");
    search->add_option("--budget", caps.budget, "enumeration step budget");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    }

    try {
        if (info->parsed()) return cmd_info(alg_info.resolve(), out_info, out);
        if (table->parsed()) {
            SerialAlgebra a = alg_table.resolve();
            QpdEngine eng(a, QpdEngine::Options{.build_certificates = true, .parallel = par_table});
            auto rows = build_table(eng, out_table.certificate_dir());
            out_table.deliver(render_table(rows, out_table.format), out);
            return 0;
        }
        if (resolve->parsed()) {
            SerialAlgebra a = alg_resolve.resolve();
            return cmd_resolve(a, mod_resolve.resolve(a), out_resolve, out);
        }
        if (qpd->parsed()) {
            SerialAlgebra a = alg_qpd.resolve();
            return cmd_qpd(a, mod_qpd.resolve(a), out_qpd, out);
        }
        if (qgldim->parsed()) return cmd_qgldim(alg_qgldim.resolve(), out_qgldim, par_qgldim, out);
        if (grid->parsed()) {
            if (max_n < min_n) throw CLI::ValidationError("grid", "--max-n below --min-n");
            return cmd_grid(min_n, max_n, out_grid, par_grid, out);
        }
        if (check->parsed()) {
            try {
                return cmd_check(check_file, out, err);
            } catch (const ParseError& e) {
                err << "malformed certificate: " << e.what() << "\n";
                return 2;
            } catch (const std::domain_error& e) {
                out << "invalid: " << e.what() << "\n";
                return 1;
            }
        }
        if (search->parsed()) {
            SerialAlgebra a = alg_search.resolve();
            return cmd_search(a, mod_search.resolve(a), caps, target, out_search, out);
        }
    } catch (const CLI::ValidationError& e) {
        err << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        err << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    err << "no subcommand\n";
    return 2;
}

}  // namespace serialhom
