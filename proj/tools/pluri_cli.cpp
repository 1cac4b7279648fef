#include <algorithm>
#include <chrono>
#include <filesystem>
#include <functional>
#include <future>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "pluri/cartan.hpp"
#include "pluri/io.hpp"
#include "pluri/models.hpp"
#include "pluri/replication.hpp"
#include "pluri/toric.hpp"

using json = nlohmann::ordered_json;
using namespace pluri;
namespace fs = std::filesystem;

namespace {

constexpr const char* kSchema = "pluri-report/1";

/* verdict failure, reported normally with exit code 1 */
struct Outcome {
    json body;
    bool success = true;
};

struct Options {
    std::string input, target, field, format = "text", flavor = "all", classes, theta, lambda = "lambda";
    std::vector<std::string> images;
    int truncate = -1, window = -1, degree = -1;
    bool all = false;
};

std::string bd(Bideg b) { return "(" + std::to_string(b.first) + "," + std::to_string(b.second) + ")"; }

json checks_json(const std::vector<CheckLine>& cs) {
    json a = json::array();
    for (const auto& c : cs) {
        json o{{"check", c.name}, {"ok", c.ok}};
        if (!c.detail.empty()) o["detail"] = c.detail;
        a.push_back(o);
    }
    return a;
}

/* ---- input ---- */

Algebra adjust(Algebra a, const Options& o) {
    if (!o.field.empty()) a.set_field(join(a.field(), parse_field_tag(o.field)));
    if (o.truncate >= 0) a.set_truncation(o.truncate);
    return a;
}

Algebra algebra_input(const std::string& path, const Options& o) {
    std::string text = read_file(path);
    std::string kind = detect_kind(text);
    if (kind == "tcbba") return adjust(parse_tcbba(text).A, o);
    if (kind != "algebra") throw InputError(1, 1, "expected an algebra file, found '" + kind + "'");
    return adjust(parse_algebra(text), o);
}

int default_window(const Algebra& a, const Options& o) {
    if (o.window >= 0) return o.window;
    auto mw = a.max_window();
    int w = mw ? *mw : a.truncation() - 2;
    return std::max(0, std::min(w, a.truncation() - 2));
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

/* ---- cohomology tables ---- */

json flavor_table(const Bicomplex& b, Flavor f, std::optional<int> window) {
    auto h = cohomology(b, f, window);
    json t = json::object();
    for (const auto& [k, d] : h.table()) {
        if (d == 0) continue;
        if (f == Flavor::dR) t[std::to_string(k.first)] = d;
        else t[bd(k)] = d;
    }
    return t;
}

json all_tables(const Bicomplex& b, std::optional<int> window, const std::string& which, bool single) {
    json t = json::object();
    for (Flavor f : kAllFlavors) {
        if (single && f != Flavor::dR) continue;
        if (which != "all" && parse_flavor(which) != f) continue;
        t[to_string(f)] = flavor_table(b, f, window);
    }
    return t;
}

Outcome cmd_cohomology(const Options& o) {
    std::string text = read_file(o.input);
    json r;
    if (detect_kind(text) == "bicomplex") {
        Bicomplex b = parse_bicomplex(text);
        std::optional<int> w;
        if (o.window >= 0) w = o.window;
        r["object"] = "bicomplex";
        r["cohomology"] = all_tables(b, w, o.flavor, false);
    } else {
        Algebra a = algebra_input(o.input, o);
        int w = default_window(a, o);
        r["object"] = a.bigraded() ? "bigraded algebra" : "graded algebra";
        r["window"] = w;
        r["cohomology"] = all_tables(a.underlying_bicomplex(w), w, o.flavor, !a.bigraded());
    }
    return {r, true};
}

Outcome cmd_ddbar(const Options& o) {
    std::string text = read_file(o.input);
    Bicomplex b;
    std::optional<int> w;
    if (o.window >= 0) w = o.window;
    if (detect_kind(text) == "bicomplex") b = parse_bicomplex(text);
    else {
        Algebra a = algebra_input(o.input, o);
        if (!a.bigraded()) throw InputError(1, 1, "ddbar needs a bigraded algebra");
        w = default_window(a, o);
        b = a.underlying_bicomplex(*w);
    }
    auto c = ddbar_property(b, w);
    json r;
    if (w) r["window"] = *w;
    r["verdict"] = c.verdict;
    r["count_verdict"] = c.count_verdict;
    json t = json::object();
    for (const auto& [k, v] : c.table) t[std::to_string(k)] = {{"h_BC", v[0]}, {"h_A", v[1]}, {"b", v[2]}};
    r["table"] = t;
    if (c.witness_degree) r["witness_degree"] = *c.witness_degree;
    return {r, c.verdict};
}

Outcome cmd_qiso(const Options& o) {
    if (o.target.empty()) throw InputError(1, 1, "qiso needs --target");
    Algebra s = algebra_input(o.input, o), t = algebra_input(o.target, o);
    if (s.bigraded() != t.bigraded()) throw InputError(1, 1, "source and target gradings differ");
    Morphism f{&s, &t, std::vector<Element>(s.ngens())};
    for (int g = 0; g < s.ngens(); ++g)
        if (t.find(s.gen(g).name)) f.images[g] = t.g(s.gen(g).name);
    for (const auto& spec : o.images) {
        auto eq = spec.find('=');
        if (eq == std::string::npos) throw InputError(1, 1, "image must read GEN=EXPR: " + spec);
        std::string g = spec.substr(0, eq);
        if (!s.find(g)) throw InputError(1, 1, "unknown source generator " + g);
        f.images[s.index(g)] = t.parse(spec.substr(eq + 1));
    }
    int w = std::min(default_window(s, o), default_window(t, o));
    json r;
    r["window"] = w;
    auto mr = check_morphism(f, s.bigraded() && s.has_real_structure() && t.has_real_structure());
    r["morphism"] = mr.ok;
    if (!mr.ok) {
        r["witness"] = mr.witness;
        r["verdict"] = false;
        return {r, false};
    }
    bool ok;
    if (s.bigraded()) {
        Bicomplex bs = s.underlying_bicomplex(w), bt = t.underlying_bicomplex(w);
        auto q = is_pluripotential_qiso(bs, bt, f.bicomplex_map(bs, bt, w), w);
        ok = q.verdict;
        json fl = json::array();
        for (const auto& [x, b] : q.failures) fl.push_back(to_string(x) + bd(b));
        r["failures"] = fl;
        r["fast_path_applicable"] = q.fast_path_applicable;
    } else {
        auto fail = dga_qiso_failure(f, w);
        ok = !fail;
        if (fail) r["first_failing_degree"] = *fail;
    }
    r["verdict"] = ok;
    return {r, ok};
}

json generators_json(const Algebra& a, const std::vector<Element>* images, const Algebra* target) {
    json gs = json::array();
    for (int g = 0; g < a.ngens(); ++g) {
        const auto& G = a.gen(g);
        json j{{"name", G.name}};
        if (a.bigraded()) j["bidegree"] = bd(G.bideg());
        else j["degree"] = G.degree();
        if (a.bigraded()) {
            j["del"] = a.str(a.del_of(g));
            j["delbar"] = a.str(a.delbar_of(g));
        } else {
            j["d"] = a.str(a.del_of(g));
        }
        if (images && target) j["image"] = target->str((*images)[g]);
        gs.push_back(j);
    }
    return gs;
}

Outcome cmd_minimal_model(const Options& o) {
    Algebra a = algebra_input(o.input, o);
    int N = o.degree >= 0 ? o.degree : 6;
    auto mm = minimal_model(a, N);
    json r;
    r["N"] = N;
    json dims = json::object();
    for (const auto& [k, v] : mm.by_degree) dims[std::to_string(k)] = v.size();
    r["dims"] = dims;
    r["generators"] = generators_json(*mm.model, &mm.images, mm.target.get());
    r["certified_through"] = mm.certified;
    r["log"] = mm.log;
    return {r, mm.certified >= N - 1};
}

Outcome cmd_koszul(const Options& o) {
    Algebra a = algebra_input(o.input, o);
    int N = o.degree >= 0 ? o.degree : 7;
    auto km = a.bigraded() ? bigraded_koszul_model(a, N) : koszul_model(a, N);
    json r;
    r["bigraded"] = a.bigraded();
    r["generators"] = generators_json(*km.model, &km.images, km.target.get());
    r["verified_through"] = km.through;
    r["verdict"] = km.verified;
    if (!km.failure.empty()) r["failure"] = km.failure;
    if (a.bigraded() && km.verified) {
        auto c = ddbar_property(km.model->underlying_bicomplex(km.through), km.through);
        r["ddbar_property"] = c.verdict;
    }
    return {r, km.verified};
}

Outcome cmd_regseq(const Options& o) {
    Algebra a = algebra_input(o.input, o);
    int N = o.degree >= 0 ? o.degree : 20;
    auto rs = is_regular_sequence(a, N);
    json r;
    r["N"] = N;
    r["relation_degrees"] = rs.degrees;
    r["quotient_series"] = rs.quotient;
    r["product_series"] = rs.product;
    r["verdict"] = rs.verdict;
    r["statement"] = rs.verdict ? "regular up to degree " + std::to_string(N) : "not regular";
    if (rs.first_mismatch) r["first_mismatch"] = *rs.first_mismatch;
    return {r, rs.verdict};
}

Outcome cmd_massey(const Options& o) {
    Algebra a = algebra_input(o.input, o);
    auto parts = split(o.classes, ',');
    if (parts.size() != 3) throw InputError(1, 1, "--classes needs three comma separated expressions");
    auto res = triple_massey(a, a.parse(parts[0]), a.parse(parts[1]), a.parse(parts[2]));
    json r;
    r["classes"] = parts;
    r["defined"] = res.defined;
    if (!res.defined) {
        r["failure"] = res.failure;
        return {r, false};
    }
    r["representative"] = a.str(res.representative);
    json ind = json::array();
    for (const auto& x : res.indeterminacy) ind.push_back(a.str(x));
    r["indeterminacy"] = ind;
    r["vanishes"] = res.vanishes;
    return {r, true};
}

Outcome cmd_toric(const std::string& sub, const Options& o) {
    Fan f = parse_fan(read_file(o.input));
    json r;
    r["fan"] = f.name;
    r["rank"] = f.n;
    r["rays"] = f.rays.size();
    if (sub == "equivariant") {
        int N = o.degree >= 0 ? o.degree : 2 * f.n + 4;
        Algebra h = equivariant_cohomology(f, N);
        json rel = json::array();
        for (const auto& x : h.relations()) rel.push_back(h.str(x));
        r["stanley_reisner"] = rel;
        r["hilbert_series"] = hilbert_series(h, N);
        return {r, true};
    }
    if (sub == "ordinary") {
        auto b = betti_numbers(f);
        auto hv = h_vector(f);
        bool pal = std::equal(b.begin(), b.end(), b.rbegin());
        bool match = b.size() == hv.size();
        for (size_t j = 0; match && j < b.size(); ++j) match = b[j] == hv[j];
        r["betti"] = b;
        r["h_vector"] = hv;
        r["palindromic"] = pal;
        r["matches_h_vector"] = match;
        return {r, pal && match};
    }
    int N = o.degree >= 0 ? o.degree : 20;
    auto fr = freeness_check(f, N);
    r["N"] = N;
    r["equivariant_series"] = fr.equivariant;
    r["predicted_series"] = fr.predicted;
    r["verdict"] = fr.verdict;
    if (fr.first_mismatch) r["first_mismatch"] = *fr.first_mismatch;
    return {r, fr.verdict};
}

TCbba tcbba_input(const Options& o) {
    TCbba t = parse_tcbba(read_file(o.input));
    t.A = adjust(t.A, o);
    return t;
}

Outcome cmd_cartan(const std::string& sub, const Options& o) {
    TCbba t = tcbba_input(o);
    CartanModel cm = cartan_model(t);
    json r;
    r["torus_rank"] = t.rank;
    if (sub == "build") {
        r["generators"] = generators_json(cm.C, nullptr, nullptr);
        auto v = cm.C.validate();
        r["dT_squared_zero"] = v.ok;
        if (!v.ok) r["witness"] = v.witness;
        return {r, v.ok};
    }
    int w = default_window(t.A, o);
    r["window"] = w;
    if (sub == "extend") {
        if (o.theta.empty()) throw InputError(1, 1, "extend needs --theta");
        Element th = t.A.parse(o.theta);
        auto e = extend_to_equivariant(t, cm, th, w);
        r["theta"] = t.A.str(th);
        r["ok"] = e.ok;
        if (e.ok) {
            r["extension"] = cm.C.str(e.extension);
            r["stages"] = e.stages;
        } else {
            r["failure"] = e.failure;
            if (e.failed_stage) r["failed_stage"] = *e.failed_stage;
        }
        return {r, e.ok};
    }
    auto c = cartan_ddbar_check(t, cm, w);
    r["verdict"] = c.verdict;
    r["surjective_onto_A"] = c.surjective;
    json tab = json::object();
    for (const auto& [k, v] : c.table) tab[std::to_string(k)] = {{"h_BC", v[0]}, {"h_A", v[1]}, {"b", v[2]}};
    r["table"] = tab;
    return {r, c.verdict};
}

/* ---- replication ---- */

json obstruction_json(const ObstructionReport& ob) {
    json r;
    r["lambda"] = ob.lambda.str();
    r["pi4_V_basis"] = ob.pi4_V_basis;
    r["pi4_W_basis"] = ob.pi4_W_basis;
    json m = json::object();
    for (size_t j = 0; j < ob.pi4_matrix.size(); ++j) {
        json col = json::array();
        for (const auto& c : ob.pi4_matrix[j]) col.push_back(c.str());
        m[ob.pi4_V_basis.at(j)] = col;
    }
    r["pi4_map"] = m;
    r["kernel_dR_to_A"] = ob.kernel_basis;
    r["beta_coefficient_p3"] = ob.coeff_p3.str();
    r["beta_coefficient_p4"] = ob.coeff_p4.str();
    r["obstructed"] = ob.obstructed;
    r["checks"] = checks_json(ob.checks);
    return r;
}

json mhs_json(const MhsReport& m) {
    json r;
    r["lambda"] = m.lambda.str();
    json c = json::array(), res = json::array();
    for (const auto& x : m.cls) c.push_back(x.str());
    for (const auto& x : m.residue) res.push_back(x.str());
    r["class_on_p1_p4"] = c;
    r["residue_mod_Q"] = res;
    r["trivial"] = m.trivial;
    r["checks"] = checks_json(m.checks);
    return r;
}

Outcome cmd_replicate(const std::string& sub, const Options& o) {
    json r;
    if (sub == "flag") {
        auto f = flag_certificate(o.degree >= 0 ? o.degree : 9);
        r["betti"] = f.betti;
        r["rational_model"] = generators_json(*f.rational.model, nullptr, nullptr);
        r["complex_model"] = generators_json(*f.complex.model, nullptr, nullptr);
        r["checks"] = checks_json(f.checks);
        r["verdict"] = f.ok;
        return {r, f.ok};
    }
    if (sub == "complete-w") {
        int w = o.window >= 0 ? o.window : 6;
        auto c = complete_lambda_W(w);
        r["window"] = w;
        r["added_blocks"] = c.added;
        r["generators"] = c.model->ngens();
        r["log"] = c.log;
        if (!c.ok) r["failure"] = c.failure;
        r["verdict"] = c.ok;
        return {r, c.ok};
    }
    Scalar lambda = Scalar::parse(o.lambda);
    if (sub == "mhs") {
        auto m = mhs_extension(lambda);
        auto ob = obstruction(lambda);
        r["mhs"] = mhs_json(m);
        r["obstructed"] = ob.obstructed;
        r["agree"] = m.trivial != ob.obstructed;
        bool ok = all_ok(m.checks) && all_ok(ob.checks) && m.trivial != ob.obstructed;
        r["verdict"] = ok;
        return {r, ok};
    }
    int w = o.window >= 0 ? o.window : 4;
    auto v = build_V(o.degree >= 0 ? o.degree : 6);
    json dims = json::object();
    for (const auto& [k, d] : v.dims) dims[std::to_string(k)] = d;
    r["V_dims"] = dims;
    r["degree6_kernel_dim"] = v.kernel_dim;
    r["V_checks"] = checks_json(v.checks);
    auto wr = build_W(w);
    r["W_window"] = w;
    r["W_checks"] = checks_json(wr.checks);
    auto ob = obstruction(lambda);
    r["obstruction"] = obstruction_json(ob);
    bool ok = v.ok && wr.ok && all_ok(ob.checks);
    r["verdict"] = ok;
    r["strong_formality_over_Q"] = ob.obstructed ? "obstructed" : "unobstructed";
    return {r, ok};
}

/* ---- fixture runner ---- */

struct Job {
    std::string name;
    std::function<Outcome()> run;
};

Outcome expect_invalid(const std::string& path) {
    json r;
    try {
        std::string text = read_file(path);
        std::string kind = detect_kind(text);
        if (kind == "tcbba") cartan_model(parse_tcbba(text));
        else if (kind == "algebra") parse_algebra(text);
        else if (kind == "fan") parse_fan(text);
        else parse_bicomplex(text);
        r["rejected"] = false;
        return {r, false};
    } catch (const std::exception& e) {
        r["rejected"] = true;
        r["reason"] = e.what();
        return {r, true};
    }
}

Outcome check_fixture(const fs::path& p, Options o) {
    o.input = p.string();
    std::string text = read_file(o.input);
    std::string kind = detect_kind(text);
    if (kind == "fan") {
        auto a = cmd_toric("ordinary", o);
        o.degree = 20;
        auto b = cmd_toric("freeness", o);
        json r{{"betti", a.body["betti"]}, {"matches_h_vector", a.body["matches_h_vector"]},
               {"freeness_through_20", b.body["verdict"]}};
        return {r, a.success && b.success};
    }
    if (kind == "tcbba") {
        TCbba t = parse_tcbba(text);
        CartanModel cm = cartan_model(t);
        return {json{{"dT_squared_zero", cm.C.validate().ok}}, cm.C.validate().ok};
    }
    if (kind == "algebra") {
        Algebra a = parse_algebra(text);
        return {json{{"valid", true}, {"generators", a.ngens()}}, true};
    }
    Bicomplex b = parse_bicomplex(text);
    return {json{{"valid", true}, {"ddbar", ddbar_property(b).verdict}}, true};
}

Outcome cmd_validate(const Options& o) {
    if (!o.all) throw InputError(1, 1, "validate needs --all");
    std::vector<Job> jobs;
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(fixture_dir()))
        if (e.is_regular_file()) files.push_back(e.path());
    std::sort(files.begin(), files.end());
    for (const auto& p : files) {
        std::string stem = p.filename().string();
        if (p.extension() == ".md" || p.extension() == ".txt") continue;
        if (stem.rfind("invalid_", 0) == 0) jobs.push_back({"fixture " + stem + " (must be rejected)", [p] { return expect_invalid(p.string()); }});
        else jobs.push_back({"fixture " + stem, [p, o] { return check_fixture(p, o); }});
    }
    Options s5 = o;
    s5.lambda = "lambda";
    jobs.push_back({"replicate connected sum (lambda formal)", [s5] { return cmd_replicate("section5", s5); }});
    for (const char* l : {"0", "1", "7", "-3/2", "lambda", "2*lambda+1"}) {
        Options m = o;
        m.lambda = l;
        jobs.push_back({std::string("replicate mhs (lambda = ") + l + ")", [m] { return cmd_replicate("mhs", m); }});
    }
    jobs.push_back({"Lambda W window 6", [] {
                        auto w = build_W(6);
                        json r{{"checks", checks_json(w.checks)}};
                        return Outcome{r, w.ok};
                    }});
    jobs.push_back({"replicate flag", [o] { return cmd_replicate("flag", o); }});

    std::vector<std::future<Outcome>> fut;
    for (auto& j : jobs)
        fut.push_back(std::async(std::launch::async, [&j]() -> Outcome {
            try {
                return j.run();
            } catch (const std::exception& e) {
                return {json{{"error", e.what()}}, false};
            }
        }));
    json r = json::array();
    bool ok = true;
    for (size_t i = 0; i < jobs.size(); ++i) {
        Outcome out = fut[i].get();
        ok = ok && out.success;
        r.push_back({{"job", jobs[i].name}, {"pass", out.success}, {"report", out.body}});
    }
    return {json{{"jobs", r}, {"all_pass", ok}}, ok};
}

/* ---- output ---- */

void render_text(std::ostream& os, const json& j, int indent) {
    std::string pad(indent, ' ');
    auto scalar = [](const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
    auto flat = [&](const json& v) {
        if (!v.is_array()) return false;
        for (const auto& x : v)
            if (x.is_structured()) return false;
        return true;
    };
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) {
            if (v.is_structured() && !flat(v) && !(v.is_object() && v.empty())) {
                os << pad << k << ":\n";
                render_text(os, v, indent + 2);
            } else if (flat(v)) {
                os << pad << k << ": ";
                for (size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << scalar(v[i]);
                os << "\n";
            } else {
                os << pad << k << ": " << (v.is_object() ? "-" : scalar(v)) << "\n";
            }
        }
    } else if (j.is_array()) {
        for (const auto& v : j) {
            if (v.is_object()) {
                os << pad << "-\n";
                render_text(os, v, indent + 2);
            } else {
                os << pad << "- " << scalar(v) << "\n";
            }
        }
    } else {
        os << pad << scalar(j) << "\n";
    }
}

int emit(const std::string& command, const Options& o, const std::function<Outcome()>& f) {
    auto t0 = std::chrono::steady_clock::now();
    json rep;
    rep["schema"] = kSchema;
    rep["command"] = command;
    if (!o.input.empty()) rep["input"] = o.input;
    int code;
    try {
        Outcome out = f();
        rep["success"] = out.success;
        rep["result"] = out.body;
        code = out.success ? 0 : 1;
    } catch (const InputError& e) {
        rep["error"] = {{"kind", "input"}, {"line", e.line}, {"column", e.col}, {"message", e.what()}};
        code = 2;
    } catch (const std::exception& e) {
        rep["error"] = {{"kind", "input"}, {"message", e.what()}};
        code = 2;
    }
    if (o.format == "json") {
        std::cout << rep.dump(2) << "\n";
    } else {
        render_text(std::cout, rep, 0);
        double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::ostringstream t;
        t.precision(3);
        t << std::fixed << s;
        std::cout << "elapsed: " << t.str() << " s\n";
    }
    if (code == 2) std::cerr << "error: " << rep["error"]["message"].get<std::string>() << "\n";
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pluri: pluripotential homotopy computations"};
    app.require_subcommand(1);
    Options o;
    auto common = [&](CLI::App* c, bool input = true) {
        if (input) c->add_option("--input", o.input, "input file")->required();
        c->add_option("--field", o.field, "coefficient field Q|Qi|Qlambda|Qilambda");
        c->add_option("--truncate", o.truncate, "truncation bound N");
        c->add_option("--format", o.format, "text|json")->check(CLI::IsMember({"text", "json"}));
    };
    auto window = [&](CLI::App* c) { c->add_option("--window", o.window, "largest total degree considered"); };
    auto degree = [&](CLI::App* c) { c->add_option("--degree", o.degree, "degree bound N"); };

    auto* coh = app.add_subcommand("cohomology", "dimension tables of all cohomologies");
    common(coh);
    window(coh);
    coh->add_option("--flavor", o.flavor, "all|dR|del|delbar|BC|A");
    auto* dd = app.add_subcommand("ddbar", "ddbar-property certificate");
    common(dd);
    window(dd);
    auto* qi = app.add_subcommand("qiso", "pluripotential quasi-isomorphism check of a morphism");
    common(qi);
    window(qi);
    qi->add_option("--target", o.target, "target algebra")->required();
    qi->add_option("--image", o.images, "GEN=EXPR (default: same-name generators, others to 0)");
    auto* mm = app.add_subcommand("minimal-model", "Sullivan minimal model");
    common(mm);
    degree(mm);
    auto* ko = app.add_subcommand("koszul", "Koszul model (bigraded for bigraded input)");
    common(ko);
    degree(ko);
    auto* rs = app.add_subcommand("regseq", "regular sequence test by Hilbert series");
    common(rs);
    degree(rs);
    auto* ma = app.add_subcommand("massey", "triple Massey product");
    common(ma);
    ma->add_option("--classes", o.classes, "u,v,w")->required();

    auto* to = app.add_subcommand("toric", "toric fixtures");
    to->require_subcommand(1);
    std::string tsub;
    for (const char* s : {"equivariant", "ordinary", "freeness"}) {
        auto* c = to->add_subcommand(s);
        common(c);
        degree(c);
        c->callback([&tsub, s] { tsub = s; });
    }
    auto* ca = app.add_subcommand("cartan", "Cartan model of a torus action");
    ca->require_subcommand(1);
    std::string csub;
    for (const char* s : {"build", "extend", "ddbar"}) {
        auto* c = ca->add_subcommand(s);
        common(c);
        window(c);
        if (std::string(s) == "extend") c->add_option("--theta", o.theta, "closed pure-type element")->required();
        c->callback([&csub, s] { csub = s; });
    }
    auto* re = app.add_subcommand("replicate", "worked examples");
    re->require_subcommand(1);
    std::string rsub;
    for (const char* s : {"section5", "mhs", "flag", "complete-w"}) {
        auto* c = re->add_subcommand(s);
        common(c, false);
        if (std::string(s) != "complete-w") degree(c);
        if (std::string(s) == "complete-w") window(c);
        if (std::string(s) == "section5" || std::string(s) == "mhs") c->add_option("--lambda", o.lambda, "scalar, e.g. lambda, 7, -3/2");
        if (std::string(s) == "section5") window(c);
        c->callback([&rsub, s] { rsub = s; });
    }
    auto* va = app.add_subcommand("validate", "run every shipped fixture");
    common(va, false);
    va->add_flag("--all", o.all, "all fixtures");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    if (*coh) return emit("cohomology", o, [&] { return cmd_cohomology(o); });
    if (*dd) return emit("ddbar", o, [&] { return cmd_ddbar(o); });
    if (*qi) return emit("qiso", o, [&] { return cmd_qiso(o); });
    if (*mm) return emit("minimal-model", o, [&] { return cmd_minimal_model(o); });
    if (*ko) return emit("koszul", o, [&] { return cmd_koszul(o); });
    if (*rs) return emit("regseq", o, [&] { return cmd_regseq(o); });
    if (*ma) return emit("massey", o, [&] { return cmd_massey(o); });
    if (*to) return emit("toric " + tsub, o, [&] { return cmd_toric(tsub, o); });
    if (*ca) return emit("cartan " + csub, o, [&] { return cmd_cartan(csub, o); });
    if (*re) return emit("replicate " + rsub, o, [&] { return cmd_replicate(rsub, o); });
    return emit("validate", o, [&] { return cmd_validate(o); });
}
