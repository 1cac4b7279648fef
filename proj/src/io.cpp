#include "pluri/io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "pluri/cartan.hpp"
#include "pluri/toric.hpp"

namespace pluri {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError(0, 0, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

namespace {

/* scanner over one line; columns are 1-based */
struct Cursor {
    const std::string& s;
    int line;
    size_t pos = 0;

    [[noreturn]] void fail(const std::string& msg) const { throw InputError(line, static_cast<int>(pos) + 1, msg); }
    void ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool done() {
        ws();
        return pos >= s.size();
    }
    bool peek(char c) {
        ws();
        return pos < s.size() && s[pos] == c;
    }
    void expect(char c) {
        if (!peek(c)) fail(std::string("expected '") + c + "'");
        ++pos;
    }
    std::string word() {
        ws();
        size_t st = pos;
        while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_' || s[pos] == '\'' ||
                                  s[pos] == '-' || s[pos] == '.'))
            ++pos;
        if (st == pos) fail("expected a word");
        return s.substr(st, pos - st);
    }
    long integer() {
        ws();
        size_t st = pos;
        if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
        size_t ds = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (ds == pos) {
            pos = st;
            fail("expected an integer");
        }
        return std::stol(s.substr(st, pos - st));
    }
    Bideg bideg() {
        expect('(');
        int p = static_cast<int>(integer());
        expect(',');
        int q = static_cast<int>(integer());
        expect(')');
        return {p, q};
    }
    std::string rest() {
        ws();
        std::string r = s.substr(pos);
        pos = s.size();
        while (!r.empty() && std::isspace(static_cast<unsigned char>(r.back()))) r.pop_back();
        return r;
    }
    void end() {
        if (!done()) fail("unexpected trailing input");
    }
};

struct Line {
    int no;
    std::string text;
};

/* non-empty lines with comments stripped */
std::vector<Line> lines_of(const std::string& text) {
    std::vector<Line> out;
    std::istringstream in(text);
    std::string l;
    int no = 0;
    while (std::getline(in, l)) {
        ++no;
        if (auto h = l.find('#'); h != std::string::npos) l.erase(h);
        if (!l.empty() && l.back() == '\r') l.pop_back();
        bool blank = true;
        for (char c : l)
            if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
        if (!blank) out.push_back({no, l});
    }
    return out;
}

Scalar scalar_at(Cursor& c, const std::string& text) {
    size_t base = c.pos;
    try {
        return Scalar::parse(text);
    } catch (const ParseError& e) {
        c.pos = base + e.pos;
        c.fail(std::string("bad scalar: ") + e.what());
    }
}

std::string bd(Bideg b) { return "(" + std::to_string(b.first) + "," + std::to_string(b.second) + ")"; }

}  // namespace

/* ---- bicomplex ---- */

Bicomplex parse_bicomplex(const std::string& text) {
    Bicomplex b;
    auto ls = lines_of(text);
    if (ls.empty()) throw InputError(1, 1, "empty bicomplex file");
    bool header = false;
    struct Entry {
        int line;
        std::string kind;
        Bideg at;
        long row, col;
        Scalar v;
    };
    std::vector<Entry> entries;
    for (const auto& l : ls) {
        Cursor c{l.text, l.no};
        std::string kw = c.word();
        if (!header) {
            if (kw != "bicomplex") c.fail("expected header 'bicomplex'");
            header = true;
            c.rest();
            continue;
        }
        if (kw == "dim") {
            Bideg at = c.bideg();
            long n = c.integer();
            c.end();
            if (n < 0) c.fail("negative dimension");
            if (b.dims.count(at)) c.fail("duplicate dimension for " + bd(at));
            if (n > 0) b.dims[at] = static_cast<int>(n);
        } else if (kw == "del" || kw == "delbar" || kw == "sigma") {
            Bideg at = c.bideg();
            long row = c.integer();
            long col = c.integer();
            size_t sp = c.pos;
            c.ws();
            sp = c.pos;
            std::string st = c.rest();
            if (st.empty()) c.fail("missing scalar");
            Cursor sc{l.text, l.no, sp};
            Scalar v = scalar_at(sc, st);
            entries.push_back({l.no, kw, at, row, col, v});
        } else {
            Cursor k{l.text, l.no};
            k.ws();
            k.fail("unknown keyword '" + kw + "'");
        }
    }
    auto tgt = [](const std::string& kind, Bideg at) -> Bideg {
        if (kind == "del") return {at.first + 1, at.second};
        if (kind == "delbar") return {at.first, at.second + 1};
        return {at.second, at.first};
    };
    for (const auto& e : entries) {
        Bideg t = tgt(e.kind, e.at);
        int sd = b.dim(e.at), td = b.dim(t);
        if (e.col < 0 || e.col >= sd) throw InputError(e.line, 1, e.kind + " " + bd(e.at) + ": column out of range");
        if (e.row < 0 || e.row >= td) throw InputError(e.line, 1, e.kind + " " + bd(e.at) + ": row out of range");
        std::map<Bideg, LinearMap>* tab;
        if (e.kind == "del") tab = &b.del;
        else if (e.kind == "delbar") tab = &b.delbar;
        else {
            if (!b.sigma) b.sigma.emplace();
            tab = &*b.sigma;
        }
        auto it = tab->find(e.at);
        if (it == tab->end()) it = tab->emplace(e.at, LinearMap(sd, td)).first;
        SparseVec add{{static_cast<int>(e.row), e.v}};
        it->second.cols[e.col] = vec::add(it->second.cols[e.col], add);
    }
    if (auto err = b.check()) throw InputError(ls.front().no, 1, "invalid bicomplex: " + *err);
    return b;
}

std::string serialize_bicomplex(const Bicomplex& b) {
    std::ostringstream o;
    o << "bicomplex\n";
    for (const auto& [at, n] : b.dims)
        if (n > 0) o << "dim " << bd(at) << " " << n << "\n";
    auto dump = [&](const char* kind, const std::map<Bideg, LinearMap>& tab) {
        for (const auto& [at, m] : tab) {
            std::vector<std::tuple<int, int, std::string>> es;
            for (int j = 0; j < m.src; ++j)
                for (const auto& [r, v] : m.cols[j]) es.emplace_back(r, j, v.str());
            std::sort(es.begin(), es.end(), [](const auto& x, const auto& y) {
                return std::tie(std::get<0>(x), std::get<1>(x)) < std::tie(std::get<0>(y), std::get<1>(y));
            });
            for (const auto& [r, j, s] : es) o << kind << " " << bd(at) << " " << r << " " << j << " " << s << "\n";
        }
    };
    dump("del", b.del);
    dump("delbar", b.delbar);
    if (b.sigma) dump("sigma", *b.sigma);
    return o.str();
}

/* ---- algebra ---- */

namespace {

struct AlgebraLines {
    std::map<std::string, int> gen_line, del_line, delbar_line;
    std::vector<int> rel_line;
    int header = 1;
};

Element parse_expr_at(const Algebra& a, Cursor& c, const std::string& text) {
    size_t base = c.pos;
    try {
        return a.parse(text);
    } catch (const ParseError& e) {
        c.pos = base + e.pos;
        c.fail(std::string("bad expression: ") + e.what());
    } catch (const AlgebraError& e) {
        c.pos = base;
        c.fail(e.what());
    } catch (const std::out_of_range& e) {
        c.pos = base;
        c.fail("unknown generator in expression");
    }
}

/* shared by algebra and tcbba files; unknown keywords go to extra */
Algebra parse_algebra_lines(const std::vector<Line>& ls, const std::string& header_kw, AlgebraLines& where,
                            std::vector<Line>* extra) {
    if (ls.empty()) throw InputError(1, 1, "empty file");
    {
        Cursor c{ls.front().text, ls.front().no};
        if (c.word() != header_kw) c.fail("expected header '" + header_kw + "'");
        where.header = ls.front().no;
    }
    bool bigraded = true;
    std::optional<int> trunc;
    std::optional<FieldTag> field;
    bool real = false;
    struct Pending {
        Line l;
        size_t pos;
        std::string kind, gen;
    };
    std::vector<Pending> diffs, rels;
    std::vector<std::tuple<int, std::string, std::string>> pairs;  // line, a, b
    struct GenDecl {
        int line;
        std::string name;
        int p, q, w;
    };
    std::vector<GenDecl> gens;
    bool seen_gen = false, seen_grading = false;
    for (size_t li = 1; li < ls.size(); ++li) {
        const Line& l = ls[li];
        Cursor c{l.text, l.no};
        c.ws();
        size_t kwpos = c.pos;
        std::string kw = c.word();
        if (kw == "grading") {
            if (seen_gen) c.fail("grading must precede generators");
            std::string g = c.word();
            c.end();
            if (g == "bigraded") bigraded = true;
            else if (g == "single") bigraded = false;
            else c.fail("grading is 'bigraded' or 'single'");
            seen_grading = true;
        } else if (kw == "field") {
            std::string f = c.word();
            c.end();
            try {
                field = parse_field_tag(f);
            } catch (const std::exception&) {
                c.fail("unknown field '" + f + "'");
            }
        } else if (kw == "truncate") {
            long n = c.integer();
            c.end();
            if (n < 1) c.fail("truncation must be positive");
            trunc = static_cast<int>(n);
        } else if (kw == "real") {
            c.end();
            real = true;
        } else if (kw == "gen") {
            seen_gen = true;
            std::string name = c.word();
            int p, q = 0;
            if (c.peek('(')) {
                if (!bigraded) c.fail("singly graded generators take a plain degree");
                auto b = c.bideg();
                p = b.first;
                q = b.second;
            } else {
                if (bigraded) c.fail("bigraded generators take a bidegree (p,q)");
                p = static_cast<int>(c.integer());
            }
            int w = 0;
            if (!c.done()) {
                if (c.word() != "weight") c.fail("expected 'weight'");
                w = static_cast<int>(c.integer());
                if (w < 1) c.fail("weight must be positive");
            }
            c.end();
            if (p < 0 || q < 0) c.fail("negative degree");
            if (p + q == 0 && w == 0) c.fail("degree-0 generator " + name + " needs an explicit weight");
            gens.push_back({l.no, name, p, q, w});
        } else if (kw == "pair") {
            std::string a = c.word(), b = c.word();
            c.end();
            pairs.emplace_back(l.no, a, b);
        } else if (kw == "del" || kw == "delbar" || kw == "d") {
            std::string g = c.word();
            c.expect('=');
            c.ws();
            diffs.push_back({l, c.pos, kw, g});
        } else if (kw == "rel") {
            c.ws();
            rels.push_back({l, c.pos, kw, ""});
        } else if (extra) {
            extra->push_back(l);
        } else {
            c.pos = kwpos;
            c.fail("unknown keyword '" + kw + "'");
        }
    }
    (void)seen_grading;
    Algebra a(bigraded, trunc.value_or(8));
    if (field) a.set_field(*field);
    a.set_real_structure(real);
    for (const auto& g : gens) {
        if (a.find(g.name)) throw InputError(g.line, 1, "duplicate generator " + g.name);
        if (g.name == "i" || g.name == "lambda") throw InputError(g.line, 1, "reserved generator name " + g.name);
        try {
            a.add_generator(g.name, g.p, g.q, g.w);
        } catch (const std::exception& e) {
            throw InputError(g.line, 1, e.what());
        }
        where.gen_line[g.name] = g.line;
    }
    for (const auto& [ln, x, y] : pairs) {
        auto ix = a.find(x), iy = a.find(y);
        if (!ix || !iy) throw InputError(ln, 1, "pair names an unknown generator");
        try {
            a.pair_generators(*ix, *iy);
        } catch (const std::exception& e) {
            throw InputError(ln, 1, e.what());
        }
    }
    for (const auto& d : diffs) {
        Cursor c{d.l.text, d.l.no, d.pos};
        auto gi = a.find(d.gen);
        if (!gi) {
            Cursor k{d.l.text, d.l.no};
            k.fail("unknown generator " + d.gen);
        }
        if (d.kind == "delbar" && !bigraded) c.fail("delbar in a singly graded algebra");
        if (d.kind == "del" && !bigraded) c.fail("use 'd' in a singly graded algebra");
        if (d.kind == "d" && bigraded) c.fail("use 'del' and 'delbar' in a bigraded algebra");
        Element v = parse_expr_at(a, c, c.rest());
        if (d.kind == "delbar") {
            if (where.delbar_line.count(d.gen)) throw InputError(d.l.no, 1, "duplicate delbar for " + d.gen);
            a.set_delbar(*gi, v);
            where.delbar_line[d.gen] = d.l.no;
        } else {
            if (where.del_line.count(d.gen)) throw InputError(d.l.no, 1, "duplicate differential for " + d.gen);
            a.set_del(*gi, v);
            where.del_line[d.gen] = d.l.no;
        }
    }
    for (const auto& r : rels) {
        Cursor c{r.l.text, r.l.no, r.pos};
        a.add_relation(parse_expr_at(a, c, c.rest()));
        where.rel_line.push_back(r.l.no);
    }
    return a;
}

/* maps a validator witness to the most specific source line */
[[noreturn]] void semantic_error(const AlgebraLines& where, const std::string& witness) {
    int line = where.header;
    const std::string gp = "generator ", rp = "relation ";
    if (witness.rfind(gp, 0) == 0) {
        std::string name = witness.substr(gp.size(), witness.find(':') - gp.size());
        if (witness.find("delbar") != std::string::npos && where.delbar_line.count(name))
            line = where.delbar_line.at(name);
        else if ((witness.find("del") != std::string::npos || witness.find(": d") != std::string::npos) &&
                 where.del_line.count(name))
            line = where.del_line.at(name);
        else if (where.gen_line.count(name))
            line = where.gen_line.at(name);
    } else if (witness.rfind(rp, 0) == 0) {
        size_t k = std::stoul(witness.substr(rp.size()));
        if (k >= 1 && k <= where.rel_line.size()) line = where.rel_line[k - 1];
    }
    throw InputError(line, 1, witness);
}

void write_algebra_body(std::ostringstream& o, const Algebra& a) {
    o << "grading " << (a.bigraded() ? "bigraded" : "single") << "\n";
    o << "field " << to_string(a.field()) << "\n";
    o << "truncate " << a.truncation() << "\n";
    if (a.has_real_structure()) o << "real\n";
    for (const auto& g : a.gens()) {
        o << "gen " << g.name << " ";
        if (a.bigraded()) o << bd(g.bideg());
        else o << g.p;
        if (g.weight != g.degree()) o << " weight " << g.weight;
        o << "\n";
    }
    for (int i = 0; i < a.ngens(); ++i) {
        int j = a.gen(i).partner;
        if (j > i) o << "pair " << a.gen(i).name << " " << a.gen(j).name << "\n";
    }
    for (int i = 0; i < a.ngens(); ++i) {
        const std::string& n = a.gen(i).name;
        if (a.bigraded()) {
            if (!a.del_of(i).is_zero()) o << "del " << n << " = " << a.str(a.del_of(i)) << "\n";
            if (!a.delbar_of(i).is_zero()) o << "delbar " << n << " = " << a.str(a.delbar_of(i)) << "\n";
        } else if (!a.del_of(i).is_zero()) {
            o << "d " << n << " = " << a.str(a.del_of(i)) << "\n";
        }
    }
    for (const auto& r : a.relations()) o << "rel " << a.str(r) << "\n";
}

}  // namespace

Algebra parse_algebra(const std::string& text, bool validate) {
    AlgebraLines where;
    Algebra a = parse_algebra_lines(lines_of(text), "algebra", where, nullptr);
    if (validate) {
        auto rep = a.validate();
        if (!rep.ok) semantic_error(where, rep.witness);
    }
    return a;
}

std::string serialize_algebra(const Algebra& a) {
    std::ostringstream o;
    o << "algebra\n";
    write_algebra_body(o, a);
    return o.str();
}

/* ---- fan ---- */

Fan parse_fan(const std::string& text) {
    auto ls = lines_of(text);
    if (ls.empty()) throw InputError(1, 1, "empty fan file");
    Fan f;
    bool have_rank = false, have_complete = false;
    std::vector<int> ray_lines;
    std::vector<int> cone_lines;
    for (size_t li = 0; li < ls.size(); ++li) {
        Cursor c{ls[li].text, ls[li].no};
        std::string kw = c.word();
        if (li == 0) {
            if (kw != "fan") c.fail("expected header 'fan'");
            f.name = c.rest();
            continue;
        }
        if (kw == "rank") {
            long n = c.integer();
            c.end();
            if (n < 1) c.fail("rank must be positive");
            f.n = static_cast<int>(n);
            have_rank = true;
        } else if (kw == "ray") {
            if (!have_rank) c.fail("rank must precede rays");
            std::vector<long> r;
            while (!c.done()) r.push_back(c.integer());
            if (static_cast<int>(r.size()) != f.n) c.fail("ray has the wrong length");
            f.rays.push_back(r);
            ray_lines.push_back(ls[li].no);
        } else if (kw == "cone") {
            std::vector<int> cone;
            while (!c.done()) cone.push_back(static_cast<int>(c.integer()));
            if (cone.empty()) c.fail("empty cone");
            f.cones.push_back(cone);
            cone_lines.push_back(ls[li].no);
        } else if (kw == "complete") {
            std::string v = c.word();
            c.end();
            if (v == "true") f.complete = true;
            else if (v == "false") f.complete = false;
            else c.fail("complete is 'true' or 'false'");
            have_complete = true;
        } else {
            Cursor k{ls[li].text, ls[li].no};
            k.ws();
            k.fail("unknown keyword '" + kw + "'");
        }
    }
    if (!have_rank) throw InputError(ls.front().no, 1, "missing rank");
    if (!have_complete) throw InputError(ls.front().no, 1, "missing completeness flag");
    for (size_t ci = 0; ci < f.cones.size(); ++ci)
        for (int r : f.cones[ci])
            if (r < 0 || r >= static_cast<int>(f.rays.size()))
                throw InputError(cone_lines[ci], 1, "cone names ray " + std::to_string(r) + " which does not exist");
    if (auto err = check_fan(f)) throw InputError(ls.front().no, 1, "invalid fan: " + *err);
    return f;
}

std::string serialize_fan(const Fan& f) {
    std::ostringstream o;
    o << "fan";
    if (!f.name.empty()) o << " " << f.name;
    o << "\nrank " << f.n << "\n";
    for (const auto& r : f.rays) {
        o << "ray";
        for (long x : r) o << " " << x;
        o << "\n";
    }
    for (const auto& c : f.cones) {
        o << "cone";
        for (int x : c) o << " " << x;
        o << "\n";
    }
    o << "complete " << (f.complete ? "true" : "false") << "\n";
    return o.str();
}

/* ---- TCbba ---- */

TCbba parse_tcbba(const std::string& text) {
    AlgebraLines where;
    std::vector<Line> extra;
    TCbba t;
    t.A = parse_algebra_lines(lines_of(text), "tcbba", where, &extra);
    if (!t.A.bigraded()) throw InputError(where.header, 1, "a torus action needs a bigraded algebra");
    auto rep = t.A.validate();
    if (!rep.ok) semantic_error(where, rep.witness);
    bool have_rank = false;
    for (const auto& l : extra) {
        Cursor c{l.text, l.no};
        std::string kw = c.word();
        if (kw == "torus") {
            long k = c.integer();
            c.end();
            if (k < 0) c.fail("negative torus rank");
            t.rank = static_cast<int>(k);
            t.resize();
            have_rank = true;
        } else if (kw == "iota") {
            if (!have_rank) c.fail("torus rank must precede contractions");
            long a = c.integer();
            if (a < 1 || a > t.rank) c.fail("contraction index out of range");
            std::string g = c.word();
            auto gi = t.A.find(g);
            if (!gi) c.fail("unknown generator " + g);
            Bideg part = c.bideg();
            if (part != Bideg{-1, 0} && part != Bideg{0, -1}) c.fail("contraction part is (-1,0) or (0,-1)");
            c.expect('=');
            c.ws();
            Element v = parse_expr_at(t.A, c, c.rest());
            const Generator& gen = t.A.gen(*gi);
            Bideg want{gen.p + part.first, gen.q + part.second};
            for (const auto& [m, s] : v.terms)
                if (m.bideg() != want) throw InputError(l.no, 1, "contraction of " + g + " has the wrong bidegree");
            auto& slot = part.first == -1 ? t.iota10 : t.iota01;
            slot[a - 1][*gi] = v;
        } else {
            Cursor k{l.text, l.no};
            k.ws();
            k.fail("unknown keyword '" + kw + "'");
        }
    }
    if (!have_rank) throw InputError(where.header, 1, "missing torus rank");
    auto v = t.validate();
    if (!v.ok) semantic_error(where, v.witness);
    return t;
}

std::string serialize_tcbba(const TCbba& t) {
    std::ostringstream o;
    o << "tcbba\n";
    write_algebra_body(o, t.A);
    o << "torus " << t.rank << "\n";
    for (int a = 0; a < t.rank; ++a)
        for (int g = 0; g < t.A.ngens(); ++g) {
            const std::string& n = t.A.gen(g).name;
            if (!t.iota10[a][g].is_zero()) o << "iota " << a + 1 << " " << n << " (-1,0) = " << t.A.str(t.iota10[a][g]) << "\n";
            if (!t.iota01[a][g].is_zero()) o << "iota " << a + 1 << " " << n << " (0,-1) = " << t.A.str(t.iota01[a][g]) << "\n";
        }
    return o.str();
}

std::string detect_kind(const std::string& text) {
    auto ls = lines_of(text);
    if (ls.empty()) throw InputError(1, 1, "empty file");
    Cursor c{ls.front().text, ls.front().no};
    std::string kw = c.word();
    if (kw == "bicomplex" || kw == "algebra" || kw == "fan" || kw == "tcbba") return kw;
    Cursor k{ls.front().text, ls.front().no};
    k.ws();
    k.fail("unknown file kind '" + kw + "'");
}

Algebra load_algebra(const std::string& path) { return parse_algebra(read_file(path)); }

}  // namespace pluri
