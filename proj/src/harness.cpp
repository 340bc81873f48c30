#include "supenv/harness.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <map>
#include <set>
#include <sstream>

#include "supenv/envelope.hpp"

namespace supenv {

namespace {

// ---------------------------------------------------------------------------
// Text utilities.

std::string trim(std::string_view s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

bool valid_name(const std::string& s) {
    if (s.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return true;
}

bool odd_prime(uint32_t p) {
    if (p < 3 || p % 2 == 0) return false;
    for (uint32_t d = 3; d * d <= p; d += 2)
        if (p % d == 0) return false;
    return true;
}

struct SpecLine {
    int no = 0;          // 1-based line number
    std::string text;    // comment-stripped, trimmed
};

std::vector<SpecLine> spec_lines(const std::string& text) {
    std::vector<SpecLine> out;
    int no = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t nl = text.find('\n', pos);
        std::string line = text.substr(pos, nl == std::string::npos ? nl : nl - pos);
        pos = nl == std::string::npos ? text.size() + 1 : nl + 1;
        ++no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        size_t hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::string t = trim(line);
        if (!t.empty()) out.push_back({no, t});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Linear combinations of basis names.

struct NameTable {
    std::map<std::string, uint32_t> index; // global basis index
};

NameTable name_table(const RestrictedLieSuperalgebra& L) {
    NameTable t;
    for (uint32_t i = 0; i < L.dim(); ++i) t.index[L.names[i]] = i;
    return t;
}

struct Segment {
    int sign = 1;
    std::string text;
    int col = 1;
};

std::vector<Segment> split_segments(const std::string& s, int line, int cbase) {
    std::vector<Segment> segs;
    int depth = 0, sign = 1;
    size_t start = std::string::npos;
    for (size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (c == '(') ++depth;
        if (c == ')') {
            if (--depth < 0)
                throw ParseError("unbalanced ')'", line, cbase + static_cast<int>(i) + 1);
        }
        if (depth == 0 && (c == '+' || c == '-')) {
            if (start == std::string::npos) { // unary sign at term head
                if (c == '-') sign = -sign;
                continue;
            }
            segs.push_back({sign, trim(s.substr(start, i - start)),
                            cbase + static_cast<int>(start) + 1});
            sign = (c == '-') ? -1 : 1;
            start = std::string::npos;
            continue;
        }
        if (start == std::string::npos && !std::isspace(static_cast<unsigned char>(c)))
            start = i;
    }
    if (depth != 0) throw ParseError("unbalanced '('", line, cbase + 1);
    if (start != std::string::npos)
        segs.push_back({sign, trim(s.substr(start)), cbase + static_cast<int>(start) + 1});
    else
        throw ParseError(segs.empty() ? "empty combination"
                                      : "dangling sign in combination",
                         line, cbase + 1);
    return segs;
}

LieElement parse_combo(const FieldSpec& f, uint32_t n, uint32_t m, const NameTable& names,
                       const std::string& text, int line, int cbase) {
    LieElement v{std::vector<FieldElement>(n, FieldElement::zero(f)),
                 std::vector<FieldElement>(m, FieldElement::zero(f))};
    std::vector<Segment> segs = split_segments(text, line, cbase);
    if (segs.size() == 1 && segs[0].text == "0") return v;
    for (const Segment& seg : segs) {
        // the last top-level '*' separates coefficient from basis name
        int depth = 0;
        size_t star = std::string::npos;
        for (size_t i = 0; i < seg.text.size(); ++i) {
            char c = seg.text[i];
            if (c == '(') ++depth;
            if (c == ')') --depth;
            if (depth == 0 && c == '*') star = i;
        }
        std::string coeff_text, name;
        if (star == std::string::npos) {
            name = seg.text;
        } else {
            coeff_text = trim(seg.text.substr(0, star));
            name = trim(seg.text.substr(star + 1));
            if (coeff_text.empty())
                throw ParseError("missing coefficient before '*'", line, seg.col);
        }
        if (!valid_name(name))
            throw ParseError("term '" + seg.text + "' lacks a basis name", line, seg.col);
        auto it = names.index.find(name);
        if (it == names.index.end())
            throw UnknownName("unknown basis name '" + name + "'", line, seg.col);
        FieldElement c = FieldElement::one(f);
        if (!coeff_text.empty()) {
            try {
                c = parse_field_element(f, coeff_text);
            } catch (const ParseError& e) {
                throw ParseError("bad coefficient '" + coeff_text + "': " + e.what(),
                                 line, seg.col);
            }
        }
        if (seg.sign < 0) c = -c;
        uint32_t idx = it->second;
        if (idx < n) v.even[idx] += c;
        else v.odd[idx - n] += c;
    }
    return v;
}

// "F3" | "F3(t)" | "F3(a,b)"
FieldSpec parse_field_text(const std::string& s, int line) {
    if (s.empty() || s[0] != 'F')
        throw ParseError("field must look like F3, F3(t) or F3(a,b)", line);
    size_t i = 1;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == 1) throw ParseError("field is missing its characteristic", line);
    uint32_t p = 0;
    for (size_t k = 1; k < i; ++k) p = p * 10 + static_cast<uint32_t>(s[k] - '0');
    if (!odd_prime(p)) throw ParseError("field characteristic must be an odd prime", line);
    std::vector<std::string> vars;
    if (i < s.size()) {
        if (s[i] != '(' || s.back() != ')')
            throw ParseError("malformed field variable list", line);
        std::string inner = s.substr(i + 1, s.size() - i - 2);
        size_t pos = 0;
        while (pos <= inner.size()) {
            size_t comma = inner.find(',', pos);
            std::string v = trim(inner.substr(pos, comma == std::string::npos
                                                       ? comma : comma - pos));
            if (!valid_name(v))
                throw ParseError("bad field variable '" + v + "'", line);
            vars.push_back(v);
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        if (vars.size() > 2) throw ParseError("at most two field variables", line);
    }
    return FieldSpec(p, vars);
}

// ---------------------------------------------------------------------------
// Rendering combinations.

std::string coeff_prefix(const FieldElement& c, const FieldSpec& f) {
    if (c.is_one()) return "";
    if ((-c).is_one()) return "-";
    std::string s = to_string(c, f);
    bool wrap = false;
    for (size_t k = 0; k < s.size(); ++k) {
        char ch = s[k];
        if (ch == '+' || ch == '/' || (ch == '-' && k > 0)) { wrap = true; break; }
    }
    if (wrap) s = "(" + s + ")";
    return s + "*";
}

std::string combo_string(const RestrictedLieSuperalgebra& L, const LieElement& v) {
    std::string out;
    bool first = true;
    for (uint32_t i = 0; i < L.dim(); ++i) {
        const FieldElement& c = i < L.n ? v.even[i] : v.odd[i - L.n];
        if (c.is_zero()) continue;
        std::string term = coeff_prefix(c, L.field) + L.names[i];
        if (first) {
            out = term;
            first = false;
        } else if (term[0] == '-') {
            out += " - " + term.substr(1);
        } else {
            out += " + " + term;
        }
    }
    return first ? "0" : out;
}

} // namespace

// ---------------------------------------------------------------------------
// Parsing algebra spec files.

RestrictedLieSuperalgebra parse_algebra(const std::string& text) {
    std::vector<SpecLine> lines = spec_lines(text);

    std::optional<uint32_t> p;
    std::optional<std::string> field_text;
    int field_line = 0;
    std::optional<std::vector<std::string>> even_names, odd_names;
    int even_line = 0, odd_line = 0;

    struct Decl {
        int no;
        std::string lhs, rhs;
        int rhs_col;
    };
    std::vector<Decl> brackets, pmaps;

    for (const SpecLine& ln : lines) {
        size_t eq = ln.text.find('=');
        if (eq == std::string::npos)
            throw ParseError("expected '=' in declaration", ln.no);
        std::string lhs = trim(ln.text.substr(0, eq));
        std::string rhs = trim(ln.text.substr(eq + 1));
        int rhs_col = static_cast<int>(eq) + 2;
        std::string kw = lhs.substr(0, lhs.find_first_of(" \t("));

        if (kw == "p") {
            if (p) throw ParseError("duplicate 'p' declaration", ln.no);
            uint32_t v = 0;
            if (rhs.empty() ||
                !std::all_of(rhs.begin(), rhs.end(),
                             [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
                throw ParseError("p must be a decimal integer", ln.no, rhs_col);
            for (char c : rhs) v = v * 10 + static_cast<uint32_t>(c - '0');
            if (!odd_prime(v))
                throw ParseError("p must be an odd prime", ln.no, rhs_col);
            p = v;
        } else if (kw == "field") {
            if (field_text) throw ParseError("duplicate 'field' declaration", ln.no);
            field_text = rhs;
            field_line = ln.no;
        } else if (kw == "even" || kw == "odd") {
            auto& slot = kw == "even" ? even_names : odd_names;
            (kw == "even" ? even_line : odd_line) = ln.no;
            if (slot) throw ParseError("duplicate '" + kw + "' declaration", ln.no);
            std::vector<std::string> names;
            std::istringstream is(rhs);
            std::string w;
            while (is >> w) {
                if (!valid_name(w))
                    throw ParseError("bad basis name '" + w + "'", ln.no);
                names.push_back(w);
            }
            slot = std::move(names);
        } else if (kw == "bracket" || kw == "pmap") {
            std::string arg = trim(lhs.substr(kw.size()));
            (kw == "bracket" ? brackets : pmaps).push_back({ln.no, arg, rhs, rhs_col});
        } else {
            throw ParseError("unknown declaration '" + kw + "'", ln.no);
        }
    }

    if (!p) throw ParseError("missing 'p' declaration");
    FieldSpec f = field_text ? parse_field_text(*field_text, field_line) : FieldSpec(*p);
    if (f.p != *p)
        throw ParseError("field characteristic disagrees with p", field_line);

    std::vector<std::string> evens = even_names.value_or(std::vector<std::string>{});
    std::vector<std::string> odds = odd_names.value_or(std::vector<std::string>{});
    uint32_t n = static_cast<uint32_t>(evens.size());
    uint32_t m = static_cast<uint32_t>(odds.size());

    RestrictedLieSuperalgebra A;
    A.field = f;
    A.n = n;
    A.m = m;
    A.names = evens;
    A.names.insert(A.names.end(), odds.begin(), odds.end());

    std::set<std::string> seen_names;
    for (const std::string& nm : A.names) {
        if (!seen_names.insert(nm).second)
            throw ParseError("duplicate basis name '" + nm + "'",
                             even_line ? even_line : odd_line);
        for (const std::string& v : f.vars)
            if (nm == v)
                throw ParseError("basis name '" + nm + "' collides with a field variable",
                                 even_line ? even_line : odd_line);
    }

    LieElement zero{std::vector<FieldElement>(n, FieldElement::zero(f)),
                    std::vector<FieldElement>(m, FieldElement::zero(f))};
    A.bracket_table.assign(A.dim(), std::vector<LieElement>(A.dim(), zero));
    A.pmap_table.assign(n, zero);

    NameTable names = name_table(A);
    std::set<uint64_t> seen_pairs;

    for (const Decl& d : brackets) {
        if (d.lhs.size() < 2 || d.lhs.front() != '(' || d.lhs.back() != ')')
            throw ParseError("expected 'bracket (u,v) = ...'", d.no);
        std::string inner = d.lhs.substr(1, d.lhs.size() - 2);
        size_t comma = inner.find(',');
        if (comma == std::string::npos)
            throw ParseError("expected two names in 'bracket (u,v)'", d.no);
        std::string un = trim(inner.substr(0, comma));
        std::string vn = trim(inner.substr(comma + 1));
        auto iu = names.index.find(un), iv = names.index.find(vn);
        if (iu == names.index.end())
            throw UnknownName("unknown basis name '" + un + "'", d.no);
        if (iv == names.index.end())
            throw UnknownName("unknown basis name '" + vn + "'", d.no);
        uint32_t i = iu->second, j = iv->second;
        uint64_t key = uint64_t(std::min(i, j)) * A.dim() + std::max(i, j);
        if (!seen_pairs.insert(key).second)
            throw ParseError("duplicate bracket declaration for (" + un + "," + vn + ")",
                             d.no);
        LieElement val = parse_combo(f, n, m, names, d.rhs, d.no, d.rhs_col);
        int pi = A.parity_of(i), pj = A.parity_of(j);
        if (i == j && pi == 0 && !val.is_zero())
            throw ParseError("(x,x) vanishes for even x", d.no, d.rhs_col);
        if (((pi + pj) & 1) == 0 && !val.odd_zero())
            throw GradingError("bracket (" + un + "," + vn + ") must be even", d.no,
                               d.rhs_col);
        if (((pi + pj) & 1) == 1 && !val.even_zero())
            throw GradingError("bracket (" + un + "," + vn + ") must be odd", d.no,
                               d.rhs_col);
        A.bracket_table[i][j] = val;
        if (i != j)
            A.bracket_table[j][i] = (pi == 1 && pj == 1) ? val : neg(val);
    }

    std::set<uint32_t> seen_pmap;
    for (const Decl& d : pmaps) {
        std::string nm = trim(d.lhs);
        auto it = names.index.find(nm);
        if (it == names.index.end())
            throw UnknownName("unknown basis name '" + nm + "'", d.no);
        uint32_t i = it->second;
        if (i >= n)
            throw GradingError("the p-map is defined on even basis vectors only", d.no);
        if (!seen_pmap.insert(i).second)
            throw ParseError("duplicate pmap declaration for '" + nm + "'", d.no);
        LieElement val = parse_combo(f, n, m, names, d.rhs, d.no, d.rhs_col);
        if (!val.odd_zero())
            throw GradingError("pmap " + nm + " must be even", d.no, d.rhs_col);
        A.pmap_table[i] = val;
    }

    A.validate_shape();
    return A;
}

RestrictedLieSuperalgebra load_algebra(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_algebra(buf.str());
}

std::string print_algebra(const RestrictedLieSuperalgebra& L) {
    std::ostringstream out;
    out << "p = " << L.field.p << "\n";
    out << "field = F" << L.field.p;
    if (!L.field.vars.empty()) {
        out << "(";
        for (size_t i = 0; i < L.field.vars.size(); ++i)
            out << (i ? "," : "") << L.field.vars[i];
        out << ")";
    }
    out << "\n";
    if (L.n) {
        out << "even =";
        for (uint32_t i = 0; i < L.n; ++i) out << " " << L.names[i];
        out << "\n";
    }
    if (L.m) {
        out << "odd =";
        for (uint32_t i = L.n; i < L.dim(); ++i) out << " " << L.names[i];
        out << "\n";
    }
    for (uint32_t i = 0; i < L.dim(); ++i)
        for (uint32_t j = i; j < L.dim(); ++j) {
            if (i == j && L.parity_of(i) == 0) continue;
            const LieElement& v = L.bracket_table[i][j];
            if (v.is_zero()) continue;
            out << "bracket (" << L.names[i] << "," << L.names[j]
                << ") = " << combo_string(L, v) << "\n";
        }
    for (uint32_t i = 0; i < L.n; ++i) {
        if (L.pmap_table[i].is_zero()) continue;
        out << "pmap " << L.names[i] << " = " << combo_string(L, L.pmap_table[i]) << "\n";
    }
    return out.str();
}

bool algebras_equal(const RestrictedLieSuperalgebra& a,
                    const RestrictedLieSuperalgebra& b) {
    if (!(a.field == b.field) || a.n != b.n || a.m != b.m || a.names != b.names)
        return false;
    for (uint32_t i = 0; i < a.dim(); ++i)
        for (uint32_t j = 0; j < a.dim(); ++j)
            if (!(a.bracket_table[i][j] == b.bracket_table[i][j])) return false;
    for (uint32_t i = 0; i < a.n; ++i)
        if (!(a.pmap_table[i] == b.pmap_table[i])) return false;
    return true;
}

LieElement parse_combination(const RestrictedLieSuperalgebra& L, const std::string& text) {
    return parse_combo(L.field, L.n, L.m, name_table(L), text, 0, 0);
}

Subspace parse_subspace(const RestrictedLieSuperalgebra& L, const std::string& text) {
    NameTable names = name_table(L);
    EchelonBuilder eb(L.field, L.dim());
    for (const SpecLine& ln : spec_lines(text))
        eb.insert(L.to_coords(parse_combo(L.field, L.n, L.m, names, ln.text, ln.no, 1)));
    return eb.finalize();
}

// ---------------------------------------------------------------------------
// Builders.

namespace {

struct TableBuilder {
    RestrictedLieSuperalgebra A;

    TableBuilder(const FieldSpec& f, std::vector<std::string> even,
                 std::vector<std::string> odd) {
        A.field = f;
        A.n = static_cast<uint32_t>(even.size());
        A.m = static_cast<uint32_t>(odd.size());
        A.names = std::move(even);
        A.names.insert(A.names.end(), odd.begin(), odd.end());
        LieElement zero{std::vector<FieldElement>(A.n, FieldElement::zero(f)),
                        std::vector<FieldElement>(A.m, FieldElement::zero(f))};
        A.bracket_table.assign(A.dim(), std::vector<LieElement>(A.dim(), zero));
        A.pmap_table.assign(A.n, zero);
    }

    LieElement unit(uint32_t k, const FieldElement& c) const {
        return scale(c, A.basis_element(k));
    }

    void set_bracket(uint32_t i, uint32_t j, const LieElement& v) {
        A.bracket_table[i][j] = v;
        if (i != j)
            A.bracket_table[j][i] =
                (A.parity_of(i) == 1 && A.parity_of(j) == 1) ? v : neg(v);
    }

    void set_pmap(uint32_t i, const LieElement& v) { A.pmap_table[i] = v; }
};

void check_scalar(const FieldSpec& f, const FieldElement& c, const char* what) {
    if (c.p() != f.p || c.nvars() != f.nvars())
        throw InvalidParameter(std::string(what) + " does not live in " + f.name());
}

std::vector<std::string> numbered(const std::string& stem, uint32_t k) {
    std::vector<std::string> out;
    for (uint32_t i = 1; i <= k; ++i) out.push_back(stem + std::to_string(i));
    return out;
}

} // namespace

RestrictedLieSuperalgebra ex41(const FieldSpec& f, const FieldElement& alpha) {
    check_scalar(f, alpha, "alpha");
    TableBuilder tb(f, {"x1", "x2", "x3"}, {"y", "z"});
    tb.set_bracket(3, 3, tb.A.basis_element(0)); // (y,y) = x1
    tb.set_bracket(4, 4, tb.A.basis_element(1)); // (z,z) = x2
    tb.set_bracket(3, 4, tb.A.basis_element(2)); // (y,z) = x3
    tb.set_pmap(0, tb.A.basis_element(0));
    tb.set_pmap(1, tb.unit(0, alpha * alpha));
    tb.set_pmap(2, tb.unit(0, alpha));
    return tb.A;
}

RestrictedLieSuperalgebra ex42(const FieldSpec& f, const FieldElement& alpha,
                               const FieldElement& beta) {
    check_scalar(f, alpha, "alpha");
    check_scalar(f, beta, "beta");
    TableBuilder tb(f, {"x1", "x2", "x3", "z12", "z13", "z23"}, {"y1", "y2", "y3"});
    tb.set_bracket(6, 6, tb.A.basis_element(0)); // (y1,y1) = x1
    tb.set_bracket(7, 7, tb.A.basis_element(1));
    tb.set_bracket(8, 8, tb.A.basis_element(2));
    tb.set_bracket(6, 7, tb.A.basis_element(3)); // (y1,y2) = z12
    tb.set_bracket(6, 8, tb.A.basis_element(4));
    tb.set_bracket(7, 8, tb.A.basis_element(5));
    tb.set_pmap(0, tb.A.basis_element(0));
    tb.set_pmap(1, tb.unit(0, alpha * alpha));
    tb.set_pmap(2, tb.unit(0, beta * beta));
    tb.set_pmap(3, tb.unit(0, alpha));
    tb.set_pmap(4, tb.unit(0, beta));
    tb.set_pmap(5, tb.unit(0, alpha * beta));
    return tb.A;
}

RestrictedLieSuperalgebra heisenberg_super(uint32_t p) {
    if (!odd_prime(p)) throw InvalidParameter("p must be an odd prime");
    TableBuilder tb(FieldSpec(p), {"x"}, {"y"});
    tb.set_bracket(1, 1, tb.A.basis_element(0));
    return tb.A;
}

RestrictedLieSuperalgebra even_heisenberg_toral(uint32_t p) {
    if (!odd_prime(p)) throw InvalidParameter("p must be an odd prime");
    TableBuilder tb(FieldSpec(p), {"a", "b", "c"}, {});
    tb.set_bracket(0, 1, tb.A.basis_element(2));
    tb.set_pmap(2, tb.A.basis_element(2));
    return tb.A;
}

RestrictedLieSuperalgebra abelian(const FieldSpec& f, uint32_t n, uint32_t m) {
    TableBuilder tb(f, numbered("e", n), numbered("f", m));
    return tb.A;
}

RestrictedLieSuperalgebra build_example(const std::string& id, const ExampleOptions& opt) {
    if (!odd_prime(opt.p)) throw InvalidParameter("p must be an odd prime");
    auto field_or = [&](FieldSpec dflt) {
        if (!opt.field) return dflt;
        try {
            return parse_field_text(*opt.field, 0);
        } catch (const ParseError& e) {
            throw InvalidParameter(e.what());
        }
    };
    auto scalar_or = [&](const FieldSpec& f, const std::string& text, uint32_t var,
                         const char* what) {
        if (!text.empty()) {
            try {
                return parse_field_element(f, text);
            } catch (const ParseError& e) {
                throw InvalidParameter(std::string("bad ") + what + ": " + e.what());
            }
        }
        if (var < f.nvars()) return FieldElement::variable(f, var);
        throw InvalidParameter(std::string(what) + " is required over " + f.name());
    };

    if (id == "ex41") {
        FieldSpec f = field_or(FieldSpec(opt.p, {"t"}));
        return ex41(f, scalar_or(f, opt.alpha, 0, "alpha"));
    }
    if (id == "ex42") {
        FieldSpec f = field_or(FieldSpec(opt.p, {"a", "b"}));
        return ex42(f, scalar_or(f, opt.alpha, 0, "alpha"),
                    scalar_or(f, opt.beta, 1, "beta"));
    }
    if (id == "heisenberg_super" || id == "even_heisenberg_toral") {
        FieldSpec f = field_or(FieldSpec(opt.p));
        if (!f.finite())
            throw InvalidParameter(id + " is defined over a prime field");
        return id == "heisenberg_super" ? heisenberg_super(f.p)
                                        : even_heisenberg_toral(f.p);
    }
    if (id.rfind("abelian(", 0) == 0 && id.back() == ')') {
        std::string inner = id.substr(8, id.size() - 9);
        size_t comma = inner.find(',');
        if (comma == std::string::npos)
            throw InvalidParameter("abelian id must look like abelian(n,m)");
        std::string ns = trim(inner.substr(0, comma)), ms = trim(inner.substr(comma + 1));
        auto parse_count = [&](const std::string& s) -> uint32_t {
            if (s.empty() || s.size() > 2 ||
                !std::all_of(s.begin(), s.end(), [](char c) {
                    return std::isdigit(static_cast<unsigned char>(c));
                }))
                throw InvalidParameter("bad abelian dimensions in '" + id + "'");
            return static_cast<uint32_t>(std::stoul(s));
        };
        return abelian(field_or(FieldSpec(opt.p)), parse_count(ns), parse_count(ms));
    }
    throw InvalidParameter("unknown example id '" + id + "'");
}

// ---------------------------------------------------------------------------
// Corpus generation.

CorpusProfile parse_profile(const std::string& name) {
    if (name == "nilpotent_pnil") return CorpusProfile::nilpotent_pnil;
    if (name == "toral_mix") return CorpusProfile::toral_mix;
    if (name == "odd_heavy") return CorpusProfile::odd_heavy;
    throw InvalidParameter("unknown corpus profile '" + name + "'");
}

std::string_view profile_name(CorpusProfile p) {
    switch (p) {
        case CorpusProfile::nilpotent_pnil: return "nilpotent_pnil";
        case CorpusProfile::toral_mix: return "toral_mix";
        case CorpusProfile::odd_heavy: return "odd_heavy";
    }
    return "?";
}

double Corpus::rejection_rate() const {
    if (attempts == 0) return 0.0;
    return 1.0 - static_cast<double>(instances.size()) / static_cast<double>(attempts);
}

namespace {

FieldElement rnz(std::mt19937_64& rng, const FieldSpec& f) {
    return FieldElement::integer(f, 1 + static_cast<long long>(rng() % (f.p - 1)));
}

// Every bracket lands on the last basis vector of the matching parity, which
// itself brackets to zero: a two-step nilpotent shape whose axioms always
// hold, optionally with a toral even center.
RestrictedLieSuperalgebra central_candidate(std::mt19937_64& rng, const FieldSpec& f,
                                            uint32_t n, uint32_t m, bool toral,
                                            bool force_pair) {
    TableBuilder tb(f, numbered("e", n), numbered("f", m));
    const uint32_t dim = n + m;
    int ce = n ? static_cast<int>(n) - 1 : -1;
    int co = m ? static_cast<int>(dim) - 1 : -1;
    auto central = [&](uint32_t k) {
        return static_cast<int>(k) == ce || static_cast<int>(k) == co;
    };
    for (uint32_t i = 0; i < dim; ++i)
        for (uint32_t j = i; j < dim; ++j) {
            if (central(i) || central(j)) continue;
            if (i == j && i < n) continue;
            int target = ((tb.A.parity_of(i) + tb.A.parity_of(j)) & 1) ? co : ce;
            if (target < 0) continue;
            uint64_t r = rng() % 4;
            if (r >= 2) continue;
            FieldElement c = r == 0 ? rnz(rng, f) : FieldElement::one(f);
            tb.set_bracket(i, j, tb.unit(static_cast<uint32_t>(target), c));
        }
    if (force_pair && n >= 3)
        tb.set_bracket(0, 1, tb.A.basis_element(static_cast<uint32_t>(ce)));
    if (toral && ce >= 0) {
        tb.set_pmap(static_cast<uint32_t>(ce),
                    tb.A.basis_element(static_cast<uint32_t>(ce)));
        for (uint32_t i = 0; i + 1 < n; ++i)
            if (rng() % 4 == 0)
                tb.set_pmap(i, tb.A.basis_element(static_cast<uint32_t>(ce)));
    }
    return tb.A;
}

// Unconstrained sparse graded tables; most draws violate Jacobi or the p-map
// compatibility and are rejected by the axiom filter.
RestrictedLieSuperalgebra raw_candidate(std::mt19937_64& rng, const FieldSpec& f,
                                        uint32_t n, uint32_t m) {
    TableBuilder tb(f, numbered("e", n), numbered("f", m));
    const uint32_t dim = n + m;
    for (uint32_t i = 0; i < dim; ++i)
        for (uint32_t j = i; j < dim; ++j) {
            if (i == j && i < n) continue;
            int pi = (tb.A.parity_of(i) + tb.A.parity_of(j)) & 1;
            std::vector<uint32_t> above, any;
            for (uint32_t k = 0; k < dim; ++k) {
                if (tb.A.parity_of(k) != pi) continue;
                any.push_back(k);
                if (k > j) above.push_back(k);
            }
            const std::vector<uint32_t>& targets = above.empty() ? any : above;
            if (targets.empty()) continue;
            if (rng() % 2) continue;
            uint32_t k = targets[rng() % targets.size()];
            tb.set_bracket(i, j, tb.unit(k, rnz(rng, f)));
        }
    return tb.A;
}

// (L_0, L) = 0 with random symmetric odd-odd brackets: any p-map table on the
// central even part is admissible, so the profile can mix nilpotent, shift
// and toral entries freely.
RestrictedLieSuperalgebra odd_heavy_candidate(std::mt19937_64& rng, const FieldSpec& f,
                                              uint32_t n, uint32_t m) {
    TableBuilder tb(f, numbered("e", n), numbered("f", m));
    for (uint32_t i = n; i < n + m; ++i)
        for (uint32_t j = i; j < n + m; ++j) {
            LieElement v = tb.A.zero_element();
            bool nonzero = false;
            for (uint32_t e = 0; e < n; ++e)
                if (rng() % 3 == 0) {
                    v = add(v, tb.unit(e, rnz(rng, f)));
                    nonzero = true;
                }
            if (nonzero) tb.set_bracket(i, j, v);
        }
    for (uint32_t i = 0; i < n; ++i) {
        uint64_t r = rng() % 5;
        if (r == 0) tb.set_pmap(i, tb.A.basis_element(i));
        else if (r == 1 && i + 1 < n) tb.set_pmap(i, tb.A.basis_element(i + 1));
        else if (r == 2) tb.set_pmap(i, tb.unit(static_cast<uint32_t>(rng() % n), rnz(rng, f)));
    }
    return tb.A;
}

struct Stock {
    const char* tag;
    RestrictedLieSuperalgebra algebra;
};

std::vector<Stock> stock_for(CorpusProfile profile) {
    switch (profile) {
        case CorpusProfile::nilpotent_pnil:
            return {{"heisenberg_super", heisenberg_super(3)}};
        case CorpusProfile::toral_mix: {
            FieldSpec f3(3);
            return {{"even_heisenberg_toral", even_heisenberg_toral(3)},
                    {"ex41_alpha1", ex41(f3, FieldElement::one(f3))}};
        }
        case CorpusProfile::odd_heavy:
            return {};
    }
    return {};
}

} // namespace

Corpus generate_corpus(uint32_t count, uint64_t seed, CorpusProfile profile) {
    if (count == 0) throw InvalidParameter("corpus count must be at least 1");
    std::mt19937_64 rng =
        seeded_rng(seed, "generate_corpus", static_cast<uint64_t>(profile));
    Corpus out;
    std::vector<Stock> stock = stock_for(profile);
    const uint64_t cap = 400ull * count + 2000;

    while (out.instances.size() < count) {
        if (out.attempts > cap)
            throw BudgetExceeded("corpus rejection rate is implausibly high");
        ++out.attempts;
        size_t idx = out.instances.size();
        RestrictedLieSuperalgebra cand;
        std::string tag;
        if (idx < stock.size()) {
            cand = stock[idx].algebra;
            tag = stock[idx].tag;
        } else {
            FieldSpec f(rng() % 2 ? 5u : 3u);
            uint32_t n = 0, m = 0;
            switch (profile) {
                case CorpusProfile::nilpotent_pnil: {
                    static constexpr std::pair<uint32_t, uint32_t> shapes[] = {
                        {2, 1}, {3, 1}, {1, 1}, {2, 2}, {1, 2},
                        {3, 0}, {2, 0}, {0, 2}, {3, 2}};
                    auto [sn, sm] = shapes[rng() % std::size(shapes)];
                    n = sn, m = sm;
                    cand = rng() % 2 ? central_candidate(rng, f, n, m, false, false)
                                     : raw_candidate(rng, f, n, m);
                    break;
                }
                case CorpusProfile::toral_mix:
                    n = 3, m = static_cast<uint32_t>(rng() % 3);
                    cand = central_candidate(rng, f, n, m, true, true);
                    break;
                case CorpusProfile::odd_heavy:
                    n = 1 + static_cast<uint32_t>(rng() % 3), m = 2;
                    cand = odd_heavy_candidate(rng, f, n, m);
                    break;
            }
            char buf[32];
            std::snprintf(buf, sizeof buf, "p%un%um%u", f.p, cand.n, cand.m);
            tag = buf;
        }
        if (!verify_axioms(cand, 20, 0).all_pass()) continue;
        char prefix[16];
        std::snprintf(prefix, sizeof prefix, "%03zu", idx);
        out.instances.push_back({std::string(profile_name(profile)) + "/" + prefix + "-" + tag,
                                 std::move(cand)});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Reports.

namespace {

std::string machine_key(std::string_view s) {
    std::string out;
    bool pending = false;
    for (char c : s) {
        if (std::isalnum(static_cast<unsigned char>(c))) {
            if (pending && !out.empty()) out += '_';
            pending = false;
            out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        } else {
            pending = true;
        }
    }
    return out.empty() ? "x" : out;
}

std::string one_line(std::string s) {
    for (char& c : s)
        if (c == '\n' || c == '\r') c = ' ';
    return s;
}

} // namespace

std::string render_report(const RunReport& r, ReportFormat fmt) {
    std::ostringstream out;
    if (fmt == ReportFormat::text) {
        out << "instance: " << r.instance << "\n";
        out << "command: " << r.command << "\n";
        out << "seed: " << r.seed << "\n";
        for (const SubCheck& c : r.checks) {
            out << "  " << c.name << ": " << verdict_name(c.verdict);
            if (c.verdict == Verdict::incomplete)
                out << " (samples lean " << (c.observed ? "PASS" : "FAIL") << ")";
            if (!c.witness.empty()) out << " -- " << one_line(c.witness);
            out << "\n";
        }
        for (const auto& [k, v] : r.figures) out << "  " << k << " = " << v << "\n";
        out << "complete: " << (r.complete ? "yes" : "no") << "\n";
        out << "status: " << verdict_name(r.status) << "\n";
        out << "wall: " << static_cast<long long>(r.wall_ms + 0.5) << " ms\n";
    } else {
        out << "instance=" << one_line(r.instance) << "\n";
        out << "command=" << one_line(r.command) << "\n";
        out << "seed=" << r.seed << "\n";
        for (const SubCheck& c : r.checks) {
            std::string key = machine_key(c.name);
            out << "check." << key << "=" << verdict_name(c.verdict) << "\n";
            if (c.verdict == Verdict::incomplete)
                out << "lean." << key << "=" << (c.observed ? "pass" : "fail") << "\n";
            if (!c.witness.empty())
                out << "witness." << key << "=" << one_line(c.witness) << "\n";
        }
        for (const auto& [k, v] : r.figures)
            out << "figure." << machine_key(k) << "=" << one_line(v) << "\n";
        out << "complete=" << (r.complete ? "true" : "false") << "\n";
        out << "status=" << verdict_name(r.status) << "\n";
        out << "wall_ms=" << static_cast<long long>(r.wall_ms + 0.5) << "\n";
    }
    return out.str();
}

int exit_code(const std::vector<RunReport>& reports) {
    for (const RunReport& r : reports)
        if (r.status == Verdict::fail) return 1;
    return 0;
}

} // namespace supenv
