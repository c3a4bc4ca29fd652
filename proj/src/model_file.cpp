#include "lcs/model_file.hpp"

#include "lcs/syntax.hpp"

#include <cctype>
#include <optional>
#include <sstream>

namespace lcs {

namespace {

std::string position(const toml::source_region& s)
{
    if (!s.begin)
        return "";
    return "line " + std::to_string(s.begin.line) + ", column " + std::to_string(s.begin.column) + ": ";
}

[[noreturn]] void fail(const toml::node& n, const std::string& what)
{
    throw InputError(position(n.source()) + what);
}

[[noreturn]] void fail(const toml::key& k, const std::string& what)
{
    throw InputError(position(k.source()) + what);
}

const toml::table& require_table(const toml::table& doc, const char* name)
{
    const toml::table* t = doc[name].as_table();
    if (!t) {
        if (const toml::node* n = doc.get(name))
            fail(*n, std::string("[") + name + "] must be a table");
        throw InputError(std::string("missing [") + name + "] section");
    }
    return *t;
}

std::string string_value(const toml::node& n)
{
    if (auto s = n.value<std::string>())
        return *s;
    fail(n, "expected a string");
}

std::vector<std::string> names(const toml::table& t, const char* key)
{
    std::vector<std::string> out;
    const toml::node* n = t.get(key);
    if (!n)
        return out;
    const toml::array* a = n->as_array();
    if (!a)
        fail(*n, std::string(key) + " must be an array of names");
    for (const toml::node& e : *a) {
        std::string s = string_value(e);
        bool ok = !s.empty() && std::isalpha(static_cast<unsigned char>(s[0]));
        for (char c : s)
            ok = ok && (std::isalnum(static_cast<unsigned char>(c)) || c == '_');
        if (!ok)
            fail(e, "bad coordinate name '" + s + "'");
        out.push_back(s);
    }
    return out;
}

/* parse failures are re-thrown with the position of the value */
template <class F>
auto parsed(const toml::node& n, F f)
{
    std::string v = string_value(n);
    try {
        return f(v);
    } catch (const MathError& err) {
        fail(n, err.what());
    }
}

DifferentialForm form_value(const toml::node& n, const RosterPtr& r, int degree)
{
    DifferentialForm a = parsed(n, [&](const std::string& v) { return parse_form(v, r); });
    if (a.is_zero())
        return DifferentialForm(r, degree);
    if (a.degree() != degree)
        fail(n, "expected a " + std::to_string(degree) + "-form");
    return a;
}

FourierScalar scalar_value(const toml::node& n, const RosterPtr& r)
{
    return parsed(n, [&](const std::string& v) { return parse_scalar(v, r); });
}

/* a.b = value, stored by TOML as nested tables */
template <class F>
void for_each_pair(const toml::table& t, const RosterPtr& r, CoordKind first, CoordKind second, F f)
{
    for (const auto& [ka, va] : t) {
        int i = r->index(std::string(ka.str()));
        if (i < 0 || r->kind(i) != first)
            fail(ka, "unknown or misplaced coordinate '" + std::string(ka.str()) + "'");
        const toml::table* inner = va.as_table();
        if (!inner)
            fail(va, "expected keys of the form " + std::string(ka.str()) + ".<coordinate>");
        for (const auto& [kb, vb] : *inner) {
            int j = r->index(std::string(kb.str()));
            if (j < 0 || r->kind(j) != second)
                fail(kb, "unknown or misplaced coordinate '" + std::string(kb.str()) + "'");
            f(i, j, vb);
        }
    }
}

int order_key(const toml::key& k, const std::string& prefix)
{
    std::string s(k.str());
    if (!prefix.empty() && s.rfind(prefix, 0) == 0)
        s = s.substr(prefix.size());
    bool digits = !s.empty() && s.size() < 6;
    for (char c : s)
        digits = digits && std::isdigit(static_cast<unsigned char>(c));
    if (digits && std::stoi(s) >= 1)
        return std::stoi(s);
    fail(k, "expected an order index >= 1 in '" + std::string(k.str()) + "'");
}

toml::array name_array(const std::vector<std::string>& xs)
{
    toml::array a;
    for (const auto& x : xs)
        a.push_back(x);
    return a;
}

}  // namespace

toml::table parse_document(const std::string& text)
{
    try {
        return toml::parse(text);
    } catch (const toml::parse_error& e) {
        throw InputError(position(e.source()) + std::string(e.description()));
    }
}

toml::table read_document(const std::string& path)
{
    try {
        return toml::parse_file(path);
    } catch (const toml::parse_error& e) {
        throw InputError(path + ": " + position(e.source()) + std::string(e.description()));
    }
}

Model model_from_document(const toml::table& doc)
{
    const toml::table& coords = require_table(doc, "coordinates");
    auto y = names(coords, "transverse");
    auto q = names(coords, "leaf");
    auto p = names(coords, "fiber");
    if (y.size() + q.size() + p.size() > 30)
        fail(coords, "too many coordinates");
    std::vector<std::string> all = y;
    all.insert(all.end(), q.begin(), q.end());
    all.insert(all.end(), p.begin(), p.end());
    for (size_t i = 0; i < all.size(); ++i)
        for (size_t j = 0; j < i; ++j)
            if (all[i] == all[j])
                fail(coords, "duplicate coordinate '" + all[i] + "'");

    Model m;
    m.roster = std::make_shared<CoordinateRoster>(y, q, p);

    const toml::table& st = require_table(doc, "structure");
    m.name = st.get("name") ? string_value(*st.get("name")) : "model";
    const toml::node* omega = st.get("omega");
    if (!omega)
        fail(st, "[structure] needs omega");
    m.omega = form_value(*omega, m.roster, 2);
    m.b = st.get("b") ? form_value(*st.get("b"), m.roster, 1) : DifferentialForm(m.roster, 1);
    const toml::node* rank = st.get("rank");
    if (!rank)
        fail(st, "[structure] needs rank (the integer k with rank omega = 2k)");
    auto k = rank->value_exact<int64_t>();
    if (!k || *k < 0 || *k > 15)
        fail(*rank, "rank must be a small non-negative integer");
    m.rank_k = static_cast<int>(*k);

    if (const toml::node* s = doc.get("splitting")) {
        if (!p.empty())
            fail(*s, "a splitting needs a model without fiber coordinates");
        const toml::table* t = s->as_table();
        if (!t)
            fail(*s, "[splitting] must be a table");
        Splitting sp = Splitting::flat(m.roster);
        int nt = m.roster->n_transverse();
        for_each_pair(*t, m.roster, CoordKind::Transverse, CoordKind::Leaf,
                      [&](int i, int j, const toml::node& v) { sp.R[i][j - nt] = scalar_value(v, m.roster); });
        m.splitting = sp;
    } else if (p.empty()) {
        m.splitting = Splitting::flat(m.roster);
    }

    if (const toml::node* s = doc.get("omega_inverse")) {
        const toml::table* t = s->as_table();
        if (!t)
            fail(*s, "[omega_inverse] must be a table");
        int n = m.roster->n_transverse();
        std::vector<std::vector<FourierScalar>> inv(n, std::vector<FourierScalar>(n, FourierScalar(m.roster)));
        for_each_pair(*t, m.roster, CoordKind::Transverse, CoordKind::Transverse,
                      [&](int i, int j, const toml::node& v) { inv[i][j] = scalar_value(v, m.roster); });
        m.omega_inv = inv;
    }
    return m;
}

FormalSeries series_from_document(const toml::table& doc, const RosterPtr& r)
{
    const toml::table& s = require_table(doc, "section");
    std::vector<std::optional<LeafForm>> terms;
    for (const auto& [k, v] : s) {
        int n = order_key(k, "gamma");
        if (static_cast<int>(terms.size()) < n)
            terms.resize(n);
        LeafForm g = form_value(v, r, 1);
        if (!is_leafwise(g))
            fail(v, "a section term must be a leafwise 1-form");
        terms[n - 1] = g;
    }
    if (terms.empty())
        fail(s, "[section] has no gamma entries");
    FormalSeries out;
    for (auto& t : terms)
        out.terms.push_back(t ? *t : LeafForm(r, 1));
    return out;
}

BulkSeries bulk_from_document(const toml::table& doc, const Model& m)
{
    BulkSeries B = BulkSeries::trivial(m);
    auto read = [&](const char* name, int degree, auto place) {
        const toml::node* s = doc.get(name);
        if (!s)
            return;
        const toml::table* t = s->as_table();
        if (!t)
            fail(*s, std::string("[") + name + "] must be a table");
        for (const auto& [k, v] : *t)
            place(order_key(k, ""), form_value(v, m.roster, degree), v);
    };
    read("omegas", 2, [&](int n, DifferentialForm a, const toml::node&) {
        if (static_cast<int>(B.omegas.size()) <= n)
            B.omegas.resize(n + 1, DifferentialForm(m.roster, 2));
        B.omegas[n] = a;
    });
    read("lee_forms", 1, [&](int n, DifferentialForm a, const toml::node&) {
        if (static_cast<int>(B.lee_forms.size()) <= n)
            B.lee_forms.resize(n + 1, DifferentialForm(m.roster, 1));
        B.lee_forms[n] = a;
    });
    read("sections", 1, [&](int n, DifferentialForm a, const toml::node& v) {
        if (!is_leafwise(a))
            fail(v, "a section term must be a leafwise 1-form");
        if (B.sections.max_order() < n)
            B.sections.terms.resize(n, LeafForm(m.roster, 1));
        B.sections.terms[n - 1] = a;
    });
    return B;
}

toml::table model_to_document(const Model& m)
{
    const RosterPtr& r = m.roster;
    toml::table coords{{"transverse", name_array(r->transverse())}, {"leaf", name_array(r->leaf())}};
    if (r->n_fiber())
        coords.insert("fiber", name_array(r->fiber()));
    toml::table doc{{"coordinates", coords},
                    {"structure", toml::table{{"name", m.name},
                                              {"omega", m.omega.is_zero() ? "0" : m.omega.to_string()},
                                              {"b", m.b.is_zero() ? "0" : m.b.to_string()},
                                              {"rank", m.rank_k}}}};
    if (m.splitting && !m.splitting->is_flat()) {
        toml::table sp;
        for (int i = 0; i < r->n_transverse(); ++i) {
            toml::table row;
            for (int a = 0; a < r->n_leaf(); ++a)
                if (!m.splitting->at(i, a).is_zero())
                    row.insert(r->name(r->leaf_index(a)), m.splitting->at(i, a).to_string());
            if (!row.empty())
                sp.insert(r->name(i), row);
        }
        doc.insert("splitting", sp);
    }
    if (m.omega_inv) {
        toml::table inv;
        for (int i = 0; i < r->n_transverse(); ++i) {
            toml::table row;
            for (int j = 0; j < r->n_transverse(); ++j)
                if (!(*m.omega_inv)[i][j].is_zero())
                    row.insert(r->name(j), (*m.omega_inv)[i][j].to_string());
            if (!row.empty())
                inv.insert(r->name(i), row);
        }
        doc.insert("omega_inverse", inv);
    }
    return doc;
}

toml::table series_to_document(const FormalSeries& g)
{
    toml::table s;
    for (int j = 1; j <= g.max_order(); ++j)
        s.insert("gamma" + std::to_string(j), g.terms[j - 1].is_zero() ? "0" : g.terms[j - 1].to_string());
    return toml::table{{"section", s}};
}

std::string model_to_text(const Model& m)
{
    std::ostringstream os;
    os << model_to_document(m) << "\n";
    return os.str();
}

std::string series_to_text(const FormalSeries& g)
{
    std::ostringstream os;
    os << series_to_document(g) << "\n";
    return os.str();
}

}  // namespace lcs
