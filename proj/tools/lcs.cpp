#include "CLI11.hpp"
#include "json.hpp"

#include "lcs/bulk.hpp"
#include "lcs/catalog.hpp"
#include "lcs/generators.hpp"
#include "lcs/lcps.hpp"
#include "lcs/model_file.hpp"
#include "lcs/syntax.hpp"
#include "lcs/thickening.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>

using namespace lcs;
using json = nlohmann::ordered_json;

namespace {

// exit codes
constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kInputError = 2;
constexpr int kUnsupported = 3;

const std::map<std::string, std::string> kCheckNames = {
    {"lee_form_closed", "lee form not closed"},
    {"twisted_closed", "omega not d^b-closed"},
    {"rank_upper_bound", "omega^{k+1} does not vanish"},
    {"rank_lower_bound", "omega^k vanishes"},
    {"omega_inverse", "omega_inverse is not the inverse of the transverse block"},
    {"lcs_nondegenerate", "omega is degenerate"},
};

struct Report {
    std::string command;
    json data = json::object();
    json checks = json::array();
    bool ok = true;

    void check(const std::string& name, bool pass, const std::string& detail, bool informational = false)
    {
        std::cout << (informational ? "INFO " : pass ? "PASS " : "FAIL ") << name;
        if (!detail.empty())
            std::cout << ": " << detail;
        std::cout << "\n";
        checks.push_back({{"name", name}, {"ok", pass}, {"detail", detail}, {"informational", informational}});
        if (!informational)
            ok = ok && pass;
    }
    void line(const std::string& s) { std::cout << s << "\n"; }
};

std::string text_or_zero(const DifferentialForm& a) { return a.is_zero() ? "0" : a.to_string(); }

json series_json(const FormalSeries& g)
{
    json out = json::array();
    for (const auto& t : g.terms)
        out.push_back(text_or_zero(t));
    return out;
}

json certificate_json(const ObstructionCertificate& c)
{
    return {{"order", c.order},
            {"residual", text_or_zero(c.residual)},
            {"harmonic_witness", text_or_zero(c.harmonic_witness)},
            {"mode", c.mode}};
}

Model load_model(const std::string& path) { return model_from_document(read_document(path)); }

/* Gamma_1 from --gamma1 or from the first term of a section file */
LeafForm load_gamma1(const Model& m, const std::string& section_path, const std::string& expr)
{
    if (section_path.empty() == expr.empty())
        throw InputError("give exactly one of a section file and --gamma1");
    if (section_path.empty()) {
        LeafForm g;
        try {
            g = parse_form(expr, m.roster);
        } catch (const MathError& e) {
            throw InputError(std::string("--gamma1: ") + e.what());
        }
        if (g.is_zero())
            return LeafForm(m.roster, 1);
        if (g.degree() != 1 || !is_leafwise(g))
            throw InputError("--gamma1 must be a leafwise 1-form");
        return g;
    }
    return series_from_document(read_document(section_path), m.roster).terms[0];
}

// ---------- commands

void cmd_check(Report& rep, const std::string& path)
{
    Model m = load_model(path);
    StructureReport s = validate_structure(m);
    rep.data["model"] = m.name;
    rep.data["is_lcs"] = s.is_lcs;
    rep.data["is_lcps_rank_2k"] = s.is_lcps_rank_2k;
    std::map<std::string, std::string> failed;
    for (const auto& [name, witness] : s.failures)
        failed[name] = witness;
    for (const char* name : {"lee_form_closed", "twisted_closed", "rank_upper_bound", "rank_lower_bound", "omega_inverse"}) {
        auto it = failed.find(name);
        if (it == failed.end())
            rep.check(name, true, "");
        else
            rep.check(kCheckNames.at(name), false, it->second);
    }
    for (const auto& [name, witness] : failed)
        if (name.rfind("transverse_invariance", 0) == 0)
            rep.check(name, false, witness);
    rep.check("lcs_nondegenerate", s.is_lcs, s.is_lcs ? "l.c.s." : "l.c.p-s. only", true);
}

void cmd_thicken(Report& rep, const std::string& path, const std::string& output)
{
    Model m = load_model(path);
    Model u = thicken(m, m.splitting_or_flat());
    std::string text = model_to_text(u);
    if (output.empty()) {
        rep.line(text);
    } else {
        std::ofstream f(output);
        if (!(f << text))
            throw InputError("cannot write " + output);
    }
    rep.data["model"] = text;
    rep.line("omega_U = " + text_or_zero(u.omega));
    rep.line("b_U = " + text_or_zero(u.b));
    rep.data["omega_u"] = text_or_zero(u.omega);
    rep.data["b_u"] = text_or_zero(u.b);
    DifferentialForm res = twisted_derivative(u.omega, u.b);
    rep.check("d^{pi*b} omega_U = 0", res.is_zero(), text_or_zero(res));
    StructureReport st = validate_structure(u);
    rep.check("omega_U nondegenerate along the zero section", st.is_lcs, st.is_lcs ? "" : "top power vanishes at p = 0");
}

void cmd_linfty(Report& rep, const std::string& path, int trials, int max_arity, std::uint64_t seed)
{
    Model m = load_model(path);
    auto ctx = make_context(m);
    gen::Rng rng(seed);
    const RosterPtr& r = m.roster;
    int tuples = 0, failures = 0;
    for (int arity = 1; arity <= max_arity; ++arity) {
        int bad = 0;
        for (int t = 0; t < trials; ++t) {
            std::vector<LeafForm> xs;
            for (int a = 0; a < arity; ++a)
                xs.push_back(gen::form(rng, r, gen::uniform(rng, 0, std::min(2, r->n_leaf())), leaf_mask(*r), 2, 1));
            LeafForm res = linfty_relation_residual(xs, ctx);
            bad += !res.is_zero();
            ++tuples;
        }
        failures += bad;
        rep.check("relation arity " + std::to_string(arity), bad == 0,
                  std::to_string(trials - bad) + "/" + std::to_string(trials) + " tuples with zero residual");
    }
    rep.data["tuples"] = tuples;
    rep.data["failures"] = failures;
}

void cmd_master(Report& rep, const std::string& model_path, const std::string& section_path, int order)
{
    Model m = load_model(model_path);
    FormalSeries g = series_from_document(read_document(section_path), m.roster);
    const Splitting& s = m.splitting_or_flat();
    auto ctx = make_context(m);
    FormSeries E = graph_residual_series(m, s, g, order);
    auto S = coordinate_master_series(ctx, g, order);
    json orders = json::array();
    int first_graph = -1, first_coord = -1;
    for (int o = 0; o <= order; ++o) {
        bool ge = E[o].is_zero(), ce = S[o].is_zero();
        if (!ge && first_graph < 0)
            first_graph = o;
        if (!ce && first_coord < 0)
            first_coord = o;
        rep.line("order " + std::to_string(o) + ": graph " + text_or_zero(E[o]) + " | coordinate " + text_or_zero(S[o]));
        orders.push_back({{"order", o}, {"graph", text_or_zero(E[o])}, {"coordinate", text_or_zero(S[o])}});
    }
    rep.data["orders"] = orders;
    rep.check("routes co-vanish", first_graph == first_coord,
              "first nonzero order: graph " + std::to_string(first_graph) + ", coordinate " + std::to_string(first_coord));
}

void cmd_grassmann(Report& rep, int n, int k, int trials, std::uint64_t seed)
{
    GrassmannFuzzReport f = grassmann_fuzz(n, k, trials, seed);
    rep.data["trials"] = f.trials;
    rep.data["agreements"] = f.agreements;
    rep.data["coisotropic"] = f.coisotropic;
    rep.check("criteria agree", f.agreements == f.trials,
              "agreement " + std::to_string(f.agreements) + "/" + std::to_string(f.trials) + " (" +
                  std::to_string(f.coisotropic) + " coisotropic)");
}

void cmd_mc(Report& rep, const std::string& model_path, const std::string& section_path, const std::string& expr,
            int order)
{
    Model m = load_model(model_path);
    LeafForm g1 = load_gamma1(m, section_path, expr);
    auto ctx = make_context(m);
    McSolveResult r = mc_solve(g1, order, ctx);
    for (int j = 1; j <= r.series.max_order(); ++j)
        rep.line("Gamma_" + std::to_string(j) + " = " + text_or_zero(r.series.terms[j - 1]));
    rep.data["series"] = series_json(r.series);
    bool residual_zero = std::all_of(r.residual.begin(), r.residual.end(), [](const LeafForm& x) { return x.is_zero(); });
    bool coord_zero = std::all_of(r.coordinate_residual.begin(), r.coordinate_residual.end(),
                                  [](const LeafForm& x) { return x.is_zero(); });
    rep.check("MC residual vanishes through order " + std::to_string(r.series.max_order()), residual_zero, "");
    rep.check("coordinate residual vanishes through order " + std::to_string(r.series.max_order()), coord_zero, "");
    if (r.certificate) {
        rep.data["certificate"] = certificate_json(*r.certificate);
        rep.check("solved through order " + std::to_string(order), false, describe(*r.certificate));
    } else {
        rep.check("solved through order " + std::to_string(order), true, "");
    }
}

void cmd_kuranishi(Report& rep, const std::string& model_path, const std::string& section_path,
                   const std::string& expr)
{
    Model m = load_model(model_path);
    LeafForm g1 = load_gamma1(m, section_path, expr);
    auto ctx = make_context(m);
    KuranishiResult k = kuranishi(g1, ctx);
    rep.line("m2(Gamma_1, Gamma_1) = " + text_or_zero(k.bracket));
    rep.line("1/2 m2(Gamma_1, Gamma_1) = " + text_or_zero(k.half));
    rep.data["bracket"] = text_or_zero(k.bracket);
    rep.data["half"] = text_or_zero(k.half);
    if (k.klass.certificate)
        rep.data["certificate"] = certificate_json(*k.klass.certificate);
    rep.check("Kuranishi class vanishes", k.class_zero(),
              k.klass.certificate ? "witness " + text_or_zero(k.klass.certificate->harmonic_witness) : "");
}

void cmd_def_dims(Report& rep, const std::string& path, int truncation)
{
    Model m = load_model(path);
    DeformationDims d = deformation_space_dims(m, truncation);
    auto vec = [](const std::vector<int>& v) {
        std::string s;
        for (size_t i = 0; i < v.size(); ++i)
            s += (i ? " " : "") + std::to_string(v[i]);
        return s;
    };
    rep.line("truncation " + std::to_string(truncation) + " (dimensions over |K| <= T)");
    rep.line("H_b^*            : " + vec(d.twisted));
    rep.line("H^*              : " + vec(d.untwisted));
    rep.line("[omega] != 0     : " + std::string(d.omega_class_nonzero ? "yes" : "no"));
    rep.line("H_b^2 / <omega>  : " + std::to_string(d.h2_mod_omega));
    rep.line("ker L            : " + std::to_string(d.ker_L));
    rep.line("Def              : " + std::to_string(d.def_dim));
    rep.line("H_b^*(I(F))      : " + vec(d.restricted));
    rep.line("restricted Def   : " + std::to_string(d.restricted_def_dim));
    rep.data = {{"truncation", truncation},
                {"twisted", d.twisted},
                {"untwisted", d.untwisted},
                {"omega_class_nonzero", d.omega_class_nonzero},
                {"h2_mod_omega", d.h2_mod_omega},
                {"ker_L", d.ker_L},
                {"def_dim", d.def_dim},
                {"restricted", d.restricted},
                {"restricted_omega_class_nonzero", d.restricted_omega_class_nonzero},
                {"restricted_h2_mod_omega", d.restricted_h2_mod_omega},
                {"restricted_def_dim", d.restricted_def_dim}};
}

void cmd_bulk(Report& rep, const std::string& model_path, const std::string& series_path, int order)
{
    Model m = load_model(model_path);
    BulkSeries B = bulk_from_document(read_document(series_path), m);
    auto a = bulk_order_residuals(B, m, order);
    auto b = bulk_residuals_by_evaluation(B, m, order);
    json orders = json::array();
    bool agree = true;
    for (int l = 0; l <= order; ++l) {
        const auto& r = a[l];
        agree = agree && r.power == b[l].power && r.lee == b[l].lee && r.lcps == b[l].lcps && r.section == b[l].section;
        orders.push_back({{"order", l},
                          {"power", text_or_zero(r.power)},
                          {"lee", text_or_zero(r.lee)},
                          {"lcps", text_or_zero(r.lcps)},
                          {"section", text_or_zero(r.section)}});
        std::string detail;
        for (auto [name, f] : {std::pair{"power", &r.power}, {"lee", &r.lee}, {"lcps", &r.lcps}, {"section", &r.section}})
            if (!f->is_zero())
                detail += std::string(detail.empty() ? "" : "; ") + name + " " + f->to_string();
        rep.check("order " + std::to_string(l), r.passes(), detail);
    }
    rep.data["orders"] = orders;
    rep.check("expanded and evaluated residuals agree", agree, "");
}

void cmd_zambon(Report& rep)
{
    ZambonReport z = zambon_scenario();
    for (const auto& c : z.checks)
        rep.check(c.name, c.ok, c.detail, c.informational);
    rep.data["kuranishi"] = z.kuranishi_value;
    rep.line("1/2 m2(Gamma_1, Gamma_1) = " + z.kuranishi_value);
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Coisotropic deformations in l.c.s. torus models"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string json_path;
    app.add_option("--json", json_path, "write a JSON report to this path");

    std::string model, second, gamma1, output;
    int order = 2, truncation = 1, trials = 20, max_arity = 4, n = 4, k = 2;
    std::uint64_t seed = 1;

    auto* check = app.add_subcommand("check", "validate a model");
    check->add_option("model", model)->required();
    auto* thick = app.add_subcommand("thicken", "build the canonical thickening");
    thick->add_option("model", model)->required();
    thick->add_option("-o,--output", output, "write the thickened model here instead of stdout");
    auto* linf = app.add_subcommand("linfty-check", "randomized L-infinity relations");
    linf->add_option("model", model)->required();
    linf->add_option("--trials", trials, "tuples per arity");
    linf->add_option("--max-arity", max_arity);
    linf->add_option("--seed", seed);
    auto* master = app.add_subcommand("master-residual", "graph and coordinate master residuals");
    master->add_option("model", model)->required();
    master->add_option("section", second)->required();
    master->add_option("--order", order);
    auto* grass = app.add_subcommand("grassmann-fuzz", "linear coisotropy criteria on random charts");
    grass->add_option("--n", n);
    grass->add_option("--k", k);
    grass->add_option("--trials", trials);
    grass->add_option("--seed", seed);
    auto* mc = app.add_subcommand("mc-solve", "order-by-order Maurer-Cartan solve");
    mc->add_option("model", model)->required();
    mc->add_option("section", second, "section file; its gamma1 is used");
    mc->add_option("--gamma1", gamma1, "leafwise closed 1-form");
    mc->add_option("--order", order);
    auto* kur = app.add_subcommand("kuranishi", "second-order obstruction class");
    kur->add_option("model", model)->required();
    kur->add_option("section", second, "section file; its gamma1 is used");
    kur->add_option("--gamma1", gamma1, "leafwise closed 1-form");
    auto* dims = app.add_subcommand("def-dims", "truncated deformation space dimensions");
    dims->add_option("model", model)->required();
    dims->add_option("--truncation", truncation);
    auto* bulk = app.add_subcommand("bulk-check", "bulk deformation residuals");
    bulk->add_option("model", model)->required();
    bulk->add_option("series", second)->required();
    bulk->add_option("--order", order);
    auto* zam = app.add_subcommand("zambon", "the Zambon pipeline");

    CLI11_PARSE(app, argc, argv);

    Report rep;
    int code = kOk;
    try {
        if (*check)
            rep.command = "check", cmd_check(rep, model);
        else if (*thick)
            rep.command = "thicken", cmd_thicken(rep, model, output);
        else if (*linf)
            rep.command = "linfty-check", cmd_linfty(rep, model, trials, max_arity, seed);
        else if (*master)
            rep.command = "master-residual", cmd_master(rep, model, second, order);
        else if (*grass)
            rep.command = "grassmann-fuzz", cmd_grassmann(rep, n, k, trials, seed);
        else if (*mc)
            rep.command = "mc-solve", cmd_mc(rep, model, second, gamma1, order);
        else if (*kur)
            rep.command = "kuranishi", cmd_kuranishi(rep, model, second, gamma1);
        else if (*dims)
            rep.command = "def-dims", cmd_def_dims(rep, model, truncation);
        else if (*bulk)
            rep.command = "bulk-check", cmd_bulk(rep, model, second, order);
        else if (*zam)
            rep.command = "zambon", cmd_zambon(rep);
        code = rep.ok ? kOk : kCheckFailed;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        rep.data["error"] = e.what();
        code = kInputError;
    } catch (const MathError& e) {
        std::cerr << "unsupported: " << e.what() << "\n";
        rep.data["error"] = e.what();
        code = kUnsupported;
    }

    if (!json_path.empty()) {
        json out = {{"command", rep.command}, {"ok", code == kOk}, {"exit_code", code}, {"checks", rep.checks},
                    {"data", rep.data}};
        std::ofstream f(json_path);
        f << out.dump(2) << "\n";
    }
    return code;
}
