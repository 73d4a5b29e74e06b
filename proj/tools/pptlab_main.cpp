// Command-line workbench around the pptlab library: PPT checks, entanglement
// mappings, map classification, distance measures, block-matrix and map-family
// analyses, plus the seeded batch verification runner.
//
// Exit codes: 0 success, 1 a verify-mode run found a violation where none was
// expected, 2 usage error or malformed input.

#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "pptlab/batch.hpp"
#include "pptlab/cklmaps.hpp"
#include "pptlab/eigen.hpp"
#include "pptlab/entangling.hpp"
#include "pptlab/json_io.hpp"
#include "pptlab/mapspace.hpp"
#include "pptlab/measures.hpp"
#include "pptlab/parallel.hpp"
#include "pptlab/states.hpp"
#include "pptlab/stormer.hpp"
#include "pptlab/tomita.hpp"

namespace {

using namespace pptlab;

struct GlobalOpts {
    std::uint64_t seed = 1;
    std::string dims;
    double tol = 0.0; // 0 = keep the default PSD tolerance scale
    std::size_t max_iter = 0;
    std::string format = "json";
    std::string out;
};

FactorSplit parse_dims(const std::string& s) {
    const auto x = s.find('x');
    if (x == std::string::npos) throw bad_config("--dims expects dAxdB, e.g. 2x3");
    FactorSplit split;
    try {
        split.dA = std::stoul(s.substr(0, x));
        split.dB = std::stoul(s.substr(x + 1));
    } catch (...) {
        throw bad_config("--dims expects dAxdB, e.g. 2x3");
    }
    if (split.dA < 1 || split.dB < 1) throw bad_config("--dims components must be >= 1");
    return split;
}

void emit(const GlobalOpts& g, const std::string& payload) {
    if (g.out.empty()) {
        std::cout << payload << "\n";
    } else {
        write_file(g.out, payload + "\n");
    }
}

void write_membership(JsonWriter& w, const ConeMembership& m) {
    w.begin_object();
    w.key("in_pn").value(m.in_pn);
    w.key("in_pn_tau").value(m.in_pn_tau);
    w.key("in_intersection").value(m.in_intersection);
    w.key("min_eig_x").value(m.min_eig_x);
    w.key("min_eig_x_pt").value(m.min_eig_x_pt);
    w.key("min_eig_a").value(m.min_eig_a);
    w.key("min_eig_a_pt").value(m.min_eig_a_pt);
    w.end_object();
}

BipartiteState load_state(const GlobalOpts& g, const std::string& path) {
    BipartiteState s = parse_state_json(read_file(path));
    if (!g.dims.empty()) {
        FactorSplit want = parse_dims(g.dims);
        if (!(want == s.split))
            throw bad_config("--dims disagrees with the split stored in " + path);
    }
    validate_state(s);
    return s;
}

int cmd_ppt_check(const GlobalOpts& g, const std::string& in) {
    BipartiteState s = load_state(g, in);
    PPTVerdict v = is_ppt(s);
    JsonWriter w;
    w.begin_object();
    w.key("is_ppt").value(v.is_ppt);
    w.key("min_eig").value(v.min_eig);
    w.key("witness");
    write_vector(w, v.witness);
    w.end_object();
    emit(g, w.str());
    return 0;
}

int cmd_entangle_map(const GlobalOpts& g, const std::string& in, std::size_t samples) {
    BipartiteState s = load_state(g, in);
    EntanglingOperator h = build_entangling_operator(s);
    auto [fwd, star] = entanglement_maps_from(h);
    ResidualReport rep = verify_representation(s, samples, g.seed);
    CPClassification cls = classify_cp(map_from_entanglement(star));
    JsonWriter w;
    w.begin_object();
    w.key("representation_max_residual").value(rep.max_residual);
    w.key("representation_pass").value(rep.pass);
    w.key("phi_star_cp").value(cls.cp);
    w.key("phi_star_co_cp").value(cls.co_cp);
    w.key("min_choi_eig").value(cls.min_choi_eig);
    w.key("phi_star_choi");
    write_matrix(w, star.choi);
    w.key("phi_choi");
    write_matrix(w, fwd.choi);
    w.key("entangling_operator");
    write_matrix(w, h.matrix);
    w.end_object();
    emit(g, w.str());
    return 0;
}

int cmd_classify_map(const GlobalOpts& g, const std::string& in) {
    LinearMap m = parse_map_json(read_file(in));
    SearchBudget pos;
    DecompBudget dec;
    if (g.max_iter) {
        pos.iters = g.max_iter;
        dec.feas_iters = g.max_iter;
    }
    MapClassification c = classify_map(m, pos, dec, g.seed);
    JsonWriter w;
    w.begin_object();
    w.key("cp").value(c.cp.cp);
    w.key("co_cp").value(c.cp.co_cp);
    w.key("min_choi_eig").value(c.cp.min_choi_eig);
    w.key("min_cochoi_eig").value(c.cp.min_cochoi_eig);
    w.key("positive").begin_object();
    w.key("status").value(c.positive.status == PositiveStatus::verified_violation
                              ? "verified_violation"
                              : "no_violation_found");
    w.key("min_value").value(c.positive.min_value);
    w.end_object();
    w.key("decomposable").begin_object();
    const char* st = c.decomposable.status == DecomposableStatus::feasible ? "feasible"
                     : c.decomposable.status == DecomposableStatus::certificate
                         ? "certificate"
                         : "inconclusive";
    w.key("status").value(st);
    if (c.decomposable.status == DecomposableStatus::feasible)
        w.key("residual").value(c.decomposable.residual);
    if (c.decomposable.status == DecomposableStatus::certificate) {
        w.key("pairing_value").value(c.decomposable.value);
        w.key("witness");
        write_matrix(w, c.decomposable.witness);
    }
    w.end_object();
    w.end_object();
    emit(g, w.str());
    return 0;
}

int cmd_measure(const GlobalOpts& g, const std::string& in, const std::string& which) {
    BipartiteState s = load_state(g, in);
    ConeVector xi = cone_representative(s);
    JsonWriter w;
    w.begin_object();
    if (which == "dge" || which == "both") {
        DykstraOptions opts;
        if (g.max_iter) opts.max_iter = g.max_iter;
        DykstraResult r = dykstra_project(xi, opts);
        w.key("d_ge").value(r.distance);
        w.key("dykstra_iterations").value(r.iterations);
        w.key("dykstra_converged").value(r.converged);
    }
    if (which == "de" || which == "both") {
        SeesawOptions so;
        if (g.max_iter) so.iters = g.max_iter;
        MeasureSandwich ms = d_e_sandwich(xi, so, g.seed);
        w.key("d_e_lower").value(ms.lower);
        w.key("d_e_upper").value(ms.upper);
    }
    w.end_object();
    emit(g, w.str());
    return 0;
}

int cmd_stormer(const GlobalOpts& g, const std::string& in) {
    StormerPair p = parse_pair_json(read_file(in));
    StormerCondition c = stormer_condition(p);
    JsonWriter w;
    w.begin_object();
    w.key("block_psd").value(c.block_psd);
    w.key("transposed_psd").value(c.transposed_psd);
    w.key("min_eig_block").value(c.min_eig_block);
    w.key("min_eig_transposed").value(c.min_eig_transposed);
    if (c.holds()) {
        StormerDecomposition d = canonical_decomposition(p);
        w.key("normality_residual").value(d.normality_residual);
        w.key("residual_a2").value(d.residual_a2);
        w.key("residual_block").value(d.residual_block);
        w.key("residual_separable").value(d.residual_separable);
        w.key("partial").value(d.partial);
        w.key("lambdas").begin_array();
        for (const auto& l : d.lambdas) {
            w.begin_object();
            w.key("re").value(l.real());
            w.key("im").value(l.imag());
            w.end_object();
        }
        w.end_array();
        w.key("alphas").begin_array();
        for (double a : d.alphas) w.value(a);
        w.end_array();
    }
    w.end_object();
    emit(g, w.str());
    return 0;
}

int cmd_ckl_classify(const GlobalOpts& g, double a, double b, double c) {
    CKLClassification cls = ckl_classify(CKLParams{a, b, c}, SearchBudget{}, DecompBudget{}, g.seed);
    JsonWriter w;
    w.begin_object();
    w.key("a").value(a);
    w.key("b").value(b);
    w.key("c").value(c);
    w.key("positive").value(cls.positive);
    w.key("cp").value(cls.cp);
    w.key("decomposable").value(cls.decomposable);
    w.key("atom_note").value(a == 2.0 && b == 0.0 && c == 1.0);
    w.key("near_boundary").value(cls.near_boundary);
    w.key("numeric").begin_object();
    w.key("choi_min_eig").value(cls.numeric_cp.min_choi_eig);
    w.key("cp_agrees").value(cls.cp_agrees);
    w.key("positive_agrees").value(cls.positive_agrees);
    w.key("decomposable_agrees").value(cls.decomposable_agrees);
    w.end_object();
    w.end_object();
    emit(g, w.str());
    return 0;
}

int cmd_ckl_functional(const GlobalOpts& g, double a, double b, double c, std::size_t samples) {
    CKLFunctional f = ckl_functional(CKLParams{a, b, c});
    WitnessSearchResult r = ckl_witness_search(f, samples, g.seed);
    JsonWriter w;
    w.begin_object();
    w.key("positive_region").value(f.positive_region);
    w.key("projective_min_sampled").value(r.projective_min_sampled);
    w.key("samples").value(r.samples);
    w.key("injective_witness_found").value(r.witness_found);
    w.key("injective_value").value(r.injective_value);
    w.key("witness_is_ppt").value(r.witness_is_ppt);
    w.key("injective_witness");
    write_matrix(w, r.injective_witness);
    w.end_object();
    emit(g, w.str());
    return 0;
}

int cmd_ckl_grid(const GlobalOpts& g, std::size_t n, std::size_t pos_samples,
                 std::size_t feas_samples) {
    CKLGridReport rep = ckl_grid_validate(n, pos_samples, feas_samples, g.seed);
    JsonWriter w;
    w.begin_object();
    w.key("points").value(rep.points);
    w.key("cp_checked").value(rep.cp_checked);
    w.key("cp_disagreements").value(rep.cp_disagreements);
    w.key("positive_checked").value(rep.positive_checked);
    w.key("positive_disagreements").value(rep.positive_disagreements);
    w.key("decomposable_checked").value(rep.decomposable_checked);
    w.key("decomposable_failures").value(rep.decomposable_failures);
    w.key("max_feasibility_residual").value(rep.max_feasibility_residual);
    w.key("exceptions").begin_array();
    for (const auto& e : rep.exceptions) w.value(e);
    w.end_array();
    w.end_object();
    emit(g, w.str());
    const bool bad = rep.cp_disagreements || rep.positive_disagreements ||
                     rep.decomposable_failures || rep.max_feasibility_residual > 1e-7;
    return bad ? 1 : 0;
}

int cmd_tomita_verify(const GlobalOpts& g, std::size_t dim, std::size_t trials) {
    StandardForm sf = standard_form(random_faithful_density(dim, g.seed));
    TranspositionReport rep = verify_transposition_structure(sf, trials, g.seed + 1);
    JsonWriter w;
    w.begin_object();
    w.key("dim").value(dim);
    w.key("trials").value(rep.trials);
    w.key("max_residual_adjoint_form").value(rep.max_residual_adjoint_form);
    w.key("max_residual_polar_form").value(rep.max_residual_polar_form);
    w.key("pass").value(rep.pass);
    w.end_object();
    emit(g, w.str());
    return rep.pass ? 0 : 1;
}

int cmd_compare(const GlobalOpts& g, const std::string& in, const std::string& ref_a,
                const std::string& ref_b, std::size_t probes) {
    BipartiteState s = load_state(g, in);
    ConeContext ctx =
        (ref_a.empty() || ref_b.empty())
            ? uniform_cone_context(s.split)
            : cone_context(s.split, parse_matrix_json(read_file(ref_a)),
                           parse_matrix_json(read_file(ref_b)));
    ComparisonRecord rec = compare_characterizations(s, ctx, probes, g.seed);
    JsonWriter w;
    w.begin_object();
    w.key("is_ppt").value(rec.density_ppt.is_ppt);
    w.key("ppt_min_eig").value(rec.density_ppt.min_eig);
    w.key("phi_star_cp").value(rec.phi_star_cp);
    w.key("phi_star_co_cp").value(rec.phi_star_co_cp);
    w.key("sqrt_membership");
    write_membership(w, rec.sqrt_membership);
    w.key("sandwich_membership");
    write_membership(w, rec.sandwich_membership);
    w.key("eq_u_residual").value(rec.eq_u_residual);
    w.key("probes").value(rec.probes);
    w.end_object();
    emit(g, w.str());
    return 0; // experimental evidence, never a failure
}

int cmd_gen(const GlobalOpts& g, const std::string& kind, std::size_t d, double p,
            std::size_t rank, std::size_t terms, const std::string& schmidt, bool haar) {
    FactorSplit split = g.dims.empty() ? FactorSplit{d, d} : parse_dims(g.dims);
    BipartiteState s;
    if (kind == "isotropic") {
        s = isotropic(d, p);
    } else if (kind == "random") {
        const std::size_t dim = split.dim();
        s = BipartiteState{split, random_density(dim, rank ? rank : dim, g.seed)};
    } else if (kind == "separable") {
        s = random_separable(split, terms ? terms : 3, g.seed).state;
    } else if (kind == "pure") {
        SchmidtSpec spec;
        spec.haar = haar || schmidt.empty();
        if (!spec.haar) {
            std::string tok;
            for (char ch : schmidt + ",") {
                if (ch == ',') {
                    if (!tok.empty()) spec.coefficients.push_back(std::stod(tok));
                    tok.clear();
                } else {
                    tok += ch;
                }
            }
        }
        s = random_pure_bipartite(split, spec, g.seed);
    } else {
        throw bad_config("gen: kind must be isotropic|random|separable|pure");
    }
    emit(g, state_to_json(s));
    return 0;
}

int cmd_batch_verify(const GlobalOpts& g, const std::string& config_path,
                     const std::string& csv_path) {
    BatchConfig cfg =
        config_path.empty() ? default_batch_config() : parse_batch_config(read_file(config_path));
    if (config_path.empty()) cfg.seed = g.seed;
    RunReport rep = batch_verify(cfg);
    const std::string json = report_to_json(rep);
    if (g.format == "csv" && g.out.empty()) {
        std::cout << report_to_csv(rep);
    } else {
        emit(g, json);
    }
    if (!csv_path.empty()) write_file(csv_path, report_to_csv(rep));
    if (!g.out.empty() || !csv_path.empty() || g.format == "csv") {
        std::fprintf(stderr, "batch-verify: pass=%zu fail=%zu inconclusive=%zu\n", rep.pass,
                     rep.fail, rep.inconclusive);
    }
    return rep.ok() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"pptlab: PPT states, entanglement mappings and distance measures workbench"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--seed", g.seed, "master seed for every randomized routine");
    app.add_option("--dims", g.dims, "factor dimensions dAxdB (e.g. 2x3)");
    app.add_option("--tol", g.tol, "PSD tolerance scale (default 1e-9)");
    app.add_option("--max-iter", g.max_iter, "iteration cap override for iterative routines");
    app.add_option("--format", g.format, "stdout format: json|csv")
        ->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--out", g.out, "write the primary output to this file");

    std::string in_path, which = "both", ref_a, ref_b, config_path, csv_path, schmidt;
    std::size_t samples = 100, dim = 3, trials = 100, probes = 20;
    std::size_t grid_n = 20, pos_samples = 48, feas_samples = 64;
    std::size_t gen_d = 2, gen_rank = 0, gen_terms = 0;
    double gen_p = 0.5;
    bool gen_haar = false;
    double ckl_a = 0, ckl_b = 0, ckl_c = 0;

    auto* ppt = app.add_subcommand("ppt-check", "partial-transpose test of a state file");
    ppt->add_option("--in", in_path, "state JSON file")->required();

    auto* ent = app.add_subcommand("entangle-map",
                                   "entangling operator, maps and representation residuals");
    ent->add_option("--in", in_path, "state JSON file")->required();
    ent->add_option("--samples", samples, "random pairs for the residual check");

    auto* cls = app.add_subcommand("classify-map", "CP/co-CP/positivity/decomposability");
    cls->add_option("--in", in_path, "map JSON file {dim_in, dim_out, choi}")->required();

    auto* mea = app.add_subcommand("measure", "distance measures of a state's cone vector");
    mea->add_option("--in", in_path, "state JSON file")->required();
    mea->add_option("--which", which, "de|dge|both")->check(CLI::IsMember({"de", "dge", "both"}));

    auto* sto = app.add_subcommand("stormer", "2x2 block condition and canonical decomposition");
    sto->add_option("--in", in_path, "pair JSON file {a1, a2}")->required();

    auto* ckl = app.add_subcommand("ckl", "the phi[a,b,c] family on M_3");
    ckl->require_subcommand(1);
    auto* cklc = ckl->add_subcommand("classify", "analytic regions plus numeric cross-check");
    cklc->add_option("a", ckl_a, "parameter a")->required();
    cklc->add_option("b", ckl_b, "parameter b")->required();
    cklc->add_option("c", ckl_c, "parameter c")->required();
    auto* cklf = ckl->add_subcommand("functional", "the induced functional and witness search");
    cklf->add_option("a", ckl_a, "parameter a")->required();
    cklf->add_option("b", ckl_b, "parameter b")->required();
    cklf->add_option("c", ckl_c, "parameter c")->required();
    cklf->add_option("--samples", samples, "product-pair samples");
    auto* cklg = ckl->add_subcommand("grid", "region validation over the parameter grid");
    cklg->add_option("--n", grid_n, "grid resolution per axis");
    cklg->add_option("--pos-samples", pos_samples, "positivity subsample size");
    cklg->add_option("--feas-samples", feas_samples, "feasibility subsample size");

    auto* tom = app.add_subcommand("tomita-verify", "modular/transposition identities");
    tom->add_option("--dim", dim, "single-system dimension");
    tom->add_option("--trials", trials, "random probes");

    auto* cmp = app.add_subcommand("compare", "all characterizations side by side (evidence)");
    cmp->add_option("--in", in_path, "state JSON file")->required();
    cmp->add_option("--ref-a", ref_a, "diagonal reference density for factor A (matrix JSON)");
    cmp->add_option("--ref-b", ref_b, "diagonal reference density for factor B (matrix JSON)");
    cmp->add_option("--probes", probes, "probe pairs for the transposed-state identity");

    auto* gen = app.add_subcommand("gen", "generate instance files");
    std::string gen_kind;
    gen->add_option("kind", gen_kind, "isotropic|random|separable|pure")->required();
    gen->add_option("--d", gen_d, "local dimension for isotropic");
    gen->add_option("--p", gen_p, "isotropic mixing parameter");
    gen->add_option("--rank", gen_rank, "rank for random densities");
    gen->add_option("--terms", gen_terms, "terms for separable mixtures");
    gen->add_option("--schmidt", schmidt, "comma-separated Schmidt coefficients");
    gen->add_flag("--haar", gen_haar, "Haar-random pure state");

    auto* bat = app.add_subcommand("batch-verify", "run the identity suites and write a report");
    bat->add_option("--config", config_path, "config JSON {seed, suites:[...]}");
    bat->add_option("--csv", csv_path, "also write the report as CSV to this path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp")
            return app.exit(e);
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        if (g.tol > 0.0) psd_tol_scale() = g.tol;
        if (ppt->parsed()) return cmd_ppt_check(g, in_path);
        if (ent->parsed()) return cmd_entangle_map(g, in_path, samples);
        if (cls->parsed()) return cmd_classify_map(g, in_path);
        if (mea->parsed()) return cmd_measure(g, in_path, which);
        if (sto->parsed()) return cmd_stormer(g, in_path);
        if (ckl->parsed()) {
            if (cklc->parsed()) return cmd_ckl_classify(g, ckl_a, ckl_b, ckl_c);
            if (cklf->parsed()) return cmd_ckl_functional(g, ckl_a, ckl_b, ckl_c, samples);
            if (cklg->parsed()) return cmd_ckl_grid(g, grid_n, pos_samples, feas_samples);
        }
        if (tom->parsed()) return cmd_tomita_verify(g, dim, trials);
        if (cmp->parsed()) return cmd_compare(g, in_path, ref_a, ref_b, probes);
        if (gen->parsed())
            return cmd_gen(g, gen_kind, gen_d, gen_p, gen_rank, gen_terms, schmidt, gen_haar);
        if (bat->parsed()) return cmd_batch_verify(g, config_path, csv_path);
    } catch (const bad_config& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
