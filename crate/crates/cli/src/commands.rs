use std::path::Path;

use chainext_core::brst::{self, build_brst, check_ideal_conditions, l2_p_table, verify_brst_resolution};
use chainext_core::bv::{
    self, check_double_bracket, master_check, obstruction_r, pick_deformation, theorem8_maps, verify_theorem8,
    DeformationProblem,
};
use chainext_core::complexes::{
    chain_extend, check_l2_conditions, homology_dim, total_homology_dims, verify_homotopy, verify_nilpotent,
};
use chainext_core::exactla::fmt_coeff;
use chainext_core::fuzz::run_fuzz;
use chainext_core::io::{self, BvFile, ConstraintFile, LieFile, ResolutionFile};
use chainext_core::lie::{bracket2, ce_differential, ce_matrix, deform, h2, increasing_tuples, jacobi_check, Cochain, LieAlgebra};
use chainext_core::shlie::{
    build_shlie, check_t_linearity, cross_check_engine, l3_is_obstruction, variant_consistency, verify_shlie, Elem,
    ShLieStructure, Variant,
};
use chainext_core::superalg::SuperPoly;
use chainext_core::{Error, Rat, Report, Result};

use crate::{Output, RunConfig, DEFAULT_CAP, DEFAULT_TRUNC};

fn input(cfg: &RunConfig) -> Result<&Path> {
    cfg.input.as_deref().ok_or_else(|| Error::Parse("--input is required".into()))
}

fn prefixed(r: Report, prefix: &str) -> Report {
    let mut out = Report::new();
    for c in r.checks {
        out.push(format!("{prefix}{}", c.name), c.passed, c.detail);
    }
    out
}

/// `c_1*e1 + c_2*e2 + …` with unit coefficients elided.
pub fn fmt_combination(names: &[String], coeffs: &[Rat]) -> String {
    let mut out = String::new();
    for (name, c) in names.iter().zip(coeffs) {
        if c == &Rat::from_integer(0.into()) {
            continue;
        }
        let neg = c < &Rat::from_integer(0.into());
        let mag = if neg { -c } else { c.clone() };
        if out.is_empty() {
            out.push_str(if neg { "-" } else { "" });
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if mag != Rat::from_integer(1.into()) {
            out.push_str(&fmt_coeff(&mag));
            out.push('*');
        }
        out.push_str(name);
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

/// Nonzero values of a cochain on increasing basis tuples.
pub fn cochain_rows(a: &LieAlgebra, c: &Cochain) -> Vec<(String, String)> {
    increasing_tuples(c.dim(), c.arity())
        .into_iter()
        .filter_map(|t| {
            let v = c.eval(&t);
            let s = fmt_combination(&a.names, &v);
            (s != "0").then(|| {
                let args: Vec<&str> = t.iter().map(|&i| a.names[i].as_str()).collect();
                (format!("({})", args.join(", ")), s)
            })
        })
        .collect()
}

fn lie_input(cfg: &RunConfig) -> Result<(LieFile, LieAlgebra)> {
    let file: LieFile = io::load(input(cfg)?)?;
    let a = file.algebra()?;
    if !jacobi_check(&a) {
        return Err(Error::Precondition("bracket fails the Jacobi identity".into()));
    }
    Ok((file, a))
}

/// `--alpha1 k` picks the k-th H² representative; otherwise the file's
/// `alpha1`, otherwise the first representative.
fn select_alpha1(cfg: &RunConfig, file: &LieFile, reps: &[Cochain]) -> Result<Option<(String, Cochain)>> {
    if let Some(k) = cfg.alpha1 {
        let c = reps
            .get(k.wrapping_sub(1))
            .ok_or_else(|| Error::Precondition(format!("--alpha1 {k}: H2 has {} representatives", reps.len())))?;
        return Ok(Some((format!("H2 representative {k}"), c.clone())));
    }
    if let Some(c) = file.alpha1()? {
        return Ok(Some(("input file".into(), c)));
    }
    Ok(reps.first().map(|c| ("H2 representative 1".into(), c.clone())))
}

pub fn cmd_lie(cfg: &RunConfig) -> Result<Output> {
    let (file, a) = lie_input(cfg)?;
    let mut out = Output::new("lie");
    out.fact("algebra", &file.name);
    out.fact("dim", a.dim());
    out.report.push("Jacobi identity", true, "");

    let h = h2(&a)?;
    out.fact("H2 dim", h.dim);
    let d1 = ce_matrix(&a, 1)?;
    let d2 = ce_matrix(&a, 2)?;
    let oracle = d2.cols() - d2.rank() - d1.rank();
    out.report.push("dim H2 = dim ker d2 - rank d1", h.dim == oracle, format!("{} vs {oracle}", h.dim));
    let bad = h.representatives.iter().position(|r| !ce_differential(&a, r).map(|d| d.is_zero()).unwrap_or(false));
    out.report.push("H2 representatives are cocycles", bad.is_none(), bad.map(|i| format!("#{}", i + 1)).unwrap_or_default());
    for (i, r) in h.representatives.iter().enumerate() {
        out.table(format!("H2 representative {}", i + 1), cochain_rows(&a, r));
    }

    let Some((source, alpha1)) = select_alpha1(cfg, &file, &h.representatives)? else {
        out.fact("alpha1", "none (H2 = 0)");
        return Ok(out);
    };
    out.fact("alpha1", source);
    out.table("alpha1", cochain_rows(&a, &alpha1));
    let cocycle = ce_differential(&a, &alpha1)?.is_zero();
    out.report.push("alpha1 is a cocycle", cocycle, "");
    let sq = bracket2(&alpha1, &alpha1)?;
    out.fact("[alpha1, alpha1] vanishes", if sq.is_zero() { "yes" } else { "no" });
    out.table("[alpha1, alpha1]", cochain_rows(&a, &sq));
    if !cocycle {
        return Ok(out);
    }

    let order = cfg.order.unwrap_or(3).max(1);
    let attempt = deform(&a, &alpha1, order)?;
    for (k, alpha) in attempt.alphas.iter().enumerate().skip(1) {
        out.table(format!("alpha{}", k + 1), cochain_rows(&a, alpha));
    }
    match &attempt.obstructed_at {
        Some((n, rho)) => {
            out.fact("extension", format!("obstructed at order {n}"));
            out.table(format!("obstruction at order {n}"), cochain_rows(&a, rho));
        }
        None => out.fact("extension", format!("unobstructed through order {order}")),
    }
    Ok(out)
}

fn shlie_tables(out: &mut Output, s: &ShLieStructure) {
    let n = s.dim();
    let pairs = increasing_tuples(n, 2)
        .into_iter()
        .map(|t| {
            let (x, y) = (Elem::plain(t[0], 0), Elem::plain(t[1], 0));
            (format!("l2({}, {})", s.name(&x), s.name(&y)), s.format_series(&s.l2(&x, &y)))
        })
        .collect();
    out.table("l2 on generators", pairs);
    let triples = increasing_tuples(n, 3)
        .into_iter()
        .map(|t| {
            let e: Vec<Elem> = t.iter().map(|&i| Elem::plain(i, 0)).collect();
            let names: Vec<String> = e.iter().map(|x| s.name(x)).collect();
            (format!("l3({})", names.join(", ")), s.format_series(&s.l3(&e[0], &e[1], &e[2])))
        })
        .collect();
    out.table("l3 on generators", triples);
}

pub fn cmd_shlie(cfg: &RunConfig) -> Result<Output> {
    let (file, a) = lie_input(cfg)?;
    let trunc = cfg.trunc.unwrap_or(DEFAULT_TRUNC);
    let h = h2(&a)?;
    let (source, alpha1) = select_alpha1(cfg, &file, &h.representatives)?
        .unwrap_or_else(|| ("zero (H2 = 0)".into(), Cochain::zero(a.dim(), 2)));
    let mut out = Output::new("shlie");
    out.fact("algebra", &file.name);
    out.fact("trunc", trunc);
    out.fact("alpha1", source);
    out.table("alpha1", cochain_rows(&a, &alpha1));
    out.table("[alpha1, alpha1]", cochain_rows(&a, &bracket2(&alpha1, &alpha1)?));

    let truncated = build_shlie(&a, &alpha1, trunc, Variant::TruncatedT2)?;
    let full = build_shlie(&a, &alpha1, trunc, Variant::Full)?;
    shlie_tables(&mut out, &truncated);
    for (tag, s) in [("t2", &truncated), ("full", &full)] {
        out.report.extend(prefixed(verify_shlie(s), &format!("[{tag}] ")));
        out.report.push(format!("[{tag}] l3 is the obstruction [alpha1, alpha1]"), l3_is_obstruction(s), "");
        out.report.extend(prefixed(check_t_linearity(s), &format!("[{tag}] ")));
    }
    out.report.extend(variant_consistency(&full, &truncated));
    if cfg.cross_check {
        for (tag, s) in [("t2", &truncated), ("full", &full)] {
            out.report.extend(prefixed(cross_check_engine(s)?, &format!("[{tag} engine] ")));
        }
    }
    Ok(out)
}

fn cap_of(cfg: &RunConfig, file_cap: Option<u32>) -> u32 {
    cfg.cap.or(file_cap).unwrap_or(DEFAULT_CAP)
}

pub fn cmd_brst(cfg: &RunConfig) -> Result<Output> {
    let file: ConstraintFile = io::load(input(cfg)?)?;
    let sys = file.system()?;
    let cap = cap_of(cfg, file.cap);
    let mut out = Output::new("brst");
    out.fact("system", &file.name);
    out.fact("cap", cap);
    out.fact("structure", if sys.has_constant_structure() { "constant" } else { "nonconstant" });

    out.report.extend(verify_brst_resolution(&sys, cap));
    out.report.extend(check_ideal_conditions(&sys, cap));
    let ext = build_brst(&sys, cap)?;
    out.report.extend(ext.verify());

    let rows = l2_p_table(&ext);
    let bad: Vec<&str> = rows.iter().filter(|r| !r.matches).map(|r| r.generator.as_str()).collect();
    out.report.push("l2(P_a) matches the closed form", bad.is_empty(), bad.join(", "));
    out.table("l2(P_a)", rows.iter().map(|r| (r.generator.clone(), r.l2.clone())).collect());
    out.table("l2(P_a) closed form", rows.iter().map(|r| (r.generator.clone(), r.closed_form.clone())).collect());

    let l3_gens: Vec<(String, String)> = (0..sys.gens.len())
        .filter(|&i| sys.gens.get(i).antighost == 0)
        .map(|i| {
            let g = SuperPoly::generator(&sys.gens, i);
            (sys.gens.get(i).name.clone(), ext.l3(&g).to_string())
        })
        .collect();
    out.table("l3 on antighost-zero generators", l3_gens);
    out.fact("l3 vanishes", if ext.l3_is_zero() { "yes" } else { "no" });
    if sys.has_constant_structure() {
        out.report.push("l3 = 0 for constant structure", ext.l3_is_zero(), "");
    }
    let support: Vec<String> = ext.l3_support().iter().map(|p| p.to_string()).collect();
    out.fact("l3 support", if support.is_empty() { "none".into() } else { support.join(", ") });

    if cfg.cross_check {
        let ex = brst::export_to_complexes(&sys, cap)?;
        let mut r = verify_homotopy(&ex.homotopy)?;
        let e = chain_extend(&ex.homotopy, &ex.l2_0)?;
        r.extend(verify_nilpotent(&e));
        let top = ex.homotopy.space.top();
        let l2_ok = (0..=top).all(|p| ext.l2_matrix(p).map(|m| &m == e.l2.block(p)).unwrap_or(false));
        let l3_ok = (0..=top).all(|p| ext.l3_matrix(p).map(|m| &m == e.l3.block(p)).unwrap_or(false));
        r.push("l2 equals the generic l2", l2_ok, "");
        r.push("l3 equals the generic l3", l3_ok, "");
        out.report.extend(prefixed(r, "[engine] "));
    }
    Ok(out)
}

pub fn cmd_bv(cfg: &RunConfig) -> Result<Output> {
    let file: BvFile = io::load(input(cfg)?)?;
    let model = file.model(cfg.cap)?;
    let mut actions = file.actions(&model)?;
    let mut out = Output::new("bv");
    out.fact("model", &file.name);
    out.fact("cap", model.cap);
    let s0 = actions[0].clone();
    let master = master_check(&model, &s0)?;
    out.report.push("(S_0, S_0) = 0", master, "");
    out.report.extend(check_double_bracket(&model, &s0));
    if actions.len() == 1 {
        let s1 = pick_deformation(&model, &s0)?
            .ok_or_else(|| Error::Precondition("no s_0-cocycle beyond S_0 up to the cap".into()))?;
        out.fact("S_1 source", "kernel search");
        actions.push(s1);
    }
    let problem = DeformationProblem::new(&model, actions)?;
    let n = problem.order();
    let trunc = cfg.trunc.or(file.trunc).unwrap_or(DEFAULT_TRUNC).max(2 * n);
    out.fact("order", n);
    out.fact("trunc", trunc);
    out.table("actions", problem.actions.iter().enumerate().map(|(i, s)| (format!("S_{i}"), s.to_string())).collect());
    let r = obstruction_r(&problem, n + 1);
    out.fact(format!("R_{}", n + 1), &r);

    let maps = theorem8_maps(&problem, trunc)?;
    out.report.extend(verify_theorem8(&maps));
    let gens: Vec<SuperPoly> = (0..model.gens.len()).map(|i| SuperPoly::generator(&model.gens, i)).collect();
    out.table(
        "l2 on generators",
        gens.iter().map(|g| (g.to_string(), maps.l2(&maps.plain(g, 0)).describe())).collect(),
    );
    out.table(
        "l3 on generators",
        gens.iter().map(|g| (g.to_string(), maps.l3(&maps.plain(g, 0)).describe())).collect(),
    );

    if cfg.cross_check {
        let ex = bv::export_to_complexes(&maps)?;
        let mut rep = verify_homotopy(&ex.homotopy)?;
        let e = chain_extend(&ex.homotopy, &ex.l2_0)?;
        rep.extend(verify_nilpotent(&e));
        let l3_ok = ex.x0.iter().enumerate().all(|(j, (m, k))| {
            e.l3.block(0).column(j) == ex.x1_column(&maps.l3(&maps.plain(&model.mono(m), *k)))
        });
        let l2_ok = ex.x1.iter().enumerate().all(|(j, (m, k))| {
            e.l2.block(1).column(j) == ex.x1_column(&maps.l2(&maps.starred(&model.mono(m), *k)))
        });
        rep.push("l2 on X_1 equals the generic l2", l2_ok, "");
        rep.push("l3 equals the generic l3", l3_ok, "");
        out.report.extend(prefixed(rep, "[engine] "));
    }
    Ok(out)
}

pub fn cmd_extend(cfg: &RunConfig) -> Result<Output> {
    let file: ResolutionFile = io::load(input(cfg)?)?;
    let res = file.resolution()?;
    let h = &res.homotopy;
    let mut out = Output::new("extend");
    out.fact("resolution", &file.name);
    out.fact("dims", format!("{:?}", h.space.dims));
    out.fact("dim F", h.f_dim);
    let conditions = check_l2_conditions(h, &res.l2_0, res.d_f.as_ref())?;
    let ok = conditions.passed();
    out.report.extend(conditions);
    if !ok {
        return Ok(out);
    }
    let e = chain_extend(h, &res.l2_0)?;
    out.report.extend(verify_nilpotent(&e));
    out.fact("l2 vanishes in positive degrees", if e.l2.blocks.iter().skip(1).all(|b| b.is_zero()) { "yes" } else { "no" });
    out.fact("l3 vanishes", if e.l3.is_zero() { "yes" } else { "no" });
    let d_f = match &res.d_f {
        Some(d) => d.clone(),
        None => h.induced_differential(&res.l2_0)?,
    };
    let hx = total_homology_dims(&e)?;
    let hf = homology_dim(&d_f)?;
    out.fact("dim H(X, l)", hx);
    out.fact("dim H(F, D_F)", hf);
    out.report.push("dim H(X, l) = dim H(F, D_F)", hx == hf, format!("{hx} vs {hf}"));
    Ok(out)
}

pub fn cmd_fuzz(cfg: &RunConfig) -> Result<Output> {
    let summary = run_fuzz(cfg.seed, cfg.count);
    let mut out = Output::new("fuzz");
    out.fact("seed", summary.seed);
    out.fact("instances", summary.instances);
    out.fact("passed", format!("{}/{}", summary.passed, summary.instances));
    out.fact("resampled", summary.rejected);
    out.table("failures", summary.failures.iter().enumerate().map(|(i, f)| (format!("#{}", i + 1), f.clone())).collect());
    out.report.push(
        "(l1 + l2 + l3)^2 = 0 on every instance",
        summary.all_passed(),
        format!("{}/{}", summary.passed, summary.instances),
    );
    Ok(out)
}
