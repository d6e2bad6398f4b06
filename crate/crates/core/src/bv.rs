//! Consistent deformations in the antifield formalism, on finite
//! field/antifield models.
//!
//! `R` is the polynomial algebra in fields and antifields, spanned up to a
//! degree cap by monomials. For a deformation `S_0, …, S_n` solving the
//! master equation to order `n`, the chain extension lives on
//! `X_0 = R ⊗ t^{0..T}` and `X_1 = R* ⊗ t^{n+1..T}` with `T ≥ 2n`:
//!
//! ```text
//! l1(a* t^k) = a t^k
//! l2(a)      =  Σ_i (S_i, a) t^i
//! l2(a*)     = -Σ_i (S_i, a)* t^i
//! l3(a)      = -½ Σ_{n+1 ≤ i+j ≤ 2n} ((S_i, S_j), a)* t^{i+j}
//! ```
//!
//! all extended `t`-linearly. Every `S_i` has terms of degree at least two,
//! so `(S_i, ·)` never lowers degree and the cap quotient is exact.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::complexes::{GradedMap, GradedSpace, HomotopyData};
use crate::error::{Error, Result};
use crate::exactla::{rat, Rat, RatMatrix};
use crate::report::Report;
use crate::superalg::{antibracket, check_pairs, monomials_up_to, GenKind, GenSet, GenSpec, Monomial, Parity, SuperPoly};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub name: String,
    pub parity: Parity,
    pub ghost: i32,
}

#[derive(Clone, Debug)]
pub struct BvModel {
    pub gens: Arc<GenSet>,
    /// `(field, antifield)` generator indices.
    pub pairs: Vec<(usize, usize)>,
    pub cap: u32,
}

impl BvModel {
    /// Fields in declaration order, then their antifields `<name>_star`.
    pub fn new(fields: &[FieldSpec], cap: u32) -> Result<Self> {
        let mut specs: Vec<GenSpec> =
            fields.iter().map(|f| GenSpec::new(f.name.clone(), f.parity, f.ghost, 0, GenKind::Field)).collect();
        specs.extend(
            fields
                .iter()
                .map(|f| GenSpec::new(format!("{}_star", f.name), f.parity.flip(), -f.ghost - 1, 0, GenKind::Antifield)),
        );
        let gens = GenSet::new(specs)?;
        let k = fields.len();
        let pairs: Vec<(usize, usize)> = (0..k).map(|i| (i, k + i)).collect();
        check_pairs(&gens, &pairs)?;
        if cap < 2 {
            return Err(Error::CapTooSmall { cap: cap as usize, detail: "actions are at least quadratic".into() });
        }
        Ok(BvModel { gens, pairs, cap })
    }

    pub fn bracket(&self, f: &SuperPoly, g: &SuperPoly) -> SuperPoly {
        antibracket(f, g, &self.pairs)
    }

    pub fn parse(&self, src: &str) -> Result<SuperPoly> {
        SuperPoly::parse(&self.gens, src)
    }

    pub fn basis(&self) -> Vec<Monomial> {
        monomials_up_to(&self.gens, self.cap)
    }

    pub fn mono(&self, m: &Monomial) -> SuperPoly {
        SuperPoly::monomial(&self.gens, m.clone(), Rat::one())
    }

    fn check_action(&self, s: &SuperPoly, what: &str) -> Result<()> {
        if s.is_zero() {
            return Ok(());
        }
        if s.parity() != Some(Parity::Even) {
            return Err(Error::Precondition(format!("{what} must be even")));
        }
        if s.ghost() != Some(0) {
            return Err(Error::Precondition(format!("{what} must have ghost number zero")));
        }
        if s.min_degree().unwrap_or(2) < 2 {
            return Err(Error::Precondition(format!("{what} has terms of degree below two")));
        }
        if s.degree() > self.cap {
            return Err(Error::CapTooSmall { cap: self.cap as usize, detail: format!("{what} = {s} exceeds the cap") });
        }
        Ok(())
    }
}

/// `(S_0, S_0) = 0`.
pub fn master_check(model: &BvModel, s0: &SuperPoly) -> Result<bool> {
    model.check_action(s0, "S_0")?;
    Ok(model.bracket(s0, s0).is_zero())
}

/// `s_0(a) = (S_0, a)`.
pub fn s0_differential(model: &BvModel, s0: &SuperPoly, a: &SuperPoly) -> SuperPoly {
    model.bracket(s0, a)
}

/// `(S,(S,x)) = ½((S,S),x)` on every monomial up to the cap.
pub fn check_double_bracket(model: &BvModel, s: &SuperPoly) -> Report {
    let ss = model.bracket(s, s);
    let bad = model.basis().into_iter().find(|m| {
        let x = model.mono(m);
        model.bracket(s, &model.bracket(s, &x)) != model.bracket(&ss, &x).scale(&rat(1, 2))
    });
    let mut r = Report::new();
    let bad = bad.map(|m| model.mono(&m).to_string());
    r.push("(S,(S,x)) = 1/2((S,S),x)", bad.is_none(), bad.unwrap_or_default());
    r
}

/// `S_0, …, S_n` solving the master equation modulo `t^{n+1}`.
#[derive(Clone, Debug)]
pub struct DeformationProblem {
    pub model: BvModel,
    pub actions: Vec<SuperPoly>,
}

impl DeformationProblem {
    pub fn new(model: &BvModel, actions: Vec<SuperPoly>) -> Result<Self> {
        if actions.len() < 2 {
            return Err(Error::Precondition("need S_0 and at least S_1".into()));
        }
        for (i, s) in actions.iter().enumerate() {
            model.check_action(s, &format!("S_{i}"))?;
        }
        let p = DeformationProblem { model: model.clone(), actions };
        for m in 0..=p.order() {
            let defect = p.master_defect(m);
            if !defect.is_zero() {
                return Err(Error::Precondition(format!("master equation fails at order {m}: {defect}")));
            }
        }
        Ok(p)
    }

    pub fn order(&self) -> usize {
        self.actions.len() - 1
    }

    /// `Σ_{i+j=m} (S_i, S_j)`, the `t^m` coefficient of `(S,S)`.
    pub fn master_defect(&self, m: usize) -> SuperPoly {
        let mut out = SuperPoly::zero(&self.model.gens);
        for i in 0..=m {
            if i < self.actions.len() && m - i < self.actions.len() {
                out.add_scaled(&self.model.bracket(&self.actions[i], &self.actions[m - i]), &Rat::one());
            }
        }
        out
    }
}

/// `R_k = Σ_{i+j=k, i,j≥1} (S_i, S_j)`.
pub fn obstruction_r(problem: &DeformationProblem, k: usize) -> SuperPoly {
    let mut out = SuperPoly::zero(&problem.model.gens);
    let s = &problem.actions;
    for i in 1..k {
        let j = k - i;
        if i < s.len() && j >= 1 && j < s.len() {
            out.add_scaled(&problem.model.bracket(&s[i], &s[j]), &Rat::one());
        }
    }
    out
}

/// Kernel of `s_0` on even ghost-zero polynomials of degree `2..=cap`.
pub fn s0_cocycles(model: &BvModel, s0: &SuperPoly) -> Result<Vec<SuperPoly>> {
    let probe = SuperPoly::zero(&model.gens);
    let domain: Vec<Monomial> = model
        .basis()
        .into_iter()
        .filter(|m| crate::superalg::monomial_degree(m) >= 2 && !probe.monomial_parity(m) && probe.monomial_ghost(m) == 0)
        .collect();
    let mut rows: BTreeMap<Monomial, usize> = BTreeMap::new();
    let images: Vec<SuperPoly> = domain.iter().map(|m| s0_differential(model, s0, &model.mono(m))).collect();
    for img in &images {
        for (m, _) in img.terms() {
            let next = rows.len();
            rows.entry(m.clone()).or_insert(next);
        }
    }
    let mut mat = RatMatrix::zeros(rows.len(), domain.len());
    for (j, img) in images.iter().enumerate() {
        for (m, c) in img.terms() {
            mat[(rows[m], j)] = c.clone();
        }
    }
    Ok(mat
        .kernel_basis()
        .into_iter()
        .map(|v| {
            let mut p = SuperPoly::zero(&model.gens);
            for (m, c) in domain.iter().zip(v) {
                p.add_term(m.clone(), c);
            }
            p
        })
        .collect())
}

/// First cocycle not proportional to `S_0`.
pub fn pick_deformation(model: &BvModel, s0: &SuperPoly) -> Result<Option<SuperPoly>> {
    let s0_vec: Vec<(Monomial, Rat)> = s0.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
    Ok(s0_cocycles(model, s0)?.into_iter().find(|z| {
        if s0.is_zero() {
            return true;
        }
        let (m0, c0) = &s0_vec[0];
        let k = z.coeff(m0) / c0;
        z != &s0.scale(&k)
    }))
}

/// An element of `X_0 ⊕ X_1`: `plain[k]` is the `t^k` coefficient in `R`,
/// `star[k]` the preimage under `*` of the `t^k` coefficient in `R*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TSeries {
    pub plain: Vec<SuperPoly>,
    pub star: Vec<SuperPoly>,
}

impl TSeries {
    pub fn zero(gens: &Arc<GenSet>, trunc: usize) -> Self {
        let z = SuperPoly::zero(gens);
        TSeries { plain: vec![z.clone(); trunc + 1], star: vec![z; trunc + 1] }
    }

    pub fn is_zero(&self) -> bool {
        self.plain.iter().chain(&self.star).all(SuperPoly::is_zero)
    }

    pub fn add(&self, other: &TSeries) -> TSeries {
        let zip = |a: &[SuperPoly], b: &[SuperPoly]| a.iter().zip(b).map(|(x, y)| x + y).collect();
        TSeries { plain: zip(&self.plain, &other.plain), star: zip(&self.star, &other.star) }
    }

    pub fn describe(&self) -> String {
        let mut parts = Vec::new();
        for (k, p) in self.plain.iter().enumerate() {
            if !p.is_zero() {
                parts.push(format!("({p}) t^{k}"));
            }
        }
        for (k, p) in self.star.iter().enumerate() {
            if !p.is_zero() {
                parts.push(format!("({p})* t^{k}"));
            }
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

#[derive(Clone, Debug)]
pub struct Theorem8Maps {
    pub problem: DeformationProblem,
    pub trunc: usize,
    /// Sign applied to `l2` on starred elements; `-1` is correct, anything
    /// else exists to exercise the verifier.
    pub star_l2_sign: Rat,
}

pub fn theorem8_maps(problem: &DeformationProblem, trunc: usize) -> Result<Theorem8Maps> {
    let n = problem.order();
    if trunc < 2 * n {
        return Err(Error::TruncationTooSmall { trunc, detail: format!("l3 reaches t^{}", 2 * n) });
    }
    Ok(Theorem8Maps { problem: problem.clone(), trunc, star_l2_sign: -Rat::one() })
}

impl Theorem8Maps {
    pub fn order(&self) -> usize {
        self.problem.order()
    }

    fn model(&self) -> &BvModel {
        &self.problem.model
    }

    fn cap(&self, p: SuperPoly) -> SuperPoly {
        p.truncate(self.model().cap)
    }

    /// Lowest `t`-power present in `X_1`.
    pub fn min_star_power(&self) -> usize {
        self.order() + 1
    }

    pub fn zero(&self) -> TSeries {
        TSeries::zero(&self.model().gens, self.trunc)
    }

    pub fn plain(&self, a: &SuperPoly, k: usize) -> TSeries {
        let mut v = self.zero();
        v.plain[k] = a.clone();
        v
    }

    pub fn starred(&self, a: &SuperPoly, k: usize) -> TSeries {
        let mut v = self.zero();
        v.star[k] = a.clone();
        v
    }

    /// Starred coefficients below `t^{n+1}` lie outside `X_1`.
    fn check_in_x1(&self, x: &TSeries) -> Result<()> {
        if x.star[..self.min_star_power().min(x.star.len())].iter().any(|p| !p.is_zero()) {
            return Err(Error::Precondition("starred coefficient below t^{n+1}".into()));
        }
        Ok(())
    }

    pub fn l1(&self, x: &TSeries) -> TSeries {
        let mut out = self.zero();
        out.plain = x.star.clone();
        out
    }

    pub fn l2(&self, x: &TSeries) -> TSeries {
        let mut out = self.zero();
        let s = &self.problem.actions;
        for k in 0..=self.trunc {
            for (i, si) in s.iter().enumerate() {
                if k + i > self.trunc {
                    break;
                }
                if !x.plain[k].is_zero() {
                    let v = self.cap(self.model().bracket(si, &x.plain[k]));
                    out.plain[k + i] = &out.plain[k + i] + &v;
                }
                if !x.star[k].is_zero() {
                    let v = self.cap(self.model().bracket(si, &x.star[k])).scale(&self.star_l2_sign);
                    out.star[k + i] = &out.star[k + i] + &v;
                }
            }
        }
        out
    }

    pub fn l3(&self, x: &TSeries) -> TSeries {
        let mut out = self.zero();
        let n = self.order();
        let s = &self.problem.actions;
        let model = self.model();
        for k in 0..=self.trunc {
            if x.plain[k].is_zero() {
                continue;
            }
            for i in 0..=n {
                for j in 0..=n {
                    let p = i + j;
                    if p < n + 1 || k + p > self.trunc {
                        continue;
                    }
                    let sij = model.bracket(&s[i], &s[j]);
                    let v = self.cap(model.bracket(&sij, &x.plain[k])).scale(&rat(-1, 2));
                    out.star[k + p] = &out.star[k + p] + &v;
                }
            }
        }
        out
    }

    pub fn total(&self, x: &TSeries) -> TSeries {
        self.l1(x).add(&self.l2(x)).add(&self.l3(x))
    }

    /// Basis of `X_0` then `X_1`: every monomial at every admissible power.
    pub fn basis(&self) -> Vec<TSeries> {
        let monos = self.model().basis();
        let mut out = Vec::new();
        for k in 0..=self.trunc {
            for m in &monos {
                out.push(self.plain(&self.model().mono(m), k));
            }
        }
        for k in self.min_star_power()..=self.trunc {
            for m in &monos {
                out.push(self.starred(&self.model().mono(m), k));
            }
        }
        out
    }
}

pub fn verify_theorem8(maps: &Theorem8Maps) -> Report {
    let mut report = Report::new();
    let model = maps.model();
    let n = maps.order();
    let monos = model.basis();

    let mut bad = None;
    let basis = maps.basis();
    for x in &basis {
        let sq = maps.total(&maps.total(x));
        if maps.check_in_x1(&maps.total(x)).is_err() || !sq.is_zero() {
            bad = Some(format!("{} -> {}", x.describe(), sq.describe()));
            break;
        }
    }
    report.push("S^2 = 0", bad.is_none(), bad.unwrap_or_else(|| format!("{} basis elements", basis.len())));

    // t^{n+1} coefficient of l3(a) is -½ (R_{n+1}, a)*
    let r = obstruction_r(&maps.problem, n + 1);
    let bad = monos.iter().find(|m| {
        let a = model.mono(m);
        let got = &maps.l3(&maps.plain(&a, 0)).star[n + 1];
        *got != model.bracket(&r, &a).truncate(model.cap).scale(&rat(-1, 2))
    });
    let bad = bad.map(|m| model.mono(m).to_string());
    report.push("l3 t^(n+1) coefficient = -1/2 (R_(n+1), .)*", bad.is_none(), bad.unwrap_or_default());

    // l2(I) ⊆ I and l2^2(X_0) ⊆ I with I = t^{n+1} X_0
    let bad = monos.iter().find(|m| {
        let a = model.mono(m);
        let sq = maps.l2(&maps.l2(&maps.plain(&a, 0)));
        sq.plain[..=n].iter().any(|p| !p.is_zero())
    });
    let bad = bad.map(|m| model.mono(m).to_string());
    report.push("l2^2(X_0) in I", bad.is_none(), bad.unwrap_or_default());
    let bad = monos.iter().find(|m| {
        let v = maps.l2(&maps.plain(&model.mono(m), n + 1));
        v.plain[..=n].iter().any(|p| !p.is_zero())
    });
    let bad = bad.map(|m| model.mono(m).to_string());
    report.push("l2(I) in I", bad.is_none(), bad.unwrap_or_default());

    // gh(l2(a)) = gh(a) + 1
    let probe = SuperPoly::zero(&model.gens);
    let bad = monos.iter().find(|m| {
        let v = maps.l2(&maps.plain(&model.mono(m), 0));
        let want = probe.monomial_ghost(m) + 1;
        v.plain.iter().flat_map(|p| p.terms().map(|(t, _)| probe.monomial_ghost(t)).collect::<Vec<_>>()).any(|g| g != want)
    });
    let bad = bad.map(|m| model.mono(m).to_string());
    report.push("gh(l2(a)) = gh(a) + 1", bad.is_none(), bad.unwrap_or_default());
    report
}

/// Matrices of the construction on the truncated basis, with
/// `h(a t^k) = -a* t^k` for `k ≥ n+1` as contracting homotopy.
#[derive(Clone, Debug)]
pub struct BvExport {
    pub homotopy: HomotopyData,
    pub l2_0: RatMatrix,
    pub d_f: RatMatrix,
    pub x0: Vec<(Monomial, usize)>,
    pub x1: Vec<(Monomial, usize)>,
}

pub fn export_to_complexes(maps: &Theorem8Maps) -> Result<BvExport> {
    let model = maps.model();
    let monos = model.basis();
    let lo = maps.min_star_power();
    let x0: Vec<(Monomial, usize)> = (0..=maps.trunc).flat_map(|k| monos.iter().map(move |m| (m.clone(), k))).collect();
    let x1: Vec<(Monomial, usize)> = (lo..=maps.trunc).flat_map(|k| monos.iter().map(move |m| (m.clone(), k))).collect();
    let pos0: BTreeMap<&(Monomial, usize), usize> = x0.iter().enumerate().map(|(i, l)| (l, i)).collect();
    let (n0, n1) = (x0.len(), x1.len());

    let mut l1 = RatMatrix::zeros(n0, n1);
    let mut h = RatMatrix::zeros(n1, n0);
    for (j, l) in x1.iter().enumerate() {
        l1[(pos0[l], j)] = Rat::one();
        h[(j, pos0[l])] = -Rat::one();
    }
    let f_idx: Vec<usize> = (0..n0).filter(|&i| x0[i].1 < lo).collect();
    let mut eta = RatMatrix::zeros(f_idx.len(), n0);
    let mut lambda = RatMatrix::zeros(n0, f_idx.len());
    for (k, &i) in f_idx.iter().enumerate() {
        eta[(k, i)] = Rat::one();
        lambda[(i, k)] = Rat::one();
    }
    let mut l2_0 = RatMatrix::zeros(n0, n0);
    for (j, (m, k)) in x0.iter().enumerate() {
        let img = maps.l2(&maps.plain(&model.mono(m), *k));
        for (p, poly) in img.plain.iter().enumerate() {
            for (t, c) in poly.terms() {
                l2_0[(pos0[&(t.clone(), p)], j)] = c.clone();
            }
        }
    }
    let homotopy = HomotopyData {
        space: GradedSpace::new(vec![n0, n1]),
        l1: GradedMap { shift: -1, blocks: vec![RatMatrix::zeros(0, n0), l1] },
        f_dim: f_idx.len(),
        eta,
        lambda,
        s: GradedMap { shift: 1, blocks: vec![h, RatMatrix::zeros(0, n1)] },
    };
    let d_f = homotopy.induced_differential(&l2_0)?;
    Ok(BvExport { homotopy, l2_0, d_f, x0, x1 })
}

impl BvExport {
    /// Column of a starred series in `X_1` coordinates.
    pub fn x1_column(&self, v: &TSeries) -> Vec<Rat> {
        let mut col = vec![Rat::zero(); self.x1.len()];
        for (k, poly) in v.star.iter().enumerate() {
            for (t, c) in poly.terms() {
                let i = self.x1.iter().position(|l| l.0 == *t && l.1 == k).expect("inside X_1");
                col[i] = c.clone();
            }
        }
        col
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::{chain_extend, verify_homotopy, verify_nilpotent};

    fn two_pair(cap: u32) -> BvModel {
        BvModel::new(
            &[
                FieldSpec { name: "phi".into(), parity: Parity::Even, ghost: 0 },
                FieldSpec { name: "C".into(), parity: Parity::Odd, ghost: 1 },
            ],
            cap,
        )
        .unwrap()
    }

    #[test]
    fn master_examples() {
        let m = two_pair(4);
        assert!(master_check(&m, &SuperPoly::zero(&m.gens)).unwrap());
        let s0 = m.parse("phi_star*C").unwrap();
        assert!(master_check(&m, &s0).unwrap());
        assert_eq!(s0_differential(&m, &s0, &m.parse("phi").unwrap()), m.parse("C").unwrap());
        assert!(s0_differential(&m, &s0, &SuperPoly::one(&m.gens)).is_zero());
        assert!(master_check(&m, &m.parse("phi").unwrap()).is_err());
        assert!(check_double_bracket(&m, &s0).passed());
    }

    #[test]
    fn s0_squares_to_zero() {
        let m = two_pair(4);
        let s0 = m.parse("phi_star*C").unwrap();
        for mono in m.basis() {
            let x = m.mono(&mono);
            assert!(s0_differential(&m, &s0, &s0_differential(&m, &s0, &x)).is_zero());
        }
    }

    #[test]
    fn trivial_deformation() {
        let m = two_pair(3);
        let z = SuperPoly::zero(&m.gens);
        let p = DeformationProblem::new(&m, vec![z.clone(), z]).unwrap();
        let maps = theorem8_maps(&p, 2).unwrap();
        assert!(verify_theorem8(&maps).passed());
        assert!(obstruction_r(&p, 2).is_zero());
    }

    #[test]
    fn two_pair_deformation() {
        let m = two_pair(4);
        let s0 = m.parse("phi_star*C").unwrap();
        let s1 = pick_deformation(&m, &s0).unwrap().unwrap();
        let p = DeformationProblem::new(&m, vec![s0, s1]).unwrap();
        let maps = theorem8_maps(&p, 4).unwrap();
        let r = verify_theorem8(&maps);
        assert!(r.passed(), "{r}");
        assert!(theorem8_maps(&p, 1).is_err());
    }

    #[test]
    fn corrupted_star_sign_is_caught() {
        let m = two_pair(4);
        let s0 = m.parse("phi_star*C").unwrap();
        let s1 = pick_deformation(&m, &s0).unwrap().unwrap();
        let p = DeformationProblem::new(&m, vec![s0, s1]).unwrap();
        let mut maps = theorem8_maps(&p, 4).unwrap();
        maps.star_l2_sign = Rat::one();
        assert!(!verify_theorem8(&maps).check("S^2 = 0").unwrap().passed);
    }

    #[test]
    fn three_ghost_obstruction_lands_in_l3() {
        let fields: Vec<FieldSpec> =
            (1..=3).map(|i| FieldSpec { name: format!("C{i}"), parity: Parity::Odd, ghost: 1 }).collect();
        let m = BvModel::new(&fields, 5).unwrap();
        let s0 = SuperPoly::zero(&m.gens);
        // [e1,e2] = e3, [e1,e3] = e1: Jacobi fails
        let s1 = m.parse("C3_star*C1*C2 + C1_star*C1*C3").unwrap();
        let p = DeformationProblem::new(&m, vec![s0, s1]).unwrap();
        let r2 = obstruction_r(&p, 2);
        assert!(!r2.is_zero());
        let maps = theorem8_maps(&p, 2).unwrap();
        let rep = verify_theorem8(&maps);
        assert!(rep.passed(), "{rep}");
        let c = m.parse("C1_star").unwrap();
        assert!(!maps.l3(&maps.plain(&c, 0)).star[2].is_zero());
    }

    #[test]
    fn engine_matches() {
        let m = two_pair(3);
        let s0 = m.parse("phi_star*C").unwrap();
        let s1 = pick_deformation(&m, &s0).unwrap().unwrap();
        let p = DeformationProblem::new(&m, vec![s0, s1]).unwrap();
        let maps = theorem8_maps(&p, 3).unwrap();
        let ex = export_to_complexes(&maps).unwrap();
        assert!(verify_homotopy(&ex.homotopy).unwrap().passed());
        let e = chain_extend(&ex.homotopy, &ex.l2_0).unwrap();
        assert!(verify_nilpotent(&e).passed());
        for (j, (mono, k)) in ex.x0.iter().enumerate() {
            let want = ex.x1_column(&maps.l3(&maps.plain(&m.mono(mono), *k)));
            assert_eq!(e.l3.blocks[0].column(j), want);
        }
        for (j, (mono, k)) in ex.x1.iter().enumerate() {
            let want = ex.x1_column(&maps.l2(&maps.starred(&m.mono(mono), *k)));
            assert_eq!(e.l2.blocks[1].column(j), want);
        }
    }
}
