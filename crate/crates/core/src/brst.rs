//! Hamiltonian BRST in a polynomial model.
//!
//! Generators are ordered `x_1..x_m, G_1..G_n, η^1..η^n, P_1..P_n`. The
//! resolution degree is the antighost number (number of `P`s). All operators
//! are right derivations or built from them:
//!
//! ```text
//! δP_a = -G_a                         (Koszul–Tate, δx = δG = δη = 0)
//! d x_i = [x_i,G_a] η^a,  d G_b = [G_b,G_a] η^a,
//! d η^a = ½ C^a_{cb} η^b η^c,  d P_a = 0
//! σ G_a = -P_a                        (so that δσ + σδ = N̄)
//! ψ = -1/k on monomials of (P,G)-degree k,   s = σψ
//! ```
//!
//! With these signs `λη - 1 = δs + sδ` holds on the nose in every degree.
//! Everything is computed modulo monomials of total degree above a cap:
//! no operator lowers total degree, so the quotient is exact.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::One;
use serde::Serialize;

use crate::complexes::{GradedMap, GradedSpace, HomotopyData};
use crate::error::{Error, Result};
use crate::exactla::{rat, Rat, RatMatrix};
use crate::report::Report;
use crate::superalg::{monomial_degree, monomials_up_to, GenKind, GenSet, GenSpec, Monomial, Parity, PoissonTable, SuperPoly};

#[derive(Clone, Debug)]
pub struct ConstraintSystem {
    pub gens: Arc<GenSet>,
    pub m: usize,
    pub n: usize,
    pub table: PoissonTable,
    /// `structure[a][b][c] = C^c_{ab}`.
    pub structure: Vec<Vec<Vec<SuperPoly>>>,
}

/// A Poisson-table entry `[u, v] = value` by generator name.
#[derive(Clone, Debug)]
pub struct BracketSpec {
    pub left: String,
    pub right: String,
    pub value: String,
}

/// `C^c_{ab}` with 0-based indices; `C^c_{ba}` is filled in by antisymmetry.
#[derive(Clone, Debug)]
pub struct StructureSpec {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub value: String,
}

impl ConstraintSystem {
    pub fn new(
        coords: &[String],
        constraints: &[String],
        brackets: &[BracketSpec],
        structure: &[StructureSpec],
    ) -> Result<Self> {
        let (m, n) = (coords.len(), constraints.len());
        let mut specs: Vec<GenSpec> =
            coords.iter().map(|x| GenSpec::new(x.clone(), Parity::Even, 0, 0, GenKind::Coordinate)).collect();
        specs.extend(constraints.iter().map(|g| GenSpec::new(g.clone(), Parity::Even, 0, 0, GenKind::Constraint)));
        specs.extend((1..=n).map(|a| GenSpec::new(format!("eta{a}"), Parity::Odd, 1, 0, GenKind::Ghost)));
        specs.extend((1..=n).map(|a| GenSpec::new(format!("P{a}"), Parity::Odd, -1, 1, GenKind::Antighost)));
        let gens = GenSet::new(specs)?;

        let mut table = PoissonTable::new(&gens);
        for b in brackets {
            let (u, v) = (gens.index(&b.left)?, gens.index(&b.right)?);
            if u >= m + n || v >= m + n {
                return Err(Error::Precondition(format!("[{}, {}]: brackets are declared on x and G only", b.left, b.right)));
            }
            let value = SuperPoly::parse(&gens, &b.value)?;
            if value.support().iter().any(|&g| g >= m + n) {
                return Err(Error::Precondition(format!("[{}, {}] must be a function of x and G", b.left, b.right)));
            }
            table.set(u, v, value)?;
        }
        table.check_jacobi().map_err(Error::Precondition)?;

        let zero = SuperPoly::zero(&gens);
        let mut c = vec![vec![vec![zero; n]; n]; n];
        for s in structure {
            if s.a >= n || s.b >= n || s.c >= n {
                return Err(Error::Dimension(format!("structure index ({}, {}, {}) out of range", s.a, s.b, s.c)));
            }
            if s.a == s.b {
                return Err(Error::Precondition("C^c_{aa} must vanish".into()));
            }
            let value = SuperPoly::parse(&gens, &s.value)?;
            if value.support().iter().any(|&g| g >= m + n) {
                return Err(Error::Precondition("structure functions depend on x and G only".into()));
            }
            c[s.b][s.a][s.c] = -&value;
            c[s.a][s.b][s.c] = value;
        }
        let sys = ConstraintSystem { gens, m, n, table, structure: c };
        sys.check_closure()?;
        Ok(sys)
    }

    pub fn x(&self, i: usize) -> usize {
        i
    }

    pub fn g(&self, a: usize) -> usize {
        self.m + a
    }

    pub fn eta(&self, a: usize) -> usize {
        self.m + self.n + a
    }

    pub fn p(&self, a: usize) -> usize {
        self.m + 2 * self.n + a
    }

    fn gen(&self, i: usize) -> SuperPoly {
        SuperPoly::generator(&self.gens, i)
    }

    /// `[G_a, G_b] = Σ_c C^c_{ab} G_c` for every pair.
    fn check_closure(&self) -> Result<()> {
        for a in 0..self.n {
            for b in 0..self.n {
                let lhs = self.table.get(self.g(a), self.g(b));
                let mut rhs = SuperPoly::zero(&self.gens);
                for c in 0..self.n {
                    rhs.add_scaled(&(&self.structure[a][b][c] * &self.gen(self.g(c))), &Rat::one());
                }
                if lhs != rhs {
                    return Err(Error::Precondition(format!(
                        "closure fails: [G{}, G{}] = {lhs} but Σ C G = {rhs}",
                        a + 1,
                        b + 1
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn has_constant_structure(&self) -> bool {
        self.structure.iter().flatten().flatten().all(|c| c.degree() == 0)
    }

    pub fn antighost(&self, m: &Monomial) -> u32 {
        (0..self.n).map(|a| m[self.p(a)]).sum()
    }

    /// Combined `P` and `G` degree.
    pub fn pg_degree(&self, m: &Monomial) -> u32 {
        (0..self.n).map(|a| m[self.p(a)] + m[self.g(a)]).sum()
    }

    pub fn koszul_tate(&self, f: &SuperPoly) -> SuperPoly {
        f.apply_right_derivation(|i| {
            if i >= self.p(0) && i < self.p(0) + self.n {
                -&self.gen(self.g(i - self.p(0)))
            } else {
                SuperPoly::zero(&self.gens)
            }
        })
    }

    /// Image of a generator under the longitudinal differential.
    pub fn d_generator(&self, i: usize) -> SuperPoly {
        let mut out = SuperPoly::zero(&self.gens);
        if i < self.m + self.n {
            for a in 0..self.n {
                let br = self.table.get(i, self.g(a));
                out.add_scaled(&(&br * &self.gen(self.eta(a))), &Rat::one());
            }
        } else if i < self.m + 2 * self.n {
            let a = i - self.eta(0);
            let half = rat(1, 2);
            for b in 0..self.n {
                for c in 0..self.n {
                    let term = &(&self.structure[c][b][a] * &self.gen(self.eta(b))) * &self.gen(self.eta(c));
                    out.add_scaled(&term, &half);
                }
            }
        }
        out
    }

    pub fn longitudinal_d(&self, f: &SuperPoly) -> SuperPoly {
        f.apply_right_derivation(|i| self.d_generator(i))
    }

    pub fn sigma(&self, f: &SuperPoly) -> SuperPoly {
        f.apply_right_derivation(|i| {
            if i >= self.g(0) && i < self.g(0) + self.n {
                -&self.gen(self.p(i - self.g(0)))
            } else {
                SuperPoly::zero(&self.gens)
            }
        })
    }

    /// `N̄`: multiplies each monomial by its `(P,G)`-degree.
    pub fn n_bar(&self, f: &SuperPoly) -> SuperPoly {
        let mut out = SuperPoly::zero(&self.gens);
        for (m, c) in f.terms() {
            out.add_term(m.clone(), c * Rat::from_integer(self.pg_degree(m).into()));
        }
        out
    }

    /// `ψ(F) = -∫₀¹ F(tP, tG, x, η)/t dt`: `-1/k` on `(P,G)`-degree `k`, zero when `k = 0`.
    pub fn psi(&self, f: &SuperPoly) -> SuperPoly {
        let mut out = SuperPoly::zero(&self.gens);
        for (m, c) in f.terms() {
            let k = self.pg_degree(m);
            if k > 0 {
                out.add_term(m.clone(), -c * rat(1, k as i64));
            }
        }
        out
    }

    pub fn homotopy_s(&self, f: &SuperPoly) -> SuperPoly {
        self.sigma(&self.psi(f))
    }

    /// `λ̃(f) = f + δ s f`.
    pub fn lambda_tilde(&self, f: &SuperPoly) -> SuperPoly {
        f + &self.koszul_tate(&self.homotopy_s(f))
    }

    /// Projection `X_0 -> F`: sets every `G` to zero and drops positive antighost terms.
    pub fn eta_map(&self, f: &SuperPoly) -> SuperPoly {
        let kill: Vec<usize> = (0..self.n).flat_map(|a| [self.g(a), self.p(a)]).collect();
        f.kill(&kill)
    }

    /// Whether every term lies in the ideal generated by the `G`s.
    pub fn in_constraint_ideal(&self, f: &SuperPoly) -> bool {
        f.terms().all(|(m, _)| (0..self.n).any(|a| m[self.g(a)] > 0))
    }

    /// `-Σ_{b,c} s(C^c_{ab}) G_c η^b - Σ_{b,c} C^c_{ab} η^b P_c`.
    pub fn l2_p_closed_form(&self, a: usize) -> SuperPoly {
        let mut out = SuperPoly::zero(&self.gens);
        for b in 0..self.n {
            for c in 0..self.n {
                let cab = &self.structure[a][b][c];
                if cab.is_zero() {
                    continue;
                }
                let t1 = &(&self.homotopy_s(cab) * &self.gen(self.g(c))) * &self.gen(self.eta(b));
                let t2 = &(cab * &self.gen(self.eta(b))) * &self.gen(self.p(c));
                out.add_scaled(&t1, &-Rat::one());
                out.add_scaled(&t2, &-Rat::one());
            }
        }
        out
    }

    /// `½ Σ [C^c_{ab}, f] P_c η^b η^a`, a closed-form candidate for `l3` in degree zero; informational only.
    pub fn l3_displayed_form(&self, f: &SuperPoly) -> SuperPoly {
        let mut out = SuperPoly::zero(&self.gens);
        for a in 0..self.n {
            for b in 0..self.n {
                for c in 0..self.n {
                    let br = self.table.bracket(&self.structure[a][b][c], f);
                    if br.is_zero() {
                        continue;
                    }
                    let t = &(&(&br * &self.gen(self.p(c))) * &self.gen(self.eta(b))) * &self.gen(self.eta(a));
                    out.add_scaled(&t, &rat(1, 2));
                }
            }
        }
        out
    }

    /// Every normal-ordered monomial up to the cap, grouped by antighost degree.
    pub fn basis_by_degree(&self, cap: u32) -> Vec<Vec<Monomial>> {
        let all = monomials_up_to(&self.gens, cap);
        let top = all.iter().map(|m| self.antighost(m)).max().unwrap_or(0) as usize;
        let mut out = vec![Vec::new(); top + 1];
        for m in all {
            out[self.antighost(&m) as usize].push(m);
        }
        out
    }

    /// The cap must hold every generator image of `d`.
    pub fn check_cap(&self, cap: u32) -> Result<()> {
        for i in 0..self.gens.len() {
            let img = self.d_generator(i);
            if img.min_degree() == Some(0) {
                return Err(Error::CapTooSmall { cap: cap as usize, detail: format!("d({}) has a constant term", self.gens.get(i).name) });
            }
            if img.degree() > cap {
                let (m, _) = img.terms().find(|(m, _)| monomial_degree(m) > cap).expect("degree exceeded");
                let esc = SuperPoly::monomial(&self.gens, m.clone(), Rat::one());
                return Err(Error::CapTooSmall {
                    cap: cap as usize,
                    detail: format!("d({}) contains {esc}", self.gens.get(i).name),
                });
            }
        }
        Ok(())
    }
}

fn mono(sys: &ConstraintSystem, m: &Monomial) -> SuperPoly {
    SuperPoly::monomial(&sys.gens, m.clone(), Rat::one())
}

pub fn verify_brst_resolution(sys: &ConstraintSystem, cap: u32) -> Report {
    let basis = monomials_up_to(&sys.gens, cap);
    let mut report = Report::new();
    let first = |pred: &dyn Fn(&Monomial) -> bool| basis.iter().find(|m| !pred(m)).map(|m| mono(sys, m).to_string());

    let bad = first(&|m| {
        let f = mono(sys, m);
        sys.koszul_tate(&sys.koszul_tate(&f)).is_zero()
    });
    report.push("delta^2 = 0", bad.is_none(), bad.unwrap_or_default());

    let bad = first(&|m| {
        let f = mono(sys, m);
        let lhs = &sys.koszul_tate(&sys.sigma(&f)) + &sys.sigma(&sys.koszul_tate(&f));
        lhs == sys.n_bar(&f)
    });
    report.push("delta sigma + sigma delta = N", bad.is_none(), bad.unwrap_or_default());

    let ideal: Vec<&Monomial> = basis.iter().filter(|m| sys.antighost(m) == 0 && sys.pg_degree(m) > 0).collect();
    let bad = ideal.iter().find(|m| !sys.lambda_tilde(&mono(sys, m)).is_zero()).map(|m| mono(sys, m).to_string());
    report.push("lambda~ vanishes on B", bad.is_none(), bad.unwrap_or_else(|| format!("{} ideal monomials", ideal.len())));

    let bad = first(&|m| sys.antighost(m) > 0 || sys.pg_degree(m) > 0 || sys.lambda_tilde(&mono(sys, m)) == mono(sys, m));
    report.push("lambda~ is the identity on F", bad.is_none(), bad.unwrap_or_default());

    let top = basis.iter().map(|m| sys.antighost(m)).max().unwrap_or(0);
    for p in 0..=top {
        let bad = basis.iter().filter(|m| sys.antighost(m) == p).find(|m| {
            let f = mono(sys, m);
            let lhs = &sys.koszul_tate(&sys.homotopy_s(&f)) + &sys.homotopy_s(&sys.koszul_tate(&f));
            let rhs = if p == 0 { &sys.eta_map(&f) - &f } else { -&f };
            lhs != rhs
        });
        let bad = bad.map(|m| mono(sys, m).to_string());
        report.push(format!("lambda eta - 1 = delta s + s delta @ antighost {p}"), bad.is_none(), bad.unwrap_or_default());
    }

    let bad = first(&|m| sys.homotopy_s(&sys.homotopy_s(&mono(sys, m))).is_zero());
    report.push("s^2 = 0", bad.is_none(), bad.unwrap_or_default());
    report
}

/// The two conditions on `d` under which the construction applies, on every
/// antighost-zero monomial up to the cap.
pub fn check_ideal_conditions(sys: &ConstraintSystem, cap: u32) -> Report {
    let basis: Vec<Monomial> = monomials_up_to(&sys.gens, cap).into_iter().filter(|m| sys.antighost(m) == 0).collect();
    let mut report = Report::new();
    let bad = basis
        .iter()
        .filter(|m| sys.pg_degree(m) > 0)
        .find(|m| !sys.in_constraint_ideal(&sys.longitudinal_d(&mono(sys, m)).truncate(cap)));
    let bad = bad.map(|m| mono(sys, m).to_string());
    report.push("d(B) in B", bad.is_none(), bad.unwrap_or_default());
    let bad = basis.iter().find(|m| {
        let f = mono(sys, m);
        !sys.in_constraint_ideal(&sys.longitudinal_d(&sys.longitudinal_d(&f)).truncate(cap))
    });
    let bad = bad.map(|m| mono(sys, m).to_string());
    report.push("d^2(X_0) in B", bad.is_none(), bad.unwrap_or_default());
    report
}

/// `l2` and `l3` tabulated on every basis monomial up to the cap.
#[derive(Clone, Debug)]
pub struct BrstExtension {
    pub sys: ConstraintSystem,
    pub cap: u32,
    pub basis: Vec<Vec<Monomial>>,
    l2: BTreeMap<Monomial, SuperPoly>,
    l3: BTreeMap<Monomial, SuperPoly>,
}

fn apply_table(table: &BTreeMap<Monomial, SuperPoly>, f: &SuperPoly) -> SuperPoly {
    let mut out = SuperPoly::zero(f.gens());
    for (m, c) in f.terms() {
        if let Some(v) = table.get(m) {
            out.add_scaled(v, c);
        }
    }
    out
}

impl BrstExtension {
    pub fn l1(&self, f: &SuperPoly) -> SuperPoly {
        self.sys.koszul_tate(f).truncate(self.cap)
    }

    pub fn l2(&self, f: &SuperPoly) -> SuperPoly {
        apply_table(&self.l2, &f.truncate(self.cap))
    }

    pub fn l3(&self, f: &SuperPoly) -> SuperPoly {
        apply_table(&self.l3, &f.truncate(self.cap))
    }

    pub fn total(&self, f: &SuperPoly) -> SuperPoly {
        &(&self.l1(f) + &self.l2(f)) + &self.l3(f)
    }

    /// `(l1 + l2 + l3)^2 = 0` on every basis monomial, plus the vanishing of
    /// `l3` on ghosts and antighosts.
    pub fn verify(&self) -> Report {
        let mut report = Report::new();
        let bad = self.basis.iter().flatten().find(|m| {
            let f = mono(&self.sys, m);
            !self.total(&self.total(&f)).is_zero()
        });
        let bad = bad.map(|m| mono(&self.sys, m).to_string());
        let count: usize = self.basis.iter().map(Vec::len).sum();
        report.push("(l1 + l2 + l3)^2 = 0", bad.is_none(), bad.unwrap_or_else(|| format!("{count} monomials")));
        let sys = &self.sys;
        let bad = (0..sys.n)
            .flat_map(|a| [sys.p(a), sys.eta(a)])
            .find(|&i| !self.l3(&SuperPoly::generator(&sys.gens, i)).is_zero())
            .map(|i| sys.gens.get(i).name.clone());
        report.push("l3(P_a) = l3(eta^a) = 0", bad.is_none(), bad.unwrap_or_default());
        report
    }

    pub fn l3_is_zero(&self) -> bool {
        self.l3.values().all(SuperPoly::is_zero)
    }

    /// Antighost-zero monomials with a nonzero `l3`.
    pub fn l3_support(&self) -> Vec<SuperPoly> {
        self.l3.iter().filter(|(_, v)| !v.is_zero()).map(|(m, _)| mono(&self.sys, m)).collect()
    }
}

/// Runs the inductive construction with `l1 = δ` and degree-zero `l2 = d`.
pub fn build_brst(sys: &ConstraintSystem, cap: u32) -> Result<BrstExtension> {
    sys.check_cap(cap)?;
    let resolution = verify_brst_resolution(sys, cap);
    if let Some(c) = resolution.failures().next() {
        return Err(Error::Precondition(format!("{} ({})", c.name, c.detail)));
    }
    let ideal = check_ideal_conditions(sys, cap);
    if let Some(c) = ideal.failures().next() {
        return Err(Error::Precondition(format!("{} fails on {}", c.name, c.detail)));
    }
    let basis = sys.basis_by_degree(cap);
    let mut l2: BTreeMap<Monomial, SuperPoly> = BTreeMap::new();
    let mut l3: BTreeMap<Monomial, SuperPoly> = BTreeMap::new();
    let s = |f: &SuperPoly| sys.homotopy_s(f).truncate(cap);
    for (p, monos) in basis.iter().enumerate() {
        for m in monos {
            let f = mono(sys, m);
            let v = if p == 0 {
                sys.longitudinal_d(&f).truncate(cap)
            } else {
                s(&apply_table(&l2, &sys.koszul_tate(&f)))
            };
            l2.insert(m.clone(), v);
        }
        for m in monos {
            let f = mono(sys, m);
            let mut inner = apply_table(&l2, &apply_table(&l2, &f));
            if p > 0 {
                inner = &inner + &apply_table(&l3, &sys.koszul_tate(&f));
            }
            l3.insert(m.clone(), s(&inner));
        }
    }
    Ok(BrstExtension { sys: sys.clone(), cap, basis, l2, l3 })
}

/// Matrices of the construction on the truncated monomial basis.
#[derive(Clone, Debug)]
pub struct BrstExport {
    pub homotopy: HomotopyData,
    pub l2_0: RatMatrix,
    pub d_f: RatMatrix,
    pub basis: Vec<Vec<Monomial>>,
    /// Positions of the `F` basis (G- and P-free monomials) inside `X_0`.
    pub f_basis: Vec<usize>,
}

/// Column matrix of `op` from the degree-`from` basis to the degree-`to` basis.
fn matrix_of(
    sys: &ConstraintSystem,
    basis: &[Vec<Monomial>],
    from: usize,
    to: i64,
    op: &dyn Fn(&SuperPoly) -> SuperPoly,
) -> Result<RatMatrix> {
    let cols = &basis[from];
    let rows: &[Monomial] = if to < 0 || to as usize >= basis.len() { &[] } else { &basis[to as usize] };
    let index: BTreeMap<&Monomial, usize> = rows.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut out = RatMatrix::zeros(rows.len(), cols.len());
    for (j, m) in cols.iter().enumerate() {
        for (t, c) in op(&mono(sys, m)).terms() {
            let i = index.get(t).ok_or_else(|| Error::CapTooSmall {
                cap: 0,
                detail: format!("image of {} escapes the basis", mono(sys, m)),
            })?;
            out[(*i, j)] = c.clone();
        }
    }
    Ok(out)
}

impl BrstExtension {
    pub fn l2_matrix(&self, p: usize) -> Result<RatMatrix> {
        matrix_of(&self.sys, &self.basis, p, p as i64, &|f| self.l2(f))
    }

    pub fn l3_matrix(&self, p: usize) -> Result<RatMatrix> {
        matrix_of(&self.sys, &self.basis, p, p as i64 + 1, &|f| self.l3(f))
    }
}

pub fn export_to_complexes(sys: &ConstraintSystem, cap: u32) -> Result<BrstExport> {
    sys.check_cap(cap)?;
    let basis = sys.basis_by_degree(cap);
    let space = GradedSpace::new(basis.iter().map(Vec::len).collect());
    let top = space.top();
    let mut l1 = Vec::new();
    let mut s = Vec::new();
    for p in 0..=top {
        l1.push(matrix_of(sys, &basis, p, p as i64 - 1, &|f| sys.koszul_tate(f).truncate(cap))?);
        s.push(matrix_of(sys, &basis, p, p as i64 + 1, &|f| sys.homotopy_s(f).truncate(cap))?);
    }
    let f_basis: Vec<usize> = (0..basis[0].len()).filter(|&i| sys.pg_degree(&basis[0][i]) == 0).collect();
    let mut eta = RatMatrix::zeros(f_basis.len(), basis[0].len());
    let mut lambda = RatMatrix::zeros(basis[0].len(), f_basis.len());
    for (k, &i) in f_basis.iter().enumerate() {
        eta[(k, i)] = Rat::one();
        lambda[(i, k)] = Rat::one();
    }
    let l2_0 = matrix_of(sys, &basis, 0, 0, &|f| sys.longitudinal_d(f).truncate(cap))?;
    let homotopy = HomotopyData {
        space,
        l1: GradedMap { shift: -1, blocks: l1 },
        f_dim: f_basis.len(),
        eta,
        lambda,
        s: GradedMap { shift: 1, blocks: s },
    };
    let d_f = homotopy.induced_differential(&l2_0)?;
    Ok(BrstExport { homotopy, l2_0, d_f, basis, f_basis })
}

/// One row of the `l2(P_a)` table.
#[derive(Clone, Debug, Serialize)]
pub struct L2Row {
    pub generator: String,
    pub l2: String,
    pub closed_form: String,
    pub matches: bool,
}

pub fn l2_p_table(ext: &BrstExtension) -> Vec<L2Row> {
    let sys = &ext.sys;
    (0..sys.n)
        .map(|a| {
            let got = ext.l2(&SuperPoly::generator(&sys.gens, sys.p(a)));
            let want = sys.l2_p_closed_form(a).truncate(ext.cap);
            L2Row {
                generator: sys.gens.get(sys.p(a)).name.clone(),
                l2: got.to_string(),
                closed_form: want.to_string(),
                matches: got == want,
            }
        })
        .collect()
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::complexes::{chain_extend, verify_homotopy};

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn br(l: &str, r: &str, v: &str) -> BracketSpec {
        BracketSpec { left: l.into(), right: r.into(), value: v.into() }
    }

    fn st(a: usize, b: usize, c: usize, v: &str) -> StructureSpec {
        StructureSpec { a, b, c, value: v.into() }
    }

    pub(crate) fn so3() -> ConstraintSystem {
        ConstraintSystem::new(
            &[],
            &names(&["G1", "G2", "G3"]),
            &[br("G1", "G2", "G3"), br("G2", "G3", "G1"), br("G3", "G1", "G2")],
            &[st(0, 1, 2, "1"), st(1, 2, 0, "1"), st(2, 0, 1, "1")],
        )
        .unwrap()
    }

    pub(crate) fn toy() -> ConstraintSystem {
        ConstraintSystem::new(
            &names(&["x"]),
            &names(&["G1", "G2"]),
            &[br("G1", "G2", "x*G1"), br("x", "G2", "x")],
            &[st(0, 1, 0, "x")],
        )
        .unwrap()
    }

    fn p(sys: &ConstraintSystem, s: &str) -> SuperPoly {
        SuperPoly::parse(&sys.gens, s).unwrap()
    }

    #[test]
    fn koszul_tate_examples() {
        let sys = so3();
        assert_eq!(sys.koszul_tate(&p(&sys, "P1")), p(&sys, "-G1"));
        // δ(P1 P2) = P1 δ(P2) - δ(P1) P2
        assert_eq!(sys.koszul_tate(&p(&sys, "P1*P2")), p(&sys, "-P1*G2 + G1*P2"));
        let t = toy();
        assert!(t.koszul_tate(&p(&t, "x^3*eta1")).is_zero());
    }

    #[test]
    fn homotopy_examples() {
        let sys = so3();
        assert_eq!(sys.psi(&p(&sys, "P1*G2")), p(&sys, "-1/2*P1*G2"));
        assert_eq!(sys.homotopy_s(&p(&sys, "G1")), p(&sys, "P1"));
        assert!(sys.homotopy_s(&p(&sys, "eta1*eta2")).is_zero());
        let f = p(&sys, "P1*G2");
        let lhs = &sys.koszul_tate(&sys.sigma(&f)) + &sys.sigma(&sys.koszul_tate(&f));
        assert_eq!(lhs, f.scale(&Rat::from_integer(2.into())));
        assert!(sys.lambda_tilde(&p(&sys, "G1*eta2")).is_zero());
        let t = toy();
        assert_eq!(t.lambda_tilde(&p(&t, "x^2")), p(&t, "x^2"));
    }

    #[test]
    fn so3_differential_squares_to_zero() {
        let sys = so3();
        for i in 0..sys.gens.len() {
            let g = SuperPoly::generator(&sys.gens, i);
            assert!(sys.longitudinal_d(&sys.longitudinal_d(&g)).is_zero(), "{}", sys.gens.get(i).name);
        }
        assert_eq!(sys.longitudinal_d(&p(&sys, "G1")), p(&sys, "G3*eta2 - G2*eta3"));
    }

    #[test]
    fn toy_differential_square_is_in_ideal() {
        let sys = toy();
        for f in ["x", "x^2*eta1", "eta1", "eta2"] {
            let f = p(&sys, f);
            let dd = sys.longitudinal_d(&sys.longitudinal_d(&f));
            assert!(sys.in_constraint_ideal(&dd), "{f}: {dd}");
        }
    }

    #[test]
    fn toy_differential_square_closed_form() {
        // d^2 f = -½ Σ [f, C^c_{ab}] G_c η^b η^a
        let sys = toy();
        for f in ["x", "x^2", "G1", "x*G2", "eta1", "x*eta2"] {
            let f = p(&sys, f);
            let dd = sys.longitudinal_d(&sys.longitudinal_d(&f));
            let mut want = SuperPoly::zero(&sys.gens);
            for a in 0..sys.n {
                for b in 0..sys.n {
                    for c in 0..sys.n {
                        let br = sys.table.bracket(&f, &sys.structure[a][b][c]);
                        let t = &(&(&br * &sys.gen(sys.g(c))) * &sys.gen(sys.eta(b))) * &sys.gen(sys.eta(a));
                        want.add_scaled(&t, &rat(-1, 2));
                    }
                }
            }
            assert_eq!(dd, want, "{f}");
        }
    }

    #[test]
    fn so3_extension() {
        let sys = so3();
        let ext = build_brst(&sys, 4).unwrap();
        assert!(ext.verify().passed(), "{}", ext.verify());
        assert!(ext.l3_is_zero());
        assert_eq!(ext.l2(&p(&sys, "P1")), p(&sys, "P3*eta2 - P2*eta3"));
        assert!(l2_p_table(&ext).iter().all(|r| r.matches));
    }

    #[test]
    fn toy_extension_has_l3() {
        let sys = toy();
        let ext = build_brst(&sys, 4).unwrap();
        assert!(ext.verify().passed(), "{}", ext.verify());
        assert!(!ext.l3_is_zero());
        assert!(l2_p_table(&ext).iter().all(|r| r.matches));
    }

    #[test]
    fn casimir_toy_has_no_l3() {
        let sys = ConstraintSystem::new(&names(&["x"]), &names(&["G1", "G2"]), &[br("G1", "G2", "x*G1")], &[st(0, 1, 0, "x")])
            .unwrap();
        let ext = build_brst(&sys, 4).unwrap();
        assert!(ext.verify().passed());
        assert!(ext.l3_is_zero());
    }

    #[test]
    fn abelian_is_delta_plus_d() {
        let sys = ConstraintSystem::new(&names(&["x"]), &names(&["G1"]), &[br("x", "G1", "1")], &[]).unwrap();
        let ext = build_brst(&sys, 4).unwrap();
        assert!(ext.l3_is_zero());
        assert!(ext.l2(&p(&sys, "P1")).is_zero());
        assert!(ext.verify().passed());
    }

    #[test]
    fn engine_matches_operators() {
        for sys in [so3(), toy()] {
            let ex = export_to_complexes(&sys, 4).unwrap();
            assert!(verify_homotopy(&ex.homotopy).unwrap().passed());
            let e = chain_extend(&ex.homotopy, &ex.l2_0).unwrap();
            let ext = build_brst(&sys, 4).unwrap();
            for p in 0..ex.basis.len() {
                assert_eq!(e.l2.blocks[p], ext.l2_matrix(p).unwrap(), "l2 degree {p}");
                assert_eq!(e.l3.blocks[p], ext.l3_matrix(p).unwrap(), "l3 degree {p}");
            }
        }
    }

    #[test]
    fn bad_systems_are_rejected() {
        // closure mismatch
        let e = ConstraintSystem::new(&[], &names(&["G1", "G2"]), &[br("G1", "G2", "G1")], &[]);
        assert!(matches!(e, Err(Error::Precondition(_))));
        // Jacobi failure: [x,G1] = 1, [x,G2] = 1, [G1,G2] = x
        let e = ConstraintSystem::new(
            &names(&["x"]),
            &names(&["G1", "G2"]),
            &[br("x", "G1", "1"), br("G1", "G2", "x")],
            &[],
        );
        assert!(e.is_err());
        assert!(matches!(toy().check_cap(2), Err(Error::CapTooSmall { .. })));
    }
}
