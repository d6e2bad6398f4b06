//! TOML input formats shared by every command. Indices in files are
//! 1-based; rationals are `"p/q"` strings (integers may omit `/q`).

use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::brst::{BracketSpec, ConstraintSystem, StructureSpec};
use crate::bv::{BvModel, FieldSpec};
use crate::complexes::{GradedMap, GradedSpace, HomotopyData};
use crate::error::{Error, Result};
use crate::exactla::{fmt_rat, parse_rat, Rat, RatMatrix};
use crate::lie::{Cochain, LieAlgebra};
use crate::superalg::SuperPoly;

pub fn load<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let src = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    toml::from_str(&src).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

pub fn parse<T: DeserializeOwned>(src: &str) -> Result<T> {
    toml::from_str(src).map_err(|e| Error::Parse(e.to_string()))
}

/// `[e_i, e_j]` (or `α(e_i, e_j)`) has coefficient `coeff` on `e_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Triple {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LieFile {
    #[serde(default)]
    pub name: String,
    pub dim: usize,
    #[serde(default)]
    pub names: Option<Vec<String>>,
    #[serde(default)]
    pub brackets: Vec<Triple>,
    #[serde(default)]
    pub alpha1: Option<Vec<Triple>>,
}

fn index(i: usize, dim: usize, what: &str) -> Result<usize> {
    if i == 0 || i > dim {
        return Err(Error::Dimension(format!("{what} index {i} outside 1..={dim}")));
    }
    Ok(i - 1)
}

fn cochain(dim: usize, triples: &[Triple]) -> Result<Cochain> {
    let mut c = Cochain::zero(dim, 2);
    for t in triples {
        let (i, j, k) = (index(t.i, dim, "i")?, index(t.j, dim, "j")?, index(t.k, dim, "k")?);
        c.set(&[i, j], k, parse_rat(&t.coeff)?)?;
    }
    Ok(c)
}

impl LieFile {
    pub fn algebra(&self) -> Result<LieAlgebra> {
        let names = match &self.names {
            Some(n) if n.len() != self.dim => return Err(Error::Dimension("names must list dim entries".into())),
            Some(n) => n.clone(),
            None => crate::lie::default_names(self.dim),
        };
        LieAlgebra::new(names, cochain(self.dim, &self.brackets)?)
    }

    pub fn alpha1(&self) -> Result<Option<Cochain>> {
        self.alpha1.as_ref().map(|t| cochain(self.dim, t)).transpose()
    }
}

pub type Rows = Vec<Vec<String>>;

fn matrix(rows: &Rows, nrows: usize, ncols: usize, what: &str) -> Result<RatMatrix> {
    if rows.len() != nrows || rows.iter().any(|r| r.len() != ncols) {
        return Err(Error::Dimension(format!("{what} must be {nrows}x{ncols}")));
    }
    let entries = rows.iter().flatten().map(|s| parse_rat(s)).collect::<Result<Vec<Rat>>>()?;
    RatMatrix::from_entries(nrows, ncols, entries)
}

fn rows(m: &RatMatrix) -> Rows {
    (0..m.rows()).map(|r| m.row(r).iter().map(fmt_rat).collect()).collect()
}

/// A resolution `X_0 ← X_1 ← … ← X_top` with contraction onto `F` and a
/// degree-zero perturbation `l2_0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResolutionFile {
    #[serde(default)]
    pub name: String,
    pub dims: Vec<usize>,
    pub f_dim: usize,
    /// `l1 : X_p → X_{p-1}` for `p = 1..=top`.
    #[serde(default)]
    pub l1: Vec<Rows>,
    /// `s : X_p → X_{p+1}` for `p = 0..top`.
    #[serde(default)]
    pub s: Vec<Rows>,
    pub eta: Rows,
    pub lambda: Rows,
    pub l2_0: Rows,
    #[serde(default)]
    pub d_f: Option<Rows>,
}

#[derive(Clone, Debug)]
pub struct Resolution {
    pub homotopy: HomotopyData,
    pub l2_0: RatMatrix,
    pub d_f: Option<RatMatrix>,
}

impl ResolutionFile {
    pub fn resolution(&self) -> Result<Resolution> {
        let dims = &self.dims;
        if dims.is_empty() {
            return Err(Error::Dimension("dims must list at least X_0".into()));
        }
        let top = dims.len() - 1;
        if self.l1.len() != top || self.s.len() != top {
            return Err(Error::Dimension(format!("need {top} l1 and s blocks")));
        }
        let mut l1 = vec![RatMatrix::zeros(0, dims[0])];
        for p in 1..=top {
            l1.push(matrix(&self.l1[p - 1], dims[p - 1], dims[p], &format!("l1 block {p}"))?);
        }
        let mut s = Vec::new();
        for p in 0..top {
            s.push(matrix(&self.s[p], dims[p + 1], dims[p], &format!("s block {p}"))?);
        }
        s.push(RatMatrix::zeros(0, dims[top]));
        let homotopy = HomotopyData {
            space: GradedSpace::new(dims.clone()),
            l1: GradedMap { shift: -1, blocks: l1 },
            f_dim: self.f_dim,
            eta: matrix(&self.eta, self.f_dim, dims[0], "eta")?,
            lambda: matrix(&self.lambda, dims[0], self.f_dim, "lambda")?,
            s: GradedMap { shift: 1, blocks: s },
        };
        homotopy.validate()?;
        let l2_0 = matrix(&self.l2_0, dims[0], dims[0], "l2_0")?;
        let d_f = self.d_f.as_ref().map(|r| matrix(r, self.f_dim, self.f_dim, "d_f")).transpose()?;
        Ok(Resolution { homotopy, l2_0, d_f })
    }

    pub fn from_parts(name: &str, h: &HomotopyData, l2_0: &RatMatrix, d_f: Option<&RatMatrix>) -> Self {
        let top = h.space.top();
        ResolutionFile {
            name: name.into(),
            dims: h.space.dims.clone(),
            f_dim: h.f_dim,
            l1: (1..=top).map(|p| rows(h.l1.block(p))).collect(),
            s: (0..top).map(|p| rows(h.s.block(p))).collect(),
            eta: rows(&h.eta),
            lambda: rows(&h.lambda),
            l2_0: rows(l2_0),
            d_f: d_f.map(rows),
        }
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Parse(e.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketEntry {
    pub left: String,
    pub right: String,
    pub value: String,
}

/// `C^c_{ab} = value`, 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureEntry {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstraintFile {
    #[serde(default)]
    pub name: String,
    #[serde(default)]
    pub coords: Vec<String>,
    pub constraints: Vec<String>,
    #[serde(default)]
    pub brackets: Vec<BracketEntry>,
    #[serde(default)]
    pub structure: Vec<StructureEntry>,
    #[serde(default)]
    pub cap: Option<u32>,
}

impl ConstraintFile {
    pub fn system(&self) -> Result<ConstraintSystem> {
        let n = self.constraints.len();
        let brackets: Vec<BracketSpec> = self
            .brackets
            .iter()
            .map(|b| BracketSpec { left: b.left.clone(), right: b.right.clone(), value: b.value.clone() })
            .collect();
        let structure = self
            .structure
            .iter()
            .map(|s| {
                Ok(StructureSpec {
                    a: index(s.a, n, "a")?,
                    b: index(s.b, n, "b")?,
                    c: index(s.c, n, "c")?,
                    value: s.value.clone(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        ConstraintSystem::new(&self.coords, &self.constraints, &brackets, &structure)
    }
}

/// Fields with their antifields `<name>_star`, and actions `S_0, S_1, …`.
/// With only `S_0` given, `S_1` is found by a kernel search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BvFile {
    #[serde(default)]
    pub name: String,
    pub cap: u32,
    #[serde(default)]
    pub trunc: Option<usize>,
    pub fields: Vec<FieldSpec>,
    pub actions: Vec<String>,
}

impl BvFile {
    pub fn model(&self, cap: Option<u32>) -> Result<BvModel> {
        BvModel::new(&self.fields, cap.unwrap_or(self.cap))
    }

    pub fn actions(&self, model: &BvModel) -> Result<Vec<SuperPoly>> {
        if self.actions.is_empty() {
            return Err(Error::Precondition("actions must list at least S_0".into()));
        }
        self.actions.iter().map(|s| model.parse(s)).collect()
    }
}
