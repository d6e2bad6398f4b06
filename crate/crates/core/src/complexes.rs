//! Graded complexes with contracting-homotopy data and the three-term
//! chain-extension engine.
//!
//! A complex is a finite list of degrees `0..=top`. Every graded map stores
//! one block per *source* degree; a block whose target degree lies outside
//! `0..=top` has zero rows. The homotopy convention throughout is
//!
//! ```text
//! lambda∘eta - 1 = l1∘s + s∘l1
//! ```
//!
//! with `eta`, `lambda` living only in degree zero.

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::{RatMatrix, Rat};
use crate::report::Report;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedSpace {
    pub dims: Vec<usize>,
}

impl GradedSpace {
    pub fn new(dims: Vec<usize>) -> Self {
        GradedSpace { dims }
    }

    pub fn top(&self) -> usize {
        self.dims.len().saturating_sub(1)
    }

    pub fn degrees(&self) -> std::ops::Range<usize> {
        0..self.dims.len()
    }

    /// Dimension in degree `p`, zero outside the stored range.
    pub fn dim(&self, p: i64) -> usize {
        if p < 0 {
            0
        } else {
            self.dims.get(p as usize).copied().unwrap_or(0)
        }
    }

    pub fn total(&self) -> usize {
        self.dims.iter().sum()
    }

    /// Offset of degree `p` inside the direct sum of all degrees.
    pub fn offset(&self, p: usize) -> usize {
        self.dims[..p].iter().sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedMap {
    pub shift: i32,
    /// `blocks[p]` maps degree `p` to degree `p + shift`.
    pub blocks: Vec<RatMatrix>,
}

impl GradedMap {
    pub fn zero(space: &GradedSpace, shift: i32) -> Self {
        let blocks = space
            .degrees()
            .map(|p| RatMatrix::zeros(space.dim(p as i64 + shift as i64), space.dims[p]))
            .collect();
        GradedMap { shift, blocks }
    }

    pub fn block(&self, p: usize) -> &RatMatrix {
        &self.blocks[p]
    }

    pub fn validate(&self, space: &GradedSpace, what: &str) -> Result<()> {
        if self.blocks.len() != space.dims.len() {
            return Err(Error::Dimension(format!(
                "{what}: {} blocks for {} degrees",
                self.blocks.len(),
                space.dims.len()
            )));
        }
        for (p, b) in self.blocks.iter().enumerate() {
            let rows = space.dim(p as i64 + self.shift as i64);
            if b.rows() != rows || b.cols() != space.dims[p] {
                return Err(Error::Dimension(format!(
                    "{what}: block at degree {p} is {}x{}, expected {rows}x{}",
                    b.rows(),
                    b.cols(),
                    space.dims[p]
                )));
            }
        }
        Ok(())
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GradedMap, space: &GradedSpace) -> GradedMap {
        let shift = self.shift + other.shift;
        let blocks = space
            .degrees()
            .map(|p| {
                let mid = p as i64 + other.shift as i64;
                let rows = space.dim(p as i64 + shift as i64);
                if mid < 0 || mid as usize >= space.dims.len() || rows == 0 {
                    RatMatrix::zeros(rows, space.dims[p])
                } else {
                    self.blocks[mid as usize].mul(&other.blocks[p]).expect("validated shapes")
                }
            })
            .collect();
        GradedMap { shift, blocks }
    }

    pub fn add(&self, other: &GradedMap) -> Result<GradedMap> {
        if self.shift != other.shift || self.blocks.len() != other.blocks.len() {
            return Err(Error::Dimension("adding graded maps of different shape".into()));
        }
        let blocks = self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.add(b)).collect::<Result<_>>()?;
        Ok(GradedMap { shift: self.shift, blocks })
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(RatMatrix::is_zero)
    }

    /// First degree whose block is nonzero.
    pub fn first_nonzero_degree(&self) -> Option<usize> {
        self.blocks.iter().position(|b| !b.is_zero())
    }

    /// The map as one square matrix on the direct sum of all degrees.
    pub fn to_total(&self, space: &GradedSpace) -> RatMatrix {
        let n = space.total();
        let mut m = RatMatrix::zeros(n, n);
        for (p, b) in self.blocks.iter().enumerate() {
            let q = p as i64 + self.shift as i64;
            if b.rows() == 0 {
                continue;
            }
            let (ro, co) = (space.offset(q as usize), space.offset(p));
            for r in 0..b.rows() {
                for c in 0..b.cols() {
                    if !num_traits::Zero::is_zero(&b[(r, c)]) {
                        m[(ro + r, co + c)] = b[(r, c)].clone();
                    }
                }
            }
        }
        m
    }
}

/// A resolution of `F = H_0` together with the maps exhibiting it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomotopyData {
    pub space: GradedSpace,
    pub l1: GradedMap,
    pub f_dim: usize,
    /// `X_0 -> F`.
    pub eta: RatMatrix,
    /// `F -> X_0`.
    pub lambda: RatMatrix,
    pub s: GradedMap,
}

impl HomotopyData {
    pub fn validate(&self) -> Result<()> {
        if self.space.dims.is_empty() {
            return Err(Error::Dimension("complex has no degrees".into()));
        }
        if self.l1.shift != -1 || self.s.shift != 1 {
            return Err(Error::Dimension("l1 must have shift -1 and s shift +1".into()));
        }
        self.l1.validate(&self.space, "l1")?;
        self.s.validate(&self.space, "s")?;
        let x0 = self.space.dims[0];
        if self.eta.rows() != self.f_dim || self.eta.cols() != x0 {
            return Err(Error::Dimension(format!("eta must be {}x{x0}", self.f_dim)));
        }
        if self.lambda.rows() != x0 || self.lambda.cols() != self.f_dim {
            return Err(Error::Dimension(format!("lambda must be {x0}x{}", self.f_dim)));
        }
        Ok(())
    }

    /// Columns of `l1: X_1 -> X_0`, spanning the boundary subspace `B`.
    pub fn boundary_block(&self) -> RatMatrix {
        if self.space.dims.len() > 1 {
            self.l1.blocks[1].clone()
        } else {
            RatMatrix::zeros(self.space.dims[0], 0)
        }
    }

    /// The map `eta ∘ l2_0 ∘ lambda` induced on `F`.
    pub fn induced_differential(&self, l2_0: &RatMatrix) -> Result<RatMatrix> {
        self.eta.mul(l2_0)?.mul(&self.lambda)
    }
}

pub fn verify_homotopy(h: &HomotopyData) -> Result<Report> {
    h.validate()?;
    let space = &h.space;
    let mut report = Report::new();

    let l1l1 = h.l1.compose(&h.l1, space);
    for p in space.degrees() {
        let ok = l1l1.blocks[p].is_zero();
        report.push(format!("l1^2 = 0 @ degree {p}"), ok, "");
    }

    let el = h.eta.mul(&h.lambda)?;
    report.push("eta lambda = 1", el == RatMatrix::identity(h.f_dim), "");

    let homotopy = h.l1.compose(&h.s, space).add(&h.s.compose(&h.l1, space))?;
    for p in space.degrees() {
        let n = space.dims[p];
        let expected = if p == 0 {
            h.lambda.mul(&h.eta)?.sub(&RatMatrix::identity(n))?
        } else {
            RatMatrix::identity(n).neg()
        };
        let ok = homotopy.blocks[p] == expected;
        report.push(format!("lambda eta - 1 = l1 s + s l1 @ degree {p}"), ok, "");
    }

    // Side condition used by the vanishing statements of the construction.
    let ss = h.s.compose(&h.s, space);
    report.push("s^2 = 0", ss.is_zero(), ss.first_nonzero_degree().map_or(String::new(), |p| format!("degree {p}")));
    Ok(report)
}

/// Conditions on a degree-zero `l2` under which the inductive construction applies.
///
/// Membership in `B = l1(X_1)` is decided by rank comparison; on failure the
/// first offending basis column is reported.
pub fn check_l2_conditions(h: &HomotopyData, l2_0: &RatMatrix, d_f: Option<&RatMatrix>) -> Result<Report> {
    h.validate()?;
    let x0 = h.space.dims[0];
    if l2_0.rows() != x0 || l2_0.cols() != x0 {
        return Err(Error::Dimension(format!("l2_0 must be {x0}x{x0}")));
    }
    let b = h.boundary_block();
    let mut report = Report::new();

    if let Some(d) = d_f {
        let induced = h.induced_differential(l2_0)?;
        report.push("(i) l2 restricted to F equals D_F", &induced == d, "");
    }

    let image_b = l2_0.mul(&b)?;
    let bad = first_outside(&b, &image_b)?;
    report.push("(ii) l2(B) in B", bad.is_none(), bad.map_or(String::new(), witness));

    let sq = l2_0.mul(l2_0)?;
    let bad = first_outside(&b, &sq)?;
    report.push("(iii) l2^2(X_0) in B", bad.is_none(), bad.map_or(String::new(), witness));
    Ok(report)
}

fn witness(col: usize) -> String {
    format!("column {col} escapes B")
}

/// First column of `cand` not in the column space of `basis`.
fn first_outside(basis: &RatMatrix, cand: &RatMatrix) -> Result<Option<usize>> {
    let rank_b = basis.rank();
    let mut cols: Vec<Vec<Rat>> = (0..basis.cols()).map(|c| basis.column(c)).collect();
    cols.extend((0..cand.cols()).map(|c| cand.column(c)));
    if RatMatrix::from_columns(basis.rows(), &cols)?.rank() == rank_b {
        return Ok(None);
    }
    for c in 0..cand.cols() {
        if basis.solve(&cand.column(c))?.is_none() {
            return Ok(Some(c));
        }
    }
    unreachable!("rank grew but every column solved")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainExtension {
    pub space: GradedSpace,
    pub l1: GradedMap,
    pub l2: GradedMap,
    pub l3: GradedMap,
}

impl ChainExtension {
    /// `l1 + l2 + l3` on the direct sum of all degrees.
    pub fn total_operator(&self) -> RatMatrix {
        let a = self.l1.to_total(&self.space);
        let b = self.l2.to_total(&self.space);
        let c = self.l3.to_total(&self.space);
        a.add(&b).and_then(|x| x.add(&c)).expect("same total shape")
    }
}

/// Builds `l2` and `l3` degree by degree:
/// `l2 = s l2 l1` above degree zero, `l3 = s l2 l2` in degree zero and
/// `l3 = s (l2 l2 + l3 l1)` above it.
pub fn chain_extend(h: &HomotopyData, l2_0: &RatMatrix) -> Result<ChainExtension> {
    let homotopy = verify_homotopy(h)?;
    if let Some(c) = homotopy.failures().next() {
        return Err(Error::Precondition(format!("homotopy data: {}", c.name)));
    }
    let conditions = check_l2_conditions(h, l2_0, None)?;
    if let Some(c) = conditions.failures().next() {
        return Err(Error::Precondition(format!("{} ({})", c.name, c.detail)));
    }
    Ok(extend_unchecked(h, l2_0))
}

/// The inductive construction without precondition checks. Exposed so that
/// corrupted inputs can be pushed through and caught by [`verify_nilpotent`].
pub fn extend_unchecked(h: &HomotopyData, l2_0: &RatMatrix) -> ChainExtension {
    let space = &h.space;
    let top = space.top();
    let mut l2: Vec<RatMatrix> = Vec::with_capacity(top + 1);
    let mut l3: Vec<RatMatrix> = Vec::with_capacity(top + 1);
    l2.push(l2_0.clone());
    for p in 1..=top {
        let b = h.s.blocks[p - 1].mul(&l2[p - 1]).and_then(|m| m.mul(&h.l1.blocks[p])).expect("validated");
        l2.push(b);
    }
    for p in 0..=top {
        if p == top {
            l3.push(RatMatrix::zeros(0, space.dims[p]));
            continue;
        }
        let mut inner = l2[p].mul(&l2[p]).expect("square");
        if p > 0 {
            inner = inner.add(&l3[p - 1].mul(&h.l1.blocks[p]).expect("validated")).expect("same shape");
        }
        l3.push(h.s.blocks[p].mul(&inner).expect("validated"));
    }
    ChainExtension {
        space: space.clone(),
        l1: h.l1.clone(),
        l2: GradedMap { shift: 0, blocks: l2 },
        l3: GradedMap { shift: 1, blocks: l3 },
    }
}

/// Evaluates the four relations hidden in `(l1 + l2 + l3)^2 = 0`, degree by
/// degree, plus the total square and the vanishing of `l2` above degree one
/// and `l3` above degree zero.
pub fn verify_nilpotent(e: &ChainExtension) -> Report {
    let sp = &e.space;
    let mut report = Report::new();
    let sum = |a: GradedMap, b: GradedMap| a.add(&b).expect("equal shifts");
    let relations = [
        ("l1 l2 + l2 l1 = 0", sum(e.l1.compose(&e.l2, sp), e.l2.compose(&e.l1, sp))),
        (
            "l2^2 + l1 l3 + l3 l1 = 0",
            sum(sum(e.l2.compose(&e.l2, sp), e.l1.compose(&e.l3, sp)), e.l3.compose(&e.l1, sp)),
        ),
        ("l2 l3 + l3 l2 = 0", sum(e.l2.compose(&e.l3, sp), e.l3.compose(&e.l2, sp))),
        ("l3^2 = 0", e.l3.compose(&e.l3, sp)),
    ];
    for (name, map) in relations {
        let detail = map.first_nonzero_degree().map_or(String::new(), |p| format!("fails in degree {p}"));
        report.push(name, map.is_zero(), detail);
    }
    let total = e.total_operator();
    let sq = total.mul(&total).expect("square");
    report.push("(l1 + l2 + l3)^2 = 0", sq.is_zero(), "");

    let l2_high = e.l2.blocks.iter().enumerate().skip(2).find(|(_, b)| !b.is_zero()).map(|(p, _)| p);
    report.push("l2 = 0 above degree 1", l2_high.is_none(), l2_high.map_or(String::new(), |p| format!("degree {p}")));
    let l3_high = e.l3.blocks.iter().enumerate().skip(1).find(|(_, b)| !b.is_zero()).map(|(p, _)| p);
    report.push("l3 = 0 above degree 0", l3_high.is_none(), l3_high.map_or(String::new(), |p| format!("degree {p}")));
    report
}

/// `dim ker d - rank d` for a square-zero operator.
pub fn homology_dim(d: &RatMatrix) -> Result<usize> {
    if d.rows() != d.cols() {
        return Err(Error::Dimension("homology of a non-square operator".into()));
    }
    if !d.mul(d)?.is_zero() {
        return Err(Error::Precondition("operator does not square to zero".into()));
    }
    let rank = d.rank();
    Ok(d.cols() - 2 * rank)
}

/// Homology of `l1 + l2 + l3` viewed as one operator on the whole space.
pub fn total_homology_dims(e: &ChainExtension) -> Result<usize> {
    homology_dim(&e.total_operator())
}

/// Identity-like helper: the coordinate inclusion of the first `k` of `n` basis vectors.
pub fn coordinate_inclusion(n: usize, picks: &[usize]) -> RatMatrix {
    let mut m = RatMatrix::zeros(n, picks.len());
    for (j, &i) in picks.iter().enumerate() {
        m[(i, j)] = Rat::one();
    }
    m
}
