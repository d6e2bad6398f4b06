//! Seeded random instances of the inductive construction.
//!
//! Each instance starts from a split complex `X_0 = B_0 + F`,
//! `X_p = B_p + C_p` where `l1` maps `C_p` identically onto `B_{p-1}` and
//! `s = -l1^{-1}` on `B`. A degree-zero `l2 = [[P, Q], [0, D]]` with `D^2 = 0`
//! satisfies all three conditions by construction. Every degree is then
//! conjugated by a random invertible matrix with small entries so the
//! engine never sees coordinate-aligned data.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::complexes::{check_l2_conditions, chain_extend, verify_nilpotent, GradedMap, GradedSpace, HomotopyData};
use crate::exactla::{int, RatMatrix};

pub const TOP_DEGREE: usize = 3;
pub const MAX_DIM: usize = 6;

#[derive(Clone, Debug)]
pub struct FuzzInstance {
    pub homotopy: HomotopyData,
    pub l2_0: RatMatrix,
    pub d_f: RatMatrix,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct FuzzSummary {
    pub seed: u64,
    pub instances: usize,
    pub passed: usize,
    /// Instances rejected by the condition check before extension.
    pub rejected: usize,
    pub failures: Vec<String>,
}

impl FuzzSummary {
    pub fn all_passed(&self) -> bool {
        self.passed == self.instances && self.failures.is_empty()
    }
}

fn small(rng: &mut impl Rng) -> i64 {
    rng.gen_range(-2..=2)
}

fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> RatMatrix {
    let entries = (0..rows * cols).map(|_| int(small(rng))).collect();
    RatMatrix::from_entries(rows, cols, entries).expect("sized")
}

/// Random invertible matrix together with its inverse.
fn random_invertible(rng: &mut impl Rng, n: usize) -> (RatMatrix, RatMatrix) {
    loop {
        let t = random_matrix(rng, n, n);
        if let Some(inv) = t.inverse() {
            return (t, inv);
        }
    }
}

/// Places `blocks` (row offset, column offset, matrix) into a zero matrix.
fn assemble(rows: usize, cols: usize, blocks: &[(usize, usize, &RatMatrix)]) -> RatMatrix {
    let mut m = RatMatrix::zeros(rows, cols);
    for (ro, co, b) in blocks {
        for r in 0..b.rows() {
            for c in 0..b.cols() {
                if !b[(r, c)].is_zero() {
                    m[(ro + r, co + c)] = b[(r, c)].clone();
                }
            }
        }
    }
    m
}

/// Random `f x f` matrix with square zero: `U J U^{-1}` for a strictly
/// block-upper-triangular `J` pairing the first `r` coordinates with the next `r`.
fn random_square_zero(rng: &mut impl Rng, f: usize) -> RatMatrix {
    let r = if f >= 2 { rng.gen_range(0..=f / 2) } else { 0 };
    let mut j = RatMatrix::zeros(f, f);
    for k in 0..r {
        let c = loop {
            let c = small(rng);
            if c != 0 {
                break c;
            }
        };
        j[(k, r + k)] = int(c);
    }
    let (u, u_inv) = random_invertible(rng, f);
    u.mul(&j).and_then(|m| m.mul(&u_inv)).expect("square")
}

pub fn random_instance(rng: &mut impl Rng) -> FuzzInstance {
    // b[p] = dim B_p for p < TOP_DEGREE; C_{p+1} has the same dimension.
    let b: Vec<usize> = (0..TOP_DEGREE).map(|_| rng.gen_range(0..=MAX_DIM / 2)).collect();
    let f = rng.gen_range(0..=MAX_DIM - b[0]);
    let mut dims = vec![b[0] + f];
    for p in 1..=TOP_DEGREE {
        let bp = b.get(p).copied().unwrap_or(0);
        dims.push(bp + b[p - 1]);
    }
    let space = GradedSpace::new(dims.clone());
    // width of the first summand (B_p, or B_0 in degree zero)
    let lead = |p: usize| b.get(p).copied().unwrap_or(0);

    let mut l1 = GradedMap::zero(&space, -1);
    let mut s = GradedMap::zero(&space, 1);
    for p in 1..=TOP_DEGREE {
        let id = RatMatrix::identity(b[p - 1]);
        l1.blocks[p] = assemble(dims[p - 1], dims[p], &[(0, lead(p), &id)]);
        s.blocks[p - 1] = assemble(dims[p], dims[p - 1], &[(lead(p), 0, &id.neg())]);
    }
    let id_f = RatMatrix::identity(f);
    let eta = assemble(f, dims[0], &[(0, b[0], &id_f)]);
    let lambda = assemble(dims[0], f, &[(b[0], 0, &id_f)]);

    let p_block = random_matrix(rng, b[0], b[0]);
    let q_block = random_matrix(rng, b[0], f);
    let d = random_square_zero(rng, f);
    let l2_0 = assemble(dims[0], dims[0], &[(0, 0, &p_block), (0, b[0], &q_block), (b[0], b[0], &d)]);

    let changes: Vec<(RatMatrix, RatMatrix)> = dims.iter().map(|&n| random_invertible(rng, n)).collect();
    let conj = |m: &RatMatrix, to: usize, from: usize| -> RatMatrix {
        changes[to].0.mul(m).and_then(|x| x.mul(&changes[from].1)).expect("shapes")
    };
    for p in 0..=TOP_DEGREE {
        if p >= 1 {
            l1.blocks[p] = conj(&l1.blocks[p], p - 1, p);
        }
        if p < TOP_DEGREE {
            s.blocks[p] = conj(&s.blocks[p], p + 1, p);
        }
    }
    let homotopy = HomotopyData {
        space,
        l1,
        f_dim: f,
        eta: eta.mul(&changes[0].1).expect("shapes"),
        lambda: changes[0].0.mul(&lambda).expect("shapes"),
        s,
    };
    FuzzInstance { l2_0: conj(&l2_0, 0, 0), homotopy, d_f: d }
}

/// Generates `count` instances from `seed` and pushes each through the
/// engine, resampling any instance that fails the condition check.
pub fn run_fuzz(seed: u64, count: usize) -> FuzzSummary {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut summary = FuzzSummary { seed, ..Default::default() };
    while summary.instances < count {
        let inst = random_instance(&mut rng);
        let conditions = match check_l2_conditions(&inst.homotopy, &inst.l2_0, Some(&inst.d_f)) {
            Ok(r) => r,
            Err(e) => {
                summary.rejected += 1;
                summary.failures.push(format!("malformed instance: {e}"));
                continue;
            }
        };
        if !conditions.passed() {
            summary.rejected += 1;
            continue;
        }
        let index = summary.instances;
        summary.instances += 1;
        match chain_extend(&inst.homotopy, &inst.l2_0) {
            Ok(e) => {
                let report = verify_nilpotent(&e);
                if report.passed() {
                    summary.passed += 1;
                } else {
                    let first = report.failures().next().expect("failed report");
                    summary.failures.push(format!("instance {index}: {} {}", first.name, first.detail));
                }
            }
            Err(e) => summary.failures.push(format!("instance {index}: {e}")),
        }
    }
    summary
}
