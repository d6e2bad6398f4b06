//! Finite-dimensional Lie algebras over the rationals, alternating cochains,
//! the composition/bracket calculus on 2-cochains, low-degree
//! Chevalley–Eilenberg cohomology and order-by-order deformation.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactla::{RatMatrix, Rat};

/// Alternating multilinear map `A^p -> A`, stored on strictly increasing
/// index tuples. Every increasing tuple is present, so the map is dense.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    dim: usize,
    arity: usize,
    values: BTreeMap<Vec<usize>, Vec<Rat>>,
}

/// Strictly increasing `arity`-tuples from `0..dim`, in lexicographic order.
pub fn increasing_tuples(dim: usize, arity: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, dim: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..dim {
            cur.push(i);
            go(i + 1, dim, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, dim, arity, &mut Vec::new(), &mut out);
    out
}

/// Sorts `idx` in place and returns the permutation sign, or `None` on a repeat.
fn sort_with_sign(idx: &mut [usize]) -> Option<i32> {
    let mut sign = 1;
    for i in 0..idx.len() {
        for j in 0..idx.len() - 1 - i {
            if idx[j] > idx[j + 1] {
                idx.swap(j, j + 1);
                sign = -sign;
            } else if idx[j] == idx[j + 1] {
                return None;
            }
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some(sign)
}

fn axpy(acc: &mut [Rat], k: &Rat, v: &[Rat]) {
    if k.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += k * x;
        }
    }
}

impl Cochain {
    pub fn zero(dim: usize, arity: usize) -> Self {
        let values = increasing_tuples(dim, arity).into_iter().map(|t| (t, vec![Rat::zero(); dim])).collect();
        Cochain { dim, arity, values }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Sets the coefficient of `e_k` in the value on `tuple`, which may be in
    /// any order; the alternating sign is applied.
    pub fn set(&mut self, tuple: &[usize], k: usize, value: Rat) -> Result<()> {
        let mut t = tuple.to_vec();
        if t.len() != self.arity || t.iter().chain([&k]).any(|&i| i >= self.dim) {
            return Err(Error::Dimension(format!("index {tuple:?} -> {k} out of range")));
        }
        let sign = sort_with_sign(&mut t).ok_or_else(|| Error::Precondition(format!("repeated index in {tuple:?}")))?;
        let v = if sign < 0 { -value } else { value };
        self.values.get_mut(&t).expect("dense")[k] = v;
        Ok(())
    }

    /// Value on basis vectors `e_{i_1}, ..., e_{i_p}` in any order.
    pub fn eval(&self, tuple: &[usize]) -> Vec<Rat> {
        let mut t = tuple.to_vec();
        match sort_with_sign(&mut t) {
            None => vec![Rat::zero(); self.dim],
            Some(sign) => {
                let v = &self.values[&t];
                if sign < 0 {
                    v.iter().map(|x| -x).collect()
                } else {
                    v.clone()
                }
            }
        }
    }

    /// Multilinear evaluation on arbitrary vectors.
    pub fn eval_vecs(&self, args: &[&[Rat]]) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.dim];
        let mut idx = vec![0; args.len()];
        self.eval_rec(args, 0, &Rat::one(), &mut idx, &mut out);
        out
    }

    fn eval_rec(&self, args: &[&[Rat]], pos: usize, coef: &Rat, idx: &mut Vec<usize>, out: &mut [Rat]) {
        if pos == args.len() {
            axpy(out, coef, &self.eval(idx));
            return;
        }
        for (i, c) in args[pos].iter().enumerate() {
            if c.is_zero() || idx[..pos].contains(&i) {
                continue;
            }
            idx[pos] = i;
            self.eval_rec(args, pos + 1, &(coef * c), idx, out);
        }
    }

    /// `(tuple, values)` pairs in canonical order.
    pub fn entries(&self) -> impl Iterator<Item = (&Vec<usize>, &Vec<Rat>)> {
        self.values.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.values.values().all(|v| v.iter().all(Zero::is_zero))
    }

    /// Flattened coordinates: tuple-major, then output component.
    pub fn to_vector(&self) -> Vec<Rat> {
        self.values.values().flat_map(|v| v.iter().cloned()).collect()
    }

    pub fn from_vector(dim: usize, arity: usize, v: &[Rat]) -> Result<Self> {
        let tuples = increasing_tuples(dim, arity);
        if v.len() != tuples.len() * dim {
            return Err(Error::Dimension(format!("cochain vector of length {}", v.len())));
        }
        let values = tuples.into_iter().zip(v.chunks(dim.max(1))).map(|(t, c)| (t, c.to_vec())).collect();
        Ok(Cochain { dim, arity, values })
    }

    pub fn space_dim(dim: usize, arity: usize) -> usize {
        increasing_tuples(dim, arity).len() * dim
    }

    fn zip_with(&self, other: &Cochain, f: impl Fn(&Rat, &Rat) -> Rat) -> Result<Cochain> {
        if self.dim != other.dim || self.arity != other.arity {
            return Err(Error::Dimension("cochains of different shape".into()));
        }
        let values = self
            .values
            .iter()
            .zip(other.values.values())
            .map(|((t, a), b)| (t.clone(), a.iter().zip(b).map(|(x, y)| f(x, y)).collect()))
            .collect();
        Ok(Cochain { dim: self.dim, arity: self.arity, values })
    }

    pub fn add(&self, other: &Cochain) -> Result<Cochain> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Cochain) -> Result<Cochain> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, k: &Rat) -> Cochain {
        let values = self.values.iter().map(|(t, v)| (t.clone(), v.iter().map(|x| x * k).collect())).collect();
        Cochain { dim: self.dim, arity: self.arity, values }
    }

    pub fn neg(&self) -> Cochain {
        self.scale(&-Rat::one())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    pub names: Vec<String>,
    /// The bracket `α₀` as an alternating 2-cochain.
    pub bracket: Cochain,
}

impl LieAlgebra {
    /// Antisymmetry is built into the storage; the Jacobi identity is not checked here.
    pub fn new(names: Vec<String>, bracket: Cochain) -> Result<Self> {
        if bracket.arity() != 2 || bracket.dim() != names.len() {
            return Err(Error::Dimension("bracket must be a 2-cochain on the named basis".into()));
        }
        Ok(LieAlgebra { names, bracket })
    }

    /// From 0-based quadruples `[e_i, e_j] ∋ c·e_k`.
    pub fn from_constants(dim: usize, constants: &[(usize, usize, usize, Rat)]) -> Result<Self> {
        let mut bracket = Cochain::zero(dim, 2);
        for (i, j, k, c) in constants {
            bracket.set(&[*i, *j], *k, c.clone())?;
        }
        LieAlgebra::new(default_names(dim), bracket)
    }

    pub fn abelian(dim: usize) -> Self {
        LieAlgebra { names: default_names(dim), bracket: Cochain::zero(dim, 2) }
    }

    pub fn dim(&self) -> usize {
        self.bracket.dim()
    }
}

pub fn default_names(dim: usize) -> Vec<String> {
    (1..=dim).map(|i| format!("e{i}")).collect()
}

pub fn jacobiator(a: &LieAlgebra) -> Cochain {
    nr_compose(&a.bracket, &a.bracket).expect("2-cochains")
}

pub fn jacobi_check(a: &LieAlgebra) -> bool {
    jacobiator(a).is_zero()
}

/// `(αβ)(x1,x2,x3) = α(β(x1,x2),x3) - α(β(x1,x3),x2) + α(β(x2,x3),x1)`.
pub fn nr_compose(alpha: &Cochain, beta: &Cochain) -> Result<Cochain> {
    if alpha.arity() != 2 || beta.arity() != 2 || alpha.dim() != beta.dim() {
        return Err(Error::Dimension("composition needs two 2-cochains on one space".into()));
    }
    let dim = alpha.dim();
    let mut out = Cochain::zero(dim, 3);
    for t in increasing_tuples(dim, 3) {
        let (a, b, c) = (t[0], t[1], t[2]);
        let mut v = vec![Rat::zero(); dim];
        for (sign, (i, j), k) in [(1, (a, b), c), (-1, (a, c), b), (1, (b, c), a)] {
            let inner = beta.eval(&[i, j]);
            let mut ek = vec![Rat::zero(); dim];
            ek[k] = Rat::one();
            let term = alpha.eval_vecs(&[&inner, &ek]);
            axpy(&mut v, &Rat::from_integer(sign.into()), &term);
        }
        *out.values.get_mut(&t).expect("dense") = v;
    }
    Ok(out)
}

/// `[α, β] = αβ + βα`.
pub fn bracket2(alpha: &Cochain, beta: &Cochain) -> Result<Cochain> {
    nr_compose(alpha, beta)?.add(&nr_compose(beta, alpha)?)
}

/// Chevalley–Eilenberg differential on 1- and 2-cochains with adjoint coefficients.
pub fn ce_differential(a: &LieAlgebra, beta: &Cochain) -> Result<Cochain> {
    if beta.dim() != a.dim() {
        return Err(Error::Dimension("cochain on a different space".into()));
    }
    match beta.arity() {
        1 => {
            let dim = a.dim();
            let mut out = Cochain::zero(dim, 2);
            for t in increasing_tuples(dim, 2) {
                let (x, y) = (t[0], t[1]);
                let mut ex = vec![Rat::zero(); dim];
                ex[x] = Rat::one();
                let mut ey = vec![Rat::zero(); dim];
                ey[y] = Rat::one();
                let phi_x = beta.eval(&[x]);
                let phi_y = beta.eval(&[y]);
                let mut v = a.bracket.eval_vecs(&[&ex, &phi_y]);
                axpy(&mut v, &-Rat::one(), &a.bracket.eval_vecs(&[&ey, &phi_x]));
                axpy(&mut v, &-Rat::one(), &beta.eval_vecs(&[&a.bracket.eval(&[x, y])]));
                *out.values.get_mut(&t).expect("dense") = v;
            }
            Ok(out)
        }
        2 => bracket2(&a.bracket, beta),
        p => Err(Error::Unsupported(format!("differential on {p}-cochains"))),
    }
}

/// Matrix of the differential `C^p -> C^{p+1}` in flattened coordinates.
pub fn ce_matrix(a: &LieAlgebra, p: usize) -> Result<RatMatrix> {
    let dim = a.dim();
    let n = Cochain::space_dim(dim, p);
    let mut cols = Vec::with_capacity(n);
    for i in 0..n {
        let mut v = vec![Rat::zero(); n];
        v[i] = Rat::one();
        cols.push(ce_differential(a, &Cochain::from_vector(dim, p, &v)?)?.to_vector());
    }
    RatMatrix::from_columns(Cochain::space_dim(dim, p + 1), &cols)
}

#[derive(Clone, Debug)]
pub struct H2 {
    pub dim: usize,
    pub representatives: Vec<Cochain>,
}

/// Second cohomology: 2-cocycles modulo coboundaries, with cocycle
/// representatives chosen greedily from the kernel basis.
pub fn h2(a: &LieAlgebra) -> Result<H2> {
    let dim = a.dim();
    let d1 = ce_matrix(a, 1)?;
    let d2 = ce_matrix(a, 2)?;
    let cocycles = d2.kernel_basis();
    let mut span: Vec<Vec<Rat>> = (0..d1.cols()).map(|c| d1.column(c)).collect();
    let rows = Cochain::space_dim(dim, 2);
    let mut rank = RatMatrix::from_columns(rows, &span)?.rank();
    let mut representatives = Vec::new();
    for z in cocycles {
        span.push(z.clone());
        let r = RatMatrix::from_columns(rows, &span)?.rank();
        if r > rank {
            rank = r;
            representatives.push(Cochain::from_vector(dim, 2, &z)?);
        } else {
            span.pop();
        }
    }
    Ok(H2 { dim: representatives.len(), representatives })
}

/// `ρ_n = -Σ_{i+j=n, i,j≥1} α_i α_j`; `alphas[k]` holds `α_{k+1}`.
pub fn obstruction(alphas: &[Cochain], n: usize) -> Result<Cochain> {
    if n < 2 || alphas.len() < n - 1 {
        return Err(Error::Precondition(format!("order {n} needs α_1..α_{}", n.saturating_sub(1))));
    }
    let dim = alphas[0].dim();
    let mut sum = Cochain::zero(dim, 3);
    for i in 1..n {
        sum = sum.add(&nr_compose(&alphas[i - 1], &alphas[n - i - 1])?)?;
    }
    Ok(sum.neg())
}

/// Left side of the order-`m` deformation equation `Σ_{i+j=m} α_i α_j`,
/// with `α_0` the bracket of `a`.
pub fn deformation_defect(a: &LieAlgebra, alphas: &[Cochain], m: usize) -> Result<Cochain> {
    let at = |i: usize| if i == 0 { &a.bracket } else { &alphas[i - 1] };
    let mut sum = Cochain::zero(a.dim(), 3);
    for i in 0..=m {
        sum = sum.add(&nr_compose(at(i), at(m - i))?)?;
    }
    Ok(sum)
}

/// Solves `dα_n = ρ_n` for `n = alphas.len() + 1`. `Ok(None)` means the
/// obstruction is not a coboundary.
pub fn extend_deformation(a: &LieAlgebra, alphas: &[Cochain]) -> Result<Option<Cochain>> {
    if alphas.is_empty() {
        return Err(Error::Precondition("need at least α_1".into()));
    }
    if !jacobi_check(a) {
        return Err(Error::Precondition("base bracket fails Jacobi".into()));
    }
    for m in 1..=alphas.len() {
        if !deformation_defect(a, alphas, m)?.is_zero() {
            return Err(Error::Precondition(format!("deformation equation fails at order {m}")));
        }
    }
    let n = alphas.len() + 1;
    let rho = obstruction(alphas, n)?;
    let d2 = ce_matrix(a, 2)?;
    Ok(d2.solve(&rho.to_vector())?.map(|x| Cochain::from_vector(a.dim(), 2, &x).expect("sized")))
}

#[derive(Clone, Debug)]
pub struct DeformationAttempt {
    /// `α_1, α_2, ...` as far as the extension got.
    pub alphas: Vec<Cochain>,
    /// First order whose obstruction is not a coboundary, with that obstruction.
    pub obstructed_at: Option<(usize, Cochain)>,
}

/// Extends `α_1` order by order up to `max_order`, stopping at the first
/// obstruction that is not a coboundary.
pub fn deform(a: &LieAlgebra, alpha1: &Cochain, max_order: usize) -> Result<DeformationAttempt> {
    if !ce_differential(a, alpha1)?.is_zero() {
        return Err(Error::Precondition("α_1 is not a cocycle".into()));
    }
    let mut alphas = vec![alpha1.clone()];
    for n in 2..=max_order {
        match extend_deformation(a, &alphas)? {
            Some(next) => alphas.push(next),
            None => {
                let rho = obstruction(&alphas, n)?;
                return Ok(DeformationAttempt { alphas, obstructed_at: Some((n, rho)) });
            }
        }
    }
    Ok(DeformationAttempt { alphas, obstructed_at: None })
}

/// Table row for reports: `(i, j, k, value)` with 0-based indices.
#[derive(Clone, Debug, Serialize)]
pub struct CochainEntry {
    pub tuple: Vec<usize>,
    pub component: usize,
    #[serde(with = "crate::exactla::serde_rat")]
    pub value: Rat,
}

pub fn nonzero_entries(c: &Cochain) -> Vec<CochainEntry> {
    c.entries()
        .flat_map(|(t, v)| {
            v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(move |(k, x)| CochainEntry {
                tuple: t.clone(),
                component: k,
                value: x.clone(),
            })
        })
        .collect()
}
