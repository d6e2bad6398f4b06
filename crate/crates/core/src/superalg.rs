//! Supercommutative polynomials over the rationals in finitely many graded
//! generators, with one-sided derivatives, derivations, Poisson brackets
//! and the antibracket.
//!
//! Monomials are exponent vectors over the declared generator order; odd
//! exponents are 0 or 1 and odd factors are read in increasing index order.
//! Moving two odd factors past each other costs a sign, nothing else does.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::{fmt_coeff, parse_rat, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    pub fn from_bit(odd: bool) -> Self {
        if odd {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    pub fn flip(self) -> Self {
        Parity::from_bit(!self.is_odd())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GenKind {
    Coordinate,
    Constraint,
    Ghost,
    Antighost,
    Field,
    Antifield,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GenSpec {
    pub name: String,
    pub parity: Parity,
    pub ghost: i32,
    pub antighost: u32,
    pub kind: GenKind,
}

impl GenSpec {
    pub fn new(name: impl Into<String>, parity: Parity, ghost: i32, antighost: u32, kind: GenKind) -> Self {
        GenSpec { name: name.into(), parity, ghost, antighost, kind }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenSet {
    gens: Vec<GenSpec>,
    by_name: HashMap<String, usize>,
}

impl GenSet {
    pub fn new(gens: Vec<GenSpec>) -> Result<Arc<Self>> {
        let mut by_name = HashMap::new();
        for (i, g) in gens.iter().enumerate() {
            if g.name.is_empty() || !g.name.chars().all(|c| c.is_alphanumeric() || c == '_') {
                return Err(Error::Parse(format!("invalid generator name {:?}", g.name)));
            }
            if by_name.insert(g.name.clone(), i).is_some() {
                return Err(Error::Parse(format!("duplicate generator {:?}", g.name)));
            }
        }
        Ok(Arc::new(GenSet { gens, by_name }))
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn get(&self, i: usize) -> &GenSpec {
        &self.gens[i]
    }

    pub fn specs(&self) -> &[GenSpec] {
        &self.gens
    }

    pub fn index(&self, name: &str) -> Result<usize> {
        self.by_name.get(name).copied().ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn is_odd(&self, i: usize) -> bool {
        self.gens[i].parity.is_odd()
    }

    pub fn indices_of(&self, kind: GenKind) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.gens[i].kind == kind).collect()
    }
}

pub type Monomial = Vec<u32>;

/// Sign of `m1 · m2` after normal ordering, or `None` if an odd generator repeats.
fn product_sign(gens: &GenSet, m1: &[u32], m2: &[u32]) -> Option<bool> {
    let mut negative = false;
    let mut odd_in_m1_above = 0u32;
    // walk from the top index down, counting odd factors of m1 above each odd factor of m2
    for i in (0..m1.len()).rev() {
        if !gens.is_odd(i) {
            continue;
        }
        if m2[i] == 1 {
            if m1[i] == 1 {
                return None;
            }
            if odd_in_m1_above % 2 == 1 {
                negative = !negative;
            }
        }
        odd_in_m1_above += m1[i];
    }
    Some(negative)
}

/// Total degree of a monomial.
pub fn monomial_degree(m: &[u32]) -> u32 {
    m.iter().sum()
}

#[derive(Clone, PartialEq, Eq)]
pub struct SuperPoly {
    gens: Arc<GenSet>,
    terms: BTreeMap<Monomial, Rat>,
}

impl fmt::Debug for SuperPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SuperPoly({self})")
    }
}

impl SuperPoly {
    pub fn zero(gens: &Arc<GenSet>) -> Self {
        SuperPoly { gens: gens.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(gens: &Arc<GenSet>, c: Rat) -> Self {
        let mut p = Self::zero(gens);
        p.add_term(vec![0; gens.len()], c);
        p
    }

    pub fn one(gens: &Arc<GenSet>) -> Self {
        Self::constant(gens, Rat::one())
    }

    pub fn generator(gens: &Arc<GenSet>, i: usize) -> Self {
        let mut m = vec![0; gens.len()];
        m[i] = 1;
        Self::monomial(gens, m, Rat::one())
    }

    pub fn var(gens: &Arc<GenSet>, name: &str) -> Result<Self> {
        Ok(Self::generator(gens, gens.index(name)?))
    }

    /// A single normal-ordered monomial; odd exponents above one give zero.
    pub fn monomial(gens: &Arc<GenSet>, m: Monomial, c: Rat) -> Self {
        let mut p = Self::zero(gens);
        if m.iter().enumerate().all(|(i, &e)| !gens.is_odd(i) || e <= 1) {
            p.add_term(m, c);
        }
        p
    }

    pub fn gens(&self) -> &Arc<GenSet> {
        &self.gens
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &[u32]) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &SuperPoly, k: &Rat) {
        if k.is_zero() {
            return;
        }
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c * k);
        }
    }

    pub fn scale(&self, k: &Rat) -> SuperPoly {
        let mut out = SuperPoly::zero(&self.gens);
        out.add_scaled(self, k);
        out
    }

    fn same_gens(&self, other: &SuperPoly) -> bool {
        Arc::ptr_eq(&self.gens, &other.gens) || self.gens == other.gens
    }

    pub fn checked_add(&self, other: &SuperPoly) -> Result<SuperPoly> {
        if !self.same_gens(other) {
            return Err(Error::GeneratorMismatch);
        }
        let mut out = self.clone();
        out.add_scaled(other, &Rat::one());
        Ok(out)
    }

    pub fn checked_mul(&self, other: &SuperPoly) -> Result<SuperPoly> {
        if !self.same_gens(other) {
            return Err(Error::GeneratorMismatch);
        }
        let mut out = SuperPoly::zero(&self.gens);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                if let Some(negative) = product_sign(&self.gens, m1, m2) {
                    let m: Monomial = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                    let c = c1 * c2;
                    out.add_term(m, if negative { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    /// Parity of every term, or `None` for a mixed (or zero) polynomial.
    pub fn parity(&self) -> Option<Parity> {
        let mut seen = None;
        for m in self.terms.keys() {
            let p = Parity::from_bit(self.monomial_parity(m));
            match seen {
                None => seen = Some(p),
                Some(q) if q != p => return None,
                _ => {}
            }
        }
        seen
    }

    pub fn monomial_parity(&self, m: &[u32]) -> bool {
        m.iter().enumerate().filter(|(i, &e)| self.gens.is_odd(*i) && e == 1).count() % 2 == 1
    }

    pub fn monomial_ghost(&self, m: &[u32]) -> i32 {
        m.iter().enumerate().map(|(i, &e)| e as i32 * self.gens.get(i).ghost).sum()
    }

    pub fn monomial_antighost(&self, m: &[u32]) -> u32 {
        m.iter().enumerate().map(|(i, &e)| e * self.gens.get(i).antighost).sum()
    }

    /// Ghost number shared by every term, if any.
    pub fn ghost(&self) -> Option<i32> {
        let mut it = self.terms.keys().map(|m| self.monomial_ghost(m));
        let first = it.next()?;
        it.all(|g| g == first).then_some(first)
    }

    /// Largest total degree of a term; zero for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|m| monomial_degree(m)).max().unwrap_or(0)
    }

    /// Smallest total degree of a term.
    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| monomial_degree(m)).min()
    }

    /// Terms satisfying `keep`.
    pub fn filter(&self, keep: impl Fn(&Monomial) -> bool) -> SuperPoly {
        SuperPoly {
            gens: self.gens.clone(),
            terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// Drops every term of total degree above `cap`.
    pub fn truncate(&self, cap: u32) -> SuperPoly {
        self.filter(|m| monomial_degree(m) <= cap)
    }

    /// Sets the listed generators to zero.
    pub fn kill(&self, gens: &[usize]) -> SuperPoly {
        self.filter(|m| gens.iter().all(|&g| m[g] == 0))
    }

    fn deriv(&self, g: usize, right: bool) -> SuperPoly {
        let mut out = SuperPoly::zero(&self.gens);
        let odd = self.gens.is_odd(g);
        for (m, c) in &self.terms {
            let e = m[g];
            if e == 0 {
                continue;
            }
            let mut rest = m.clone();
            rest[g] -= 1;
            if odd {
                let passed = if right { (g + 1..m.len()).filter(|&i| self.gens.is_odd(i) && m[i] == 1).count() } else {
                    (0..g).filter(|&i| self.gens.is_odd(i) && m[i] == 1).count()
                };
                out.add_term(rest, if passed % 2 == 1 { -c.clone() } else { c.clone() });
            } else {
                out.add_term(rest, c * Rat::from_integer(e.into()));
            }
        }
        out
    }

    /// Derivative acting from the right: `∂ᴿ(u v) = u ∂ᴿv + (-1)^{ε(v)ε(g)} (∂ᴿu) v`.
    pub fn right_deriv(&self, g: usize) -> SuperPoly {
        self.deriv(g, true)
    }

    pub fn left_deriv(&self, g: usize) -> SuperPoly {
        self.deriv(g, false)
    }

    /// Generators occurring in some term.
    pub fn support(&self) -> Vec<usize> {
        (0..self.gens.len()).filter(|&i| self.terms.keys().any(|m| m[i] > 0)).collect()
    }

    /// Applies the right derivation with generator images `image(g)`:
    /// `X(F) = Σ_g ∂ᴿF/∂g · X(g)`.
    pub fn apply_right_derivation(&self, image: impl Fn(usize) -> SuperPoly) -> SuperPoly {
        let mut out = SuperPoly::zero(&self.gens);
        for g in self.support() {
            let xg = image(g);
            if xg.is_zero() {
                continue;
            }
            let d = self.right_deriv(g);
            out.add_scaled(&(&d * &xg), &Rat::one());
        }
        out
    }

    /// Parses terms like `-1/2*x^2*G1 + P1*eta2`; factors are a leading
    /// rational and generator powers joined by `*`.
    pub fn parse(gens: &Arc<GenSet>, src: &str) -> Result<SuperPoly> {
        let s: String = src.chars().filter(|c| !c.is_whitespace()).collect();
        let mut out = SuperPoly::zero(gens);
        if s.is_empty() || s == "0" {
            return Ok(out);
        }
        let mut terms = Vec::new();
        let mut start = 0;
        let bytes = s.as_bytes();
        for i in 1..bytes.len() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^' && bytes[i - 1] != b'*' {
                terms.push(&s[start..i]);
                start = i;
            }
        }
        terms.push(&s[start..]);
        for t in terms {
            let (neg, body) = match t.as_bytes()[0] {
                b'-' => (true, &t[1..]),
                b'+' => (false, &t[1..]),
                _ => (false, t),
            };
            if body.is_empty() {
                return Err(Error::Parse(format!("empty term in {src:?}")));
            }
            let mut term = SuperPoly::one(gens);
            let mut coeff = if neg { -Rat::one() } else { Rat::one() };
            for factor in body.split('*') {
                if factor.is_empty() {
                    return Err(Error::Parse(format!("empty factor in {src:?}")));
                }
                if factor.starts_with(|c: char| c.is_ascii_digit()) {
                    coeff *= parse_rat(factor)?;
                    continue;
                }
                let (name, exp) = match factor.split_once('^') {
                    Some((n, e)) => (n, e.parse::<u32>().map_err(|_| Error::Parse(format!("bad exponent in {factor:?}")))?),
                    None => (factor, 1),
                };
                let g = SuperPoly::var(gens, name)?;
                for _ in 0..exp {
                    term = &term * &g;
                }
            }
            out.add_scaled(&term, &coeff);
        }
        Ok(out)
    }
}

impl fmt::Display for SuperPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let mut factors = Vec::new();
            for (i, &e) in m.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.gens.get(i).name.clone()),
                    _ => factors.push(format!("{}^{e}", self.gens.get(i).name)),
                }
            }
            let negative = c < &Rat::zero();
            let abs = if negative { -c.clone() } else { c.clone() };
            let sep = match (k, negative) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            };
            let body = if factors.is_empty() {
                fmt_coeff(&abs)
            } else if abs.is_one() {
                factors.join("*")
            } else {
                format!("{}*{}", fmt_coeff(&abs), factors.join("*"))
            };
            write!(f, "{sep}{body}")?;
        }
        Ok(())
    }
}

/// Panics on mismatched generator sets; use [`SuperPoly::checked_mul`] to handle that.
impl Mul for &SuperPoly {
    type Output = SuperPoly;
    fn mul(self, rhs: &SuperPoly) -> SuperPoly {
        self.checked_mul(rhs).expect("polynomials over different generator sets")
    }
}

impl Add for &SuperPoly {
    type Output = SuperPoly;
    fn add(self, rhs: &SuperPoly) -> SuperPoly {
        self.checked_add(rhs).expect("polynomials over different generator sets")
    }
}

impl Sub for &SuperPoly {
    type Output = SuperPoly;
    fn sub(self, rhs: &SuperPoly) -> SuperPoly {
        self + &(-rhs)
    }
}

impl Neg for &SuperPoly {
    type Output = SuperPoly;
    fn neg(self) -> SuperPoly {
        self.scale(&-Rat::one())
    }
}

/// Every normal-ordered monomial of total degree at most `cap`, by degree
/// then lexicographically.
pub fn monomials_up_to(gens: &GenSet, cap: u32) -> Vec<Monomial> {
    fn go(gens: &GenSet, i: usize, left: u32, cur: &mut Monomial, out: &mut Vec<Monomial>) {
        if i == gens.len() {
            out.push(cur.clone());
            return;
        }
        let max = if gens.is_odd(i) { left.min(1) } else { left };
        for e in 0..=max {
            cur[i] = e;
            go(gens, i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    go(gens, 0, cap, &mut vec![0; gens.len()], &mut out);
    out.sort_by(|a, b| monomial_degree(a).cmp(&monomial_degree(b)).then_with(|| b.cmp(a)));
    out
}

/// Bracket values on ordered generator pairs; the other order follows by
/// graded antisymmetry `[v,u] = -(-1)^{ε_u ε_v}[u,v]`.
#[derive(Clone, Debug)]
pub struct PoissonTable {
    gens: Arc<GenSet>,
    entries: BTreeMap<(usize, usize), SuperPoly>,
}

impl PoissonTable {
    pub fn new(gens: &Arc<GenSet>) -> Self {
        PoissonTable { gens: gens.clone(), entries: BTreeMap::new() }
    }

    pub fn gens(&self) -> &Arc<GenSet> {
        &self.gens
    }

    /// Records `[u, v] = value` (and implicitly `[v, u]`).
    pub fn set(&mut self, u: usize, v: usize, value: SuperPoly) -> Result<()> {
        if u == v {
            let sym = -(&value);
            let even_u = !self.gens.is_odd(u);
            if even_u && !value.is_zero() && value != sym {
                return Err(Error::Precondition(format!("[{0},{0}] must vanish", self.gens.get(u).name)));
            }
        }
        let (key, val) = if u <= v { ((u, v), value) } else { ((v, u), self.flip(v, u, &value)) };
        if val.is_zero() {
            self.entries.remove(&key);
        } else {
            self.entries.insert(key, val);
        }
        Ok(())
    }

    fn flip(&self, u: usize, v: usize, value: &SuperPoly) -> SuperPoly {
        let both_odd = self.gens.is_odd(u) && self.gens.is_odd(v);
        if both_odd {
            value.clone()
        } else {
            -value
        }
    }

    pub fn get(&self, u: usize, v: usize) -> SuperPoly {
        if u <= v {
            self.entries.get(&(u, v)).cloned().unwrap_or_else(|| SuperPoly::zero(&self.gens))
        } else {
            let val = self.get(v, u);
            self.flip(v, u, &val)
        }
    }

    /// Generators appearing in some table entry.
    pub fn active(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.entries.keys().flat_map(|&(u, v)| [u, v]).collect();
        s.sort_unstable();
        s.dedup();
        s
    }

    /// `[f, g] = Σ_{u,v} ∂ᴿf/∂u [u,v] ∂ᴸg/∂v`.
    pub fn bracket(&self, f: &SuperPoly, g: &SuperPoly) -> SuperPoly {
        let mut out = SuperPoly::zero(&self.gens);
        let fs = f.support();
        let gs = g.support();
        for &u in &fs {
            let df = f.right_deriv(u);
            for &v in &gs {
                let uv = self.get(u, v);
                if uv.is_zero() {
                    continue;
                }
                let dg = g.left_deriv(v);
                out.add_scaled(&(&(&df * &uv) * &dg), &Rat::one());
            }
        }
        out
    }

    /// Graded Jacobi on every generator triple:
    /// `[u,[v,w]] = [[u,v],w] + (-1)^{ε_u ε_v}[v,[u,w]]`.
    pub fn check_jacobi(&self) -> std::result::Result<(), String> {
        let n = self.gens.len();
        let gen = |i| SuperPoly::generator(&self.gens, i);
        for u in 0..n {
            for v in 0..n {
                for w in 0..n {
                    let lhs = self.bracket(&gen(u), &self.bracket(&gen(v), &gen(w)));
                    let mut rhs = self.bracket(&self.bracket(&gen(u), &gen(v)), &gen(w));
                    let sign = if self.gens.is_odd(u) && self.gens.is_odd(v) { -Rat::one() } else { Rat::one() };
                    rhs.add_scaled(&self.bracket(&gen(v), &self.bracket(&gen(u), &gen(w))), &sign);
                    if lhs != rhs {
                        let name = |i: usize| self.gens.get(i).name.clone();
                        return Err(format!("Jacobi fails on ({}, {}, {})", name(u), name(v), name(w)));
                    }
                }
            }
        }
        Ok(())
    }
}

/// `(f, g) = Σ_A ∂ᴿf/∂φ^A ∂ᴸg/∂φ*_A - ∂ᴿf/∂φ*_A ∂ᴸg/∂φ^A` over `(field, antifield)` pairs.
pub fn antibracket(f: &SuperPoly, g: &SuperPoly, pairs: &[(usize, usize)]) -> SuperPoly {
    let mut out = SuperPoly::zero(f.gens());
    for &(phi, star) in pairs {
        out.add_scaled(&(&f.right_deriv(phi) * &g.left_deriv(star)), &Rat::one());
        out.add_scaled(&(&f.right_deriv(star) * &g.left_deriv(phi)), &-Rat::one());
    }
    out
}

/// Checks that each pair joins a field to an antifield of opposite parity
/// and ghost number `-gh - 1`.
pub fn check_pairs(gens: &GenSet, pairs: &[(usize, usize)]) -> Result<()> {
    for &(phi, star) in pairs {
        let (a, b) = (gens.get(phi), gens.get(star));
        if a.kind != GenKind::Field || b.kind != GenKind::Antifield {
            return Err(Error::Precondition(format!("{} / {} is not a field/antifield pair", a.name, b.name)));
        }
        if a.parity == b.parity || b.ghost != -a.ghost - 1 {
            return Err(Error::Precondition(format!("{} / {} have inconsistent parity or ghost number", a.name, b.name)));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::int;
    use proptest::prelude::*;

    fn gens() -> Arc<GenSet> {
        GenSet::new(vec![
            GenSpec::new("x", Parity::Even, 0, 0, GenKind::Coordinate),
            GenSpec::new("G1", Parity::Even, 0, 0, GenKind::Constraint),
            GenSpec::new("G2", Parity::Even, 0, 0, GenKind::Constraint),
            GenSpec::new("eta1", Parity::Odd, 1, 0, GenKind::Ghost),
            GenSpec::new("eta2", Parity::Odd, 1, 0, GenKind::Ghost),
            GenSpec::new("P1", Parity::Odd, -1, 1, GenKind::Antighost),
            GenSpec::new("P2", Parity::Odd, -1, 1, GenKind::Antighost),
        ])
        .unwrap()
    }

    fn p(s: &str) -> SuperPoly {
        SuperPoly::parse(&gens(), s).unwrap()
    }

    #[test]
    fn odd_products() {
        let g = gens();
        let e1 = SuperPoly::var(&g, "eta1").unwrap();
        let e2 = SuperPoly::var(&g, "eta2").unwrap();
        assert!((&e1 * &e1).is_zero());
        assert_eq!(&e2 * &e1, -(&(&e1 * &e2)));
        assert_eq!((&e1 * &e2).to_string(), "eta1*eta2");
        assert_eq!(&p("x+G1") * &p("x-G1"), p("x^2-G1^2"));
    }

    #[test]
    fn derivative_examples() {
        let g = gens();
        let p1 = g.index("P1").unwrap();
        let e1 = g.index("eta1").unwrap();
        let e2 = g.index("eta2").unwrap();
        assert_eq!(p("P1*G2").right_deriv(p1), p("G2"));
        assert_eq!(p("eta1*eta2").right_deriv(e2), p("eta1"));
        assert_eq!(p("eta1*eta2").right_deriv(e1), p("-eta2"));
        assert_eq!(p("eta1*eta2").left_deriv(e1), p("eta2"));
        assert_eq!(p("x^3").right_deriv(0), p("3*x^2"));
    }

    #[test]
    fn parse_roundtrip() {
        let f = p("-1/2*x^2*G1 + P1*eta2 - 3");
        assert_eq!(SuperPoly::parse(&gens(), &f.to_string()).unwrap(), f);
        assert!(SuperPoly::parse(&gens(), "y").is_err());
        assert!(SuperPoly::parse(&gens(), "x**2").is_err());
        assert_eq!(p("eta2*eta1"), p("-eta1*eta2"));
    }

    #[test]
    fn generator_mismatch() {
        let other = GenSet::new(vec![GenSpec::new("x", Parity::Odd, 0, 0, GenKind::Coordinate)]).unwrap();
        let a = SuperPoly::var(&other, "x").unwrap();
        assert!(matches!(p("x").checked_mul(&a), Err(Error::GeneratorMismatch)));
    }

    #[test]
    fn poisson_basics() {
        let g = gens();
        let mut t = PoissonTable::new(&g);
        t.set(0, 1, SuperPoly::one(&g)).unwrap();
        assert_eq!(t.bracket(&p("x^2"), &p("G1")), p("2*x"));
        assert!(t.bracket(&p("x"), &p("5")).is_zero());
        assert_eq!(t.get(1, 0), p("-1"));
        assert!(t.check_jacobi().is_ok());
    }

    #[test]
    fn monomial_enumeration() {
        let g = GenSet::new(vec![
            GenSpec::new("a", Parity::Even, 0, 0, GenKind::Field),
            GenSpec::new("b", Parity::Odd, 1, 0, GenKind::Field),
        ])
        .unwrap();
        // 1, a, b, a^2, ab
        assert_eq!(monomials_up_to(&g, 2).len(), 5);
    }

    fn two_pair() -> (Arc<GenSet>, Vec<(usize, usize)>) {
        let g = GenSet::new(vec![
            GenSpec::new("phi", Parity::Even, 0, 0, GenKind::Field),
            GenSpec::new("C", Parity::Odd, 1, 0, GenKind::Field),
            GenSpec::new("phi_star", Parity::Odd, -1, 0, GenKind::Antifield),
            GenSpec::new("C_star", Parity::Even, -2, 0, GenKind::Antifield),
        ])
        .unwrap();
        (g, vec![(0, 2), (1, 3)])
    }

    #[test]
    fn antibracket_examples() {
        let (g, pairs) = two_pair();
        check_pairs(&g, &pairs).unwrap();
        let phi = SuperPoly::var(&g, "phi").unwrap();
        let star = SuperPoly::var(&g, "phi_star").unwrap();
        assert_eq!(antibracket(&phi, &star, &pairs), SuperPoly::one(&g));
        let s0 = SuperPoly::parse(&g, "phi_star*C").unwrap();
        assert!(antibracket(&s0, &s0, &pairs).is_zero());
        assert!(antibracket(&s0, &SuperPoly::one(&g), &pairs).is_zero());
        assert_eq!(antibracket(&s0, &phi, &pairs).ghost(), Some(1));
    }

    fn poly_strategy(g: Arc<GenSet>) -> impl Strategy<Value = SuperPoly> {
        let n = g.len();
        prop::collection::vec((prop::collection::vec(0u32..3, n), -3i64..=3), 0..4).prop_map(move |terms| {
            let mut out = SuperPoly::zero(&g);
            for (m, c) in terms {
                out.add_scaled(&SuperPoly::monomial(&g, m, Rat::one()), &int(c));
            }
            out
        })
    }

    fn homogeneous(f: &SuperPoly, odd: bool) -> SuperPoly {
        f.filter(|m| f.monomial_parity(m) == odd)
    }

    proptest! {
        #[test]
        fn mul_is_associative(a in poly_strategy(gens()), b in poly_strategy(gens()), c in poly_strategy(gens())) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        }

        #[test]
        fn mul_is_supercommutative(a in poly_strategy(gens()), b in poly_strategy(gens()), pa: bool, pb: bool) {
            let (a, b) = (homogeneous(&a, pa), homogeneous(&b, pb));
            let sign = if pa && pb { -Rat::one() } else { Rat::one() };
            prop_assert_eq!(&a * &b, (&b * &a).scale(&sign));
        }

        #[test]
        fn left_right_derivatives_agree_up_to_sign(a in poly_strategy(gens()), pa: bool, g in 0usize..7) {
            let a = homogeneous(&a, pa);
            let odd_g = gens().is_odd(g);
            // ∂ᴸ = (-1)^{ε(g)(ε(F)+1)} ∂ᴿ
            let negative = odd_g && !pa;
            let sign = if negative { -Rat::one() } else { Rat::one() };
            prop_assert_eq!(a.left_deriv(g), a.right_deriv(g).scale(&sign));
        }

        #[test]
        fn right_derivatives_graded_commute(a in poly_strategy(gens()), g in 0usize..7, h in 0usize..7) {
            let both_odd = gens().is_odd(g) && gens().is_odd(h);
            let sign = if both_odd { -Rat::one() } else { Rat::one() };
            prop_assert_eq!(a.right_deriv(g).right_deriv(h), a.right_deriv(h).right_deriv(g).scale(&sign));
        }

        #[test]
        fn right_leibniz(a in poly_strategy(gens()), b in poly_strategy(gens()), pb: bool, g in 0usize..7) {
            let b = homogeneous(&b, pb);
            let sign = if pb && gens().is_odd(g) { -Rat::one() } else { Rat::one() };
            let lhs = (&a * &b).right_deriv(g);
            let rhs = &(&a * &b.right_deriv(g)) + &(&a.right_deriv(g) * &b).scale(&sign);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn antibracket_axioms(
            a in poly_strategy(two_pair().0), b in poly_strategy(two_pair().0), c in poly_strategy(two_pair().0),
            pa: bool, pb: bool, pc: bool,
        ) {
            let (_, pairs) = two_pair();
            let cap = |f: SuperPoly| f.truncate(2);
            let (a, b, c) = (cap(homogeneous(&a, pa)), cap(homogeneous(&b, pb)), cap(homogeneous(&c, pc)));
            // (A,B) = -(-1)^{(εA+1)(εB+1)} (B,A)
            let ab = antibracket(&a, &b, &pairs);
            let ba = antibracket(&b, &a, &pairs);
            let flip = if !pa && !pb { Rat::one() } else { -Rat::one() };
            prop_assert_eq!(&ab, &ba.scale(&flip));
            // (-1)^{(εA+1)(εC+1)}(A,(B,C)) + cyclic = 0
            let s = |x: bool, y: bool| if !x && !y { -Rat::one() } else { Rat::one() };
            let mut total = antibracket(&a, &antibracket(&b, &c, &pairs), &pairs).scale(&s(pa, pc));
            total.add_scaled(&antibracket(&b, &antibracket(&c, &a, &pairs), &pairs), &s(pb, pa));
            total.add_scaled(&antibracket(&c, &antibracket(&a, &b, &pairs), &pairs), &s(pc, pb));
            prop_assert!(total.is_zero());
        }
    }
}
