//! Multivariate polynomials over a number field, graded reverse
//! lexicographic order throughout.

mod groebner;
mod parse;

pub use groebner::{groebner, groebner_with_cap, ideal_reduce, is_groebner_basis, s_polynomial, DEFAULT_MONOMIAL_CAP};
pub use parse::{parse_expr, parse_poly, ParseError};

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::Signed;

use crate::linalg::Matrix;
use crate::numberfield::{Field, FieldElement};
use crate::rational::{fmt_rat, rat};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("dimension-mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("expression-swell: basis grew past {cap} monomials")]
    ExpressionSwell { cap: usize },
    #[error("polynomials live in different rings")]
    RingMismatch,
}

/// Exponent vector, ordered by grevlex: total degree first, then the
/// monomial with the smaller exponent in the last differing variable wins.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for (a, b) in self.0.iter().zip(&other.0).rev() {
                if a != b {
                    return b.cmp(a);
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Monomial {
        Monomial(exps)
    }

    pub fn one(n: usize) -> Monomial {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Monomial {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming divisibility.
    pub fn quotient(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// All monomials of total degree `d` in `n` variables, ascending.
    pub fn all_of_degree(n: usize, d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; n];
        fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if i + 1 == cur.len() {
                cur[i] = left;
                out.push(Monomial(cur.clone()));
                return;
            }
            for e in 0..=left {
                cur[i] = e;
                rec(i + 1, left - e, cur, out);
            }
            cur[i] = 0;
        }
        if n == 0 {
            if d == 0 {
                out.push(Monomial(Vec::new()));
            }
            return out;
        }
        rec(0, d, &mut cur, &mut out);
        out.sort();
        out
    }

    /// Distinct permutations of the exponent vector.
    pub fn permutation_orbit(&self) -> BTreeSet<Monomial> {
        let mut e = self.0.clone();
        e.sort_unstable();
        let mut out = BTreeSet::new();
        loop {
            out.insert(Monomial(e.clone()));
            if !next_permutation(&mut e) {
                break;
            }
        }
        out
    }

    /// Orbit representative with exponents in non-increasing order.
    pub fn sorted_representative(&self) -> Monomial {
        let mut e = self.0.clone();
        e.sort_unstable_by(|a, b| b.cmp(a));
        Monomial(e)
    }
}

fn next_permutation(v: &mut [u32]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Coefficient field and variable names.
#[derive(Debug, PartialEq, Eq)]
pub struct Ring {
    field: Field,
    vars: Vec<String>,
}

impl Ring {
    pub fn new(field: &Field, vars: &[&str]) -> Arc<Ring> {
        Arc::new(Ring { field: field.clone(), vars: vars.iter().map(|s| s.to_string()).collect() })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }
}

#[derive(Clone)]
pub struct MPoly {
    ring: Arc<Ring>,
    terms: BTreeMap<Monomial, FieldElement>,
}

impl PartialEq for MPoly {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring) && self.terms == other.terms
    }
}

impl Eq for MPoly {}

impl MPoly {
    pub fn zero(ring: &Arc<Ring>) -> MPoly {
        MPoly { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(ring: &Arc<Ring>, c: FieldElement) -> MPoly {
        MPoly::term(ring, c, Monomial::one(ring.nvars()))
    }

    pub fn one(ring: &Arc<Ring>) -> MPoly {
        MPoly::constant(ring, ring.field.one())
    }

    pub fn var(ring: &Arc<Ring>, i: usize) -> MPoly {
        MPoly::term(ring, ring.field.one(), Monomial::var(ring.nvars(), i))
    }

    pub fn vars(ring: &Arc<Ring>) -> Vec<MPoly> {
        (0..ring.nvars()).map(|i| MPoly::var(ring, i)).collect()
    }

    pub fn term(ring: &Arc<Ring>, c: FieldElement, m: Monomial) -> MPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MPoly { ring: ring.clone(), terms }
    }

    pub fn from_terms(ring: &Arc<Ring>, terms: impl IntoIterator<Item = (Monomial, FieldElement)>) -> MPoly {
        let mut p = MPoly::zero(ring);
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    /// `sum c_i x_i`.
    pub fn linear(ring: &Arc<Ring>, coeffs: &[FieldElement]) -> MPoly {
        let n = ring.nvars();
        MPoly::from_terms(ring, coeffs.iter().enumerate().map(|(i, c)| (Monomial::var(n, i), c.clone())))
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn field(&self) -> &Field {
        &self.ring.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms.keys().next().unwrap().is_one()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending grevlex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &FieldElement)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> FieldElement {
        self.terms.get(m).cloned().unwrap_or_else(|| self.ring.field.zero())
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &FieldElement)> {
        self.terms.iter().next_back()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.keys().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.leading_monomial().map(Monomial::degree)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: &FieldElement) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn scale(&self, c: &FieldElement) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(&self.ring);
        }
        MPoly { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> MPoly {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inverse().expect("leading coefficient is nonzero")),
        }
    }

    pub fn mul_term(&self, c: &FieldElement, m: &Monomial) -> MPoly {
        MPoly { ring: self.ring.clone(), terms: self.terms.iter().map(|(k, v)| (k.mul(m), v * c)).collect() }
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut acc = MPoly::one(&self.ring);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn derivative(&self, i: usize) -> MPoly {
        let mut out = MPoly::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut n = m.0.clone();
            n[i] -= 1;
            out.add_term(Monomial(n), &c.scale(&rat(e as i64)));
        }
        out
    }

    /// The constant value, if the polynomial is constant.
    pub fn constant_value(&self) -> Option<FieldElement> {
        if self.is_zero() {
            return Some(self.ring.field.zero());
        }
        if self.is_unit() {
            return self.terms.values().next().cloned();
        }
        None
    }

    pub fn gradient(&self) -> Vec<MPoly> {
        (0..self.ring.nvars()).map(|i| self.derivative(i)).collect()
    }

    pub fn eval(&self, point: &[FieldElement]) -> FieldElement {
        assert_eq!(point.len(), self.ring.nvars());
        let mut acc = self.ring.field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t = &t * &x.pow(e);
                }
            }
            acc += &t;
        }
        acc
    }

    /// `p(images)`: variable `i` is replaced by `images[i]`, which may live
    /// in another ring over the same field.
    pub fn substitute(&self, images: &[MPoly]) -> Result<MPoly, PolyError> {
        if images.len() != self.ring.nvars() {
            return Err(PolyError::DimensionMismatch { expected: self.ring.nvars(), found: images.len() });
        }
        let target = images.first().map_or_else(|| self.ring.clone(), |p| p.ring.clone());
        let mut powers: Vec<Vec<MPoly>> = images.iter().map(|p| vec![MPoly::one(&target), p.clone()]).collect();
        let mut out = MPoly::zero(&target);
        for (m, c) in &self.terms {
            let mut t = MPoly::constant(&target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap() * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e as usize];
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Linear change of variables `x_i -> sum_j m[i][j] x_j`. A non-square
    /// `m` with `k` columns maps into `target`, which must have `k` variables.
    pub fn substitute_linear(&self, m: &Matrix) -> Result<MPoly, PolyError> {
        self.substitute_linear_into(&self.ring.clone(), m)
    }

    pub fn substitute_linear_into(&self, target: &Arc<Ring>, m: &Matrix) -> Result<MPoly, PolyError> {
        if m.rows() != self.ring.nvars() {
            return Err(PolyError::DimensionMismatch { expected: self.ring.nvars(), found: m.rows() });
        }
        if m.cols() != target.nvars() {
            return Err(PolyError::DimensionMismatch { expected: target.nvars(), found: m.cols() });
        }
        let images: Vec<MPoly> = (0..m.rows()).map(|i| MPoly::linear(target, m.row(i))).collect();
        self.substitute(&images)
    }

    /// Sets variable `i` to 1; the result stays in the same ring.
    pub fn dehomogenize(&self, i: usize) -> MPoly {
        let mut out = MPoly::zero(&self.ring);
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            e[i] = 0;
            out.add_term(Monomial(e), c);
        }
        out
    }

    /// Same polynomial in a ring with the same variables over a larger field.
    pub fn map_coeffs(&self, target: &Arc<Ring>, f: impl Fn(&FieldElement) -> FieldElement) -> MPoly {
        assert_eq!(target.nvars(), self.ring.nvars());
        MPoly::from_terms(target, self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    /// Coefficient vector on the given monomial basis. `None` if a term
    /// falls outside the basis.
    pub fn coords_in(&self, basis: &[Monomial]) -> Option<Vec<FieldElement>> {
        let idx: BTreeMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut v = vec![self.ring.field.zero(); basis.len()];
        for (m, c) in &self.terms {
            v[*idx.get(m)?] = c.clone();
        }
        Some(v)
    }

    pub fn from_coords(ring: &Arc<Ring>, basis: &[Monomial], coords: &[FieldElement]) -> MPoly {
        MPoly::from_terms(ring, basis.iter().cloned().zip(coords.iter().cloned()))
    }

    /// Whether `p` is fixed by every permutation of the variables.
    pub fn is_symmetric(&self) -> bool {
        self.terms.iter().all(|(m, c)| m.permutation_orbit().iter().all(|o| self.terms.get(o) == Some(c)))
    }

    /// Rendering that groups full permutation orbits with equal
    /// coefficients as `Σ(...)`, e.g. `Σ(x^4) - 6*Σ(x^2*y^2)`.
    pub fn display_sigma(&self) -> String {
        let mut rest = self.terms.clone();
        let mut pieces: Vec<(FieldElement, String)> = Vec::new();
        while let Some((m, c)) = rest.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
            let orbit = m.permutation_orbit();
            if orbit.len() > 1 && orbit.iter().all(|o| rest.get(o) == Some(&c)) {
                for o in &orbit {
                    rest.remove(o);
                }
                let rep = m.sorted_representative();
                pieces.push((c, alloc::format!("Σ({})", self.fmt_monomial(&rep))));
            } else {
                rest.remove(&m);
                pieces.push((c, self.fmt_monomial(&m)));
            }
        }
        join_terms(&pieces)
    }

    fn fmt_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (i, &e) in m.0.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(self.ring.vars[i].clone()),
                _ => parts.push(alloc::format!("{}^{}", self.ring.vars[i], e)),
            }
        }
        parts.join("*")
    }
}

/// Joins `(coefficient, monomial text)` pairs; an empty monomial text means
/// a constant term.
fn join_terms(pieces: &[(FieldElement, String)]) -> String {
    if pieces.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (c, m)) in pieces.iter().enumerate() {
        let (neg, mag) = match c.as_rational() {
            Some(r) => (r.is_negative(), fmt_rat(&r.abs())),
            None => (false, alloc::format!("{c}")),
        };
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        match (m.is_empty(), mag == "1") {
            (true, _) => out.push_str(&mag),
            (false, true) => out.push_str(m),
            (false, false) => {
                out.push_str(&mag);
                out.push('*');
                out.push_str(m);
            }
        }
    }
    out
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pieces: Vec<(FieldElement, String)> =
            self.terms.iter().rev().map(|(m, c)| (c.clone(), self.fmt_monomial(m))).collect();
        f.write_str(&join_terms(&pieces))
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<'a> Add<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c);
        }
        out
    }
}

impl<'a> Sub<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), &-c);
        }
        out
    }
}

impl<'a> Mul<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        let mut out = MPoly::zero(&self.ring);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), &(c1 * c2));
            }
        }
        out
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.scale(&-self.ring.field.one())
    }
}

/// Sum over the distinct permutations of `m` in the ring's variables.
pub fn sigma_symmetrize(ring: &Arc<Ring>, m: &Monomial) -> MPoly {
    let one = ring.field.one();
    MPoly::from_terms(ring, m.permutation_orbit().into_iter().map(|o| (o, one.clone())))
}

/// All `k x k` minors of the Jacobian matrix (rows = polynomials, columns =
/// variables), row subsets outer and column subsets inner, both in
/// lexicographic order. Empty when `k` exceeds either dimension.
pub fn jacobian_minors(polys: &[MPoly], k: usize) -> Vec<MPoly> {
    let Some(first) = polys.first() else {
        return Vec::new();
    };
    let ring = first.ring.clone();
    let n = ring.nvars();
    if k == 0 || k > polys.len() || k > n {
        return Vec::new();
    }
    let jac: Vec<Vec<MPoly>> = polys.iter().map(MPoly::gradient).collect();
    let mut out = Vec::new();
    for rows in subsets(polys.len(), k) {
        for cols in subsets(n, k) {
            let m: Vec<Vec<MPoly>> = rows.iter().map(|&r| cols.iter().map(|&c| jac[r][c].clone()).collect()).collect();
            out.push(poly_det(&ring, &m));
        }
    }
    out
}

/// `k`-element subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Determinant by cofactor expansion along the first row.
pub fn poly_det(ring: &Arc<Ring>, m: &[Vec<MPoly>]) -> MPoly {
    let n = m.len();
    match n {
        0 => MPoly::one(ring),
        1 => m[0][0].clone(),
        _ => {
            let mut acc = MPoly::zero(ring);
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<MPoly>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, p)| p.clone()).collect())
                    .collect();
                let t = &m[0][j] * &poly_det(ring, &minor);
                acc = if j % 2 == 0 { &acc + &t } else { &acc - &t };
            }
            acc
        }
    }
}

/// Per-chart evidence that a projective scheme has no singular points.
#[derive(Debug, Clone)]
pub struct SmoothnessCertificate {
    /// `(chart variable, reduced Gröbner basis of the dehomogenized singular ideal)`.
    pub charts: Vec<(usize, Vec<MPoly>)>,
}

impl SmoothnessCertificate {
    pub fn is_smooth(&self) -> bool {
        self.charts.iter().all(|(_, b)| b.len() == 1 && b[0].is_unit())
    }
}

/// Smoothness of the complete intersection `gens = 0` of codimension
/// `gens.len()`: the singular ideal (gens and all maximal Jacobian minors)
/// has empty zero set in every affine chart `x_i = 1`.
pub fn is_smooth_projective(gens: &[MPoly]) -> Result<SmoothnessCertificate, PolyError> {
    is_smooth_projective_with_cap(gens, DEFAULT_MONOMIAL_CAP)
}

pub fn is_smooth_projective_with_cap(gens: &[MPoly], cap: usize) -> Result<SmoothnessCertificate, PolyError> {
    let Some(first) = gens.first() else {
        return Ok(SmoothnessCertificate { charts: Vec::new() });
    };
    let n = first.ring.nvars();
    let mut ideal: Vec<MPoly> = gens.to_vec();
    ideal.extend(jacobian_minors(gens, gens.len()).into_iter().filter(|p| !p.is_zero()));
    let mut charts = Vec::with_capacity(n);
    for i in 0..n {
        let chart: Vec<MPoly> = ideal.iter().map(|p| p.dehomogenize(i)).collect();
        charts.push((i, groebner_with_cap(&chart, cap)?));
    }
    Ok(SmoothnessCertificate { charts })
}

/// `sum x_i^d`.
pub fn power_sum(ring: &Arc<Ring>, d: u32) -> MPoly {
    let n = ring.nvars();
    let one = ring.field.one();
    MPoly::from_terms(
        ring,
        (0..n).map(|i| {
            let mut e = vec![0; n];
            e[i] = d;
            (Monomial(e), one.clone())
        }),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numberfield::fields;

    fn qring(vars: &[&str]) -> Arc<Ring> {
        Ring::new(&Field::rationals(), vars)
    }

    #[test]
    fn grevlex_order() {
        let m = |e: &[u32]| Monomial::new(e.to_vec());
        // x > y > z, x^2 > xy > y^2 > xz > yz > z^2
        let mut ms = vec![m(&[0, 0, 2]), m(&[1, 1, 0]), m(&[0, 2, 0]), m(&[2, 0, 0]), m(&[1, 0, 1]), m(&[0, 1, 1])];
        ms.sort();
        assert_eq!(ms, vec![m(&[0, 0, 2]), m(&[0, 1, 1]), m(&[1, 0, 1]), m(&[0, 2, 0]), m(&[1, 1, 0]), m(&[2, 0, 0])]);
    }

    #[test]
    fn sigma_of_x4y_has_twelve_terms() {
        let r = qring(&["x", "y", "z", "t"]);
        let s = sigma_symmetrize(&r, &Monomial::new(vec![4, 1, 0, 0]));
        assert_eq!(s.num_terms(), 12);
        assert_eq!(s, sigma_symmetrize(&r, &Monomial::new(vec![1, 4, 0, 0])));
        assert_eq!(sigma_symmetrize(&r, &Monomial::new(vec![1, 1, 1, 1])).num_terms(), 1);
        assert_eq!(sigma_symmetrize(&r, &Monomial::new(vec![1, 0, 0, 0])).to_string(), "x + y + z + t");
    }

    #[test]
    fn sigma_display() {
        let r = qring(&["x", "y", "z", "t"]);
        let f = &sigma_symmetrize(&r, &Monomial::new(vec![4, 0, 0, 0]))
            - &sigma_symmetrize(&r, &Monomial::new(vec![2, 2, 0, 0])).scale(&r.field().from_int(6));
        assert_eq!(f.display_sigma(), "Σ(x^4) - 6*Σ(x^2*y^2)");
        assert!(f.is_symmetric());
    }

    #[test]
    fn minors() {
        let r = qring(&["x", "y"]);
        let x = MPoly::var(&r, 0);
        let y = MPoly::var(&r, 1);
        let ms = jacobian_minors(&[x.pow(2), y.pow(2)], 2);
        assert_eq!(ms.len(), 1);
        assert_eq!(ms[0].to_string(), "4*x*y");
        assert!(jacobian_minors(&[x.pow(2), y.pow(2)], 3).is_empty());
    }

    #[test]
    fn substitution_and_eval() {
        let k = fields::gaussian();
        let r = Ring::new(&k, &["x", "y"]);
        let x = MPoly::var(&r, 0);
        let y = MPoly::var(&r, 1);
        let p = &x.pow(2) + &y;
        let m = Matrix::from_ints(&k, &[&[1, -1], &[1, 1]]);
        let q = p.substitute_linear(&m).unwrap();
        assert_eq!(q.to_string(), "x^2 - 2*x*y + y^2 + x + y");
        let pt = [k.from_int(2), k.named("i").unwrap()];
        let mpt = m.mul_vec(&pt);
        assert_eq!(q.eval(&pt), p.eval(&mpt));
        assert_eq!(p.substitute_linear(&Matrix::identity(&k, 2)).unwrap(), p);
    }

    #[test]
    fn fermat_quartic_is_smooth() {
        let r = qring(&["x", "y", "z", "t"]);
        let cert = is_smooth_projective(&[power_sum(&r, 4)]).unwrap();
        assert!(cert.is_smooth());
        let x = MPoly::var(&r, 0);
        let y = MPoly::var(&r, 1);
        let cone = &x.pow(2) - &y.pow(2);
        assert!(!is_smooth_projective(&[cone]).unwrap().is_smooth());
    }
}
