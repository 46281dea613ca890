//! Exact arithmetic in algebraic number fields `Q[x]/(m(x))`.
//!
//! Every field is built as a tower of square roots over `Q` and then
//! compressed to a single primitive element, so an element is just its
//! coordinate vector in the power basis `1, x, ..., x^(d-1)`. The tower
//! is kept behind the scenes: it is what makes [`FieldElement::sqrt`]
//! exact (a square root in `F(sqrt b)` reduces to square roots in `F` of
//! the coordinates and of the relative norm).

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::rational::{fmt_rat, q_inverse, q_mat_vec, q_rank, q_solve, rat, rat_sqrt, QMat, Rat};

/// Largest field degree [`Field::adjoin_sqrt`] will build unless told otherwise.
pub const DEFAULT_DEGREE_BOUND: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("division-by-zero")]
    DivisionByZero,
    #[error("already-square: the radicand has square root {0}")]
    AlreadySquare(FieldElement),
    #[error("degree-overflow: degree {degree} exceeds bound {bound}")]
    DegreeOverflow { degree: usize, bound: usize },
    #[error("field-mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("no-embedding: {0}")]
    NoEmbedding(String),
    #[error("unknown-field: {0}")]
    UnknownField(String),
    #[error("no primitive element found among small integer combinations")]
    NoPrimitiveElement,
}

struct TowerStep {
    base: Field,
    /// `b` in base coordinates; this field is `base(sqrt b)`.
    radicand: Vec<Rat>,
    /// `sqrt b` in this field's coordinates.
    root: Vec<Rat>,
    /// This field's coordinates -> `(u, v)` with element `u + v sqrt b`,
    /// stacked as a vector of length `2 * base.degree()`.
    split: QMat,
    /// Base coordinates -> this field's coordinates.
    embed: QMat,
}

struct FieldData {
    name: String,
    minpoly: Vec<Rat>,
    degree: usize,
    /// `x^(degree + k)` reduced into the power basis, `k = 0..degree-1`.
    reduction: Reduction,
    named: BTreeMap<String, Vec<Rat>>,
    /// The primitive element as an integer combination of named square roots.
    recipe: Vec<(String, BigInt)>,
    tower: Option<TowerStep>,
}

/// A number field with a fixed power basis. Cheap to clone.
#[derive(Clone)]
pub struct Field(Arc<FieldData>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.minpoly == other.0.minpoly
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.name)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.name)
    }
}

/// Reduction rows over a common denominator, so products can be formed in
/// integers with a single normalization per coordinate.
#[derive(Clone)]
struct Reduction {
    num: Vec<Vec<BigInt>>,
    den: BigInt,
}

fn reduction_table(minpoly: &[Rat]) -> Reduction {
    let rows = reduction_rows(minpoly);
    let den = rows.iter().flatten().fold(BigInt::one(), |acc, r| num_integer::Integer::lcm(&acc, r.denom()));
    let num = rows.iter().map(|row| row.iter().map(|r| r.numer() * (&den / r.denom())).collect()).collect();
    Reduction { num, den }
}

fn reduction_rows(minpoly: &[Rat]) -> Vec<Vec<Rat>> {
    let d = minpoly.len() - 1;
    let mut table = Vec::with_capacity(d.saturating_sub(1).max(1));
    // x^d = -sum_{k<d} m_k x^k
    let mut cur: Vec<Rat> = minpoly[..d].iter().map(|c| -c).collect();
    for _ in 0..d.max(1) {
        table.push(cur.clone());
        // multiply by x
        let top = cur[d - 1].clone();
        let mut next = vec![Rat::zero(); d];
        for k in (1..d).rev() {
            next[k] = cur[k - 1].clone();
        }
        if !top.is_zero() {
            for k in 0..d {
                next[k] -= &top * &minpoly[k];
            }
        }
        cur = next;
    }
    table
}

impl Field {
    /// The rational numbers, presented as `Q[x]/(x)`.
    pub fn rationals() -> Field {
        let minpoly = vec![Rat::zero(), Rat::one()];
        Field(Arc::new(FieldData {
            name: "Q".into(),
            reduction: reduction_table(&minpoly),
            minpoly,
            degree: 1,
            named: BTreeMap::new(),
            recipe: Vec::new(),
            tower: None,
        }))
    }

    pub fn degree(&self) -> usize {
        self.0.degree
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    /// Monic minimal polynomial of the primitive element, low degree first.
    pub fn minpoly(&self) -> &[Rat] {
        &self.0.minpoly
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { field: self.clone(), coords: vec![Rat::zero(); self.0.degree] }
    }

    pub fn one(&self) -> FieldElement {
        self.from_rat(Rat::one())
    }

    pub fn from_rat(&self, r: Rat) -> FieldElement {
        let mut coords = vec![Rat::zero(); self.0.degree];
        coords[0] = r;
        FieldElement { field: self.clone(), coords }
    }

    pub fn from_int(&self, n: i64) -> FieldElement {
        self.from_rat(rat(n))
    }

    /// Element with the given power-basis coordinates.
    ///
    /// Panics if the length does not match the degree.
    pub fn element(&self, coords: Vec<Rat>) -> FieldElement {
        assert_eq!(coords.len(), self.0.degree, "coordinate length must equal field degree");
        FieldElement { field: self.clone(), coords }
    }

    /// The primitive element `x`.
    pub fn generator(&self) -> FieldElement {
        if self.0.degree == 1 {
            return self.zero();
        }
        let mut coords = vec![Rat::zero(); self.0.degree];
        coords[1] = Rat::one();
        self.element(coords)
    }

    pub fn named(&self, name: &str) -> Option<FieldElement> {
        self.0.named.get(name).map(|c| self.element(c.clone()))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.0.named.keys().map(String::as_str)
    }

    /// Same field with one more named element. Elements of `self` remain
    /// valid in the returned field.
    pub fn with_name(&self, name: &str, value: &FieldElement) -> Field {
        assert!(&value.field == self);
        let d = &self.0;
        let mut named = d.named.clone();
        named.insert(name.into(), value.coords.clone());
        Field(Arc::new(FieldData {
            name: d.name.clone(),
            minpoly: d.minpoly.clone(),
            degree: d.degree,
            reduction: d.reduction.clone(),
            named,
            recipe: d.recipe.clone(),
            tower: d.tower.as_ref().map(|t| TowerStep {
                base: t.base.clone(),
                radicand: t.radicand.clone(),
                root: t.root.clone(),
                split: t.split.clone(),
                embed: t.embed.clone(),
            }),
        }))
    }

    pub fn with_display_name(&self, display: &str) -> Field {
        let f = self.with_name("__tmp", &self.zero());
        let mut data = Arc::try_unwrap(f.0).ok().expect("fresh field");
        data.named.remove("__tmp");
        data.name = display.into();
        Field(Arc::new(data))
    }

    /// Builds `self(s)` with `s^2 = a`, with the default degree bound.
    pub fn adjoin_sqrt(&self, a: &FieldElement, name: &str) -> Result<(Field, Embedding), FieldError> {
        self.adjoin_sqrt_bounded(a, name, DEFAULT_DEGREE_BOUND)
    }

    /// Builds `self(s)` with `s^2 = a`, compressing the tower to a single
    /// primitive element `s + c x` for the first small integer `c` that
    /// generates. Returns the new field and the embedding `self -> self(s)`.
    pub fn adjoin_sqrt_bounded(
        &self,
        a: &FieldElement,
        name: &str,
        bound: usize,
    ) -> Result<(Field, Embedding), FieldError> {
        self.check(a)?;
        if let Some(s) = a.sqrt() {
            return Err(FieldError::AlreadySquare(s));
        }
        let d = self.0.degree;
        let n = 2 * d;
        if n > bound {
            return Err(FieldError::DegreeOverflow { degree: n, bound });
        }
        // Pair arithmetic in self(s): (u1, v1)(u2, v2) = (u1 u2 + a v1 v2, u1 v2 + u2 v1).
        let pair_mul = |p: &(FieldElement, FieldElement), q: &(FieldElement, FieldElement)| {
            (&(&p.0 * &q.0) + &(&(&p.1 * &q.1) * a), &(&p.0 * &q.1) + &(&q.0 * &p.1))
        };
        let flatten = |p: &(FieldElement, FieldElement)| {
            let mut v = p.0.coords.clone();
            v.extend(p.1.coords.iter().cloned());
            v
        };
        let gen = self.generator();
        for c in (0..16i64).flat_map(|k| if k == 0 { vec![0] } else { vec![k, -k] }) {
            let gamma = (&gen * &self.from_int(c), self.one());
            let mut powers: Vec<Vec<Rat>> = Vec::with_capacity(n + 1);
            let mut cur = (self.one(), self.zero());
            for _ in 0..=n {
                powers.push(flatten(&cur));
                cur = pair_mul(&cur, &gamma);
            }
            // P has the powers gamma^0..gamma^(n-1) as columns.
            let p: QMat = (0..n).map(|r| (0..n).map(|k| powers[k][r].clone()).collect()).collect();
            if q_rank(&p) < n {
                if d == 1 {
                    break;
                }
                continue;
            }
            let lin = q_solve(&p, &powers[n]).expect("full rank");
            let mut minpoly: Vec<Rat> = lin.iter().map(|x| -x).collect();
            minpoly.push(Rat::one());
            let p_inv = q_inverse(&p).expect("full rank");
            let embed: QMat = p_inv.iter().map(|row| row[..d].to_vec()).collect();
            let mut unit_v = vec![Rat::zero(); n];
            unit_v[d] = Rat::one();
            let root = q_mat_vec(&p_inv, &unit_v);
            let mut named: BTreeMap<String, Vec<Rat>> =
                self.0.named.iter().map(|(k, v)| (k.clone(), q_mat_vec(&embed, v))).collect();
            named.insert(name.into(), root.clone());
            let mut recipe = vec![(String::from(name), BigInt::one())];
            recipe.extend(self.0.recipe.iter().map(|(nm, k)| (nm.clone(), k * BigInt::from(c))));
            recipe.retain(|(_, k)| !k.is_zero());
            let display = if self.0.degree == 1 {
                alloc::format!("Q({name})")
            } else {
                let inner = self.0.name.trim_start_matches("Q(").trim_end_matches(')');
                alloc::format!("Q({inner},{name})")
            };
            let field = Field(Arc::new(FieldData {
                name: display,
                reduction: reduction_table(&minpoly),
                minpoly,
                degree: n,
                named,
                recipe,
                tower: Some(TowerStep {
                    base: self.clone(),
                    radicand: a.coords.clone(),
                    root,
                    split: p,
                    embed: embed.clone(),
                }),
            }));
            let emb = Embedding { source: self.clone(), target: field.clone(), matrix: embed };
            return Ok((field, emb));
        }
        Err(FieldError::NoPrimitiveElement)
    }

    /// Embedding into `target` sending each named square root of the tower
    /// to the element of `target` with the same name. Fails if `target`
    /// lacks a name or the names do not satisfy the same relations.
    pub fn embedding_into(&self, target: &Field) -> Result<Embedding, FieldError> {
        let mut img = target.zero();
        for (name, k) in &self.0.recipe {
            let s = target
                .named(name)
                .ok_or_else(|| FieldError::NoEmbedding(alloc::format!("{} has no element {name}", target)))?;
            img += &(&s * &target.from_rat(Rat::from_integer(k.clone())));
        }
        let d = self.0.degree;
        let mut cols = Vec::with_capacity(d);
        let mut cur = target.one();
        for _ in 0..d {
            cols.push(cur.coords.clone());
            cur = &cur * &img;
        }
        // cur = img^d; check m(img) = 0.
        let mut val = cur;
        for (k, c) in self.0.minpoly[..d].iter().enumerate() {
            let col = target.element(cols[k].clone());
            val += &col.scale(c);
        }
        if !val.is_zero() {
            return Err(FieldError::NoEmbedding(alloc::format!(
                "named elements of {} do not satisfy the relations of {}",
                target,
                self
            )));
        }
        let rows = target.degree();
        let matrix = (0..rows).map(|r| (0..d).map(|k| cols[k][r].clone()).collect()).collect();
        Ok(Embedding { source: self.clone(), target: target.clone(), matrix })
    }

    fn check(&self, a: &FieldElement) -> Result<(), FieldError> {
        if &a.field == self {
            Ok(())
        } else {
            Err(FieldError::FieldMismatch(self.to_string(), a.field.to_string()))
        }
    }

    fn mul_coords(&self, a: &[Rat], b: &[Rat]) -> Vec<Rat> {
        let d = self.0.degree;
        if d == 1 {
            return vec![&a[0] * &b[0]];
        }
        let (an, ad) = common_denominator(a);
        let (bn, bd) = common_denominator(b);
        let mut prod = vec![BigInt::zero(); 2 * d - 1];
        for (i, x) in an.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in bn.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        let red = &self.0.reduction;
        let mut out: Vec<BigInt> = prod[..d].iter().map(|c| c * &red.den).collect();
        for (k, c) in prod[d..].iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, r) in out.iter_mut().zip(&red.num[k]) {
                if !r.is_zero() {
                    *o += c * r;
                }
            }
        }
        let den = ad * bd * &red.den;
        out.into_iter().map(|n| Rat::new(n, den.clone())).collect()
    }
}

/// Integer numerators over the lcm of the denominators.
fn common_denominator(a: &[Rat]) -> (Vec<BigInt>, BigInt) {
    let den =
        a.iter().fold(
            BigInt::one(),
            |acc, r| if r.denom().is_one() { acc } else { num_integer::Integer::lcm(&acc, r.denom()) },
        );
    let num =
        a.iter().map(|r| if r.denom() == &den { r.numer().clone() } else { r.numer() * (&den / r.denom()) }).collect();
    (num, den)
}

/// Ring embedding between two fields, as a `Q`-linear map on coordinates.
#[derive(Clone)]
pub struct Embedding {
    source: Field,
    target: Field,
    matrix: QMat,
}

impl fmt::Debug for Embedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.source, self.target)
    }
}

impl Embedding {
    pub fn source(&self) -> &Field {
        &self.source
    }

    pub fn target(&self) -> &Field {
        &self.target
    }

    pub fn apply(&self, a: &FieldElement) -> FieldElement {
        assert!(a.field == self.source, "embedding applied to element of wrong field");
        self.target.element(q_mat_vec(&self.matrix, &a.coords))
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &Embedding) -> Embedding {
        assert!(self.target == next.source);
        let cols = self.source.degree();
        let matrix = next
            .matrix
            .iter()
            .map(|row| {
                (0..cols)
                    .map(|k| row.iter().zip(&self.matrix).fold(Rat::zero(), |acc, (a, r)| acc + a * &r[k]))
                    .collect()
            })
            .collect();
        Embedding { source: self.source.clone(), target: next.target.clone(), matrix }
    }
}

/// An element of a [`Field`], stored by power-basis coordinates.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: Field,
    coords: Vec<Rat>,
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on coordinates; only meaningful within one field.
impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coords.cmp(&other.coords)
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(Zero::is_zero)
    }

    /// `Some(r)` when the element lies in `Q`.
    pub fn as_rational(&self) -> Option<&Rat> {
        if self.coords[1..].iter().all(Zero::is_zero) {
            Some(&self.coords[0])
        } else {
            None
        }
    }

    pub fn scale(&self, r: &Rat) -> FieldElement {
        FieldElement { field: self.field.clone(), coords: self.coords.iter().map(|c| c * r).collect() }
    }

    pub fn square(&self) -> FieldElement {
        self * self
    }

    pub fn pow(&self, mut e: u32) -> FieldElement {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse by the extended Euclidean algorithm against
    /// the minimal polynomial.
    pub fn inverse(&self) -> Result<FieldElement, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let m = self.field.0.minpoly.clone();
        let a = trim(self.coords.clone());
        let (g, s) = ext_gcd(&m, &a);
        // g is a nonzero constant since m is irreducible and deg a < deg m.
        debug_assert_eq!(g.len(), 1);
        let inv_g = g[0].recip();
        let mut coords: Vec<Rat> = s.iter().map(|c| c * &inv_g).collect();
        coords.resize(self.field.0.degree, Rat::zero());
        Ok(self.field.element(coords))
    }

    pub fn checked_div(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        Ok(self * &other.inverse()?)
    }

    /// A square root inside the field, if one exists. The returned root has
    /// its first nonzero coordinate positive.
    pub fn sqrt(&self) -> Option<FieldElement> {
        if self.is_zero() {
            return Some(self.clone());
        }
        let root = match &self.field.0.tower {
            None => self.field.from_rat(rat_sqrt(&self.coords[0])?),
            Some(step) => self.tower_sqrt(step)?,
        };
        debug_assert!(&root.square() == self);
        Some(root.normalized_sign())
    }

    fn tower_sqrt(&self, step: &TowerStep) -> Option<FieldElement> {
        let base = &step.base;
        let db = base.degree();
        let pair = q_mat_vec(&step.split, &self.coords);
        let u = base.element(pair[..db].to_vec());
        let v = base.element(pair[db..].to_vec());
        let b = base.element(step.radicand.clone());
        let lift = |x: &FieldElement| self.field.element(q_mat_vec(&step.embed, &x.coords));
        let root = self.field.element(step.root.clone());
        if v.is_zero() {
            if let Some(x) = u.sqrt() {
                return Some(lift(&x));
            }
            let y = u.checked_div(&b).ok()?.sqrt()?;
            return Some(&lift(&y) * &root);
        }
        // (x + y r)^2 = a  <=>  x^2 + b y^2 = u, 2 x y = v.
        let norm = &u.square() - &(&b * &v.square());
        let r = norm.sqrt()?;
        let half = rat(1) / rat(2);
        for sign in [1i64, -1] {
            let x2 = (&u + &r.scale(&rat(sign))).scale(&half);
            if x2.is_zero() {
                continue;
            }
            let Some(x) = x2.sqrt() else { continue };
            let y = v.checked_div(&x.scale(&rat(2))).ok()?;
            let cand = &lift(&x) + &(&lift(&y) * &root);
            if &cand.square() == self {
                return Some(cand);
            }
        }
        None
    }

    fn normalized_sign(self) -> FieldElement {
        match self.coords.iter().find(|c| !c.is_zero()) {
            Some(c) if c.is_negative() => -self,
            _ => self,
        }
    }

    /// Coordinates as exact `p/q` strings.
    pub fn coord_strings(&self) -> Vec<String> {
        self.coords.iter().map(fmt_rat).collect()
    }
}

fn trim(mut p: Vec<Rat>) -> Vec<Rat> {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_divrem(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    let db = b.len() - 1;
    if r.len() < b.len() {
        return (vec![Rat::zero()], r);
    }
    let mut q = vec![Rat::zero(); r.len() - db];
    let lead_inv = b[db].recip();
    while r.len() >= b.len() && !(r.len() == 1 && r[0].is_zero()) {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() * &lead_inv;
        for (k, bk) in b.iter().enumerate() {
            r[shift + k] -= &c * bk;
        }
        q[shift] = c;
        r.pop();
        if r.is_empty() {
            r.push(Rat::zero());
        }
        r = trim(r);
    }
    (q, r)
}

fn poly_sub_mul(a: &[Rat], q: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut out = a.to_vec();
    let len = q.len() + b.len() - 1;
    if out.len() < len {
        out.resize(len, Rat::zero());
    }
    for (i, x) in q.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] -= x * y;
        }
    }
    trim(out)
}

/// Returns `(g, s)` with `s * a = g (mod m)`.
fn ext_gcd(m: &[Rat], a: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let (mut r0, mut r1) = (m.to_vec(), a.to_vec());
    let (mut s0, mut s1) = (vec![Rat::zero()], vec![Rat::one()]);
    while !(r1.len() == 1 && r1[0].is_zero()) {
        let (q, r) = poly_divrem(&r0, &r1);
        let s2 = poly_sub_mul(&s0, &q, &s1);
        r0 = core::mem::replace(&mut r1, r);
        s0 = core::mem::replace(&mut s1, s2);
    }
    (r0, s0)
}

impl fmt::Display for FieldElement {
    /// Prints in terms of the primitive element when the field has a single
    /// named generator (`1 + 2*i`), otherwise as `[c0, c1, ...]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_rational() {
            return f.write_str(&fmt_rat(r));
        }
        let gen_name = match self.field.0.recipe.as_slice() {
            [(name, k)] if k.is_one() => Some(name.as_str()),
            _ => None,
        };
        match gen_name {
            Some(g) => {
                let mut first = true;
                f.write_str("(")?;
                for (k, c) in self.coords.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let neg = c.is_negative();
                    let mag = fmt_rat(&c.abs());
                    if first {
                        if neg {
                            f.write_str("-")?;
                        }
                    } else {
                        f.write_str(if neg { " - " } else { " + " })?;
                    }
                    first = false;
                    match k {
                        0 => f.write_str(&mag)?,
                        _ => {
                            if mag != "1" {
                                write!(f, "{mag}*")?;
                            }
                            if k == 1 {
                                f.write_str(g)?;
                            } else {
                                write!(f, "{g}^{k}")?;
                            }
                        }
                    }
                }
                f.write_str(")")
            }
            None => {
                f.write_str("[")?;
                for (k, c) in self.coords.iter().enumerate() {
                    if k > 0 {
                        f.write_str(", ")?;
                    }
                    f.write_str(&fmt_rat(c))?;
                }
                f.write_str("]")
            }
        }
    }
}

fn assert_same(a: &FieldElement, b: &FieldElement) {
    debug_assert!(a.field == b.field, "mixed fields: {} and {}", a.field, b.field);
}

impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        assert_same(self, rhs);
        FieldElement {
            field: self.field.clone(),
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        assert_same(self, rhs);
        FieldElement {
            field: self.field.clone(),
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect(),
        }
    }
}

impl<'a> Mul<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        assert_same(self, rhs);
        FieldElement { field: self.field.clone(), coords: self.field.mul_coords(&self.coords, &rhs.coords) }
    }
}

impl<'a> Div<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    /// Panics on division by zero; use [`FieldElement::checked_div`] otherwise.
    fn div(self, rhs: &FieldElement) -> FieldElement {
        self.checked_div(rhs).expect("division by zero in number field")
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(mut self) -> FieldElement {
        for c in self.coords.iter_mut() {
            *c = -core::mem::take(c);
        }
        self
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -self.clone()
    }
}

impl Add for FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: FieldElement) -> FieldElement {
        &self + &rhs
    }
}

impl Sub for FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: FieldElement) -> FieldElement {
        &self - &rhs
    }
}

impl Mul for FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: FieldElement) -> FieldElement {
        &self * &rhs
    }
}

impl AddAssign<&FieldElement> for FieldElement {
    fn add_assign(&mut self, rhs: &FieldElement) {
        assert_same(self, rhs);
        for (a, b) in self.coords.iter_mut().zip(&rhs.coords) {
            if !b.is_zero() {
                *a += b;
            }
        }
    }
}

impl SubAssign<&FieldElement> for FieldElement {
    fn sub_assign(&mut self, rhs: &FieldElement) {
        assert_same(self, rhs);
        for (a, b) in self.coords.iter_mut().zip(&rhs.coords) {
            if !b.is_zero() {
                *a -= b;
            }
        }
    }
}

/// The concrete fields used throughout the crate.
pub mod fields {
    use super::*;

    /// `Q(i)`.
    pub fn gaussian() -> Field {
        let q = Field::rationals();
        q.adjoin_sqrt(&q.from_int(-1), "i").expect("-1 is not a rational square").0
    }

    /// `Q(sqrt5)` with `phi = (1 + sqrt5)/2` named.
    pub fn golden() -> Field {
        let q = Field::rationals();
        let k = q.adjoin_sqrt(&q.from_int(5), "sqrt5").expect("5 is not a rational square").0;
        with_phi(k)
    }

    fn with_phi(k: Field) -> Field {
        let phi = (&k.one() + &k.named("sqrt5").unwrap()).scale(&(rat(1) / rat(2)));
        k.with_name("phi", &phi)
    }

    /// `Q(i, sqrt5)` with `phi` named.
    pub fn gaussian_golden() -> Field {
        let qi = gaussian();
        let k = qi.adjoin_sqrt(&qi.from_int(5), "sqrt5").expect("5 is not a square in Q(i)").0;
        with_phi(k)
    }

    /// `Q(sqrt5, sqrt(phi))`, the real quartic field of `sqrt(phi)`.
    pub fn golden_sqrtphi() -> Field {
        let k = golden();
        let phi = k.named("phi").unwrap();
        k.adjoin_sqrt(&phi, "sqrtphi").expect("phi is not a square in Q(sqrt5)").0
    }

    /// `Q(i, sqrt5, sqrt(phi))`, degree 8.
    pub fn gaussian_golden_sqrtphi() -> Field {
        let k = golden_sqrtphi();
        k.adjoin_sqrt(&k.from_int(-1), "i").expect("-1 is not a square in a real field").0
    }

    /// `Q(zeta8) = Q(i, sqrt i)`.
    pub fn cyclotomic8() -> Field {
        let qi = gaussian();
        let i = qi.named("i").unwrap();
        let k = qi.adjoin_sqrt(&i, "zeta8").expect("i is not a square in Q(i)").0;
        k.with_display_name("Q(zeta8)")
    }

    /// `Q(i, sqrt10)`.
    pub fn gaussian_sqrt10() -> Field {
        let qi = gaussian();
        qi.adjoin_sqrt(&qi.from_int(10), "sqrt10").expect("10 is not a square in Q(i)").0
    }

    /// Looks a field up by its display name.
    pub fn by_name(name: &str) -> Result<Field, FieldError> {
        let compact: String = name.chars().filter(|c| !c.is_whitespace()).collect();
        Ok(match compact.as_str() {
            "Q" => Field::rationals(),
            "Q(i)" => gaussian(),
            "Q(sqrt5)" => golden(),
            "Q(i,sqrt5)" => gaussian_golden(),
            "Q(sqrt5,sqrtphi)" => golden_sqrtphi(),
            "Q(sqrt5,sqrtphi,i)" | "Q(i,sqrt5,sqrtphi)" => gaussian_golden_sqrtphi(),
            "Q(zeta8)" => cyclotomic8(),
            "Q(i,sqrt10)" => gaussian_sqrt10(),
            _ => return Err(FieldError::UnknownField(name.into())),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::fields::*;
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn adjoin_i_to_rationals() {
        let k = gaussian();
        assert_eq!(k.degree(), 2);
        let i = k.named("i").unwrap();
        assert_eq!(i.square(), k.from_int(-1));
        assert_eq!(k.minpoly(), &[rat(1), rat(0), rat(1)]);
    }

    #[test]
    fn sqrt_phi_has_minpoly_x4_minus_x2_minus_1() {
        let k = golden_sqrtphi();
        assert_eq!(k.degree(), 4);
        let s = k.named("sqrtphi").unwrap();
        // s^4 - s^2 - 1 = 0 follows from s^2 = phi, phi^2 = phi + 1.
        let val = &(&s.pow(4) - &s.square()) - &k.one();
        assert!(val.is_zero());
        assert_eq!(k.minpoly(), &[rat(-1), rat(0), rat(-1), rat(0), rat(1)]);
    }

    #[test]
    fn degree_eight_tower_has_independent_power_basis() {
        let k = gaussian_golden_sqrtphi();
        assert_eq!(k.degree(), 8);
        let g = k.generator();
        let rows: QMat = (0..8).map(|e| g.pow(e).coords().to_vec()).collect();
        assert_eq!(q_rank(&rows), 8);
        for (name, rel) in [("i", k.from_int(-1)), ("sqrt5", k.from_int(5))] {
            assert_eq!(k.named(name).unwrap().square(), rel);
        }
        let phi = k.named("phi").unwrap();
        assert_eq!(phi.square(), &phi + &k.one());
        assert_eq!(k.named("sqrtphi").unwrap().square(), phi);
    }

    #[test]
    fn zeta8_relations() {
        let k = cyclotomic8();
        let z = k.named("zeta8").unwrap();
        assert_eq!(z.pow(4), k.from_int(-1));
        assert_eq!(z.square(), k.named("i").unwrap());
        assert_eq!(k.name(), "Q(zeta8)");
    }

    #[test]
    fn inverses() {
        let k = gaussian();
        let i = k.named("i").unwrap();
        let one_plus_i = &k.one() + &i;
        let expected = (&k.one() - &i).scale(&ratio(1, 2));
        assert_eq!(one_plus_i.inverse().unwrap(), expected);
        let g = golden();
        let phi = g.named("phi").unwrap();
        assert_eq!(phi.inverse().unwrap(), &phi - &g.one());
        assert_eq!(k.zero().inverse(), Err(FieldError::DivisionByZero));
    }

    #[test]
    fn square_roots() {
        let k = gaussian();
        assert_eq!(k.from_int(-1).sqrt(), Some(k.named("i").unwrap()));
        let q = Field::rationals();
        assert_eq!(q.from_int(5).sqrt(), None);
        let g = golden();
        let phi = g.named("phi").unwrap();
        assert_eq!(phi.square().sqrt(), Some(phi.clone()));
        assert_eq!(phi.sqrt(), None);
        let z = cyclotomic8();
        let i = z.named("i").unwrap();
        assert_eq!(i.sqrt().unwrap().square(), i);
        assert_eq!(z.from_int(2).sqrt().unwrap().square(), z.from_int(2));
    }

    #[test]
    fn adjoining_a_square_fails_with_witness() {
        let k = gaussian();
        match k.adjoin_sqrt(&k.from_int(-4), "w") {
            Err(FieldError::AlreadySquare(s)) => assert_eq!(s.square(), k.from_int(-4)),
            other => panic!("unexpected {:?}", other.map(|p| p.0)),
        }
    }

    #[test]
    fn degree_bound_is_enforced() {
        let k = gaussian_golden_sqrtphi();
        let err = k.adjoin_sqrt_bounded(&k.from_int(3), "sqrt3", 8).unwrap_err();
        assert_eq!(err, FieldError::DegreeOverflow { degree: 16, bound: 8 });
    }

    #[test]
    fn named_embedding_into_tower() {
        let qi = gaussian();
        let big = gaussian_golden_sqrtphi();
        let e = qi.embedding_into(&big).unwrap();
        let i = qi.named("i").unwrap();
        assert_eq!(e.apply(&i), big.named("i").unwrap());
        assert!(golden().embedding_into(&qi).is_err());
    }

    #[test]
    fn by_name_lookup() {
        assert_eq!(by_name("Q(i, sqrt5)").unwrap().degree(), 4);
        assert!(by_name("Q(pi)").is_err());
    }

    #[test]
    fn display() {
        let k = gaussian();
        let x = &k.from_int(1) - &k.named("i").unwrap().scale(&rat(2));
        assert_eq!(alloc::format!("{x}"), "(1 - 2*i)");
    }
}
