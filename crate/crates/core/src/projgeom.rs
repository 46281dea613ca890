//! Plane conics in projective space, their group orbits, exact
//! disjointness and maximum sets of pairwise disjoint conics.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::linalg::Matrix;
use crate::numberfield::FieldElement;
use crate::polyring::{ideal_reduce, MPoly, Ring};
use crate::rational::Rat;

pub const DEFAULT_ORBIT_CAP: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConicError {
    #[error("expected {expected} independent linear forms, found {found}")]
    WrongCodimension { expected: usize, found: usize },
    #[error("quadric vanishes on the plane")]
    ZeroQuadric,
    #[error("conic is singular")]
    Singular,
    #[error("ring or field mismatch")]
    RingMismatch,
    #[error("orbit-cap-exceeded: more than {cap} conics")]
    OrbitCapExceeded { cap: usize },
}

/// A smooth conic in `P^{n-1}`: a plane cut out by `n - 3` linear forms and a
/// quadric on it.
///
/// The linear forms are kept in reduced row-echelon form; the quadric is
/// rewritten in the non-pivot variables only and made monic, so two conics
/// are equal iff their fields are.
#[derive(Clone, PartialEq, Eq)]
pub struct PlaneConic {
    linear: Matrix,
    pivots: Vec<usize>,
    quadric: MPoly,
}

impl core::fmt::Debug for PlaneConic {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{:?}", self.equations())
    }
}

impl PartialOrd for PlaneConic {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PlaneConic {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        self.key().cmp(&other.key())
    }
}

impl PlaneConic {
    /// `linear` has one row per linear form (coefficients on the ring's
    /// variables); `quadric` is any quadric whose restriction to the plane
    /// defines the conic.
    pub fn new(linear: &Matrix, quadric: &MPoly) -> Result<PlaneConic, ConicError> {
        let ring = quadric.ring();
        let n = ring.nvars();
        if linear.cols() != n || linear.field() != ring.field() {
            return Err(ConicError::RingMismatch);
        }
        let (red, pivots) = linear.rref();
        if pivots.len() + 3 != n {
            return Err(ConicError::WrongCodimension { expected: n - 3, found: pivots.len() });
        }
        let mut rows = Matrix::zeros(ring.field(), pivots.len(), n);
        for r in 0..pivots.len() {
            for c in 0..n {
                rows[(r, c)] = red[(r, c)].clone();
            }
        }
        let mut c = PlaneConic { linear: rows, pivots, quadric: MPoly::zero(ring) };
        let q = c.restrict(quadric);
        if q.is_zero() {
            return Err(ConicError::ZeroQuadric);
        }
        c.quadric = q.monic();
        if c.plane_gram().det().is_zero() {
            return Err(ConicError::Singular);
        }
        Ok(c)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        self.quadric.ring()
    }

    pub fn linear_forms(&self) -> &Matrix {
        &self.linear
    }

    pub fn quadric(&self) -> &MPoly {
        &self.quadric
    }

    /// The non-pivot variables, which serve as coordinates on the plane.
    pub fn plane_variables(&self) -> Vec<usize> {
        (0..self.ring().nvars()).filter(|v| !self.pivots.contains(v)).collect()
    }

    /// Linear forms as polynomials, followed by the quadric.
    pub fn equations(&self) -> Vec<MPoly> {
        let ring = self.ring();
        let mut out: Vec<MPoly> = (0..self.linear.rows()).map(|r| MPoly::linear(ring, self.linear.row(r))).collect();
        out.push(self.quadric.clone());
        out
    }

    pub fn key(&self) -> Vec<Rat> {
        let mut k = self.linear.key();
        for (m, c) in self.quadric.terms() {
            k.extend(m.exps().iter().map(|&e| Rat::from_integer(e.into())));
            k.extend(c.coords().iter().cloned());
        }
        k
    }

    /// Eliminates the pivot variables from `p` using the linear forms.
    pub fn restrict(&self, p: &MPoly) -> MPoly {
        let ring = self.ring();
        let mut images = MPoly::vars(ring);
        for (r, &pv) in self.pivots.iter().enumerate() {
            let mut coeffs: Vec<FieldElement> = self.linear.row(r).iter().map(|c| -c).collect();
            coeffs[pv] = ring.field().zero();
            images[pv] = MPoly::linear(ring, &coeffs);
        }
        p.substitute(&images).expect("same ring")
    }

    /// Symmetric matrix of the quadric on the plane coordinates.
    fn plane_gram(&self) -> Matrix {
        let vars = self.plane_variables();
        let field = self.ring().field().clone();
        let half = field.from_rat(Rat::new(1.into(), 2.into()));
        let mut g = Matrix::zeros(&field, 3, 3);
        for (m, c) in self.quadric.terms() {
            let idx: Vec<usize> = m
                .exps()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .flat_map(|(v, &e)| core::iter::repeat_n(vars.iter().position(|&w| w == v).unwrap(), e as usize))
                .collect();
            if idx[0] == idx[1] {
                g[(idx[0], idx[0])] = c.clone();
            } else {
                let h = c * &half;
                g[(idx[0], idx[1])] = h.clone();
                g[(idx[1], idx[0])] = h;
            }
        }
        g
    }

    /// Whether every generator of the surface ideal vanishes on the conic.
    pub fn lies_on(&self, surface: &[MPoly]) -> bool {
        let q = [self.quadric.clone()];
        surface.iter().all(|f| ideal_reduce(&self.restrict(f), &q).is_zero())
    }

    /// `g^-1`-pullback of the equations, i.e. the image conic `g(C)` when
    /// called with `ginv = g^-1`.
    pub fn apply_inverse(&self, ginv: &Matrix) -> PlaneConic {
        let lin = &self.linear * ginv;
        let q = self.quadric.substitute_linear(ginv).expect("dimensions agree");
        PlaneConic::new(&lin, &q).expect("an invertible map preserves smooth conics")
    }

    /// The image `g(C)`.
    pub fn apply(&self, g: &Matrix) -> PlaneConic {
        self.apply_inverse(&g.inverse().expect("invertible"))
    }
}

/// Orbit of `c` under the group generated by `gens`, sorted canonically.
pub fn orbit(c: &PlaneConic, gens: &[Matrix], cap: usize) -> Result<Vec<PlaneConic>, ConicError> {
    let invs: Vec<Matrix> = gens.iter().map(|g| g.inverse().expect("invertible")).collect();
    if invs.iter().any(|g| g.field() != c.ring().field() || g.rows() != c.ring().nvars()) {
        return Err(ConicError::RingMismatch);
    }
    let mut seen: BTreeMap<Vec<Rat>, PlaneConic> = BTreeMap::new();
    seen.insert(c.key(), c.clone());
    let mut queue = VecDeque::from([c.clone()]);
    while let Some(x) = queue.pop_front() {
        for gi in &invs {
            let y = x.apply_inverse(gi);
            let k = y.key();
            if !seen.contains_key(&k) {
                if seen.len() >= cap {
                    return Err(ConicError::OrbitCapExceeded { cap });
                }
                seen.insert(k, y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(seen.into_values().collect())
}

/// How the two planes meet, for reporting.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlaneMeet {
    Empty,
    Point,
    Line,
    Plane,
}

pub fn plane_meet(c1: &PlaneConic, c2: &PlaneConic) -> PlaneMeet {
    let n = c1.ring().nvars();
    match n - c1.linear.vstack(&c2.linear).rank() {
        0 => PlaneMeet::Empty,
        1 => PlaneMeet::Point,
        2 => PlaneMeet::Line,
        _ => PlaneMeet::Plane,
    }
}

/// Coefficients `(a, b, c)` of `q(s*p + t*r) = a s^2 + b s t + c t^2` for a
/// quadratic form `q`.
pub fn restrict_to_line(q: &MPoly, p: &[FieldElement], r: &[FieldElement]) -> [FieldElement; 3] {
    let a = q.eval(p);
    let c = q.eval(r);
    let sum: Vec<FieldElement> = p.iter().zip(r).map(|(x, y)| x + y).collect();
    let b = &(&q.eval(&sum) - &a) - &c;
    [a, b, c]
}

/// Resultant of `a1 s^2 + b1 st + c1 t^2` and `a2 s^2 + b2 st + c2 t^2`:
/// the 4x4 Sylvester determinant, in its expanded form
/// `(a1 c2 - a2 c1)^2 - (a1 b2 - a2 b1)(b1 c2 - b2 c1)`.
pub fn binary_quadratic_resultant(f: &[FieldElement; 3], g: &[FieldElement; 3]) -> FieldElement {
    let ac = &(&f[0] * &g[2]) - &(&g[0] * &f[2]);
    let ab = &(&f[0] * &g[1]) - &(&g[0] * &f[1]);
    let bc = &(&f[1] * &g[2]) - &(&g[1] * &f[2]);
    &ac.square() - &(&ab * &bc)
}

/// The Sylvester matrix of two binary quadratics; its determinant is
/// [`binary_quadratic_resultant`].
pub fn sylvester_matrix(f: &[FieldElement; 3], g: &[FieldElement; 3]) -> Matrix {
    let field = f[0].field().clone();
    let z = field.zero();
    let rows = vec![
        vec![f[0].clone(), f[1].clone(), f[2].clone(), z.clone()],
        vec![z.clone(), f[0].clone(), f[1].clone(), f[2].clone()],
        vec![g[0].clone(), g[1].clone(), g[2].clone(), z.clone()],
        vec![z, g[0].clone(), g[1].clone(), g[2].clone()],
    ];
    Matrix::from_rows(&field, rows)
}

/// Exact emptiness of `c1 ∩ c2` over the algebraic closure. Equal conics
/// and conics sharing a plane are never disjoint; tangency counts as
/// meeting.
pub fn conics_disjoint(c1: &PlaneConic, c2: &PlaneConic) -> bool {
    if c1 == c2 {
        return false;
    }
    let stacked = c1.linear.vstack(&c2.linear);
    let null = stacked.nullspace();
    match null.len() {
        0 => true,
        1 => {
            let p = &null[0];
            !(c1.quadric.eval(p).is_zero() && c2.quadric.eval(p).is_zero())
        }
        2 => {
            let f = restrict_to_line(&c1.quadric, &null[0], &null[1]);
            let g = restrict_to_line(&c2.quadric, &null[0], &null[1]);
            !binary_quadratic_resultant(&f, &g).is_zero()
        }
        _ => false,
    }
}

/// Symmetric disjointness graph on a list of conics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionGraph {
    pub adjacency: Vec<Vec<bool>>,
}

impl IntersectionGraph {
    pub fn build(conics: &[PlaneConic]) -> IntersectionGraph {
        let n = conics.len();
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        #[cfg(feature = "parallel")]
        let verdicts: Vec<bool> = {
            use rayon::prelude::*;
            pairs.par_iter().map(|&(i, j)| conics_disjoint(&conics[i], &conics[j])).collect()
        };
        #[cfg(not(feature = "parallel"))]
        let verdicts: Vec<bool> = pairs.iter().map(|&(i, j)| conics_disjoint(&conics[i], &conics[j])).collect();
        let mut adjacency = vec![vec![false; n]; n];
        for (&(i, j), &d) in pairs.iter().zip(&verdicts) {
            adjacency[i][j] = d;
            adjacency[j][i] = d;
        }
        IntersectionGraph { adjacency }
    }

    pub fn len(&self) -> usize {
        self.adjacency.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adjacency.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(|r| r.iter().filter(|&&b| b).count()).sum::<usize>() / 2
    }

    /// Graphviz rendering; edges join disjoint conics.
    pub fn to_dot(&self, name: &str) -> String {
        let mut s = alloc::format!("graph {name} {{\n");
        for i in 0..self.len() {
            s += &alloc::format!("  c{i};\n");
        }
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                if self.adjacency[i][j] {
                    s += &alloc::format!("  c{i} -- c{j};\n");
                }
            }
        }
        s += "}\n";
        s
    }
}

type Bits = Vec<u64>;

fn bit(b: &Bits, i: usize) -> bool {
    b[i / 64] >> (i % 64) & 1 == 1
}

fn set(b: &mut Bits, i: usize) {
    b[i / 64] |= 1 << (i % 64);
}

/// Maximum clique by branch and bound with a greedy colouring bound.
/// Vertices are visited in descending degree order (ties by index), so the
/// returned witness is deterministic. Witness indices are sorted.
pub fn max_clique(g: &IntersectionGraph) -> Vec<usize> {
    let n = g.len();
    if n == 0 {
        return Vec::new();
    }
    let mut order: Vec<usize> = (0..n).collect();
    let deg: Vec<usize> = g.adjacency.iter().map(|r| r.iter().filter(|&&b| b).count()).collect();
    order.sort_by(|&a, &b| deg[b].cmp(&deg[a]).then(a.cmp(&b)));
    // relabel so that position in `order` is the vertex id
    let words = n.div_ceil(64);
    let adj: Vec<Bits> = order
        .iter()
        .map(|&u| {
            let mut b = vec![0u64; words];
            for (k, &v) in order.iter().enumerate() {
                if g.adjacency[u][v] {
                    set(&mut b, k);
                }
            }
            b
        })
        .collect();
    let mut best: Vec<usize> = Vec::new();
    let mut cur: Vec<usize> = Vec::new();
    let cand: Vec<usize> = (0..n).collect();
    expand(&adj, &mut cur, cand, &mut best);
    let mut out: Vec<usize> = best.iter().map(|&k| order[k]).collect();
    out.sort_unstable();
    out
}

/// Greedy colouring of `cand`; returns vertices sorted by colour with the
/// colour bound of each.
fn colour_sort(adj: &[Bits], cand: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &v in cand {
        match classes.iter_mut().find(|cl| cl.iter().all(|&u| !bit(&adj[v], u))) {
            Some(cl) => cl.push(v),
            None => classes.push(vec![v]),
        }
    }
    let mut verts = Vec::with_capacity(cand.len());
    let mut bounds = Vec::with_capacity(cand.len());
    for (c, cl) in classes.iter().enumerate() {
        for &v in cl {
            verts.push(v);
            bounds.push(c + 1);
        }
    }
    (verts, bounds)
}

fn expand(adj: &[Bits], cur: &mut Vec<usize>, cand: Vec<usize>, best: &mut Vec<usize>) {
    let (verts, bounds) = colour_sort(adj, &cand);
    let mut remaining = cand;
    for k in (0..verts.len()).rev() {
        if cur.len() + bounds[k] <= best.len() {
            return;
        }
        let v = verts[k];
        cur.push(v);
        let next: Vec<usize> = remaining.iter().copied().filter(|&u| bit(&adj[v], u)).collect();
        if next.is_empty() {
            if cur.len() > best.len() {
                *best = cur.clone();
            }
        } else {
            expand(adj, cur, next, best);
        }
        cur.pop();
        remaining.retain(|&u| u != v);
    }
}

/// Whether `set` is a clique: all pairs adjacent.
pub fn is_clique(g: &IntersectionGraph, set: &[usize]) -> bool {
    set.iter().enumerate().all(|(a, &i)| set[a + 1..].iter().all(|&j| g.adjacency[i][j]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numberfield::Field;
    use crate::polyring::parse_poly;

    fn conic(ring: &Arc<Ring>, lin: &[&[i64]], q: &str) -> PlaneConic {
        let m = Matrix::from_ints(ring.field(), lin);
        PlaneConic::new(&m, &parse_poly(ring, q).unwrap()).unwrap()
    }

    #[test]
    fn canonical_form() {
        let r = Ring::new(&Field::rationals(), &["x", "y", "z", "t"]);
        let a = conic(&r, &[&[1, 1, 1, 0]], "y^2 + y*z + z^2 + 2*t^2");
        let b = conic(&r, &[&[2, 2, 2, 0]], "3*x^2 + 3*y*z + 3*t^2 - 3*x*y - 3*x*z + 3*x^2");
        // x = -y - z turns both quadrics into multiples of the same form
        assert_eq!(a.restrict(&parse_poly(&r, "x + y + z").unwrap()), MPoly::zero(&r));
        assert_eq!(a.plane_variables(), vec![1, 2, 3]);
        assert!(a.lies_on(&[parse_poly(&r, "(x + y + z)*(x - t)").unwrap()]));
        assert!(!a.lies_on(&[parse_poly(&r, "x^2").unwrap()]));
        assert_ne!(a, b);
        let m = Matrix::from_ints(r.field(), &[&[1, 1, 1, 0]]);
        assert_eq!(PlaneConic::new(&m, &parse_poly(&r, "y^2").unwrap()).unwrap_err(), ConicError::Singular);
        assert_eq!(
            PlaneConic::new(&m, &parse_poly(&r, "(x + y + z)*t").unwrap()).unwrap_err(),
            ConicError::ZeroQuadric
        );
    }

    #[test]
    fn disjointness_cases() {
        let r = Ring::new(&Field::rationals(), &["x", "y", "z", "t"]);
        let a = conic(&r, &[&[0, 0, 0, 1]], "x^2 + y^2 - z^2");
        let b = conic(&r, &[&[0, 0, 1, 0]], "x^2 + y^2 - t^2");
        // the planes meet in the line z = t = 0, where both are x^2 + y^2
        assert_eq!(plane_meet(&a, &b), PlaneMeet::Line);
        assert!(!conics_disjoint(&a, &b));
        let c = conic(&r, &[&[0, 0, 1, 0]], "x^2 - y^2 - t^2");
        assert!(conics_disjoint(&a, &c));
        assert!(!conics_disjoint(&a, &a));
        let g = Matrix::from_ints(r.field(), &[&[0, 1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, 1, 0]]);
        assert_eq!(a.apply(&g), conic(&r, &[&[0, 0, 1, 0]], "x^2 + y^2 - t^2"));
        let orb = orbit(&a, &[g], DEFAULT_ORBIT_CAP).unwrap();
        assert_eq!(orb.len(), 2);
    }

    #[test]
    fn clique_search() {
        // 5-cycle plus a chord-free triangle on three extra vertices
        let mut adj = vec![vec![false; 8]; 8];
        let edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (5, 6), (6, 7), (5, 7)];
        for &(a, b) in &edges {
            adj[a][b] = true;
            adj[b][a] = true;
        }
        let g = IntersectionGraph { adjacency: adj };
        assert_eq!(max_clique(&g), vec![5, 6, 7]);
        assert!(is_clique(&g, &[5, 6, 7]));
        assert_eq!(g.edge_count(), 8);
        assert!(g.to_dot("g").contains("c5 -- c6"));
    }
}
