//! Integral lattices given by a symmetric Gram matrix on a distinguished basis.
//!
//! Sizes are small (rank at most 4 for the searches), so entries are `i64`
//! and determinants are taken in `i128`. Anything that needs division goes
//! through exact rationals.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{ToPrimitive, Zero};

use crate::rational::{floor, Rat};

pub type IntVec = Vec<i64>;
pub type IntMat = Vec<Vec<i64>>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error("not-positive-definite")]
    NotPositiveDefinite,
    #[error("zero-vector")]
    ZeroVector,
    #[error("rank-deficient")]
    RankDeficient,
    #[error("wrong-rank: expected {expected}, got {found}")]
    WrongRank { expected: usize, found: usize },
    #[error("gram matrix is not symmetric")]
    NotSymmetric,
    #[error("rank {0} is above the isometry search limit of 4")]
    RankTooLarge(usize),
    #[error("dimension mismatch")]
    DimensionMismatch,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lattice {
    gram: IntMat,
}

pub fn mat_mul(a: &IntMat, b: &IntMat) -> IntMat {
    let (n, m, p) = (a.len(), b.len(), b.first().map_or(0, Vec::len));
    let mut out = vec![vec![0i64; p]; n];
    for i in 0..n {
        for k in 0..m {
            if a[i][k] == 0 {
                continue;
            }
            for j in 0..p {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

pub fn transpose(a: &IntMat) -> IntMat {
    let cols = a.first().map_or(0, Vec::len);
    (0..cols).map(|c| a.iter().map(|r| r[c]).collect()).collect()
}

pub fn identity(n: usize) -> IntMat {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

/// Columns of the returned matrix are the given vectors.
pub fn from_columns(cols: &[IntVec]) -> IntMat {
    transpose(&cols.to_vec())
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn int_det(m: &IntMat) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&r| a[r][k] != 0) else {
                return 0;
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

fn gcd_vec(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, &x| g.gcd(&x))
}

/// Flips the sign so the first nonzero coordinate is positive.
pub fn sign_normalized(v: &[i64]) -> IntVec {
    match v.iter().find(|&&x| x != 0) {
        Some(&x) if x < 0 => v.iter().map(|y| -y).collect(),
        _ => v.to_vec(),
    }
}

impl Lattice {
    pub fn new(gram: IntMat) -> Result<Lattice, LatticeError> {
        let n = gram.len();
        if gram.iter().any(|r| r.len() != n) {
            return Err(LatticeError::DimensionMismatch);
        }
        for i in 0..n {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(LatticeError::NotSymmetric);
                }
            }
        }
        Ok(Lattice { gram })
    }

    pub fn diagonal(entries: &[i64]) -> Lattice {
        let n = entries.len();
        let gram = (0..n).map(|i| (0..n).map(|j| if i == j { entries[i] } else { 0 }).collect()).collect();
        Lattice { gram }
    }

    pub fn gram(&self) -> &IntMat {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn det(&self) -> i128 {
        int_det(&self.gram)
    }

    pub fn inner(&self, u: &[i64], v: &[i64]) -> i64 {
        let mut s = 0;
        for i in 0..self.rank() {
            if u[i] == 0 {
                continue;
            }
            for j in 0..self.rank() {
                s += u[i] * self.gram[i][j] * v[j];
            }
        }
        s
    }

    pub fn norm(&self, v: &[i64]) -> i64 {
        self.inner(v, v)
    }

    /// Sylvester's criterion on the leading principal minors.
    pub fn is_positive_definite(&self) -> bool {
        (1..=self.rank()).all(|k| {
            let minor: IntMat = self.gram[..k].iter().map(|r| r[..k].to_vec()).collect();
            int_det(&minor) > 0
        })
    }

    fn require_definite(&self) -> Result<(), LatticeError> {
        if self.is_positive_definite() {
            Ok(())
        } else {
            Err(LatticeError::NotPositiveDefinite)
        }
    }

    /// Same module with the form multiplied by `k`.
    pub fn twist(&self, k: i64) -> Lattice {
        Lattice { gram: self.gram.iter().map(|r| r.iter().map(|x| x * k).collect()).collect() }
    }

    /// Gram matrix of the sublattice spanned by the columns of `basis`.
    pub fn restrict(&self, basis: &IntMat) -> Lattice {
        Lattice { gram: mat_mul(&mat_mul(&transpose(basis), &self.gram), basis) }
    }

    /// Orthogonal sum.
    pub fn direct_sum(&self, other: &Lattice) -> Lattice {
        let (n, m) = (self.rank(), other.rank());
        let mut gram = vec![vec![0; n + m]; n + m];
        for i in 0..n {
            gram[i][..n].copy_from_slice(&self.gram[i]);
        }
        for i in 0..m {
            gram[n + i][n..].copy_from_slice(&other.gram[i]);
        }
        Lattice { gram }
    }

    /// Every `v` with `v^T G v = m`, in lexicographic order.
    ///
    /// Fincke–Pohst enumeration driven by the exact rational Cholesky
    /// decomposition `Q(x) = sum q_ii (x_i + sum_{j>i} q_ij x_j)^2`.
    pub fn vectors_of_norm(&self, m: i64) -> Result<Vec<IntVec>, LatticeError> {
        Ok(self.vectors_up_to(m)?.into_iter().filter(|v| self.norm(v) == m).collect())
    }

    /// Every nonzero `v` with `v^T G v <= m`, in lexicographic order.
    pub fn vectors_up_to(&self, m: i64) -> Result<Vec<IntVec>, LatticeError> {
        self.require_definite()?;
        let n = self.rank();
        if n == 0 || m <= 0 {
            return Ok(Vec::new());
        }
        let q = self.cholesky();
        let mut out = Vec::new();
        let mut x = vec![0i64; n];
        self.fp_level(&q, n - 1, &Rat::from_integer(BigInt::from(m)), &mut x, &mut out);
        out.retain(|v: &IntVec| v.iter().any(|&c| c != 0));
        out.sort();
        Ok(out)
    }

    fn fp_level(&self, q: &[Vec<Rat>], i: usize, remaining: &Rat, x: &mut IntVec, out: &mut Vec<IntVec>) {
        let n = self.rank();
        let mut c = Rat::zero();
        for j in i + 1..n {
            c += &q[i][j] * Rat::from_integer(BigInt::from(x[j]));
        }
        // need q_ii (x_i + c)^2 <= remaining
        let t = remaining / &q[i][i];
        let r = floor(&t).to_i64().unwrap_or(i64::MAX).max(0);
        let root = r.sqrt() + 2;
        let centre = floor(&-&c).to_i64().expect("centre fits in i64");
        for xi in centre - root..=centre + root {
            let s = Rat::from_integer(BigInt::from(xi)) + &c;
            let used = &q[i][i] * &s * &s;
            if &used > remaining {
                continue;
            }
            x[i] = xi;
            let rest = remaining - used;
            if i == 0 {
                out.push(x.clone());
            } else {
                self.fp_level(q, i - 1, &rest, x, out);
            }
        }
        x[i] = 0;
    }

    /// Upper-triangular `q` with `q_ii > 0` on the diagonal and the
    /// off-diagonal multipliers above it.
    fn cholesky(&self) -> Vec<Vec<Rat>> {
        let n = self.rank();
        let mut q: Vec<Vec<Rat>> =
            self.gram.iter().map(|r| r.iter().map(|&x| Rat::from_integer(BigInt::from(x))).collect()).collect();
        for i in 0..n {
            for j in i + 1..n {
                q[j][i] = q[i][j].clone();
                q[i][j] = &q[i][j] / &q[i][i];
            }
            for k in i + 1..n {
                for l in k..n {
                    let t = &q[k][i] * &q[i][l];
                    q[k][l] -= t;
                }
            }
        }
        q
    }

    /// The full isometry group, by backtracking over images of the basis.
    pub fn isometry_group(&self) -> Result<IsometryGroup, LatticeError> {
        self.require_definite()?;
        let n = self.rank();
        if n > 4 {
            return Err(LatticeError::RankTooLarge(n));
        }
        let candidates: Vec<Vec<IntVec>> =
            (0..n).map(|j| self.vectors_of_norm(self.gram[j][j])).collect::<Result<_, _>>()?;
        let mut elements = Vec::new();
        let mut chosen: Vec<IntVec> = Vec::with_capacity(n);
        self.iso_search(&candidates, &mut chosen, &mut elements);
        elements.sort();
        let set: BTreeSet<IntMat> = elements.iter().cloned().collect();
        let mut generators: Vec<IntMat> = Vec::new();
        let mut generated: BTreeSet<IntMat> = BTreeSet::new();
        generated.insert(identity(n));
        for g in &elements {
            if !generated.contains(g) {
                generators.push(g.clone());
                generated = closure(&generators, n);
            }
        }
        debug_assert_eq!(generated, set);
        Ok(IsometryGroup { order: elements.len(), elements, generators })
    }

    fn iso_search(&self, cands: &[Vec<IntVec>], chosen: &mut Vec<IntVec>, out: &mut Vec<IntMat>) {
        let j = chosen.len();
        if j == self.rank() {
            out.push(from_columns(chosen));
            return;
        }
        for v in &cands[j] {
            if (0..j).all(|k| self.inner(&chosen[k], v) == self.gram[k][j]) {
                chosen.push(v.clone());
                self.iso_search(cands, chosen, out);
                chosen.pop();
            }
        }
    }

    pub fn is_isometry(&self, m: &IntMat) -> bool {
        mat_mul(&mat_mul(&transpose(m), &self.gram), m) == self.gram
    }

    /// Orbits of the isometry group on primitive vectors of norm `m`.
    pub fn primitive_norm_orbits(&self, m: i64) -> Result<Vec<Vec<IntVec>>, LatticeError> {
        let group = self.isometry_group()?;
        let vectors: Vec<IntVec> = self.vectors_of_norm(m)?.into_iter().filter(|v| gcd_vec(v) == 1).collect();
        let mut seen: BTreeSet<IntVec> = BTreeSet::new();
        let mut orbits = Vec::new();
        for v in &vectors {
            if seen.contains(v) {
                continue;
            }
            let orbit: BTreeSet<IntVec> = group.elements.iter().map(|g| mat_vec(g, v)).collect();
            seen.extend(orbit.iter().cloned());
            orbits.push(orbit.into_iter().collect());
        }
        Ok(orbits)
    }

    /// `{w : <w, v> = 0}` with a basis of it (as columns).
    ///
    /// The basis comes from unimodular column operations that clear the
    /// row `v^T G`, so it is automatically saturated.
    pub fn orthogonal_complement(&self, v: &[i64]) -> Result<Sublattice, LatticeError> {
        let n = self.rank();
        if v.len() != n {
            return Err(LatticeError::DimensionMismatch);
        }
        if v.iter().all(|&x| x == 0) {
            return Err(LatticeError::ZeroVector);
        }
        let row: IntVec = (0..n).map(|j| (0..n).map(|i| v[i] * self.gram[i][j]).sum()).collect();
        let u = unimodular_clearing(&row);
        // The first column of u maps to gcd(row); the rest span the kernel.
        let basis: IntMat = (0..n).map(|r| u[r][1..].to_vec()).collect();
        let lattice = self.restrict(&basis);
        Ok(Sublattice { basis, lattice })
    }

    /// `det(M) / det(L)` for the sublattice spanned by the columns of `basis`.
    pub fn index_squared(&self, basis: &IntMat) -> Result<Rat, LatticeError> {
        if basis.len() != self.rank() {
            return Err(LatticeError::DimensionMismatch);
        }
        let sub = self.restrict(basis).det();
        if sub == 0 || self.det() == 0 {
            return Err(LatticeError::RankDeficient);
        }
        Ok(Rat::new(BigInt::from(sub), BigInt::from(self.det())))
    }

    /// Searches for an orthogonal splitting `<k> + L2`. A primitive `v` of
    /// norm `k` splits off iff `k * det(v^perp) = det(L)`, and `k` must divide
    /// `det(L)`; divisors are tried from the largest down.
    pub fn decomposition_rank3(&self) -> Result<Option<IntVec>, LatticeError> {
        if self.rank() != 3 {
            return Err(LatticeError::WrongRank { expected: 3, found: self.rank() });
        }
        self.require_definite()?;
        let det = self.det() as i64;
        let mut divisors: Vec<i64> = (1..=det).filter(|k| det % k == 0).collect();
        divisors.reverse();
        for k in divisors {
            for v in self.vectors_of_norm(k)? {
                if gcd_vec(&v) != 1 {
                    continue;
                }
                let comp = self.orthogonal_complement(&v)?;
                if i128::from(k) * comp.lattice.det() == i128::from(det) {
                    return Ok(Some(sign_normalized(&v)));
                }
            }
        }
        Ok(None)
    }

    pub fn is_decomposable_rank3(&self) -> Result<bool, LatticeError> {
        Ok(self.decomposition_rank3()?.is_some())
    }
}

pub fn mat_vec(m: &IntMat, v: &[i64]) -> IntVec {
    m.iter().map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

/// Unimodular `u` with `row * u = (g, 0, ..., 0)`, `g = gcd(row) >= 0`.
fn unimodular_clearing(row: &[i64]) -> IntMat {
    let n = row.len();
    let mut r = row.to_vec();
    let mut u = identity(n);
    loop {
        // pick the nonzero entry of smallest absolute value as pivot
        let nz: Vec<usize> = (0..n).filter(|&j| r[j] != 0).collect();
        if nz.len() <= 1 {
            let p = nz.first().copied().unwrap_or(0);
            swap_cols(&mut u, 0, p);
            r.swap(0, p);
            if r[0] < 0 {
                for row in u.iter_mut() {
                    row[0] = -row[0];
                }
            }
            return u;
        }
        let p = *nz.iter().min_by_key(|&&j| r[j].abs()).unwrap();
        for &j in &nz {
            if j != p {
                let q = r[j].div_euclid(r[p]);
                r[j] -= q * r[p];
                for row in u.iter_mut() {
                    row[j] -= q * row[p];
                }
            }
        }
    }
}

fn swap_cols(m: &mut IntMat, a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

fn closure(gens: &[IntMat], n: usize) -> BTreeSet<IntMat> {
    let mut set = BTreeSet::new();
    let id = identity(n);
    set.insert(id.clone());
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = mat_mul(&x, g);
            if set.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    set
}

/// Whether the closure of `gens` is exactly `elements`.
pub fn generates(gens: &[IntMat], elements: &[IntMat]) -> bool {
    let n = elements.first().map_or(0, Vec::len);
    closure(gens, n) == elements.iter().cloned().collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsometryGroup {
    pub generators: Vec<IntMat>,
    pub order: usize,
    /// Sorted lexicographically.
    pub elements: Vec<IntMat>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sublattice {
    /// Columns are basis vectors in the ambient coordinates.
    pub basis: IntMat,
    pub lattice: Lattice,
}

impl Sublattice {
    pub fn basis_vectors(&self) -> Vec<IntVec> {
        transpose(&self.basis)
    }
}

/// A Gauss-reduced positive definite binary form `a x^2 + b xy + c y^2`
/// with the unimodular `u` such that `u^T [[2a0,b0],[b0,2c0]] u` is the
/// reduced Gram matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedForm {
    pub abc: (i64, i64, i64),
    pub witness: [[i64; 2]; 2],
}

/// Gauss reduction to `|b| <= a <= c`, with `b >= 0` when `|b| = a` or `a = c`.
pub fn reduce_binary_form(a: i64, b: i64, c: i64) -> Result<ReducedForm, LatticeError> {
    if a <= 0 || 4 * a * c - b * b <= 0 {
        return Err(LatticeError::NotPositiveDefinite);
    }
    let (mut a, mut b, mut c) = (a, b, c);
    let mut u = [[1i64, 0], [0, 1]];
    loop {
        if b.abs() > a {
            // x -> x - k y with k chosen so that b - 2ka lands in (-a, a]
            let k = (b + a).div_euclid(2 * a);
            let k = if b - 2 * k * a == -a { k - 1 } else { k };
            c += a * k * k - b * k;
            b -= 2 * k * a;
            u = [[u[0][0], u[0][1] - k * u[0][0]], [u[1][0], u[1][1] - k * u[1][0]]];
        } else if a > c {
            // (x, y) -> (-y, x)
            core::mem::swap(&mut a, &mut c);
            b = -b;
            u = [[u[0][1], -u[0][0]], [u[1][1], -u[1][0]]];
        } else {
            break;
        }
    }
    if b < 0 && (b == -a || a == c) {
        if a == c {
            u = [[u[0][1], -u[0][0]], [u[1][1], -u[1][0]]];
        } else {
            // b == -a: x -> x + y
            c += b + a;
            u = [[u[0][0], u[0][1] + u[0][0]], [u[1][0], u[1][1] + u[1][0]]];
        }
        b = -b;
    }
    Ok(ReducedForm { abc: (a, b, c), witness: u })
}

impl ReducedForm {
    /// Checks `u^T [[2a,b],[b,2c]] u` against the reduced Gram matrix.
    pub fn verify(&self, a: i64, b: i64, c: i64) -> bool {
        let g = vec![vec![2 * a, b], vec![b, 2 * c]];
        let u: IntMat = self.witness.iter().map(|r| r.to_vec()).collect();
        let (ra, rb, rc) = self.abc;
        int_det(&u).abs() == 1 && mat_mul(&mat_mul(&transpose(&u), &g), &u) == vec![vec![2 * ra, rb], vec![rb, 2 * rc]]
    }
}

/// Reduced triple of the binary form `T / 4` for a Gram matrix stored as
/// `[[4a, 2b], [2b, 4c]]`; `None` if the entries are not divisible that way.
pub fn t_triple(t: &Lattice) -> Option<(i64, i64, i64)> {
    let g = t.gram();
    if t.rank() != 2 || g[0][0] % 4 != 0 || g[1][1] % 4 != 0 || g[0][1] % 2 != 0 {
        return None;
    }
    Some((g[0][0] / 4, g[0][1] / 2, g[1][1] / 4))
}

/// `[[4a, 2b], [2b, 4c]]`.
pub fn t_gram(a: i64, b: i64, c: i64) -> Lattice {
    Lattice { gram: vec![vec![4 * a, 2 * b], vec![2 * b, 4 * c]] }
}

/// Why an arithmetic candidate `(n, a, b, c)` did not survive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rejection {
    /// `b` odd; the determinant identity has no solutions with odd `b`.
    OddB,
    /// No primitive vector of norm `4n` exists.
    NoPrimitiveVector,
    /// Primitive vectors of norm `4n` exist but no complement realises the
    /// form with index 2.
    NotRealized { complements: Vec<(i64, i64, i64)> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassifiedCase {
    pub n: i64,
    pub ns_gram: IntMat,
    pub t_gram: IntMat,
    pub abc: (i64, i64, i64),
    /// A primitive vector of norm `4n` realizing the case.
    pub ns_vector: IntVec,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub cases: Vec<ClassifiedCase>,
    pub rejected: Vec<((i64, i64, i64, i64), Rejection)>,
    /// Number of arithmetic candidates with odd `b` met during exhaustion.
    pub odd_b_candidates: usize,
}

/// All `(a, b, c)` with `4ac - b^2 = d` and `-a <= b <= a <= c`, in
/// increasing lexicographic order. `3a^2 <= d` bounds the search.
pub fn reduced_triples_of_disc(d: i64) -> Vec<(i64, i64, i64)> {
    let mut out = Vec::new();
    let mut a = 1;
    while 3 * a * a <= d {
        for b in -a..=a {
            let num = d + b * b;
            if num % (4 * a) == 0 {
                let c = num / (4 * a);
                if c >= a {
                    out.push((a, b, c));
                }
            }
        }
        a += 1;
    }
    out
}

/// The case analysis for rank-1 invariant sublattices `<4n>` of `l` with a
/// rank-2 complement `T = [[4a,2b],[2b,4c]]` such that `<4n> + T` has index
/// 2: `n (4ac - b^2) = det(l) / 4`, then each arithmetic solution is tested
/// against the actual complements of primitive norm-`4n` vectors.
pub fn classify_invariant_cases(l: &Lattice) -> Result<Classification, LatticeError> {
    let det = l.det() as i64;
    // 4 = 16 n (4ac - b^2) / det
    let target = det / 4;
    let mut cases = Vec::new();
    let mut rejected = Vec::new();
    let mut odd_b_candidates = 0;
    let ns: Vec<i64> = (1..=target).filter(|n| target % n == 0).collect();
    let mut realized: BTreeMap<i64, Vec<(IntVec, (i64, i64, i64))>> = BTreeMap::new();
    for &n in &ns {
        let mut reps = Vec::new();
        for orbit in l.primitive_norm_orbits(4 * n)? {
            let v = orbit[orbit.len() - 1].clone();
            let comp = l.orthogonal_complement(&v)?;
            let index2 = comp.lattice.det() * i128::from(4 * n) == 4 * l.det();
            if !index2 {
                continue;
            }
            let g = comp.lattice.gram();
            let red = reduce_binary_form(g[0][0], 2 * g[0][1], g[1][1])?;
            let (ra, rb, rc) = red.abc;
            // the form v^T T v = 4(a x^2 + b xy + c y^2)
            if ra % 4 == 0 && rb % 4 == 0 && rc % 4 == 0 {
                reps.push((v, (ra / 4, rb / 4, rc / 4)));
            }
        }
        realized.insert(n, reps);
    }
    for &n in &ns {
        for (a, b, c) in reduced_triples_of_disc(target / n) {
            let key = (n, a, b, c);
            if b % 2 != 0 {
                odd_b_candidates += 1;
                rejected.push((key, Rejection::OddB));
                continue;
            }
            let reps = &realized[&n];
            match reps.iter().find(|(_, abc)| *abc == (a, b, c)) {
                Some((v, _)) => cases.push(ClassifiedCase {
                    n,
                    ns_gram: vec![vec![4 * n]],
                    t_gram: t_gram(a, b, c).gram,
                    abc: (a, b, c),
                    ns_vector: sign_normalized(v),
                }),
                None if l.vectors_of_norm(4 * n)?.iter().all(|v| gcd_vec(v) != 1) => {
                    rejected.push((key, Rejection::NoPrimitiveVector))
                }
                None => rejected
                    .push((key, Rejection::NotRealized { complements: reps.iter().map(|(_, abc)| *abc).collect() })),
            }
        }
    }
    Ok(Classification { cases, rejected, odd_b_candidates })
}

/// Pairs `(v1, v2)` with `v1^2 = m1`, `v2^2 = m2` and `v1 . v2 = 0`.
pub fn orthogonal_pairs(l: &Lattice, m1: i64, m2: i64) -> Result<Vec<(IntVec, IntVec)>, LatticeError> {
    let a = l.vectors_of_norm(m1)?;
    let b = l.vectors_of_norm(m2)?;
    let mut out = Vec::new();
    for v in &a {
        for w in &b {
            if l.inner(v, w) == 0 {
                out.push((v.clone(), w.clone()));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l20() -> Lattice {
        Lattice::new(vec![vec![4, 0, -2], vec![0, 4, -2], vec![-2, -2, 12]]).unwrap()
    }

    #[test]
    fn determinants() {
        assert_eq!(l20().det(), 160);
        assert_eq!(Lattice::diagonal(&[4, 4]).det(), 16);
        assert_eq!(t_gram(2, 2, 3).det(), 80);
    }

    #[test]
    fn short_vectors_of_l20() {
        let l = l20();
        let n4 = l.vectors_of_norm(4).unwrap();
        assert_eq!(n4, vec![vec![-1, 0, 0], vec![0, -1, 0], vec![0, 1, 0], vec![1, 0, 0]]);
        let n8 = l.vectors_of_norm(8).unwrap();
        assert_eq!(n8, vec![vec![-1, -1, 0], vec![-1, 1, 0], vec![1, -1, 0], vec![1, 1, 0]]);
        assert!(Lattice::diagonal(&[4, 4]).vectors_of_norm(1).unwrap().is_empty());
    }

    #[test]
    fn isometry_orders() {
        assert_eq!(l20().isometry_group().unwrap().order, 16);
        assert_eq!(Lattice::diagonal(&[4, 4]).isometry_group().unwrap().order, 8);
        assert_eq!(Lattice::diagonal(&[2]).isometry_group().unwrap().order, 2);
        let indefinite = Lattice::new(vec![vec![1, 0], vec![0, -1]]).unwrap();
        assert_eq!(indefinite.isometry_group().unwrap_err(), LatticeError::NotPositiveDefinite);
    }

    #[test]
    fn complements() {
        let l = l20();
        let c = l.orthogonal_complement(&[1, 0, 0]).unwrap();
        for b in c.basis_vectors() {
            assert_eq!(l.inner(&b, &[1, 0, 0]), 0);
        }
        assert_eq!(c.lattice.det(), 160);
        let c = l.orthogonal_complement(&[1, -1, 0]).unwrap();
        assert_eq!(c.lattice.det(), 80);
        assert_eq!(l.orthogonal_complement(&[0, 0, 0]).unwrap_err(), LatticeError::ZeroVector);
    }

    #[test]
    fn gauss_reduction() {
        for (input, out) in
            [((3, 2, 2), (2, 2, 3)), ((2, 2, 3), (2, 2, 3)), ((1, 0, 1), (1, 0, 1)), ((5, 8, 4), (1, 0, 4))]
        {
            let r = reduce_binary_form(input.0, input.1, input.2).unwrap();
            assert_eq!(r.abc, out, "{input:?}");
            assert!(r.verify(input.0, input.1, input.2));
        }
        assert!(reduce_binary_form(1, 3, 1).is_err());
    }

    #[test]
    fn decomposability() {
        assert!(!l20().is_decomposable_rank3().unwrap());
        assert_eq!(Lattice::diagonal(&[4, 4, 40]).decomposition_rank3().unwrap(), Some(vec![0, 0, 1]));
        assert!(Lattice::diagonal(&[2, 2, 2]).is_decomposable_rank3().unwrap());
    }

    #[test]
    fn three_cases() {
        let cls = classify_invariant_cases(&l20()).unwrap();
        let got: Vec<(i64, (i64, i64, i64))> = cls.cases.iter().map(|c| (c.n, c.abc)).collect();
        assert_eq!(got, vec![(1, (1, 0, 10)), (2, (2, 2, 3)), (10, (1, 0, 1))]);
        assert_eq!(cls.odd_b_candidates, 0);
    }
}
