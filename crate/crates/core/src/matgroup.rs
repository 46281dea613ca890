//! Finite matrix groups over a number field, stored by their full closure.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::linalg::Matrix;
use crate::numberfield::{Field, FieldElement};
use crate::polyring::{MPoly, Monomial, Ring};
use crate::rational::Rat;

pub const DEFAULT_CAP: usize = 1_000_000;

/// Generators whose order exceeds this are rejected before closure.
pub const GENERATOR_ORDER_BOUND: usize = 1_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("cap-exceeded: more than {cap} elements")]
    CapExceeded { cap: usize },
    #[error("generator {index} is not invertible")]
    NotInvertible { index: usize },
    #[error("generator {index} has order above {bound}")]
    InfiniteOrder { index: usize, bound: usize },
    #[error("dimension-mismatch")]
    DimensionMismatch,
    #[error("field-mismatch")]
    FieldMismatch,
    #[error("not-monomial: generator {index} does not permute the coordinate hyperplanes")]
    NotMonomial { index: usize },
    #[error("no generators")]
    Empty,
    #[error("bad cache: {0}")]
    BadCache(String),
}

/// A finite group given by generators together with its full element list.
///
/// Elements are sorted by their coordinate key, so indices are canonical.
#[derive(Clone)]
pub struct MatGroup {
    field: Field,
    dim: usize,
    generators: Vec<Matrix>,
    elements: Arc<Vec<Matrix>>,
    index: Arc<BTreeMap<Vec<Rat>, usize>>,
    /// Breadth-first spanning tree: `(element, parent, generator)` with
    /// `element = parent * generators[generator]`, identity omitted.
    tree: Arc<Vec<(usize, usize, usize)>>,
    identity: usize,
}

impl core::fmt::Debug for MatGroup {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "MatGroup(order {}, dim {}, over {})", self.order(), self.dim, self.field)
    }
}

/// Replayable closure data: for each non-identity element in breadth-first
/// order, the position of its parent in that order and the generator used.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureWords {
    pub steps: Vec<(u32, u16)>,
}

fn products(frontier: &[usize], elements: &[Matrix], gens: &[Matrix]) -> Vec<(usize, usize, Matrix)> {
    let work: Vec<(usize, usize)> = frontier.iter().flat_map(|&p| (0..gens.len()).map(move |g| (p, g))).collect();
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        work.par_iter().map(|&(p, g)| (p, g, &elements[p] * &gens[g])).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        work.iter().map(|&(p, g)| (p, g, &elements[p] * &gens[g])).collect()
    }
}

impl MatGroup {
    pub fn generate(generators: Vec<Matrix>) -> Result<MatGroup, GroupError> {
        Self::generate_with_cap(generators, DEFAULT_CAP)
    }

    pub fn generate_with_cap(generators: Vec<Matrix>, cap: usize) -> Result<MatGroup, GroupError> {
        let (field, dim) = Self::validate(&generators)?;
        for (index, g) in generators.iter().enumerate() {
            if g.order(GENERATOR_ORDER_BOUND).is_none() {
                return Err(GroupError::InfiniteOrder { index, bound: GENERATOR_ORDER_BOUND });
            }
        }
        let mut bfs: Vec<Matrix> = vec![Matrix::identity(&field, dim)];
        let mut seen: BTreeMap<Vec<Rat>, usize> = BTreeMap::new();
        seen.insert(bfs[0].key(), 0);
        let mut steps: Vec<(usize, usize)> = Vec::new();
        let mut frontier = vec![0usize];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for (p, g, m) in products(&frontier, &bfs, &generators) {
                let key = m.key();
                if seen.contains_key(&key) {
                    continue;
                }
                if bfs.len() >= cap {
                    return Err(GroupError::CapExceeded { cap });
                }
                seen.insert(key, bfs.len());
                next.push(bfs.len());
                steps.push((p, g));
                bfs.push(m);
            }
            frontier = next;
        }
        Ok(Self::assemble(field, dim, generators, bfs, &steps))
    }

    fn validate(generators: &[Matrix]) -> Result<(Field, usize), GroupError> {
        let first = generators.first().ok_or(GroupError::Empty)?;
        let (field, dim) = (first.field().clone(), first.rows());
        for (index, g) in generators.iter().enumerate() {
            if g.field() != &field {
                return Err(GroupError::FieldMismatch);
            }
            if g.rows() != dim || g.cols() != dim {
                return Err(GroupError::DimensionMismatch);
            }
            if g.det().is_zero() {
                return Err(GroupError::NotInvertible { index });
            }
        }
        Ok((field, dim))
    }

    /// Sorts the breadth-first list into canonical order and remaps the tree.
    fn assemble(
        field: Field,
        dim: usize,
        generators: Vec<Matrix>,
        bfs: Vec<Matrix>,
        steps: &[(usize, usize)],
    ) -> MatGroup {
        let mut order: Vec<usize> = (0..bfs.len()).collect();
        let keys: Vec<Vec<Rat>> = bfs.iter().map(Matrix::key).collect();
        order.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
        let mut pos = vec![0usize; bfs.len()];
        for (sorted, &orig) in order.iter().enumerate() {
            pos[orig] = sorted;
        }
        let tree = steps.iter().enumerate().map(|(k, &(p, g))| (pos[k + 1], pos[p], g)).collect();
        let index = order.iter().enumerate().map(|(sorted, &orig)| (keys[orig].clone(), sorted)).collect();
        let mut slots: Vec<Option<Matrix>> = bfs.into_iter().map(Some).collect();
        let elements = order.iter().map(|&o| slots[o].take().unwrap()).collect();
        MatGroup {
            field,
            dim,
            generators,
            elements: Arc::new(elements),
            index: Arc::new(index),
            tree: Arc::new(tree),
            identity: pos[0],
        }
    }

    /// The closure as breadth-first words, for caching.
    pub fn export_words(&self) -> ClosureWords {
        // tree entries are already in breadth-first order; positions in that
        // order are 0 for the identity and k + 1 for the k-th entry
        let mut bfs_pos = vec![0u32; self.order()];
        bfs_pos[self.identity] = 0;
        for (k, &(e, _, _)) in self.tree.iter().enumerate() {
            bfs_pos[e] = k as u32 + 1;
        }
        let steps = self.tree.iter().map(|&(_, p, g)| (bfs_pos[p], g as u16)).collect();
        ClosureWords { steps }
    }

    /// Rebuilds the closure from cached words. Every replayed element must be
    /// new, and the result must be closed under right multiplication by the
    /// generators; otherwise the cache is rejected.
    pub fn from_words(generators: Vec<Matrix>, words: &ClosureWords) -> Result<MatGroup, GroupError> {
        let (field, dim) = Self::validate(&generators)?;
        let mut bfs: Vec<Matrix> = vec![Matrix::identity(&field, dim)];
        let mut seen: BTreeSet<Vec<Rat>> = BTreeSet::new();
        seen.insert(bfs[0].key());
        let mut steps = Vec::with_capacity(words.steps.len());
        for &(p, g) in &words.steps {
            let (p, g) = (p as usize, g as usize);
            if p >= bfs.len() || g >= generators.len() {
                return Err(GroupError::BadCache("step out of range".into()));
            }
            let m = &bfs[p] * &generators[g];
            if !seen.insert(m.key()) {
                return Err(GroupError::BadCache("repeated element".into()));
            }
            steps.push((p, g));
            bfs.push(m);
        }
        for (_, _, m) in products(&(0..bfs.len()).collect::<Vec<_>>(), &bfs, &generators) {
            if !seen.contains(&m.key()) {
                return Err(GroupError::BadCache("not closed".into()));
            }
        }
        Ok(Self::assemble(field, dim, generators, bfs, &steps))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Matrix] {
        &self.generators
    }

    pub fn elements(&self) -> &[Matrix] {
        &self.elements
    }

    pub fn index_of(&self, m: &Matrix) -> Option<usize> {
        self.index.get(&m.key()).copied()
    }

    pub fn contains(&self, m: &Matrix) -> bool {
        m.field() == &self.field && m.rows() == self.dim && self.index.contains_key(&m.key())
    }

    pub fn subgroup(&self, generators: Vec<Matrix>) -> Result<MatGroup, GroupError> {
        if generators.is_empty() {
            return Ok(self.trivial());
        }
        MatGroup::generate(generators)
    }

    fn trivial(&self) -> MatGroup {
        MatGroup::generate(vec![Matrix::identity(&self.field, self.dim)]).expect("identity generates")
    }

    /// Determinant of every element, aligned with [`elements`](Self::elements),
    /// computed along the spanning tree.
    pub fn determinants(&self) -> Vec<FieldElement> {
        let gen_dets: Vec<FieldElement> = self.generators.iter().map(Matrix::det).collect();
        let mut out = vec![self.field.zero(); self.order()];
        out[self.identity] = self.field.one();
        for &(e, p, g) in self.tree.iter() {
            out[e] = &out[p] * &gen_dets[g];
        }
        out
    }

    /// Elements commuting with every generator.
    pub fn center(&self) -> MatGroup {
        let elems: Vec<Matrix> =
            self.elements.iter().filter(|z| self.generators.iter().all(|g| *z * g == g * *z)).cloned().collect();
        MatGroup::generate(elems).expect("center of a finite group is finite")
    }

    /// Scalar matrices in the group, as their scalar values.
    pub fn scalars(&self) -> Vec<FieldElement> {
        self.elements.iter().filter_map(|m| m.as_scalar().cloned()).collect()
    }

    /// Smallest normal subgroup containing `gens`.
    pub fn normal_closure(&self, gens: Vec<Matrix>) -> MatGroup {
        let mut gens: Vec<Matrix> = gens.into_iter().filter(|g| !g.is_identity()).collect();
        if gens.is_empty() {
            return self.trivial();
        }
        let invs: Vec<Matrix> = self.generators.iter().map(|g| g.inverse().unwrap()).collect();
        loop {
            let h = MatGroup::generate(gens.clone()).expect("subgroup of a finite group");
            let mut extra = Vec::new();
            for x in &gens {
                for (g, gi) in self.generators.iter().zip(&invs) {
                    let c = &(g * x) * gi;
                    if !h.contains(&c) && !extra.contains(&c) {
                        extra.push(c);
                    }
                }
            }
            if extra.is_empty() {
                return h;
            }
            gens.extend(extra);
        }
    }

    pub fn derived_subgroup(&self) -> MatGroup {
        let invs: Vec<Matrix> = self.generators.iter().map(|g| g.inverse().unwrap()).collect();
        let mut comms = Vec::new();
        for a in 0..self.generators.len() {
            for b in a + 1..self.generators.len() {
                let c = &(&(&self.generators[a] * &self.generators[b]) * &invs[a]) * &invs[b];
                if !c.is_identity() && !comms.contains(&c) {
                    comms.push(c);
                }
            }
        }
        self.normal_closure(comms)
    }

    pub fn is_perfect(&self) -> bool {
        self.derived_subgroup().order() == self.order()
    }

    /// Whether the image of the group modulo its scalars is perfect, i.e.
    /// `G' * Z = G` for `Z` the scalar subgroup.
    pub fn is_perfect_mod_scalars(&self) -> bool {
        let mut gens = self.derived_subgroup().generators.clone();
        gens.extend(self.elements.iter().filter(|m| m.as_scalar().is_some() && !m.is_identity()).cloned());
        gens.push(Matrix::identity(&self.field, self.dim));
        MatGroup::generate(gens).expect("subgroup").order() == self.order()
    }

    pub fn projective_order(&self) -> usize {
        self.order() / self.scalars().len()
    }

    /// Canonical representative of `m` modulo the scalar subgroup: the
    /// smallest key among its scalar multiples.
    pub fn projective_rep(&self, m: &Matrix, scalars: &[FieldElement]) -> Matrix {
        scalars.iter().map(|s| m.scale(s)).min_by(|a, b| a.key().cmp(&b.key())).expect("scalars contain 1")
    }

    /// One canonical representative per coset of the scalar subgroup,
    /// in canonical order.
    pub fn projective_reps(&self) -> Vec<Matrix> {
        let scalars = self.scalars();
        let mut reps: BTreeMap<Vec<Rat>, Matrix> = BTreeMap::new();
        for m in self.elements.iter() {
            let r = self.projective_rep(m, &scalars);
            reps.entry(r.key()).or_insert(r);
        }
        reps.into_values().collect()
    }

    /// Element order to number of elements of that order.
    pub fn order_spectrum(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for m in self.elements.iter() {
            *out.entry(m.order(self.order()).expect("finite")).or_insert(0) += 1;
        }
        out
    }

    /// Order spectrum of the group modulo its scalars.
    pub fn projective_order_spectrum(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for r in self.projective_reps() {
            let mut p = r.clone();
            let mut k = 1;
            while p.as_scalar().is_none() {
                p = &p * &r;
                k += 1;
            }
            *out.entry(k).or_insert(0) += 1;
        }
        out
    }

    /// Centralizer order to number of elements with that centralizer order,
    /// in the group modulo scalars. Computed from conjugacy class sizes.
    pub fn projective_centralizer_spectrum(&self) -> BTreeMap<usize, usize> {
        let scalars = self.scalars();
        let reps = self.projective_reps();
        let ids: BTreeMap<Vec<Rat>, usize> = reps.iter().enumerate().map(|(k, r)| (r.key(), k)).collect();
        let invs: Vec<Matrix> = self.generators.iter().map(|g| g.inverse().unwrap()).collect();
        let mut class_of = vec![usize::MAX; reps.len()];
        let mut sizes = Vec::new();
        for start in 0..reps.len() {
            if class_of[start] != usize::MAX {
                continue;
            }
            let c = sizes.len();
            class_of[start] = c;
            let mut size = 1;
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                for (g, gi) in self.generators.iter().zip(&invs) {
                    let y = self.projective_rep(&(&(g * &reps[x]) * gi), &scalars);
                    let j = ids[&y.key()];
                    if class_of[j] == usize::MAX {
                        class_of[j] = c;
                        size += 1;
                        queue.push_back(j);
                    }
                }
            }
            sizes.push(size);
        }
        let mut out = BTreeMap::new();
        for &c in &class_of {
            *out.entry(reps.len() / sizes[c]).or_insert(0) += 1;
        }
        out
    }

    /// Whether `m g m^-1` lies in the group for every generator `g`.
    pub fn normalizes(&self, m: &Matrix) -> bool {
        let Some(mi) = m.inverse() else {
            return false;
        };
        self.generators.iter().all(|g| self.contains(&(&(m * g) * &mi)))
    }

    /// For each generator `g`, the permutation `k -> j` with `g(H_k) = H_j`
    /// where `H_k = {x_k = 0}`.
    pub fn hyperplane_permutations(&self) -> Result<Vec<Vec<usize>>, GroupError> {
        self.generators
            .iter()
            .enumerate()
            .map(|(index, g)| {
                if !g.is_monomial() {
                    return Err(GroupError::NotMonomial { index });
                }
                // g(H_k) = {y : (g^-1 y)_k = 0}; row k of g^-1 has a single
                // nonzero entry, in the column of the image hyperplane
                let gi = g.inverse().unwrap();
                Ok((0..self.dim).map(|k| gi.row(k).iter().position(|e| !e.is_zero()).unwrap()).collect())
            })
            .collect()
    }

    /// Whether the induced action on the coordinate hyperplanes is doubly
    /// transitive: the orbit of the ordered pair `(H_1, H_2)` has all
    /// `n(n-1)` ordered pairs.
    pub fn doubly_transitive_on_hyperplanes(&self) -> Result<bool, GroupError> {
        let perms = self.hyperplane_permutations()?;
        if self.dim < 2 {
            return Ok(false);
        }
        let mut seen = BTreeSet::from([(0usize, 1usize)]);
        let mut queue = VecDeque::from([(0usize, 1usize)]);
        while let Some((a, b)) = queue.pop_front() {
            for p in &perms {
                let next = (p[a], p[b]);
                if seen.insert(next) {
                    queue.push_back(next);
                }
            }
        }
        Ok(seen.len() == self.dim * (self.dim - 1))
    }

    /// Basis of the homogeneous degree-`d` polynomials in `ring` fixed by
    /// every generator under `p -> p(g x)`, in reduced echelon form on the
    /// ascending monomial basis.
    pub fn fixed_polynomials(&self, ring: &Arc<Ring>, d: u32) -> Result<Vec<MPoly>, GroupError> {
        if ring.nvars() != self.dim {
            return Err(GroupError::DimensionMismatch);
        }
        if ring.field() != &self.field {
            return Err(GroupError::FieldMismatch);
        }
        let basis = Monomial::all_of_degree(self.dim, d);
        let n = basis.len();
        let mut stacked = Matrix::zeros(&self.field, 0, n);
        for g in &self.generators {
            let mut a = Matrix::zeros(&self.field, n, n);
            for (j, m) in basis.iter().enumerate() {
                let image =
                    MPoly::term(ring, self.field.one(), m.clone()).substitute_linear(g).expect("dimensions checked");
                let coords = image.coords_in(&basis).expect("linear maps preserve degree");
                for (i, c) in coords.into_iter().enumerate() {
                    a[(i, j)] = c;
                }
                a[(j, j)] -= &self.field.one();
            }
            stacked = stacked.vstack(&a);
        }
        let null = stacked.nullspace();
        if null.is_empty() {
            return Ok(Vec::new());
        }
        let echelon = Matrix::from_rows(&self.field, null).row_space();
        Ok(echelon.row_vecs().iter().map(|v| MPoly::from_coords(ring, &basis, v)).collect())
    }
}

/// Matrices of the action `p -> p(g x)` of each generator on the span of
/// `polys` (column `j` holds the image of `polys[j]`), or `None` if some
/// image leaves the span. `polys` must be linearly independent.
pub fn span_action(generators: &[Matrix], polys: &[MPoly]) -> Option<Vec<Matrix>> {
    let first = polys.first()?;
    let field = first.field().clone();
    let mut basis: BTreeSet<Monomial> = BTreeSet::new();
    for p in polys {
        basis.extend(p.terms().map(|(m, _)| m.clone()));
    }
    let mut out = Vec::new();
    for g in generators {
        let images: Vec<MPoly> = polys.iter().map(|p| p.substitute_linear(g).ok()).collect::<Option<_>>()?;
        for im in &images {
            basis.extend(im.terms().map(|(m, _)| m.clone()));
        }
        let monos: Vec<Monomial> = basis.iter().cloned().collect();
        // columns: polys; solve polys * x = image for each image
        let cols: Vec<Vec<FieldElement>> = polys.iter().map(|p| p.coords_in(&monos).unwrap()).collect();
        let mut a = Matrix::zeros(&field, polys.len(), polys.len());
        for (j, im) in images.iter().enumerate() {
            let target = im.coords_in(&monos).unwrap();
            let mut aug = Matrix::zeros(&field, monos.len(), polys.len() + 1);
            for r in 0..monos.len() {
                for (c, col) in cols.iter().enumerate() {
                    aug[(r, c)] = col[r].clone();
                }
                aug[(r, polys.len())] = target[r].clone();
            }
            let (red, pivots) = aug.rref();
            if pivots.contains(&polys.len()) {
                return None;
            }
            for (r, &p) in pivots.iter().enumerate() {
                a[(p, j)] = red[(r, polys.len())].clone();
            }
        }
        out.push(a);
    }
    Some(out)
}

/// Common fixed vectors of a family of square matrices.
pub fn common_fixed_space(mats: &[Matrix]) -> Vec<Vec<FieldElement>> {
    let Some(first) = mats.first() else {
        return Vec::new();
    };
    let n = first.rows();
    let id = Matrix::identity(first.field(), n);
    let mut stacked = Matrix::zeros(first.field(), 0, n);
    for m in mats {
        stacked = stacked.vstack(&(m - &id));
    }
    stacked.nullspace()
}

/// Whether `G / Z` is elementary abelian of exponent 2, for `Z` a subgroup
/// of the center given by its elements. Since `Z` is central it is enough to
/// test squares and commutators of generators.
pub fn quotient_elementary_abelian_2(g: &MatGroup, z: &[Matrix]) -> bool {
    let in_z = |m: &Matrix| z.contains(m);
    let gens = g.generators();
    if !z.iter().all(|c| gens.iter().all(|x| c * x == x * c)) {
        return false;
    }
    let invs: Vec<Matrix> = gens.iter().map(|x| x.inverse().unwrap()).collect();
    for a in 0..gens.len() {
        if !in_z(&(&gens[a] * &gens[a])) {
            return false;
        }
        for b in a + 1..gens.len() {
            let c = &(&(&gens[a] * &gens[b]) * &invs[a]) * &invs[b];
            if !in_z(&c) {
                return false;
            }
        }
    }
    true
}

/// Outcome of comparing two groups modulo scalars by cheap invariants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Separation {
    /// The element-order multisets differ.
    OrderSpectrum,
    /// Order spectra agree but centralizer-order multisets differ.
    CentralizerSpectrum,
    Inconclusive,
}

pub fn separate_projective(a: &MatGroup, b: &MatGroup) -> Separation {
    if a.projective_order() != b.projective_order() || a.projective_order_spectrum() != b.projective_order_spectrum() {
        return Separation::OrderSpectrum;
    }
    if a.projective_centralizer_spectrum() != b.projective_centralizer_spectrum() {
        return Separation::CentralizerSpectrum;
    }
    Separation::Inconclusive
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numberfield::fields;

    fn klein() -> MatGroup {
        let q = Field::rationals();
        MatGroup::generate(vec![
            Matrix::from_ints(&q, &[&[-1, 0], &[0, 1]]),
            Matrix::from_ints(&q, &[&[1, 0], &[0, -1]]),
        ])
        .unwrap()
    }

    fn dihedral8() -> MatGroup {
        let q = Field::rationals();
        MatGroup::generate(vec![
            Matrix::from_ints(&q, &[&[0, -1], &[1, 0]]),
            Matrix::from_ints(&q, &[&[1, 0], &[0, -1]]),
        ])
        .unwrap()
    }

    #[test]
    fn small_groups() {
        let k = klein();
        assert_eq!(k.order(), 4);
        assert_eq!(k.center().order(), 4);
        assert_eq!(k.derived_subgroup().order(), 1);
        let d = dihedral8();
        assert_eq!(d.order(), 8);
        assert_eq!(d.center().order(), 2);
        assert_eq!(d.derived_subgroup().order(), 2);
        assert_eq!(d.projective_order(), 4);
        assert_eq!(d.order_spectrum(), BTreeMap::from([(1, 1), (2, 5), (4, 2)]));
        assert_eq!(d.projective_order_spectrum(), BTreeMap::from([(1, 1), (2, 3)]));
        assert!(d.doubly_transitive_on_hyperplanes().unwrap());
        assert!(!k.doubly_transitive_on_hyperplanes().unwrap());
        let minus = Matrix::scalar(d.field(), 2, &d.field().from_int(-1));
        assert!(quotient_elementary_abelian_2(&d, &[Matrix::identity(d.field(), 2), minus]));
        assert_eq!(separate_projective(&k, &d), Separation::OrderSpectrum);
        assert_eq!(separate_projective(&d, &dihedral8()), Separation::Inconclusive);
    }

    #[test]
    fn determinants_and_words() {
        let k = fields::gaussian();
        let i = k.named("i").unwrap();
        let g = Matrix::from_rows(&k, vec![vec![k.zero(), i.clone()], vec![k.one(), k.zero()]]);
        let h = Matrix::diagonal(&k, &[i.clone(), k.one()]);
        let grp = MatGroup::generate(vec![g.clone(), h.clone()]).unwrap();
        let dets = grp.determinants();
        for (m, d) in grp.elements().iter().zip(&dets) {
            assert_eq!(&m.det(), d);
        }
        let words = grp.export_words();
        let again = MatGroup::from_words(vec![g.clone(), h.clone()], &words).unwrap();
        assert_eq!(again.elements(), grp.elements());
        let mut bad = words.clone();
        bad.steps.pop();
        assert!(matches!(MatGroup::from_words(vec![g, h], &bad), Err(GroupError::BadCache(_))));
    }

    #[test]
    fn rejects_infinite() {
        let q = Field::rationals();
        let err = MatGroup::generate(vec![Matrix::from_ints(&q, &[&[1, 1], &[0, 1]])]).unwrap_err();
        assert_eq!(err, GroupError::InfiniteOrder { index: 0, bound: GENERATOR_ORDER_BOUND });
        let g = Matrix::from_ints(&q, &[&[0, -1], &[1, 0]]);
        assert_eq!(MatGroup::generate_with_cap(vec![g], 3).unwrap_err(), GroupError::CapExceeded { cap: 3 });
    }

    #[test]
    fn invariants_of_sign_changes() {
        let q = Field::rationals();
        let gens = vec![Matrix::from_ints(&q, &[&[-1, 0], &[0, 1]]), Matrix::from_ints(&q, &[&[0, 1], &[1, 0]])];
        let grp = MatGroup::generate(gens.clone()).unwrap();
        let ring = Ring::new(&q, &["x", "y"]);
        let inv = grp.fixed_polynomials(&ring, 2).unwrap();
        assert_eq!(inv.len(), 1);
        assert_eq!(alloc::format!("{}", inv[0]), "x^2 + y^2");
        let x2 = crate::polyring::parse_poly(&ring, "x^2").unwrap();
        let y2 = crate::polyring::parse_poly(&ring, "y^2").unwrap();
        let act = span_action(&gens, &[x2.clone(), y2]).unwrap();
        assert_eq!(common_fixed_space(&act).len(), 1);
        assert!(span_action(&[Matrix::from_ints(&q, &[&[1, 1], &[0, 1]])], &[x2]).is_none());
    }
}
