//! Randomized invariants. Every `check_*` runs [`CASES`] accepted instances
//! from a fixed seed and returns the number run; the acceptance target of
//! the command-line crate includes this file and reports on the same runs.

#![allow(dead_code)]

use std::sync::Arc;

use k3m20_core::fields;
use k3m20_core::lattice::Lattice;
use k3m20_core::linalg::Matrix;
use k3m20_core::matgroup::MatGroup;
use k3m20_core::polyring::{groebner_with_cap, ideal_reduce, is_groebner_basis, s_polynomial, MPoly, Monomial, Ring};
use k3m20_core::projgeom::{
    binary_quadratic_resultant, conics_disjoint, orbit, restrict_to_line, sylvester_matrix, PlaneConic,
};
use k3m20_core::rational::ratio;
use k3m20_core::{Field, FieldElement};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

pub const CASES: u32 = 256;

fn runner() -> TestRunner {
    let config = Config { cases: CASES, failure_persistence: None, max_global_rejects: 4 * CASES, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn run<S: Strategy>(strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<u32, String>
where
    S::Value: std::fmt::Debug,
{
    runner().run(&strategy, test).map(|()| CASES).map_err(|e| e.to_string())
}

fn element(k: &Field) -> impl Strategy<Value = FieldElement> {
    let k = k.clone();
    prop::collection::vec((-6i64..=6, 1i64..=4), k.degree())
        .prop_map(move |cs| k.element(cs.into_iter().map(|(n, d)| ratio(n, d)).collect()))
}

fn small_fields() -> Vec<Field> {
    vec![fields::gaussian_golden(), fields::cyclotomic8(), fields::gaussian_golden_sqrtphi()]
}

pub fn check_field_axioms() -> Result<u32, String> {
    let strategy = (0..3usize).prop_flat_map(|i| {
        let k = small_fields().swap_remove(i);
        (element(&k), element(&k), element(&k))
    });
    run(strategy, |(a, b, c)| {
        let k = a.field().clone();
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        if !a.is_zero() {
            prop_assert!((&a * &a.inverse().unwrap()).is_one());
        }
        let sq = a.square();
        let r = sq.sqrt().expect("a square has a square root");
        prop_assert!(r == a || r == -&a);
        prop_assert_eq!(&k.one() * &a, a);
        Ok(())
    })
}

pub fn check_embedding_homomorphism() -> Result<u32, String> {
    let small = fields::golden();
    let big = fields::gaussian_golden_sqrtphi();
    let e = small.embedding_into(&big).map_err(|e| e.to_string())?;
    run((element(&small), element(&small)), move |(a, b)| {
        prop_assert_eq!(e.apply(&(&a + &b)), &e.apply(&a) + &e.apply(&b));
        prop_assert_eq!(e.apply(&(&a * &b)), &e.apply(&a) * &e.apply(&b));
        prop_assert!(e.apply(&small.one()).is_one());
        Ok(())
    })
}

fn p3() -> Arc<Ring> {
    Ring::new(&Field::rationals(), &["x0", "x1", "x2", "x3"])
}

fn int_matrix(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, n), n)
}

fn quadric(ring: &Arc<Ring>, cs: &[i64]) -> MPoly {
    let monos = Monomial::all_of_degree(ring.nvars(), 2);
    let k = ring.field();
    MPoly::from_terms(ring, monos.into_iter().zip(cs).map(|(m, &c)| (m, k.from_int(c))))
}

fn linear(ring: &Arc<Ring>, cs: &[i64]) -> MPoly {
    let k = ring.field();
    MPoly::linear(ring, &cs.iter().map(|&c| k.from_int(c)).collect::<Vec<_>>())
}

/// A random smooth conic in a random plane of P^3, if the draw gives one.
fn conic_from(ring: &Arc<Ring>, plane: &[i64], q: &[i64]) -> Option<PlaneConic> {
    let k = ring.field();
    let lin = Matrix::from_rows(k, vec![plane.iter().map(|&c| k.from_int(c)).collect()]);
    PlaneConic::new(&lin, &quadric(ring, q)).ok()
}

fn conic_strategy() -> impl Strategy<Value = (Vec<i64>, Vec<i64>)> {
    (prop::collection::vec(-2i64..=2, 4), prop::collection::vec(-3i64..=3, 10))
}

fn invertible(ring: &Arc<Ring>, rows: &[Vec<i64>]) -> Option<Matrix> {
    let k = ring.field();
    let m = Matrix::from_rows(k, rows.iter().map(|r| r.iter().map(|&c| k.from_int(c)).collect()).collect());
    (!m.det().is_zero()).then_some(m)
}

pub fn check_action_axioms() -> Result<u32, String> {
    run((conic_strategy(), int_matrix(4), int_matrix(4)), |((plane, q), g, h)| {
        let ring = p3();
        let c = conic_from(&ring, &plane, &q);
        let (g, h) = (invertible(&ring, &g), invertible(&ring, &h));
        prop_assume!(c.is_some() && g.is_some() && h.is_some());
        let (c, g, h) = (c.unwrap(), g.unwrap(), h.unwrap());
        prop_assert_eq!(c.apply(&g).apply(&h), c.apply(&(&h * &g)));
        prop_assert_eq!(c.apply(&Matrix::identity(ring.field(), 4)), c.clone());
        // pullback of forms composes the other way round
        let f = quadric(&ring, &q);
        let left = f.substitute_linear(&g).unwrap().substitute_linear(&h).unwrap();
        prop_assert_eq!(left, f.substitute_linear(&(&g * &h)).unwrap());
        Ok(())
    })
}

/// A signed permutation matrix of size 4 from a permutation index and signs.
fn signed_permutation(k: &Field, perm: usize, signs: u8) -> Matrix {
    let mut items: Vec<usize> = (0..4).collect();
    let mut p = Vec::new();
    let mut code = perm;
    for n in (1..=4).rev() {
        p.push(items.remove(code % n));
        code /= n;
    }
    let mut m = Matrix::zeros(k, 4, 4);
    for (i, &j) in p.iter().enumerate() {
        m[(i, j)] = k.from_int(if signs >> i & 1 == 1 { -1 } else { 1 });
    }
    m
}

pub fn check_orbit_divides_order() -> Result<u32, String> {
    let gens = prop::collection::vec((0usize..24, 0u8..16), 1..=2);
    run((conic_strategy(), gens), |((plane, q), gens)| {
        let ring = p3();
        let c = conic_from(&ring, &plane, &q);
        prop_assume!(c.is_some());
        let c = c.unwrap();
        let mats: Vec<Matrix> = gens.iter().map(|&(p, s)| signed_permutation(ring.field(), p, s)).collect();
        let g = MatGroup::generate(mats.clone()).unwrap();
        let o = orbit(&c, &mats, 10_000).unwrap();
        prop_assert_eq!(g.order() % o.len(), 0, "orbit {} does not divide order {}", o.len(), g.order());
        let mut images: Vec<PlaneConic> = g.elements().iter().map(|m| c.apply(m)).collect();
        images.sort();
        images.dedup();
        prop_assert_eq!(images, o);
        Ok(())
    })
}

fn sparse_poly() -> impl Strategy<Value = Vec<(usize, i64)>> {
    // indices into the monomials of degree <= 2 in 3 variables
    prop::collection::vec((0usize..10, prop_oneof![-3i64..=-1, 1i64..=3]), 1..=3)
}

pub fn check_groebner_self_verification() -> Result<u32, String> {
    run(prop::collection::vec(sparse_poly(), 2..=3), |polys| {
        let ring = Ring::new(&Field::rationals(), &["x", "y", "z"]);
        let k = ring.field();
        let monos: Vec<Monomial> = (0..=2).flat_map(|d| Monomial::all_of_degree(3, d)).collect();
        let gens: Vec<MPoly> = polys
            .iter()
            .map(|ts| {
                ts.iter().fold(MPoly::zero(&ring), |acc, &(i, c)| {
                    &acc + &MPoly::term(&ring, k.from_int(c), monos[i].clone())
                })
            })
            .filter(|p| !p.is_zero())
            .collect();
        prop_assume!(!gens.is_empty());
        let gb = groebner_with_cap(&gens, 20_000);
        prop_assume!(gb.is_ok());
        let gb = gb.unwrap();
        for f in &gens {
            prop_assert!(ideal_reduce(f, &gb).is_zero());
        }
        for i in 0..gb.len() {
            for j in i + 1..gb.len() {
                prop_assert!(ideal_reduce(&s_polynomial(&gb[i], &gb[j]), &gb).is_zero());
            }
        }
        prop_assert!(is_groebner_basis(&gb));
        Ok(())
    })
}

fn int_det(m: &[Vec<i64>]) -> i64 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] * int_det(&minor)
            })
            .sum(),
    }
}

/// Every nonzero vector of norm at most `m` inside the box that contains
/// the ellipsoid, `|x_i| <= sqrt(m adj(G)_ii / det G)`.
fn brute_force(g: &[Vec<i64>], m: i64) -> Vec<Vec<i64>> {
    let n = g.len();
    let det = int_det(g);
    let bounds: Vec<i64> = (0..n)
        .map(|i| {
            let minor: Vec<Vec<i64>> = g
                .iter()
                .enumerate()
                .filter(|&(r, _)| r != i)
                .map(|(_, row)| row.iter().enumerate().filter(|&(c, _)| c != i).map(|(_, &x)| x).collect())
                .collect();
            let t = (m * int_det(&minor)) as f64 / det as f64;
            t.sqrt().floor() as i64 + 1
        })
        .collect();
    let mut out = Vec::new();
    let mut x: Vec<i64> = bounds.iter().map(|b| -b).collect();
    loop {
        let norm: i64 = (0..n).map(|i| (0..n).map(|j| x[i] * g[i][j] * x[j]).sum::<i64>()).sum();
        if norm <= m && x.iter().any(|&c| c != 0) {
            out.push(x.clone());
        }
        let mut i = 0;
        loop {
            if i == n {
                out.sort();
                return out;
            }
            if x[i] < bounds[i] {
                x[i] += 1;
                break;
            }
            x[i] = -bounds[i];
            i += 1;
        }
    }
}

pub fn check_short_vectors() -> Result<u32, String> {
    let strategy = (1usize..=3).prop_flat_map(|n| (int_matrix(n), prop::collection::vec(1i64..=3, n), 1i64..=30));
    run(strategy, |(b, diag, m)| {
        let n = b.len();
        // G = B^T B + D is positive definite
        let g: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|k| b[k][i] * b[k][j]).sum::<i64>() + if i == j { diag[i] } else { 0 })
                    .collect()
            })
            .collect();
        let l = Lattice::new(g.clone()).unwrap();
        prop_assert_eq!(l.vectors_up_to(m).unwrap(), brute_force(&g, m));
        Ok(())
    })
}

/// Roots `(s, t)` of `a s^2 + b st + c t^2`, in a field where they exist.
fn roots(f: &[FieldElement; 3]) -> Vec<(FieldElement, FieldElement)> {
    let k = f[0].field().clone();
    let [a, b, c] = f;
    if a.is_zero() {
        // t (b s + c t) = 0
        return vec![(k.one(), k.zero()), (-c, b.clone())];
    }
    let d = &b.square() - &(&k.from_int(4) * &(a * c));
    let r = d.sqrt().expect("discriminant is a square in the splitting field");
    let two_a = &k.from_int(2) * a;
    vec![(&(-b) + &r, two_a.clone()), (&(-b) - &r, two_a)]
}

fn binary_eval(f: &[FieldElement; 3], (s, t): &(FieldElement, FieldElement)) -> FieldElement {
    &(&(&f[0] * &s.square()) + &(&f[1] * &(s * t))) + &(&f[2] * &t.square())
}

pub fn check_disjointness_oracle() -> Result<u32, String> {
    let strategy = (conic_strategy(), conic_strategy(), prop::collection::vec(-2i64..=2, 4), any::<bool>());
    run(strategy, |((p1, q1), (p2, q2), m, force_meet)| {
        let ring = p3();
        let c1 = conic_from(&ring, &p1, &q1);
        // forcing q2 = q1 + l1 m makes both quadrics agree on the common line
        let q2poly = if force_meet {
            &quadric(&ring, &q1) + &(&linear(&ring, &p1) * &linear(&ring, &m))
        } else {
            quadric(&ring, &q2)
        };
        let k = ring.field().clone();
        let lin2 = Matrix::from_rows(&k, vec![p2.iter().map(|&c| k.from_int(c)).collect()]);
        let c2 = PlaneConic::new(&lin2, &q2poly).ok();
        prop_assume!(c1.is_some() && c2.is_some());
        let (c1, c2) = (c1.unwrap(), c2.unwrap());
        let both = c1.linear_forms().vstack(c2.linear_forms());
        prop_assume!(both.rank() == 2);
        let line = both.nullspace();
        let f = restrict_to_line(c1.quadric(), &line[0], &line[1]);
        let g = restrict_to_line(c2.quadric(), &line[0], &line[1]);
        // split f over Q or a quadratic extension and test g at its roots
        let disc = &f[1].square() - &(&k.from_int(4) * &(&f[0] * &f[2]));
        let lift: Box<dyn Fn(&FieldElement) -> FieldElement> = if f[0].is_zero() || disc.sqrt().is_some() {
            Box::new(|x: &FieldElement| x.clone())
        } else {
            let (_, e) = k.adjoin_sqrt(&disc, "d").unwrap();
            Box::new(move |x: &FieldElement| e.apply(x))
        };
        let fl = [lift(&f[0]), lift(&f[1]), lift(&f[2])];
        let gl = [lift(&g[0]), lift(&g[1]), lift(&g[2])];
        let meet = roots(&fl).iter().any(|r| binary_eval(&gl, r).is_zero());
        prop_assert_eq!(conics_disjoint(&c1, &c2), !meet);
        if force_meet {
            prop_assert!(meet);
        }
        Ok(())
    })
}

pub fn check_resultant_sylvester() -> Result<u32, String> {
    let k = fields::gaussian_golden();
    let coeffs = prop::collection::vec(element(&k), 6);
    run(coeffs, |c| {
        let f = [c[0].clone(), c[1].clone(), c[2].clone()];
        let g = [c[3].clone(), c[4].clone(), c[5].clone()];
        prop_assert_eq!(binary_quadratic_resultant(&f, &g), sylvester_matrix(&f, &g).det());
        Ok(())
    })
}

pub type PropertyCheck = fn() -> Result<u32, String>;

/// Every property suite, by name.
pub fn all() -> Vec<(&'static str, PropertyCheck)> {
    vec![
        ("field axioms", check_field_axioms),
        ("embedding homomorphism", check_embedding_homomorphism),
        ("action axioms", check_action_axioms),
        ("orbit size divides group order", check_orbit_divides_order),
        ("groebner self-verification", check_groebner_self_verification),
        ("short vectors vs brute force", check_short_vectors),
        ("disjointness vs explicit roots", check_disjointness_oracle),
        ("resultant vs sylvester determinant", check_resultant_sylvester),
    ]
}

#[test]
fn field_axioms() {
    check_field_axioms().unwrap();
}

#[test]
fn embedding_homomorphism() {
    check_embedding_homomorphism().unwrap();
}

#[test]
fn action_axioms() {
    check_action_axioms().unwrap();
}

#[test]
fn orbit_size_divides_group_order() {
    check_orbit_divides_order().unwrap();
}

#[test]
fn groebner_self_verification() {
    check_groebner_self_verification().unwrap();
}

#[test]
fn short_vectors_match_brute_force() {
    check_short_vectors().unwrap();
}

#[test]
fn disjointness_matches_explicit_roots() {
    check_disjointness_oracle().unwrap();
}

#[test]
fn resultant_is_sylvester_determinant() {
    check_resultant_sylvester().unwrap();
}
