//! Buchberger's algorithm with the normal selection strategy and both
//! Buchberger criteria.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use super::{MPoly, Monomial, PolyError};

/// Largest total number of stored monomials a basis may reach.
pub const DEFAULT_MONOMIAL_CAP: usize = 200_000;

/// Full normal form of `p` modulo `basis` (every term is reduced, not just
/// the leading one). Unique when `basis` is a Gröbner basis.
pub fn ideal_reduce(p: &MPoly, basis: &[MPoly]) -> MPoly {
    let leads: Vec<(&Monomial, _)> = basis
        .iter()
        .filter_map(|g| g.leading_term().map(|(m, c)| (m, c.inverse().expect("nonzero leading coefficient"))))
        .collect();
    let mut rest = p.clone();
    let mut out = MPoly::zero(p.ring());
    while let Some((m, c)) = rest.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
        let hit = leads.iter().enumerate().find(|(_, (lm, _))| lm.divides(&m));
        match hit {
            Some((k, (lm, inv))) => {
                let q = lm.quotient(&m);
                let factor = &c * inv;
                let sub = basis[k].mul_term(&factor, &q);
                rest = &rest - &sub;
            }
            None => {
                rest.terms.remove(&m);
                out.add_term(m, &c);
            }
        }
    }
    out
}

pub fn s_polynomial(f: &MPoly, g: &MPoly) -> MPoly {
    let (mf, cf) = f.leading_term().expect("nonzero");
    let (mg, cg) = g.leading_term().expect("nonzero");
    let l = mf.lcm(mg);
    let a = f.mul_term(&cf.inverse().unwrap(), &mf.quotient(&l));
    let b = g.mul_term(&cg.inverse().unwrap(), &mg.quotient(&l));
    &a - &b
}

pub fn groebner(gens: &[MPoly]) -> Result<Vec<MPoly>, PolyError> {
    groebner_with_cap(gens, DEFAULT_MONOMIAL_CAP)
}

/// Reduced Gröbner basis, monic, sorted by leading monomial. Returns the
/// single polynomial `1` as soon as a nonzero constant appears.
pub fn groebner_with_cap(gens: &[MPoly], cap: usize) -> Result<Vec<MPoly>, PolyError> {
    let Some(first) = gens.first() else {
        return Ok(Vec::new());
    };
    let ring = first.ring().clone();
    if gens.iter().any(|g| g.ring() != &ring) {
        return Err(PolyError::RingMismatch);
    }
    let mut basis: Vec<MPoly> = Vec::new();
    let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut size = 0usize;
    let unit = || Ok(alloc::vec![MPoly::one(&ring)]);
    for g in gens {
        let h = ideal_reduce(g, &basis);
        if h.is_zero() {
            continue;
        }
        if h.is_unit() {
            return unit();
        }
        add_element(&mut basis, &mut pairs, h.monic());
    }
    while let Some(&(i, j)) = select_pair(&basis, &pairs) {
        pairs.remove(&(i, j));
        let (li, lj) = (basis[i].leading_monomial().unwrap(), basis[j].leading_monomial().unwrap());
        if li.coprime(lj) || chain_criterion(&basis, &pairs, i, j) {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j]);
        let h = ideal_reduce(&s, &basis);
        if h.is_zero() {
            continue;
        }
        if h.is_unit() {
            return unit();
        }
        size += h.num_terms();
        if size > cap {
            return Err(PolyError::ExpressionSwell { cap });
        }
        add_element(&mut basis, &mut pairs, h.monic());
    }
    Ok(reduce_basis(basis))
}

fn add_element(basis: &mut Vec<MPoly>, pairs: &mut BTreeSet<(usize, usize)>, h: MPoly) {
    let k = basis.len();
    for i in 0..k {
        pairs.insert((i, k));
    }
    basis.push(h);
}

/// The pending pair with the smallest lcm of leading monomials; ties go to
/// the lexicographically first index pair.
fn select_pair<'a>(basis: &[MPoly], pairs: &'a BTreeSet<(usize, usize)>) -> Option<&'a (usize, usize)> {
    pairs.iter().min_by(|a, b| {
        let la = basis[a.0].leading_monomial().unwrap().lcm(basis[a.1].leading_monomial().unwrap());
        let lb = basis[b.0].leading_monomial().unwrap().lcm(basis[b.1].leading_monomial().unwrap());
        la.cmp(&lb).then(a.cmp(b))
    })
}

/// Skips `(i, j)` when some `k` has `lm(k) | lcm(i, j)` and neither
/// `(i, k)` nor `(j, k)` is still pending.
fn chain_criterion(basis: &[MPoly], pairs: &BTreeSet<(usize, usize)>, i: usize, j: usize) -> bool {
    let l = basis[i].leading_monomial().unwrap().lcm(basis[j].leading_monomial().unwrap());
    let key = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
    (0..basis.len()).any(|k| {
        k != i
            && k != j
            && basis[k].leading_monomial().unwrap().divides(&l)
            && !pairs.contains(&key(i, k))
            && !pairs.contains(&key(j, k))
    })
}

fn reduce_basis(basis: Vec<MPoly>) -> Vec<MPoly> {
    // drop elements whose leading monomial is divisible by another one
    let mut minimal: Vec<MPoly> = Vec::new();
    for (k, g) in basis.iter().enumerate() {
        let lg = g.leading_monomial().unwrap();
        let redundant = basis.iter().enumerate().any(|(l, h)| {
            let lh = h.leading_monomial().unwrap();
            l != k && lh.divides(lg) && (lh != lg || l < k)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut out: Vec<MPoly> = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<MPoly> = minimal.iter().enumerate().filter(|(l, _)| *l != k).map(|(_, p)| p.clone()).collect();
        let g = &minimal[k];
        let (lm, lc) = g.leading_term().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let tail = &g.clone() - &MPoly::term(g.ring(), lc.clone(), lm.clone());
        let reduced = &ideal_reduce(&tail, &others) + &MPoly::term(g.ring(), lc, lm);
        out.push(reduced.monic());
    }
    out.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));
    out
}

/// Post-hoc check: every S-polynomial of `basis` reduces to zero.
pub fn is_groebner_basis(basis: &[MPoly]) -> bool {
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            if !ideal_reduce(&s_polynomial(&basis[i], &basis[j]), basis).is_zero() {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::super::{parse_poly, Ring};
    use super::*;
    use crate::numberfield::Field;

    #[test]
    fn unit_ideal() {
        let r = Ring::new(&Field::rationals(), &["x"]);
        let gens = [parse_poly(&r, "x - 1").unwrap(), parse_poly(&r, "x").unwrap()];
        let gb = groebner(&gens).unwrap();
        assert_eq!(gb.len(), 1);
        assert!(gb[0].is_unit());
    }

    #[test]
    fn twisted_cubic() {
        let r = Ring::new(&Field::rationals(), &["x", "y", "z", "w"]);
        let gens: Vec<MPoly> =
            ["x*z - y^2", "y*w - z^2", "x*w - y*z"].iter().map(|s| parse_poly(&r, s).unwrap()).collect();
        let gb = groebner(&gens).unwrap();
        assert!(is_groebner_basis(&gb));
        assert_eq!(gb.len(), 3);
        let x = parse_poly(&r, "x^2").unwrap();
        assert!(ideal_reduce(&x, &[parse_poly(&r, "x").unwrap()]).is_zero());
    }

    #[test]
    fn swell_cap() {
        let r = Ring::new(&Field::rationals(), &["x", "y", "z"]);
        let gens: Vec<MPoly> = ["x^3 - y*z^2 + 1", "y^3 - x*z + 2", "z^3 - x^2*y - 3"]
            .iter()
            .map(|s| parse_poly(&r, s).unwrap())
            .collect();
        assert_eq!(groebner_with_cap(&gens, 5).unwrap_err(), PolyError::ExpressionSwell { cap: 5 });
    }
}
