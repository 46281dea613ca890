//! Imaginary quadratic points `(p + q sqrt(D)) / r` of the upper half plane
//! and their reduction under `SL2(Z)`.

use core::fmt;

use num_integer::Integer;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CmError {
    #[error("not-positive-definite")]
    NotPositiveDefinite,
    #[error("degenerate point: q, r must be positive and D negative")]
    Degenerate,
}

/// `tau = (p + q sqrt(D)) / r` with `D < 0` squarefree, `q, r > 0` and
/// `gcd(p, q, r) = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CmPoint {
    p: i64,
    q: i64,
    d: i64,
    r: i64,
}

/// Writes `n = s^2 * f` with `f` squarefree (sign kept on `f`).
fn split_square(n: i64) -> (i64, i64) {
    let mut f = n;
    let mut s = 1;
    let mut k = 2;
    while k * k <= f.abs() {
        while f % (k * k) == 0 {
            f /= k * k;
            s *= k;
        }
        k += 1;
    }
    (s, f)
}

impl CmPoint {
    /// `(p + q sqrt(disc)) / r` for any negative `disc`; square factors of
    /// `disc` are pulled out and the result is normalized.
    pub fn new(p: i64, q: i64, disc: i64, r: i64) -> Result<CmPoint, CmError> {
        if q <= 0 || r <= 0 || disc >= 0 {
            return Err(CmError::Degenerate);
        }
        let (s, d) = split_square(disc);
        Ok(Self::normalized(p as i128, (q * s) as i128, d, r as i128))
    }

    fn normalized(p: i128, q: i128, d: i64, r: i128) -> CmPoint {
        let g = p.gcd(&q).gcd(&r);
        CmPoint { p: (p / g) as i64, q: (q / g) as i64, d, r: (r / g) as i64 }
    }

    pub fn parts(&self) -> (i64, i64, i64, i64) {
        (self.p, self.q, self.d, self.r)
    }

    /// `tau + k`.
    pub fn translate(&self, k: i64) -> CmPoint {
        Self::normalized(self.p as i128 + k as i128 * self.r as i128, self.q as i128, self.d, self.r as i128)
    }

    /// `-1 / tau`.
    pub fn invert(&self) -> CmPoint {
        let (p, q, d, r) = (self.p as i128, self.q as i128, self.d as i128, self.r as i128);
        // -r / (p + q s) = -r (p - q s) / (p^2 - q^2 D)
        let den = p * p - q * q * d;
        Self::normalized(-r * p, r * q, self.d, den)
    }

    /// `k * tau` for `k > 0`.
    pub fn scale(&self, k: i64) -> CmPoint {
        assert!(k > 0);
        Self::normalized(self.p as i128 * k as i128, self.q as i128 * k as i128, self.d, self.r as i128)
    }

    /// `r^2 |tau|^2` compared with `r^2`.
    fn abs_cmp_one(&self) -> core::cmp::Ordering {
        let (p, q, d, r) = (self.p as i128, self.q as i128, self.d as i128, self.r as i128);
        (p * p - q * q * d).cmp(&(r * r))
    }

    /// Representative in the fundamental domain `|tau| >= 1`,
    /// `-1/2 <= Re tau < 1/2`, with `Re tau >= 0` on the unit circle except
    /// at the corner `Re tau = -1/2`.
    pub fn sl2z_reduce(&self) -> CmPoint {
        let mut t = *self;
        loop {
            // shift so that -r <= 2p < r
            let (p, r) = (t.p as i128, t.r as i128);
            let k = -Integer::div_floor(&(2 * p + r), &(2 * r));
            t = t.translate(k as i64);
            match t.abs_cmp_one() {
                core::cmp::Ordering::Less => t = t.invert(),
                core::cmp::Ordering::Equal if t.p < 0 && 2 * t.p != -t.r => return t.invert(),
                _ => return t,
            }
        }
    }

    pub fn sl2z_equivalent(&self, other: &CmPoint) -> bool {
        self.sl2z_reduce() == other.sl2z_reduce()
    }
}

impl fmt::Display for CmPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}*sqrt({}))/{}", self.p, self.q, self.d, self.r)
    }
}

/// `tau1 = (-b + sqrt(Delta)) / (2a)` and `tau2 = (b + sqrt(Delta)) / 2` with
/// `Delta = b^2 - 4ac`, for the form `[[4a, 2b], [2b, 4c]]`.
pub fn shioda_mitani(a: i64, b: i64, c: i64) -> Result<(CmPoint, CmPoint), CmError> {
    let delta = b * b - 4 * a * c;
    if a <= 0 || delta >= 0 {
        return Err(CmError::NotPositiveDefinite);
    }
    let t1 = CmPoint::new(-b, 1, delta, 2 * a)?;
    let t2 = CmPoint::new(b, 1, delta, 2)?;
    Ok((t1, t2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(p: i64, q: i64, d: i64, r: i64) -> CmPoint {
        CmPoint::new(p, q, d, r).unwrap()
    }

    #[test]
    fn three_cases() {
        let i = pt(0, 1, -1, 1);
        assert_eq!(shioda_mitani(1, 0, 1).unwrap(), (i, i));
        let s10 = pt(0, 1, -10, 1);
        assert_eq!(shioda_mitani(1, 0, 10).unwrap(), (s10, s10));
        let (t1, t2) = shioda_mitani(2, 2, 3).unwrap();
        assert_eq!(t1, pt(-1, 1, -5, 2));
        assert_eq!(t2, pt(1, 1, -5, 1));
        assert!(t2.sl2z_equivalent(&t1.scale(2)));
        assert!(shioda_mitani(1, 2, 1).is_err());
    }

    #[test]
    fn reduction() {
        let i = pt(0, 1, -1, 1);
        assert_eq!(i.sl2z_reduce(), i);
        assert_eq!(pt(1, 1, -5, 1).sl2z_reduce(), pt(0, 1, -5, 1));
        let t = pt(-1, 1, -5, 2);
        assert_eq!(t.sl2z_reduce(), t);
        let rho = pt(-1, 1, -3, 2);
        assert_eq!(rho.sl2z_reduce(), rho);
        assert_eq!(rho.translate(1).sl2z_reduce(), rho);
        assert!(pt(1, 1, -5, 1).sl2z_equivalent(&pt(-1, 1, -5, 1)));
        assert!(!i.sl2z_equivalent(&pt(0, 1, -10, 1)));
    }

    #[test]
    fn unit_circle_convention() {
        // (-1 + 2 sqrt(-6)) / 5 lies on |tau| = 1 with negative real part
        let t = pt(-1, 2, -6, 5);
        let red = t.sl2z_reduce();
        assert_eq!(red, pt(1, 2, -6, 5));
        assert_eq!(red.invert().sl2z_reduce(), red);
    }
}
