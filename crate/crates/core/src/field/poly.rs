//! Dense univariate polynomials over Q.

use super::{rat_int, BigRat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// A polynomial in one variable over Q, coefficients indexed by exponent.
///
/// Invariant: the leading coefficient is nonzero; zero is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly {
    coeffs: Vec<BigRat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Poly::constant(BigRat::one())
    }

    pub fn constant(c: BigRat) -> Self {
        let mut p = Poly { coeffs: vec![c] };
        p.normalize();
        p
    }

    pub fn int(n: i64) -> Self {
        Poly::constant(rat_int(n))
    }

    /// The variable itself.
    pub fn var() -> Self {
        Poly {
            coeffs: vec![BigRat::zero(), BigRat::one()],
        }
    }

    pub fn from_coeffs(coeffs: Vec<BigRat>) -> Self {
        let mut p = Poly { coeffs };
        p.normalize();
        p
    }

    /// `c * x^e`.
    pub fn monomial(c: BigRat, e: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![BigRat::zero(); e + 1];
        coeffs[e] = c;
        Poly { coeffs }
    }

    fn normalize(&mut self) {
        while self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, e: usize) -> BigRat {
        self.coeffs.get(e).cloned().unwrap_or_else(BigRat::zero)
    }

    pub fn coeffs(&self) -> &[BigRat] {
        &self.coeffs
    }

    pub fn leading(&self) -> BigRat {
        self.coeffs.last().cloned().unwrap_or_else(BigRat::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn eval(&self, x: &BigRat) -> BigRat {
        let mut acc = BigRat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn scale(&self, c: &BigRat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn shift_up(&self, e: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![BigRat::zero(); e];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(e, c)| c * BigRat::from_integer(BigInt::from(e)))
            .collect();
        Poly::from_coeffs(coeffs)
    }

    /// Euclidean division: `self = q * d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        if self.degree() < d.degree() || self.is_zero() {
            return (Poly::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let dl = d.leading();
        let dd = d.degree();
        let mut quot = vec![BigRat::zero(); self.degree() - dd + 1];
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let q = &rem[i] / &dl;
            quot[i - dd] = q.clone();
            for (j, dc) in d.coeffs.iter().enumerate() {
                let t = dc * &q;
                rem[i - dd + j] = &rem[i - dd + j] - t;
            }
        }
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    /// Exact division, panics on nonzero remainder.
    pub fn div_exact(&self, d: &Poly) -> Poly {
        let (q, r) = self.div_rem(d);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Divides out the rational content and makes the leading coefficient
    /// positive, returning (content, primitive integer polynomial).
    fn primitive(&self) -> (BigRat, Vec<BigInt>) {
        assert!(!self.is_zero());
        let mut den_lcm = BigInt::one();
        for c in &self.coeffs {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * &den_lcm / c.denom())
            .collect();
        let mut g = BigInt::zero();
        for c in &ints {
            g = g.gcd(c);
        }
        if ints.last().unwrap().is_negative() {
            g = -g;
        }
        let prim: Vec<BigInt> = ints.iter().map(|c| c / &g).collect();
        (BigRat::new(g, den_lcm), prim)
    }

    /// Monic gcd over Q, computed by a primitive PRS over Z to keep
    /// intermediate coefficients small.
    pub fn gcd(&self, other: &Poly) -> Poly {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        let (_, mut a) = self.primitive();
        let (_, mut b) = other.primitive();
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_empty() {
            let r = int_prem(&a, &b);
            a = b;
            b = int_primitive(r);
        }
        Poly::from_coeffs(a.into_iter().map(BigRat::from_integer).collect()).monic()
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let l = self.leading();
        self.scale(&(BigRat::one() / l))
    }

    /// Multiplicity of the root `a`.
    pub fn root_multiplicity(&self, a: &BigRat) -> usize {
        let mut m = 0;
        let lin = Poly::from_coeffs(vec![-a.clone(), BigRat::one()]);
        let mut p = self.clone();
        while !p.is_zero() && p.eval(a).is_zero() {
            p = p.div_exact(&lin);
            m += 1;
        }
        m
    }

    /// Rescales to integer coefficients with positive leading coefficient
    /// and content one. Used by the printer.
    pub fn int_normalized_pair(num: &Poly, den: &Poly) -> (Vec<BigInt>, Vec<BigInt>) {
        assert!(!den.is_zero());
        if num.is_zero() {
            let (_, d) = den.primitive();
            return (vec![], d);
        }
        let (cn, n) = num.primitive();
        let (cd, d) = den.primitive();
        // ratio cn/cd = p/q in lowest terms; fold p into num, q into den
        let ratio = cn / cd;
        let n: Vec<BigInt> = n.iter().map(|c| c * ratio.numer()).collect();
        let d: Vec<BigInt> = d.iter().map(|c| c * ratio.denom()).collect();
        if d.last().unwrap().is_negative() {
            (n.iter().map(|c| -c).collect(), d.iter().map(|c| -c).collect())
        } else {
            (n, d)
        }
    }
}

/// Pseudo-remainder of integer polynomials.
fn int_prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r: Vec<BigInt> = a.to_vec();
    let db = b.len() - 1;
    let lb = b.last().unwrap().clone();
    while r.len() >= b.len() && !r.is_empty() {
        let lr = r.last().unwrap().clone();
        if lr.is_zero() {
            r.pop();
            continue;
        }
        let shift = r.len() - 1 - db;
        for c in r.iter_mut() {
            *c = &*c * &lb;
        }
        for (j, bc) in b.iter().enumerate() {
            r[shift + j] = &r[shift + j] - bc * &lr;
        }
        while r.last().map_or(false, |c| c.is_zero()) {
            r.pop();
        }
    }
    r
}

fn int_primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
    if v.is_empty() {
        return v;
    }
    let mut g = BigInt::zero();
    for c in &v {
        g = g.gcd(c);
    }
    if v.last().unwrap().is_negative() {
        g = -g;
    }
    v.into_iter().map(|c| c / &g).collect()
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) + rhs.coeff(i));
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) - rhs.coeff(i));
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![BigRat::zero(); self.degree() + rhs.degree() + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = &coeffs[i + j] + a * b;
            }
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

pub(crate) fn fmt_int_poly(f: &mut fmt::Formatter<'_>, coeffs: &[BigInt], var: &str) -> fmt::Result {
    if coeffs.is_empty() {
        return write!(f, "0");
    }
    let mut first = true;
    for (e, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let abs = c.abs();
        if first {
            if neg {
                write!(f, "-")?;
            }
            first = false;
        } else if neg {
            write!(f, "-")?;
        } else {
            write!(f, "+")?;
        }
        let unit = abs.is_one();
        match (e, unit) {
            (0, _) => write!(f, "{abs}")?,
            (1, true) => write!(f, "{var}")?,
            (1, false) => write!(f, "{abs}*{var}")?,
            (_, true) => write!(f, "{var}^{e}")?,
            (_, false) => write!(f, "{abs}*{var}^{e}")?,
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;

    fn p(coeffs: &[i64]) -> Poly {
        Poly::from_coeffs(coeffs.iter().map(|&c| rat_int(c)).collect())
    }

    #[test]
    fn div_rem_roundtrip() {
        let a = p(&[1, -3, 0, 2]);
        let b = p(&[-1, 1]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(&(&q * &b) + &r, a);
    }

    #[test]
    fn gcd_cancellation() {
        // z^2 - 1 and z - 1 share z - 1
        let a = p(&[-1, 0, 1]);
        let b = p(&[-1, 1]);
        assert_eq!(a.gcd(&b), b.monic());
        // coprime
        let c = p(&[1, 1]);
        assert_eq!(b.gcd(&c), Poly::one());
    }

    #[test]
    fn gcd_with_rational_coeffs() {
        let a = p(&[-1, 0, 1]).scale(&rat(1, 2));
        let b = p(&[1, 1]).scale(&rat(3, 7));
        assert_eq!(a.gcd(&b), p(&[1, 1]));
    }

    #[test]
    fn root_multiplicity_counts() {
        // (z-1)^2 (z+2)
        let a = &(&p(&[-1, 1]) * &p(&[-1, 1])) * &p(&[2, 1]);
        assert_eq!(a.root_multiplicity(&rat_int(1)), 2);
        assert_eq!(a.root_multiplicity(&rat_int(-2)), 1);
        assert_eq!(a.root_multiplicity(&rat_int(3)), 0);
    }
}
