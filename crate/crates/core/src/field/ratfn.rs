//! The field Q(z) in canonical reduced form.

use super::poly::fmt_int_poly;
use super::{BigRat, FieldError, Poly};
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// An element of Q(z).
///
/// Invariants: `den` is nonzero and monic, `gcd(num, den) = 1`.
/// Canonical form makes equality structural.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl Default for RationalFunction {
    fn default() -> Self {
        RationalFunction::zero()
    }
}

impl RationalFunction {
    pub fn new(num: Poly, den: Poly) -> Result<Self, FieldError> {
        if den.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return RationalFunction {
                num: Poly::zero(),
                den: Poly::one(),
            };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g), den.div_exact(&g))
        };
        let lc = den.leading();
        if lc.is_one() {
            RationalFunction { num, den }
        } else {
            let inv = BigRat::one() / lc;
            RationalFunction {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        RationalFunction {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn from_rat(c: BigRat) -> Self {
        RationalFunction::from_poly(Poly::constant(c))
    }

    pub fn int(n: i64) -> Self {
        RationalFunction::from_poly(Poly::int(n))
    }

    pub fn zero() -> Self {
        RationalFunction::from_poly(Poly::zero())
    }

    pub fn one() -> Self {
        RationalFunction::from_poly(Poly::one())
    }

    /// The indeterminate z.
    pub fn z() -> Self {
        RationalFunction::from_poly(Poly::var())
    }

    /// z/2, the content normalization shift.
    pub fn z_half() -> Self {
        RationalFunction::from_poly(Poly::var().scale(&super::rat(1, 2)))
    }

    /// z^e with integer coefficient 1.
    pub fn z_pow(e: usize) -> Self {
        RationalFunction::from_poly(Poly::monomial(BigRat::one(), e))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_one()
    }

    /// The constant value, if this is an element of Q.
    pub fn as_rat(&self) -> Option<BigRat> {
        if self.is_constant() {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    pub fn inverse(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(Self::reduced(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, rhs: &Self) -> Result<Self, FieldError> {
        if rhs.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(Self::reduced(&self.num * &rhs.den, &self.den * &rhs.num))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = RationalFunction::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// LaTeX rendering with \frac for non-polynomial values.
    pub fn latex(&self) -> String {
        let (n, d) = Poly::int_normalized_pair(&self.num, &self.den);
        struct P<'a>(&'a [num_bigint::BigInt]);
        impl fmt::Display for P<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                fmt_int_poly(f, self.0, "z")
            }
        }
        if d.len() == 1 && d[0].is_one() {
            format!("{}", P(&n))
        } else {
            format!("\\frac{{{}}}{{{}}}", P(&n), P(&d))
        }
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::reduced(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::reduced(
            &(&self.num * &rhs.den) - &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        // cross-reduce first to keep the gcds small
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let n1 = if g1.is_one() { self.num.clone() } else { self.num.div_exact(&g1) };
        let d2 = if g1.is_one() { rhs.den.clone() } else { rhs.den.div_exact(&g1) };
        let n2 = if g2.is_one() { rhs.num.clone() } else { rhs.num.div_exact(&g2) };
        let d1 = if g2.is_one() { self.den.clone() } else { self.den.div_exact(&g2) };
        RationalFunction::reduced(&n1 * &n2, &d1 * &d2)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl fmt::Display for RationalFunction {
    /// Text grammar: integer-coefficient numerator and denominator in
    /// descending powers, no spaces, `^` for powers, e.g. `(z^2-3*z+1)/(z^2-2*z+1)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, d) = Poly::int_normalized_pair(&self.num, &self.den);
        let term_count = |v: &[num_bigint::BigInt]| v.iter().filter(|c| !c.is_zero()).count();
        let den_trivial = d.len() == 1 && d[0].is_one();
        struct P<'a>(&'a [num_bigint::BigInt]);
        impl fmt::Display for P<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                fmt_int_poly(f, self.0, "z")
            }
        }
        if den_trivial {
            return write!(f, "{}", P(&n));
        }
        if term_count(&n) > 1 {
            write!(f, "({})", P(&n))?;
        } else {
            write!(f, "{}", P(&n))?;
        }
        write!(f, "/")?;
        let ds = format!("{}", P(&d));
        if term_count(&d) > 1 || ds.contains('*') {
            write!(f, "({ds})")
        } else {
            write!(f, "{ds}")
        }
    }
}

use num_bigint::BigInt;
use num_traits::Signed;

impl RationalFunction {
    /// Returns true when the leading coefficient of the numerator is negative;
    /// used only for display choices.
    pub fn is_lead_negative(&self) -> bool {
        self.num.leading().numer().is_negative()
    }

    /// Exact square root in Q(z) if one exists.
    pub fn sqrt(&self) -> Option<RationalFunction> {
        if self.is_zero() {
            return Some(RationalFunction::zero());
        }
        let n = poly_sqrt(&self.num)?;
        let d = poly_sqrt(&self.den)?;
        Some(RationalFunction::reduced(n, d))
    }
}

/// Square root of a polynomial over Q, if it is a perfect square.
fn poly_sqrt(p: &Poly) -> Option<Poly> {
    if p.is_zero() {
        return Some(Poly::zero());
    }
    if p.degree() % 2 != 0 {
        return None;
    }
    let lead_sqrt = rat_sqrt(&p.leading())?;
    let half = p.degree() / 2;
    // Descending coefficient matching: the x^{i+half} coefficient of b^2 is
    // 2 b_half b_i plus terms in already-known b_j (j > i).
    let mut b = vec![BigRat::zero(); half + 1];
    b[half] = lead_sqrt;
    for i in (0..half).rev() {
        let target = p.coeff(i + half);
        let mut acc = BigRat::zero();
        for j in 0..=half {
            if j == i {
                continue;
            }
            let k = i + half;
            if k < j || k - j > half || k - j == i {
                continue;
            }
            acc = acc + &b[j] * &b[k - j];
        }
        let two_bh = &b[half] * &BigRat::from_integer(BigInt::from(2));
        b[i] = (target - acc) / two_bh;
    }
    let cand = Poly::from_coeffs(b);
    if &(&cand * &cand) == p {
        Some(cand)
    } else {
        None
    }
}

fn rat_sqrt(r: &BigRat) -> Option<BigRat> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(BigRat::new(n, d))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{parse_ratfn, rat};

    fn rf(s: &str) -> RationalFunction {
        parse_ratfn(s).unwrap()
    }

    #[test]
    fn inverse_pair_is_one() {
        // (z-1)/z * z/(z-1) = 1
        let a = rf("(z-1)/z");
        let b = rf("z/(z-1)");
        assert!((&a * &b).is_one());
    }

    #[test]
    fn idempotent_trace_identity() {
        // 1/z + (z-1)/z = 1
        let a = rf("1/z");
        let b = rf("(z-1)/z");
        assert!((&a + &b).is_one());
    }

    #[test]
    fn gcd_normalization() {
        // (z^2-1)/(z-1) normalizes to z+1
        let v = RationalFunction::new(
            Poly::from_coeffs(vec![rat(-1, 1), rat(0, 1), rat(1, 1)]),
            Poly::from_coeffs(vec![rat(-1, 1), rat(1, 1)]),
        )
        .unwrap();
        assert_eq!(v, rf("z+1"));
        assert_eq!(v.to_string(), "z+1");
    }

    #[test]
    fn canonical_display_roundtrip() {
        let v = rf("(z^2-3*z+1)/(z^2-2*z+1)");
        assert_eq!(rf(&v.to_string()), v);
        let w = rf("(z-1)/(2*z)");
        assert_eq!(w.to_string(), "(z-1)/(2*z)");
        assert_eq!(rf("z*(2-z)/(z-1)^2").to_string(), "(-z^2+2*z)/(z^2-2*z+1)");
    }

    #[test]
    fn sqrt_recovers_squares() {
        let v = rf("(z-1)^2/(4*z^2)");
        let s = v.sqrt().unwrap();
        assert_eq!(&s * &s, v);
        assert!(rf("z").sqrt().is_none());
        assert!(rf("(z-1)/z").sqrt().is_none());
    }

    #[test]
    fn division_by_zero_reported() {
        assert_eq!(
            rf("z").div(&RationalFunction::zero()),
            Err(FieldError::DivisionByZero)
        );
    }
}
