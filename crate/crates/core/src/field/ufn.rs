//! The tower Q(z)(u): rational functions in u with Q(z) coefficients.
//!
//! The central-element generating functions live here; residue extraction
//! at simple poles is the operation everything downstream leans on.

use super::{FieldError, RationalFunction};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Dense polynomial in u over Q(z).
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct UPoly {
    coeffs: Vec<RationalFunction>,
}

impl UPoly {
    pub fn zero() -> Self {
        UPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        UPoly::constant(RationalFunction::one())
    }

    pub fn constant(c: RationalFunction) -> Self {
        let mut p = UPoly { coeffs: vec![c] };
        p.normalize();
        p
    }

    pub fn var() -> Self {
        UPoly {
            coeffs: vec![RationalFunction::zero(), RationalFunction::one()],
        }
    }

    /// u + a
    pub fn linear(a: RationalFunction) -> Self {
        UPoly::from_coeffs(vec![a, RationalFunction::one()])
    }

    pub fn from_coeffs(coeffs: Vec<RationalFunction>) -> Self {
        let mut p = UPoly { coeffs };
        p.normalize();
        p
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

    pub fn coeff(&self, e: usize) -> RationalFunction {
        self.coeffs
            .get(e)
            .cloned()
            .unwrap_or_else(RationalFunction::zero)
    }

    pub fn leading(&self) -> RationalFunction {
        self.coeffs
            .last()
            .cloned()
            .unwrap_or_else(RationalFunction::zero)
    }

    pub fn eval(&self, x: &RationalFunction) -> RationalFunction {
        let mut acc = RationalFunction::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn scale(&self, c: &RationalFunction) -> UPoly {
        if c.is_zero() {
            return UPoly::zero();
        }
        UPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn div_rem(&self, d: &UPoly) -> (UPoly, UPoly) {
        assert!(!d.is_zero(), "u-polynomial division by zero");
        if self.degree() < d.degree() || self.is_zero() {
            return (UPoly::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let dl = d.leading();
        let dd = d.degree();
        let mut quot = vec![RationalFunction::zero(); self.degree() - dd + 1];
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let q = rem[i].div(&dl).expect("leading coeff nonzero");
            quot[i - dd] = q.clone();
            for (j, dc) in d.coeffs.iter().enumerate() {
                let t = dc * &q;
                rem[i - dd + j] = &rem[i - dd + j] - &t;
            }
        }
        (UPoly::from_coeffs(quot), UPoly::from_coeffs(rem))
    }

    pub fn div_exact(&self, d: &UPoly) -> UPoly {
        let (q, r) = self.div_rem(d);
        assert!(r.is_zero(), "inexact u-polynomial division");
        q
    }

    /// Monic gcd; coefficients live in the field Q(z), plain Euclid suffices.
    pub fn gcd(&self, other: &UPoly) -> UPoly {
        let mut a = self.monic();
        let mut b = other.monic();
        if a.is_zero() {
            return b;
        }
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    pub fn monic(&self) -> UPoly {
        if self.is_zero() {
            return UPoly::zero();
        }
        let inv = self.leading().inverse().unwrap();
        self.scale(&inv)
    }

    pub fn root_multiplicity(&self, a: &RationalFunction) -> usize {
        let lin = UPoly::from_coeffs(vec![-a, RationalFunction::one()]);
        let mut p = self.clone();
        let mut m = 0;
        while !p.is_zero() && p.eval(a).is_zero() {
            p = p.div_exact(&lin);
            m += 1;
        }
        m
    }
}

impl Add for &UPoly {
    type Output = UPoly;
    fn add(self, rhs: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UPoly::from_coeffs((0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect())
    }
}

impl Sub for &UPoly {
    type Output = UPoly;
    fn sub(self, rhs: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UPoly::from_coeffs((0..n).map(|i| &self.coeff(i) - &rhs.coeff(i)).collect())
    }
}

impl Mul for &UPoly {
    type Output = UPoly;
    fn mul(self, rhs: &UPoly) -> UPoly {
        if self.is_zero() || rhs.is_zero() {
            return UPoly::zero();
        }
        let mut coeffs = vec![RationalFunction::zero(); self.degree() + rhs.degree() + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        UPoly::from_coeffs(coeffs)
    }
}

impl Neg for &UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        UPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

/// An element of Q(z)(u) in canonical form: monic denominator in u,
/// gcd(num, den) = 1 over Q(z)[u].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct URationalFunction {
    num: UPoly,
    den: UPoly,
}

impl URationalFunction {
    pub fn new(num: UPoly, den: UPoly) -> Result<Self, FieldError> {
        if den.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: UPoly, den: UPoly) -> Self {
        if num.is_zero() {
            return URationalFunction {
                num: UPoly::zero(),
                den: UPoly::one(),
            };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g), den.div_exact(&g))
        };
        let inv = den.leading().inverse().unwrap();
        URationalFunction {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn from_upoly(p: UPoly) -> Self {
        URationalFunction {
            num: p,
            den: UPoly::one(),
        }
    }

    pub fn from_ratfn(c: RationalFunction) -> Self {
        Self::from_upoly(UPoly::constant(c))
    }

    pub fn zero() -> Self {
        Self::from_upoly(UPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_upoly(UPoly::one())
    }

    pub fn u() -> Self {
        Self::from_upoly(UPoly::var())
    }

    pub fn num(&self) -> &UPoly {
        &self.num
    }

    pub fn den(&self) -> &UPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn div(&self, rhs: &Self) -> Result<Self, FieldError> {
        if rhs.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(Self::reduced(&self.num * &rhs.den, &self.den * &rhs.num))
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Self::reduced(&self.num * &rhs.num, &self.den * &rhs.den)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self::reduced(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Self::reduced(
            &(&self.num * &rhs.den) - &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }

    /// Exact substitution u := a. Errors at a pole.
    pub fn evaluate_u(&self, a: &RationalFunction) -> Result<RationalFunction, FieldError> {
        let d = self.den.eval(a);
        if d.is_zero() {
            return Err(FieldError::PoleAtPoint(a.to_string()));
        }
        self.num.eval(a).div(&d)
    }

    /// Residue at u = a.
    ///
    /// Returns 0 at a regular point, the residue at a simple pole, and an
    /// error at a pole of higher order.
    pub fn residue_at(&self, a: &RationalFunction) -> Result<RationalFunction, FieldError> {
        let m = self.den.root_multiplicity(a);
        match m {
            0 => Ok(RationalFunction::zero()),
            1 => {
                let lin = UPoly::linear(-a);
                let reduced_den = self.den.div_exact(&lin);
                self.num.eval(a).div(&reduced_den.eval(a))
            }
            order => Err(FieldError::HigherOrderPole {
                order,
                at: a.to_string(),
            }),
        }
    }

    /// Splits the denominator into linear factors `u - a` drawn from the
    /// candidate list, returning the poles with multiplicities. Fails if a
    /// non-constant factor remains, meaning a pole outside the candidates.
    pub fn poles_among(
        &self,
        candidates: &[RationalFunction],
    ) -> Option<Vec<(RationalFunction, usize)>> {
        let mut den = self.den.clone();
        let mut poles: Vec<(RationalFunction, usize)> = vec![];
        for a in candidates {
            if poles.iter().any(|(p, _)| p == a) {
                continue;
            }
            let lin = UPoly::linear(-a);
            let mut mult = 0;
            loop {
                let (q, r) = den.div_rem(&lin);
                if r.is_zero() {
                    den = q;
                    mult += 1;
                } else {
                    break;
                }
            }
            if mult > 0 {
                poles.push((a.clone(), mult));
            }
        }
        if den.degree() == 0 {
            Some(poles)
        } else {
            None
        }
    }

    /// Laurent coefficients at u = infinity: returns `(e, c)` with
    /// `f = sum_{m >= 0} c[m] u^{e - m}` up to `n_terms` coefficients.
    pub fn series_at_infinity(&self, n_terms: usize) -> (i64, Vec<RationalFunction>) {
        if self.is_zero() {
            return (0, vec![RationalFunction::zero(); n_terms]);
        }
        let nd = self.num.degree();
        let dd = self.den.degree();
        let e = nd as i64 - dd as i64;
        // reversed power series division
        let num_rev: Vec<RationalFunction> = (0..=nd).map(|i| self.num.coeff(nd - i)).collect();
        let den_rev: Vec<RationalFunction> = (0..=dd).map(|i| self.den.coeff(dd - i)).collect();
        let inv0 = den_rev[0].inverse().unwrap();
        let mut out = Vec::with_capacity(n_terms);
        let mut rem: Vec<RationalFunction> = num_rev;
        for m in 0..n_terms {
            let c = if m < rem.len() {
                &rem[m] * &inv0
            } else {
                RationalFunction::zero()
            };
            if !c.is_zero() {
                if rem.len() < m + den_rev.len() {
                    rem.resize(m + den_rev.len(), RationalFunction::zero());
                }
                for (j, d) in den_rev.iter().enumerate() {
                    let t = d * &c;
                    rem[m + j] = &rem[m + j] - &t;
                }
            }
            out.push(c);
        }
        (e, out)
    }

    /// Coefficient of u^{-j} in the expansion at infinity.
    pub fn coeff_at_infinity(&self, j: i64) -> RationalFunction {
        let (e, _) = self.series_at_infinity(1);
        if self.is_zero() || j + e < 0 {
            return RationalFunction::zero();
        }
        let idx = (e + j) as usize;
        let (_, coeffs) = self.series_at_infinity(idx + 1);
        coeffs[idx].clone()
    }
}

impl fmt::Display for URationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn upoly(f: &mut fmt::Formatter<'_>, p: &UPoly) -> fmt::Result {
            if p.is_zero() {
                return write!(f, "0");
            }
            let mut first = true;
            for e in (0..=p.degree()).rev() {
                let c = p.coeff(e);
                if c.is_zero() {
                    continue;
                }
                let cs = c.to_string();
                let minus_one = (&c + &RationalFunction::one()).is_zero();
                if !first && !(minus_one && e > 0) {
                    write!(f, "+")?;
                }
                first = false;
                let simple = c.is_constant() || (c.num().is_constant() || c.den().is_one());
                match e {
                    0 => write!(f, "{cs}")?,
                    _ => {
                        if c.is_one() {
                            // bare power
                        } else if minus_one {
                            write!(f, "-")?;
                        } else if simple && !cs.contains(['+', '-']) {
                            write!(f, "{cs}*")?;
                        } else {
                            write!(f, "({cs})*")?;
                        }
                        if e == 1 {
                            write!(f, "u")?;
                        } else {
                            write!(f, "u^{e}")?;
                        }
                    }
                }
            }
            Ok(())
        }
        write!(f, "(")?;
        upoly(f, &self.num)?;
        write!(f, ")/(")?;
        upoly(f, &self.den)?;
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::parse_uratfn;

    fn uf(s: &str) -> URationalFunction {
        parse_uratfn(s).unwrap()
    }

    fn rf(s: &str) -> RationalFunction {
        crate::field::parse_ratfn(s).unwrap()
    }

    #[test]
    fn evaluate_examples() {
        // (u+1-z/2)/(u+z/2) at u = z/2 is 1/z
        let f = uf("(u+1-z/2)/(u+z/2)");
        assert_eq!(f.evaluate_u(&rf("z/2")).unwrap(), rf("1/z"));
        // u at 0 is 0
        assert!(URationalFunction::u()
            .evaluate_u(&RationalFunction::zero())
            .unwrap()
            .is_zero());
        // 1/(u-z) at z is a pole
        let g = uf("1/(u-z)");
        assert!(matches!(
            g.evaluate_u(&rf("z")),
            Err(FieldError::PoleAtPoint(_))
        ));
    }

    #[test]
    fn residue_examples() {
        // 1/(u-a): residue 1
        let f = uf("1/(u-z)");
        assert!(f.residue_at(&rf("z")).unwrap().is_one());
        // regular point: 0
        assert!(f.residue_at(&rf("z+1")).unwrap().is_zero());
        // double pole: error
        let g = uf("1/(u-z)^2");
        assert!(matches!(
            g.residue_at(&rf("z")),
            Err(FieldError::HigherOrderPole { order: 2, .. })
        ));
    }

    #[test]
    fn residues_of_initial_series() {
        // Res_{u=-z/2} of -(u+1+z/2)(u-z/2)/(u+z/2) = z
        let q_half = uf("-(u+1+z/2)*(u-z/2)/(u+z/2)");
        assert_eq!(q_half.residue_at(&rf("-z/2")).unwrap(), rf("z"));
        // Res_{u=z/2} of (u+1-z/2)/((u+z/2)(u-z/2)) = 1/z
        let q_one = uf("(u+1-z/2)/((u+z/2)*(u-z/2))");
        assert_eq!(q_one.residue_at(&rf("z/2")).unwrap(), rf("1/z"));
        // and at -z/2 it is (z-1)/z
        assert_eq!(q_one.residue_at(&rf("-z/2")).unwrap(), rf("(z-1)/z"));
    }

    #[test]
    fn series_at_infinity_of_geometric() {
        // z/(u+z/2) = z u^{-1} (1 - (z/2)u^{-1} + (z/2)^2 u^{-2} - ...)
        let f = uf("z/(u+z/2)");
        let (e, c) = f.series_at_infinity(4);
        assert_eq!(e, -1);
        assert_eq!(c[0], rf("z"));
        assert_eq!(c[1], rf("-z^2/2"));
        assert_eq!(c[2], rf("z^3/4"));
        assert_eq!(c[3], rf("-z^4/8"));
        assert_eq!(f.coeff_at_infinity(2), rf("-z^2/2"));
    }

    #[test]
    fn global_residue_sum_is_zero() {
        // residues of a proper fraction with simple poles sum to minus the
        // residue at infinity; for num degree <= den degree - 2 the sum is 0.
        let f = uf("(u+z)/((u-1)*(u-z)*(u+z^2))");
        let cands = [rf("1"), rf("z"), rf("-z^2"), rf("z+1")];
        let poles = f.poles_among(&cands).unwrap();
        assert_eq!(poles.len(), 3);
        let mut sum = RationalFunction::zero();
        for (a, m) in poles {
            assert_eq!(m, 1);
            sum = &sum + &f.residue_at(&a).unwrap();
        }
        assert!(sum.is_zero());
    }
}
