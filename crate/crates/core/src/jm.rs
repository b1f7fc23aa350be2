//! Jucys-Murphy elements by their defining recursions, the interchange
//! elements, central sums, and the exhaustive identity verifier.
//!
//! Elements are indexed by half-integer levels and live in a fixed ambient
//! diagram algebra; the tables memoize per ambient size.

use crate::diagram::{generator, AlgebraElement, GenKind};
use crate::field::RationalFunction;
use crate::level::LevelIndex;
use crate::report::Report;
use std::collections::BTreeMap;

/// Memoized L and sigma elements in the ambient algebra on `n` strands.
///
/// `l(j)` is defined for `j <= n` (as a half-integer level); `sigma(j)` for
/// whole `j <= n` and half `j <= n - 1/2`.
pub struct JmTables {
    n: usize,
    l: BTreeMap<u32, AlgebraElement>,
    sig: BTreeMap<u32, AlgebraElement>,
}

impl JmTables {
    pub fn new(n: usize) -> Self {
        let mut t = JmTables {
            n,
            l: BTreeMap::new(),
            sig: BTreeMap::new(),
        };
        t.build();
        t
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    fn s(&self, i: usize) -> AlgebraElement {
        generator(GenKind::S, i, self.n)
    }

    fn p(&self, i: usize) -> AlgebraElement {
        generator(GenKind::PWhole, i, self.n)
    }

    fn ph(&self, i: usize) -> AlgebraElement {
        generator(GenKind::PHalf, i, self.n)
    }

    fn unit(&self) -> AlgebraElement {
        AlgebraElement::unit(self.n, false)
    }

    fn build(&mut self) {
        let n = self.n;
        // base cases: L_0 = 0, L_{1/2} = 0, L_1 = p_1, sigma_{1/2} = 1,
        // sigma_1 = 1, sigma_{1+1/2} = 1, sigma_2 = s_1
        self.l.insert(0, AlgebraElement::zero(n, false));
        self.l.insert(1, AlgebraElement::zero(n, false));
        self.l.insert(2, self.p(1));
        self.sig.insert(1, self.unit());
        self.sig.insert(2, self.unit());
        self.sig.insert(3, self.unit());
        if n >= 2 {
            self.sig.insert(4, self.s(1));
        }
        // interleave the four recursions upward; each level only needs
        // strictly lower levels
        for i in 1..n {
            if i >= 2 {
                self.sig.insert(2 * i as u32 + 1, self.sigma_half_rec(i));
            }
            self.l.insert(2 * i as u32 + 1, self.l_half_rec(i));
            if i >= 2 {
                self.sig.insert(2 * i as u32 + 2, self.sigma_whole_rec(i));
            }
            self.l.insert(2 * i as u32 + 2, self.l_whole_rec(i));
        }
    }

    /// sigma_{i+1/2} for i >= 2.
    fn sigma_half_rec(&self, i: usize) -> AlgebraElement {
        let prev = &self.sig[&(2 * i as u32 - 1)]; // sigma_{i-1/2}
        let l_im1 = &self.l[&(2 * (i as u32 - 1))]; // L_{i-1}
        let (sm1, si) = (self.s(i - 1), self.s(i));
        let (phm, p_i, php) = (self.ph(i - 1), self.p(i), self.ph(i));
        let t1 = sm1.mul(&si).mul(prev).mul(&si).mul(&sm1);
        let t2 = phm.mul(l_im1).mul(&si).mul(&phm).mul(&si);
        let t3 = si.mul(&phm).mul(l_im1).mul(&si).mul(&phm);
        let t4 = phm.mul(l_im1).mul(&sm1).mul(&php).mul(&p_i).mul(&phm);
        let t5 = si
            .mul(&phm)
            .mul(&p_i)
            .mul(&php)
            .mul(&sm1)
            .mul(l_im1)
            .mul(&phm)
            .mul(&si);
        t1.add(&t2).add(&t3).sub(&t4).sub(&t5)
    }

    /// sigma_{i+1} for i >= 2.
    fn sigma_whole_rec(&self, i: usize) -> AlgebraElement {
        let prev = &self.sig[&(2 * i as u32)]; // sigma_i
        let l_im1 = &self.l[&(2 * (i as u32 - 1))];
        let (sm1, si) = (self.s(i - 1), self.s(i));
        let (phm, p_i, php) = (self.ph(i - 1), self.p(i), self.ph(i));
        let t1 = sm1.mul(&si).mul(prev).mul(&si).mul(&sm1);
        let t2 = si.mul(&phm).mul(l_im1).mul(&si).mul(&phm).mul(&si);
        let t3 = phm.mul(l_im1).mul(&si).mul(&phm);
        let t4 = si
            .mul(&phm)
            .mul(l_im1)
            .mul(&sm1)
            .mul(&php)
            .mul(&p_i)
            .mul(&phm);
        let t5 = phm
            .mul(&p_i)
            .mul(&php)
            .mul(&sm1)
            .mul(l_im1)
            .mul(&phm)
            .mul(&si);
        t1.add(&t2).add(&t3).sub(&t4).sub(&t5)
    }

    /// L_{i+1/2} for i >= 1.
    fn l_half_rec(&self, i: usize) -> AlgebraElement {
        let l_i = &self.l[&(2 * i as u32)];
        let l_imh = &self.l[&(2 * i as u32 - 1)];
        let sig_h = &self.sig[&(2 * i as u32 + 1)];
        let (si, p_i, php) = (self.s(i), self.p(i), self.ph(i));
        l_i.mul(&php)
            .scale(&-&RationalFunction::one())
            .sub(&php.mul(l_i))
            .add(&php.mul(l_i).mul(&p_i).mul(&php))
            .add(&si.mul(l_imh).mul(&si))
            .add(sig_h)
    }

    /// L_{i+1} for i >= 1.
    fn l_whole_rec(&self, i: usize) -> AlgebraElement {
        let l_i = &self.l[&(2 * i as u32)];
        let sig_w = &self.sig[&(2 * i as u32 + 2)];
        let (si, pip1, php) = (self.s(i), self.p(i + 1), self.ph(i));
        si.mul(l_i)
            .mul(&php)
            .scale(&-&RationalFunction::one())
            .sub(&php.mul(l_i).mul(&si))
            .add(&php.mul(l_i).mul(&pip1).mul(&php))
            .add(&si.mul(l_i).mul(&si))
            .add(sig_w)
    }

    /// `L` at a half-integer level, embedded in the ambient algebra.
    pub fn l(&self, level: LevelIndex) -> &AlgebraElement {
        self.l
            .get(&level.twice)
            .unwrap_or_else(|| panic!("L at level {level} exceeds ambient {}", self.n))
    }

    /// Interchange element at a half-integer level (whole levels >= 1,
    /// half levels up to n - 1/2).
    pub fn sigma(&self, level: LevelIndex) -> &AlgebraElement {
        self.sig
            .get(&level.twice)
            .unwrap_or_else(|| panic!("sigma at level {level} exceeds ambient {}", self.n))
    }

    /// Central sum `z_level = L_{1/2} + L_1 + ... + L_level`.
    pub fn central(&self, level: LevelIndex) -> AlgebraElement {
        let mut acc = AlgebraElement::zero(self.n, false);
        for tw in 1..=level.twice {
            acc = acc.add(&self.l[&tw]);
        }
        acc
    }

    /// `x_level = L_level - z/2`.
    pub fn normalized_x(&self, level: LevelIndex) -> AlgebraElement {
        self.l(level).add_scalar(&-&RationalFunction::z_half())
    }

    /// Coxeter generator expressed through the interchange elements:
    /// `s_1 = sigma_2`, `s_l = sigma_{l+1/2} sigma_{l+1}` for l >= 2.
    pub fn coxeter_via_sigma(&self, l: usize) -> AlgebraElement {
        if l == 1 {
            self.sigma(LevelIndex::whole(2)).clone()
        } else {
            self.sigma(LevelIndex::half(l as u32))
                .mul(self.sigma(LevelIndex::whole(l as u32 + 1)))
        }
    }
}

/// Verifies the collected interchange/JM identities exhaustively for all
/// valid indices at ambient size `k`. Returns one check per identity/index.
pub fn verify_jm_identities(k: usize) -> Report {
    let mut r = Report::new(format!("jm-identities k={k}"));
    let t = JmTables::new(k);
    let n = k;
    let unit = AlgebraElement::unit(n, false);
    let z = RationalFunction::z();
    let s = |i: usize| generator(GenKind::S, i, n);
    let p = |i: usize| generator(GenKind::PWhole, i, n);
    let ph = |i: usize| generator(GenKind::PHalf, i, n);
    let lw = |i: usize| t.l(LevelIndex::whole(i as u32)).clone();
    let lh = |i: usize| t.l(LevelIndex::half(i as u32)).clone();
    let sw = |i: usize| t.sigma(LevelIndex::whole(i as u32)).clone();
    let sh = |i: usize| t.sigma(LevelIndex::half(i as u32)).clone();

    // items 1-17 of the collected identities; index ranges bounded by which
    // generators exist in the ambient algebra
    for i in 1..=n {
        // (1) membership: sigma_{i+1/2} in A_{i+1/2}, sigma_{i+1} in A_{i+1}
        if i + 1 <= n {
            r.push(
                "acr-1",
                format!("sigma_{{{i}+1/2}} in A_{{{i}+1/2}}, sigma_{} in A_{}", i + 1, i + 1),
                sh(i).is_in_level(i + 1, true) && sw(i + 1).is_in_level(i + 1, false),
            );
            // (2) star invariance of sigma
            r.push(
                "acr-2",
                format!("sigma star-invariant at i={i}"),
                sh(i).star() == sh(i) && sw(i + 1).star() == sw(i + 1),
            );
            // (3) membership of L
            r.push(
                "acr-3",
                format!("L_{{{i}+1/2}} in A_{{{i}+1/2}}, L_{} in A_{}", i + 1, i + 1),
                lh(i).is_in_level(i + 1, true) && lw(i + 1).is_in_level(i + 1, false),
            );
            // (4) self-adjointness; the printed text asserts
            // (L_{i+1})* = sigma_{i+1}, which the verifier reports separately
            r.push(
                "acr-4",
                format!("L self-adjoint at i={i}"),
                lh(i).star() == lh(i) && lw(i + 1).star() == lw(i + 1),
            );
            let printed = lw(i + 1).star() == sw(i + 1);
            r.push_known(
                "acr-4-printed",
                format!("printed reading (L_{})* = sigma_{} is {}", i + 1, i + 1, printed),
                "tested under the self-adjoint reading; printed reading reported",
            );
        }
        // (5) s_{i+1} sigma_{i+1} p_{i+3/2} = p_{i+1/2} s_{i+1} sigma_{i+1}
        if i + 2 <= n {
            let lhs = s(i + 1).mul(&sw(i + 1)).mul(&ph(i + 1));
            let rhs = ph(i).mul(&s(i + 1)).mul(&sw(i + 1));
            r.push("acr-5", format!("i={i}"), lhs == rhs);
        }
        if i + 1 <= n {
            // (6) sigma_{i+1} p_i p_{i+1/2} = s_i L_i p_{i+1/2}
            let lhs = sw(i + 1).mul(&p(i)).mul(&ph(i));
            let rhs = s(i).mul(&lw(i)).mul(&ph(i));
            r.push("acr-6", format!("i={i}"), lhs == rhs);
            // (7) sigma_{i+1} p_{i+1} p_{i+1/2} = L_i p_{i+1/2}
            let lhs = sw(i + 1).mul(&p(i + 1)).mul(&ph(i));
            let rhs = lw(i).mul(&ph(i));
            r.push("acr-7", format!("i={i}"), lhs == rhs);
            // (8) sigma_{i+1/2} sigma_{i+1} = sigma_{i+1} sigma_{i+1/2} = s_i
            // and both square to one
            let a = sh(i).mul(&sw(i + 1));
            let b = sw(i + 1).mul(&sh(i));
            r.push(
                "acr-8",
                format!("i={i}"),
                a == s(i)
                    && b == s(i)
                    && sh(i).mul(&sh(i)) == unit
                    && sw(i + 1).mul(&sw(i + 1)) == unit,
            );
            // (9) L_{i+1} commutes with A_{i+1/2}; sigma_{i+1} with A_{i-1/2}
            let li1 = lw(i + 1);
            let mut ok = true;
            for g in subalgebra_generators(n, 2 * (i as u32 + 1) - 1) {
                ok &= li1.mul(&g) == g.mul(&li1);
            }
            if i >= 1 {
                let sg = sw(i + 1);
                if 2 * i >= 1 {
                    for g in subalgebra_generators(n, (2 * i as u32).saturating_sub(1)) {
                        ok &= sg.mul(&g) == g.mul(&sg);
                    }
                }
            }
            r.push("acr-9", format!("i={i}"), ok);
        }
        // (10) L_{i+1/2} commutes with A_i; sigma_{i+1/2} with A_{i-1}
        if i + 1 <= n {
            let mut ok = true;
            for g in subalgebra_generators(n, 2 * i as u32) {
                ok &= lh(i).mul(&g) == g.mul(&lh(i));
            }
            for g in subalgebra_generators(n, 2 * (i as u32 - 1)) {
                ok &= sh(i).mul(&g) == g.mul(&sh(i));
            }
            r.push("acr-10", format!("i={i}"), ok);
            // (11) (L_{i+1/2} + L_{i+1}) p_{i+1} = p_{i+1} (...) = z p_{i+1}
            let sum = lh(i).add(&lw(i + 1));
            let lhs = sum.mul(&p(i + 1));
            let rhs = p(i + 1).mul(&sum);
            let want = p(i + 1).scale(&z);
            r.push("acr-11", format!("i={i}"), lhs == want && rhs == want);
            // (12) (L_i + L_{i+1/2}) p_{i+1/2} = p_{i+1/2} (...) = z p_{i+1/2}
            let sum = lw(i).add(&lh(i));
            let lhs = sum.mul(&ph(i));
            let rhs = ph(i).mul(&sum);
            let want = ph(i).scale(&z);
            r.push("acr-12", format!("i={i}"), lhs == want && rhs == want);
        }
        // (13) z_i central in A_i
        {
            let zi = t.central(LevelIndex::whole(i as u32));
            let mut ok = true;
            for g in subalgebra_generators(n, 2 * i as u32) {
                ok &= zi.mul(&g) == g.mul(&zi);
            }
            r.push("acr-13", format!("i={i}"), ok);
        }
        // (14) z_{i+1/2} central in A_{i+1/2}
        if i + 1 <= n {
            let zi = t.central(LevelIndex::half(i as u32));
            let mut ok = true;
            for g in subalgebra_generators(n, 2 * i as u32 + 1) {
                ok &= zi.mul(&g) == g.mul(&zi);
            }
            r.push("acr-14", format!("i={i}"), ok);
        }
        if i + 1 <= n {
            // (15) p_{i+1} sigma_{i+1} p_{i+1} = L_i p_{i+1}
            let lhs = p(i + 1).mul(&sw(i + 1)).mul(&p(i + 1));
            let rhs = lw(i).mul(&p(i + 1));
            r.push("acr-15", format!("i={i}"), lhs == rhs);
            // (16) p_{i+1} sigma_{i+1/2} p_{i+1} = (z - L_{i-1/2}) p_{i+1}
            let lhs = p(i + 1).mul(&sh(i)).mul(&p(i + 1));
            let rhs = lh(i - 1)
                .scale(&-&RationalFunction::one())
                .add_scalar(&z)
                .mul(&p(i + 1));
            r.push("acr-16", format!("i={i}"), lhs == rhs);
        }
        // (17) p_{i+3/2} sigma_{i+1} p_{i+3/2} = p_{i+1/2} p_{i+3/2}
        if i + 2 <= n {
            let lhs = ph(i + 1).mul(&sw(i + 1)).mul(&ph(i + 1));
            let rhs = ph(i).mul(&ph(i + 1));
            r.push("acr-17", format!("i={i}"), lhs == rhs);
        }
    }

    // the four recursion restatements
    for i in 1..n {
        // (t0-1) sigma_{i+1} L_{i+1} - L_i sigma_{i+1}
        //      = -L_i p_{i+1/2} - p_{i+1/2} p_{i+1} + p_{i+1/2} L_i p_{i+1} p_{i+1/2} + 1
        let lhs = sw(i + 1).mul(&lw(i + 1)).sub(&lw(i).mul(&sw(i + 1)));
        let rhs = lw(i)
            .mul(&ph(i))
            .scale(&-&RationalFunction::one())
            .sub(&ph(i).mul(&p(i + 1)))
            .add(&ph(i).mul(&lw(i)).mul(&p(i + 1)).mul(&ph(i)))
            .add(&unit);
        r.push("t0-1", format!("i={i}"), lhs == rhs);
        // (t0-2) sigma_{i+1/2} L_{i+1/2} - L_{i-1/2} sigma_{i+1/2}
        //      = -p_i p_{i+1/2} - p_{i+1/2} L_i + (z - L_{i-1/2}) p_{i+1/2} + 1
        let lhs = sh(i).mul(&lh(i)).sub(&lh(i - 1).mul(&sh(i)));
        let rhs = p(i)
            .mul(&ph(i))
            .scale(&-&RationalFunction::one())
            .sub(&ph(i).mul(&lw(i)))
            .add(
                &lh(i - 1)
                    .scale(&-&RationalFunction::one())
                    .add_scalar(&z)
                    .mul(&ph(i)),
            )
            .add(&unit);
        r.push("t0-2", format!("i={i}"), lhs == rhs);
        // (t0-3) L_{i+1} = -p_{i+1} p_{i+1/2} - p_{i+1/2} p_{i+1}
        //      + p_{i+1/2} L_i p_{i+1} p_{i+1/2} + sigma_{i+1} L_i sigma_{i+1} + sigma_{i+1}
        let rhs = p(i + 1)
            .mul(&ph(i))
            .scale(&-&RationalFunction::one())
            .sub(&ph(i).mul(&p(i + 1)))
            .add(&ph(i).mul(&lw(i)).mul(&p(i + 1)).mul(&ph(i)))
            .add(&sw(i + 1).mul(&lw(i)).mul(&sw(i + 1)))
            .add(&sw(i + 1));
        r.push("t0-3", format!("i={i}"), lw(i + 1) == rhs);
        // (t0-4) as derivable from (t0-2) by left-multiplying with
        // sigma_{i+1/2} (which fixes p_{i+1/2} and commutes with the level
        // i-1/2 subalgebra):
        // L_{i+1/2} = -L_i p_{i+1/2} - p_{i+1/2} L_i + (z - L_{i-1/2}) p_{i+1/2}
        //           + sigma_{i+1/2} L_{i-1/2} sigma_{i+1/2} + sigma_{i+1/2}
        let rhs = lw(i)
            .mul(&ph(i))
            .scale(&-&RationalFunction::one())
            .sub(&ph(i).mul(&lw(i)))
            .add(
                &lh(i - 1)
                    .scale(&-&RationalFunction::one())
                    .add_scalar(&z)
                    .mul(&ph(i)),
            )
            .add(&sh(i).mul(&lh(i - 1)).mul(&sh(i)))
            .add(&sh(i));
        r.push("t0-4", format!("i={i}"), lh(i) == rhs);
        // the printed right-hand side replaces the L-terms by contractions
        // and conjugates L_i instead of L_{i-1/2}; its truth value is
        // reported, not asserted
        let rhs_printed = p(i)
            .mul(&ph(i))
            .scale(&-&RationalFunction::one())
            .sub(&ph(i).mul(&p(i)))
            .add(
                &lh(i - 1)
                    .scale(&-&RationalFunction::one())
                    .add_scalar(&z)
                    .mul(&ph(i)),
            )
            .add(&sh(i).mul(&lw(i)).mul(&sh(i)))
            .add(&sh(i));
        let printed_holds = lh(i) == rhs_printed;
        r.push_known(
            "t0-4-printed",
            format!("printed form at i={i} is {printed_holds}"),
            "asserted under the derived reading; printed reading reported",
        );
    }
    r
}

/// Generators of the subalgebra at a half-integer level (twice-encoded),
/// embedded in the ambient algebra on n strands.
///
/// Level m: s_1..s_{m-1}, p_1..p_m, p_{1+1/2}..p_{m-1/2}.
/// Level m+1/2: additionally p_{m+1/2}.
pub fn subalgebra_generators(n: usize, level_twice: u32) -> Vec<AlgebraElement> {
    let mut out = vec![];
    let m = (level_twice / 2) as usize;
    let half = level_twice % 2 == 1;
    for i in 1..m {
        out.push(generator(GenKind::S, i, n));
    }
    for i in 1..=m {
        out.push(generator(GenKind::PWhole, i, n));
    }
    let ph_max = if half { m } else { m.saturating_sub(1) };
    for i in 1..=ph_max {
        out.push(generator(GenKind::PHalf, i, n));
    }
    out
}

/// Presentation relation checking over any carrier that can multiply,
/// compare, and provide the generators. Used both for the diagram algebra
/// and for representing matrices.
pub trait PresentationCarrier {
    type Elt: Clone + PartialEq;
    fn unit(&self) -> Self::Elt;
    fn zero_like(&self) -> Option<Self::Elt>;
    /// Generators; None when the index is out of range for the carrier.
    fn s(&self, i: usize) -> Option<Self::Elt>;
    fn p(&self, i: usize) -> Option<Self::Elt>;
    fn ph(&self, i: usize) -> Option<Self::Elt>;
    fn sigma_w(&self, i: usize) -> Option<Self::Elt>;
    fn sigma_h(&self, i: usize) -> Option<Self::Elt>;
    fn mul(&self, a: &Self::Elt, b: &Self::Elt) -> Self::Elt;
    fn add(&self, a: &Self::Elt, b: &Self::Elt) -> Self::Elt;
    fn scale_z(&self, a: &Self::Elt) -> Self::Elt;
    fn eq(&self, a: &Self::Elt, b: &Self::Elt) -> bool;
}

/// All relations of the contraction/transposition presentation
/// (Coxeter, idempotent, commutation, contraction groups).
pub fn check_hr_relations<C: PresentationCarrier>(c: &C, tag: &str) -> Report {
    let mut r = Report::new(format!("hr-presentation {tag}"));
    let mut idx = 1usize;
    // collect available generators
    let mut smax = 0;
    while c.s(smax + 1).is_some() {
        smax += 1;
    }
    let mut pmax = 0;
    while c.p(pmax + 1).is_some() {
        pmax += 1;
    }
    let mut phmax = 0;
    while c.ph(phmax + 1).is_some() {
        phmax += 1;
    }
    let unit = c.unit();
    let mut check = |r: &mut Report, name: String, a: C::Elt, b: C::Elt| {
        r.push(format!("hr-{idx}"), name, c.eq(&a, &b));
        idx += 1;
    };
    // (1) Coxeter
    for i in 1..=smax {
        let si = c.s(i).unwrap();
        check(&mut r, format!("s_{i}^2=1"), c.mul(&si, &si), unit.clone());
        for j in (i + 2)..=smax {
            let sj = c.s(j).unwrap();
            check(
                &mut r,
                format!("s_{i}s_{j}=s_{j}s_{i}"),
                c.mul(&si, &sj),
                c.mul(&sj, &si),
            );
        }
        if i + 1 <= smax {
            let sj = c.s(i + 1).unwrap();
            check(
                &mut r,
                format!("braid s_{i}"),
                c.mul(&c.mul(&si, &sj), &si),
                c.mul(&c.mul(&sj, &si), &sj),
            );
        }
    }
    // (2) idempotent relations
    for i in 1..=pmax {
        let pi = c.p(i).unwrap();
        check(
            &mut r,
            format!("p_{i}^2=zp_{i}"),
            c.mul(&pi, &pi),
            c.scale_z(&pi),
        );
    }
    for i in 1..=phmax {
        let phi = c.ph(i).unwrap();
        check(
            &mut r,
            format!("p_{{{i}+1/2}}^2=p_{{{i}+1/2}}"),
            c.mul(&phi, &phi),
            phi.clone(),
        );
        if let Some(si) = c.s(i) {
            check(
                &mut r,
                format!("s_{i}p_{{{i}+1/2}}=p_{{{i}+1/2}}"),
                c.mul(&si, &phi),
                phi.clone(),
            );
            check(
                &mut r,
                format!("p_{{{i}+1/2}}s_{i}=p_{{{i}+1/2}}"),
                c.mul(&phi, &si),
                phi.clone(),
            );
        }
    }
    for i in 1..=smax.min(pmax.saturating_sub(1)) {
        let si = c.s(i).unwrap();
        let pp = c.mul(&c.p(i).unwrap(), &c.p(i + 1).unwrap());
        check(
            &mut r,
            format!("s_{i}p_{i}p_{}=p_{i}p_{}", i + 1, i + 1),
            c.mul(&si, &pp),
            pp.clone(),
        );
        check(
            &mut r,
            format!("p_{i}p_{}s_{i}=p_{i}p_{}", i + 1, i + 1),
            c.mul(&pp, &si),
            pp.clone(),
        );
    }
    // (3) commutation
    for i in 1..=pmax {
        for j in 1..=pmax {
            if i < j {
                let (pi, pj) = (c.p(i).unwrap(), c.p(j).unwrap());
                check(
                    &mut r,
                    format!("p_{i}p_{j}=p_{j}p_{i}"),
                    c.mul(&pi, &pj),
                    c.mul(&pj, &pi),
                );
            }
        }
    }
    for i in 1..=phmax {
        for j in 1..=phmax {
            if i < j {
                let (a, b) = (c.ph(i).unwrap(), c.ph(j).unwrap());
                check(
                    &mut r,
                    format!("p_{{{i}+1/2}}p_{{{j}+1/2}} commute"),
                    c.mul(&a, &b),
                    c.mul(&b, &a),
                );
            }
        }
    }
    for i in 1..=pmax {
        for j in 1..=phmax {
            if i != j && i != j + 1 {
                let (pi, phj) = (c.p(i).unwrap(), c.ph(j).unwrap());
                check(
                    &mut r,
                    format!("p_{i}p_{{{j}+1/2}} commute"),
                    c.mul(&pi, &phj),
                    c.mul(&phj, &pi),
                );
            }
        }
    }
    for i in 1..=smax {
        let si = c.s(i).unwrap();
        for j in 1..=pmax {
            if j != i && j != i + 1 {
                let pj = c.p(j).unwrap();
                check(
                    &mut r,
                    format!("s_{i}p_{j} commute"),
                    c.mul(&si, &pj),
                    c.mul(&pj, &si),
                );
            }
        }
        for j in 1..=phmax {
            if j + 1 != i && j != i + 1 {
                let phj = c.ph(j).unwrap();
                check(
                    &mut r,
                    format!("s_{i}p_{{{j}+1/2}} commute"),
                    c.mul(&si, &phj),
                    c.mul(&phj, &si),
                );
            }
        }
        if i + 1 <= pmax {
            let (pi, pj) = (c.p(i).unwrap(), c.p(i + 1).unwrap());
            check(
                &mut r,
                format!("s_{i}p_{i}s_{i}=p_{}", i + 1),
                c.mul(&c.mul(&si, &pi), &si),
                pj,
            );
        }
        if i >= 2 && i <= phmax && i - 1 <= smax {
            // s_i p_{i-1/2} s_i = s_{i-1} p_{i+1/2} s_{i-1}
            let sm = c.s(i - 1).unwrap();
            let a = c.mul(&c.mul(&si, &c.ph(i - 1).unwrap()), &si);
            let b = c.mul(&c.mul(&sm, &c.ph(i).unwrap()), &sm);
            check(&mut r, format!("s_{i}p_{{{}-1/2}}s_{i} braid", i), a, b);
        }
    }
    // (4) contraction
    for i in 1..=phmax {
        let phi = c.ph(i).unwrap();
        for j in [i, i + 1] {
            if j <= pmax {
                let pj = c.p(j).unwrap();
                check(
                    &mut r,
                    format!("p_{{{i}+1/2}}p_{j}p_{{{i}+1/2}}=p_{{{i}+1/2}}"),
                    c.mul(&c.mul(&phi, &pj), &phi),
                    phi.clone(),
                );
            }
        }
    }
    for i in 1..=pmax {
        let pi = c.p(i).unwrap();
        // p_i p_{j-1/2} p_i = p_i for j = i, i+1 means half indices i-1/2, i+1/2
        for jh in [i.checked_sub(1), Some(i)] {
            if let Some(jh) = jh {
                if jh >= 1 && jh <= phmax {
                    let phj = c.ph(jh).unwrap();
                    check(
                        &mut r,
                        format!("p_{i}p_{{{jh}+1/2}}p_{i}=p_{i}"),
                        c.mul(&c.mul(&pi, &phj), &pi),
                        pi.clone(),
                    );
                }
            }
        }
    }
    r
}

/// All relations of the interchange presentation.
pub fn check_interchange_relations<C: PresentationCarrier>(c: &C, tag: &str) -> Report {
    let mut r = Report::new(format!("interchange-presentation {tag}"));
    let mut idx = 1usize;
    let mut swmax = 1; // sigma_i exists for whole i >= 2
    while c.sigma_w(swmax + 1).is_some() {
        swmax += 1;
    }
    let mut shmax = 0; // sigma_{i+1/2}
    while c.sigma_h(shmax + 1).is_some() {
        shmax += 1;
    }
    let mut pmax = 0;
    while c.p(pmax + 1).is_some() {
        pmax += 1;
    }
    let mut phmax = 0;
    while c.ph(phmax + 1).is_some() {
        phmax += 1;
    }
    let unit = c.unit();
    let mut check = |r: &mut Report, name: String, a: C::Elt, b: C::Elt| {
        r.push(format!("np-{idx}"), name, c.eq(&a, &b));
        idx += 1;
    };
    // (1) involutions
    for i in 2..=shmax {
        let x = c.sigma_h(i).unwrap();
        check(&mut r, format!("sigma_{{{i}+1/2}}^2=1"), c.mul(&x, &x), unit.clone());
    }
    for i in 2..=swmax {
        let x = c.sigma_w(i).unwrap();
        check(&mut r, format!("sigma_{i}^2=1"), c.mul(&x, &x), unit.clone());
    }
    // (2) braid-like
    for i in 1..swmax {
        // sigma_{i+1} vs sigma_{j+1/2}, j != i+1
        for j in 1..=shmax {
            if j != i + 1 {
                let a = c.sigma_w(i + 1).unwrap();
                let b = c.sigma_h(j).unwrap();
                check(
                    &mut r,
                    format!("sigma_{} sigma_{{{j}+1/2}} commute", i + 1),
                    c.mul(&a, &b),
                    c.mul(&b, &a),
                );
            }
        }
    }
    for i in 2..=swmax {
        for j in (i + 2)..=swmax {
            let a = c.sigma_w(i).unwrap();
            let b = c.sigma_w(j).unwrap();
            check(
                &mut r,
                format!("sigma_{i} sigma_{j} commute"),
                c.mul(&a, &b),
                c.mul(&b, &a),
            );
        }
    }
    for i in 1..=shmax {
        for j in (i + 2)..=shmax {
            let a = c.sigma_h(i).unwrap();
            let b = c.sigma_h(j).unwrap();
            check(
                &mut r,
                format!("sigma_{{{i}+1/2}} sigma_{{{j}+1/2}} commute"),
                c.mul(&a, &b),
                c.mul(&b, &a),
            );
        }
    }
    // braid for the derived Coxeter generators
    let coxeter = |l: usize| -> Option<C::Elt> {
        if l == 1 {
            c.sigma_w(2)
        } else {
            Some(c.mul(&c.sigma_h(l)?, &c.sigma_w(l + 1)?))
        }
    };
    let mut l = 1;
    while let (Some(a), Some(b)) = (coxeter(l), coxeter(l + 1)) {
        check(
            &mut r,
            format!("braid s_{l}s_{}s_{l}", l + 1),
            c.mul(&c.mul(&a, &b), &a),
            c.mul(&c.mul(&b, &a), &b),
        );
        l += 1;
    }
    // (3) idempotent relations
    for i in 1..=pmax {
        let pi = c.p(i).unwrap();
        check(&mut r, format!("p_{i}^2=zp_{i}"), c.mul(&pi, &pi), c.scale_z(&pi));
    }
    for i in 1..=phmax {
        let phi = c.ph(i).unwrap();
        check(
            &mut r,
            format!("p_{{{i}+1/2}}^2 idempotent"),
            c.mul(&phi, &phi),
            phi.clone(),
        );
        if let Some(sg) = c.sigma_w(i + 1) {
            check(
                &mut r,
                format!("sigma_{} fixes p_{{{i}+1/2}}", i + 1),
                c.mul(&sg, &phi),
                phi.clone(),
            );
            check(
                &mut r,
                format!("p_{{{i}+1/2}} fixes sigma_{}", i + 1),
                c.mul(&phi, &sg),
                phi.clone(),
            );
        }
        if let Some(sg) = c.sigma_h(i) {
            check(
                &mut r,
                format!("sigma_{{{i}+1/2}} fixes p_{{{i}+1/2}}"),
                c.mul(&sg, &phi),
                phi.clone(),
            );
            check(
                &mut r,
                format!("p_{{{i}+1/2}} fixes sigma_{{{i}+1/2}}"),
                c.mul(&phi, &sg),
                phi.clone(),
            );
        }
        if i + 1 <= pmax {
            let pp = c.mul(&c.p(i).unwrap(), &c.p(i + 1).unwrap());
            if let (Some(a), Some(b)) = (c.sigma_h(i), c.sigma_w(i + 1)) {
                check(
                    &mut r,
                    format!("sigma_{{{i}+1/2}}p_{i}p_{} = sigma_{} p_{i}p_{}", i + 1, i + 1, i + 1),
                    c.mul(&a, &pp),
                    c.mul(&b, &pp),
                );
                check(
                    &mut r,
                    format!("p_{i}p_{} sigma variants", i + 1),
                    c.mul(&pp, &a),
                    c.mul(&pp, &b),
                );
            }
        }
    }
    // (4) commutation
    for i in 1..=pmax {
        for j in 1..=pmax {
            if i < j {
                let (a, b) = (c.p(i).unwrap(), c.p(j).unwrap());
                check(&mut r, format!("p_{i}p_{j} commute"), c.mul(&a, &b), c.mul(&b, &a));
            }
        }
    }
    for i in 1..=phmax {
        for j in 1..=phmax {
            if i < j {
                let (a, b) = (c.ph(i).unwrap(), c.ph(j).unwrap());
                check(
                    &mut r,
                    format!("half p_{i},p_{j} commute"),
                    c.mul(&a, &b),
                    c.mul(&b, &a),
                );
            }
        }
    }
    for i in 1..=phmax {
        for j in 1..=pmax {
            if j != i && j != i + 1 {
                let (a, b) = (c.ph(i).unwrap(), c.p(j).unwrap());
                check(
                    &mut r,
                    format!("p_{{{i}+1/2}}p_{j} commute"),
                    c.mul(&a, &b),
                    c.mul(&b, &a),
                );
            }
        }
    }
    for i in 2..=swmax {
        let sg = c.sigma_w(i).unwrap();
        for j in 1..=pmax {
            if j != i - 1 && j != i {
                let pj = c.p(j).unwrap();
                check(
                    &mut r,
                    format!("sigma_{i}p_{j} commute"),
                    c.mul(&sg, &pj),
                    c.mul(&pj, &sg),
                );
            }
        }
        for j in 1..=phmax {
            if j != i {
                let phj = c.ph(j).unwrap();
                check(
                    &mut r,
                    format!("sigma_{i}p_{{{j}+1/2}} commute"),
                    c.mul(&sg, &phj),
                    c.mul(&phj, &sg),
                );
            }
        }
    }
    for i in 1..=shmax {
        let sg = c.sigma_h(i).unwrap();
        for j in 1..=pmax {
            if j != i && j != i + 1 {
                let pj = c.p(j).unwrap();
                check(
                    &mut r,
                    format!("sigma_{{{i}+1/2}}p_{j} commute"),
                    c.mul(&sg, &pj),
                    c.mul(&pj, &sg),
                );
            }
        }
        for j in 1..=phmax {
            if j != i - 1 {
                let phj = c.ph(j).unwrap();
                check(
                    &mut r,
                    format!("sigma_{{{i}+1/2}}p_{{{j}+1/2}} commute"),
                    c.mul(&sg, &phj),
                    c.mul(&phj, &sg),
                );
            }
        }
        // sigma_{i+1/2} p_i sigma_{i+1/2} = sigma_{i+1} p_{i+1} sigma_{i+1}
        if let (Some(sw1), Some(pi), Some(pi1)) = (c.sigma_w(i + 1), c.p(i), c.p(i + 1)) {
            let a = c.mul(&c.mul(&sg, &pi), &sg);
            let b = c.mul(&c.mul(&sw1, &pi1), &sw1);
            check(&mut r, format!("conjugation swap at i={i}"), a, b);
        }
        // sigma_{i+1/2} p_{i-1/2} sigma_{i+1/2} = sigma_i p_{i+1/2} sigma_i
        if i >= 2 {
            if let (Some(swi), Some(phm), Some(phi)) = (c.sigma_w(i), c.ph(i - 1), c.ph(i)) {
                let a = c.mul(&c.mul(&sg, &phm), &sg);
                let b = c.mul(&c.mul(&swi, &phi), &swi);
                check(&mut r, format!("half conjugation swap at i={i}"), a, b);
            }
        }
    }
    // (5) contraction
    for i in 1..=phmax {
        let phi = c.ph(i).unwrap();
        for j in [i, i + 1] {
            if j <= pmax {
                let pj = c.p(j).unwrap();
                check(
                    &mut r,
                    format!("contraction p_{{{i}+1/2}}p_{j}p_{{{i}+1/2}}"),
                    c.mul(&c.mul(&phi, &pj), &phi),
                    phi.clone(),
                );
            }
        }
    }
    for i in 1..=pmax {
        let pi = c.p(i).unwrap();
        for jh in [i.checked_sub(1), Some(i)] {
            if let Some(jh) = jh {
                if jh >= 1 && jh <= phmax {
                    let phj = c.ph(jh).unwrap();
                    check(
                        &mut r,
                        format!("contraction p_{i}p_{{{jh}+1/2}}p_{i}"),
                        c.mul(&c.mul(&pi, &phj), &pi),
                        pi.clone(),
                    );
                }
            }
        }
    }
    r
}

/// The diagram algebra as a relation carrier: ambient k, whole level.
pub struct AlgebraCarrier {
    pub tables: JmTables,
}

impl AlgebraCarrier {
    pub fn new(k: usize) -> Self {
        AlgebraCarrier {
            tables: JmTables::new(k),
        }
    }
}

impl PresentationCarrier for AlgebraCarrier {
    type Elt = AlgebraElement;

    fn unit(&self) -> AlgebraElement {
        AlgebraElement::unit(self.tables.ambient(), false)
    }

    fn zero_like(&self) -> Option<AlgebraElement> {
        Some(AlgebraElement::zero(self.tables.ambient(), false))
    }

    fn s(&self, i: usize) -> Option<AlgebraElement> {
        (i + 1 <= self.tables.ambient()).then(|| generator(GenKind::S, i, self.tables.ambient()))
    }

    fn p(&self, i: usize) -> Option<AlgebraElement> {
        (i <= self.tables.ambient()).then(|| generator(GenKind::PWhole, i, self.tables.ambient()))
    }

    fn ph(&self, i: usize) -> Option<AlgebraElement> {
        (i + 1 <= self.tables.ambient())
            .then(|| generator(GenKind::PHalf, i, self.tables.ambient()))
    }

    fn sigma_w(&self, i: usize) -> Option<AlgebraElement> {
        (i >= 2 && i <= self.tables.ambient())
            .then(|| self.tables.sigma(LevelIndex::whole(i as u32)).clone())
    }

    fn sigma_h(&self, i: usize) -> Option<AlgebraElement> {
        (i + 1 <= self.tables.ambient())
            .then(|| self.tables.sigma(LevelIndex::half(i as u32)).clone())
    }

    fn mul(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        a.mul(b)
    }

    fn add(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        a.add(b)
    }

    fn scale_z(&self, a: &AlgebraElement) -> AlgebraElement {
        a.scale(&RationalFunction::z())
    }

    fn eq(&self, a: &AlgebraElement, b: &AlgebraElement) -> bool {
        a == b
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::parse_ratfn;

    fn rf(s: &str) -> RationalFunction {
        parse_ratfn(s).unwrap()
    }

    #[test]
    fn base_cases() {
        let t = JmTables::new(2);
        assert_eq!(t.l(LevelIndex::whole(1)), &generator(GenKind::PWhole, 1, 2));
        assert!(t.l(LevelIndex::half(0)).is_zero());
        assert_eq!(t.sigma(LevelIndex::whole(2)), &generator(GenKind::S, 1, 2));
        assert_eq!(t.sigma(LevelIndex::half(1)), &AlgebraElement::unit(2, false));
    }

    #[test]
    fn sigma_product_is_transposition() {
        // sigma_{2+1/2} sigma_3 = s_2 at k=3
        let t = JmTables::new(3);
        let prod = t
            .sigma(LevelIndex::half(2))
            .mul(t.sigma(LevelIndex::whole(3)));
        assert_eq!(prod, generator(GenKind::S, 2, 3));
        assert_eq!(t.coxeter_via_sigma(2), generator(GenKind::S, 2, 3));
    }

    #[test]
    fn contraction_eigenvalue() {
        // (L_1 + L_{1+1/2}) p_{1+1/2} = z p_{1+1/2} at k=2
        let t = JmTables::new(2);
        let sum = t.l(LevelIndex::whole(1)).add(t.l(LevelIndex::half(1)));
        let ph = generator(GenKind::PHalf, 1, 2);
        assert_eq!(sum.mul(&ph), ph.scale(&rf("z")));
        // normalized variant: (x_1 + x_{1+1/2}) p_{1+1/2} = 0
        let xsum = t
            .normalized_x(LevelIndex::whole(1))
            .add(&t.normalized_x(LevelIndex::half(1)));
        assert!(xsum.mul(&ph).is_zero());
    }

    #[test]
    fn central_element_small() {
        // z_1 = p_1; [z_2, s_1] = 0 at k=2; [z_{1+1/2}, p_1] = 0
        let t = JmTables::new(2);
        assert_eq!(
            t.central(LevelIndex::whole(1)),
            generator(GenKind::PWhole, 1, 2)
        );
        let z2 = t.central(LevelIndex::whole(2));
        let s1 = generator(GenKind::S, 1, 2);
        assert_eq!(z2.mul(&s1), s1.mul(&z2));
        let z32 = t.central(LevelIndex::half(1));
        let p1 = generator(GenKind::PWhole, 1, 2);
        assert_eq!(z32.mul(&p1), p1.mul(&z32));
    }

    #[test]
    fn identity_suite_k2() {
        let r = verify_jm_identities(2);
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn presentations_k2() {
        let c = AlgebraCarrier::new(2);
        let r = check_hr_relations(&c, "diagram k=2");
        assert!(r.passed(), "{r}");
        let r = check_interchange_relations(&c, "diagram k=2");
        assert!(r.passed(), "{r}");
    }
}
