//! The diagram basis of the partition algebra and its composition product.
//!
//! A diagram on `k` strands is a set partition of `{1..k, 1'..k'}`. Points
//! are numbered `0..k` for the top row and `k..2k` for the bottom row.
//! Multiplication stacks diagrams and counts deleted middle components as
//! powers of z.

use crate::field::{FieldError, RationalFunction};
use std::collections::BTreeMap;
use std::fmt;

/// A set partition of the 2k diagram points, in canonical form.
///
/// Canonical form: members sorted within blocks, blocks sorted by minimum
/// under the order top-1 < ... < top-k < bottom-1 < ... < bottom-k.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Diagram {
    k: u16,
    blocks: Vec<Vec<u16>>,
}

impl Diagram {
    pub fn from_blocks(k: usize, mut blocks: Vec<Vec<u16>>) -> Self {
        for b in blocks.iter_mut() {
            b.sort_unstable();
        }
        blocks.retain(|b| !b.is_empty());
        blocks.sort();
        let d = Diagram { k: k as u16, blocks };
        debug_assert!(d.is_valid(), "blocks must partition the 2k points");
        d
    }

    /// Builds the canonical diagram from a block-id labelling of the 2k points.
    pub fn from_labels(k: usize, labels: &[usize]) -> Self {
        debug_assert_eq!(labels.len(), 2 * k);
        let mut map: BTreeMap<usize, Vec<u16>> = BTreeMap::new();
        for (p, &l) in labels.iter().enumerate() {
            map.entry(l).or_default().push(p as u16);
        }
        Diagram::from_blocks(k, map.into_values().collect())
    }

    fn is_valid(&self) -> bool {
        let mut seen = vec![false; 2 * self.k as usize];
        for b in &self.blocks {
            for &p in b {
                let p = p as usize;
                if p >= seen.len() || seen[p] {
                    return false;
                }
                seen[p] = true;
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn identity(k: usize) -> Self {
        Diagram::from_blocks(k, (0..k as u16).map(|i| vec![i, i + k as u16]).collect())
    }

    /// Transposition diagram on strands i, i+1 (1-indexed).
    pub fn s(k: usize, i: usize) -> Self {
        assert!(i >= 1 && i + 1 <= k, "s_{i} out of range for k={k}");
        let kk = k as u16;
        let (a, b) = ((i - 1) as u16, i as u16);
        let mut blocks: Vec<Vec<u16>> = vec![vec![a, b + kk], vec![b, a + kk]];
        for j in 0..kk {
            if j != a && j != b {
                blocks.push(vec![j, j + kk]);
            }
        }
        Diagram::from_blocks(k, blocks)
    }

    /// Contraction diagram: strand j isolated top and bottom (1-indexed).
    pub fn p_whole(k: usize, j: usize) -> Self {
        assert!(j >= 1 && j <= k, "p_{j} out of range for k={k}");
        let kk = k as u16;
        let a = (j - 1) as u16;
        let mut blocks: Vec<Vec<u16>> = vec![vec![a], vec![a + kk]];
        for i in 0..kk {
            if i != a {
                blocks.push(vec![i, i + kk]);
            }
        }
        Diagram::from_blocks(k, blocks)
    }

    /// Half contraction: {i, i+1, i', (i+1)'} fused (1-indexed i).
    pub fn p_half(k: usize, i: usize) -> Self {
        assert!(i >= 1 && i + 1 <= k, "p_{{{i}+1/2}} out of range for k={k}");
        let kk = k as u16;
        let (a, b) = ((i - 1) as u16, i as u16);
        let mut blocks: Vec<Vec<u16>> = vec![vec![a, b, a + kk, b + kk]];
        for j in 0..kk {
            if j != a && j != b {
                blocks.push(vec![j, j + kk]);
            }
        }
        Diagram::from_blocks(k, blocks)
    }

    /// The permutation diagram of `top i -> bottom perm[i]` (0-indexed map).
    pub fn permutation(k: usize, perm: &[usize]) -> Self {
        let kk = k as u16;
        Diagram::from_blocks(
            k,
            (0..k)
                .map(|i| vec![i as u16, perm[i] as u16 + kk])
                .collect(),
        )
    }

    pub fn k(&self) -> usize {
        self.k as usize
    }

    pub fn blocks(&self) -> &[Vec<u16>] {
        &self.blocks
    }

    /// True when top-k and bottom-k share a block.
    pub fn is_half(&self) -> bool {
        let k = self.k;
        let (a, b) = (k - 1, 2 * k - 1);
        self.blocks
            .iter()
            .any(|bl| bl.contains(&a) && bl.contains(&b))
    }

    /// True when every strand beyond `m` is a vertical pair {j, j'}.
    pub fn is_identity_beyond(&self, m: usize) -> bool {
        let kk = self.k;
        for j in m as u16..kk {
            let ok = self
                .blocks
                .iter()
                .any(|b| b.len() == 2 && b[0] == j && b[1] == j + kk);
            if !ok {
                return false;
            }
        }
        true
    }

    /// Flips top and bottom rows.
    pub fn star(&self) -> Diagram {
        let kk = self.k;
        let blocks = self
            .blocks
            .iter()
            .map(|b| {
                b.iter()
                    .map(|&p| if p < kk { p + kk } else { p - kk })
                    .collect()
            })
            .collect();
        Diagram::from_blocks(self.k(), blocks)
    }

    /// Stacks `self` above `other`, identifying the middle rows; returns the
    /// resulting diagram and the number of deleted middle-only components.
    pub fn compose(&self, other: &Diagram) -> (Diagram, usize) {
        assert_eq!(self.k, other.k, "composition needs equal strand counts");
        let k = self.k as usize;
        // union-find on 3k points: 0..k top, k..2k middle, 2k..3k bottom
        let mut uf = UnionFind::new(3 * k);
        for b in &self.blocks {
            for w in b.windows(2) {
                uf.union(w[0] as usize, w[1] as usize);
            }
        }
        for b in &other.blocks {
            for w in b.windows(2) {
                // other's top row lands on the middle, bottom stays bottom
                uf.union(w[0] as usize + k, w[1] as usize + k);
            }
        }
        let mut comp_points: BTreeMap<usize, Vec<u16>> = BTreeMap::new();
        let mut mid_only: BTreeMap<usize, ()> = BTreeMap::new();
        for p in 0..3 * k {
            let r = uf.find(p);
            if p < k {
                comp_points.entry(r).or_default().push(p as u16);
            } else if p >= 2 * k {
                comp_points.entry(r).or_default().push((p - k) as u16);
            } else {
                mid_only.entry(r).or_insert(());
            }
        }
        let mut removed = 0;
        for r in mid_only.keys() {
            if !comp_points.contains_key(r) {
                removed += 1;
            }
        }
        (
            Diagram::from_blocks(k, comp_points.into_values().collect()),
            removed,
        )
    }
}

impl fmt::Display for Diagram {
    /// Text form: blocks in canonical order, primes for bottom points,
    /// e.g. `{1,1'},{2},{2'}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kk = self.k;
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{{")?;
            for (j, &p) in b.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                if p < kk {
                    write!(f, "{}", p + 1)?;
                } else {
                    write!(f, "{}'", p - kk + 1)?;
                }
            }
            write!(f, "}}")?;
        }
        Ok(())
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut c = x;
        while self.parent[c] != r {
            let next = self.parent[c];
            self.parent[c] = r;
            c = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Enumerates all set partitions of `{1..k, 1'..k'}` in canonical order;
/// with `half` set, only those joining top-k and bottom-k.
pub fn enumerate_basis(k: usize, half: bool) -> Vec<Diagram> {
    assert!(k >= 1);
    let n = 2 * k;
    fn rec(
        labels: &mut Vec<usize>,
        i: usize,
        max: usize,
        k: usize,
        half: bool,
        out: &mut Vec<Diagram>,
    ) {
        let n = 2 * k;
        if i == n {
            if !half || labels[k - 1] == labels[n - 1] {
                out.push(Diagram::from_labels(k, labels));
            }
            return;
        }
        for l in 0..=max {
            labels[i] = l;
            let next_max = if l == max { max + 1 } else { max };
            rec(labels, i + 1, next_max, k, half, out);
        }
    }
    let mut out = vec![];
    let mut labels = vec![0usize; n];
    rec(&mut labels, 1, 1, k, half, &mut out);
    // generation order is lexicographic on the restricted-growth string,
    // which is the canonical basis order
    out
}

/// A finite Q(z)-linear combination of diagrams.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlgebraElement {
    k: usize,
    half: bool,
    terms: BTreeMap<Diagram, RationalFunction>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    MismatchedSize { left: usize, right: usize },
    Field(FieldError),
}

impl fmt::Display for AlgebraError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraError::MismatchedSize { left, right } => {
                write!(f, "mismatched strand counts {left} vs {right}")
            }
            AlgebraError::Field(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for AlgebraError {}

impl AlgebraElement {
    pub fn zero(k: usize, half: bool) -> Self {
        AlgebraElement {
            k,
            half,
            terms: BTreeMap::new(),
        }
    }

    pub fn unit(k: usize, half: bool) -> Self {
        AlgebraElement::from_diagram(k, half, Diagram::identity(k))
    }

    pub fn from_diagram(k: usize, half: bool, d: Diagram) -> Self {
        AlgebraElement::from_terms(k, half, [(d, RationalFunction::one())])
    }

    pub fn from_terms(
        k: usize,
        half: bool,
        terms: impl IntoIterator<Item = (Diagram, RationalFunction)>,
    ) -> Self {
        let mut e = AlgebraElement::zero(k, half);
        for (d, c) in terms {
            e.add_term(d, c);
        }
        e
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn half(&self) -> bool {
        self.half
    }

    pub fn terms(&self) -> &BTreeMap<Diagram, RationalFunction> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn add_term(&mut self, d: Diagram, c: RationalFunction) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(d.k(), self.k);
        debug_assert!(
            !self.half || d.is_half(),
            "diagram escapes the half subalgebra"
        );
        match self.terms.entry(d) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = &*o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, rhs: &AlgebraElement) -> AlgebraElement {
        debug_assert_eq!(self.k, rhs.k);
        let mut out = self.clone();
        out.half = self.half && rhs.half;
        for (d, c) in &rhs.terms {
            out.add_term(d.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &AlgebraElement) -> AlgebraElement {
        self.add(&rhs.scale(&-&RationalFunction::one()))
    }

    pub fn scale(&self, c: &RationalFunction) -> AlgebraElement {
        if c.is_zero() {
            return AlgebraElement::zero(self.k, self.half);
        }
        AlgebraElement {
            k: self.k,
            half: self.half,
            terms: self.terms.iter().map(|(d, a)| (d.clone(), a * c)).collect(),
        }
    }

    pub fn add_scalar(&self, c: &RationalFunction) -> AlgebraElement {
        self.add(&AlgebraElement::unit(self.k, self.half).scale(c))
    }

    /// Bilinear extension of diagram composition, with z^removed weights.
    pub fn mul(&self, rhs: &AlgebraElement) -> AlgebraElement {
        debug_assert_eq!(self.k, rhs.k, "mismatched strand counts");
        let mut out = AlgebraElement::zero(self.k, self.half && rhs.half);
        for (d1, c1) in &self.terms {
            for (d2, c2) in &rhs.terms {
                let (d, removed) = d1.compose(d2);
                let mut c = c1 * c2;
                if removed > 0 {
                    c = &c * &RationalFunction::z_pow(removed);
                }
                out.add_term(d, c);
            }
        }
        out
    }

    pub fn checked_mul(&self, rhs: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        if self.k != rhs.k {
            return Err(AlgebraError::MismatchedSize {
                left: self.k,
                right: rhs.k,
            });
        }
        Ok(self.mul(rhs))
    }

    /// The * anti-involution: flips every diagram, keeps coefficients.
    pub fn star(&self) -> AlgebraElement {
        AlgebraElement {
            k: self.k,
            half: self.half,
            terms: self
                .terms
                .iter()
                .map(|(d, c)| (d.star(), c.clone()))
                .collect(),
        }
    }

    /// Reinterprets the element as living in the half subalgebra; checks the
    /// last strand is joined in every diagram.
    pub fn into_half(mut self) -> AlgebraElement {
        assert!(
            self.terms.keys().all(|d| d.is_half()),
            "element is not in the half subalgebra"
        );
        self.half = true;
        self
    }

    /// True when the element lies in `A_m(z)` embedded in the ambient algebra
    /// (strands beyond m vertical), optionally in the half subalgebra
    /// `A_{m-1/2}(z)` (strand m joined top-to-bottom as well).
    pub fn is_in_level(&self, m: usize, half: bool) -> bool {
        self.terms.keys().all(|d| {
            d.is_identity_beyond(m)
                && (!half || {
                    let kk = d.k() as u16;
                    let (a, b) = (m as u16 - 1, m as u16 - 1 + kk);
                    d.blocks()
                        .iter()
                        .any(|bl| bl.contains(&a) && bl.contains(&b))
                })
        })
    }
}

/// Generator kinds of the presentations.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GenKind {
    S,
    PWhole,
    PHalf,
    Unit,
}

/// Generators as elements: `s_i`, `p_j`, `p_{i+1/2}`, unit.
pub fn generator(kind: GenKind, i: usize, k: usize) -> AlgebraElement {
    let d = match kind {
        GenKind::S => Diagram::s(k, i),
        GenKind::PWhole => Diagram::p_whole(k, i),
        GenKind::PHalf => Diagram::p_half(k, i),
        GenKind::Unit => Diagram::identity(k),
    };
    AlgebraElement::from_diagram(k, false, d)
}

/// Independent Bell number recurrence (Bell triangle), used as a counting
/// oracle in tests and the dims command.
pub fn bell_number(n: usize) -> num_bigint::BigInt {
    use num_bigint::BigInt;
    let mut row: Vec<BigInt> = vec![BigInt::from(1)];
    for _ in 0..n {
        let mut next = vec![row.last().unwrap().clone()];
        for v in &row {
            let last = next.last().unwrap().clone();
            next.push(last + v);
        }
        row = next;
    }
    row[0].clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::parse_ratfn;

    fn rf(s: &str) -> RationalFunction {
        parse_ratfn(s).unwrap()
    }

    #[test]
    fn basis_counts_match_bell() {
        assert_eq!(enumerate_basis(1, false).len(), 2);
        assert_eq!(enumerate_basis(2, false).len(), 15);
        assert_eq!(enumerate_basis(2, true).len(), 5);
        for k in 1..=3 {
            let full: num_bigint::BigInt = (enumerate_basis(k, false).len() as u64).into();
            let half: num_bigint::BigInt = (enumerate_basis(k, true).len() as u64).into();
            assert_eq!(full, bell_number(2 * k));
            assert_eq!(half, bell_number(2 * k - 1));
        }
    }

    #[test]
    fn basis_k1() {
        let b = enumerate_basis(1, false);
        assert_eq!(b.len(), 2);
        assert_eq!(b[0].to_string(), "{1,1'}");
        assert_eq!(b[1].to_string(), "{1},{1'}");
    }

    #[test]
    fn compose_contractions() {
        let p1 = Diagram::p_whole(1, 1);
        let (d, removed) = p1.compose(&p1);
        assert_eq!(d, p1);
        assert_eq!(removed, 1);

        let s1 = Diagram::s(2, 1);
        let (d, removed) = s1.compose(&s1);
        assert_eq!(d, Diagram::identity(2));
        assert_eq!(removed, 0);
    }

    #[test]
    fn contraction_chain_keeps_half() {
        // p_{1+1/2} p_1 p_{1+1/2} = p_{1+1/2}, no removed components
        let ph = Diagram::p_half(2, 1);
        let p1 = Diagram::p_whole(2, 1);
        let (d1, r1) = ph.compose(&p1);
        let (d2, r2) = d1.compose(&ph);
        assert_eq!(d2, ph);
        assert_eq!(r1 + r2, 0);
    }

    #[test]
    fn algebra_relations_small() {
        let k = 2;
        let p1 = generator(GenKind::PWhole, 1, k);
        let p2 = generator(GenKind::PWhole, 2, k);
        // p_1^2 = z p_1 at k=1
        let q = generator(GenKind::PWhole, 1, 1);
        assert_eq!(q.mul(&q), q.scale(&rf("z")));
        // p_1 p_2 = p_2 p_1
        assert_eq!(p1.mul(&p2), p2.mul(&p1));
        // identity acts trivially
        let e = AlgebraElement::unit(k, false);
        assert_eq!(e.mul(&p1), p1);
        // p_1 p_2 - p_2 p_1 = 0
        assert!(p1.mul(&p2).sub(&p2.mul(&p1)).is_zero());
    }

    #[test]
    fn star_is_anti_involution() {
        let k = 2;
        let a = generator(GenKind::PWhole, 1, k).mul(&generator(GenKind::S, 1, k));
        let b = generator(GenKind::S, 1, k).mul(&generator(GenKind::PWhole, 1, k));
        assert_eq!(a.star(), b);
        assert_eq!(a.star().star(), a);
        let ph = generator(GenKind::PHalf, 1, k);
        assert_eq!(ph.star(), ph);
    }

    #[test]
    fn generator_pictures() {
        assert_eq!(
            generator(GenKind::S, 1, 2)
                .terms()
                .keys()
                .next()
                .unwrap()
                .to_string(),
            "{1,2'},{2,1'}"
        );
        assert_eq!(
            generator(GenKind::PWhole, 1, 2)
                .terms()
                .keys()
                .next()
                .unwrap()
                .to_string(),
            "{1},{2,2'},{1'}"
        );
        assert_eq!(
            generator(GenKind::PHalf, 1, 2)
                .terms()
                .keys()
                .next()
                .unwrap()
                .to_string(),
            "{1,2,1',2'}"
        );
    }

    #[test]
    fn half_products_stay_half() {
        let b = enumerate_basis(2, true);
        for d1 in &b {
            for d2 in &b {
                let (d, _) = d1.compose(d2);
                assert!(d.is_half());
            }
        }
    }

    #[test]
    fn associativity_random_triples() {
        // all triples of generators at k=3
        let k = 3;
        let gens = [
            generator(GenKind::S, 1, k),
            generator(GenKind::S, 2, k),
            generator(GenKind::PWhole, 2, k),
            generator(GenKind::PHalf, 1, k),
            generator(GenKind::PHalf, 2, k),
        ];
        for a in &gens {
            for b in &gens {
                for c in &gens {
                    let ab_c = a.mul(b).mul(c);
                    let a_bc = a.mul(&b.mul(c));
                    assert_eq!(ab_c, a_bc);
                }
            }
        }
    }
}
