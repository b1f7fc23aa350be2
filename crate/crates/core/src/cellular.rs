//! Murphy cellular machinery: permutation words, row symmetrizers, cell
//! generators, branching edge factors, two-sided ideals, and cell modules
//! realized by exact linear algebra. This is the oracle everything else is
//! validated against.

use crate::bratteli::{enumerate_paths, is_edge, vertices, BPath, BVertex, Partition};
use crate::diagram::{enumerate_basis, generator, AlgebraElement, Diagram, GenKind};
use crate::field::RationalFunction;
use crate::level::LevelIndex;
use crate::linalg::{CoordBasis, Matrix, RowSpace, SparseVec};
use crate::par::{map_ref_collect, Mode};
use std::collections::BTreeMap;
use std::fmt;

/// The ambient diagram algebra of a level: `A_k` for level `k` on `k`
/// strands, the half subalgebra `A_{k+1/2}` on `k+1` strands for `k+1/2`.
pub struct LevelCtx {
    pub level: LevelIndex,
    pub n: usize,
    pub half: bool,
    pub basis: Vec<Diagram>,
    index: BTreeMap<Diagram, u32>,
}

impl LevelCtx {
    pub fn new(level: LevelIndex) -> Self {
        let n = level.strands() as usize;
        let half = level.is_half();
        let basis = enumerate_basis(n, half);
        let index = basis
            .iter()
            .enumerate()
            .map(|(i, d)| (d.clone(), i as u32))
            .collect();
        LevelCtx {
            level,
            n,
            half,
            basis,
            index,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn unit(&self) -> AlgebraElement {
        AlgebraElement::unit(self.n, self.half)
    }

    pub fn to_vec(&self, x: &AlgebraElement) -> SparseVec {
        SparseVec::from_entries(
            x.terms()
                .iter()
                .map(|(d, c)| {
                    let i = *self
                        .index
                        .get(d)
                        .unwrap_or_else(|| panic!("diagram outside the level basis: {d}"));
                    (i, c.clone())
                })
                .collect(),
        )
    }

    pub fn from_vec(&self, v: &SparseVec) -> AlgebraElement {
        AlgebraElement::from_terms(
            self.n,
            self.half,
            v.iter()
                .map(|(i, c)| (self.basis[*i as usize].clone(), c.clone())),
        )
    }

    /// Right-multiplies a coordinate vector by an element.
    pub fn vec_mul(&self, v: &SparseVec, x: &AlgebraElement) -> SparseVec {
        let mut acc: BTreeMap<u32, RationalFunction> = BTreeMap::new();
        for (i, c) in v.iter() {
            let d = &self.basis[*i as usize];
            for (e, ce) in x.terms() {
                let (prod, removed) = d.compose(e);
                let mut coeff = c * ce;
                if removed > 0 {
                    coeff = &coeff * &RationalFunction::z_pow(removed);
                }
                let idx = self.index[&prod];
                let slot = acc.entry(idx).or_insert_with(RationalFunction::zero);
                *slot = &*slot + &coeff;
            }
        }
        SparseVec::from_entries(acc.into_iter().filter(|(_, c)| !c.is_zero()).collect())
    }

    /// Left-multiplies a coordinate vector by an element.
    pub fn vec_lmul(&self, x: &AlgebraElement, v: &SparseVec) -> SparseVec {
        let mut acc: BTreeMap<u32, RationalFunction> = BTreeMap::new();
        for (i, c) in v.iter() {
            let d = &self.basis[*i as usize];
            for (e, ce) in x.terms() {
                let (prod, removed) = e.compose(d);
                let mut coeff = c * ce;
                if removed > 0 {
                    coeff = &coeff * &RationalFunction::z_pow(removed);
                }
                let idx = self.index[&prod];
                let slot = acc.entry(idx).or_insert_with(RationalFunction::zero);
                *slot = &*slot + &coeff;
            }
        }
        SparseVec::from_entries(acc.into_iter().filter(|(_, c)| !c.is_zero()).collect())
    }

    /// The algebra generators of this level.
    pub fn gens(&self) -> Vec<(GenName, AlgebraElement)> {
        let k = self.level.floor() as usize;
        let mut out = vec![];
        for i in 1..k {
            out.push((GenName::S(i), self.embed(generator(GenKind::S, i, self.n))));
        }
        for i in 1..=k {
            out.push((
                GenName::P(i),
                self.embed(generator(GenKind::PWhole, i, self.n)),
            ));
        }
        let ph_max = if self.half { k } else { k.saturating_sub(1) };
        for i in 1..=ph_max {
            out.push((
                GenName::PHalf(i),
                self.embed(generator(GenKind::PHalf, i, self.n)),
            ));
        }
        out
    }

    fn embed(&self, x: AlgebraElement) -> AlgebraElement {
        if self.half {
            x.into_half()
        } else {
            x
        }
    }
}

/// Names for generators and distinguished elements, stable across text,
/// JSON and the CLI.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum GenName {
    /// p_i
    P(usize),
    /// p_{i+1/2}
    PHalf(usize),
    /// sigma_i (whole, i >= 2)
    SigmaW(usize),
    /// sigma_{i+1/2}
    SigmaH(usize),
    /// s_i
    S(usize),
    /// L at a half-integer level (twice-encoded)
    L(u32),
}

impl fmt::Display for GenName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenName::P(i) => write!(f, "p_{i}"),
            GenName::PHalf(i) => write!(f, "p_{{{i}+1/2}}"),
            GenName::SigmaW(i) => write!(f, "sigma_{i}"),
            GenName::SigmaH(i) => write!(f, "sigma_{{{i}+1/2}}"),
            GenName::S(i) => write!(f, "s_{i}"),
            GenName::L(tw) => {
                let l = LevelIndex::from_twice(*tw);
                if l.is_half() {
                    write!(f, "L_{{{}+1/2}}", l.floor())
                } else {
                    write!(f, "L_{}", l.floor())
                }
            }
        }
    }
}

impl GenName {
    /// Parses CLI spellings: `p1`, `p_1`, `p1+1/2`, `p_{1+1/2}`, `p1.5`,
    /// `sigma2`, `sigma_2+1/2`, `s1`.
    pub fn parse(s: &str) -> Option<GenName> {
        let t: String = s
            .chars()
            .filter(|c| !matches!(c, '_' | '{' | '}' | ' '))
            .collect();
        let (kind, rest) = if let Some(r) = t.strip_prefix("sigma") {
            ("sigma", r)
        } else if let Some(r) = t.strip_prefix('p') {
            ("p", r)
        } else if let Some(r) = t.strip_prefix('s') {
            ("s", r)
        } else {
            return None;
        };
        let (idx, half) = if let Some(r) = rest.strip_suffix("+1/2") {
            (r, true)
        } else if let Some(r) = rest.strip_suffix(".5") {
            (r, true)
        } else {
            (rest, false)
        };
        let i: usize = idx.parse().ok()?;
        Some(match (kind, half) {
            ("p", false) => GenName::P(i),
            ("p", true) => GenName::PHalf(i),
            ("sigma", false) => GenName::SigmaW(i),
            ("sigma", true) => GenName::SigmaH(i),
            ("s", false) => GenName::S(i),
            _ => return None,
        })
    }
}

/// The word `w_{i,j}`: `s_i s_{i+1} ... s_{j-1}` for `j >= i`, or
/// `s_{i-1} s_{i-2} ... s_j` for `i > j`, as a single permutation diagram.
pub fn perm_word(i: usize, j: usize, k: usize) -> AlgebraElement {
    assert!(i >= 1 && j >= 1 && i <= k && j <= k, "word indices in range");
    let mut acc = AlgebraElement::unit(k, false);
    if j >= i {
        for l in i..j {
            acc = acc.mul(&generator(GenKind::S, l, k));
        }
    } else {
        for l in (j..i).rev() {
            acc = acc.mul(&generator(GenKind::S, l, k));
        }
    }
    acc
}

/// Sum over the Young subgroup of `lambda` (row stabiliser of the row
/// reading tableau), embedded on the first `|lambda|` strands of `k`.
pub fn row_symmetrizer(lam: &Partition, k: usize) -> AlgebraElement {
    assert!(lam.size() as usize <= k);
    let mut rows: Vec<Vec<usize>> = vec![];
    let mut start = 0usize;
    for &len in lam.parts() {
        rows.push((start..start + len as usize).collect());
        start += len as usize;
    }
    let mut perms: Vec<Vec<usize>> = vec![(0..k).collect()];
    for row in rows {
        let row_perms = permutations(&row);
        let mut next = vec![];
        for base in &perms {
            for rp in &row_perms {
                let mut p = base.clone();
                for (pos, &val) in row.iter().zip(rp.iter()) {
                    p[*pos] = val;
                }
                next.push(p);
            }
        }
        perms = next;
    }
    AlgebraElement::from_terms(
        k,
        false,
        perms
            .into_iter()
            .map(|p| (Diagram::permutation(k, &p), RationalFunction::one())),
    )
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![vec![]];
    }
    let mut out = vec![];
    for (i, &x) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, x);
            out.push(tail);
        }
    }
    out
}

/// The contraction chain `p_i^(ell) = p_{i-ell+1} ... p_i` (whole flavor) or
/// `p_{i+1/2}^(ell) = p_{i-ell+3/2} ... p_{i+1/2}` (half flavor, `last`
/// naming the final factor); zero when `ell > i`.
pub fn contraction_chain(last: LevelIndex, ell: u32, k: usize) -> AlgebraElement {
    let i = last.floor();
    if ell > i {
        return AlgebraElement::zero(k, false);
    }
    let mut acc = AlgebraElement::unit(k, false);
    if last.is_half() {
        for j in (i - ell + 1)..=i {
            acc = acc.mul(&generator(GenKind::PHalf, j as usize, k));
        }
    } else {
        for j in (i - ell + 1)..=i {
            acc = acc.mul(&generator(GenKind::PWhole, j as usize, k));
        }
    }
    acc
}

/// The cell generator `x_(lambda,ell) = c_lambda p^(ell)` at the label's
/// level, on `n` strands; `half` chooses the half contraction chain.
pub fn cell_generator_elem(label: &BVertex, n: usize) -> AlgebraElement {
    row_symmetrizer(&label.lam, n).mul(&contraction_chain(label.level, label.ell, n))
}

/// As `cell_generator_elem`, in a level context.
pub fn cell_generator(label: &BVertex, ctx: &LevelCtx) -> AlgebraElement {
    ctx.embed(cell_generator_elem(label, ctx.n))
}

/// Flavors of branching edge factors.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum EdgeFactor {
    /// The cell-module basis factor.
    P,
    /// The intertwiner factor of the branching identity.
    Rho,
    /// The Murphy-basis factor (per the printed case list; the stay case at
    /// a whole-to-half step reads the half chain verbatim, which vanishes
    /// when the chain outruns its level).
    A,
}

/// The edge factor for an edge `from -> to`, as an element on `k` strands.
///
/// Branching rules: a half-to-whole edge into level i stays (target ell =
/// source ell + 1) or adds a node; a whole-to-half edge into level i+1/2
/// stays or removes a node.
pub fn edge_factor(from: &BVertex, to: &BVertex, flavor: EdgeFactor, k: usize) -> AlgebraElement {
    assert!(is_edge(from, to), "not an edge: {from} -> {to}");
    let unit = AlgebraElement::unit(k, false);
    if from.level.is_half() {
        // half -> whole, into level i
        let i = to.level.floor() as usize;
        if to.lam == from.lam {
            // stay: m = ell + 1
            let m = to.ell as usize;
            match flavor {
                EdgeFactor::P => perm_word(m, i, k),
                EdgeFactor::Rho => generator(GenKind::PWhole, m, k).mul(&perm_word(m, i, k)),
                EdgeFactor::A => {
                    if m == 0 {
                        unit
                    } else {
                        contraction_chain(LevelIndex::whole((i - 1) as u32), (m - 1) as u32, k)
                    }
                }
            }
        } else {
            // add node (j, mu_j): a_j = ell + sum_{r<=j} mu_r
            let node = Partition::diff_node(&to.lam, &from.lam).expect("addition edge");
            let j = node.0 as usize;
            let a_j = from.ell as usize + to.lam.parts()[..j].iter().sum::<u32>() as usize;
            match flavor {
                EdgeFactor::P => perm_word(a_j, i, k),
                EdgeFactor::Rho => {
                    let lam_j = from.lam.parts().get(j - 1).copied().unwrap_or(0) as usize;
                    let mut sum = AlgebraElement::zero(k, false);
                    for r in 0..=lam_j {
                        sum = sum.add(&perm_word(a_j - r, a_j, k));
                    }
                    sum.mul(&perm_word(a_j, i, k))
                }
                EdgeFactor::A => {
                    let m = to.ell as usize;
                    let aj_small = to.lam.parts()[..j].iter().sum::<u32>() as usize;
                    let chain = if m == 0 {
                        unit
                    } else {
                        contraction_chain(LevelIndex::whole((i - 1) as u32), m as u32, k)
                    };
                    perm_word(aj_small, i - m, k).mul(&chain)
                }
            }
        }
    } else {
        // whole -> half, into level i+1/2
        let i = from.level.floor() as usize;
        if to.lam == from.lam {
            match flavor {
                EdgeFactor::P | EdgeFactor::Rho => unit,
                EdgeFactor::A => {
                    let m = to.ell;
                    if m == 0 {
                        unit
                    } else {
                        contraction_chain(LevelIndex::half((i - 1) as u32), m, k)
                    }
                }
            }
        } else {
            // remove node (j, lambda_j): a_j = ell + sum_{r<=j} lambda_r
            let node = Partition::diff_node(&from.lam, &to.lam).expect("removal edge");
            let j = node.0 as usize;
            let a_j = from.ell as usize + from.lam.parts()[..j].iter().sum::<u32>() as usize;
            let m = to.ell as usize;
            let mu_j = to.lam.parts().get(j - 1).copied().unwrap_or(0) as usize;
            match flavor {
                EdgeFactor::P => {
                    let mut sum = AlgebraElement::zero(k, false);
                    for r in 0..=mu_j {
                        sum = sum.add(&perm_word(a_j, a_j - r, k));
                    }
                    perm_word(m, i, k)
                        .mul(&generator(GenKind::PHalf, i, k))
                        .mul(&perm_word(i, a_j, k))
                        .mul(&sum)
                }
                EdgeFactor::Rho => generator(GenKind::PWhole, m, k)
                    .mul(&perm_word(m, i, k))
                    .mul(&generator(GenKind::PHalf, i, k))
                    .mul(&perm_word(i, a_j, k)),
                EdgeFactor::A => {
                    let nsmall = i - m + 1;
                    let bj = from.lam.parts()[..j].iter().sum::<u32>() as usize;
                    let mut sum = AlgebraElement::zero(k, false);
                    for r in 0..=mu_j {
                        sum = sum.add(&perm_word(bj, bj - r, k));
                    }
                    let chain = if m == 1 {
                        unit
                    } else {
                        contraction_chain(LevelIndex::half((i - 1) as u32), (m - 1) as u32, k)
                    };
                    chain.mul(&perm_word(nsmall, bj, k)).mul(&sum)
                }
            }
        }
    }
}

/// Ordered product of edge factors along a path, last edge leftmost.
pub fn path_factor(t: &BPath, flavor: EdgeFactor, k: usize) -> AlgebraElement {
    let mut acc = AlgebraElement::unit(k, false);
    for w in t.vertices().windows(2) {
        acc = edge_factor(&w[0], &w[1], flavor, k).mul(&acc);
    }
    acc
}

/// The cyclic vector `f_lambda = a* x a` on `n` strands, built from the
/// maximal-path word `w_{i-ell+1,1} ... w_{i,ell}` of the whole level below
/// the label; half-level modules use the same element.
pub fn murphy_cyclic_elem(label: &BVertex, n: usize) -> AlgebraElement {
    let i = label.level.floor() as usize;
    let ell = label.ell as usize;
    let mut a = AlgebraElement::unit(n, false);
    for r in 1..=ell {
        a = a.mul(&perm_word(i - ell + r, r, n));
    }
    let x = row_symmetrizer(&label.lam, n).mul(&contraction_chain(
        LevelIndex::whole(i as u32),
        label.ell,
        n,
    ));
    a.star().mul(&x).mul(&a)
}

pub fn murphy_cyclic(label: &BVertex, ctx: &LevelCtx) -> AlgebraElement {
    ctx.embed(murphy_cyclic_elem(label, ctx.n))
}

#[derive(Debug)]
pub enum CellError {
    /// The configured level bound was exceeded.
    LevelBound {
        requested: LevelIndex,
        bound: LevelIndex,
    },
    /// Murphy vectors became dependent modulo the ideal; an upstream bug.
    DependentBasis(String),
    /// An element's action left the module span.
    NotInModule(String),
}

impl fmt::Display for CellError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CellError::LevelBound { requested, bound } => {
                write!(f, "level {requested} exceeds the configured bound {bound}")
            }
            CellError::DependentBasis(s) => write!(f, "dependent cell basis: {s}"),
            CellError::NotInModule(s) => write!(f, "action escaped the module: {s}"),
        }
    }
}

impl std::error::Error for CellError {}

/// Incrementally built chain of two-sided ideals at one level, reused across
/// labels in descending dominance order.
pub struct IdealChain<'a> {
    ctx: &'a LevelCtx,
    gens: Vec<AlgebraElement>,
    space: RowSpace,
    absorbed: Vec<BVertex>,
    mode: Mode,
}

impl<'a> IdealChain<'a> {
    pub fn new(ctx: &'a LevelCtx, mode: Mode) -> Self {
        IdealChain {
            ctx,
            gens: ctx.gens().into_iter().map(|(_, g)| g).collect(),
            space: RowSpace::new(),
            absorbed: vec![],
            mode,
        }
    }

    pub fn ctx(&self) -> &LevelCtx {
        self.ctx
    }

    /// The ideal below `label`: the span of `A x_(mu,m) A` over all labels
    /// strictly dominating `label`.
    pub fn ideal_for(&mut self, label: &BVertex) -> &RowSpace {
        let higher: Vec<BVertex> = vertices(self.ctx.level)
            .into_iter()
            .filter(|v| v.dominates_strictly(label))
            .collect();
        for h in higher {
            if !self.absorbed.contains(&h) {
                let x = cell_generator(&h, self.ctx);
                self.close_with(&x);
                self.absorbed.push(h);
            }
        }
        &self.space
    }

    /// Closes the span under two-sided multiplication by the generators.
    ///
    /// Processes the worklist in waves: all generator products of the
    /// current frontier are computed in one parallel batch, then merged
    /// into the echelon sequentially.
    fn close_with(&mut self, seed: &AlgebraElement) {
        let v = self.ctx.to_vec(seed);
        let red = self.space.reduce(&v);
        if red.is_zero() {
            return;
        }
        self.space.insert_reduced(red.clone());
        let mut frontier = vec![red];
        while !frontier.is_empty() {
            let jobs: Vec<(usize, bool)> = (0..frontier.len())
                .flat_map(|i| {
                    (0..self.gens.len()).flat_map(move |g| [(i * 1000 + g, false), (i * 1000 + g, true)])
                })
                .collect();
            let ctx = self.ctx;
            let gens = &self.gens;
            let fr = &frontier;
            let products: Vec<SparseVec> = map_ref_collect(self.mode, &jobs, |(code, left)| {
                let (i, g) = (code / 1000, code % 1000);
                if *left {
                    ctx.vec_lmul(&gens[g], &fr[i])
                } else {
                    ctx.vec_mul(&fr[i], &gens[g])
                }
            });
            let mut next = vec![];
            for p in products {
                let red = self.space.reduce(&p);
                if !red.is_zero() {
                    self.space.insert_reduced(red.clone());
                    next.push(red);
                }
            }
            frontier = next;
        }
    }
}

/// A cell module realized by ambient coordinates and a reduction map.
pub struct CellModule {
    pub label: BVertex,
    pub level: LevelIndex,
    pub paths: Vec<BPath>,
    pub ctx: LevelCtx,
    pub ideal: RowSpace,
    /// reduced Murphy vectors, one per path, in path order
    pub murphy: Vec<SparseVec>,
    basis: CoordBasis,
    gram_mode: Mode,
}

impl CellModule {
    pub fn dim(&self) -> usize {
        self.paths.len()
    }

    /// Expresses an ambient element in module coordinates after reduction
    /// mod the ideal.
    pub fn coords(&self, x: &AlgebraElement) -> Result<Vec<RationalFunction>, CellError> {
        self.coords_vec(&self.ctx.to_vec(x))
    }

    fn coords_vec(&self, v: &SparseVec) -> Result<Vec<RationalFunction>, CellError> {
        let v = self.ideal.reduce(v);
        self.basis
            .express(&v)
            .ok_or_else(|| CellError::NotInModule("vector outside module span".into()))
    }

    /// Matrix of the right action of `x` in the Murphy basis, table
    /// convention: column t holds the expansion of `m_t . x`. Composite
    /// words then satisfy `action(xy) = action(y) action(x)`.
    pub fn action(&self, x: &AlgebraElement) -> Result<Matrix, CellError> {
        let mut out = Matrix::zero(self.dim(), self.dim());
        for (t, m) in self.murphy.iter().enumerate() {
            let w = self.ctx.vec_mul(m, x);
            let col = self.coords_vec(&w)?;
            for (s, v) in col.into_iter().enumerate() {
                out.rows[s][t] = v;
            }
        }
        Ok(out)
    }

    /// Row-convention action matrix `R(x) = action(x)^T`, multiplicative:
    /// `R(xy) = R(x) R(y)`.
    pub fn row_action(&self, x: &AlgebraElement) -> Result<Matrix, CellError> {
        Ok(self.action(x)?.transpose())
    }

    /// Gram matrix of the contravariant form on the Murphy basis:
    /// `<m_s, m_t> f_lambda = f_lambda p_s p_t* f_lambda` modulo the ideal.
    pub fn gram(&self) -> Result<Matrix, CellError> {
        let f = murphy_cyclic(&self.label, &self.ctx);
        let f_red = self.ideal.reduce(&self.ctx.to_vec(&f));
        if f_red.is_zero() {
            return Err(CellError::DependentBasis(
                "cyclic vector lies in the ideal".into(),
            ));
        }
        let p_facts: Vec<AlgebraElement> = self
            .paths
            .iter()
            .map(|t| path_factor(t, EdgeFactor::P, self.ctx.n))
            .collect();
        let n = self.dim();
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|s| (s..n).map(move |t| (s, t))).collect();
        let values: Vec<Option<RationalFunction>> =
            map_ref_collect(self.gram_mode, &pairs, |&(s, t)| {
                let e = f.mul(&p_facts[s]).mul(&p_facts[t].star()).mul(&f);
                let e_red = self.ideal.reduce(&self.ctx.to_vec(&e));
                proportionality(&e_red, &f_red)
            });
        let mut g = Matrix::zero(n, n);
        for (&(s, t), c) in pairs.iter().zip(values) {
            let c = c.ok_or_else(|| {
                CellError::DependentBasis(format!(
                    "form value at ({s},{t}) is not a multiple of the cyclic vector"
                ))
            })?;
            g.rows[s][t] = c.clone();
            g.rows[t][s] = c;
        }
        Ok(g)
    }
}

/// If `v = c * w`, returns c.
fn proportionality(v: &SparseVec, w: &SparseVec) -> Option<RationalFunction> {
    if v.is_zero() {
        return Some(RationalFunction::zero());
    }
    let lead = w.leading_index()?;
    let c = v.get(lead)?.div(w.get(lead).unwrap()).ok()?;
    if v.sub(&w.scale(&c)).is_zero() {
        Some(c)
    } else {
        None
    }
}

/// Builds the cell module for `label`, growing the level's ideal chain.
pub fn cell_module(
    label: &BVertex,
    chain: &mut IdealChain<'_>,
    max_level: LevelIndex,
) -> Result<CellModule, CellError> {
    let level = chain.ctx().level;
    if level.twice > max_level.twice {
        return Err(CellError::LevelBound {
            requested: level,
            bound: max_level,
        });
    }
    let ctx = LevelCtx::new(level);
    let ideal = chain.ideal_for(label).clone();
    let paths = enumerate_paths(level, label);
    let f = murphy_cyclic(label, &ctx);
    let murphy: Vec<SparseVec> = paths
        .iter()
        .map(|t| {
            let p = path_factor(t, EdgeFactor::P, ctx.n);
            ideal.reduce(&ctx.to_vec(&f.mul(&p)))
        })
        .collect();
    let basis = CoordBasis::new(&murphy)
        .ok_or_else(|| CellError::DependentBasis(format!("label {label} at level {level}")))?;
    Ok(CellModule {
        label: label.clone(),
        level,
        paths,
        ctx,
        ideal,
        murphy,
        basis,
        gram_mode: chain.mode,
    })
}

/// Builds every cell module at a level, descending label order, sharing one
/// ideal chain.
pub fn all_cell_modules(
    level: LevelIndex,
    mode: Mode,
    max_level: LevelIndex,
) -> Result<Vec<CellModule>, CellError> {
    let ctx = LevelCtx::new(level);
    let mut chain = IdealChain::new(&ctx, mode);
    let mut out = vec![];
    for v in vertices(level) {
        out.push(cell_module(&v, &mut chain, max_level)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::parse_ratfn;
    use crate::jm::JmTables;

    fn rf(s: &str) -> RationalFunction {
        parse_ratfn(s).unwrap()
    }

    fn pt(parts: &[u32]) -> Partition {
        Partition::new(parts.iter().copied())
    }

    #[test]
    fn perm_words() {
        assert_eq!(perm_word(1, 1, 3), AlgebraElement::unit(3, false));
        let s1 = generator(GenKind::S, 1, 3);
        let s2 = generator(GenKind::S, 2, 3);
        assert_eq!(perm_word(1, 3, 3), s1.mul(&s2));
        assert_eq!(perm_word(3, 1, 3), s2.mul(&s1));
    }

    #[test]
    fn symmetrizers() {
        assert_eq!(
            row_symmetrizer(&pt(&[1]), 2),
            AlgebraElement::unit(2, false)
        );
        assert_eq!(
            row_symmetrizer(&pt(&[2]), 2),
            AlgebraElement::unit(2, false).add(&generator(GenKind::S, 1, 2))
        );
        assert_eq!(
            row_symmetrizer(&pt(&[2, 1]), 3),
            AlgebraElement::unit(3, false).add(&generator(GenKind::S, 1, 3))
        );
    }

    #[test]
    fn cell_generators() {
        let x = cell_generator_elem(&BVertex::new(pt(&[]), 1, LevelIndex::whole(1)), 1);
        assert_eq!(x, generator(GenKind::PWhole, 1, 1));
        let x = cell_generator_elem(&BVertex::new(pt(&[1]), 1, LevelIndex::whole(2)), 2);
        assert_eq!(x, generator(GenKind::PWhole, 2, 2));
        let x = cell_generator_elem(&BVertex::new(pt(&[2]), 0, LevelIndex::whole(2)), 2);
        assert_eq!(
            x,
            AlgebraElement::unit(2, false).add(&generator(GenKind::S, 1, 2))
        );
        assert!(contraction_chain(LevelIndex::whole(1), 2, 2).is_zero());
    }

    #[test]
    fn stay_edge_factors_are_words() {
        // half->whole stay: w_{m,i}; whole->half stay: 1
        let from = BVertex::new(pt(&[1]), 0, LevelIndex::half(1));
        let to = BVertex::new(pt(&[1]), 1, LevelIndex::whole(2));
        assert_eq!(
            edge_factor(&from, &to, EdgeFactor::P, 2),
            perm_word(1, 2, 2)
        );
        let from = BVertex::new(pt(&[1]), 0, LevelIndex::whole(1));
        let to = BVertex::new(pt(&[1]), 0, LevelIndex::half(1));
        assert_eq!(
            edge_factor(&from, &to, EdgeFactor::P, 2),
            AlgebraElement::unit(2, false)
        );
    }

    #[test]
    fn branching_intertwiner_identity() {
        // f_mu p_edge = rho_edge f_lambda, exactly, on all edges into
        // levels 2 and 1+1/2
        for from_level in [LevelIndex::half(1), LevelIndex::whole(1), LevelIndex::whole(2), LevelIndex::half(2)] {
            let k = from_level.next().strands() as usize;
            for (from, to) in crate::bratteli::edges(from_level) {
                let f_mu = murphy_cyclic_elem(&to, k);
                let f_lam = murphy_cyclic_elem(&from, k);
                let p = edge_factor(&from, &to, EdgeFactor::P, k);
                let rho = edge_factor(&from, &to, EdgeFactor::Rho, k);
                assert_eq!(f_mu.mul(&p), rho.mul(&f_lam), "edge {from} -> {to}");
            }
        }
    }

    #[test]
    fn cyclic_vector_matches_printed_display() {
        // label ((2,1),2) at level 5+1/2 on 6 strands: the printed diagram
        // sum is p_1 p_2 (1 + s_3)
        let label = BVertex::new(pt(&[2, 1]), 2, LevelIndex::half(5));
        let f = murphy_cyclic_elem(&label, 6);
        let p12 = generator(GenKind::PWhole, 1, 6).mul(&generator(GenKind::PWhole, 2, 6));
        let want = p12.add(&p12.mul(&generator(GenKind::S, 3, 6)));
        assert_eq!(f, want);
    }

    #[test]
    fn module_dims_match_tables() {
        let max = LevelIndex::half(3);
        for (lvl, lam, ell, want) in [
            (LevelIndex::whole(1), vec![], 1u32, 1usize),
            (LevelIndex::half(1), vec![], 1, 2),
            (LevelIndex::half(1), vec![1], 0, 1),
            (LevelIndex::whole(2), vec![], 2, 2),
            (LevelIndex::whole(2), vec![1], 1, 3),
            (LevelIndex::whole(2), vec![2], 0, 1),
            (LevelIndex::whole(2), vec![1, 1], 0, 1),
            (LevelIndex::half(2), vec![1], 1, 5),
        ] {
            let ctx = LevelCtx::new(lvl);
            let mut chain = IdealChain::new(&ctx, Mode::Sequential);
            let label = BVertex::new(pt(&lam), ell, lvl);
            let m = cell_module(&label, &mut chain, max).unwrap();
            assert_eq!(m.dim(), want, "{label} at {lvl}");
        }
    }

    #[test]
    fn action_is_multiplicative_and_unit_is_identity() {
        let lvl = LevelIndex::whole(2);
        let ctx = LevelCtx::new(lvl);
        let mut chain = IdealChain::new(&ctx, Mode::Sequential);
        let label = BVertex::new(pt(&[1]), 1, lvl);
        let m = cell_module(&label, &mut chain, LevelIndex::half(3)).unwrap();
        assert!(m.action(&m.ctx.unit()).unwrap().is_identity());
        let gens = m.ctx.gens();
        for (_, x) in &gens {
            for (_, y) in &gens {
                let xy = x.mul(y);
                let r = m.row_action(&xy).unwrap();
                assert_eq!(r, m.row_action(x).unwrap().mul(&m.row_action(y).unwrap()));
                let a = m.action(&xy).unwrap();
                assert_eq!(a, m.action(y).unwrap().mul(&m.action(x).unwrap()));
            }
        }
    }

    #[test]
    fn one_dimensional_p_action_vanishes() {
        let lvl = LevelIndex::whole(2);
        let ctx = LevelCtx::new(lvl);
        let mut chain = IdealChain::new(&ctx, Mode::Sequential);
        let label = BVertex::new(pt(&[2]), 0, lvl);
        let m = cell_module(&label, &mut chain, LevelIndex::half(3)).unwrap();
        assert_eq!(m.dim(), 1);
        let p1 = generator(GenKind::PWhole, 1, 2);
        assert!(m.action(&p1).unwrap().is_zero());
    }

    #[test]
    fn smallest_module_p_acts_by_z() {
        let lvl = LevelIndex::whole(1);
        let ctx = LevelCtx::new(lvl);
        let mut chain = IdealChain::new(&ctx, Mode::Sequential);
        let label = BVertex::new(pt(&[]), 1, lvl);
        let m = cell_module(&label, &mut chain, LevelIndex::half(3)).unwrap();
        let a = m.action(&generator(GenKind::PWhole, 1, 1)).unwrap();
        assert_eq!(a.rows[0][0], rf("z"));
    }

    #[test]
    fn jm_triangular_with_content_diagonal() {
        use crate::bratteli::content;
        let lvl = LevelIndex::half(1);
        let ctx = LevelCtx::new(lvl);
        let mut chain = IdealChain::new(&ctx, Mode::Sequential);
        let label = BVertex::new(pt(&[]), 1, lvl);
        let m = cell_module(&label, &mut chain, LevelIndex::half(3)).unwrap();
        let jm = JmTables::new(m.ctx.n);
        for tw in 1..=lvl.twice {
            let point = LevelIndex::from_twice(tw);
            let l = jm.l(point).clone().into_half();
            let a = m.action(&l).unwrap();
            for (idx, t) in m.paths.iter().enumerate() {
                assert_eq!(a.rows[idx][idx], content(t, point, false));
                for s in (idx + 1)..m.dim() {
                    assert!(a.rows[s][idx].is_zero(), "L at {point} not triangular");
                }
            }
        }
    }

    #[test]
    fn gram_small() {
        let lvl = LevelIndex::half(1);
        let ctx = LevelCtx::new(lvl);
        let mut chain = IdealChain::new(&ctx, Mode::Sequential);
        let label = BVertex::new(pt(&[]), 1, lvl);
        let m = cell_module(&label, &mut chain, LevelIndex::half(3)).unwrap();
        let g = m.gram().unwrap();
        assert_eq!(g.rows[0][0], rf("z"));
        assert_eq!(g.rows[0][1], rf("1"));
        assert_eq!(g.rows[1][0], rf("1"));
        assert_eq!(g.rows[1][1], rf("1"));
    }

    #[test]
    fn murphy_two_sided_set_is_basis_k2() {
        // the elements p_s* f_lambda p_t form a basis of the 15-dimensional
        // algebra at k=2
        let lvl = LevelIndex::whole(2);
        let ctx = LevelCtx::new(lvl);
        let mut space = RowSpace::new();
        let mut count = 0;
        for v in vertices(lvl) {
            let f = murphy_cyclic_elem(&v, ctx.n);
            let paths = enumerate_paths(lvl, &v);
            for s in &paths {
                for t in &paths {
                    let p_s = path_factor(s, EdgeFactor::P, ctx.n);
                    let p_t = path_factor(t, EdgeFactor::P, ctx.n);
                    let elt = p_s.star().mul(&f).mul(&p_t);
                    assert!(space.insert(&ctx.to_vec(&elt)), "dependent at {v}");
                    count += 1;
                }
            }
        }
        assert_eq!(count, 15);
        assert_eq!(space.dim(), 15);
    }

    #[test]
    fn half_level_murphy_set_is_basis() {
        // same at level 1+1/2: 5 elements span the half algebra
        let lvl = LevelIndex::half(1);
        let ctx = LevelCtx::new(lvl);
        let mut space = RowSpace::new();
        for v in vertices(lvl) {
            let f = murphy_cyclic(&v, &ctx);
            let paths = enumerate_paths(lvl, &v);
            for s in &paths {
                for t in &paths {
                    let p_s = path_factor(s, EdgeFactor::P, ctx.n);
                    let p_t = path_factor(t, EdgeFactor::P, ctx.n);
                    let elt = p_s.star().mul(&f).mul(&p_t);
                    assert!(space.insert(&ctx.to_vec(&elt)), "dependent at {v}");
                }
            }
        }
        assert_eq!(space.dim(), 5);
    }
}

#[cfg(test)]
mod form_tests {
    use super::*;
    use crate::par::Mode;

    /// The contravariant form computed independently in both argument
    /// orders is symmetric.
    #[test]
    fn form_is_symmetric() {
        for lvl in [LevelIndex::half(1), LevelIndex::whole(2)] {
            let ctx = LevelCtx::new(lvl);
            let mut chain = IdealChain::new(&ctx, Mode::Sequential);
            for v in vertices(lvl) {
                let m = cell_module(&v, &mut chain, LevelIndex::half(3)).unwrap();
                let f = murphy_cyclic(&m.label, &m.ctx);
                let f_red = m.ideal.reduce(&m.ctx.to_vec(&f));
                let p_facts: Vec<AlgebraElement> = m
                    .paths
                    .iter()
                    .map(|t| path_factor(t, EdgeFactor::P, m.ctx.n))
                    .collect();
                for s in 0..m.dim() {
                    for t in 0..m.dim() {
                        let st = f.mul(&p_facts[s]).mul(&p_facts[t].star()).mul(&f);
                        let ts = f.mul(&p_facts[t]).mul(&p_facts[s].star()).mul(&f);
                        let a = proportionality(&m.ideal.reduce(&m.ctx.to_vec(&st)), &f_red);
                        let b = proportionality(&m.ideal.reduce(&m.ctx.to_vec(&ts)), &f_red);
                        assert_eq!(a, b, "form not symmetric at ({s},{t}) of {v}");
                        assert!(a.is_some());
                    }
                }
            }
        }
    }

    /// Restriction bookkeeping: the dimension of a module equals the sum of
    /// the dimensions of the modules one half-step down along the edges.
    #[test]
    fn branching_dimension_bookkeeping() {
        use crate::bratteli::{enumerate_paths, targets};
        for tw in 2..=7u32 {
            let lvl = LevelIndex::from_twice(tw);
            let below = LevelIndex::from_twice(tw - 1);
            for v in vertices(lvl) {
                let dim = enumerate_paths(lvl, &v).len();
                let sum: usize = vertices(below)
                    .iter()
                    .filter(|u| targets(u).contains(&v))
                    .map(|u| enumerate_paths(below, u).len())
                    .sum();
                assert_eq!(dim, sum, "branching at {v} level {lvl}");
            }
        }
    }
}
