//! Seminormal bases and representing matrices by two independent routes:
//! the interpolation-idempotent oracle on cell modules, and closed-form
//! entries (residue diagonals, interchange entry formulas, Gram edge
//! products). Crosschecks compare the routes entrywise and classify printed
//! discrepancies against the erratum registry.

use crate::bratteli::{
    content, content_vector, equiv, is_edge, sigma_neighbor, BPath, BVertex, EquivFlavor,
    Partition, PathOrder,
};
use crate::cellular::{CellError, CellModule, GenName};
use crate::central::{q_closed_form, SeriesFlavor};
use crate::errata::{DiscrepancyClass, ErratumId};
use crate::field::RationalFunction;
use crate::jm::JmTables;
use crate::level::LevelIndex;
use crate::linalg::Matrix;
use crate::report::Report;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug)]
pub enum SnError {
    /// Two distinct paths share a full content vector.
    Separation(String),
    /// A square-root entry does not exist in Q(z).
    ExtensionField(String),
    /// The degenerate-entry case analysis clashed; signals a bug.
    AmbiguousCase(String),
    Cell(CellError),
}

impl fmt::Display for SnError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SnError::Separation(s) => write!(f, "content separation failed: {s}"),
            SnError::ExtensionField(s) => write!(f, "entry requires a field extension: {s}"),
            SnError::AmbiguousCase(s) => write!(f, "ambiguous case analysis: {s}"),
            SnError::Cell(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for SnError {}

impl From<CellError> for SnError {
    fn from(e: CellError) -> Self {
        SnError::Cell(e)
    }
}

/// Which route produced a matrix family.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BasisKind {
    OracleIdempotent,
    Formula,
}

/// Representing matrices of one cell module in the simultaneous eigenbasis.
///
/// Matrices use the table convention: entry (s, t) is the coefficient of
/// basis vector s in (vector t) * generator.
pub struct SeminormalRep {
    pub label: BVertex,
    pub level: LevelIndex,
    pub paths: Vec<BPath>,
    pub kind: BasisKind,
    pub gens: BTreeMap<GenName, Matrix>,
    /// diagonal JM matrices, one per point
    pub jm: BTreeMap<u32, Matrix>,
    /// Gram matrix of the Murphy basis
    pub gram_murphy: Matrix,
    /// seminormal norms (diagonal of the transformed form)
    pub norms: Vec<RationalFunction>,
    /// basis change: columns express eigenvectors in the Murphy basis
    pub basis_change: Matrix,
}

impl SeminormalRep {
    pub fn dim(&self) -> usize {
        self.paths.len()
    }

    pub fn gen(&self, name: &GenName) -> Option<&Matrix> {
        self.gens.get(name)
    }

    /// Generator list available at this rep's level, in emission order.
    pub fn gen_names(level: LevelIndex) -> Vec<GenName> {
        let k = level.floor() as usize;
        let half = level.is_half();
        let mut out = vec![];
        for i in 1..=k {
            out.push(GenName::P(i));
        }
        let phmax = if half { k } else { k.saturating_sub(1) };
        for i in 1..=phmax {
            out.push(GenName::PHalf(i));
        }
        for i in 1..=phmax {
            out.push(GenName::SigmaH(i));
        }
        for i in 2..=k {
            out.push(GenName::SigmaW(i));
        }
        for i in 1..k {
            out.push(GenName::S(i));
        }
        out
    }
}

/// Applies the interpolation idempotent of one path to its Murphy vector,
/// returning the eigenvector in Murphy coordinates: the unit coordinate at
/// the path itself plus components at strictly larger paths only.
pub fn ft_vector(
    module: &CellModule,
    jm: &JmTables,
    t: usize,
) -> Result<Vec<RationalFunction>, SnError> {
    let level = module.level;
    let dim = module.dim();
    let contents: Vec<Vec<RationalFunction>> = module
        .paths
        .iter()
        .map(|p| content_vector(p, false))
        .collect();
    for a in 0..dim {
        for b in (a + 1)..dim {
            if contents[a] == contents[b] {
                return Err(SnError::Separation(format!(
                    "paths {} and {} share all content values",
                    module.paths[a], module.paths[b]
                )));
            }
        }
    }
    let embed = |x: crate::diagram::AlgebraElement| {
        if module.ctx.half {
            x.into_half()
        } else {
            x
        }
    };
    let mut col = vec![RationalFunction::zero(); dim];
    col[t] = RationalFunction::one();
    for tw in 1..=level.twice {
        let l = embed(jm.l(LevelIndex::from_twice(tw)).clone());
        let m = module.action(&l)?;
        let ct = &contents[t][(tw - 1) as usize];
        let mut others: Vec<RationalFunction> = vec![];
        for u in 0..dim {
            let cu = &contents[u][(tw - 1) as usize];
            if cu != ct && !others.contains(cu) {
                others.push(cu.clone());
            }
        }
        for cu in others {
            let mut next = vec![RationalFunction::zero(); dim];
            for s in 0..dim {
                let mut acc = RationalFunction::zero();
                for r in 0..dim {
                    if !m.rows[s][r].is_zero() && !col[r].is_zero() {
                        acc = &acc + &(&m.rows[s][r] * &col[r]);
                    }
                }
                next[s] = &acc - &(&cu * &col[s]);
            }
            let denom = (ct - &cu).inverse().expect("distinct contents differ");
            for v in next.iter_mut() {
                *v = &*v * &denom;
            }
            col = next;
        }
    }
    Ok(col)
}

/// Builds the seminormal representation of a cell module through the
/// interpolation idempotents.
pub fn oracle_rep(module: &CellModule, jm: &JmTables) -> Result<SeminormalRep, SnError> {
    let level = module.level;
    let n_points = level.twice;
    let dim = module.dim();
    // contents per path per point
    let contents: Vec<Vec<RationalFunction>> = module
        .paths
        .iter()
        .map(|t| content_vector(t, false))
        .collect();
    for a in 0..dim {
        for b in (a + 1)..dim {
            if contents[a] == contents[b] {
                return Err(SnError::Separation(format!(
                    "paths {} and {} share all content values",
                    module.paths[a], module.paths[b]
                )));
            }
        }
    }
    // JM action matrices in the Murphy basis
    let embed = |x: crate::diagram::AlgebraElement| {
        if module.ctx.half {
            x.into_half()
        } else {
            x
        }
    };
    let mut jm_murphy: BTreeMap<u32, Matrix> = BTreeMap::new();
    for tw in 1..=n_points {
        let l = embed(jm.l(LevelIndex::from_twice(tw)).clone());
        jm_murphy.insert(tw, module.action(&l)?);
    }
    // interpolation idempotent columns: V[:,t] = prod over points of
    // prod over distinct other contents (M - c I)/(c_t - c) applied to e_t
    let mut v = Matrix::zero(dim, dim);
    for t in 0..dim {
        let mut col = vec![RationalFunction::zero(); dim];
        col[t] = RationalFunction::one();
        for tw in 1..=n_points {
            let m = &jm_murphy[&tw];
            let ct = &contents[t][(tw - 1) as usize];
            let mut others: Vec<RationalFunction> = vec![];
            for u in 0..dim {
                let cu = &contents[u][(tw - 1) as usize];
                if cu != ct && !others.contains(cu) {
                    others.push(cu.clone());
                }
            }
            for cu in others {
                // col := (M col - cu col) / (ct - cu)
                let mut next = vec![RationalFunction::zero(); dim];
                for s in 0..dim {
                    let mut acc = RationalFunction::zero();
                    for r in 0..dim {
                        if !m.rows[s][r].is_zero() && !col[r].is_zero() {
                            acc = &acc + &(&m.rows[s][r] * &col[r]);
                        }
                    }
                    acc = &acc - &(&cu * &col[s]);
                    next[s] = acc;
                }
                let denom = (ct - &cu)
                    .inverse()
                    .expect("distinct contents differ");
                for s in 0..dim {
                    next[s] = &next[s] * &denom;
                }
                col = next;
            }
        }
        for s in 0..dim {
            v.rows[s][t] = col[s].clone();
        }
    }
    // unitriangularity: eigenvector t = Murphy t + higher paths only
    for t in 0..dim {
        if !v.rows[t][t].is_one() {
            return Err(SnError::AmbiguousCase(format!(
                "eigenvector {t} is not unitriangular"
            )));
        }
        for s in (t + 1)..dim {
            if !v.rows[s][t].is_zero() {
                return Err(SnError::AmbiguousCase(format!(
                    "eigenvector {t} has a lower-path component"
                )));
            }
        }
    }
    let v_inv = v.inverse().expect("unitriangular basis change");
    // generator matrices
    let k = level.floor() as usize;
    let mut gens: BTreeMap<GenName, Matrix> = BTreeMap::new();
    for name in SeminormalRep::gen_names(level) {
        let elem = match &name {
            GenName::P(i) => embed(crate::diagram::generator(
                crate::diagram::GenKind::PWhole,
                *i,
                module.ctx.n,
            )),
            GenName::PHalf(i) => embed(crate::diagram::generator(
                crate::diagram::GenKind::PHalf,
                *i,
                module.ctx.n,
            )),
            GenName::SigmaH(i) => embed(jm.sigma(LevelIndex::half(*i as u32)).clone()),
            GenName::SigmaW(i) => embed(jm.sigma(LevelIndex::whole(*i as u32)).clone()),
            GenName::S(i) => embed(crate::diagram::generator(
                crate::diagram::GenKind::S,
                *i,
                module.ctx.n,
            )),
            GenName::L(_) => unreachable!(),
        };
        let m = module.action(&elem)?;
        gens.insert(name, v_inv.mul(&m).mul(&v));
    }
    let _ = k;
    // JM matrices must be exactly diagonal with the content values
    let mut jm_diag: BTreeMap<u32, Matrix> = BTreeMap::new();
    for tw in 1..=n_points {
        let d = v_inv.mul(&jm_murphy[&tw]).mul(&v);
        if !d.is_diagonal() {
            return Err(SnError::AmbiguousCase(format!(
                "JM matrix at point {tw} is not diagonal in the eigenbasis"
            )));
        }
        for t in 0..dim {
            if d.rows[t][t] != contents[t][(tw - 1) as usize] {
                return Err(SnError::AmbiguousCase(format!(
                    "JM eigenvalue mismatch at point {tw}, path {t}"
                )));
            }
        }
        jm_diag.insert(tw, d);
    }
    // Gram data
    let gram_murphy = module.gram()?;
    let sn_gram = v.transpose().mul(&gram_murphy).mul(&v);
    if !sn_gram.is_diagonal() {
        return Err(SnError::AmbiguousCase(
            "seminormal vectors are not orthogonal".into(),
        ));
    }
    let norms = sn_gram.diagonal();
    Ok(SeminormalRep {
        label: module.label.clone(),
        level,
        paths: module.paths.clone(),
        kind: BasisKind::OracleIdempotent,
        gens,
        jm: jm_diag,
        gram_murphy,
        norms,
        basis_change: v,
    })
}

/// Conventions for the closed-form route, oracle-arbitrated defaults.
#[derive(Clone, Copy, Debug)]
pub struct Conventions {
    /// Node order used in the Gram edge products: `true` reads the printed
    /// comparison literally (a node is "smaller" when the other node sits in
    /// an earlier row, so below-sets appear in below-products). The false
    /// reading swaps the role of the rows.
    pub node_order_literal: bool,
    /// Use the sign-corrected third factor in the node-removing Gram edge.
    pub gamma_sign_corrected: bool,
}

impl Default for Conventions {
    fn default() -> Self {
        Conventions {
            node_order_literal: true,
            gamma_sign_corrected: true,
        }
    }
}

/// Gram edge factor.
///
/// Half-to-whole stay: `prod_A (z-c(b)-|mu|) / prod_R (z-c(b)-|mu|)`;
/// half-to-whole add at `a`: `prod_{A^{<a}} (c(a)-c(b)) / prod_{R^{<a}} (c(a)-c(b))`;
/// whole-to-half stay: 1; whole-to-half remove at `a`:
/// `(z-c-|lam|)/(z-c-|mu|) * (z-c-|mu|+r)/(z-c-|lam|+r) * third * prod_{R^{>a}}/prod_{A^{>a}}`
/// where the sign-corrected third factor is `(z-c-|lam|+r)/(z-c-|mu|+r)`
/// (the printed one is `(z+c+|lam|-r)/(z+c+|mu|-r)`).
pub fn gamma_edge(from: &BVertex, to: &BVertex, conv: Conventions) -> RationalFunction {
    assert!(is_edge(from, to));
    let z = RationalFunction::z();
    let int = RationalFunction::int;
    if from.level.is_half() {
        // half -> whole
        if to.lam == from.lam {
            let mu = &to.lam;
            let msize = int(mu.size() as i64);
            let mut num = RationalFunction::one();
            let mut den = RationalFunction::one();
            for b in mu.addable() {
                num = &num * &(&(&z - &int(Partition::node_content(b))) - &msize);
            }
            for b in mu.removable() {
                den = &den * &(&(&z - &int(Partition::node_content(b))) - &msize);
            }
            num.div(&den).expect("generic denominators")
        } else {
            let a = Partition::diff_node(&to.lam, &from.lam).expect("addition edge");
            let mu = &to.lam;
            let ca = int(Partition::node_content(a));
            let below = |b: (u32, u32)| -> bool {
                // nodes "below a" under the literal reading: strictly later rows
                if conv.node_order_literal {
                    b.0 > a.0
                } else {
                    b.0 < a.0
                }
            };
            let mut num = RationalFunction::one();
            let mut den = RationalFunction::one();
            for b in mu.addable() {
                if below(b) {
                    num = &num * &(&ca - &int(Partition::node_content(b)));
                }
            }
            for b in mu.removable() {
                if below(b) {
                    den = &den * &(&ca - &int(Partition::node_content(b)));
                }
            }
            num.div(&den).expect("distinct contents")
        }
    } else {
        // whole -> half
        if to.lam == from.lam {
            RationalFunction::one()
        } else {
            let a = Partition::diff_node(&from.lam, &to.lam).expect("removal edge");
            let lam = &from.lam;
            let mu = &to.lam;
            let j = a.0 as usize;
            let r_val: u32 = mu.parts().iter().skip(j).sum();
            let ca = int(Partition::node_content(a));
            let lsize = int(lam.size() as i64);
            let msize = int(mu.size() as i64);
            let rr = int(r_val as i64);
            let f1 = (&(&z - &ca) - &lsize)
                .div(&(&(&z - &ca) - &msize))
                .expect("generic");
            let f2 = (&(&(&z - &ca) - &msize) + &rr)
                .div(&(&(&(&z - &ca) - &lsize) + &rr))
                .expect("generic");
            let f3 = if conv.gamma_sign_corrected {
                (&(&(&z - &ca) - &lsize) + &rr)
                    .div(&(&(&(&z - &ca) - &msize) + &rr))
                    .expect("generic")
            } else {
                (&(&(&z + &ca) + &lsize) - &rr)
                    .div(&(&(&(&z + &ca) + &msize) - &rr))
                    .expect("generic")
            };
            let above = |b: (u32, u32)| -> bool {
                if conv.node_order_literal {
                    b.0 < a.0
                } else {
                    b.0 > a.0
                }
            };
            let mut num = RationalFunction::one();
            let mut den = RationalFunction::one();
            for b in mu.removable() {
                if above(b) {
                    num = &num * &(&ca - &int(Partition::node_content(b)));
                }
            }
            for b in mu.addable() {
                if above(b) {
                    den = &den * &(&ca - &int(Partition::node_content(b)));
                }
            }
            let tail = num.div(&den).expect("distinct contents");
            &(&(&f1 * &f2) * &f3) * &tail
        }
    }
}

/// Product of Gram edge factors along the path: edges into whole points and
/// out of them, from point 1 up.
pub fn gram_norm(t: &BPath, conv: Conventions) -> RationalFunction {
    let mut acc = RationalFunction::one();
    let verts = t.vertices();
    // skip the initial (0 -> 1/2) edge: always a stay with factor 1
    for w in verts.windows(2).skip(1) {
        acc = &acc * &gamma_edge(&w[0], &w[1], conv);
    }
    acc
}

/// Residue-route diagonal of a contraction generator.
///
/// Whole contraction p_i at a stationary path (t(i-1) = t(i) = mu):
/// the residue of the half-flavor series of mu at the normalized content of
/// point i-1/2. Half contraction p_{i+1/2} at t(i-1/2) = t(i+1/2) = mu: the
/// residue of the whole-flavor series at the normalized content of point i.
/// Zero without stationarity.
pub fn entry_p_diagonal(t: &BPath, name: &GenName) -> Result<RationalFunction, SnError> {
    match name {
        GenName::P(i) => {
            let i = *i as u32;
            let before = t.lam(LevelIndex::whole(i - 1));
            let after = t.lam(LevelIndex::whole(i));
            if before != after {
                return Ok(RationalFunction::zero());
            }
            let q = q_closed_form(before, SeriesFlavor::Half);
            let x = content(t, LevelIndex::half(i - 1), true);
            q.residue_at(&x)
                .map_err(|e| SnError::ExtensionField(e.to_string()))
        }
        GenName::PHalf(i) => {
            let i = *i as u32;
            let before = t.lam(LevelIndex::half(i - 1));
            let after = t.lam(LevelIndex::half(i));
            if before != after {
                return Ok(RationalFunction::zero());
            }
            let q = q_closed_form(before, SeriesFlavor::Whole);
            let x = content(t, LevelIndex::whole(i), true);
            q.residue_at(&x)
                .map_err(|e| SnError::ExtensionField(e.to_string()))
        }
        _ => Err(SnError::AmbiguousCase("not a contraction generator".into())),
    }
}

/// The printed mixed-case diagonal formulas of the published entry rules,
/// for the
/// crosscheck: returns None when the case does not apply (pure-stationary
/// cases are handled by the product formulas which agree with the residues).
pub fn snc_case2_printed(t: &BPath, name: &GenName) -> Option<RationalFunction> {
    let int = RationalFunction::int;
    let z = RationalFunction::z();
    match name {
        GenName::P(i) => {
            let i = *i as u32;
            let m1 = t.lam(LevelIndex::whole(i - 1));
            let mh = t.lam(LevelIndex::half(i - 1));
            let m2 = t.lam(LevelIndex::whole(i));
            if m1 != m2 || m1 == mh {
                return None;
            }
            let beta = Partition::diff_node(m1, mh)?;
            let mu = m1;
            let cb = int(Partition::node_content(beta));
            let msize = int(mu.size() as i64);
            // (z - c - |mu| + 1)/(z - c - |mu|) * prod_A (c(b)-c(a)) / prod_{R\b} (c(b)-c(r))
            let lead_num = &(&(&z - &cb) - &msize) + &RationalFunction::one();
            let lead_den = &(&z - &cb) - &msize;
            let mut num = lead_num;
            let mut den = lead_den;
            for a in mu.addable() {
                num = &num * &(&cb - &int(Partition::node_content(a)));
            }
            for b in mu.removable() {
                if b != beta {
                    den = &den * &(&cb - &int(Partition::node_content(b)));
                }
            }
            Some(num.div(&den).expect("distinct contents"))
        }
        GenName::PHalf(i) => {
            let i = *i as u32;
            let h1 = t.lam(LevelIndex::half(i - 1));
            let w = t.lam(LevelIndex::whole(i));
            let h2 = t.lam(LevelIndex::half(i));
            if h1 != h2 || h1 == w {
                return None;
            }
            let beta = Partition::diff_node(w, h1)?;
            let mu = h1;
            let cb = int(Partition::node_content(beta));
            let msize = int(mu.size() as i64);
            // printed: (z + c + |mu| + 1)/(z + c + |mu|) * prod_R / prod_{A\b}
            let lead_num = &(&(&z + &cb) + &msize) + &RationalFunction::one();
            let lead_den = &(&z + &cb) + &msize;
            let mut num = lead_num;
            let mut den = lead_den;
            for b in mu.removable() {
                num = &num * &(&cb - &int(Partition::node_content(b)));
            }
            for a in mu.addable() {
                if a != beta {
                    den = &den * &(&cb - &int(Partition::node_content(a)));
                }
            }
            Some(num.div(&den).expect("distinct contents"))
        }
        _ => None,
    }
}

/// The sign-corrected mixed-case diagonals (matching the residue route).
pub fn snc_case2_corrected(t: &BPath, name: &GenName) -> Option<RationalFunction> {
    match name {
        GenName::P(_) => snc_case2_printed(t, name).map(|v| -&v),
        GenName::PHalf(i) => {
            let i = *i as u32;
            let h1 = t.lam(LevelIndex::half(i - 1));
            let w = t.lam(LevelIndex::whole(i));
            let h2 = t.lam(LevelIndex::half(i));
            if h1 != h2 || h1 == w {
                return None;
            }
            let int = RationalFunction::int;
            let z = RationalFunction::z();
            let beta = Partition::diff_node(w, h1)?;
            let mu = h1;
            let cb = int(Partition::node_content(beta));
            let msize = int(mu.size() as i64);
            // corrected: (z - c - |mu| - 1)/(z - c - |mu|) * same products
            let lead_num = &(&(&z - &cb) - &msize) - &RationalFunction::one();
            let lead_den = &(&z - &cb) - &msize;
            let mut num = lead_num;
            let mut den = lead_den;
            for b in mu.removable() {
                num = &num * &(&cb - &int(Partition::node_content(b)));
            }
            for a in mu.addable() {
                if a != beta {
                    den = &den * &(&cb - &int(Partition::node_content(a)));
                }
            }
            Some(num.div(&den).expect("distinct contents"))
        }
        _ => None,
    }
}

/// The stationary-case diagonal products of the published entry rules.
pub fn snc_case1(t: &BPath, name: &GenName) -> Option<RationalFunction> {
    let int = RationalFunction::int;
    let z = RationalFunction::z();
    match name {
        GenName::P(i) => {
            let i = *i as u32;
            let m1 = t.lam(LevelIndex::whole(i - 1));
            let mh = t.lam(LevelIndex::half(i - 1));
            let m2 = t.lam(LevelIndex::whole(i));
            if m1 != m2 || m1 != mh {
                return None;
            }
            let mu = m1;
            let msize = int(mu.size() as i64);
            let mut num = RationalFunction::one();
            let mut den = RationalFunction::one();
            for a in mu.addable() {
                num = &num * &(&(&z - &int(Partition::node_content(a))) - &msize);
            }
            for b in mu.removable() {
                den = &den * &(&(&z - &int(Partition::node_content(b))) - &msize);
            }
            Some(num.div(&den).expect("generic"))
        }
        GenName::PHalf(i) => {
            let i = *i as u32;
            let h1 = t.lam(LevelIndex::half(i - 1));
            let w = t.lam(LevelIndex::whole(i));
            let h2 = t.lam(LevelIndex::half(i));
            if h1 != h2 || h1 != w {
                return None;
            }
            let mu = h1;
            let msize = int(mu.size() as i64);
            let mut num = RationalFunction::one();
            let mut den = RationalFunction::one();
            for b in mu.removable() {
                num = &num * &(&(&z - &int(Partition::node_content(b))) - &msize);
            }
            for a in mu.addable() {
                den = &den * &(&(&z - &int(Partition::node_content(a))) - &msize);
            }
            Some(num.div(&den).expect("generic"))
        }
        _ => None,
    }
}

/// Which interchange family.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SigmaFlavor {
    /// sigma_{i+1/2}
    Half,
    /// sigma_{i+1}
    Whole,
}

/// Closed-form interchange matrix from the contraction matrices and the
/// content vectors.
///
/// Entries with nonvanishing content denominators come from the restated JM
/// commutation identities. Remaining entries are resolved iteratively: by
/// contravariant symmetry from the transposed entry (the interchange
/// elements are star-invariant), by the swap closed form when the
/// interchanged path exists, and by the contract-through pivot relation.
pub fn sigma_matrix_formula(
    paths: &[BPath],
    i: usize,
    flavor: SigmaFlavor,
    p_whole: &Matrix,   // p_i for Half, p_{i+1} for Whole
    p_half: &Matrix,    // p_{i+1/2} in both
    norms: &[RationalFunction],
    level: LevelIndex,
) -> Result<Matrix, SnError> {
    let dim = paths.len();
    let (lo, hi, sigma_point) = match flavor {
        SigmaFlavor::Half => (
            LevelIndex::half(i as u32 - 1),
            LevelIndex::half(i as u32),
            LevelIndex::half(i as u32),
        ),
        SigmaFlavor::Whole => (
            LevelIndex::whole(i as u32),
            LevelIndex::whole(i as u32 + 1),
            LevelIndex::whole(i as u32 + 1),
        ),
    };
    assert!(hi.twice <= level.twice);
    let c = |t: usize, at: LevelIndex| content(&paths[t], at, false);
    let z = RationalFunction::z();
    let d_mid = {
        let at = LevelIndex::whole(i as u32);
        let mut m = Matrix::zero(dim, dim);
        for t in 0..dim {
            m.rows[t][t] = c(t, at);
        }
        m
    };
    let generic_num: Matrix = match flavor {
        SigmaFlavor::Half => {
            let ph_pw = p_half.mul(p_whole);
            let mut m = Matrix::zero(dim, dim);
            for s in 0..dim {
                for t in 0..dim {
                    let mut v = if s == t {
                        RationalFunction::one()
                    } else {
                        RationalFunction::zero()
                    };
                    let coef = &(&z - &c(s, LevelIndex::whole(i as u32))) - &c(t, lo);
                    v = &v + &(&coef * &p_half.rows[s][t]);
                    v = &v - &ph_pw.rows[s][t];
                    m.rows[s][t] = v;
                }
            }
            m
        }
        SigmaFlavor::Whole => {
            let pw_ph = p_whole.mul(p_half);
            let quad = p_half.mul(p_whole).mul(&d_mid).mul(p_half);
            let mut m = Matrix::zero(dim, dim);
            for s in 0..dim {
                for t in 0..dim {
                    let mut v = if s == t {
                        RationalFunction::one()
                    } else {
                        RationalFunction::zero()
                    };
                    v = &v - &(&c(t, lo) * &p_half.rows[s][t]);
                    v = &v - &pw_ph.rows[s][t];
                    v = &v + &quad.rows[s][t];
                    m.rows[s][t] = v;
                }
            }
            m
        }
    };
    // pass 1: zero pattern and generic entries
    let mut entries: Vec<Vec<Option<RationalFunction>>> = vec![vec![None; dim]; dim];
    for t in 0..dim {
        for s in 0..dim {
            if !equiv(&paths[s], &paths[t], sigma_point, EquivFlavor::Simeq) {
                entries[s][t] = Some(RationalFunction::zero());
                continue;
            }
            let den = &c(s, hi) - &c(t, lo);
            if !den.is_zero() {
                entries[s][t] =
                    Some(generic_num.rows[s][t].div(&den).expect("nonzero denominator"));
            }
        }
    }
    // iterative resolution of the degenerate entries
    loop {
        let mut progressed = false;
        for t in 0..dim {
            for s in 0..dim {
                if entries[s][t].is_some() {
                    continue;
                }
                // contravariant symmetry from the transpose
                if let Some(ts) = entries[t][s].clone() {
                    let v = (&ts * &norms[t])
                        .div(&norms[s])
                        .map_err(|e| SnError::ExtensionField(e.to_string()))?;
                    entries[s][t] = Some(v);
                    progressed = true;
                    continue;
                }
                // swap closed form when both inner points move
                let t_path = &paths[t];
                let inner_lo =
                    t_path.lam(lo) == t_path.lam(LevelIndex::from_twice(lo.twice + 2));
                let inner_hi =
                    t_path.lam(LevelIndex::from_twice(hi.twice - 2)) == t_path.lam(hi);
                if !inner_lo && !inner_hi {
                    if let Some(sw) = sigma_neighbor(t_path, sigma_point) {
                        if paths[s] == sw {
                            let delta = (&c(t, hi) - &c(t, lo))
                                .inverse()
                                .map_err(|e| SnError::AmbiguousCase(e.to_string()))?;
                            let val = match crate::bratteli::compare_paths(&paths[s], t_path) {
                                PathOrder::Succ(_) => {
                                    &RationalFunction::one() - &(&delta * &delta)
                                }
                                PathOrder::Prec(_) => RationalFunction::one(),
                                PathOrder::Equal => unreachable!(),
                            };
                            entries[s][t] = Some(val);
                            progressed = true;
                            continue;
                        }
                    }
                }
                // pivot relation, usable once the other entries of the
                // contraction support in this column are known
                if let Some(v_idx) = find_pivot(paths, t, i, flavor, level) {
                    if s == v_idx {
                        let pvv = &p_whole.rows[v_idx][v_idx];
                        let phvv = &p_half.rows[v_idx][v_idx];
                        if pvv.is_zero() || phvv.is_zero() {
                            continue;
                        }
                        let mut known = true;
                        let inner = LevelIndex::whole(i as u32);
                        let mut val = p_half.rows[v_idx][t]
                            .div(&(pvv * phvv))
                            .expect("nonzero pivot");
                        val = &val * &c(t, inner);
                        for u in 0..dim {
                            if u == v_idx || p_whole.rows[v_idx][u].is_zero() {
                                continue;
                            }
                            match &entries[u][t] {
                                Some(e) => {
                                    let coef =
                                        p_whole.rows[v_idx][u].div(pvv).expect("nonzero pivot");
                                    val = &val - &(&coef * e);
                                }
                                None => {
                                    known = false;
                                    break;
                                }
                            }
                        }
                        if known {
                            entries[s][t] = Some(val);
                            progressed = true;
                            continue;
                        }
                    }
                }
            }
        }
        if !progressed {
            break;
        }
    }
    let mut out = Matrix::zero(dim, dim);
    for t in 0..dim {
        for s in 0..dim {
            out.rows[s][t] = entries[s][t].clone().ok_or_else(|| {
                SnError::AmbiguousCase(format!(
                    "entry ({s},{t}) of the interchange at point {sigma_point} unresolved"
                ))
            })?;
        }
    }
    Ok(out)
}

/// The pivot path for a degenerate column, per the mixed cases: replaces the
/// moving point of `t` so the relevant contraction diagonal is nonzero.
fn find_pivot(
    paths: &[BPath],
    t: usize,
    i: usize,
    flavor: SigmaFlavor,
    _level: LevelIndex,
) -> Option<usize> {
    let t_path = &paths[t];
    let cand: Option<BPath> = match flavor {
        SigmaFlavor::Half => {
            let lo = LevelIndex::half(i as u32 - 1);
            let hi = LevelIndex::half(i as u32);
            let whole = LevelIndex::whole(i as u32);
            if t_path.lam(lo) == t_path.lam(hi) {
                // replace the whole point i by t(i-1)
                replace_point(t_path, whole, t_path.lam(LevelIndex::whole(i as u32 - 1)).clone())
            } else if t_path.lam(LevelIndex::whole(i as u32 - 1)) == t_path.lam(whole) {
                // replace the half point i-1/2 by t(i+1/2)
                replace_point(t_path, lo, t_path.lam(hi).clone())
            } else {
                None
            }
        }
        SigmaFlavor::Whole => {
            let lo = LevelIndex::half(i as u32 - 1);
            let hi = LevelIndex::half(i as u32);
            let w1 = LevelIndex::whole(i as u32);
            let w2 = LevelIndex::whole(i as u32 + 1);
            if t_path.lam(lo) == t_path.lam(hi) {
                replace_point(t_path, w1, t_path.lam(w2).clone())
            } else if t_path.lam(w1) == t_path.lam(w2) {
                replace_point(t_path, hi, t_path.lam(lo).clone())
            } else {
                None
            }
        }
    };
    let cand = cand?;
    paths.iter().position(|p| p == &cand)
}

fn replace_point(t: &BPath, at: LevelIndex, lam: Partition) -> Option<BPath> {
    let mut verts = t.vertices().to_vec();
    let idx = at.twice as usize;
    if at.floor() < lam.size() {
        return None;
    }
    let ell = at.floor() - lam.size();
    verts[idx] = BVertex::new(lam, ell, at);
    // validate edges around the replacement
    let lo = idx.saturating_sub(1);
    let hi = (idx + 1).min(verts.len() - 1);
    if lo < idx && !is_edge(&verts[lo], &verts[idx]) {
        return None;
    }
    if idx < hi && !is_edge(&verts[idx], &verts[hi]) {
        return None;
    }
    Some(BPath::new(verts))
}

/// Builds the full formula-route matrices for a rep: contraction diagonals
/// from residues, off-diagonals from the oracle (the default sign scheme),
/// interchange matrices from the closed forms, transpositions as products.
pub fn formula_rep(oracle: &SeminormalRep) -> Result<SeminormalRep, SnError> {
    let level = oracle.level;
    let k = level.floor() as usize;
    let half = level.is_half();
    let dim = oracle.dim();
    let mut gens: BTreeMap<GenName, Matrix> = BTreeMap::new();
    // contraction matrices: oracle off-diagonals, residue diagonals
    let phmax = if half { k } else { k.saturating_sub(1) };
    for name in SeminormalRep::gen_names(level) {
        match name {
            GenName::P(_) | GenName::PHalf(_) => {
                let mut m = oracle.gens[&name].clone();
                for (t, path) in oracle.paths.iter().enumerate() {
                    m.rows[t][t] = entry_p_diagonal(path, &name)?;
                }
                gens.insert(name, m);
            }
            _ => {}
        }
    }
    // interchange matrices; degenerate entries use the closed-form norms
    let conv = Conventions::default();
    let norms: Vec<RationalFunction> = oracle
        .paths
        .iter()
        .map(|t| gram_norm(t, conv))
        .collect();
    for i in 1..=phmax {
        let p_w = &gens[&GenName::P(i)];
        let p_h = &gens[&GenName::PHalf(i)];
        let m = sigma_matrix_formula(&oracle.paths, i, SigmaFlavor::Half, p_w, p_h, &norms, level)?;
        gens.insert(GenName::SigmaH(i), m);
    }
    for i in 2..=k {
        // sigma_i = sigma_{(i-1)+1}: needs p_i and p_{(i-1)+1/2}
        let p_w = &gens[&GenName::P(i)];
        let p_h = &gens[&GenName::PHalf(i - 1)];
        let m = sigma_matrix_formula(&oracle.paths, i - 1, SigmaFlavor::Whole, p_w, p_h, &norms, level)?;
        gens.insert(GenName::SigmaW(i), m);
    }
    // transpositions: s_1 = sigma_2, s_i = sigma_{i+1/2} sigma_{i+1}
    for i in 1..k {
        let m = if i == 1 {
            gens[&GenName::SigmaW(2)].clone()
        } else {
            gens[&GenName::SigmaH(i)].mul(&gens[&GenName::SigmaW(i + 1)])
        };
        gens.insert(GenName::S(i), m);
    }
    let _ = dim;
    Ok(SeminormalRep {
        label: oracle.label.clone(),
        level,
        paths: oracle.paths.clone(),
        kind: BasisKind::Formula,
        gens,
        jm: oracle.jm.clone(),
        gram_murphy: oracle.gram_murphy.clone(),
        norms: oracle.norms.clone(),
        basis_change: oracle.basis_change.clone(),
    })
}

/// Off-diagonal contraction entry under the square-root scheme: returns a
/// value whose square is `p(s,s) p(t,t) N_t / N_s`, signs fixed per class by
/// anchoring at the class's first member and propagating the chain rule.
pub fn entry_p_offdiagonal_sqrt(
    rep: &SeminormalRep,
    name: &GenName,
    s: usize,
    t: usize,
) -> Result<RationalFunction, SnError> {
    let m = &rep.gens[name];
    if s == t {
        return Ok(m.rows[s][s].clone());
    }
    let squared = m.rows[s][s]
        .mul_chain(&m.rows[t][t])
        .mul_chain(&rep.norms[t])
        .div(&rep.norms[s])
        .map_err(|e| SnError::ExtensionField(e.to_string()))?;
    squared
        .sqrt()
        .ok_or_else(|| SnError::ExtensionField(format!("entry ({s},{t}) square is not a square")))
}

trait MulChain {
    fn mul_chain(&self, rhs: &RationalFunction) -> RationalFunction;
}

impl MulChain for RationalFunction {
    fn mul_chain(&self, rhs: &RationalFunction) -> RationalFunction {
        self * rhs
    }
}

/// Entry-level crosscheck of one label: formula route vs oracle route, the
/// printed mixed-case diagonals vs the arbitrated values, zero patterns,
/// rank-one class structure, and the chain/squared identities.
pub fn crosscheck(oracle: &SeminormalRep, formula: &SeminormalRep) -> Report {
    let mut r = Report::new(format!("crosscheck {} level {}", oracle.label, oracle.level));
    let dim = oracle.dim();
    // 1. formula matrices agree with oracle matrices
    for (name, m) in &formula.gens {
        let ok = &oracle.gens[name] == m;
        r.push(
            format!("formula-vs-oracle {name}"),
            format!("{}", oracle.label),
            ok,
        );
    }
    // 2. printed mixed-case diagonals: detect and classify
    for (name, m) in &oracle.gens {
        let is_p = matches!(name, GenName::P(_) | GenName::PHalf(_));
        if !is_p {
            continue;
        }
        for (t, path) in oracle.paths.iter().enumerate() {
            if let Some(printed) = snc_case2_printed(path, name) {
                let oracle_val = &m.rows[t][t];
                if &printed == oracle_val {
                    r.push(
                        format!("case2 {name} t={t}"),
                        "printed matches oracle",
                        true,
                    );
                } else {
                    let corrected = snc_case2_corrected(path, name);
                    let class = if corrected.as_ref() == Some(oracle_val) {
                        DiscrepancyClass::SignOnly
                    } else {
                        DiscrepancyClass::Structural
                    };
                    let id = match name {
                        GenName::P(_) => ErratumId::PWholeCase2,
                        _ => ErratumId::PHalfCase2,
                    };
                    match class {
                        DiscrepancyClass::SignOnly => r.push_known(
                            format!("case2 {name} t={t}"),
                            format!("printed {printed} vs oracle {oracle_val}"),
                            format!("classified sign-only, erratum {id}"),
                        ),
                        _ => r.push(
                            format!("case2 {name} t={t}"),
                            format!("printed {printed} vs oracle {oracle_val}: structural"),
                            false,
                        ),
                    }
                }
            }
            if let Some(case1) = snc_case1(path, name) {
                r.push(
                    format!("case1 {name} t={t}"),
                    format!("{}", oracle.label),
                    case1 == m.rows[t][t],
                );
            }
        }
    }
    // 3. zero patterns and rank-one classes
    for (name, m) in &oracle.gens {
        match name {
            GenName::P(i) => {
                let point = LevelIndex::half(*i as u32 - 1);
                zero_pattern_checks(&mut r, oracle, name, m, point, EquivFlavor::Tilde);
                rank_one_class_checks(&mut r, oracle, name, m, point);
            }
            GenName::PHalf(i) => {
                let point = LevelIndex::whole(*i as u32);
                zero_pattern_checks(&mut r, oracle, name, m, point, EquivFlavor::Tilde);
                rank_one_class_checks(&mut r, oracle, name, m, point);
            }
            GenName::SigmaH(i) => {
                let point = LevelIndex::half(*i as u32);
                zero_pattern_checks(&mut r, oracle, name, m, point, EquivFlavor::Simeq);
            }
            GenName::SigmaW(i) => {
                let point = LevelIndex::whole(*i as u32);
                zero_pattern_checks(&mut r, oracle, name, m, point, EquivFlavor::Simeq);
            }
            _ => {}
        }
    }
    // 4. chain and squared identities on the contraction entries; both are
    // rank-one statements per equivalence class, so triples and pairs range
    // within one class
    for (name, m) in &oracle.gens {
        let point = match name {
            GenName::P(i) => LevelIndex::half(*i as u32 - 1),
            GenName::PHalf(i) => LevelIndex::whole(*i as u32),
            _ => continue,
        };
        let mut ok_chain = true;
        let mut ok_square = true;
        for s in 0..dim {
            for t in 0..dim {
                if !equiv(&oracle.paths[s], &oracle.paths[t], point, EquivFlavor::Tilde) {
                    continue;
                }
                for u in 0..dim {
                    if !equiv(&oracle.paths[t], &oracle.paths[u], point, EquivFlavor::Tilde) {
                        continue;
                    }
                    let lhs = &m.rows[s][t] * &m.rows[t][u];
                    let rhs = &m.rows[t][t] * &m.rows[s][u];
                    if lhs != rhs {
                        ok_chain = false;
                    }
                }
                let sq = &m.rows[s][t] * &m.rows[s][t];
                let want = m.rows[s][s]
                    .mul_chain(&m.rows[t][t])
                    .mul_chain(&oracle.norms[t])
                    .div(&oracle.norms[s])
                    .expect("norms nonzero");
                if sq != want {
                    ok_square = false;
                }
            }
        }
        r.push(
            format!("chain-identity {name}"),
            format!("{}", oracle.label),
            ok_chain,
        );
        r.push(
            format!("squared-entry {name}"),
            format!("{}", oracle.label),
            ok_square,
        );
    }
    // 4b. the half contractions are idempotents, so the trace equals the
    // rank: one per equivalence class containing a stationary path
    for (name, m) in &oracle.gens {
        if let GenName::PHalf(i) = name {
            let point = LevelIndex::whole(*i as u32);
            let mut rank = 0usize;
            let mut seen = vec![false; dim];
            for t in 0..dim {
                if seen[t] {
                    continue;
                }
                let class: Vec<usize> = (0..dim)
                    .filter(|&s| {
                        equiv(&oracle.paths[s], &oracle.paths[t], point, EquivFlavor::Tilde)
                    })
                    .collect();
                for &s in &class {
                    seen[s] = true;
                }
                let has_stationary = class.iter().any(|&s| {
                    let p = &oracle.paths[s];
                    p.lam(LevelIndex::half(*i as u32 - 1)) == p.lam(LevelIndex::half(*i as u32))
                });
                if has_stationary {
                    rank += 1;
                }
            }
            r.push(
                format!("trace-rank {name}"),
                format!("rank {rank}"),
                m.trace() == RationalFunction::int(rank as i64),
            );
        }
    }
    // 5. stationary-fix identity: Murphy vectors with a final grown plateau
    // are fixed by the top half interchange (checked at the top point)
    if oracle.level.is_half() {
        let kk = oracle.level.floor();
        if kk >= 1 {
            let name = GenName::SigmaH(kk as usize);
            if let Some(_m) = oracle.gens.get(&name) {
                // checked against the Murphy-basis action in the module by
                // the rep builder; here verify the eigen-level consequence:
                // sigma fixes f_t for qualifying t
                for (t, path) in oracle.paths.iter().enumerate() {
                    let a = path.lam(LevelIndex::whole(kk - 1));
                    let b = path.lam(LevelIndex::half(kk - 1));
                    let c1 = path.lam(LevelIndex::whole(kk));
                    let d = path.lam(LevelIndex::half(kk));
                    if a == b && c1 == d && a != c1 && c1.size() == a.size() + 1 {
                        let col_ok = (0..oracle.dim()).all(|s| {
                            if s == t {
                                oracle.gens[&name].rows[s][t].is_one()
                            } else {
                                oracle.gens[&name].rows[s][t].is_zero()
                            }
                        });
                        r.push(
                            format!("fixed-vector sigma at t={t}"),
                            format!("{}", oracle.label),
                            col_ok,
                        );
                    }
                }
            }
        }
    }
    r
}

fn zero_pattern_checks(
    r: &mut Report,
    rep: &SeminormalRep,
    name: &GenName,
    m: &Matrix,
    point: LevelIndex,
    flavor: EquivFlavor,
) {
    let mut ok = true;
    for s in 0..rep.dim() {
        for t in 0..rep.dim() {
            if !m.rows[s][t].is_zero() && !equiv(&rep.paths[s], &rep.paths[t], point, flavor) {
                ok = false;
            }
        }
    }
    r.push(
        format!("zero-pattern {name}"),
        format!("{}", rep.label),
        ok,
    );
}

fn rank_one_class_checks(
    r: &mut Report,
    rep: &SeminormalRep,
    name: &GenName,
    m: &Matrix,
    point: LevelIndex,
) {
    // each equivalence class on which the contraction acts has rank <= 1,
    // and stationary paths have nonzero diagonal
    let dim = rep.dim();
    let mut seen: Vec<bool> = vec![false; dim];
    let mut ok_rank = true;
    let mut ok_nonzero = true;
    for t in 0..dim {
        if seen[t] {
            continue;
        }
        let class: Vec<usize> = (0..dim)
            .filter(|&s| equiv(&rep.paths[s], &rep.paths[t], point, EquivFlavor::Tilde))
            .collect();
        for &s in &class {
            seen[s] = true;
        }
        let sub = Matrix::from_rows(
            class
                .iter()
                .map(|&s| class.iter().map(|&u| m.rows[s][u].clone()).collect())
                .collect(),
        );
        if sub.rank() > 1 {
            ok_rank = false;
        }
    }
    for (t, path) in rep.paths.iter().enumerate() {
        let stationary = match name {
            GenName::P(i) => {
                path.lam(LevelIndex::whole(*i as u32 - 1)) == path.lam(LevelIndex::whole(*i as u32))
            }
            GenName::PHalf(i) => {
                path.lam(LevelIndex::half(*i as u32 - 1)) == path.lam(LevelIndex::half(*i as u32))
            }
            _ => false,
        };
        if stationary && m.rows[t][t].is_zero() {
            ok_nonzero = false;
        }
        if !stationary && !m.rows[t][t].is_zero() {
            ok_nonzero = false;
        }
    }
    r.push(format!("rank-one {name}"), format!("{}", rep.label), ok_rank);
    r.push(
        format!("stationary-diagonal {name}"),
        format!("{}", rep.label),
        ok_nonzero,
    );
}

/// Gram crosscheck: edge products equal oracle norms, orthogonality held by
/// construction (the rep builder rejects non-diagonal forms).
pub fn gram_crosscheck(rep: &SeminormalRep, conv: Conventions) -> Report {
    let mut r = Report::new(format!("gram {} level {}", rep.label, rep.level));
    for (t, path) in rep.paths.iter().enumerate() {
        let product = gram_norm(path, conv);
        r.push(
            format!("gram-norm t={t}"),
            format!("{}", rep.label),
            product == rep.norms[t],
        );
        r.push(
            format!("gram-nonzero t={t}"),
            format!("{}", rep.label),
            !rep.norms[t].is_zero(),
        );
    }
    r
}


#[cfg(test)]
mod ft_tests {
    use super::*;
    use crate::bratteli::compare_paths;
    use crate::cellular::{all_cell_modules};
    use crate::par::Mode;

    #[test]
    fn ft_vectors_are_unitriangular_idempotent_images() {
        // F_t F_u = delta F_t as operators: applying the idempotent chain
        // of u to the eigenvector of t fixes it for u = t and kills it
        // otherwise; eigenvectors are unitriangular over the Murphy basis
        let level = LevelIndex::whole(2);
        let modules = all_cell_modules(level, Mode::Sequential, LevelIndex::half(3)).unwrap();
        let jm = JmTables::new(2);
        for m in &modules {
            let rep = oracle_rep(m, &jm).unwrap();
            for t in 0..m.dim() {
                let v = ft_vector(m, &jm, t).unwrap();
                assert!(v[t].is_one());
                for s in 0..m.dim() {
                    if !v[s].is_zero() && s != t {
                        // support only at strictly larger paths
                        assert!(matches!(
                            compare_paths(&m.paths[s], &m.paths[t]),
                            crate::bratteli::PathOrder::Succ(_)
                        ));
                    }
                    assert_eq!(v[s], rep.basis_change.rows[s][t]);
                }
            }
        }
    }
}
