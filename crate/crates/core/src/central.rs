//! Central-element generating functions: the initial series, the
//! multiplicative half-step recursions, closed forms per vertex, residues,
//! and the diagram-algebra contraction route.

use crate::bratteli::{content, BPath, Partition};
use crate::diagram::{enumerate_basis, generator, AlgebraElement, GenKind};
use crate::field::{parse_uratfn, FieldError, RationalFunction, UPoly, URationalFunction};
use crate::jm::{subalgebra_generators, JmTables};
use crate::level::LevelIndex;
use std::fmt;

/// Which of the two series families.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SeriesFlavor {
    /// Indexed by half levels i+1/2, acting on level-i modules.
    Half,
    /// Indexed by whole levels i+1, acting on level-(i+1/2) modules.
    Whole,
}

/// The scalar series attached to a vertex.
#[derive(Clone, Debug)]
pub struct QSeries {
    pub level: LevelIndex,
    pub mu: Partition,
    pub value: URationalFunction,
}

#[derive(Debug)]
pub enum CentralError {
    Field(FieldError),
    /// Factoring out the contraction failed; the defining premise broke.
    Factorization(String),
}

impl fmt::Display for CentralError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CentralError::Field(e) => write!(f, "{e}"),
            CentralError::Factorization(s) => write!(f, "factorization failed: {s}"),
        }
    }
}

impl std::error::Error for CentralError {}

impl From<FieldError> for CentralError {
    fn from(e: FieldError) -> Self {
        CentralError::Field(e)
    }
}

/// The initial series: `-(u+1+z/2)(u-z/2)/(u+z/2)` for the half flavor and
/// `(u+1-z/2)/((u+z/2)(u-z/2))` for the whole flavor.
pub fn q_initial(flavor: SeriesFlavor) -> URationalFunction {
    match flavor {
        SeriesFlavor::Half => parse_uratfn("-(u+1+z/2)*(u-z/2)/(u+z/2)").unwrap(),
        SeriesFlavor::Whole => parse_uratfn("(u+1-z/2)/((u+z/2)*(u-z/2))").unwrap(),
    }
}

/// One recursion step: multiplies by
/// `((u+xw)^2 - 1) (u-xh)^2 / (((u-xh)^2 - 1) (u+xw)^2)`
/// where `xw` is the normalized content of the whole point crossed and `xh`
/// the normalized content of the half point crossed. The half flavor steps
/// from level i-1/2 to i+1/2 crossing (i-1/2, i); the whole flavor from i to
/// i+1 crossing (i, i+1/2).
pub fn q_step(
    prev: &URationalFunction,
    x_whole: &RationalFunction,
    x_half: &RationalFunction,
    flavor: SeriesFlavor,
) -> Result<URationalFunction, CentralError> {
    let one = UPoly::one();
    let (a, b) = match flavor {
        SeriesFlavor::Half => (x_whole, x_half),
        SeriesFlavor::Whole => (x_half, x_whole),
    };
    // (u + a)
    let up_a = UPoly::linear(a.clone());
    // (u - b)
    let up_b = UPoly::linear(-b);
    let up_a2 = &up_a * &up_a;
    let up_b2 = &up_b * &up_b;
    let num = &(&up_a2 - &one) * &up_b2;
    let den = &(&up_b2 - &one) * &up_a2;
    let ratio = URationalFunction::new(num, den)?;
    Ok(prev.mul(&ratio))
}

/// Chains the recursion along a path, returning the series at the path's
/// final vertex. Half flavor: ends at a whole level i, giving the level
/// i+1/2 series of the vertex there. Whole flavor: ends at a half level
/// i+1/2, giving the level i+1 series.
pub fn q_by_chain(t: &BPath, flavor: SeriesFlavor) -> Result<URationalFunction, CentralError> {
    let mut acc = q_initial(flavor);
    match flavor {
        SeriesFlavor::Half => {
            // steps cross (i-1/2, i) for i = 1..floor(level)
            let end = t.level().floor();
            for i in 1..=end {
                let xh = content(t, LevelIndex::half(i - 1), true);
                let xw = content(t, LevelIndex::whole(i), true);
                acc = q_step(&acc, &xw, &xh, flavor)?;
            }
        }
        SeriesFlavor::Whole => {
            // steps cross (i, i+1/2) for i = 1..(levels below a half end)
            assert!(t.level().is_half(), "whole-flavor chain ends at a half level");
            let end = t.level().floor();
            for i in 1..=end {
                let xw = content(t, LevelIndex::whole(i), true);
                let xh = content(t, LevelIndex::half(i), true);
                acc = q_step(&acc, &xw, &xh, flavor)?;
            }
        }
    }
    Ok(acc)
}

/// Closed form per vertex. Half flavor (series level i+1/2 for a vertex mu
/// at whole level i):
/// `-(u - |mu| + 1 + z/2)/(u - |mu| + z/2) * prod_A (u + c(a) - z/2) / prod_R (u + c(b) - z/2)`.
/// Whole flavor (series level i+1 for mu at level i+1/2):
/// `(u + |mu| + 1 - z/2)/(u + |mu| - z/2) * prod_R (u - c(b) + z/2) / prod_A (u - c(a) + z/2)`.
pub fn q_closed_form(mu: &Partition, flavor: SeriesFlavor) -> URationalFunction {
    let z_half = RationalFunction::z_half();
    let m = RationalFunction::int(mu.size() as i64);
    let one = RationalFunction::one();
    match flavor {
        SeriesFlavor::Half => {
            // u - |mu| + 1 + z/2 over u - |mu| + z/2
            let mut num = UPoly::linear(&(&-&m + &one) + &z_half);
            let mut den = UPoly::linear(&-&m + &z_half);
            for a in mu.addable() {
                let c = RationalFunction::int(Partition::node_content(a));
                num = &num * &UPoly::linear(&c - &z_half);
            }
            for b in mu.removable() {
                let c = RationalFunction::int(Partition::node_content(b));
                den = &den * &UPoly::linear(&c - &z_half);
            }
            URationalFunction::new(&UPoly::zero() - &num, den).unwrap()
        }
        SeriesFlavor::Whole => {
            let mut num = UPoly::linear(&(&m + &one) - &z_half);
            let mut den = UPoly::linear(&m - &z_half);
            for b in mu.removable() {
                let c = RationalFunction::int(Partition::node_content(b));
                num = &num * &UPoly::linear(&-&c + &z_half);
            }
            for a in mu.addable() {
                let c = RationalFunction::int(Partition::node_content(a));
                den = &den * &UPoly::linear(&-&c + &z_half);
            }
            URationalFunction::new(num, den).unwrap()
        }
    }
}

/// Candidate pole locations of the closed forms: normalized contents of all
/// stay/add/remove steps at the vertex.
pub fn pole_candidates(mu: &Partition) -> Vec<RationalFunction> {
    let z_half = RationalFunction::z_half();
    let m = RationalFunction::int(mu.size() as i64);
    let mut out = vec![&m - &z_half, &-&m + &z_half];
    for a in mu.addable() {
        let c = RationalFunction::int(Partition::node_content(a));
        out.push(&c - &z_half);
        out.push(&z_half - &c);
    }
    for b in mu.removable() {
        let c = RationalFunction::int(Partition::node_content(b));
        out.push(&c - &z_half);
        out.push(&z_half - &c);
    }
    out
}

/// The contracted powers of the normalized JM elements: for j = 0..jmax,
/// solves `y p_{r} = p_{r} x^j p_{r}` for y in the subalgebra below, where
/// `level` names the JM element (a half level i+1/2 contracts through
/// p_{i+1}, a whole level i+1 through p_{i+3/2}), and verifies centrality.
pub fn w_oracle(
    level: LevelIndex,
    jmax: usize,
    k: usize,
) -> Result<Vec<AlgebraElement>, CentralError> {
    let jm = JmTables::new(k);
    let x = jm.normalized_x(level);
    // the contraction to factor through and the subalgebra of the result
    let (proj, sub_level_twice): (AlgebraElement, u32) = if level.is_half() {
        let i = level.floor() as usize;
        assert!(i + 1 <= k, "ambient too small");
        (generator(GenKind::PWhole, i + 1, k), 2 * i as u32)
    } else {
        let i = level.floor() as usize - 1;
        assert!(i + 2 <= k, "ambient too small");
        (generator(GenKind::PHalf, i + 1, k), 2 * i as u32 + 1)
    };
    // basis of the target subalgebra, embedded
    let m = (sub_level_twice / 2) as usize;
    let sub_half = sub_level_twice % 2 == 1;
    let sub_basis: Vec<AlgebraElement> = if m == 0 && !sub_half {
        vec![AlgebraElement::unit(k, false)]
    } else {
        let nn = if sub_half { m + 1 } else { m };
        enumerate_basis(nn.max(1), sub_half)
            .into_iter()
            .map(|d| embed_diagram(&d, k))
            .collect()
    };
    // precompute the matrix of y -> y * proj over the ambient basis of the
    // span of sub_basis * proj; solve coefficient-wise by echelon with
    // tracking
    let ambient_ctx = crate::cellular::LevelCtx::new(LevelIndex::whole(k as u32));
    let cols: Vec<crate::linalg::SparseVec> = sub_basis
        .iter()
        .map(|b| ambient_ctx.to_vec(&b.mul(&proj)))
        .collect();
    let coord = crate::linalg::CoordBasis::new(&cols).ok_or_else(|| {
        CentralError::Factorization("images of the subalgebra basis are dependent".into())
    })?;
    let mut out = vec![];
    let mut xpow = AlgebraElement::unit(k, false);
    for j in 0..=jmax {
        if j > 0 {
            xpow = xpow.mul(&x);
        }
        let rhs = proj.mul(&xpow).mul(&proj);
        let coords = coord
            .express(&ambient_ctx.to_vec(&rhs))
            .ok_or_else(|| CentralError::Factorization(format!("power {j} not factorable")))?;
        let mut y = AlgebraElement::zero(k, false);
        for (c, b) in coords.iter().zip(&sub_basis) {
            y = y.add(&b.scale(c));
        }
        // verify the factorization and centrality in the subalgebra
        if y.mul(&proj) != rhs {
            return Err(CentralError::Factorization(format!(
                "power {j}: y p != p x^{j} p"
            )));
        }
        for g in subalgebra_generators(k, sub_level_twice) {
            if y.mul(&g) != g.mul(&y) {
                return Err(CentralError::Factorization(format!(
                    "power {j}: result is not central"
                )));
            }
        }
        out.push(y);
    }
    Ok(out)
}

fn embed_diagram(d: &crate::diagram::Diagram, k: usize) -> AlgebraElement {
    let small = d.k();
    let mut blocks: Vec<Vec<u16>> = d
        .blocks()
        .iter()
        .map(|b| {
            b.iter()
                .map(|&p| if p < small as u16 { p } else { p + (k - small) as u16 })
                .collect()
        })
        .collect();
    for j in small..k {
        blocks.push(vec![j as u16, (j + k) as u16]);
    }
    AlgebraElement::from_diagram(k, false, crate::diagram::Diagram::from_blocks(k, blocks))
}

/// Verifies the operator-level recursion in the diagram algebra by clearing
/// denominators: for the half flavor at i, as u-polynomial identity,
/// `(W_{i+1/2} + (z/2 - u - 1)) ((u-x_{i-1/2})^2 - 1)(u+x_i)^2` equals
/// `(W_{i-1/2} + (z/2 - u - 1)) ((u+x_i)^2 - 1)(u-x_{i-1/2})^2`
/// where the W are replaced by the contracted series and the x by the
/// normalized JM elements. The check expands both sides on cell modules.
pub struct SeriesOnModule<'a> {
    pub module: &'a crate::cellular::CellModule,
}

impl SeriesOnModule<'_> {
    /// The scalar by which a central element acts; errors when the action
    /// is not scalar.
    pub fn central_scalar(&self, y: &AlgebraElement) -> Result<RationalFunction, CentralError> {
        let m = self
            .module
            .action(y)
            .map_err(|e| CentralError::Factorization(e.to_string()))?;
        let c = m.rows[0][0].clone();
        let want = crate::linalg::Matrix::identity(m.n()).scale(&c);
        if m == want {
            Ok(c)
        } else {
            Err(CentralError::Factorization(
                "central element does not act as a scalar".into(),
            ))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bratteli::{enumerate_paths, BVertex};
    use crate::field::parse_ratfn;

    fn rf(s: &str) -> RationalFunction {
        parse_ratfn(s).unwrap()
    }

    fn pt(parts: &[u32]) -> Partition {
        Partition::new(parts.iter().copied())
    }

    #[test]
    fn initial_series_match_closed_forms() {
        assert_eq!(q_initial(SeriesFlavor::Half), q_closed_form(&pt(&[]), SeriesFlavor::Half));
        assert_eq!(
            q_initial(SeriesFlavor::Whole),
            q_closed_form(&pt(&[]), SeriesFlavor::Whole)
        );
    }

    #[test]
    fn geometric_contraction_reconstruction() {
        // W_{1/2}(u) = z/(u+z/2); the initial half series is W + (z/2-u-1)
        let w = parse_uratfn("z/(u+z/2)").unwrap();
        let shift = parse_uratfn("z/2-u-1").unwrap();
        assert_eq!(w.add(&shift), q_initial(SeriesFlavor::Half));
    }

    #[test]
    fn one_step_matches_closed_form() {
        // whole flavor: step from the empty vertex adding (1,1)
        let lvl = LevelIndex::half(1);
        let shape = BVertex::new(pt(&[1]), 0, lvl);
        let t = &enumerate_paths(lvl, &shape)[0];
        let chained = q_by_chain(t, SeriesFlavor::Whole).unwrap();
        assert_eq!(chained, q_closed_form(&pt(&[1]), SeriesFlavor::Whole));
        // hand-derived value
        let want = parse_uratfn("(u-z/2+2)*(u+z/2)/((u+z/2+1)*(u+z/2-1)*(u+1-z/2))").unwrap();
        assert_eq!(chained, want);
    }

    #[test]
    fn stay_chain_keeps_initial_series() {
        // all-stay path: every step multiplies by 1
        let lvl = LevelIndex::whole(2);
        let shape = BVertex::new(pt(&[]), 2, lvl);
        let t = &enumerate_paths(lvl, &shape)[0];
        let chained = q_by_chain(t, SeriesFlavor::Half).unwrap();
        assert_eq!(chained, q_initial(SeriesFlavor::Half));
    }

    #[test]
    fn chains_equal_closed_forms_all_vertices_level2() {
        for lvl_twice in 2..=5u32 {
            let lvl = LevelIndex::from_twice(lvl_twice);
            for v in crate::bratteli::vertices(lvl) {
                for t in enumerate_paths(lvl, &v) {
                    if lvl.is_half() {
                        let got = q_by_chain(&t, SeriesFlavor::Whole).unwrap();
                        assert_eq!(got, q_closed_form(&v.lam, SeriesFlavor::Whole), "{v}");
                    } else {
                        let got = q_by_chain(&t, SeriesFlavor::Half).unwrap();
                        assert_eq!(got, q_closed_form(&v.lam, SeriesFlavor::Half), "{v}");
                    }
                }
            }
        }
    }

    #[test]
    fn step_then_inverse_returns() {
        let xw = rf("z/2-1");
        let xh = rf("-z/2+1");
        let start = q_initial(SeriesFlavor::Half);
        let stepped = q_step(&start, &xw, &xh, SeriesFlavor::Half).unwrap();
        // algebraic inverse of the step
        let back = {
            let one = UPoly::one();
            let up_a = UPoly::linear(xw.clone());
            let up_b = UPoly::linear(-&xh);
            let up_a2 = &up_a * &up_a;
            let up_b2 = &up_b * &up_b;
            let num = &(&up_b2 - &one) * &up_a2;
            let den = &(&up_a2 - &one) * &up_b2;
            stepped.mul(&URationalFunction::new(num, den).unwrap())
        };
        assert_eq!(back, start);
    }

    #[test]
    fn residues_match_tables() {
        // Res_{u=-z/2} Q_{1/2}(u, empty) = z
        let q = q_closed_form(&pt(&[]), SeriesFlavor::Half);
        assert_eq!(q.residue_at(&rf("-z/2")).unwrap(), rf("z"));
        // Res_{u=z/2} Q_1(u, empty) = 1/z; at -z/2 it is (z-1)/z
        let q = q_closed_form(&pt(&[]), SeriesFlavor::Whole);
        assert_eq!(q.residue_at(&rf("z/2")).unwrap(), rf("1/z"));
        assert_eq!(q.residue_at(&rf("-z/2")).unwrap(), rf("(z-1)/z"));
        // Res Q_{1+1/2}(u,(1)) values behind the A_2 tables
        let q = q_closed_form(&pt(&[1]), SeriesFlavor::Half);
        assert_eq!(q.residue_at(&rf("z/2")).unwrap(), rf("z/(z-1)"));
        assert_eq!(q.residue_at(&rf("1-z/2")).unwrap(), rf("z*(z-2)/(z-1)"));
    }

    #[test]
    fn simple_poles_only() {
        for n in 0..=3u32 {
            for mu in crate::bratteli::partitions_of(n) {
                for flavor in [SeriesFlavor::Half, SeriesFlavor::Whole] {
                    let q = q_closed_form(&mu, flavor);
                    let poles = q.poles_among(&pole_candidates(&mu)).expect("factors split");
                    for (at, mult) in poles {
                        assert_eq!(mult, 1, "pole at {at} for {mu}");
                    }
                }
            }
        }
    }

    #[test]
    fn contracted_powers_small() {
        // x^(0) at level 1/2 is z; x^(1) is -z^2/2
        let out = w_oracle(LevelIndex::half(0), 1, 2).unwrap();
        assert_eq!(out[0], AlgebraElement::unit(2, false).scale(&rf("z")));
        assert_eq!(out[1], AlgebraElement::unit(2, false).scale(&rf("-z^2/2")));
    }
}
