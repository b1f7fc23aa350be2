//! The branching graph: vertices `(lambda, ell)`, edges by half-steps,
//! path enumeration and ordering, contents, and interchange neighbours.
//!
//! Levels step by halves. A whole-to-half step stays or removes a node; a
//! half-to-whole step stays or adds a node. The contraction count `ell` is
//! determined by the level and the partition size: `|lambda| + ell = floor(level)`.

use crate::field::RationalFunction;
use crate::level::LevelIndex;
use std::cmp::Ordering;
use std::fmt;

/// An integer partition, weakly decreasing, no trailing zeros.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: impl IntoIterator<Item = u32>) -> Self {
        let v: Vec<u32> = parts.into_iter().filter(|&p| p > 0).collect();
        assert!(
            v.windows(2).all(|w| w[0] >= w[1]),
            "parts must be weakly decreasing"
        );
        Partition(v)
    }

    pub fn empty() -> Self {
        Partition(vec![])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Nodes are 1-indexed (row, col) pairs.
    pub fn nodes(&self) -> Vec<(u32, u32)> {
        let mut out = vec![];
        for (r, &len) in self.0.iter().enumerate() {
            for c in 1..=len {
                out.push((r as u32 + 1, c));
            }
        }
        out
    }

    /// Addable nodes, top row first.
    pub fn addable(&self) -> Vec<(u32, u32)> {
        let mut out = vec![];
        for r in 0..=self.0.len() {
            let len = self.0.get(r).copied().unwrap_or(0);
            let above = if r == 0 { u32::MAX } else { self.0[r - 1] };
            if len < above {
                out.push((r as u32 + 1, len + 1));
            }
        }
        out
    }

    /// Removable nodes, top row first.
    pub fn removable(&self) -> Vec<(u32, u32)> {
        let mut out = vec![];
        for (r, &len) in self.0.iter().enumerate() {
            let below = self.0.get(r + 1).copied().unwrap_or(0);
            if len > below {
                out.push((r as u32 + 1, len));
            }
        }
        out
    }

    pub fn with_added(&self, node: (u32, u32)) -> Partition {
        let mut v = self.0.clone();
        let r = (node.0 - 1) as usize;
        if r == v.len() {
            v.push(1);
        } else {
            v[r] += 1;
        }
        debug_assert_eq!(v[r], node.1);
        Partition::new(v)
    }

    pub fn with_removed(&self, node: (u32, u32)) -> Partition {
        let mut v = self.0.clone();
        let r = (node.0 - 1) as usize;
        debug_assert_eq!(v[r], node.1);
        v[r] -= 1;
        Partition::new(v)
    }

    /// The single node by which two partitions of adjacent size differ,
    /// when one covers the other.
    pub fn diff_node(larger: &Partition, smaller: &Partition) -> Option<(u32, u32)> {
        if larger.size() != smaller.size() + 1 {
            return None;
        }
        for a in smaller.addable() {
            if &smaller.with_added(a) == larger {
                return Some(a);
            }
        }
        None
    }

    /// Dominance: `self >= other` when all prefix sums are at least as big.
    pub fn dominates(&self, other: &Partition) -> bool {
        let mut a = 0i64;
        let mut b = 0i64;
        for i in 0..self.0.len().max(other.0.len()) {
            a += self.0.get(i).copied().unwrap_or(0) as i64;
            b += other.0.get(i).copied().unwrap_or(0) as i64;
            if a < b {
                return false;
            }
        }
        true
    }

    /// Total order refining dominance for equal sizes: dominance first,
    /// lexicographic tie-break for incomparable pairs.
    pub fn dominance_cmp(&self, other: &Partition) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        match (self.dominates(other), other.dominates(self)) {
            (true, false) => Ordering::Greater,
            (false, true) => Ordering::Less,
            _ => self.0.cmp(&other.0),
        }
    }

    /// Content of a node: col - row.
    pub fn node_content(node: (u32, u32)) -> i64 {
        node.1 as i64 - node.0 as i64
    }

    /// Sum of contents of all nodes.
    pub fn content_sum(&self) -> i64 {
        self.nodes()
            .iter()
            .map(|&n| Partition::node_content(n))
            .sum()
    }

    /// Parses comma-separated parts; the empty string is the empty partition.
    pub fn parse(s: &str) -> Option<Partition> {
        let s = s.trim();
        if s.is_empty() || s == "∅" {
            return Some(Partition::empty());
        }
        let s = s.trim_start_matches('(').trim_end_matches(')');
        let mut v = vec![];
        for piece in s.split(',') {
            v.push(piece.trim().parse::<u32>().ok()?);
        }
        if v.windows(2).all(|w| w[0] >= w[1]) {
            Some(Partition::new(v))
        } else {
            None
        }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "∅");
        }
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Enumerates all partitions of n, dominance-descending.
pub fn partitions_of(n: u32) -> Vec<Partition> {
    fn rec(n: u32, max: u32, acc: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition::new(acc.clone()));
            return;
        }
        let top = n.min(max);
        for p in (1..=top).rev() {
            acc.push(p);
            rec(n - p, p, acc, out);
            acc.pop();
        }
    }
    let mut out = vec![];
    rec(n, n, &mut vec![], &mut out);
    out.sort_by(|a, b| b.dominance_cmp(a));
    out
}

/// A graph vertex `(lambda, ell)` at a given level.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BVertex {
    pub lam: Partition,
    pub ell: u32,
    pub level: LevelIndex,
}

impl BVertex {
    pub fn new(lam: Partition, ell: u32, level: LevelIndex) -> Self {
        debug_assert_eq!(
            lam.size() + ell,
            level.floor(),
            "|lambda| + ell = floor(level)"
        );
        BVertex { lam, ell, level }
    }

    /// Strict label dominance at one level: larger `ell`, or equal `ell`
    /// and strictly dominating partition.
    pub fn dominates_strictly(&self, other: &BVertex) -> bool {
        self.ell > other.ell
            || (self.ell == other.ell && self.lam != other.lam && self.lam.dominates(&other.lam))
    }
}

impl fmt::Display for BVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.lam, self.ell)
    }
}

/// All vertices at a level, ell descending then dominance-descending,
/// matching the printed graph rows.
pub fn vertices(level: LevelIndex) -> Vec<BVertex> {
    let k = level.floor();
    let mut out = vec![];
    for ell in (0..=k).rev() {
        for lam in partitions_of(k - ell) {
            out.push(BVertex::new(lam, ell, level));
        }
    }
    out
}

/// Forward edge targets of a vertex (to the next half-step level).
pub fn targets(v: &BVertex) -> Vec<BVertex> {
    let next = v.level.next();
    let mut out = vec![];
    if !v.level.is_half() {
        // whole -> half: stay (ell fixed) or remove a node (ell + 1)
        out.push(BVertex::new(v.lam.clone(), v.ell, next));
        for r in v.lam.removable() {
            out.push(BVertex::new(v.lam.with_removed(r), v.ell + 1, next));
        }
    } else {
        // half -> whole: stay (ell + 1) or add a node (ell fixed)
        out.push(BVertex::new(v.lam.clone(), v.ell + 1, next));
        for a in v.lam.addable() {
            out.push(BVertex::new(v.lam.with_added(a), v.ell, next));
        }
    }
    out
}

/// All edges out of a level.
pub fn edges(from_level: LevelIndex) -> Vec<(BVertex, BVertex)> {
    let mut out = vec![];
    for v in vertices(from_level) {
        for t in targets(&v) {
            out.push((v.clone(), t));
        }
    }
    out
}

pub fn is_edge(from: &BVertex, to: &BVertex) -> bool {
    targets(from).contains(to)
}

/// A path in the branching graph from `(empty, 0)`, stepping by half levels.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BPath {
    verts: Vec<BVertex>,
}

impl BPath {
    pub fn new(verts: Vec<BVertex>) -> Self {
        debug_assert!(!verts.is_empty());
        debug_assert!(verts[0].lam.is_empty() && verts[0].ell == 0);
        debug_assert!(verts.windows(2).all(|w| is_edge(&w[0], &w[1])));
        BPath { verts }
    }

    pub fn level(&self) -> LevelIndex {
        LevelIndex::from_twice(self.verts.len() as u32 - 1)
    }

    pub fn shape(&self) -> &BVertex {
        self.verts.last().unwrap()
    }

    /// Vertex at a half-integer point of the path.
    pub fn vertex(&self, at: LevelIndex) -> &BVertex {
        &self.verts[at.twice as usize]
    }

    pub fn lam(&self, at: LevelIndex) -> &Partition {
        &self.vertex(at).lam
    }

    pub fn vertices(&self) -> &[BVertex] {
        &self.verts
    }

    pub fn truncate(&self, at: LevelIndex) -> BPath {
        BPath {
            verts: self.verts[..=at.twice as usize].to_vec(),
        }
    }

    fn with_replaced(&self, at: LevelIndex, lam: Partition) -> BPath {
        let mut verts = self.verts.clone();
        let idx = at.twice as usize;
        let ell = at.floor() - lam.size();
        verts[idx] = BVertex::new(lam, ell, at);
        BPath { verts }
    }
}

impl fmt::Display for BPath {
    /// Text form: vertex list joined by `>`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.verts.iter().enumerate() {
            if i > 0 {
                write!(f, ">")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Path comparison result with the deciding index.
///
/// The deciding index is the last point where the paths disagree; the order
/// there (by label dominance) orders the paths.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PathOrder {
    Equal,
    /// First argument is the larger path.
    Succ(LevelIndex),
    Prec(LevelIndex),
}

/// Reverse lexicographic order on paths of one shape.
pub fn compare_paths(s: &BPath, t: &BPath) -> PathOrder {
    debug_assert_eq!(s.verts.len(), t.verts.len());
    for idx in (0..s.verts.len()).rev() {
        if s.verts[idx] != t.verts[idx] {
            let at = LevelIndex::from_twice(idx as u32);
            let sv = &s.verts[idx];
            let tv = &t.verts[idx];
            return if sv.dominates_strictly(tv) {
                PathOrder::Succ(at)
            } else if tv.dominates_strictly(sv) {
                PathOrder::Prec(at)
            } else {
                // incomparable labels: total refinement keeps the
                // enumeration deterministic
                match sv.lam.dominance_cmp(&tv.lam) {
                    Ordering::Greater => PathOrder::Succ(at),
                    _ => PathOrder::Prec(at),
                }
            };
        }
    }
    PathOrder::Equal
}

/// All paths from the root to `shape`, reverse-lexicographic descending,
/// so the maximal path comes first.
pub fn enumerate_paths(level: LevelIndex, shape: &BVertex) -> Vec<BPath> {
    assert_eq!(shape.level, level, "shape must sit at the requested level");
    let root = BVertex::new(Partition::empty(), 0, LevelIndex::from_twice(0));
    let mut partial: Vec<Vec<BVertex>> = vec![vec![root]];
    for _ in 0..level.twice {
        let mut next = vec![];
        for p in partial {
            let last = p.last().unwrap();
            for t in targets(last) {
                if reachable(&t, shape) {
                    let mut q = p.clone();
                    q.push(t);
                    next.push(q);
                }
            }
        }
        partial = next;
    }
    let mut out: Vec<BPath> = partial.into_iter().map(BPath::new).collect();
    out.sort_by(|a, b| match compare_paths(a, b) {
        PathOrder::Succ(_) => Ordering::Less,
        PathOrder::Prec(_) => Ordering::Greater,
        PathOrder::Equal => Ordering::Equal,
    });
    out
}

/// Necessary conditions for `shape` to be reachable from `v` walking forward.
fn reachable(v: &BVertex, shape: &BVertex) -> bool {
    if v.level == shape.level {
        return v == shape;
    }
    if v.level.twice > shape.level.twice || v.ell > shape.ell {
        return false;
    }
    let mut adds = 0i64;
    let mut removes = 0i64;
    let mut tw = v.level.twice;
    while tw < shape.level.twice {
        if tw % 2 == 0 {
            removes += 1;
        } else {
            adds += 1;
        }
        tw += 1;
    }
    let diff = shape.lam.size() as i64 - v.lam.size() as i64;
    diff <= adds && -diff <= removes
}

/// Flavors of the path equivalences.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum EquivFlavor {
    /// Differ at most at the single given point.
    Tilde,
    /// Differ at most at the pair of points touched by the named interchange
    /// generator: a half index `i+1/2` allows `(i-1/2, i)`, a whole index
    /// `i+1` allows `(i, i+1/2)`.
    Simeq,
}

/// One- and two-point path equivalences.
pub fn equiv(s: &BPath, t: &BPath, point: LevelIndex, flavor: EquivFlavor) -> bool {
    debug_assert_eq!(s.level(), t.level());
    let allowed: Vec<u32> = match flavor {
        EquivFlavor::Tilde => vec![point.twice],
        EquivFlavor::Simeq => vec![point.twice - 2, point.twice - 1],
    };
    for idx in 0..s.verts.len() {
        if s.verts[idx] != t.verts[idx] && !allowed.contains(&(idx as u32)) {
            return false;
        }
    }
    true
}

/// Content value of a path at a half or whole point.
///
/// Whole point `i`: `z - |mu|` on a stay step, `c(a)` when node `a` was
/// added. Half point `i - 1/2`: `|mu|` on a stay step, `z - c(a)` when node
/// `a` was removed. `normalized` subtracts z/2.
pub fn content(t: &BPath, point: LevelIndex, normalized: bool) -> RationalFunction {
    assert!(point.twice >= 1 && point.twice <= t.level().twice);
    let prev = t.lam(point.prev());
    let here = t.lam(point);
    let z = RationalFunction::z();
    let raw = if point.is_half() {
        if here == prev {
            RationalFunction::int(prev.size() as i64)
        } else {
            let a = Partition::diff_node(prev, here).expect("removal step");
            &z - &RationalFunction::int(Partition::node_content(a))
        }
    } else {
        if here == prev {
            &z - &RationalFunction::int(here.size() as i64)
        } else {
            let a = Partition::diff_node(here, prev).expect("addition step");
            RationalFunction::int(Partition::node_content(a))
        }
    };
    if normalized {
        &raw - &RationalFunction::z_half()
    } else {
        raw
    }
}

/// The full content vector of a path, points 1/2 up to the level.
pub fn content_vector(t: &BPath, normalized: bool) -> Vec<RationalFunction> {
    (1..=t.level().twice)
        .map(|tw| content(t, LevelIndex::from_twice(tw), normalized))
        .collect()
}

/// The interchanged path `t sigma`, when it exists.
///
/// `point` names the generator: a half index `i+1/2` reroutes the section
/// between the fixed endpoints `t(i-1)` and `t(i+1/2)`; a whole index `i+1`
/// between `t(i-1/2)` and `t(i+1)`. Defined only when the symmetric
/// difference of the endpoint shapes is two nodes in distinct rows and
/// columns; the result is the unique other path with interchanged contents.
pub fn sigma_neighbor(t: &BPath, point: LevelIndex) -> Option<BPath> {
    let hi = point;
    let lo = LevelIndex::from_twice(point.twice.checked_sub(3)?);
    if hi.twice > t.level().twice {
        return None;
    }
    let a = t.lam(lo);
    let b = t.lam(hi);
    let an = a.nodes();
    let bn = b.nodes();
    let mut sym: Vec<(u32, u32)> = an.iter().filter(|n| !bn.contains(n)).copied().collect();
    sym.extend(bn.iter().filter(|n| !an.contains(n)));
    if sym.len() != 2 || sym[0].0 == sym[1].0 || sym[0].1 == sym[1].1 {
        return None;
    }
    let m1 = LevelIndex::from_twice(lo.twice + 1);
    let m2 = LevelIndex::from_twice(lo.twice + 2);
    let c_lo = content(t, m1, false);
    let c_mid = content(t, m2, false);
    let c_hi = content(t, hi, false);
    for x in targets(t.vertex(lo)) {
        for y in targets(&x) {
            if !is_edge(&y, t.vertex(hi)) {
                continue;
            }
            if &x == t.vertex(m1) && &y == t.vertex(m2) {
                continue;
            }
            let cand = t
                .with_replaced(m1, x.lam.clone())
                .with_replaced(m2, y.lam.clone());
            if content(&cand, m1, false) == c_hi
                && content(&cand, m2, false) == c_mid
                && content(&cand, hi, false) == c_lo
            {
                return Some(cand);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::bell_number;
    use crate::field::parse_ratfn;

    fn rf(s: &str) -> RationalFunction {
        parse_ratfn(s).unwrap()
    }

    fn pt(parts: &[u32]) -> Partition {
        Partition::new(parts.iter().copied())
    }

    #[test]
    fn vertices_match_printed_graph() {
        let v2 = vertices(LevelIndex::whole(2));
        let shown: Vec<String> = v2.iter().map(|v| v.to_string()).collect();
        assert_eq!(shown, vec!["(∅,2)", "((1),1)", "((2),0)", "((1,1),0)"]);
        // half levels carry the same label set as the whole level below
        let labels = |lvl: LevelIndex| -> Vec<(Partition, u32)> {
            vertices(lvl)
                .into_iter()
                .map(|v| (v.lam, v.ell))
                .collect()
        };
        assert_eq!(labels(LevelIndex::half(1)), labels(LevelIndex::whole(1)));
        assert_eq!(vertices(LevelIndex::from_twice(0)).len(), 1);
    }

    /// Hand transcription of the printed first levels of the graph.
    #[test]
    fn edges_match_printed_graph() {
        let e = |lvl: LevelIndex| -> Vec<(String, String)> {
            edges(lvl)
                .into_iter()
                .map(|(a, b)| (format!("{}", a.lam), format!("{}", b.lam)))
                .collect()
        };
        let pair = |a: &str, b: &str| (a.to_string(), b.to_string());
        assert_eq!(e(LevelIndex::from_twice(0)), vec![pair("∅", "∅")]);
        assert_eq!(
            e(LevelIndex::half(0)),
            vec![pair("∅", "∅"), pair("∅", "(1)")]
        );
        assert_eq!(
            e(LevelIndex::whole(1)),
            vec![pair("∅", "∅"), pair("(1)", "(1)"), pair("(1)", "∅")]
        );
        assert_eq!(
            e(LevelIndex::half(1)),
            vec![
                pair("∅", "∅"),
                pair("∅", "(1)"),
                pair("(1)", "(1)"),
                pair("(1)", "(2)"),
                pair("(1)", "(1,1)"),
            ]
        );
        assert_eq!(
            e(LevelIndex::whole(2)),
            vec![
                pair("∅", "∅"),
                pair("(1)", "(1)"),
                pair("(1)", "∅"),
                pair("(2)", "(2)"),
                pair("(2)", "(1)"),
                pair("(1,1)", "(1,1)"),
                pair("(1,1)", "(1)"),
            ]
        );
        assert_eq!(
            e(LevelIndex::half(2)),
            vec![
                pair("∅", "∅"),
                pair("∅", "(1)"),
                pair("(1)", "(1)"),
                pair("(1)", "(2)"),
                pair("(1)", "(1,1)"),
                pair("(2)", "(2)"),
                pair("(2)", "(3)"),
                pair("(2)", "(2,1)"),
                pair("(1,1)", "(1,1)"),
                pair("(1,1)", "(2,1)"),
                pair("(1,1)", "(1,1,1)"),
            ]
        );
        // from ((2),0) at level 2+1/2: stay (2), add (3), add (2,1)
        let v = BVertex::new(pt(&[2]), 0, LevelIndex::half(2));
        let tg: Vec<String> = targets(&v).iter().map(|t| format!("{}", t.lam)).collect();
        assert_eq!(tg, vec!["(2)", "(3)", "(2,1)"]);
    }

    #[test]
    fn path_counts_match_tables() {
        let n = |lvl: LevelIndex, lam: &[u32], ell: u32| {
            enumerate_paths(lvl, &BVertex::new(pt(lam), ell, lvl)).len()
        };
        assert_eq!(n(LevelIndex::whole(1), &[1], 0), 1);
        assert_eq!(n(LevelIndex::whole(2), &[1], 1), 3);
        assert_eq!(n(LevelIndex::half(2), &[1], 1), 5);
        assert_eq!(n(LevelIndex::half(1), &[], 1), 2);
        assert_eq!(n(LevelIndex::whole(3), &[], 3), 5);
        assert_eq!(n(LevelIndex::half(3), &[1], 2), 22);
    }

    #[test]
    fn dimension_identity_bell() {
        for twice in 2..=7u32 {
            let lvl = LevelIndex::from_twice(twice);
            let total: num_bigint::BigInt = vertices(lvl)
                .iter()
                .map(|v| {
                    let d = enumerate_paths(lvl, v).len();
                    num_bigint::BigInt::from(d) * num_bigint::BigInt::from(d)
                })
                .sum();
            assert_eq!(total, bell_number(twice as usize), "level twice {twice}");
        }
    }

    #[test]
    fn maximal_path_is_first() {
        let lvl = LevelIndex::whole(2);
        let paths = enumerate_paths(lvl, &BVertex::new(pt(&[1]), 1, lvl));
        let strs: Vec<String> = paths.iter().map(|p| p.to_string()).collect();
        assert_eq!(
            strs,
            vec![
                "(∅,0)>(∅,0)>(∅,1)>(∅,1)>((1),1)",
                "(∅,0)>(∅,0)>((1),0)>(∅,1)>((1),1)",
                "(∅,0)>(∅,0)>((1),0)>((1),0)>((1),1)",
            ]
        );
        for p in &paths[1..] {
            assert!(matches!(compare_paths(&paths[0], p), PathOrder::Succ(_)));
        }
    }

    #[test]
    fn maximal_path_matches_closed_form() {
        // shape ((2,1),2) at level 5+1/2: printed example of the maximal path
        let lvl = LevelIndex::half(5);
        let shape = BVertex::new(pt(&[2, 1]), 2, lvl);
        let paths = enumerate_paths(lvl, &shape);
        let lams: Vec<String> = paths[0]
            .vertices()
            .iter()
            .map(|v| format!("{}", v.lam))
            .collect();
        assert_eq!(
            lams,
            vec!["∅", "∅", "∅", "∅", "∅", "∅", "(1)", "(1)", "(2)", "(2)", "(2,1)", "(2,1)"]
        );
    }

    #[test]
    fn contents_basic() {
        let lvl = LevelIndex::half(1);
        let shape = BVertex::new(pt(&[]), 1, lvl);
        let paths = enumerate_paths(lvl, &shape);
        assert_eq!(paths.len(), 2);
        let ta = &paths[0]; // all stays
        let tb = &paths[1]; // adds then removes (1,1)
        assert_eq!(content(ta, LevelIndex::half(0), false), rf("0"));
        assert_eq!(content(ta, LevelIndex::whole(1), false), rf("z"));
        assert_eq!(content(ta, LevelIndex::half(1), false), rf("0"));
        assert_eq!(content(tb, LevelIndex::whole(1), false), rf("0"));
        assert_eq!(content(tb, LevelIndex::half(1), false), rf("z"));
        assert_eq!(content(ta, LevelIndex::half(0), true), rf("-z/2"));
        assert_eq!(content(ta, LevelIndex::whole(1), true), rf("z/2"));
    }

    #[test]
    fn sigma_neighbor_symmetric_group_case() {
        // level 3, shape ((2,1),0): the two standard tableaux of (2,1)
        // are swapped by the whole interchange at point 3
        let lvl = LevelIndex::whole(3);
        let shape = BVertex::new(pt(&[2, 1]), 0, lvl);
        let paths = enumerate_paths(lvl, &shape);
        assert_eq!(paths.len(), 2);
        let s = sigma_neighbor(&paths[0], LevelIndex::whole(3)).unwrap();
        assert_eq!(s, paths[1]);
        let back = sigma_neighbor(&s, LevelIndex::whole(3)).unwrap();
        assert_eq!(back, paths[0]);
    }

    #[test]
    fn sigma_neighbor_same_row_fails() {
        // staying path at shape ((2),0): difference nodes share a row
        let lvl = LevelIndex::whole(2);
        let shape = BVertex::new(pt(&[2]), 0, lvl);
        let paths = enumerate_paths(lvl, &shape);
        assert_eq!(paths.len(), 1);
        assert!(sigma_neighbor(&paths[0], LevelIndex::whole(2)).is_none());
    }

    #[test]
    fn equiv_examples() {
        let lvl = LevelIndex::whole(2);
        let paths = enumerate_paths(lvl, &BVertex::new(pt(&[1]), 1, lvl));
        let (t1, t3, t2) = (&paths[0], &paths[1], &paths[2]);
        // t3 and t2 differ only at the half point 1+1/2
        assert!(equiv(t3, t2, LevelIndex::half(1), EquivFlavor::Tilde));
        assert!(!equiv(t1, t3, LevelIndex::half(1), EquivFlavor::Tilde));
        // t1 and t3 differ only at the whole point 1
        assert!(equiv(t1, t3, LevelIndex::whole(1), EquivFlavor::Tilde));
        assert!(equiv(t1, t1, LevelIndex::whole(1), EquivFlavor::Tilde));
        assert!(equiv(t1, t1, LevelIndex::whole(2), EquivFlavor::Simeq));
    }

    #[test]
    fn swapped_contents_identity() {
        for (lvl, lam, ell) in [
            (LevelIndex::whole(3), vec![2, 1], 0u32),
            (LevelIndex::half(2), vec![1], 1),
        ] {
            let shape = BVertex::new(Partition::new(lam.clone()), ell, lvl);
            for t in enumerate_paths(lvl, &shape) {
                for tw in 3..=lvl.twice {
                    let point = LevelIndex::from_twice(tw);
                    if let Some(s) = sigma_neighbor(&t, point) {
                        let (hi, mid, lo) = (
                            point,
                            LevelIndex::from_twice(point.twice - 1),
                            LevelIndex::from_twice(point.twice - 2),
                        );
                        assert_eq!(content(&s, hi, false), content(&t, lo, false));
                        assert_eq!(content(&s, lo, false), content(&t, hi, false));
                        assert_eq!(content(&s, mid, false), content(&t, mid, false));
                        assert_eq!(sigma_neighbor(&s, point).unwrap(), t);
                        // the swap touches exactly the simeq pair
                        assert!(equiv(&s, &t, point, EquivFlavor::Simeq));
                    }
                }
            }
        }
    }

    #[test]
    fn truncation_is_path() {
        let lvl = LevelIndex::half(2);
        for t in enumerate_paths(lvl, &BVertex::new(pt(&[1]), 1, lvl)) {
            for tw in 0..=lvl.twice {
                let trunc = t.truncate(LevelIndex::from_twice(tw));
                assert_eq!(trunc.level().twice, tw);
            }
        }
    }
}
