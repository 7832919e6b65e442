//! Symbolic clopen subsets of the orbit `X_R = {f_k}`.
//!
//! Sets are expression DAGs over basis sets `E(l, L)` with exact pointwise
//! membership. Two extra node kinds keep images cheap: [`Kind::Translate`]
//! (the image under a group element, evaluated by moving the point) and
//! [`Kind::Preimage`] (pull back along an arbitrary point map, used for the
//! cells of the involution tower). Composite nodes memoize their membership
//! answers, so heavily shared DAGs evaluate in time linear in their size.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::rc::Rc;
use alloc::string::String;
use alloc::vec::Vec;
use core::cell::RefCell;
use core::fmt;

use crate::error::{Error, Result};
use crate::finset::{enum_finset, DyadicElem, FinSet};
use crate::space::{SpaceRef, TPoint};

/// The basic clopen set `E(l, L) = {f_k : l ⊆ k, N(t) ∩ (k∖l) = ∅ for t ∈ L}`.
#[derive(Clone)]
pub struct BasisSet {
    l: FinSet,
    points: Vec<TPoint>,
    space: Option<SpaceRef>,
}

impl BasisSet {
    /// `E(l, ∅)`; no feasible space is needed to decide it.
    pub fn plain(l: FinSet) -> Self {
        BasisSet { l, points: Vec::new(), space: None }
    }

    /// `E(l, L)`. Every point of `L` must lie outside `R`, otherwise the set
    /// would be empty by convention and the parameter is rejected.
    pub fn new(space: &SpaceRef, l: FinSet, points: Vec<TPoint>) -> Result<Self> {
        let mut pts: Vec<TPoint> = Vec::with_capacity(points.len());
        for t in points {
            if space.in_r(&t) {
                return Err(Error::PointInR(format!("{t}")));
            }
            if !pts.contains(&t) {
                pts.push(t);
            }
        }
        let space = (!pts.is_empty()).then(|| space.clone());
        Ok(BasisSet { l, points: pts, space })
    }

    pub fn l(&self) -> &FinSet {
        &self.l
    }

    pub fn points(&self) -> &[TPoint] {
        &self.points
    }

    fn with_l(&self, l: FinSet) -> BasisSet {
        BasisSet { l, points: self.points.clone(), space: self.space.clone() }
    }

    /// Whether some `t ∈ L` has `n ∈ N(t)`.
    fn hits(&self, n: u32) -> bool {
        match &self.space {
            Some(space) => self.points.iter().any(|t| space.in_o(n, t)),
            None => false,
        }
    }

    pub fn contains(&self, k: &FinSet) -> bool {
        self.l.is_subset(k) && k.iter().filter(|n| !self.l.contains(*n)).all(|n| !self.hits(n))
    }
}

impl PartialEq for BasisSet {
    fn eq(&self, other: &Self) -> bool {
        self.l == other.l && self.points == other.points
    }
}

impl fmt::Debug for BasisSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for BasisSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(E (")?;
        for (i, n) in self.l.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{n}")?;
        }
        f.write_str(") (")?;
        for (i, t) in self.points.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{t}")?;
        }
        f.write_str("))")
    }
}

/// A total or partial self-map of the orbit, used by [`Kind::Preimage`].
pub trait PointMap {
    fn label(&self) -> String;
    fn image(&self, k: &FinSet) -> Result<FinSet>;
}

/// Node kinds of a clopen expression.
pub enum Kind {
    Empty,
    Full,
    Basis(BasisSet),
    Not(ClopenExpr),
    And(Vec<ClopenExpr>),
    Or(Vec<ClopenExpr>),
    /// `{k : g·k ∈ inner}`, which is also the image `ε_g[inner]`.
    Translate(DyadicElem, ClopenExpr),
    /// `{k : m(k) ∈ inner}`.
    Preimage(Rc<dyn PointMap>, ClopenExpr),
}

struct Node {
    kind: Kind,
    memo: RefCell<BTreeMap<FinSet, bool>>,
}

/// A clopen subset of `X_R`, shared by reference.
#[derive(Clone)]
pub struct ClopenExpr(Rc<Node>);

impl ClopenExpr {
    fn mk(kind: Kind) -> Self {
        ClopenExpr(Rc::new(Node { kind, memo: RefCell::new(BTreeMap::new()) }))
    }

    pub fn kind(&self) -> &Kind {
        &self.0.kind
    }

    pub fn empty() -> Self {
        Self::mk(Kind::Empty)
    }

    pub fn full() -> Self {
        Self::mk(Kind::Full)
    }

    pub fn basis(b: BasisSet) -> Self {
        Self::mk(Kind::Basis(b))
    }

    /// `E(l, ∅)`.
    pub fn plain(l: FinSet) -> Self {
        Self::basis(BasisSet::plain(l))
    }

    /// `E_n = E({n}, ∅) = {f_k : n ∈ k}`.
    pub fn e(n: u32) -> Self {
        Self::plain(FinSet::singleton(n))
    }

    /// Points that agree with `k` on `{1..d}`.
    pub fn cylinder(k: &FinSet, d: u32) -> Self {
        Self::and_all((1..=d).map(|i| if k.contains(i) { Self::e(i) } else { Self::e(i).not() }))
    }

    pub fn is_empty_node(&self) -> bool {
        matches!(self.kind(), Kind::Empty)
    }

    pub fn is_full_node(&self) -> bool {
        matches!(self.kind(), Kind::Full)
    }

    pub fn not(&self) -> Self {
        match self.kind() {
            Kind::Empty => Self::full(),
            Kind::Full => Self::empty(),
            _ => Self::mk(Kind::Not(self.clone())),
        }
    }

    pub fn and(&self, other: &ClopenExpr) -> Self {
        Self::and_all([self.clone(), other.clone()])
    }

    pub fn or(&self, other: &ClopenExpr) -> Self {
        Self::or_all([self.clone(), other.clone()])
    }

    /// Also `self ∖ other`.
    pub fn minus(&self, other: &ClopenExpr) -> Self {
        self.and(&other.not())
    }

    pub fn and_all<I: IntoIterator<Item = ClopenExpr>>(parts: I) -> Self {
        let mut kept = Vec::new();
        for p in parts {
            match p.kind() {
                Kind::Empty => return Self::empty(),
                Kind::Full => {}
                _ => kept.push(p),
            }
        }
        match kept.len() {
            0 => Self::full(),
            1 => kept.pop().unwrap(),
            _ => Self::mk(Kind::And(kept)),
        }
    }

    pub fn or_all<I: IntoIterator<Item = ClopenExpr>>(parts: I) -> Self {
        let mut kept = Vec::new();
        for p in parts {
            match p.kind() {
                Kind::Full => return Self::full(),
                Kind::Empty => {}
                _ => kept.push(p),
            }
        }
        match kept.len() {
            0 => Self::empty(),
            1 => kept.pop().unwrap(),
            _ => Self::mk(Kind::Or(kept)),
        }
    }

    /// Lazy image `ε_g[self]`, evaluated by moving the query point.
    pub fn translate(&self, g: &DyadicElem) -> Self {
        if g.is_zero() {
            return self.clone();
        }
        match self.kind() {
            Kind::Empty | Kind::Full => self.clone(),
            Kind::Translate(h, inner) => inner.translate(&g.add(h)),
            _ => Self::mk(Kind::Translate(g.clone(), self.clone())),
        }
    }

    /// `{k : m(k) ∈ self}`.
    pub fn preimage(&self, m: Rc<dyn PointMap>) -> Self {
        match self.kind() {
            Kind::Empty | Kind::Full => self.clone(),
            _ => Self::mk(Kind::Preimage(m, self.clone())),
        }
    }

    /// Pointwise membership of `f_k`.
    pub fn member(&self, k: &FinSet) -> Result<bool> {
        let node = &self.0;
        let composite = match &node.kind {
            Kind::Empty => return Ok(false),
            Kind::Full => return Ok(true),
            Kind::Basis(b) => return Ok(b.contains(k)),
            _ => true,
        };
        if composite {
            if let Some(&v) = node.memo.borrow().get(k) {
                return Ok(v);
            }
        }
        let v = match &node.kind {
            Kind::Not(x) => !x.member(k)?,
            Kind::And(xs) => {
                let mut all = true;
                for x in xs {
                    if !x.member(k)? {
                        all = false;
                        break;
                    }
                }
                all
            }
            Kind::Or(xs) => {
                let mut any = false;
                for x in xs {
                    if x.member(k)? {
                        any = true;
                        break;
                    }
                }
                any
            }
            Kind::Translate(g, x) => x.member(&g.act(k))?,
            Kind::Preimage(m, x) => x.member(&m.image(k)?)?,
            Kind::Empty | Kind::Full | Kind::Basis(_) => unreachable!(),
        };
        node.memo.borrow_mut().insert(k.clone(), v);
        Ok(v)
    }

    /// Whether the expression is built from basis sets and Boolean operations
    /// only (no translate or preimage nodes).
    pub fn is_symbolic(&self) -> bool {
        match self.kind() {
            Kind::Empty | Kind::Full | Kind::Basis(_) => true,
            Kind::Not(x) => x.is_symbolic(),
            Kind::And(xs) | Kind::Or(xs) => xs.iter().all(ClopenExpr::is_symbolic),
            Kind::Translate(..) | Kind::Preimage(..) => false,
        }
    }
}

impl fmt::Display for ClopenExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind() {
            Kind::Empty => f.write_str("empty"),
            Kind::Full => f.write_str("full"),
            Kind::Basis(b) => write!(f, "{b}"),
            Kind::Not(x) => write!(f, "(not {x})"),
            Kind::And(xs) | Kind::Or(xs) => {
                let op = if matches!(self.kind(), Kind::And(_)) { "and" } else { "or" };
                write!(f, "({op}")?;
                for x in xs {
                    write!(f, " {x}")?;
                }
                f.write_str(")")
            }
            Kind::Translate(g, x) => {
                f.write_str("(shift (")?;
                for (i, n) in g.support().iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{n}")?;
                }
                write!(f, ") {x})")
            }
            Kind::Preimage(m, x) => write!(f, "(pre {} {x})", m.label()),
        }
    }
}

impl fmt::Debug for ClopenExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `member(k, e)`.
pub fn member(k: &FinSet, e: &ClopenExpr) -> Result<bool> {
    e.member(k)
}

/// The image `σ_n[e]`, pushed symbolically through the expression.
///
/// At a basis leaf `E(l, L)`:
/// * `n ∈ l`: `E_nᶜ ∩ E(l∖{n}, L)`;
/// * `n ∉ l`, no `t ∈ L` with `n ∈ N(t)`: `E(l∪{n}, L) ∪ (E(l, L) ∩ E_nᶜ)`;
/// * `n ∉ l`, some `t ∈ L` with `n ∈ N(t)`: `E(l∪{n}, L)`.
///
/// Translate and preimage nodes are wrapped in a translation by `g_n`.
pub fn sigma_image(n: u32, e: &ClopenExpr) -> ClopenExpr {
    assert!(n >= 1, "generator indices start at 1");
    match e.kind() {
        Kind::Empty | Kind::Full => e.clone(),
        Kind::Basis(b) => sigma_basis(n, b),
        Kind::Not(x) => sigma_image(n, x).not(),
        Kind::And(xs) => ClopenExpr::and_all(xs.iter().map(|x| sigma_image(n, x))),
        Kind::Or(xs) => ClopenExpr::or_all(xs.iter().map(|x| sigma_image(n, x))),
        Kind::Translate(..) | Kind::Preimage(..) => e.translate(&DyadicElem::generator(n)),
    }
}

/// Which of the three leaf formulas applies to `σ_n[E(l, L)]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SigmaCase {
    /// `n ∈ l`.
    Removes,
    /// `n ∉ l` and `n ∉ N(t)` for every `t ∈ L`.
    Unguarded,
    /// `n ∉ l` and `n ∈ N(t)` for some `t ∈ L`.
    Guarded,
}

pub fn sigma_case(n: u32, b: &BasisSet) -> SigmaCase {
    if b.l.contains(n) {
        SigmaCase::Removes
    } else if b.hits(n) {
        SigmaCase::Guarded
    } else {
        SigmaCase::Unguarded
    }
}

fn sigma_basis(n: u32, b: &BasisSet) -> ClopenExpr {
    let en_c = ClopenExpr::e(n).not();
    match sigma_case(n, b) {
        SigmaCase::Removes => en_c.and(&ClopenExpr::basis(b.with_l(b.l.without(n)))),
        SigmaCase::Unguarded => {
            let grown = ClopenExpr::basis(b.with_l(b.l.with(n)));
            let kept = ClopenExpr::basis(b.clone()).and(&en_c);
            grown.or(&kept)
        }
        SigmaCase::Guarded => ClopenExpr::basis(b.with_l(b.l.with(n))),
    }
}

/// The unguarded reading of the leaf formula for `n ∉ l`, without the
/// `n ∉ N(t)` condition. Kept for comparison against [`sigma_image`].
pub fn sigma_basis_unguarded(n: u32, b: &BasisSet) -> ClopenExpr {
    if b.l.contains(n) {
        return sigma_basis(n, b);
    }
    let en_c = ClopenExpr::e(n).not();
    let grown = ClopenExpr::basis(b.with_l(b.l.with(n)));
    grown.or(&ClopenExpr::basis(b.clone()).and(&en_c))
}

/// The image `ε_g[e]`, composing [`sigma_image`] over the support of `g`.
pub fn epsilon_image(g: &DyadicElem, e: &ClopenExpr) -> ClopenExpr {
    g.support().iter().fold(e.clone(), |acc, n| sigma_image(n, &acc))
}

/// First `k ⊆ {1..depth}` in enumeration order with `f_k ∈ e`.
///
/// `None` is evidence of emptiness up to `depth` only.
pub fn find_witness(e: &ClopenExpr, depth: u32) -> Result<Option<FinSet>> {
    check_depth(depth)?;
    for i in 0..(1u64 << depth) {
        let k = enum_finset(i);
        if e.member(&k)? {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

fn check_depth(depth: u32) -> Result<()> {
    if !(1..=30).contains(&depth) {
        return Err(Error::DepthOutOfRange { depth, min: 1, max: 30 });
    }
    Ok(())
}

/// Window-bounded extensional equality: agreement on every `k ⊆ {1..depth}`.
pub fn equal_on_window(a: &ClopenExpr, b: &ClopenExpr, depth: u32) -> Result<bool> {
    Ok(window_difference(a, b, depth)?.is_none())
}

/// First window point where the two expressions disagree.
pub fn window_difference(a: &ClopenExpr, b: &ClopenExpr, depth: u32) -> Result<Option<FinSet>> {
    check_depth(depth)?;
    for i in 0..(1u64 << depth) {
        let k = enum_finset(i);
        if a.member(&k)? != b.member(&k)? {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

/// Shrinks `e` around `anchor`: returns `e ∩ E_m` or `e ∩ E_mᶜ`, whichever
/// holds the anchor, for the least `m ∉ used` (`m ≤ depth`) at which both
/// halves are non-empty. The half without the anchor is certified non-empty
/// by a witness, so the result is always a proper subset.
pub fn split(e: &ClopenExpr, anchor: &FinSet, used: &FinSet, depth: u32) -> Result<ClopenExpr> {
    Ok(split_with_index(e, anchor, used, depth)?.0)
}

/// [`split`], also returning the splitting index.
pub fn split_with_index(
    e: &ClopenExpr,
    anchor: &FinSet,
    used: &FinSet,
    depth: u32,
) -> Result<(ClopenExpr, u32)> {
    check_depth(depth)?;
    if !e.member(anchor)? {
        return Err(Error::Precondition(format!("anchor {anchor} is not in the set")));
    }
    for m in (1..=depth).filter(|m| !used.contains(*m)) {
        let em = ClopenExpr::e(m);
        let (own, other) = if anchor.contains(m) {
            (e.and(&em), e.and(&em.not()))
        } else {
            (e.and(&em.not()), e.and(&em))
        };
        if find_witness(&other, depth)?.is_some() {
            return Ok((own, m));
        }
    }
    Err(Error::NoSplit { depth })
}

/// Outcome of an invariance audit on a window.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InvariantVerdict {
    TrivialFull,
    TrivialEmpty,
    NotInvariant,
    /// Invariant under every generator yet neither empty nor full on the
    /// window: an ergodicity failure at this depth.
    InvariantNontrivial,
}

/// Checks `ε_g[e] ≡ e` on the window for each generator and classifies `e`.
pub fn invariant_clopen_audit(
    gens: &[DyadicElem],
    e: &ClopenExpr,
    depth: u32,
) -> Result<InvariantVerdict> {
    for g in gens {
        if !equal_on_window(&epsilon_image(g, e), e, depth)? {
            return Ok(InvariantVerdict::NotInvariant);
        }
    }
    if equal_on_window(e, &ClopenExpr::full(), depth)? {
        Ok(InvariantVerdict::TrivialFull)
    } else if equal_on_window(e, &ClopenExpr::empty(), depth)? {
        Ok(InvariantVerdict::TrivialEmpty)
    } else {
        Ok(InvariantVerdict::InvariantNontrivial)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finset::subsets;
    use crate::space::BuiltinCantor;

    fn set(v: &[u32]) -> FinSet {
        FinSet::new(v.iter().copied())
    }

    fn pt(s: &str) -> TPoint {
        s.parse().unwrap()
    }

    fn eb(l: &[u32], pts: &[&str]) -> ClopenExpr {
        let space = BuiltinCantor::shared();
        ClopenExpr::basis(BasisSet::new(&space, set(l), pts.iter().map(|s| pt(s)).collect()).unwrap())
    }

    #[test]
    fn member_examples() {
        assert!(ClopenExpr::e(1).member(&set(&[1])).unwrap());
        assert!(ClopenExpr::e(1).not().member(&FinSet::empty()).unwrap());
        assert!(!eb(&[], &[":01"]).member(&set(&[2])).unwrap());
        assert!(eb(&[], &[":01"]).member(&set(&[3])).unwrap());
    }

    #[test]
    fn basis_rejects_points_in_r() {
        let space = BuiltinCantor::shared();
        assert!(matches!(
            BasisSet::new(&space, FinSet::empty(), vec![pt(":0")]),
            Err(Error::PointInR(_))
        ));
        let b = BasisSet::new(&space, FinSet::empty(), vec![pt(":01"), pt("0101:01")]).unwrap();
        assert_eq!(b.points().len(), 1);
    }

    #[test]
    fn serialization() {
        let e = ClopenExpr::e(1).not().and(&eb(&[], &[":01"]));
        assert_eq!(format!("{e}"), "(and (not (E (1) ())) (E () (:01)))");
        let t = ClopenExpr::e(2).translate(&DyadicElem::from_support(set(&[1, 3])));
        assert_eq!(format!("{t}"), "(shift (1 3) (E (2) ()))");
    }

    #[test]
    fn sigma_examples() {
        let e1 = ClopenExpr::e(1);
        assert!(equal_on_window(&sigma_image(1, &e1), &e1.not(), 6).unwrap());
        let img = sigma_image(2, &e1);
        assert_eq!(
            format!("{img}"),
            "(or (E (1 2) ()) (and (E (1) ()) (not (E (2) ()))))"
        );
        assert!(equal_on_window(&img, &e1, 6).unwrap());
        assert!(sigma_image(4, &ClopenExpr::full()).is_full_node());
    }

    #[test]
    fn guarded_branch_is_needed() {
        // n = 2 ∈ N((01)^ω): the unguarded formula keeps points that the true
        // image does not contain.
        let space = BuiltinCantor::shared();
        let b = BasisSet::new(&space, FinSet::empty(), vec![pt(":01")]).unwrap();
        assert_eq!(sigma_case(2, &b), SigmaCase::Guarded);
        let e = ClopenExpr::basis(b.clone());
        let truth = |k: &FinSet| e.member(&DyadicElem::generator(2).act(k)).unwrap();
        let guarded = sigma_image(2, &e);
        let unguarded = sigma_basis_unguarded(2, &b);
        for k in subsets(6) {
            assert_eq!(guarded.member(&k).unwrap(), truth(&k));
        }
        assert!(subsets(6).any(|k| unguarded.member(&k).unwrap() != truth(&k)));
    }

    #[test]
    fn images_are_pointwise_correct() {
        let pool = [":01", "0:01", "1:01"];
        let mut lists: Vec<Vec<&str>> = vec![vec![]];
        for a in 0..3 {
            lists.push(vec![pool[a]]);
            for b in (a + 1)..3 {
                lists.push(vec![pool[a], pool[b]]);
            }
        }
        for l in subsets(5) {
            for pts in &lists {
                let e = eb(l.elems(), pts);
                for n in 1..=6 {
                    let img = sigma_image(n, &e);
                    for k in subsets(6) {
                        let moved = DyadicElem::generator(n).act(&k);
                        assert_eq!(img.member(&k).unwrap(), e.member(&moved).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn epsilon_examples() {
        let e = eb(&[1], &[":01"]);
        assert!(equal_on_window(&epsilon_image(&DyadicElem::zero(), &e), &e, 6).unwrap());
        let e1 = ClopenExpr::e(1);
        assert!(equal_on_window(&epsilon_image(&DyadicElem::generator(1), &e1), &e1.not(), 6).unwrap());
        let g = DyadicElem::from_support(set(&[1, 2]));
        let img = epsilon_image(&g, &ClopenExpr::plain(set(&[1, 2])));
        let expected = ClopenExpr::and_all([
            ClopenExpr::plain(FinSet::empty()),
            ClopenExpr::e(1).not(),
            ClopenExpr::e(2).not(),
        ]);
        assert!(equal_on_window(&img, &expected, 6).unwrap());
    }

    #[test]
    fn epsilon_is_an_action() {
        let e = eb(&[2], &["0:01"]).or(&ClopenExpr::e(1).not());
        for g in subsets(3) {
            for h in subsets(3) {
                let g = DyadicElem::from_support(g.clone());
                let h = DyadicElem::from_support(h);
                let two = epsilon_image(&g, &epsilon_image(&h, &e));
                assert!(equal_on_window(&two, &epsilon_image(&g.add(&h), &e), 5).unwrap());
                let lazy = e.translate(&g);
                assert!(equal_on_window(&lazy, &epsilon_image(&g, &e), 5).unwrap());
            }
        }
    }

    #[test]
    fn witness_examples() {
        let e1 = ClopenExpr::e(1);
        assert_eq!(find_witness(&e1.and(&e1.not()), 8).unwrap(), None);
        assert_eq!(find_witness(&ClopenExpr::plain(set(&[1, 2])), 8).unwrap(), Some(set(&[1, 2])));
        assert_eq!(find_witness(&eb(&[], &[":01"]), 8).unwrap(), Some(FinSet::empty()));
    }

    #[test]
    fn window_equality_examples() {
        let e1 = ClopenExpr::e(1);
        assert!(equal_on_window(&e1, &e1.not().not(), 6).unwrap());
        assert!(equal_on_window(&sigma_image(2, &e1), &e1, 6).unwrap());
        assert!(!equal_on_window(&e1, &ClopenExpr::e(2), 6).unwrap());
        assert_eq!(window_difference(&e1, &ClopenExpr::e(2), 6).unwrap(), Some(set(&[1])));
    }

    #[test]
    fn split_examples() {
        let e1 = ClopenExpr::e(1);
        let e2 = ClopenExpr::e(2);
        let s = split(&ClopenExpr::full(), &FinSet::empty(), &FinSet::empty(), 8).unwrap();
        assert!(equal_on_window(&s, &e1.not(), 6).unwrap());
        let s = split(&e1, &set(&[1]), &set(&[1]), 8).unwrap();
        assert!(equal_on_window(&s, &e1.and(&e2.not()), 6).unwrap());
        let s = split(&e1.not(), &set(&[2]), &set(&[1]), 8).unwrap();
        assert!(equal_on_window(&s, &e1.not().and(&e2), 6).unwrap());
        assert!(matches!(
            split(&e1, &FinSet::empty(), &FinSet::empty(), 8),
            Err(Error::Precondition(_))
        ));
        // a single cylinder point of depth 3 cannot split within depth 3
        let cyl = ClopenExpr::and_all((1..=3).map(|n| ClopenExpr::e(n).not()));
        assert_eq!(split(&cyl, &FinSet::empty(), &FinSet::empty(), 3).err(), Some(Error::NoSplit { depth: 3 }));
    }

    #[test]
    fn split_is_proper() {
        let cases = [
            (ClopenExpr::full(), FinSet::empty()),
            (ClopenExpr::e(3), set(&[3, 5])),
            (eb(&[], &[":01"]), set(&[3])),
            (eb(&[2], &["0:01"]).or(&ClopenExpr::e(1)), set(&[1, 4])),
        ];
        for (e, anchor) in cases {
            let s = split(&e, &anchor, &FinSet::empty(), 7).unwrap();
            assert!(s.member(&anchor).unwrap());
            assert!(find_witness(&e.minus(&s), 7).unwrap().is_some());
            assert!(find_witness(&s.minus(&e), 7).unwrap().is_none());
        }
    }

    #[test]
    fn invariance_audit_examples() {
        let gens: Vec<DyadicElem> = (1..=4).map(DyadicElem::generator).collect();
        let e1 = ClopenExpr::e(1);
        assert_eq!(invariant_clopen_audit(&gens, &e1, 6).unwrap(), InvariantVerdict::NotInvariant);
        assert_eq!(
            invariant_clopen_audit(&gens, &ClopenExpr::full(), 6).unwrap(),
            InvariantVerdict::TrivialFull
        );
        assert_eq!(
            invariant_clopen_audit(&gens, &e1.or(&e1.not()), 6).unwrap(),
            InvariantVerdict::TrivialFull
        );
        assert_eq!(
            invariant_clopen_audit(&gens, &e1.and(&e1.not()), 6).unwrap(),
            InvariantVerdict::TrivialEmpty
        );
    }
}
