//! Piecewise translations of the orbit: maps that act on each piece of a
//! clopen partition by a fixed group element.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::rc::Rc;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cell::RefCell;
use core::fmt;

use crate::clopen::{ClopenExpr, PointMap};
use crate::error::{Error, Result};
use crate::finset::{DyadicElem, FinSet};

/// Pieces a lazy map may produce before a lookup gives up.
pub const DEFAULT_SCAN_CAP: usize = 4096;

#[derive(Clone, Debug)]
pub struct Piece {
    pub region: ClopenExpr,
    pub mv: DyadicElem,
}

/// Resumable producer of the pieces of a lazy map, in order.
pub trait PieceSource {
    /// `None` once the map is known to have no further pieces.
    fn next_piece(&mut self) -> Result<Option<Piece>>;
}

/// Identifies the piece that contains a point.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum PieceId {
    Index(usize),
    /// `(outer, inner)` piece of a composition.
    Pair(Box<PieceId>, Box<PieceId>),
    /// Branch of a glued map, then the piece inside it.
    Glued(usize, Box<PieceId>),
}

impl fmt::Display for PieceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PieceId::Index(i) => write!(f, "{i}"),
            PieceId::Pair(o, i) => write!(f, "({o}.{i})"),
            PieceId::Glued(b, p) => write!(f, "{b}:{p}"),
        }
    }
}

/// The piece containing a point, with its region and move.
#[derive(Clone, Debug)]
pub struct Located {
    pub id: PieceId,
    pub region: ClopenExpr,
    pub mv: DyadicElem,
}

struct LazyState {
    produced: Vec<Piece>,
    source: Option<Box<dyn PieceSource>>,
}

enum Body {
    Table(Vec<Piece>),
    Lazy(RefCell<LazyState>),
    /// `outer ∘ inner`.
    Compose { outer: PiecewiseMap, inner: PiecewiseMap },
    /// On each branch region, the branch map. Regions partition the space.
    Glue(Vec<(ClopenExpr, PiecewiseMap)>),
}

struct MapNode {
    label: String,
    body: Body,
    cache: RefCell<BTreeMap<FinSet, Located>>,
}

/// A strongly decomposable map, shared by reference.
#[derive(Clone)]
pub struct PiecewiseMap(Rc<MapNode>);

impl PiecewiseMap {
    fn mk(label: String, body: Body) -> Self {
        PiecewiseMap(Rc::new(MapNode { label, body, cache: RefCell::new(BTreeMap::new()) }))
    }

    pub fn identity() -> Self {
        Self::table("id", vec![Piece { region: ClopenExpr::full(), mv: DyadicElem::zero() }])
    }

    /// A map with finitely many pieces, scanned in order.
    pub fn table(label: &str, pieces: Vec<Piece>) -> Self {
        Self::mk(label.into(), Body::Table(pieces))
    }

    pub fn lazy(label: &str, source: Box<dyn PieceSource>) -> Self {
        let state = LazyState { produced: Vec::new(), source: Some(source) };
        Self::mk(label.into(), Body::Lazy(RefCell::new(state)))
    }

    /// Uses `branches[i].1` on `branches[i].0`; the regions must partition
    /// the space.
    pub fn glue(label: &str, branches: Vec<(ClopenExpr, PiecewiseMap)>) -> Self {
        Self::mk(label.into(), Body::Glue(branches))
    }

    pub fn label(&self) -> &str {
        &self.0.label
    }

    /// The map as a [`PointMap`], for building preimage sets.
    pub fn as_point_map(&self) -> Rc<dyn PointMap> {
        Rc::new(self.clone())
    }

    pub fn is_identity(&self) -> bool {
        matches!(&self.0.body, Body::Table(p) if p.len() == 1 && p[0].mv.is_zero() && p[0].region.is_full_node())
    }

    /// The piece containing `k`, producing lazy pieces as needed (at most
    /// `scan_cap` per lazy map).
    pub fn locate(&self, k: &FinSet, scan_cap: usize) -> Result<Located> {
        if let Some(hit) = self.0.cache.borrow().get(k) {
            return Ok(hit.clone());
        }
        let found = match &self.0.body {
            Body::Table(pieces) => {
                let mut hit = None;
                for (i, p) in pieces.iter().enumerate() {
                    if p.region.member(k)? {
                        hit = Some(Located { id: PieceId::Index(i), region: p.region.clone(), mv: p.mv.clone() });
                        break;
                    }
                }
                hit.ok_or_else(|| self.uncovered(k))?
            }
            Body::Lazy(state) => self.locate_lazy(state, k, scan_cap)?,
            Body::Compose { outer, inner } => {
                let li = inner.locate(k, scan_cap)?;
                let lo = outer.locate(&li.mv.act(k), scan_cap)?;
                Located {
                    id: PieceId::Pair(Box::new(lo.id), Box::new(li.id)),
                    region: li.region.and(&lo.region.translate(&li.mv)),
                    mv: li.mv.add(&lo.mv),
                }
            }
            Body::Glue(branches) => {
                let mut hit = None;
                for (b, (region, map)) in branches.iter().enumerate() {
                    if region.member(k)? {
                        let inner = map.locate(k, scan_cap)?;
                        hit = Some(Located {
                            id: PieceId::Glued(b, Box::new(inner.id)),
                            region: region.and(&inner.region),
                            mv: inner.mv,
                        });
                        break;
                    }
                }
                hit.ok_or_else(|| self.uncovered(k))?
            }
        };
        self.0.cache.borrow_mut().insert(k.clone(), found.clone());
        Ok(found)
    }

    fn locate_lazy(&self, state: &RefCell<LazyState>, k: &FinSet, scan_cap: usize) -> Result<Located> {
        let mut i = 0;
        loop {
            let piece = state.borrow().produced.get(i).cloned();
            let piece = match piece {
                Some(p) => p,
                None => {
                    if i >= scan_cap {
                        return Err(Error::ScanCapExceeded { cap: scan_cap, point: format!("{k}") });
                    }
                    // The source may evaluate other maps; never hold the borrow across it.
                    let source = state.borrow_mut().source.take();
                    let Some(mut source) = source else {
                        return Err(self.uncovered(k));
                    };
                    let next = source.next_piece();
                    let mut st = state.borrow_mut();
                    match next? {
                        Some(p) => {
                            st.produced.push(p.clone());
                            st.source = Some(source);
                            p
                        }
                        None => return Err(self.uncovered(k)),
                    }
                }
            };
            if piece.region.member(k)? {
                return Ok(Located { id: PieceId::Index(i), region: piece.region, mv: piece.mv });
            }
            i += 1;
        }
    }

    fn uncovered(&self, k: &FinSet) -> Error {
        Error::Uncovered { map: self.0.label.clone(), point: format!("{k}") }
    }

    pub fn apply(&self, k: &FinSet) -> Result<FinSet> {
        apply_piecewise(self, k, DEFAULT_SCAN_CAP)
    }

    /// The first `count` pieces of a table or lazy map, producing them if
    /// needed. Composite maps have no intrinsic piece order and return `None`.
    pub fn leading_pieces(&self, count: usize) -> Result<Option<Vec<Piece>>> {
        match &self.0.body {
            Body::Table(p) => Ok(Some(p.iter().take(count).cloned().collect())),
            Body::Lazy(state) => {
                while state.borrow().produced.len() < count {
                    let source = state.borrow_mut().source.take();
                    let Some(mut source) = source else { break };
                    let next = source.next_piece()?;
                    let mut st = state.borrow_mut();
                    if let Some(p) = next {
                        st.produced.push(p);
                        st.source = Some(source);
                    }
                }
                Ok(Some(state.borrow().produced.iter().take(count).cloned().collect()))
            }
            _ => Ok(None),
        }
    }
}

impl fmt::Debug for PiecewiseMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PiecewiseMap({})", self.0.label)
    }
}

impl PointMap for PiecewiseMap {
    fn label(&self) -> String {
        self.0.label.clone()
    }

    fn image(&self, k: &FinSet) -> Result<FinSet> {
        self.apply(k)
    }
}

/// `m(k)`: the move of the first piece containing `k`, applied to `k`.
pub fn apply_piecewise(m: &PiecewiseMap, k: &FinSet, scan_cap: usize) -> Result<FinSet> {
    if scan_cap == 0 {
        return Err(Error::Precondition("scan cap must be at least 1".into()));
    }
    Ok(m.locate(k, scan_cap)?.mv.act(k))
}

/// `a ∘ b`. The piece of `a ∘ b` through `k` is `b`'s piece `R_b` cut down to
/// the points that `b` moves into `a`'s piece `R_a`, with move `g_b + g_a`.
pub fn compose(a: &PiecewiseMap, b: &PiecewiseMap) -> PiecewiseMap {
    if a.is_identity() {
        return b.clone();
    }
    if b.is_identity() {
        return a.clone();
    }
    let label = format!("{}*{}", a.label(), b.label());
    PiecewiseMap::mk(label, Body::Compose { outer: a.clone(), inner: b.clone() })
}

/// Odometer piece `j ≥ 1`: bits `1..j-1` present and `j` absent, move
/// `g_1 + … + g_j` (binary increment of the enumeration index).
pub fn odometer_piece(j: u32) -> Piece {
    let region = ClopenExpr::plain(FinSet::interval(1, j - 1)).and(&ClopenExpr::e(j).not());
    Piece { region, mv: DyadicElem::from_support(FinSet::interval(1, j)) }
}

struct OdometerSource {
    next: u32,
    inverse: bool,
}

impl PieceSource for OdometerSource {
    fn next_piece(&mut self) -> Result<Option<Piece>> {
        let j = self.next;
        self.next += 1;
        if !self.inverse {
            return Ok(Some(odometer_piece(j)));
        }
        let lower = (1..j).map(|i| ClopenExpr::e(i).not());
        let region = ClopenExpr::and_all(lower.chain([ClopenExpr::e(j)]));
        Ok(Some(Piece { region, mv: DyadicElem::from_support(FinSet::interval(1, j)) }))
    }
}

/// `enum_finset(i) ↦ enum_finset(i + 1)`, with infinitely many pieces.
pub fn odometer() -> PiecewiseMap {
    PiecewiseMap::lazy("odometer", Box::new(OdometerSource { next: 1, inverse: false }))
}

/// `enum_finset(i + 1) ↦ enum_finset(i)`; undefined at `∅`.
pub fn odometer_inverse() -> PiecewiseMap {
    PiecewiseMap::lazy("odometer^-1", Box::new(OdometerSource { next: 1, inverse: true }))
}
