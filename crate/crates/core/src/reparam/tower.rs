//! The tower of commuting piecewise involutions `h_1, …, h_n` with its
//! partition tree `K^p(α)`, and the dyadic action it generates.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::piecewise::{compose, PiecewiseMap};
use super::swap::build_swap_named;
use crate::audit::Check;
use crate::clopen::{split_with_index, ClopenExpr};
use crate::error::{Error, Result};
use crate::finset::{enum_finset, subsets, DyadicElem, FinSet};

const SPLIT_HEADROOM: u32 = 8;

/// `s_j`, the `j`-th point of the orbit in enumeration order.
pub fn orbit_point(j: u64) -> FinSet {
    enum_finset(j)
}

/// `D_p = ⋂_{j ≤ p} E_{m_j}ᶜ` with `m_j = min(s_j)`, for `p = 1..=n`.
pub fn default_neighborhoods(n: u32) -> Result<Vec<ClopenExpr>> {
    if n == 0 {
        return Err(Error::ZeroIndex);
    }
    let mut used = FinSet::empty();
    let mut out = Vec::with_capacity(n as usize);
    for j in 1..=n as u64 {
        let m = orbit_point(j).min_elem().expect("s_j is non-empty for j >= 1");
        used = used.with(m);
        out.push(ClopenExpr::and_all(used.iter().map(|i| ClopenExpr::e(i).not())));
    }
    Ok(out)
}

/// A finite stage of the involution tower.
pub struct InvolutionTower {
    n: u32,
    depth: u32,
    h: Vec<PiecewiseMap>,
    /// `nodes[p][α]`, where bit `i - 1` of `α` is `α_i`.
    nodes: Vec<Vec<ClopenExpr>>,
    nbhd: Vec<ClopenExpr>,
    /// The swap built at each step; `swaps[p - 1]` acts inside `K^{p-1}(0…0)`.
    swaps: Vec<PiecewiseMap>,
}

impl InvolutionTower {
    pub fn n(&self) -> u32 {
        self.n
    }

    /// Depth used for splitting and witness searches during construction.
    pub fn depth(&self) -> u32 {
        self.depth
    }

    /// `h_j`, `1 ≤ j ≤ n`.
    pub fn h(&self, j: u32) -> &PiecewiseMap {
        &self.h[j as usize - 1]
    }

    pub fn involutions(&self) -> &[PiecewiseMap] {
        &self.h
    }

    /// `K^p(α)` with `α_i` read from bit `i - 1` of `alpha`.
    pub fn node(&self, p: u32, alpha: usize) -> &ClopenExpr {
        &self.nodes[p as usize][alpha]
    }

    pub fn level(&self, p: u32) -> &[ClopenExpr] {
        &self.nodes[p as usize]
    }

    pub fn neighborhoods(&self) -> &[ClopenExpr] {
        &self.nbhd
    }

    pub fn swaps(&self) -> &[PiecewiseMap] {
        &self.swaps
    }

    /// The address `α` of the level-`p` node containing `k`, found by
    /// transporting `k` back into `K^q(0…0)` one level at a time. Also
    /// returns the transported point `h^α(k) ∈ K^p(0…0)`.
    pub fn descend(&self, k: &FinSet, p: u32) -> Result<(usize, FinSet)> {
        let mut c = k.clone();
        let mut alpha = 0usize;
        for q in 1..=p {
            if !self.nodes[q as usize][0].member(&c)? {
                alpha |= 1 << (q - 1);
                c = self.h(q).apply(&c)?;
            }
        }
        Ok((alpha, c))
    }
}

/// The element `Σ α_i g_i` for the bit pattern `alpha`.
pub fn alpha_elem(alpha: usize) -> DyadicElem {
    DyadicElem::from_support((0..usize::BITS).filter(|i| alpha >> i & 1 == 1).map(|i| i + 1).collect())
}

/// Builds `h_1, …, h_n` by the inductive construction.
///
/// `h_1` swaps `D_1` and its complement with `h_1(s_0) = s_1`. Given the
/// tower up to `p`, transport `s_{p+1}` into `K^p(0…0)` to get `c`, let
/// `b = c` (or, when `c = s_0`, the first other point of `K^p(0…0)`), split
/// `K^p(0…0) ∩ D_{p+1}` around `s_0` until `b` falls out to get `A`, set
/// `B = K^p(0…0) ∖ A` and let `h` swap `A` and `B` with `h(s_0) = b`. Then
/// `h_{p+1} = h^α h h^α` on `K^p(α)` for every `α`.
pub fn build_tower(n: u32, nbhd: &[ClopenExpr], depth: u32) -> Result<InvolutionTower> {
    if n == 0 {
        return Err(Error::ZeroIndex);
    }
    if nbhd.len() < n as usize {
        return Err(Error::Precondition(format!("need {n} neighbourhoods, got {}", nbhd.len())));
    }
    let s0 = FinSet::empty();
    for (p, d) in nbhd.iter().take(n as usize).enumerate() {
        let sp = orbit_point(p as u64 + 1);
        if !d.member(&s0)? || d.member(&sp)? {
            return Err(Error::Precondition(format!("D_{} must contain s_0 and exclude {sp}", p + 1)));
        }
    }
    let d1 = nbhd[0].clone();
    let h1 = build_swap_named("h1", &d1, &d1.not(), &s0, &orbit_point(1), depth)?;
    let mut tower = InvolutionTower {
        n,
        depth,
        h: vec![h1.clone()],
        nodes: vec![vec![ClopenExpr::full()], vec![d1.clone(), d1.not()]],
        nbhd: nbhd[..n as usize].to_vec(),
        swaps: vec![h1.clone()],
    };
    // h^α for the current level.
    let mut conj = vec![PiecewiseMap::identity(), h1];
    for p in 1..n {
        let (_, c) = tower.descend(&orbit_point(p as u64 + 1), p)?;
        let core = tower.nodes[p as usize][0].clone();
        let b = if c != s0 { c } else { other_point(&core, &s0, depth)? };
        let mut a_set = core.and(&nbhd[p as usize]);
        let mut used = FinSet::empty();
        while a_set.member(&b)? {
            let (next, m) = split_escalating(&a_set, &s0, &used, depth)?;
            a_set = next;
            used = used.with(m);
        }
        let b_set = core.minus(&a_set);
        let label = format!("k{}", p + 1);
        let swap = build_swap_named(&label, &a_set, &b_set, &s0, &b, depth)?;
        let width = 1usize << p;
        let mut level = vec![ClopenExpr::empty(); 2 * width];
        let mut branches = Vec::with_capacity(width);
        for (alpha, ha) in conj.iter().enumerate() {
            let (lo, hi) = if ha.is_identity() {
                (a_set.clone(), b_set.clone())
            } else {
                (a_set.preimage(ha.as_point_map()), b_set.preimage(ha.as_point_map()))
            };
            level[alpha] = lo;
            level[alpha | width] = hi;
            let conjugated = compose(ha, &compose(&swap, ha));
            branches.push((tower.nodes[p as usize][alpha].clone(), conjugated));
        }
        let hp = PiecewiseMap::glue(&format!("h{}", p + 1), branches);
        let mut next_conj = conj.clone();
        for ha in &conj {
            next_conj.push(compose(ha, &hp));
        }
        conj = next_conj;
        tower.nodes.push(level);
        tower.h.push(hp);
        tower.swaps.push(swap);
    }
    Ok(tower)
}

fn other_point(e: &ClopenExpr, not: &FinSet, depth: u32) -> Result<FinSet> {
    for i in 0..(1u64 << depth.min(30)) {
        let k = enum_finset(i);
        if k != *not && e.member(&k)? {
            return Ok(k);
        }
    }
    Err(Error::SearchExhausted { bound: depth })
}

fn split_escalating(e: &ClopenExpr, anchor: &FinSet, used: &FinSet, depth: u32) -> Result<(ClopenExpr, u32)> {
    let top = (depth + SPLIT_HEADROOM).min(30);
    for d in depth.min(30)..=top {
        match split_with_index(e, anchor, used, d) {
            Err(Error::NoSplit { .. }) => continue,
            other => return other,
        }
    }
    Err(Error::NoSplit { depth: top })
}

/// `h_1^{α_1} ⋯ h_n^{α_n}(k)` for `g = Σ α_i g_i`.
pub fn dyadic_action(t: &InvolutionTower, g: &DyadicElem, k: &FinSet) -> Result<FinSet> {
    if g.support().max_elem().is_some_and(|m| m > t.n) {
        return Err(Error::Precondition(format!("{g} exceeds tower depth {}", t.n)));
    }
    let mut x = k.clone();
    for i in g.support().iter() {
        x = t.h(i).apply(&x)?;
    }
    Ok(x)
}

/// The orbit `{h^α(s_0)}` indexed by `α`.
pub fn orbit_of_origin(t: &InvolutionTower) -> Result<Vec<FinSet>> {
    (0..1usize << t.n).map(|a| dyadic_action(t, &alpha_elem(a), &FinSet::empty())).collect()
}

/// Index of the unique level-`p` node containing `k`; errors if the level
/// does not partition at `k`.
fn node_index(t: &InvolutionTower, p: u32, k: &FinSet) -> Result<Option<usize>> {
    let mut hit = None;
    for (alpha, node) in t.level(p).iter().enumerate() {
        if node.member(k)? {
            if hit.is_some() {
                return Ok(None);
            }
            hit = Some(alpha);
        }
    }
    Ok(hit)
}

/// Checks properties (a)–(g) of the tower on every point of the window
/// `subsets(window)`. Node transport (e) is checked for levels `p ≤ 4`.
pub fn audit_tower(t: &InvolutionTower, window: u32) -> Vec<Check> {
    let points: Vec<FinSet> = subsets(window).collect();
    let run = |name: &str, anchor: &str, f: &dyn Fn() -> Result<Option<alloc::string::String>>| match f() {
        Ok(cex) => Check::from_counterexample(name, anchor, cex).at_depth(window),
        Err(e) => Check::errored(name, anchor, &e).at_depth(window),
    };
    let mut out = Vec::new();
    out.push(run("tower-involutive-commuting", "involution-tower/a", &|| {
        for x in &points {
            for i in 1..=t.n {
                let y = t.h(i).apply(x)?;
                if t.h(i).apply(&y)? != *x {
                    return Ok(Some(format!("h{i} not involutive at {x}")));
                }
                for j in (i + 1)..=t.n {
                    let ij = t.h(i).apply(&t.h(j).apply(x)?)?;
                    let ji = t.h(j).apply(&y)?;
                    if ij != ji {
                        return Ok(Some(format!("h{i}, h{j} do not commute at {x}")));
                    }
                }
            }
        }
        Ok(None)
    }));
    out.push(run("tower-levels-partition", "involution-tower/b", &|| {
        for p in 0..=t.n {
            for x in &points {
                if node_index(t, p, x)?.is_none() {
                    return Ok(Some(format!("level {p} does not partition at {x}")));
                }
            }
        }
        Ok(None)
    }));
    out.push(run("tower-children-split-parent", "involution-tower/c", &|| {
        for p in 0..t.n {
            let width = 1usize << p;
            for alpha in 0..width {
                let parent = t.node(p, alpha);
                let (c0, c1) = (t.node(p + 1, alpha), t.node(p + 1, alpha | width));
                for x in &points {
                    let (a, b) = (c0.member(x)?, c1.member(x)?);
                    if parent.member(x)? != (a || b) || (a && b) {
                        return Ok(Some(format!("K^{p}({alpha}) is not the disjoint union of its children at {x}")));
                    }
                }
            }
        }
        Ok(None)
    }));
    out.push(run("tower-origin-cell", "involution-tower/d", &|| {
        let s0 = FinSet::empty();
        for p in 1..=t.n {
            let cell = t.node(p, 0);
            if !cell.member(&s0)? {
                return Ok(Some(format!("s0 not in K^{p}(0)")));
            }
            let d = &t.nbhd[p as usize - 1];
            for x in &points {
                if cell.member(x)? && !d.member(x)? {
                    return Ok(Some(format!("{x} in K^{p}(0) but not in D_{p}")));
                }
            }
        }
        Ok(None)
    }));
    out.push(run("tower-node-transport", "involution-tower/e", &|| {
        for p in 1..=t.n.min(4) {
            for x in &points {
                let Some(beta) = node_index(t, p, x)? else {
                    return Ok(Some(format!("no level-{p} node at {x}")));
                };
                for alpha in 0..(1usize << p) {
                    let y = dyadic_action(t, &alpha_elem(alpha), x)?;
                    if !t.node(p, alpha ^ beta).member(&y)? {
                        return Ok(Some(format!("alpha={alpha} moves {x} in K^{p}({beta}) to {y} outside K^{p}({})", alpha ^ beta)));
                    }
                }
            }
        }
        Ok(None)
    }));
    out.push(run("tower-orbit-coverage", "involution-tower/f", &|| {
        let orbit: BTreeSet<FinSet> = orbit_of_origin(t)?.into_iter().collect();
        for j in 0..=t.n as u64 {
            let s = orbit_point(j);
            if !orbit.contains(&s) {
                return Ok(Some(format!("s_{j} = {s} not reached from s0")));
            }
        }
        Ok(None)
    }));
    out.push(run("tower-free-action", "involution-tower/g", &|| {
        for x in &points {
            for alpha in 1..(1usize << t.n) {
                if dyadic_action(t, &alpha_elem(alpha), x)? == *x {
                    return Ok(Some(format!("alpha={alpha} fixes {x}")));
                }
            }
        }
        Ok(None)
    }));
    out.push(run("tower-swaps", "swap-involution", &|| {
        for (i, s) in t.swaps.iter().enumerate() {
            let p = i as u32;
            let (a_set, b_set) = (t.node(p + 1, 0), t.node(p + 1, 1usize << p));
            let b = s.apply(&FinSet::empty())?;
            if let Some(c) = super::swap::swap_counterexample(s, a_set, b_set, &FinSet::empty(), &b, window)? {
                return Ok(Some(format!("{}: {c}", s.label())));
            }
        }
        Ok(None)
    }));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::audit::Status;
    use crate::clopen::equal_on_window;

    fn set(v: &[u32]) -> FinSet {
        FinSet::new(v.iter().copied())
    }

    #[test]
    fn neighborhood_examples() {
        let d = default_neighborhoods(3).unwrap();
        assert!(equal_on_window(&d[0], &ClopenExpr::e(1).not(), 6).unwrap());
        let d2 = ClopenExpr::e(1).not().and(&ClopenExpr::e(2).not());
        assert!(equal_on_window(&d[1], &d2, 6).unwrap());
        assert!(!d[1].member(&set(&[2])).unwrap());
        for x in subsets(6) {
            assert!(!d[2].member(&x).unwrap() || d[1].member(&x).unwrap());
            assert!(!d[1].member(&x).unwrap() || d[0].member(&x).unwrap());
        }
        assert!(default_neighborhoods(0).is_err());
    }

    #[test]
    fn first_level() {
        let d = default_neighborhoods(1).unwrap();
        let t = build_tower(1, &d, 8).unwrap();
        assert!(equal_on_window(t.node(1, 0), &d[0], 6).unwrap());
        assert!(equal_on_window(t.node(1, 1), &d[0].not(), 6).unwrap());
        assert_eq!(t.h(1).apply(&FinSet::empty()).unwrap(), set(&[1]));
    }

    #[test]
    fn two_levels_reach_first_points() {
        let d = default_neighborhoods(2).unwrap();
        let t = build_tower(2, &d, 8).unwrap();
        let orbit = orbit_of_origin(&t).unwrap();
        for s in [FinSet::empty(), set(&[1]), set(&[2])] {
            assert!(orbit.contains(&s));
        }
    }

    #[test]
    fn three_levels_satisfy_all_properties() {
        let d = default_neighborhoods(3).unwrap();
        let t = build_tower(3, &d, 8).unwrap();
        for c in audit_tower(&t, 5) {
            assert_eq!(c.status, Status::Pass, "{}: {:?} {}", c.name, c.counterexample, c.detail);
        }
        for k in subsets(5) {
            for i in 1..=3 {
                for j in 1..=3 {
                    let a = t.h(i).apply(&t.h(j).apply(&k).unwrap()).unwrap();
                    let b = t.h(j).apply(&t.h(i).apply(&k).unwrap()).unwrap();
                    assert_eq!(a, b);
                }
            }
        }
    }

    #[test]
    fn action_rejects_large_support() {
        let d = default_neighborhoods(1).unwrap();
        let t = build_tower(1, &d, 8).unwrap();
        assert!(dyadic_action(&t, &DyadicElem::generator(2), &FinSet::empty()).is_err());
        assert_eq!(dyadic_action(&t, &DyadicElem::zero(), &set(&[4])).unwrap(), set(&[4]));
    }

    #[test]
    fn invalid_neighborhoods_are_rejected() {
        let bad = vec![ClopenExpr::full()];
        assert!(matches!(build_tower(1, &bad, 8), Err(Error::Precondition(_))));
    }
}
