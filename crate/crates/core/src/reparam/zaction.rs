//! The `Z`-action `φ` induced by an involution tower: on
//! `E_j = K^j(1…1, 0)` it acts as `h_1 ⋯ h_j`, which adds one to the
//! address `α` read as a binary number with `α_1` least significant.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::piecewise::PiecewiseMap;
use super::tower::{alpha_elem, dyadic_action, orbit_of_origin, InvolutionTower};
use crate::audit::Check;
use crate::clopen::ClopenExpr;
use crate::error::{Error, Result};
use crate::finset::{enum_finset, subsets, FinSet};

pub struct ZActionMap {
    n: u32,
    h: Vec<PiecewiseMap>,
    /// `E_j` for `j = 1..=n`; `φ = h_1 ⋯ h_j` there.
    forward: Vec<ClopenExpr>,
    /// `F_j = φ[E_j]`; `φ⁻¹ = h_j ⋯ h_1` there.
    backward: Vec<ClopenExpr>,
}

pub fn build_zaction(t: &InvolutionTower) -> Result<ZActionMap> {
    if t.n() < 2 {
        return Err(Error::Precondition("the Z-action needs a tower of depth at least 2".into()));
    }
    let n = t.n();
    let forward = (1..=n).map(|j| t.node(j, (1usize << (j - 1)) - 1).clone()).collect();
    let backward = (1..=n).map(|j| t.node(j, 1usize << (j - 1)).clone()).collect();
    Ok(ZActionMap { n, h: t.involutions().to_vec(), forward, backward })
}

impl ZActionMap {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn forward_regions(&self) -> &[ClopenExpr] {
        &self.forward
    }

    pub fn backward_regions(&self) -> &[ClopenExpr] {
        &self.backward
    }

    fn word(&self, k: &FinSet, j: usize) -> Result<FinSet> {
        let mut x = k.clone();
        for h in &self.h[..j] {
            x = h.apply(&x)?;
        }
        Ok(x)
    }

    /// `φ(k)`, or `None` when `k` lies in the uncovered cell `K^n(1…1)`.
    pub fn forward(&self, k: &FinSet) -> Result<Option<FinSet>> {
        for (j, e) in self.forward.iter().enumerate() {
            if e.member(k)? {
                return self.word(k, j + 1).map(Some);
            }
        }
        Ok(None)
    }

    /// `φ⁻¹(k)`, or `None` at `s_0` and in the uncovered cell `K^n(0…0)`.
    pub fn backward(&self, k: &FinSet) -> Result<Option<FinSet>> {
        for (j, f) in self.backward.iter().enumerate() {
            if f.member(k)? {
                return self.word(k, j + 1).map(Some);
            }
        }
        Ok(None)
    }

    /// `s_0, φ(s_0), φ²(s_0), …` for `len` terms, stopping early when the
    /// orbit leaves the covered cells.
    pub fn orbit_segment(&self, len: usize) -> Result<Vec<FinSet>> {
        let mut out = Vec::with_capacity(len);
        let mut x = FinSet::empty();
        while out.len() < len {
            out.push(x.clone());
            match self.forward(&x)? {
                Some(y) => x = y,
                None => break,
            }
        }
        Ok(out)
    }
}

/// Window checks of the `Z`-action against the dyadic action of the tower.
pub fn audit_zaction(z: &ZActionMap, t: &InvolutionTower) -> Vec<Check> {
    let n = z.n;
    let run = |name: &str, anchor: &str, f: &dyn Fn() -> Result<Option<String>>| match f() {
        Ok(cex) => Check::from_counterexample(name, anchor, cex).at_depth(n),
        Err(e) => Check::errored(name, anchor, &e).at_depth(n),
    };
    let window: Vec<FinSet> = subsets(n).collect();
    let mut out = Vec::new();
    out.push(run("zaction-origin-roundtrip", "z-action/inverse", &|| {
        let s0 = FinSet::empty();
        let Some(y) = z.forward(&s0)? else {
            return Ok(Some("s0 is not covered".into()));
        };
        if !z.backward[0].member(&y)? {
            return Ok(Some(format!("phi(s0) = {y} not in F_1")));
        }
        if z.backward(&y)? != Some(s0) {
            return Ok(Some("phi^-1(phi(s0)) != s0".into()));
        }
        Ok(None)
    }));
    out.push(run("zaction-pieces-partition", "z-action/pieces", &|| {
        let last = t.node(n, (1usize << n) - 1);
        for x in &window {
            let mut hits = usize::from(last.member(x)?);
            for e in &z.forward {
                hits += usize::from(e.member(x)?);
            }
            if hits != 1 {
                return Ok(Some(format!("{x} lies in {hits} forward cells")));
            }
        }
        Ok(None)
    }));
    out.push(run("zaction-injective", "z-action/injective", &|| {
        let mut seen = BTreeSet::new();
        for x in &window {
            if let Some(y) = z.forward(x)? {
                if y.is_empty() {
                    return Ok(Some(format!("phi({x}) = s0")));
                }
                if !seen.insert(y.clone()) {
                    return Ok(Some(format!("collision at {y}")));
                }
                if z.backward(&y)?.as_ref() != Some(x) {
                    return Ok(Some(format!("phi^-1(phi({x})) != {x}")));
                }
            }
        }
        Ok(None)
    }));
    out.push(run("zaction-odometer-orbit", "z-action/odometer", &|| {
        let len = 1usize << n;
        let seg = z.orbit_segment(len)?;
        if seg.len() < len {
            return Ok(Some(format!("orbit of s0 leaves the covered cells after {} steps", seg.len())));
        }
        for (j, x) in seg.iter().enumerate() {
            let expected = dyadic_action(t, &alpha_elem(j), &FinSet::empty())?;
            if *x != expected {
                return Ok(Some(format!("phi^{j}(s0) = {x}, dyadic action of {} gives {expected}", enum_finset(j as u64))));
            }
        }
        Ok(None)
    }));
    out.push(run("zaction-orbit-matches-dyadic", "dyadic-action/orbit", &|| {
        let seg: BTreeSet<FinSet> = z.orbit_segment(1usize << n)?.into_iter().collect();
        let dyadic: BTreeSet<FinSet> = orbit_of_origin(t)?.into_iter().collect();
        if seg != dyadic {
            return Ok(Some("phi-orbit and dyadic orbit of s0 differ".into()));
        }
        Ok(None)
    }));
    out.push(run("dyadic-orbit-is-window", "dyadic-action/orbit", &|| {
        let orbit: BTreeSet<FinSet> = orbit_of_origin(t)?.into_iter().collect();
        let win: BTreeSet<FinSet> = window.iter().cloned().collect();
        if orbit != win {
            let missing: Vec<String> = win.difference(&orbit).map(|k| format!("{k}")).collect();
            return Ok(Some(format!("window points outside the orbit: {}", missing.join(" "))));
        }
        Ok(None)
    }));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::audit::Status;
    use crate::reparam::tower::{build_tower, default_neighborhoods};

    #[test]
    fn zaction_on_three_levels() {
        let t = build_tower(3, &default_neighborhoods(3).unwrap(), 8).unwrap();
        let z = build_zaction(&t).unwrap();
        for c in audit_zaction(&z, &t) {
            assert_eq!(c.status, Status::Pass, "{}: {:?} {}", c.name, c.counterexample, c.detail);
        }
        let seg = z.orbit_segment(4).unwrap();
        assert_eq!(seg[0], FinSet::empty());
        assert_eq!(seg[1], FinSet::singleton(1));
    }

    #[test]
    fn zaction_needs_two_levels() {
        let t = build_tower(1, &default_neighborhoods(1).unwrap(), 8).unwrap();
        assert!(build_zaction(&t).is_err());
    }
}
