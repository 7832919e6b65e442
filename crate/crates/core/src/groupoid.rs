//! The convolution algebra of the orbit relation on a finite window.
//!
//! Window points are the subsets of `{1..n}` in enumeration order, so point
//! `x` and group element `g` are both `n`-bit indices and `g·x = x ^ g`.
//! Kernels are dense `2ⁿ × 2ⁿ` matrices with `f(x, y)` at row `x`, column `y`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::audit::Check;
use crate::error::{Error, Result};
use crate::finset::{enum_finset, DyadicElem, FinSet};
use crate::linalg::{Matrix, SpanRank};
use crate::scalar::{Field, GaussRational, Scalar};

/// Largest supported window depth.
pub const MAX_WINDOW: u32 = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrbitWindow {
    n: u32,
}

impl OrbitWindow {
    pub fn new(n: u32) -> Result<Self> {
        if !(1..=MAX_WINDOW).contains(&n) {
            return Err(Error::DepthOutOfRange { depth: n, min: 1, max: MAX_WINDOW });
        }
        Ok(OrbitWindow { n })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Number of points, which is also the order of the window group.
    pub fn size(&self) -> usize {
        1 << self.n
    }

    pub fn point(&self, x: usize) -> FinSet {
        enum_finset(x as u64)
    }

    pub fn elem(&self, g: usize) -> DyadicElem {
        DyadicElem::from_support(enum_finset(g as u64))
    }

    /// Group index of `g`, if its support fits the window.
    pub fn elem_index(&self, g: &DyadicElem) -> Result<usize> {
        match g.support().max_elem() {
            Some(m) if m > self.n => Err(Error::Precondition(format!("{g} exceeds window {}", self.n))),
            _ => Ok(g.support().enum_index().expect("support fits the window") as usize),
        }
    }

    /// `g·x` on indices.
    pub fn act(&self, g: usize, x: usize) -> usize {
        x ^ g
    }

    fn check<S: Scalar>(&self, f: &Matrix<S>) -> Result<()> {
        if f.rows() != self.size() || f.cols() != self.size() {
            return Err(Error::WindowMismatch(self.size() as u32, f.rows() as u32));
        }
        Ok(())
    }
}

pub type KernelMatrix<S> = Matrix<S>;

/// A function on the window, embedded as a diagonal kernel.
#[derive(Clone, Debug, PartialEq)]
pub struct DiagonalElem<S>(pub Vec<S>);

impl<S: Scalar> DiagonalElem<S> {
    pub fn values(&self) -> &[S] {
        &self.0
    }

    pub fn to_matrix(&self) -> Matrix<S> {
        Matrix::from_diag(&self.0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Scalar::is_zero)
    }
}

/// `(f∘h)(x, z) = Σ_y f(x, y) h(y, z)`, evaluated by the sum formula.
pub fn conv<S: Scalar>(f: &Matrix<S>, h: &Matrix<S>) -> Result<Matrix<S>> {
    if f.cols() != h.rows() {
        return Err(Error::WindowMismatch(f.cols() as u32, h.rows() as u32));
    }
    Ok(Matrix::from_fn(f.rows(), h.cols(), |x, z| {
        (0..f.cols()).fold(S::zero(), |acc, y| acc + f.get(x, y).clone() * h.get(y, z).clone())
    }))
}

/// `f*(x, y) = conj f(y, x)`.
pub fn adjoint<S: Scalar>(f: &Matrix<S>) -> Matrix<S> {
    f.adjoint()
}

/// `x ↦ f(x, x)`.
pub fn diag<S: Scalar>(f: &Matrix<S>) -> DiagonalElem<S> {
    DiagonalElem(f.diagonal())
}

/// `D(f∘h)(x) = Σ_y f(x, y) h(y, x)`, without forming the rest of the product.
pub fn diag_of_conv<S: Scalar>(f: &Matrix<S>, h: &Matrix<S>) -> Result<DiagonalElem<S>> {
    if f.cols() != h.rows() || f.rows() != h.cols() {
        return Err(Error::WindowMismatch(f.cols() as u32, h.rows() as u32));
    }
    Ok(DiagonalElem(
        (0..f.rows())
            .map(|x| (0..f.cols()).fold(S::zero(), |acc, y| acc + f.get(x, y).clone() * h.get(y, x).clone()))
            .collect(),
    ))
}

/// `u_g`: the indicator of `{(x, y) : y = g·x}`.
pub fn u_of<S: Scalar>(w: &OrbitWindow, g: &DyadicElem) -> Result<Matrix<S>> {
    Ok(u_index(w, w.elem_index(g)?))
}

pub fn u_index<S: Scalar>(w: &OrbitWindow, g: usize) -> Matrix<S> {
    Matrix::from_partial_map(w.size(), |x| Some(w.act(g, x)))
}

/// `f_F = Σ_{g∈F} D(f∘u_g)∘u_{g⁻¹}`: `f` restricted to `⋃_{g∈F} Δ_g`.
pub fn truncate<S: Scalar>(w: &OrbitWindow, f: &Matrix<S>, set: &[usize]) -> Result<Matrix<S>> {
    let mut out = Matrix::zeros(w.size(), w.size());
    for &g in set {
        let ug = u_index(w, g);
        out = out.add(&diag_of_conv(f, &ug)?.to_matrix().mul(&ug));
    }
    Ok(out)
}

/// `r_n = D((z - z_n)(z - z_n)*)` along a strictly increasing chain of
/// finite subsets of the window group.
pub fn truncation_approx<S: Scalar>(
    w: &OrbitWindow,
    z: &Matrix<S>,
    chain: &[Vec<usize>],
) -> Result<Vec<DiagonalElem<S>>> {
    w.check(z)?;
    for pair in chain.windows(2) {
        let strictly = pair[1].len() > pair[0].len() && pair[0].iter().all(|g| pair[1].contains(g));
        if !strictly {
            return Err(Error::Precondition("chain is not strictly increasing".into()));
        }
    }
    let mut out = Vec::with_capacity(chain.len());
    for set in chain {
        if set.iter().any(|&g| g >= w.size()) {
            return Err(Error::Precondition("chain element outside the window group".into()));
        }
        let rest = z.sub(&truncate(w, z, set)?);
        out.push(diag_of_conv(&rest, &adjoint(&rest))?);
    }
    Ok(out)
}

/// Whether `D(z∘u_g) = 0` for every `g` in the window group.
pub fn vanishing_test<S: Scalar>(w: &OrbitWindow, z: &Matrix<S>) -> Result<bool> {
    w.check(z)?;
    for g in 0..w.size() {
        if !diag_of_conv(z, &u_index(w, g))?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `u_g* ∘ f ∘ u_g`.
pub fn conjugation<S: Scalar>(w: &OrbitWindow, g: usize, f: &Matrix<S>) -> Result<Matrix<S>> {
    let u = u_index(w, g);
    conv(&adjoint(&u), &conv(f, &u)?)
}

fn first_mismatch<S: Scalar>(a: &Matrix<S>, b: &Matrix<S>, tol: f64) -> Option<String> {
    for x in 0..a.rows() {
        for y in 0..a.cols() {
            if !a.get(x, y).near(b.get(x, y), tol) {
                return Some(format!("entry ({x},{y}): {:?} vs {:?}", a.get(x, y), b.get(x, y)));
            }
        }
    }
    None
}

fn record(name: &str, anchor: &str, w: &OrbitWindow, r: Result<Option<String>>) -> Check {
    match r {
        Ok(cex) => Check::from_counterexample(name, anchor, cex).at_depth(w.n),
        Err(e) => Check::errored(name, anchor, &e).at_depth(w.n),
    }
}

/// Unit, associativity and adjoint laws of the sum-formula product, and
/// agreement with the matrix-product oracle, on consecutive sample triples.
pub fn ring_law_checks<S: Scalar>(w: &OrbitWindow, samples: &[Matrix<S>], tol: f64) -> Vec<Check> {
    let unit = u_index::<S>(w, 0);
    let triples = || (0..samples.len()).map(|i| (&samples[i], &samples[(i + 1) % samples.len()], &samples[(i + 2) % samples.len()]));
    let mut out = Vec::new();
    out.push(record("conv-matches-matrix-product", "convolution/product", w, (|| {
        for (f, h, _) in triples() {
            if let Some(c) = first_mismatch(&conv(f, h)?, &f.mul(h), tol) {
                return Ok(Some(c));
            }
        }
        Ok(None)
    })()));
    out.push(record("conv-unit", "convolution/unit", w, (|| {
        for f in samples {
            if let Some(c) = first_mismatch(&conv(&unit, f)?, f, tol).or(first_mismatch(&conv(f, &unit)?, f, tol)) {
                return Ok(Some(c));
            }
        }
        Ok(None)
    })()));
    out.push(record("conv-associative", "convolution/associative", w, (|| {
        for (f, h, k) in triples() {
            let left = conv(&conv(f, h)?, k)?;
            let right = conv(f, &conv(h, k)?)?;
            if let Some(c) = first_mismatch(&left, &right, tol) {
                return Ok(Some(c));
            }
        }
        Ok(None)
    })()));
    out.push(record("adjoint-antimultiplicative", "convolution/adjoint", w, (|| {
        for (f, h, _) in triples() {
            let left = adjoint(&conv(f, h)?);
            let right = conv(&adjoint(h), &adjoint(f))?;
            if let Some(c) = first_mismatch(&left, &right, tol) {
                return Ok(Some(c));
            }
            if let Some(c) = first_mismatch(&adjoint(&adjoint(f)), f, tol) {
                return Ok(Some(c));
            }
        }
        Ok(None)
    })()));
    out.push(record("unitary-representation", "convolution/unitary-representation", w, (|| {
        for g in 0..w.size() {
            let ug = u_index::<S>(w, g);
            if let Some(c) = first_mismatch(&conv(&ug, &adjoint(&ug))?, &unit, tol) {
                return Ok(Some(format!("g={g}: {c}")));
            }
            for h in 0..w.size() {
                if let Some(c) = first_mismatch(&conv(&ug, &u_index(w, h))?, &u_index(w, g ^ h), tol) {
                    return Ok(Some(format!("g={g}, h={h}: {c}")));
                }
            }
        }
        Ok(None)
    })()));
    out
}

/// Identity (#) and positivity of the diagonal expectation, then
/// identities (i)–(iv) for every sample, every `g` and the given finite sets.
pub fn identity_suite<S: Scalar>(
    w: &OrbitWindow,
    samples: &[Matrix<S>],
    finite_sets: &[Vec<usize>],
    tol: f64,
) -> Vec<Check> {
    let size = w.size();
    let mut out = Vec::new();
    out.push(record("diagonal-positivity", "diagonal-expectation/positive", w, (|| {
        for f in samples {
            let d = diag(&conv(f, &adjoint(f))?);
            for x in 0..size {
                let direct = (0..size).fold(S::zero(), |acc, y| acc + f.get(x, y).norm_sqr());
                let v = &d.values()[x];
                if !v.near(&direct, tol) {
                    return Ok(Some(format!("row {x}: {v:?} vs direct sum {direct:?}")));
                }
                let row_zero = (0..size).all(|y| f.get(x, y).is_zero());
                if !v.is_nonneg_real(tol) || (S::EXACT && v.is_zero() != row_zero) {
                    return Ok(Some(format!("row {x}: {v:?} not positive or faithful")));
                }
            }
        }
        Ok(None)
    })()));
    out.push(record("identity-i", "convolution/identity-i", w, (|| {
        for f in samples {
            for g in 0..size {
                let fu = conv(f, &u_index(w, g))?;
                let expected = Matrix::from_fn(size, size, |x, y| f.get(x, w.act(g, y)).clone());
                if let Some(c) = first_mismatch(&fu, &expected, tol) {
                    return Ok(Some(format!("g={g}: {c}")));
                }
            }
        }
        Ok(None)
    })()));
    out.push(record("identity-ii", "convolution/identity-ii", w, (|| {
        for f in samples {
            for g in 0..size {
                let d = diag(&conv(f, &u_index(w, g))?).to_matrix();
                let lhs = conv(&d, &u_index(w, g))?;
                let expected =
                    Matrix::from_fn(size, size, |x, y| if y == w.act(g, x) { f.get(x, y).clone() } else { S::zero() });
                if let Some(c) = first_mismatch(&lhs, &expected, tol) {
                    return Ok(Some(format!("g={g}: {c}")));
                }
            }
        }
        Ok(None)
    })()));
    out.push(record("identity-iii", "convolution/identity-iii", w, (|| {
        for f in samples {
            let lhs = diag(&conv(f, &adjoint(f))?);
            let parts = group_diagonals(w, f)?;
            for x in 0..size {
                let rhs = parts.iter().fold(S::zero(), |acc, d| acc + d.values()[x].norm_sqr());
                if !lhs.values()[x].near(&rhs, tol) {
                    return Ok(Some(format!("x={x}: {:?} vs {rhs:?}", lhs.values()[x])));
                }
            }
        }
        Ok(None)
    })()));
    out.push(record("identity-iv", "convolution/identity-iv", w, (|| {
        for f in samples {
            let parts = group_diagonals(w, f)?;
            for set in finite_sets {
                let rest = f.sub(&truncate(w, f, set)?);
                let lhs = diag(&conv(&rest, &adjoint(&rest))?);
                for x in 0..size {
                    let rhs = (0..size)
                        .filter(|g| !set.contains(g))
                        .fold(S::zero(), |acc, g| acc + parts[g].values()[x].norm_sqr());
                    if !lhs.values()[x].near(&rhs, tol) {
                        return Ok(Some(format!("F={set:?}, x={x}: {:?} vs {rhs:?}", lhs.values()[x])));
                    }
                }
            }
        }
        Ok(None)
    })()));
    out
}

/// `D(f∘u_g)` for every `g`, indexed by `g`.
fn group_diagonals<S: Scalar>(w: &OrbitWindow, f: &Matrix<S>) -> Result<Vec<DiagonalElem<S>>> {
    (0..w.size()).map(|g| Ok(diag(&conv(f, &u_index(w, g))?))).collect()
}

/// Monotone truncation residuals with terminal zero, exact reconstruction,
/// the vanishing criterion and the conjugation relabeling.
pub fn approximation_suite<S: Scalar>(
    w: &OrbitWindow,
    samples: &[Matrix<S>],
    chains: &[Vec<Vec<usize>>],
    tol: f64,
) -> Vec<Check> {
    let size = w.size();
    let mut out = Vec::new();
    out.push(record("truncation-monotone", "truncation/monotone", w, (|| {
        for (i, z) in samples.iter().enumerate() {
            let chain = &chains[i % chains.len()];
            let r = truncation_approx(w, z, chain)?;
            for (n, pair) in r.windows(2).enumerate() {
                for x in 0..size {
                    if !pair[1].values()[x].real_le(&pair[0].values()[x], tol) {
                        return Ok(Some(format!("sample {i}, step {n}, x={x}: residual increased")));
                    }
                }
            }
            let full = chain.last().is_some_and(|s| s.len() == size);
            if full && !r.last().unwrap().values().iter().all(|v| v.near(&S::zero(), tol)) {
                return Ok(Some(format!("sample {i}: residual at the full group is not zero")));
            }
        }
        Ok(None)
    })()));
    out.push(record("reconstruction", "truncation/reconstruction", w, (|| {
        let all: Vec<usize> = (0..size).collect();
        for z in samples {
            if let Some(c) = first_mismatch(&truncate(w, z, &all)?, z, tol) {
                return Ok(Some(c));
            }
        }
        Ok(None)
    })()));
    out.push(record("vanishing-criterion", "truncation/vanishing", w, (|| {
        let zero = Matrix::<S>::zeros(size, size);
        if !vanishing_test(w, &zero)? {
            return Ok(Some("zero matrix fails the vanishing test".into()));
        }
        for (i, z) in samples.iter().enumerate() {
            if vanishing_test(w, z)? != z.is_zero() {
                return Ok(Some(format!("sample {i}: vanishing test disagrees with z = 0")));
            }
        }
        Ok(None)
    })()));
    out.push(record("conjugation-relabels", "conjugation/relabel", w, (|| {
        for f in samples {
            for g in 0..size {
                let c = conjugation(w, g, f)?;
                let expected = Matrix::from_fn(size, size, |x, y| f.get(w.act(g, x), w.act(g, y)).clone());
                if let Some(m) = first_mismatch(&c, &expected, tol) {
                    return Ok(Some(format!("g={g}: {m}")));
                }
                let d = diag(f).to_matrix();
                if !conjugation(w, g, &d)?.is_diagonal(tol) {
                    return Ok(Some(format!("g={g}: conjugate of a diagonal is not diagonal")));
                }
            }
        }
        Ok(None)
    })()));
    out
}

/// Dimension of the commutant of the diagonal algebra in the full matrix
/// algebra, from the rank of the commutation constraints `P_x X = X P_x`.
pub fn commutant_dimension(w: &OrbitWindow) -> usize {
    let size = w.size();
    let mut span = SpanRank::<GaussRational>::new(0.0);
    for x in 0..size {
        for i in 0..size {
            for j in 0..size {
                let coeff = i64::from(i == x) - i64::from(j == x);
                if coeff != 0 {
                    span.insert([(i * size + j, GaussRational::from_i64(coeff))]);
                }
            }
        }
    }
    size * size - span.rank()
}

/// The diagonal is its own commutant, and every non-zero group element acts
/// without fixed points.
pub fn masa_check(w: &OrbitWindow) -> Vec<Check> {
    let dim = commutant_dimension(w);
    let cex = (dim != w.size()).then(|| format!("commutant dimension {dim}, expected {}", w.size()));
    let mut out = vec![Check::from_counterexample("commutant-is-diagonal", "diagonal/maximal-abelian", cex)
        .at_depth(w.n)
        .with_detail(&format!("dimension {dim}"))];
    let mut fixed = None;
    'scan: for g in 1..w.size() {
        let elem = w.elem(g);
        for x in 0..w.size() {
            let k = w.point(x);
            if elem.act(&k) == k {
                fixed = Some(format!("{elem} fixes {k}"));
                break 'scan;
            }
        }
    }
    out.push(Check::from_counterexample("fixed-point-free", "diagonal/free-action", fixed).at_depth(w.n));
    out
}

/// `w = d·v` with `v = Σ_g p_g u_g` and `d` diagonal unimodular.
#[derive(Clone, Debug)]
pub struct Decomposition<S> {
    pub v: Matrix<S>,
    pub d: DiagonalElem<S>,
    /// `support[g][x]` is `p_g(x)`.
    pub support: Vec<Vec<bool>>,
    /// `‖w - d·v‖²` in the Frobenius norm.
    pub residual_sqr: f64,
}

/// Splits a unitary normalizing the diagonal into a diagonal unitary times
/// a piecewise translation.
///
/// `p_g` is the support of `D(w∘u_g)`, that is of `x ↦ w(x, g·x)`
/// (entries with `|·|² > tol²`).
/// The `p_g` partition the window, `v = Σ_g p_g u_g` is the permutation
/// matrix `w` induces, and `d = w v*`. The translation is multiplied on the
/// left of `u_g` so that `d` is diagonal for every permutation, not only
/// involutive ones.
pub fn normalizer_decompose<S: Scalar>(w: &Matrix<S>, win: &OrbitWindow, tol: f64) -> Result<Decomposition<S>> {
    win.check(w)?;
    let size = win.size();
    let id = Matrix::<S>::identity(size);
    let defect = w.adjoint().mul(w).sub(&id).frobenius_sqr();
    if defect > tol * tol {
        return Err(Error::NotUnitary(defect));
    }
    for x in 0..size {
        let mut px = Matrix::<S>::zeros(size, size);
        px.set(x, x, S::one());
        let conj = w.mul(&px).mul(&w.adjoint());
        if !conj.is_diagonal(tol) {
            let off = conj.sub(&Matrix::from_diag(&conj.diagonal())).frobenius_sqr();
            return Err(Error::NotNormalizing(off));
        }
    }
    let support: Vec<Vec<bool>> = (0..size)
        .map(|g| Ok(diag_of_conv(w, &u_index(win, g))?.values().iter().map(|z| z.norm_sqr_f64() > tol * tol).collect()))
        .collect::<Result<_>>()?;
    if (0..size).any(|x| support.iter().filter(|p| p[x]).count() != 1) {
        return Err(Error::ProjectionsIncomplete);
    }
    let mut v = Matrix::<S>::zeros(size, size);
    for (g, p) in support.iter().enumerate() {
        let pg = Matrix::from_diag(&p.iter().map(|&b| if b { S::one() } else { S::zero() }).collect::<Vec<_>>());
        v = v.add(&pg.mul(&u_index(win, g)));
    }
    let dm = w.mul(&v.adjoint());
    if !dm.is_diagonal(tol) {
        let off = dm.sub(&Matrix::from_diag(&dm.diagonal())).frobenius_sqr();
        return Err(Error::NotNormalizing(off));
    }
    let d = DiagonalElem(dm.diagonal());
    if d.values().iter().any(|z| !z.norm_sqr().near(&S::one(), tol)) {
        return Err(Error::NotUnitary(defect));
    }
    let residual_sqr = w.sub(&d.to_matrix().mul(&v)).frobenius_sqr();
    Ok(Decomposition { v, d, support, residual_sqr })
}

/// `w = diag(phases) · P_π` for a window permutation `π`, with `P_π(x, π(x)) = 1`.
pub fn phase_permutation<S: Scalar>(phases: &[S], perm: &[usize]) -> Matrix<S> {
    Matrix::from_diag(phases).mul(&Matrix::from_partial_map(perm.len(), |x| Some(perm[x])))
}

/// Span rank of a family of window matrices, exactly.
pub fn matrix_span_rank<S: Field>(mats: &[Matrix<S>], tol: f64) -> usize {
    let mut span = SpanRank::new(tol);
    for m in mats {
        span.insert(m.entries().iter().enumerate().filter(|(_, s)| !s.is_zero()).map(|(i, s)| (i, s.clone())));
    }
    span.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::audit::Status;
    use crate::scalar::{gauss, Float};
    use num_complex::Complex;

    type Q = GaussRational;

    fn q(n: i128, d: i128) -> Q {
        gauss((n, d), (0, 1))
    }

    /// Small deterministic pseudo-random rational matrices.
    fn samples(w: &OrbitWindow, count: usize) -> Vec<Matrix<Q>> {
        let mut state = 0x2545_f491_u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state % 11) as i128 - 5
        };
        (0..count)
            .map(|_| Matrix::from_fn(w.size(), w.size(), |_, _| gauss((next(), 1 + next().abs()), (next(), 1 + next().abs()))))
            .collect()
    }

    #[test]
    fn unit_and_representation() {
        let w = OrbitWindow::new(2).unwrap();
        let unit: Matrix<Q> = u_of(&w, &DyadicElem::zero()).unwrap();
        assert_eq!(unit, Matrix::identity(4));
        assert_eq!(adjoint(&unit), unit);
        assert_eq!(diag(&unit).values(), &[q(1, 1), q(1, 1), q(1, 1), q(1, 1)]);
        for g in 1..4 {
            let ug: Matrix<Q> = u_index(&w, g);
            assert_eq!(adjoint(&ug), ug);
            assert!(diag(&ug).is_zero());
        }
        let w1 = OrbitWindow::new(1).unwrap();
        let u1: Matrix<Q> = u_of(&w1, &DyadicElem::generator(1)).unwrap();
        assert_eq!(*u1.get(0, 1), q(1, 1));
        assert_eq!(*u1.get(1, 0), q(1, 1));
        assert!(u_of::<Q>(&w1, &DyadicElem::generator(2)).is_err());
    }

    #[test]
    fn laws_and_identities_hold_exactly() {
        for n in 1..=2 {
            let w = OrbitWindow::new(n).unwrap();
            let s = samples(&w, 6);
            let sets = vec![vec![0], vec![0, 1], (0..w.size()).collect()];
            let chains = vec![vec![vec![], vec![0], (0..w.size()).collect()]];
            let checks = ring_law_checks(&w, &s, 0.0)
                .into_iter()
                .chain(identity_suite(&w, &s, &sets, 0.0))
                .chain(approximation_suite(&w, &s, &chains, 0.0))
                .chain(masa_check(&w));
            for c in checks {
                assert_eq!(c.status, Status::Pass, "{}: {:?} {}", c.name, c.counterexample, c.detail);
            }
        }
    }

    #[test]
    fn truncation_on_two_points() {
        let w = OrbitWindow::new(1).unwrap();
        let z: Matrix<Q> = u_index(&w, 1);
        let r = truncation_approx(&w, &z, &[vec![], vec![0], vec![0, 1]]).unwrap();
        let ones = [q(1, 1), q(1, 1)];
        assert_eq!(r[0].values(), &ones[..]);
        assert_eq!(r[1].values(), &ones[..]);
        assert!(r[2].is_zero());
        let unit: Matrix<Q> = Matrix::identity(2);
        assert!(truncation_approx(&w, &unit, &[vec![0]]).unwrap()[0].is_zero());
        assert!(truncation_approx(&w, &unit, &[vec![0], vec![0]]).is_err());
    }

    #[test]
    fn vanishing_examples() {
        let w = OrbitWindow::new(2).unwrap();
        assert!(vanishing_test(&w, &Matrix::<Q>::zeros(4, 4)).unwrap());
        assert!(!vanishing_test(&w, &u_index::<Q>(&w, 3)).unwrap());
    }

    #[test]
    fn identity_examples() {
        let w = OrbitWindow::new(2).unwrap();
        let unit = Matrix::<Q>::identity(4);
        for g in 0..4 {
            assert_eq!(conv(&unit, &u_index(&w, g)).unwrap(), u_index(&w, g));
        }
        for h in 0..4 {
            for g in 0..4 {
                let d = diag(&conv(&u_index::<Q>(&w, h), &u_index(&w, g)).unwrap());
                let expected = if g == h { q(1, 1) } else { q(0, 1) };
                assert!(d.values().iter().all(|v| *v == expected));
            }
        }
    }

    #[test]
    fn diagonal_of_a_product() {
        let w = OrbitWindow::new(2).unwrap();
        let s = samples(&w, 4);
        for pair in s.windows(2) {
            assert_eq!(diag_of_conv(&pair[0], &pair[1]).unwrap(), diag(&conv(&pair[0], &pair[1]).unwrap()));
        }
    }

    #[test]
    fn commutant_dimensions() {
        assert_eq!(commutant_dimension(&OrbitWindow::new(1).unwrap()), 2);
        assert_eq!(commutant_dimension(&OrbitWindow::new(2).unwrap()), 4);
    }

    #[test]
    fn decomposition_of_a_two_point_unitary() {
        let w1 = OrbitWindow::new(1).unwrap();
        let i = Complex::new(0.0, 1.0);
        let zero = Complex::new(0.0, 0.0);
        let one = Complex::new(1.0, 0.0);
        let m = Matrix::from_fn(2, 2, |x, y| [[zero, i], [one, zero]][x][y]);
        let dec = normalizer_decompose::<Float>(&m, &w1, 1e-9).unwrap();
        assert_eq!(dec.support, vec![vec![false, false], vec![true, true]]);
        assert_eq!(dec.v, u_index(&w1, 1));
        assert_eq!(dec.d.values(), &[i, one]);
        assert!(dec.residual_sqr <= 1e-18);
    }

    #[test]
    fn decomposition_handles_non_involutive_permutations() {
        let w = OrbitWindow::new(2).unwrap();
        let phases = [q(1, 1), gauss((0, 1), (1, 1)), q(-1, 1), gauss((0, 1), (-1, 1))];
        let m = phase_permutation(&phases, &[1, 2, 3, 0]);
        let dec = normalizer_decompose(&m, &w, 0.0).unwrap();
        assert_eq!(dec.d.values(), &phases);
        assert_eq!(dec.residual_sqr, 0.0);
        let diagonal = Matrix::from_diag(&phases);
        let dec = normalizer_decompose(&diagonal, &w, 0.0).unwrap();
        assert_eq!(dec.v, Matrix::identity(4));
    }

    #[test]
    fn decomposition_rejects_bad_input() {
        let w = OrbitWindow::new(1).unwrap();
        let m = Matrix::from_fn(2, 2, |_, _| q(1, 2));
        assert!(matches!(normalizer_decompose(&m, &w, 0.0), Err(Error::NotUnitary(_))));
        // (1/√2)·Hadamard is unitary but does not normalize the diagonal.
        let s = core::f64::consts::FRAC_1_SQRT_2;
        let hf = Matrix::from_fn(2, 2, |x, y| Complex::new(if x == 1 && y == 1 { -s } else { s }, 0.0));
        assert!(matches!(normalizer_decompose::<Float>(&hf, &w, 1e-9), Err(Error::NotNormalizing(_))));
    }
}
