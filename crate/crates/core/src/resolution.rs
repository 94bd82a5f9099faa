//! Minimal projective resolutions and what is computed from them: radical
//! and top, projective covers, syzygies, Ext dimensions, injective
//! coresolutions by duality, and complexity.

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{indecomposable_projective, opposite, regular_module, MonomialAlgebra};
use crate::fieldmat::Matrix;
use crate::rep::{self, dual_over, hom_basis, is_isomorphic, kernel, IsoOptions, Morphism, Representation};

#[derive(Debug, Clone)]
pub struct RadicalTop {
    pub radical: Representation,
    pub radical_inclusion: Morphism,
    pub top: Representation,
    pub top_projection: Morphism,
    /// Per vertex, vectors of `M` whose images form a basis of the top.
    pub top_lifts: Vec<Matrix>,
}

/// `rad M` is the sum of the images of all arrow maps; `top M = M / rad M`.
pub fn radical_and_top(m: &Representation) -> RadicalTop {
    let alg = m.algebra();
    let field = m.field();
    let bases: Vec<Matrix> = (1..=alg.vertex_count())
        .map(|v| {
            let incoming: Vec<&Matrix> = alg
                .arrows()
                .iter()
                .enumerate()
                .filter(|(_, a)| a.target == v)
                .map(|(ai, _)| m.arrow_map(ai))
                .collect();
            Matrix::hstack(field, m.dim_at(v), &incoming).column_space()
        })
        .collect();
    let (radical, radical_inclusion) = rep::subrepresentation(m, bases.clone());
    let (top, top_projection, top_lifts) = rep::quotient(m, &bases);
    RadicalTop {
        radical,
        radical_inclusion,
        top,
        top_projection,
        top_lifts,
    }
}

/// `P = ⊕ P_v` with one summand per basis vector of `top M`, and the
/// surjection `P ↠ M` sending each `e_v` to a lift of that basis vector.
#[derive(Debug, Clone)]
pub struct ProjectiveCover {
    /// Vertex label of each indecomposable summand, in block order.
    pub vertices: Vec<usize>,
    pub projective: Representation,
    pub cover: Morphism,
}

pub fn projective_cover(m: &Representation) -> ProjectiveCover {
    let alg = m.algebra().clone();
    let field = m.field();
    let rt = radical_and_top(m);
    let mut vertices = Vec::new();
    let mut generators: Vec<(usize, Vec<u32>)> = Vec::new();
    for v in 1..=alg.vertex_count() {
        for x in rt.top_lifts[v - 1].columns() {
            vertices.push(v);
            generators.push((v, x));
        }
    }
    if generators.is_empty() {
        let zero = Representation::zero(&alg);
        return ProjectiveCover {
            vertices,
            cover: Morphism::zero(&zero, m),
            projective: zero,
        };
    }
    let summands: Vec<Representation> = vertices.iter().map(|&v| indecomposable_projective(&alg, v)).collect();
    let projective = rep::direct_sum(&summands).expect("same algebra").sum;
    let maps = (1..=alg.vertex_count())
        .map(|w| {
            let columns: Vec<Vec<u32>> = generators
                .iter()
                .flat_map(|(v, x)| {
                    alg.paths_between(*v, w)
                        .iter()
                        .map(|&pi| m.path_action(&alg.path_basis()[pi], x))
                        .collect::<Vec<_>>()
                })
                .collect();
            Matrix::from_columns(field, m.dim_at(w), &columns)
        })
        .collect();
    let cover = Morphism::new(projective.clone(), m.clone(), maps).expect("path action commutes with arrows");
    ProjectiveCover {
        vertices,
        projective,
        cover,
    }
}

/// The first syzygy: the kernel of the projective cover.
pub fn syzygy(m: &Representation) -> Representation {
    kernel(&projective_cover(m).cover).0
}

/// A minimal projective resolution computed up to some number of terms and
/// extensible on demand.
#[derive(Debug, Clone)]
pub struct Resolution {
    module: Representation,
    covers: Vec<ProjectiveCover>,
    /// `inclusions[k]: Ω^{k+1} ↪ P_k`
    inclusions: Vec<Morphism>,
    /// `syzygies[k] = Ω^k M`, one more than the computed terms.
    syzygies: Vec<Representation>,
    projective_dimension: Option<usize>,
}

impl Resolution {
    pub fn new(module: &Representation) -> Self {
        let projective_dimension = module.is_zero().then_some(0);
        Resolution {
            module: module.clone(),
            covers: Vec::new(),
            inclusions: Vec::new(),
            syzygies: vec![module.clone()],
            projective_dimension,
        }
    }

    pub fn module(&self) -> &Representation {
        &self.module
    }

    pub fn algebra(&self) -> &Arc<MonomialAlgebra> {
        self.module.algebra()
    }

    /// Number of computed terms (or all of them, when the resolution is finite).
    pub fn horizon(&self) -> usize {
        self.covers.len()
    }

    /// Set once some syzygy vanished: the index of the last nonzero term,
    /// or 0 for the zero module.
    pub fn projective_dimension(&self) -> Option<usize> {
        self.projective_dimension
    }

    pub fn is_finite(&self) -> bool {
        self.projective_dimension.is_some()
    }

    /// Computes terms `P_0, …, P_{terms-1}` and syzygies up to `Ω^terms`.
    pub fn extend_to(&mut self, terms: usize) {
        while self.covers.len() < terms && !self.is_finite() {
            let last = self.syzygies.last().expect("Ω^0 always present");
            let cover = projective_cover(last);
            let (next, incl) = kernel(&cover.cover);
            self.covers.push(cover);
            self.inclusions.push(incl);
            let done = next.is_zero();
            self.syzygies.push(next);
            if done {
                self.projective_dimension = Some(self.covers.len() - 1);
            }
        }
    }

    /// `P_k`, or `None` when it is zero.
    pub fn term(&mut self, k: usize) -> Option<&ProjectiveCover> {
        self.extend_to(k + 1);
        self.covers.get(k).filter(|c| !c.vertices.is_empty())
    }

    pub fn term_vertices(&mut self, k: usize) -> Vec<usize> {
        self.term(k).map(|c| c.vertices.clone()).unwrap_or_default()
    }

    pub fn term_projective(&mut self, k: usize) -> Representation {
        match self.term(k) {
            Some(c) => c.projective.clone(),
            None => Representation::zero(self.module.algebra()),
        }
    }

    /// `Ω^k M`.
    pub fn syzygy(&mut self, k: usize) -> Representation {
        self.extend_to(k);
        self.syzygies
            .get(k)
            .cloned()
            .unwrap_or_else(|| Representation::zero(self.module.algebra()))
    }

    /// `P_k ↠ Ω^k M`.
    pub fn cover(&mut self, k: usize) -> Morphism {
        let omega = self.syzygy(k);
        match self.term(k) {
            Some(c) => c.cover.clone(),
            None => Morphism::zero(&Representation::zero(self.module.algebra()), &omega),
        }
    }

    /// `Ω^{k+1} M ↪ P_k`.
    pub fn syzygy_inclusion(&mut self, k: usize) -> Morphism {
        self.extend_to(k + 1);
        match self.inclusions.get(k) {
            Some(i) => i.clone(),
            None => {
                let z = Representation::zero(self.module.algebra());
                Morphism::zero(&z, &z)
            }
        }
    }

    /// `d_k: P_k -> P_{k-1}` for `k ≥ 1`; `d_0` is the augmentation `P_0 ↠ M`.
    pub fn boundary(&mut self, k: usize) -> Morphism {
        if k == 0 {
            return self.cover(0);
        }
        let cover = self.cover(k);
        let incl = self.syzygy_inclusion(k - 1);
        if cover.source().is_zero() || incl.target().is_zero() {
            let src = self.term_projective(k);
            let tgt = self.term_projective(k - 1);
            return Morphism::zero(&src, &tgt);
        }
        incl.compose(&cover)
    }

    /// Total dimension of each computed term.
    pub fn term_dims(&mut self, terms: usize) -> Vec<usize> {
        self.extend_to(terms);
        (0..terms)
            .map(|k| self.covers.get(k).map_or(0, |c| c.projective.total_dim()))
            .collect()
    }
}

pub fn min_resolution(m: &Representation, horizon: usize) -> Resolution {
    assert!(horizon >= 1, "resolution horizon must be positive");
    let mut r = Resolution::new(m);
    r.extend_to(horizon);
    r
}

/// Default resolution horizon: three times the algebra dimension.
pub fn default_resolution_horizon(alg: &MonomialAlgebra) -> usize {
    3 * alg.dimension()
}

/// Default horizon for Ext-vanishing checks: twice the algebra dimension.
pub fn default_ext_horizon(alg: &MonomialAlgebra) -> usize {
    2 * alg.dimension()
}

/// Rank of `Hom(P_k, N) -> Hom(P_{k+1}, N)`, `φ ↦ φ ∘ d_{k+1}`.
fn coboundary_rank(res: &mut Resolution, n: &Representation, k: usize, hom_k: &rep::HomSpace) -> usize {
    if hom_k.dim() == 0 {
        return 0;
    }
    let d = res.boundary(k + 1);
    if d.source().is_zero() {
        return 0;
    }
    let images: Vec<Vec<u32>> = hom_k.basis.iter().map(|phi| phi.compose(&d).flatten()).collect();
    if images.first().is_none_or(|v| v.is_empty()) {
        return 0;
    }
    Matrix::from_columns(n.field(), images[0].len(), &images).rank()
}

/// `dim Ext^i(M, N)` for each `i` in `degrees`, as the cohomology of
/// `Hom(P_•, N)` over the given resolution of `M`.
pub fn ext_dims(res: &mut Resolution, n: &Representation, degrees: std::ops::RangeInclusive<usize>) -> Vec<usize> {
    let (lo, hi) = (*degrees.start(), *degrees.end());
    if hi < lo {
        return Vec::new();
    }
    res.extend_to(hi + 2);
    // Coboundary ranks from degree `first` on; the one into degree 0 is zero.
    let first = lo.saturating_sub(1);
    let mut ranks = Vec::with_capacity(hi - first + 1);
    let mut homs = Vec::with_capacity(hi - first + 1);
    for k in first..=hi {
        let pk = res.term_projective(k);
        let hom = hom_basis(&pk, n);
        ranks.push(coboundary_rank(res, n, k, &hom));
        homs.push(hom.dim());
    }
    (lo..=hi)
        .map(|i| {
            let j = i - first;
            let incoming = if i == 0 { 0 } else { ranks[j - 1] };
            homs[j] - ranks[j] - incoming
        })
        .collect()
}

pub fn ext_dim(m: &Representation, n: &Representation, i: usize) -> usize {
    let mut res = Resolution::new(m);
    ext_dims(&mut res, n, i..=i)[0]
}

/// First degree `1 ≤ j ≤ horizon` with `Ext^j(M, A) ≠ 0`, if any.
pub fn first_nonvanishing_ext_against_regular(res: &mut Resolution, horizon: usize) -> Option<usize> {
    let regular = regular_module(res.algebra());
    res.extend_to(horizon + 2);
    if let Some(pd) = res.projective_dimension() {
        // Ext vanishes above the projective dimension.
        let top = pd.min(horizon);
        if top == 0 {
            return None;
        }
        return ext_dims(res, &regular, 1..=top).iter().position(|&d| d != 0).map(|j| j + 1);
    }
    ext_dims(res, &regular, 1..=horizon)
        .iter()
        .position(|&d| d != 0)
        .map(|j| j + 1)
}

/// Bounded check of `Ext^j(M, A) = 0` for `1 ≤ j ≤ h`.
pub fn ext_vanishes_against_regular(m: &Representation, h: usize) -> bool {
    assert!(h >= 1);
    let mut res = Resolution::new(m);
    first_nonvanishing_ext_against_regular(&mut res, h).is_none()
}

/// An injective coresolution of `M`, obtained by resolving `D M` over the
/// opposite algebra and dualizing back.
#[derive(Debug, Clone)]
pub struct Coresolution {
    algebra: Arc<MonomialAlgebra>,
    opposite: Arc<MonomialAlgebra>,
    resolution: Resolution,
}

impl Coresolution {
    pub fn opposite_resolution(&mut self) -> &mut Resolution {
        &mut self.resolution
    }

    /// `Ω^{-k} M = D Ω^k D M`.
    pub fn cosyzygy(&mut self, k: usize) -> Representation {
        dual_over(&self.resolution.syzygy(k), self.algebra.clone())
    }

    /// Vertex labels of the indecomposable injectives `I^v` in the k-th term.
    pub fn term_vertices(&mut self, k: usize) -> Vec<usize> {
        self.resolution.term_vertices(k)
    }

    pub fn term_dims(&mut self, terms: usize) -> Vec<usize> {
        self.resolution.term_dims(terms)
    }

    pub fn injective_dimension(&self) -> Option<usize> {
        self.resolution.projective_dimension()
    }

    pub fn opposite_algebra(&self) -> &Arc<MonomialAlgebra> {
        &self.opposite
    }
}

pub fn injective_coresolution(m: &Representation, horizon: usize) -> Coresolution {
    let algebra = m.algebra().clone();
    let op = Arc::new(opposite(&algebra));
    let dm = dual_over(m, op.clone());
    Coresolution {
        algebra,
        opposite: op,
        resolution: min_resolution(&dm, horizon),
    }
}

pub fn cosyzygy(m: &Representation) -> Representation {
    injective_coresolution(m, 1).cosyzygy(1)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum ComplexityClass {
    /// Resolution stops; cx = 0.
    FiniteProjectiveDimension { projective_dimension: usize },
    /// `Ω^{start} ≅ Ω^{start + period}`; cx ≤ 1.
    Bounded { start: usize, period: usize },
    /// Least-squares slope of log(dim P_k) against log(k).
    Growth { exponent: f64 },
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComplexityEstimate {
    pub dims_sequence: Vec<usize>,
    pub classification: ComplexityClass,
    pub certified: bool,
}

impl ComplexityEstimate {
    /// Exact complexity when certified, otherwise `None`.
    pub fn exact_complexity(&self) -> Option<usize> {
        match (&self.classification, self.certified) {
            (ComplexityClass::FiniteProjectiveDimension { .. }, true) => Some(0),
            (ComplexityClass::Bounded { .. }, true) => Some(1),
            _ => None,
        }
    }
}

pub fn complexity_estimate(m: &Representation, horizon: usize, options: &IsoOptions) -> ComplexityEstimate {
    assert!(horizon >= 4, "complexity needs a horizon of at least 4");
    let mut res = min_resolution(m, horizon);
    complexity_from_resolution(&mut res, horizon, options)
}

pub fn complexity_from_resolution(res: &mut Resolution, horizon: usize, options: &IsoOptions) -> ComplexityEstimate {
    let dims_sequence = res.term_dims(horizon);
    if let Some(pd) = res.projective_dimension() {
        return ComplexityEstimate {
            dims_sequence,
            classification: ComplexityClass::FiniteProjectiveDimension { projective_dimension: pd },
            certified: true,
        };
    }
    let syzygies: Vec<Representation> = (0..=horizon).map(|k| res.syzygy(k)).collect();
    let mut uncertain = false;
    for d in 1..=horizon {
        for start in 0..d {
            if syzygies[start].dims() != syzygies[d].dims() {
                continue;
            }
            let v = is_isomorphic(&syzygies[d], &syzygies[start], options);
            if v.is_isomorphic() {
                return ComplexityEstimate {
                    dims_sequence,
                    classification: ComplexityClass::Bounded { start, period: d - start },
                    certified: true,
                };
            }
            uncertain |= !v.is_certified();
        }
    }
    let points: Vec<(f64, f64)> = dims_sequence
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(_, &d)| d > 0)
        .map(|(k, &d)| ((k as f64).ln(), (d as f64).ln()))
        .collect();
    let classification = if uncertain || points.len() < 3 {
        ComplexityClass::Inconclusive
    } else {
        let n = points.len() as f64;
        let (sx, sy) = points.iter().fold((0.0, 0.0), |(a, b), (x, y)| (a + x, b + y));
        let (mx, my) = (sx / n, sy / n);
        let cov: f64 = points.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
        let var: f64 = points.iter().map(|(x, _)| (x - mx) * (x - mx)).sum();
        ComplexityClass::Growth {
            exponent: if var > 0.0 { cov / var } else { 0.0 },
        }
    };
    ComplexityEstimate {
        dims_sequence,
        classification,
        certified: false,
    }
}
