//! Finite-dimensional representations of a bound quiver and their morphisms.
//!
//! A representation stores one vector space dimension per vertex and one
//! matrix per arrow `a: s -> t`, of shape `dims[t] × dims[s]`. A morphism
//! stores one matrix per vertex.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::algebra::{indecomposable_projective, opposite, MonomialAlgebra, Path};
use crate::fieldmat::{Field, Matrix};

pub const DEFAULT_SEED: u64 = 0xC0FFEE;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepError {
    #[error("representations live over different algebras")]
    MixedAlgebras,
    #[error("direct sum of an empty list")]
    EmptySum,
    #[error("expected {expected} vertex dimensions, got {found}")]
    DimCount { expected: usize, found: usize },
    #[error("expected {expected} matrices, got {found}")]
    MapCount { expected: usize, found: usize },
    #[error("matrix for `{label}` has shape {found:?}, expected {expected:?}")]
    MapShape {
        label: String,
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("relation `{relation}` does not act as zero")]
    RelationViolated { index: usize, relation: String },
    #[error("vertex maps do not commute with arrow `{0}`")]
    NotCommuting(String),
}

/// First relation whose composite is nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationViolation {
    pub index: usize,
    pub relation: String,
}

#[derive(Clone)]
pub struct Representation {
    algebra: Arc<MonomialAlgebra>,
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

impl fmt::Debug for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Representation")
            .field("dims", &self.dims)
            .field("maps", &self.maps)
            .finish()
    }
}

pub fn same_algebra(a: &Arc<MonomialAlgebra>, b: &Arc<MonomialAlgebra>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Representation {
    /// Validates shapes and relations.
    pub fn new(algebra: Arc<MonomialAlgebra>, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Self, RepError> {
        if dims.len() != algebra.vertex_count() {
            return Err(RepError::DimCount {
                expected: algebra.vertex_count(),
                found: dims.len(),
            });
        }
        if maps.len() != algebra.arrows().len() {
            return Err(RepError::MapCount {
                expected: algebra.arrows().len(),
                found: maps.len(),
            });
        }
        for (a, m) in algebra.arrows().iter().zip(&maps) {
            let expected = (dims[a.target - 1], dims[a.source - 1]);
            if m.shape() != expected || m.field() != algebra.field() {
                return Err(RepError::MapShape {
                    label: a.name.clone(),
                    expected,
                    found: m.shape(),
                });
            }
        }
        let rep = Representation { algebra, dims, maps };
        check_module(&rep).map_err(|v| RepError::RelationViolated {
            index: v.index,
            relation: v.relation,
        })?;
        Ok(rep)
    }

    pub(crate) fn from_parts(algebra: Arc<MonomialAlgebra>, dims: Vec<usize>, maps: Vec<Matrix>) -> Self {
        let rep = Representation { algebra, dims, maps };
        debug_assert!(check_module(&rep).is_ok(), "constructed representation violates a relation");
        rep
    }

    pub fn zero(algebra: &Arc<MonomialAlgebra>) -> Self {
        let field = algebra.field();
        let maps = algebra.arrows().iter().map(|_| Matrix::zeros(field, 0, 0)).collect();
        Representation {
            algebra: algebra.clone(),
            dims: vec![0; algebra.vertex_count()],
            maps,
        }
    }

    /// Re-homes the representation onto a structurally identical algebra.
    pub fn with_algebra(mut self, algebra: Arc<MonomialAlgebra>) -> Self {
        assert!(same_algebra(&self.algebra, &algebra), "with_algebra: algebras differ");
        self.algebra = algebra;
        self
    }

    pub fn algebra(&self) -> &Arc<MonomialAlgebra> {
        &self.algebra
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Dimension at a 1-based vertex.
    pub fn dim_at(&self, v: usize) -> usize {
        self.dims[v - 1]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    pub fn arrow_map(&self, arrow: usize) -> &Matrix {
        &self.maps[arrow]
    }

    /// Matrix of a path, composed in traversal order.
    pub fn path_matrix(&self, source: usize, arrows: &[usize]) -> Matrix {
        let mut m = Matrix::identity(self.field(), self.dims[source - 1]);
        for &a in arrows {
            m = &self.maps[a] * &m;
        }
        m
    }

    pub fn path_action(&self, path: &Path, v: &[u32]) -> Vec<u32> {
        let mut cur = v.to_vec();
        for &a in &path.arrows {
            cur = self.maps[a].apply(&cur);
        }
        cur
    }
}

/// Verifies that every relation acts as zero.
pub fn check_module(m: &Representation) -> Result<(), RelationViolation> {
    let alg = &m.algebra;
    for (index, rel) in alg.relations().iter().enumerate() {
        let source = alg.arrows()[rel[0]].source;
        if !m.path_matrix(source, rel).is_zero() {
            return Err(RelationViolation {
                index,
                relation: alg.relation_names(index).join(" "),
            });
        }
    }
    Ok(())
}

/// The simple module at vertex `i`.
pub fn simple(alg: &Arc<MonomialAlgebra>, i: usize) -> Representation {
    alg.check_vertex(i);
    let field = alg.field();
    let dims: Vec<usize> = (1..=alg.vertex_count()).map(|v| usize::from(v == i)).collect();
    let maps = alg
        .arrows()
        .iter()
        .map(|a| Matrix::zeros(field, dims[a.target - 1], dims[a.source - 1]))
        .collect();
    Representation::from_parts(alg.clone(), dims, maps)
}

#[derive(Clone)]
pub struct Morphism {
    source: Representation,
    target: Representation,
    maps: Vec<Matrix>,
}

impl fmt::Debug for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Morphism")
            .field("source_dims", &self.source.dims)
            .field("target_dims", &self.target.dims)
            .field("maps", &self.maps)
            .finish()
    }
}

impl Morphism {
    pub fn new(source: Representation, target: Representation, maps: Vec<Matrix>) -> Result<Self, RepError> {
        if !same_algebra(&source.algebra, &target.algebra) {
            return Err(RepError::MixedAlgebras);
        }
        let n = source.algebra.vertex_count();
        if maps.len() != n {
            return Err(RepError::MapCount {
                expected: n,
                found: maps.len(),
            });
        }
        for (v, m) in maps.iter().enumerate() {
            let expected = (target.dims[v], source.dims[v]);
            if m.shape() != expected {
                return Err(RepError::MapShape {
                    label: format!("vertex {}", v + 1),
                    expected,
                    found: m.shape(),
                });
            }
        }
        let f = Morphism { source, target, maps };
        if let Some(a) = f.first_noncommuting_arrow() {
            return Err(RepError::NotCommuting(f.source.algebra.arrows()[a].name.clone()));
        }
        Ok(f)
    }

    pub(crate) fn from_parts(source: Representation, target: Representation, maps: Vec<Matrix>) -> Self {
        let f = Morphism { source, target, maps };
        debug_assert!(f.first_noncommuting_arrow().is_none(), "constructed morphism does not commute");
        f
    }

    fn first_noncommuting_arrow(&self) -> Option<usize> {
        self.source.algebra.arrows().iter().enumerate().position(|(ai, a)| {
            let lhs = &self.target.maps[ai] * &self.maps[a.source - 1];
            let rhs = &self.maps[a.target - 1] * &self.source.maps[ai];
            lhs != rhs
        })
    }

    pub fn is_valid(&self) -> bool {
        self.first_noncommuting_arrow().is_none()
    }

    pub fn identity(m: &Representation) -> Self {
        let maps = m.dims.iter().map(|&d| Matrix::identity(m.field(), d)).collect();
        Morphism {
            source: m.clone(),
            target: m.clone(),
            maps,
        }
    }

    pub fn zero(source: &Representation, target: &Representation) -> Self {
        let maps = source
            .dims
            .iter()
            .zip(&target.dims)
            .map(|(&s, &t)| Matrix::zeros(source.field(), t, s))
            .collect();
        Morphism {
            source: source.clone(),
            target: target.clone(),
            maps,
        }
    }

    pub fn source(&self) -> &Representation {
        &self.source
    }

    pub fn target(&self) -> &Representation {
        &self.target
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    /// Map at a 1-based vertex.
    pub fn at(&self, v: usize) -> &Matrix {
        &self.maps[v - 1]
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &Morphism) -> Morphism {
        assert_eq!(first.target.dims, self.source.dims, "compose: dimension mismatch");
        let maps = self.maps.iter().zip(&first.maps).map(|(g, f)| g * f).collect();
        Morphism {
            source: first.source.clone(),
            target: self.target.clone(),
            maps,
        }
    }

    pub fn add(&self, other: &Morphism) -> Morphism {
        let maps = self.maps.iter().zip(&other.maps).map(|(a, b)| a + b).collect();
        Morphism { maps, ..self.clone() }
    }

    pub fn scale(&self, s: u32) -> Morphism {
        let maps = self.maps.iter().map(|m| m.scale(s)).collect();
        Morphism { maps, ..self.clone() }
    }

    pub fn is_zero(&self) -> bool {
        self.maps.iter().all(Matrix::is_zero)
    }

    pub fn is_isomorphism(&self) -> bool {
        self.maps.iter().all(Matrix::is_invertible)
    }

    pub fn is_mono(&self) -> bool {
        self.maps.iter().all(|m| m.rank() == m.cols())
    }

    pub fn is_epi(&self) -> bool {
        self.maps.iter().all(|m| m.rank() == m.rows())
    }

    /// Vertexwise matrix inverse, when every vertex map is invertible.
    pub fn inverse(&self) -> Option<Morphism> {
        let maps = self.maps.iter().map(Matrix::inverse).collect::<Option<Vec<_>>>()?;
        Some(Morphism {
            source: self.target.clone(),
            target: self.source.clone(),
            maps,
        })
    }

    /// All vertex matrices concatenated row-major.
    pub fn flatten(&self) -> Vec<u32> {
        self.maps.iter().flat_map(|m| m.entries().iter().copied()).collect()
    }

    pub fn with_endpoints(mut self, source: Representation, target: Representation) -> Self {
        assert_eq!(self.source.dims, source.dims);
        assert_eq!(self.target.dims, target.dims);
        self.source = source;
        self.target = target;
        self
    }
}

/// A basis of `Hom(source, target)`.
#[derive(Debug, Clone)]
pub struct HomSpace {
    pub source: Representation,
    pub target: Representation,
    pub basis: Vec<Morphism>,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn combination(&self, coeffs: &[u32]) -> Morphism {
        assert_eq!(coeffs.len(), self.basis.len());
        let mut out = Morphism::zero(&self.source, &self.target);
        for (b, &c) in self.basis.iter().zip(coeffs) {
            if c != 0 {
                for (acc, m) in out.maps.iter_mut().zip(&b.maps) {
                    acc.add_scaled(c, m);
                }
            }
        }
        out
    }
}

/// Solves the commuting equations `N_a X_s = X_t M_a` for all arrows.
pub fn hom_basis(m: &Representation, n: &Representation) -> HomSpace {
    assert!(same_algebra(&m.algebra, &n.algebra), "hom_basis: different algebras");
    let alg = &m.algebra;
    let field = m.field();
    let mut offsets = Vec::with_capacity(m.dims.len());
    let mut unknowns = 0;
    for (&dm, &dn) in m.dims.iter().zip(&n.dims) {
        offsets.push(unknowns);
        unknowns += dm * dn;
    }
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for (ai, a) in alg.arrows().iter().enumerate() {
        let (s, t) = (a.source - 1, a.target - 1);
        let (ma, na) = (&m.maps[ai], &n.maps[ai]);
        for r in 0..n.dims[t] {
            for c in 0..m.dims[s] {
                let mut eq = vec![0u32; unknowns];
                // (N_a X_s)[r, c]
                for k in 0..n.dims[s] {
                    let coef = na.get(r, k);
                    if coef != 0 {
                        let idx = offsets[s] + k * m.dims[s] + c;
                        eq[idx] = field.add(eq[idx], coef);
                    }
                }
                // -(X_t M_a)[r, c]
                for k in 0..m.dims[t] {
                    let coef = ma.get(k, c);
                    if coef != 0 {
                        let idx = offsets[t] + r * m.dims[t] + k;
                        eq[idx] = field.sub(eq[idx], coef);
                    }
                }
                rows.push(eq);
            }
        }
    }
    let system = Matrix::from_rows(field, unknowns, &rows).expect("entries reduced");
    let basis = system
        .nullspace_basis()
        .into_iter()
        .map(|v| {
            let maps = (0..m.dims.len())
                .map(|vi| {
                    let (r, c) = (n.dims[vi], m.dims[vi]);
                    let slice = v[offsets[vi]..offsets[vi] + r * c].to_vec();
                    Matrix::from_vec(field, r, c, slice).expect("entries reduced")
                })
                .collect();
            Morphism::from_parts(m.clone(), n.clone(), maps)
        })
        .collect();
    HomSpace {
        source: m.clone(),
        target: n.clone(),
        basis,
    }
}

/// A direct sum with its canonical injections and projections.
#[derive(Debug, Clone)]
pub struct DirectSum {
    pub sum: Representation,
    pub injections: Vec<Morphism>,
    pub projections: Vec<Morphism>,
}

pub fn direct_sum(parts: &[Representation]) -> Result<DirectSum, RepError> {
    let first = parts.first().ok_or(RepError::EmptySum)?;
    let alg = first.algebra.clone();
    if parts.iter().any(|p| !same_algebra(&p.algebra, &alg)) {
        return Err(RepError::MixedAlgebras);
    }
    let field = alg.field();
    let n = alg.vertex_count();
    let dims: Vec<usize> = (0..n).map(|v| parts.iter().map(|p| p.dims[v]).sum()).collect();
    let maps = (0..alg.arrows().len())
        .map(|ai| Matrix::block_diag(field, &parts.iter().map(|p| &p.maps[ai]).collect::<Vec<_>>()))
        .collect();
    let sum = Representation::from_parts(alg.clone(), dims.clone(), maps);
    let mut offsets = vec![0usize; n];
    let mut injections = Vec::with_capacity(parts.len());
    let mut projections = Vec::with_capacity(parts.len());
    for part in parts {
        let mut inj = Vec::with_capacity(n);
        let mut proj = Vec::with_capacity(n);
        for v in 0..n {
            let mut i = Matrix::zeros(field, dims[v], part.dims[v]);
            i.set_block(offsets[v], 0, &Matrix::identity(field, part.dims[v]));
            proj.push(i.transpose());
            inj.push(i);
            offsets[v] += part.dims[v];
        }
        injections.push(Morphism::from_parts(part.clone(), sum.clone(), inj));
        projections.push(Morphism::from_parts(sum.clone(), part.clone(), proj));
    }
    Ok(DirectSum {
        sum,
        injections,
        projections,
    })
}

/// The subrepresentation spanned vertexwise by the (independent) columns of
/// `bases`, which must be closed under the arrow maps.
pub fn subrepresentation(m: &Representation, bases: Vec<Matrix>) -> (Representation, Morphism) {
    let alg = &m.algebra;
    let dims: Vec<usize> = bases.iter().map(Matrix::cols).collect();
    let maps = alg
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, a)| {
            let image = &m.maps[ai] * &bases[a.source - 1];
            bases[a.target - 1]
                .solve(&image)
                .expect("subspace is not closed under the arrow maps")
        })
        .collect();
    let sub = Representation::from_parts(alg.clone(), dims, maps);
    let inclusion = Morphism::from_parts(sub.clone(), m.clone(), bases);
    (sub, inclusion)
}

/// The quotient by the subrepresentation spanned by `bases`, with the
/// projection and a vertexwise linear section (not a morphism in general).
pub fn quotient(m: &Representation, bases: &[Matrix]) -> (Representation, Morphism, Vec<Matrix>) {
    let alg = &m.algebra;
    let field = m.field();
    let mut projections = Vec::with_capacity(bases.len());
    let mut sections = Vec::with_capacity(bases.len());
    for (v, b) in bases.iter().enumerate() {
        let complement = b.complement_columns();
        let full = Matrix::hstack(field, m.dims[v], &[b, &complement]);
        let inv = full.inverse().expect("subspace basis plus complement is a basis");
        projections.push(inv.block(b.cols()..m.dims[v], 0..m.dims[v]));
        sections.push(complement);
    }
    let dims: Vec<usize> = sections.iter().map(Matrix::cols).collect();
    let maps = alg
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, a)| &(&projections[a.target - 1] * &m.maps[ai]) * &sections[a.source - 1])
        .collect();
    let q = Representation::from_parts(alg.clone(), dims, maps);
    let proj = Morphism::from_parts(m.clone(), q.clone(), projections);
    (q, proj, sections)
}

/// Kernel of `f` with its inclusion into `f.source()`.
pub fn kernel(f: &Morphism) -> (Representation, Morphism) {
    let bases = f.maps.iter().map(Matrix::nullspace_matrix).collect();
    subrepresentation(&f.source, bases)
}

#[derive(Debug, Clone)]
pub struct ImageCokernel {
    pub image: Representation,
    /// `source ↠ image`
    pub coimage: Morphism,
    /// `image ↪ target`
    pub image_inclusion: Morphism,
    pub cokernel: Representation,
    /// `target ↠ cokernel`
    pub cokernel_projection: Morphism,
}

pub fn image_and_cokernel(f: &Morphism) -> ImageCokernel {
    let bases: Vec<Matrix> = f.maps.iter().map(Matrix::column_space).collect();
    let (image, image_inclusion) = subrepresentation(&f.target, bases.clone());
    let coimage_maps = f
        .maps
        .iter()
        .zip(&bases)
        .map(|(fv, b)| b.solve(fv).expect("columns of f lie in its column space"))
        .collect();
    let coimage = Morphism::from_parts(f.source.clone(), image.clone(), coimage_maps);
    let (cokernel, cokernel_projection, _) = quotient(&f.target, &bases);
    ImageCokernel {
        image,
        coimage,
        image_inclusion,
        cokernel,
        cokernel_projection,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IsoOptions {
    pub seed: u64,
    pub random_trials: usize,
    /// Exhaust `Hom(M, N)` when it has at most this many elements.
    pub exhaustive_limit: u64,
}

impl Default for IsoOptions {
    fn default() -> Self {
        IsoOptions {
            seed: DEFAULT_SEED,
            random_trials: 64,
            exhaustive_limit: 1 << 20,
        }
    }
}

impl IsoOptions {
    pub fn with_seed(seed: u64) -> Self {
        IsoOptions {
            seed,
            ..IsoOptions::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NonIsoReason {
    DimensionVector,
    /// Some path acts with different ranks on the two modules.
    PathRank,
    /// Every element of the hom space was tried.
    Exhausted,
    /// Search budget spent without finding an isomorphism.
    SearchFailed,
}

#[derive(Debug, Clone)]
pub enum IsoVerdict {
    Isomorphic(Morphism),
    NotIsomorphic { certified: bool, reason: NonIsoReason },
}

impl IsoVerdict {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, IsoVerdict::Isomorphic(_))
    }

    /// Positive answers always carry a witness, so only negatives can be uncertified.
    pub fn is_certified(&self) -> bool {
        match self {
            IsoVerdict::Isomorphic(_) => true,
            IsoVerdict::NotIsomorphic { certified, .. } => *certified,
        }
    }

    pub fn is_certified_negative(&self) -> bool {
        matches!(self, IsoVerdict::NotIsomorphic { certified: true, .. })
    }

    pub fn witness(&self) -> Option<&Morphism> {
        match self {
            IsoVerdict::Isomorphic(w) => Some(w),
            _ => None,
        }
    }
}

fn path_ranks(m: &Representation) -> Vec<usize> {
    m.algebra
        .path_basis()
        .iter()
        .filter(|p| !p.is_trivial())
        .map(|p| m.path_matrix(p.source, &p.arrows).rank())
        .collect()
}

/// Searches `Hom(M, N)` for an element invertible at every vertex.
pub fn is_isomorphic(m: &Representation, n: &Representation, options: &IsoOptions) -> IsoVerdict {
    assert!(same_algebra(&m.algebra, &n.algebra), "is_isomorphic: different algebras");
    if m.dims != n.dims {
        return IsoVerdict::NotIsomorphic {
            certified: true,
            reason: NonIsoReason::DimensionVector,
        };
    }
    if m.is_zero() {
        return IsoVerdict::Isomorphic(Morphism::zero(m, n));
    }
    if path_ranks(m) != path_ranks(n) {
        return IsoVerdict::NotIsomorphic {
            certified: true,
            reason: NonIsoReason::PathRank,
        };
    }
    let hom = hom_basis(m, n);
    let d = hom.dim();
    if d == 0 {
        return IsoVerdict::NotIsomorphic {
            certified: true,
            reason: NonIsoReason::Exhausted,
        };
    }
    for b in &hom.basis {
        if b.is_isomorphism() {
            return IsoVerdict::Isomorphic(b.clone());
        }
    }
    for i in 0..d {
        for j in i + 1..d {
            let c = hom.basis[i].add(&hom.basis[j]);
            if c.is_isomorphism() {
                return IsoVerdict::Isomorphic(c);
            }
        }
    }
    let p = m.field().p();
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    for _ in 0..options.random_trials {
        let coeffs: Vec<u32> = (0..d).map(|_| rng.gen_range(0..p)).collect();
        let c = hom.combination(&coeffs);
        if c.is_isomorphism() {
            return IsoVerdict::Isomorphic(c);
        }
    }
    let space = (p as u64).checked_pow(d as u32);
    match space {
        Some(size) if size <= options.exhaustive_limit => match exhaust(&hom) {
            Some(w) => IsoVerdict::Isomorphic(w),
            None => IsoVerdict::NotIsomorphic {
                certified: true,
                reason: NonIsoReason::Exhausted,
            },
        },
        _ => IsoVerdict::NotIsomorphic {
            certified: false,
            reason: NonIsoReason::SearchFailed,
        },
    }
}

/// Odometer walk over all coefficient vectors. Each step bumps a run of
/// digits by one (wrapping `p-1 -> 0` is also `+1` mod p), so the running
/// combination is updated by adding the corresponding basis elements.
fn exhaust(hom: &HomSpace) -> Option<Morphism> {
    let p = hom.source.field().p();
    let d = hom.dim();
    let mut digits = vec![0u32; d];
    let mut current = Morphism::zero(&hom.source, &hom.target);
    loop {
        let mut k = 0;
        loop {
            if k == d {
                return None;
            }
            for (acc, m) in current.maps.iter_mut().zip(&hom.basis[k].maps) {
                acc.add_scaled(1, m);
            }
            digits[k] += 1;
            if digits[k] == p {
                digits[k] = 0;
                k += 1;
            } else {
                break;
            }
        }
        if current.is_isomorphism() {
            return Some(current);
        }
    }
}

/// The k-linear dual, a representation of the opposite algebra.
pub fn dual(m: &Representation) -> Representation {
    let op = Arc::new(opposite(&m.algebra));
    dual_over(m, op)
}

/// Dual over a caller-supplied copy of the opposite algebra.
pub fn dual_over(m: &Representation, op: Arc<MonomialAlgebra>) -> Representation {
    let maps = m.maps.iter().map(Matrix::transpose).collect();
    Representation::from_parts(op, m.dims.clone(), maps)
}

/// Transpose of a morphism `M -> N`, as `dual N -> dual M`.
pub fn dual_morphism(f: &Morphism, dual_source: &Representation, dual_target: &Representation) -> Morphism {
    let maps = f.maps.iter().map(Matrix::transpose).collect();
    Morphism::from_parts(dual_target.clone(), dual_source.clone(), maps)
}

/// `M ≅ stable_part ⊕ projective_part`, with no indecomposable projective
/// summand left in `stable_part`.
#[derive(Debug, Clone)]
pub struct StripResult {
    pub stable_part: Representation,
    pub projective_part: Representation,
    /// Vertex of each split-off indecomposable projective, in splitting order.
    pub projective_vertices: Vec<usize>,
    /// `stable_part ⊕ projective_part -> M`
    pub embedding: Morphism,
    /// `M -> stable_part ⊕ projective_part`, inverse of `embedding`.
    pub retraction: Morphism,
}

/// Looks for `f: P -> M`, `g: M -> P` among hom-space basis elements with
/// `g ∘ f` invertible. End(P) is local, so if any composite is a unit then
/// some basis pair already is.
fn find_projective_split(m: &Representation, p: &Representation) -> Option<(Morphism, Morphism)> {
    let into = hom_basis(p, m);
    if into.dim() == 0 {
        return None;
    }
    let out = hom_basis(m, p);
    for f in &into.basis {
        for g in &out.basis {
            let u = g.compose(f);
            if let Some(u_inv) = u.inverse() {
                return Some((f.compose(&u_inv), g.clone()));
            }
        }
    }
    None
}

pub fn strip_projective_summands(m: &Representation) -> StripResult {
    let alg = m.algebra.clone();
    let projectives: Vec<Representation> = (1..=alg.vertex_count())
        .map(|i| indecomposable_projective(&alg, i))
        .collect();
    let mut current = m.clone();
    // inclusion of `current` into M
    let mut to_m = Morphism::identity(m);
    let mut split_vertices = Vec::new();
    let mut split_maps: Vec<Morphism> = Vec::new();
    'outer: loop {
        for (i, p) in projectives.iter().enumerate() {
            if p.dims.iter().zip(&current.dims).any(|(a, b)| a > b) {
                continue;
            }
            if let Some((section, retraction)) = find_projective_split(&current, p) {
                // current = Im(section) ⊕ Ker(retraction), with retraction ∘ section = id_P
                let (complement, incl) = kernel(&retraction);
                split_maps.push(to_m.compose(&section));
                split_vertices.push(i + 1);
                to_m = to_m.compose(&incl);
                current = complement;
                continue 'outer;
            }
        }
        break;
    }
    let projective_part = if split_vertices.is_empty() {
        Representation::zero(&alg)
    } else {
        let parts: Vec<Representation> = split_vertices.iter().map(|&i| projectives[i - 1].clone()).collect();
        direct_sum(&parts).expect("same algebra").sum
    };
    let total = direct_sum(&[current.clone(), projective_part.clone()]).expect("same algebra");
    let field = alg.field();
    let maps: Vec<Matrix> = (0..alg.vertex_count())
        .map(|v| {
            let mut blocks: Vec<&Matrix> = vec![&to_m.maps[v]];
            blocks.extend(split_maps.iter().map(|s| &s.maps[v]));
            Matrix::hstack(field, m.dims[v], &blocks)
        })
        .collect();
    let embedding = Morphism::from_parts(total.sum.clone(), m.clone(), maps);
    let retraction = embedding.inverse().expect("stripping produces a direct-sum decomposition");
    StripResult {
        stable_part: current,
        projective_part,
        projective_vertices: split_vertices,
        embedding,
        retraction,
    }
}
