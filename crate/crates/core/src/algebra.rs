//! Monomial bound-quiver algebras `kQ / I` with `I` generated by paths.
//!
//! Vertices are numbered `1..=n`. A path is written in traversal order: the
//! relation `a b` is the path that runs along `a` first and then along `b`.

use std::collections::HashMap;
use std::sync::Arc;

use thiserror::Error;

use crate::fieldmat::{Field, Matrix};
use crate::rep::{self, IsoOptions, Representation};

/// Default bound on the number of nonzero paths before an algebra is declared
/// infinite-dimensional.
pub const DEFAULT_PATH_CAP: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("a quiver needs at least one vertex")]
    NoVertices,
    #[error("duplicate arrow name `{0}`")]
    DuplicateArrow(String),
    #[error("arrow `{arrow}` refers to vertex {vertex}, outside 1..={vertex_count}")]
    VertexOutOfRange {
        arrow: String,
        vertex: usize,
        vertex_count: usize,
    },
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("relation {index} has length {len}; relations need at least two arrows")]
    RelationTooShort { index: usize, len: usize },
    #[error("relation {index} is not composable: `{first}` ends at {end} but `{second}` starts at {start}")]
    NonComposable {
        index: usize,
        first: String,
        second: String,
        end: usize,
        start: usize,
    },
    #[error("more than {cap} nonzero paths; the relations do not bound path length")]
    InfiniteDimensional { cap: usize },
    #[error("cyclic Nakayama algebra needs at least 2 vertices, got {0}")]
    CycleTooShort(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    vertex_count: usize,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertex_count: usize, arrows: Vec<Arrow>) -> Result<Self, AlgebraError> {
        if vertex_count == 0 {
            return Err(AlgebraError::NoVertices);
        }
        let mut seen = HashMap::new();
        for a in &arrows {
            if seen.insert(a.name.as_str(), ()).is_some() {
                return Err(AlgebraError::DuplicateArrow(a.name.clone()));
            }
            for v in [a.source, a.target] {
                if v == 0 || v > vertex_count {
                    return Err(AlgebraError::VertexOutOfRange {
                        arrow: a.name.clone(),
                        vertex: v,
                        vertex_count,
                    });
                }
            }
        }
        Ok(Quiver {
            vertex_count,
            arrows,
        })
    }

    /// Convenience constructor from `(name, source, target)` triples.
    pub fn from_triples(vertex_count: usize, arrows: &[(&str, usize, usize)]) -> Result<Self, AlgebraError> {
        Quiver::new(
            vertex_count,
            arrows
                .iter()
                .map(|&(name, source, target)| Arrow {
                    name: name.to_string(),
                    source,
                    target,
                })
                .collect(),
        )
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }
}

/// A path in the quiver. Trivial paths `e_i` have no arrows and equal
/// source and target.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    /// Arrow indices in traversal order.
    pub arrows: Vec<usize>,
}

impl Path {
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BuildOptions {
    pub path_cap: usize,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            path_cap: DEFAULT_PATH_CAP,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialAlgebra {
    field: Field,
    quiver: Quiver,
    relations: Vec<Vec<usize>>,
    basis: Vec<Path>,
    index: HashMap<(usize, Vec<usize>), usize>,
    // between[s-1][t-1]: basis indices of the paths s -> t, in basis order.
    between: Vec<Vec<Vec<usize>>>,
}

pub fn build_monomial_algebra<P, S>(field: Field, quiver: Quiver, relations: &[P]) -> Result<MonomialAlgebra, AlgebraError>
where
    P: AsRef<[S]>,
    S: AsRef<str>,
{
    build_monomial_algebra_with(field, quiver, relations, BuildOptions::default())
}

pub fn build_monomial_algebra_with<P, S>(
    field: Field,
    quiver: Quiver,
    relations: &[P],
    options: BuildOptions,
) -> Result<MonomialAlgebra, AlgebraError>
where
    P: AsRef<[S]>,
    S: AsRef<str>,
{
    let mut rels = Vec::with_capacity(relations.len());
    for (index, rel) in relations.iter().enumerate() {
        let names = rel.as_ref();
        if names.len() < 2 {
            return Err(AlgebraError::RelationTooShort {
                index,
                len: names.len(),
            });
        }
        let mut arrows = Vec::with_capacity(names.len());
        for name in names {
            let name = name.as_ref();
            arrows.push(
                quiver
                    .arrow_index(name)
                    .ok_or_else(|| AlgebraError::UnknownArrow(name.to_string()))?,
            );
        }
        for w in arrows.windows(2) {
            let (a, b) = (&quiver.arrows[w[0]], &quiver.arrows[w[1]]);
            if a.target != b.source {
                return Err(AlgebraError::NonComposable {
                    index,
                    first: a.name.clone(),
                    second: b.name.clone(),
                    end: a.target,
                    start: b.source,
                });
            }
        }
        rels.push(arrows);
    }
    MonomialAlgebra::from_parts(field, quiver, rels, options)
}

impl MonomialAlgebra {
    fn from_parts(field: Field, quiver: Quiver, relations: Vec<Vec<usize>>, options: BuildOptions) -> Result<Self, AlgebraError> {
        let n = quiver.vertex_count;
        let mut basis: Vec<Path> = (1..=n)
            .map(|v| Path {
                source: v,
                target: v,
                arrows: Vec::new(),
            })
            .collect();
        let mut frontier: Vec<usize> = (0..n).collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &pi in &frontier {
                for (ai, arrow) in quiver.arrows.iter().enumerate() {
                    if arrow.source != basis[pi].target {
                        continue;
                    }
                    let mut arrows = basis[pi].arrows.clone();
                    arrows.push(ai);
                    // Prefixes are relation-free already, so only suffixes can match.
                    if relations.iter().any(|r| arrows.ends_with(r)) {
                        continue;
                    }
                    if basis.len() >= options.path_cap {
                        return Err(AlgebraError::InfiniteDimensional {
                            cap: options.path_cap,
                        });
                    }
                    basis.push(Path {
                        source: basis[pi].source,
                        target: arrow.target,
                        arrows,
                    });
                    next.push(basis.len() - 1);
                }
            }
            frontier = next;
        }
        let index = basis
            .iter()
            .enumerate()
            .map(|(i, p)| ((p.source, p.arrows.clone()), i))
            .collect();
        let mut between = vec![vec![Vec::new(); n]; n];
        for (i, p) in basis.iter().enumerate() {
            between[p.source - 1][p.target - 1].push(i);
        }
        Ok(MonomialAlgebra {
            field,
            quiver,
            relations,
            basis,
            index,
            between,
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn vertex_count(&self) -> usize {
        self.quiver.vertex_count
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.quiver.arrows
    }

    /// Relations as arrow-index sequences in traversal order.
    pub fn relations(&self) -> &[Vec<usize>] {
        &self.relations
    }

    pub fn relation_names(&self, index: usize) -> Vec<&str> {
        self.relations[index]
            .iter()
            .map(|&a| self.quiver.arrows[a].name.as_str())
            .collect()
    }

    pub fn path_basis(&self) -> &[Path] {
        &self.basis
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Basis index of the nonzero path `source` + `arrows`, if it is nonzero.
    pub fn path_index(&self, source: usize, arrows: &[usize]) -> Option<usize> {
        self.index.get(&(source, arrows.to_vec())).copied()
    }

    /// Basis indices of the paths from `source` to `target`.
    pub fn paths_between(&self, source: usize, target: usize) -> &[usize] {
        &self.between[source - 1][target - 1]
    }

    pub fn path_name(&self, path: &Path) -> String {
        if path.is_trivial() {
            format!("e{}", path.source)
        } else {
            path.arrows
                .iter()
                .map(|&a| self.quiver.arrows[a].name.as_str())
                .collect::<Vec<_>>()
                .join(" ")
        }
    }

    pub(crate) fn check_vertex(&self, v: usize) {
        assert!(
            (1..=self.vertex_count()).contains(&v),
            "vertex {v} outside 1..={}",
            self.vertex_count()
        );
    }
}

/// The cyclic Nakayama algebra on `n` vertices with radical square zero:
/// arrows `a_i: i -> i+1` (indices mod `n`), every path of length two a relation.
pub fn cyclic_nakayama(n: usize, field: Field) -> Result<MonomialAlgebra, AlgebraError> {
    if n < 2 {
        return Err(AlgebraError::CycleTooShort(n));
    }
    let names: Vec<String> = (1..=n).map(|i| format!("a{i}")).collect();
    let arrows = (1..=n)
        .map(|i| Arrow {
            name: names[i - 1].clone(),
            source: i,
            target: i % n + 1,
        })
        .collect();
    let quiver = Quiver::new(n, arrows)?;
    let relations: Vec<Vec<&str>> = (0..n)
        .map(|i| vec![names[i].as_str(), names[(i + 1) % n].as_str()])
        .collect();
    build_monomial_algebra(field, quiver, &relations)
}

/// Returns `Some(n)` when the algebra is (isomorphic as presented to) the
/// radical-square-zero cyclic Nakayama algebra on `n ≥ 2` vertices.
pub fn cyclic_nakayama_order(alg: &MonomialAlgebra) -> Option<usize> {
    let n = alg.vertex_count();
    if n < 2 || alg.arrows().len() != n || alg.dimension() != 2 * n {
        return None;
    }
    let mut out_deg = vec![0usize; n];
    let mut in_deg = vec![0usize; n];
    for a in alg.arrows() {
        out_deg[a.source - 1] += 1;
        in_deg[a.target - 1] += 1;
    }
    if out_deg.iter().chain(&in_deg).any(|&d| d != 1) {
        return None;
    }
    // Single cycle through all vertices.
    let cycle_len = {
        let mut len = 1;
        let mut w = alg.arrows().iter().find(|a| a.source == 1)?.target;
        while w != 1 {
            w = alg.arrows().iter().find(|a| a.source == w)?.target;
            len += 1;
        }
        len
    };
    (cycle_len == n).then_some(n)
}

/// Reverses every arrow and relation. Arrow names are kept, so applying it
/// twice gives back identical data.
pub fn opposite(alg: &MonomialAlgebra) -> MonomialAlgebra {
    let arrows = alg
        .arrows()
        .iter()
        .map(|a| Arrow {
            name: a.name.clone(),
            source: a.target,
            target: a.source,
        })
        .collect();
    let quiver = Quiver::new(alg.vertex_count(), arrows).expect("reversed quiver is valid");
    let relations = alg
        .relations
        .iter()
        .map(|r| r.iter().rev().copied().collect())
        .collect();
    MonomialAlgebra::from_parts(
        alg.field,
        quiver,
        relations,
        BuildOptions {
            path_cap: usize::MAX,
        },
    )
    .expect("opposite of a finite-dimensional algebra is finite-dimensional")
}

/// `P_i = e_i A`: basis the nonzero paths starting at `i`, arrows acting by
/// extending paths (to zero when the extension vanishes).
pub fn indecomposable_projective(alg: &Arc<MonomialAlgebra>, i: usize) -> Representation {
    alg.check_vertex(i);
    let n = alg.vertex_count();
    let field = alg.field();
    let dims: Vec<usize> = (1..=n).map(|w| alg.paths_between(i, w).len()).collect();
    let maps = alg
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, a)| {
            let from = alg.paths_between(i, a.source);
            let to = alg.paths_between(i, a.target);
            let mut m = Matrix::zeros(field, to.len(), from.len());
            for (col, &pi) in from.iter().enumerate() {
                let mut arrows = alg.path_basis()[pi].arrows.clone();
                arrows.push(ai);
                if let Some(q) = alg.path_index(i, &arrows) {
                    let row = to.iter().position(|&x| x == q).expect("path grouped by target");
                    m.set(row, col, 1);
                }
            }
            m
        })
        .collect();
    Representation::from_parts(alg.clone(), dims, maps)
}

/// `I^i`, the k-dual of the projective at `i` over the opposite algebra.
pub fn indecomposable_injective(alg: &Arc<MonomialAlgebra>, i: usize) -> Representation {
    alg.check_vertex(i);
    let op = Arc::new(opposite(alg));
    let p = indecomposable_projective(&op, i);
    rep::dual(&p).with_algebra(alg.clone())
}

/// The regular module `A_A = ⊕_i P_i`.
pub fn regular_module(alg: &Arc<MonomialAlgebra>) -> Representation {
    let parts: Vec<Representation> = (1..=alg.vertex_count())
        .map(|i| indecomposable_projective(alg, i))
        .collect();
    rep::direct_sum(&parts).expect("same algebra").sum
}

/// Outcome of matching indecomposable projectives against indecomposable
/// injectives.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SelfInjectivity {
    /// Every `P_i` matched to a distinct `I^j` with explicit isomorphisms.
    Certified,
    /// Some `P_i` certainly has no injective partner.
    Refuted,
    /// No matching found, but some negative iso answers were only probable.
    Undecided,
}

pub fn self_injectivity(alg: &Arc<MonomialAlgebra>, options: &IsoOptions) -> SelfInjectivity {
    let n = alg.vertex_count();
    let projectives: Vec<_> = (1..=n).map(|i| indecomposable_projective(alg, i)).collect();
    let injectives: Vec<_> = (1..=n).map(|i| indecomposable_injective(alg, i)).collect();
    // adjacency[i][j]: Some(true) iso, Some(false) certified non-iso, None unknown
    let mut adjacency = vec![vec![None; n]; n];
    for (i, p) in projectives.iter().enumerate() {
        for (j, inj) in injectives.iter().enumerate() {
            let v = rep::is_isomorphic(p, inj, options);
            adjacency[i][j] = if v.is_isomorphic() {
                Some(true)
            } else if v.is_certified() {
                Some(false)
            } else {
                None
            };
        }
    }
    let certain: Vec<Vec<bool>> = adjacency
        .iter()
        .map(|row| row.iter().map(|x| *x == Some(true)).collect())
        .collect();
    if perfect_matching(&certain) {
        return SelfInjectivity::Certified;
    }
    let possible: Vec<Vec<bool>> = adjacency
        .iter()
        .map(|row| row.iter().map(|x| *x != Some(false)).collect())
        .collect();
    if perfect_matching(&possible) {
        SelfInjectivity::Undecided
    } else {
        SelfInjectivity::Refuted
    }
}

/// True iff every indecomposable projective is isomorphic to an
/// indecomposable injective through a bijection of vertices, with certified
/// isomorphisms.
pub fn is_self_injective(alg: &Arc<MonomialAlgebra>) -> bool {
    self_injectivity(alg, &IsoOptions::default()) == SelfInjectivity::Certified
}

fn perfect_matching(adj: &[Vec<bool>]) -> bool {
    fn augment(u: usize, adj: &[Vec<bool>], seen: &mut [bool], matched: &mut [Option<usize>]) -> bool {
        for v in 0..adj[u].len() {
            if adj[u][v] && !seen[v] {
                seen[v] = true;
                if matched[v].is_none_or(|w| augment(w, adj, seen, matched)) {
                    matched[v] = Some(u);
                    return true;
                }
            }
        }
        false
    }
    let n = adj.len();
    let mut matched = vec![None; n];
    (0..n).all(|u| augment(u, adj, &mut vec![false; n], &mut matched))
}
