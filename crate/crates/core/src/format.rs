//! Line-based text formats for algebras and modules.
//!
//! Algebra files:
//!
//! ```text
//! # comments run to end of line
//! field p=2
//! vertices 3
//! arrow a1 1 2
//! arrow a2 2 3
//! arrow a3 3 1
//! relation a1 a2
//! relation a2 a3
//! relation a3 a1
//! ```
//!
//! `nakayama cyclic <n>` may replace the `vertices`/`arrow`/`relation`
//! lines. Relations list arrows in traversal order.
//!
//! Module files:
//!
//! ```text
//! module P1
//! dim 1 1 0
//! map a1 1
//! ```
//!
//! Matrix rows are separated by `;`, entries by spaces; `map <arrow> zero`
//! and omitted maps are zero. A file may instead list builtins
//! (`simple <i>`, `proj <i>`, `inj <i>`), one per line, whose direct sum is
//! the module.
//!
//! Inputs larger than [`MAX_VERTICES`] vertices or [`MAX_MODULE_DIM`] total
//! module dimension are rejected before anything is allocated.

use std::fmt::Write as _;
use std::sync::Arc;

use thiserror::Error;

use crate::algebra::{
    build_monomial_algebra, cyclic_nakayama, indecomposable_injective, indecomposable_projective, AlgebraError,
    Arrow, MonomialAlgebra, Quiver,
};
use crate::fieldmat::{Field, Matrix};
use crate::rep::{direct_sum, simple, RepError, Representation};

pub const MAX_VERTICES: usize = crate::algebra::DEFAULT_PATH_CAP;
pub const MAX_MODULE_DIM: usize = 1024;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    /// 1-based; 0 when the error is not tied to a line.
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        message: message.into(),
    })
}

/// Non-empty lines with comments removed, paired with 1-based line numbers.
fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("");
        let toks: Vec<&str> = l.split_whitespace().collect();
        (!toks.is_empty()).then_some((i + 1, toks))
    })
}

fn parse_usize(tok: &str, line: usize, what: &str) -> Result<usize, ParseError> {
    tok.parse::<usize>()
        .or_else(|_| err(line, format!("{what}: expected a non-negative integer, found `{tok}`")))
}

fn expect_len(toks: &[&str], n: usize, line: usize, usage: &str) -> Result<(), ParseError> {
    if toks.len() != n {
        return err(line, format!("expected `{usage}`"));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Section {
    Start,
    Field,
    Vertices,
    Arrows,
    Relations,
    Builtin,
}

fn advance(section: &mut Section, next: Section, line: usize, keyword: &str) -> Result<(), ParseError> {
    let ok = match next {
        Section::Arrows | Section::Relations => *section <= next && *section >= Section::Vertices,
        Section::Builtin => *section <= Section::Field,
        _ => *section < next,
    };
    if !ok {
        return err(line, format!("`{keyword}` is out of order"));
    }
    *section = next;
    Ok(())
}

/// Parses an algebra file. `default_prime` is used when the file has no
/// `field` line.
pub fn parse_algebra_file_with(text: &str, default_prime: u32) -> Result<MonomialAlgebra, ParseError> {
    let mut section = Section::Start;
    let mut prime = default_prime;
    let mut prime_line = 0;
    let mut vertices = 0;
    let mut vertices_line = 0;
    let mut arrows: Vec<Arrow> = Vec::new();
    let mut arrow_lines: Vec<usize> = Vec::new();
    let mut relations: Vec<Vec<String>> = Vec::new();
    let mut relation_lines: Vec<usize> = Vec::new();
    let mut builtin: Option<(usize, usize)> = None;

    for (line, toks) in lines(text) {
        match toks[0] {
            "field" => {
                advance(&mut section, Section::Field, line, "field")?;
                expect_len(&toks, 2, line, "field p=<prime>")?;
                let Some(v) = toks[1].strip_prefix("p=") else {
                    return err(line, "expected `field p=<prime>`");
                };
                prime = v
                    .parse::<u32>()
                    .or_else(|_| err(line, format!("bad prime `{v}`")))?;
                prime_line = line;
            }
            "vertices" => {
                advance(&mut section, Section::Vertices, line, "vertices")?;
                expect_len(&toks, 2, line, "vertices <n>")?;
                vertices = parse_usize(toks[1], line, "vertex count")?;
                if vertices > MAX_VERTICES {
                    return err(line, format!("at most {MAX_VERTICES} vertices are supported"));
                }
                vertices_line = line;
            }
            "arrow" => {
                advance(&mut section, Section::Arrows, line, "arrow")?;
                expect_len(&toks, 4, line, "arrow <name> <source> <target>")?;
                arrows.push(Arrow {
                    name: toks[1].to_string(),
                    source: parse_usize(toks[2], line, "arrow source")?,
                    target: parse_usize(toks[3], line, "arrow target")?,
                });
                arrow_lines.push(line);
            }
            "relation" => {
                advance(&mut section, Section::Relations, line, "relation")?;
                if toks.len() < 3 {
                    return err(line, "a relation needs at least two arrows");
                }
                relations.push(toks[1..].iter().map(|s| s.to_string()).collect());
                relation_lines.push(line);
            }
            "nakayama" => {
                advance(&mut section, Section::Builtin, line, "nakayama")?;
                expect_len(&toks, 3, line, "nakayama cyclic <n>")?;
                if toks[1] != "cyclic" {
                    return err(line, format!("unknown builtin family `{}`", toks[1]));
                }
                let n = parse_usize(toks[2], line, "cycle length")?;
                if n > MAX_VERTICES {
                    return err(line, format!("at most {MAX_VERTICES} vertices are supported"));
                }
                builtin = Some((n, line));
            }
            other => return err(line, format!("unknown keyword `{other}`")),
        }
    }

    let field = Field::new(prime).or_else(|_| err(prime_line, format!("{prime} is not a prime")))?;
    if let Some((n, line)) = builtin {
        return cyclic_nakayama(n, field).or_else(|e| err(line, e.to_string()));
    }
    if section < Section::Vertices {
        return err(0, "missing `vertices` line");
    }
    let arrow_names: Vec<String> = arrows.iter().map(|a| a.name.clone()).collect();
    let quiver = Quiver::new(vertices, arrows).or_else(|e| {
        let line = match &e {
            AlgebraError::DuplicateArrow(name) => arrow_names.iter().rposition(|a| a == name).map(|i| arrow_lines[i]),
            AlgebraError::VertexOutOfRange { arrow, .. } => {
                arrow_names.iter().position(|a| a == arrow).map(|i| arrow_lines[i])
            }
            _ => None,
        };
        err(line.unwrap_or(vertices_line), e.to_string())
    })?;
    build_monomial_algebra(field, quiver, &relations).or_else(|e| {
        let line = match &e {
            AlgebraError::RelationTooShort { index, .. } | AlgebraError::NonComposable { index, .. } => {
                relation_lines[*index]
            }
            AlgebraError::UnknownArrow(name) => relations
                .iter()
                .position(|r| r.contains(name))
                .map_or(0, |i| relation_lines[i]),
            _ => 0,
        };
        err(line, e.to_string())
    })
}

pub fn parse_algebra_file(text: &str) -> Result<MonomialAlgebra, ParseError> {
    parse_algebra_file_with(text, 2)
}

pub fn write_algebra_file(alg: &MonomialAlgebra) -> String {
    let mut out = String::new();
    writeln!(out, "field p={}", alg.field().p()).unwrap();
    writeln!(out, "vertices {}", alg.vertex_count()).unwrap();
    for a in alg.arrows() {
        writeln!(out, "arrow {} {} {}", a.name, a.source, a.target).unwrap();
    }
    for i in 0..alg.relations().len() {
        writeln!(out, "relation {}", alg.relation_names(i).join(" ")).unwrap();
    }
    out
}

/// A parsed module together with its declared name.
#[derive(Debug, Clone)]
pub struct NamedModule {
    pub name: Option<String>,
    pub module: Representation,
}

/// Builds one builtin module: `simple`, `proj` or `inj` at a vertex.
pub fn builtin_module(alg: &Arc<MonomialAlgebra>, kind: &str, vertex: usize) -> Result<Representation, String> {
    let n = alg.vertex_count();
    if !(1..=n).contains(&vertex) {
        return Err(format!("vertex {vertex} outside 1..={n}"));
    }
    match kind {
        "simple" => Ok(simple(alg, vertex)),
        "proj" => Ok(indecomposable_projective(alg, vertex)),
        "inj" => Ok(indecomposable_injective(alg, vertex)),
        other => Err(format!("unknown builtin module `{other}`")),
    }
}

fn parse_row(field: Field, row: &str, line: usize, label: &str) -> Result<Vec<u32>, ParseError> {
    row.split_whitespace()
        .map(|t| {
            let v = t
                .parse::<u32>()
                .or_else(|_| err(line, format!("map {label}: bad entry `{t}`")))?;
            if v >= field.p() {
                return err(line, format!("map {label}: entry {v} is not reduced mod {}", field.p()));
            }
            Ok(v)
        })
        .collect()
}

pub fn parse_module_file(text: &str, alg: &Arc<MonomialAlgebra>) -> Result<NamedModule, ParseError> {
    let field = alg.field();
    let mut name = None;
    let mut dims: Option<Vec<usize>> = None;
    let mut maps: Vec<Option<(Matrix, usize)>> = vec![None; alg.arrows().len()];
    let mut builtins: Vec<Representation> = Vec::new();
    let mut builtin_dim = 0;
    let mut last_line = 0;

    for (line, toks) in lines(text) {
        last_line = line;
        match toks[0] {
            "module" => {
                if name.is_some() || dims.is_some() || !builtins.is_empty() {
                    return err(line, "`module` must come first and only once");
                }
                expect_len(&toks, 2, line, "module <name>")?;
                name = Some(toks[1].to_string());
            }
            "dim" => {
                if dims.is_some() || !builtins.is_empty() {
                    return err(line, "`dim` must appear once, before any `map`, without builtins");
                }
                let d: Vec<usize> = toks[1..]
                    .iter()
                    .map(|t| parse_usize(t, line, "dimension"))
                    .collect::<Result<_, _>>()?;
                if d.len() != alg.vertex_count() {
                    return err(
                        line,
                        format!("expected {} dimensions, found {}", alg.vertex_count(), d.len()),
                    );
                }
                if d.iter().try_fold(0usize, |acc, &x| acc.checked_add(x)).is_none_or(|t| t > MAX_MODULE_DIM) {
                    return err(line, format!("total dimension above {MAX_MODULE_DIM} is not supported"));
                }
                dims = Some(d);
            }
            "map" => {
                let Some(d) = &dims else {
                    return err(line, "`map` before `dim`");
                };
                if toks.len() < 2 {
                    return err(line, "expected `map <arrow> <rows>` or `map <arrow> zero`");
                }
                let label = toks[1];
                let Some(ai) = alg.quiver().arrow_index(label) else {
                    return err(line, format!("unknown arrow `{label}`"));
                };
                if maps[ai].is_some() {
                    return err(line, format!("map {label} given twice"));
                }
                let a = &alg.arrows()[ai];
                let (r, c) = (d[a.target - 1], d[a.source - 1]);
                let m = if toks[2..] == ["zero"] {
                    Matrix::zeros(field, r, c)
                } else {
                    let body = toks[2..].join(" ");
                    let rows: Vec<Vec<u32>> = if body.trim().is_empty() {
                        Vec::new()
                    } else {
                        body.split(';')
                            .map(|row| parse_row(field, row, line, label))
                            .collect::<Result<_, _>>()?
                    };
                    if rows.len() != r || rows.iter().any(|row| row.len() != c) {
                        let found_cols = rows.first().map_or(0, Vec::len);
                        return err(
                            line,
                            format!(
                                "map {label}: expected a {r}x{c} matrix, found {} rows of {found_cols} entries",
                                rows.len()
                            ),
                        );
                    }
                    Matrix::from_rows(field, c, &rows).or_else(|e| err(line, e.to_string()))?
                };
                maps[ai] = Some((m, line));
            }
            kind @ ("simple" | "proj" | "inj") => {
                if dims.is_some() {
                    return err(line, "builtins cannot be mixed with `dim`/`map`");
                }
                expect_len(&toks, 2, line, &format!("{kind} <vertex>"))?;
                let v = parse_usize(toks[1], line, "vertex")?;
                let m = builtin_module(alg, kind, v).or_else(|e| err(line, e))?;
                builtin_dim += m.total_dim();
                if builtin_dim > MAX_MODULE_DIM {
                    return err(line, format!("total dimension above {MAX_MODULE_DIM} is not supported"));
                }
                builtins.push(m);
            }
            other => return err(line, format!("unknown keyword `{other}`")),
        }
    }

    if !builtins.is_empty() {
        let module = direct_sum(&builtins).expect("same algebra").sum;
        return Ok(NamedModule { name, module });
    }
    let Some(dims) = dims else {
        return err(last_line, "missing `dim` line");
    };
    let mut lines_of = vec![last_line; maps.len()];
    let maps: Vec<Matrix> = maps
        .into_iter()
        .zip(alg.arrows())
        .enumerate()
        .map(|(i, (m, a))| match m {
            Some((m, line)) => {
                lines_of[i] = line;
                m
            }
            None => Matrix::zeros(field, dims[a.target - 1], dims[a.source - 1]),
        })
        .collect();
    let module = Representation::new(alg.clone(), dims, maps).or_else(|e| {
        let line = match &e {
            RepError::RelationViolated { index, .. } => {
                let first = alg.relations()[*index][0];
                lines_of[first]
            }
            _ => last_line,
        };
        err(line, e.to_string())
    })?;
    Ok(NamedModule { name, module })
}

fn write_matrix(out: &mut String, m: &Matrix) {
    let rows: Vec<String> = (0..m.rows())
        .map(|r| m.row(r).iter().map(u32::to_string).collect::<Vec<_>>().join(" "))
        .collect();
    out.push_str(&rows.join(" ; "));
}

/// Serializes a module explicitly. Maps between nonzero spaces are always
/// written; all-zero ones as `zero`.
pub fn write_module_file(name: &str, m: &Representation) -> String {
    let mut out = String::new();
    writeln!(out, "module {name}").unwrap();
    let dims: Vec<String> = m.dims().iter().map(usize::to_string).collect();
    writeln!(out, "dim {}", dims.join(" ")).unwrap();
    for (a, mat) in m.algebra().arrows().iter().zip(m.maps()) {
        if mat.rows() == 0 || mat.cols() == 0 {
            continue;
        }
        write!(out, "map {} ", a.name).unwrap();
        if mat.is_zero() {
            out.push_str("zero");
        } else {
            write_matrix(&mut out, mat);
        }
        out.push('\n');
    }
    out
}
