#![allow(dead_code)]

use std::sync::Arc;

use gorenstein::algebra::{cyclic_nakayama, indecomposable_projective, MonomialAlgebra};
use gorenstein::fieldmat::{Field, Matrix};
use gorenstein::rep::{direct_sum, Morphism, Representation};
use gorenstein::resolution::Resolution;
use proptest::prelude::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn field(p: u32) -> Field {
    Field::new(p).unwrap()
}

pub fn cn(n: usize, p: u32) -> Arc<MonomialAlgebra> {
    Arc::new(cyclic_nakayama(n, field(p)).unwrap())
}

/// Radical-square-zero representation of `C_n` from raw dims and entries:
/// whenever two consecutive arrow maps compose to something nonzero the
/// later one is zeroed.
fn rsz_from_entries(alg: &Arc<MonomialAlgebra>, dims: Vec<usize>, mut entries: impl FnMut() -> u32, keep: &[bool]) -> Representation {
    let n = alg.vertex_count();
    let f = alg.field();
    let mut maps: Vec<Matrix> = (0..n)
        .map(|i| {
            let (s, t) = (dims[i], dims[(i + 1) % n]);
            let data: Vec<u32> = (0..s * t).map(|_| entries()).collect();
            if keep[i] {
                Matrix::from_vec(f, t, s, data).unwrap()
            } else {
                Matrix::zeros(f, t, s)
            }
        })
        .collect();
    for i in 0..n {
        let next = (i + 1) % n;
        if !(&maps[next] * &maps[i]).is_zero() {
            let (r, c) = maps[next].shape();
            maps[next] = Matrix::zeros(f, r, c);
        }
    }
    Representation::new(alg.clone(), dims, maps).unwrap()
}

/// Seeded random module over a radical-square-zero `C_n` with total
/// dimension at most `max_total`.
pub fn random_rsz(rng: &mut ChaCha8Rng, alg: &Arc<MonomialAlgebra>, max_total: usize) -> Representation {
    let n = alg.vertex_count();
    let p = alg.field().p();
    let total = rng.gen_range(0..=max_total);
    let mut dims = vec![0; n];
    for _ in 0..total {
        dims[rng.gen_range(0..n)] += 1;
    }
    let keep: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.75)).collect();
    let mut draw: Vec<u32> = (0..max_total * max_total).map(|_| rng.gen_range(0..p)).collect();
    rsz_from_entries(alg, dims, move || draw.pop().unwrap_or(0), &keep)
}

/// Direct sum of one or two random indecomposable projectives.
pub fn random_projective(rng: &mut ChaCha8Rng, alg: &Arc<MonomialAlgebra>) -> Representation {
    let n = alg.vertex_count();
    let count = rng.gen_range(1..=2);
    let parts: Vec<Representation> = (0..count)
        .map(|_| indecomposable_projective(alg, rng.gen_range(1..=n)))
        .collect();
    direct_sum(&parts).unwrap().sum
}

pub fn arb_rsz(n: usize, p: u32, max_total: usize) -> impl Strategy<Value = Representation> {
    prop::collection::vec(0usize..=max_total, n)
        .prop_filter("total dimension bound", move |d| d.iter().sum::<usize>() <= max_total)
        .prop_flat_map(move |dims| {
            let entries: usize = (0..n).map(|i| dims[i] * dims[(i + 1) % n]).sum();
            (
                Just(dims),
                prop::collection::vec(0..p, entries),
                prop::collection::vec(prop::bool::weighted(0.75), n),
            )
        })
        .prop_map(move |(dims, entries, keep)| {
            let alg = cn(n, p);
            let mut it = entries.into_iter();
            rsz_from_entries(&alg, dims, move || it.next().unwrap_or(0), &keep)
        })
}

/// Every representation of the radical-square-zero `C_n` with total
/// dimension at most `max_total`, by brute force over all matrix entries.
pub fn enumerate_rsz(alg: &Arc<MonomialAlgebra>, max_total: usize) -> Vec<Representation> {
    let n = alg.vertex_count();
    let p = alg.field().p() as u64;
    let mut out = Vec::new();
    let mut dims = vec![0usize; n];
    loop {
        if dims.iter().sum::<usize>() <= max_total {
            let entries: usize = (0..n).map(|i| dims[i] * dims[(i + 1) % n]).sum();
            let count = p.pow(entries as u32);
            for code in 0..count {
                let mut c = code;
                let mut maps = Vec::with_capacity(n);
                for i in 0..n {
                    let (s, t) = (dims[i], dims[(i + 1) % n]);
                    let data: Vec<u32> = (0..s * t)
                        .map(|_| {
                            let d = (c % p) as u32;
                            c /= p;
                            d
                        })
                        .collect();
                    maps.push(Matrix::from_vec(alg.field(), t, s, data).unwrap());
                }
                if let Ok(m) = Representation::new(alg.clone(), dims.clone(), maps) {
                    out.push(m);
                }
            }
        }
        // odometer over dims in 0..=max_total
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            dims[i] += 1;
            if dims[i] <= max_total {
                break;
            }
            dims[i] = 0;
            i += 1;
        }
    }
}

pub fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    let f = a.field();
    let (ra, ca) = a.shape();
    let (rb, cb) = b.shape();
    let mut out = Matrix::zeros(f, ra * rb, ca * cb);
    for i in 0..ra {
        for j in 0..ca {
            for k in 0..rb {
                for l in 0..cb {
                    out.set(i * rb + k, j * cb + l, f.mul(a.get(i, j), b.get(k, l)));
                }
            }
        }
    }
    out
}

/// `dim Hom(M, N)` from the vectorized commutation equations
/// `(I ⊗ N_a) vec X_s - (M_a^T ⊗ I) vec X_t = 0`.
pub fn hom_dim_oracle(m: &Representation, n: &Representation) -> usize {
    let alg = m.algebra();
    let f = alg.field();
    let nv = alg.vertex_count();
    let mut offsets = vec![0; nv + 1];
    for v in 0..nv {
        offsets[v + 1] = offsets[v] + m.dims()[v] * n.dims()[v];
    }
    let unknowns = offsets[nv];
    if unknowns == 0 {
        return 0;
    }
    let mut blocks: Vec<Matrix> = Vec::new();
    for (ai, a) in alg.arrows().iter().enumerate() {
        let (s, t) = (a.source - 1, a.target - 1);
        let rows = n.dims()[t] * m.dims()[s];
        if rows == 0 {
            continue;
        }
        let mut eq = Matrix::zeros(f, rows, unknowns);
        let left = kron(&Matrix::identity(f, m.dims()[s]), n.arrow_map(ai));
        let right = kron(&m.arrow_map(ai).transpose(), &Matrix::identity(f, n.dims()[t])).neg();
        let mut add_block = |col0: usize, b: &Matrix| {
            for r in 0..b.rows() {
                for c in 0..b.cols() {
                    let v = f.add(eq.get(r, col0 + c), b.get(r, c));
                    eq.set(r, col0 + c, v);
                }
            }
        };
        add_block(offsets[s], &left);
        add_block(offsets[t], &right);
        blocks.push(eq);
    }
    if blocks.is_empty() {
        return unknowns;
    }
    let refs: Vec<&Matrix> = blocks.iter().collect();
    let system = Matrix::vstack(f, unknowns, &refs);
    unknowns - system.rank()
}

/// `dim Ext^i(M, N)` by dimension shifting along
/// `0 -> Ω^i -> P_{i-1} -> Ω^{i-1} -> 0`:
/// `dim Hom(Ω^i, N) - dim Hom(P_{i-1}, N) + dim Hom(Ω^{i-1}, N)`, where
/// `dim Hom(P_{i-1}, N)` is read off the dimension vector of `N`.
pub fn ext_dim_oracle(m: &Representation, n: &Representation, i: usize) -> usize {
    if i == 0 {
        return hom_dim_oracle(m, n);
    }
    let mut res = Resolution::new(m);
    let upper = res.syzygy(i);
    let lower = res.syzygy(i - 1);
    let hom_p: usize = res.term_vertices(i - 1).iter().map(|&v| n.dim_at(v)).sum();
    hom_dim_oracle(&upper, n) + hom_dim_oracle(&lower, n) - hom_p
}

/// Checks a claimed isomorphism by explicit inversion at every vertex and
/// explicit commutation with every arrow.
pub fn verify_iso_witness(w: &Morphism) -> bool {
    let (s, t) = (w.source(), w.target());
    let alg = s.algebra();
    let f = alg.field();
    for v in 1..=alg.vertex_count() {
        let m = w.at(v);
        if !m.is_square() {
            return false;
        }
        let Some(inv) = m.inverse() else { return false };
        let id = Matrix::identity(f, m.rows());
        if &inv * m != id || m * &inv != id {
            return false;
        }
    }
    alg.arrows().iter().enumerate().all(|(ai, a)| {
        let lhs = t.arrow_map(ai) * w.at(a.source);
        let rhs = w.at(a.target) * s.arrow_map(ai);
        lhs == rhs
    })
}

fn all_invertible(f: Field, d: usize) -> Vec<Matrix> {
    let p = f.p() as u64;
    let count = p.pow((d * d) as u32);
    (0..count)
        .filter_map(|mut c| {
            let data: Vec<u32> = (0..d * d)
                .map(|_| {
                    let x = (c % p) as u32;
                    c /= p;
                    x
                })
                .collect();
            let m = Matrix::from_vec(f, d, d, data).unwrap();
            m.is_invertible().then_some(m)
        })
        .collect()
}

/// Exhaustive isomorphism test over every tuple of invertible vertex maps.
/// Only for very small dimensions.
pub fn brute_force_isomorphic(m: &Representation, n: &Representation) -> bool {
    if m.dims() != n.dims() {
        return false;
    }
    let alg = m.algebra();
    let f = alg.field();
    let choices: Vec<Vec<Matrix>> = m.dims().iter().map(|&d| all_invertible(f, d)).collect();
    let mut idx = vec![0usize; choices.len()];
    loop {
        let pick: Vec<&Matrix> = idx.iter().zip(&choices).map(|(&i, c)| &c[i]).collect();
        let ok = alg.arrows().iter().enumerate().all(|(ai, a)| {
            n.arrow_map(ai) * pick[a.source - 1] == pick[a.target - 1] * m.arrow_map(ai)
        });
        if ok {
            return true;
        }
        let mut k = 0;
        loop {
            if k == idx.len() {
                return false;
            }
            idx[k] += 1;
            if idx[k] < choices[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Number of nonzero paths (trivial ones included) by depth-first search
/// over arrow words, rejecting any word containing a relation as a factor.
pub fn count_paths_oracle(alg: &MonomialAlgebra) -> usize {
    let rels: Vec<Vec<usize>> = alg.relations().to_vec();
    let arrows = alg.arrows();
    fn extend(word: &mut Vec<usize>, arrows: &[gorenstein::algebra::Arrow], rels: &[Vec<usize>]) -> usize {
        let mut count = 1;
        let end = arrows[*word.last().unwrap()].target;
        for (i, a) in arrows.iter().enumerate() {
            if a.source != end {
                continue;
            }
            word.push(i);
            let killed = rels.iter().any(|r| word.ends_with(r));
            if !killed {
                assert!(word.len() < 64, "path search runaway");
                count += extend(word, arrows, rels);
            }
            word.pop();
        }
        count
    }
    let mut total = alg.vertex_count();
    for i in 0..arrows.len() {
        let mut word = vec![i];
        if !rels.iter().any(|r| r == &word) {
            total += extend(&mut word, arrows, &rels);
        }
    }
    total
}
