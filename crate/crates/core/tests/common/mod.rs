//! Independent brute-force reference computations.
//!
//! Every entry of an `n x n` matrix is a symbolic unknown. Applying a map
//! to a basis vector yields a vector of linear forms, brackets are expanded
//! symbolically, and every pair `(i, j)` (both orders) contributes the
//! coefficients of `D[x, y] - [Dx, y] - (-1)^{α|x|}[x, Dy]`. Elimination is a
//! plain dense Gauss-Jordan written here, sharing nothing with the library
//! solver apart from the structure table it reads.

#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use superid::algebra::StructureBuilder;
use superid::{GradedMapSpace, LieSuperalgebra, Parity, SuperDim};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    BigRational::from_integer(BigInt::from(n))
}

/// A linear form in the unknowns: unknown index to coefficient.
type Form = BTreeMap<usize, Q>;

fn add_scaled(acc: &mut Form, f: &Form, c: &Q) {
    if c.is_zero() {
        return;
    }
    for (k, v) in f {
        let e = acc.entry(*k).or_insert_with(Q::zero);
        *e += v * c;
        if e.is_zero() {
            acc.remove(k);
        }
    }
}

fn parity_bit(sdim: SuperDim, i: usize) -> usize {
    usize::from(i >= sdim.even)
}

/// Symbolic matrix `D` with unknown `r * n + c` at entry `(r, c)`.
fn symbolic_image(n: usize, col: usize) -> Vec<Form> {
    (0..n)
        .map(|r| {
            let mut f = Form::new();
            f.insert(r * n + col, Q::one());
            f
        })
        .collect()
}

/// `[u, e_j]` where `u` is a vector of forms.
fn bracket_forms_left(l: &LieSuperalgebra, u: &[Form], j: usize) -> Vec<Form> {
    let n = l.dim();
    let mut out = vec![Form::new(); n];
    for (a, fa) in u.iter().enumerate() {
        if fa.is_empty() {
            continue;
        }
        let v = l.basis_bracket(a, j);
        for (k, c) in v.iter().enumerate() {
            add_scaled(&mut out[k], fa, c);
        }
    }
    out
}

/// `[e_i, u]` where `u` is a vector of forms.
fn bracket_forms_right(l: &LieSuperalgebra, i: usize, u: &[Form]) -> Vec<Form> {
    let n = l.dim();
    let mut out = vec![Form::new(); n];
    for (b, fb) in u.iter().enumerate() {
        if fb.is_empty() {
            continue;
        }
        let v = l.basis_bracket(i, b);
        for (k, c) in v.iter().enumerate() {
            add_scaled(&mut out[k], fb, c);
        }
    }
    out
}

/// Dense Gauss-Jordan; returns (reduced rows, pivot columns).
pub fn gauss_jordan(mut rows: Vec<Vec<Q>>, cols: usize) -> (Vec<Vec<Q>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

pub fn rank(rows: Vec<Vec<Q>>, cols: usize) -> usize {
    gauss_jordan(rows, cols).1.len()
}

/// Basis of `{x : A x = 0}`.
pub fn nullspace(rows: Vec<Vec<Q>>, cols: usize) -> Vec<Vec<Q>> {
    let (reduced, pivots) = gauss_jordan(rows, cols);
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Q::zero(); cols];
            v[free] = Q::one();
            for (row, &p) in reduced.iter().zip(&pivots) {
                v[p] = -row[free].clone();
            }
            v
        })
        .collect()
}

/// Spanning vectors of `L² = span [e_i, e_j]`.
pub fn derived_span(l: &LieSuperalgebra) -> Vec<Vec<Q>> {
    let n = l.dim();
    let mut rows = Vec::new();
    for i in 0..n {
        for j in 0..n {
            rows.push(l.basis_bracket(i, j).clone());
        }
    }
    gauss_jordan(rows, n).0
}

/// Basis of `Z(L)` as the common kernel of all `ad e_j`.
pub fn center_basis(l: &LieSuperalgebra) -> Vec<Vec<Q>> {
    let n = l.dim();
    let mut rows = Vec::new();
    for j in 0..n {
        for k in 0..n {
            rows.push((0..n).map(|x| l.basis_bracket(x, j)[k].clone()).collect());
        }
    }
    nullspace(rows, n)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Der,
    Id,
    IdStar,
}

/// Kernel basis (flattened row-major maps) of the parity-`alpha` part.
pub fn oracle_space(l: &LieSuperalgebra, alpha: usize, kind: Kind) -> Vec<Vec<Q>> {
    let n = l.dim();
    let sdim = l.sdim();
    let unknowns = n * n;
    let mut equations: Vec<Form> = Vec::new();

    for r in 0..n {
        for c in 0..n {
            if parity_bit(sdim, r) != (parity_bit(sdim, c) + alpha) % 2 {
                let mut f = Form::new();
                f.insert(r * n + c, Q::one());
                equations.push(f);
            }
        }
    }

    for i in 0..n {
        for j in 0..n {
            // D[e_i, e_j]
            let mut lhs = vec![Form::new(); n];
            for (a, c) in l.basis_bracket(i, j).iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for (k, f) in symbolic_image(n, a).iter().enumerate() {
                    add_scaled(&mut lhs[k], f, c);
                }
            }
            let first = bracket_forms_left(l, &symbolic_image(n, i), j);
            let second = bracket_forms_right(l, i, &symbolic_image(n, j));
            let sign = if alpha * parity_bit(sdim, i) % 2 == 1 {
                q(-1)
            } else {
                q(1)
            };
            for k in 0..n {
                let mut eq = lhs[k].clone();
                add_scaled(&mut eq, &first[k], &q(-1));
                add_scaled(&mut eq, &second[k], &-sign.clone());
                if !eq.is_empty() {
                    equations.push(eq);
                }
            }
        }
    }

    if kind != Kind::Der {
        // D e_j ∈ L²: every annihilator of L² kills D e_j
        let derived = derived_span(l);
        let annihilators = nullspace(derived, n);
        for w in &annihilators {
            for j in 0..n {
                let mut f = Form::new();
                for (r, c) in w.iter().enumerate() {
                    if !c.is_zero() {
                        f.insert(r * n + j, c.clone());
                    }
                }
                if !f.is_empty() {
                    equations.push(f);
                }
            }
        }
    }
    if kind == Kind::IdStar {
        for z in center_basis(l) {
            for r in 0..n {
                let mut f = Form::new();
                for (c, x) in z.iter().enumerate() {
                    if !x.is_zero() {
                        f.insert(r * n + c, x.clone());
                    }
                }
                if !f.is_empty() {
                    equations.push(f);
                }
            }
        }
    }

    let rows: Vec<Vec<Q>> = equations
        .into_iter()
        .map(|f| {
            let mut row = vec![Q::zero(); unknowns];
            for (k, v) in f {
                row[k] = v;
            }
            row
        })
        .collect();
    nullspace(rows, unknowns)
}

pub fn flatten_space(space: &GradedMapSpace, parity: Parity) -> Vec<Vec<Q>> {
    space
        .basis(parity)
        .iter()
        .map(|m| m.matrix().entries().to_vec())
        .collect()
}

/// Same span: equal ranks and the union adds nothing.
pub fn same_span(a: &[Vec<Q>], b: &[Vec<Q>], cols: usize) -> bool {
    let ra = rank(a.to_vec(), cols);
    let rb = rank(b.to_vec(), cols);
    let union: Vec<Vec<Q>> = a.iter().chain(b).cloned().collect();
    ra == rb && rank(union, cols) == ra
}

/// Structure constants of a supermatrix algebra spanned by `basis`
/// (first `even` matrices even) under the supercommutator.
pub fn matrix_algebra(
    size: usize,
    basis: &[Vec<Vec<i64>>],
    even: usize,
    names: &[&str],
) -> LieSuperalgebra {
    let dim = basis.len();
    let sdim = SuperDim::new(even, dim - even);
    let mats: Vec<Vec<Q>> = basis
        .iter()
        .map(|m| m.iter().flatten().map(|&x| q(x)).collect())
        .collect();
    let mul = |a: &[Q], b: &[Q]| -> Vec<Q> {
        let mut out = vec![Q::zero(); size * size];
        for i in 0..size {
            for k in 0..size {
                for j in 0..size {
                    out[i * size + j] += &a[i * size + k] * &b[k * size + j];
                }
            }
        }
        out
    };
    // coordinates in `mats`: solve by elimination on [mats^T | target]
    let coords = |target: &[Q]| -> Vec<Q> {
        let cols = dim + 1;
        let rows: Vec<Vec<Q>> = (0..size * size)
            .map(|e| {
                let mut row: Vec<Q> = mats.iter().map(|m| m[e].clone()).collect();
                row.push(target[e].clone());
                row
            })
            .collect();
        let (reduced, pivots) = gauss_jordan(rows, cols);
        assert!(!pivots.contains(&dim), "supercommutator leaves the span");
        let mut x = vec![Q::zero(); dim];
        for (row, &p) in reduced.iter().zip(&pivots) {
            x[p] = row[dim].clone();
        }
        x
    };
    let mut b = StructureBuilder::new(sdim).names(names.iter().map(|s| s.to_string()).collect());
    for i in 0..dim {
        for j in i..dim {
            let both_odd = i >= even && j >= even;
            let ab = mul(&mats[i], &mats[j]);
            let ba = mul(&mats[j], &mats[i]);
            let target: Vec<Q> = ab
                .iter()
                .zip(&ba)
                .map(|(x, y)| if both_odd { x + y } else { x - y })
                .collect();
            b.set(i, j, coords(&target)).unwrap();
        }
    }
    b.build().unwrap()
}

fn unit(size: usize, r: usize, c: usize) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0; size]; size];
    m[r][c] = 1;
    m
}

fn combo(size: usize, terms: &[(usize, usize, i64)]) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0; size]; size];
    for &(r, c, x) in terms {
        m[r][c] += x;
    }
    m
}

pub fn sl2() -> LieSuperalgebra {
    matrix_algebra(
        2,
        &[
            combo(2, &[(0, 0, 1), (1, 1, -1)]),
            unit(2, 0, 1),
            unit(2, 1, 0),
        ],
        3,
        &["h", "e", "f"],
    )
}

/// `gl(1|1)` with even coordinate 0 and odd coordinate 1.
pub fn gl11() -> LieSuperalgebra {
    matrix_algebra(
        2,
        &[unit(2, 0, 0), unit(2, 1, 1), unit(2, 0, 1), unit(2, 1, 0)],
        2,
        &["a", "d", "b", "c"],
    )
}

/// `osp(1|2)` inside `gl(1|2)`: `sp(2)` on the odd coordinates 1, 2.
pub fn osp12() -> LieSuperalgebra {
    matrix_algebra(
        3,
        &[
            combo(3, &[(1, 1, 1), (2, 2, -1)]),
            unit(3, 1, 2),
            unit(3, 2, 1),
            combo(3, &[(1, 0, 1), (0, 2, 1)]),
            combo(3, &[(2, 0, 1), (0, 1, -1)]),
        ],
        3,
        &["h", "e", "f", "x", "y"],
    )
}

/// Two-dimensional non-abelian Lie algebra `[h, e] = e` plus an odd `v`
/// with `[h, v] = v`.
pub fn solvable_21() -> LieSuperalgebra {
    let mut b =
        StructureBuilder::new(SuperDim::new(2, 1)).names(vec!["h".into(), "e".into(), "v".into()]);
    b.set(0, 1, vec![q(0), q(1), q(0)]).unwrap();
    b.set(0, 2, vec![q(0), q(0), q(1)]).unwrap();
    b.build().unwrap()
}
