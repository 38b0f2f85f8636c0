//! Superderivations and the chain `ad(L) ≤ ID*(L) ≤ ID(L) ≤ Der(L)`.
//!
//! A parity-`α` map `D` is a superderivation when
//! `D[x, y] = [D x, y] + (-1)^{α|x|} [x, D y]` for all homogeneous `x, y`.
//! The solver treats the entries of the two parity-allowed blocks of `D` as
//! unknowns and imposes that rule on basis pairs, plus the linear side
//! conditions defining `ID` (image in `L²`) and `ID*` (also kills `Z(L)`).

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{
    koszul_sign, AlgebraError, Element, LieSuperalgebra, Parity, Subspace, SuperDim,
};
use crate::linalg::{
    self, is_zero_vector, scalar, LinalgError, Matrix, RowReducer, Scalar, Vector,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DerivationError {
    #[error("maps act on different algebras: {left} vs {right}")]
    AmbientMismatch { left: SuperDim, right: SuperDim },
    #[error("matrix is {rows}x{cols}, expected a square matrix of size {expected}")]
    Shape {
        rows: usize,
        cols: usize,
        expected: usize,
    },
    #[error("{parity} map has a nonzero entry at ({row}, {col}) outside its parity blocks")]
    ParityBlocks {
        parity: Parity,
        row: usize,
        col: usize,
    },
    #[error("ad needs a homogeneous element")]
    NotHomogeneous,
    #[error("algebra is not nilpotent; the minimal generator pair of L/Z(L) is not determined")]
    NotNilpotent,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Parity-homogeneous endomorphism; column `i` is the image of `e_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SuperLinearMap {
    sdim: SuperDim,
    parity: Parity,
    matrix: Matrix,
}

impl SuperLinearMap {
    pub fn new(sdim: SuperDim, parity: Parity, matrix: Matrix) -> Result<Self, DerivationError> {
        let n = sdim.total();
        if matrix.rows() != n || matrix.cols() != n {
            return Err(DerivationError::Shape {
                rows: matrix.rows(),
                cols: matrix.cols(),
                expected: n,
            });
        }
        for col in 0..n {
            for row in 0..n {
                if !matrix[(row, col)].is_zero()
                    && sdim.parity_of(row) != sdim.parity_of(col) + parity
                {
                    return Err(DerivationError::ParityBlocks { parity, row, col });
                }
            }
        }
        Ok(Self {
            sdim,
            parity,
            matrix,
        })
    }

    pub fn zero(sdim: SuperDim, parity: Parity) -> Self {
        let n = sdim.total();
        Self {
            sdim,
            parity,
            matrix: Matrix::zeros(n, n),
        }
    }

    pub fn sdim(&self) -> SuperDim {
        self.sdim
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// Image of `e_i`.
    pub fn column(&self, i: usize) -> Vector {
        self.matrix.column(i)
    }

    pub fn apply(&self, v: &[Scalar]) -> Result<Vector, DerivationError> {
        Ok(self.matrix.mul_vec(v)?)
    }

    /// Row-major entries, used for spans of maps.
    pub fn flatten(&self) -> Vector {
        self.matrix.entries().to_vec()
    }

    fn from_flat(sdim: SuperDim, parity: Parity, flat: &[Scalar]) -> Self {
        let n = sdim.total();
        let rows: Vec<Vector> = flat.chunks(n).map(|c| c.to_vec()).collect();
        Self::new(sdim, parity, Matrix::from_rows(&rows, n).expect("square"))
            .expect("flattened map keeps its parity")
    }
}

/// `[D, E] = DE - (-1)^{|D||E|} ED`
pub fn map_bracket(
    d: &SuperLinearMap,
    e: &SuperLinearMap,
) -> Result<SuperLinearMap, DerivationError> {
    if d.sdim != e.sdim {
        return Err(DerivationError::AmbientMismatch {
            left: d.sdim,
            right: e.sdim,
        });
    }
    let de = d.matrix.mul(&e.matrix)?;
    let ed = e.matrix.mul(&d.matrix)?;
    let m = de.sub(&ed.scale(&scalar(koszul_sign(d.parity, e.parity))))?;
    SuperLinearMap::new(d.sdim, d.parity + e.parity, m)
}

/// Graded space of maps, one basis list per parity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedMapSpace {
    sdim: SuperDim,
    even: Vec<SuperLinearMap>,
    odd: Vec<SuperLinearMap>,
}

impl GradedMapSpace {
    /// Takes bases as given; callers guarantee independence within each parity.
    fn from_bases(sdim: SuperDim, even: Vec<SuperLinearMap>, odd: Vec<SuperLinearMap>) -> Self {
        Self { sdim, even, odd }
    }

    /// Canonical (rref) basis of the span of the given homogeneous maps.
    pub fn from_spanning(sdim: SuperDim, maps: &[SuperLinearMap]) -> Result<Self, DerivationError> {
        let n = sdim.total();
        let mut out = [Vec::new(), Vec::new()];
        for parity in Parity::both() {
            let mut flats = Vec::new();
            for m in maps.iter().filter(|m| m.parity == parity) {
                if m.sdim != sdim {
                    return Err(DerivationError::AmbientMismatch {
                        left: sdim,
                        right: m.sdim,
                    });
                }
                flats.push(m.flatten());
            }
            let space = linalg::row_space(&flats, n * n)?;
            out[parity.bit() as usize] = space
                .row_vectors()
                .iter()
                .map(|r| SuperLinearMap::from_flat(sdim, parity, r))
                .collect();
        }
        let [even, odd] = out;
        Ok(Self { sdim, even, odd })
    }

    pub fn ambient(&self) -> SuperDim {
        self.sdim
    }

    pub fn sdim(&self) -> SuperDim {
        SuperDim::new(self.even.len(), self.odd.len())
    }

    pub fn basis(&self, parity: Parity) -> &[SuperLinearMap] {
        match parity {
            Parity::Even => &self.even,
            Parity::Odd => &self.odd,
        }
    }

    pub fn maps(&self) -> impl Iterator<Item = &SuperLinearMap> {
        self.even.iter().chain(self.odd.iter())
    }

    fn span(&self, parity: Parity) -> Matrix {
        let n = self.sdim.total();
        let flats: Vec<Vector> = self.basis(parity).iter().map(|m| m.flatten()).collect();
        linalg::row_space(&flats, n * n).expect("flattened maps")
    }

    pub fn contains(&self, map: &SuperLinearMap) -> bool {
        map.sdim == self.sdim
            && (map.is_zero()
                || linalg::contains(&self.span(map.parity), &map.flatten()).expect("lengths"))
    }

    pub fn contains_space(&self, other: &GradedMapSpace) -> bool {
        if other.sdim != self.sdim {
            return false;
        }
        Parity::both().into_iter().all(|p| {
            let span = SparseSpan::new(&self.span(p));
            other
                .basis(p)
                .iter()
                .all(|m| span.contains(SparseColumns::new(&m.matrix).flat(self.sdim.total())))
        })
    }

    /// Every bracket of two basis maps lies in the space again.
    pub fn is_closed_under_bracket(&self) -> bool {
        let n = self.sdim.total();
        let spans = [
            SparseSpan::new(&self.span(Parity::Even)),
            SparseSpan::new(&self.span(Parity::Odd)),
        ];
        let all: Vec<(Parity, SparseColumns)> = self
            .maps()
            .map(|m| (m.parity, SparseColumns::new(&m.matrix)))
            .collect();
        for (a, (pd, d)) in all.iter().enumerate() {
            for (pe, e) in &all[a..] {
                let b = sparse_bracket(n, d, e, koszul_sign(*pd, *pe));
                if !b.is_empty() && !spans[(*pd + *pe).bit() as usize].contains(b) {
                    return false;
                }
            }
        }
        true
    }
}

/// Nonzero entries of each column of a square matrix.
struct SparseColumns(Vec<Vec<(usize, Scalar)>>);

impl SparseColumns {
    fn new(m: &Matrix) -> Self {
        Self(
            (0..m.cols())
                .map(|c| {
                    (0..m.rows())
                        .filter(|&r| !m[(r, c)].is_zero())
                        .map(|r| (r, m[(r, c)].clone()))
                        .collect()
                })
                .collect(),
        )
    }

    /// Row-major flat index to value.
    fn flat(&self, n: usize) -> BTreeMap<usize, Scalar> {
        let mut out = BTreeMap::new();
        for (c, col) in self.0.iter().enumerate() {
            for (r, x) in col {
                out.insert(r * n + c, x.clone());
            }
        }
        out
    }
}

/// `DE - sign ED` as a sparse row-major flattening.
fn sparse_bracket(
    n: usize,
    d: &SparseColumns,
    e: &SparseColumns,
    sign: i64,
) -> BTreeMap<usize, Scalar> {
    let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
    let mut product = |left: &SparseColumns, right: &SparseColumns, factor: &Scalar| {
        for (j, col) in right.0.iter().enumerate() {
            for (k, y) in col {
                let fy = factor * y;
                for (i, x) in &left.0[*k] {
                    *acc.entry(i * n + j).or_insert_with(Scalar::zero) += x * &fy;
                }
            }
        }
    };
    product(d, e, &scalar(1));
    product(e, d, &scalar(-sign));
    acc.retain(|_, x| !x.is_zero());
    acc
}

/// Rows of an rref matrix kept sparse, for fast membership tests.
struct SparseSpan {
    rows: Vec<Vec<(usize, Scalar)>>,
    pivot_row: BTreeMap<usize, usize>,
}

impl SparseSpan {
    fn new(rref: &Matrix) -> Self {
        let mut rows = Vec::new();
        let mut pivot_row = BTreeMap::new();
        for r in 0..rref.rows() {
            let row: Vec<(usize, Scalar)> = rref
                .row(r)
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(c, x)| (c, x.clone()))
                .collect();
            if let Some(&(p, _)) = row.first() {
                pivot_row.insert(p, rows.len());
                rows.push(row);
            }
        }
        Self { rows, pivot_row }
    }

    /// In reduced form a vector of the span is the combination of rows with
    /// its own pivot coordinates as coefficients.
    fn contains(&self, mut v: BTreeMap<usize, Scalar>) -> bool {
        let coefficients: Vec<(usize, Scalar)> = v
            .iter()
            .filter_map(|(c, x)| self.pivot_row.get(c).map(|&r| (r, x.clone())))
            .collect();
        for (r, f) in coefficients {
            for (c, x) in &self.rows[r] {
                *v.entry(*c).or_insert_with(Scalar::zero) -= &f * x;
            }
        }
        v.values().all(|x| x.is_zero())
    }
}

/// Enumerates the unknown entries `(row, col)` of a parity-`α` map.
struct UnknownLayout {
    n: usize,
    index: Vec<Option<usize>>,
    entries: Vec<(usize, usize)>,
}

impl UnknownLayout {
    fn new(sdim: SuperDim, parity: Parity) -> Self {
        let n = sdim.total();
        let mut index = vec![None; n * n];
        let mut entries = Vec::new();
        for col in 0..n {
            for row in sdim.block(sdim.parity_of(col) + parity) {
                index[row * n + col] = Some(entries.len());
                entries.push((row, col));
            }
        }
        Self { n, index, entries }
    }

    fn at(&self, row: usize, col: usize) -> Option<usize> {
        self.index[row * self.n + col]
    }

    fn len(&self) -> usize {
        self.entries.len()
    }
}

/// Side conditions on top of the super-Leibniz rule.
#[derive(Debug, Clone, Copy, Default)]
pub struct Constraints<'a> {
    /// Every column must lie in this subspace.
    pub image_in: Option<&'a Subspace>,
    /// Every vector of this subspace must be mapped to zero.
    pub kills: Option<&'a Subspace>,
}

/// Canonical kernel basis of the constraint system for parity-`α` maps.
pub fn solve_derivations(
    l: &LieSuperalgebra,
    parity: Parity,
    constraints: Constraints<'_>,
) -> Vec<SuperLinearMap> {
    let sdim = l.sdim();
    let n = sdim.total();
    let layout = UnknownLayout::new(sdim, parity);
    let mut reducer = RowReducer::new(layout.len());

    for i in 0..n {
        // (j, i) with j < i follows from (i, j) by skew-symmetry; (i, i)
        // is automatic for even i.
        let start = if l.parity(i).is_odd() { i } else { i + 1 };
        let sign = scalar(if parity.is_odd() && l.parity(i).is_odd() {
            -1
        } else {
            1
        });
        for j in start..n {
            let mut rows: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); n];
            // D[e_i, e_j]
            for (a, c) in l.basis_bracket(i, j).iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for (k, row) in rows.iter_mut().enumerate() {
                    if let Some(u) = layout.at(k, a) {
                        row.push((u, c.clone()));
                    }
                }
            }
            // - [D e_i, e_j]
            for b in 0..n {
                let Some(u) = layout.at(b, i) else { continue };
                for (k, c) in l.basis_bracket(b, j).iter().enumerate() {
                    if !c.is_zero() {
                        rows[k].push((u, -c.clone()));
                    }
                }
            }
            // - (-1)^{α|i|} [e_i, D e_j]
            for b in 0..n {
                let Some(u) = layout.at(b, j) else { continue };
                for (k, c) in l.basis_bracket(i, b).iter().enumerate() {
                    if !c.is_zero() {
                        rows[k].push((u, -(c * &sign)));
                    }
                }
            }
            for row in rows {
                if !row.is_empty() {
                    reducer.push(row);
                }
            }
        }
    }

    if let Some(w) = constraints.image_in {
        let r = w.residual_matrix();
        for i in 0..n {
            for k in 0..n {
                let row: Vec<(usize, Scalar)> = (0..n)
                    .filter_map(|b| {
                        let u = layout.at(b, i)?;
                        let c = &r[(k, b)];
                        (!c.is_zero()).then(|| (u, c.clone()))
                    })
                    .collect();
                if !row.is_empty() {
                    reducer.push(row);
                }
            }
        }
    }

    if let Some(z) = constraints.kills {
        for v in z.basis() {
            for k in 0..n {
                let row: Vec<(usize, Scalar)> = (0..n)
                    .filter(|&i| !v[i].is_zero())
                    .filter_map(|i| Some((layout.at(k, i)?, v[i].clone())))
                    .collect();
                if !row.is_empty() {
                    reducer.push(row);
                }
            }
        }
    }

    reducer
        .kernel_basis()
        .into_iter()
        .map(|sol| {
            let mut m = Matrix::zeros(n, n);
            for (u, x) in sol.into_iter().enumerate() {
                if !x.is_zero() {
                    let (row, col) = layout.entries[u];
                    m[(row, col)] = x;
                }
            }
            SuperLinearMap::new(sdim, parity, m).expect("layout respects parity")
        })
        .collect()
}

/// `Der_α(L)`
pub fn derivation_space(l: &LieSuperalgebra, parity: Parity) -> Vec<SuperLinearMap> {
    solve_derivations(l, parity, Constraints::default())
}

fn graded(l: &LieSuperalgebra, constraints: Constraints<'_>) -> GradedMapSpace {
    GradedMapSpace::from_bases(
        l.sdim(),
        solve_derivations(l, Parity::Even, constraints),
        solve_derivations(l, Parity::Odd, constraints),
    )
}

pub fn der(l: &LieSuperalgebra) -> GradedMapSpace {
    graded(l, Constraints::default())
}

/// Superderivations with `D(L) ⊆ L²`.
pub fn id_derivations(l: &LieSuperalgebra) -> GradedMapSpace {
    let derived = l.derived_subalgebra();
    graded(
        l,
        Constraints {
            image_in: Some(&derived),
            kills: None,
        },
    )
}

/// Superderivations with `D(L) ⊆ L²` and `D(Z(L)) = 0`.
pub fn id_star(l: &LieSuperalgebra) -> GradedMapSpace {
    let derived = l.derived_subalgebra();
    let center = l.center();
    graded(
        l,
        Constraints {
            image_in: Some(&derived),
            kills: Some(&center),
        },
    )
}

/// `ad x : y ↦ [x, y]`
pub fn ad_map(l: &LieSuperalgebra, x: &Element) -> Result<SuperLinearMap, DerivationError> {
    let parity = x
        .homogeneous_parity()
        .ok_or(DerivationError::NotHomogeneous)?;
    let n = l.dim();
    if x.coords().len() != n {
        return Err(AlgebraError::DimensionMismatch {
            expected: n,
            found: x.coords().len(),
        }
        .into());
    }
    let columns: Vec<Vector> = (0..n)
        .map(|j| l.bracket_vectors(x.coords(), &linalg::unit_vector(n, j)))
        .collect();
    SuperLinearMap::new(l.sdim(), parity, Matrix::from_columns(&columns, n)?)
}

/// `ad(L)` with canonical basis.
pub fn ad_space(l: &LieSuperalgebra) -> GradedMapSpace {
    let maps: Vec<SuperLinearMap> = (0..l.dim())
        .map(|i| ad_map(l, &Element::basis(l.sdim(), i)).expect("basis vectors are homogeneous"))
        .collect();
    GradedMapSpace::from_spanning(l.sdim(), &maps).expect("same ambient")
}

/// Direct check of the super-Leibniz rule on all basis pairs.
pub fn is_superderivation(l: &LieSuperalgebra, d: &SuperLinearMap) -> bool {
    let n = l.dim();
    if d.sdim != l.sdim() {
        return false;
    }
    let images: Vec<Vector> = (0..n).map(|i| d.column(i)).collect();
    for i in 0..n {
        let ei = linalg::unit_vector(n, i);
        let s = scalar(koszul_sign(d.parity, l.parity(i)));
        for j in 0..n {
            let ej = linalg::unit_vector(n, j);
            let lhs = d.apply(l.basis_bracket(i, j)).expect("dims");
            let mut rhs = l.bracket_vectors(&images[i], &ej);
            linalg::axpy(&mut rhs, &s, &l.bracket_vectors(&ei, &images[j]));
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

/// `λ(K; p, q) = (p·dim K_0 + q·dim K_1, q·dim K_0 + p·dim K_1)`
pub fn lambda_bound(k: SuperDim, p: usize, q: usize) -> SuperDim {
    SuperDim::new(p * k.even + q * k.odd, q * k.even + p * k.odd)
}

/// The four spaces of the chain, computed together.
#[derive(Debug, Clone)]
pub struct DerivationTower {
    pub derived: Subspace,
    pub center: Subspace,
    pub der: GradedMapSpace,
    pub id: GradedMapSpace,
    pub id_star: GradedMapSpace,
    pub ad: GradedMapSpace,
}

impl DerivationTower {
    pub fn compute(l: &LieSuperalgebra) -> Self {
        let derived = l.derived_subalgebra();
        let center = l.center();
        let der = graded(l, Constraints::default());
        let id = graded(
            l,
            Constraints {
                image_in: Some(&derived),
                kills: None,
            },
        );
        let id_star = graded(
            l,
            Constraints {
                image_in: Some(&derived),
                kills: Some(&center),
            },
        );
        let ad = ad_space(l);
        Self {
            derived,
            center,
            der,
            id,
            id_star,
            ad,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainReport {
    pub ad: SuperDim,
    pub id_star: SuperDim,
    pub id: SuperDim,
    pub der: SuperDim,
    /// `ad ≤ ID*`, `ID* ≤ ID`, `ID ≤ Der`
    pub containments: [bool; 3],
    /// bracket closure of `ad`, `ID*`, `ID`, `Der`
    pub closed: [bool; 4],
}

impl ChainReport {
    pub fn holds(&self) -> bool {
        self.containments
            .iter()
            .chain(self.closed.iter())
            .all(|&b| b)
    }
}

pub fn chain_report(tower: &DerivationTower) -> ChainReport {
    ChainReport {
        ad: tower.ad.sdim(),
        id_star: tower.id_star.sdim(),
        id: tower.id.sdim(),
        der: tower.der.sdim(),
        containments: [
            tower.id_star.contains_space(&tower.ad),
            tower.id.contains_space(&tower.id_star),
            tower.der.contains_space(&tower.id),
        ],
        closed: [
            tower.ad.is_closed_under_bracket(),
            tower.id_star.is_closed_under_bracket(),
            tower.id.is_closed_under_bracket(),
            tower.der.is_closed_under_bracket(),
        ],
    }
}

/// Containments and bracket closure along `ad(L) ≤ ID*(L) ≤ ID(L) ≤ Der(L)`.
pub fn chain_check(l: &LieSuperalgebra) -> bool {
    chain_report(&DerivationTower::compute(l)).holds()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub derived: SuperDim,
    /// Minimal generator pair of `L/Z(L)`.
    pub pair: SuperDim,
    pub bound: SuperDim,
    pub id_star: SuperDim,
    pub holds: bool,
    pub tight: bool,
}

/// Minimal generator pair of `L/Z(L)`.
pub fn central_quotient_pair(
    l: &LieSuperalgebra,
    center: &Subspace,
) -> Result<SuperDim, DerivationError> {
    let q = l.quotient(center)?;
    q.algebra
        .minimal_generator_pair()
        .map_err(|_| DerivationError::NotNilpotent)
}

pub fn bound_report(
    l: &LieSuperalgebra,
    tower: &DerivationTower,
) -> Result<BoundReport, DerivationError> {
    let pair = central_quotient_pair(l, &tower.center)?;
    let derived = tower.derived.sdim();
    let bound = lambda_bound(derived, pair.even, pair.odd);
    let id_star = tower.id_star.sdim();
    Ok(BoundReport {
        derived,
        pair,
        bound,
        id_star,
        holds: id_star.leq(bound),
        tight: id_star == bound,
    })
}

/// `sdim ID*(L) ≤ λ(L²; p, q)` with `(p, q)` the minimal pair of `L/Z(L)`.
pub fn check_upper_bound(l: &LieSuperalgebra) -> Result<BoundReport, DerivationError> {
    bound_report(l, &DerivationTower::compute(l))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FinDimReport {
    pub ad: SuperDim,
    pub id_star: SuperDim,
    pub bound: SuperDim,
    pub holds: bool,
}

/// Quantitative form of "ad(L) finite-dimensional iff ID*(L) is":
/// `sdim ad(L) ≤ sdim ID*(L) ≤ λ(L²; p, q)`.
pub fn check_findim_equivalence(l: &LieSuperalgebra) -> Result<FinDimReport, DerivationError> {
    let tower = DerivationTower::compute(l);
    let bound = bound_report(l, &tower)?;
    let ad = tower.ad.sdim();
    Ok(FinDimReport {
        ad,
        id_star: bound.id_star,
        bound: bound.bound,
        holds: ad.leq(bound.id_star) && bound.holds,
    })
}

/// Coordinates of every column lie in `w`.
pub fn maps_into(d: &SuperLinearMap, w: &Subspace) -> bool {
    (0..d.sdim.total()).all(|i| w.contains(&d.column(i)).unwrap_or(false))
}

/// `D(v) = 0` for every basis vector `v` of `w`.
pub fn kills(d: &SuperLinearMap, w: &Subspace) -> bool {
    w.basis()
        .iter()
        .all(|v| d.apply(v).map(|x| is_zero_vector(&x)).unwrap_or(false))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{abelian, heisenberg_h01, model_filiform};
    use crate::linalg::Matrix;

    #[test]
    fn abelian_derivations_are_all_parity_maps() {
        for p in 0..=3 {
            for q in 0..=3 {
                let l = abelian(p, q);
                assert_eq!(derivation_space(&l, Parity::Even).len(), p * p + q * q);
                assert_eq!(derivation_space(&l, Parity::Odd).len(), 2 * p * q);
                assert_eq!(id_star(&l).sdim(), SuperDim::new(0, 0));
                assert_eq!(id_derivations(&l).sdim(), SuperDim::new(0, 0));
            }
        }
    }

    #[test]
    fn h01_derivations() {
        // basis z | w, [w, w] = z
        let h = heisenberg_h01();
        let even = derivation_space(&h, Parity::Even);
        assert_eq!(even.len(), 1);
        let d = &even[0].matrix();
        // w -> βw forces z -> 2βz
        assert_eq!(d[(0, 0)], &d[(1, 1)] * scalar(2));
        assert!(!d[(1, 1)].is_zero());
        let odd = derivation_space(&h, Parity::Odd);
        assert_eq!(odd.len(), 1);
        let d = odd[0].matrix();
        assert!(d[(1, 0)].is_zero());
        assert!(!d[(0, 1)].is_zero());
        assert_eq!(id_star(&h).sdim(), SuperDim::new(0, 1));
        assert_eq!(ad_space(&h).sdim(), SuperDim::new(0, 1));
    }

    #[test]
    fn filiform_idstar_small_case() {
        assert_eq!(id_star(&model_filiform(1, 2)).sdim(), SuperDim::new(1, 1));
        assert_eq!(ad_space(&model_filiform(3, 3)).sdim(), SuperDim::new(3, 2));
    }

    #[test]
    fn map_bracket_signs() {
        let h = heisenberg_h01();
        let even = &derivation_space(&h, Parity::Even)[0];
        assert!(map_bracket(even, even).unwrap().is_zero());
        let odd = &derivation_space(&h, Parity::Odd)[0];
        let b = map_bracket(odd, odd).unwrap();
        let sq = odd.matrix().mul(odd.matrix()).unwrap().scale(&scalar(2));
        assert_eq!(b.matrix(), &sq);
        assert_eq!(b.parity(), Parity::Even);
        let other = SuperLinearMap::zero(SuperDim::new(2, 0), Parity::Even);
        assert!(map_bracket(even, &other).is_err());
    }

    #[test]
    fn ad_is_a_homomorphism_on_filiform() {
        let l = model_filiform(3, 2);
        let n = l.dim();
        for i in 0..n {
            for j in 0..n {
                let x = Element::basis(l.sdim(), i);
                let y = Element::basis(l.sdim(), j);
                let lhs = map_bracket(&ad_map(&l, &x).unwrap(), &ad_map(&l, &y).unwrap()).unwrap();
                let xy = l.bracket(&x, &y).unwrap();
                if xy.is_zero() {
                    assert!(lhs.is_zero());
                } else {
                    assert_eq!(lhs, ad_map(&l, &xy).unwrap());
                }
            }
        }
    }

    #[test]
    fn ad_rejects_mixed_elements() {
        let l = heisenberg_h01();
        let x = Element::new(l.sdim(), vec![scalar(1), scalar(1)]).unwrap();
        assert_eq!(ad_map(&l, &x), Err(DerivationError::NotHomogeneous));
        let z = Element::basis(l.sdim(), 0);
        assert!(ad_map(&l, &z).unwrap().is_zero());
    }

    #[test]
    fn parity_blocks_are_enforced() {
        let sdim = SuperDim::new(1, 1);
        let m = Matrix::from_i64(&[&[0, 1], &[0, 0]]);
        assert!(SuperLinearMap::new(sdim, Parity::Odd, m.clone()).is_ok());
        assert!(matches!(
            SuperLinearMap::new(sdim, Parity::Even, m),
            Err(DerivationError::ParityBlocks { .. })
        ));
    }

    #[test]
    fn lambda_examples() {
        assert_eq!(lambda_bound(SuperDim::new(0, 0), 3, 4), SuperDim::new(0, 0));
        for n in 2..6 {
            for m in 2..6 {
                assert_eq!(
                    lambda_bound(SuperDim::new(n - 1, m - 1), 2, 1),
                    SuperDim::new(2 * n + m - 3, 2 * m + n - 3)
                );
            }
        }
        // generalized Heisenberg: λ(H²; m−m1, n−n1)
        let (m, n, m1, n1) = (5usize, 4usize, 2usize, 1usize);
        assert_eq!(
            lambda_bound(SuperDim::new(m1, n1), m - m1, n - n1),
            SuperDim::new(
                m * m1 + n * n1 - m1 * m1 - n1 * n1,
                n * m1 + m * n1 - 2 * n1 * m1
            )
        );
    }

    #[test]
    fn chain_and_bounds_on_small_examples() {
        for l in [
            abelian(2, 1),
            heisenberg_h01(),
            model_filiform(2, 2),
            model_filiform(1, 3),
        ] {
            assert!(chain_check(&l));
        }
        let r = check_findim_equivalence(&heisenberg_h01()).unwrap();
        assert_eq!(
            (r.ad, r.id_star, r.bound),
            (
                SuperDim::new(0, 1),
                SuperDim::new(0, 1),
                SuperDim::new(0, 1)
            )
        );
        assert!(r.holds);
        let r = check_findim_equivalence(&abelian(2, 2)).unwrap();
        assert_eq!(
            (r.ad, r.id_star, r.bound),
            (
                SuperDim::default(),
                SuperDim::default(),
                SuperDim::default()
            )
        );
        let r = check_findim_equivalence(&model_filiform(3, 3)).unwrap();
        assert_eq!(r.ad, SuperDim::new(3, 2));
        assert_eq!(r.id_star, SuperDim::new(6, 6));
        assert_eq!(r.bound, SuperDim::new(6, 6));
    }

    #[test]
    fn non_nilpotent_bound_is_refused() {
        let mut b = crate::algebra::StructureBuilder::new(SuperDim::new(2, 0));
        b.set_terms(0, 1, &crate::algebra::int_terms(&[(1, 1)]))
            .unwrap();
        let l = b.build().unwrap();
        assert_eq!(check_upper_bound(&l), Err(DerivationError::NotNilpotent));
        assert!(chain_check(&l));
    }
}
