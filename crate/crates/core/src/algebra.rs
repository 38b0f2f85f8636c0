//! Lie superalgebras given by graded structure constants.
//!
//! Basis ordering contract: indices `0..even` are even, `even..even+odd` are
//! odd. Every block statement elsewhere in the crate relies on it.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{
    self, axpy, is_zero_vector, residual_matrix, scalar, unit_vector, zero_vector, LinalgError,
    Matrix, Scalar, Vector,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    pub fn bit(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn both() -> [Parity; 2] {
        [Parity::Even, Parity::Odd]
    }
}

impl std::ops::Add for Parity {
    type Output = Parity;
    fn add(self, rhs: Parity) -> Parity {
        if self == rhs {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// `(-1)^{ab}`
pub fn koszul_sign(a: Parity, b: Parity) -> i64 {
    if a.is_odd() && b.is_odd() {
        -1
    } else {
        1
    }
}

/// Superdimension `(even, odd)`, ordered componentwise.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SuperDim {
    pub even: usize,
    pub odd: usize,
}

impl SuperDim {
    pub const fn new(even: usize, odd: usize) -> Self {
        Self { even, odd }
    }

    pub fn total(self) -> usize {
        self.even + self.odd
    }

    /// The componentwise partial order.
    pub fn leq(self, other: SuperDim) -> bool {
        self.even <= other.even && self.odd <= other.odd
    }

    pub fn get(self, parity: Parity) -> usize {
        match parity {
            Parity::Even => self.even,
            Parity::Odd => self.odd,
        }
    }

    pub fn checked_sub(self, other: SuperDim) -> Option<SuperDim> {
        Some(SuperDim::new(
            self.even.checked_sub(other.even)?,
            self.odd.checked_sub(other.odd)?,
        ))
    }

    /// Index range of the given parity block in a graded basis of this size.
    pub fn block(self, parity: Parity) -> std::ops::Range<usize> {
        match parity {
            Parity::Even => 0..self.even,
            Parity::Odd => self.even..self.total(),
        }
    }

    pub fn parity_of(self, index: usize) -> Parity {
        if index < self.even {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl PartialOrd for SuperDim {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        use std::cmp::Ordering::*;
        match (self.leq(*other), other.leq(*self)) {
            (true, true) => Some(Equal),
            (true, false) => Some(Less),
            (false, true) => Some(Greater),
            (false, false) => None,
        }
    }
}

impl std::ops::Add for SuperDim {
    type Output = SuperDim;
    fn add(self, rhs: SuperDim) -> SuperDim {
        SuperDim::new(self.even + rhs.even, self.odd + rhs.odd)
    }
}

impl fmt::Display for SuperDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.even, self.odd)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("structure table has {found} entries, expected {expected}")]
    TableSize { expected: usize, found: usize },
    #[error("bracket [{left}, {right}] has length {found}, expected {expected}")]
    BracketLength {
        left: usize,
        right: usize,
        expected: usize,
        found: usize,
    },
    #[error("{found} basis names given for dimension {expected}")]
    NameCount { expected: usize, found: usize },
    #[error("duplicate basis name `{0}`")]
    DuplicateName(String),
    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("brackets ({left}, {right}) and ({right}, {left}) are not super skew-symmetric")]
    InconsistentSkew { left: String, right: String },
    #[error("vector has length {found}, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("subspace is not homogeneous")]
    NotHomogeneous,
    #[error("element is not homogeneous")]
    NotHomogeneousElement,
    #[error("subspace is not an ideal")]
    NotIdeal,
    #[error("subspace is not closed under the bracket")]
    NotSubalgebra,
    #[error("algebra is not nilpotent; minimal generator pairs need not be unique")]
    NotNilpotent,
    #[error("basis change is not parity preserving")]
    BasisParity,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Parity tag of an element; the zero vector counts as even.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ElementParity {
    Even,
    Odd,
    Mixed,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Element {
    coords: Vector,
    parity: ElementParity,
}

impl Element {
    pub fn new(sdim: SuperDim, coords: Vector) -> Result<Self, AlgebraError> {
        if coords.len() != sdim.total() {
            return Err(AlgebraError::DimensionMismatch {
                expected: sdim.total(),
                found: coords.len(),
            });
        }
        let even = !is_zero_vector(&coords[..sdim.even]);
        let odd = !is_zero_vector(&coords[sdim.even..]);
        let parity = match (even, odd) {
            (true, true) => ElementParity::Mixed,
            (false, true) => ElementParity::Odd,
            _ => ElementParity::Even,
        };
        Ok(Self { coords, parity })
    }

    pub fn basis(sdim: SuperDim, index: usize) -> Self {
        Self::new(sdim, unit_vector(sdim.total(), index)).expect("unit vector length")
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn into_coords(self) -> Vector {
        self.coords
    }

    pub fn parity(&self) -> ElementParity {
        self.parity
    }

    pub fn homogeneous_parity(&self) -> Option<Parity> {
        match self.parity {
            ElementParity::Even => Some(Parity::Even),
            ElementParity::Odd => Some(Parity::Odd),
            ElementParity::Mixed => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vector(&self.coords)
    }
}

/// Finite-dimensional Lie superalgebra with bracket table `[e_i, e_j]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LieSuperalgebra {
    sdim: SuperDim,
    names: Vec<String>,
    table: Vec<Vector>,
}

/// Collects bracket entries and completes each by super skew-symmetry.
#[derive(Debug, Clone)]
pub struct StructureBuilder {
    sdim: SuperDim,
    names: Option<Vec<String>>,
    entries: BTreeMap<(usize, usize), Vector>,
}

impl StructureBuilder {
    pub fn new(sdim: SuperDim) -> Self {
        Self {
            sdim,
            names: None,
            entries: BTreeMap::new(),
        }
    }

    pub fn names(mut self, names: Vec<String>) -> Self {
        self.names = Some(names);
        self
    }

    fn label(&self, i: usize) -> String {
        match &self.names {
            Some(n) if i < n.len() => n[i].clone(),
            _ => default_name(self.sdim, i),
        }
    }

    /// Sets `[e_i, e_j] = value` and `[e_j, e_i] = -(-1)^{|i||j|} value`.
    pub fn set(&mut self, i: usize, j: usize, value: Vector) -> Result<(), AlgebraError> {
        let n = self.sdim.total();
        for idx in [i, j] {
            if idx >= n {
                return Err(AlgebraError::IndexOutOfRange { index: idx, dim: n });
            }
        }
        if value.len() != n {
            return Err(AlgebraError::BracketLength {
                left: i,
                right: j,
                expected: n,
                found: value.len(),
            });
        }
        let s = -koszul_sign(self.sdim.parity_of(i), self.sdim.parity_of(j));
        let partner: Vector = value.iter().map(|x| x * scalar(s)).collect();
        let inconsistent = || AlgebraError::InconsistentSkew {
            left: self.label(i),
            right: self.label(j),
        };
        if i == j && partner != value {
            return Err(inconsistent());
        }
        if self.entries.get(&(i, j)).is_some_and(|v| *v != value)
            || self.entries.get(&(j, i)).is_some_and(|v| *v != partner)
        {
            return Err(inconsistent());
        }
        self.entries.insert((i, j), value);
        self.entries.insert((j, i), partner);
        Ok(())
    }

    /// Sets `[e_i, e_j] = sum of coefficient * e_k`.
    pub fn set_terms(
        &mut self,
        i: usize,
        j: usize,
        terms: &[(usize, Scalar)],
    ) -> Result<(), AlgebraError> {
        let n = self.sdim.total();
        let mut v = zero_vector(n);
        for (k, c) in terms {
            if *k >= n {
                return Err(AlgebraError::IndexOutOfRange { index: *k, dim: n });
            }
            v[*k] += c;
        }
        self.set(i, j, v)
    }

    pub fn build(self) -> Result<LieSuperalgebra, AlgebraError> {
        let n = self.sdim.total();
        let mut table = vec![zero_vector(n); n * n];
        for ((i, j), v) in self.entries {
            table[i * n + j] = v;
        }
        let names = self
            .names
            .unwrap_or_else(|| (0..n).map(|i| default_name(self.sdim, i)).collect());
        LieSuperalgebra::from_table(self.sdim, names, table)
    }
}

fn default_name(sdim: SuperDim, i: usize) -> String {
    if i < sdim.even {
        format!("e{}", i + 1)
    } else {
        format!("o{}", i - sdim.even + 1)
    }
}

/// Which axiom a [`Violation`] breaks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    Grading,
    SkewSymmetry,
    EvenSquare,
    OddCube,
    Jacobi,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::Grading => "grading",
            Axiom::SkewSymmetry => "super skew-symmetry",
            Axiom::EvenSquare => "even self-bracket",
            Axiom::OddCube => "odd cube",
            Axiom::Jacobi => "super Jacobi",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Violation {
    pub axiom: Axiom,
    pub basis: Vec<usize>,
    pub labels: Vec<String>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} violation at ({})", self.axiom, self.labels.join(","))
    }
}

/// Result of [`LieSuperalgebra::validate`]; empty means valid.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Diagnostics {
    pub violations: Vec<Violation>,
}

impl Diagnostics {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn first(&self) -> Option<&Violation> {
        self.violations.first()
    }
}

/// Homogeneous subspace stored as canonical rref bases of its two parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: SuperDim,
    even: Matrix,
    odd: Matrix,
}

impl Subspace {
    pub fn zero(ambient: SuperDim) -> Self {
        let n = ambient.total();
        Self {
            ambient,
            even: Matrix::zeros(0, n),
            odd: Matrix::zeros(0, n),
        }
    }

    pub fn full(ambient: SuperDim) -> Self {
        let n = ambient.total();
        let basis: Vec<Vector> = (0..n).map(|i| unit_vector(n, i)).collect();
        Self::from_homogeneous_parts(ambient, &basis).expect("unit vectors")
    }

    /// Span of the even and odd components of every given vector.
    pub fn from_homogeneous_parts(
        ambient: SuperDim,
        vectors: &[Vector],
    ) -> Result<Self, AlgebraError> {
        let n = ambient.total();
        let mut even = Vec::new();
        let mut odd = Vec::new();
        for v in vectors {
            if v.len() != n {
                return Err(AlgebraError::DimensionMismatch {
                    expected: n,
                    found: v.len(),
                });
            }
            let (e, o) = split_parts(ambient, v);
            if !is_zero_vector(&e) {
                even.push(e);
            }
            if !is_zero_vector(&o) {
                odd.push(o);
            }
        }
        Ok(Self {
            ambient,
            even: linalg::row_space(&even, n)?,
            odd: linalg::row_space(&odd, n)?,
        })
    }

    /// Span of homogeneous vectors; fails on a mixed vector.
    pub fn from_homogeneous(ambient: SuperDim, vectors: &[Vector]) -> Result<Self, AlgebraError> {
        for v in vectors {
            if v.len() == ambient.total() {
                let (e, o) = split_parts(ambient, v);
                if !is_zero_vector(&e) && !is_zero_vector(&o) {
                    return Err(AlgebraError::NotHomogeneous);
                }
            }
        }
        Self::from_homogeneous_parts(ambient, vectors)
    }

    pub fn ambient(&self) -> SuperDim {
        self.ambient
    }

    pub fn sdim(&self) -> SuperDim {
        SuperDim::new(self.even.rows(), self.odd.rows())
    }

    pub fn dim(&self) -> usize {
        self.sdim().total()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn even_part(&self) -> &Matrix {
        &self.even
    }

    pub fn odd_part(&self) -> &Matrix {
        &self.odd
    }

    pub fn part(&self, parity: Parity) -> &Matrix {
        match parity {
            Parity::Even => &self.even,
            Parity::Odd => &self.odd,
        }
    }

    /// Even basis rows followed by odd basis rows.
    pub fn basis(&self) -> Vec<Vector> {
        let mut b = self.even.row_vectors();
        b.extend(self.odd.row_vectors());
        b
    }

    /// The whole subspace as one canonical rref (even pivots precede odd ones).
    pub fn matrix(&self) -> Matrix {
        let basis = self.basis();
        Matrix::from_rows(&basis, self.ambient.total()).expect("basis rows")
    }

    pub fn contains(&self, v: &[Scalar]) -> Result<bool, AlgebraError> {
        if v.len() != self.ambient.total() {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.ambient.total(),
                found: v.len(),
            });
        }
        let (e, o) = split_parts(self.ambient, v);
        Ok(linalg::contains(&self.even, &e)? && linalg::contains(&self.odd, &o)?)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other
            .basis()
            .iter()
            .all(|v| self.contains(v).unwrap_or(false))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, AlgebraError> {
        self.check_ambient(other)?;
        Ok(Self {
            ambient: self.ambient,
            even: linalg::sum_spaces(&self.even, &other.even)?,
            odd: linalg::sum_spaces(&self.odd, &other.odd)?,
        })
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, AlgebraError> {
        self.check_ambient(other)?;
        Ok(Self {
            ambient: self.ambient,
            even: linalg::intersect_spaces(&self.even, &other.even)?,
            odd: linalg::intersect_spaces(&self.odd, &other.odd)?,
        })
    }

    /// Linear map whose kernel is exactly this subspace.
    pub fn residual_matrix(&self) -> Matrix {
        residual_matrix(&self.matrix())
    }

    fn check_ambient(&self, other: &Subspace) -> Result<(), AlgebraError> {
        if self.ambient != other.ambient {
            return Err(LinalgError::AmbientMismatch {
                left: self.ambient.total(),
                right: other.ambient.total(),
            }
            .into());
        }
        Ok(())
    }
}

fn split_parts(ambient: SuperDim, v: &[Scalar]) -> (Vector, Vector) {
    let mut e = v.to_vec();
    let mut o = v.to_vec();
    for x in &mut e[ambient.even..] {
        *x = Scalar::zero();
    }
    for x in &mut o[..ambient.even] {
        *x = Scalar::zero();
    }
    (e, o)
}

/// `L/I` together with the coordinate projection `L -> L/I`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quotient {
    pub algebra: LieSuperalgebra,
    /// `dim(L/I) x dim(L)`; row `r` reads the coefficient of `complement[r]`.
    pub projection: Matrix,
    /// Basis indices of `L` whose images form the quotient basis.
    pub complement: Vec<usize>,
}

impl Quotient {
    pub fn project(&self, v: &[Scalar]) -> Result<Vector, AlgebraError> {
        Ok(self.projection.mul_vec(v)?)
    }
}

impl LieSuperalgebra {
    /// Checks table dimensions and names; axioms are checked by [`validate`](Self::validate).
    pub fn from_table(
        sdim: SuperDim,
        names: Vec<String>,
        table: Vec<Vector>,
    ) -> Result<Self, AlgebraError> {
        let n = sdim.total();
        if table.len() != n * n {
            return Err(AlgebraError::TableSize {
                expected: n * n,
                found: table.len(),
            });
        }
        for (idx, v) in table.iter().enumerate() {
            if v.len() != n {
                return Err(AlgebraError::BracketLength {
                    left: idx / n,
                    right: idx % n,
                    expected: n,
                    found: v.len(),
                });
            }
        }
        if names.len() != n {
            return Err(AlgebraError::NameCount {
                expected: n,
                found: names.len(),
            });
        }
        for (i, a) in names.iter().enumerate() {
            if names[..i].contains(a) {
                return Err(AlgebraError::DuplicateName(a.clone()));
            }
        }
        Ok(Self { sdim, names, table })
    }

    pub fn sdim(&self) -> SuperDim {
        self.sdim
    }

    pub fn dim(&self) -> usize {
        self.sdim.total()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.sdim.parity_of(i)
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self, AlgebraError> {
        self = Self::from_table(self.sdim, names, self.table)?;
        Ok(self)
    }

    /// `[e_i, e_j]`
    pub fn basis_bracket(&self, i: usize, j: usize) -> &Vector {
        &self.table[i * self.dim() + j]
    }

    pub fn is_abelian(&self) -> bool {
        self.table.iter().all(|v| is_zero_vector(v))
    }

    /// Bilinear extension of the table to coordinate vectors.
    pub fn bracket_vectors(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let n = self.dim();
        let mut out = zero_vector(n);
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if yb.is_zero() {
                    continue;
                }
                axpy(&mut out, &(xa * yb), self.basis_bracket(a, b));
            }
        }
        out
    }

    pub fn bracket(&self, x: &Element, y: &Element) -> Result<Element, AlgebraError> {
        for e in [x, y] {
            if e.coords().len() != self.dim() {
                return Err(AlgebraError::DimensionMismatch {
                    expected: self.dim(),
                    found: e.coords().len(),
                });
            }
        }
        Element::new(self.sdim, self.bracket_vectors(x.coords(), y.coords()))
    }

    fn labels(&self, idx: &[usize]) -> Vec<String> {
        idx.iter().map(|&i| self.names[i].clone()).collect()
    }

    fn violation(&self, axiom: Axiom, basis: Vec<usize>) -> Violation {
        let labels = self.labels(&basis);
        Violation {
            axiom,
            basis,
            labels,
        }
    }

    /// Checks grading, super skew-symmetry, `[x,x]=0` for even `x`,
    /// `[y,[y,y]]=0` for odd `y` and the super Jacobi identity in the form
    /// `[x,[y,z]] = [[x,y],z] + (-1)^{|x||y|}[y,[x,z]]` on basis elements.
    ///
    /// Violations are listed in that order of axioms.
    pub fn validate(&self) -> Diagnostics {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let target = self.parity(i) + self.parity(j);
                let v = self.basis_bracket(i, j);
                if (0..n).any(|k| !v[k].is_zero() && self.parity(k) != target) {
                    out.push(self.violation(Axiom::Grading, vec![i, j]));
                }
            }
        }
        for i in 0..n {
            for j in i..n {
                let s = scalar(-koszul_sign(self.parity(i), self.parity(j)));
                let expected: Vector = self.basis_bracket(i, j).iter().map(|x| x * &s).collect();
                if *self.basis_bracket(j, i) != expected {
                    out.push(self.violation(Axiom::SkewSymmetry, vec![i, j]));
                }
            }
        }
        for i in 0..n {
            match self.parity(i) {
                Parity::Even => {
                    if !is_zero_vector(self.basis_bracket(i, i)) {
                        out.push(self.violation(Axiom::EvenSquare, vec![i]));
                    }
                }
                Parity::Odd => {
                    let cube = self.bracket_vectors(&unit_vector(n, i), self.basis_bracket(i, i));
                    if !is_zero_vector(&cube) {
                        out.push(self.violation(Axiom::OddCube, vec![i]));
                    }
                }
            }
        }
        for i in 0..n {
            let ei = unit_vector(n, i);
            for j in 0..n {
                let ej = unit_vector(n, j);
                let s = scalar(koszul_sign(self.parity(i), self.parity(j)));
                for k in 0..n {
                    let lhs = self.bracket_vectors(&ei, self.basis_bracket(j, k));
                    let mut rhs =
                        self.bracket_vectors(self.basis_bracket(i, j), &unit_vector(n, k));
                    let third = self.bracket_vectors(&ej, self.basis_bracket(i, k));
                    axpy(&mut rhs, &s, &third);
                    if lhs != rhs {
                        out.push(self.violation(Axiom::Jacobi, vec![i, j, k]));
                    }
                }
            }
        }
        Diagnostics { violations: out }
    }

    /// Span of `[a, b]` over basis vectors of `a_space` and `b_space`.
    pub fn bracket_spaces(&self, a: &Subspace, b: &Subspace) -> Subspace {
        let ab = a.basis();
        let bb = b.basis();
        let vectors: Vec<Vector> = ab
            .iter()
            .flat_map(|x| bb.iter().map(move |y| (x, y)))
            .map(|(x, y)| self.bracket_vectors(x, y))
            .filter(|v| !is_zero_vector(v))
            .collect();
        Subspace::from_homogeneous_parts(self.sdim, &vectors).expect("bracket length")
    }

    /// `L² = [L, L]`
    pub fn derived_subalgebra(&self) -> Subspace {
        let full = Subspace::full(self.sdim);
        self.bracket_spaces(&full, &full)
    }

    /// `{x : [x, L] ⊆ w}`, computed parity by parity.
    pub fn centralizer_modulo(&self, w: &Subspace) -> Subspace {
        let n = self.dim();
        let residual = w.residual_matrix();
        let mut vectors = Vec::new();
        for parity in Parity::both() {
            let block = self.sdim.block(parity);
            let width = block.len();
            if width == 0 {
                continue;
            }
            // columns: unknown coefficients over the parity block
            let mut rows = Vec::new();
            for j in 0..n {
                let images: Vec<Vector> = block
                    .clone()
                    .map(|i| residual.mul_vec(self.basis_bracket(i, j)).expect("dims"))
                    .collect();
                for k in 0..n {
                    let row: Vector = images.iter().map(|im| im[k].clone()).collect();
                    if !is_zero_vector(&row) {
                        rows.push(row);
                    }
                }
            }
            let system = Matrix::from_rows(&rows, width).expect("row width");
            for kv in system.kernel_basis() {
                let mut v = zero_vector(n);
                for (c, i) in kv.into_iter().zip(block.clone()) {
                    v[i] = c;
                }
                vectors.push(v);
            }
        }
        Subspace::from_homogeneous_parts(self.sdim, &vectors).expect("kernel length")
    }

    /// `Z(L)`
    pub fn center(&self) -> Subspace {
        self.centralizer_modulo(&Subspace::zero(self.sdim))
    }

    /// `L = L^1 ⊋ L^2 ⊋ ...`, ending at the first term that repeats.
    pub fn lower_central_series(&self) -> Vec<Subspace> {
        let full = Subspace::full(self.sdim);
        let mut series = vec![full.clone()];
        loop {
            let last = series.last().expect("nonempty");
            let next = self.bracket_spaces(last, &full);
            if next == *last {
                return series;
            }
            series.push(next);
        }
    }

    /// `0 = Z_0 ⊆ Z_1 ⊆ ...` with `Z_i = {x : [x, L] ⊆ Z_{i-1}}`, ending at
    /// stabilization.
    pub fn upper_central_series(&self) -> Vec<Subspace> {
        let mut series = vec![Subspace::zero(self.sdim)];
        loop {
            let last = series.last().expect("nonempty");
            let next = self.centralizer_modulo(last);
            if next == *last {
                return series;
            }
            series.push(next);
        }
    }

    /// Least `c` with `L^{c+1} = 0`.
    pub fn nilpotency_class(&self) -> Option<usize> {
        let series = self.lower_central_series();
        series
            .last()
            .expect("nonempty")
            .is_zero()
            .then(|| series.len() - 1)
    }

    pub fn is_nilpotent(&self) -> bool {
        self.nilpotency_class().is_some()
    }

    /// Lengths of the chains `C^{k+1}(L_a) = [L_0, C^k(L_a)]`.
    pub fn super_nilindex(&self) -> Option<SuperDim> {
        if !self.is_nilpotent() {
            return None;
        }
        let full = Subspace::full(self.sdim);
        let even_part =
            Subspace::from_homogeneous(self.sdim, &full.even.row_vectors()).expect("even rows");
        let odd_part =
            Subspace::from_homogeneous(self.sdim, &full.odd.row_vectors()).expect("odd rows");
        let chain_length = |start: Subspace| -> Option<usize> {
            let mut current = start;
            let mut k = 0;
            while !current.is_zero() {
                let next = self.bracket_spaces(&even_part, &current);
                if next == current {
                    return None;
                }
                current = next;
                k += 1;
            }
            Some(k)
        };
        Some(SuperDim::new(
            chain_length(even_part.clone())?,
            chain_length(odd_part)?,
        ))
    }

    pub fn is_subalgebra(&self, s: &Subspace) -> bool {
        s.contains_subspace(&self.bracket_spaces(s, s))
    }

    pub fn is_ideal(&self, s: &Subspace) -> bool {
        s.contains_subspace(&self.bracket_spaces(s, &Subspace::full(self.sdim)))
    }

    /// Smallest subalgebra containing `k`.
    pub fn generated_subalgebra(&self, k: &Subspace) -> Subspace {
        let mut current = k.clone();
        loop {
            let next = current
                .sum(&self.bracket_spaces(&current, &current))
                .expect("same ambient");
            if next == current {
                return current;
            }
            current = next;
        }
    }

    /// `L/I` on the basis vectors that are not pivots of `I`.
    pub fn quotient(&self, ideal: &Subspace) -> Result<Quotient, AlgebraError> {
        if ideal.ambient() != self.sdim {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.dim(),
                found: ideal.ambient().total(),
            });
        }
        if !self.is_ideal(ideal) {
            return Err(AlgebraError::NotIdeal);
        }
        let n = self.dim();
        let rref = ideal.matrix().rref();
        let complement: Vec<usize> = (0..n).filter(|c| !rref.pivots.contains(c)).collect();
        let residual = ideal.residual_matrix();
        let proj_rows: Vec<Vector> = complement
            .iter()
            .map(|&c| residual.row(c).to_vec())
            .collect();
        let projection = Matrix::from_rows(&proj_rows, n)?;
        let q = complement.len();
        let qsdim = SuperDim::new(
            complement.iter().filter(|&&c| c < self.sdim.even).count(),
            complement.iter().filter(|&&c| c >= self.sdim.even).count(),
        );
        let mut table = Vec::with_capacity(q * q);
        for &a in &complement {
            for &b in &complement {
                table.push(projection.mul_vec(self.basis_bracket(a, b))?);
            }
        }
        let names = complement.iter().map(|&c| self.names[c].clone()).collect();
        Ok(Quotient {
            algebra: LieSuperalgebra::from_table(qsdim, names, table)?,
            projection,
            complement,
        })
    }

    /// Block-diagonal sum; basis is `L1_even, L2_even | L1_odd, L2_odd`.
    ///
    /// Names of the second summand are primed when they collide.
    pub fn direct_sum(&self, other: &LieSuperalgebra) -> LieSuperalgebra {
        let sdim = self.sdim + other.sdim;
        let n = sdim.total();
        let embed = |own_even: usize, offset_even: usize, offset_odd: usize| {
            move |i: usize| {
                if i < own_even {
                    i + offset_even
                } else {
                    i - own_even + sdim.even + offset_odd
                }
            }
        };
        let first = embed(self.sdim.even, 0, 0);
        let second = embed(other.sdim.even, self.sdim.even, self.sdim.odd);
        let mut table = vec![zero_vector(n); n * n];
        let mut names = vec![String::new(); n];
        for (alg, map) in [
            (self, &first as &dyn Fn(usize) -> usize),
            (other, &second as &dyn Fn(usize) -> usize),
        ] {
            for i in 0..alg.dim() {
                for j in 0..alg.dim() {
                    let v = alg.basis_bracket(i, j);
                    let target = &mut table[map(i) * n + map(j)];
                    for (k, x) in v.iter().enumerate() {
                        target[map(k)] = x.clone();
                    }
                }
            }
        }
        for i in 0..self.dim() {
            names[first(i)] = self.names[i].clone();
        }
        for i in 0..other.dim() {
            let mut name = other.names[i].clone();
            while names.contains(&name) {
                name.push('\'');
            }
            names[second(i)] = name;
        }
        LieSuperalgebra::from_table(sdim, names, table).expect("direct sum table")
    }

    /// `sdim(L) - sdim(L²)`; refused unless `L` is nilpotent.
    pub fn minimal_generator_pair(&self) -> Result<SuperDim, AlgebraError> {
        if !self.is_nilpotent() {
            return Err(AlgebraError::NotNilpotent);
        }
        Ok(self
            .sdim
            .checked_sub(self.derived_subalgebra().sdim())
            .expect("L² ⊆ L"))
    }

    /// Rewrites the structure constants in a new basis given by the columns
    /// of `basis` (old coordinates). The first `sdim.even` columns must be
    /// even vectors and the rest odd.
    pub fn change_basis(
        &self,
        basis: &Matrix,
        names: Vec<String>,
    ) -> Result<LieSuperalgebra, AlgebraError> {
        let n = self.dim();
        if basis.rows() != n || basis.cols() != n {
            return Err(AlgebraError::DimensionMismatch {
                expected: n,
                found: basis.cols(),
            });
        }
        let columns = basis.column_vectors();
        for (c, v) in columns.iter().enumerate() {
            let e = Element::new(self.sdim, v.clone())?;
            if e.is_zero() || e.homogeneous_parity() != Some(self.parity(c)) {
                return Err(AlgebraError::BasisParity);
            }
        }
        let inv = basis.inverse()?;
        let mut table = Vec::with_capacity(n * n);
        for a in &columns {
            for b in &columns {
                table.push(inv.mul_vec(&self.bracket_vectors(a, b))?);
            }
        }
        LieSuperalgebra::from_table(self.sdim, names, table)
    }

    /// Subalgebra spanned by a subset of basis vectors (sorted, even first).
    pub fn restrict(&self, indices: &[usize]) -> Result<LieSuperalgebra, AlgebraError> {
        let n = self.dim();
        if let Some(&bad) = indices.iter().find(|&&i| i >= n) {
            return Err(AlgebraError::IndexOutOfRange { index: bad, dim: n });
        }
        let pos = |k: usize| indices.iter().position(|&i| i == k);
        let sdim = SuperDim::new(
            indices.iter().filter(|&&i| i < self.sdim.even).count(),
            indices.iter().filter(|&&i| i >= self.sdim.even).count(),
        );
        let mut table = Vec::new();
        for &a in indices {
            for &b in indices {
                let v = self.basis_bracket(a, b);
                let mut w = zero_vector(indices.len());
                for (k, x) in v.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    let Some(p) = pos(k) else {
                        return Err(AlgebraError::NotSubalgebra);
                    };
                    w[p] = x.clone();
                }
                table.push(w);
            }
        }
        let names = indices.iter().map(|&i| self.names[i].clone()).collect();
        LieSuperalgebra::from_table(sdim, names, table)
    }
}

/// Convenience for tests and constructors: `[(index, integer)]` terms.
pub fn int_terms(terms: &[(usize, i64)]) -> Vec<(usize, Scalar)> {
    terms.iter().map(|&(k, c)| (k, scalar(c))).collect()
}

/// True when `x` is the unit coordinate vector.
pub fn is_unit(v: &[Scalar], index: usize) -> bool {
    v.iter()
        .enumerate()
        .all(|(k, x)| if k == index { x.is_one() } else { x.is_zero() })
}
