//! Named families (model filiform, generalized Heisenberg, abelian) and
//! verifiers for their `ID*` structure theorems.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{
    int_terms, AlgebraError, LieSuperalgebra, Parity, StructureBuilder, Subspace, SuperDim,
};
use crate::derivation::{
    self, central_quotient_pair, kills, lambda_bound, maps_into, DerivationError, SuperLinearMap,
};
use crate::linalg::{self, scalar, unit_vector, zero_vector, Matrix, Scalar, Vector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("not a generalized Heisenberg superalgebra: sdim L² = {derived}, sdim Z = {center}")]
    NotGeneralizedHeisenberg { derived: SuperDim, center: SuperDim },
    #[error("nilpotency class is {}, expected exactly 2", class_label(*.class))]
    WrongClass { class: Option<usize> },
    #[error("model filiform L^{{{n},{m}}} needs n, m >= 1 and n + m > 2")]
    FiliformOutOfRange { n: usize, m: usize },
    #[error("invalid bilinear form: {0}")]
    InvalidForm(String),
    #[error("standard decomposition failed: {0}")]
    Decomposition(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Derivation(#[from] DerivationError),
}

fn class_label(class: Option<usize>) -> String {
    class.map_or_else(
        || "undefined (not nilpotent)".to_string(),
        |c| c.to_string(),
    )
}

fn names(prefix: &str, range: impl Iterator<Item = usize>) -> Vec<String> {
    range.map(|i| format!("{prefix}{i}")).collect()
}

/// `L^{n,m}`: basis `x0..xn | y1..ym`, `[x0, xi] = x(i+1)` for `1 ≤ i ≤ n-1`
/// and `[x0, yj] = y(j+1)` for `1 ≤ j ≤ m-1`.
///
/// # Panics
/// If `n` or `m` is zero.
pub fn model_filiform(n: usize, m: usize) -> LieSuperalgebra {
    assert!(n >= 1 && m >= 1, "model filiform needs n, m >= 1");
    let sdim = SuperDim::new(n + 1, m);
    let mut all = names("x", 0..=n);
    all.extend(names("y", 1..=m));
    let mut b = StructureBuilder::new(sdim).names(all);
    for i in 1..n {
        b.set_terms(0, i, &int_terms(&[(i + 1, 1)]))
            .expect("filiform entry");
    }
    // y_j sits at index n + j
    for j in 1..m {
        b.set_terms(0, n + j, &int_terms(&[(n + j + 1, 1)]))
            .expect("filiform entry");
    }
    b.build().expect("filiform table")
}

/// `H(0,1)`: basis `z | w` with `[w, w] = z`.
pub fn heisenberg_h01() -> LieSuperalgebra {
    let mut b = StructureBuilder::new(SuperDim::new(1, 1)).names(vec!["z".into(), "w".into()]);
    b.set_terms(1, 1, &int_terms(&[(0, 1)])).expect("h01 entry");
    b.build().expect("h01 table")
}

pub fn abelian(p: usize, q: usize) -> LieSuperalgebra {
    StructureBuilder::new(SuperDim::new(p, q))
        .build()
        .expect("abelian table")
}

/// One value of a bilinear form `V x V -> Z`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FormEntry {
    pub left: usize,
    pub right: usize,
    /// Coordinates in the basis of `Z` (even part first).
    pub value: Vector,
}

/// A super-skew graded form `V x V -> Z`, defining the class-2 algebra
/// `V ⊕ Z` with `[u, v] = form(u, v)` and `Z` central.
///
/// `V` is indexed even-first over `0..quotient_sdim.total()`; only one of
/// each pair `(i, j)`, `(j, i)` needs to be listed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CentralExtensionData {
    pub quotient_sdim: SuperDim,
    pub center_sdim: SuperDim,
    pub form: Vec<FormEntry>,
}

impl CentralExtensionData {
    pub fn total_sdim(&self) -> SuperDim {
        self.quotient_sdim + self.center_sdim
    }

    /// Position of a `V` index in the full basis `V0, Z0 | V1, Z1`.
    fn v_index(&self, i: usize) -> usize {
        let a = self.quotient_sdim.even;
        if i < a {
            i
        } else {
            i + self.center_sdim.even
        }
    }

    /// Position of a `Z` index in the full basis.
    fn z_index(&self, k: usize) -> usize {
        let a = self.quotient_sdim.even;
        let m1 = self.center_sdim.even;
        if k < m1 {
            a + k
        } else {
            a + m1 + self.quotient_sdim.odd + (k - m1)
        }
    }
}

/// The algebra `V ⊕ Z` of a central extension; any graded super-skew form
/// gives a Lie superalgebra since all brackets are central.
pub fn central_extension(data: &CentralExtensionData) -> Result<LieSuperalgebra, FamilyError> {
    let (a, b) = (data.quotient_sdim.even, data.quotient_sdim.odd);
    let (m1, n1) = (data.center_sdim.even, data.center_sdim.odd);
    let sdim = data.total_sdim();
    let mut all = names("x", 1..=a);
    all.extend(names("z", 1..=m1));
    all.extend(names("y", 1..=b));
    all.extend(names("c", 1..=n1));
    let mut builder = StructureBuilder::new(sdim).names(all);
    let vdim = data.quotient_sdim.total();
    let zdim = data.center_sdim.total();
    for entry in &data.form {
        if entry.left >= vdim || entry.right >= vdim {
            return Err(FamilyError::InvalidForm(format!(
                "index ({}, {}) outside V of dimension {vdim}",
                entry.left, entry.right
            )));
        }
        if entry.value.len() != zdim {
            return Err(FamilyError::InvalidForm(format!(
                "value of ({}, {}) has length {}, expected {zdim}",
                entry.left,
                entry.right,
                entry.value.len()
            )));
        }
        let target =
            data.quotient_sdim.parity_of(entry.left) + data.quotient_sdim.parity_of(entry.right);
        let mut v = zero_vector(sdim.total());
        for (k, x) in entry.value.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            if data.center_sdim.parity_of(k) != target {
                return Err(FamilyError::InvalidForm(format!(
                    "value of ({}, {}) leaves the {target} part of Z",
                    entry.left, entry.right
                )));
            }
            v[data.z_index(k)] = x.clone();
        }
        builder
            .set(data.v_index(entry.left), data.v_index(entry.right), v)
            .map_err(|e| FamilyError::InvalidForm(e.to_string()))?;
    }
    Ok(builder.build()?)
}

/// Nonzero `H` with `H² = Z(H)`.
pub fn is_generalized_heisenberg(l: &LieSuperalgebra) -> bool {
    l.dim() > 0 && l.derived_subalgebra() == l.center()
}

/// Central extension whose form is onto `Z` with trivial radical.
pub fn generalized_heisenberg(data: &CentralExtensionData) -> Result<LieSuperalgebra, FamilyError> {
    let l = central_extension(data)?;
    if !is_generalized_heisenberg(&l) {
        return Err(FamilyError::NotGeneralizedHeisenberg {
            derived: l.derived_subalgebra().sdim(),
            center: l.center().sdim(),
        });
    }
    Ok(l)
}

/// Unordered index pairs of `V` grouped by the parity of their bracket.
type Slots = Vec<(usize, usize)>;

fn form_slots(quotient: SuperDim) -> (Slots, Slots) {
    let (a, b) = (quotient.even, quotient.odd);
    let mut even = Vec::new();
    let mut odd = Vec::new();
    for i in 0..a {
        for j in i + 1..a {
            even.push((i, j));
        }
    }
    for i in a..a + b {
        for j in i..a + b {
            even.push((i, j));
        }
    }
    for i in 0..a {
        for j in a..a + b {
            odd.push((i, j));
        }
    }
    (even, odd)
}

const GENERIC_ATTEMPTS: u64 = 8;

/// A generalized Heisenberg superalgebra with `sdim H = (m, n)` and
/// `sdim Z(H) = (m1, n1)`, or `None` when no form realizes those sizes.
///
/// The first attempt assigns center basis vectors to form slots cyclically;
/// later attempts use dense small-integer forms from a fixed seed, so the
/// result depends only on the four sizes.
pub fn generic_heisenberg_data(
    m: usize,
    n: usize,
    m1: usize,
    n1: usize,
) -> Option<CentralExtensionData> {
    let quotient = SuperDim::new(m.checked_sub(m1)?, n.checked_sub(n1)?);
    let center = SuperDim::new(m1, n1);
    if center.total() == 0 {
        return None;
    }
    let (even_slots, odd_slots) = form_slots(quotient);
    if even_slots.len() < m1 || odd_slots.len() < n1 {
        return None;
    }
    let zdim = center.total();
    for attempt in 0..GENERIC_ATTEMPTS {
        let mut rng = ChaCha8Rng::seed_from_u64(
            (((m as u64 * 31 + n as u64) * 31 + m1 as u64) * 31 + n1 as u64) * 31 + attempt,
        );
        let mut form = Vec::new();
        for (slots, offset, width) in [(&even_slots, 0, m1), (&odd_slots, m1, n1)] {
            if width == 0 {
                continue;
            }
            for (s, &(left, right)) in slots.iter().enumerate() {
                let mut value = zero_vector(zdim);
                if attempt == 0 {
                    value[offset + s % width] = scalar(1);
                } else {
                    for x in &mut value[offset..offset + width] {
                        *x = scalar(rng.gen_range(-2..=2));
                    }
                }
                form.push(FormEntry { left, right, value });
            }
        }
        let data = CentralExtensionData {
            quotient_sdim: quotient,
            center_sdim: center,
            form,
        };
        if generalized_heisenberg(&data).is_ok() {
            return Some(data);
        }
    }
    None
}

/// Random class-2 central extension with total dimension in `2..=max_dim`.
///
/// The center may be larger than the derived algebra, so the result need
/// not be generalized Heisenberg.
pub fn random_class2_data<R: Rng>(rng: &mut R, max_dim: usize) -> CentralExtensionData {
    assert!(max_dim >= 2, "class 2 needs dimension at least 2");
    loop {
        let total = rng.gen_range(2..=max_dim);
        let zdim = rng.gen_range(1..total);
        let vdim = total - zdim;
        let a = rng.gen_range(0..=vdim);
        let m1 = rng.gen_range(0..=zdim);
        let quotient = SuperDim::new(a, vdim - a);
        let center = SuperDim::new(m1, zdim - m1);
        let (even_slots, odd_slots) = form_slots(quotient);
        let mut form = Vec::new();
        for (slots, parity) in [(&even_slots, Parity::Even), (&odd_slots, Parity::Odd)] {
            let range = center.block(parity);
            if range.is_empty() {
                continue;
            }
            for &(left, right) in slots {
                if rng.gen_bool(0.4) {
                    continue;
                }
                let mut value = zero_vector(center.total());
                for k in range.clone() {
                    if rng.gen_bool(0.6) {
                        value[k] = scalar(rng.gen_range(-3..=3));
                    }
                }
                if !linalg::is_zero_vector(&value) {
                    // occasionally swap the listed order to exercise the skew rule
                    let (l, r) = if rng.gen_bool(0.5) {
                        (right, left)
                    } else {
                        (left, right)
                    };
                    let value = if l != left
                        && !(quotient.parity_of(l).is_odd() && quotient.parity_of(r).is_odd())
                    {
                        value.into_iter().map(|x| -x).collect()
                    } else {
                        value
                    };
                    form.push(FormEntry {
                        left: l,
                        right: r,
                        value,
                    });
                }
            }
        }
        if !form.is_empty() {
            return CentralExtensionData {
                quotient_sdim: quotient,
                center_sdim: center,
                form,
            };
        }
    }
}

/// Which of the three blocks of an adapted basis an index belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AdaptedBlock {
    /// Complement of `Z(L)` (generators of `L/Z(L)`).
    Complement,
    /// `L²`
    Derived,
    /// `S`, the complement of `L²` in `Z(L)`.
    Central,
}

/// Sizes of the blocks of the adapted basis
/// `C0, L²0, S0 | C1, L²1, S1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdaptedLayout {
    pub complement: SuperDim,
    pub derived: SuperDim,
    pub central: SuperDim,
}

impl AdaptedLayout {
    pub fn sdim(&self) -> SuperDim {
        self.complement + self.derived + self.central
    }

    pub fn block_of(&self, index: usize) -> (Parity, AdaptedBlock) {
        let even = self.sdim().even;
        let (parity, local) = if index < even {
            (Parity::Even, index)
        } else {
            (Parity::Odd, index - even)
        };
        let c = self.complement.get(parity);
        let d = self.derived.get(parity);
        let block = if local < c {
            AdaptedBlock::Complement
        } else if local < c + d {
            AdaptedBlock::Derived
        } else {
            AdaptedBlock::Central
        };
        (parity, block)
    }

    pub fn indices(&self, parity: Parity, block: AdaptedBlock) -> Vec<usize> {
        (0..self.sdim().total())
            .filter(|&i| self.block_of(i) == (parity, block))
            .collect()
    }
}

/// `L = H ⊕ S` for a class-2 algebra.
#[derive(Debug, Clone)]
pub struct StandardDecomposition {
    /// `H` on the basis `C0, L²0 | C1, L²1`.
    pub h: LieSuperalgebra,
    /// `H` as a subspace of `L`.
    pub h_subspace: Subspace,
    /// `S` as a subspace of `L`.
    pub s: Subspace,
    /// `L` rewritten in the adapted basis.
    pub adapted: LieSuperalgebra,
    /// Columns are the adapted basis vectors in the coordinates of `L`.
    pub basis: Matrix,
    pub layout: AdaptedLayout,
}

/// Greedily extends `start` by candidates in order; returns the added ones.
fn extend_greedy(start: &Matrix, candidates: Vec<Vector>) -> Vec<Vector> {
    let n = start.cols();
    let mut span = start.clone();
    let mut chosen = Vec::new();
    for v in candidates {
        if !linalg::contains(&span, &v).expect("lengths") {
            span = linalg::sum_spaces(
                &span,
                &linalg::row_space(std::slice::from_ref(&v), n).expect("len"),
            )
            .expect("same width");
            chosen.push(v);
        }
    }
    chosen
}

fn unique_name(taken: &mut Vec<String>, wanted: String) -> String {
    let mut name = wanted;
    while taken.contains(&name) {
        name.push('\'');
    }
    taken.push(name.clone());
    name
}

/// Splits a class-2 algebra as `H ⊕ S` with `H² = Z(H) = L²` and `S`
/// central. Complements are picked in pivot order.
pub fn standard_decomposition(l: &LieSuperalgebra) -> Result<StandardDecomposition, FamilyError> {
    let class = l.nilpotency_class();
    if class != Some(2) {
        return Err(FamilyError::WrongClass { class });
    }
    let n = l.dim();
    let sdim = l.sdim();
    let derived = l.derived_subalgebra();
    let center = l.center();

    let mut columns: [Vec<Vector>; 2] = [Vec::new(), Vec::new()];
    let mut block_names: [Vec<String>; 2] = [Vec::new(), Vec::new()];
    let mut taken: Vec<String> = Vec::new();
    let mut sizes = [[0usize; 3]; 2];
    let mut s_vectors = Vec::new();
    for parity in Parity::both() {
        let p = parity.bit() as usize;
        let d_rows = derived.part(parity).row_vectors();
        let s_rows = extend_greedy(derived.part(parity), center.part(parity).row_vectors());
        let units: Vec<Vector> = sdim.block(parity).map(|c| unit_vector(n, c)).collect();
        let c_rows = extend_greedy(center.part(parity), units);
        for v in &c_rows {
            let idx = v.iter().position(|x| !x.is_zero()).expect("unit vector");
            block_names[p].push(unique_name(&mut taken, l.name(idx).to_string()));
        }
        for k in 0..d_rows.len() {
            block_names[p].push(unique_name(
                &mut taken,
                format!("d{}{}", parity_tag(parity), k + 1),
            ));
        }
        for k in 0..s_rows.len() {
            block_names[p].push(unique_name(
                &mut taken,
                format!("s{}{}", parity_tag(parity), k + 1),
            ));
        }
        sizes[p] = [c_rows.len(), d_rows.len(), s_rows.len()];
        s_vectors.extend(s_rows.iter().cloned());
        columns[p].extend(c_rows);
        columns[p].extend(d_rows);
        columns[p].extend(s_rows);
    }
    let layout = AdaptedLayout {
        complement: SuperDim::new(sizes[0][0], sizes[1][0]),
        derived: SuperDim::new(sizes[0][1], sizes[1][1]),
        central: SuperDim::new(sizes[0][2], sizes[1][2]),
    };
    if layout.sdim() != sdim {
        return Err(FamilyError::Decomposition(format!(
            "adapted basis has sdim {}, expected {sdim}",
            layout.sdim()
        )));
    }
    let all_columns: Vec<Vector> = columns.concat();
    let basis = Matrix::from_columns(&all_columns, n).map_err(AlgebraError::from)?;
    let adapted = l.change_basis(&basis, block_names.concat())?;

    let mut h_indices = Vec::new();
    for parity in Parity::both() {
        h_indices.extend(layout.indices(parity, AdaptedBlock::Complement));
        h_indices.extend(layout.indices(parity, AdaptedBlock::Derived));
    }
    h_indices.sort_unstable();
    let h = adapted.restrict(&h_indices)?;
    let h_vectors: Vec<Vector> = h_indices.iter().map(|&i| all_columns[i].clone()).collect();
    let h_subspace = Subspace::from_homogeneous(sdim, &h_vectors)?;
    let s = Subspace::from_homogeneous(sdim, &s_vectors)?;

    // H² = Z(H) = L² (inside H, L² is the Derived block)
    let hl = layout.complement;
    let h_derived_idx: Vec<usize> = (0..h.dim())
        .filter(|&i| {
            let p = h.parity(i);
            let local = if p.is_odd() { i - h.sdim().even } else { i };
            local >= hl.get(p)
        })
        .collect();
    let h_derived_expected = Subspace::from_homogeneous(
        h.sdim(),
        &h_derived_idx
            .iter()
            .map(|&i| unit_vector(h.dim(), i))
            .collect::<Vec<_>>(),
    )?;
    if h.derived_subalgebra() != h_derived_expected {
        return Err(FamilyError::Decomposition("H² differs from L²".into()));
    }
    if h.center() != h_derived_expected {
        return Err(FamilyError::Decomposition("Z(H) differs from L²".into()));
    }
    if !center.contains_subspace(&s) || !l.is_ideal(&s) {
        return Err(FamilyError::Decomposition(
            "S is not a central ideal".into(),
        ));
    }
    if h_subspace.dim() + s.dim() != n || !h_subspace.intersect(&s)?.is_zero() {
        return Err(FamilyError::Decomposition("L is not H ⊕ S".into()));
    }
    if !l.is_subalgebra(&h_subspace) {
        return Err(FamilyError::Decomposition("H is not a subalgebra".into()));
    }
    Ok(StandardDecomposition {
        h,
        h_subspace,
        s,
        adapted,
        basis,
        layout,
    })
}

fn parity_tag(p: Parity) -> &'static str {
    match p {
        Parity::Even => "",
        Parity::Odd => "'",
    }
}

/// Every nonzero entry of every map sits in a row of the `Derived` block
/// and a column of the `Complement` block.
fn block_pattern_holds(maps: &[&SuperLinearMap], layout: &AdaptedLayout) -> bool {
    maps.iter().all(|d| {
        let m = d.matrix();
        (0..m.rows()).all(|r| {
            (0..m.cols()).all(|c| {
                m[(r, c)].is_zero()
                    || (layout.block_of(r).1 == AdaptedBlock::Derived
                        && layout.block_of(c).1 == AdaptedBlock::Complement)
            })
        })
    })
}

/// Number of matrix positions a parity-`α` map may use in the free blocks.
fn free_block_positions(layout: &AdaptedLayout, parity: Parity) -> usize {
    Parity::both()
        .into_iter()
        .map(|col| layout.complement.get(col) * layout.derived.get(col + parity))
        .sum()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeisenbergReport {
    pub sdim: SuperDim,
    pub center: SuperDim,
    pub id_star: SuperDim,
    /// `sdim ID*` computed in the input basis.
    pub id_star_input_basis: SuperDim,
    /// `(m m1 + n n1 - m1² - n1², n m1 + m n1 - 2 n1 m1)`
    pub formula: SuperDim,
    /// `λ(H²; m - m1, n - n1)`
    pub bound: SuperDim,
    pub block_shape: bool,
    pub free_blocks: bool,
}

impl HeisenbergReport {
    pub fn matches_formula(&self) -> bool {
        self.id_star == self.formula && self.id_star_input_basis == self.formula
    }

    pub fn matches_bound(&self) -> bool {
        self.id_star == self.bound
    }

    pub fn passed(&self) -> bool {
        self.block_shape && self.free_blocks && self.matches_formula() && self.matches_bound()
    }
}

pub fn heisenberg_formula(m: usize, n: usize, m1: usize, n1: usize) -> SuperDim {
    SuperDim::new(
        m * m1 + n * n1 - m1 * m1 - n1 * n1,
        n * m1 + m * n1 - 2 * n1 * m1,
    )
}

/// Checks the block description of `ID*(H)` for a generalized Heisenberg `H`
/// in a basis listing the center last within each parity.
pub fn verify_heisenberg_idstar(h: &LieSuperalgebra) -> Result<HeisenbergReport, FamilyError> {
    if !is_generalized_heisenberg(h) {
        return Err(FamilyError::NotGeneralizedHeisenberg {
            derived: h.derived_subalgebra().sdim(),
            center: h.center().sdim(),
        });
    }
    let dec = standard_decomposition(h)?;
    let layout = dec.layout;
    let adapted_idstar = derivation::id_star(&dec.adapted);
    let maps: Vec<&SuperLinearMap> = adapted_idstar.maps().collect();
    let sdim = h.sdim();
    let center = layout.derived;
    let (m, n, m1, n1) = (sdim.even, sdim.odd, center.even, center.odd);
    let id_star = adapted_idstar.sdim();
    Ok(HeisenbergReport {
        sdim,
        center,
        id_star,
        id_star_input_basis: derivation::id_star(h).sdim(),
        formula: heisenberg_formula(m, n, m1, n1),
        bound: lambda_bound(center, m - m1, n - n1),
        block_shape: layout.central.total() == 0 && block_pattern_holds(&maps, &layout),
        free_blocks: id_star
            == SuperDim::new(
                free_block_positions(&layout, Parity::Even),
                free_block_positions(&layout, Parity::Odd),
            ),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Class2Report {
    pub layout: AdaptedLayout,
    pub id_star: SuperDim,
    pub id_star_h: SuperDim,
    /// Minimal generator pair of `L/Z(L)`.
    pub pair: SuperDim,
    pub bound: SuperDim,
    /// Every map kills `Z(L)` (hence `S`) and has image in `L²`.
    pub kills_center: bool,
    pub block_shape: bool,
}

impl Class2Report {
    pub fn tight(&self) -> bool {
        self.id_star == self.bound
    }

    pub fn passed(&self) -> bool {
        self.tight() && self.id_star == self.id_star_h && self.kills_center && self.block_shape
    }
}

/// `ID*(L) ≅ ID*(H)` and `sdim ID*(L) = λ(L²; p, q)` for class-2 `L`.
pub fn verify_class2_idstar(l: &LieSuperalgebra) -> Result<Class2Report, FamilyError> {
    let dec = standard_decomposition(l)?;
    let tower = derivation::DerivationTower::compute(&dec.adapted);
    let maps: Vec<&SuperLinearMap> = tower.id_star.maps().collect();
    let pair = central_quotient_pair(&dec.adapted, &tower.center)?;
    let derived = tower.derived.sdim();
    let kills_center = maps
        .iter()
        .all(|d| kills(d, &tower.center) && maps_into(d, &tower.derived));
    Ok(Class2Report {
        layout: dec.layout,
        id_star: tower.id_star.sdim(),
        id_star_h: derivation::id_star(&dec.h).sdim(),
        pair,
        bound: lambda_bound(derived, pair.even, pair.odd),
        kills_center,
        block_shape: block_pattern_holds(&maps, &dec.layout),
    })
}

/// The four parameter regimes of the model filiform `ID*` description.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FiliformCase {
    /// `m > n = 1`
    SingleEvenTail,
    /// `n > m = 1`
    SingleOddTail,
    /// `m ≥ n ≥ 2`
    OddAtLeastEven,
    /// `n > m ≥ 2`
    EvenExceedsOdd,
}

impl FiliformCase {
    pub fn classify(n: usize, m: usize) -> Result<Self, FamilyError> {
        match (n, m) {
            _ if n == 0 || m == 0 || n + m <= 2 => Err(FamilyError::FiliformOutOfRange { n, m }),
            (1, _) => Ok(Self::SingleEvenTail),
            (_, 1) => Ok(Self::SingleOddTail),
            _ if m >= n => Ok(Self::OddAtLeastEven),
            _ => Ok(Self::EvenExceedsOdd),
        }
    }

    /// Minimal generator pair of `L/Z(L)` stated for this case.
    pub fn expected_pair(self) -> SuperDim {
        match self {
            Self::SingleEvenTail => SuperDim::new(1, 1),
            Self::SingleOddTail => SuperDim::new(2, 0),
            Self::OddAtLeastEven | Self::EvenExceedsOdd => SuperDim::new(2, 1),
        }
    }

    pub fn expected_derived(self, n: usize, m: usize) -> SuperDim {
        match self {
            Self::SingleEvenTail => SuperDim::new(0, m - 1),
            Self::SingleOddTail => SuperDim::new(n - 1, 0),
            Self::OddAtLeastEven | Self::EvenExceedsOdd => SuperDim::new(n - 1, m - 1),
        }
    }

    /// `(m-1, m-1)`, `(2n-2, 0)` or `(2n+m-3, 2m+n-3)`.
    pub fn formula(self, n: usize, m: usize) -> SuperDim {
        match self {
            Self::SingleEvenTail => SuperDim::new(m - 1, m - 1),
            Self::SingleOddTail => SuperDim::new(2 * n - 2, 0),
            Self::OddAtLeastEven | Self::EvenExceedsOdd => {
                SuperDim::new(2 * n + m - 3, 2 * m + n - 3)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiliformReport {
    pub n: usize,
    pub m: usize,
    pub case: FiliformCase,
    pub derived: SuperDim,
    pub expected_derived: SuperDim,
    pub center: SuperDim,
    pub pair: SuperDim,
    pub expected_pair: SuperDim,
    /// `λ(L²; p, q)` from the computed `L²` and pair.
    pub bound: SuperDim,
    pub case_formula: SuperDim,
    pub id_star: SuperDim,
    /// `D(x(i+1)) = [x0, D xi]`, `D(y(j+1)) = [x0, D yj]`, `D(x0), D(x1),
    /// D(y1) ∈ L²` and `D(Z) = 0` for every basis map.
    pub shift_property: bool,
    /// `L/Z(L)` has the structure constants of `L^{n-1,m-1}` (cases 3 and 4).
    pub central_quotient_is_model: Option<bool>,
}

impl FiliformReport {
    pub fn bound_holds(&self) -> bool {
        self.id_star.leq(self.bound)
    }

    pub fn tight(&self) -> bool {
        self.id_star == self.bound
    }

    pub fn matches_case_formula(&self) -> bool {
        self.id_star == self.case_formula
    }

    pub fn passed(&self) -> bool {
        self.derived == self.expected_derived
            && self.center == SuperDim::new(1, 1)
            && self.pair == self.expected_pair
            && self.bound == self.case_formula
            && self.bound_holds()
            && self.tight()
            && self.matches_case_formula()
            && self.shift_property
            && self.central_quotient_is_model != Some(false)
    }
}

/// Shift/recurrence characterization of `ID*(L^{n,m})` for a single map.
pub fn filiform_shift_property(
    l: &LieSuperalgebra,
    n: usize,
    m: usize,
    d: &SuperLinearMap,
    derived: &Subspace,
    center: &Subspace,
) -> bool {
    let dim = l.dim();
    let x0 = unit_vector(dim, 0);
    let image = |i: usize| d.column(i);
    // (-1)^{α|x0|} with x0 even
    let sign: Scalar = scalar(crate::algebra::koszul_sign(d.parity(), Parity::Even));
    let shifted = |v: &Vector| -> Vector {
        l.bracket_vectors(&x0, v)
            .into_iter()
            .map(|x| x * &sign)
            .collect()
    };
    let y = |j: usize| n + j;
    let x_chain = (1..n).all(|i| image(i + 1) == shifted(&image(i)));
    let y_chain = (1..m).all(|j| image(y(j + 1)) == shifted(&image(y(j))));
    let generators = [0, 1, y(1)]
        .iter()
        .all(|&g| derived.contains(&image(g)).unwrap_or(false));
    x_chain && y_chain && generators && kills(d, center)
}

/// Computes `ID*(L^{n,m})` and compares it with the case description.
pub fn verify_filiform_idstar(n: usize, m: usize) -> Result<FiliformReport, FamilyError> {
    let case = FiliformCase::classify(n, m)?;
    let l = model_filiform(n, m);
    let tower = derivation::DerivationTower::compute(&l);
    let pair = central_quotient_pair(&l, &tower.center)?;
    let derived = tower.derived.sdim();
    let shift_property = tower
        .id_star
        .maps()
        .all(|d| filiform_shift_property(&l, n, m, d, &tower.derived, &tower.center));
    let central_quotient_is_model = match case {
        FiliformCase::OddAtLeastEven | FiliformCase::EvenExceedsOdd => {
            let q = l.quotient(&tower.center)?;
            let model = model_filiform(n - 1, m - 1);
            Some(q.algebra.with_names(model.names().to_vec())? == model)
        }
        _ => None,
    };
    Ok(FiliformReport {
        n,
        m,
        case,
        derived,
        expected_derived: case.expected_derived(n, m),
        center: tower.center.sdim(),
        pair,
        expected_pair: case.expected_pair(),
        bound: lambda_bound(derived, pair.even, pair.odd),
        case_formula: case.formula(n, m),
        id_star: tower.id_star.sdim(),
        shift_property,
        central_quotient_is_model,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn form(entries: &[(usize, usize, &[i64])]) -> Vec<FormEntry> {
        entries
            .iter()
            .map(|&(left, right, v)| FormEntry {
                left,
                right,
                value: v.iter().map(|&x| scalar(x)).collect(),
            })
            .collect()
    }

    #[test]
    fn filiform_constructor() {
        let l = model_filiform(3, 2);
        assert_eq!(l.sdim(), SuperDim::new(4, 2));
        assert_eq!(l.super_nilindex(), Some(SuperDim::new(3, 2)));
        assert!(model_filiform(5, 4).validate().is_valid());
        let trivial = model_filiform(1, 1);
        assert_eq!(trivial.sdim(), SuperDim::new(2, 1));
        assert!(trivial.is_abelian());
    }

    #[test]
    fn small_named_algebras() {
        let h = heisenberg_h01();
        assert!(h.validate().is_valid());
        let q = h.quotient(&h.derived_subalgebra()).unwrap();
        assert_eq!(q.algebra.sdim(), SuperDim::new(0, 1));
        assert_eq!(abelian(0, 0).dim(), 0);
        assert_eq!(
            abelian(1, 0).minimal_generator_pair().unwrap(),
            SuperDim::new(1, 0)
        );
    }

    #[test]
    fn classical_heisenberg_from_form() {
        let data = CentralExtensionData {
            quotient_sdim: SuperDim::new(2, 0),
            center_sdim: SuperDim::new(1, 0),
            form: form(&[(0, 1, &[1])]),
        };
        let h = generalized_heisenberg(&data).unwrap();
        assert!(h.validate().is_valid());
        assert_eq!(derivation::id_star(&h).sdim(), SuperDim::new(2, 0));
        assert_eq!(heisenberg_formula(3, 0, 1, 0), SuperDim::new(2, 0));
    }

    #[test]
    fn h01_from_form() {
        let data = CentralExtensionData {
            quotient_sdim: SuperDim::new(0, 1),
            center_sdim: SuperDim::new(1, 0),
            form: form(&[(0, 0, &[1])]),
        };
        let h = generalized_heisenberg(&data).unwrap();
        let relabeled = h.with_names(vec!["z".into(), "w".into()]).unwrap();
        assert_eq!(relabeled, heisenberg_h01());
    }

    #[test]
    fn degenerate_forms_are_rejected() {
        // x3 pairs with nothing
        let data = CentralExtensionData {
            quotient_sdim: SuperDim::new(3, 0),
            center_sdim: SuperDim::new(1, 0),
            form: form(&[(0, 1, &[1])]),
        };
        assert!(matches!(
            generalized_heisenberg(&data),
            Err(FamilyError::NotGeneralizedHeisenberg { .. })
        ));
        // image misses the second center vector
        let data = CentralExtensionData {
            quotient_sdim: SuperDim::new(2, 0),
            center_sdim: SuperDim::new(2, 0),
            form: form(&[(0, 1, &[1, 0])]),
        };
        assert!(generalized_heisenberg(&data).is_err());
        // grading violation: even pair into odd center
        let data = CentralExtensionData {
            quotient_sdim: SuperDim::new(2, 0),
            center_sdim: SuperDim::new(0, 1),
            form: form(&[(0, 1, &[1])]),
        };
        assert!(matches!(
            central_extension(&data),
            Err(FamilyError::InvalidForm(_))
        ));
        // inconsistent skew pair
        let data = CentralExtensionData {
            quotient_sdim: SuperDim::new(2, 0),
            center_sdim: SuperDim::new(1, 0),
            form: form(&[(0, 1, &[1]), (1, 0, &[1])]),
        };
        assert!(matches!(
            central_extension(&data),
            Err(FamilyError::InvalidForm(_))
        ));
    }

    #[test]
    fn generic_data_realizes_requested_sizes() {
        let data = generic_heisenberg_data(3, 2, 1, 1).unwrap();
        let h = generalized_heisenberg(&data).unwrap();
        assert_eq!(h.sdim(), SuperDim::new(3, 2));
        assert_eq!(h.center().sdim(), SuperDim::new(1, 1));
        assert!(generic_heisenberg_data(1, 0, 1, 0).is_none());
        assert!(generic_heisenberg_data(2, 0, 1, 0).is_none());
        assert!(generic_heisenberg_data(4, 0, 1, 0).is_none());
        assert!(generic_heisenberg_data(5, 0, 1, 0).is_some());
    }

    #[test]
    fn generalized_heisenberg_predicate() {
        assert!(is_generalized_heisenberg(&heisenberg_h01()));
        assert!(!is_generalized_heisenberg(&model_filiform(3, 3)));
        assert!(!is_generalized_heisenberg(&abelian(1, 1)));
        assert!(!is_generalized_heisenberg(&abelian(0, 0)));
    }

    #[test]
    fn standard_decomposition_examples() {
        let l = heisenberg_h01().direct_sum(&abelian(2, 3));
        let dec = standard_decomposition(&l).unwrap();
        assert_eq!(dec.h.sdim(), SuperDim::new(1, 1));
        assert!(is_generalized_heisenberg(&dec.h));
        assert_eq!(dec.s.sdim(), SuperDim::new(2, 3));

        let h = heisenberg_h01();
        let dec = standard_decomposition(&h).unwrap();
        assert!(dec.s.is_zero());
        assert_eq!(dec.h.sdim(), h.sdim());

        assert_eq!(
            standard_decomposition(&abelian(1, 1)).unwrap_err(),
            FamilyError::WrongClass { class: Some(1) }
        );
    }

    #[test]
    fn heisenberg_verifier_examples() {
        let r = verify_heisenberg_idstar(&heisenberg_h01()).unwrap();
        assert_eq!(r.id_star, SuperDim::new(0, 1));
        assert!(r.passed());
        let h = generalized_heisenberg(&generic_heisenberg_data(3, 2, 1, 1).unwrap()).unwrap();
        let r = verify_heisenberg_idstar(&h).unwrap();
        assert_eq!(r.id_star, SuperDim::new(3, 3));
        assert!(r.passed(), "{r:?}");
        assert!(verify_heisenberg_idstar(&model_filiform(2, 2))
            .unwrap()
            .passed());
        assert!(verify_heisenberg_idstar(&model_filiform(3, 3)).is_err());
    }

    #[test]
    fn class2_verifier_examples() {
        let l = heisenberg_h01().direct_sum(&abelian(1, 1));
        let r = verify_class2_idstar(&l).unwrap();
        assert_eq!(r.id_star, SuperDim::new(0, 1));
        assert!(r.passed(), "{r:?}");
        assert!(matches!(
            verify_class2_idstar(&abelian(1, 1)),
            Err(FamilyError::WrongClass { class: Some(1) })
        ));
    }

    #[test]
    fn filiform_case_dispatch() {
        assert!(FiliformCase::classify(1, 1).is_err());
        assert!(FiliformCase::classify(0, 3).is_err());
        assert_eq!(
            FiliformCase::classify(1, 4).unwrap(),
            FiliformCase::SingleEvenTail
        );
        assert_eq!(
            FiliformCase::classify(4, 1).unwrap(),
            FiliformCase::SingleOddTail
        );
        assert_eq!(
            FiliformCase::classify(2, 2).unwrap(),
            FiliformCase::OddAtLeastEven
        );
        assert_eq!(
            FiliformCase::classify(4, 3).unwrap(),
            FiliformCase::EvenExceedsOdd
        );
    }

    #[test]
    fn filiform_verifier_single_tail_cases() {
        let r = verify_filiform_idstar(1, 4).unwrap();
        assert_eq!(r.id_star, SuperDim::new(3, 3));
        assert!(r.passed(), "{r:?}");
        let r = verify_filiform_idstar(4, 1).unwrap();
        assert_eq!(r.id_star, SuperDim::new(6, 0));
        assert!(r.passed(), "{r:?}");
        let r = verify_filiform_idstar(3, 3).unwrap();
        assert_eq!(r.id_star, SuperDim::new(6, 6));
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn filiform_unequal_tails_fall_below_the_case_formula() {
        // Odd ID* has dimension (m-1) + 2 min(n-1, m-1): D(x1) and D(y1)
        // are cut down by D(xn) = 0 and D(ym) = 0.
        let r = verify_filiform_idstar(3, 4).unwrap();
        assert_eq!(r.id_star, SuperDim::new(7, 7));
        assert_eq!(r.case_formula, SuperDim::new(7, 8));
        assert!(r.bound_holds() && !r.tight() && r.shift_property);
        let r = verify_filiform_idstar(4, 3).unwrap();
        assert_eq!(r.id_star, SuperDim::new(8, 6));
        assert_eq!(r.case_formula, SuperDim::new(8, 7));
        assert!(r.bound_holds() && !r.tight() && r.shift_property);
    }

    #[test]
    fn random_class2_data_is_class_two() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..30 {
            let data = random_class2_data(&mut rng, 8);
            let l = central_extension(&data).unwrap();
            assert!(l.validate().is_valid());
            assert_eq!(l.nilpotency_class(), Some(2));
            assert!(l.dim() <= 8);
        }
    }
}
