//! Z2-graded algebras given by sparse structure-constant tables.
//!
//! A superalgebra here is a basis with a parity per index and a table of
//! products b_i * b_j = sum_k c * b_k. The module provides the bilinear
//! product, grading and supercommutativity audits, right-multiplication
//! operators, Grassmann algebras and envelopes, the Jordan-superidentity
//! checker, and the JSON interchange format.

mod format;
mod grassmann;
mod jordan;

pub use format::{AlgebraDoc, FieldDoc, Meta};
pub use grassmann::{grassmann_algebra, grassmann_envelope, GrassmannEnvelope};
pub use jordan::{check_jordan_super, check_jordan_super_with, JordanFailure, JordanReport};

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalars::{Field, Scalar};

/// Parity of a homogeneous basis element or map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_u8(x: u8) -> Result<Parity> {
        match x {
            0 => Ok(Parity::Even),
            1 => Ok(Parity::Odd),
            _ => Err(Error::InvalidTable(format!("parity value {x} is not 0 or 1"))),
        }
    }

    pub fn as_u8(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn xor(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// The Koszul sign (-1)^{p(x) p(y)} as a boolean: true means negative.
    pub fn koszul_negates(self, other: Parity) -> bool {
        self == Parity::Odd && other == Parity::Odd
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parity::Even => write!(f, "even"),
            Parity::Odd => write!(f, "odd"),
        }
    }
}

/// A coefficient vector in a superalgebra's basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Element {
    coeffs: Vec<Scalar>,
}

impl Element {
    pub fn from_coeffs(coeffs: Vec<Scalar>) -> Element {
        Element { coeffs }
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Scalar {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &Element) -> Element {
        assert_eq!(self.coeffs.len(), other.coeffs.len());
        Element {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Element) -> Element {
        assert_eq!(self.coeffs.len(), other.coeffs.len());
        Element {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn neg(&self) -> Element {
        Element { coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        Element { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }
}

/// A single violation of the grading compatibility rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradingViolation {
    pub i: usize,
    pub j: usize,
    pub k: usize,
}

/// Finite-dimensional superalgebra over an exact field, with a sparse
/// structure-constant table. Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Superalgebra {
    field: Field,
    parity: Vec<Parity>,
    labels: Vec<String>,
    // (i, j) -> sorted [(k, c)] with nonzero c and at most one entry per k
    table: BTreeMap<(usize, usize), Vec<(usize, Scalar)>>,
    // sizes of direct summands; [dim] when monolithic, empty when dim = 0
    blocks: Vec<usize>,
}

impl Superalgebra {
    pub fn new(
        field: Field,
        parity: Vec<Parity>,
        labels: Vec<String>,
        entries: Vec<(usize, usize, usize, Scalar)>,
    ) -> Result<Superalgebra> {
        let dim = parity.len();
        if labels.len() != dim {
            return Err(Error::InvalidTable(format!(
                "{} labels for dimension {dim}",
                labels.len()
            )));
        }
        let mut table: BTreeMap<(usize, usize), Vec<(usize, Scalar)>> = BTreeMap::new();
        for (i, j, k, c) in entries {
            if i >= dim || j >= dim || k >= dim {
                return Err(Error::InvalidTable(format!(
                    "entry ({i}, {j}, {k}) out of range for dimension {dim}"
                )));
            }
            if c.field() != field {
                return Err(Error::FieldMismatch(c.field().to_string(), field.to_string()));
            }
            if c.is_zero() {
                return Err(Error::InvalidTable(format!(
                    "zero coefficient stored at ({i}, {j}, {k})"
                )));
            }
            let row = table.entry((i, j)).or_default();
            if row.iter().any(|(kk, _)| *kk == k) {
                return Err(Error::InvalidTable(format!(
                    "duplicate entry for ({i}, {j}, {k})"
                )));
            }
            row.push((k, c));
        }
        for row in table.values_mut() {
            row.sort_by_key(|(k, _)| *k);
        }
        let blocks = if dim == 0 { vec![] } else { vec![dim] };
        Ok(Superalgebra { field, parity, labels, table, blocks })
    }

    pub fn with_blocks(mut self, blocks: Vec<usize>) -> Result<Superalgebra> {
        if blocks.iter().sum::<usize>() != self.dim() {
            return Err(Error::InvalidTable(format!(
                "block sizes {blocks:?} do not sum to dimension {}",
                self.dim()
            )));
        }
        self.blocks = blocks;
        Ok(self)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.parity.len()
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.parity[i]
    }

    pub fn parities(&self) -> &[Parity] {
        &self.parity
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    pub fn even_dim(&self) -> usize {
        self.parity.iter().filter(|p| **p == Parity::Even).count()
    }

    pub fn odd_dim(&self) -> usize {
        self.dim() - self.even_dim()
    }

    /// The structure constants of b_i * b_j, sorted by target index.
    pub fn product_row(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        self.table.get(&(i, j)).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn table_entries(&self) -> impl Iterator<Item = (usize, usize, usize, &Scalar)> {
        self.table
            .iter()
            .flat_map(|((i, j), row)| row.iter().map(move |(k, c)| (*i, *j, *k, c)))
    }

    pub fn zero_element(&self) -> Element {
        Element { coeffs: vec![self.field.zero(); self.dim()] }
    }

    pub fn basis_element(&self, i: usize) -> Element {
        let mut e = self.zero_element();
        e.coeffs[i] = self.field.one();
        e
    }

    pub fn element_from(&self, coeffs: Vec<Scalar>) -> Result<Element> {
        if coeffs.len() != self.dim() {
            return Err(Error::InvalidTable(format!(
                "element has {} coefficients for dimension {}",
                coeffs.len(),
                self.dim()
            )));
        }
        for c in &coeffs {
            if c.field() != self.field {
                return Err(Error::FieldMismatch(c.field().to_string(), self.field.to_string()));
            }
        }
        Ok(Element { coeffs })
    }

    /// Parity of a homogeneous element; `None` for 0 or a mixed element.
    pub fn element_parity(&self, u: &Element) -> Option<Parity> {
        let mut seen = None;
        for (i, c) in u.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            match seen {
                None => seen = Some(self.parity[i]),
                Some(p) if p == self.parity[i] => {}
                Some(_) => return None,
            }
        }
        seen
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> Element {
        let mut out = self.zero_element();
        for (k, c) in self.product_row(i, j) {
            out.coeffs[*k] = &out.coeffs[*k] + c;
        }
        out
    }

    /// Bilinear extension of the structure-constant table.
    pub fn mul(&self, u: &Element, v: &Element) -> Element {
        assert_eq!(u.coeffs.len(), self.dim(), "element does not belong to this algebra");
        assert_eq!(v.coeffs.len(), self.dim(), "element does not belong to this algebra");
        let mut out = self.zero_element();
        for (i, a) in u.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in v.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in self.product_row(i, j) {
                    out.coeffs[*k] = &out.coeffs[*k] + &(&ab * c);
                }
            }
        }
        out
    }

    /// Lists every table entry violating parity[k] = parity[i] + parity[j].
    pub fn validate_grading(&self) -> Vec<GradingViolation> {
        let mut out = Vec::new();
        for (i, j, k, _) in self.table_entries() {
            if self.parity[k] != self.parity[i].xor(self.parity[j]) {
                out.push(GradingViolation { i, j, k });
            }
        }
        out
    }

    /// Lists basis pairs (i, j), i <= j, where b_i b_j and the Koszul-signed
    /// b_j b_i disagree.
    pub fn check_supercommutative(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.dim() {
            for j in i..self.dim() {
                let forward = self.mul_basis(i, j);
                let mut backward = self.mul_basis(j, i);
                if self.parity[i].koszul_negates(self.parity[j]) {
                    backward = backward.neg();
                }
                if forward != backward {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Dimension of the span of all basis products, i.e. of A*A.
    pub fn product_span_dim(&self) -> usize {
        let rows: Vec<Vec<Scalar>> = self
            .table
            .keys()
            .map(|&(i, j)| self.mul_basis(i, j).coeffs)
            .collect();
        if rows.is_empty() {
            return 0;
        }
        Matrix::from_rows(self.field, rows).rank()
    }

    /// Whether u acts as a two-sided unit on every basis element.
    pub fn is_unit(&self, u: &Element) -> bool {
        (0..self.dim()).all(|j| {
            let b = self.basis_element(j);
            self.mul(u, &b) == b && self.mul(&b, u) == b
        })
    }

    /// Renders an element against the basis labels, e.g. "2*uz + w".
    pub fn render_element(&self, u: &Element) -> String {
        let mut parts = Vec::new();
        for (i, c) in u.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if c.is_one() {
                parts.push(self.labels[i].clone());
            } else {
                parts.push(format!("{}*{}", c, self.labels[i]));
            }
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

/// A homogeneous linear self-map: an n x n matrix whose column j is the
/// image of basis element j, plus a parity tag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomMap {
    parity: Parity,
    matrix: Matrix,
}

impl HomMap {
    pub fn new(parity: Parity, matrix: Matrix) -> HomMap {
        assert_eq!(matrix.rows(), matrix.cols(), "self-maps are square");
        HomMap { parity, matrix }
    }

    pub fn identity(a: &Superalgebra) -> HomMap {
        HomMap { parity: Parity::Even, matrix: Matrix::identity(a.field(), a.dim()) }
    }

    pub fn zero(field: Field, dim: usize, parity: Parity) -> HomMap {
        HomMap { parity, matrix: Matrix::zeros(field, dim, dim) }
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn apply(&self, u: &Element) -> Element {
        Element::from_coeffs(self.matrix.mul_vec(u.coeffs()))
    }

    /// Image of basis element j.
    pub fn column(&self, j: usize) -> Element {
        Element::from_coeffs(self.matrix.col(j))
    }

    /// Entry (k, j) vanishes unless parity[k] = parity[j] + q.
    pub fn respects_parity(&self, a: &Superalgebra) -> bool {
        for k in 0..self.dim() {
            for j in 0..self.dim() {
                if !self.matrix[(k, j)].is_zero()
                    && a.parity(k) != a.parity(j).xor(self.parity)
                {
                    return false;
                }
            }
        }
        true
    }

    pub fn compose(&self, other: &HomMap) -> HomMap {
        HomMap {
            parity: self.parity.xor(other.parity),
            matrix: self.matrix.mat_mul(&other.matrix),
        }
    }

    pub fn add(&self, other: &HomMap) -> HomMap {
        assert_eq!(self.parity, other.parity, "cannot add maps of different parity");
        HomMap { parity: self.parity, matrix: self.matrix.add(&other.matrix) }
    }

    pub fn sub(&self, other: &HomMap) -> HomMap {
        assert_eq!(self.parity, other.parity, "cannot subtract maps of different parity");
        HomMap { parity: self.parity, matrix: self.matrix.sub(&other.matrix) }
    }

    pub fn scale(&self, c: &Scalar) -> HomMap {
        HomMap { parity: self.parity, matrix: self.matrix.scale(c) }
    }
}

/// The right-multiplication operator R_z: y -> z * y. Requires z homogeneous;
/// the parity of the map is the parity of z.
pub fn right_mul(a: &Superalgebra, z: &Element) -> Result<HomMap> {
    let parity = a.element_parity(z).ok_or(Error::NotHomogeneous)?;
    let mat = Matrix::from_fn(a.field(), a.dim(), a.dim(), |k, j| {
        a.mul(z, &a.basis_element(j)).coeff(k).clone()
    });
    Ok(HomMap::new(parity, mat))
}
