//! The rank-23 ambient lattice `E8 ⊕ E8 ⊕ U ⊕ U ⊕ I3`, its vectors, and
//! sublattices given by explicit bases.

mod enumerate;

pub use enumerate::{minimum, short_vectors};

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{invariant_factors, solve_integer, IntMatrix};

pub const RANK: usize = 23;

/// Offsets of each orthogonal block in the fixed coordinate order.
pub const E8_1: usize = 0;
pub const E8_2: usize = 8;
pub const U_1: usize = 16;
pub const U_2: usize = 18;
pub const I3: usize = 20;

const E8_EDGES: [(usize, usize); 7] = [(0, 1), (1, 2), (2, 3), (2, 4), (4, 5), (5, 6), (6, 7)];

/// Gram matrix of E8 in the basis `t_1..t_8`: node 3 carries the branch,
/// joined to nodes 2, 4 and 5.
pub fn e8_gram() -> IntMatrix {
    let mut g = IntMatrix::zeros(8, 8);
    for i in 0..8 {
        g[(i, i)] = BigInt::from(2);
    }
    for &(i, j) in &E8_EDGES {
        g[(i, j)] = BigInt::from(-1);
        g[(j, i)] = BigInt::from(-1);
    }
    g
}

/// Whether `t_i` and `t_j` (0-based) are joined in the E8 diagram.
pub fn e8_adjacent(i: usize, j: usize) -> bool {
    E8_EDGES.contains(&(i.min(j), i.max(j)))
}

pub struct AmbientLattice;

impl AmbientLattice {
    pub fn gram() -> IntMatrix {
        let mut g = IntMatrix::zeros(RANK, RANK);
        let e8 = e8_gram();
        for off in [E8_1, E8_2] {
            for i in 0..8 {
                for j in 0..8 {
                    g[(off + i, off + j)] = e8[(i, j)].clone();
                }
            }
        }
        for off in [U_1, U_2] {
            g[(off, off + 1)] = BigInt::one();
            g[(off + 1, off)] = BigInt::one();
        }
        for i in 0..3 {
            g[(I3 + i, I3 + i)] = BigInt::one();
        }
        g
    }

    pub fn basis_labels() -> Vec<String> {
        let mut labels = Vec::with_capacity(RANK);
        for k in 1..=2 {
            labels.extend((1..=8).map(|i| format!("t{k}_{i}")));
        }
        for k in 1..=2 {
            labels.extend((1..=2).map(|i| format!("e{k}_{i}")));
        }
        labels.extend(["i3_1", "i3_2", "i3_3"].map(String::from));
        labels
    }
}

/// Element of the ambient lattice in block coordinates.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AmbientVector(pub [i64; RANK]);

impl AmbientVector {
    pub fn zero() -> Self {
        AmbientVector([0; RANK])
    }

    fn unit(index: usize) -> Self {
        let mut v = Self::zero();
        v.0[index] = 1;
        v
    }

    /// Square of the hyperplane class, `(1,1,1)` in the I3 block.
    pub fn h_squared() -> Self {
        Self::i3([1, 1, 1])
    }

    /// Vector supported in the I3 block.
    pub fn i3(p: [i64; 3]) -> Self {
        let mut v = Self::zero();
        v.0[I3..I3 + 3].copy_from_slice(&p);
        v
    }

    /// `t^copy_index` with `copy ∈ {1,2}` and `index ∈ 1..=8`.
    pub fn t(copy: usize, index: usize) -> Self {
        assert!((1..=2).contains(&copy) && (1..=8).contains(&index));
        Self::unit(if copy == 1 { E8_1 } else { E8_2 } + index - 1)
    }

    /// `e^copy_index` with `copy ∈ {1,2}` and `index ∈ {1,2}`.
    pub fn e(copy: usize, index: usize) -> Self {
        assert!((1..=2).contains(&copy) && (1..=2).contains(&index));
        Self::unit(if copy == 1 { U_1 } else { U_2 } + index - 1)
    }

    pub fn a1() -> Self {
        A2Embedding::standard().a1
    }

    pub fn a2() -> Self {
        A2Embedding::standard().a2
    }

    pub fn coords(&self) -> &[i64; RANK] {
        &self.0
    }

    pub fn i3_part(&self) -> [i64; 3] {
        [self.0[I3], self.0[I3 + 1], self.0[I3 + 2]]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn norm(&self) -> BigInt {
        inner_product(self, self)
    }

    pub fn to_bigints(&self) -> Vec<BigInt> {
        self.0.iter().map(|&x| BigInt::from(x)).collect()
    }
}

impl fmt::Debug for AmbientVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels = AmbientLattice::basis_labels();
        let terms: Vec<String> =
            self.0.iter().zip(&labels).filter(|(c, _)| **c != 0).map(|(c, l)| format!("{c}·{l}")).collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl Add for AmbientVector {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (a, b) in self.0.iter_mut().zip(rhs.0) {
            *a += b;
        }
        self
    }
}

impl Sub for AmbientVector {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for AmbientVector {
    type Output = Self;
    fn neg(mut self) -> Self {
        for a in self.0.iter_mut() {
            *a = -*a;
        }
        self
    }
}

impl Mul<AmbientVector> for i64 {
    type Output = AmbientVector;
    fn mul(self, mut rhs: AmbientVector) -> AmbientVector {
        for a in rhs.0.iter_mut() {
            *a *= self;
        }
        rhs
    }
}

/// Bilinear form of the ambient lattice.
pub fn inner_product(u: &AmbientVector, v: &AmbientVector) -> BigInt {
    let (u, v) = (&u.0, &v.0);
    let mut acc: i128 = 0;
    for off in [E8_1, E8_2] {
        for i in 0..8 {
            acc += 2 * u[off + i] as i128 * v[off + i] as i128;
        }
        for &(i, j) in &E8_EDGES {
            acc -= u[off + i] as i128 * v[off + j] as i128 + u[off + j] as i128 * v[off + i] as i128;
        }
    }
    for off in [U_1, U_2] {
        acc += u[off] as i128 * v[off + 1] as i128 + u[off + 1] as i128 * v[off] as i128;
    }
    for i in I3..I3 + 3 {
        acc += u[i] as i128 * v[i] as i128;
    }
    BigInt::from(acc)
}

/// Pairwise inner products of `basis`.
pub fn gram_of(basis: &[AmbientVector]) -> Result<IntMatrix> {
    if basis.is_empty() {
        return Err(Error::DimensionMismatch("empty basis".into()));
    }
    let k = basis.len();
    let mut g = IntMatrix::zeros(k, k);
    for i in 0..k {
        for j in i..k {
            let v = inner_product(&basis[i], &basis[j]);
            g[(j, i)] = v.clone();
            g[(i, j)] = v;
        }
    }
    Ok(g)
}

/// The A2 lattice sitting inside `(h²)^⊥ ∩ I3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct A2Embedding {
    pub a1: AmbientVector,
    pub a2: AmbientVector,
}

impl A2Embedding {
    /// `a1 = (1,-1,0)`, `a2 = (0,-1,1)`.
    pub fn standard() -> Self {
        A2Embedding { a1: AmbientVector::i3([1, -1, 0]), a2: AmbientVector::i3([0, -1, 1]) }
    }
}

/// Sublattice spanned by an ordered, linearly independent list of vectors.
#[derive(Clone, PartialEq, Eq)]
pub struct Sublattice {
    basis: Vec<AmbientVector>,
    gram: IntMatrix,
}

impl Sublattice {
    pub fn new(basis: Vec<AmbientVector>) -> Result<Self> {
        if basis.is_empty() {
            return Err(Error::DimensionMismatch("empty basis".into()));
        }
        let coords = coordinate_matrix(&basis);
        if coords.rank() != basis.len() {
            return Err(Error::DependentBasis);
        }
        let gram = gram_of(&basis)?;
        Ok(Sublattice { basis, gram })
    }

    pub fn basis(&self) -> &[AmbientVector] {
        &self.basis
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// The 23×k matrix whose columns are the basis vectors.
    pub fn coordinate_matrix(&self) -> IntMatrix {
        coordinate_matrix(&self.basis)
    }

    /// Coordinates of `v` in this basis, if `v` lies in the sublattice.
    pub fn coordinates_of(&self, v: &AmbientVector) -> Option<Vec<BigInt>> {
        solve_integer(&self.coordinate_matrix(), &v.to_bigints()).expect("dimensions agree by construction")
    }
}

impl fmt::Debug for Sublattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Sublattice").field("basis", &self.basis).field("gram", &self.gram).finish()
    }
}

pub fn coordinate_matrix(basis: &[AmbientVector]) -> IntMatrix {
    let mut m = IntMatrix::zeros(RANK, basis.len().max(1));
    for (j, v) in basis.iter().enumerate() {
        for i in 0..RANK {
            m[(i, j)] = BigInt::from(v.0[i]);
        }
    }
    m
}

fn all_units(factors: &[BigInt], expected: usize) -> bool {
    factors.len() == expected && factors.iter().all(One::is_one)
}

/// `m = (m ⊗ Q) ∩ L`: every invariant factor of the coordinate matrix is 1.
pub fn is_saturated(m: &Sublattice) -> bool {
    all_units(&invariant_factors(&m.coordinate_matrix()), m.rank())
}

pub fn contains(m: &Sublattice, v: &AmbientVector) -> bool {
    v.is_zero() || m.coordinates_of(v).is_some()
}

/// Whether `k` is saturated inside `m`. Every basis vector of `k` must lie in `m`.
pub fn saturation_in(k: &Sublattice, m: &Sublattice) -> Result<bool> {
    let mut coords = IntMatrix::zeros(m.rank(), k.rank());
    for (j, v) in k.basis().iter().enumerate() {
        let x = m.coordinates_of(v).ok_or(Error::ContainmentViolation(j))?;
        for (i, xi) in x.into_iter().enumerate() {
            coords[(i, j)] = xi;
        }
    }
    Ok(all_units(&invariant_factors(&coords), k.rank()))
}

/// Rank-2 sublattice `<h², v>` and its discriminant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labelling {
    sub: Sublattice,
    discriminant: BigInt,
}

impl Labelling {
    pub fn new(v: AmbientVector) -> Result<Self> {
        let sub = Sublattice::new(vec![AmbientVector::h_squared(), v])?;
        let discriminant = labelling_discriminant(&v);
        Ok(Labelling { sub, discriminant })
    }

    pub fn sublattice(&self) -> &Sublattice {
        &self.sub
    }

    pub fn generator(&self) -> &AmbientVector {
        &self.sub.basis()[1]
    }

    pub fn discriminant(&self) -> &BigInt {
        &self.discriminant
    }
}

/// `3·(v·v) − (h²·v)²`, the determinant of the Gram of `<h², v>`.
pub fn labelling_discriminant(v: &AmbientVector) -> BigInt {
    let hv = inner_product(&AmbientVector::h_squared(), v);
    BigInt::from(3) * v.norm() - &hv * &hv
}
