//! Arithmetic conditions on discriminants and the lattice-level nonemptiness
//! criterion for `C_M`.

use num_integer::Roots;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::factor::factorize;
use crate::lattice::{contains, is_saturated, minimum, AmbientVector, Sublattice};
use crate::linalg::is_positive_definite;

/// `C_d` is nonempty and irreducible: `d ≥ 8` and `d ≡ 0, 2 (mod 6)`.
pub fn satisfies_star(d: i64) -> bool {
    d >= 8 && matches!(d.rem_euclid(6), 0 | 2)
}

fn exact_sqrt(n: i64) -> Option<i64> {
    if n < 0 {
        return None;
    }
    let r = n.sqrt();
    (r * r == n).then_some(r)
}

/// The `m ≥ 2` with `d = 6m²` or `d = 6m² + 2`, if any.
///
/// A nonempty product of squared primes is exactly a square `m²` with `m ≥ 2`.
pub fn satisfies_double_star(d: i64) -> Option<i64> {
    let n = match d.rem_euclid(6) {
        0 => d / 6,
        2 => (d - 2) / 6,
        _ => return None,
    };
    exact_sqrt(n).filter(|&m| m >= 2)
}

/// `4 ∤ d`, `9 ∤ d`, and no odd prime `p ≡ 2 (mod 3)` divides `d`.
pub fn has_associated_k3(d: i64) -> bool {
    if d < 1 || d % 4 == 0 || d % 9 == 0 {
        return false;
    }
    factorize(d as u64).iter().all(|&(p, _)| p == 2 || p % 3 != 2)
}

/// Classification of a single discriminant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DiscriminantReport {
    pub d: i64,
    pub star: bool,
    pub double_star: bool,
    pub double_star_witness: Option<i64>,
    pub k3_admissible: bool,
    pub factorization: Vec<(u64, u32)>,
}

impl DiscriminantReport {
    /// Requires `d ≥ 1`.
    pub fn new(d: i64) -> Self {
        assert!(d >= 1, "discriminant must be positive");
        let witness = satisfies_double_star(d);
        DiscriminantReport {
            d,
            star: satisfies_star(d),
            double_star: witness.is_some(),
            double_star_witness: witness,
            k3_admissible: has_associated_k3(d),
            factorization: factorize(d as u64),
        }
    }
}

/// Outcome of the four lattice checks behind nonemptiness of `C_M`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CriterionReport {
    pub contains_h_squared: bool,
    pub positive_definite: bool,
    pub saturated: bool,
    /// Absent when the Gram matrix is not positive definite.
    pub minimum_norm: Option<i64>,
    pub pass: bool,
}

/// `h² ∈ M`, `M` positive definite, `M` saturated in `L`, and no nonzero
/// vector of norm below 3.
pub fn yang_yu_certifiable(m: &Sublattice) -> CriterionReport {
    let contains_h_squared = contains(m, &AmbientVector::h_squared());
    let positive_definite = is_positive_definite(m.gram()).expect("Gram matrices are symmetric");
    let saturated = is_saturated(m);
    let minimum_norm = positive_definite
        .then(|| minimum(m.gram()).expect("positive definite").to_i64().expect("minimum fits in i64"));
    let pass = contains_h_squared && positive_definite && saturated && minimum_norm.is_some_and(|n| n >= 3);
    CriterionReport { contains_h_squared, positive_definite, saturated, minimum_norm, pass }
}

/// Decomposition `d = 6·4^k·s² + 2` with `k ≥ 1`, `s ≥ 2`, taking the largest `k`.
pub fn conjecture_shape(d: i64) -> Option<(u32, i64)> {
    if d < 2 || (d - 2) % 6 != 0 {
        return None;
    }
    // 4^k·s² = (2^k·s)², so (d − 2)/6 must be an even square
    let r = exact_sqrt((d - 2) / 6)?;
    if r == 0 || r % 2 != 0 {
        return None;
    }
    let v = r.trailing_zeros();
    let odd = r >> v;
    let k = if odd >= 3 { v } else { v - 1 };
    (k >= 1).then(|| (k, r >> k))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureRow {
    pub d: i64,
    pub k: u32,
    pub s: i64,
    pub admissible: bool,
}

/// Every conjecture-shaped `d ≤ limit`, ascending.
pub fn conjecture_sweep(limit: i64) -> Vec<ConjectureRow> {
    let mut rows = Vec::new();
    // shaped d are exactly 6r² + 2 with r even and r ≥ 4
    let mut r: i64 = 4;
    while 6 * r * r + 2 <= limit {
        let d = 6 * r * r + 2;
        let (k, s) = conjecture_shape(d).expect("even r ≥ 4 is always shaped");
        rows.push(ConjectureRow { d, k, s, admissible: has_associated_k3(d) });
        r += 2;
    }
    rows
}
