//! Fincke-Pohst enumeration of short vectors of a positive definite integral
//! quadratic form, carried out entirely in exact rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::{is_positive_definite, IntMatrix};

/// `Q(x) = Σ_i q_i (x_i + Σ_{j>i} μ_ij x_j)²`
struct Completion {
    q: Vec<BigRational>,
    mu: Vec<Vec<BigRational>>,
}

impl Completion {
    fn new(g: &IntMatrix) -> Self {
        let n = g.rows();
        let mut a: Vec<Vec<BigRational>> =
            g.to_rows().into_iter().map(|r| r.into_iter().map(BigRational::from_integer).collect()).collect();
        let mut q = Vec::with_capacity(n);
        let mut mu = vec![vec![BigRational::zero(); n]; n];
        for i in 0..n {
            let qi = a[i][i].clone();
            for j in i + 1..n {
                mu[i][j] = &a[i][j] / &qi;
            }
            for j in i + 1..n {
                for l in j..n {
                    let v = &mu[i][j] * &a[i][l];
                    a[j][l] -= v;
                    if l != j {
                        a[l][j] = a[j][l].clone();
                    }
                }
            }
            q.push(qi);
        }
        Completion { q, mu }
    }
}

/// Integers `x` with `(x + c)² ≤ t`, as an inclusive range (possibly empty).
fn admissible_range(c: &BigRational, t: &BigRational) -> Option<(i64, i64)> {
    let fits = |x: i64| {
        let s = BigRational::from_integer(BigInt::from(x)) + c;
        &(&s * &s) <= t
    };
    let base = (-c).floor().to_integer().to_i64().expect("enumeration center fits in i64");
    let mut lo = None;
    let mut hi = None;
    if fits(base) {
        let mut x = base;
        while fits(x - 1) {
            x -= 1;
        }
        lo = Some(x);
        hi = Some(base);
    }
    if fits(base + 1) {
        let mut x = base + 1;
        while fits(x + 1) {
            x += 1;
        }
        hi = Some(x);
        lo = lo.or(Some(base + 1));
    }
    lo.zip(hi)
}

fn canonical(x: &[i64]) -> bool {
    x.iter().find(|&&v| v != 0).is_some_and(|&v| v > 0)
}

/// One representative of each `±x` pair of nonzero vectors with
/// `xᵀ g x ≤ bound`, normalized so the first nonzero entry is positive and
/// sorted lexicographically.
pub fn short_vectors(g: &IntMatrix, bound: i64) -> Result<Vec<Vec<i64>>> {
    if !is_positive_definite(g)? {
        return Err(Error::NotPositiveDefinite);
    }
    if bound <= 0 {
        return Ok(Vec::new());
    }
    let n = g.rows();
    let comp = Completion::new(g);
    let mut out = Vec::new();
    let mut x = vec![0i64; n];
    let total = BigRational::from_integer(BigInt::from(bound));
    descend(&comp, n, &total, &mut x, &mut out);
    out.sort();
    Ok(out)
}

fn descend(comp: &Completion, level: usize, remaining: &BigRational, x: &mut [i64], out: &mut Vec<Vec<i64>>) {
    if level == 0 {
        if canonical(x) {
            out.push(x.to_vec());
        }
        return;
    }
    let i = level - 1;
    let n = x.len();
    let mut center = BigRational::zero();
    for j in i + 1..n {
        if x[j] != 0 {
            center += &comp.mu[i][j] * BigRational::from_integer(BigInt::from(x[j]));
        }
    }
    let t = remaining / &comp.q[i];
    let Some((lo, hi)) = admissible_range(&center, &t) else { return };
    for xi in lo..=hi {
        x[i] = xi;
        let s = BigRational::from_integer(BigInt::from(xi)) + &center;
        let rest = remaining - &comp.q[i] * &s * &s;
        debug_assert!(!rest.is_negative());
        descend(comp, i, &rest, x, out);
    }
    x[i] = 0;
}

/// Least nonzero value of the form, found by raising the bound 1, 2, 3, …
pub fn minimum(g: &IntMatrix) -> Result<BigInt> {
    if !is_positive_definite(g)? {
        return Err(Error::NotPositiveDefinite);
    }
    let mut bound = 1i64;
    loop {
        let found = short_vectors(g, bound)?;
        if let Some(best) = found
            .iter()
            .map(|v| g.quadratic_form(&v.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>()).expect("square"))
            .min()
        {
            return Ok(best);
        }
        bound += 1;
    }
}
