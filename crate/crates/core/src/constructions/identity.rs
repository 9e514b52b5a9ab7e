//! Completed-square expressions for `⟨v, v⟩` on the small constructions.

use num_bigint::BigInt;

use super::{paper_gram, perfect_sqrt, CaseId};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdentityForm {
    /// The displayed expression with the missing `+` restored.
    Corrected,
    /// Exactly as displayed, including the product `(x₁+x₂)²(x₁+x₃)²`.
    AsPrinted,
}

fn sq(v: BigInt) -> BigInt {
    &v * &v
}

/// `(⟨v, v⟩, expression)` at `v = Σ xᵢ bᵢ` over the construction's basis.
pub fn expected_identity(
    case: CaseId,
    params: &[i64],
    point: &[i64],
    form: IdentityForm,
) -> Result<(BigInt, BigInt)> {
    use CaseId::*;
    let gram = paper_gram(case, params)?;
    if point.len() != gram.rows() {
        return Err(Error::DimensionMismatch(format!(
            "{case} has rank {}, point has {} coordinates",
            gram.rows(),
            point.len()
        )));
    }
    let x: Vec<BigInt> = point.iter().map(|&c| BigInt::from(c)).collect();
    let lhs = gram.quadratic_form(&x)?;
    let n: Vec<BigInt> = params.iter().map(|&c| BigInt::from(c)).collect();
    let two = BigInt::from(2);
    // shared head: 2n₁x₂² + 2n₂x₃², then the slot-3 (and slot-4) terms
    let head = &two * &n[0] * sq(x[1].clone()) + &two * &n[1] * sq(x[2].clone());
    let plus = |i: usize| sq(&x[0] + &x[i]);
    let rhs = match case {
        LemmaCase1 | LemmaCase2 | LemmaCase3 | LemmaCase4 => {
            let body = head + &two * &n[2] * sq(x[3].clone());
            match case {
                LemmaCase1 => BigInt::from(3) * sq(x[0].clone()) + body,
                LemmaCase2 => &two * sq(x[0].clone()) + body + plus(3),
                LemmaCase3 => sq(x[0].clone()) + body + plus(2) + plus(3),
                _ => match form {
                    IdentityForm::Corrected => body + plus(1) + plus(2) + plus(3),
                    IdentityForm::AsPrinted => body + plus(1) * plus(2) + plus(3),
                },
            }
        }
        PropN4 | ThmCase1 | ThmCase2 | ThmCase3 | ThmCase4 | ThmCase5 => {
            let m3 = BigInt::from(perfect_sqrt(params[2]).expect("validated square"));
            let m4 = BigInt::from(perfect_sqrt(params[3]).expect("validated square"));
            let body = head
                + &n[2] * sq(x[3].clone())
                + &n[3] * sq(x[4].clone())
                + sq(m3 * &x[3] + m4 * &x[4]);
            match case {
                PropN4 | ThmCase1 => BigInt::from(3) * sq(x[0].clone()) + body,
                ThmCase2 => &two * sq(x[0].clone()) + body + plus(4),
                ThmCase3 => sq(x[0].clone()) + body + plus(4) + plus(3),
                ThmCase4 => body + plus(4) + plus(3) + plus(2),
                _ => body + plus(4) + plus(3) + plus(2) + plus(1) - sq(x[0].clone()),
            }
        }
        PropN20Zero | ThmN20Two | Generic => {
            return Err(Error::InvalidParams(format!("{case} has no completed-square display")));
        }
    };
    Ok((lhs, rhs))
}
