//! Explicit witness lattices `M = <h², α_1, …, α_k>`.
//!
//! Each `α_i` comes from a slot: a hyperbolic-plane slot gives
//! `e_1 + n·e_2`, a scaled slot gives `m·b` for a root `b` of A2 or E8 with
//! `n = m²`. Slots whose target discriminant is `≡ 2 (mod 6)` additionally
//! carry a perturbation `p` in the I3 block with `p·h² = 1`, chosen so that
//! `(α + p)² = 2n + 1`.

mod identity;
mod realize;

pub use identity::{expected_identity, IdentityForm};
pub use realize::{
    perturbation_candidates, realize_goal, realize_perturbations, saturation_obstruction, DEFAULT_SEARCH_BOUND,
    GOAL_SEARCH_BOUND,
};

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::criteria::{satisfies_double_star, satisfies_star};
use crate::error::{Error, Result};
use crate::lattice::{e8_adjacent, gram_of, AmbientVector};
use crate::linalg::IntMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CaseId {
    LemmaCase1,
    LemmaCase2,
    LemmaCase3,
    LemmaCase4,
    PropN4,
    PropN20Zero,
    ThmCase1,
    ThmCase2,
    ThmCase3,
    ThmCase4,
    ThmCase5,
    ThmN20Two,
    Generic,
}

impl CaseId {
    pub const PAPER_CASES: [CaseId; 12] = [
        CaseId::LemmaCase1,
        CaseId::LemmaCase2,
        CaseId::LemmaCase3,
        CaseId::LemmaCase4,
        CaseId::PropN4,
        CaseId::PropN20Zero,
        CaseId::ThmCase1,
        CaseId::ThmCase2,
        CaseId::ThmCase3,
        CaseId::ThmCase4,
        CaseId::ThmCase5,
        CaseId::ThmN20Two,
    ];

    /// Residue of each target discriminant mod 6, slot by slot.
    fn residues(self) -> Vec<u8> {
        use CaseId::*;
        match self {
            LemmaCase1 => vec![0, 0, 0],
            LemmaCase2 => vec![0, 0, 2],
            LemmaCase3 => vec![0, 2, 2],
            LemmaCase4 => vec![2, 2, 2],
            PropN4 | ThmCase1 => vec![0, 0, 0, 0],
            ThmCase2 => vec![0, 0, 0, 2],
            ThmCase3 => vec![0, 0, 2, 2],
            ThmCase4 => vec![0, 2, 2, 2],
            ThmCase5 => vec![2, 2, 2, 2],
            PropN20Zero => vec![0; 20],
            ThmN20Two => vec![2; 20],
            Generic => vec![],
        }
    }

    /// Perturbations as printed next to each generator.
    fn printed_perturbations(self) -> Vec<Option<[i64; 3]>> {
        use CaseId::*;
        const X: Option<[i64; 3]> = Some([1, 0, 0]);
        const Y: Option<[i64; 3]> = Some([0, 1, 0]);
        const Z: Option<[i64; 3]> = Some([0, 0, 1]);
        match self {
            LemmaCase2 => vec![None, None, Z],
            LemmaCase3 => vec![None, Y, Z],
            LemmaCase4 => vec![X, Y, Z],
            ThmCase2 => vec![None, None, None, Z],
            ThmCase3 => vec![None, None, Y, Z],
            ThmCase4 => vec![None, X, Y, Z],
            ThmCase5 => vec![X, X, Y, Z],
            ThmN20Two => vec![Y, X, X, Y, Z, Z, X, Y, Z, Z, Z, Z, Z, X, Y, Y, Y, Y, Y, Y],
            other => vec![None; other.residues().len()],
        }
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for CaseId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        CaseId::PAPER_CASES
            .iter()
            .chain(std::iter::once(&CaseId::Generic))
            .copied()
            .find(|c| c.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidParams(format!("unknown case `{s}`")))
    }
}

/// Where a slot's generator lives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SlotKind {
    U1,
    U2,
    A2First,
    A2Second,
    /// `t^1_i`, 1-based
    E8First(u8),
    /// `t^2_i`, 1-based
    E8Second(u8),
}

impl SlotKind {
    pub fn is_scaled(self) -> bool {
        !matches!(self, SlotKind::U1 | SlotKind::U2)
    }

    /// The unscaled root behind a scaled slot.
    fn root(self) -> Option<AmbientVector> {
        match self {
            SlotKind::U1 | SlotKind::U2 => None,
            SlotKind::A2First => Some(AmbientVector::a1()),
            SlotKind::A2Second => Some(AmbientVector::a2()),
            SlotKind::E8First(i) => Some(AmbientVector::t(1, i as usize)),
            SlotKind::E8Second(i) => Some(AmbientVector::t(2, i as usize)),
        }
    }
}

/// Order in which scaled slots are filled: `a1, a2, t¹1, t¹3, t¹6, t²1, …`.
pub const SCALED_POOL: [SlotKind; 18] = [
    SlotKind::A2First,
    SlotKind::A2Second,
    SlotKind::E8First(1),
    SlotKind::E8First(3),
    SlotKind::E8First(6),
    SlotKind::E8Second(1),
    SlotKind::E8Second(3),
    SlotKind::E8Second(6),
    SlotKind::E8First(2),
    SlotKind::E8Second(2),
    SlotKind::E8First(4),
    SlotKind::E8Second(4),
    SlotKind::E8First(7),
    SlotKind::E8Second(7),
    SlotKind::E8First(8),
    SlotKind::E8Second(8),
    SlotKind::E8First(5),
    SlotKind::E8Second(5),
];

/// Kind of the `i`-th slot (0-based) in every construction.
pub fn slot_kind(i: usize) -> SlotKind {
    match i {
        0 => SlotKind::U1,
        1 => SlotKind::U2,
        _ => SCALED_POOL[i - 2],
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlotSpec {
    pub kind: SlotKind,
    pub n: i64,
    /// Target discriminant mod 6: 0 or 2.
    pub residue: u8,
    pub perturbation: Option<[i64; 3]>,
}

pub(crate) fn perfect_sqrt(n: i64) -> Option<i64> {
    use num_integer::Roots;
    if n < 0 {
        return None;
    }
    let r = n.sqrt();
    (r * r == n).then_some(r)
}

impl SlotSpec {
    pub fn new(kind: SlotKind, n: i64, residue: u8) -> Result<Self> {
        if residue != 0 && residue != 2 {
            return Err(Error::InvalidParams(format!("residue must be 0 or 2, got {residue}")));
        }
        if n < 1 {
            return Err(Error::InvalidParams(format!("slot parameter must be positive, got {n}")));
        }
        if kind.is_scaled() && perfect_sqrt(n).is_none() {
            return Err(Error::InvalidParams(format!("{kind:?} needs a perfect square parameter, got {n}")));
        }
        Ok(SlotSpec { kind, n, residue, perturbation: None })
    }

    /// `m = √n` for scaled slots.
    pub fn scale(&self) -> Option<i64> {
        self.kind.is_scaled().then(|| perfect_sqrt(self.n).expect("validated at construction"))
    }

    /// Generator before perturbation: `e_1 + n·e_2` or `m·root`.
    pub fn base(&self) -> AmbientVector {
        match self.kind {
            SlotKind::U1 => AmbientVector::e(1, 1) + self.n * AmbientVector::e(1, 2),
            SlotKind::U2 => AmbientVector::e(2, 1) + self.n * AmbientVector::e(2, 2),
            kind => self.scale().unwrap() * kind.root().unwrap(),
        }
    }

    pub fn generator_with(&self, p: Option<[i64; 3]>) -> AmbientVector {
        match p {
            Some(p) => self.base() + AmbientVector::i3(p),
            None => self.base(),
        }
    }

    /// Target discriminant `6n` or `6n + 2`.
    pub fn discriminant(&self) -> i64 {
        6 * self.n + self.residue as i64
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Recipe {
    pub case_id: CaseId,
    pub slots: Vec<SlotSpec>,
    pub target_gram: Option<IntMatrix>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum RealizationStatus {
    RealizedStrict,
    RealizedGoal,
    NotRealizable,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealizationOutcome {
    pub status: RealizationStatus,
    pub basis: Option<Vec<AmbientVector>>,
    pub realized_gram: Option<IntMatrix>,
    /// realized − target
    pub gram_delta: Option<IntMatrix>,
}

impl RealizationOutcome {
    pub fn is_realized(&self) -> bool {
        self.status != RealizationStatus::NotRealizable
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mode {
    Strict,
    Goal,
}

impl FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "strict" => Ok(Mode::Strict),
            "goal" => Ok(Mode::Goal),
            _ => Err(Error::InvalidParams(format!("unknown mode `{s}`"))),
        }
    }
}

fn check_param(case: CaseId, idx: usize, n: i64, min: i64, square: bool) -> Result<()> {
    if n < min {
        return Err(Error::InvalidParams(format!("{case}: n{} = {n} must be at least {min}", idx + 1)));
    }
    if square && perfect_sqrt(n).is_none() {
        return Err(Error::InvalidParams(format!("{case}: n{} = {n} must be a perfect square", idx + 1)));
    }
    Ok(())
}

/// Slots of a printed construction, after validating its parameter ranges.
pub fn recipe(case: CaseId, params: &[i64]) -> Result<Recipe> {
    use CaseId::*;
    if case == Generic {
        return Err(Error::InvalidParams("the generic builder takes targets, not parameters".into()));
    }
    let residues = case.residues();
    if params.len() != residues.len() {
        return Err(Error::InvalidParams(format!("{case} expects {} parameters, got {}", residues.len(), params.len())));
    }
    // lower bounds for n1, n2 on the hyperbolic-plane slots
    let (min1, min2) = match case {
        LemmaCase1 | LemmaCase2 | PropN4 | ThmCase1 | ThmCase2 | ThmCase3 | PropN20Zero => (2, 2),
        LemmaCase3 | ThmCase4 => (2, 1),
        LemmaCase4 | ThmCase5 | ThmN20Two => (1, 1),
        Generic => unreachable!(),
    };
    check_param(case, 0, params[0], min1, false)?;
    check_param(case, 1, params[1], min2, false)?;
    for (i, &n) in params.iter().enumerate().skip(2) {
        check_param(case, i, n, 4, true)?;
    }
    let printed = case.printed_perturbations();
    let mut slots = Vec::with_capacity(params.len());
    for (i, (&n, &r)) in params.iter().zip(&residues).enumerate() {
        let mut slot = SlotSpec::new(slot_kind(i), n, r)?;
        slot.perturbation = printed[i];
        slots.push(slot);
    }
    let target_gram = Some(paper_gram_for(case, &slots));
    Ok(Recipe { case_id: case, slots, target_gram })
}

/// Gram matrix in the layout every printed construction uses: perturbations
/// pair to 1 with `h²` and are otherwise treated as orthogonal to everything.
pub fn ideal_gram(slots: &[SlotSpec]) -> IntMatrix {
    let k = slots.len();
    let mut g = IntMatrix::zeros(k + 1, k + 1);
    g[(0, 0)] = BigInt::from(3);
    for (i, s) in slots.iter().enumerate() {
        let r = BigInt::from(s.residue as i64 / 2);
        g[(0, i + 1)] = r.clone();
        g[(i + 1, 0)] = r;
        g[(i + 1, i + 1)] = BigInt::from(2 * s.n + s.residue as i64 / 2);
    }
    for i in 0..k {
        for j in i + 1..k {
            let (a, b) = (&slots[i], &slots[j]);
            let (Some(ma), Some(mb)) = (a.scale(), b.scale()) else { continue };
            let v = match (a.kind, b.kind) {
                (SlotKind::A2First, SlotKind::A2Second) | (SlotKind::A2Second, SlotKind::A2First) => ma * mb,
                (SlotKind::E8First(x), SlotKind::E8First(y)) | (SlotKind::E8Second(x), SlotKind::E8Second(y))
                    if e8_adjacent(x as usize - 1, y as usize - 1) =>
                {
                    -ma * mb
                }
                _ => continue,
            };
            g[(i + 1, j + 1)] = BigInt::from(v);
            g[(j + 1, i + 1)] = BigInt::from(v);
        }
    }
    g
}

/// Unit entries the all-residue-2 rank-21 display adds between generators
/// sharing a perturbation, as 0-based basis indices. The printed C block has
/// none among `t¹7, t²7, t¹8, t²8, t¹5, t²5`, although those six share `(0,1,0)`.
fn n20_two_unit_pairs() -> Vec<(usize, usize)> {
    let x_group = [2, 3, 7, 14];
    let y_group = [1, 4, 8, 15, 16, 17, 18, 19, 20];
    let z_group = [5, 6, 9, 10, 11, 12, 13];
    let mut pairs = Vec::new();
    for group in [&x_group[..], &y_group[..], &z_group[..]] {
        for (a, &i) in group.iter().enumerate() {
            for &j in &group[a + 1..] {
                if i >= 15 && j >= 15 {
                    continue;
                }
                pairs.push((i, j));
            }
        }
    }
    pairs
}

fn paper_gram_for(case: CaseId, slots: &[SlotSpec]) -> IntMatrix {
    let mut g = ideal_gram(slots);
    if case == CaseId::ThmN20Two {
        for (i, j) in n20_two_unit_pairs() {
            g[(i, j)] += 1;
            g[(j, i)] += 1;
        }
    }
    g
}

/// The displayed Gram matrix of a construction at concrete parameters.
pub fn paper_gram(case: CaseId, params: &[i64]) -> Result<IntMatrix> {
    Ok(recipe(case, params)?.target_gram.expect("paper cases carry a target"))
}

/// Assemble the witness for a printed construction.
pub fn build(case: CaseId, params: &[i64], mode: Mode) -> Result<RealizationOutcome> {
    let recipe = recipe(case, params)?;
    let target = recipe.target_gram.as_ref().expect("paper cases carry a target");
    Ok(match mode {
        Mode::Strict => realize_perturbations(&recipe.slots, target, GOAL_SEARCH_BOUND),
        Mode::Goal => realize_goal(&recipe.slots, Some(target), GOAL_SEARCH_BOUND),
    })
}

/// Slots for a target list: the first two targets go to `U¹`, `U²`, the rest
/// to the scaled pool in order.
pub fn generic_slots(targets: &[i64]) -> Result<Vec<SlotSpec>> {
    if !(2..=20).contains(&targets.len()) {
        return Err(Error::InvalidParams(format!("between 2 and 20 targets required, got {}", targets.len())));
    }
    let mut slots = Vec::with_capacity(targets.len());
    for (i, &d) in targets.iter().enumerate() {
        if !satisfies_star(d) {
            return Err(Error::InvalidTarget { d, rule: "(*): d ≥ 8 and d ≡ 0, 2 (mod 6)".into() });
        }
        if i >= 2 && satisfies_double_star(d).is_none() {
            return Err(Error::InvalidTarget { d, rule: "(**): d = 6m² or 6m² + 2 with m ≥ 2".into() });
        }
        let residue = (d % 6) as u8;
        let n = (d - residue as i64) / 6;
        slots.push(SlotSpec::new(slot_kind(i), n, residue)?);
    }
    Ok(slots)
}

/// Witness for an arbitrary admissible target list.
///
/// In strict mode the target is [`ideal_gram`], the layout the printed
/// constructions follow.
pub fn build_generic(targets: &[i64], mode: Mode) -> Result<RealizationOutcome> {
    let slots = generic_slots(targets)?;
    let target = ideal_gram(&slots);
    Ok(match mode {
        Mode::Strict => realize_perturbations(&slots, &target, GOAL_SEARCH_BOUND),
        Mode::Goal => realize_goal(&slots, Some(&target), GOAL_SEARCH_BOUND),
    })
}

/// Realized Gram of a basis, for callers holding only vectors.
pub fn realized_gram(basis: &[AmbientVector]) -> Result<IntMatrix> {
    gram_of(basis)
}

#[cfg(test)]
mod tests;
