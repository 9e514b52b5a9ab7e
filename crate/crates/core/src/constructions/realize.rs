//! Search for I3 perturbations turning slot data into an actual sublattice.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use super::{RealizationOutcome, RealizationStatus, SlotSpec};
use crate::factor::factorize;
use crate::lattice::{gram_of, inner_product, is_saturated, short_vectors, AmbientVector, Sublattice};
use crate::linalg::{is_positive_definite, IntMatrix};

/// Coordinates in `[-1, 1]`: the three unit vectors for every slot kind.
pub const DEFAULT_SEARCH_BOUND: i64 = 1;
pub const GOAL_SEARCH_BOUND: i64 = 3;

/// Search nodes visited before a search settles for what it has.
const NODE_BUDGET: usize = 200_000;

/// Perturbations `p` with `h²·p = 1`, coordinates in `[-bound, bound]` and
/// `(base + p)² = base² + 1`; unit vectors first, then by norm.
pub fn perturbation_candidates(slot: &SlotSpec, bound: i64) -> Vec<[i64; 3]> {
    if slot.residue == 0 {
        return Vec::new();
    }
    let base = slot.base();
    let mut out = Vec::new();
    for x in -bound..=bound {
        for y in -bound..=bound {
            let z = 1 - x - y;
            if z.abs() > bound {
                continue;
            }
            let p = [x, y, z];
            let cross = inner_product(&base, &AmbientVector::i3(p));
            if 2 * cross + x * x + y * y + z * z == BigInt::from(1) {
                out.push(p);
            }
        }
    }
    out.sort_by_key(|p| (p.iter().map(|c| c * c).sum::<i64>(), std::cmp::Reverse(*p)));
    out
}

/// Slot generators with residue-0 slots fixed and the rest still open.
struct Layout {
    bases: Vec<AmbientVector>,
    fixed: Vec<Option<AmbientVector>>,
    open: Vec<usize>,
    candidates: Vec<Vec<[i64; 3]>>,
}

impl Layout {
    fn new(slots: &[SlotSpec], bound: i64) -> Self {
        let mut fixed = Vec::with_capacity(slots.len());
        let mut open = Vec::new();
        let mut candidates = Vec::new();
        for (i, s) in slots.iter().enumerate() {
            if s.residue == 0 {
                fixed.push(Some(s.base()));
            } else {
                fixed.push(None);
                open.push(i);
                candidates.push(perturbation_candidates(s, bound));
            }
        }
        Layout { bases: slots.iter().map(SlotSpec::base).collect(), fixed, open, candidates }
    }

    /// `[h², α_1, …]` over the slots assigned so far.
    fn partial_basis(gens: &[Option<AmbientVector>]) -> Vec<AmbientVector> {
        std::iter::once(AmbientVector::h_squared()).chain(gens.iter().flatten().copied()).collect()
    }
}

fn outcome(
    status: RealizationStatus,
    basis: Vec<AmbientVector>,
    target: Option<&IntMatrix>,
) -> RealizationOutcome {
    let gram = gram_of(&basis).expect("basis vectors share the ambient rank");
    let delta = target.map(|t| gram.sub(t).expect("target has the basis dimension"));
    RealizationOutcome { status, basis: Some(basis), realized_gram: Some(gram), gram_delta: delta }
}

/// Perturbations reproducing `target` entry for entry.
///
/// Without an exact match the outcome is `NotRealizable`, carrying the basis
/// whose Gram matrix has the least total absolute deviation from `target`.
pub fn realize_perturbations(slots: &[SlotSpec], target: &IntMatrix, bound: i64) -> RealizationOutcome {
    let layout = Layout::new(slots, bound);
    if layout.candidates.iter().any(Vec::is_empty) || target.rows() != slots.len() + 1 {
        return RealizationOutcome {
            status: RealizationStatus::NotRealizable,
            basis: None,
            realized_gram: None,
            gram_delta: None,
        };
    }
    let mut search = Closest {
        layout: &layout,
        target,
        gens: layout.fixed.clone(),
        best: None,
        nodes: 0,
    };
    let fixed_cost = search.cost_of_fixed();
    search.descend(0, fixed_cost);
    let (cost, gens) = search.best.expect("candidate lists are nonempty");
    let status = if cost == 0 { RealizationStatus::RealizedStrict } else { RealizationStatus::NotRealizable };
    outcome(status, Layout::partial_basis(&gens), Some(target))
}

struct Closest<'a> {
    layout: &'a Layout,
    target: &'a IntMatrix,
    gens: Vec<Option<AmbientVector>>,
    best: Option<(u64, Vec<Option<AmbientVector>>)>,
    nodes: usize,
}

impl Closest<'_> {
    /// `|⟨u, v⟩ − target_ij|` with basis index `i, j` (0 is `h²`).
    fn deviation(&self, i: usize, u: &AmbientVector, j: usize, v: &AmbientVector) -> u64 {
        (inner_product(u, v) - &self.target[(i, j)]).abs().to_u64().unwrap_or(u64::MAX / 4)
    }

    fn vector(&self, i: usize) -> Option<AmbientVector> {
        if i == 0 {
            Some(AmbientVector::h_squared())
        } else {
            self.gens[i - 1]
        }
    }

    fn cost_of_fixed(&self) -> u64 {
        let k = self.gens.len() + 1;
        let mut cost = 0;
        for i in 0..k {
            for j in i..k {
                if let (Some(u), Some(v)) = (self.vector(i), self.vector(j)) {
                    cost += self.deviation(i, &u, j, &v);
                }
            }
        }
        cost
    }

    /// Upper-triangle deviation added by placing `v` at basis index `i`.
    fn cost_of(&self, i: usize, v: &AmbientVector) -> u64 {
        let k = self.gens.len() + 1;
        let mut cost = self.deviation(i, v, i, v);
        for j in 0..k {
            if j == i {
                continue;
            }
            if let Some(u) = self.vector(j) {
                cost += self.deviation(i, v, j, &u);
            }
        }
        cost
    }

    fn done(&self) -> bool {
        self.best.as_ref().is_some_and(|(c, _)| *c == 0) || self.nodes >= NODE_BUDGET
    }

    fn descend(&mut self, depth: usize, cost: u64) {
        self.nodes += 1;
        if self.best.as_ref().is_some_and(|(c, _)| cost >= *c) {
            return;
        }
        if depth == self.layout.open.len() {
            self.best = Some((cost, self.gens.clone()));
            return;
        }
        let slot = self.layout.open[depth];
        for &p in &self.layout.candidates[depth] {
            if self.done() {
                return;
            }
            let v = self.layout_vector(slot, p);
            let added = self.cost_of(slot + 1, &v);
            self.gens[slot] = Some(v);
            self.descend(depth + 1, cost + added);
            self.gens[slot] = None;
        }
    }

    fn layout_vector(&self, slot: usize, p: [i64; 3]) -> AmbientVector {
        self.layout.bases[slot] + AmbientVector::i3(p)
    }
}

/// Reason no choice of perturbations can give a saturated lattice, if one is
/// visible from the scales alone.
///
/// Modulo a prime `q | m` a scaled generator reduces to its I3 part, so a
/// residue-0 scaled slot is divisible by `q`, and `h²` together with three
/// such generators is dependent in the 3-dimensional I3 block.
pub fn saturation_obstruction(slots: &[SlotSpec]) -> Option<String> {
    let mut by_prime: Vec<(u64, usize)> = Vec::new();
    for s in slots {
        let Some(m) = s.scale() else { continue };
        if m < 2 {
            continue;
        }
        if s.residue == 0 {
            return Some(format!("{:?} is {m} times a root", s.kind));
        }
        for (q, _) in factorize(m as u64) {
            match by_prime.iter_mut().find(|(p, _)| *p == q) {
                Some((_, count)) => *count += 1,
                None => by_prime.push((q, 1)),
            }
        }
    }
    by_prime
        .into_iter()
        .find(|&(_, count)| count >= 3)
        .map(|(q, count)| format!("{count} perturbed generators are divisible by {q} away from I3"))
}

/// Positive definite, no vector of norm 1 or 2, and optionally saturated.
fn acceptable(basis: Vec<AmbientVector>, saturated: bool) -> bool {
    let Ok(m) = Sublattice::new(basis) else { return false };
    if !is_positive_definite(m.gram()).expect("Gram matrices are symmetric") {
        return false;
    }
    if !short_vectors(m.gram(), 2).expect("positive definite").is_empty() {
        return false;
    }
    !saturated || is_saturated(&m)
}

struct Feasible<'a> {
    layout: &'a Layout,
    saturated: bool,
    gens: Vec<Option<AmbientVector>>,
    nodes: usize,
}

impl Feasible<'_> {
    /// Each test is inherited by sub-bases, so failing partial bases are pruned.
    fn descend(&mut self, depth: usize) -> bool {
        self.nodes += 1;
        if self.nodes > NODE_BUDGET || !acceptable(Layout::partial_basis(&self.gens), self.saturated) {
            return false;
        }
        if depth == self.layout.open.len() {
            return true;
        }
        let slot = self.layout.open[depth];
        for &p in &self.layout.candidates[depth] {
            self.gens[slot] = Some(self.layout.bases[slot] + AmbientVector::i3(p));
            if self.descend(depth + 1) {
                return true;
            }
        }
        self.gens[slot] = None;
        false
    }
}

fn first_acceptable(layout: &Layout, saturated: bool) -> Option<Vec<AmbientVector>> {
    let mut search = Feasible { layout, saturated, gens: layout.fixed.clone(), nodes: 0 };
    search.descend(0).then(|| Layout::partial_basis(&search.gens))
}

/// Lexicographically first perturbations for which `M` passes the full
/// nonemptiness criterion.
///
/// When the criterion is out of reach the outcome is `NotRealizable` and, if
/// one exists, carries the first basis that is at least positive definite with
/// minimum 3, so the failure can be inspected.
pub fn realize_goal(slots: &[SlotSpec], target: Option<&IntMatrix>, bound: i64) -> RealizationOutcome {
    let layout = Layout::new(slots, bound);
    let target = target.filter(|t| t.rows() == slots.len() + 1);
    if layout.candidates.iter().any(Vec::is_empty) {
        return RealizationOutcome {
            status: RealizationStatus::NotRealizable,
            basis: None,
            realized_gram: None,
            gram_delta: None,
        };
    }
    if saturation_obstruction(slots).is_none() {
        if let Some(basis) = first_acceptable(&layout, true) {
            return outcome(RealizationStatus::RealizedGoal, basis, target);
        }
    }
    match first_acceptable(&layout, false) {
        Some(basis) => outcome(RealizationStatus::NotRealizable, basis, target),
        None => RealizationOutcome {
            status: RealizationStatus::NotRealizable,
            basis: None,
            realized_gram: None,
            gram_delta: None,
        },
    }
}
