//! Iterated twist/convolution chains: the Katz reduction loop, the
//! hypergeometric constructor, and the rigidity bookkeeping steering them.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Ratio;

use crate::angle::Angle;
use crate::error::{Error, Result};
use crate::invariants::{FiniteLabel, HodgeTable, ModuleData, PointLocation};
use crate::transforms::{middle_convolve, twist, KummerParameter, TwistParameter};

/// One chain action.
#[derive(Clone, Debug)]
pub enum StepAction {
    Twist(TwistParameter),
    Convolve(KummerParameter),
}

impl fmt::Display for StepAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StepAction::Twist(tw) => {
                let parts: Vec<String> = tw
                    .exponents()
                    .iter()
                    .map(|(l, e)| format!("{l}={e}"))
                    .collect();
                write!(f, "twist {}", parts.join(", "))
            }
            StepAction::Convolve(g0) => write!(f, "convolve gamma0={}", g0.gamma0()),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ChainStep {
    pub action: StepAction,
    pub after: ModuleData,
}

/// Ordered log of twist/convolution steps with snapshots; consecutive
/// snapshots agree by construction.
#[derive(Clone, Debug)]
pub struct KatzChain {
    initial: ModuleData,
    steps: Vec<ChainStep>,
}

impl KatzChain {
    pub fn new(initial: ModuleData) -> Self {
        KatzChain {
            initial,
            steps: Vec::new(),
        }
    }

    pub fn initial(&self) -> &ModuleData {
        &self.initial
    }

    pub fn steps(&self) -> &[ChainStep] {
        &self.steps
    }

    pub fn final_data(&self) -> &ModuleData {
        self.steps.last().map(|s| &s.after).unwrap_or(&self.initial)
    }

    /// Snapshot before step `i` (so `snapshot(0)` is the initial data).
    pub fn snapshot(&self, i: usize) -> &ModuleData {
        if i == 0 {
            &self.initial
        } else {
            &self.steps[i - 1].after
        }
    }

    /// Total rank at each snapshot, starting with the initial one.
    pub fn rank_trace(&self) -> Vec<u64> {
        std::iter::once(self.initial.rank())
            .chain(self.steps.iter().map(|s| s.after.rank()))
            .collect()
    }

    pub fn push_twist(&mut self, tw: TwistParameter) -> Result<()> {
        if tw.is_trivial() {
            return Ok(());
        }
        let after = twist(self.final_data(), &tw)?;
        self.steps.push(ChainStep {
            action: StepAction::Twist(tw),
            after,
        });
        Ok(())
    }

    pub fn push_convolve(&mut self, g0: KummerParameter) -> Result<()> {
        let after = middle_convolve(self.final_data(), &g0)?;
        self.steps.push(ChainStep {
            action: StepAction::Convolve(g0),
            after,
        });
        Ok(())
    }
}

/// Katz rigidity count 2n² − Σ_x (n² − z_x) from the p-forgetful Jordan
/// data, z_x being the dimension of the centralizer of the local monodromy
/// (Σ_λ Σ_{i,j} min(s_i, s_j) over Jordan block sizes).  Rigid irreducible
/// systems have index exactly 2.
pub fn rigidity_index(data: &ModuleData) -> Result<i64> {
    let violations = data.check_rank_consistency();
    if let Some(first) = violations.first() {
        return Err(Error::Precondition(format!(
            "rigidity_index requires rank-consistent data; {first}"
        )));
    }
    let n = data.rank() as i64;
    let mut index = 2 * n * n;
    for table in data.points().values() {
        index -= n * n - centralizer_dimension(table);
    }
    Ok(index)
}

fn centralizer_dimension(table: &HodgeTable) -> i64 {
    // group block sizes per eigenvalue
    let mut sizes: BTreeMap<Angle, Vec<(u64, u64)>> = BTreeMap::new();
    for ((gamma, size), count) in table.jordan_blocks() {
        sizes.entry(gamma).or_default().push((size as u64, count));
    }
    let mut z = 0i64;
    for blocks in sizes.values() {
        for (si, ci) in blocks {
            for (sj, cj) in blocks {
                z += (si.min(sj) * ci * cj) as i64;
            }
        }
    }
    z
}

/// Katz reduction: greedily twist the most frequent eigenvalue at each
/// finite point to λ = 1, then convolve with the parameter (among the
/// nonzero infinity angles of the twisted data) that maximizes the rank
/// drop predicted by the Hodge-number transform; ties break toward the
/// smallest denominator, then numerator.  Terminates at rank one.
pub fn reduce(data: &ModuleData) -> Result<KatzChain> {
    let index = rigidity_index(data)?;
    if index != 2 {
        return Err(Error::NotRigid(format!(
            "Katz reduction needs rigidity index 2, found {index}"
        )));
    }
    if !data.delta_valid() {
        return Err(Error::UnavailableInvariant(
            "Katz reduction needs valid delta data (the Hodge-number transform \
             depends on it)"
                .into(),
        ));
    }
    let mut chain = KatzChain::new(data.clone());
    while chain.final_data().rank() > 1 {
        let current = chain.final_data().clone();
        let rank = current.rank();

        let mut exponents = Vec::new();
        for (label, table) in current.finite_points() {
            if let Some(gamma) = most_frequent_angle(table) {
                if !gamma.is_zero() {
                    exponents.push((label.clone(), gamma.neg()));
                }
            }
        }
        chain.push_twist(TwistParameter::new(exponents))?;
        let twisted = chain.final_data().clone();

        let mut best: Option<(u64, Angle)> = None;
        for gamma0 in twisted.infinity_table().angles() {
            if gamma0.is_zero() {
                continue;
            }
            let g0 = KummerParameter::new(gamma0)?;
            let Ok(h) = crate::transforms::mc_h(&twisted, &g0) else {
                continue;
            };
            let new_rank: u64 = h.values().sum();
            if new_rank == 0 || new_rank >= rank {
                continue;
            }
            let better = match &best {
                None => true,
                Some((r, g)) => {
                    new_rank < *r
                        || (new_rank == *r
                            && (gamma0.denominator(), gamma0.numerator())
                                < (g.denominator(), g.numerator()))
                }
            };
            if better {
                best = Some((new_rank, gamma0));
            }
        }
        let Some((_, gamma0)) = best else {
            return Err(Error::StuckChain(format!(
                "no convolution parameter strictly decreases the rank at rank {rank}; \
                 infinity angles of the twisted data: {:?}",
                twisted.infinity_table().angles()
            )));
        };
        chain.push_convolve(KummerParameter::new(gamma0)?)?;
        debug_assert!(chain.final_data().rank() < rank);
    }
    Ok(chain)
}

/// Most frequent eigenvalue by algebraic multiplicity.  Ties prefer a
/// nonzero angle (so the aligning twist is actually performed), then the
/// smallest denominator and numerator.
fn most_frequent_angle(table: &HodgeTable) -> Option<Angle> {
    let angles = table.angles();
    let best = angles
        .iter()
        .map(|g| table.algebraic_multiplicity(g))
        .max()?;
    angles
        .iter()
        .filter(|g| table.algebraic_multiplicity(g) == best)
        .min_by_key(|g| (g.is_zero(), g.denominator(), g.numerator()))
        .copied()
}

/// Rank-one data with a single Hodge jump at p = 0: the given angles at
/// the given finite points, the stated angle at infinity, and
/// δ⁰ = −Σ residues.
pub fn rank_one_data(finite: &[(FiniteLabel, Angle)], infinity: Angle) -> Result<ModuleData> {
    let mut total = Ratio::new(infinity.numerator() as i128, infinity.denominator() as i128);
    let mut points = BTreeMap::new();
    for (label, gamma) in finite {
        total += Ratio::new(gamma.numerator() as i128, gamma.denominator() as i128);
        let mut t = HodgeTable::new();
        t.add(*gamma, 0, 0, 1);
        points.insert(PointLocation::Finite(label.clone()), t);
    }
    if !total.is_integer() {
        return Err(Error::InvalidArgument(format!(
            "rank-one angles must sum to an integer; got {total}"
        )));
    }
    let mut inf_table = HodgeTable::new();
    inf_table.add(infinity, 0, 0, 1);
    points.insert(PointLocation::Infinity, inf_table);
    let delta = BTreeMap::from([(0, -(*total.numer()) as i64)]);
    ModuleData::new(points, BTreeMap::from([(0, 1)]), delta, true)
}

/// Builds the rank-n hypergeometric data with angles α at infinity and −β
/// at 0 by the inverse Katz chain: starting from the rank-one data fixed by
/// (α₁, β₁), each round twists the next α to the origin, convolves with
/// γ₀ = β_{k+1} − α_{k+1}, and twists the β back:
///
///   H_{k+1} = L(−β_{k+1} at 0) ⊗ MC_{β_{k+1}−α_{k+1}}( L(α_{k+1} at 0) ⊗ H_k ).
///
/// The singular points are {0, 1, ∞}: eigenvalue angles α at ∞, the
/// negated β at 0, and a pseudo-reflection at 1.
pub fn hypergeometric_chain(alpha: &[Angle], beta: &[Angle]) -> Result<KatzChain> {
    if alpha.is_empty() || alpha.len() != beta.len() {
        return Err(Error::InvalidArgument(
            "hypergeometric needs alpha and beta of equal positive length".into(),
        ));
    }
    for a in alpha {
        for b in beta {
            if a == b {
                return Err(Error::Precondition(format!(
                    "hypergeometric parameters collide: alpha contains {a} and beta contains {b}"
                )));
            }
        }
    }
    let zero = FiniteLabel::integer(0);
    let one = FiniteLabel::integer(1);
    let seed = rank_one_data(
        &[
            (zero.clone(), beta[0].neg()),
            (one.clone(), beta[0].sub(&alpha[0])),
        ],
        alpha[0],
    )?;
    let mut chain = KatzChain::new(seed);
    for k in 1..alpha.len() {
        chain.push_twist(TwistParameter::new([(zero.clone(), alpha[k])]))?;
        chain.push_convolve(KummerParameter::new(beta[k].sub(&alpha[k]))?)?;
        chain.push_twist(TwistParameter::new([(zero.clone(), beta[k].neg())]))?;
    }
    Ok(chain)
}

/// The hypergeometric module data itself (final snapshot of the chain).
pub fn hypergeometric(alpha: &[Angle], beta: &[Angle]) -> Result<ModuleData> {
    Ok(hypergeometric_chain(alpha, beta)?.final_data().clone())
}
