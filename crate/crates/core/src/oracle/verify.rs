//! Replays a Katz chain through the matrix oracle and compares every
//! snapshot against the tuple's Jordan data.
//!
//! A chain starting at rank one is replayed forward from the 1×1
//! realization of its initial data; a chain ending at rank one (a
//! reduction) is replayed backward from its endpoint, inverting each step
//! (twist by the negated exponents, convolution with the conjugate
//! parameter).  Either way, `compare(snapshot, tuple)` must come back empty
//! at every stage — this is the central cross-validation of the crate.

use num_integer::Integer;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::katz::{KatzChain, StepAction};
use crate::transforms::TwistParameter;

use super::tuple::{
    compare, dr_convolve, is_absolutely_irreducible, realize_rank_one, twist_tuple, MatrixTuple,
    Mismatch,
};

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    /// Cap on the cyclotomic order of any tuple built during the replay.
    pub max_order: u64,
    /// Seed for the randomized part of the irreducibility certificate.
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            max_order: super::DEFAULT_MAX_ORDER,
            seed: 0,
        }
    }
}

/// Comparison outcome at one snapshot.
#[derive(Clone, Debug)]
pub struct VerifyEntry {
    /// Snapshot index (0 = the rank-one end the replay starts from).
    pub stage: usize,
    pub description: String,
    pub rank: u64,
    pub mismatches: Vec<Mismatch>,
}

#[derive(Clone, Debug, Default)]
pub struct VerifyReport {
    pub entries: Vec<VerifyEntry>,
    /// Set when the replay stopped early (uncertified irreducibility).
    pub downgraded: Option<String>,
}

impl VerifyReport {
    pub fn is_clean(&self) -> bool {
        self.downgraded.is_none() && self.entries.iter().all(|e| e.mismatches.is_empty())
    }

    pub fn mismatch_count(&self) -> usize {
        self.entries.iter().map(|e| e.mismatches.len()).sum()
    }
}

/// Replays `chain` through the Dettweiler–Reiter oracle.
pub fn verify_chain(chain: &KatzChain, opts: &VerifyOptions) -> Result<VerifyReport> {
    if chain.initial().rank() == 1 {
        replay(chain, opts, Direction::Forward)
    } else if chain.final_data().rank() == 1 {
        replay(chain, opts, Direction::Backward)
    } else {
        Err(Error::InvalidArgument(
            "chain verification needs a rank-one end to realize".into(),
        ))
    }
}

enum Direction {
    Forward,
    Backward,
}

fn replay(chain: &KatzChain, opts: &VerifyOptions, dir: Direction) -> Result<VerifyReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let steps = chain.steps().len();

    // (snapshot index, action to apply when moving to the next snapshot)
    let stages: Vec<(usize, Option<StepAction>)> = match dir {
        Direction::Forward => (0..=steps)
            .map(|i| {
                let action = (i < steps).then(|| chain.steps()[i].action.clone());
                (i, action)
            })
            .collect(),
        Direction::Backward => (0..=steps)
            .rev()
            .map(|i| {
                let action = (i > 0).then(|| invert(&chain.steps()[i - 1].action));
                (i, action)
            })
            .collect(),
    };

    let start = chain.snapshot(stages[0].0);
    let (mut labels, mut tuple) = realize_rank_one(start)?;
    let mut report = VerifyReport::default();

    for (pos, (snap_idx, action)) in stages.iter().enumerate() {
        let data = chain.snapshot(*snap_idx);
        let description = if pos == 0 {
            "rank-one realization".to_string()
        } else {
            // the action that produced this stage is the previous one
            match &stages[pos - 1].1 {
                Some(a) => format!("{a}"),
                None => String::new(),
            }
        };
        report.entries.push(VerifyEntry {
            stage: pos,
            description,
            rank: data.rank(),
            mismatches: compare(data, &tuple)?,
        });

        let Some(action) = action else { break };
        match action {
            StepAction::Twist(tw) => {
                let order_after = order_after_twist(&tuple, tw);
                if order_after > opts.max_order {
                    return Err(Error::UnsupportedEigenvalue(format!(
                        "cyclotomic order {order_after} exceeds the cap {} \
                         (raise --max-order or HODGEMC_MAX_CYCLOTOMIC_ORDER)",
                        opts.max_order
                    )));
                }
                let (l, t) = twist_tuple(&labels, &tuple, tw)?;
                labels = l;
                tuple = t;
            }
            StepAction::Convolve(g0) => {
                let order_after = tuple.field_order().lcm(&g0.gamma0().denominator());
                if order_after > opts.max_order {
                    return Err(Error::UnsupportedEigenvalue(format!(
                        "cyclotomic order {order_after} exceeds the cap {} \
                         (raise --max-order or HODGEMC_MAX_CYCLOTOMIC_ORDER)",
                        opts.max_order
                    )));
                }
                if !is_absolutely_irreducible(&tuple, &mut rng) {
                    report.downgraded = Some(format!(
                        "irreducibility of the stage-{pos} tuple could not be certified; \
                         replay stopped"
                    ));
                    return Ok(report);
                }
                tuple = dr_convolve(&tuple, &g0.gamma0())?;
            }
        }
    }
    Ok(report)
}

fn invert(action: &StepAction) -> StepAction {
    match action {
        StepAction::Twist(tw) => StepAction::Twist(tw.inverse()),
        StepAction::Convolve(g0) => StepAction::Convolve(g0.conjugate()),
    }
}

fn order_after_twist(tuple: &MatrixTuple, tw: &TwistParameter) -> u64 {
    let mut order = tuple.field_order();
    for e in tw.exponents().values() {
        order = order.lcm(&e.denominator());
    }
    order.lcm(&tw.infinity_exponent().denominator())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angle::Angle;
    use crate::invariants::FiniteLabel;
    use crate::katz::{hypergeometric_chain, rank_one_data, reduce};
    use crate::transforms::{middle_convolve, KummerParameter};

    fn a(n: i64, d: i64) -> Angle {
        Angle::new(n, d).unwrap()
    }

    #[test]
    fn forward_replay_of_a_one_step_chain() {
        let seed = rank_one_data(
            &[
                (FiniteLabel::integer(0), a(1, 3)),
                (FiniteLabel::integer(1), a(1, 3)),
            ],
            a(1, 3),
        )
        .unwrap();
        let mut chain = crate::katz::KatzChain::new(seed);
        chain
            .push_convolve(KummerParameter::new(a(1, 2)).unwrap())
            .unwrap();
        let report = verify_chain(&chain, &VerifyOptions::default()).unwrap();
        assert!(report.is_clean(), "{report:?}");
        assert_eq!(report.entries.len(), 2);
    }

    #[test]
    fn backward_replay_of_a_reduction() {
        let seed = rank_one_data(
            &[
                (FiniteLabel::integer(0), a(1, 3)),
                (FiniteLabel::integer(1), a(1, 3)),
            ],
            a(1, 3),
        )
        .unwrap();
        let gauss = middle_convolve(&seed, &KummerParameter::new(a(1, 2)).unwrap()).unwrap();
        let chain = reduce(&gauss).unwrap();
        let report = verify_chain(&chain, &VerifyOptions::default()).unwrap();
        assert!(report.is_clean(), "{report:?}");
    }

    #[test]
    fn hypergeometric_chain_verifies_forward() {
        let chain = hypergeometric_chain(
            &[a(1, 3), a(2, 3)],
            &[a(1, 12), a(11, 12)],
        )
        .unwrap();
        let report = verify_chain(&chain, &VerifyOptions::default()).unwrap();
        assert!(report.is_clean(), "{report:?}");
    }

    #[test]
    fn order_cap_is_enforced() {
        let chain = hypergeometric_chain(
            &[a(1, 3), a(2, 3)],
            &[a(1, 12), a(11, 12)],
        )
        .unwrap();
        let opts = VerifyOptions {
            max_order: 4,
            seed: 0,
        };
        assert!(matches!(
            verify_chain(&chain, &opts),
            Err(Error::UnsupportedEigenvalue(_))
        ));
    }
}
