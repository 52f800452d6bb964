//! Property tests for the stated invariants of the local Hodge data and
//! the transforms.

mod common;


use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use hodgemc::angle::Angle;
use hodgemc::invariants::{FiniteLabel, HodgeTable, ModuleData, PointLocation};
use hodgemc::transforms::{twist, TwistParameter};

fn arb_angle() -> impl Strategy<Value = Angle> {
    (1i64..=12).prop_flat_map(|den| (0..den, Just(den)).prop_map(|(n, d)| Angle::new(n, d).unwrap()))
}

fn arb_table() -> impl Strategy<Value = HodgeTable> {
    proptest::collection::vec((arb_angle(), 0u32..4, -3i32..4, 1u64..4), 0..10)
        .prop_map(|entries| {
            HodgeTable::from_entries(entries.into_iter().map(|(g, l, p, m)| ((g, l, p), m)))
        })
}

proptest! {
    /// The totals dominate both the prim and coprim sub-sums.
    #[test]
    fn totals_dominate_prim_and_coprim(table in arb_table(), gamma in arb_angle(), p in -6i32..7) {
        prop_assert!(table.nu_total(&gamma, p) >= table.nu_prim(&gamma, p));
        prop_assert!(table.nu_total(&gamma, p) >= table.nu_coprim(&gamma, p));
    }

    /// μ is the identity on entries away from the unipotent angle, and the
    /// total μ mass at the unipotent angle is the table mass above weight 0.
    #[test]
    fn mu_weight_bookkeeping(table in arb_table()) {
        let zero = Angle::zero();
        let mut mu_mass = 0u64;
        let mut upper_mass = 0u64;
        for ((g, ell, p), m) in table.iter() {
            if g.is_zero() {
                if *ell >= 1 {
                    upper_mass += m;
                }
            } else {
                prop_assert_eq!(table.mu(g, *ell, *p), table.get(g, *ell, *p));
            }
        }
        for ell in 0..6 {
            for p in -8..9 {
                mu_mass += table.mu(&zero, ell, p);
            }
        }
        prop_assert_eq!(mu_mass, upper_mass);
    }

    /// Canonical serialization is idempotent: serialize ∘ parse ∘ serialize
    /// = serialize, and parse ∘ serialize is the identity.
    #[test]
    fn document_canonicalization_is_idempotent(seed in 0u64..600) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        if let Some(data) = common::random_module_data(&mut rng) {
            let text = hodgemc::io::serialize_data(&data);
            let parsed = hodgemc::io::parse_data(&text).unwrap();
            prop_assert_eq!(&parsed, &data);
            prop_assert_eq!(hodgemc::io::serialize_data(&parsed), text);
        }
    }
}

/// Rank-consistency checking does not depend on how the finite points are
/// labeled.
#[test]
fn rank_consistency_is_label_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let mut tested = 0;
    while tested < 20 {
        let Some(data) = common::random_module_data(&mut rng) else {
            continue;
        };
        let relabeled = ModuleData::new(
            data.points()
                .iter()
                .map(|(loc, t)| {
                    let loc = match loc {
                        PointLocation::Finite(l) => PointLocation::Finite(FiniteLabel::Name(
                            format!("pt-{l}"),
                        )),
                        PointLocation::Infinity => PointLocation::Infinity,
                    };
                    (loc, t.clone())
                })
                .collect(),
            data.h().clone(),
            data.delta().clone(),
            data.delta_valid(),
        )
        .unwrap();
        assert_eq!(
            data.check_rank_consistency().len(),
            relabeled.check_rank_consistency().len()
        );
        assert!(relabeled.check_rank_consistency().is_empty());
        tested += 1;
    }
}

/// twist ∘ twist with opposite exponents is the identity on the whole
/// package (points, h, and the carried degrees).
#[test]
fn twist_inverse_roundtrip() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut tested = 0;
    while tested < 25 {
        let Some(data) = common::random_module_data(&mut rng) else {
            continue;
        };
        let labels: Vec<FiniteLabel> = data.finite_points().map(|(l, _)| l.clone()).collect();
        let tw = TwistParameter::new(
            labels
                .iter()
                .map(|l| (l.clone(), common::random_angle(&mut rng))),
        );
        let there = twist(&data, &tw).unwrap();
        let back = twist(&there, &tw.inverse()).unwrap();
        assert_eq!(back, data);
        assert_eq!(*there.h(), *data.h());
        tested += 1;
    }
}

/// Twisted packages keep exact degree bookkeeping: the total degree is
/// minus the total residue, Σ_p δ^p = −Σ_x Σ_γ γ·(multiplicity).
#[test]
fn twist_degree_totals_match_residues() {
    use num_rational::Ratio;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut tested = 0;
    while tested < 25 {
        let Some(data) = common::random_module_data(&mut rng) else {
            continue;
        };
        // Σ δ is invariant-free to recompute from the tables of any
        // genuinely generated package: check it on the twisted output
        let tw = TwistParameter::new([(
            data.finite_points().next().unwrap().0.clone(),
            common::random_angle(&mut rng),
        )]);
        let twisted = twist(&data, &tw).unwrap();

        let residue_total = |d: &ModuleData| -> Ratio<i128> {
            d.points()
                .values()
                .flat_map(|t| {
                    t.iter().map(|((g, ell, _), m)| {
                        Ratio::new(g.numerator() as i128, g.denominator() as i128)
                            * Ratio::from_integer((*ell as i128 + 1) * *m as i128)
                    })
                })
                .sum()
        };
        let delta_total = |d: &ModuleData| -> i128 {
            d.delta().values().map(|v| *v as i128).sum()
        };
        // the relation δ_total(twisted) − δ_total(data) =
        // −(residues(twisted) − residues(data)) holds exactly
        let lhs = delta_total(&twisted) - delta_total(&data);
        let diff = residue_total(&twisted) - residue_total(&data);
        assert!(diff.is_integer());
        assert_eq!(lhs, -(*diff.numer() / *diff.denom()));
        tested += 1;
    }
}
