//! Numerical Hodge data of a regular holonomic module on the affine line.
//!
//! The package kept for one module is purely numerical:
//!
//! * per singular point x (finite points and ∞), a sparse table
//!   ν^p_{x,λ,ℓ} — the dimension of the p-th Hodge graded piece of the
//!   weight-ℓ primitive part of the λ-eigenspace of nearby cycles at x,
//!   indexed by the angle γ of λ = exp(−2iπγ);
//! * the Hodge numbers h^p of the generic fiber;
//! * the degrees δ^p of the Hodge graded pieces of the Deligne extension.
//!
//! Derived quantities: the eigenvalue totals ν^p_λ = Σ_{ℓ≥0} Σ_{k=0..ℓ}
//! ν^{p+k}_{λ,ℓ}, the prim/coprim sums, the vanishing cycle data μ (equal
//! to ν away from λ = 1, shifted one step down the monodromy filtration at
//! λ = 1 for minimal extensions), and the Hodge numbers of H¹ of the de
//! Rham complex on the affine line.
//!
//! Everything is an immutable value; all operations are pure.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Ratio;

use crate::angle::Angle;
use crate::error::{Error, Result};

/// Sparse multiplicity table (γ, ℓ, p) → m at one singular point.
///
/// Canonical form: zero multiplicities are never stored, so structural
/// equality is semantic equality.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct HodgeTable {
    entries: BTreeMap<(Angle, u32, i32), u64>,
}

impl HodgeTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_entries<I: IntoIterator<Item = ((Angle, u32, i32), u64)>>(it: I) -> Self {
        let mut t = Self::new();
        for ((gamma, ell, p), m) in it {
            t.add(gamma, ell, p, m);
        }
        t
    }

    /// Adds `mult` to the (γ, ℓ, p) slot, keeping the sparse form.
    pub fn add(&mut self, gamma: Angle, ell: u32, p: i32, mult: u64) {
        if mult == 0 {
            return;
        }
        *self.entries.entry((gamma, ell, p)).or_insert(0) += mult;
    }

    pub fn get(&self, gamma: &Angle, ell: u32, p: i32) -> u64 {
        self.entries.get(&(*gamma, ell, p)).copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(Angle, u32, i32), &u64)> {
        self.entries.iter()
    }

    /// Distinct eigenvalue angles present in the table.
    pub fn angles(&self) -> Vec<Angle> {
        let mut out: Vec<Angle> = self.entries.keys().map(|k| k.0).collect();
        out.dedup();
        out
    }

    /// Largest ℓ stored (0 if empty).
    pub fn max_ell(&self) -> u32 {
        self.entries.keys().map(|k| k.1).max().unwrap_or(0)
    }

    /// Range of Hodge indices touched by any entry, padded by the weight
    /// so that every total below is zero outside of it.
    pub fn p_window(&self) -> Option<(i32, i32)> {
        if self.entries.is_empty() {
            return None;
        }
        let lo = self
            .entries
            .keys()
            .map(|(_, ell, p)| p - *ell as i32)
            .min()
            .unwrap();
        let hi = self.entries.keys().map(|(_, _, p)| *p).max().unwrap();
        Some((lo, hi))
    }

    /// ν^p_λ(M) = Σ_{ℓ≥0} Σ_{k=0..ℓ} ν^{p+k}_{λ,ℓ}(M).
    pub fn nu_total(&self, gamma: &Angle, p: i32) -> u64 {
        self.entries
            .range((*gamma, 0, i32::MIN)..=(*gamma, u32::MAX, i32::MAX))
            .filter(|((_, ell, pe), _)| *pe >= p && *pe - p <= *ell as i32)
            .map(|(_, m)| *m)
            .sum()
    }

    /// ν^p_{λ,prim}(M) = Σ_{ℓ≥0} ν^p_{λ,ℓ}(M).
    pub fn nu_prim(&self, gamma: &Angle, p: i32) -> u64 {
        self.entries
            .range((*gamma, 0, i32::MIN)..=(*gamma, u32::MAX, i32::MAX))
            .filter(|((_, _, pe), _)| *pe == p)
            .map(|(_, m)| *m)
            .sum()
    }

    /// ν^p_{λ,coprim}(M) = Σ_{ℓ≥0} ν^{p+ℓ}_{λ,ℓ}(M).
    pub fn nu_coprim(&self, gamma: &Angle, p: i32) -> u64 {
        self.entries
            .range((*gamma, 0, i32::MIN)..=(*gamma, u32::MAX, i32::MAX))
            .filter(|((_, ell, pe), _)| *pe == p + *ell as i32)
            .map(|(_, m)| *m)
            .sum()
    }

    /// Vanishing cycle data μ^p_{λ,ℓ} of the minimal extension.
    ///
    /// For λ ≠ 1 vanishing and nearby cycles agree.  For λ = 1 the Hodge
    /// filtration satisfies F^p P_ℓ φ₁ = N(F^p P_{ℓ+1} ψ₁), and N is
    /// injective on primitive parts of a minimal extension, so
    /// μ^p_{1,ℓ} = ν^p_{1,ℓ+1} with no shift of p.
    pub fn mu(&self, gamma: &Angle, ell: u32, p: i32) -> u64 {
        if gamma.is_zero() {
            self.get(gamma, ell + 1, p)
        } else {
            self.get(gamma, ell, p)
        }
    }

    /// μ^p_λ total, aggregated over the monodromy filtration exactly like
    /// `nu_total`.
    pub fn mu_total(&self, gamma: &Angle, p: i32) -> u64 {
        if gamma.is_zero() {
            self.entries
                .range((*gamma, 1, i32::MIN)..=(*gamma, u32::MAX, i32::MAX))
                .filter(|((_, ell, pe), _)| {
                    // entry (1, ℓ, pe) is μ_{1,ℓ−1} at pe
                    let mu_ell = *ell - 1;
                    *pe >= p && *pe - p <= mu_ell as i32
                })
                .map(|(_, m)| *m)
                .sum()
        } else {
            self.nu_total(gamma, p)
        }
    }

    /// Total vanishing-cycle dimension Σ_{p,λ} μ^p_λ(primitive count × sizes),
    /// i.e. dim φ_x = n − (number of eigenvalue-1 Jordan blocks).
    pub fn vanishing_dimension(&self) -> u64 {
        self.entries
            .iter()
            .map(|((g, ell, _), m)| {
                if g.is_zero() {
                    *ell as u64 * m
                } else {
                    (*ell as u64 + 1) * m
                }
            })
            .sum()
    }

    /// Number of Jordan blocks with eigenvalue 1 (dimension of local
    /// monodromy invariants).
    pub fn unipotent_block_count(&self) -> u64 {
        self.entries
            .iter()
            .filter(|((g, _, _), _)| g.is_zero())
            .map(|(_, m)| *m)
            .sum()
    }

    /// Σ_p ν^p_λ over all p for one angle = algebraic multiplicity of λ.
    pub fn algebraic_multiplicity(&self, gamma: &Angle) -> u64 {
        self.entries
            .range((*gamma, 0, i32::MIN)..=(*gamma, u32::MAX, i32::MAX))
            .map(|((_, ell, _), m)| (*ell as u64 + 1) * m)
            .sum()
    }

    /// Total local rank Σ_{γ,ℓ,p} (ℓ+1)·m.
    pub fn local_rank(&self) -> u64 {
        self.entries
            .iter()
            .map(|((_, ell, _), m)| (*ell as u64 + 1) * m)
            .sum()
    }

    /// Jordan block content forgetting p: (γ, block size ℓ+1) → count.
    pub fn jordan_blocks(&self) -> BTreeMap<(Angle, u32), u64> {
        let mut out = BTreeMap::new();
        for ((g, ell, _), m) in &self.entries {
            *out.entry((*g, ell + 1)).or_insert(0) += m;
        }
        out
    }

    /// All entries with γ shifted by `shift` (mod 1); ℓ and p unchanged.
    pub fn shift_gamma(&self, shift: &Angle) -> HodgeTable {
        Self::from_entries(
            self.entries
                .iter()
                .map(|((g, ell, p), m)| ((g.add(shift), *ell, *p), *m)),
        )
    }

    /// All entries with p shifted by `d`.
    pub fn shift_p(&self, d: i32) -> HodgeTable {
        Self::from_entries(
            self.entries
                .iter()
                .map(|((g, ell, p), m)| ((*g, *ell, p + d), *m)),
        )
    }
}

impl fmt::Debug for HodgeTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for ((g, ell, p), mult) in &self.entries {
            m.entry(&format!("({g}, {ell}, {p})"), mult);
        }
        m.finish()
    }
}

/// Label of a finite singular point: an exact rational coordinate or an
/// opaque name.  Only distinctness matters to the calculus.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FiniteLabel {
    Coordinate(Ratio<i64>),
    Name(String),
}

impl FiniteLabel {
    pub fn integer(n: i64) -> Self {
        FiniteLabel::Coordinate(Ratio::from_integer(n))
    }
}

impl fmt::Display for FiniteLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiniteLabel::Coordinate(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            FiniteLabel::Name(s) => write!(f, "{s}"),
        }
    }
}

impl fmt::Debug for FiniteLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A singular point of the module: finite or at infinity.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PointLocation {
    Finite(FiniteLabel),
    Infinity,
}

impl PointLocation {
    pub fn finite(n: i64) -> Self {
        PointLocation::Finite(FiniteLabel::integer(n))
    }
}

impl fmt::Display for PointLocation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointLocation::Finite(l) => write!(f, "{l}"),
            PointLocation::Infinity => write!(f, "inf"),
        }
    }
}

impl fmt::Debug for PointLocation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// One rank-consistency violation: at `location`, the eigenvalue totals in
/// Hodge degree `p` sum to `table_total` instead of `expected` = h^p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConsistencyViolation {
    pub location: PointLocation,
    pub p: i32,
    pub table_total: u64,
    pub expected: u64,
}

impl fmt::Display for ConsistencyViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "at {} in degree p={}: eigenvalue totals sum to {} but h^p = {}",
            self.location, self.p, self.table_total, self.expected
        )
    }
}

/// Full invariant package of one module.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ModuleData {
    points: BTreeMap<PointLocation, HodgeTable>,
    h: BTreeMap<i32, u64>,
    delta: BTreeMap<i32, i64>,
    delta_valid: bool,
}

impl ModuleData {
    /// Assembles a package.  Structural requirements: the infinity point is
    /// present, Σ_p h^p ≥ 1, and the data does not describe the trivial
    /// module (rank one with no finite singularity).
    pub fn new(
        points: BTreeMap<PointLocation, HodgeTable>,
        h: BTreeMap<i32, u64>,
        delta: BTreeMap<i32, i64>,
        delta_valid: bool,
    ) -> Result<Self> {
        if !points.contains_key(&PointLocation::Infinity) {
            return Err(Error::InvalidArgument(
                "module data must include the infinity point".into(),
            ));
        }
        let h: BTreeMap<i32, u64> = h.into_iter().filter(|(_, m)| *m != 0).collect();
        let delta: BTreeMap<i32, i64> = delta.into_iter().filter(|(_, d)| *d != 0).collect();
        let rank: u64 = h.values().sum();
        if rank == 0 {
            return Err(Error::InvalidArgument(
                "module data must have positive rank".into(),
            ));
        }
        let data = ModuleData {
            points,
            h,
            delta,
            delta_valid,
        };
        if rank == 1 && data.finite_points().all(|(_, t)| t.vanishing_dimension() == 0) {
            return Err(Error::InvalidArgument(
                "rank one with no finite singularity describes the trivial module".into(),
            ));
        }
        Ok(data)
    }

    pub fn points(&self) -> &BTreeMap<PointLocation, HodgeTable> {
        &self.points
    }

    pub fn infinity_table(&self) -> &HodgeTable {
        &self.points[&PointLocation::Infinity]
    }

    pub fn finite_points(&self) -> impl Iterator<Item = (&FiniteLabel, &HodgeTable)> {
        self.points.iter().filter_map(|(loc, t)| match loc {
            PointLocation::Finite(l) => Some((l, t)),
            PointLocation::Infinity => None,
        })
    }

    pub fn table(&self, loc: &PointLocation) -> Option<&HodgeTable> {
        self.points.get(loc)
    }

    pub fn h(&self) -> &BTreeMap<i32, u64> {
        &self.h
    }

    pub fn h_at(&self, p: i32) -> u64 {
        self.h.get(&p).copied().unwrap_or(0)
    }

    pub fn delta(&self) -> &BTreeMap<i32, i64> {
        &self.delta
    }

    pub fn delta_at(&self, p: i32) -> i64 {
        self.delta.get(&p).copied().unwrap_or(0)
    }

    pub fn delta_valid(&self) -> bool {
        self.delta_valid
    }

    /// Total rank n = Σ_p h^p.
    pub fn rank(&self) -> u64 {
        self.h.values().sum()
    }

    /// Hodge degrees that can carry data, padded by the largest weight.
    pub fn p_window(&self) -> (i32, i32) {
        let mut lo = i32::MAX;
        let mut hi = i32::MIN;
        for (p, _) in &self.h {
            lo = lo.min(*p);
            hi = hi.max(*p);
        }
        for (p, _) in &self.delta {
            lo = lo.min(*p);
            hi = hi.max(*p);
        }
        for t in self.points.values() {
            if let Some((a, b)) = t.p_window() {
                lo = lo.min(a);
                hi = hi.max(b);
            }
        }
        if lo > hi {
            (0, 0)
        } else {
            // one extra degree each side: the transform formulas shift p by
            // at most one, and γ^p = δ^p − δ^{p−1} reaches one past support
            (lo - 1, hi + 1)
        }
    }

    /// γ^p = δ^p − δ^{p−1}.  Errors when δ is not currently meaningful.
    pub fn gamma_p(&self, p: i32) -> Result<i64> {
        if !self.delta_valid {
            return Err(Error::UnavailableInvariant(
                "delta has been invalidated and gamma^p cannot be formed".into(),
            ));
        }
        Ok(self.delta_at(p) - self.delta_at(p - 1))
    }

    /// Verifies Σ_γ ν^p_{x,λ} = h^p at every stored point (the identity is
    /// stated at infinity; it holds at every local nearby-cycle
    /// decomposition and is enforced everywhere).  Violations are data.
    pub fn check_rank_consistency(&self) -> Vec<ConsistencyViolation> {
        let mut out = Vec::new();
        let (lo, hi) = self.p_window();
        for (loc, table) in &self.points {
            for p in lo..=hi {
                let total: u64 = table
                    .angles()
                    .iter()
                    .map(|g| table.nu_total(g, p))
                    .sum();
                let expected = self.h_at(p);
                if total != expected {
                    out.push(ConsistencyViolation {
                        location: loc.clone(),
                        p,
                        table_total: total,
                        expected,
                    });
                }
            }
        }
        out
    }

    /// h^p H¹(𝔸¹, DR M), from the degrees and local vanishing cycles:
    ///
    /// h^p H¹ = −γ^p(M) − h^p(M) + Σ_i ( Σ_{μ≠1} μ^{p−1}_{x_i,μ}(M) + μ^p_{x_i,1}(M) ).
    ///
    /// Errors when δ is invalid or the result would be negative.
    pub fn h1_affine(&self, p: i32) -> Result<u64> {
        let gamma_p = self.gamma_p(p)?;
        let mut value: i64 = -gamma_p - self.h_at(p) as i64;
        for (_, table) in self.finite_points() {
            value += finite_mu_sum(table, p) as i64;
        }
        if value < 0 {
            return Err(Error::InconsistentData(format!(
                "h^p H^1(A^1) came out negative ({value}) at p={p}; \
                 the tables do not describe a genuine module"
            )));
        }
        Ok(value as u64)
    }

    /// h^p H¹(ℙ¹, DR 𝓜^min) = h^p H¹(𝔸¹, DR M) − ν^{p−1}_{∞,1,prim}(M).
    pub fn h1_min(&self, p: i32) -> Result<u64> {
        let affine = self.h1_affine(p)?;
        let correction = self.infinity_table().nu_prim(&Angle::zero(), p - 1);
        if correction > affine {
            return Err(Error::InconsistentData(format!(
                "nu^{{p-1}}_{{inf,1,prim}} = {correction} exceeds h^p H^1(A^1) = {affine} at p={p}"
            )));
        }
        Ok(affine - correction)
    }

    /// Both H¹ invariants over the whole support window.
    pub fn h1_affine_map(&self) -> Result<BTreeMap<i32, u64>> {
        let (lo, hi) = self.p_window();
        let mut out = BTreeMap::new();
        for p in lo..=hi {
            let v = self.h1_affine(p)?;
            if v != 0 {
                out.insert(p, v);
            }
        }
        Ok(out)
    }

    pub fn h1_min_map(&self) -> Result<BTreeMap<i32, u64>> {
        let (lo, hi) = self.p_window();
        let mut out = BTreeMap::new();
        for p in lo..=hi {
            let v = self.h1_min(p)?;
            if v != 0 {
                out.insert(p, v);
            }
        }
        Ok(out)
    }

}

/// Σ_{μ≠1} μ^{p−1}_{x,μ}(M) + μ^p_{x,1}(M) for one finite point.
pub(crate) fn finite_mu_sum(table: &HodgeTable, p: i32) -> u64 {
    let mut total = 0;
    for g in table.angles() {
        if g.is_zero() {
            total += table.mu_total(&g, p);
        } else {
            total += table.mu_total(&g, p - 1);
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(n: i64, d: i64) -> Angle {
        Angle::new(n, d).unwrap()
    }

    fn table(entries: &[((i64, i64), u32, i32, u64)]) -> HodgeTable {
        HodgeTable::from_entries(
            entries
                .iter()
                .map(|((n, d), ell, p, m)| ((a(*n, *d), *ell, *p), *m)),
        )
    }

    #[test]
    fn nu_total_over_the_monodromy_filtration() {
        let t = table(&[((1, 3), 0, 0, 1)]);
        assert_eq!(t.nu_total(&a(1, 3), 0), 1);

        // an ℓ=1 block with top Hodge index 1 contributes at p=0 (k=1) and p=1 (k=0)
        let t = table(&[((1, 3), 1, 1, 1)]);
        assert_eq!(t.nu_total(&a(1, 3), 0), 1);
        assert_eq!(t.nu_total(&a(1, 3), 1), 1);
        assert_eq!(t.nu_total(&a(1, 3), 2), 0);
        assert_eq!(t.nu_total(&a(1, 3), -1), 0);

        assert_eq!(HodgeTable::new().nu_total(&a(1, 5), 7), 0);
    }

    #[test]
    fn prim_and_coprim() {
        let t = table(&[((1, 2), 2, 3, 4)]);
        assert_eq!(t.nu_prim(&a(1, 2), 3), 4);
        assert_eq!(t.nu_coprim(&a(1, 2), 1), 4);
        assert_eq!(t.nu_prim(&a(1, 2), 1), 0);
        assert_eq!(HodgeTable::new().nu_prim(&a(1, 2), 0), 0);
        assert_eq!(HodgeTable::new().nu_coprim(&a(1, 2), 0), 0);

        let t = table(&[((1, 2), 0, 0, 1), ((1, 2), 1, 1, 1)]);
        assert_eq!(t.nu_prim(&a(1, 2), 0), 1);
        assert_eq!(t.nu_coprim(&a(1, 2), 0), 2);
    }

    #[test]
    fn mu_is_nu_away_from_one_and_shifts_at_one() {
        let t = table(&[((1, 3), 0, 0, 2)]);
        assert_eq!(t.mu(&a(1, 3), 0, 0), 2);

        let t = table(&[((0, 1), 1, 1, 1)]);
        assert_eq!(t.mu(&Angle::zero(), 0, 1), 1);
        assert_eq!(t.mu(&Angle::zero(), 0, 0), 0);

        // size-1 unipotent blocks have no vanishing cycles
        let t = table(&[((0, 1), 0, 0, 5)]);
        assert_eq!(t.mu(&Angle::zero(), 0, 0), 0);
        assert_eq!(t.mu_total(&Angle::zero(), 0), 0);
    }

    #[test]
    fn mu_total_unipotent_aggregation() {
        // ν_{1,2} at p=2: μ_{1,1} at p=2, totals spread over k=0..1
        let t = table(&[((0, 1), 2, 2, 1)]);
        assert_eq!(t.mu_total(&Angle::zero(), 2), 1);
        assert_eq!(t.mu_total(&Angle::zero(), 1), 1);
        assert_eq!(t.mu_total(&Angle::zero(), 0), 0);
    }

    fn rank_one(inf: (i64, i64), fin: &[(i64, (i64, i64))], p0: i32) -> ModuleData {
        let mut points = BTreeMap::new();
        points.insert(
            PointLocation::Infinity,
            table(&[(inf, 0, p0, 1)]),
        );
        let mut delta_sum = Ratio::new(inf.0, inf.1);
        for (x, g) in fin {
            points.insert(PointLocation::finite(*x), table(&[(*g, 0, p0, 1)]));
            delta_sum += Ratio::new(g.0, g.1);
        }
        assert!(delta_sum.is_integer());
        let mut delta = BTreeMap::new();
        delta.insert(p0, -delta_sum.to_integer());
        ModuleData::new(
            points,
            BTreeMap::from([(p0, 1)]),
            delta,
            true,
        )
        .unwrap()
    }

    #[test]
    fn rank_consistency_reports() {
        let d = rank_one((2, 3), &[(0, (1, 3))], 0);
        assert!(d.check_rank_consistency().is_empty());

        let bad = ModuleData::new(
            d.points.clone(),
            BTreeMap::from([(0, 2)]),
            BTreeMap::new(),
            false,
        )
        .unwrap();
        let report = bad.check_rank_consistency();
        assert_eq!(report.len(), 2); // both stored points disagree with h
        assert!(report.iter().any(|v| v.location == PointLocation::Infinity && v.p == 0));
    }

    #[test]
    fn gamma_p_needs_valid_delta() {
        let d = rank_one((1, 3), &[(0, (1, 3)), (1, (1, 3))], 0);
        assert_eq!(d.gamma_p(0).unwrap(), -1);
        assert_eq!(d.gamma_p(1).unwrap(), 1);
        let d = ModuleData::new(d.points.clone(), d.h.clone(), BTreeMap::new(), false).unwrap();
        assert!(matches!(
            d.gamma_p(0),
            Err(Error::UnavailableInvariant(_))
        ));
    }

    #[test]
    fn h1_of_a_rank_one_system_on_two_punctures() {
        // exponents 1/3 at 0 and 1, 1/3 at infinity: H^1 is one-dimensional
        let d = rank_one((1, 3), &[(0, (1, 3)), (1, (1, 3))], 0);
        let h1 = d.h1_affine_map().unwrap();
        assert_eq!(h1.values().sum::<u64>(), 1);
        assert_eq!(h1, BTreeMap::from([(1, 1)]));
        // no unipotent part at infinity, so the minimal-extension H^1 agrees
        assert_eq!(d.h1_min_map().unwrap(), h1);
    }

    #[test]
    fn h1_min_rejects_excess_unipotent_correction() {
        // ν^{p−1}_{∞,1,prim} > h1_affine(p) must surface as an error:
        // rank 2, unipotent 2-block at infinity, degrees tuned so that
        // h1_affine(2) = 0 while the prim correction at p−1 = 1 is 1.
        let mut points = BTreeMap::new();
        points.insert(PointLocation::Infinity, table(&[((0, 1), 1, 1, 1)]));
        points.insert(
            PointLocation::finite(0),
            table(&[((1, 2), 0, 0, 1), ((1, 2), 0, 1, 1)]),
        );
        points.insert(
            PointLocation::finite(1),
            table(&[((1, 2), 0, 0, 1), ((1, 2), 0, 1, 1)]),
        );
        let d = ModuleData::new(
            points,
            BTreeMap::from([(0, 1), (1, 1)]),
            BTreeMap::from([(1, -1), (2, 1)]),
            true,
        )
        .unwrap();
        assert!(d.check_rank_consistency().is_empty());
        assert_eq!(d.h1_affine(2).unwrap(), 0);
        assert!(matches!(d.h1_min(2), Err(Error::InconsistentData(_))));
    }

    #[test]
    fn trivial_module_is_rejected() {
        let mut points = BTreeMap::new();
        points.insert(PointLocation::Infinity, table(&[((0, 1), 0, 0, 1)]));
        assert!(matches!(
            ModuleData::new(points, BTreeMap::from([(0, 1)]), BTreeMap::new(), false),
            Err(Error::InvalidArgument(_))
        ));
    }
}
